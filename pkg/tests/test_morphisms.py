"""Morphism checkers, behaviour preservation, and mediating maps."""

import pytest

from causalnets.errors import NotApplicable
from causalnets.es import raes_coproduct
from causalnets.maps import EsMorphism, NetMorphism, compose_es, compose_net
from causalnets.morphisms import (check_acn_morphism, check_aes_morphism,
                                  check_racn_morphism, check_raes_morphism,
                                  es_preservation_counterexample,
                                  net_preservation_counterexample,
                                  racn_mediating, search_raes_mediating)
from causalnets.racn import racn_coproduct

from conftest import fixture_model, fixture_morphism


def test_net_folding_morphism_checks_and_preserves():
    src = fixture_model("merge_src.json")
    dst = fixture_model("merge_tgt.json")
    f = fixture_morphism("merge_map.json")
    assert check_acn_morphism(src, dst, f).ok
    assert net_preservation_counterexample(src, dst, f) is None


def test_dropping_reflection_witness_breaks_the_morphism():
    src = fixture_model("merge_src.json")
    dst = fixture_model("merge_tgt.json")
    f = fixture_morphism("merge_map.json")
    weakened = type(src)(src.places, src.transitions, src.flow,
                         src.inhibitor - {("s3", "b")}, src.marking)
    report = check_acn_morphism(weakened, dst, f)
    assert "inhibitors-reflected" in report.conditions()


def test_reversible_folding_morphism_checks_and_preserves():
    src = fixture_model("rmerge_src.json")
    dst = fixture_model("rmerge_tgt.json")
    f = fixture_morphism("rmerge_map.json")
    assert check_racn_morphism(src, dst, f).ok
    assert net_preservation_counterexample(src, dst, f) is None


def test_check_acn_morphism_rejects_invalid_nets():
    dst = fixture_model("merge_tgt.json")
    bad = type(dst)(dst.places, dst.transitions, dst.flow,
                    dst.inhibitor | {("s1", "a")},  # self-loop causality
                    dst.marking)
    f = fixture_morphism("merge_map.json")
    with pytest.raises(NotApplicable):
        check_acn_morphism(bad, dst, f)


def test_es_morphism_checks():
    g = fixture_model("g_conflict.json")
    ga = fixture_model("g_asym.json")
    ident = EsMorphism.build({e: e for e in sorted(g.events)})
    assert check_aes_morphism(g, g, ident).ok
    # g_asym has weak causality (b, a) that g lacks, so the identity fails
    # weak-causality reflection in that direction.
    report = check_aes_morphism(ga, g, ident)
    assert not report.ok or es_preservation_counterexample(ga, g, ident)


def test_es_morphism_identified_events_must_conflict():
    g = fixture_model("g_conflict.json")
    squash = EsMorphism.build({"a": "a", "b": "a", "c": "c"})
    report = check_aes_morphism(g, g, squash)
    assert "identified-events-conflict" in report.conditions()


def test_raes_morphism_checker_on_coproduct_injections():
    h0 = fixture_model("h_base.json")
    h1 = fixture_model("h_intro.json")
    cop, inj0, inj1 = raes_coproduct(h0, h1)
    assert check_raes_morphism(h0, cop, inj0).ok
    assert check_raes_morphism(h1, cop, inj1).ok
    assert es_preservation_counterexample(h0, cop, inj0) is None
    assert es_preservation_counterexample(h1, cop, inj1) is None


def test_compose_es_and_net():
    g = fixture_model("g_conflict.json")
    ident = EsMorphism.build({e: e for e in sorted(g.events)})
    assert compose_es(ident, ident).as_dict() == ident.as_dict()
    f = fixture_morphism("merge_map.json")
    dst = fixture_model("merge_tgt.json")
    ident_n = NetMorphism.build({s: s for s in sorted(dst.places)},
                                {t: t for t in sorted(dst.transitions)})
    comp = compose_net(f, ident_n)
    assert comp.trans_dict() == f.trans_dict()


def test_raes_mediating_unique(rng):
    h0 = fixture_model("h_base.json")
    h1 = fixture_model("h_intro.json")
    cop, inj0, inj1 = raes_coproduct(h0, h1)
    # the target of the cospan is the coproduct itself, so the unique
    # mediating morphism is the identity
    found = search_raes_mediating(cop, inj0, inj1, h0, h1, inj0, inj1, cop)
    assert len(found) == 1
    (h,) = found
    assert h.as_dict() == {e: e for e in sorted(cop.events)}


def test_racn_mediating_determined_by_commutation():
    r0 = fixture_model("n_r_rev.json")
    r1 = fixture_model("v_ooo.json")
    cop, inj0, inj1 = racn_coproduct(r0, r1)
    h, report = racn_mediating(cop, inj0, inj1, inj0, inj1, cop)
    assert report.ok
    assert h.trans_dict() == {t: t for t in sorted(cop.net.transitions)}
