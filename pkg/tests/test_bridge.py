"""Translations between reversible event structures and reversible nets."""

import pytest

from causalnets.bridge import (map_racn_morphism, map_raes_morphism,
                               racn_to_raes, raes_to_racn, round_trip_identity)
from causalnets.errors import NotApplicable
from causalnets.es import Raes, raes_config_graph, raes_coproduct
from causalnets.graphs import isomorphic, relabel
from causalnets.morphisms import check_racn_morphism
from causalnets.racn import racn_configurations, validate_racn

from conftest import fixture_model, random_raes


def test_raes_to_racn_validates():
    for name in ("h_intro.json", "h_base.json", "h_ooo.json",
                 "h_speculative.json"):
        racn = raes_to_racn(fixture_model(name))
        assert validate_racn(racn).ok, name


def test_raes_to_racn_rejects_invalid_input():
    bad = Raes.build(["a", "b"], [], [("a", "b"), ("b", "a")], [], [], [])
    with pytest.raises(NotApplicable):
        raes_to_racn(bad)


def test_round_trip_is_identity_on_fixtures():
    for name in ("h_intro.json", "h_base.json", "h_ooo.json",
                 "h_speculative.json"):
        assert round_trip_identity(fixture_model(name)), name


def test_round_trip_is_identity_on_random_structures(rng):
    for _ in range(10):
        assert round_trip_identity(random_raes(rng))


def test_config_graphs_agree_across_the_bridge():
    for name in ("h_intro.json", "h_base.json", "h_ooo.json"):
        raes = fixture_model(name)
        racn = raes_to_racn(raes)
        g_es = raes_config_graph(raes)
        g_net = racn_configurations(racn)
        assert isomorphic(g_es, g_net,
                          {e: e for e in raes.events}), name


def test_racn_to_raes_on_net_fixture():
    racn = fixture_model("n_r_rev.json")
    raes = racn_to_raes(racn)
    assert raes.events == frozenset({"a", "b", "c"})
    assert raes.reversible == frozenset({"a", "b"})
    assert raes.causation == {("a", "b")}
    g_es = raes_config_graph(raes)
    g_net = racn_configurations(racn)
    assert isomorphic(g_es, g_net, {e: e for e in raes.events})


def test_mapped_morphisms_stay_morphisms():
    h0 = fixture_model("h_base.json")
    h1 = fixture_model("h_intro.json")
    cop, inj0, inj1 = raes_coproduct(h0, h1)
    n0, ncop = raes_to_racn(h0), raes_to_racn(cop)
    nf = map_raes_morphism(inj0, h0, cop)
    assert check_racn_morphism(n0, ncop, nf).ok
    back = map_racn_morphism(nf, n0, ncop)
    assert back.as_dict() == inj0.as_dict()


def test_relabel_and_isomorphic():
    raes = fixture_model("h_intro.json")
    g = raes_config_graph(raes)
    swapped = relabel(g, {"a": "x", "b": "y", "c": "z"})
    assert isomorphic(g, swapped, {"a": "x", "b": "y", "c": "z"})
    assert not isomorphic(g, swapped, {"a": "y", "b": "x", "c": "z"})
