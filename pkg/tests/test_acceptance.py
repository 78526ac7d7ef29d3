"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import itertools
import random
import subprocess
import sys

from causalnets.acn import (cn_to_acn, configuration_of_marking,
                            derived_relations, is_configuration,
                            marking_of_configuration, pacn_configurations,
                            validate_acn, validate_cn, validate_pacn)
from causalnets.bridge import raes_to_racn, round_trip_identity
from causalnets.es import (raes_config_graph, raes_coproduct, raes_enabled,
                           raes_to_sraes, sraes_to_raes, sustained_causation,
                           validate_raes)
from causalnets.graphs import isomorphic
from causalnets.maps import compose_es
from causalnets.morphisms import (check_acn_morphism, check_racn_morphism,
                                  check_raes_morphism,
                                  es_preservation_counterexample,
                                  net_preservation_counterexample,
                                  search_raes_mediating)
from causalnets.net import reachable_markings, states
from causalnets.racn import (racn_configurations, racn_coproduct,
                             validate_racn)

from conftest import fixture_model, fixture_morphism, fixture_path, \
    random_raes

RAES_FIXTURES = ("h_intro.json", "h_base.json", "h_ooo.json",
                 "h_speculative.json")
PACN_FIXTURES = ("n_r.json", "n1.json", "n4.json", "v_abc_fwd.json",
                 "merge_src.json", "merge_tgt.json")
CN_FIXTURES = ("cn_empty.json", "cn_chain.json", "cn_fork.json",
               "cn_mixed.json", "cn_wide.json")


def report(number, title, ok):
    print(f"criterion {number:2d} ({title}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({title}) failed"


def test_criterion_01_fixture_verdicts():
    n_r = fixture_model("n_r.json")
    acn_report = validate_acn(n_r)
    ok = validate_pacn(n_r).ok
    ok = ok and not acn_report.ok
    ok = ok and acn_report.conditions() == {"lessdot-implies-leadsto"}
    ok = ok and any(v.witness == ("a", "b") for v in acn_report.violations)
    ok = ok and validate_racn(fixture_model("n_r_rev.json")).ok
    v = fixture_model("v_ooo.json")
    ok = ok and validate_racn(v).ok
    fwd_report = validate_acn(v.forward_restriction())
    ok = ok and fwd_report.conditions() == {"conflict-inheritance"}
    report(1, "fixture verdicts", ok)


def test_criterion_02_intro_transition_system():
    g = raes_config_graph(fixture_model("h_intro.json"))
    all_subsets = {frozenset(c) for r in range(4)
                   for c in itertools.combinations("abc", r)}
    ok = g.nodes == frozenset(all_subsets)
    ok = ok and (frozenset({"a", "b"}), ("undo", "a"),
                 frozenset({"b"})) in g.edges
    ok = ok and not any(src == frozenset({"a", "c"}) and lbl == ("undo", "a")
                        for src, lbl, _ in g.edges)
    report(2, "intro transition system", ok)


def test_criterion_03_sustained_causation_separation():
    base = raes_config_graph(fixture_model("h_base.json"))
    ooo = raes_config_graph(fixture_model("h_ooo.json"))
    target = frozenset({"a", "c"})
    ok = target in ooo.nodes and target not in base.nodes
    ok = ok and sustained_causation(fixture_model("h_ooo.json")) == \
        {("a", "c")}
    report(3, "sustained causation separation", ok)


def test_criterion_04_speculative_scenario():
    scen = fixture_model("h_speculative.json")
    ok = validate_raes(scen).ok
    net = raes_to_racn(scen)
    ok = ok and validate_racn(net).ok
    x = frozenset({"prod", "pred", "cF"})
    ok = ok and raes_enabled(scen, x, frozenset(), frozenset({"cF"}))
    after = x - {"cF"}
    ok = ok and raes_enabled(scen, after, frozenset(), frozenset({"pred"}))
    g = raes_config_graph(scen)
    for node in g.nodes:
        if "cT" in node and "pred" in node:
            ok = ok and not raes_enabled(scen, node, frozenset(),
                                         frozenset({"pred"}))
    report(4, "speculative scenario", ok)


def test_criterion_05_round_trip():
    ok = True
    structures = [fixture_model(n) for n in RAES_FIXTURES]
    rng = random.Random(5)
    structures += [random_raes(rng, max_events=6) for _ in range(20)]
    for h in structures:
        ok = ok and round_trip_identity(h)
        net = raes_to_racn(h)
        ident = {e: e for e in h.events}
        ok = ok and isomorphic(raes_config_graph(h),
                               racn_configurations(net), ident)
    report(5, "reversible structure/net round trip", ok)


def test_criterion_06_marking_configuration_correspondence():
    ok = True
    for name in PACN_FIXTURES:
        net = fixture_model(name)
        rel = derived_relations(net)
        reachable = {frozenset(m) for m in reachable_markings(net)}
        for m in reachable:
            ok = ok and is_configuration(
                net, configuration_of_marking(net, m), rel)
        for x in pacn_configurations(net):
            ok = ok and frozenset(marking_of_configuration(net, x)) \
                in reachable
    report(6, "marking/configuration correspondence", ok)


def test_criterion_07_morphism_suite():
    m_src = fixture_model("merge_src.json")
    m_tgt = fixture_model("merge_tgt.json")
    m_map = fixture_morphism("merge_map.json")
    r_src = fixture_model("rmerge_src.json")
    r_tgt = fixture_model("rmerge_tgt.json")
    r_map = fixture_morphism("rmerge_map.json")
    ok = check_acn_morphism(m_src, m_tgt, m_map).ok
    ok = ok and check_racn_morphism(r_src, r_tgt, r_map).ok
    ok = ok and net_preservation_counterexample(m_src, m_tgt, m_map) is None
    ok = ok and net_preservation_counterexample(r_src, r_tgt, r_map) is None
    rng = random.Random(7)
    for _ in range(50):
        h0 = random_raes(rng, max_events=3)
        h1 = random_raes(rng, max_events=3)
        h2 = random_raes(rng, max_events=3)
        mid, i0, _ = raes_coproduct(h0, h1)
        top, j0, _ = raes_coproduct(mid, h2)
        ok = ok and check_raes_morphism(h0, mid, i0).ok
        ok = ok and check_raes_morphism(mid, top, j0).ok
        comp = compose_es(i0, j0)
        ok = ok and check_raes_morphism(h0, top, comp).ok
        ok = ok and es_preservation_counterexample(h0, top, comp) is None
    report(7, "morphism suite", ok)


def test_criterion_08_coproducts():
    h0 = fixture_model("h_base.json")
    h1 = fixture_model("h_intro.json")
    cop, i0, i1 = raes_coproduct(h0, h1)
    ok = validate_raes(cop).ok
    ok = ok and check_raes_morphism(h0, cop, i0).ok
    ok = ok and check_raes_morphism(h1, cop, i1).ok
    r0 = fixture_model("n_r_rev.json")
    r1 = fixture_model("v_ooo.json")
    ncop, n0, n1 = racn_coproduct(r0, r1)
    ok = ok and validate_racn(ncop).ok
    ok = ok and check_racn_morphism(r0, ncop, n0).ok
    ok = ok and check_racn_morphism(r1, ncop, n1).ok
    rng = random.Random(8)
    for _ in range(10):
        s0 = random_raes(rng, max_events=3)
        s1 = random_raes(rng, max_events=3)
        c, j0, j1 = raes_coproduct(s0, s1)
        found = search_raes_mediating(c, j0, j1, s0, s1, j0, j1, c)
        ok = ok and len(found) == 1
        ok = ok and found[0].as_dict() == {e: e for e in sorted(c.events)}
    report(8, "coproducts and mediating morphisms", ok)


def test_criterion_09_auxiliary_translations():
    ok = True
    for name in CN_FIXTURES:
        net = fixture_model(name)
        ok = ok and validate_cn(net).ok
        out = cn_to_acn(net)
        ok = ok and validate_acn(out).ok
        ok = ok and states(net) == states(out)
    for name in RAES_FIXTURES:
        h = fixture_model(name)
        ok = ok and sraes_to_raes(raes_to_sraes(h)) == h
    report(9, "auxiliary translations", ok)


def test_criterion_10_operational_hygiene():
    ok = True
    for name in PACN_FIXTURES + ("n_p.json",):
        net = fixture_model(name)
        singles = {frozenset(m) for m in reachable_markings(net)}
        # firing pairs simultaneously must not leave the single-step space
        from collections import Counter
        todo, seen = [Counter(net.marking)], {frozenset(net.marking)}
        while todo:
            m = todo.pop()
            ts = [t for t in sorted(net.transitions) if net.enabled(m, [t])]
            for a, b in itertools.combinations(ts, 2):
                if net.enabled(m, [a, b]):
                    m2 = frozenset(net.fire(m, [a, b]))
                    ok = ok and m2 in singles
                    if m2 not in seen:
                        seen.add(m2)
                        todo.append(Counter(m2))
    four = {frozenset({"s1", "s2", "s3"}), frozenset({"s1", "s3", "s5"}),
            frozenset({"s1", "s2", "s6"}), frozenset({"s3", "s4", "s5"})}
    ok = ok and {frozenset(m)
                 for m in reachable_markings(fixture_model("n4.json"))} == four
    for args in (["validate", fixture_path("n4.json")],
                 ["relations", fixture_path("n_r.json")],
                 ["configs", fixture_path("h_intro.json")],
                 ["translate", fixture_path("h_intro.json"), "--to", "racn"]):
        runs = [subprocess.run([sys.executable, "-m", "causalnets"] + args,
                               capture_output=True).stdout for _ in range(2)]
        ok = ok and runs[0] == runs[1]
    report(10, "operational hygiene", ok)
