"""Asymmetric causal nets.

Causality, prevention and conflict are read off the inhibitor arcs of a net:

* t causes t'      iff  pre(t)  meets inhib(t')   (t' waits for t to consume)
* t prevents t'    iff  post(t) meets inhib(t')   (t' is dead once t produced)
* t weakly-causes t'  is the inverse of "t' prevents t"
* t and t' conflict   when each prevents the other
"""
import itertools
from dataclasses import dataclass

import networkx as nx

from .errors import BoundExceeded, NotApplicable
from .net import DEFAULT_BOUND, Ipt, reachable_markings
from .report import Report


@dataclass(frozen=True)
class Relations:
    causality: frozenset
    prevention: frozenset
    weak_causality: frozenset
    conflict: frozenset  # unordered pairs as 2-element frozensets

    def to_json(self):
        return {
            "causality": sorted(map(list, self.causality)),
            "prevention": sorted(map(list, self.prevention)),
            "weak_causality": sorted(map(list, self.weak_causality)),
            "conflict": sorted(sorted(p) for p in self.conflict),
        }


def derived_relations(net, transitions=None):
    """Relations induced by the inhibitor arcs among `transitions`
    (defaults to all transitions of the net)."""
    ts = sorted(transitions if transitions is not None else net.transitions)
    causality = set()
    prevention = set()
    for t, u in itertools.product(ts, ts):
        if net.pre(t) & net.inhib(u):
            causality.add((t, u))
        if net.post(t) & net.inhib(u):
            prevention.add((t, u))
    weak = {(u, t) for t, u in prevention}
    conflict = {frozenset((t, u)) for t, u in prevention
                if (u, t) in prevention and t != u}
    return Relations(frozenset(causality), frozenset(prevention),
                     frozenset(weak), frozenset(conflict))


def _acyclic(nodes, edges):
    """Returns None when the directed graph is acyclic, otherwise one cycle."""
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((a, b) for a, b in edges if a in g and b in g)
    try:
        cyc = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return None
    return tuple(a for a, _ in cyc)


def causes(rel, t):
    """Reflexive causal history of t under rel.causality."""
    g = nx.DiGraph()
    g.add_node(t)
    g.add_edges_from(rel.causality)
    if t not in g:
        return frozenset((t,))
    return frozenset(nx.ancestors(g, t) | {t})


def validate_pacn(net, subject="net"):
    rep = Report(subject)
    ts = sorted(net.transitions)
    rel = derived_relations(net)

    for t, u in itertools.product(ts, ts):
        shared = net.post(t) & net.pre(u)
        if shared:
            rep.fail("flow-causality", (t, u),
                     f"post({t}) and pre({u}) share {sorted(shared)}")
    for t in ts:
        if len(net.pre(t)) != 1 or len(net.post(t)) != 1:
            rep.fail("singleton-pre-post", (t,),
                     f"pre={sorted(net.pre(t))} post={sorted(net.post(t))}")
    expected = net.places - net.post_set(ts)
    if net.marking != expected:
        rep.fail("marking-matches-flow",
                 tuple(sorted(net.marking ^ expected)),
                 "marking must be exactly the non-produced places")
    stray = net.inhib_set(ts) - net.pre_set(ts) - net.post_set(ts)
    if stray:
        rep.fail("inhibitors-on-flow-places", tuple(sorted(stray)),
                 "inhibitor arcs must start at pre- or postset places")
    for t, u in itertools.product(ts, ts):
        if t != u:
            if net.pre(t) & net.pre(u):
                rep.fail("no-shared-places", (t, u), "shared preset place")
            if net.post(t) & net.post(u):
                rep.fail("no-shared-places", (t, u), "shared postset place")

    cyc = _acyclic(ts, rel.causality)
    if cyc:
        rep.fail("causality-irreflexive", cyc,
                 "causality must have an irreflexive transitive closure")
    else:
        for t in ts:
            hist = causes(rel, t)
            local = [(a, b) for a, b in (rel.causality | rel.weak_causality)
                     if a in hist and b in hist]
            c = _acyclic(hist, local)
            if c:
                rep.fail("causes-acyclic", (t,) + c,
                         "causality and weak causality must be acyclic "
                         "on the causal history")
    for t, u in itertools.product(ts, ts):
        if net.pre(t) & net.inhib(u) and net.post(t) & net.inhib(u):
            rep.fail("causality-prevention-exclusive", (t, u),
                     f"{t} both causes and prevents {u}")
    return rep


def validate_acn(net, subject="net"):
    rep = validate_pacn(net, subject)
    rel = derived_relations(net)
    lt = rel.causality
    for (a, b), (b2, c) in itertools.product(lt, lt):
        if b == b2 and (a, c) not in lt and a != c:
            rep.fail("causality-saturated", (a, b, c),
                     f"{a} causes {b} causes {c} but not {a} causes {c}")
    for t, u in lt:
        if (u, t) not in rel.prevention:
            rep.fail("lessdot-implies-leadsto", (t, u),
                     f"{t} causes {u} but post({u}) does not inhibit {t}")
    for pair in rel.conflict:
        for t, u in itertools.product(sorted(pair), repeat=2):
            if t == u:
                continue
            for (u2, v) in lt:
                if u2 == u and v != t and frozenset((t, v)) not in rel.conflict:
                    rep.fail("conflict-inheritance", (t, u, v),
                             f"{t} conflicts with {u}, {u} causes {v}, "
                             f"but {t} and {v} do not conflict")
    return rep


# -- configurations and markings ----------------------------------------


def is_configuration(net, xs, rel=None):
    rel = rel or derived_relations(net)
    xs = frozenset(xs)
    for t, u in rel.causality:
        if u in xs and t not in xs:
            return False
    local = [(a, b) for a, b in (rel.causality | rel.weak_causality)
             if a in xs and b in xs]
    return _acyclic(xs, local) is None


def pacn_configurations(net, bound=DEFAULT_BOUND, subset_limit=16):
    """All configurations of a pACN: causally closed transition sets on which
    causality plus weak causality stays acyclic.

    Small nets are answered by subset enumeration; larger ones fall back to
    harvesting configurations from the reachable markings (the two agree, as
    the correspondence tests check).
    """
    rep = validate_pacn(net)
    if not rep.ok:
        raise NotApplicable(f"not a pACN: {sorted(rep.conditions())}")
    rel = derived_relations(net)
    ts = sorted(net.transitions)
    if len(ts) <= subset_limit:
        if 2 ** len(ts) > bound:
            raise BoundExceeded(bound, "candidate subsets")
        out = set()
        for r in range(len(ts) + 1):
            for xs in itertools.combinations(ts, r):
                if is_configuration(net, xs, rel):
                    out.add(frozenset(xs))
        return frozenset(out)
    return frozenset(configuration_of_marking(net, m)
                     for m in reachable_markings(net, bound))


def configuration_of_marking(net, marking, forward=None):
    """The transitions that produced the tokens of `marking` (restricted to
    `forward` when given)."""
    fired = net.pre_set(marking)
    if forward is not None:
        fired &= frozenset(forward)
    return frozenset(fired)


def marking_of_configuration(net, xs):
    m = set(net.marking)
    m -= net.pre_set(xs)
    m |= net.post_set(xs)
    return frozenset(m)


def is_coherent(net, marking, transitions=None, rel=None):
    """A set-marking is coherent when every transition has either its token
    still to consume or its token produced (never both, never neither), and
    no two conflicting transitions have both produced."""
    ts = sorted(transitions if transitions is not None else net.transitions)
    rel = rel or derived_relations(net, ts)
    m = frozenset(marking)
    for t in ts:
        if (net.pre(t) <= m) == (net.post(t) <= m):
            return False
    done = [t for t in ts if net.post(t) <= m]
    for t, u in itertools.combinations(done, 2):
        if frozenset((t, u)) in rel.conflict:
            return False
    return True


def relevant_marking(net, marking, transitions=None, rel=None):
    """Drop from `marking` the preset tokens of transitions that lost a
    conflict (some conflicting transition has already produced)."""
    ts = sorted(transitions if transitions is not None else net.transitions)
    rel = rel or derived_relations(net, ts)
    m = set(marking)
    dead = set()
    for t in ts:
        for u in ts:
            if frozenset((t, u)) in rel.conflict and net.post(u) & m:
                dead |= net.pre(t) & m
    return frozenset(m - dead)


# -- causal nets and their inhibitor rendering ---------------------------


def cn_conflict(net):
    """Conflicts of a causal net: shared input places plus mutual prevention."""
    rel = derived_relations(net)
    out = set(rel.conflict)
    for t, u in itertools.combinations(sorted(net.transitions), 2):
        if net.pre(t) & net.pre(u):
            out.add(frozenset((t, u)))
    return frozenset(out)


def validate_cn(net, subject="net"):
    rep = Report(subject)
    ts = sorted(net.transitions)
    rel = derived_relations(net)
    confl = cn_conflict(net)

    for t, u in itertools.product(ts, ts):
        if net.post(t) & net.pre(u):
            rep.fail("flow-causality", (t, u),
                     "flow must not chain transitions")
    produced = [s for t in ts for s in sorted(net.post(t))]
    if len(produced) != len(set(produced)):
        dup = sorted({s for s in produced if produced.count(s) > 1})
        rep.fail("unique-producers", tuple(dup),
                 "two transitions produce into one place")
    inhib_all = net.inhib_set(ts)
    for t, u in itertools.combinations(ts, 2):
        bad = net.pre(t) & net.pre(u) & inhib_all
        if bad:
            rep.fail("shared-presets-uninhibited", tuple(sorted(bad)),
                     "a shared input place must carry no inhibitor arc")
    cyc = _acyclic(ts, rel.causality)
    if cyc:
        rep.fail("causality-partial-order", cyc, "causality has a cycle")
    for (a, b), (b2, c) in itertools.product(rel.causality, rel.causality):
        if b == b2 and a != c and (a, c) not in rel.causality:
            rep.fail("causality-partial-order", (a, b, c),
                     "causality must be transitive")
    if not cyc:
        for t in ts:
            hist = sorted(causes(rel, t))
            for a, b in itertools.combinations(hist, 2):
                if frozenset((a, b)) in confl:
                    rep.fail("causes-conflict-free", (t, a, b),
                             f"the causal history of {t} contains a conflict")
    for pair in confl:
        for t, u in itertools.product(sorted(pair), repeat=2):
            if t == u:
                continue
            for (u2, v) in rel.causality:
                if u2 == u and v != t and frozenset((t, v)) not in confl:
                    rep.fail("conflict-inheritance", (t, u, v))
    expected = frozenset(net.pre_set(ts))
    if net.marking != expected:
        rep.fail("marking-covers-presets",
                 tuple(sorted(net.marking ^ expected)),
                 "marking must be exactly the preset places")
    stray = inhib_all - net.marking
    if stray:
        rep.fail("marking-covers-presets", tuple(sorted(stray)),
                 "inhibitor arcs must start at marked places")
    return rep


def cn_to_acn(net):
    """Render a causal net as an inhibitor-based net: drop shared input
    places, turn each shared-place conflict into mutual prevention arcs on
    the postsets, and saturate causality with the matching prevention arcs.
    """
    rep = validate_cn(net)
    if not rep.ok:
        raise NotApplicable(f"not a causal net: {sorted(rep.conditions())}")
    ts = sorted(net.transitions)
    shared = {s for s in net.places if len(net.post(s)) > 1}
    places = net.places - shared
    flow = frozenset((a, b) for a, b in net.flow
                     if a not in shared and b not in shared)
    inhib = {(s, t) for s, t in net.inhibitor if s not in shared}
    for s in sorted(shared):
        for t, u in itertools.permutations(sorted(net.post(s)), 2):
            for p in sorted(net.post(t)):
                inhib.add((p, u))
    trimmed = Ipt.build(places, ts, flow, inhib, net.marking & places)
    rel = derived_relations(trimmed)
    for t, u in rel.causality:
        for p in sorted(trimmed.post(u)):
            inhib.add((p, t))
    return Ipt.build(places, ts, flow, inhib, net.marking & places)
