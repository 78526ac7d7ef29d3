"""Asymmetric event structures, with and without reversibility.

Relations are frozensets of pairs of event names.  For a reversible event u,
its undoing is written ("undo", u) in witnesses; the reverse-causation
relation pairs (e, u) mean "e must hold to undo u", prevention pairs (u, e)
mean "undoing u is blocked while e holds".
"""
import itertools
from dataclasses import dataclass

import networkx as nx

from .errors import (BoundExceeded, MalformedModel, ModelError,
                     NotApplicable, UnknownIdentifier)
from .graphs import ConfigGraph
from .net import DEFAULT_BOUND
from .report import Report


def _pairs(items):
    return frozenset((a, b) for a, b in items)


def _check_domain(pairs, events, what):
    for a, b in pairs:
        if a not in events or b not in events:
            raise UnknownIdentifier(f"{what} pair ({a}, {b}) mentions "
                                    "unknown events")


def _closure(pairs):
    out = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (b2, c) in itertools.product(list(out), list(out)):
            if b == b2 and (a, c) not in out:
                out.add((a, c))
                changed = True
    return frozenset(out)


def _acyclic(nodes, edges):
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((a, b) for a, b in edges if a in g and b in g)
    try:
        cyc = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return None
    return tuple(a for a, _ in cyc)


def conflict_of(weak_causality):
    return frozenset(frozenset((a, b)) for a, b in weak_causality
                     if (b, a) in weak_causality and a != b)


def causes_of(causation, e):
    g = nx.DiGraph()
    g.add_node(e)
    g.add_edges_from(causation)
    return frozenset(nx.ancestors(g, e) | {e}) if e in g else frozenset((e,))


@dataclass(frozen=True)
class Aes:
    events: frozenset
    causation: frozenset
    weak_causality: frozenset

    @staticmethod
    def build(events, causation, weak_causality):
        es = Aes(frozenset(events), _pairs(causation), _pairs(weak_causality))
        _check_domain(es.causation, es.events, "causation")
        _check_domain(es.weak_causality, es.events, "weak causality")
        return es

    def conflict(self):
        return conflict_of(self.weak_causality)


@dataclass(frozen=True)
class Raes:
    events: frozenset
    reversible: frozenset
    causation: frozenset
    weak_causality: frozenset
    rev_causation: frozenset  # (e, u): e conditions the undoing of u
    prevention: frozenset     # (u, e): e blocks the undoing of u

    @staticmethod
    def build(events, reversible, causation, weak_causality,
              rev_causation, prevention):
        es = Raes(frozenset(events), frozenset(reversible), _pairs(causation),
                  _pairs(weak_causality), _pairs(rev_causation),
                  _pairs(prevention))
        if not es.reversible <= es.events:
            raise UnknownIdentifier("reversible events must be events")
        _check_domain(es.causation, es.events, "causation")
        _check_domain(es.weak_causality, es.events, "weak causality")
        for e, u in es.rev_causation:
            if e not in es.events or u not in es.reversible:
                raise UnknownIdentifier(
                    f"reverse causation pair ({e}, {u}) needs an event and "
                    "a reversible event")
        for u, e in es.prevention:
            if e not in es.events or u not in es.reversible:
                raise UnknownIdentifier(
                    f"prevention pair ({u}, {e}) needs a reversible event "
                    "and an event")
        return es

    def forward(self):
        return Aes(self.events, self.causation, self.weak_causality)

    def conflict(self):
        return conflict_of(self.weak_causality)


def validate_aes(es, subject="es"):
    rep = Report(subject)
    cau = es.causation
    for e in sorted(es.events):
        if (e, e) in cau:
            rep.fail("causality-irreflexive-po", (e,), "causality is reflexive")
    for (a, b), (b2, c) in itertools.product(cau, cau):
        if b == b2 and (a, c) not in cau:
            rep.fail("causality-irreflexive-po", (a, b, c),
                     "causality must be transitive")
    for a, b in cau:
        if (a, b) not in es.weak_causality:
            rep.fail("causality-implies-weak", (a, b))
    for e in sorted(es.events):
        hist = causes_of(cau, e)
        local = [(a, b) for a, b in es.weak_causality
                 if a in hist and b in hist]
        cyc = _acyclic(hist, local)
        if cyc:
            rep.fail("causes-acyclic", (e,) + cyc,
                     "weak causality has a cycle inside a causal history")
    confl = es.conflict() if isinstance(es, Aes) else conflict_of(es.weak_causality)
    for pair in confl:
        for a, b in itertools.permutations(sorted(pair), 2):
            for (b2, c) in cau:
                if b2 == b and c != a and frozenset((a, c)) not in confl:
                    rep.fail("conflict-inheritance", (a, b, c),
                             f"{a} conflicts with {b}, {b} causes {c}, but "
                             f"{a} and {c} do not conflict")
    return rep


def sustained_causation(raes):
    """Causation pairs that survive reversibility: (e, e') stays when e is
    irreversible or e' blocks the undoing of e."""
    return frozenset((e, e2) for e, e2 in raes.causation
                     if e not in raes.reversible
                     or (e, e2) in raes.prevention)


def validate_raes(raes, subject="es"):
    rep = Report(subject)
    cau = raes.causation
    for e in sorted(raes.events):
        if (e, e) in cau:
            rep.fail("causality-irreflexive", (e,))
    for e in sorted(raes.events):
        hist = causes_of(cau, e)
        local = [(a, b) for a, b in (raes.weak_causality | cau)
                 if a in hist and b in hist]
        cyc = _acyclic(hist, local)
        if cyc:
            rep.fail("causes-acyclic", (e,) + cyc,
                     "causality and weak causality have a cycle inside "
                     "a causal history")
    for u in sorted(raes.reversible):
        if (u, u) not in raes.rev_causation:
            rep.fail("undo-own-event", (u,),
                     f"undoing {u} must require {u} itself")
        uc = frozenset(e for e, u2 in raes.rev_causation if u2 == u)
        local = [(a, b) for a, b in (raes.weak_causality | cau)
                 if a in uc and b in uc]
        cyc = _acyclic(uc, local)
        if cyc:
            rep.fail("undo-causes-acyclic", (u,) + cyc,
                     "the events conditioning an undoing must be "
                     "orderable")
    for e, u in raes.rev_causation:
        if (u, e) in raes.prevention:
            rep.fail("undo-cause-prevention-exclusive", (e, u),
                     f"{e} both conditions and blocks the undoing of {u}")
    sus = Aes(raes.events, sustained_causation(raes), raes.weak_causality)
    rep.merge(validate_aes(sus), "sustained")
    if not raes.causation <= raes.weak_causality:
        rep.note("causation is not included in weak causality; the "
                 "underlying forward structure is not an asymmetric "
                 "event structure in the strict sense")
    return rep


# -- configurations -----------------------------------------------------


def is_aes_configuration(es, xs):
    xs = frozenset(xs)
    for a, b in es.causation:
        if b in xs and a not in xs:
            return False
    local = [(a, b) for a, b in es.weak_causality if a in xs and b in xs]
    return _acyclic(xs, local) is None


def aes_extends(es, xs, ys):
    xs, ys = frozenset(xs), frozenset(ys)
    if not xs <= ys:
        return False
    return all((b, a) not in es.weak_causality
               for a in xs for b in ys - xs)


@dataclass(frozen=True)
class ConfigFamily:
    configs: frozenset
    extends: frozenset   # pairs of configurations
    reachable: frozenset

    def to_json(self):
        return {
            "configurations": sorted(sorted(c) for c in self.configs),
            "extends": sorted([sorted(a), sorted(b)] for a, b in self.extends),
            "reachable": sorted(sorted(c) for c in self.reachable),
        }


def aes_configurations(es, bound=DEFAULT_BOUND):
    rep = validate_aes(es)
    if not rep.ok:
        raise NotApplicable(
            f"not an asymmetric event structure: {sorted(rep.conditions())}")
    evs = sorted(es.events)
    if 2 ** len(evs) > bound:
        raise BoundExceeded(bound, "candidate subsets")
    configs = frozenset(frozenset(xs)
                        for r in range(len(evs) + 1)
                        for xs in itertools.combinations(evs, r)
                        if is_aes_configuration(es, xs))
    extends = frozenset((a, b) for a, b in itertools.product(configs, configs)
                        if a != b and aes_extends(es, a, b))
    reachable = {frozenset()}
    todo = [frozenset()]
    while todo:
        x = todo.pop()
        for e in evs:
            if e in x:
                continue
            y = x | {e}
            if y in configs and aes_extends(es, x, y) and y not in reachable:
                reachable.add(y)
                todo.append(y)
    return ConfigFamily(configs, extends, frozenset(reachable))


def raes_enabled(raes, xs, do, undo):
    """Is the mixed step (do ∪ undo) enabled at configuration xs?"""
    xs = frozenset(xs)
    do = frozenset(do)
    undo = frozenset(undo)
    if not xs <= raes.events or not do <= raes.events:
        raise UnknownIdentifier("configuration or step outside the events")
    if not undo <= raes.reversible:
        raise UnknownIdentifier("undoing a non-reversible event")
    if do & xs or not undo <= xs:
        return False
    scope = do | xs
    local = [(a, b) for a, b in raes.weak_causality
             if a in scope and b in scope]
    if _acyclic(scope, local) is not None:
        return False
    for e in do:
        for a, b in raes.causation:
            if b == e and a not in xs - undo:
                return False
        for a, b in raes.weak_causality:
            if a == e and b in xs | do:
                return False
    for u in undo:
        for a, u2 in raes.rev_causation:
            if u2 == u and a not in xs - (undo - {u}):
                return False
        for u2, b in raes.prevention:
            if u2 == u and b in xs | do:
                return False
    return True


def raes_fire(raes, xs, do, undo):
    from .errors import NotEnabled
    if not raes_enabled(raes, xs, do, undo):
        raise NotEnabled(set(do) | {("undo", u) for u in undo}, xs)
    return frozenset((frozenset(xs) - frozenset(undo)) | frozenset(do))


def raes_config_graph(raes, mixed_steps=False, bound=DEFAULT_BOUND):
    """Configurations reachable from the empty one.  By default steps do or
    undo a single event; mixed_steps=True allows every simultaneous step."""
    rep = validate_raes(raes)
    if not rep.ok:
        raise NotApplicable(
            f"not a reversible event structure: {sorted(rep.conditions())}")
    root = frozenset()
    seen = {root}
    edges = set()
    todo = [root]
    evs = sorted(raes.events)
    while todo:
        xs = todo.pop()
        steps = []
        if mixed_steps:
            outside = sorted(set(evs) - xs)
            inside = sorted(xs & raes.reversible)
            for da in _subsets(outside):
                for ua in _subsets(inside):
                    if da or ua:
                        steps.append((da, ua))
        else:
            steps.extend(((frozenset((e,)), frozenset()) for e in evs
                          if e not in xs))
            steps.extend(((frozenset(), frozenset((u,))) for u in sorted(
                xs & raes.reversible)))
        for do, undo in steps:
            if not raes_enabled(raes, xs, do, undo):
                continue
            ys = (xs - undo) | do
            for e in sorted(do):
                edges.add((xs, ("do", e), ys))
            for u in sorted(undo):
                edges.add((xs, ("undo", u), ys))
            if ys not in seen:
                seen.add(ys)
                if len(seen) > bound:
                    raise BoundExceeded(bound, "configurations")
                todo.append(ys)
    return ConfigGraph(root, frozenset(seen), frozenset(edges))


def _subsets(items):
    out = []
    for r in range(len(items) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(items, r))
    return out


def saturate_raes(raes):
    """Close causation transitively, add the weak-causality pairs it implies,
    and propagate conflicts down sustained causation.  Used to repair
    structures whose drawn relations leave these closure pairs implicit."""
    cau = _closure(raes.causation)
    weak = set(raes.weak_causality) | set(cau)
    changed = True
    while changed:
        changed = False
        confl = conflict_of(frozenset(weak))
        sus = _closure(sustained_causation(
            Raes(raes.events, raes.reversible, cau, frozenset(weak),
                 raes.rev_causation, raes.prevention)))
        for pair in confl:
            for a, b in itertools.permutations(sorted(pair), 2):
                for (b2, c) in sus:
                    if b2 == b and c != a and frozenset((a, c)) not in confl:
                        weak.add((a, c))
                        weak.add((c, a))
                        changed = True
    return Raes(raes.events, raes.reversible, cau, frozenset(weak),
                raes.rev_causation, raes.prevention)


# -- coproduct -----------------------------------------------------------


def _tag(i, x):
    return f"{i}:{x}"


def raes_coproduct(r0, r1):
    """Tagged disjoint union; relations stay inside each component except
    weak causality and prevention, which additionally relate every pair of
    events from different components (so cross events are in conflict)."""
    from .maps import EsMorphism
    parts = (r0, r1)
    events = set()
    reversible = set()
    cau = set()
    weak = set()
    rcau = set()
    prev = set()
    for i, r in enumerate(parts):
        events |= {_tag(i, e) for e in r.events}
        reversible |= {_tag(i, u) for u in r.reversible}
        cau |= {(_tag(i, a), _tag(i, b)) for a, b in r.causation}
        weak |= {(_tag(i, a), _tag(i, b)) for a, b in r.weak_causality}
        rcau |= {(_tag(i, a), _tag(i, b)) for a, b in r.rev_causation}
        prev |= {(_tag(i, a), _tag(i, b)) for a, b in r.prevention}
    for a in parts[0].events:
        for b in parts[1].events:
            weak.add((_tag(0, a), _tag(1, b)))
            weak.add((_tag(1, b), _tag(0, a)))
    for u in parts[0].reversible:
        for b in parts[1].events:
            prev.add((_tag(0, u), _tag(1, b)))
    for u in parts[1].reversible:
        for b in parts[0].events:
            prev.add((_tag(1, u), _tag(0, b)))
    cop = Raes.build(events, reversible, cau, weak, rcau, prev)
    inj0 = EsMorphism.build({e: _tag(0, e) for e in r0.events})
    inj1 = EsMorphism.build({e: _tag(1, e) for e in r1.events})
    return cop, inj0, inj1


# -- merged-relation presentation ---------------------------------------


@dataclass(frozen=True)
class SRaes:
    """The single-relation presentation: one causation-like relation from
    events to events-or-undoings and one prevention-like relation from
    events-or-undoings to events.  Undoings appear as ("undo", u) pairs."""

    events: frozenset
    reversible: frozenset
    causation: frozenset   # (event, target) with target event or ("undo", u)
    prevention: frozenset  # (source, event) with source event or ("undo", u)

    @staticmethod
    def build(events, reversible, causation, prevention):
        es = SRaes(frozenset(events), frozenset(reversible),
                   frozenset((a, _norm(b)) for a, b in causation),
                   frozenset((_norm(a), b) for a, b in prevention))
        if not es.reversible <= es.events:
            raise UnknownIdentifier("reversible events must be events")
        for a, b in es.causation:
            _check_side(es, a, False, "causation")
            _check_side(es, b, True, "causation")
        for a, b in es.prevention:
            _check_side(es, a, True, "prevention")
            _check_side(es, b, False, "prevention")
        return es


def _norm(x):
    if isinstance(x, (list, tuple)):
        kind, name = x
        if kind != "undo":
            raise MalformedModel(f"bad undoing reference {x!r}")
        return ("undo", name)
    return x


def _check_side(es, x, undo_ok, what):
    if isinstance(x, tuple):
        if not undo_ok:
            raise MalformedModel(f"{what} cannot use an undoing here: {x!r}")
        if x[1] not in es.reversible:
            raise UnknownIdentifier(f"{what} undoes non-reversible {x[1]}")
    elif x not in es.events:
        raise UnknownIdentifier(f"{what} mentions unknown event {x}")


def raes_to_sraes(raes):
    cau = {(a, b) for a, b in raes.causation}
    cau |= {(e, ("undo", u)) for e, u in raes.rev_causation}
    prev = {(a, b) for a, b in raes.weak_causality}
    prev |= {(("undo", u), e) for u, e in raes.prevention}
    return SRaes.build(raes.events, raes.reversible, cau, prev)


def sraes_to_raes(sr):
    cau = {(a, b) for a, b in sr.causation if not isinstance(b, tuple)}
    rcau = {(a, b[1]) for a, b in sr.causation if isinstance(b, tuple)}
    weak = {(a, b) for a, b in sr.prevention if not isinstance(a, tuple)}
    prev = {(a[1], b) for a, b in sr.prevention if isinstance(a, tuple)}
    try:
        raes = Raes.build(sr.events, sr.reversible, cau, weak, rcau, prev)
    except ModelError as exc:
        raise NotApplicable(
            f"merged presentation does not split: {exc}") from exc
    rep = validate_raes(raes)
    if not rep.ok:
        raise NotApplicable(
            "merged presentation does not split into a valid reversible "
            f"event structure: {sorted(rep.conditions())}")
    return raes
