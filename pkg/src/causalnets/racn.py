"""Reversible asymmetric causal nets.

A reversible net is a plain net plus a map naming which transitions are
reversals: `reverses[u] == t` says transition u undoes transition t.  The
forward restriction (dropping the reversing transitions) must be a pACN.
"""
import itertools
from dataclasses import dataclass

from .acn import Relations, derived_relations, validate_pacn, _acyclic
from .errors import (BoundExceeded, MalformedModel, NotApplicable,
                     UnknownIdentifier)
from .net import DEFAULT_BOUND, Ipt
from .graphs import ConfigGraph
from .maps import NetMorphism
from .report import Report


@dataclass(frozen=True)
class Racn:
    net: Ipt
    reverses: frozenset  # pairs (undoing-transition, undone-transition)

    @staticmethod
    def build(net, reverses):
        pairs = frozenset((a, b) for a, b in
                          (reverses.items() if isinstance(reverses, dict)
                           else reverses))
        r = Racn(net, pairs)
        for u, t in pairs:
            if u not in net.transitions or t not in net.transitions:
                raise UnknownIdentifier(
                    f"backward map mentions unknown transitions ({u}, {t})")
        if len({u for u, _ in pairs}) != len(pairs):
            raise MalformedModel("a transition cannot undo two transitions")
        if {u for u, _ in pairs} & {t for _, t in pairs}:
            raise MalformedModel(
                "a transition cannot be both forward and undoing")
        return r

    @property
    def undo_of(self):
        return dict(sorted(self.reverses))

    @property
    def backward(self):
        return frozenset(u for u, _ in self.reverses)

    @property
    def forward(self):
        return self.net.transitions - self.backward

    def undoer(self, t):
        """The transition undoing forward transition t, or None."""
        for u, v in self.reverses:
            if v == t:
                return u
        return None

    def forward_restriction(self):
        fwd = self.forward
        return Ipt.build(
            self.net.places, fwd,
            {(a, b) for a, b in self.net.flow if a in fwd or b in fwd},
            {(s, t) for s, t in self.net.inhibitor if t in fwd},
            self.net.marking)


@dataclass(frozen=True)
class BackwardRelations:
    rev_causation: frozenset   # (t, u): t must be present to fire undoing u
    rev_prevention: frozenset  # (u, t): undoing u is blocked once t produced

    def to_json(self):
        return {
            "rev_causation": sorted(map(list, self.rev_causation)),
            "rev_prevention": sorted(map(list, self.rev_prevention)),
        }


def backward_relations(racn):
    net = racn.net
    cau = set()
    prev = set()
    for u in sorted(racn.backward):
        for t in sorted(racn.forward):
            if net.pre(t) & net.inhib(u):
                cau.add((t, u))
            if net.post(t) & net.inhib(u):
                prev.add((u, t))
    return BackwardRelations(frozenset(cau), frozenset(prev))


def sustained_causation_net(racn, rel=None):
    """Transitive closure of the causality pairs (t, t') where t is either
    irreversible or its undoing is blocked by t' having produced."""
    net = racn.net
    rel = rel or derived_relations(racn.forward_restriction())
    undo = {t: u for u, t in racn.reverses}
    kept = set()
    for t, t2 in rel.causality:
        u = undo.get(t)
        if u is None or net.inhib(u) & net.post(t2):
            kept.add((t, t2))
    closure = set(kept)
    changed = True
    while changed:
        changed = False
        for (a, b), (b2, c) in itertools.product(list(closure), list(closure)):
            if b == b2 and (a, c) not in closure:
                closure.add((a, c))
                changed = True
    return frozenset(closure)


def validate_racn(racn, subject="net"):
    rep = Report(subject)
    net = racn.net
    fwd_net = racn.forward_restriction()
    rep.merge(validate_pacn(fwd_net), "forward-restriction")
    rel = derived_relations(fwd_net)

    undone = [t for _, t in racn.reverses]
    if len(undone) != len(set(undone)):
        dup = sorted({t for t in undone if undone.count(t) > 1})
        rep.fail("reversal-unique", tuple(dup),
                 "a forward transition has two undoings")
    for u, t in sorted(racn.reverses):
        if net.pre(u) != net.post(t) or net.post(u) != net.pre(t):
            rep.fail("reversal-pairing", (u, t),
                     f"{u} must consume exactly post({t}) and restore pre({t})")
        if not net.pre(t) <= net.inhib(u):
            rep.fail("reversal-pairing", (u, t),
                     f"{u} must be inhibited by pre({t})")
    for u in sorted(racn.backward):
        affected = frozenset(t for t in racn.forward
                             if net.inhib(u) & net.pre(t))
        local = [(a, b) for a, b in rel.weak_causality
                 if a in affected and b in affected]
        cyc = _acyclic(affected, local)
        if cyc:
            rep.fail("undo-causes-acyclic", (u,) + cyc,
                     "weak causality must be acyclic on the transitions "
                     "conditioning the undoing")
        for t in sorted(racn.forward):
            if net.pre(t) & net.inhib(u) and net.post(t) & net.inhib(u):
                rep.fail("undo-cause-prevention-exclusive", (t, u),
                         f"{t} both conditions and blocks {u}")
    sus = sustained_causation_net(racn, rel)
    for pair in rel.conflict:
        for t, u in itertools.product(sorted(pair), repeat=2):
            if t == u:
                continue
            for (u2, v) in sus:
                if u2 == u and v != t and frozenset((t, v)) not in rel.conflict:
                    rep.fail("conflict-inheritance-sustained", (t, u, v),
                             f"{t} conflicts with {u}, {u} causes {v} in a "
                             f"sustained way, but {t} and {v} do not conflict")
    return rep


def racn_configurations(racn, bound=DEFAULT_BOUND):
    """The configuration graph: nodes are the sets of forward transitions
    whose effect is present in a reachable marking, edges the firings."""
    rep = validate_racn(racn)
    if not rep.ok:
        raise NotApplicable(f"not a reversible net: {sorted(rep.conditions())}")
    net = racn.net
    undo_of = racn.undo_of

    def config(m):
        return frozenset(t for t in net.pre_set(m) if t in racn.forward)

    root = net.marking
    seen = {root}
    by_config = {config(root): root}
    edges = set()
    todo = [root]
    while todo:
        m = todo.pop()
        x = config(m)
        for t in net.single_steps(m):
            m2 = net.fire(m, [t])
            x2 = config(m2)
            if x2 in by_config and by_config[x2] != m2:
                raise MalformedModel(
                    f"configuration {sorted(x2)} reached with two different "
                    "markings; the net does not determine markings by "
                    "configurations")
            by_config.setdefault(x2, m2)
            label = ("undo", undo_of[t]) if t in undo_of else ("do", t)
            edges.add((x, label, x2))
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > bound:
                    raise BoundExceeded(bound, "markings")
                todo.append(m2)
    return ConfigGraph(config(root), frozenset(by_config), frozenset(edges))


# -- coproduct -----------------------------------------------------------


def _tag(i, x):
    return f"{i}:{x}"


def racn_coproduct(r0, r1):
    """Disjoint union of two reversible nets where firing on one side kills
    the other: every transition is inhibited by every produced place of the
    other component.  Returns the coproduct plus both injections (as pairs
    of place/transition renamings)."""
    nets = (r0, r1)
    places = set()
    transitions = set()
    flow = set()
    inhibitor = set()
    marking = set()
    reverses = set()
    for i, r in enumerate(nets):
        n = r.net
        places |= {_tag(i, s) for s in n.places}
        transitions |= {_tag(i, t) for t in n.transitions}
        flow |= {(_tag(i, a), _tag(i, b)) for a, b in n.flow}
        inhibitor |= {(_tag(i, s), _tag(i, t)) for s, t in n.inhibitor}
        marking |= {_tag(i, s) for s in n.marking}
        reverses |= {(_tag(i, u), _tag(i, t)) for u, t in r.reverses}
    for i, r in enumerate(nets):
        j = 1 - i
        other = nets[j]
        produced = other.net.post_set(other.forward)
        for t in r.net.transitions:
            for s in produced:
                inhibitor.add((_tag(j, s), _tag(i, t)))
    cop = Racn.build(
        Ipt.build(places, transitions, flow, inhibitor, marking), reverses)
    injections = []
    for i, r in enumerate(nets):
        injections.append(NetMorphism.build(
            {(s, _tag(i, s)) for s in r.net.places},
            {t: _tag(i, t) for t in r.net.transitions}))
    return cop, injections[0], injections[1]
