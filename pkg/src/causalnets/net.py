"""Petri nets with inhibitor arcs and their step semantics.

Markings of safe nets are plain frozensets of place names.  Steps are
multisets of transitions, given as any iterable (a Counter, a list with
repetitions, ...).  Multisets appear as Counters internally; a marking that
would carry two tokens on one place raises UnsafeMarking instead of being
truncated.
"""
from collections import Counter
from dataclasses import dataclass

from .errors import (BoundExceeded, MalformedModel, NotEnabled,
                     RepeatedFiring, UnknownIdentifier, UnsafeMarking)

DEFAULT_BOUND = 1_000_000


def _pairs(items):
    return frozenset((a, b) for a, b in items)


@dataclass(frozen=True)
class Ipt:
    """A net ``(S, T, F, I, m)`` where F holds both (place, transition) and
    (transition, place) arcs and I holds (place, transition) inhibitor arcs."""

    places: frozenset
    transitions: frozenset
    flow: frozenset
    inhibitor: frozenset
    marking: frozenset

    @staticmethod
    def build(places, transitions, flow, inhibitor, marking):
        net = Ipt(frozenset(places), frozenset(transitions), _pairs(flow),
                  _pairs(inhibitor), frozenset(marking))
        net.check_well_formed()
        return net

    def check_well_formed(self):
        overlap = self.places & self.transitions
        if overlap:
            raise MalformedModel(
                f"ids used both as place and transition: {sorted(overlap)}")
        for x, y in self.flow:
            ok = (x in self.places and y in self.transitions) or \
                 (x in self.transitions and y in self.places)
            if not ok:
                raise UnknownIdentifier(f"flow arc ({x}, {y}) does not join "
                                        "a known place and transition")
        for s, t in self.inhibitor:
            if s not in self.places or t not in self.transitions:
                raise UnknownIdentifier(
                    f"inhibitor arc ({s}, {t}) must go from a place to a transition")
        missing = self.marking - self.places
        if missing:
            raise UnknownIdentifier(f"marked unknown places: {sorted(missing)}")
        for t in self.transitions:
            if not self.pre(t):
                raise MalformedModel(f"transition {t} has an empty preset")

    # -- basic structure -------------------------------------------------

    def pre(self, x):
        """Preset of a transition (its input places) or of a place (the
        transitions producing into it)."""
        return frozenset(a for a, b in self.flow if b == x)

    def post(self, x):
        return frozenset(b for a, b in self.flow if a == x)

    def inhib(self, t):
        return frozenset(s for s, u in self.inhibitor if u == t)

    def pre_set(self, xs):
        out = set()
        for x in xs:
            out |= self.pre(x)
        return frozenset(out)

    def post_set(self, xs):
        out = set()
        for x in xs:
            out |= self.post(x)
        return frozenset(out)

    def inhib_set(self, ts):
        out = set()
        for t in ts:
            out |= self.inhib(t)
        return frozenset(out)

    # -- step semantics --------------------------------------------------

    def _step(self, step):
        a = Counter(step)
        unknown = set(a) - set(self.transitions)
        if unknown:
            raise UnknownIdentifier(f"unknown transitions in step: {sorted(unknown)}")
        return a

    def step_pre(self, step):
        a = self._step(step)
        out = Counter()
        for t, n in a.items():
            for s in self.pre(t):
                out[s] += n
        return out

    def step_post(self, step):
        a = self._step(step)
        out = Counter()
        for t, n in a.items():
            for s in self.post(t):
                out[s] += n
        return out

    def enabled(self, marking, step):
        """Is the multiset `step` enabled at `marking`?

        Requires the step's preset inside the marking, no inhibiting place
        marked, and no member of the step inhibited by what the rest of the
        step produces.  The empty step is enabled everywhere.
        """
        a = self._step(step)
        m = Counter(marking)
        pre = self.step_pre(a)
        if any(pre[s] > m[s] for s in pre):
            return False
        if self.inhib_set(a) & frozenset(+m):
            return False
        for t in a:
            rest = a - Counter({t: 1})
            if self.inhib(t) & frozenset(+self.step_post(rest)):
                return False
        return True

    def fire(self, marking, step):
        """Fire `step` at `marking`; returns the successor marking as a
        frozenset.  Raises NotEnabled / UnsafeMarking as appropriate."""
        a = self._step(step)
        if not self.enabled(marking, a):
            raise NotEnabled(a, marking)
        m = Counter(marking) - self.step_pre(a) + self.step_post(a)
        doubled = sorted(s for s, n in m.items() if n > 1)
        if doubled:
            raise UnsafeMarking(
                f"firing {sorted(a.elements())} puts two tokens on {doubled}")
        return frozenset(+m)

    def single_steps(self, marking):
        """Transitions enabled as singleton steps, sorted."""
        return [t for t in sorted(self.transitions)
                if self.enabled(marking, [t])]


def reachable_markings(net, bound=DEFAULT_BOUND):
    """All markings reachable from the initial one.

    Exploration goes by singleton steps; any enabled multiset step of these
    nets linearises, so this covers step reachability (checked separately by
    the test suite).
    """
    seen = {net.marking}
    todo = [net.marking]
    while todo:
        m = todo.pop()
        for t in net.single_steps(m):
            m2 = net.fire(m, [t])
            if m2 not in seen:
                seen.add(m2)
                if len(seen) > bound:
                    raise BoundExceeded(bound, "markings")
                todo.append(m2)
    return frozenset(seen)


def is_safe(net, bound=DEFAULT_BOUND):
    """True when no reachable multiset marking carries two tokens on a place."""
    start = Counter(net.marking)
    key = lambda m: tuple(sorted(m.items()))
    seen = {key(start)}
    todo = [start]
    while todo:
        m = todo.pop()
        for t in sorted(net.transitions):
            pre = net.step_pre([t])
            if any(pre[s] > m[s] for s in pre):
                continue
            if net.inhib(t) & frozenset(+m):
                continue
            m2 = m - pre + net.step_post([t])
            if any(n > 1 for n in m2.values()):
                return False
            k = key(m2)
            if k not in seen:
                seen.add(k)
                if len(seen) > bound:
                    raise BoundExceeded(bound, "markings")
                todo.append(m2)
    return True


def states(net, single_fire=True, bound=DEFAULT_BOUND):
    """The multisets of transitions fired along the executions of `net`.

    With single_fire=True a transition showing up twice in one execution
    raises RepeatedFiring, and the result is a set of frozensets.  With
    single_fire=False the result is a set of sorted (transition, count)
    tuples.
    """
    key = lambda m, fired: (frozenset(m), tuple(sorted(fired.items())))
    start = (net.marking, Counter())
    seen = {key(*start)}
    out = set()
    todo = [start]
    while todo:
        m, fired = todo.pop()
        out.add(tuple(sorted(fired.items())))
        for t in net.single_steps(m):
            if single_fire and fired[t]:
                raise RepeatedFiring(f"transition {t} fired twice")
            m2 = net.fire(m, [t])
            fired2 = fired + Counter({t: 1})
            k = key(m2, fired2)
            if k not in seen:
                seen.add(k)
                if len(seen) > bound:
                    raise BoundExceeded(bound, "executions")
                todo.append((m2, fired2))
    if single_fire:
        return frozenset(frozenset(t for t, _ in st) for st in out)
    return frozenset(out)
