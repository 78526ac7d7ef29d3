"""Morphism carriers.

An event-structure morphism is a partial function on events.  A net morphism
pairs a relation on places with a partial function on transitions.  Both keep
an explicit `undefined` set so that serialised morphisms state totality of
intent: every source item must be either mapped or listed undefined.
"""
from dataclasses import dataclass

from .errors import MalformedModel


def _freeze_fun(mapping):
    if isinstance(mapping, dict):
        return frozenset(mapping.items())
    return frozenset(tuple(p) for p in mapping)


@dataclass(frozen=True)
class EsMorphism:
    events: frozenset    # pairs (source event, target event)
    undefined: frozenset

    @staticmethod
    def build(events, undefined=()):
        pairs = _freeze_fun(events)
        if len({a for a, _ in pairs}) != len(pairs):
            raise MalformedModel("event map is not a function")
        m = EsMorphism(pairs, frozenset(undefined))
        if m.undefined & {a for a, _ in pairs}:
            raise MalformedModel("event both mapped and declared undefined")
        return m

    def as_dict(self):
        return dict(sorted(self.events))

    def apply(self, e):
        return self.as_dict().get(e)

    def check_total_over(self, events):
        missing = frozenset(events) - {a for a, _ in self.events} - self.undefined
        if missing:
            raise MalformedModel(
                f"morphism says nothing about events {sorted(missing)}")

    def to_json(self):
        return {
            "kind": "es-morphism",
            "events": self.as_dict(),
            "undefined": sorted(self.undefined),
        }


def compose_es(f, g):
    """g after f."""
    gd = g.as_dict()
    events = {}
    undefined = set(f.undefined)
    for a, b in sorted(f.events):
        if b in gd:
            events[a] = gd[b]
        else:
            undefined.add(a)
    return EsMorphism.build(events, undefined)


@dataclass(frozen=True)
class NetMorphism:
    places: frozenset      # relation: pairs (source place, target place)
    transitions: frozenset  # partial function as pairs
    undefined: frozenset

    @staticmethod
    def build(places, transitions, undefined=()):
        tpairs = _freeze_fun(transitions)
        if len({a for a, _ in tpairs}) != len(tpairs):
            raise MalformedModel("transition map is not a function")
        m = NetMorphism(frozenset(tuple(p) for p in places), tpairs,
                        frozenset(undefined))
        if m.undefined & {a for a, _ in tpairs}:
            raise MalformedModel("transition both mapped and declared undefined")
        return m

    def trans_dict(self):
        return dict(sorted(self.transitions))

    def apply_trans(self, t):
        return self.trans_dict().get(t)

    def place_image(self, s):
        return frozenset(b for a, b in self.places if a == s)

    def place_preimage(self, s1):
        return frozenset(a for a, b in self.places if b == s1)

    def set_image(self, ss):
        out = set()
        for s in ss:
            out |= self.place_image(s)
        return frozenset(out)

    def multi_image(self, ss):
        """Multiset image of a set of places, as sorted tuples."""
        out = []
        for s in ss:
            out.extend(sorted(self.place_image(s)))
        return tuple(sorted(out))

    def check_total_over(self, transitions):
        missing = (frozenset(transitions) - {a for a, _ in self.transitions}
                   - self.undefined)
        if missing:
            raise MalformedModel(
                f"morphism says nothing about transitions {sorted(missing)}")

    def to_json(self):
        return {
            "kind": "net-morphism",
            "places": sorted(map(list, self.places)),
            "transitions": self.trans_dict(),
            "undefined": sorted(self.undefined),
        }


def compose_net(f, g):
    """g after f: relation composition on places, partial composition on
    transitions."""
    gd = g.trans_dict()
    trans = {}
    undefined = set(f.undefined)
    for a, b in sorted(f.transitions):
        if b in gd:
            trans[a] = gd[b]
        else:
            undefined.add(a)
    places = {(a, c) for a, b in f.places for b2, c in g.places if b == b2}
    return NetMorphism.build(places, trans, undefined)
