"""Translation between reversible event structures and reversible nets.

Every event e gets a fresh pre-place ``p:e`` and post-place ``q:e``; the
event itself becomes a forward transition, a reversible event additionally
gets an undoing transition ``~e``.  Relations become inhibitor arcs:

* e causes e'        ->  (p:e, e')   e' waits until e consumed its token
* e weakly-causes e' ->  (q:e', e)   e is dead once e' produced
* e conditions undo u -> (p:e, ~u)
* undo u blocked by e -> (q:e, ~u)

Reading the derived relations back off such a net recovers the structure
literally, so the round trip is the identity.
"""
from .acn import derived_relations
from .errors import MalformedModel, NotApplicable
from .es import Raes, saturate_raes, validate_raes
from .maps import EsMorphism, NetMorphism
from .net import Ipt
from .racn import Racn, backward_relations


def pre_place(e):
    return f"p:{e}"


def post_place(e):
    return f"q:{e}"


def undo_name(e):
    return f"~{e}"


def raes_to_racn(raes, saturate=False):
    if saturate:
        raes = saturate_raes(raes)
    rep = validate_raes(raes)
    if not rep.ok:
        raise NotApplicable(
            f"not a reversible event structure: {sorted(rep.conditions())}")
    evs = sorted(raes.events)
    names = set(evs) | {undo_name(u) for u in raes.reversible}
    if len(names) != len(evs) + len(raes.reversible):
        raise MalformedModel("event names collide with undoing names")
    places = {pre_place(e) for e in evs} | {post_place(e) for e in evs}
    transitions = set(evs) | {undo_name(u) for u in raes.reversible}
    flow = set()
    inhibitor = set()
    for e in evs:
        flow.add((pre_place(e), e))
        flow.add((e, post_place(e)))
    for u in sorted(raes.reversible):
        flow.add((post_place(u), undo_name(u)))
        flow.add((undo_name(u), pre_place(u)))
        inhibitor.add((pre_place(u), undo_name(u)))
    for a, b in raes.causation:
        inhibitor.add((pre_place(a), b))
    for a, b in raes.weak_causality:
        inhibitor.add((post_place(b), a))
    for e, u in raes.rev_causation:
        inhibitor.add((pre_place(e), undo_name(u)))
    for u, e in raes.prevention:
        inhibitor.add((post_place(e), undo_name(u)))
    net = Ipt.build(places, transitions, flow, inhibitor,
                    {pre_place(e) for e in evs})
    return Racn.build(net, {undo_name(u): u for u in sorted(raes.reversible)})


def racn_to_raes(racn):
    """Read the event structure off a reversible net: forward transitions
    are the events, relations are the derived ones."""
    rel = derived_relations(racn.forward_restriction())
    back = backward_relations(racn)
    undone = {t: u for u, t in racn.reverses}
    return Raes.build(
        racn.forward,
        set(undone),
        rel.causality,
        rel.weak_causality,
        {(t, undone_of) for (t, u) in back.rev_causation
         for undone_of in [dict(racn.reverses)[u]]},
        {(dict(racn.reverses)[u], t) for (u, t) in back.rev_prevention})


def round_trip_identity(raes):
    """Does translating to a net and back reproduce the structure literally?"""
    return racn_to_raes(raes_to_racn(raes)) == raes


def map_raes_morphism(f, src, dst):
    """Turn an event-structure morphism into the net morphism between the
    translated nets."""
    fd = f.as_dict()
    places = set()
    trans = {}
    undefined = set(f.undefined)
    for e in sorted(src.events):
        if e in fd:
            places.add((pre_place(e), pre_place(fd[e])))
            places.add((post_place(e), post_place(fd[e])))
            trans[e] = fd[e]
        else:
            undefined.add(e)
    for u in sorted(src.reversible):
        if u in fd and fd[u] in dst.reversible:
            trans[undo_name(u)] = undo_name(fd[u])
        else:
            undefined.add(undo_name(u))
    return NetMorphism.build(places, trans, undefined - set(trans))


def map_racn_morphism(g, src, dst):
    """Project a net morphism between translated nets back onto events."""
    gd = g.trans_dict()
    events = {t: gd[t] for t in sorted(src.forward) if t in gd}
    undefined = {t for t in src.forward if t not in gd}
    return EsMorphism.build(events, undefined)
