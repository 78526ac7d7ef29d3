"""Morphism checkers and brute-force semantic oracles.

The checkers evaluate the defining clauses and report violations; the
oracles replay the full behaviour of the source model and verify that its
image is behaviour of the target.  Keeping both lets the tests confirm the
clause-level definitions against the semantics they are meant to guarantee.
"""
import itertools

from .acn import (derived_relations, is_coherent, relevant_marking,
                  validate_pacn)
from .es import causes_of, conflict_of, raes_config_graph, raes_enabled
from .errors import NotApplicable
from .maps import EsMorphism, NetMorphism
from .net import DEFAULT_BOUND, reachable_markings
from .racn import Racn, validate_racn
from .report import Report


# -- event structure morphisms ------------------------------------------


def check_aes_morphism(src, dst, f, subject="morphism"):
    rep = Report(subject)
    f.check_total_over(src.events)
    fd = f.as_dict()
    confl0 = conflict_of(src.weak_causality)
    for e in sorted(fd):
        img_causes = causes_of(dst.causation, fd[e]) - {fd[e]}
        mapped = frozenset(fd[a] for a in causes_of(src.causation, e) if a in fd)
        if not img_causes <= mapped:
            rep.fail("causes-preserved", (e, fd[e]),
                     f"causes of {fd[e]} not covered by the image of the "
                     f"causes of {e}")
    for a, b in itertools.product(sorted(fd), sorted(fd)):
        if a == b:
            continue
        if (fd[a], fd[b]) in dst.weak_causality and \
                (a, b) not in src.weak_causality:
            rep.fail("weak-causality-reflected", (a, b),
                     f"{fd[a]} weakly causes {fd[b]} in the target but "
                     f"{a} does not weakly cause {b}")
        if fd[a] == fd[b] and frozenset((a, b)) not in confl0:
            rep.fail("identified-events-conflict", (a, b),
                     f"{a} and {b} share an image but do not conflict")
    return rep


def check_raes_morphism(src, dst, f, subject="morphism"):
    rep = check_aes_morphism(src.forward(), dst.forward(), f, subject)
    fd = f.as_dict()
    for u in sorted(src.reversible):
        if u in fd and fd[u] not in dst.reversible:
            rep.fail("reversible-preserved", (u, fd[u]),
                     f"{u} is reversible but its image {fd[u]} is not")
    for u in sorted(src.reversible & set(fd)):
        fu = fd[u]
        if fu not in dst.reversible:
            continue
        img_conds = frozenset(e for e, u2 in dst.rev_causation if u2 == fu)
        mapped = frozenset(fd[a] for a, u2 in src.rev_causation
                           if u2 == u and a in fd)
        if not img_conds <= mapped:
            rep.fail("undo-causes-preserved", (u, fu),
                     f"conditions for undoing {fu} not covered by the image "
                     f"of the conditions for undoing {u}")
        for e in sorted(set(fd)):
            if (fu, fd[e]) in dst.prevention and (u, e) not in src.prevention:
                rep.fail("undo-prevention-reflected", (u, e),
                         f"{fd[e]} blocks undoing {fu} in the target but "
                         f"{e} does not block undoing {u}")
    return rep


# -- net morphisms -------------------------------------------------------


def check_acn_morphism(src, dst, f, subject="morphism",
                       src_forward=None, dst_forward=None):
    """ACN-morphism conditions between two pACNs.  When checking the forward
    part of a reversible morphism, `src_forward`/`dst_forward` carry the
    forward transitions of the full nets so inhibitor arcs of undoings are
    out of scope here."""
    rep = Report(subject)
    for n, which in ((src, "source"), (dst, "target")):
        v = validate_pacn(n)
        if not v.ok:
            raise NotApplicable(
                f"{which} is not a pACN: {sorted(v.conditions())}")
    f.check_total_over(src.transitions)
    fd = f.trans_dict()
    rel0 = derived_relations(src)

    for t in sorted(src.transitions):
        t1 = fd.get(t)
        want_pre = tuple(sorted(dst.pre(t1))) if t1 else ()
        want_post = tuple(sorted(dst.post(t1))) if t1 else ()
        if f.multi_image(src.pre(t)) != want_pre:
            rep.fail("flow-preserved", (t,),
                     f"image of pre({t}) is {f.multi_image(src.pre(t))}, "
                     f"expected {want_pre}")
        if f.multi_image(src.post(t)) != want_post:
            rep.fail("flow-preserved", (t,),
                     f"image of post({t}) is {f.multi_image(src.post(t))}, "
                     f"expected {want_post}")

    for t in sorted(fd):
        t1 = fd[t]
        for s1 in sorted(dst.inhib(t1)):
            pre_owners = dst.pre(s1)
            back = sorted(f.place_preimage(s1))
            if not pre_owners:
                if not any(s0 in src.inhib(t) for s0 in back):
                    rep.fail("inhibitors-reflected", (s1, t1, t),
                             f"no preimage of {s1} inhibits {t}")
            else:
                for s0 in back:
                    if s0 not in src.inhib(t):
                        rep.fail("inhibitors-reflected", (s1, t1, t, s0),
                                 f"preimage {s0} of {s1} does not inhibit {t}")

    for a, b in itertools.combinations(sorted(fd), 2):
        if fd[a] == fd[b] and frozenset((a, b)) not in rel0.conflict:
            rep.fail("identified-transitions-conflict", (a, b),
                     f"{a} and {b} share an image but do not conflict")

    for s1 in sorted(dst.places):
        back = sorted(f.place_preimage(s1))
        for s0, s0b in itertools.combinations(back, 2):
            ok = False
            vacuous = False
            for owner in (src.post, src.pre):
                ta, tb = owner(s0), owner(s0b)
                if not ta or not tb:
                    vacuous = True
                    ok = True
                elif any(frozenset((x, y)) in rel0.conflict
                         for x in ta for y in tb):
                    ok = True
            if not ok:
                rep.fail("identified-places-conflict", (s0, s0b, s1),
                         "identified places must belong to conflicting "
                         "transitions")
            elif vacuous:
                rep.note(f"identification of {s0} and {s0b} accepted "
                         "vacuously (a side has no owning transition)")

    for s0, s1 in sorted(f.places):
        if (s0 in src.marking) != (s1 in dst.marking):
            rep.fail("marking-preserved", (s0, s1))

    for s1 in sorted(dst.places):
        if not dst.pre(s1) and not f.place_preimage(s1):
            rep.note(f"initial place {s1} has no preimage; the token game "
                     "on it is unconstrained")
    return rep


def check_racn_morphism(src, dst, f, subject="morphism"):
    rep = Report(subject)
    for r, which in ((src, "source"), (dst, "target")):
        v = validate_racn(r)
        if not v.ok:
            raise NotApplicable(
                f"{which} is not a reversible net: {sorted(v.conditions())}")
    f.check_total_over(src.net.transitions)
    fd = f.trans_dict()
    for t in sorted(fd):
        if t in src.forward and fd[t] not in dst.forward:
            rep.fail("sorts-preserved", (t, fd[t]),
                     "forward transition mapped to an undoing")
        if t in src.backward and fd[t] not in dst.backward:
            rep.fail("sorts-preserved", (t, fd[t]),
                     "undoing mapped to a forward transition")

    fwd_map = NetMorphism.build(
        f.places, {t: u for t, u in fd.items() if t in src.forward},
        (f.undefined | src.backward) - src.forward)
    rep.merge(check_acn_morphism(src.forward_restriction(),
                                 dst.forward_restriction(), fwd_map),
              "forward")

    undo1 = dst.undo_of
    for u in sorted(src.backward):
        t = dict(src.reverses)[u]
        if t in fd:
            if u not in fd:
                rep.fail("undo-compatible", (u, t),
                         f"{t} is mapped but its undoing {u} is not")
            elif undo1.get(fd[u]) != fd[t]:
                rep.fail("undo-compatible", (u, t),
                         f"{fd[u]} does not undo {fd[t]}")
        elif u in fd:
            rep.fail("undo-compatible", (u, t),
                     f"{u} is mapped but {t} is not")

    fwd1 = dst.forward
    for u in sorted(src.backward & set(fd)):
        u1 = fd[u]
        for s1 in sorted(dst.net.inhib(u1)):
            back = sorted(f.place_preimage(s1))
            if dst.net.pre(s1) & fwd1:
                if back and not any(s0 in src.net.inhib(u) for s0 in back):
                    rep.fail("backward-inhibitors-reflected", (s1, u1, u),
                             f"no preimage of {s1} inhibits the undoing {u}")
            else:
                for s0 in back:
                    if s0 not in src.net.inhib(u):
                        rep.fail("backward-inhibitors-reflected",
                                 (s1, u1, u, s0),
                                 f"preimage {s0} of {s1} does not inhibit "
                                 f"the undoing {u}")
    return rep


# -- semantic oracles ----------------------------------------------------


def es_preservation_counterexample(src, dst, f, mixed_steps=False,
                                   bound=DEFAULT_BOUND):
    """Replays every reachable step of `src` and checks its image in `dst`.
    Returns None or a counterexample tuple."""
    fd = f.as_dict()
    g0 = raes_config_graph(src, mixed_steps=mixed_steps, bound=bound)
    g1 = raes_config_graph(dst, mixed_steps=True, bound=bound)
    img = lambda xs: frozenset(fd[e] for e in xs if e in fd)
    for xs in g0.nodes:
        if img(xs) not in g1.nodes:
            return ("unreachable-image", tuple(sorted(xs)))
    for xs, (kind, name), ys in g0.edges:
        do = {name} if kind == "do" else set()
        undo = {name} if kind == "undo" else set()
        ido = {fd[e] for e in do if e in fd}
        iundo = {fd[e] for e in undo if e in fd}
        if (ido or iundo) and not raes_enabled(dst, img(xs), ido, iundo):
            return ("step-not-enabled", tuple(sorted(xs)), (kind, name))
        target = (img(xs) - iundo) | ido
        if target != img(ys):
            return ("wrong-successor", tuple(sorted(xs)), (kind, name))
    return None


def net_preservation_counterexample(src, dst, f, bound=DEFAULT_BOUND):
    """Fires everything reachable in `src` and checks that the image firing
    relates the images of the relevant markings in `dst`.  Works for plain
    pACNs and for reversible nets."""
    if isinstance(src, Racn):
        src_net, dst_net = src.net, dst.net
        fwd0, fwd1 = src.forward, dst.forward
        f0, f1 = src.forward_restriction(), dst.forward_restriction()
    else:
        src_net, dst_net = src, dst
        fwd0, fwd1 = src.transitions, dst.transitions
        f0, f1 = src, dst
    rel0 = derived_relations(f0)
    fd = f.trans_dict()

    def image_marking(m):
        return f.set_image(relevant_marking(f0, m, fwd0, rel0))

    for m in sorted(reachable_markings(src_net, bound),
                    key=lambda m: tuple(sorted(m))):
        if not is_coherent(f0, m, fwd0, rel0):
            continue
        m1 = image_marking(m)
        for t in src_net.single_steps(m):
            m2 = src_net.fire(m, [t])
            m1_want = f.set_image(relevant_marking(f0, m2, fwd0, rel0))
            if t in fd:
                if not dst_net.enabled(m1, [fd[t]]):
                    return ("image-not-enabled", tuple(sorted(m)), t, fd[t])
                got = dst_net.fire(m1, [fd[t]])
            else:
                got = m1
            if got != m1_want:
                return ("wrong-marking", tuple(sorted(m)), t,
                        tuple(sorted(got)), tuple(sorted(m1_want)))
    return None


# -- mediating morphisms -------------------------------------------------


def search_raes_mediating(cop, inj0, inj1, src0, src1, f0, f1, target,
                          limit=200_000):
    """All event maps g from the coproduct to `target` that are valid
    morphisms and satisfy g after each injection = the given morphisms.
    Enumerated exhaustively so uniqueness is established by search."""
    evs = sorted(cop.events)
    choices = sorted(target.events)
    total = (len(choices) + 1) ** len(evs)
    if total > limit:
        raise NotApplicable(f"search space of {total} maps exceeds {limit}")
    wanted = {}
    for f, inj in ((f0, inj0), (f1, inj1)):
        fd, ind = f.as_dict(), inj.as_dict()
        for e in ind:
            wanted[ind[e]] = fd.get(e)
    found = []
    for combo in itertools.product(list(choices) + [None], repeat=len(evs)):
        g = {e: v for e, v in zip(evs, combo) if v is not None}
        if any(g.get(e) != wanted.get(e) for e in evs):
            continue
        m = EsMorphism.build(g, set(evs) - set(g))
        if check_raes_morphism(cop, target, m).ok:
            found.append(m)
    return found


def racn_mediating(cop, inj0, inj1, f0, f1, target):
    """The unique candidate mediating morphism out of a coproduct of nets:
    commutation with the injections pins down both components, so the search
    amounts to building that candidate and checking it."""
    places = set()
    trans = {}
    undefined = set()
    for f, inj in ((f0, inj0), (f1, inj1)):
        ind = inj.trans_dict()
        fdict = f.trans_dict()
        pl = {}
        for s, tagged in inj.places:
            pl[s] = tagged
        for s, s1 in f.places:
            places.add((pl[s], s1))
        for t in ind:
            if t in fdict:
                trans[ind[t]] = fdict[t]
            else:
                undefined.add(ind[t])
        undefined |= {ind[t] for t in f.undefined if t in ind}
    g = NetMorphism.build(places, trans,
                          set(t for t in cop.net.transitions) - set(trans))
    rep = check_racn_morphism(cop, target, g)
    return g, rep
