"""JSON (de)serialisation and DOT export.

All output is byte-deterministic: keys sorted, arrays sorted, two-space
indentation, trailing newline.
"""
import json

from .errors import MalformedModel
from .es import Aes, Raes, SRaes
from .maps import EsMorphism, NetMorphism
from .net import Ipt
from .racn import Racn

NET_KINDS = ("ipt", "cn", "pacn", "acn", "racn")
ES_KINDS = ("aes", "raes", "sraes")


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _field(data, name, default=None):
    if name in data:
        return data[name]
    if default is not None:
        return default
    raise MalformedModel(f"missing field {name!r}")


def _no_duplicates(items, name):
    if len(set(items)) != len(items):
        seen, dup = set(), None
        for x in items:
            if x in seen:
                dup = x
                break
            seen.add(x)
        raise MalformedModel(f"field {name!r} has a duplicate entry {dup!r}")


def _str_list(data, name, default=None):
    xs = _field(data, name, default)
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise MalformedModel(f"field {name!r} must be a list of strings")
    _no_duplicates(xs, name)
    return xs


def _pair_list(data, name):
    xs = _field(data, name, [])
    out = []
    for p in xs:
        if not isinstance(p, list) or len(p) != 2:
            raise MalformedModel(f"field {name!r} must hold pairs, got {p!r}")
        out.append((p[0], p[1]))
    _no_duplicates(out, name)
    return out


def load_model(data):
    """Parse a model from already-decoded JSON.  Returns (kind, object)."""
    if not isinstance(data, dict):
        raise MalformedModel("a model must be a JSON object")
    kind = _field(data, "kind")
    if kind in NET_KINDS:
        net = Ipt.build(_str_list(data, "places"),
                        _str_list(data, "transitions"),
                        _pair_list(data, "flow"),
                        _pair_list(data, "inhibitor"),
                        _str_list(data, "marking"))
        if kind == "racn":
            back = _field(data, "backward")
            if not isinstance(back, dict):
                raise MalformedModel("field 'backward' must map undoing "
                                     "transitions to forward transitions")
            return kind, Racn.build(net, back)
        if "backward" in data and data["backward"]:
            raise MalformedModel(f"kind {kind!r} does not take 'backward'")
        return kind, net
    if kind == "aes":
        return kind, Aes.build(_str_list(data, "events"),
                               _pair_list(data, "causation"),
                               _pair_list(data, "weak_causality"))
    if kind == "raes":
        return kind, Raes.build(_str_list(data, "events"),
                                _str_list(data, "reversible", []),
                                _pair_list(data, "causation"),
                                _pair_list(data, "weak_causality"),
                                _pair_list(data, "rev_causation"),
                                _pair_list(data, "prevention"))
    if kind == "sraes":
        return kind, SRaes.build(_str_list(data, "events"),
                                 _str_list(data, "reversible", []),
                                 _pair_list(data, "causation"),
                                 _pair_list(data, "prevention"))
    raise MalformedModel(f"unknown model kind {kind!r}")


def load_morphism(data):
    if not isinstance(data, dict):
        raise MalformedModel("a morphism must be a JSON object")
    kind = _field(data, "kind")
    if kind == "es-morphism":
        events = _field(data, "events")
        if not isinstance(events, dict):
            raise MalformedModel("field 'events' must be an object")
        return EsMorphism.build(events, _str_list(data, "undefined", []))
    if kind == "net-morphism":
        trans = _field(data, "transitions")
        if not isinstance(trans, dict):
            raise MalformedModel("field 'transitions' must be an object")
        return NetMorphism.build(_pair_list(data, "places"), trans,
                                 _str_list(data, "undefined", []))
    raise MalformedModel(f"unknown morphism kind {kind!r}")


def model_to_json(obj, kind=None):
    if isinstance(obj, Racn):
        n = obj.net
        return {
            "kind": "racn",
            "places": sorted(n.places),
            "transitions": sorted(n.transitions),
            "flow": sorted(map(list, n.flow)),
            "inhibitor": sorted(map(list, n.inhibitor)),
            "marking": sorted(n.marking),
            "backward": obj.undo_of,
        }
    if isinstance(obj, Ipt):
        return {
            "kind": kind or "ipt",
            "places": sorted(obj.places),
            "transitions": sorted(obj.transitions),
            "flow": sorted(map(list, obj.flow)),
            "inhibitor": sorted(map(list, obj.inhibitor)),
            "marking": sorted(obj.marking),
        }
    if isinstance(obj, Raes):
        return {
            "kind": "raes",
            "events": sorted(obj.events),
            "reversible": sorted(obj.reversible),
            "causation": sorted(map(list, obj.causation)),
            "weak_causality": sorted(map(list, obj.weak_causality)),
            "rev_causation": sorted(map(list, obj.rev_causation)),
            "prevention": sorted(map(list, obj.prevention)),
        }
    if isinstance(obj, Aes):
        return {
            "kind": "aes",
            "events": sorted(obj.events),
            "causation": sorted(map(list, obj.causation)),
            "weak_causality": sorted(map(list, obj.weak_causality)),
        }
    if isinstance(obj, SRaes):
        untag = lambda x: ["undo", x[1]] if isinstance(x, tuple) else x
        return {
            "kind": "sraes",
            "events": sorted(obj.events),
            "reversible": sorted(obj.reversible),
            "causation": sorted(([untag(a), untag(b)] for a, b in
                                 obj.causation), key=repr),
            "prevention": sorted(([untag(a), untag(b)] for a, b in
                                  obj.prevention), key=repr),
        }
    raise MalformedModel(f"cannot serialise {type(obj).__name__}")


# -- DOT -----------------------------------------------------------------


def _q(name):
    return '"' + name.replace('"', '\\"') + '"'


def net_to_dot(obj):
    """Places as circles (filled dot when marked), transitions as boxes
    (grey for undoings), inhibitor arcs with a circle tip."""
    if isinstance(obj, Racn):
        net, backward = obj.net, obj.backward
    else:
        net, backward = obj, frozenset()
    lines = ["digraph net {", "  rankdir=LR;"]
    for s in sorted(net.places):
        label = "&bull;" if s in net.marking else ""
        lines.append(f"  {_q(s)} [shape=circle, xlabel={_q(s)}, "
                     f"label=\"{label}\"];")
    for t in sorted(net.transitions):
        style = ", style=filled, fillcolor=lightgrey" if t in backward else ""
        lines.append(f"  {_q(t)} [shape=box{style}];")
    for a, b in sorted(net.flow):
        lines.append(f"  {_q(a)} -> {_q(b)};")
    for s, t in sorted(net.inhibitor):
        lines.append(f"  {_q(s)} -> {_q(t)} [arrowhead=odot];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph):
    name = lambda xs: "{" + ",".join(sorted(xs)) + "}"
    lines = ["digraph configurations {"]
    for n in sorted(graph.nodes, key=lambda xs: (len(xs), tuple(sorted(xs)))):
        extra = ", penwidth=2" if n == graph.root else ""
        lines.append(f"  {_q(name(n))} [shape=ellipse{extra}];")
    for a, (kind, label), b in sorted(
            graph.edges, key=lambda e: (tuple(sorted(e[0])), e[1],
                                        tuple(sorted(e[2])))):
        text = label if kind == "do" else f"undo {label}"
        lines.append(f"  {_q(name(a))} -> {_q(name(b))} [label={_q(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
