"""Configuration graphs.

Nodes are configurations (frozensets of event or transition names), edges
carry ("do", name) or ("undo", name) labels.  The same type serves the event
structure and the net side, so correspondence checks reduce to relabelling.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class ConfigGraph:
    root: frozenset
    nodes: frozenset
    edges: frozenset  # (source-node, (kind, name), target-node)

    def to_json(self):
        return {
            "root": sorted(self.root),
            "nodes": sorted(sorted(n) for n in self.nodes),
            "edges": sorted([sorted(a), list(lab), sorted(b)]
                            for a, lab, b in self.edges),
        }


def relabel(graph, mapping):
    """Rename every node element and edge label through `mapping`."""
    f = lambda xs: frozenset(mapping[x] for x in xs)
    return ConfigGraph(
        f(graph.root),
        frozenset(f(n) for n in graph.nodes),
        frozenset((f(a), (kind, mapping[name]), f(b))
                  for a, (kind, name), b in graph.edges))


def isomorphic(g0, g1, mapping=None):
    """Equality of configuration graphs, optionally after renaming g0's
    events through `mapping`."""
    if mapping is not None:
        g0 = relabel(g0, mapping)
    return g0 == g1
