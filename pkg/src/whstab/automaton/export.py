"""
Graphviz DOT and JSON renderings of constraint graphs.
"""
from typing import Any, Dict

from ..config.defaults import Strategy
from .graph import ConstraintGraph


def export_dot(g: ConstraintGraph, name: str = "constraint_graph") -> str:
    """Render ``g`` as a DOT digraph; the initial node is a double circle."""
    lines = [f"digraph {name} {{", "    rankdir=LR;", "    node [shape=circle];"]
    for i, word in enumerate(g.words):
        shape = ", shape=doublecircle" if i == g.initial else ""
        lines.append(f'    n{i} [label="{word}"{shape}];')
    for i, c, j in g.edges:
        lines.append(f'    n{i} -> n{j} [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: ConstraintGraph) -> Dict[str, Any]:
    return {
        "strategy": g.strategy.value,
        "window": g.window,
        "nodes": list(g.words),
        "members": [list(m) for m in g.members],
        "edges": [[i, c, j] for i, c, j in g.edges],
        "initial": g.initial,
    }


def graph_from_dict(data: Dict[str, Any]) -> ConstraintGraph:
    """Rebuild a graph from :func:`graph_to_dict` output; ``members`` is optional."""
    nodes = data["nodes"]
    window = data.get("window", len(nodes[0]) if nodes else 1)
    return ConstraintGraph(
        strategy=Strategy(data.get("strategy", Strategy.KILL)),
        words=tuple(nodes),
        edges=tuple(tuple(e) for e in data["edges"]),
        initial=int(data.get("initial", 0)),
        window=window,
        members=data.get("members"),
    )
