"""Graphviz DOT output with exact curvature labels on edges."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .curvature import format_fraction
from .graph import Graph
from .outerplanar import OuterplanarError, embed


def _outer_order(g: Graph) -> list[int]:
    try:
        walk = embed(g).outer_walk
    except OuterplanarError:
        return list(range(g.n))
    seen: list[int] = []
    for v in walk:
        if v not in seen:
            seen.append(v)
    return seen + [v for v in range(g.n) if v not in seen]


def to_dot(g: Graph, labels: Mapping[tuple[int, int], Fraction] | None = None,
           name: str = "G", decimal: int | None = None) -> str:
    """DOT text: nodes listed in outer-face order for a circular layout,
    edges labelled ``p/q``."""
    lines = [f"graph {name} {{", "  layout=circo;", "  node [shape=circle];"]
    order = _outer_order(g)
    lines.append("  // outer face order: " + " ".join(map(str, order)))
    for v in order:
        lines.append(f"  {v};")
    for u, v in g.edges:
        if labels is not None and (u, v) in labels:
            lines.append(f'  {u} -- {v} [label="{format_fraction(labels[(u, v)], decimal)}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
