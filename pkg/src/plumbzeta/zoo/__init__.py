"""Built-in graph fixtures: A_n, D4, E8 and star trees, and cusp cycles of length 1, 2, 3, 5."""
from __future__ import annotations

from importlib import resources

from ..graph import GraphClass, ResolutionGraph, classify, parse_graph

TREES = ("a1", "a2", "a5", "d4", "e8", "star_222")
CUSPS = ("cusp1", "cusp2", "cusp3", "cusp5")
NAMES = TREES + CUSPS


def load(name: str) -> ResolutionGraph:
    if name not in NAMES:
        raise KeyError(f"no zoo graph {name!r}; known: {', '.join(NAMES)}")
    return parse_graph(resources.files(__package__).joinpath(f"{name}.json").read_text())


def graphs(kind: GraphClass | None = None) -> dict[str, ResolutionGraph]:
    out = {name: load(name) for name in NAMES}
    if kind is not None:
        out = {k: g for k, g in out.items() if classify(g) is kind}
    return out
