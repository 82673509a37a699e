"""Resolution (plumbing) graphs: parsing, validation and combinatorial invariants.

Loops and multiple edges are allowed.  A loop at ``v`` is a node of the curve
``E_v``: it adds 2 to the valency of ``v`` and leaves the intersection matrix
untouched.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph input.  ``reason`` is a short machine-readable code."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class GraphClass(enum.Enum):
    TREE_RATIONAL = "TreeRational"
    CUSP_CYCLE = "CuspCycle"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Vertex:
    id: str
    euler: int
    genus: int = 0


@dataclass(frozen=True)
class ResolutionGraph:
    """Connected decorated graph.

    ``edges`` holds index pairs ``(i, j)`` with ``i <= j``, sorted, so the edge
    multiset does not depend on input order.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        if not ids:
            raise GraphError("empty", "graph has no vertices")
        seen = set()
        for vid in ids:
            if vid in seen:
                raise GraphError("duplicate_vertex", f"duplicate vertex id {vid!r}")
            seen.add(vid)
        for v in self.vertices:
            if v.genus < 0:
                raise GraphError("schema", f"vertex {v.id!r} has negative genus")
        n = len(ids)
        norm = []
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError("dangling_edge", f"edge ({i}, {j}) out of range")
            norm.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if not _connected(n, self.edges):
            raise GraphError("disconnected", "graph is not connected")

    @classmethod
    def from_data(
        cls,
        vertices: Iterable[tuple[str, int] | tuple[str, int, int]],
        edges: Iterable[tuple[str, str]],
    ) -> "ResolutionGraph":
        """Build from ``(id, euler[, genus])`` tuples and id-pairs."""
        verts = tuple(Vertex(*v) for v in vertices)
        index = {v.id: i for i, v in enumerate(verts)}
        pairs = []
        for a, b in edges:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise GraphError("dangling_edge", f"edge endpoint {missing!r} is not a vertex")
            pairs.append((index[a], index[b]))
        return cls(verts, tuple(pairs))

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def eulers(self) -> tuple[int, ...]:
        return tuple(v.euler for v in self.vertices)

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(v.genus for v in self.vertices)

    def index(self, vid: str | int) -> int:
        if isinstance(vid, int):
            if 0 <= vid < self.size:
                return vid
            raise GraphError("unknown_vertex", f"no vertex with index {vid}")
        for i, v in enumerate(self.vertices):
            if v.id == vid:
                return i
        raise GraphError("unknown_vertex", f"no vertex {vid!r}")

    @property
    def valencies(self) -> tuple[int, ...]:
        kappa = [0] * self.size
        for i, j in self.edges:
            kappa[i] += 1
            kappa[j] += 1
        return tuple(kappa)

    @property
    def loops(self) -> tuple[int, ...]:
        count = [0] * self.size
        for i, j in self.edges:
            if i == j:
                count[i] += 1
        return tuple(count)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v.id, "euler": v.euler, "genus": v.genus} for v in self.vertices],
            "edges": [[self.vertices[i].id, self.vertices[j].id] for i, j in self.edges],
        }


def _connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        parent[find(i)] = find(j)
    return len({find(i) for i in range(n)}) == 1


def parse_graph(text: str) -> ResolutionGraph:
    """Parse the JSON graph format::

        {"vertices": [{"id": "a", "euler": -2, "genus": 0}, ...],
         "edges": [["a", "b"], ["b", "b"], ...]}

    ``genus`` defaults to 0; ``edges`` may be omitted for a single vertex.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(
            "syntax", f"JSON syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise GraphError("schema", "expected an object with a 'vertices' list")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError("schema", "'edges' must be a list")
    verts = []
    for k, rec in enumerate(data["vertices"]):
        if not isinstance(rec, dict) or "id" not in rec or "euler" not in rec:
            raise GraphError("schema", f"vertex #{k} needs 'id' and 'euler'")
        vid, euler, genus = rec["id"], rec["euler"], rec.get("genus", 0)
        if not isinstance(vid, str):
            raise GraphError("schema", f"vertex #{k}: id must be a string")
        if not _is_int(euler) or not _is_int(genus):
            raise GraphError("schema", f"vertex {vid!r}: euler and genus must be integers")
        verts.append((vid, euler, genus))
    pairs = []
    for k, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphError("schema", f"edge #{k} must be a pair of vertex ids")
        pairs.append((e[0], e[1]))
    return ResolutionGraph.from_data(verts, pairs)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def load_graph(path: str) -> ResolutionGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def valency(g: ResolutionGraph, v: str | int) -> int:
    return g.valencies[g.index(v)]


def cycle_count(g: ResolutionGraph) -> int:
    return len(g.edges) - g.size + 1


def first_betti(g: ResolutionGraph) -> int:
    return 2 * sum(g.genera) + cycle_count(g)


def classify(g: ResolutionGraph) -> GraphClass:
    if any(g.genera):
        return GraphClass.OTHER
    c = cycle_count(g)
    if c == 0:
        return GraphClass.TREE_RATIONAL
    if c == 1 and all(k == 2 for k in g.valencies):
        return GraphClass.CUSP_CYCLE
    return GraphClass.OTHER


def intersection_matrix(g: ResolutionGraph) -> tuple[tuple[int, ...], ...]:
    n = g.size
    m = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        m[i][i] = v.euler
    for i, j in g.edges:
        if i != j:
            m[i][j] += 1
            m[j][i] += 1
    return tuple(tuple(row) for row in m)
