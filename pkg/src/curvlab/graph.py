"""Simple undirected graphs on vertices ``0..n-1``.

Covers construction, graph6 / edge-list serialization, BFS distances and
isomorphism canonicalization by partition refinement plus backtracking.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Invalid graph construction or query."""


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be >= 1, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise GraphError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.adj)

    def min_degree(self) -> int:
        return min(len(a) for a in self.adj)

    def max_degree(self) -> int:
        return max(len(a) for a in self.adj)

    def is_connected(self) -> bool:
        return all(d is not UNREACHABLE for d in _bfs_row(self, 0))

    def relabel(self, perm: dict[int, int] | list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabeled in sorted order; also returns the kept labels."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep


# --------------------------------------------------------------------------
# small constructors


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


# --------------------------------------------------------------------------
# graph6


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("only the short graph6 form (n <= 62) is supported")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside graph6 range 63..126", i)
    if s[0] == "~":
        raise Graph6Error("long-form graph6 (n > 62) is not supported", 0)
    n = ord(s[0]) - 63
    if n == 0:
        raise Graph6Error("graph6 encodes the empty graph; n >= 1 required", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise Graph6Error(
            f"expected {need} data bytes for n={n}, found {len(body)}",
            min(len(s), 1 + need),
        )
    bits: list[int] = []
    for ch in body:
        value = ord(ch) - 63
        bits.extend((value >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", len(s) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def read_graph6_lines(text: str) -> list[Graph]:
    """One graph per non-blank line; an optional ``>>graph6<<`` header is skipped."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def parse_edge_list(text: str) -> Graph:
    """Edge-list text: one ``u v`` pair per line, ``#`` comments allowed.

    A line holding a single integer declares the vertex count; otherwise it is
    ``max label + 1``.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer token in {raw!r}") from None
        if len(nums) == 1:
            n = nums[0]
        elif len(nums) == 2:
            edges.append((nums[0], nums[1]))
        else:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
    if n is None:
        if not edges:
            raise GraphError("edge list is empty")
        n = max(max(e) for e in edges) + 1
    return Graph.from_edges(n, edges)


# --------------------------------------------------------------------------
# distances


class _Unreachable:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return "UNREACHABLE"


UNREACHABLE = _Unreachable()


def _bfs_row(g: Graph, src: int) -> list:
    row: list = [UNREACHABLE] * g.n
    row[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if row[v] is UNREACHABLE:
                row[v] = row[u] + 1
                queue.append(v)
    return row


class DistanceMatrix:
    """All-pairs graph distances; unreachable pairs hold ``UNREACHABLE``."""

    __slots__ = ("n", "_rows")

    def __init__(self, rows):
        self._rows = tuple(tuple(r) for r in rows)
        self.n = len(self._rows)

    def __getitem__(self, uv: tuple[int, int]):
        u, v = uv
        return self._rows[u][v]

    def finite(self, u: int, v: int) -> int:
        d = self._rows[u][v]
        if d is UNREACHABLE:
            raise GraphError(f"vertices {u} and {v} lie in different components")
        return d

    def row(self, u: int) -> tuple:
        return self._rows[u]

    def connected(self, u: int, v: int) -> bool:
        return self._rows[u][v] is not UNREACHABLE


def bfs_distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(_bfs_row(g, s) for s in range(g.n))


# --------------------------------------------------------------------------
# canonical labeling


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _refine(masks: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Fragments of a split cell are ordered by neighbor count into the splitter,
    which keeps the result independent of vertex names.
    """
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            splitter = 0
            for v in cells[si]:
                splitter |= 1 << v
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(_popcount(masks[v] & splitter), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    out.extend(groups[k] for k in sorted(groups))
                    changed = True
            cells = out
            if changed:
                break
    return cells


def _leaf_code(masks: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        for u in range(len(order)):
            if masks[v] >> u & 1:
                row |= 1 << pos[u]
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True)
class Canonical:
    """Result of canonicalization: ``labeling[v]`` is v's canonical position."""

    graph: Graph
    labeling: tuple[int, ...]
    orbits: tuple[frozenset[int], ...]

    @property
    def code(self) -> bytes:
        return encode_graph6(self.graph).encode("ascii")


def _orbit_partition(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for gamma in gens:
        for v, w in enumerate(gamma):
            ra, rb = find(v), find(w)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(n)]


def canonicalize(g: Graph) -> Canonical:
    """Canonical relabeling by individualization and refinement.

    Leaves with equal codes yield automorphisms; children of a search node
    that an already known automorphism fixing the node's path maps onto an
    explored child are skipped.  The automorphisms found this way generate
    the full group, so their orbits are the vertex orbits of ``g``.
    """
    n = g.n
    masks = g.masks
    autos: list[tuple[int, ...]] = []
    st: dict = {"first": None, "first_code": None, "best": None, "best_code": None}

    def found(a: list[int], b: list[int]) -> None:
        gamma = [0] * n
        for x, y in zip(a, b):
            gamma[x] = y
        gamma_t = tuple(gamma)
        if gamma_t != tuple(range(n)) and gamma_t not in autos:
            autos.append(gamma_t)

    def search(cells: list[list[int]], path: list[int]) -> None:
        cells = _refine(masks, cells)
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(masks, order)
            if st["first"] is None:
                st["first"], st["first_code"] = order, code
            elif code == st["first_code"]:
                found(st["first"], order)
            if st["best"] is None or code > st["best_code"]:
                st["best"], st["best_code"] = order, code
            elif code == st["best_code"]:
                found(st["best"], order)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if explored:
                fixing = [a for a in autos if all(a[p] == p for p in path)]
                if fixing:
                    orb = _orbit_partition(n, fixing)
                    if any(orb[v] == orb[w] for w in explored):
                        continue
            explored.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:], path + [v])

    search([list(range(n))], [])
    labeling = [0] * n
    for i, v in enumerate(st["best"]):
        labeling[v] = i
    roots = _orbit_partition(n, autos)
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(roots[v], set()).add(v)
    orbits = tuple(sorted((frozenset(s) for s in groups.values()), key=min))
    return Canonical(g.relabel(labeling), tuple(labeling), orbits)


def canonical_code(g: Graph) -> bytes:
    """Isomorphism-class identifier: graph6 bytes of the canonical relabeling."""
    return canonicalize(g).code


def canonical_form(g: Graph) -> Graph:
    return canonicalize(g).graph


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v
