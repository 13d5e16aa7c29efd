"""Generation of outerplanar graphs up to isomorphism and the curvature
classification built on it.

2-connected outerplanar graphs are exactly polygon dissections, so they are
generated directly as sets of non-crossing diagonals.  Graphs of minimum
degree at least two are then built by gluing 2-connected blocks at single
vertices.  Bridges may sit between blocks, so the recursion runs through the
wider family of graphs with at most one pendant vertex.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .curvature import edge_curvatures, format_fraction, is_positively_curved
from .graph import Graph, canonicalize, encode_graph6, parse_graph6

N_MIN, N_MAX_2CONN, N_MAX_DEG2 = 3, 12, 11


class EnumerationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dissections


@lru_cache(maxsize=None)
def _region_dissections(length: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All dissections of the polygon ``0, 1, ..., length`` whose base is the
    segment ``(0, length)``; diagonals exclude the base itself."""
    if length == 1:
        return ((),)
    out = []
    inner = range(1, length)
    for k in range(1, length):
        for chosen in itertools.combinations(inner, k):
            pts = (0, *chosen, length)
            parts = []
            for p, q in zip(pts, pts[1:]):
                if q - p == 1:
                    parts.append(((),))
                else:
                    parts.append(tuple(
                        ((p, q),) + tuple((a + p, b + p) for a, b in sub)
                        for sub in _region_dissections(q - p)
                    ))
            for combo in itertools.product(*parts):
                out.append(tuple(sorted(itertools.chain.from_iterable(combo))))
    return tuple(out)


def polygon_dissections(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Every dissection of the labelled n-gon as a sorted diagonal tuple."""
    if n < 3:
        raise EnumerationError("a polygon needs at least 3 sides")
    return _region_dissections(n - 1)


@dataclass(frozen=True)
class Dissection:
    n: int
    diagonals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.diagonals:
            if not (0 <= a < b < self.n) or b - a in (1, self.n - 1):
                raise EnumerationError(f"({a}, {b}) is not a diagonal of the {self.n}-gon")
        for (a, b), (c, d) in itertools.combinations(self.diagonals, 2):
            if len({a, b, c, d}) == 4 and (a < c < b) != (a < d < b):
                raise EnumerationError(f"diagonals ({a}, {b}) and ({c}, {d}) cross")

    def graph(self) -> Graph:
        ring = [(i, (i + 1) % self.n) for i in range(self.n)]
        return Graph.from_edges(self.n, ring + list(self.diagonals))

    def transformed(self, shift: int, reflect: bool) -> "Dissection":
        n = self.n

        def f(v):
            return ((-v if reflect else v) + shift) % n

        return Dissection(n, tuple(sorted(tuple(sorted((f(a), f(b)))) for a, b in self.diagonals)))

    def dihedral_key(self) -> tuple[tuple[int, int], ...]:
        return min(_dihedral_images(self.n, self.diagonals))


def _dihedral_images(n, diagonals):
    for reflect in (False, True):
        for shift in range(n):
            img = []
            for a, b in diagonals:
                if reflect:
                    a, b = (shift - a) % n, (shift - b) % n
                else:
                    a, b = (a + shift) % n, (b + shift) % n
                img.append((a, b) if a < b else (b, a))
            img.sort()
            yield tuple(img)


def _check_n(n: int, hi: int) -> None:
    if not N_MIN <= n <= hi:
        raise EnumerationError(f"n must lie in [{N_MIN}, {hi}], got {n}")


@lru_cache(maxsize=None)
def _two_connected(n: int) -> tuple[Graph, ...]:
    reps = {}
    for diss in polygon_dissections(n):
        key = min(_dihedral_images(n, diss))
        if key not in reps:
            reps[key] = Dissection(n, key).graph()
    by_code = {}
    for g in reps.values():
        c = canonicalize(g)
        by_code.setdefault(c.code, c.graph)
    return tuple(by_code[k] for k in sorted(by_code))


def enumerate_2connected_outerplanar(n: int) -> list[Graph]:
    """One canonically labelled representative per isomorphism class."""
    _check_n(n, N_MAX_2CONN)
    return list(_two_connected(n))


def enumerate_maximal_outerplanar(n: int) -> list[Graph]:
    """Polygon triangulations up to isomorphism."""
    _check_n(n, N_MAX_2CONN)
    return [g for g in _two_connected(n) if g.m == 2 * n - 3]


def _glue(a: Graph, va: int, b: Graph, vb: int) -> Graph:
    """Identify vertex ``va`` of ``a`` with vertex ``vb`` of ``b``."""
    shift = {}
    nxt = a.n
    for v in range(b.n):
        if v == vb:
            shift[v] = va
        else:
            shift[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(shift[u], shift[v]) for u, v in b.edges]
    return Graph.from_edges(a.n + b.n - 1, edges)


@lru_cache(maxsize=None)
def _orbit_reps(g: Graph) -> tuple[int, ...]:
    return tuple(min(o) for o in canonicalize(g).orbits)


def _attach_points(g: Graph) -> tuple[int, ...]:
    """Where a new block may go: the pendant vertex if there is one, since it
    must gain degree, otherwise one vertex per automorphism orbit."""
    pendant = [v for v in range(g.n) if g.degree(v) == 1]
    return tuple(pendant) if pendant else _orbit_reps(g)


@lru_cache(maxsize=None)
def _at_most_one_pendant(n: int) -> tuple[Graph, ...]:
    """Connected outerplanar graphs on n >= 3 vertices with at most one
    vertex of degree 1 and all others of degree >= 2.

    Deleting the pendant vertex of such a graph leaves a smaller member,
    so the members with a pendant vertex come from adding one edge.
    """
    found = {}
    for g in _min_deg2(n):
        found[canonicalize(g).code] = g
    if n > 3:
        for base in _at_most_one_pendant(n - 1):
            for v in _attach_points(base):
                c = canonicalize(_glue(base, v, _K2, 0))
                found.setdefault(c.code, c.graph)
    return tuple(found[k] for k in sorted(found))


_K2 = Graph.from_edges(2, [(0, 1)])


@lru_cache(maxsize=None)
def _min_deg2(n: int) -> tuple[Graph, ...]:
    # every leaf block of such a graph is 2-connected; deleting one leaves a
    # graph with at most one pendant vertex (the old cut vertex)
    found = {}
    for g in _two_connected(n):
        found[canonicalize(g).code] = g
    for k in range(3, n - 1):
        for base in _at_most_one_pendant(n - k + 1):
            for block in _two_connected(k):
                for va in _attach_points(base):
                    for vb in _orbit_reps(block):
                        g = _glue(base, va, block, vb)
                        if g.min_degree() < 2:
                            continue
                        c = canonicalize(g)
                        found.setdefault(c.code, c.graph)
    return tuple(found[k] for k in sorted(found))


def enumerate_outerplanar_min_deg2(n: int) -> list[Graph]:
    """Connected outerplanar graphs with minimum degree >= 2, up to isomorphism."""
    _check_n(n, N_MAX_DEG2)
    return list(_min_deg2(n))


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassifiedGraph:
    graph: Graph
    edge_kappa: dict[tuple[int, int], Fraction]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def graph6(self) -> str:
        return encode_graph6(self.graph)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "graph6": self.graph6,
            "edges": [
                {"u": u, "v": v, "kappa": format_fraction(k)}
                for (u, v), k in sorted(self.edge_kappa.items())
            ],
        }


@dataclass
class ClassificationReport:
    n_max: int
    graphs: list[ClassifiedGraph] = field(default_factory=list)
    scanned: dict[int, int] = field(default_factory=dict)  # candidates examined per n

    @property
    def total(self) -> int:
        return len(self.graphs)

    def by_order(self) -> dict[int, list[ClassifiedGraph]]:
        out: dict[int, list[ClassifiedGraph]] = {n: [] for n in sorted(self.scanned)}
        for c in self.graphs:
            out.setdefault(c.n, []).append(c)
        return out

    def counts(self) -> dict[int, int]:
        return {n: len(v) for n, v in self.by_order().items()}

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "total": self.total,
            "graphs": [c.to_dict() for c in self.graphs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        rep = cls(data["n_max"])
        for item in data["graphs"]:
            g = parse_graph6(item["graph6"])
            labels = {(e["u"], e["v"]): Fraction(e["kappa"]) for e in item["edges"]}
            rep.graphs.append(ClassifiedGraph(g, labels))
        return rep


def _positive_or_none(g: Graph):
    if is_positively_curved(g, stop_early=True):
        return ClassifiedGraph(g, edge_curvatures(g))
    return None


def _classify(families: dict[int, list[Graph]], n_max: int, jobs: int) -> ClassificationReport:
    rep = ClassificationReport(n_max)
    for n, graphs in sorted(families.items()):
        rep.scanned[n] = len(graphs)
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                results = list(pool.map(_positive_or_none, graphs, chunksize=32))
        else:
            results = [_positive_or_none(g) for g in graphs]
        rep.graphs.extend(r for r in results if r is not None)
    return rep


def _check_nmax(n_max: int) -> None:
    if not N_MIN <= n_max <= N_MAX_DEG2:
        raise EnumerationError(f"n_max must lie in [{N_MIN}, {N_MAX_DEG2}], got {n_max}")


def classify_positively_curved(n_max: int, jobs: int = 1) -> ClassificationReport:
    """Positively curved connected outerplanar graphs with minimum degree >= 2."""
    _check_nmax(n_max)
    fams = {n: enumerate_outerplanar_min_deg2(n) for n in range(N_MIN, n_max + 1)}
    return _classify(fams, n_max, jobs)


def classify_two_connected(n_max: int, jobs: int = 1) -> ClassificationReport:
    _check_nmax(n_max)
    fams = {n: enumerate_2connected_outerplanar(n) for n in range(N_MIN, n_max + 1)}
    return _classify(fams, n_max, jobs)


def classify_maximal_outerplanar(n_max: int, jobs: int = 1) -> ClassificationReport:
    _check_nmax(n_max)
    fams = {n: enumerate_maximal_outerplanar(n) for n in range(N_MIN, n_max + 1)}
    return _classify(fams, n_max, jobs)


def verify_base_case_11(jobs: int = 1) -> bool:
    """True iff no 2-connected outerplanar graph on 11 vertices is positively curved."""
    graphs = enumerate_2connected_outerplanar(11)
    return not any(_positive_or_none(g) for g in graphs)


def g8() -> Graph:
    """Central 4-cycle 0-1-2-3 with a triangle apex 4+i on each side (i, i+1)."""
    edges = [(i, (i + 1) % 4) for i in range(4)]
    for i in range(4):
        edges += [(i, 4 + i), ((i + 1) % 4, 4 + i)]
    return Graph.from_edges(8, edges)


def find_g8() -> Graph:
    """G8, checked against the classification of order 8."""
    g = g8()
    code = canonicalize(g).code
    positives = [c.graph for c in classify_positively_curved(8).graphs if c.n == 8]
    if not any(canonicalize(h).code == code for h in positives):
        raise AssertionError("G8 is missing from the order-8 classification")
    return canonicalize(g).graph


def write_dot_directory(report: ClassificationReport, out_dir: str | os.PathLike) -> list[Path]:
    from .export import to_dot

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, c in enumerate(report.graphs):
        p = out / f"n{c.n:02d}_{i:03d}.dot"
        p.write_text(to_dot(c.graph, c.edge_kappa, name=f"G{i}"))
        paths.append(p)
    return paths
