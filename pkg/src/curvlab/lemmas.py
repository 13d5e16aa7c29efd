"""Corpus-wide property checks for the structural curvature facts.

Each ``check_*`` function scans a corpus of graphs and returns a
:class:`LemmaCheckResult`; a violation carries enough data (graph6, pair,
curvature values) to reproduce it.
"""
from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .curvature import (
    check_star_coupling,
    coupling_lower_bound,
    format_fraction,
    is_positively_curved,
    kappa,
    kappa_adjacent,
    kappa_adjacent_detail,
    random_coupling,
    star_coupling_bound,
    star_coupling_from_sigma,
    StarCouplingError,
)
from .enumeration import enumerate_2connected_outerplanar, enumerate_outerplanar_min_deg2, g8
from .graph import Graph, bfs_distances, canonical_code, encode_graph6, iter_pairs
from .outerplanar import embed, is_two_connected, suppress_degree2, suppression_sites

DEFAULT_SEED = 20240731


def seed_from_env() -> int:
    return int(os.environ.get("CURVLAB_SEED", DEFAULT_SEED))


@dataclass
class LemmaCheckResult:
    lemma: str
    corpus: str
    instances: int = 0
    violations: list[dict] = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "corpus": self.corpus,
            "instances": self.instances,
            "violations": self.violations,
            "pass": self.passed,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }


@dataclass
class Corpus:
    description: str
    graphs: Sequence[Graph]


def outerplanar_corpus(n_max: int, n_min: int = 3, two_connected: bool = False) -> Corpus:
    gen = enumerate_2connected_outerplanar if two_connected else enumerate_outerplanar_min_deg2
    graphs = [g for n in range(n_min, n_max + 1) for g in gen(n)]
    kind = "2-connected outerplanar" if two_connected else "connected outerplanar, min degree >= 2"
    return Corpus(f"{kind}, {n_min} <= n <= {n_max} ({len(graphs)} graphs)", graphs)


@lru_cache(maxsize=None)
def _dist(g: Graph):
    return bfs_distances(g)


@lru_cache(maxsize=None)
def edge_kappa(g: Graph) -> dict[tuple[int, int], Fraction]:
    d = _dist(g)
    return {(u, v): kappa_adjacent(g, u, v, d) for u, v in g.edges}


def _k(g: Graph, u: int, v: int) -> Fraction:
    return edge_kappa(g)[(min(u, v), max(u, v))]


@lru_cache(maxsize=None)
def _positive(g: Graph) -> bool:
    return is_positively_curved(g, _dist(g), stop_early=True).positive


def _timed(fn: Callable[..., LemmaCheckResult]):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------


@_timed
def check_lemma_coupling_bound(corpus: Corpus, samples_per_pair: int = 20, seed: int | None = None) -> LemmaCheckResult:
    """Coupling bounds and their star-coupling certificates never exceed the
    exact curvature, and the optimal coupling attains it."""
    rng = random.Random(seed_from_env() if seed is None else seed)
    res = LemmaCheckResult("coupling-bound", corpus.description)
    for g in corpus.graphs:
        d = _dist(g)
        for x, y in g.edges:
            exact = kappa_adjacent_detail(g, x, y, d)
            k = exact.kappa
            couplings = [("optimal", exact.coupling)]
            couplings += [("random", random_coupling(exact.pair, rng)) for _ in range(samples_per_pair)]
            for tag, sigma in couplings:
                res.instances += 1
                lb = coupling_lower_bound(g, x, y, sigma, d)
                try:
                    B = star_coupling_from_sigma(g, x, y, sigma, d)
                    check_star_coupling(g, B)
                    sb = star_coupling_bound(g, B, d)
                except StarCouplingError as exc:
                    res.violations.append({"graph6": encode_graph6(g), "pair": [x, y], "kind": "star-conditions", "error": str(exc)})
                    continue
                bad = lb > k or sb != lb or (tag == "optimal" and lb != k)
                if bad:
                    res.violations.append({
                        "graph6": encode_graph6(g), "pair": [x, y], "coupling": tag,
                        "bound": format_fraction(lb), "star_bound": format_fraction(sb),
                        "kappa": format_fraction(k),
                    })
    return res


def degree_pair_case(g: Graph, x: int, y: int) -> str | None:
    """Which part of the degree-pair lemma applies to the edge ``xy`` with
    ``x`` the degree-3 end: ``"i"``, ``"ii"`` or ``None``."""
    dx, dy = g.degree(x), g.degree(y)
    if not (dx == 3 and dx <= dy and g.has_edge(x, y)):
        return None
    common = g.neighbors(x) & g.neighbors(y)
    if not common:
        return None
    if dy >= 4:
        outside = g.neighbors(y) - g.closed_neighbors(x)
        if not any(g.neighbors(u2) & common for u2 in outside):
            return None
    if len(common) == 1 and dy <= 4:
        return "i"
    if len(common) == 2 and dy <= 10:
        return "ii"
    return None


def degree_pair_floor(case: str, dy: int) -> Fraction:
    """Explicit lower bound for each degree-pair configuration."""
    if case == "i":
        return Fraction(1, 3) if dy == 3 else Fraction(1, 12)
    if dy <= 6:
        return Fraction(5, dy) - Fraction(1, 3)
    return Fraction(7, dy) - Fraction(2, 3)


@_timed
def check_lemma_pos_degree_pair(corpus: Corpus) -> LemmaCheckResult:
    res = LemmaCheckResult("degree-pair", corpus.description, notes={"case_i": 0, "case_ii": 0})
    for g in corpus.graphs:
        for a, b in g.edges:
            for x, y in ((a, b), (b, a)):
                case = degree_pair_case(g, x, y)
                if case is None:
                    continue
                res.instances += 1
                res.notes[f"case_{case}"] += 1
                k = _k(g, x, y)
                floor = degree_pair_floor(case, g.degree(y))
                if not (k > 0 and k >= floor):
                    res.violations.append({
                        "graph6": encode_graph6(g), "pair": [x, y], "case": case,
                        "kappa": format_fraction(k), "claimed_floor": format_fraction(floor),
                    })
    return res


def exterior_edge_structure(g: Graph, u: int, v: int) -> bool:
    common = g.neighbors(u) & g.neighbors(v)
    if len(common) != 1:
        return False
    (w,) = common
    du, dv = g.degree(u), g.degree(v)
    if du == dv == 3:
        return True
    for a, b in ((u, v), (v, u)):
        if g.degree(a) == 3 and g.degree(b) == 4:
            if any(g.has_edge(yy, w) for yy in g.neighbors(b) - {a, w}):
                return True
    return False


@_timed
def check_lemma_exterior(corpus: Corpus) -> LemmaCheckResult:
    res = LemmaCheckResult("exterior-edge", corpus.description, notes={"nonpositive_exterior": 0})
    for g in corpus.graphs:
        emb = embed(g)
        for u, v in sorted(emb.exterior_edges()):
            if min(g.degree(u), g.degree(v)) < 3:
                continue
            res.instances += 1
            k = _k(g, u, v)
            if k <= 0:
                res.notes["nonpositive_exterior"] += 1
                continue
            if not exterior_edge_structure(g, u, v):
                res.violations.append({"graph6": encode_graph6(g), "edge": [u, v], "kappa": format_fraction(k)})
    return res


def degree_two_structure(g: Graph, u: int, v: int, w: int) -> str | None:
    """Which structural case holds for degree-2 ``u`` with neighbors ``v, w``;
    ``None`` if the expected structure is missing."""
    dv = g.degree(v)
    shared = (g.neighbors(v) & g.neighbors(w)) - {u}
    if dv == 4:
        for y in shared:
            if g.neighbors(v) & g.neighbors(y):
                return "i"
        return None
    if dv == 3:
        return "ii" if shared else None
    if dv == 2:
        if shared:
            return "iii"
        (a,) = g.neighbors(v) - {u}
        for b in g.neighbors(a) - {u, v}:
            if g.has_edge(b, w):
                return "iii"
        return None
    return None


@_timed
def check_lemma_deg2(corpus: Corpus) -> LemmaCheckResult:
    res = LemmaCheckResult("degree-two", corpus.description, notes={"i": 0, "ii": 0, "iii": 0})
    for g in corpus.graphs:
        for u in range(g.n):
            if g.degree(u) != 2:
                continue
            a, b = sorted(g.neighbors(u))
            if g.has_edge(a, b):
                continue
            for v, w in ((a, b), (b, a)):
                k = _k(g, u, v)
                if k <= 0:
                    continue
                res.instances += 1
                case = degree_two_structure(g, u, v, w) if g.degree(v) <= 4 else None
                if case is None:
                    res.violations.append({
                        "graph6": encode_graph6(g), "vertex": u, "neighbor": v,
                        "degree": g.degree(v), "kappa": format_fraction(k),
                    })
                else:
                    res.notes[case] += 1
    return res


def four_face_case(g: Graph, face: tuple[int, ...], exterior: set) -> str | None:
    """Classify a 4-face by which of its edges are exterior."""
    if len(face) != 4:
        return None
    flags = [tuple(sorted((face[i], face[(i + 1) % 4]))) in exterior for i in range(4)]
    count = sum(flags)
    runs = any(flags[i] and flags[(i + 1) % 4] for i in range(4))
    if count == 3:
        return "i"
    if count == 2 and runs:
        return "ii"
    if count == 0:
        return "iii"
    return None


@_timed
def check_lemma_4face(corpus: Corpus) -> LemmaCheckResult:
    res = LemmaCheckResult("four-face", corpus.description, notes={"i": 0, "ii": 0, "iii": 0, "iii_graphs": []})
    g8_code = canonical_code(g8())
    for g in corpus.graphs:
        if not is_two_connected(g) or g.m == g.n:  # cycles excluded
            continue
        if g.m == 2 * g.n - 3 or not _positive(g):  # maximal excluded
            continue
        emb = embed(g)
        ext = emb.exterior_edges()
        for face in emb.inner_faces():
            if len(face) < 4:
                continue
            res.instances += 1
            case = four_face_case(g, face, ext)
            if case == "iii" and canonical_code(g) != g8_code:
                case = None
            if case is None:
                res.violations.append({"graph6": encode_graph6(g), "face": list(face)})
                continue
            res.notes[case] += 1
            if case == "iii":
                res.notes["iii_graphs"].append(encode_graph6(g))
    return res


@_timed
def check_suppression_monotonicity(corpus: Corpus) -> LemmaCheckResult:
    """Suppressing a degree-2 vertex of a facial 4-cycle never lowers the
    curvature of a retained edge."""
    res = LemmaCheckResult("suppression", corpus.description,
                           notes={"sites": 0, "sites_two_connected": 0})
    for g in corpus.graphs:
        kg = edge_kappa(g)
        two_conn = is_two_connected(g)
        for v0 in suppression_sites(g):
            res.notes["sites"] += 1
            res.notes["sites_two_connected"] += two_conn
            s = suppress_degree2(g, v0)
            kh = edge_kappa(s.graph)
            back = {new: old for old, new in s.relabel.items()}
            for (a, b), k_new in kh.items():
                if (a, b) == s.new_edge:
                    continue
                res.instances += 1
                old = tuple(sorted((back[a], back[b])))
                if k_new < kg[old]:
                    res.violations.append({
                        "graph6": encode_graph6(g), "site": v0, "edge": list(old),
                        "kappa_G": format_fraction(kg[old]), "kappa_suppressed": format_fraction(k_new),
                    })
    return res


@_timed
def check_edge_pair_positivity(corpus: Corpus) -> LemmaCheckResult:
    """Empirical: positive on all edges iff positive on all pairs."""
    res = LemmaCheckResult("edge-vs-pair", corpus.description)
    for g in corpus.graphs:
        res.instances += 1
        edges_ok = all(k > 0 for k in edge_kappa(g).values())
        if not edges_ok:
            continue
        d = _dist(g)
        pairs_ok = all(kappa(g, u, v, d) > 0 for u, v in iter_pairs(g.n))
        if not pairs_ok:
            res.violations.append({"graph6": encode_graph6(g)})
    return res


CHECKS = ("coupling-bound", "degree-pair", "exterior-edge", "degree-two", "four-face", "suppression")
EXTRA_CHECKS = ("edge-vs-pair",)


def run_checks(checks: Sequence[str] = CHECKS, n_max: int = 10, samples: int = 20,
               seed: int | None = None, coupling_n_max: int = 8) -> list[LemmaCheckResult]:
    """Run the named checks over the standard corpora."""
    corpus = outerplanar_corpus(n_max)
    runners = {
        "coupling-bound": lambda: check_lemma_coupling_bound(
            outerplanar_corpus(min(n_max, coupling_n_max)), samples, seed),
        "degree-pair": lambda: check_lemma_pos_degree_pair(corpus),
        "exterior-edge": lambda: check_lemma_exterior(corpus),
        "degree-two": lambda: check_lemma_deg2(corpus),
        "four-face": lambda: check_lemma_4face(corpus),
        "suppression": lambda: check_suppression_monotonicity(corpus),
        "edge-vs-pair": lambda: check_edge_pair_positivity(corpus),
    }
    out = []
    for name in checks:
        if name not in runners:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(runners)}")
        out.append(runners[name]())
    return out
