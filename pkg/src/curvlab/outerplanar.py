"""Outerplanar recognition and embeddings.

A 2-connected outerplanar graph has a unique Hamiltonian cycle, which is its
outer face; every other edge is a chord and chords never cross.  Graphs with
cut vertices are handled block by block.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .graph import Graph


class OuterplanarError(ValueError):
    """Input violates a precondition of an outerplanar operation."""


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def blocks(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the blocks (biconnected components and bridges), sorted."""
    comps = [frozenset(c) for c in nx.biconnected_components(_to_nx(g))]
    return sorted(comps, key=lambda b: (sorted(b)))


def is_two_connected(g: Graph) -> bool:
    return g.n >= 3 and g.is_connected() and len(blocks(g)) == 1


def _crosses(a: tuple[int, int], b: tuple[int, int], pos: dict[int, int]) -> bool:
    p, q = sorted((pos[a[0]], pos[a[1]]))
    r, s = sorted((pos[b[0]], pos[b[1]]))
    if len({p, q, r, s}) < 4:
        return False
    return (p < r < q) != (p < s < q)


def _hamiltonian_cycles(g: Graph, verts: list[int], limit: int = 2) -> list[tuple[int, ...]]:
    """Up to ``limit`` Hamiltonian cycles of the subgraph induced on ``verts``,
    each starting at ``min(verts)``, one orientation per cycle."""
    vs = set(verts)
    start = min(verts)
    found: list[tuple[int, ...]] = []
    path = [start]
    used = {start}

    def extend():
        if len(found) >= limit:
            return
        u = path[-1]
        if len(path) == len(vs):
            if start in g.adj[u] and path[1] < path[-1]:
                found.append(tuple(path))
            return
        for v in sorted(g.adj[u] & vs):
            if v not in used:
                used.add(v)
                path.append(v)
                extend()
                path.pop()
                used.discard(v)

    if len(vs) >= 3:
        extend()
    return found


@dataclass(frozen=True)
class BlockEmbedding:
    """Outer cycle plus non-crossing chords of one 2-connected block, or a bridge."""

    cycle: tuple[int, ...]
    chords: frozenset[tuple[int, int]]

    @property
    def is_bridge(self) -> bool:
        return len(self.cycle) == 2

    def inner_faces(self) -> list[tuple[int, ...]]:
        if self.is_bridge:
            return []
        faces = [list(self.cycle)]
        for a, b in sorted(self.chords):
            for idx, face in enumerate(faces):
                if a in face and b in face:
                    i, j = sorted((face.index(a), face.index(b)))
                    faces[idx:idx + 1] = [face[i:j + 1], face[j:] + face[:i + 1]]
                    break
        return [_rotate_min(tuple(f)) for f in faces]

    def boundary_edges(self) -> set[tuple[int, int]]:
        k = len(self.cycle)
        if k == 2:
            return {tuple(sorted(self.cycle))}
        return {tuple(sorted((self.cycle[i], self.cycle[(i + 1) % k]))) for i in range(k)}


def _rotate_min(face: tuple[int, ...]) -> tuple[int, ...]:
    i = face.index(min(face))
    f = face[i:] + face[:i]
    if len(f) > 2 and f[-1] < f[1]:
        f = (f[0],) + tuple(reversed(f[1:]))
    return f


def _embed_block(g: Graph, verts: frozenset[int]) -> BlockEmbedding | None:
    vlist = sorted(verts)
    if len(vlist) == 2:
        return BlockEmbedding(tuple(vlist), frozenset())
    edges = [(u, v) for u in vlist for v in g.adj[u] if v in verts and u < v]
    if len(edges) > 2 * len(vlist) - 3:
        return None
    cycles = _hamiltonian_cycles(g, vlist, limit=2)
    if len(cycles) != 1:
        return None
    cyc = cycles[0]
    pos = {v: i for i, v in enumerate(cyc)}
    k = len(cyc)
    ring = {tuple(sorted((cyc[i], cyc[(i + 1) % k]))) for i in range(k)}
    chords = [e for e in edges if e not in ring]
    for a, b in itertools.combinations(chords, 2):
        if _crosses(a, b, pos):
            return None
    return BlockEmbedding(cyc, frozenset(chords))


@dataclass(frozen=True)
class OuterEmbedding:
    """Outerplane embedding of a connected graph.

    ``outer_walk`` is the closed boundary walk of the outer face; for a
    2-connected graph it is the Hamiltonian outer cycle.
    """

    graph: Graph
    blocks: tuple[BlockEmbedding, ...]
    outer_walk: tuple[int, ...]

    @property
    def two_connected(self) -> bool:
        return len(self.blocks) == 1 and not self.blocks[0].is_bridge

    @property
    def outer_cycle(self) -> tuple[int, ...]:
        if not self.two_connected:
            raise OuterplanarError("outer boundary is a closed walk, not a cycle; graph has cut vertices")
        return self.blocks[0].cycle

    @property
    def chords(self) -> frozenset[tuple[int, int]]:
        return frozenset().union(*(b.chords for b in self.blocks))

    def exterior_edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for b in self.blocks:
            out |= b.boundary_edges()
        return out

    def inner_faces(self) -> list[tuple[int, ...]]:
        return sorted(f for b in self.blocks for f in b.inner_faces())

    @property
    def outer_face_size(self) -> int:
        # number of edge traversals; a lone vertex has an empty boundary
        return len(self.outer_walk) if self.graph.m else 0


def _outer_walk(g: Graph, embs: list[BlockEmbedding]) -> tuple[int, ...]:
    # rotation at v: for each block, the next outer neighbor, the chords in
    # sweep order, then the previous outer neighbor
    rotation: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for b in embs:
        if b.is_bridge:
            u, v = b.cycle
            rotation[u].append(v)
            rotation[v].append(u)
            continue
        cyc = b.cycle
        k = len(cyc)
        pos = {v: i for i, v in enumerate(cyc)}
        chord_nbrs: dict[int, list[int]] = {v: [] for v in cyc}
        for a, c in b.chords:
            chord_nbrs[a].append(c)
            chord_nbrs[c].append(a)
        for i, v in enumerate(cyc):
            inner = sorted(chord_nbrs[v], key=lambda w: (pos[w] - i) % k)
            rotation[v].extend([cyc[(i + 1) % k], *inner, cyc[(i - 1) % k]])
    if g.n == 1:
        return (0,)
    start = 0
    first = rotation[start][0]
    walk = [start]
    prev, cur = start, first
    while True:
        if (prev, cur) == (start, first) and len(walk) > 1:
            break
        walk.append(cur)
        r = rotation[cur]
        nxt = r[(r.index(prev) + 1) % len(r)]
        prev, cur = cur, nxt
    return tuple(walk[:-1])


@dataclass(frozen=True)
class ForbiddenMinor:
    """Branch sets of a K4 or K2,3 minor; ``kind`` is ``"K4"`` or ``"K2,3"``."""

    kind: str
    branch_sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class OuterplanarityResult:
    outerplanar: bool
    embedding: OuterEmbedding | None = None
    minor: ForbiddenMinor | None = None

    def __bool__(self) -> bool:
        return self.outerplanar


def _embed_any(g: Graph) -> list[BlockEmbedding] | None:
    """Block embeddings of a graph of any connectivity, or None."""
    embs = []
    for b in blocks(g):
        if len(b) == 1:
            continue
        e = _embed_block(g, b)
        if e is None:
            return None
        embs.append(e)
    return embs


def embed(g: Graph) -> OuterEmbedding:
    """Outerplane embedding of a connected graph; raises if none exists."""
    if not g.is_connected():
        raise OuterplanarError("graph is disconnected; embed components separately")
    embs = _embed_any(g)
    if embs is None:
        raise OuterplanarError("graph is not outerplanar")
    embs.sort(key=lambda b: b.cycle)
    return OuterEmbedding(g, tuple(embs), _outer_walk(g, embs))


def find_forbidden_minor(g: Graph) -> ForbiddenMinor:
    """Shrink a non-outerplanar graph by edge deletions and contractions while
    it stays non-outerplanar; what remains is K4 or K2,3 on the branch sets."""
    if _embed_any(g) is not None:
        raise OuterplanarError("graph is outerplanar; no forbidden minor")
    # current minor: labelled vertices carry branch sets of original vertices
    sets = {v: frozenset([v]) for v in range(g.n)}
    edges = {frozenset(e) for e in g.edges}

    def as_graph(vs, es):
        idx = {v: i for i, v in enumerate(sorted(vs))}
        return Graph.from_edges(len(idx), ((idx[a], idx[b]) for a, b in map(tuple, es)))

    def outerplanar(vs, es):
        return _embed_any(as_graph(vs, es)) is not None

    progress = True
    while progress:
        progress = False
        for e in sorted(edges, key=sorted):
            trial = edges - {e}
            if not outerplanar(sets.keys(), trial):
                edges = trial
                progress = True
                break
            a, b = sorted(e)
            merged = set()
            for f in trial:
                u, v = tuple(f)
                u = a if u == b else u
                v = a if v == b else v
                if u != v:
                    merged.add(frozenset((u, v)))
            keys = set(sets) - {b}
            if not outerplanar(keys, merged):
                sets = {k: (sets[a] | sets[b] if k == a else sets[k]) for k in keys}
                edges = merged
                progress = True
                break
        if not progress:
            isolated = [v for v in sets if not any(v in e for e in edges)]
            if isolated:
                for v in isolated:
                    del sets[v]
                progress = True
    deg = {v: sum(v in e for e in edges) for v in sets}
    if len(sets) == 4 and len(edges) == 6:
        return ForbiddenMinor("K4", tuple(sets[v] for v in sorted(sets)))
    if len(sets) == 5 and len(edges) == 6:
        hubs = sorted(v for v in sets if deg[v] == 3)
        rest = sorted(v for v in sets if deg[v] == 2)
        return ForbiddenMinor("K2,3", tuple(sets[v] for v in hubs + rest))
    raise AssertionError("minimal non-outerplanar minor is neither K4 nor K2,3")


def check_minor(g: Graph, minor: ForbiddenMinor) -> bool:
    """Branch sets disjoint, connected, and pairwise adjacent as the minor requires."""
    sets = minor.branch_sets
    if any(a & b for a, b in itertools.combinations(sets, 2)):
        return False
    for s in sets:
        if not s:
            return False
        sub, _ = g.induced(s)
        if not sub.is_connected():
            return False

    def touch(a, b):
        return any(g.adj[u] & b for u in a)

    if minor.kind == "K4":
        return len(sets) == 4 and all(touch(a, b) for a, b in itertools.combinations(sets, 2))
    if minor.kind == "K2,3":
        return len(sets) == 5 and all(touch(h, o) for h in sets[:2] for o in sets[2:])
    return False


def is_outerplanar(g: Graph) -> OuterplanarityResult:
    if not g.is_connected():
        raise OuterplanarError("graph is disconnected")
    embs = _embed_any(g)
    if embs is None:
        return OuterplanarityResult(False, minor=find_forbidden_minor(g))
    return OuterplanarityResult(True, embedding=embed(g))


# ---------------------------------------------------------------------------
# faces and curvature


@dataclass(frozen=True)
class FaceProfile:
    """Sizes of faces at each vertex; the outer face is listed once per vertex."""

    inner_faces: tuple[tuple[int, ...], ...]
    outer_size: int
    per_vertex: tuple[tuple[int, ...], ...]


def facial_cycles(emb: OuterEmbedding) -> FaceProfile:
    if not emb.two_connected:
        raise OuterplanarError("facial cycles need a 2-connected graph; split into blocks first")
    return face_profile(emb)


def face_profile(emb: OuterEmbedding) -> FaceProfile:
    """Face sizes for any connected embedding, using the per-block convention:
    each block contributes its inner faces and the single outer face is
    counted once at every vertex it touches."""
    faces = tuple(emb.inner_faces())
    per_vertex = []
    for v in range(emb.graph.n):
        sizes = sorted(len(f) for f in faces if v in f)
        per_vertex.append(tuple(sizes + [emb.outer_face_size]))
    return FaceProfile(faces, emb.outer_face_size, tuple(per_vertex))


def combinatorial_curvature(emb: OuterEmbedding, v: int) -> Fraction:
    if not 0 <= v < emb.graph.n:
        raise OuterplanarError(f"vertex {v} not in graph")
    sizes = face_profile(emb).per_vertex[v]
    return 1 - Fraction(emb.graph.degree(v), 2) + sum(Fraction(1, s) for s in sizes)


def classify_edge(emb: OuterEmbedding, e: tuple[int, int]) -> str:
    u, v = sorted(e)
    if not emb.graph.has_edge(u, v):
        raise OuterplanarError(f"({u}, {v}) is not an edge")
    return "exterior" if (u, v) in emb.exterior_edges() else "interior"


def is_maximal_outerplanar(g: Graph) -> bool:
    res = is_outerplanar(g)
    if not res:
        raise OuterplanarError("graph is not outerplanar")
    emb = res.embedding
    return emb.two_connected and all(len(f) == 3 for f in emb.inner_faces())


# ---------------------------------------------------------------------------
# suppression


@dataclass(frozen=True)
class Suppressed:
    """Result of suppressing a degree-2 vertex.

    ``relabel`` maps old labels of the kept vertices to new ones and
    ``new_edge`` is the added edge in new labels.
    """

    graph: Graph
    relabel: dict[int, int]
    new_edge: tuple[int, int]
    face: tuple[int, int, int, int]  # (v0, v1, v2, v3) in old labels


def suppression_face(emb: OuterEmbedding, v0: int) -> tuple[int, int, int, int] | None:
    g = emb.graph
    if g.degree(v0) != 2:
        return None
    for f in emb.inner_faces():
        if len(f) == 4 and v0 in f:
            i = f.index(v0)
            v1, v2, v3 = f[(i + 1) % 4], f[(i + 2) % 4], f[(i + 3) % 4]
            if not g.has_edge(v1, v3):
                return (v0, v1, v2, v3)
    return None


def suppress_degree2(g: Graph, v0: int) -> Suppressed:
    """Delete ``v0`` (degree 2 on a facial 4-cycle ``v0 v1 v2 v3``) and join ``v1 v3``."""
    if not 0 <= v0 < g.n:
        raise OuterplanarError(f"vertex {v0} not in graph")
    if g.degree(v0) != 2:
        raise OuterplanarError(f"vertex {v0} has degree {g.degree(v0)}, need 2")
    res = is_outerplanar(g)
    if not res:
        raise OuterplanarError("graph is not outerplanar")
    emb = res.embedding
    if not any(len(f) == 4 and v0 in f for f in emb.inner_faces()):
        raise OuterplanarError(f"vertex {v0} lies on no facial 4-cycle")
    face = suppression_face(emb, v0)
    if face is None:
        raise OuterplanarError(f"neighbors of {v0} are already adjacent")
    _, v1, _, v3 = face
    keep = [v for v in range(g.n) if v != v0]
    relabel = {v: i for i, v in enumerate(keep)}
    edges = [(relabel[a], relabel[b]) for a, b in g.edges if v0 not in (a, b)]
    new_edge = tuple(sorted((relabel[v1], relabel[v3])))
    edges.append(new_edge)
    return Suppressed(Graph.from_edges(g.n - 1, edges), relabel, new_edge, face)


def suppression_sites(g: Graph) -> list[int]:
    """Vertices at which :func:`suppress_degree2` applies."""
    emb = embed(g)
    return [v for v in range(g.n) if suppression_face(emb, v) is not None]
