"""
Combinatorial complexes built from products of cycles.

Vertex (i, j) of C_n x C_k is stored as the integer i*k + j everywhere in
this package, so permutations, coordinates and certificates all agree on
indexing.  Faces are stored as canonical cyclic tuples (least rotation or
reflection), which makes face sets directly comparable.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

SCHEMA_VERSION = 1

Edge = tuple[int, int]
Face = tuple[int, ...]


def encode(i: int, j: int, k: int) -> int:
    return i * k + j


def decode(v: int, k: int) -> tuple[int, int]:
    return divmod(v, k)


def _check_nk(n: int, k: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)):
        raise TypeError("n and k must be integers")
    if n < 3 or k < 3:
        raise ValueError(f"cycle lengths must be >= 3, got n={n}, k={k}")


def edge_key(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


def canonical_face(cycle: Sequence[int]) -> Face:
    """Least representative of a vertex cycle over rotations and reversal.

    >>> canonical_face([2, 0, 1])
    (0, 1, 2)
    >>> canonical_face([5, 4, 7, 6])
    (4, 5, 6, 7)
    """
    cycle = tuple(int(v) for v in cycle)
    m = len(cycle)
    if m < 3:
        raise ValueError("a face needs at least 3 vertices")
    if len(set(cycle)) != m:
        raise ValueError(f"repeated vertex in face {cycle}")
    best = None
    for seq in (cycle, cycle[::-1]):
        for r in range(m):
            cand = seq[r:] + seq[:r]
            if best is None or cand < best:
                best = cand
    return best


def face_edges(face: Sequence[int]) -> list[Edge]:
    m = len(face)
    return [edge_key(face[t], face[(t + 1) % m]) for t in range(m)]


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < b < self.n_vertices):
                raise ValueError(f"bad edge {(a, b)}")

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs = [set() for _ in range(self.n_vertices)]
        for a, b in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        seen = {0}
        todo = deque([0])
        while todo:
            u = todo.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n_vertices


@dataclass(frozen=True)
class CellComplex:
    """An abstract 1-, 2- or 3-complex given by its graph and cells.

    ``cells3`` is only populated for polytope boundaries; each 3-cell is a
    frozenset of canonical faces.
    """

    graph: Graph
    faces: frozenset[Face] = frozenset()
    cells3: frozenset[frozenset[Face]] | None = None
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        for f in self.faces:
            if canonical_face(f) != f:
                raise ValueError(f"face {f} is not canonical")
            for e in face_edges(f):
                if e not in self.graph.edges:
                    raise ValueError(f"face {f} uses non-edge {e}")
        if self.cells3 is not None:
            for cell in self.cells3:
                if not cell <= self.faces:
                    raise ValueError("3-cell uses a face missing from the complex")

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @cached_property
    def sorted_faces(self) -> tuple[Face, ...]:
        return tuple(sorted(self.faces))

    @cached_property
    def edge_faces(self) -> dict[Edge, list[Face]]:
        """Map each edge to the faces containing it (sorted)."""
        inc = {e: [] for e in self.graph.edges}
        for f in self.sorted_faces:
            for e in face_edges(f):
                inc[e].append(f)
        return inc

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    def counts(self) -> tuple[int, int, int]:
        return self.n_vertices, len(self.edges), len(self.faces)

    def two_skeleton(self, faces: Iterable[Face] | None = None) -> "CellComplex":
        """Same graph with the given faces (default: all) and no 3-cells."""
        faces = self.faces if faces is None else frozenset(faces)
        return CellComplex(self.graph, frozenset(faces), None, self.n, self.k)

    def one_skeleton(self) -> "CellComplex":
        return CellComplex(self.graph, frozenset(), None, self.n, self.k)

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "k": self.k,
            "vertices": self.n_vertices,
            "edges": [list(e) for e in sorted(self.edges)],
            "faces": [list(f) for f in self.sorted_faces],
        }
        if self.cells3 is not None:
            d["cells3"] = sorted([list(f) for f in sorted(c)] for c in self.cells3)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CellComplex":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        graph = Graph(int(d["vertices"]), frozenset(edge_key(a, b) for a, b in d["edges"]))
        faces = frozenset(canonical_face(f) for f in d["faces"])
        cells3 = None
        if "cells3" in d:
            cells3 = frozenset(frozenset(canonical_face(f) for f in c) for c in d["cells3"])
        return cls(graph, faces, cells3, d.get("n"), d.get("k"))

    @classmethod
    def from_json(cls, text: str) -> "CellComplex":
        return cls.from_dict(json.loads(text))


class Flag(NamedTuple):
    vertex: int
    edge: Edge
    face: Face


def build_cycle_product_graph(n: int, k: int) -> Graph:
    _check_nk(n, k)
    edges = set()
    for i in range(n):
        for j in range(k):
            v = encode(i, j, k)
            edges.add(edge_key(v, encode((i + 1) % n, j, k)))
            edges.add(edge_key(v, encode(i, (j + 1) % k, k)))
    return Graph(n * k, frozenset(edges))


def _quad_faces(n: int, k: int) -> frozenset[Face]:
    return frozenset(
        canonical_face([
            encode(i, j, k),
            encode((i + 1) % n, j, k),
            encode((i + 1) % n, (j + 1) % k, k),
            encode(i, (j + 1) % k, k),
        ])
        for i in range(n)
        for j in range(k)
    )


def build_torus_quadrangulation(n: int, k: int) -> CellComplex:
    """Q_{n,k}: n parallels and k meridians on the torus."""
    graph = build_cycle_product_graph(n, k)
    return CellComplex(graph, _quad_faces(n, k), None, n, k)


def build_duoprism_boundary(n: int, k: int) -> CellComplex:
    """Boundary complex of the product of a regular n-gon and k-gon.

    Two-faces are the nk quads plus n k-gons and k n-gons; the 3-cells are
    n k-gonal prisms and k n-gonal prisms.
    """
    graph = build_cycle_product_graph(n, k)
    quads = _quad_faces(n, k)
    kgons = [canonical_face([encode(i, j, k) for j in range(k)]) for i in range(n)]
    ngons = [canonical_face([encode(i, j, k) for i in range(n)]) for j in range(k)]

    def quad(i, j):
        return canonical_face([
            encode(i, j, k), encode((i + 1) % n, j, k),
            encode((i + 1) % n, (j + 1) % k, k), encode(i, (j + 1) % k, k),
        ])

    cells = []
    for i in range(n):
        cells.append(frozenset([kgons[i], kgons[(i + 1) % n]] + [quad(i, j) for j in range(k)]))
    for j in range(k):
        cells.append(frozenset([ngons[j], ngons[(j + 1) % k]] + [quad(i, j) for i in range(n)]))
    faces = quads | frozenset(kgons) | frozenset(ngons)
    return CellComplex(graph, faces, frozenset(cells), n, k)


def build_hypercube_boundary() -> CellComplex:
    """Boundary of the 4-cube on {0,1}^4, vertices numbered by binary value.

    Built from bit patterns only, as an independent check on the (4,4)
    duoprism.
    """
    edges = set()
    for v in range(16):
        for d in range(4):
            edges.add(edge_key(v, v ^ (1 << d)))
    faces = set()
    for a, b in itertools.combinations(range(4), 2):
        for base in range(16):
            if base & ((1 << a) | (1 << b)):
                continue
            faces.add(canonical_face([base, base | 1 << a, base | 1 << a | 1 << b, base | 1 << b]))
    cells = set()
    for d in range(4):
        for side in (0, 1):
            verts = {v for v in range(16) if (v >> d) & 1 == side}
            cells.add(frozenset(f for f in faces if set(f) <= verts))
    return CellComplex(Graph(16, frozenset(edges)), frozenset(faces), frozenset(cells))


def flags(complex_: CellComplex) -> set[Flag]:
    out = set()
    for f in complex_.faces:
        for e in face_edges(f):
            for v in e:
                out.add(Flag(v, e, f))
    return out


def vertex_link_is_cycle(complex_: CellComplex, v: int) -> bool:
    """True iff the faces around v close up into a single cycle."""
    around = [f for f in complex_.faces if v in f]
    if not around:
        return False
    # link graph: link edges are faces, link vertices are edges at v
    link = {}
    for f in around:
        es = [e for e in face_edges(f) if v in e]
        if len(es) != 2:
            return False
        a, b = es
        link.setdefault(a, []).append(b)
        link.setdefault(b, []).append(a)
    if any(len(x) != 2 for x in link.values()):
        return False
    start = next(iter(link))
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for w in link[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(link)


def is_closed_surface(complex_: CellComplex) -> bool:
    """Every edge on exactly two faces, connected, and all vertex links are cycles."""
    if any(len(fs) != 2 for fs in complex_.edge_faces.values()):
        return False
    if not complex_.graph.is_connected():
        return False
    return all(vertex_link_is_cycle(complex_, v) for v in range(complex_.n_vertices))


def faces_meet_properly(complex_: CellComplex) -> bool:
    """Closures of two distinct faces meet in nothing, one vertex, or one edge."""
    for f, g in itertools.combinations(complex_.sorted_faces, 2):
        common = set(f) & set(g)
        if len(common) <= 1:
            continue
        if len(common) > 2:
            return False
        if edge_key(*common) not in set(face_edges(f)) or edge_key(*common) not in set(face_edges(g)):
            return False
    return True
