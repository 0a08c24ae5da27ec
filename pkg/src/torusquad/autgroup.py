"""
Automorphism groups of graphs and cell complexes.

Permutations are tuples ``p`` of images, ``p[v]`` being the image of vertex
``v``.  ``compose(p, q)`` applies ``q`` first.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .complex_core import (
    CellComplex,
    Graph,
    canonical_face,
    edge_key,
    encode,
    flags,
)

Perm = tuple[int, ...]

DEFAULT_VERTEX_CAP = 100


class SizeLimitError(ValueError):
    pass


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]  # sorted lexicographically

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.element_set

    @property
    def element_set(self) -> frozenset[Perm]:
        # cheap enough at the orders we handle; not cached on a frozen dataclass
        return frozenset(self.elements)

    def to_dict(self, with_elements: bool = False) -> dict:
        d = {
            "degree": self.degree,
            "order": self.order,
            "generators": [list(g) for g in self.generators],
        }
        if with_elements:
            d["elements"] = [list(p) for p in self.elements]
        return d

    def to_json(self, with_elements: bool = False) -> str:
        return json.dumps(self.to_dict(with_elements), sort_keys=True) + "\n"


def group_closure(gens: Iterable[Sequence[int]], degree: int | None = None) -> PermGroup:
    """Breadth-first closure of ``gens`` under composition."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise ValueError(f"generator of degree {len(g)}, expected {degree}")
        if not is_permutation(g):
            raise ValueError(f"not a permutation: {g}")
    e = identity(degree)
    els = {e}
    bdy = [e]
    while bdy:
        nxt = []
        for a in gens:
            for b in bdy:
                c = compose(a, b)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        bdy = nxt
    return PermGroup(degree, tuple(gens), tuple(sorted(els)))


def _small_generating_set(elements: Sequence[Perm], degree: int) -> tuple[Perm, ...]:
    gens = []
    have = {identity(degree)}
    for p in sorted(elements):
        if p not in have:
            gens.append(p)
            have = set(group_closure(gens, degree).elements)
    return tuple(gens)


def group_from_elements(elements: Iterable[Sequence[int]], degree: int) -> PermGroup:
    els = tuple(sorted({tuple(p) for p in elements}))
    return PermGroup(degree, _small_generating_set(els, degree), els)


def _bfs_order(g: Graph) -> tuple[list[int], list[int]]:
    order, parent = [0], [-1]
    seen = {0}
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for w in sorted(g.adjacency[u]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                parent.append(u)
                todo.append(w)
    return order, parent


def graph_isomorphisms(g1: Graph, g2: Graph, cap: int = DEFAULT_VERTEX_CAP) -> Iterator[Perm]:
    """Yield every graph isomorphism g1 -> g2 as an image tuple.

    Vertices of g1 are mapped in BFS order from vertex 0; each new vertex is
    tried only on unused neighbours of its parent's image, and accepted only
    if adjacency to every mapped vertex is preserved both ways.
    """
    if g1.n_vertices > cap or g2.n_vertices > cap:
        raise SizeLimitError(f"graph exceeds vertex cap {cap}")
    if g1.n_vertices != g2.n_vertices or len(g1.edges) != len(g2.edges):
        return
    if g1.n_vertices == 0:
        yield ()
        return
    if not g1.is_connected():
        raise ValueError("graph must be connected")
    N = g1.n_vertices
    adj1, adj2 = g1.adjacency, g2.adjacency
    order, parent = _bfs_order(g1)
    pos = {v: t for t, v in enumerate(order)}
    # neighbours of order[t] that are mapped before it
    earlier = [[w for w in adj1[v] if pos[w] < t] for t, v in enumerate(order)]
    img = [-1] * N
    used = [False] * N

    def extend(t):
        if t == N:
            yield tuple(img)
            return
        u = order[t]
        if t == 0:
            cands = range(N)
        else:
            cands = sorted(adj2[img[parent[t]]])
        need = len(earlier[t])
        for c in cands:
            if used[c] or len(adj2[c]) != len(adj1[u]):
                continue
            if any(img[w] not in adj2[c] for w in earlier[t]):
                continue
            # non-adjacency: c may not touch more mapped vertices than u does
            if sum(1 for x in adj2[c] if used[x]) != need:
                continue
            img[u] = c
            used[c] = True
            yield from extend(t + 1)
            used[c] = False
            img[u] = -1

    yield from extend(0)


def graph_automorphisms(g: Graph, cap: int = DEFAULT_VERTEX_CAP) -> PermGroup:
    return group_from_elements(graph_isomorphisms(g, g, cap), g.n_vertices)


def apply_to_face(p: Perm, face: Sequence[int]) -> tuple[int, ...]:
    return canonical_face([p[v] for v in face])


def is_graph_automorphism(p: Perm, g: Graph) -> bool:
    return is_permutation(p) and all(edge_key(p[a], p[b]) in g.edges for a, b in g.edges)


def is_cellular(p: Perm, c: CellComplex) -> bool:
    """Check, independently of any search, that p maps edges and faces onto themselves."""
    if len(p) != c.n_vertices or not is_graph_automorphism(p, c.graph):
        return False
    return all(apply_to_face(p, f) in c.faces for f in c.faces)


def cellular_automorphisms(c: CellComplex, cap: int = DEFAULT_VERTEX_CAP,
                           graph_group: PermGroup | None = None) -> PermGroup:
    """Graph automorphisms of the 1-skeleton that also permute the faces.

    Pass ``graph_group`` to reuse an already computed Aut of the 1-skeleton.
    """
    if graph_group is None:
        graph_group = graph_automorphisms(c.graph, cap)
    keep = [p for p in graph_group.elements if all(apply_to_face(p, f) in c.faces for f in c.faces)]
    return group_from_elements(keep, c.n_vertices)


def find_cellular_isomorphism(c1: CellComplex, c2: CellComplex,
                              cap: int = DEFAULT_VERTEX_CAP) -> Perm | None:
    """First vertex bijection c1 -> c2 carrying faces onto faces, or None."""
    if len(c1.faces) != len(c2.faces):
        return None
    for p in graph_isomorphisms(c1.graph, c2.graph, cap):
        if all(apply_to_face(p, f) in c2.faces for f in c1.faces):
            return p
    return None


def structured_generators(n: int, k: int) -> list[Perm]:
    """Rotation and reflection of each cycle factor, plus the swap when n == k.

    On a factor, rotation is i -> i+1 and reflection is i -> -i.
    """
    if n < 3 or k < 3:
        raise ValueError(f"cycle lengths must be >= 3, got n={n}, k={k}")

    def perm(f):
        out = [0] * (n * k)
        for i in range(n):
            for j in range(k):
                out[encode(i, j, k)] = encode(*f(i, j), k)
        return tuple(out)

    gens = [
        perm(lambda i, j: ((i + 1) % n, j)),
        perm(lambda i, j: ((-i) % n, j)),
        perm(lambda i, j: (i, (j + 1) % k)),
        perm(lambda i, j: (i, (-j) % k)),
    ]
    if n == k:
        gens.append(perm(lambda i, j: (j, i)))
    return gens


def orbit(group: PermGroup, v: int) -> set[int]:
    return {p[v] for p in group.elements}


def vertex_stabilizer(group: PermGroup, v: int) -> PermGroup:
    if not 0 <= v < group.degree:
        raise ValueError(f"vertex {v} out of range")
    return group_from_elements([p for p in group.elements if p[v] == v], group.degree)


def induced_orbits(gens: Sequence[Perm], items: Iterable[Hashable],
                   act: Callable[[Perm, Hashable], Hashable]) -> list[set]:
    """Orbits of an induced action, found by union-find over the generators."""
    items = list(items)
    index = {x: t for t, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for g in gens:
        for t, x in enumerate(items):
            y = act(g, x)
            if y not in index:
                raise ValueError(f"action does not preserve the item set: {x} -> {y}")
            rx, ry = find(t), find(index[y])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    classes = {}
    for t, x in enumerate(items):
        classes.setdefault(find(t), set()).add(x)
    return list(classes.values())


def _act_vertex(p, v):
    return p[v]


def _act_edge(p, e):
    return edge_key(p[e[0]], p[e[1]])


def _act_face(p, f):
    return apply_to_face(p, f)


def _act_flag(p, fl):
    v, e, f = fl
    return (p[v], edge_key(p[e[0]], p[e[1]]), apply_to_face(p, f))


@dataclass(frozen=True)
class TransitivityReport:
    vertex_orbits: int
    edge_orbits: int
    face_orbits: int
    flag_orbits: int
    group_order: int
    n_flags: int

    @property
    def vertex_transitive(self) -> bool:
        return self.vertex_orbits == 1

    @property
    def edge_transitive(self) -> bool:
        return self.edge_orbits == 1

    @property
    def face_transitive(self) -> bool:
        return self.face_orbits == 1

    @property
    def flag_transitive(self) -> bool:
        return self.flag_orbits == 1

    @property
    def simply_flag_transitive(self) -> bool:
        return self.flag_transitive and self.group_order == self.n_flags


def transitivity_report(group: PermGroup, c: CellComplex) -> TransitivityReport:
    if group.degree != c.n_vertices:
        raise ValueError("group degree does not match the complex")
    gens = group.generators
    for g in gens:
        if not is_cellular(g, c):
            raise ValueError("group does not act cellularly on the complex")
    fl = [tuple(x) for x in flags(c)]
    return TransitivityReport(
        vertex_orbits=len(induced_orbits(gens, range(c.n_vertices), _act_vertex)),
        edge_orbits=len(induced_orbits(gens, c.edges, _act_edge)),
        face_orbits=len(induced_orbits(gens, c.faces, _act_face)),
        flag_orbits=len(induced_orbits(gens, fl, _act_flag)),
        group_order=group.order,
        n_flags=len(fl),
    )


def expected_graph_order(n: int, k: int) -> int:
    if n != k:
        return 4 * n * k
    return 384 if n == 4 else 8 * n * n


def expected_cellular_order(n: int, k: int) -> int:
    return 4 * n * k if n != k else 8 * n * n
