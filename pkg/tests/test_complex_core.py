import itertools
import json

import pytest
from hypothesis import given, strategies as st

from torusquad.complex_core import (
    CellComplex,
    Graph,
    build_cycle_product_graph,
    build_duoprism_boundary,
    build_hypercube_boundary,
    build_torus_quadrangulation,
    canonical_face,
    decode,
    edge_key,
    encode,
    face_edges,
    faces_meet_properly,
    flags,
    is_closed_surface,
)

from conftest import GRID


@pytest.mark.parametrize("n,k,V,E", [(3, 3, 9, 18), (4, 4, 16, 32), (3, 5, 15, 30)])
def test_cycle_product_counts(n, k, V, E):
    g = build_cycle_product_graph(n, k)
    assert g.n_vertices == V
    assert len(g.edges) == E
    assert all(g.degree(v) == 4 for v in range(V))


@pytest.mark.parametrize("n,k", [(2, 3), (3, 2), (0, 5), (-1, 4)])
def test_rejects_short_cycles(n, k):
    with pytest.raises(ValueError):
        build_cycle_product_graph(n, k)
    with pytest.raises(ValueError):
        build_torus_quadrangulation(n, k)
    with pytest.raises(ValueError):
        build_duoprism_boundary(n, k)


def test_edges_follow_product_rule():
    n, k = 4, 6
    g = build_cycle_product_graph(n, k)
    expected = set()
    for (i1, j1), (i2, j2) in itertools.combinations(itertools.product(range(n), range(k)), 2):
        if i1 == i2 and (j1 - j2) % k in (1, k - 1):
            expected.add(edge_key(encode(i1, j1, k), encode(i2, j2, k)))
        if j1 == j2 and (i1 - i2) % n in (1, n - 1):
            expected.add(edge_key(encode(i1, j1, k), encode(i2, j2, k)))
    assert g.edges == expected


@pytest.mark.parametrize("n,k", GRID)
def test_quadrangulation_invariants(n, k):
    q = build_torus_quadrangulation(n, k)
    assert q.counts() == (n * k, 2 * n * k, n * k)
    assert q.euler_characteristic() == 0
    assert all(len(f) == 4 for f in q.faces)
    assert all(len(fs) == 2 for fs in q.edge_faces.values())
    assert is_closed_surface(q)
    assert len(flags(q)) == 8 * n * k


@pytest.mark.parametrize("n,k", [(3, 3), (3, 4), (4, 4), (5, 3), (6, 6)])
def test_faces_meet_in_vertex_edge_or_nothing(n, k):
    assert faces_meet_properly(build_torus_quadrangulation(n, k))


def test_rebuild_is_identical():
    a = build_torus_quadrangulation(5, 7)
    b = build_torus_quadrangulation(5, 7)
    assert a.faces == b.faces
    assert a.to_json() == b.to_json()


def _brute_force_flags(c):
    # enumerate all (vertex, edge, face) triples and keep the incident ones
    out = 0
    for f in c.faces:
        fe = set(face_edges(f))
        for e in c.edges:
            if e not in fe:
                continue
            for v in range(c.n_vertices):
                if v in e and v in f:
                    out += 1
    return out


@pytest.mark.parametrize("n,k,count", [(3, 3, 72), (4, 4, 128), (5, 3, 120)])
def test_flag_counts(n, k, count):
    q = build_torus_quadrangulation(n, k)
    assert _brute_force_flags(q) == count
    assert len(flags(q)) == count


def test_single_quad_has_eight_flags():
    face = canonical_face([0, 1, 2, 3])
    g = Graph(4, frozenset(face_edges(face)))
    assert len(flags(CellComplex(g, frozenset([face])))) == 8


def test_flag_incidence():
    for fl in flags(build_torus_quadrangulation(3, 4)):
        assert fl.vertex in fl.edge
        assert fl.edge in face_edges(fl.face)


@pytest.mark.parametrize("n,k,faces,cells", [(3, 3, 15, 6), (4, 4, 24, 8), (3, 5, 23, 8)])
def test_duoprism_boundary_counts(n, k, faces, cells):
    b = build_duoprism_boundary(n, k)
    assert len(b.faces) == faces
    assert len(b.cells3) == cells


def test_duoprism_3_5_face_sizes():
    sizes = sorted(len(f) for f in build_duoprism_boundary(3, 5).faces)
    assert sizes.count(4) == 15 and sizes.count(5) == 3 and sizes.count(3) == 5


@pytest.mark.parametrize("n,k", GRID)
def test_duoprism_boundary_structure(n, k):
    b = build_duoprism_boundary(n, k)
    q = build_torus_quadrangulation(n, k)
    for f in b.faces:
        assert sum(1 for cell in b.cells3 if f in cell) == 2
    polygons = {canonical_face([encode(i, j, k) for j in range(k)]) for i in range(n)}
    polygons |= {canonical_face([encode(i, j, k) for i in range(n)]) for j in range(k)}
    assert b.faces - polygons == q.faces
    assert b.graph == q.graph


def test_duoprism_4_4_is_the_4_cube():
    # C_4 = K_2 x K_2 via the Gray code 0,1,3,2; vertex (i, j) -> bits (g(i), g(j))
    gray = [0, 1, 3, 2]
    to_cube = [gray[decode(v, 4)[0]] | gray[decode(v, 4)[1]] << 2 for v in range(16)]
    b = build_duoprism_boundary(4, 4)
    cube = build_hypercube_boundary()
    mapped_edges = {edge_key(to_cube[a], to_cube[c]) for a, c in b.edges}
    mapped_faces = {canonical_face([to_cube[v] for v in f]) for f in b.faces}
    mapped_cells = {frozenset(canonical_face([to_cube[v] for v in f]) for f in cell) for cell in b.cells3}
    assert mapped_edges == set(cube.edges)
    assert mapped_faces == set(cube.faces)
    assert mapped_cells == set(cube.cells3)
    assert len(cube.faces) == 24 and len(cube.cells3) == 8


def test_canonical_face_examples():
    assert canonical_face([2, 0, 1]) == (0, 1, 2)
    assert canonical_face([5, 4, 7, 6]) == (4, 5, 6, 7)
    assert canonical_face([3, 0, 2, 1]) == (0, 2, 1, 3)
    with pytest.raises(ValueError):
        canonical_face([1, 2, 1])
    with pytest.raises(ValueError):
        canonical_face([1, 2])


@given(st.lists(st.integers(0, 50), min_size=3, max_size=8, unique=True),
       st.integers(0, 7), st.booleans())
def test_canonical_face_invariance(cycle, shift, flip):
    c = canonical_face(cycle)
    assert canonical_face(c) == c
    r = shift % len(cycle)
    moved = cycle[r:] + cycle[:r]
    if flip:
        moved = moved[::-1]
    assert canonical_face(moved) == c
    assert c[0] == min(cycle)


@given(st.integers(3, 12), st.integers(3, 12), st.data())
def test_encode_decode_roundtrip(n, k, data):
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, k - 1))
    v = encode(i, j, k)
    assert 0 <= v < n * k
    assert decode(v, k) == (i, j)


def test_json_roundtrip_and_schema():
    b = build_duoprism_boundary(3, 4)
    text = b.to_json()
    d = json.loads(text)
    assert d["n"] == 3 and d["k"] == 4 and d["vertices"] == 12
    assert d["edges"] == sorted(d["edges"])
    assert d["faces"] == sorted(d["faces"])
    assert CellComplex.from_json(text) == b
    d["schema_version"] = 99
    with pytest.raises(ValueError):
        CellComplex.from_dict(d)


def test_invalid_complexes_rejected():
    g = build_cycle_product_graph(3, 3)
    with pytest.raises(ValueError):
        CellComplex(g, frozenset([(0, 4, 8)]))  # not edges of the graph
    with pytest.raises(ValueError):
        CellComplex(g, frozenset([(1, 0, 3, 4)]))  # not canonical
    with pytest.raises(ValueError):
        edge_key(2, 2)


def test_non_surface_detected():
    q = build_torus_quadrangulation(3, 4)
    partial = q.two_skeleton(list(q.sorted_faces)[:-1])
    assert not is_closed_surface(partial)
