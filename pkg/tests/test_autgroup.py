import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from torusquad import autgroup as ag
from torusquad.complex_core import Graph, build_cycle_product_graph, build_torus_quadrangulation, edge_key

from conftest import GRID, cell_group, graph_group, quad


def _nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n_vertices))
    h.add_edges_from(g.edges)
    return h


def _vf2_automorphisms(g):
    h = _nx_graph(g)
    return {tuple(m[v] for v in range(g.n_vertices)) for m in GraphMatcher(h, h).isomorphisms_iter()}


@pytest.mark.parametrize("n,k", [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5), (3, 6)])
def test_graph_search_matches_vf2(n, k):
    g = build_cycle_product_graph(n, k)
    assert set(graph_group(n, k).elements) == _vf2_automorphisms(g)


def test_graph_search_on_a_tiny_graph_by_permutation_brute_force():
    # path 0-1-2-3 plus chord 1-3: automorphisms by trying all 4! maps
    g = Graph(4, frozenset([(0, 1), (1, 2), (2, 3), (1, 3)]))
    brute = {p for p in itertools.permutations(range(4))
             if all(edge_key(p[a], p[b]) in g.edges for a, b in g.edges)}
    assert set(ag.graph_automorphisms(g).elements) == brute


@pytest.mark.parametrize("n,k,order", [(3, 5, 60), (5, 5, 200), (4, 4, 384)])
def test_graph_orders_examples(n, k, order):
    assert graph_group(n, k).order == order


@pytest.mark.parametrize("n,k,order", [(3, 5, 60), (4, 4, 128), (3, 3, 72)])
def test_cellular_orders_examples(n, k, order):
    assert cell_group(n, k).order == order


def test_q44_is_strict_subgroup_of_cube_graph_group():
    c, g = cell_group(4, 4), graph_group(4, 4)
    assert set(c.elements) < set(g.elements)
    assert g.order // c.order == 3


@pytest.mark.parametrize("n,k", GRID)
def test_cellular_subset_of_graph_group(n, k):
    c, g = set(cell_group(n, k).elements), set(graph_group(n, k).elements)
    assert c <= g
    assert (c == g) == ((n, k) != (4, 4))


@pytest.mark.parametrize("n,k", GRID)
def test_cellular_elements_reverified(n, k):
    q = quad(n, k)
    assert all(ag.is_cellular(p, q) for p in cell_group(n, k).elements)


@pytest.mark.parametrize("n,k,ngens,order", [(3, 5, 4, 60), (5, 5, 5, 200), (4, 4, 5, 128)])
def test_structured_generators(n, k, ngens, order):
    gens = ag.structured_generators(n, k)
    assert len(gens) == ngens
    q = quad(n, k)
    assert all(ag.is_cellular(g, q) for g in gens)
    assert ag.group_closure(gens).order == order


def test_structured_closure_for_4_4_is_not_the_cube_group():
    closure = ag.group_closure(ag.structured_generators(4, 4))
    assert closure.elements == cell_group(4, 4).elements
    assert closure.order != graph_group(4, 4).order


def test_closure_trivial_cases():
    assert ag.group_closure([ag.identity(5)]).order == 1
    assert ag.group_closure([], degree=3).order == 1
    rot = tuple((i + 1) % 7 for i in range(7))
    assert ag.group_closure([rot]).order == 7


def test_closure_rejects_degree_mismatch():
    with pytest.raises(ValueError):
        ag.group_closure([(1, 0), (0, 2, 1)])
    with pytest.raises(ValueError):
        ag.group_closure([(0, 0, 1)])
    with pytest.raises(ValueError):
        ag.group_closure([])


def test_closure_is_deterministic_and_sorted():
    a = ag.group_closure(ag.structured_generators(3, 4))
    b = ag.group_closure(list(reversed(ag.structured_generators(3, 4))))
    assert a.elements == b.elements
    assert list(a.elements) == sorted(a.elements)


@pytest.mark.parametrize("n,k", [(3, 5), (4, 4), (6, 6), (3, 8)])
def test_group_axioms(n, k):
    G = cell_group(n, k)
    els = set(G.elements)
    assert ag.identity(G.degree) in els
    assert all(ag.inverse(p) in els for p in els)
    assert all(g in els for g in G.generators)
    assert ag.group_closure(G.generators).elements == G.elements
    sample = sorted(els)[:20]
    assert all(ag.compose(a, b) in els for a in sample for b in sample)


@pytest.mark.parametrize("n,v", [(5, 0), (5, 7), (4, 3), (6, 35)])
def test_square_stabilizer_is_order_8(n, v):
    assert ag.vertex_stabilizer(cell_group(n, n), v).order == 8


@pytest.mark.parametrize("n,k,v", [(3, 5, 0), (3, 5, 11), (4, 7, 5)])
def test_rectangular_stabilizer_is_order_4(n, k, v):
    stab = ag.vertex_stabilizer(cell_group(n, k), v)
    assert stab.order == 4
    # every non-identity element is an involution
    assert all(ag.compose(p, p) == ag.identity(n * k) for p in stab.elements)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 5), (4, 4), (5, 5), (3, 4), (6, 4)]), st.data())
def test_orbit_stabilizer(nk, data):
    n, k = nk
    G = cell_group(n, k)
    v = data.draw(st.integers(0, n * k - 1))
    assert len(ag.orbit(G, v)) * ag.vertex_stabilizer(G, v).order == G.order


def test_transitivity_rectangular():
    rep = ag.transitivity_report(cell_group(3, 5), quad(3, 5))
    assert rep.vertex_transitive and rep.face_transitive
    assert rep.edge_orbits == 2
    assert not rep.flag_transitive


def test_transitivity_square_is_simply_flag_transitive():
    rep = ag.transitivity_report(cell_group(6, 6), quad(6, 6))
    assert rep.flag_transitive
    assert rep.group_order == rep.n_flags == 288
    assert rep.simply_flag_transitive


def test_transitivity_trivial_group():
    trivial = ag.group_closure([], degree=9)
    rep = ag.transitivity_report(trivial, quad(3, 3))
    assert rep.vertex_orbits == 9
    assert rep.face_orbits == 9 and rep.edge_orbits == 18 and rep.flag_orbits == 72
    assert not (rep.vertex_transitive or rep.edge_transitive or rep.face_transitive)


def test_transitivity_rejects_non_cellular_action():
    extra = [p for p in graph_group(4, 4).elements if not ag.is_cellular(p, quad(4, 4))]
    bad = ag.group_closure([extra[0]])
    with pytest.raises(ValueError):
        ag.transitivity_report(bad, quad(4, 4))


def test_induced_orbits_with_unorderable_items():
    # frozensets compare by inclusion; orbit bookkeeping must not rely on ordering
    items = [frozenset({0}), frozenset({1}), frozenset({2})]
    swap = (1, 2, 0)
    orbits = ag.induced_orbits([swap], items, lambda p, s: frozenset(p[x] for x in s))
    assert len(orbits) == 1


def test_size_limit():
    g = build_cycle_product_graph(11, 10)
    with pytest.raises(ag.SizeLimitError):
        ag.graph_automorphisms(g)
    assert ag.graph_automorphisms(build_cycle_product_graph(3, 3), cap=9).order == 72


def test_cellular_isomorphism_between_relabelled_copies():
    q = build_torus_quadrangulation(3, 4)
    p = ag.structured_generators(3, 4)[0]
    assert ag.find_cellular_isomorphism(q, q) is not None
    assert ag.find_cellular_isomorphism(q, build_torus_quadrangulation(4, 3)) is not None
    assert ag.find_cellular_isomorphism(q, build_torus_quadrangulation(3, 3)) is None
    assert ag.is_cellular(p, q)


def test_group_json():
    G = cell_group(3, 4)
    d = G.to_dict(with_elements=True)
    assert d["order"] == 48 and d["degree"] == 12
    assert d["elements"] == sorted(d["elements"])
    assert G.to_json() == cell_group(3, 4).to_json()
