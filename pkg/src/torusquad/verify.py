"""
End-to-end certificates that Q_{n,k} sits in the duoprism boundary with
every combinatorial automorphism induced by an orthogonal map.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from . import autgroup as ag
from .complex_core import (
    CellComplex,
    build_duoprism_boundary,
    build_hypercube_boundary,
    build_torus_quadrangulation,
    face_edges,
    faces_meet_properly,
    is_closed_surface,
)
from .geometry import (
    DEFAULT_TOL,
    IsometryWitness,
    Realization,
    centroid_norm,
    clifford_check,
    duoprism_vertices,
    euclidean_symmetries,
    extend_all,
    induced_permutation,
    metric_report,
    symmetry_generator_matrices,
)

CERT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Lemma2Report:
    cond_i: bool  # ambient symmetries preserve the subcomplex
    cond_ii: bool  # vertex counts agree
    cond_iii: bool  # |ambient group| == |Aut|

    @property
    def conclusion(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii

    def to_dict(self) -> dict:
        return {"cond_i": self.cond_i, "cond_ii": self.cond_ii,
                "cond_iii": self.cond_iii, "conclusion": self.conclusion}


def check_lemma2(ambient_group: ag.PermGroup, sub_complex: CellComplex,
                 ambient_vertex_count: int, aut_order: int) -> Lemma2Report:
    """Sufficient conditions for a realization without hidden symmetries.

    Condition (i) is checked on the permutation level: every element of the
    ambient group must carry the subcomplex's edges and faces onto itself.
    """
    if ambient_group.degree != sub_complex.n_vertices:
        raise ValueError(f"group degree {ambient_group.degree} != "
                         f"{sub_complex.n_vertices} vertices")
    cond_i = all(ag.is_cellular(p, sub_complex) for p in ambient_group.elements)
    return Lemma2Report(
        cond_i=cond_i,
        cond_ii=ambient_vertex_count == sub_complex.n_vertices,
        cond_iii=ambient_group.order == aut_order,
    )


@dataclass(eq=True)
class Certificate:
    n: int
    k: int
    tolerance: float
    group_order_graph: int
    group_order_cellular: int
    ambient_symmetry_order: int
    witnesses: list[IsometryWitness]
    max_fit_residual: float
    max_orth_residual: float
    classification: str | None
    edge_orbits: int
    lemma2: dict
    metric: dict
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(self.checks.values())
                and self.max_fit_residual < self.tolerance
                and self.max_orth_residual < self.tolerance)

    def failed_checks(self) -> list[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)

    def to_dict(self, with_witnesses: bool = True) -> dict:
        d = {
            "schema_version": CERT_SCHEMA_VERSION,
            "n": self.n,
            "k": self.k,
            "tolerance": self.tolerance,
            "group_order_graph": self.group_order_graph,
            "group_order_cellular": self.group_order_cellular,
            "ambient_symmetry_order": self.ambient_symmetry_order,
            "max_fit_residual": self.max_fit_residual,
            "max_orth_residual": self.max_orth_residual,
            "classification": self.classification,
            "edge_orbits": self.edge_orbits,
            "lemma2": self.lemma2,
            "metric": self.metric,
            "checks": self.checks,
            "passed": self.passed,
        }
        if with_witnesses:
            d["witnesses"] = [w.to_dict() for w in self.witnesses]
        return d

    def to_json(self, with_witnesses: bool = True) -> str:
        return json.dumps(self.to_dict(with_witnesses), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        if d.get("schema_version") != CERT_SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {d.get('schema_version')!r}")
        return cls(
            n=d["n"], k=d["k"], tolerance=d["tolerance"],
            group_order_graph=d["group_order_graph"],
            group_order_cellular=d["group_order_cellular"],
            ambient_symmetry_order=d["ambient_symmetry_order"],
            witnesses=[IsometryWitness.from_dict(w) for w in d.get("witnesses", [])],
            max_fit_residual=d["max_fit_residual"],
            max_orth_residual=d["max_orth_residual"],
            classification=d["classification"],
            edge_orbits=d["edge_orbits"],
            lemma2=d["lemma2"],
            metric=d["metric"],
            checks=d["checks"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        lines = [
            f"Q_{{{self.n},{self.k}}}: {'PASS' if self.passed else 'FAIL'}",
            f"  order {self.group_order_cellular}, {self.classification or 'unclassified'}, "
            f"{self.edge_orbits} edge orbit{'s' if self.edge_orbits != 1 else ''}",
            f"  |Aut(C_{self.n} x C_{self.k})| = {self.group_order_graph}, "
            f"|Sym(duoprism)| = {self.ambient_symmetry_order}",
            f"  witnesses {len(self.witnesses)}, max fit residual {self.max_fit_residual:.3e}, "
            f"max orthogonality residual {self.max_orth_residual:.3e}",
            f"  lemma 2 on the 1-skeleton: (i) {self.lemma2['cond_i']} (ii) {self.lemma2['cond_ii']} "
            f"(iii) {self.lemma2['cond_iii']}",
            "  3 copies check: n/a (see count-hypercube)",
        ]
        bad = self.failed_checks()
        if bad:
            lines.append("  failed: " + ", ".join(bad))
        return "\n".join(lines) + "\n"


def _classify(rep: ag.TransitivityReport) -> str | None:
    if rep.flag_transitive:
        return "regular"
    if rep.vertex_transitive and rep.face_transitive:
        return "noble"
    return None


def verify_no_hidden_symmetries(n: int, k: int, tol: float = DEFAULT_TOL,
                                cap: int = ag.DEFAULT_VERTEX_CAP,
                                realization: Realization | None = None) -> Certificate:
    """Run the whole pipeline for one (n, k) and collect every check.

    ``realization`` replaces the duoprism coordinates, e.g. for imported or
    perturbed point sets; all checks are then run against it.
    """
    if n * k > cap:
        raise ag.SizeLimitError(f"n*k = {n * k} exceeds vertex cap {cap}")
    quad = build_torus_quadrangulation(n, k)
    boundary = build_duoprism_boundary(n, k)
    r = realization if realization is not None else duoprism_vertices(n, k)
    if (r.n, r.k) != (n, k) or len(r) != n * k:
        raise ValueError("realization does not match (n, k)")

    graph_group = ag.graph_automorphisms(quad.graph, cap)
    cell_group = ag.cellular_automorphisms(quad, cap, graph_group=graph_group)
    structured = ag.group_closure(ag.structured_generators(n, k))

    witnesses = extend_all(r, cell_group.elements)
    max_fit = max(w.fit_residual for w in witnesses)
    max_orth = max(w.orthogonality_residual for w in witnesses)

    ambient = euclidean_symmetries(r, tol)
    lemma2 = check_lemma2(ambient, quad.one_skeleton(), boundary.n_vertices, graph_group.order)
    quad_syms = [p for p in ambient.elements if ag.is_cellular(p, quad)]

    gen_perms = []
    gen_mats_ok = True
    for A, p in symmetry_generator_matrices(n, k):
        gen_mats_ok &= induced_permutation(r, A, tol) == p
        gen_perms.append(p)
    gen_closure = ag.group_closure(gen_perms)

    trans = ag.transitivity_report(cell_group, quad)
    metric = metric_report(r, quad, tol)
    classification = _classify(trans)

    chord_n, chord_k = 2 * math.sin(math.pi / n), 2 * math.sin(math.pi / k)
    angle_n, angle_k = math.pi - 2 * math.pi / n, math.pi - 2 * math.pi / k
    exp_lengths = sorted({round(x, 12) for x in (chord_n, chord_k)})
    exp_angles = sorted({round(x, 12) for x in (angle_n, angle_k)})

    def close_lists(got, want):
        return len(got) == len(want) and all(abs(a - b) < tol for a, b in zip(got, want))

    checks = {
        "complex_closed_surface": is_closed_surface(quad) and quad.euler_characteristic() == 0,
        "complex_counts": quad.counts() == (n * k, 2 * n * k, n * k),
        "faces_meet_properly": faces_meet_properly(quad),
        "eq1_graph_order": graph_group.order == ag.expected_graph_order(n, k),
        "eq2_cellular_order": cell_group.order == ag.expected_cellular_order(n, k),
        "structured_equals_search": structured.elements == cell_group.elements,
        "cellular_reverified": all(ag.is_cellular(p, quad) for p in cell_group.elements),
        "clifford_inscribed": clifford_check(r, tol),
        "centroid_at_origin": centroid_norm(r) < tol,
        "all_witnesses_valid": all(w.valid(tol) for w in witnesses),
        "witness_det_pm1": all(abs(abs(w.det) - 1.0) < tol for w in witnesses),
        "lemma2_conclusion": lemma2.conclusion,
        "ambient_equals_graph_group": ambient.elements == graph_group.elements,
        "quad_symmetry_order": len(quad_syms) == cell_group.order,
        "generator_matrices_induce_generators": gen_mats_ok,
        "generator_matrices_generate_aut": gen_closure.elements == cell_group.elements,
        "vertex_transitive": trans.vertex_transitive,
        "face_transitive": trans.face_transitive,
        "edge_orbits_expected": trans.edge_orbits == (1 if n == k else 2),
        "flag_transitive_iff_square": trans.flag_transitive == (n == k),
        "simply_flag_transitive_iff_square": trans.simply_flag_transitive == (n == k),
        "edge_lengths_expected": close_lists(metric.edge_length_orbits, exp_lengths),
        "faces_congruent_rectangles": metric.face_congruence_classes == 1 and metric.faces_are_rectangles(tol),
        "dihedral_angles_expected": close_lists(metric.dihedral_angle_classes, exp_angles),
        "vertex_figures_congruent": metric.vertex_figure_classes == 1,
        "classification_expected": classification == ("regular" if n == k else "noble"),
    }
    return Certificate(
        n=n, k=k, tolerance=tol,
        group_order_graph=graph_group.order,
        group_order_cellular=cell_group.order,
        ambient_symmetry_order=ambient.order,
        witnesses=witnesses,
        max_fit_residual=max_fit,
        max_orth_residual=max_orth,
        classification=classification,
        edge_orbits=trans.edge_orbits,
        lemma2=lemma2.to_dict(),
        metric=metric.to_dict(),
        checks={name: bool(ok) for name, ok in checks.items()},
    )


def sweep(lo: int, hi: int, tol: float = DEFAULT_TOL, cap: int = ag.DEFAULT_VERTEX_CAP) -> list[Certificate]:
    return [verify_no_hidden_symmetries(n, k, tol, cap)
            for n in range(lo, hi + 1) for k in range(lo, hi + 1)]


def sweep_table(certs: list[Certificate]) -> str:
    head = f"{'n':>2} {'k':>2} {'|AutG|':>6} {'|AutQ|':>6} {'class':>8} {'fit':>9} {'orth':>9}  result"
    rows = [head]
    for c in certs:
        rows.append(f"{c.n:>2} {c.k:>2} {c.group_order_graph:>6} {c.group_order_cellular:>6} "
                    f"{c.classification or '-':>8} {c.max_fit_residual:9.2e} {c.max_orth_residual:9.2e}  "
                    f"{'PASS' if c.passed else 'FAIL'}")
    return "\n".join(rows) + "\n"


# -- Q_{4,4} inside the 4-cube ------------------------------------------------

def _square_edge_weights(cube: CellComplex) -> tuple[list, list[int], int]:
    # per-edge multiplicities packed in base 4; each count stays <= 3, so no carries
    edges = sorted(cube.edges)
    eid = {e: t for t, e in enumerate(edges)}
    squares = list(cube.sorted_faces)
    weights = [sum(4 ** eid[e] for e in face_edges(f)) for f in squares]
    target = 2 * sum(4 ** t for t in range(len(edges)))
    return squares, weights, target


def _double_covers_naive(cube: CellComplex) -> list[frozenset]:
    squares, weights, target = _square_edge_weights(cube)
    out = []
    for combo in itertools.combinations(range(len(squares)), 16):
        if sum(weights[i] for i in combo) == target:
            out.append(frozenset(squares[i] for i in combo))
    return out


def _double_covers_dfs(cube: CellComplex) -> list[frozenset]:
    """Decide squares one at a time, pruning on per-edge multiplicity."""
    squares = list(cube.sorted_faces)
    sq_edges = [face_edges(f) for f in squares]
    count = {e: 0 for e in cube.edges}
    left = {e: len(fs) for e, fs in cube.edge_faces.items()}
    chosen = []
    out = []

    def go(t):
        if t == len(squares):
            if all(c == 2 for c in count.values()):
                out.append(frozenset(squares[i] for i in chosen))
            return
        es = sq_edges[t]
        for e in es:
            left[e] -= 1
        # include
        if all(count[e] < 2 for e in es):
            for e in es:
                count[e] += 1
            chosen.append(t)
            go(t + 1)
            chosen.pop()
            for e in es:
                count[e] -= 1
        # exclude
        if all(count[e] + left[e] >= 2 for e in es):
            go(t + 1)
        for e in es:
            left[e] += 1

    go(0)
    return out


def enumerate_Q44_in_hypercube(method: str = "dfs") -> list[CellComplex]:
    """Subcomplexes of the 4-cube's squares that are copies of Q_{4,4}.

    Candidates are 16-square sets covering every edge exactly twice; each is
    kept only if it is a closed surface and cellularly isomorphic to Q_{4,4}.
    """
    cube = build_hypercube_boundary()
    if method == "dfs":
        covers = _double_covers_dfs(cube)
    elif method == "naive":
        covers = _double_covers_naive(cube)
    else:
        raise ValueError(f"unknown method {method!r}")
    q44 = build_torus_quadrangulation(4, 4)
    copies = []
    for faces in sorted(covers, key=lambda s: sorted(s)):
        sub = cube.two_skeleton(faces)
        if not is_closed_surface(sub):
            continue
        if ag.find_cellular_isomorphism(sub, q44) is None:
            continue
        copies.append(sub)
    return copies


def count_Q44_in_hypercube(method: str = "dfs") -> int:
    return len(enumerate_Q44_in_hypercube(method))


@dataclass(frozen=True)
class HypercubeCount:
    copies: int
    copies_naive: int
    ratio: float
    graph_order: int
    cellular_order: int
    all_isomorphic: bool
    orbits_under_cube_group: int

    @property
    def ok(self) -> bool:
        return self.copies == self.copies_naive == self.ratio == 3 and self.all_isomorphic

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def hypercube_report() -> HypercubeCount:
    copies = enumerate_Q44_in_hypercube("dfs")
    naive = enumerate_Q44_in_hypercube("naive")
    q44 = build_torus_quadrangulation(4, 4)
    g = ag.graph_automorphisms(q44.graph).order
    c = ag.cellular_automorphisms(q44).order
    cube = build_hypercube_boundary()
    cube_group = ag.graph_automorphisms(cube.graph)
    face_sets = [s.faces for s in copies]
    orbits = ag.induced_orbits(
        cube_group.generators, face_sets,
        lambda p, fs: frozenset(ag.apply_to_face(p, f) for f in fs))
    return HypercubeCount(
        copies=len(copies),
        copies_naive=len(naive),
        ratio=g / c,
        graph_order=g,
        cellular_order=c,
        all_isomorphic=all(ag.find_cellular_isomorphism(s, q44) is not None for s in copies),
        orbits_under_cube_group=len(orbits),
    )
