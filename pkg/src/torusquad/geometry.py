"""
Duoprism realizations in R^4 and their metric properties.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .autgroup import Perm, PermGroup, group_from_elements, is_permutation, structured_generators
from .complex_core import SCHEMA_VERSION, CellComplex, decode

DEFAULT_TOL = 1e-9


class GeometryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Realization:
    points: np.ndarray  # shape (nk, 4), row v is the point of vertex v
    n: int
    k: int

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 4:
            raise GeometryError(f"expected an (N, 4) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise GeometryError("non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def point(self, v: int) -> np.ndarray:
        return self.points[v]

    def perturbed(self, v: int, axis: int, delta: float) -> "Realization":
        pts = self.points.copy()
        pts[v, axis] += delta
        return Realization(pts, self.n, self.k)

    def to_dict(self, complex_: CellComplex) -> dict:
        d = complex_.to_dict()
        d["coords"] = [[float(x) for x in row] for row in self.points]
        return d

    def to_json(self, complex_: CellComplex) -> str:
        return json.dumps(self.to_dict(complex_), sort_keys=True) + "\n"

    def to_off(self, complex_: CellComplex) -> str:
        """OFF-style text with 4-component vertex lines, 17 significant digits."""
        faces = complex_.sorted_faces
        lines = ["4OFF", f"{len(self.points)} {len(faces)} {len(complex_.edges)}"]
        for row in self.points:
            lines.append(" ".join(_fmt(x) for x in row))
        for f in faces:
            lines.append(" ".join([str(len(f))] + [str(v) for v in f]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Realization":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        return cls(np.array(d["coords"], dtype=float), int(d["n"]), int(d["k"]))


def _fmt(x: float) -> str:
    s = f"{x:.17g}"
    return "0" if s == "-0" else s


def duoprism_vertices(n: int, k: int) -> Realization:
    if n < 3 or k < 3:
        raise ValueError(f"cycle lengths must be >= 3, got n={n}, k={k}")
    pts = np.empty((n * k, 4))
    for v in range(n * k):
        i, j = decode(v, k)
        a, b = 2 * math.pi * i / n, 2 * math.pi * j / k
        pts[v] = (math.cos(a), math.sin(a), math.cos(b), math.sin(b))
    return Realization(pts, n, k)


def clifford_check(r: Realization, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    p = r.points
    first = np.abs(p[:, 0] ** 2 + p[:, 1] ** 2 - 1.0)
    second = np.abs(p[:, 2] ** 2 + p[:, 3] ** 2 - 1.0)
    return bool(np.all(first < tol) and np.all(second < tol))


def centroid_norm(r: Realization) -> float:
    return float(np.linalg.norm(r.points.mean(axis=0)))


@dataclass(frozen=True, eq=False)
class IsometryWitness:
    matrix: np.ndarray
    automorphism: Perm
    fit_residual: float
    orthogonality_residual: float

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def valid(self, tol: float = DEFAULT_TOL) -> bool:
        return self.fit_residual < tol and self.orthogonality_residual < tol

    def __eq__(self, other):
        if not isinstance(other, IsometryWitness):
            return NotImplemented
        return (np.array_equal(self.matrix, other.matrix)
                and tuple(self.automorphism) == tuple(other.automorphism)
                and self.fit_residual == other.fit_residual
                and self.orthogonality_residual == other.orthogonality_residual)

    def to_dict(self) -> dict:
        return {
            "matrix": [[float(x) for x in row] for row in self.matrix],
            "automorphism": list(self.automorphism),
            "fit_residual": self.fit_residual,
            "orthogonality_residual": self.orthogonality_residual,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IsometryWitness":
        return cls(np.array(d["matrix"], dtype=float), tuple(d["automorphism"]),
                   float(d["fit_residual"]), float(d["orthogonality_residual"]))


def _pseudo_inverse(points: np.ndarray) -> np.ndarray:
    # points is (N, 4); we need X^+ for X = points.T
    X = points.T
    if np.linalg.matrix_rank(X, tol=1e-10) < 4:
        raise GeometryError("points do not span R^4")
    return np.linalg.pinv(X)


def _witness(X: np.ndarray, Xpinv: np.ndarray, perm: Perm) -> IsometryWitness:
    Y = X[:, list(perm)]
    A = Y @ Xpinv
    fit = float(np.max(np.linalg.norm(A @ X - Y, axis=0)))
    orth = float(np.max(np.abs(A.T @ A - np.eye(4))))
    return IsometryWitness(A, tuple(perm), fit, orth)


def extend_to_isometry(r: Realization, perm: Sequence[int]) -> IsometryWitness:
    """Least-squares linear map sending each point M_v to M_perm(v).

    No translation is fitted: the vertex centroid of a duoprism is the origin.
    Residuals in the witness tell whether the map is a genuine isometry.
    """
    if len(perm) != len(r) or not is_permutation(perm):
        raise ValueError("perm must permute the vertex set of the realization")
    return _witness(r.points.T, _pseudo_inverse(r.points), tuple(perm))


def extend_all(r: Realization, perms: Sequence[Perm]) -> list[IsometryWitness]:
    Xpinv = _pseudo_inverse(r.points)
    X = r.points.T
    return [_witness(X, Xpinv, p) for p in perms]


def rotation2(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


REFLECT2 = np.array([[1.0, 0.0], [0.0, -1.0]])


def block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = np.zeros((4, 4))
    m[:2, :2] = a
    m[2:, 2:] = b
    return m


PAIR_SWAP = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])


def symmetry_generator_matrices(n: int, k: int) -> list[tuple[np.ndarray, Perm]]:
    """Orthogonal block matrices paired with the matching structured generators."""
    I2 = np.eye(2)
    mats = [
        block_diag(rotation2(2 * math.pi / n), I2),
        block_diag(REFLECT2, I2),
        block_diag(I2, rotation2(2 * math.pi / k)),
        block_diag(I2, REFLECT2),
    ]
    if n == k:
        mats.append(PAIR_SWAP.copy())
    return list(zip(mats, structured_generators(n, k)))


def induced_permutation(r: Realization, A: np.ndarray, tol: float = DEFAULT_TOL) -> Perm | None:
    """Vertex permutation induced by x -> A x on the point set, or None."""
    P = r.points
    Q = P @ A.T
    d = np.linalg.norm(Q[:, None, :] - P[None, :, :], axis=2)
    img = np.argmin(d, axis=1)
    if np.max(d[np.arange(len(P)), img]) >= tol:
        return None
    perm = tuple(int(x) for x in img)
    return perm if is_permutation(perm) else None


def euclidean_symmetries(r: Realization, tol: float = DEFAULT_TOL) -> PermGroup:
    """All linear isometries mapping the point set onto itself, as permutations.

    Purely metric: a basis of four points is chosen, candidate images are
    searched by matching Gram entries, and each candidate map is checked for
    orthogonality and for permuting the whole point set.  Assumes the points
    span R^4 and have centroid at the origin.
    """
    P = r.points
    N = len(P)
    basis = []
    for v in range(N):
        if np.linalg.matrix_rank(P[basis + [v]], tol=1e-8) == len(basis) + 1:
            basis.append(v)
        if len(basis) == 4:
            break
    if len(basis) < 4:
        raise GeometryError("points do not span R^4")
    G = P @ P.T
    B_inv = np.linalg.inv(P[basis].T)
    found = set()

    def search(chosen):
        t = len(chosen)
        if t == 4:
            A = P[chosen].T @ B_inv
            if np.max(np.abs(A.T @ A - np.eye(4))) >= tol:
                return
            perm = induced_permutation(r, A, tol)
            if perm is not None:
                found.add(perm)
            return
        for c in range(N):
            if c in chosen:
                continue
            if abs(G[c, c] - G[basis[t], basis[t]]) >= tol:
                continue
            if any(abs(G[c, chosen[s]] - G[basis[t], basis[s]]) >= tol for s in range(t)):
                continue
            search(chosen + [c])

    search([])
    return group_from_elements(found, N)


def bucket(values: Sequence[float], tol: float) -> list[float]:
    """Sort, split where consecutive gap > tol, return bucket means."""
    vals = sorted(float(x) for x in values)
    if not vals:
        return []
    groups = [[vals[0]]]
    for x in vals[1:]:
        if x - groups[-1][-1] > tol:
            groups.append([x])
        else:
            groups[-1].append(x)
    return [sum(g) / len(g) for g in groups]


def count_vector_classes(sigs: Sequence[Sequence[float]], tol: float) -> int:
    """Number of classes of equal-length vectors, equal when all entries agree within tol."""
    reps: list[np.ndarray] = []
    for s in sorted(tuple(x) for x in sigs):
        s = np.asarray(s)
        if not any(np.max(np.abs(s - r)) <= tol for r in reps):
            reps.append(s)
    return len(reps)


def _pairwise_sorted(pts: np.ndarray) -> list[float]:
    return sorted(float(np.linalg.norm(a - b)) for a, b in itertools.combinations(pts, 2))


@dataclass(frozen=True)
class MetricReport:
    edge_length_orbits: tuple[float, ...]
    face_congruence_classes: int
    dihedral_angle_classes: tuple[float, ...]
    vertex_figure_classes: int
    max_planarity_residual: float  # third singular value of corner differences
    max_corner_cosine: float  # |cos| of face corner angles; 0 for rectangles

    def faces_are_rectangles(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_planarity_residual < tol and self.max_corner_cosine < tol

    def to_dict(self) -> dict:
        return {
            "edge_length_orbits": list(self.edge_length_orbits),
            "face_congruence_classes": self.face_congruence_classes,
            "dihedral_angle_classes": list(self.dihedral_angle_classes),
            "vertex_figure_classes": self.vertex_figure_classes,
            "max_planarity_residual": self.max_planarity_residual,
            "max_corner_cosine": self.max_corner_cosine,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        return cls(tuple(d["edge_length_orbits"]), d["face_congruence_classes"],
                   tuple(d["dihedral_angle_classes"]), d["vertex_figure_classes"],
                   d["max_planarity_residual"], d["max_corner_cosine"])


def dihedral_angle(r: Realization, edge: tuple[int, int], f1: Sequence[int], f2: Sequence[int]) -> float:
    """Angle in [0, pi] between two face half-planes along a shared edge."""
    u, v = edge
    e = r.points[v] - r.points[u]
    e = e / np.linalg.norm(e)
    dirs = []
    for f in (f1, f2):
        m = len(f)
        t = f.index(u)
        nb = {f[(t - 1) % m], f[(t + 1) % m]} - {v}
        (w,) = nb
        d = r.points[w] - r.points[u]
        d = d - np.dot(d, e) * e
        dirs.append(d / np.linalg.norm(d))
    c = float(np.clip(np.dot(dirs[0], dirs[1]), -1.0, 1.0))
    return math.acos(c)


def metric_report(r: Realization, c: CellComplex, tol: float = DEFAULT_TOL) -> MetricReport:
    if any(len(f) != 4 for f in c.faces):
        raise GeometryError("metric report needs a quadrangulation")
    P = r.points
    lengths = [float(np.linalg.norm(P[a] - P[b])) for a, b in sorted(c.edges)]

    face_sigs = []
    planarity = 0.0
    corner_cos = 0.0
    for f in c.sorted_faces:
        corners = P[list(f)]
        face_sigs.append(_pairwise_sorted(corners))
        sv = np.linalg.svd(corners[1:] - corners[0], compute_uv=False)
        planarity = max(planarity, float(sv[2]))
        for t in range(4):
            a = corners[(t - 1) % 4] - corners[t]
            b = corners[(t + 1) % 4] - corners[t]
            corner_cos = max(corner_cos, abs(float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))))

    angles = []
    for e, fs in sorted(c.edge_faces.items()):
        if len(fs) != 2:
            raise GeometryError(f"edge {e} is not on exactly two faces")
        angles.append(dihedral_angle(r, e, *fs))

    adj = c.graph.adjacency
    vfig = [_pairwise_sorted(P[sorted(adj[v])]) for v in range(c.n_vertices)]

    return MetricReport(
        edge_length_orbits=tuple(bucket(lengths, tol)),
        face_congruence_classes=count_vector_classes(face_sigs, tol),
        dihedral_angle_classes=tuple(bucket(angles, tol)),
        vertex_figure_classes=count_vector_classes(vfig, tol),
        max_planarity_residual=planarity,
        max_corner_cosine=corner_cos,
    )
