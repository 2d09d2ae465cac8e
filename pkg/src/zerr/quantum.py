"""Finite-dimensional states, orthogonality graphs and projective measurements."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import FormatError, StructureError
from .graphs import Graph

ORTHO_TOL = 1e-9
PROJ_TOL = 1e-9
BORN_TOL = 1e-9
RESIDUAL = "⊥"


def inner_product(u, v) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise StructureError(f"length mismatch: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise StructureError("cannot normalize the zero vector")
    return v / norm


def overlap(u, v) -> float:
    """|<u|v>| / (|u| |v|)."""
    return abs(inner_product(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))


@dataclass(frozen=True)
class VectorSet:
    dimension: int
    vectors: Mapping[str, np.ndarray]
    labels: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        if self.dimension < 2:
            raise StructureError("dimension must be at least 2")
        vecs = {}
        for label, v in self.vectors.items():
            arr = np.array(v, dtype=complex)
            arr.setflags(write=False)
            if arr.shape != (self.dimension,):
                raise StructureError(f"vector {label!r} has shape {arr.shape}, expected ({self.dimension},)")
            if not np.all(np.isfinite(arr)) or np.linalg.norm(arr) == 0:
                raise StructureError(f"vector {label!r} is zero or not finite")
            vecs[str(label)] = arr
        labels = tuple(vecs)
        units = np.array([normalize(vecs[k]) for k in labels]) if labels else np.zeros((0, self.dimension))
        gram = np.abs(units.conj() @ units.T)
        np.fill_diagonal(gram, 0.0)
        dup = np.argwhere(gram > 1 - ORTHO_TOL)
        if len(dup):
            i, j = dup[0]
            raise StructureError(f"vectors {labels[i]!r} and {labels[j]!r} agree up to a phase")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, label: str) -> np.ndarray:
        try:
            return self.vectors[label]
        except KeyError:
            raise StructureError(f"unknown vector {label!r}") from None

    def unit(self, label: str) -> np.ndarray:
        return normalize(self[label])

    def replace(self, label: str, v) -> VectorSet:
        vecs = dict(self.vectors)
        vecs[label] = v
        return VectorSet(self.dimension, vecs)


@dataclass(frozen=True)
class Measurement:
    """Projective measurement: labelled projectors that are orthogonal and sum to I."""

    dimension: int
    projectors: tuple[tuple[str, np.ndarray], ...]

    def __post_init__(self):
        d = self.dimension
        eye = np.eye(d)
        total = np.zeros((d, d), dtype=complex)
        mats = [(str(k), np.asarray(p, dtype=complex)) for k, p in self.projectors]
        for k, p in mats:
            if p.shape != (d, d):
                raise StructureError(f"projector {k!r} has shape {p.shape}")
            if np.max(np.abs(p @ p - p)) > PROJ_TOL or np.max(np.abs(p - p.conj().T)) > PROJ_TOL:
                raise StructureError(f"{k!r} is not an orthogonal projector")
            total += p
        for (a, p), (b, q) in combinations(mats, 2):
            if np.max(np.abs(p @ q)) > PROJ_TOL:
                raise StructureError(f"projectors {a!r} and {b!r} are not orthogonal")
        if np.max(np.abs(total - eye)) > PROJ_TOL:
            raise StructureError("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", tuple(mats))

    @property
    def outcomes(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.projectors)

    def residuals(self) -> dict[str, float]:
        """Worst-case entrywise deviations from the projector identities."""
        d = self.dimension
        mats = [p for _, p in self.projectors]
        pairs = [np.max(np.abs(p @ q)) for p, q in combinations(mats, 2)]
        return {
            "idempotent": max(float(np.max(np.abs(p @ p - p))) for p in mats),
            "hermitian": max(float(np.max(np.abs(p - p.conj().T))) for p in mats),
            "orthogonal": float(max(pairs, default=0.0)),
            "completeness": float(np.max(np.abs(sum(mats) - np.eye(d)))),
        }


def orthogonality_graph(vs: VectorSet, tol: float = ORTHO_TOL) -> Graph:
    if tol <= 0:
        raise StructureError("tolerance must be positive")
    units = np.array([vs.unit(k) for k in vs.labels])
    gram = np.abs(units.conj() @ units.T)
    n = len(vs)
    adj = []
    for i in range(n):
        row = 0
        for j in np.flatnonzero(gram[i] < tol):
            if j != i:
                row |= 1 << int(j)
        adj.append(row)
    return Graph(vs.labels, tuple(adj))


def rank_one(v) -> np.ndarray:
    u = normalize(v)
    return np.outer(u, u.conj())


def _check_pairwise_orthogonal(vs: VectorSet, edge: list[str], tol: float) -> list[tuple[str, str, float]]:
    bad = []
    for a, b in combinations(edge, 2):
        r = overlap(vs[a], vs[b])
        if r >= tol:
            bad.append((a, b, r))
    return bad


def measurement_from_hyperedge(vs: VectorSet, edge: Iterable[str], tol: float = ORTHO_TOL) -> Measurement:
    """Rank-one projectors onto the edge's vectors, plus one residual when the edge is short."""
    members = list(edge)
    for e in members:
        vs[e]
    members.sort(key=vs.labels.index)
    if len(members) > vs.dimension:
        raise StructureError(f"hyperedge of size {len(members)} exceeds dimension {vs.dimension}")
    bad = _check_pairwise_orthogonal(vs, members, tol)
    if bad:
        a, b, r = bad[0]
        raise StructureError(f"{a!r} and {b!r} are not orthogonal (overlap {r:.3g})")
    projectors = [(e, rank_one(vs[e])) for e in members]
    if len(members) < vs.dimension:
        rest = np.eye(vs.dimension, dtype=complex) - sum(p for _, p in projectors)
        projectors.append((RESIDUAL, rest))
    return Measurement(vs.dimension, tuple(projectors))


def born_probabilities(m: Measurement, state) -> dict[str, float]:
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (m.dimension,):
        raise StructureError(f"state has shape {psi.shape}, measurement acts on C^{m.dimension}")
    if abs(np.linalg.norm(psi) - 1.0) > BORN_TOL:
        raise StructureError("state is not normalized")
    return {k: float(np.real(np.vdot(psi, p @ psi))) for k, p in m.projectors}


@dataclass
class BasisReport:
    ok: bool
    size: int
    dimension: int
    max_overlap: float
    violations: list[str]


def verify_orthonormal_basis(vs: VectorSet, edge: Iterable[str], tol: float = ORTHO_TOL) -> BasisReport:
    """Do the (normalized) edge vectors form an orthonormal basis of C^d?"""
    members = list(edge)
    for e in members:
        vs[e]
    violations = []
    if len(members) != vs.dimension:
        violations.append(f"edge has {len(members)} vectors, dimension is {vs.dimension}")
    worst = 0.0
    for a, b in combinations(members, 2):
        r = overlap(vs[a], vs[b])
        worst = max(worst, r)
        if r >= tol:
            violations.append(f"{a} and {b} overlap {r:.3g}")
    return BasisReport(not violations, len(members), vs.dimension, worst, violations)


def random_orthonormal_basis(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary; columns form an orthonormal basis."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def vectorset_to_json(vs: VectorSet) -> dict:
    return {
        "dimension": vs.dimension,
        "vectors": {k: [[float(z.real), float(z.imag)] for z in vs[k]] for k in vs.labels},
    }


def vectorset_from_json(data: dict) -> VectorSet:
    try:
        d = int(data["dimension"])
        vecs = {}
        for k, comps in data["vectors"].items():
            vecs[k] = [complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c) for c in comps]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"bad vector-set JSON: {exc}") from None
    try:
        return VectorSet(d, vecs)
    except StructureError as exc:
        raise FormatError(str(exc)) from None


def load_vectorset(path) -> VectorSet:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return vectorset_from_json(data)


def dump_vectorset(vs: VectorSet, path) -> None:
    Path(path).write_text(json.dumps(vectorset_to_json(vs), indent=1) + "\n")
