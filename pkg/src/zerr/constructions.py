"""The two built-in superadditive constructions and a verifier for any construction.

``cabello18`` is the 18-vector, 9-basis Kochen-Specker set in R^4.
``xu_family(m)`` is the state-independent contextuality set in C^3 built from
powers of the primitive 3m-th root of unity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple

import numpy as np

from .channel import (
    ChannelHypergraph,
    ChannelSpec,
    confusability_graph,
    dump_channel,
    uniform_channel_from_hypergraph,
)
from .errors import StructureError
from .graphs import independence_number_bruteforce, independence_number_exact, maximal_cliques, BRUTEFORCE_LIMIT
from .quantum import (
    ORTHO_TOL,
    VectorSet,
    dump_vectorset,
    orthogonality_graph,
    verify_orthonormal_basis,
    overlap,
)

XU_VERIFY_MAX_M = 3


class Predicted(NamedTuple):
    vertices: int
    alpha: int
    dimension: int


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    vectors: VectorSet
    hypergraph: ChannelHypergraph
    predicted: Predicted | None = None
    channel: ChannelSpec | None = None

    def __post_init__(self):
        if self.channel is None:
            object.__setattr__(self, "channel", uniform_channel_from_hypergraph(self.hypergraph))
        elif self.channel.hypergraph != self.hypergraph:
            raise StructureError("channel and hypergraph disagree")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.hypergraph.inputs

    @classmethod
    def from_channel(cls, name: str, channel: ChannelSpec, vectors: VectorSet,
                     predicted: Predicted | None = None) -> NamedConstruction:
        return cls(name, vectors, channel.hypergraph, predicted, channel)


def cabello18() -> NamedConstruction:
    raw = json.loads(resources.files("zerr").joinpath("data/cabello18.json").read_text())
    vs = VectorSet(raw["dimension"], {k: np.array(v, dtype=float) for k, v in raw["vectors"].items()})
    h = ChannelHypergraph(vs.labels, tuple((y, frozenset(s)) for y, s in raw["bases"].items()))
    return NamedConstruction("cabello18", vs, h, Predicted(18, 4, 4))


def xu_vectors(m: int) -> VectorSet:
    if m < 1:
        raise StructureError("m must be a positive integer")
    k = 3 * m
    w = np.exp(2j * np.pi / k)
    vecs = {"e0": [1, 0, 0], "e1": [0, 1, 0], "e2": [0, 0, 1]}
    for i in range(1, k + 1):
        vecs[f"a{i}"] = [1, -w**i, 0]
        vecs[f"b{i}"] = [1, 0, -w**i]
        vecs[f"c{i}"] = [0, 1, -w**i]
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            vecs[f"d{i}_{j}"] = [1, w**i, w**j]
    return VectorSet(3, vecs)


def hypergraph_of_maximal_cliques(vs: VectorSet, tol: float = ORTHO_TOL) -> ChannelHypergraph:
    g = orthogonality_graph(vs, tol)
    cliques = sorted(maximal_cliques(g), key=lambda c: [vs.labels.index(v) for v in c])
    return ChannelHypergraph(vs.labels, tuple((f"h{n + 1}", frozenset(c)) for n, c in enumerate(cliques)))


def xu_family(m: int) -> NamedConstruction:
    vs = xu_vectors(m)
    h = hypergraph_of_maximal_cliques(vs)
    return NamedConstruction(f"xu{m}", vs, h, Predicted(3 + 9 * m + 9 * m * m, 3 * m * (m + 1), 3))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True

    def to_json(self) -> dict:
        out = {"check": self.name, "pass": self.passed, "detail": self.detail}
        if not self.required:
            out["required"] = False
        return out

    @classmethod
    def from_json(cls, data: dict) -> Check:
        return cls(data["check"], bool(data["pass"]), data.get("detail", ""), data.get("required", True))


@dataclass
class VerificationReport:
    name: str
    checks: list[Check]
    alpha: int | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def structural_ok(self) -> bool:
        """Labels line up and every hyperedge is an orthogonal family."""
        names = {"labels", "hyperedge_orthogonality"}
        return all(c.passed for c in self.checks if c.name in names) and len(
            [c for c in self.checks if c.name in names]) == 2

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]


def verify_construction(c: NamedConstruction, exact_alpha: bool | None = None,
                        cross_check: bool = True) -> VerificationReport:
    """Run every structural check on a construction; failures are data, not errors.

    ``exact_alpha`` defaults to on for up to 111 vertices (xu_family(3)).
    ``cross_check`` adds the subset-enumeration independence number when the
    graph is small enough for it.
    """
    checks = []
    vs, h = c.vectors, c.hypergraph
    same_labels = set(vs.labels) == set(h.inputs) and len(vs) == len(h.inputs)
    checks.append(Check("labels", same_labels,
                        "" if same_labels else f"{sorted(set(vs.labels) ^ set(h.inputs))[:5]}"))
    if not same_labels:
        return VerificationReport(c.name, checks)

    conf = confusability_graph(h)
    orth = orthogonality_graph(vs)
    missing = conf.edge_set() - orth.edge_set()
    extra = orth.edge_set() - conf.edge_set()
    detail = []
    if missing:
        detail.append(f"confusable but not orthogonal: {_pairs(missing)}")
    if extra:
        detail.append(f"orthogonal but not confusable: {_pairs(extra)}")
    # Extra orthogonalities outside the hyperedges do not affect decoding
    # (cabello18 has nine of them), so this one is informational.
    checks.append(Check("graph_equality", not missing and not extra, "; ".join(detail), required=False))

    worst = 0.0
    bad_edges = []
    for y, s in h.hyperedges:
        members = sorted(s, key=vs.labels.index)
        if len(members) > vs.dimension:
            bad_edges.append(f"{y}: {len(members)} vectors in C^{vs.dimension}")
            continue
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                r = overlap(vs[a], vs[b])
                worst = max(worst, r)
                if r >= ORTHO_TOL:
                    bad_edges.append(f"{y}: {a},{b} overlap {r:.3g}")
    checks.append(Check("hyperedge_orthogonality", not bad_edges,
                        "; ".join(bad_edges[:5]) or f"max overlap {worst:.2e}"))

    alpha = None
    if exact_alpha is None:
        exact_alpha = len(h.inputs) <= 3 + 9 * XU_VERIFY_MAX_M * (XU_VERIFY_MAX_M + 1)
    if exact_alpha:
        witness = independence_number_exact(conf, limit=max(len(conf), 1))
        alpha = witness.size
        if cross_check and len(conf) <= BRUTEFORCE_LIMIT:
            brute = independence_number_bruteforce(conf)
            checks.append(Check("alpha_bruteforce", brute == alpha,
                                f"branch-and-bound {alpha}, enumeration {brute}"))

    if c.predicted is not None:
        p = c.predicted
        checks.append(Check("predicted_vertices", p.vertices == len(h.inputs),
                            f"predicted {p.vertices}, found {len(h.inputs)}"))
        checks.append(Check("predicted_dimension", p.dimension == vs.dimension,
                            f"predicted {p.dimension}, found {vs.dimension}"))
        if alpha is not None:
            checks.append(Check("predicted_alpha", p.alpha == alpha,
                                f"predicted {p.alpha}, found {alpha}"))
    return VerificationReport(c.name, checks, alpha)


def _pairs(edges) -> str:
    shown = sorted(tuple(sorted(e)) for e in edges)
    text = ", ".join("-".join(e) for e in shown[:5])
    return text + (f" (+{len(shown) - 5} more)" if len(shown) > 5 else "")


def basis_reports(c: NamedConstruction) -> dict:
    return {y: verify_orthonormal_basis(c.vectors, s) for y, s in c.hypergraph.hyperedges}


def incidence_degrees(h: ChannelHypergraph) -> dict[str, int]:
    return {x: len(h.incident(x)) for x in h.inputs}


def export(c: NamedConstruction, channel_path, vectors_path) -> None:
    dump_channel(c.channel, channel_path)
    dump_vectorset(c.vectors, vectors_path)


def builtin(name: str, m: int = 1) -> NamedConstruction:
    if name == "cabello18":
        return cabello18()
    if name in ("xu", "xu_family"):
        return xu_family(m)
    raise StructureError(f"unknown construction {name!r}")
