"""Superadditivity certificates.

A certificate records the noisy channel's independence and clique numbers,
the assisting quantum dimension, and exactly one verdict:

SUPERADDITIVE
    the joint protocol was verified exhaustively and carries more messages
    than dim * alpha.
NO_GO_DIMENSION
    the assisting channel is smaller than the supplied vector representation,
    so the states cannot be sent intact. Relative to that representation, not
    to the minimum orthogonal-representation dimension.
NO_GO_PERFECT_GRAPH
    the confusability graph is perfect, hence alpha * omega >= n and no
    vertex-indexed protocol beats dim * alpha.
INCONCLUSIVE
    none of the above could be established.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .channel import ChannelSpec, confusability_graph
from .constructions import Check, NamedConstruction, verify_construction
from .errors import FormatError, StructureError
from .graphs import clique_number, independence_number_exact, is_perfect
from .protocol import full_codebook, verify_zero_error_exhaustive
from .quantum import VectorSet

SCHEMA = 1
SUPERADDITIVE = "SUPERADDITIVE"
NO_GO_PERFECT_GRAPH = "NO_GO_PERFECT_GRAPH"
NO_GO_DIMENSION = "NO_GO_DIMENSION"
INCONCLUSIVE = "INCONCLUSIVE"
VERDICTS = (SUPERADDITIVE, NO_GO_PERFECT_GRAPH, NO_GO_DIMENSION, INCONCLUSIVE)


@dataclass
class Certificate:
    name: str
    n: int
    alpha: int
    clique: int
    dim: int
    verdict: str
    achieved: int | None = None
    representation_dim: int | None = None
    evidence: list[Check] = field(default_factory=list)
    schema: int = SCHEMA

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise StructureError(f"unknown verdict {self.verdict!r}")
        if self.verdict == SUPERADDITIVE:
            if self.achieved is None or self.achieved <= self.baseline:
                raise StructureError("SUPERADDITIVE needs achieved > baseline")
            if not all(c.passed for c in self.evidence if c.required):
                raise StructureError("SUPERADDITIVE needs every required check to pass")
        if self.verdict == NO_GO_PERFECT_GRAPH:
            if not any(c.name == "perfect_graph" and c.passed for c in self.evidence):
                raise StructureError("NO_GO_PERFECT_GRAPH needs a perfect confusability graph")
        if self.verdict == NO_GO_DIMENSION:
            if self.representation_dim is None or self.dim >= self.representation_dim:
                raise StructureError("NO_GO_DIMENSION needs dim < representation dimension")
        if self.verdict.startswith("NO_GO") and self.achieved is not None and self.achieved > self.baseline:
            raise StructureError("a no-go verdict cannot carry achieved > baseline")

    @property
    def baseline(self) -> int:
        return self.dim * self.alpha

    @property
    def gap(self) -> int | None:
        return None if self.achieved is None else self.achieved - self.baseline

    @property
    def sufficiency(self) -> bool:
        """n > alpha * dim: the vertex count beats the classical product."""
        return self.n > self.alpha * self.dim

    def to_json(self) -> dict:
        out = {
            "schema": self.schema,
            "name": self.name,
            "n": self.n,
            "alpha": self.alpha,
            "clique": self.clique,
            "dim": self.dim,
            "baseline": self.baseline,
        }
        if self.achieved is not None:
            out["achieved"] = self.achieved
        if self.representation_dim is not None:
            out["representation_dim"] = self.representation_dim
        out["verdict"] = self.verdict
        out["evidence"] = [c.to_json() for c in self.evidence]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        try:
            if data["schema"] != SCHEMA:
                raise FormatError(f"unsupported certificate schema {data['schema']!r}")
            cert = cls(
                name=data["name"],
                n=int(data["n"]),
                alpha=int(data["alpha"]),
                clique=int(data["clique"]),
                dim=int(data["dim"]),
                verdict=data["verdict"],
                achieved=data.get("achieved"),
                representation_dim=data.get("representation_dim"),
                evidence=[Check.from_json(e) for e in data.get("evidence", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed certificate: {exc}") from None
        if data.get("baseline") != cert.baseline:
            raise FormatError(f"baseline {data.get('baseline')} != dim x alpha = {cert.baseline}")
        return cert

    @classmethod
    def loads(cls, text: str) -> Certificate:
        return cls.from_json(json.loads(text))


def certify(channel: ChannelSpec | NamedConstruction, vectors: VectorSet | None = None,
            assist_dim: int = 2, name: str | None = None) -> Certificate:
    if assist_dim < 1:
        raise StructureError("assisting dimension must be at least 1")
    if isinstance(channel, NamedConstruction):
        name = name or channel.name
        vectors = vectors if vectors is not None else channel.vectors
        channel = channel.channel
    name = name or "channel"

    g = confusability_graph(channel)
    n = len(g)
    witness = independence_number_exact(g)
    alpha = witness.size
    omega = clique_number(g)
    baseline = alpha * assist_dim
    evidence = [
        Check("n", True, str(n), required=False),
        Check("alpha", witness.check(g), f"{alpha}: {' '.join(witness.members)}"),
        Check("clique", True, str(omega), required=False),
        Check("sufficiency", n > baseline, f"n={n} {'>' if n > baseline else '<='} "
              f"alpha*dim={alpha}*{assist_dim}={baseline}", required=False),
    ]

    def cert(verdict, achieved=None):
        return Certificate(name, n, alpha, omega, assist_dim, verdict, achieved,
                           vectors.dimension if vectors is not None else None, evidence)

    if vectors is not None and assist_dim < vectors.dimension:
        evidence.append(Check(
            "dimension", False,
            f"assisting dimension {assist_dim} < representation dimension {vectors.dimension}; "
            f"relative to the supplied representation", required=False))
        return cert(NO_GO_DIMENSION)

    verdict = is_perfect(g)
    if verdict.is_perfect:
        evidence.append(Check("perfect_graph", True, "no odd hole or antihole", required=False))
        evidence.append(Check("perfect_inequality", alpha * omega >= n,
                              f"alpha*omega={alpha}*{omega}={alpha * omega} >= n={n}"))
        return cert(NO_GO_PERFECT_GRAPH)
    evidence.append(Check("perfect_graph", False,
                          f"odd {verdict.kind}: {' '.join(verdict.witness)}", required=False))

    if vectors is None:
        evidence.append(Check("protocol", False, "no vector representation supplied", required=False))
        return cert(INCONCLUSIVE)

    construction = NamedConstruction.from_channel(name, channel, vectors)
    report = verify_construction(construction, exact_alpha=False)
    for c in report.checks:
        evidence.append(Check(f"construction.{c.name}", c.passed, c.detail, c.required))
    if not report.structural_ok:
        return cert(INCONCLUSIVE)
    run = verify_zero_error_exhaustive(construction, full_codebook(construction))
    detail = (f"achieved (this protocol) {run.achieved} over {len(run.entries)} pairs"
              if run.ok else f"{len(run.failures)} failing pairs, first {run.failures[0]}")
    evidence.append(Check("protocol", run.ok, detail))
    if run.ok and run.achieved > baseline:
        return cert(SUPERADDITIVE, run.achieved)
    return cert(INCONCLUSIVE, run.achieved)


def write_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(cert.dumps() + "\n")


def read_certificate(path) -> Certificate:
    return Certificate.loads(Path(path).read_text())
