"""Joint use of a noisy classical channel and a perfect quantum channel.

The sender pushes the vertex label of a message through the classical channel
and the matching (normalized) vector through the quantum channel, unchanged.
The receiver sees an output hyperedge, measures in the basis that hyperedge
defines, and reads the vertex off the outcome.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .channel import ChannelSpec, confusability_graph
from .constructions import NamedConstruction
from .errors import StructureError
from .graphs import connected_components, edgeless, independence_number, strong_product
from .quantum import BORN_TOL, Measurement, born_probabilities, measurement_from_hyperedge, normalize


@dataclass(frozen=True)
class Codebook:
    messages: tuple[str, ...]
    encoding: Mapping[str, str]

    def __post_init__(self):
        enc = dict(self.encoding)
        if set(enc) != set(self.messages) or len(self.messages) != len(set(self.messages)):
            raise StructureError("codebook must map every message exactly once")
        if len(set(enc.values())) != len(enc):
            raise StructureError("two messages share a vertex")
        object.__setattr__(self, "encoding", enc)
        object.__setattr__(self, "_decoding", {v: m for m, v in enc.items()})

    def vertex(self, message: str) -> str:
        try:
            return self.encoding[message]
        except KeyError:
            raise StructureError(f"unknown message {message!r}") from None

    def message(self, vertex: str) -> str | None:
        return self._decoding.get(vertex)


@dataclass(frozen=True)
class TranscriptEntry:
    message: str
    vertex: str
    output: str
    outcome: str
    probability: float

    def __post_init__(self):
        if not (0.0 <= self.probability <= 1.0 + BORN_TOL):
            raise StructureError(f"decode probability {self.probability} outside [0, 1]")

    @property
    def correct(self) -> bool:
        return self.outcome == self.vertex

    def to_json(self) -> dict:
        return asdict(self)


def full_codebook(c: NamedConstruction) -> Codebook:
    messages = tuple(f"m{k + 1}" for k in range(len(c.labels)))
    return Codebook(messages, dict(zip(messages, c.labels)))


def encode(message: str, cb: Codebook, c: NamedConstruction) -> tuple[str, np.ndarray]:
    v = cb.vertex(message)
    return v, normalize(c.vectors[v])


class Decoder:
    """Receiver for one construction; measurements are built once per output."""

    def __init__(self, c: NamedConstruction):
        self.construction = c
        self._cache: dict[str, Measurement] = {}

    def measurement(self, output: str) -> Measurement:
        if output not in self._cache:
            edge = self.construction.hypergraph.edge(output)
            self._cache[output] = measurement_from_hyperedge(self.construction.vectors, edge)
        return self._cache[output]

    def __call__(self, output: str, state) -> tuple[str, dict[str, float]]:
        m = self.measurement(output)
        state = np.asarray(state, dtype=complex)
        if state.shape != (m.dimension,):
            raise StructureError(f"state has dimension {state.shape[0]}, expected {m.dimension}")
        dist = born_probabilities(m, state)
        # max over (probability, reversed label order) = argmax, ties to smallest label
        best = min(dist, key=lambda k: (-dist[k], k))
        return best, dist


def decode(output: str, state, c: NamedConstruction) -> tuple[str, dict[str, float]]:
    return Decoder(c)(output, state)


@dataclass
class ExhaustiveReport:
    name: str
    entries: list[TranscriptEntry]
    failures: list[dict] = field(default_factory=list)
    achieved: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def pairs(self) -> int:
        return len(self.entries) + sum(1 for f in self.failures if f.get("outcome") is None)

    def min_correct_probability(self) -> float:
        return min((e.probability for e in self.entries if e.correct), default=0.0)


def verify_zero_error_exhaustive(c: NamedConstruction, cb: Codebook | None = None) -> ExhaustiveReport:
    """Decode every (message, reachable output) pair and demand certainty.

    A pair passes when the transmitted vertex gets Born probability at least
    1 - 1e-9 and every other outcome at most 1e-9. ``achieved`` is set to the
    number of messages only if every pair passes.
    """
    cb = cb or full_codebook(c)
    decoder = Decoder(c)
    report = ExhaustiveReport(c.name, [])
    for message in cb.messages:
        vertex, state = encode(message, cb, c)
        for output, p in c.channel.row(vertex):
            if p <= 0:
                continue
            try:
                outcome, dist = decoder(output, state)
            except StructureError as exc:
                report.failures.append(
                    {"message": message, "output": output, "outcome": None, "detail": str(exc)})
                continue
            entry = TranscriptEntry(message, vertex, output, outcome, min(dist[outcome], 1.0))
            report.entries.append(entry)
            hit = dist.get(vertex, 0.0)
            leak = max((q for k, q in dist.items() if k != vertex), default=0.0)
            if hit < 1 - BORN_TOL or leak > BORN_TOL:
                report.failures.append({
                    "message": message, "output": output, "outcome": outcome,
                    "detail": f"P({vertex})={hit:.12f}, largest other {leak:.3g}",
                })
    report.failures.sort(key=lambda f: (cb.messages.index(f["message"]), f["output"]))
    if report.ok:
        report.achieved = len(cb.messages)
    return report


@dataclass
class SimulationResult:
    trials: int
    successes: int
    transcript: list[TranscriptEntry]

    @property
    def success_fraction(self) -> float:
        return self.successes / self.trials


def simulate_monte_carlo(c: NamedConstruction, cb: Codebook | None, trials: int, seed: int) -> SimulationResult:
    """Random messages, channel outputs drawn from P(y|x); deterministic for a seed.

    Uses a counter-based Philox stream so a given seed always yields the same
    transcript.
    """
    if trials < 1:
        raise StructureError("trials must be at least 1")
    cb = cb or full_codebook(c)
    rng = np.random.Generator(np.random.Philox(seed))
    decoder = Decoder(c)
    picks = rng.integers(len(cb.messages), size=trials)
    draws = rng.random(trials)
    transcript = []
    successes = 0
    for k, u in zip(picks, draws):
        message = cb.messages[int(k)]
        vertex, state = encode(message, cb, c)
        row = c.channel.row(vertex)
        cum = np.cumsum([p for _, p in row])
        output = row[min(int(np.searchsorted(cum, u * cum[-1], side="right")), len(row) - 1)][0]
        try:
            outcome, dist = decoder(output, state)
            entry = TranscriptEntry(message, vertex, output, outcome, min(dist[outcome], 1.0))
        except StructureError:
            # the receiver has no valid measurement for this output
            entry = TranscriptEntry(message, vertex, output, "", 0.0)
        transcript.append(entry)
        if entry.correct and entry.probability >= 1 - BORN_TOL:
            successes += 1
    return SimulationResult(trials, successes, transcript)


def classical_baseline(c: NamedConstruction | ChannelSpec, d: int, limit: int | None = None) -> int:
    """Zero-error capacity of the noisy channel next to a perfect d-level classical channel.

    Computed on the strong product with the edgeless graph, one component at a
    time, and checked against d times the noisy channel's independence number.
    """
    if d < 1:
        raise StructureError("d must be at least 1")
    g = confusability_graph(c.hypergraph)
    product = strong_product(g, edgeless(d))
    total = sum(independence_number(part, limit) for part in connected_components(product))
    alpha = independence_number(g, limit)
    if total != d * alpha:
        raise StructureError(f"alpha of the product is {total}, expected {d} x {alpha}")
    return total


def transcript_lines(entries: Iterable[TranscriptEntry], summary: dict | None = None) -> list[str]:
    lines = [json.dumps(e.to_json(), sort_keys=True) for e in entries]
    if summary is not None:
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
    return lines
