"""Discrete memoryless channels described by their output hypergraph."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError, StructureError
from .graphs import Graph, IndependentSetWitness, independence_number_exact, pair_label

PROB_TOL = 1e-12


@dataclass(frozen=True)
class ChannelHypergraph:
    """Inputs plus one hyperedge per output, holding the inputs that can produce it."""

    inputs: tuple[str, ...]
    hyperedges: tuple[tuple[str, frozenset[str]], ...]

    def __post_init__(self):
        inputs = tuple(str(x) for x in self.inputs)
        edges = tuple((str(y), frozenset(map(str, s))) for y, s in self.hyperedges)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "hyperedges", edges)
        if len(set(inputs)) != len(inputs):
            raise StructureError("input labels must be unique")
        outputs = [y for y, _ in edges]
        if len(set(outputs)) != len(outputs):
            raise StructureError("output labels must be unique")
        known = set(inputs)
        covered = set()
        for y, support in edges:
            if not support:
                raise StructureError(f"output {y!r} has an empty support")
            stray = support - known
            if stray:
                raise StructureError(f"output {y!r} mentions unknown inputs {sorted(stray)}")
            covered |= support
        missing = [x for x in inputs if x not in covered]
        if missing:
            raise StructureError(f"inputs {missing} appear in no hyperedge")

    @property
    def outputs(self) -> tuple[str, ...]:
        return tuple(y for y, _ in self.hyperedges)

    def edge(self, y: str) -> frozenset[str]:
        for label, support in self.hyperedges:
            if label == y:
                return support
        raise StructureError(f"unknown output {y!r}")

    def incident(self, x: str) -> list[str]:
        return [y for y, s in self.hyperedges if x in s]


@dataclass(frozen=True)
class ChannelSpec:
    hypergraph: ChannelHypergraph
    probs: Mapping[tuple[str, str], float]

    def __post_init__(self):
        h = self.hypergraph
        probs = {(str(x), str(y)): float(p) for (x, y), p in self.probs.items()}
        incidences = {(x, y) for y, s in h.hyperedges for x in s}
        if set(probs) != incidences:
            extra = sorted(set(probs) - incidences)
            lacking = sorted(incidences - set(probs))
            raise StructureError(
                f"probabilities must be given exactly on incidences "
                f"(extra={extra[:3]}, missing={lacking[:3]})"
            )
        for key, p in probs.items():
            if not (0.0 < p <= 1.0) or math.isnan(p):
                raise StructureError(f"P{key} = {p} is not in (0, 1]")
        for x in h.inputs:
            total = sum(probs[x, y] for y in h.incident(x))
            if abs(total - 1.0) > PROB_TOL:
                raise StructureError(f"row for input {x!r} sums to {total!r}")
        object.__setattr__(self, "probs", probs)

    @property
    def inputs(self) -> tuple[str, ...]:
        return self.hypergraph.inputs

    @property
    def outputs(self) -> tuple[str, ...]:
        return self.hypergraph.outputs

    def row(self, x: str) -> list[tuple[str, float]]:
        """Outputs reachable from ``x`` with their probabilities, in output order."""
        support(self, x)
        return [(y, self.probs[x, y]) for y in self.outputs if (x, y) in self.probs]


def support(c: ChannelSpec, x: str) -> frozenset[str]:
    if x not in c.inputs:
        raise StructureError(f"unknown input {x!r}")
    return frozenset(y for (xx, y), p in c.probs.items() if xx == x and p > 0)


def confusability_graph(h: ChannelHypergraph | ChannelSpec) -> Graph:
    if isinstance(h, ChannelSpec):
        h = h.hypergraph
    index = {x: i for i, x in enumerate(h.inputs)}
    adj = [0] * len(h.inputs)
    for _, s in h.hyperedges:
        mask = sum(1 << index[x] for x in s)
        for x in s:
            adj[index[x]] |= mask
    adj = [a & ~(1 << i) for i, a in enumerate(adj)]
    return Graph(h.inputs, tuple(adj))


def uniform_channel_from_hypergraph(h: ChannelHypergraph) -> ChannelSpec:
    probs = {}
    for x in h.inputs:
        ys = h.incident(x)
        for y in ys:
            probs[x, y] = 1.0 / len(ys)
    return ChannelSpec(h, probs)


def hypergraph_from_graph(g: Graph) -> ChannelHypergraph:
    """Channel whose outputs are the edges of g (plus a private output per isolated vertex)."""
    edges = [(f"{u}~{v}", frozenset((u, v))) for u, v in g.edges()]
    edges += [(f"{x}~", frozenset((x,))) for x in g.vertices if g.degree(x) == 0]
    return ChannelHypergraph(g.vertices, tuple(edges))


def perfect_classical(d: int) -> ChannelSpec:
    if d < 1:
        raise StructureError("a perfect channel needs at least one symbol")
    labels = tuple(str(i) for i in range(d))
    h = ChannelHypergraph(labels, tuple((x, frozenset((x,))) for x in labels))
    return ChannelSpec(h, {(x, x): 1.0 for x in labels})


def parallel_compose(a: ChannelSpec, b: ChannelSpec) -> ChannelSpec:
    """Both channels used once side by side; labels are ``left|right``."""
    inputs = tuple(pair_label(x, xx) for x in a.inputs for xx in b.inputs)
    edges = []
    probs = {}
    for y, s in a.hypergraph.hyperedges:
        for yy, ss in b.hypergraph.hyperedges:
            out = pair_label(y, yy)
            members = frozenset(pair_label(x, xx) for x in s for xx in ss)
            edges.append((out, members))
            for x in s:
                for xx in ss:
                    probs[pair_label(x, xx), out] = a.probs[x, y] * b.probs[xx, yy]
    return ChannelSpec(ChannelHypergraph(inputs, tuple(edges)), probs)


def zero_error_code(c: ChannelSpec, limit: int | None = None) -> IndependentSetWitness:
    """Largest set of inputs with pairwise disjoint supports."""
    witness = independence_number_exact(confusability_graph(c), limit)
    supports = {x: support(c, x) for x in witness.members}
    members = list(witness.members)
    for i, x in enumerate(members):
        for xx in members[i + 1:]:
            if supports[x] & supports[xx]:
                raise StructureError(f"code members {x!r} and {xx!r} share an output")
    return witness


def channel_to_json(c: ChannelSpec) -> dict:
    return {
        "inputs": list(c.inputs),
        "outputs": [
            {
                "label": y,
                "support": sorted(s, key=c.inputs.index),
                "probs": {x: c.probs[x, y] for x in sorted(s, key=c.inputs.index)},
            }
            for y, s in c.hypergraph.hyperedges
        ],
    }


def channel_from_json(data: dict) -> ChannelSpec:
    try:
        inputs = [str(x) for x in data["inputs"]]
        outputs = data["outputs"]
        edges = [(str(o["label"]), frozenset(map(str, o["support"]))) for o in outputs]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"channel JSON is missing a field: {exc}") from None
    for o, (_, s) in zip(outputs, edges):
        if len(s) != len(o["support"]):
            raise FormatError(f"output {o['label']!r} lists an input twice")
    try:
        h = ChannelHypergraph(tuple(inputs), tuple(edges))
        if not any("probs" in o for o in outputs):
            return uniform_channel_from_hypergraph(h)
        probs = {}
        for o in outputs:
            if "probs" not in o:
                raise FormatError(f"output {o['label']!r} has no probs while others do")
            for x, p in o["probs"].items():
                probs[str(x), str(o["label"])] = p
        return ChannelSpec(h, probs)
    except StructureError as exc:
        raise FormatError(str(exc)) from None


def load_channel(path) -> ChannelSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
    return channel_from_json(data)


def dump_channel(c: ChannelSpec, path) -> None:
    Path(path).write_text(json.dumps(channel_to_json(c), indent=1) + "\n")


def hypergraph_from_supports(inputs: Iterable[str], edges: Iterable[tuple[str, Iterable[str]]]) -> ChannelHypergraph:
    return ChannelHypergraph(tuple(inputs), tuple((y, frozenset(s)) for y, s in edges))
