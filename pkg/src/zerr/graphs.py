"""Exact algorithms on small labeled graphs.

Graphs are immutable and store adjacency as one integer bitmask per vertex,
which keeps the branch-and-bound and hole searches cheap in pure Python.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FormatError, SolverLimitError, StructureError

DEFAULT_EXACT_LIMIT = 128
DEFAULT_PERFECT_LIMIT = 64
BRUTEFORCE_LIMIT = 24

SEP = "|"


def solver_limit(default: int) -> int:
    """Vertex cap for an exact routine; ZERR_SOLVER_LIMIT overrides every default."""
    raw = os.environ.get("ZERR_SOLVER_LIMIT")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise StructureError(f"ZERR_SOLVER_LIMIT must be an integer, got {raw!r}")
    if value < 1:
        raise StructureError("ZERR_SOLVER_LIMIT must be positive")
    return value


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def escape_label(label: str) -> str:
    return label.replace("\\", "\\\\").replace(SEP, "\\" + SEP)


def pair_label(left: str, right: str) -> str:
    """Label of a product element, with the separator escaped inside each side."""
    return f"{escape_label(left)}{SEP}{escape_label(right)}"


def split_pair_label(label: str) -> tuple[str, str]:
    out, parts, i = [], [], 0
    while i < len(label):
        ch = label[i]
        if ch == "\\" and i + 1 < len(label):
            out.append(label[i + 1])
            i += 2
            continue
        if ch == SEP:
            parts.append("".join(out))
            out = []
        else:
            out.append(ch)
        i += 1
    parts.append("".join(out))
    if len(parts) != 2:
        raise StructureError(f"{label!r} is not a product label")
    return parts[0], parts[1]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph over ordered, unique string labels.

    ``adj[i]`` is a bitmask whose bit ``j`` is set iff vertices ``i`` and
    ``j`` are adjacent.
    """

    vertices: tuple[str, ...]
    adj: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "adj", tuple(int(a) for a in self.adj))
        n = len(self.vertices)
        if len(self.adj) != n:
            raise StructureError("adjacency length does not match vertex count")
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != n:
            raise StructureError("vertex labels must be unique")
        full = (1 << n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise StructureError(f"adjacency of {self.vertices[i]!r} points outside the graph")
            if row >> i & 1:
                raise StructureError(f"self-loop at {self.vertices[i]!r}")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise StructureError("adjacency is not symmetric")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> Graph:
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise StructureError("vertex labels must be unique")
        adj = [0] * len(vertices)
        for edge in edges:
            u, v = edge
            if u not in index or v not in index:
                raise StructureError(f"edge {u!r}-{v!r} has an unknown endpoint")
            if u == v:
                raise StructureError(f"self-loop at {u!r}")
            i, j = index[u], index[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(vertices, tuple(adj))

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructureError(f"unknown vertex {label!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self.adj[self.index(u)] >> self.index(v) & 1)

    def degree(self, label: str) -> int:
        return self.adj[self.index(label)].bit_count()

    def edges(self) -> list[tuple[str, str]]:
        return [
            (self.vertices[i], self.vertices[j])
            for i in range(len(self))
            for j in _bits(self.adj[i])
            if i < j
        ]

    def edge_set(self) -> frozenset[frozenset[str]]:
        """Edges as unordered label pairs, for comparisons that ignore vertex order."""
        return frozenset(frozenset(e) for e in self.edges())

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def induced(self, labels: Iterable[str]) -> Graph:
        keep = sorted({self.index(v) for v in labels})
        pos = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            row = 0
            for j in _bits(self.adj[old]):
                if j in pos:
                    row |= 1 << pos[j]
            adj.append(row)
        return Graph(tuple(self.vertices[i] for i in keep), tuple(adj))

    def relabel(self, mapping) -> Graph:
        """Rename vertices through a dict or callable; order is preserved."""
        fn = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        return Graph(tuple(fn(v) for v in self.vertices), self.adj)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges()]}


@dataclass(frozen=True)
class IndependentSetWitness:
    size: int
    members: tuple[str, ...]

    def __post_init__(self):
        if self.size != len(self.members):
            raise StructureError("witness size does not match its member count")

    def check(self, g: Graph) -> bool:
        idx = [g.index(v) for v in self.members]
        mask = sum(1 << i for i in idx)
        return all(not (g.adj[i] & mask) for i in idx)


@dataclass(frozen=True)
class PerfectnessVerdict:
    is_perfect: bool
    witness: tuple[str, ...] | None = None
    kind: str | None = None  # "hole" or "antihole"


def edgeless(d: int) -> Graph:
    if d < 1:
        raise StructureError("edgeless graph needs at least one vertex")
    return Graph(tuple(str(i) for i in range(d)), (0,) * d)


def complete(d: int) -> Graph:
    if d < 1:
        raise StructureError("complete graph needs at least one vertex")
    full = (1 << d) - 1
    return Graph(tuple(str(i) for i in range(d)), tuple(full & ~(1 << i) for i in range(d)))


def cycle(n: int) -> Graph:
    labels = [str(i) for i in range(n)]
    return Graph.from_edges(labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)])


def complement(g: Graph) -> Graph:
    full = (1 << len(g)) - 1
    return Graph(g.vertices, tuple(full & ~a & ~(1 << i) for i, a in enumerate(g.adj)))


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product with vertices ``u|i`` in row-major order of (g, h).

    (u,i) ~ (v,j) iff u = v and i ~ j, or u ~ v and i = j, or u ~ v and i ~ j.
    """
    m = len(h)
    labels = tuple(pair_label(u, i) for u in g.vertices for i in h.vertices)
    adj = []
    for a in range(len(g)):
        closed_g = g.adj[a] | (1 << a)
        for b in range(m):
            closed_h = h.adj[b] | (1 << b)
            row = 0
            for c in _bits(closed_g):
                row |= closed_h << (c * m)
            row &= ~(1 << (a * m + b))
            adj.append(row)
    return Graph(labels, tuple(adj))


def connected_components(g: Graph) -> list[Graph]:
    """Maximal connected induced subgraphs, ordered by their first vertex."""
    seen = 0
    parts = []
    for start in range(len(g)):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        parts.append(g.induced(g.vertices[i] for i in _bits(comp)))
    return parts


# -- maximum independent set ------------------------------------------------


def _color_sort(cand: int, nbr: Sequence[int]) -> tuple[list[int], list[int]]:
    # Greedy coloring of ``cand`` in the clique graph ``nbr``; each color class
    # is an independent set there, so #classes bounds the clique size.
    order, bounds = [], []
    uncolored, k = cand, 0
    while uncolored:
        k += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~nbr[v] & ~low
            uncolored &= ~low
            order.append(v)
            bounds.append(k)
    return order, bounds


def _max_clique(nbr: Sequence[int], cand: int) -> list[int]:
    best: list[int] = []
    current: list[int] = []

    def expand(p: int) -> None:
        nonlocal best
        order, bounds = _color_sort(p, nbr)
        for pos in range(len(order) - 1, -1, -1):
            if len(current) + bounds[pos] <= len(best):
                return
            v = order[pos]
            current.append(v)
            sub = p & nbr[v]
            if sub:
                expand(sub)
            elif len(current) > len(best):
                best = current[:]
            current.pop()
            p &= ~(1 << v)

    if cand:
        expand(cand)
    return best


def _mis_connected(g: Graph) -> list[int]:
    n = len(g)
    if n == 1:
        return [0]
    # Search for a max clique of the complement.  Vertices are renumbered so
    # that bit order is the branching order: ascending degree in g (ties by
    # position), which puts high-degree vertices of g at the top of each
    # color class where the search branches first.
    order = sorted(range(n), key=lambda i: (g.adj[i].bit_count(), i))
    pos = {v: k for k, v in enumerate(order)}
    full = (1 << n) - 1
    nbr = []
    for v in order:
        row = 0
        for u in _bits(full & ~g.adj[v] & ~(1 << v)):
            row |= 1 << pos[u]
        nbr.append(row)
    return [order[k] for k in _max_clique(nbr, full)]


def independence_number_exact(g: Graph, limit: int | None = None) -> IndependentSetWitness:
    """Maximum independent set by branch and bound.

    Components are solved separately. The result is deterministic; members
    are returned sorted by label.
    """
    limit = solver_limit(DEFAULT_EXACT_LIMIT) if limit is None else limit
    if len(g) > limit:
        raise SolverLimitError("independence_number_exact", len(g), limit)
    members: list[str] = []
    for part in connected_components(g):
        members.extend(part.vertices[i] for i in _mis_connected(part))
    members.sort()
    return IndependentSetWitness(len(members), tuple(members))


def independence_number(g: Graph, limit: int | None = None) -> int:
    return independence_number_exact(g, limit).size


def independence_number_bruteforce(g: Graph) -> int:
    """Largest independent set by testing every vertex subset."""
    n = len(g)
    if n > BRUTEFORCE_LIMIT:
        raise SolverLimitError("independence_number_bruteforce", n, BRUTEFORCE_LIMIT)
    if n == 0:
        return 0
    masks = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(masks.shape, dtype=bool)
    for u, v in g.edges():
        both = np.uint32((1 << g.index(u)) | (1 << g.index(v)))
        ok &= (masks & both) != both
    return int(np.bitwise_count(masks[ok]).max())


def clique_number(g: Graph, limit: int | None = None) -> int:
    return independence_number(complement(g), limit)


def maximal_cliques(g: Graph) -> list[tuple[str, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), canonically sorted."""
    found: list[tuple[int, ...]] = []

    def bk(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            found.append(tuple(r))
            return
        pivot = max(_bits(p | x), key=lambda u: (p & g.adj[u]).bit_count())
        for v in _bits(p & ~g.adj[pivot]):
            bk(r + [v], p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if len(g):
        bk([], (1 << len(g)) - 1, 0)
    cliques = [tuple(sorted(g.vertices[i] for i in c)) for c in found]
    return sorted(cliques)


# -- perfectness ------------------------------------------------------------


def _is_bipartite(adj: Sequence[int]) -> bool:
    side = [-1] * len(adj)
    for s in range(len(adj)):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in _bits(adj[u]):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def _find_odd_hole(adj: Sequence[int]) -> list[int] | None:
    """First chordless odd cycle of length >= 5, searching from the lowest vertex."""
    n = len(adj)
    if _is_bipartite(adj):
        return None

    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)

        def extend(path: list[int], blocked: int) -> list[int] | None:
            # blocked: path vertices plus neighbours of every interior vertex
            # except the current endpoint.
            last = path[-1]
            for v in _bits(adj[last] & above & ~blocked):
                if adj[v] >> s & 1:
                    if len(path) >= 4 and len(path) % 2 == 0:
                        return path + [v]
                    continue
                hit = extend(path + [v], blocked | (1 << v) | adj[last])
                if hit:
                    return hit
            return None

        for p1 in _bits(adj[s] & above):
            hit = extend([s, p1], (1 << s) | (1 << p1))
            if hit:
                return hit
    return None


def is_chordless_cycle(g: Graph, cyc: Sequence[str]) -> bool:
    """True iff ``cyc`` is an induced cycle of g, in the listed order."""
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        return False
    for a, b in combinations(range(k), 2):
        consecutive = (b - a) in (1, k - 1)
        if g.adjacent(cyc[a], cyc[b]) != consecutive:
            return False
    return True


def is_perfect(g: Graph, limit: int | None = None) -> PerfectnessVerdict:
    """Decide perfectness by searching for odd holes in g and its complement."""
    limit = solver_limit(DEFAULT_PERFECT_LIMIT) if limit is None else limit
    if len(g) > limit:
        raise SolverLimitError("is_perfect", len(g), limit)
    hole = _find_odd_hole(g.adj)
    if hole is not None:
        return PerfectnessVerdict(False, tuple(g.vertices[i] for i in hole), "hole")
    co = complement(g)
    hole = _find_odd_hole(co.adj)
    if hole is not None:
        return PerfectnessVerdict(False, tuple(g.vertices[i] for i in hole), "antihole")
    return PerfectnessVerdict(True)


def check_perfectness_witness(g: Graph, verdict: PerfectnessVerdict) -> bool:
    if verdict.witness is None:
        return verdict.is_perfect
    w = verdict.witness
    if len(w) < 5 or len(w) % 2 == 0:
        return False
    host = g if verdict.kind == "hole" else complement(g)
    return is_chordless_cycle(host, w)


# -- file formats -----------------------------------------------------------


def graph_from_json(data: dict) -> Graph:
    try:
        vertices = [str(v) for v in data["vertices"]]
        raw_edges = data.get("edges", [])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"graph JSON needs 'vertices' and 'edges': {exc}") from None
    seen = set()
    edges = []
    for e in raw_edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise FormatError(f"edge {e!r} is not a pair")
        key = frozenset(map(str, e))
        if key in seen:
            raise FormatError(f"duplicate edge {e!r}")
        seen.add(key)
        edges.append((str(e[0]), str(e[1])))
    try:
        return Graph.from_edges(vertices, edges)
    except StructureError as exc:
        raise FormatError(str(exc)) from None


def graph_from_dimacs(text: str) -> Graph:
    n = None
    edges = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise FormatError(f"line {lineno}: bad problem line {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before 'p' header")
            i, j = int(parts[1]), int(parts[2])
            if not (1 <= i <= n and 1 <= j <= n):
                raise FormatError(f"line {lineno}: endpoint out of range")
            key = frozenset((i, j))
            if key in seen:
                raise FormatError(f"line {lineno}: duplicate edge {i} {j}")
            seen.add(key)
            edges.append((str(i), str(j)))
        else:
            raise FormatError(f"line {lineno}: unrecognised record {parts[0]!r}")
    if n is None:
        raise FormatError("missing 'p edge n m' header")
    try:
        return Graph.from_edges([str(i) for i in range(1, n + 1)], edges)
    except StructureError as exc:
        raise FormatError(f"{exc}") from None


def load_graph(path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
        return graph_from_json(data)
    return graph_from_dimacs(text)


def dump_graph(g: Graph, path) -> None:
    Path(path).write_text(json.dumps(g.to_json(), indent=1) + "\n")
