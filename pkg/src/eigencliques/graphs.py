"""Dense undirected graphs: representation, deterministic generators, transformations.

All graphs are simple and undirected, stored as a symmetric 0/1 adjacency
matrix with zero diagonal. Vertices are labelled 0..n-1. Values are immutable
after construction and safe to share.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

__all__ = [
    "Graph",
    "GraphStats",
    "from_edge_list",
    "from_adjacency",
    "generate",
    "clique_union",
    "turan",
    "gnp",
    "h_k",
    "complete",
    "cycle",
    "path",
    "petersen",
    "complement",
    "induced_subgraph",
    "read_edge_list",
    "write_edge_list",
    "parse_edge_list",
    "format_edge_list",
]


class Graph:
    """Immutable dense graph. Use :func:`from_edge_list` or a generator to build one."""

    __slots__ = ("n", "adjacency", "labels", "m", "_degrees", "_memo")

    def __init__(self, adjacency: np.ndarray, labels: Sequence[str] | None = None):
        adj = np.asarray(adjacency, dtype=np.uint8)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InputError("adjacency must be a square matrix")
        if adj.size and (adj > 1).any():
            raise InputError("adjacency entries must be 0 or 1")
        if adj.size and np.diagonal(adj).any():
            raise InputError("adjacency must have zero diagonal")
        if not np.array_equal(adj, adj.T):
            raise InputError("adjacency must be symmetric")
        adj = adj.copy()
        adj.setflags(write=False)
        self.n: int = adj.shape[0]
        self.adjacency: np.ndarray = adj
        self.labels = tuple(labels) if labels is not None else None
        self._degrees = adj.sum(axis=1, dtype=np.int64) if self.n else np.zeros(0, dtype=np.int64)
        self._degrees.setflags(write=False)
        self.m: int = int(self._degrees.sum()) // 2
        self._memo: dict = {}

    # -- basic quantities ---------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def average_degree(self) -> float:
        return 2.0 * self.m / self.n if self.n else 0.0

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max()) if self.n else 0

    @property
    def density(self) -> float:
        """Edge density m / C(n,2); 0 for n <= 1."""
        if self.n <= 1:
            return 0.0
        return self.m / (self.n * (self.n - 1) / 2)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def is_regular(self) -> bool:
        return self.n == 0 or bool((self._degrees == self._degrees[0]).all())

    def is_clique(self, vertices: Iterable[int] | None = None) -> bool:
        """Exact Boolean check that the given vertex set is pairwise adjacent."""
        idx = np.arange(self.n) if vertices is None else np.asarray(sorted(set(vertices)), dtype=int)
        k = len(idx)
        if k <= 1:
            return True
        sub = self.adjacency[np.ix_(idx, idx)]
        return int(sub.sum()) == k * (k - 1)

    def fingerprint(self) -> str:
        key = self._memo.get("fingerprint")
        if key is None:
            h = hashlib.sha256()
            h.update(str(self.n).encode())
            h.update(np.packbits(self.adjacency).tobytes())
            key = h.hexdigest()[:16]
            self._memo["fingerprint"] = key
        return key

    def stats(self) -> "GraphStats":
        comp_max = (self.n - 1 - int(self._degrees.min())) if self.n else 0
        return GraphStats(
            n=self.n,
            m=self.m,
            density=self.density,
            average_degree=self.average_degree,
            max_degree=self.max_degree,
            complement_max_degree=comp_max,
            delta_star=min(self.max_degree, comp_max),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphStats:
    """Headline parameters: d = 2m/n, Delta, Delta of the complement, and their minimum."""

    n: int
    m: int
    density: float
    average_degree: float
    max_degree: int
    complement_max_degree: int
    delta_star: int


# -- construction -----------------------------------------------------------


def from_adjacency(adjacency: np.ndarray, labels: Sequence[str] | None = None) -> Graph:
    return Graph(adjacency, labels)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> Graph:
    """Build a graph from unordered vertex pairs; duplicates collapse to one edge."""
    if n < 0:
        raise InputError("vertex count must be nonnegative")
    adj = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        adj[u, v] = 1
        adj[v, u] = 1
    return Graph(adj, labels)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    # Counter-based hash; edge samples are order-independent and platform-stable.
    z = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def pair_uniforms(seed: int, iu: np.ndarray, ju: np.ndarray) -> np.ndarray:
    """Deterministic uniforms in [0,1) keyed by (seed, i, j), independent of order."""
    with np.errstate(over="ignore"):
        base = _splitmix64(np.asarray([np.uint64(seed & 0xFFFFFFFFFFFFFFFF)]))[0]
        key = _splitmix64(iu.astype(np.uint64) * np.uint64(0x100000001) + base)
        key = _splitmix64(key ^ (ju.astype(np.uint64) + np.uint64(0x9E3779B9)))
    return key.astype(np.float64) / float(2**64)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi sample, bit-identical across runs for a fixed seed."""
    if n < 1:
        raise InputError("n must be positive")
    if not (0.0 <= p <= 1.0):
        raise InputError("p must lie in [0,1]")
    iu, ju = np.triu_indices(n, 1)
    u = pair_uniforms(seed, iu, ju)
    adj = np.zeros((n, n), dtype=np.uint8)
    hit = u < p
    adj[iu[hit], ju[hit]] = 1
    adj[ju[hit], iu[hit]] = 1
    return Graph(adj)


def clique_union(sizes: Sequence[int]) -> Graph:
    """Vertex-disjoint union of cliques, blocks laid out consecutively."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise InputError("clique sizes must be positive")
    n = sum(sizes)
    adj = np.zeros((n, n), dtype=np.uint8)
    start = 0
    for s in sizes:
        adj[start : start + s, start : start + s] = 1
        start += s
    np.fill_diagonal(adj, 0)
    return Graph(adj)


def complete(n: int) -> Graph:
    return clique_union([n])


def turan(r: int, n: int, strict: bool = False) -> Graph:
    """Complete r-partite graph with part sizes differing by at most one.

    With strict=True, r must divide n (parts of size exactly n/r).
    """
    if r < 1 or n < 1:
        raise InputError("r and n must be positive")
    if r > n:
        raise InputError("r must not exceed n")
    if strict and n % r != 0:
        raise InputError(f"strict mode requires r | n, got r={r}, n={n}")
    sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
    adj = np.ones((n, n), dtype=np.uint8)
    start = 0
    for s in sizes:
        adj[start : start + s, start : start + s] = 0
        start += s
    np.fill_diagonal(adj, 0)
    return Graph(adj)


def h_k(k: int) -> Graph:
    """A 2k-clique plus an apex vertex adjacent to exactly k of its vertices.

    Vertices 0..2k-1 form the clique; vertex 2k is the apex, adjacent to 0..k-1.
    """
    if k < 1:
        raise InputError("k must be positive")
    n = 2 * k + 1
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[: 2 * k, : 2 * k] = 1
    adj[2 * k, :k] = 1
    adj[:k, 2 * k] = 1
    np.fill_diagonal(adj, 0)
    return Graph(adj)


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs n >= 1")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    """The Petersen graph: outer 5-cycle, inner pentagram, five spokes."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, edges)


_FAMILIES = {
    "CliqueUnion": lambda args: clique_union(args["sizes"]),
    "Turan": lambda args: turan(args["r"], args["n"], args.get("strict", False)),
    "Gnp": lambda args: gnp(args["n"], args["p"], args.get("seed", 0)),
    "Hk": lambda args: h_k(args["k"]),
    "Complete": lambda args: complete(args["n"]),
    "Cycle": lambda args: cycle(args["n"]),
    "Path": lambda args: path(args["n"]),
}


def generate(family: str, **params) -> Graph:
    """Dispatch on a family descriptor name; see _FAMILIES for the accepted set."""
    if family not in _FAMILIES:
        raise InputError(f"unknown family {family!r}; known: {sorted(_FAMILIES)}")
    return _FAMILIES[family](params)


# -- transformations --------------------------------------------------------


def complement(g: Graph) -> Graph:
    adj = np.ones((g.n, g.n), dtype=np.uint8) - g.adjacency
    np.fill_diagonal(adj, 0)
    return Graph(adj, g.labels)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertices, relabelled 0..|U|-1 in ascending original order."""
    idx = sorted(set(int(v) for v in vertices))
    if idx and not (0 <= idx[0] and idx[-1] < g.n):
        raise InputError("vertex out of range")
    ix = np.asarray(idx, dtype=int)
    labels = tuple(str(v) for v in idx) if g.labels is None else tuple(g.labels[v] for v in idx)
    return Graph(g.adjacency[np.ix_(ix, ix)], labels)


# -- edge-list text format ----------------------------------------------------
# First non-comment line: "n m"; then m lines "u v" (0-indexed). '#' starts a
# comment line. format_edge_list emits edges sorted with u < v.


def parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    m_expected = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected header 'n m'")
            try:
                n, m_expected = int(parts[0]), int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: expected integers in header") from None
            if n < 0 or m_expected < 0:
                raise InputError(f"line {lineno}: negative header values")
            header = (n, m_expected)
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected edge 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: expected integer endpoints") from None
        edges.append((u, v))
    if header is None:
        raise InputError("line 1: empty input, expected header 'n m'")
    if len(edges) != header[1]:
        raise InputError(f"header declares m={header[1]} but {len(edges)} edge lines found")
    return from_edge_list(header[0], edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path_: str) -> Graph:
    with open(path_, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path_: str) -> None:
    with open(path_, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
