"""Graph representation, ingestion, bipartitions, distances, named graphs and
exhaustive enumeration of small bipartite graphs.

Graphs are simple and undirected. A :class:`Graph` wraps a read-only 0/1
adjacency matrix; everything else (neighbour lists, connectivity) is derived
lazily and cached on the instance.
"""

from __future__ import annotations

import random
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadParams,
    BadToken,
    Disconnected,
    MalformedGraph6,
    NotBipartite,
    SelfLoop,
    TooLarge,
    UnknownName,
    UnsupportedSize,
)

MAX_VERTICES = 512
GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    adjacency: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency must have zero diagonal")
        if np.any((a != 0) & (a != 1)):
            raise ValueError("adjacency entries must be 0 or 1")
        if self.labels is not None and len(self.labels) != a.shape[0]:
            raise ValueError("one label per vertex required")
        a.flags.writeable = False
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> Graph:
        a = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            a[u, v] = a[v, u] = 1
        return cls(a, labels)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(np.flatnonzero(row).tolist()) for row in self.adjacency)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.adjacency.sum(axis=1))

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def permuted(self, order: Sequence[int]) -> Graph:
        """Graph whose vertex ``k`` is vertex ``order[k]`` of this one."""
        idx = np.asarray(order)
        labels = None if self.labels is None else tuple(self.labels[i] for i in order)
        return Graph(self.adjacency[np.ix_(idx, idx)], labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count}, g6={to_graph6(self)!r})"


@dataclass(frozen=True)
class Bipartition:
    part1: tuple[int, ...]
    part2: tuple[int, ...]

    @property
    def n1(self) -> int:
        return len(self.part1)

    @property
    def n2(self) -> int:
        return len(self.part2)

    @property
    def order(self) -> tuple[int, ...]:
        """Part-contiguous vertex order (``part1`` then ``part2``)."""
        return self.part1 + self.part2

    def side(self, v: int) -> int:
        return 0 if v in self._part1_set else 1

    @cached_property
    def _part1_set(self) -> frozenset:
        return frozenset(self.part1)


@dataclass(frozen=True, eq=False)
class DistanceMatrices:
    """Distance matrix ``dist`` and its 0/1 slices ``matrices[i] = A_i``."""

    dist: np.ndarray
    matrices: tuple[np.ndarray, ...]

    @property
    def diameter(self) -> int:
        return len(self.matrices) - 1

    def __getitem__(self, i: int) -> np.ndarray:
        """``A_i``; the zero matrix outside ``0..D``."""
        if 0 <= i < len(self.matrices):
            return self.matrices[i]
        return np.zeros_like(self.dist)

    def pairs_at(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return np.nonzero(self.dist == i)


@dataclass(frozen=True)
class DegreeSummary:
    degrees: tuple[int, ...]
    average: Fraction
    edges: int
    average1: Fraction | None = None
    average2: Fraction | None = None


# -- graph6 -----------------------------------------------------------------

def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise UnsupportedSize(f"n={n} exceeds the graph6 long form")


def to_graph6(g: Graph) -> str:
    n = g.n
    a = g.adjacency
    bits = [int(a[i, j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _encode_size(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise MalformedGraph6(f"invalid character in {s!r}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    else:
        raise UnsupportedSize("8-byte graph6 size form is not supported")
    if n > MAX_VERTICES:
        raise UnsupportedSize(f"n={n} > {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise MalformedGraph6(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(rest)}")
    a = np.zeros((n, n), dtype=np.int64)
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (rest[k // 6] >> (5 - k % 6)) & 1:
                a[i, j] = a[j, i] = 1
            k += 1
    tail = nbits % 6
    if tail and rest[-1] & ((1 << (6 - tail)) - 1):
        raise MalformedGraph6("nonzero padding bits")
    return Graph(a)


# -- edge list --------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (0-based), optionally preceded by ``n <count>``.

    Blank lines and ``#`` comments are ignored. Duplicate edges are dropped
    with a warning. Without a count header every vertex up to the largest id
    must carry an edge.
    """
    n = None
    edges = set()
    first = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if first and tok[0] == "n":
            first = False
            if len(tok) != 2 or not tok[1].isdigit():
                raise BadToken(f"line {lineno}: bad header {raw!r}")
            n = int(tok[1])
            continue
        first = False
        if len(tok) != 2 or not all(t.isdigit() for t in tok):
            raise BadToken(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = int(tok[0]), int(tok[1])
        if u == v:
            raise SelfLoop(f"line {lineno}: loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in edges:
            warnings.warn(f"line {lineno}: duplicate edge {e} ignored", stacklevel=2)
        edges.add(e)
    used = {x for e in edges for x in e}
    if n is None:
        if not used:
            raise BadToken("no edges and no vertex count")
        n = max(used) + 1
        missing = set(range(n)) - used
        if missing:
            raise BadToken(f"isolated vertices {sorted(missing)} need an explicit 'n' header")
    elif used and max(used) >= n:
        raise BadToken(f"vertex id {max(used)} out of range for n={n}")
    if n > MAX_VERTICES:
        raise BadToken(f"n={n} > {MAX_VERTICES}")
    return Graph.from_edges(n, sorted(edges))


# -- structure ----------------------------------------------------------------

def _bfs_layers(g: Graph, root: int = 0):
    depth = [-1] * g.n
    parent = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.neighbors[u]:
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                parent[v] = u
                queue.append(v)
    return depth, parent


def bipartition(g: Graph) -> Bipartition:
    """2-colour ``g`` by BFS parity from vertex 0.

    Raises :class:`NotBipartite` carrying an odd cycle (as a vertex sequence
    without the closing repeat) when some edge joins two vertices of equal
    parity.
    """
    if not g.is_connected:
        raise Disconnected("graph is not connected")
    depth, parent = _bfs_layers(g)
    for u, v in g.edges():
        if depth[u] % 2 == depth[v] % 2:
            # climb to the lowest common ancestor to extract the odd cycle
            left, right = [u], [v]
            while left[-1] != right[-1]:
                if depth[left[-1]] >= depth[right[-1]]:
                    left.append(parent[left[-1]])
                else:
                    right.append(parent[right[-1]])
            raise NotBipartite(left + right[-2::-1])
    part1 = tuple(v for v in range(g.n) if depth[v] % 2 == 0)
    part2 = tuple(v for v in range(g.n) if depth[v] % 2 == 1)
    return Bipartition(part1, part2)


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except NotBipartite:
        return False
    return True


def distance_matrices(g: Graph) -> DistanceMatrices:
    if not g.is_connected:
        raise Disconnected("graph is not connected")
    dist = np.array([_bfs_layers(g, r)[0] for r in range(g.n)], dtype=np.int64)
    D = int(dist.max())
    mats = []
    for i in range(D + 1):
        m = (dist == i).astype(np.int64)
        m.flags.writeable = False
        mats.append(m)
    dist.flags.writeable = False
    return DistanceMatrices(dist, tuple(mats))


def degree_summary(g: Graph, b: Bipartition | None = None) -> DegreeSummary:
    deg = g.degrees
    total = sum(deg)
    avg = Fraction(total, g.n) if g.n else Fraction(0)
    if b is None:
        return DegreeSummary(deg, avg, total // 2)
    a1 = Fraction(sum(deg[v] for v in b.part1), b.n1)
    a2 = Fraction(sum(deg[v] for v in b.part2), b.n2)
    return DegreeSummary(deg, avg, total // 2, a1, a2)


# -- named graphs -------------------------------------------------------------

def _need(params, k, name):
    if len(params) != k or any(not isinstance(p, (int, np.integer)) for p in params):
        raise BadParams(f"{name} takes {k} integer parameter(s), got {list(params)}")


def _path(n):
    if n < 1:
        raise BadParams("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n):
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n):
    if n < 1:
        raise BadParams("complete needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _complete_bipartite(a, b):
    if a < 1 or b < 1:
        raise BadParams("complete_bipartite needs both parts nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _hypercube(k):
    if not 1 <= k <= 9:
        raise BadParams("hypercube needs 1 <= k <= 9")
    # even-weight words first, then odd-weight words
    words = sorted(range(1 << k), key=lambda w: (bin(w).count("1") % 2, w))
    pos = {w: i for i, w in enumerate(words)}
    edges = [(pos[w], pos[w ^ (1 << b)]) for w in words for b in range(k) if w < w ^ (1 << b)]
    labels = tuple(format(w, f"0{k}b") for w in words)
    return Graph.from_edges(1 << k, edges, labels)


def _heawood():
    # points 0..6, lines 7..13; line i is {i, i+1, i+3} mod 7
    edges = [(p, 7 + i) for i in range(7) for p in ((i, (i + 1) % 7, (i + 3) % 7))]
    return Graph.from_edges(14, edges)


def _generalized_petersen(n, k):
    if n < 3 or not 1 <= k < n / 2:
        raise BadParams("generalized_petersen needs n >= 3 and 1 <= k < n/2")
    edges = []
    for i in range(n):
        edges += [(i, (i + 1) % n), (i, n + i), (n + i, n + (i + k) % n)]
    return Graph.from_edges(2 * n, edges)


def _crown(n):
    if n < 2:
        raise BadParams("crown needs n >= 2")
    return Graph.from_edges(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


_CATALOG = {
    "path": (1, _path),
    "cycle": (1, _cycle),
    "complete": (1, _complete),
    "complete_bipartite": (2, _complete_bipartite),
    "hypercube": (1, _hypercube),
    "heawood": (0, _heawood),
    "petersen": (0, lambda: _generalized_petersen(5, 2)),
    "crown": (1, _crown),
    "generalized_petersen": (2, _generalized_petersen),
}

CATALOG_NAMES = tuple(_CATALOG)


def catalog(name: str, params: Sequence[int] = ()) -> Graph:
    """Named graph.

    Vertex orders: ``path``/``cycle`` follow the path/cycle; ``complete_bipartite``,
    ``crown`` and ``heawood`` list one part and then the other; ``hypercube``
    lists even-weight words then odd-weight words (labels are the bit strings);
    ``petersen``/``generalized_petersen`` list the outer cycle then the spokes'
    inner ends.
    """
    try:
        arity, build = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown graph {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    params = list(params)
    _need(params, arity, name)
    return build(*params)


def random_regular_bipartite(half: int, k: int, rng: random.Random) -> Graph:
    """Random ``k``-regular bipartite graph on parts of size ``half`` (listed
    contiguously): a union of edge-disjoint random perfect matchings, sampled
    in the sparser of the graph and its bipartite complement."""
    if not 1 <= k <= half:
        raise BadParams("need 1 <= k <= half")
    kk = min(k, half - k)
    for _ in range(1000):
        edges: set[tuple[int, int]] = set()
        for _ in range(kk):
            for _ in range(1000):
                perm = list(range(half))
                rng.shuffle(perm)
                new = {(i, half + perm[i]) for i in range(half)}
                if not new & edges:
                    edges |= new
                    break
            else:
                break
        else:
            if kk != k:
                edges = {(i, half + j) for i in range(half) for j in range(half)} - edges
            return Graph.from_edges(2 * half, sorted(edges))
    raise BadParams(f"could not sample a {k}-regular bipartite graph on {half}+{half}")


# -- exhaustive enumeration -------------------------------------------------

ENUM_CAP = 16
ENUM_CAP_LARGE = 20


def _biadjacency_connected(rows: list[int], n1: int, n2: int) -> bool:
    cols = [0] * n2
    for i, r in enumerate(rows):
        for j in range(n2):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    seen1, seen2 = 1, 0
    while True:
        new2 = seen2
        for i in range(n1):
            if (seen1 >> i) & 1:
                new2 |= rows[i]
        new1 = seen1
        for j in range(n2):
            if (new2 >> j) & 1:
                new1 |= cols[j]
        if new1 == seen1 and new2 == seen2:
            break
        seen1, seen2 = new1, new2
    return seen1 == (1 << n1) - 1 and seen2 == (1 << n2) - 1


def enumerate_bipartite(n1: int, n2: int, connected_only: bool = True,
                        allow_large: bool = False) -> Iterator[Graph]:
    """Every labeled bipartite graph with parts ``0..n1-1`` and ``n1..n1+n2-1``.

    Bit ``i*n2 + j`` of the mask is the edge ``(i, n1+j)``. No isomorphism
    reduction is done, so isomorphic copies appear repeatedly.
    """
    if n1 < 1 or n2 < 1:
        raise BadParams("parts must be nonempty")
    cap = ENUM_CAP_LARGE if allow_large else ENUM_CAP
    if n1 * n2 > cap:
        raise TooLarge(f"{n1}x{n2} biadjacency has 2^{n1 * n2} masks (cap 2^{cap})")
    n = n1 + n2
    row_mask = (1 << n2) - 1
    for mask in range(1 << (n1 * n2)):
        rows = [(mask >> (i * n2)) & row_mask for i in range(n1)]
        if connected_only and not _biadjacency_connected(rows, n1, n2):
            continue
        a = np.zeros((n, n), dtype=np.int64)
        for i, r in enumerate(rows):
            for j in range(n2):
                if (r >> j) & 1:
                    a[i, n1 + j] = a[n1 + j, i] = 1
        yield Graph(a)


def enumerate_bipartite_upto(max1: int, max2: int, connected_only: bool = True,
                             allow_large: bool = False) -> Iterator[Graph]:
    """All part shapes ``(a, b)`` with ``1 <= a <= max1`` and ``1 <= b <= max2``.

    The cap is checked eagerly, before the first graph is produced.
    """
    if max1 < 1 or max2 < 1:
        raise BadParams("part bounds must be positive")
    cap = ENUM_CAP_LARGE if allow_large else ENUM_CAP
    if max1 * max2 > cap:
        raise TooLarge(f"largest shape {max1}x{max2} exceeds the enumeration cap 2^{cap}")
    return (g for a in range(1, max1 + 1) for b in range(1, max2 + 1)
            for g in enumerate_bipartite(a, b, connected_only, allow_large))
