"""Combinatorial ground truth.

Nothing here touches eigenvalues or floating point: distance-regularity is
decided by counting neighbours in BFS layers and walks are counted by
explicit path extension. ``cross_validate`` then runs the spectral pipeline
over a corpus and records every disagreement with these counts.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph_core import Graph, to_graph6
from .errors import Disconnected, LengthCapExceeded

WALK_LENGTH_CAP = 12


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]      # b_0 .. b_{D-1}
    c: tuple[int, ...]      # c_1 .. c_D

    @property
    def diameter(self) -> int:
        return len(self.c)

    @property
    def degree(self) -> int:
        return self.b[0] if self.b else 0

    @property
    def a(self) -> tuple[int, ...]:
        """``a_0 .. a_D``."""
        k = self.degree
        bs = self.b + (0,)
        cs = (0,) + self.c
        return tuple(k - bs[i] - cs[i] for i in range(len(bs)))

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"


@dataclass(frozen=True)
class NotDRG:
    """First pair whose counts differ from the reference pair at the same distance."""

    u: int
    v: int
    i: int
    counts: tuple[int, int, int]            # (c, a, b) for (u, v)
    reference: tuple[int, int]              # first pair seen at distance i
    reference_counts: tuple[int, int, int]

    def __str__(self):
        return (f"dist({self.u},{self.v})={self.i}: (c,a,b)={self.counts} but "
                f"{self.reference} has {self.reference_counts}")


def _bfs_distances(g: Graph) -> list[list[int]]:
    rows = []
    for r in range(g.n):
        dist = [-1] * g.n
        dist[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for v in g.neighbors[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        if min(dist) < 0:
            raise Disconnected("graph is not connected")
        rows.append(dist)
    return rows


def intersection_numbers(g: Graph, dm=None) -> IntersectionArray | NotDRG:
    """Intersection array by direct counting, or the first violating pair.

    For every ordered pair ``(u, v)`` at distance ``i >= 1`` the counts
    ``c = |N(v) & G_{i-1}(u)|``, ``b = |N(v) & G_{i+1}(u)|`` and
    ``a = deg(v) - b - c`` must depend on ``i`` only.
    """
    dist = [list(map(int, row)) for row in dm.dist] if dm is not None else _bfs_distances(g)
    n = g.n
    D = max(max(row) for row in dist)
    seen: dict[int, tuple[tuple[int, int], tuple[int, int, int]]] = {}
    for u in range(n):
        du = dist[u]
        for v in range(n):
            i = du[v]
            if i == 0:
                continue
            c = b = 0
            for w in g.neighbors[v]:
                if du[w] == i - 1:
                    c += 1
                elif du[w] == i + 1:
                    b += 1
            counts = (c, len(g.neighbors[v]) - b - c, b)
            ref = seen.setdefault(i, ((u, v), counts))
            if ref[1] != counts:
                return NotDRG(u, v, i, counts, ref[0], ref[1])
    if n == 1:
        return IntersectionArray((), ())
    k = len(g.neighbors[0])
    b = (k,) + tuple(seen[i][1][2] for i in range(1, D))
    c = tuple(seen[i][1][0] for i in range(1, D + 1))
    return IntersectionArray(b, c)


def _walk_ends(g: Graph, u: int, length: int) -> dict[int, int]:
    if length > WALK_LENGTH_CAP:
        raise LengthCapExceeded(f"walk length {length} > {WALK_LENGTH_CAP}")
    ends: dict[int, int] = {}
    stack = [(u, 0)]
    while stack:
        x, k = stack.pop()
        if k == length:
            ends[x] = ends.get(x, 0) + 1
            continue
        for y in g.neighbors[x]:
            stack.append((y, k + 1))
    return ends


def brute_force_walk_count(g: Graph, u: int, v: int, length: int) -> int:
    """Number of ``u``-``v`` walks of the given length, by enumerating them."""
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    return _walk_ends(g, u, length).get(v, 0)


def brute_force_walk_table(g: Graph, length: int) -> list[list[int]]:
    """All ``(u, v)`` walk counts of one length, one enumeration per source."""
    table = []
    for u in range(g.n):
        ends = _walk_ends(g, u, length)
        table.append([ends.get(v, 0) for v in range(g.n)])
    return table


# -- corpus cross-validation --------------------------------------------------

@dataclass(frozen=True)
class Discrepancy:
    index: int
    graph6: str
    check: str
    witness: str

    def to_record(self) -> str:
        return json.dumps({"index": self.index, "graph6": self.graph6,
                           "check": self.check, "witness": self.witness}, sort_keys=True)


@dataclass
class ValidationConfig:
    tols: object = None
    invariants: bool = True
    walk_bruteforce: bool = False       # exponential; meant for small corpora
    invariant_tol: float = 1e-8
    workers: int = 1


@dataclass
class DiscrepancyReport:
    graphs: int = 0
    drg: int = 0
    discrepancies: list[Discrepancy] = field(default_factory=list)
    agreement: dict[str, int] = field(default_factory=dict)   # check id -> graphs agreeing with oracle
    applicable: dict[str, int] = field(default_factory=dict)  # check id -> graphs where it applied
    arrays: dict[str, int] = field(default_factory=dict)      # intersection array -> count

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def lines(self) -> list[str]:
        return [d.to_record() for d in self.discrepancies]

    def summary(self) -> dict:
        return {
            "graphs": self.graphs,
            "drg": self.drg,
            "discrepancies": len(self.discrepancies),
            "agreement": dict(sorted(self.agreement.items())),
            "applicable": dict(sorted(self.applicable.items())),
        }


def _validate_one(args):
    from .characterize import classify, DRG_CHECKS
    from .invariants import invariant_violations

    index, g, config = args
    g6 = to_graph6(g)
    out = []
    try:
        rep = classify(g, config.tols)
        truth = intersection_numbers(g)
        oracle_drg = isinstance(truth, IntersectionArray)
        per_check = {}
        for cid in DRG_CHECKS:
            r = rep.checks.get(cid)
            if r is None or r.verdict == "n/a":
                continue
            agree = r.passed == oracle_drg
            per_check[cid] = agree
            if not agree:
                out.append(Discrepancy(index, g6, cid, f"spectral={r.verdict} oracle={'drg' if oracle_drg else truth}"))
        if rep.distance_regular is not None and rep.distance_regular != oracle_drg:
            out.append(Discrepancy(index, g6, "classify", f"spectral={rep.distance_regular} oracle={oracle_drg}"))
        for msg in rep.discrepancies:
            out.append(Discrepancy(index, g6, "internal", msg))
        if config.invariants:
            for cid, msg in invariant_violations(rep.analysis, truth, config.invariant_tol,
                                                 walk_bruteforce=config.walk_bruteforce):
                out.append(Discrepancy(index, g6, cid, msg))
        arr = str(truth) if oracle_drg else None
        return index, out, per_check, oracle_drg, arr
    except Exception as exc:  # failures are data here
        return index, [Discrepancy(index, g6, "exception", f"{type(exc).__name__}: {exc}")], {}, False, None


def cross_validate(corpus: Iterable[Graph], config: ValidationConfig | None = None) -> DiscrepancyReport:
    config = config or ValidationConfig()
    report = DiscrepancyReport()
    jobs = ((i, g, config) for i, g in enumerate(corpus))
    if config.workers > 1:
        from multiprocessing import Pool

        with Pool(config.workers) as pool:
            results = list(pool.imap(_validate_one, jobs, chunksize=64))
    else:
        results = map(_validate_one, jobs)
    for index, out, per_check, oracle_drg, arr in results:
        report.graphs += 1
        report.drg += oracle_drg
        report.discrepancies.extend(out)
        if arr is not None:
            report.arrays[arr] = report.arrays.get(arr, 0) + 1
        for cid, agree in per_check.items():
            report.applicable[cid] = report.applicable.get(cid, 0) + 1
            report.agreement[cid] = report.agreement.get(cid, 0) + agree
    report.discrepancies.sort(key=lambda d: (d.index, d.check))
    return report
