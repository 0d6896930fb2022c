"""Symmetric eigensolver, distinct spectrum, principal idempotents, walk counts,
quotient matrices and interlacing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import Tolerances
from .errors import (
    AmbiguousGrouping,
    BadPartition,
    NoConvergence,
    NotSymmetric,
    SizeMismatch,
    ZeroVector,
)
from .graph_core import Graph

_DENSE_ROTATION_MAX_N = 48


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray     # descending
    eigenvectors: np.ndarray    # column k pairs with eigenvalues[k]
    sweeps: int = 0


@dataclass(frozen=True, eq=False)
class DistinctSpectrum:
    thetas: np.ndarray          # strictly decreasing
    mults: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]   # eigenvalue indices per theta

    @property
    def d(self) -> int:
        return len(self.thetas) - 1

    @property
    def n(self) -> int:
        return sum(self.mults)

    def is_symmetric(self, tol: float) -> bool:
        return (
            self.mults == self.mults[::-1]
            and bool(np.all(np.abs(self.thetas + self.thetas[::-1]) <= tol))
        )

    def __repr__(self):
        parts = ", ".join(f"{t:.6g}^{m}" for t, m in zip(self.thetas, self.mults))
        return f"DistinctSpectrum({{{parts}}})"


@dataclass(frozen=True, eq=False)
class Idempotents:
    matrices: np.ndarray        # shape (d+1, n, n)
    thetas: np.ndarray

    def __getitem__(self, i: int) -> np.ndarray:
        return self.matrices[i]

    def __len__(self):
        return len(self.matrices)

    def local_multiplicities(self) -> np.ndarray:
        """``m_u(theta_i)`` as an array indexed ``[i, u]``."""
        return np.diagonal(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    partition: tuple[tuple[int, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])


@dataclass(frozen=True)
class InterlacingReport:
    interlaces: bool
    tight: bool
    k: int | None                       # split index witnessing tightness
    violations: tuple[tuple[int, float, float, float], ...]  # (i, lower, mu_i, upper)


# -- eigensolver ----------------------------------------------------------------

def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of ``0..m-1`` (m even) covering every pair once over m-1 rounds."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        p = players[:half]
        q = players[half:][::-1]
        rounds.append((np.array(p), np.array(q)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _rotation_params(a: np.ndarray, p: np.ndarray, q: np.ndarray):
    apq = a[p, q]
    nz = apq != 0.0
    theta = np.zeros_like(apq)
    theta[nz] = (a[q[nz], q[nz]] - a[p[nz], p[nz]]) / (2.0 * apq[nz])
    t = np.where(nz, np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    t = np.where(nz & (theta == 0.0), 1.0, t)
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def eigen_symmetric(M, tol: float = 1e-12, max_sweeps: int = 100,
                    sym_tol: float = 1e-12) -> EigenDecomposition:
    """Cyclic Jacobi with round-robin ordering.

    Each round rotates ``n/2`` disjoint index pairs at once; a sweep of
    ``n-1`` rounds visits every off-diagonal pair. Stops when the off-diagonal
    Frobenius norm drops below ``tol * ||M||_F``.
    """
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric("matrix must be square")
    if np.any(np.abs(a - a.T) > sym_tol):
        raise NotSymmetric(f"max asymmetry {np.max(np.abs(a - a.T)):.3e}")
    a = (a + a.T) / 2.0
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return EigenDecomposition(np.diag(a).copy(), v, 0)

    target = tol * np.linalg.norm(a)
    m = n + n % 2
    rounds = []
    for p, q in _round_robin(m):
        keep = (p < n) & (q < n)
        rounds.append((p[keep], q[keep]))

    def off_norm(x):
        return np.linalg.norm(x - np.diag(np.diag(x)))

    dense = n <= _DENSE_ROTATION_MAX_N
    sweeps = 0
    off = off_norm(a)
    while off > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(off, sweeps)
        for p, q in rounds:
            c, s = _rotation_params(a, p, q)
            if dense:
                r = np.eye(n)
                r[p, p] = c
                r[q, q] = c
                r[p, q] = s
                r[q, p] = -s
                a = r.T @ a @ r
                v = v @ r
            else:
                ap, aq = a[:, p].copy(), a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :]
                a[p, :] = c[:, None] * ap - s[:, None] * aq
                a[q, :] = s[:, None] * ap + c[:, None] * aq
                vp, vq = v[:, p].copy(), v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = off_norm(a)

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], v[:, order], sweeps)


# -- spectrum and idempotents -------------------------------------------------

def distinct_spectrum(e: EigenDecomposition, rel_tol: float = 1e-7) -> DistinctSpectrum:
    lam = e.eigenvalues
    spread = float(lam[0] - lam[-1]) if len(lam) else 0.0
    tol = rel_tol * max(1.0, spread)
    gaps = lam[:-1] - lam[1:]
    grey = (gaps >= tol / 10) & (gaps <= tol * 10)
    if np.any(grey[:-1] & grey[1:]):
        k = int(np.flatnonzero(grey[:-1] & grey[1:])[0])
        raise AmbiguousGrouping(
            f"consecutive eigenvalue gaps {gaps[k]:.3e}, {gaps[k + 1]:.3e} are within a "
            f"factor 10 of the grouping tolerance {tol:.3e}"
        )
    groups = [[0]]
    for k, gap in enumerate(gaps):
        if gap <= tol:
            groups[-1].append(k + 1)
        else:
            groups.append([k + 1])
    thetas = np.array([lam[g].mean() for g in groups])
    return DistinctSpectrum(thetas, tuple(len(g) for g in groups), tuple(tuple(g) for g in groups))


def idempotents(e: EigenDecomposition, s: DistinctSpectrum) -> Idempotents:
    mats = []
    for g in s.groups:
        u = e.eigenvectors[:, list(g)]
        mats.append(u @ u.T)
    return Idempotents(np.array(mats), s.thetas)


def crossed_multiplicities(idem: Idempotents, u: int, v: int) -> np.ndarray:
    """``m_uv(theta_i) = (E_i)_uv`` for ``i = 0..d``."""
    return idem.matrices[:, u, v].copy()


def walk_count_spectral(s: DistinctSpectrum, cm: Sequence[float], length: int) -> float:
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    return float(np.dot(cm, s.thetas ** length))


def snap_int(x: float, tol: float = 1e-6) -> int | float:
    """Nearest integer when ``x`` is within ``tol`` of it, else ``x`` unchanged."""
    r = round(x)
    return int(r) if abs(x - r) <= tol else x


# -- quotient matrices, interlacing, Rayleigh quotients ----------------------

def quotient_matrix(g: Graph, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    cells = [tuple(c) for c in partition]
    flat = [v for c in cells for v in c]
    if any(len(c) == 0 for c in cells):
        raise BadPartition("empty cell")
    if sorted(flat) != list(range(g.n)):
        raise BadPartition("cells must partition the vertex set")
    a = g.adjacency
    rows = []
    for ci in cells:
        row = []
        for cj in cells:
            total = int(a[np.ix_(ci, cj)].sum())
            row.append(Fraction(total, len(ci)))
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), tuple(cells))


def block_sums_constant(g: Graph, partition: Sequence[Sequence[int]]) -> bool:
    """Every block ``A_ij`` has constant row sums and constant column sums."""
    a = g.adjacency
    for ci in partition:
        for cj in partition:
            blk = a[np.ix_(list(ci), list(cj))]
            r, c = blk.sum(axis=1), blk.sum(axis=0)
            if np.any(r != r[0]) or np.any(c != c[0]):
                return False
    return True


def check_interlacing(spec_a: Sequence[float], spec_b: Sequence[float],
                      tol: float = 1e-6) -> InterlacingReport:
    """Test ``lam[n-m+i] <= mu[i] <= lam[i]`` (1-based) and tightness."""
    lam = np.asarray(spec_a, dtype=float)
    mu = np.asarray(spec_b, dtype=float)
    n, m = len(lam), len(mu)
    if not 0 < m < n:
        raise SizeMismatch(f"need 0 < m < n, got m={m}, n={n}")
    lower = lam[n - m:]
    upper = lam[:m]
    bad = [
        (i, float(lower[i]), float(mu[i]), float(upper[i]))
        for i in range(m)
        if not (lower[i] - tol <= mu[i] <= upper[i] + tol)
    ]
    top = np.abs(mu - upper) <= tol
    bottom = np.abs(mu - lower) <= tol
    k_tight = None
    for k in range(m + 1):
        if np.all(top[:k]) and np.all(bottom[k:]):
            k_tight = k
            break
    return InterlacingReport(not bad, k_tight is not None, k_tight, tuple(bad))


def rayleigh_quotient(g: Graph, x: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    nrm = float(x @ x)
    if nrm == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    return float(x @ g.adjacency @ x) / nrm


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Everything spectral about one graph, computed once."""

    decomposition: EigenDecomposition
    spectrum: DistinctSpectrum
    idempotents: Idempotents


def analyze_spectrum(g: Graph, tols: Tolerances | None = None) -> SpectralData:
    tols = tols or Tolerances()
    e = eigen_symmetric(g.adjacency, sym_tol=tols.sym)
    s = distinct_spectrum(e, tols.group)
    return SpectralData(e, s, idempotents(e, s))
