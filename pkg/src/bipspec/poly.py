"""Spectral inner product, predistance polynomials, (pre)Hoffman polynomial and
spectral excess."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .config import Tolerances
from .errors import DegenerateSpectrum, NormalizationFailure, RouteMismatch
from .spectral import DistinctSpectrum


class Polynomial:
    """Real polynomial in the monomial basis, ``coeffs[k]`` multiplying ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[float]):
        c = np.array(coeffs, dtype=float).ravel()
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if len(nz) else np.zeros(1)
        c.flags.writeable = False
        self.coeffs = c

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0.0, 1.0])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return -1 if self.is_zero() else len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return float(self.coeffs[-1])

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    def __call__(self, x):
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc if np.ndim(acc) else float(acc)

    def even_part(self) -> Polynomial:
        c = self.coeffs.copy()
        c[1::2] = 0.0
        return Polynomial(c)

    def odd_part(self) -> Polynomial:
        c = self.coeffs.copy()
        c[0::2] = 0.0
        return Polynomial(c)

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = a.copy()
        c[: len(b)] += b
        return Polynomial(c)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-1.0) * other

    def __mul__(self, s: float) -> Polynomial:
        return Polynomial(self.coeffs * float(s))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Polynomial) and np.array_equal(self.coeffs, other.coeffs)

    def allclose(self, other: Polynomial, atol: float = 1e-12) -> bool:
        k = max(len(self.coeffs), len(other.coeffs))
        return bool(np.allclose(np.pad(self.coeffs, (0, k - len(self.coeffs))),
                                np.pad(other.coeffs, (0, k - len(other.coeffs))), rtol=0, atol=atol))

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()})"


class BlockSplit(NamedTuple):
    """Blocks of a matrix in part-contiguous order: ``[[top, cross], [cross_t, bottom]]``."""

    top: np.ndarray
    bottom: np.ndarray
    cross: np.ndarray
    cross_t: np.ndarray


def block_split(x: np.ndarray, n1: int) -> BlockSplit:
    return BlockSplit(x[:n1, :n1], x[n1:, n1:], x[:n1, n1:], x[n1:, :n1])


def evaluate_on_matrix(p: Polynomial, a: np.ndarray, n1: int | None = None):
    """``p(A)`` by Horner's rule.

    With ``n1`` (size of the first part of a part-contiguous bipartite ``A``)
    the block split of the result is returned as well.
    """
    a = np.asarray(a, dtype=float)
    eye = np.eye(a.shape[0])
    acc = np.zeros_like(a)
    for c in p.coeffs[::-1]:
        acc = acc @ a + c * eye
    if n1 is None:
        return acc
    return acc, block_split(acc, n1)


def spectral_inner_product(f: Polynomial, g: Polynomial, s: DistinctSpectrum) -> float:
    """``(1/n) sum_i m_i f(theta_i) g(theta_i)``."""
    m = np.asarray(s.mults, dtype=float)
    return float(np.sum(m * f(s.thetas) * g(s.thetas)) / s.n)


@dataclass(frozen=True, eq=False)
class PredistanceSystem:
    polys: tuple[Polynomial, ...]
    alpha: np.ndarray           # alpha[i], i = 0..d
    beta: np.ndarray            # beta[i],  i = 0..d-1
    gamma: np.ndarray           # gamma[i], i = 1..d stored at index i (gamma[0] unused = 0)
    values: np.ndarray          # values[i, j] = p_i(theta_j)
    spectrum: DistinctSpectrum
    symmetric: bool

    @property
    def d(self) -> int:
        return len(self.polys) - 1

    @property
    def omegas(self) -> np.ndarray:
        """Leading coefficients of ``p_0..p_d``."""
        return np.array([p.leading for p in self.polys])

    @cached_property
    def hoffman(self) -> Polynomial:
        h = self.polys[0]
        for p in self.polys[1:]:
            h = h + p
        return h

    @property
    def hoffman_even(self) -> Polynomial:
        return self.hoffman.even_part()

    @property
    def hoffman_odd(self) -> Polynomial:
        return self.hoffman.odd_part()

    def at_theta0(self, i: int) -> float:
        return float(self.values[i, 0])

    def matrices(self, a: np.ndarray, upto: int | None = None) -> list[np.ndarray]:
        """``[p_0(A), ..., p_upto(A)]`` via the three-term recurrence."""
        upto = self.d if upto is None else upto
        a = np.asarray(a, dtype=float)
        out = [np.eye(a.shape[0])]
        prev = np.zeros_like(a)
        for i in range(upto):
            nxt = a @ out[i] - self.alpha[i] * out[i]
            if i > 0:
                nxt = nxt - self.beta[i - 1] * prev
            prev = out[i]
            out.append(nxt / self.gamma[i + 1])
        return out


def predistance_system(s: DistinctSpectrum, tols: Tolerances | None = None) -> PredistanceSystem:
    """Orthogonal polynomials for ``<f,g> = (1/n) sum m_i f(theta_i) g(theta_i)``
    with ``||p_i||^2 = p_i(theta_0)``, built by the Stieltjes procedure.

    Recurrence: ``x p_i = beta_{i-1} p_{i-1} + alpha_i p_i + gamma_{i+1} p_{i+1}``.
    For spectra symmetric about zero the ``alpha_i`` are set to exactly 0.
    """
    tols = tols or Tolerances()
    th = np.asarray(s.thetas, dtype=float)
    d = s.d
    if np.any(np.diff(th) >= 0):
        raise DegenerateSpectrum("eigenvalues must be distinct and decreasing")
    w = np.asarray(s.mults, dtype=float) / s.n
    symmetric = s.is_symmetric(tols.eig)

    def ip(u, v):
        return float(np.sum(w * u * v))

    vals = [np.ones_like(th)]
    coeffs = [np.zeros(d + 2)]
    coeffs[0][0] = 1.0
    norms = [1.0]
    alpha = np.zeros(d + 1)
    beta = np.zeros(max(d, 0))
    gamma = np.zeros(d + 1)
    for i in range(d + 1):
        xp = th * vals[i]
        alpha[i] = 0.0 if symmetric else ip(xp, vals[i]) / norms[i]
        if i == d:
            break
        r = xp - alpha[i] * vals[i]
        rc = np.roll(coeffs[i], 1) - alpha[i] * coeffs[i]
        if i > 0:
            beta[i - 1] = ip(xp, vals[i - 1]) / norms[i - 1]
            r = r - beta[i - 1] * vals[i - 1]
            rc = rc - beta[i - 1] * coeffs[i - 1]
        rnorm = ip(r, r)
        if r[0] <= tols.pos * np.abs(r).max() or rnorm <= 0:
            raise NormalizationFailure(f"p_{i + 1}(theta_0) = {r[0]:.3e} not positive")
        gamma[i + 1] = rnorm / r[0]
        vals.append(r / gamma[i + 1])
        coeffs.append(rc / gamma[i + 1])
        norms.append(rnorm / gamma[i + 1] ** 2)
    if d > 0:
        beta[d - 1] = ip(th * vals[d], vals[d - 1]) / norms[d - 1]
    polys = tuple(Polynomial(c) for c in coeffs)
    return PredistanceSystem(polys, alpha, beta, gamma, np.array(vals), s, symmetric)


def spectral_excess_closed_form(s: DistinctSpectrum) -> float:
    """``n / sum_i pi_0^2 / (m_i pi_i^2)`` with ``pi_i = prod_{j != i} |theta_i - theta_j|``."""
    th = np.asarray(s.thetas, dtype=float)
    diff = np.abs(th[:, None] - th[None, :])
    np.fill_diagonal(diff, 1.0)
    log_pi = np.sum(np.log(diff), axis=1)
    m = np.asarray(s.mults, dtype=float)
    terms = np.exp(2 * (log_pi[0] - log_pi)) / m
    return float(s.n / terms.sum())


def spectral_excess(s: DistinctSpectrum, ps: PredistanceSystem | None = None,
                    tol: float = 1e-6) -> float:
    """``p_d(theta_0)``, cross-checked against the closed product formula."""
    if s.d < 1:
        raise DegenerateSpectrum("spectral excess needs at least two distinct eigenvalues")
    ps = ps or predistance_system(s)
    direct = ps.at_theta0(ps.d)
    closed = spectral_excess_closed_form(s)
    if abs(direct - closed) > tol * max(1.0, abs(direct)):
        raise RouteMismatch(f"p_d(theta_0) = {direct!r} but product formula gives {closed!r}")
    return direct
