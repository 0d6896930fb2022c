"""Per-graph invariant checks. Each yields ``(check_id, message)`` per violation."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .characterize import GraphAnalysis, common_neighbor_constant
from .poly import spectral_excess_closed_form
from .spectral import block_sums_constant, check_interlacing, quotient_matrix

MAX_WALK_LENGTH = 8


def idempotent_residuals(an: GraphAnalysis) -> dict[str, float]:
    E = an.idem.matrices
    n = an.g.n
    eye = np.eye(n)
    products = np.einsum("iab,jbc->ijac", E, E)
    target = np.zeros_like(products)
    for i in range(len(E)):
        target[i, i] = E[i]
    return {
        "sum_E_minus_I": float(np.abs(E.sum(axis=0) - eye).max()),
        "E_i_E_j": float(np.abs(products - target).max()),
        "sum_theta_E_minus_A": float(np.abs(np.tensordot(an.spectrum.thetas, E, 1) - an.a).max()),
    }


def predistance_residuals(an: GraphAnalysis) -> dict[str, float]:
    ps, s = an.ps, an.spectrum
    d = ps.d
    # Gram matrix from the coefficient form, independent of the stored values
    vals = np.array([p(s.thetas) for p in ps.polys])
    w = np.asarray(s.mults, dtype=float) / s.n
    gram = (vals * w) @ vals.T
    diag = np.diag(gram).copy()
    p0 = vals[:, 0]
    norm = float(np.max(np.abs(diag - p0) / np.maximum(1.0, p0)))
    np.fill_diagonal(gram, 0.0)
    orth = float(np.abs(gram).max())
    rec = 0.0
    x_shift = lambda c: np.concatenate([[0.0], c])  # noqa: E731
    for i in range(d + 1):
        lhs = x_shift(ps.polys[i].coeffs)
        rhs = ps.alpha[i] * ps.polys[i]
        if i > 0:
            rhs = rhs + ps.beta[i - 1] * ps.polys[i - 1]
        if i < d:
            rhs = rhs + ps.gamma[i + 1] * ps.polys[i + 1]
        r = rhs.coeffs
        k = max(len(lhs), len(r))
        diff = np.pad(lhs, (0, k - len(lhs))) - np.pad(r, (0, k - len(r)))
        if i == d:
            # x p_d vanishes on the spectrum but not as a polynomial: compare values
            diff = an.spectrum.thetas * ps.values[d] - (
                ps.alpha[d] * ps.values[d] + (ps.beta[d - 1] * ps.values[d - 1] if d > 0 else 0))
        rec = max(rec, float(np.abs(diff).max()))
    parity = 0.0
    if ps.symmetric:
        for i, p in enumerate(ps.polys):
            wrong = p.coeffs[(i + 1) % 2::2]
            parity = max(parity, float(np.abs(wrong).max()) if wrong.size else 0.0)
    h = ps.hoffman(s.thetas)
    return {
        "orthogonality": orth,
        "normalization": norm,
        "recurrence": rec,
        "parity": parity,
        "hoffman_theta0": abs(float(h[0]) - an.g.n),
        "hoffman_others": float(np.abs(h[1:]).max()) if len(h) > 1 else 0.0,
    }


def symmetry_residuals(an: GraphAnalysis) -> dict[str, float]:
    """Bipartite spectrum symmetry and crossed-multiplicity parity."""
    s = an.spectrum
    spec = float(np.abs(s.thetas + s.thetas[::-1]).max())
    mult = 0.0 if s.mults == s.mults[::-1] else float("inf")
    E = an.idem.matrices
    sign = np.where(an.dm.dist % 2 == 0, 1.0, -1.0)
    parity = float(np.abs(E - sign * E[::-1]).max())
    return {"spectrum": spec, "multiplicities": mult, "crossed_parity": parity}


def walk_count_disagreements(an: GraphAnalysis, max_len: int = MAX_WALK_LENGTH,
                             brute: bool = False, snap_tol: float = 1e-6) -> list[str]:
    from .oracle import brute_force_walk_table

    out = []
    E = an.idem.matrices
    th = an.spectrum.thetas
    for ell in range(max_len + 1):
        exact = an.power(ell)
        spec = np.tensordot(th ** ell, E, 1)
        near = np.rint(spec)
        snapped = np.where(np.abs(spec - near) <= snap_tol, near, np.nan)
        bad = np.argwhere(~(snapped == exact.astype(float)))
        if bad.size:
            u, v = map(int, bad[0])
            out.append(f"l={ell} ({u},{v}): A^l={exact[u, v]} spectral={spec[u, v]!r}")
        if brute:
            table = np.array(brute_force_walk_table(an.g, ell), dtype=object)
            bad = np.argwhere(table != exact)
            if bad.size:
                u, v = map(int, bad[0])
                out.append(f"l={ell} ({u},{v}): A^l={exact[u, v]} brute={table[u, v]}")
    return out


def invariant_violations(an: GraphAnalysis, truth, tol: float = 1e-8,
                         walk_bruteforce: bool = False) -> Iterator[tuple[str, str]]:
    from .oracle import IntersectionArray

    g, s, tols = an.g, an.spectrum, an.tols
    drg = isinstance(truth, IntersectionArray)

    for key, val in idempotent_residuals(an).items():
        if val > tol:
            yield "inv.idempotents", f"{key} = {val:.3e}"
    lm = an.idem.local_multiplicities()
    if np.abs(lm.sum(axis=0) - 1).max() > tol or np.abs(lm.sum(axis=1) - np.array(s.mults)).max() > tol:
        yield "inv.local_multiplicities", "local multiplicity sums off"
    if s.mults[0] != 1:
        yield "inv.m0", f"m_0 = {s.mults[0]} for a connected graph"

    for key, val in predistance_residuals(an).items():
        limit = tols.mat if key.startswith("hoffman") else tol
        if val > limit:
            yield "inv.predistance", f"{key} = {val:.3e}"

    for i in range(min(an.D, an.d) + 1):
        far = an.dm.dist > i
        if far.any() and np.abs(an.pmats[i][far]).max() > tols.mat:
            yield "inv.locality", f"p_{i}(A) nonzero beyond distance {i}"

    if an.d >= 1:
        direct, closed = an.ps.at_theta0(an.d), spectral_excess_closed_form(s)
        if abs(direct - closed) > tols.set:
            yield "inv.excess_routes", f"p_d(theta_0)={direct!r} closed={closed!r}"

    for msg in walk_count_disagreements(an, MAX_WALK_LENGTH, brute=walk_bruteforce, snap_tol=tols.snap):
        yield "inv.walks", msg

    # regularity equivalences
    hof = an.hoffman_matrix
    by_h = bool(np.abs(hof - 1).max() <= tols.mat)
    by_deg = abs(2 * g.edge_count / g.n - s.thetas[0]) <= tols.eig
    if not (by_h == by_deg == an.regular):
        yield "inv.hoffman", f"H(A)=J {by_h}, avg degree = lambda_1 {by_deg}, constant degree {an.regular}"
    if an.regular:
        if np.abs(an.idem[0] - 1 / g.n).max() > tol:
            yield "inv.E0", "E_0 != J/n for a regular graph"
        if an.d >= 1:
            avg = np.count_nonzero(an.dm.dist == an.d) / g.n
            if avg > an.ps.at_theta0(an.d) + tols.set:
                yield "inv.excess_bound", f"average excess {avg} > spectral excess {an.ps.at_theta0(an.d)}"

    # interlacing on the trivial partition and on the bipartition
    lam = an.spectral.decomposition.eigenvalues
    partitions = [[list(range(g.n))]] if g.n > 1 else []
    if an.bip is not None and g.n > 2:
        partitions.append([list(an.bip.part1), list(an.bip.part2)])
    for part in partitions:
        q = quotient_matrix(g, part).as_array()
        mu = np.sort(np.linalg.eigvals(q).real)[::-1]
        rep = check_interlacing(lam, mu, tols.eig)
        if not rep.interlaces:
            yield "inv.interlacing", f"partition {part}: {rep.violations}"
        if rep.tight and not block_sums_constant(g, part):
            yield "inv.interlacing_tight", f"tight interlacing but nonconstant block sums for {part}"

    if an.bip is not None and g.n > 1:
        for key, val in symmetry_residuals(an).items():
            if val > tol:
                yield "inv.bipartite_symmetry", f"{key} = {val:.3e}"
        verdicts = _biregular_verdicts(an)
        if any(v != an.biregular for v in verdicts.values()):
            yield "inv.biregular", f"direct {an.biregular} vs {verdicts}"
        if an.regular and an.D == an.d:
            if an.d == 3 and not drg:
                yield "inv.cor4.3a", "regular bipartite, d=D=3, but not distance-regular"
            if an.d == 4 and common_neighbor_constant(g, an.dm) is not None and not drg:
                yield "inv.cor4.3b", "regular bipartite, d=D=4, constant c_2, but not distance-regular"
        if an.regular and an.d == 4:
            lmv = an.idem.local_multiplicities()
            if np.abs(lmv.max(axis=1) - lmv.min(axis=1)).max() > tols.mat:
                yield "inv.walk_regular5", "regular bipartite with 5 eigenvalues is not walk-regular"

    if an.regular and an.d == 3:
        lmv = an.idem.local_multiplicities()
        if np.abs(lmv.max(axis=1) - lmv.min(axis=1)).max() > tols.mat:
            yield "inv.walk_regular4", "regular with 4 eigenvalues is not walk-regular"

    if drg:
        for i, p in enumerate(an.pmats):
            if np.abs(p - an.dm[i]).max() > tols.mat:
                yield "inv.distance_polynomials", f"p_{i}(A) != A_{i} for a distance-regular graph"
                break


def _biregular_verdicts(an: GraphAnalysis) -> dict[str, bool]:
    from .characterize import (
        check_biregular_hoffman,
        check_biregular_polynomial_P,
        check_biregular_spectral,
    )

    return {
        "prop3.1": check_biregular_spectral(an.g, analysis=an).passed,
        "thm3.2": check_biregular_hoffman(an.g, analysis=an).passed,
        "thm3.3": check_biregular_polynomial_P(an.g, analysis=an).passed,
    }
