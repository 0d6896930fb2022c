"""Numerical tolerances.

``tol`` style verdict thresholds (scalar equalities, matrix identities,
eigenvalue comparisons) share one default that can be overridden with the
``BS_TOL`` environment variable or the CLI ``--tol`` flag.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class Tolerances:
    eig: float = DEFAULT_TOL        # eigenvalue comparisons
    mat: float = DEFAULT_TOL        # entrywise matrix identities
    set: float = DEFAULT_TOL        # scalar equalities (excess, averages)
    group: float = 1e-7             # relative gap for merging eigenvalues
    sym: float = 1e-12              # symmetry check on solver input
    pos: float = 1e-12              # relative positivity floor for p_i(theta_0)
    snap: float = 1e-6              # distance to nearest integer for snapping

    def with_verdict_tol(self, tol: float) -> Tolerances:
        if not tol > 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        return replace(self, eig=tol, mat=tol, set=tol)


def default_tolerances() -> Tolerances:
    env = os.environ.get("BS_TOL")
    if env:
        return Tolerances().with_verdict_tol(float(env))
    return Tolerances()
