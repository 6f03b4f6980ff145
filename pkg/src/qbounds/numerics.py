"""Low-level numerical kernels.

Composite Simpson quadrature, a pivot-free Thomas solve for tridiagonal
systems, and log-domain binomial probabilities. Everything here works on
plain arrays; grid-aware wrappers live where the grid types do.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import DomainError, InvalidGrid, SingularSystem

if TYPE_CHECKING:  # pragma: no cover
    from .core import GridFunction

__all__ = [
    "TridiagonalSystem",
    "composite_simpson",
    "simpson_integrate",
    "solve_tridiagonal",
    "log_binomial_pmf",
    "binomial_pmf",
    "log_binomial_pmf_vector",
]


def composite_simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson rule over uniformly spaced samples.

    Requires an odd number of samples (an even number of panels). Exact for
    cubics on each panel pair.
    """
    y = np.asarray(values, dtype=float)
    m = y.shape[-1]
    if m < 3 or m % 2 == 0:
        raise InvalidGrid(f"Simpson rule needs an odd sample count >= 3, got {m}")
    acc = y[..., 0] + y[..., -1] + 4.0 * y[..., 1:-1:2].sum(axis=-1) \
        + 2.0 * y[..., 2:-2:2].sum(axis=-1)
    return acc * (h / 3.0)


def simpson_integrate(f: "GridFunction") -> float:
    """Integrate a grid function over its support with composite Simpson."""
    return float(composite_simpson(f.values, f.grid.h))


@dataclass(frozen=True, eq=False)
class TridiagonalSystem:
    """Tridiagonal linear system A u = rhs.

    sub is the subdiagonal (length m-1), diag the main diagonal (length m),
    sup the superdiagonal (length m-1).
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self) -> None:
        for name in ("sub", "diag", "sup", "rhs"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        m = len(self.diag)
        if len(self.sub) != m - 1 or len(self.sup) != m - 1 or len(self.rhs) != m:
            raise InvalidGrid(
                "tridiagonal bands must have lengths (m-1, m, m-1, m), got "
                f"({len(self.sub)}, {m}, {len(self.sup)}, {len(self.rhs)})"
            )

    def matvec(self, u: np.ndarray) -> np.ndarray:
        """A @ u, for residual checks."""
        out = self.diag * u
        out[:-1] += self.sup * u[1:]
        out[1:] += self.sub * u[:-1]
        return out


# Pivot magnitude below this fraction of the row scale aborts elimination.
_PIVOT_TOL = 1e-14


def solve_tridiagonal(sys: TridiagonalSystem) -> np.ndarray:
    """Thomas algorithm (no pivoting).

    The BVP assembler only produces strictly diagonally dominant systems, so
    pivoting is unnecessary; a vanishing pivot raises SingularSystem.
    """
    m = len(sys.diag)
    sub, diag, sup, rhs = sys.sub, sys.diag, sys.sup, sys.rhs
    c = np.empty(m - 1)
    d = np.empty(m)
    row_scale = np.abs(diag).copy()
    row_scale[:-1] += np.abs(sup)
    row_scale[1:] += np.abs(sub)

    piv = diag[0]
    if abs(piv) <= _PIVOT_TOL * max(row_scale[0], 1.0):
        raise SingularSystem("zero pivot in row 0")
    c[0] = sup[0] / piv
    d[0] = rhs[0] / piv
    for i in range(1, m):
        piv = diag[i] - sub[i - 1] * c[i - 1]
        if abs(piv) <= _PIVOT_TOL * max(row_scale[i], 1.0):
            raise SingularSystem(f"vanishing pivot in row {i}")
        if i < m - 1:
            c[i] = sup[i] / piv
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / piv

    u = np.empty(m)
    u[-1] = d[-1]
    for i in range(m - 2, -1, -1):
        u[i] = d[i] - c[i] * u[i + 1]
    return u


def log_binomial_pmf(n: int, k: int, p1: float) -> float:
    """C(n,k) * p1^k * (1-p1)^(n-k), accumulated in log space.

    Returns the probability itself (not its log). Log-gamma accumulation of
    the binomial coefficient keeps n ~ 10^3 regimes finite. Degenerate p1 in
    {0, 1} yields exact 0/1 values.
    """
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not 0.0 <= p1 <= 1.0:
        raise DomainError(f"p1 must lie in [0, 1], got {p1}")
    log_coeff = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    # xlogy(0, 0) = 0 handles the deterministic-outcome corners exactly.
    log_p = xlogy(k, p1) + xlogy(n - k, 1.0 - p1)
    if np.isneginf(log_p):
        return 0.0
    return float(np.exp(log_coeff + log_p))


def binomial_pmf(n: int, k: int, p1: float) -> float:
    """Alias of log_binomial_pmf; the return value is a plain probability."""
    return log_binomial_pmf(n, k, p1)


def log_binomial_pmf_vector(n: int, p1: np.ndarray) -> np.ndarray:
    """Full binomial likelihood table over a vector of success probabilities.

    Returns shape (n+1, len(p1)); row k is C(n,k) p1^k (1-p1)^(n-k) evaluated
    elementwise, with the same log-space arithmetic as log_binomial_pmf.
    """
    p1 = np.asarray(p1, dtype=float)
    if p1.min() < 0.0 or p1.max() > 1.0:
        raise DomainError("p1 samples must lie in [0, 1]")
    k = np.arange(n + 1)[:, None]
    log_coeff = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    log_p = xlogy(k, p1[None, :]) + xlogy(n - k, 1.0 - p1[None, :])
    out = np.exp(log_coeff + log_p)
    out[np.isneginf(log_p)] = 0.0
    return out
