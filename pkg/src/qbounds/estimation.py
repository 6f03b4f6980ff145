"""Bayesian MMSE estimator over binomial measurement models.

A binary measurement with per-parameter success probability p1(x), repeated
n times, is summarized by the count k of 1-outcomes (a sufficient statistic,
so the outcome space is n+1 values instead of 2^n sequences). The posterior
mean per k is the MMSE estimate; Bayes risk, the estimator bias curve, and
the variance/bias decomposition are all computed by Simpson quadrature on
the shared grid. No Monte Carlo anywhere, so every quantity is deterministic
and testable to tight tolerances.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GridFunction, ParameterGrid, PriorDensity, TargetFunction
from .errors import DomainError, GridMismatch, ZeroEvidence
from .numerics import composite_simpson, log_binomial_pmf_vector

__all__ = [
    "BinaryMeasurementModel",
    "OutcomeDistribution",
    "MmseReport",
    "outcome_pmf",
    "likelihood_table",
    "posterior",
    "mmse_estimates",
    "mmse_mse",
    "mse_via_decomposition",
]


@dataclass(frozen=True, eq=False)
class BinaryMeasurementModel:
    """Single-shot probability of outcome 1 as a function of the parameter."""

    p1: GridFunction
    label: str = ""

    def __post_init__(self) -> None:
        v = self.p1.values
        if v.min() < 0.0 or v.max() > 1.0:
            raise DomainError("p1 samples must lie in [0, 1]")

    @property
    def grid(self) -> ParameterGrid:
        return self.p1.grid


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Binomial distribution over k = 0..n at one parameter value."""

    n: int
    probs: np.ndarray
    conditioned_on: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", np.asarray(self.probs, dtype=float))
        if len(self.probs) != self.n + 1:
            raise DomainError(f"need n+1 probabilities, got {len(self.probs)}")


@dataclass(frozen=True, eq=False)
class MmseReport:
    """MMSE estimator summary for one repetition count."""

    n: int
    estimates: np.ndarray          # posterior mean per outcome count k
    mse: float                     # Bayes risk of the posterior-mean estimator
    bias_curve: GridFunction       # E[x_hat | x] - x
    zero_evidence: np.ndarray      # mask: outcome k impossible under the model


def likelihood_table(m: BinaryMeasurementModel, n: int) -> np.ndarray:
    """Binomial likelihood p(k|x) on the grid; shape (n+1, grid.m)."""
    if n < 0:
        raise DomainError(f"repetition count must be >= 0, got {n}")
    return log_binomial_pmf_vector(n, m.p1.values)


def outcome_pmf(m: BinaryMeasurementModel, x_index: int, n: int) -> OutcomeDistribution:
    """Distribution of the 1-outcome count for n shots at grid node x_index."""
    if not 0 <= x_index < m.grid.m:
        raise DomainError(f"grid index {x_index} out of range [0, {m.grid.m})")
    probs = likelihood_table(m, n)[:, x_index]
    x = m.grid.nodes()[x_index]
    return OutcomeDistribution(n, probs, float(x))


def _check_shared_grid(m: BinaryMeasurementModel, prior: PriorDensity) -> None:
    if m.grid != prior.grid:
        raise GridMismatch("measurement model and prior must share one grid")


def posterior(
    m: BinaryMeasurementModel, prior: PriorDensity, n: int, k: int
) -> GridFunction:
    """Posterior density p(x|k) by Bayes' rule, Simpson-normalized."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    _check_shared_grid(m, prior)
    joint = likelihood_table(m, n)[k] * prior.samples.values
    evidence = composite_simpson(joint, m.grid.h)
    if evidence <= 0.0:
        raise ZeroEvidence(f"outcome k={k} has zero probability under the model")
    return GridFunction(m.grid, joint / evidence)


def _estimates_and_mask(m: BinaryMeasurementModel, prior: PriorDensity, n: int):
    """Posterior means per outcome count, plus the zero-evidence mask."""
    _check_shared_grid(m, prior)
    grid = m.grid
    x = grid.nodes()
    p = prior.samples.values
    like = likelihood_table(m, n)                       # (n+1, m)
    joint = like * p[None, :]
    w = grid.h / 3.0 * np.where(
        (np.arange(grid.m) % 2 == 1), 4.0, 2.0
    )
    w[0] = w[-1] = grid.h / 3.0                         # Simpson weights
    evidence = joint @ w
    first_moment = joint @ (w * x)

    prior_mean = float(composite_simpson(p * x, grid.h))
    zero = evidence <= 0.0
    estimates = np.where(zero, prior_mean, first_moment / np.where(zero, 1.0, evidence))
    return estimates, zero, like, w, x, p


def mmse_estimates(
    m: BinaryMeasurementModel, prior: PriorDensity, n: int
) -> np.ndarray:
    """Posterior mean x_hat(k) for k = 0..n.

    Zero-evidence outcomes (impossible under the model) are reported as the
    prior mean; they carry zero probability weight in any risk sum.
    """
    estimates, _, _, _, _, _ = _estimates_and_mask(m, prior, n)
    return estimates


def mmse_mse(
    m: BinaryMeasurementModel,
    prior: PriorDensity,
    n: int,
    target: TargetFunction,
) -> MmseReport:
    """Bayes risk and bias curve of the posterior-mean estimator of x.

    mse = \\int p(x) sum_k (x_hat(k) - x)^2 p(k|x) dx, and
    bias_curve(x) = sum_k x_hat(k) p(k|x) - x. Only the identity target is
    supported: the posterior-mean workflow estimates the parameter itself.
    """
    if target.grid != m.grid:
        raise GridMismatch("target must live on the measurement grid")
    if not target.is_identity():
        raise DomainError("MMSE simulation is defined for the identity target only")
    estimates, zero, like, _, x, p = _estimates_and_mask(m, prior, n)

    sq = (estimates[:, None] - x[None, :]) ** 2         # (n+1, m)
    risk_density = p * np.einsum("km,km->m", like, sq)
    mse = float(composite_simpson(risk_density, m.grid.h))

    conditional_mean = estimates @ like                 # E[x_hat | x]
    bias_curve = GridFunction(m.grid, conditional_mean - x)
    return MmseReport(n, estimates, mse, bias_curve, zero)


def mse_via_decomposition(
    m: BinaryMeasurementModel, prior: PriorDensity, n: int
) -> float:
    """Bayes risk via the variance-plus-squared-bias decomposition.

    \\int p(x) [ Var(x_hat | x) + bias(x)^2 ] dx; independent route used to
    cross-check mmse_mse.
    """
    estimates, _, like, _, x, p = _estimates_and_mask(m, prior, n)
    conditional_mean = estimates @ like
    dev = (estimates[:, None] - conditional_mean[None, :]) ** 2
    var = np.einsum("km,km->m", like, dev)
    bias = conditional_mean - x
    return float(composite_simpson(p * (var + bias**2), m.grid.h))
