"""Shannon, Renyi, and relative entropies plus the weighted uncertainty functional.

All entropies default to base-2 logarithms (bits); pass ``unit="nats"`` for
natural logarithms.  Probabilities below 1e-15 are treated as exact zeros so
that 0*log(0) = 0 by continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import InputError, MeasurementPair, ParameterError, QuantumState, outcome_distribution

LN2 = math.log(2.0)
ZERO_CUTOFF = 1e-15


@dataclass(frozen=True)
class Weights:
    """Nonnegative weight pair (lam, mu) of a linear uncertainty relation."""

    lam: float
    mu: float

    def __post_init__(self):
        lam, mu = float(self.lam), float(self.mu)
        if not (math.isfinite(lam) and math.isfinite(mu)):
            raise ParameterError("weights must be finite")
        if lam < 0 or mu < 0:
            raise ParameterError(f"weights must be nonnegative, got ({lam}, {mu})")
        if lam + mu <= 0:
            raise ParameterError("weights must not both be zero")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    def scaled(self, t: float) -> "Weights":
        return Weights(t * self.lam, t * self.mu)

    def normalized(self) -> "Weights":
        tot = self.lam + self.mu
        return Weights(self.lam / tot, self.mu / tot)


def _unit_factor(unit: str) -> float:
    if unit == "bits":
        return 1.0
    if unit == "nats":
        return LN2
    raise ParameterError(f"unit must be 'bits' or 'nats', got {unit!r}")


def shannon(p, unit: str = "bits") -> float:
    """-sum p_i log2 p_i with 0*log(0) = 0; lies in [0, log2 d]."""
    p = np.asarray(p, dtype=np.float64)
    mask = p > ZERO_CUTOFF
    h = float(-np.sum(p[mask] * np.log2(p[mask])))
    return max(0.0, h) * _unit_factor(unit)


def renyi(p, alpha: float, unit: str = "bits") -> float:
    """Order-alpha entropy (alpha/(1-alpha)) log2 ||p||_alpha; alpha=inf allowed."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ParameterError(f"Renyi order must be positive, got {alpha}")
    if alpha == 1.0:
        raise ParameterError("Renyi order 1 is the Shannon entropy; call shannon()")
    p = np.asarray(p, dtype=np.float64)
    if math.isinf(alpha):
        return float(-np.log2(np.max(p))) * _unit_factor(unit)
    q = p[p > ZERO_CUTOFF]
    m = np.max(q)
    # factor out the max for stable large-alpha powers
    log_norm = np.log2(m) + np.log2(np.sum((q / m) ** alpha)) / alpha
    h = float(alpha / (1.0 - alpha) * log_norm)
    return max(0.0, h) * _unit_factor(unit)


def relative_entropy(p, q, unit: str = "bits") -> float:
    """sum p_i log2(p_i / q_i); +inf when supp(p) escapes supp(q)."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise InputError(f"length mismatch: {p.shape} vs {q.shape}")
    mask = p > ZERO_CUTOFF
    if np.any(q[mask] <= ZERO_CUTOFF):
        return math.inf
    d = float(np.sum(p[mask] * (np.log2(p[mask]) - np.log2(q[mask]))))
    return max(0.0, d) * _unit_factor(unit)


def weighted_uncertainty(
    pair: MeasurementPair, state: QuantumState, w: Weights, unit: str = "bits"
) -> float:
    """lam * H(X|state) + mu * H(Y|state)."""
    px = outcome_distribution(state, pair, "X")
    py = outcome_distribution(state, pair, "Y")
    return w.lam * shannon(px, unit) + w.mu * shannon(py, unit)
