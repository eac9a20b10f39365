"""Adaptive per-interval bounds on the Lipschitz constant of f'.

Each interval between consecutive trials gets a curvature estimate v that is
exact for quadratics and approaches |f''| on refinement.  The bound used by
the adaptive search blends the local estimate (a three-interval sliding
window), a width-scaled share of the global estimate, and a small floor:

    m_i = r * max(lambda_i, gamma_i, xi)

with r > 1 a reliability multiplier and xi > 0 covering the case of f'
locally constant (v = 0 there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import DegenerateInterval

if TYPE_CHECKING:  # pragma: no cover
    from .solver import Trial

__all__ = ["EstimationParams", "CurvatureTable", "interval_curvature", "build_curvature_table"]

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True, slots=True)
class EstimationParams:
    """Reliability multiplier r > 1 and curvature floor xi > 0."""

    r: float = 1.2
    xi: float = 1e-6

    def __post_init__(self) -> None:
        if not self.r > 1.0:
            raise ValueError(f"r={self.r} must be > 1")
        if not self.xi > 0.0:
            raise ValueError(f"xi={self.xi} must be > 0")


@dataclass(frozen=True, slots=True)
class CurvatureTable:
    """Per-interval estimates for the current trial set.

    Entry p of each list describes the interval between trials p and p+1.
    """

    v: tuple[float, ...]
    m_global: float
    x_max_gap: float
    lam: tuple[float, ...]
    gamma: tuple[float, ...]
    m: tuple[float, ...]


def _curvature(x_left: float, x_right: float, z_left: float, z_right: float,
               dz_left: float, dz_right: float) -> float:
    h = x_right - x_left
    if h < 1e3 * _EPS * max(1.0, abs(x_left), abs(x_right)):
        raise DegenerateInterval(f"gap {h} at x={x_left} too small for curvature estimation")
    bracket = 2.0 * (z_left - z_right) + (dz_right + dz_left) * h
    d = math.hypot(bracket, (dz_right - dz_left) * h)
    return (abs(bracket) + d) / (h * h)


def interval_curvature(trial_left: "Trial", trial_right: "Trial") -> float:
    """Curvature estimate v >= 0 for the interval between two trials."""
    return _curvature(trial_left.x, trial_right.x, trial_left.z, trial_right.z,
                      trial_left.dz, trial_right.dz)


def build_curvature_table(trials: Sequence["Trial"], params: EstimationParams) -> CurvatureTable:
    """Compute v, lambda, gamma and the final bounds m for every interval.

    trials must be at least two, strictly increasing in x.  All quantities are
    recomputed from scratch for the full set each call.
    """
    n = len(trials)
    if n < 2:
        raise ValueError("need at least two trials")
    v = [interval_curvature(trials[p], trials[p + 1]) for p in range(n - 1)]
    gaps = [trials[p + 1].x - trials[p].x for p in range(n - 1)]
    m_global = max(v)
    x_max = max(gaps)
    lam = [max(v[max(0, p - 1):p + 2]) for p in range(n - 1)]
    gamma = [m_global * gaps[p] / x_max for p in range(n - 1)]
    m = [params.r * max(lam[p], gamma[p], params.xi) for p in range(n - 1)]
    return CurvatureTable(v=tuple(v), m_global=m_global, x_max_gap=x_max,
                          lam=tuple(lam), gamma=tuple(gamma), m=tuple(m))
