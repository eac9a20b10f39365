"""First-root-from-the-left search.

Two variants share one iteration engine:

  a1  uses a single global curvature bound K for every interval;
  a2  re-estimates a local bound per interval from the trials seen so far.

Each iteration orders the trials, restricts attention to the effective set
(everything up to the first negative function value), builds the quadratic
minorant on each interval left to right, and either subdivides the interval
whose minorant dips lowest (all characteristics positive) or places the next
trial at the leftmost zero of the first minorant that reaches zero.  The
iteration stops when the selected interval is no wider than sigma.

A sequential sigma-step mesh scan (`grid_search`) is included as the baseline
the geometric methods are benchmarked against.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .curvature import EstimationParams, build_curvature_table
from .errors import BadInitialCondition, NonFinite
from .problems import Problem
from .support import (
    RIGHT_END,
    Characteristic,
    IntervalData,
    SupportFunction,
    build_support,
    characteristic,
    interior_stationary_point,
    leftmost_zero,
)

__all__ = [
    "Trial",
    "SolverConfig",
    "SearchState",
    "Outcome",
    "FirstRootFound",
    "NoRootGlobalMin",
    "PrecisionExhausted",
    "BudgetExhausted",
    "TraceRecord",
    "SolveResult",
    "initialize",
    "effective_points",
    "scan_characteristics",
    "next_trial_point",
    "stop_check",
    "step",
    "solve",
    "grid_search",
]

# Floor applied to the a1 bound so a caller-supplied K of zero (exactly linear
# objective) cannot degenerate the minorant construction.
_MIN_CURVATURE = 1e-6

# Classification of a scanned interval: where the next trial would be placed.
_AT_LEFT_KNOT = "left_knot"      # next point y'
_AT_INTERIOR = "interior"        # next point x_hat
_AT_RIGHT_KNOT = "right_knot"    # next point y


@dataclass(frozen=True, slots=True)
class Trial:
    """One evaluation of f and f': abscissa, values, and birth iteration."""

    x: float
    z: float
    dz: float
    birth: int


@dataclass(frozen=True)
class SolverConfig:
    """Method selection and accuracy/budget settings.

    sigma_abs overrides sigma_fraction * (b - a) when given.  a1 requires a
    curvature bound `lipschitz`; a2 uses the adaptive estimation parameters.
    """

    method: Literal["a1", "a2"] = "a2"
    lipschitz: float | None = None
    params: EstimationParams = field(default_factory=EstimationParams)
    sigma_fraction: float = 1e-4
    sigma_abs: float | None = None
    max_trials: int = 10_000

    def __post_init__(self) -> None:
        if self.method not in ("a1", "a2"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.sigma_abs is not None and not self.sigma_abs > 0.0:
            raise ValueError("sigma_abs must be positive")
        if not self.sigma_fraction > 0.0:
            raise ValueError("sigma_fraction must be positive")
        if self.max_trials < 2:
            raise ValueError("max_trials must be at least 2")
        if self.method == "a1" and self.lipschitz is not None and self.lipschitz < 0.0:
            raise ValueError("lipschitz bound must be >= 0")

    def resolve_sigma(self, a: float, b: float) -> float:
        return self.sigma_abs if self.sigma_abs is not None else self.sigma_fraction * (b - a)


@dataclass(frozen=True, slots=True)
class _ScanEntry:
    support: SupportFunction
    char: Characteristic
    klass: str


@dataclass
class SearchState:
    """Mutable search state: sorted trials plus the per-iteration scan cache."""

    trials: list[Trial]
    a: float
    b: float
    sigma: float
    k: int = 0
    b_n: float = 0.0
    scan: list[_ScanEntry] = field(default_factory=list)
    first_nonpositive: int | None = None

    def interval_bounds(self, p: int) -> tuple[float, float]:
        return self.trials[p].x, self.trials[p + 1].x


# ---------------------------------------------------------------------------
# Outcomes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Outcome:
    trials_used: int

    tag = "outcome"


@dataclass(frozen=True)
class FirstRootFound(Outcome):
    """x_sigma approximates the first root: f(x_sigma) >= 0 and the root lies
    within the final subdivided interval."""

    x_sigma: float = 0.0

    tag = "first_root"


@dataclass(frozen=True)
class NoRootGlobalMin(Outcome):
    """No sign change detected and every minorant stayed positive; x_best is
    the best observed approximation of the global minimizer."""

    x_best: float = 0.0
    f_best: float = 0.0

    tag = "no_root_global_min"


@dataclass(frozen=True)
class PrecisionExhausted(Outcome):
    """A minorant still reaches zero inside `interval` whose endpoints are both
    positive, but the interval is already narrower than sigma; restart with a
    smaller sigma to resolve it."""

    interval: tuple[float, float] = (0.0, 0.0)

    tag = "precision_exhausted"


@dataclass(frozen=True)
class BudgetExhausted(Outcome):
    best_so_far: float = 0.0

    tag = "budget_exhausted"


@dataclass(frozen=True, slots=True)
class TraceRecord:
    """One line of the solve trace (consumed by the CLI and the bench)."""

    iter: int
    x: float
    f: float
    fprime: float | None
    k: int
    b_n: float

    def as_dict(self) -> dict:
        return {"iter": self.iter, "x": self.x, "f": self.f,
                "fprime": self.fprime, "k": self.k, "b_n": self.b_n}


@dataclass(frozen=True)
class SolveResult:
    outcome: Outcome
    trace: list[TraceRecord]


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def _evaluate(problem: Problem, x: float, birth: int) -> Trial:
    z = float(problem.f(x))
    dz = float(problem.df(x))
    if not (math.isfinite(z) and math.isfinite(dz)):
        raise NonFinite(f"non-finite evaluation at x={x}: f={z}, f'={dz}")
    return Trial(x=x, z=z, dz=dz, birth=birth)


def initialize(problem: Problem, config: SolverConfig) -> SearchState:
    """Evaluate the two endpoint trials and set up the state.

    Raises BadInitialCondition when f(a) <= 0: the search presumes a strictly
    positive left margin.
    """
    a, b = problem.a, problem.b
    left = _evaluate(problem, a, 0)
    if left.z <= 0.0:
        raise BadInitialCondition(f"f({a}) = {left.z} must be > 0")
    right = _evaluate(problem, b, 1)
    state = SearchState(trials=[left, right], a=a, b=b,
                        sigma=config.resolve_sigma(a, b))
    state.k, state.b_n = effective_points(state)
    return state


def effective_points(state: SearchState) -> tuple[int, float]:
    """Count k of trials up to and including the first negative value (all of
    them when none is negative), and the moving right margin b_n = x_k."""
    trials = state.trials
    k = len(trials)
    for i in range(1, len(trials)):
        if trials[i].z < 0.0:
            k = i + 1
            break
    return k, trials[k - 1].x


def _interval_bounds_m(state: SearchState, config: SolverConfig) -> list[float]:
    if config.method == "a1":
        if config.lipschitz is None:
            raise ValueError("a1 requires a lipschitz bound (config.lipschitz)")
        m = max(config.lipschitz, _MIN_CURVATURE)
        return [m] * (state.k - 1)
    table = build_curvature_table(state.trials[:state.k], config.params)
    return list(table.m)


def scan_characteristics(state: SearchState, bounds: list[float]) -> SearchState:
    """Build minorants left to right over the effective intervals, classify
    each, and stop at the first one whose characteristic is <= 0."""
    state.scan = []
    state.first_nonpositive = None
    for p in range(state.k - 1):
        lo, hi = state.trials[p], state.trials[p + 1]
        sf = build_support(IntervalData(
            x_left=lo.x, x_right=hi.x, z_left=lo.z, z_right=hi.z,
            dz_left=lo.dz, dz_right=hi.dz, m=bounds[p]))
        char = characteristic(sf)
        if interior_stationary_point(sf) is not None:
            klass = _AT_INTERIOR
        elif char.kind == RIGHT_END:
            klass = _AT_RIGHT_KNOT
        else:
            klass = _AT_LEFT_KNOT
        state.scan.append(_ScanEntry(support=sf, char=char, klass=klass))
        if char.R <= 0.0:
            state.first_nonpositive = p
            break
    return state


def _select_interval(state: SearchState) -> int:
    if state.first_nonpositive is not None:
        return state.first_nonpositive
    best = 0
    for p in range(1, len(state.scan)):
        if state.scan[p].char.R < state.scan[best].char.R:
            best = p
    return best


def next_trial_point(state: SearchState) -> float:
    """Candidate abscissa for the next trial.

    With a non-positive characteristic present this is the leftmost zero of
    that interval's minorant; otherwise the knot or stationary point of the
    interval with minimal characteristic (ties to the leftmost interval).
    """
    p = _select_interval(state)
    entry = state.scan[p]
    if state.first_nonpositive is not None:
        return leftmost_zero(entry.support)
    if entry.klass == _AT_INTERIOR:
        return -entry.support.b / entry.support.data.m
    if entry.klass == _AT_RIGHT_KNOT:
        return entry.support.y
    return entry.support.y_prime


def stop_check(state: SearchState, chosen_interval: int, sigma: float) -> bool:
    """True when the selected interval is narrower than the accuracy sigma;
    evaluated before the candidate trial is spent."""
    lo, hi = state.interval_bounds(chosen_interval)
    return hi - lo <= sigma


def _clamp_candidate(state: SearchState, p: int, x: float) -> float:
    # Keep the new trial strictly inside its interval: a candidate landing on
    # (or rounding past) an endpoint would duplicate an existing abscissa and
    # stall the subdivision.
    lo, hi = state.interval_bounds(p)
    width = hi - lo
    margin = 0.5 * state.sigma
    if x <= lo + margin:
        return lo + 0.25 * width
    if x >= hi - margin:
        return hi - 0.25 * width
    return x


def _best_observed(state: SearchState) -> tuple[float, float]:
    best = min(state.trials, key=lambda t: (t.z, t.x))
    return best.x, best.z


def _finish(state: SearchState) -> Outcome:
    n_used = len(state.trials)
    if state.trials[state.k - 1].z < 0.0:
        return FirstRootFound(trials_used=n_used, x_sigma=state.trials[state.k - 2].x)
    if state.first_nonpositive is not None:
        return PrecisionExhausted(trials_used=n_used,
                                  interval=state.interval_bounds(state.first_nonpositive))
    x_best, f_best = _best_observed(state)
    return NoRootGlobalMin(trials_used=n_used, x_best=x_best, f_best=f_best)


def step(state: SearchState, problem: Problem, config: SolverConfig) -> Outcome | None:
    """One full iteration; returns an Outcome when the search terminates and
    None when a trial was added and the search continues."""
    state.k, state.b_n = effective_points(state)
    bounds = _interval_bounds_m(state, config)
    scan_characteristics(state, bounds)
    chosen = _select_interval(state)
    candidate = next_trial_point(state)
    if stop_check(state, chosen, state.sigma):
        return _finish(state)
    if len(state.trials) >= config.max_trials:
        if state.trials[state.k - 1].z < 0.0:
            best = state.trials[state.k - 2].x
        else:
            best = _best_observed(state)[0]
        return BudgetExhausted(trials_used=len(state.trials), best_so_far=best)
    candidate = _clamp_candidate(state, chosen, candidate)
    trial = _evaluate(problem, candidate, birth=len(state.trials))
    pos = bisect.bisect_left([t.x for t in state.trials], trial.x)
    state.trials.insert(pos, trial)
    state.k, state.b_n = effective_points(state)
    return None


def _trace_record(trial: Trial, k: int, b_n: float) -> TraceRecord:
    return TraceRecord(iter=trial.birth, x=trial.x, f=trial.z, fprime=trial.dz,
                       k=k, b_n=b_n)


def solve(problem: Problem, config: SolverConfig) -> SolveResult:
    """Run the search to termination; the trace lists every trial in birth
    order with the effective count and right margin after its insertion."""
    state = initialize(problem, config)
    trace = [_trace_record(t, state.k, state.b_n) for t in state.trials]
    while True:
        outcome = step(state, problem, config)
        if outcome is None:
            newest = max(state.trials, key=lambda t: t.birth)
            trace.append(_trace_record(newest, state.k, state.b_n))
            continue
        return SolveResult(outcome=outcome, trace=trace)


# ---------------------------------------------------------------------------
# Grid baseline
# ---------------------------------------------------------------------------

def _grid_cap(a: float, b: float, sigma: float) -> int:
    q = (b - a) / sigma
    return int(math.ceil(q - 1e-9 * max(1.0, q)))


def grid_search(problem: Problem, sigma: float, cap: int | None = None,
                chunk: int = 4096) -> SolveResult:
    """Mesh scan from the left margin in sigma steps until f turns negative.

    The margin itself is presumed positive and not spent as a trial: the j-th
    evaluation happens at a + j*sigma, so trials_used equals the number of
    sigma steps taken.  Without a sign change the scan stops after `cap`
    evaluations (default: enough to cover the whole interval) and reports the
    best observed point.  Evaluations are performed in vectorized chunks.
    """
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    a, b = problem.a, problem.b
    if cap is None:
        cap = _grid_cap(a, b, sigma)
    trace: list[TraceRecord] = []
    best_x, best_f = a, math.inf
    j = 1
    while j <= cap:
        hi = min(j + chunk - 1, cap)
        idx = np.arange(j, hi + 1, dtype=float)
        xs = a + idx * sigma
        fs = np.asarray(problem.f(xs), dtype=float)
        neg = np.nonzero(fs < 0.0)[0]
        last = int(neg[0]) if len(neg) else len(xs) - 1
        for off in range(last + 1):
            trace.append(TraceRecord(iter=int(idx[off]), x=float(xs[off]),
                                     f=float(fs[off]), fprime=None,
                                     k=int(idx[off]), b_n=float(xs[off])))
        block_min = int(np.argmin(fs[:last + 1]))
        if fs[block_min] < best_f:
            best_f = float(fs[block_min])
            best_x = float(xs[block_min])
        if len(neg):
            j_neg = int(idx[neg[0]])
            x_sigma = a + (j_neg - 1) * sigma
            return SolveResult(
                outcome=FirstRootFound(trials_used=j_neg, x_sigma=x_sigma),
                trace=trace)
        j = hi + 1
    return SolveResult(
        outcome=NoRootGlobalMin(trials_used=cap, x_best=best_x, f_best=best_f),
        trace=trace)
