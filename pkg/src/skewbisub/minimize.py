"""Projected subgradient descent on the extension, with chain-support rounding.

The continuous problem (minimize the extension over the box) and the
discrete one share their optimum when the function is skew bisubmodular, so
the loop is plain projected subgradient descent in floating point, while
every iterate's chain support is evaluated exactly and the best discrete
point seen so far is carried as the answer.  The support of any iterate is
a certificate source: the extension value there is a convex combination of
the support values, so the support minimum can only undercut it.

Floats drive the trajectory; every reported value is an exact rational
re-evaluation.  Runs are deterministic given the configuration.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .functions import ValueOracle
from .lattice import (
    Alpha,
    ArityMismatchError,
    Label,
    Labeling,
    NEG,
    POS,
    ZERO,
    format_labeling,
)
from .lovasz import (
    FractionalPoint,
    _refinement_order,
    extension_value,
    subgradient,
)
from .rationals import format_rational

#: Default denominator bound when snapping float iterates back to rationals.
DEFAULT_DENOMINATOR_LIMIT = 1 << 20


@dataclass(frozen=True)
class FixedStep:
    """Constant step size gamma at every iteration."""

    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"step size must be positive, got {self.gamma}")


@dataclass(frozen=True)
class DiminishingStep:
    """Step size gamma0 / sqrt(t); gamma0=None means the sampled heuristic.

    The heuristic scales the first step to the box: gamma0 = (box diagonal)
    / (estimated subgradient norm), the norm estimated from f at the 2n+1
    canonical points (all-Zero plus the unit Pos/Neg pattern per
    coordinate).  Falls back to 1 when the estimate is zero, e.g. for a
    constant function.  A value-scale gamma0 (for instance the plain range
    of f) makes the first steps overshoot the box by orders of magnitude
    and the 1/sqrt(t) decay cannot recover within a desk-scale iteration
    budget; diameter-over-gradient is the standard calibration.
    """

    gamma0: Optional[float] = None

    def __post_init__(self) -> None:
        if self.gamma0 is not None and not self.gamma0 > 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")


StepRule = Union[FixedStep, DiminishingStep]


@dataclass(frozen=True)
class MinimizeConfig:
    """Knobs for one minimization run.

    max_iters None means 200 * n^2.  tolerance 0 (the default) runs the full
    iteration budget; a positive tolerance stops once the best discrete value
    is certified within it via the subgradient lower bound.  When no start
    point is given, a seed draws one uniformly from the grid, and with
    neither the run starts at the zero vector.
    """

    max_iters: Optional[int] = None
    step: StepRule = DiminishingStep()
    tolerance: Fraction = Fraction(0)
    seed: Optional[int] = None
    start: Optional[FractionalPoint] = None

    def __post_init__(self) -> None:
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        object.__setattr__(self, "tolerance", Fraction(self.tolerance))
        if self.tolerance < 0:
            raise ValueError(f"tolerance must be >= 0, got {self.tolerance}")


@dataclass
class MinimizeReport:
    """Outcome of a run: the best discrete point, exact value, and accounting."""

    minimizer: Labeling
    value: Fraction
    iterations_used: int
    oracle_calls: int
    trajectory_best: List[Tuple[int, Fraction]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "minimizer": format_labeling(self.minimizer),
            "value": format_rational(self.value),
            "iterations": self.iterations_used,
            "oracle_calls": self.oracle_calls,
            "trace": [[t, format_rational(v)] for t, v in self.trajectory_best],
        }


def project_box(
    vec: Sequence[float],
    alpha: Alpha,
    max_denominator: int = DEFAULT_DENOMINATOR_LIMIT,
) -> FractionalPoint:
    """Clamp componentwise to [-alpha, 1] and snap to bounded-denominator rationals.

    The snap rounds to the fixed max_denominator grid; a final exact clamp
    re-imposes the box, since -alpha need not be a grid point.
    """
    lo = -alpha.value
    coords = []
    for j, v in enumerate(vec):
        if not math.isfinite(v):
            raise RuntimeError(f"non-finite coordinate {j} = {v!r}: minimizer bug")
        clamped = min(1.0, max(-1.0, v))
        q = Fraction(round(clamped * max_denominator), max_denominator)
        if q < lo:
            q = lo
        elif q > 1:
            q = Fraction(1)
        coords.append(q)
    return FractionalPoint(tuple(coords), alpha)


def _random_start(n: int, alpha: Alpha, seed: int) -> FractionalPoint:
    rng = random.Random(seed)
    denominator = 1024
    lo = -(alpha.value.numerator * denominator // alpha.value.denominator)
    coords = tuple(
        Fraction(rng.randint(lo, denominator), denominator) for _ in range(n)
    )
    return FractionalPoint(coords, alpha)


class _MemoOracle:
    """Per-run cache of oracle values, exact and float-rendered."""

    def __init__(self, f: ValueOracle):
        self._f = f
        self._cache: Dict[Labeling, Tuple[Fraction, float]] = {}

    def value(self, u: Labeling) -> Tuple[Fraction, float]:
        hit = self._cache.get(u)
        if hit is None:
            exact = self._f.evaluate(u)
            hit = (exact, float(exact))
            self._cache[u] = hit
        return hit


def _heuristic_gamma0(memo: _MemoOracle, n: int, alpha: Alpha) -> float:
    # Box diagonal over an estimate of the subgradient norm, sampled from
    # the unit Pos/Neg value differences (Neg differences carry the 1/alpha
    # rescaling that the subgradient itself applies).
    base = memo.value((ZERO,) * n)[1]
    inv_alpha = 1.0 / float(alpha.value)
    norm_sq = 0.0
    for j in range(n):
        unit = [ZERO] * n
        unit[j] = POS
        d_pos = abs(memo.value(tuple(unit))[1] - base)
        unit[j] = NEG
        d_neg = abs(memo.value(tuple(unit))[1] - base) * inv_alpha
        norm_sq += max(d_pos, d_neg) ** 2
    if norm_sq <= 0.0:
        return 1.0
    diameter = (1.0 + float(alpha.value)) * math.sqrt(n)
    return diameter / math.sqrt(norm_sq)


def minimize(f: ValueOracle, cfg: MinimizeConfig = MinimizeConfig()) -> MinimizeReport:
    """Run projected subgradient descent and return the best discrete point.

    The optimality guarantee assumes f is skew bisubmodular; the loop runs
    (and the convex-combination rounding bound still holds) regardless.
    """
    n = f.arity
    alpha = f.alpha
    if cfg.start is not None:
        if len(cfg.start.coords) != n:
            raise ArityMismatchError(
                f"start point dimension {len(cfg.start.coords)} != oracle arity {n}"
            )
        if cfg.start.alpha != alpha:
            raise ValueError("start point alpha differs from the oracle's")
        start = cfg.start
    elif cfg.seed is not None:
        start = _random_start(n, alpha, cfg.seed)
    else:
        start = FractionalPoint.zero(n, alpha)

    max_iters = cfg.max_iters if cfg.max_iters is not None else 200 * n * n
    calls_before = f.call_count
    memo = _MemoOracle(f)

    if isinstance(cfg.step, FixedStep):
        gamma0 = cfg.step.gamma
        diminishing = False
    else:
        gamma0 = (
            cfg.step.gamma0
            if cfg.step.gamma0 is not None
            else _heuristic_gamma0(memo, n, alpha)
        )
        diminishing = True

    inv_alpha = 1.0 / float(alpha.value)
    alpha_lo = -alpha.value
    zero_labeling = (ZERO,) * n

    best_value: Optional[Fraction] = None
    best_labeling: Optional[Labeling] = None
    trajectory: List[Tuple[int, Fraction]] = []

    def consider(u: Labeling, t: int) -> None:
        nonlocal best_value, best_labeling
        exact = memo.value(u)[0]
        if best_value is None or exact < best_value:
            best_value = exact
            best_labeling = u
            trajectory.append((t, exact))

    def walk(x: FractionalPoint, t: int) -> List[float]:
        # One pass along the maximal chain at x: feeds the best-so-far
        # candidates (the support atoms are the sign-pattern prefixes at
        # each distinct positive magnitude, plus all-Zero while mass
        # remains) and returns the float subgradient used by the next step.
        order, magnitudes, sides = _refinement_order(x)
        current: List[Label] = [ZERO] * n
        previous = memo.value(zero_labeling)[1]
        g_float = [0.0] * n
        for idx, j in enumerate(order):
            current[j] = sides[j]
            u = tuple(current)
            value = memo.value(u)[1]
            step_value = value - previous
            g_float[j] = step_value if x.coords[j] >= 0 else -step_value * inv_alpha
            previous = value
            if magnitudes[j] and (
                idx + 1 == n or magnitudes[order[idx + 1]] != magnitudes[j]
            ):
                consider(u, t)
        if magnitudes[order[0]] < 1:
            consider(zero_labeling, t)
        return g_float

    x = start
    xf = [float(c) for c in x.coords]
    g_float = walk(x, 0)
    iterations_used = 0
    best_lower_bound: Optional[Fraction] = None

    for t in range(1, max_iters + 1):
        if cfg.tolerance > 0:
            g_exact = subgradient(f, x)
            current_extension = extension_value(f, x)
            bound = current_extension + sum(
                min(gj * (alpha_lo - xj), gj * (1 - xj))
                for gj, xj in zip(g_exact, x.coords)
            )
            if best_lower_bound is None or bound > best_lower_bound:
                best_lower_bound = bound
            assert best_value is not None
            if best_value - best_lower_bound <= cfg.tolerance:
                break
            g_float = [float(gj) for gj in g_exact]

        gamma = gamma0 / math.sqrt(t) if diminishing else gamma0
        for j in range(n):
            moved = xf[j] - gamma * g_float[j]
            if not math.isfinite(moved):
                raise RuntimeError(f"non-finite iterate at t={t}, j={j}: minimizer bug")
            xf[j] = moved
        x = project_box(xf, alpha)
        xf = [float(c) for c in x.coords]
        g_float = walk(x, t)
        iterations_used = t

    assert best_labeling is not None and best_value is not None
    exact_value = f.evaluate(best_labeling)
    assert exact_value == best_value
    return MinimizeReport(
        minimizer=best_labeling,
        value=exact_value,
        iterations_used=iterations_used,
        oracle_calls=f.call_count - calls_before,
        trajectory_best=trajectory,
    )
