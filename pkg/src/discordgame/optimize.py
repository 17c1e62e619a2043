"""Box-constrained maximisation (grid then simplex) and the named scenarios."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import game
from .game import StrategyProfile
from .quantum import discorded_state
from .simplex import nelder_mead

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi
COORDS = ("theta_a", "theta_a_prime", "theta_b", "theta_b_prime", "x")
OPTIMUM_ANGLES = (HALF_PI, 0.0, HALF_PI, 0.0)
CLASSICAL_BOUND = 0.25
# f must beat the classical bound by more than rounding to count as an advantage
ADVANTAGE_MARGIN = 1e-12

# objective(theta_a, theta_a', theta_b, theta_b', x) -> array, broadcasting its inputs
Objective = Callable[..., np.ndarray]


@dataclass(frozen=True)
class BoxConstraints:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != 5 or len(hi) != 5:
            raise ValueError("box needs five intervals (four angles and x)")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"box has lower > upper: {lo} vs {hi}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def make(cls, angles=(0.0, TWO_PI), x=(0.0, TWO_PI)) -> "BoxConstraints":
        return cls((angles[0],) * 4 + (x[0],), (angles[1],) * 4 + (x[1],))

    def contains(self, point) -> bool:
        return all(lo <= v <= hi for lo, v, hi in zip(self.lower, point, self.upper))

    @property
    def free(self) -> np.ndarray:
        return np.array([lo < hi for lo, hi in zip(self.lower, self.upper)])


@dataclass(frozen=True)
class OptimizerSettings:
    angle_points: int = 33
    x_points: int = 129
    top_k: int = 8
    xtol: float = 1e-10
    tie_tol: float = 1e-12
    max_iter: int = 20000

    def __post_init__(self):
        if self.angle_points < 2 or self.x_points < 2:
            raise ValueError("grids need at least two points per coordinate")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if not (self.xtol > 0 and self.tie_tol >= 0):
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizationResult:
    argmax: StrategyProfile
    value: float
    evaluations: int
    scenario: str
    # raw box coordinates of the argmax (argmax itself is wrapped to [0, 2pi))
    coordinates: tuple = ()
    grid_value: float = math.nan
    # other optima whose value ties with the best within tie_tol
    ties: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "value": self.value,
            "argmax": self.argmax.as_dict(),
            "evaluations": self.evaluations,
        }


def grid_axes(box: BoxConstraints, settings: OptimizerSettings) -> list[np.ndarray]:
    axes = []
    for k, (lo, hi) in enumerate(zip(box.lower, box.upper)):
        n = settings.x_points if k == 4 else settings.angle_points
        axes.append(np.array([lo]) if lo == hi else np.linspace(lo, hi, n))
    return axes


def _grid_top_k(objective: Objective, axes, k: int):
    """Best ``k`` grid points as (values, index tuples), ordered best first.

    Ties keep the row-major (lexicographic) order.  Evaluated one slice of
    the first axis at a time to bound memory.
    """
    rest_shape = tuple(len(a) for a in axes[1:])
    rest = [a.reshape((1,) * i + (-1,) + (1,) * (3 - i)) for i, a in enumerate(axes[1:])]
    best_vals = np.empty(0)
    best_idx = np.empty(0, dtype=np.int64)
    slice_size = int(np.prod(rest_shape))
    for i0, v0 in enumerate(axes[0]):
        vals = np.broadcast_to(objective(v0, *rest), rest_shape).ravel()
        if np.isnan(vals).any():
            raise FloatingPointError("objective returned NaN on the grid")
        if vals.size > k:
            cut = np.partition(vals, vals.size - k)[vals.size - k]
            keep = np.flatnonzero(vals >= cut)
        else:
            keep = np.arange(vals.size)
        best_vals = np.concatenate([best_vals, vals[keep]])
        best_idx = np.concatenate([best_idx, keep + i0 * slice_size])
        order = np.lexsort((best_idx, -best_vals))[:k]
        best_vals, best_idx = best_vals[order], best_idx[order]
    shape = (len(axes[0]),) + rest_shape
    return best_vals, [np.unravel_index(i, shape) for i in best_idx]


# coordinates are compared at this resolution when breaking ties
TIE_DECIMALS = 8


def _pick(candidates, tie_tol):
    """Candidates within ``tie_tol`` of the best, lexicographically smallest point first.

    Points are rounded before comparison so simplex noise in one
    coordinate cannot decide the order.
    """
    top = max(v for v, _ in candidates)
    tied = [(tuple(float(c) for c in p), v) for v, p in candidates if v >= top - tie_tol]
    tied.sort(key=lambda item: (tuple(np.round(item[0], TIE_DECIMALS)), -item[1]))
    return tied


def maximize(
    objective: Objective,
    box: BoxConstraints,
    settings: OptimizerSettings | None = None,
    scenario: str = "custom",
) -> OptimizationResult:
    """Maximise ``objective`` over ``box``: dense grid, then simplex from the best cells."""
    settings = settings or OptimizerSettings()
    axes = grid_axes(box, settings)
    grid_vals, grid_idx = _grid_top_k(objective, axes, settings.top_k)
    evaluations = int(np.prod([len(a) for a in axes]))

    free = box.free
    lo = np.array(box.lower)[free]
    hi = np.array(box.upper)[free]
    steps = [(a[1] - a[0]) for a, f in zip(axes, free) if f]

    def full_point(sub):
        p = np.array(box.lower, dtype=float)
        p[free] = sub
        return p

    def neg_objective(sub):
        p = full_point(sub)
        assert box.contains(p), f"evaluated outside the box: {p}"
        return -float(objective(*p))

    candidates = []
    for val, idx in zip(grid_vals, grid_idx):
        start = np.array([axes[c][i] for c, i in enumerate(idx)])
        if free.any():
            res = nelder_mead(
                neg_objective, start[free], steps, lo, hi,
                xtol=settings.xtol, max_iter=settings.max_iter,
            )
            evaluations += res.nfev
            point = full_point(res.x)
            candidates.append((-res.fun, point))
        else:
            candidates.append((float(val), start))

    tied = _pick(candidates, settings.tie_tol)
    coords = tied[0][0]
    distinct = []
    for p, _ in tied:
        if all(np.max(np.abs(np.array(p) - np.array(q))) > 1e-6 for q in distinct):
            distinct.append(p)
    return OptimizationResult(
        argmax=StrategyProfile(*coords),
        value=float(objective(*coords)),
        evaluations=evaluations,
        scenario=scenario,
        coordinates=tuple(float(c) for c in coords),
        grid_value=float(grid_vals[0]),
        ties=tuple(StrategyProfile(*p) for p in distinct[1:]),
    )


def enumerate_deterministic(spec: game.GameSpec, rho, scenario: str) -> OptimizationResult:
    """Exhaustive search over detector settings in {0, pi}, which act deterministically on ``rho``."""
    fixed = game.GameSpec(spec.payoff_A, spec.payoff_B, spec.prior_A, spec.prior_B, state=rho)
    candidates = []
    for angles in itertools.product((0.0, math.pi), repeat=4):
        candidates.append((game.expected_payoff_bruteforce(fixed, StrategyProfile(*angles)), angles + (0.0,)))
    coords = _pick(candidates, 1e-12)[0][0]
    value = float(dict((tuple(p), v) for v, p in candidates)[coords])
    return OptimizationResult(
        argmax=StrategyProfile(*coords), value=value, evaluations=len(candidates),
        scenario=scenario, coordinates=coords, grid_value=value,
    )


def _fixed_angles_objective(angles):
    def objective(ta, tap, tb, tbp, x):
        return game.f_closed_form(*angles, x)
    return objective


def _bell_objective(ta, tap, tb, tbp, x):
    return game.expected_payoff_batch(game.chsh_game("bell"), ta, tap, tb, tbp, x)


SCENARIOS = (
    "constrained-discord",
    "classical-restricted",
    "unconstrained-discord",
    "chsh-classical",
    "chsh-bell",
    "quantum-advantage-curve",
)


def run_scenario(name: str, settings: OptimizerSettings | None = None) -> OptimizationResult:
    if name == "constrained-discord":
        return maximize(game.f_closed_form, BoxConstraints.make((0.0, HALF_PI)), settings, name)
    if name == "classical-restricted":
        return maximize(game.f_closed_form, BoxConstraints.make((0.0, HALF_PI), (0.0, 0.0)), settings, name)
    if name == "unconstrained-discord":
        return maximize(game.f_closed_form, BoxConstraints.make(), settings, name)
    if name == "chsh-classical":
        return enumerate_deterministic(game.chsh_game(), discorded_state(0.0), name)
    if name == "chsh-bell":
        return maximize(_bell_objective, BoxConstraints.make(x=(0.0, 0.0)), settings, name)
    if name == "quantum-advantage-curve":
        box = BoxConstraints(OPTIMUM_ANGLES + (0.0,), OPTIMUM_ANGLES + (TWO_PI,))
        return maximize(_fixed_angles_objective(OPTIMUM_ANGLES), box, settings, name)
    raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")


def advantage_region(samples: int = 256, angles=OPTIMUM_ANGLES) -> np.ndarray:
    """Payoff against ``x`` at fixed angles; columns ``(x, f, flag)``, flag = f > 0.25."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    xs = TWO_PI * np.arange(samples) / samples
    f = game.f_closed_form(*angles, xs)
    flag = (f > CLASSICAL_BOUND + ADVANTAGE_MARGIN).astype(float)
    return np.column_stack([xs, f, flag])
