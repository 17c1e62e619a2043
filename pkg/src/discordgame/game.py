"""Payoff tables, Bayesian expected payoffs and the classical/quantum split.

Tables are indexed ``[alpha, beta, s, s']`` where ``alpha`` is 0 for
Alice's setting ``a`` and 1 for ``a'`` (likewise ``beta`` for Bob) and
outcome index 0 is spin up (+1), 1 is spin down (-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .quantum import (
    DetectorSetting,
    bell_state,
    discorded_state,
    discorded_state_stack,
    joint_probability,
    projector_stack,
    wrap_angle,
)

SPINS = (1, -1)
ALPHAS = ("a", "a'")
BETAS = ("b", "b'")
KAPPA_ZERO_TOL = 1e-12


def _alpha_index(label: str, names) -> int:
    try:
        return names.index(label)
    except ValueError:
        raise KeyError(f"unknown setting {label!r}, expected one of {names}") from None


@dataclass(frozen=True)
class PayoffTable:
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.shape != (2, 2, 2, 2):
            raise ValueError(f"payoff table must have shape (2, 2, 2, 2), got {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("payoff table has non-finite entries")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    def get(self, alpha: str, beta: str, sigma: int, sigma_prime: int) -> float:
        return float(
            self.entries[
                _alpha_index(alpha, ALPHAS),
                _alpha_index(beta, BETAS),
                SPINS.index(sigma),
                SPINS.index(sigma_prime),
            ]
        )

    def __eq__(self, other):
        return isinstance(other, PayoffTable) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())


@dataclass(frozen=True)
class Prior:
    weights: np.ndarray = field(default_factory=lambda: np.full((2, 2), 0.25))

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != (2, 2):
            raise ValueError("prior must be a 2x2 array over (alpha, beta)")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("prior weights must be non-negative and sum to 1")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls) -> "Prior":
        return cls()


def _same_outcome_table(match: float, mismatch: float, flipped_game=(1, 1)) -> np.ndarray:
    t = np.empty((2, 2, 2, 2))
    for al in range(2):
        for be in range(2):
            same, diff = (mismatch, match) if (al, be) == flipped_game else (match, mismatch)
            t[al, be] = [[same, diff], [diff, same]]
    return t


def table_chsh() -> PayoffTable:
    """Standard CHSH rewards: match in three games, differ in ``(a', b')``."""
    return PayoffTable(_same_outcome_table(1.0, 0.0))


def table_modified() -> PayoffTable:
    """Modified table: -1/+1 for match/differ, reversed in ``(a', b')``."""
    return PayoffTable(_same_outcome_table(-1.0, 1.0))


StateFamily = Union[str, np.ndarray]


@dataclass(frozen=True)
class GameSpec:
    payoff_A: PayoffTable
    payoff_B: PayoffTable
    prior_A: Prior = field(default_factory=Prior)
    prior_B: Prior = field(default_factory=Prior)
    # "discorded" (state depends on the profile's x), "bell", or a fixed 4x4 matrix
    state: StateFamily = "discorded"

    def state_for(self, x: float) -> np.ndarray:
        if isinstance(self.state, str):
            if self.state == "discorded":
                return discorded_state(x)
            if self.state == "bell":
                return bell_state()
            raise ValueError(f"unknown state family {self.state!r}")
        return np.asarray(self.state, dtype=complex)

    def state_stack(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if isinstance(self.state, str) and self.state == "discorded":
            return discorded_state_stack(x)
        rho = self.state_for(0.0)
        return np.broadcast_to(rho, x.shape + (4, 4))

    def table(self, player: str) -> tuple[PayoffTable, Prior]:
        if player == "A":
            return self.payoff_A, self.prior_A
        if player == "B":
            return self.payoff_B, self.prior_B
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")


def modified_game() -> GameSpec:
    t = table_modified()
    return GameSpec(t, t, state="discorded")


def chsh_game(state: StateFamily = "bell") -> GameSpec:
    t = table_chsh()
    return GameSpec(t, t, state=state)


@dataclass(frozen=True)
class StrategyProfile:
    """Detector polar angles for both players plus the state parameter ``x``."""

    theta_a: float
    theta_a_prime: float
    theta_b: float
    theta_b_prime: float
    x: float = 0.0

    def __post_init__(self):
        for name in ("theta_a", "theta_a_prime", "theta_b", "theta_b_prime", "x"):
            object.__setattr__(self, name, wrap_angle(float(getattr(self, name))))

    def __iter__(self):
        return iter(self.as_tuple())

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.theta_a, self.theta_a_prime, self.theta_b, self.theta_b_prime, self.x)

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return self.as_tuple()[:4]

    def as_dict(self) -> dict:
        return {
            "theta_a": self.theta_a,
            "theta_a_prime": self.theta_a_prime,
            "theta_b": self.theta_b,
            "theta_b_prime": self.theta_b_prime,
            "x": self.x,
        }


def expected_payoff_bruteforce(spec: GameSpec, profile: StrategyProfile, player: str = "A") -> float:
    """Bayesian expected payoff summed term by term from the Born rule (phi = 0)."""
    table, prior = spec.table(player)
    rho = spec.state_for(profile.x)
    alice = (DetectorSetting(profile.theta_a), DetectorSetting(profile.theta_a_prime))
    bob = (DetectorSetting(profile.theta_b), DetectorSetting(profile.theta_b_prime))
    total = 0.0
    for al in range(2):
        for be in range(2):
            for i, s in enumerate(SPINS):
                for j, t in enumerate(SPINS):
                    p = joint_probability(s, t, alice[al], bob[be], rho)
                    total += table.entries[al, be, i, j] * prior.weights[al, be] * p
    return total


def expected_payoff_batch(spec: GameSpec, theta_a, theta_ap, theta_b, theta_bp, x=0.0, player="A"):
    """Vectorised Born-rule payoff; inputs broadcast against each other."""
    table, prior = spec.table(player)
    ta, tap, tb, tbp, xs = (np.asarray(v, dtype=float) for v in (theta_a, theta_ap, theta_b, theta_bp, x))
    shape = np.broadcast_shapes(ta.shape, tap.shape, tb.shape, tbp.shape, xs.shape)
    rho = spec.state_stack(xs).reshape(xs.shape + (2, 2, 2, 2))
    spins = np.array(SPINS, dtype=float)
    alice = [projector_stack(spins, t[..., None]) for t in (ta, tap)]
    bob = [projector_stack(spins, t[..., None]) for t in (tb, tbp)]
    out = np.zeros(shape)
    for al in range(2):
        for be in range(2):
            # einsum broadcasts the leading axes, so each game only touches its own angles
            probs = np.einsum("...ipq,...jrs,...qspr->...ij", alice[al], bob[be], rho).real
            out = out + prior.weights[al, be] * np.einsum("...ij,ij->...", probs, table.entries[al, be])
    return out


def f_closed_form(theta_a, theta_ap, theta_b, theta_bp, x):
    """Closed-form expected payoff of the modified game under the uniform prior."""
    minus = np.cos(theta_a - theta_b) + np.cos(theta_ap - theta_b) + np.cos(theta_a - theta_bp) - np.cos(theta_ap - theta_bp)
    plus = np.cos(theta_a + theta_b) + np.cos(theta_ap + theta_b) + np.cos(theta_a + theta_bp) - np.cos(theta_ap + theta_bp)
    two_x = 2.0 * x
    shifted = (
        np.cos(theta_a + theta_b - two_x)
        + np.cos(theta_ap + theta_b - two_x)
        + np.cos(theta_a + theta_bp - two_x)
        - np.cos(theta_ap + theta_bp - two_x)
    )
    return -(2.0 * minus + plus + shifted) / 16.0


def f_classical(theta_a, theta_ap, theta_b, theta_bp, x=None):
    """Classical part; ``x`` is accepted for call symmetry and ignored."""
    ca, cap = np.cos(theta_a), np.cos(theta_ap)
    cb, cbp = np.cos(theta_b), np.cos(theta_bp)
    return -0.25 * (ca * (cb + cbp) + cap * (cb - cbp))


def f_quantum(theta_a, theta_ap, theta_b, theta_bp, x):
    """Quantum part; vanishes wherever ``sin x`` does."""
    bracket = (
        np.sin(theta_a + theta_b - x)
        + np.sin(theta_ap + theta_b - x)
        + np.sin(theta_a + theta_bp - x)
        - np.sin(theta_ap + theta_bp - x)
    )
    return -np.sin(x) / 8.0 * bracket


@dataclass(frozen=True)
class DecomposedPayoff:
    total: float
    classical: float
    quantum: float
    # float, math.inf, or None when the ratio is undefined
    kappa: float | None


def kappa_from_parts(classical: float, quantum: float, zero_tol: float = KAPPA_ZERO_TOL):
    """``|f_Q / f_Cl|`` on the quadrant where both parts are non-negative.

    Parts within ``zero_tol`` of zero are treated as zero.  Returns
    ``math.inf`` for a vanishing classical part with a positive quantum
    part and ``None`` when the ratio is undefined (a negative part, or 0/0).
    """
    cl = 0.0 if abs(classical) <= zero_tol else classical
    q = 0.0 if abs(quantum) <= zero_tol else quantum
    if cl < 0.0 or q < 0.0:
        return None
    if cl == 0.0:
        return math.inf if q > 0.0 else None
    return abs(q / cl)


def kappa(profile: StrategyProfile, zero_tol: float = KAPPA_ZERO_TOL):
    return kappa_from_parts(float(f_classical(*profile)), float(f_quantum(*profile)), zero_tol)


def decompose(profile: StrategyProfile, zero_tol: float = KAPPA_ZERO_TOL) -> DecomposedPayoff:
    cl = float(f_classical(*profile))
    q = float(f_quantum(*profile))
    return DecomposedPayoff(
        total=float(f_closed_form(*profile)),
        classical=cl,
        quantum=q,
        kappa=kappa_from_parts(cl, q, zero_tol),
    )


def kappa_to_json(value):
    if value is None:
        return "undefined"
    if math.isinf(value):
        return "inf"
    return value
