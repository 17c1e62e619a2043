"""Quantum discord of two-qubit states via a grid-plus-simplex search over Bob's axis."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .quantum import DetectorSetting, discorded_state, projector_stack, validate_state
from .simplex import nelder_mead

# outcome probabilities below this carry no entropy weight
P_NEGLIGIBLE = 1e-14
# values within this of the grid minimum count as ties
TIE_TOL = 1e-12


@dataclass(frozen=True)
class SearchSettings:
    theta_points: int = 64
    phi_points: int = 128
    xtol: float = 1e-9
    max_iter: int = 20000

    def __post_init__(self):
        if self.theta_points < 2 or self.phi_points < 1:
            raise ValueError("search grid needs theta_points >= 2 and phi_points >= 1")
        if not self.xtol > 0:
            raise ValueError("xtol must be positive")


@dataclass(frozen=True)
class MeasurementRecord:
    axis: DetectorSetting
    p_plus: float
    p_minus: float
    # None marks an outcome that essentially never occurs
    post_states: tuple = field(repr=False)


@dataclass(frozen=True)
class DiscordResult:
    value: float
    argmin_axis: DetectorSetting
    evaluations: int
    raw_value: float
    grid_value: float


def _unnormalised_conditionals(rho, theta, phi):
    """``tr_B[(1 x P_mu) rho]`` for both outcomes and every axis.

    Returns an array of shape ``theta.shape + (2, 2, 2)`` where the first
    trailing axis is the outcome ``mu = +1, -1``.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    sig = np.array([1.0, -1.0]).reshape((1,) * theta.ndim + (2,))
    proj = projector_stack(sig, theta[..., None], phi[..., None])
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("...jm,imkj->...ik", proj, r)


def _conditional_entropy_grid(rho, theta, phi) -> np.ndarray:
    cond = _unnormalised_conditionals(rho, theta, phi)
    p = np.trace(cond, axis1=-2, axis2=-1).real
    lam = qmath.eigvals_2x2(cond)
    ok = p > P_NEGLIGIBLE
    # entropy of cond/p from the eigenvalues of the unnormalised block
    lam_norm = lam / np.where(ok, p, 1.0)[..., None]
    s = qmath.entropy_from_eigenvalues(np.where(ok[..., None], lam_norm, 0.0))
    return np.sum(np.where(ok, p * s, 0.0), axis=-1)


def post_measurement(rho, n: DetectorSetting) -> MeasurementRecord:
    """Alice's conditional states after Bob measures along ``n``."""
    cond = _unnormalised_conditionals(rho, np.array(n.theta), np.array(n.phi))
    p = np.trace(cond, axis1=-2, axis2=-1).real
    states = tuple(
        cond[k] / p[k] if p[k] > P_NEGLIGIBLE else None for k in range(2)
    )
    return MeasurementRecord(n, float(p[0]), float(p[1]), states)


def conditional_entropy(rho, n: DetectorSetting) -> float:
    """``sum_mu p_mu S(rho_A|mu)`` for Bob measuring along ``n``."""
    return float(_conditional_entropy_grid(rho, np.array(n.theta), np.array(n.phi)))


def mutual_information(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return (
        qmath.von_neumann_entropy(qmath.partial_trace(rho, "A"))
        + qmath.von_neumann_entropy(qmath.partial_trace(rho, "B"))
        - qmath.von_neumann_entropy(rho)
    )


def classical_correlation(rho, n: DetectorSetting) -> float:
    """``S(rho_A) - S(A | Pi_n)``: information about A gained by measuring B along ``n``."""
    return qmath.von_neumann_entropy(qmath.partial_trace(rho, "A")) - conditional_entropy(rho, n)


def discord_A(rho, search: SearchSettings | None = None) -> DiscordResult:
    """Discord with projective measurements on Bob's qubit.

    A dense (theta, phi) grid brackets the minimum of the conditional
    entropy; Nelder-Mead then polishes the best cell.  Grid ties go to the
    lexicographically smallest ``(theta, phi)``.
    """
    search = search or SearchSettings()
    rho = validate_state(rho, 4)
    offset = qmath.von_neumann_entropy(qmath.partial_trace(rho, "B")) - qmath.von_neumann_entropy(rho)

    thetas = np.linspace(0.0, math.pi, search.theta_points)
    phis = 2.0 * math.pi * np.arange(search.phi_points) / search.phi_points
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    grid = _conditional_entropy_grid(rho, tt, pp)
    # row-major flat order is already lexicographic in (theta, phi)
    flat = grid.ravel()
    best_idx = int(np.flatnonzero(flat <= flat.min() + TIE_TOL)[0])
    i, j = np.unravel_index(best_idx, grid.shape)
    grid_best = float(flat[best_idx])

    steps = [math.pi / (search.theta_points - 1), 2.0 * math.pi / search.phi_points]
    res = nelder_mead(
        lambda v: _conditional_entropy_grid(rho, np.array(v[0]), np.array(v[1])),
        [thetas[i], phis[j]],
        steps,
        xtol=search.xtol,
        max_iter=search.max_iter,
    )
    if res.fun <= grid_best:
        cond_min, axis = res.fun, DetectorSetting(res.x[0], res.x[1])
    else:
        cond_min, axis = grid_best, DetectorSetting(thetas[i], phis[j])
    raw = cond_min + offset
    if raw < -1e-6:
        raise qmath.NotAStateError(f"discord came out negative ({raw:.3e})")
    return DiscordResult(
        value=max(raw, 0.0),
        argmin_axis=axis,
        evaluations=flat.size + res.nfev,
        raw_value=raw,
        grid_value=grid_best + offset,
    )


def discord_B(rho, search: SearchSettings | None = None) -> DiscordResult:
    """Discord with measurements on Alice's qubit (roles of A and B swapped)."""
    return discord_A(qmath.swap_subsystems(rho), search)


def discord_curve(samples: int = 201, search: SearchSettings | None = None) -> np.ndarray:
    """Discord of the mixed separable family, ``x = 2*pi*k/samples``.

    Returns an array with columns ``(x, discord in nats)``.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    xs = 2.0 * math.pi * np.arange(samples) / samples
    return np.array([(x, discord_A(discorded_state(x), search).value) for x in xs])
