"""Measurement projectors, the two-qubit states used by the game, and the Born rule."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmath

TWO_PI = 2.0 * math.pi
STATE_TRACE_TOL = 1e-12
STATE_NEGATIVE_TOL = 1e-10

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)


def wrap_angle(angle: float) -> float:
    """Reduce an angle to ``[0, 2*pi)``."""
    r = math.fmod(angle, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    # fmod of a value just below a multiple of 2pi can round up to 2pi
    return 0.0 if r >= TWO_PI else r


@dataclass(frozen=True)
class DetectorSetting:
    """Measurement axis on the Bloch sphere, polar angle ``theta`` and azimuth ``phi``."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))
        object.__setattr__(self, "phi", wrap_angle(float(self.phi)))

    @property
    def bloch_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [math.cos(self.phi) * st, math.sin(self.phi) * st, math.cos(self.theta)]
        )


def _check_outcome(sigma: int) -> int:
    if sigma not in (1, -1):
        raise ValueError(f"spin outcome must be +1 or -1, got {sigma!r}")
    return int(sigma)


def projector(sigma: int, axis: DetectorSetting) -> np.ndarray:
    """``(1 + sigma * n.Pauli) / 2`` for the axis ``n``."""
    sigma = _check_outcome(sigma)
    n = axis.bloch_vector
    n_dot_sigma = n[0] * qmath.SIGMA_X + n[1] * qmath.SIGMA_Y + n[2] * qmath.SIGMA_Z
    return 0.5 * (qmath.IDENTITY2 + sigma * n_dot_sigma)


def projector_stack(sigma, theta, phi=0.0) -> np.ndarray:
    """Vectorised :func:`projector`; broadcasts the inputs, appends a 2x2 axis."""
    sigma, theta, phi = np.broadcast_arrays(
        np.asarray(sigma, dtype=float), np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    st = np.sin(theta)
    nx, ny, nz = np.cos(phi) * st, np.sin(phi) * st, np.cos(theta)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 0.5 * (1.0 + sigma * nz)
    out[..., 1, 1] = 0.5 * (1.0 - sigma * nz)
    out[..., 0, 1] = 0.5 * sigma * (nx - 1j * ny)
    out[..., 1, 0] = 0.5 * sigma * (nx + 1j * ny)
    return out


def qubit_ket(x: float) -> np.ndarray:
    """``cos(x/2)|up> + sin(x/2)|down>``."""
    return math.cos(x / 2.0) * UP + math.sin(x / 2.0) * DOWN


def discorded_state(x: float) -> np.ndarray:
    """Equal mixture of ``|up up>`` and ``|x x>``; separable with tunable discord.

    ``x`` is reduced mod 2pi first, so the state is 2pi periodic (the
    ket itself only repeats every 4pi, up to a sign that cancels here).
    """
    x = wrap_angle(float(x))
    uu = np.kron(UP, UP)
    k = qubit_ket(x)
    xx = np.kron(k, k)
    return 0.5 * (np.outer(uu, uu.conj()) + np.outer(xx, xx.conj()))


def discorded_state_stack(x) -> np.ndarray:
    """Vectorised :func:`discorded_state` over an array of ``x``."""
    x = np.asarray(x, dtype=float)
    c, s = np.cos(x / 2.0), np.sin(x / 2.0)
    xx = np.stack([c * c, c * s, s * c, s * s], axis=-1)
    rho = 0.5 * np.einsum("...i,...j->...ij", xx, xx).astype(complex)
    rho[..., 0, 0] += 0.5
    return rho


def bell_state() -> np.ndarray:
    """``|psi><psi|`` with ``|psi> = (|up up> + |down down>)/sqrt(2)``."""
    psi = (np.kron(UP, UP) + np.kron(DOWN, DOWN)) / math.sqrt(2.0)
    return np.outer(psi, psi.conj())


def product_state(rho_a, rho_b) -> np.ndarray:
    return qmath.kron(rho_a, rho_b)


def validate_state(rho, dim: int | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or (dim and rho.shape[0] != dim):
        raise qmath.NotAStateError(f"bad density matrix shape {rho.shape}")
    if not qmath.is_hermitian(rho):
        raise qmath.NotAStateError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > STATE_TRACE_TOL:
        raise qmath.NotAStateError(f"trace {tr.real:.15g} differs from 1")
    if qmath.hermitian_eigenvalues(rho)[-1] < -STATE_NEGATIVE_TOL:
        raise qmath.NotAStateError("density matrix has a negative eigenvalue")
    return rho


def joint_probability(
    sigma: int, sigma_prime: int, a: DetectorSetting, b: DetectorSetting, rho
) -> float:
    """Born-rule probability of outcomes ``(sigma, sigma_prime)`` on axes ``(a, b)``."""
    op = qmath.kron(projector(sigma, a), projector(sigma_prime, b))
    return float(np.trace(op @ np.asarray(rho)).real)


def outcome_table(a: DetectorSetting, b: DetectorSetting, rho) -> np.ndarray:
    """All four joint probabilities, indexed ``[i, j]`` with index 0 for spin up."""
    return np.array(
        [[joint_probability(s, t, a, b, rho) for t in (1, -1)] for s in (1, -1)]
    )
