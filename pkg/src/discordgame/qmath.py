"""Small dense linear algebra for qubit and two-qubit operators.

Matrices are plain complex ``numpy`` arrays.  Two-qubit operators use the
basis ``|s>_A (x) |s'>_B`` in row-major order, so index ``2*i + j`` is
Alice's ``i`` and Bob's ``j``.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
# eigenvalues in [-NEGATIVE_REJECT, 0] are rounding noise and are clamped
NEGATIVE_REJECT = 1e-8

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class NotAStateError(ValueError):
    """Raised when a matrix handed to a state routine is not a density matrix."""


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def _square(m, name="matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = _square(a, "a"), _square(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators; blocks are ``a[i, j] * b``."""
    a, b = _square(a, "a"), _square(b, "b")
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("kron expects two 2x2 matrices")
    return np.kron(a, b)


def partial_trace(rho, keep: str = "A") -> np.ndarray:
    """Reduce a two-qubit operator to one qubit.

    Works on a single 4x4 matrix or on a stack with shape ``(..., 4, 4)``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise ValueError(f"partial_trace expects 4x4 matrices, got {rho.shape}")
    r = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    if keep == "A":
        return np.einsum("...ijkj->...ik", r)
    if keep == "B":
        return np.einsum("...ijil->...jl", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def swap_subsystems(rho) -> np.ndarray:
    """Exchange the roles of A and B in a two-qubit operator."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return r.transpose(1, 0, 3, 2).reshape(4, 4)


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def eigvals_2x2(m) -> np.ndarray:
    """Closed-form eigenvalues of Hermitian 2x2 matrices, descending.

    Accepts a stack ``(..., 2, 2)`` and returns ``(..., 2)``.
    """
    m = np.asarray(m, dtype=complex)
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = m[..., 0, 1]
    mean = 0.5 * (a + d)
    radius = np.sqrt(0.25 * (a - d) ** 2 + np.abs(b) ** 2)
    return np.stack([mean + radius, mean - radius], axis=-1)


def jacobi_eigenvalues(m, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi for a complex Hermitian matrix; eigenvalues descending.

    Each pivot first removes the phase of ``a[p, q]`` with a diagonal
    unitary, then zeroes it with a real Givens rotation.
    """
    a = _square(m).copy()
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max(initial=0.0) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b < tol:
                    continue
                phase = apq / b
                # column q times conj(phase), row q times phase
                a[:, q] *= np.conj(phase)
                a[q, :] *= phase
                theta = 0.5 * np.arctan2(2.0 * b, a[q, q].real - a[p, p].real)
                c, s = np.cos(theta), np.sin(theta)
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)[::-1]


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order."""
    m = _square(m)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    if m.shape == (2, 2):
        return eigvals_2x2(m)
    return jacobi_eigenvalues(m)


def entropy_from_eigenvalues(values) -> np.ndarray:
    """``-sum(l ln l)`` along the last axis with ``0 ln 0 = 0``."""
    values = np.asarray(values, dtype=float)
    if np.any(values < -NEGATIVE_REJECT):
        raise NotAStateError(f"eigenvalue {values.min():.3e} is below noise level")
    lam = np.clip(values, 0.0, None)
    safe = np.where(lam > 0.0, lam, 1.0)
    return -np.sum(lam * np.log(safe), axis=-1)


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in nats."""
    return float(entropy_from_eigenvalues(hermitian_eigenvalues(rho)))
