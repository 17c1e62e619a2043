"""Finite-difference Hessian of the payoff and its trace/eigenvalue relations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import game, qmath
from .game import StrategyProfile

DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class HessianReport:
    matrix: np.ndarray
    trace: float
    eigenvalue_sum: float
    eigenvalues: np.ndarray
    f_value: float
    # |trace + 2 f|; only expected to vanish for the four-angle Hessian
    residual: float
    include_x: bool

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "trace": self.trace,
            "eigenvalue_sum": self.eigenvalue_sum,
            "f_value": self.f_value,
            "residual": self.residual,
            "include_x": self.include_x,
        }


def finite_difference_hessian(
    objective=game.f_closed_form,
    point: StrategyProfile | None = None,
    step: float = DEFAULT_STEP,
    include_x: bool = False,
) -> HessianReport:
    """Central-difference Hessian over the four angles (plus ``x`` if asked).

    Diagonal terms use the three-point stencil, off-diagonal terms the
    four-point cross stencil; the matrix is filled symmetrically.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    if point is None:
        point = StrategyProfile(0.0, 0.0, 0.0, 0.0, 0.0)
    p0 = np.array(point.as_tuple(), dtype=float)
    n = 5 if include_x else 4

    def f(p):
        return float(objective(*p))

    def shifted(*moves):
        p = p0.copy()
        for i, d in moves:
            p[i] += d
        return f(p)

    f0 = f(p0)
    h = step
    hess = np.empty((n, n))
    for i in range(n):
        hess[i, i] = (shifted((i, h)) - 2.0 * f0 + shifted((i, -h))) / h**2
        for j in range(i + 1, n):
            hess[i, j] = hess[j, i] = (
                shifted((i, h), (j, h))
                - shifted((i, h), (j, -h))
                - shifted((i, -h), (j, h))
                + shifted((i, -h), (j, -h))
            ) / (4.0 * h**2)
    eig = qmath.hermitian_eigenvalues(hess)
    trace = float(np.trace(hess))
    return HessianReport(
        matrix=hess,
        trace=trace,
        eigenvalue_sum=float(np.sum(eig)),
        eigenvalues=eig,
        f_value=f0,
        residual=abs(trace + 2.0 * f0),
        include_x=include_x,
    )


def eigenvalue_relation_check(point: StrategyProfile, objective=game.f_closed_form, step: float = DEFAULT_STEP) -> float:
    """``|f + sum(eigenvalues)/2|`` for the four-angle Hessian."""
    report = finite_difference_hessian(objective, point, step)
    return abs(report.f_value + 0.5 * report.eigenvalue_sum)
