"""Deterministic Nelder-Mead minimiser with optional box clipping."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SimplexResult:
    x: np.ndarray
    fun: float
    nfev: int
    iterations: int
    converged: bool


def nelder_mead(func, x0, steps, lower=None, upper=None, xtol=1e-10, max_iter=20000):
    """Minimise ``func`` starting from ``x0``.

    ``steps`` sets the initial edge length per coordinate.  When bounds
    are given every trial point is clipped into ``[lower, upper]`` before
    evaluation, so ``func`` never sees an outside point.  Convergence is
    declared when every vertex is within ``xtol`` (max-norm) of the best.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    lo = None if lower is None else np.asarray(lower, dtype=float)
    hi = None if upper is None else np.asarray(upper, dtype=float)

    def clip(p):
        if lo is not None:
            p = np.maximum(p, lo)
        if hi is not None:
            p = np.minimum(p, hi)
        return p

    nfev = 0

    def f(p):
        nonlocal nfev
        nfev += 1
        return float(func(p))

    verts = [clip(x0.copy())]
    for i in range(n):
        v = x0.copy()
        step = steps[i]
        # flip the step when it would leave the box
        if hi is not None and v[i] + step > hi[i]:
            step = -step
        v[i] += step
        verts.append(clip(v))
    verts = np.array(verts)
    fvals = np.array([f(v) for v in verts])

    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        # stable sort keeps ties in insertion order
        order = np.argsort(fvals, kind="stable")
        verts, fvals = verts[order], fvals[order]
        if np.max(np.abs(verts[1:] - verts[0]), initial=0.0) < xtol:
            converged = True
            break
        centroid = verts[:-1].mean(axis=0)
        worst = verts[-1]
        xr = clip(centroid + (centroid - worst))
        fr = f(xr)
        if fr < fvals[0]:
            xe = clip(centroid + 2.0 * (centroid - worst))
            fe = f(xe)
            if fe < fr:
                verts[-1], fvals[-1] = xe, fe
            else:
                verts[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-2]:
            verts[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-1]:
            xc = clip(centroid + 0.5 * (xr - centroid))
            fc = f(xc)
            if fc <= fr:
                verts[-1], fvals[-1] = xc, fc
                continue
        else:
            xc = clip(centroid + 0.5 * (worst - centroid))
            fc = f(xc)
            if fc < fvals[-1]:
                verts[-1], fvals[-1] = xc, fc
                continue
        for k in range(1, n + 1):
            verts[k] = clip(verts[0] + 0.5 * (verts[k] - verts[0]))
            fvals[k] = f(verts[k])

    best = int(np.argmin(fvals))
    return SimplexResult(verts[best].copy(), float(fvals[best]), nfev, it, converged)
