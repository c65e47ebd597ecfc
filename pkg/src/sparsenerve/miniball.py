"""Smallest enclosing ball of a finite point set (Welzl's algorithm)."""

from __future__ import annotations

import random
import sys

import numpy as np

from .model import InputValidationError

TOLERANCE = 1e-9


def _circumsphere(S: np.ndarray):
    """Center and radius of the sphere through <= dim+1 affinely independent points."""
    if S.shape[0] == 1:
        return S[0].astype(float), 0.0
    U = S[1:] - S[0]
    b = 0.5 * np.sum(U * U, axis=1)
    G = U @ U.T
    try:
        x = np.linalg.solve(G, b)
    except np.linalg.LinAlgError:
        x, *_ = np.linalg.lstsq(G, b, rcond=None)
    center = S[0] + x @ U
    radius = float(np.linalg.norm(center - S[0]))
    return center, radius


def miniball(points, tol: float = TOLERANCE):
    """Smallest enclosing ball of the given points.

    Returns ``(center, radius)`` with every point within
    ``radius + tol * (1 + radius)`` of the center.  Deterministic: the
    internal shuffle uses a fixed seed.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    if P.size == 0 or P.ndim != 2:
        raise InputValidationError("miniball needs a nonempty 2-d point array")
    if not np.isfinite(P).all():
        raise InputValidationError("miniball points must be finite")
    dim = P.shape[1]

    idx = list(range(P.shape[0]))
    random.Random(0).shuffle(idx)

    def welzl(i, boundary):
        if i == len(idx) or len(boundary) == dim + 1:
            if not boundary:
                return P[idx[0]].astype(float), -1.0
            return _circumsphere(P[boundary])
        c, r = welzl(i + 1, boundary)
        p = P[idx[i]]
        if np.linalg.norm(p - c) <= r + tol * (1.0 + max(r, 0.0)):
            return c, r
        return welzl(i + 1, boundary + [idx[i]])

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * len(idx) + 100))
    try:
        center, radius = welzl(0, [])
    finally:
        sys.setrecursionlimit(old)
    return center, max(radius, 0.0)
