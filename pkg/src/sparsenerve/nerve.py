"""Sparse nerve construction: slope points, maximal faces, filtered skeletons.

The sparse nerve of a truncated dissimilarity Gamma with restriction times R
is built from maximal faces emitted per (landmark, witness) pair and expanded
into a (d+1)-skeleton.  Filtration values always come from the original
Lambda via v(sigma) = min over w of max over l in sigma of Lambda(l, w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cover import cover_matrix
from .miniball import miniball
from .model import (
    INF,
    DowkerDissimilarity,
    InputValidationError,
    ParentFunction,
    RestrictionTimes,
    SizeLimitError,
    TranslationFunction,
    as_extended_matrix,
)
from .sparsify import restriction_times
from .truncation import truncation_result


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with filtration values, sorted by (value, cardinality, vertices).

    Closed under faces within the cardinality cap ``dim_cap + 1``; values are
    monotone along face inclusions.
    """

    simplices: tuple
    values: np.ndarray
    dim_cap: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.simplices)

    def value_of(self) -> dict:
        return dict(zip(self.simplices, self.values.tolist()))

    def check(self):
        """Raise if sortedness, downward closure or monotonicity fail."""
        keys = [
            (v, len(s), s) for s, v in zip(self.simplices, self.values.tolist())
        ]
        for a, b in zip(keys, keys[1:]):
            if b < a:
                raise InputValidationError(f"not sorted at {a[2]} -> {b[2]}")
        lookup = self.value_of()
        if len(lookup) != len(self.simplices):
            raise InputValidationError("duplicate simplices")
        for s, v in lookup.items():
            if len(s) == 1:
                continue
            for face in combinations(s, len(s) - 1):
                if face not in lookup:
                    raise InputValidationError(f"missing face {face} of {s}")
                if lookup[face] > v:
                    raise InputValidationError(
                        f"filtration not monotone: {face} > {s}"
                    )

    def thresholded(self, t: float) -> set:
        return {s for s, v in zip(self.simplices, self.values.tolist()) if v <= t}


def make_filtered_complex(value_by_simplex: dict, dim_cap: int) -> FilteredComplex:
    """Sort a simplex -> value map into a FilteredComplex."""
    items = sorted(value_by_simplex.items(), key=lambda sv: (sv[1], len(sv[0]), sv[0]))
    return FilteredComplex(
        simplices=tuple(s for s, _ in items),
        values=np.array([v for _, v in items], dtype=float),
        dim_cap=dim_cap,
    )


def slope_points(phi: ParentFunction, R: RestrictionTimes) -> frozenset:
    """Points whose restriction time is not dominated by their children's.

    A point is a slope point iff its restriction time is finite and strictly
    exceeds the maximum restriction time of its children (0 for a childless
    point).  Slope points are subject to the strict-inequality membership
    rule during face construction; the rule is what keeps a removed point
    from re-entering faces at its own removal time.
    """
    times = R.times
    slope = []
    children = phi.children()
    for l in range(len(phi)):
        r_children = max((times[c] for c in children[l]), default=0.0)
        if np.isfinite(times[l]) and r_children < times[l]:
            slope.append(l)
    return frozenset(slope)


def maximal_faces(gamma, R: RestrictionTimes, S: frozenset) -> list:
    """Candidate maximal faces of the sparse nerve, deduplicated.

    For each (l, w) with Gamma(l, w) <= R(l), the face contains every l' with
    R(l) <= R(l'), Gamma(l', w) <= R(l), Gamma(l', w) finite, and — if l' is
    a slope point — Gamma(l', w) strictly below R(l').  Exact duplicates and
    faces contained in another emitted face are dropped.
    """
    g = as_extended_matrix(gamma)
    times = R.times
    n = g.shape[0]
    s_mask = np.zeros(n, dtype=bool)
    s_mask[list(S)] = True
    slope_ok = ~s_mask[:, None] | (g < times[:, None])  # (l', w)
    finite = np.isfinite(g)

    seen = set()
    faces = []
    for l in range(n):
        rl = times[l]
        member = (
            (times >= rl)[:, None] & (g <= rl) & finite & slope_ok
        )  # (l', w)
        for w in np.nonzero(g[l] <= rl)[0]:
            col = member[:, w]
            key = col.tobytes()
            if key in seen or not col.any():
                continue
            seen.add(key)
            faces.append(frozenset(np.nonzero(col)[0].tolist()))

    faces.sort(key=len, reverse=True)
    kept = []
    for f in faces:
        if not any(f < g_ for g_ in kept):
            kept.append(f)
    return kept


def filtration_values(lam, simplices) -> np.ndarray:
    """min-max filtration values of vertex sets under Lambda, vectorized."""
    lam = as_extended_matrix(lam)
    values = np.empty(len(simplices))
    by_card = {}
    for i, s in enumerate(simplices):
        by_card.setdefault(len(s), []).append(i)
    for card, idxs in by_card.items():
        verts = np.array([simplices[i] for i in idxs])  # (m, card)
        chunk = max(1, 10_000_000 // (card * lam.shape[1] + 1))
        for start in range(0, len(idxs), chunk):
            sl = verts[start : start + chunk]
            vv = lam[sl].max(axis=1).min(axis=1)
            values[idxs[start : start + chunk]] = vv
    return values


def skeleton_size(n: int, d: int) -> int:
    """Number of simplices in the full (d+1)-skeleton on n vertices."""
    return sum(math.comb(n, k) for k in range(1, d + 3))


def expand_skeleton(faces, d: int, max_simplices=None) -> set:
    """All subsets of the faces with cardinality <= d+2, deduplicated."""
    cap = d + 2
    if max_simplices is not None:
        for f in faces:
            lower = sum(math.comb(len(f), k) for k in range(1, min(len(f), cap) + 1))
            if lower > max_simplices:
                raise SizeLimitError(lower, max_simplices)
    simplices = set()
    for f in faces:
        base = tuple(sorted(f))
        for k in range(1, min(len(base), cap) + 1):
            simplices.update(combinations(base, k))
        if max_simplices is not None and len(simplices) > max_simplices:
            raise SizeLimitError(len(simplices), max_simplices)
    return simplices


def sparse_nerve(
    lam,
    gamma,
    R: RestrictionTimes,
    phi: ParentFunction,
    d: int,
    max_simplices=None,
) -> FilteredComplex:
    """(d+1)-skeleton of the sparse nerve with min-max values from Lambda."""
    if d < 0:
        raise InputValidationError("homology dimension must be >= 0")
    S = slope_points(phi, R)
    faces = maximal_faces(gamma, R, S)
    simplices = sorted(expand_skeleton(faces, d, max_simplices))
    values = filtration_values(lam, simplices)
    return make_filtered_complex(dict(zip(simplices, values)), dim_cap=d + 1)


def full_dowker_nerve(lam, d: int, max_simplices=None) -> FilteredComplex:
    """Exact Dowker nerve skeleton: every finite-valued subset of L, card <= d+2.

    Brute-force construction, intended as a small-instance oracle.
    """
    lam = as_extended_matrix(lam)
    n = lam.shape[0]
    if max_simplices is not None and skeleton_size(n, d) > max_simplices:
        raise SizeLimitError(skeleton_size(n, d), max_simplices)
    simplices = []
    for k in range(1, d + 3):
        simplices.extend(combinations(range(n), k))
    values = filtration_values(lam, simplices)
    finite = np.isfinite(values)
    return make_filtered_complex(
        {s: v for s, v, ok in zip(simplices, values, finite) if ok},
        dim_cap=d + 1,
    )


@dataclass(frozen=True)
class SparseNerveResult:
    """Everything produced by one run of the sparsification pipeline."""

    complex: FilteredComplex
    gamma: DowkerDissimilarity
    phi: ParentFunction
    restriction: RestrictionTimes


def sparse_dowker_nerve(
    dd: DowkerDissimilarity,
    alpha: TranslationFunction,
    d: int,
    initial_point: int = 0,
    max_simplices=None,
) -> SparseNerveResult:
    """Full pipeline: truncate, restrict along the truncation tree, extract the nerve.

    The cover matrix of (Lambda, alpha(Lambda)) drives the farthest-point
    truncation; the restriction times are read off a second cover matrix,
    of (Lambda, Gamma), along the truncation tree itself.  Using the tree
    that shaped Gamma keeps every point covered by its parent at its
    restriction time: the parent row was minimized against the child's.
    """
    if not isinstance(dd, DowkerDissimilarity):
        dd = DowkerDissimilarity(dd)
    alpha.validate_on(2.0 * dd.max_finite)
    rho = cover_matrix(dd.values, alpha(dd.values))
    tr = truncation_result(dd, alpha, initial_point, rho=rho)
    gamma = tr.gamma
    phi = tr.tree
    R = restriction_times(phi, cover_matrix(dd.values, gamma.values))
    complex_ = sparse_nerve(dd.values, gamma.values, R, phi, d, max_simplices)
    return SparseNerveResult(complex=complex_, gamma=gamma, phi=phi, restriction=R)


def _pairwise_distances(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    dm = np.sqrt(np.sum(diff * diff, axis=-1))
    np.fill_diagonal(dm, 0.0)
    return np.maximum(dm, dm.T)


def ambient_cech_nerve(
    points,
    alpha: TranslationFunction,
    d: int,
    initial_point: int = 0,
    max_simplices=None,
) -> FilteredComplex:
    """Sparse approximation of the ambient Cech complex of a Euclidean cloud.

    Runs the intrinsic pipeline on the pairwise distance matrix, doubles the
    restriction times, rebuilds the complex, and assigns every simplex the
    smallest-enclosing-ball radius of its vertices.  The result K satisfies
    N_t <= K_t <= (full ambient Cech)_t at every threshold.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise InputValidationError("expected a nonempty 2-d point array")
    dm = _pairwise_distances(X)
    dd = DowkerDissimilarity(dm, metric=True)
    alpha.validate_on(2.0 * dd.max_finite)
    rho = cover_matrix(dm, alpha(dm))
    tr = truncation_result(dd, alpha, initial_point, rho=rho)
    gamma = tr.gamma
    phi = tr.tree
    R_intrinsic = restriction_times(phi, cover_matrix(dm, gamma.values))
    R = RestrictionTimes(times=2.0 * R_intrinsic.times, tree=phi)
    skeleton = sparse_nerve(dm, gamma.values, R, phi, d, max_simplices)
    values = {s: miniball(X[list(s)])[1] for s in skeleton.simplices}
    return make_filtered_complex(_monotone_snap(values), dim_cap=d + 1)


def full_ambient_cech(points, d: int) -> FilteredComplex:
    """Exact ambient Cech skeleton with miniball values; small-instance oracle."""
    X = np.asarray(points, dtype=float)
    values = {}
    for k in range(1, d + 3):
        for s in combinations(range(X.shape[0]), k):
            values[s] = miniball(X[list(s)])[1]
    return make_filtered_complex(_monotone_snap(values), dim_cap=d + 1)


def _monotone_snap(values: dict) -> dict:
    """Lift each value to the max over present faces.

    Enclosing-ball radii are monotone under inclusion in exact arithmetic;
    this removes the epsilon-scale violations the solver can introduce.
    """
    out = {}
    for s in sorted(values, key=len):
        v = values[s]
        if len(s) > 1:
            for face in combinations(s, len(s) - 1):
                if face in out and out[face] > v:
                    v = out[face]
        out[s] = v
    return out
