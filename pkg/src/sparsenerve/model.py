"""Shared domain types: Dowker dissimilarities, translation functions, parent trees.

Dissimilarity values live in the extended half line [0, inf].  We represent
them as float64 with ``numpy.inf`` as the maximum element; NaN is forbidden
everywhere and rejected at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

INF = np.inf

# Number of sample points used when checking a translation function.
VALIDATION_SAMPLES = 1024


class InputValidationError(ValueError):
    """Raised when an input object violates its construction contract."""


class SizeLimitError(RuntimeError):
    """Raised when a simplicial complex would exceed the configured size cap."""

    def __init__(self, attempted, limit):
        super().__init__(
            f"simplex budget exceeded: at least {attempted} simplices, limit {limit}"
        )
        self.attempted = attempted
        self.limit = limit


def as_extended_matrix(values) -> np.ndarray:
    """Coerce to a float64 matrix of extended values, rejecting NaN and negatives."""
    a = np.asarray(getattr(values, "values", values), dtype=float)
    if np.isnan(a).any():
        idx = tuple(int(i[0]) for i in np.nonzero(np.isnan(a)))
        raise InputValidationError(f"NaN entry at index {idx}")
    if (a < 0).any():
        idx = tuple(int(i[0]) for i in np.nonzero(a < 0))
        raise InputValidationError(f"negative entry at index {idx}")
    return a


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a dissimilarity matrix."""

    shape: tuple
    infinite_entries: int
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_dissimilarity(values, declared_metric: bool = False) -> ValidationReport:
    """Check a candidate Dowker dissimilarity matrix.

    Shape, NaN and negativity problems raise ``InputValidationError``.
    Metric-only problems (asymmetry, nonzero diagonal) are collected in the
    report so callers can decide how strict to be.
    """
    a = as_extended_matrix(values)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InputValidationError(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    violations = []
    if declared_metric:
        if a.shape[0] != a.shape[1]:
            violations.append(("not-square", a.shape))
        else:
            diag = np.nonzero(np.diagonal(a) != 0)[0]
            for i in diag[:10]:
                violations.append(("nonzero-diagonal", (int(i), int(i))))
            asym = np.nonzero(a != a.T)
            for i, j in list(zip(*asym))[:10]:
                violations.append(("asymmetric", (int(i), int(j))))
    return ValidationReport(
        shape=a.shape,
        infinite_entries=int(np.isinf(a).sum()),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class DowkerDissimilarity:
    """A finite matrix Lambda over L x W with entries in [0, inf].

    Rows index the landmark set L, columns the witness set W.  The matrix
    need not be square.  Instances declared ``metric`` must additionally be
    square, symmetric and zero on the diagonal.
    """

    values: np.ndarray
    metric: bool = False
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def __post_init__(self):
        a = as_extended_matrix(self.values)
        report = validate_dissimilarity(a, declared_metric=self.metric)
        if not report.ok:
            raise InputValidationError(
                f"declared-metric violations: {report.violations[:5]}"
            )
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "values", a)
        if self.row_labels is not None and len(self.row_labels) != a.shape[0]:
            raise InputValidationError("row label count does not match matrix")
        if self.col_labels is not None and len(self.col_labels) != a.shape[1]:
            raise InputValidationError("column label count does not match matrix")

    @property
    def n_landmarks(self) -> int:
        return self.values.shape[0]

    @property
    def n_witnesses(self) -> int:
        return self.values.shape[1]

    @property
    def max_finite(self) -> float:
        finite = self.values[np.isfinite(self.values)]
        return float(finite.max()) if finite.size else 0.0


class TranslationFunction:
    """A non-decreasing map alpha on [0, inf] with alpha(t) >= t.

    Supported kinds: identity, additive (t + a, a >= 0), multiplicative
    (c * t, c >= 1), polynomial (ascending coefficients), and tabulated
    (piecewise-linear through given knots, extended additively beyond the
    last knot).  Polynomial and tabulated instances are checked by dense
    sampling; call :meth:`validate_on` with the data scale before use in a
    pipeline.
    """

    def __init__(self, kind: str, params=None):
        self.kind = kind
        self.params = params
        if kind == "identity":
            pass
        elif kind == "additive":
            if params < 0:
                raise InputValidationError("additive shift must be >= 0")
        elif kind == "multiplicative":
            if params < 1:
                raise InputValidationError("multiplicative constant must be >= 1")
        elif kind == "polynomial":
            self.params = tuple(float(c) for c in params)
            if not self.params:
                raise InputValidationError("polynomial needs at least one coefficient")
            self.validate_on(float(VALIDATION_SAMPLES))
        elif kind == "tabulated":
            ts, vs = (np.asarray(x, dtype=float) for x in params)
            if ts.ndim != 1 or ts.shape != vs.shape or ts.size < 2:
                raise InputValidationError("tabulated grid needs matching 1-d arrays")
            if (np.diff(ts) <= 0).any():
                raise InputValidationError("tabulated grid must be strictly increasing")
            self.params = (ts, vs)
            self.validate_on(float(ts[-1]))
        else:
            raise InputValidationError(f"unknown translation kind {kind!r}")

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def additive(cls, a: float):
        return cls("additive", float(a))

    @classmethod
    def multiplicative(cls, c: float):
        return cls("multiplicative", float(c))

    @classmethod
    def polynomial(cls, coefficients):
        return cls("polynomial", coefficients)

    @classmethod
    def tabulated(cls, ts, values):
        return cls("tabulated", (ts, values))

    @classmethod
    def parse(cls, spec: str) -> "TranslationFunction":
        """Parse a CLI spec: ``id``, ``add:<a>``, ``mult:<c>``, ``poly:<c0>,<c1>,...``."""
        if spec == "id":
            return cls.identity()
        head, sep, rest = spec.partition(":")
        if not sep:
            raise InputValidationError(f"cannot parse interleaving spec {spec!r}")
        if head == "add":
            return cls.additive(float(rest))
        if head == "mult":
            return cls.multiplicative(float(rest))
        if head == "poly":
            return cls.polynomial([float(c) for c in rest.split(",")])
        raise InputValidationError(f"cannot parse interleaving spec {spec!r}")

    def __call__(self, t):
        scalar = np.isscalar(t) or (isinstance(t, np.ndarray) and t.ndim == 0)
        a = np.asarray(t, dtype=float)
        if self.kind == "identity":
            out = a.copy()
        elif self.kind == "additive":
            out = a + self.params
        elif self.kind == "multiplicative":
            out = a * self.params
        elif self.kind == "polynomial":
            out = np.zeros_like(a)
            with np.errstate(invalid="ignore"):
                for c in reversed(self.params):
                    out = out * a + c
            out = np.where(np.isinf(a), INF, out)
        else:  # tabulated
            ts, vs = self.params
            out = np.interp(a, ts, vs)
            out = np.where(a > ts[-1], vs[-1] + (a - ts[-1]), out)
            out = np.where(np.isinf(a), INF, out)
        return float(out) if scalar else out

    def validate_on(self, upper: float):
        """Sample-check monotonicity and alpha(t) >= t on [0, upper] plus infinity."""
        grid = np.linspace(0.0, max(upper, 1e-9), VALIDATION_SAMPLES)
        vals = self(grid)
        if (vals < grid - 1e-12).any():
            t = grid[np.nonzero(vals < grid - 1e-12)[0][0]]
            raise InputValidationError(
                f"translation function dips below the diagonal near t={t:.6g}"
            )
        if (np.diff(vals) < -1e-12).any():
            t = grid[np.nonzero(np.diff(vals) < -1e-12)[0][0]]
            raise InputValidationError(
                f"translation function decreases near t={t:.6g}"
            )
        if self(INF) != INF:
            raise InputValidationError("translation function must fix infinity")

    def preimage(self, x: float, tol: float = 1e-12) -> float:
        """Smallest t with alpha(t) >= x (inf maps to inf)."""
        if np.isinf(x):
            return INF
        if self.kind == "identity":
            return float(x)
        if self.kind == "additive":
            return max(0.0, x - self.params)
        if self.kind == "multiplicative":
            return x / self.params
        lo, hi = 0.0, float(x)  # alpha(x) >= x, so the preimage is <= x
        if self(lo) >= x:
            return 0.0
        while hi - lo > tol * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if self(mid) >= x:
                hi = mid
            else:
                lo = mid
        return hi

    def __repr__(self):
        return f"TranslationFunction({self.kind!r}, {self.params!r})"


def evaluate_translation(alpha: TranslationFunction, t):
    """Apply a validated translation function to a value or array."""
    return alpha(t)


@dataclass(frozen=True)
class ParentFunction:
    """A map l -> parent(l) on {0..n-1} whose non-loop edges form a tree.

    Exactly one index is its own parent (the root); every other index
    reaches the root by iterating the map.
    """

    parent: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.parent, dtype=int)
        if p.ndim != 1 or p.size == 0:
            raise InputValidationError("parent map must be a nonempty 1-d index array")
        if ((p < 0) | (p >= p.size)).any():
            raise InputValidationError("parent index out of range")
        roots = np.nonzero(p == np.arange(p.size))[0]
        if roots.size != 1:
            raise InputValidationError(f"expected exactly one root, found {roots.size}")
        root = int(roots[0])
        # Walk each node to the root; a revisit before reaching it is a cycle.
        depth = np.full(p.size, -1, dtype=int)
        depth[root] = 0
        for l in range(p.size):
            path = []
            cur = l
            while depth[cur] < 0:
                path.append(cur)
                cur = int(p[cur])
                if len(path) > p.size:
                    raise InputValidationError(f"cycle through index {l}")
            for k, node in enumerate(reversed(path), start=depth[cur] + 1):
                depth[node] = k
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "parent", p)
        object.__setattr__(self, "_root", root)
        object.__setattr__(self, "_depth", depth)

    @property
    def root(self) -> int:
        return self._root

    @property
    def depth(self) -> np.ndarray:
        """Distance of each node from the root along the tree."""
        return self._depth

    def __len__(self):
        return self.parent.size

    def children(self) -> list:
        """Child lists per node, excluding the root's self-loop."""
        out = [[] for _ in range(len(self))]
        for l, p in enumerate(self.parent):
            if l != p:
                out[p].append(l)
        return out

    def leaves_first(self) -> np.ndarray:
        """Node order with every child before its parent."""
        return np.argsort(-self._depth, kind="stable")


@dataclass(frozen=True)
class RestrictionTimes:
    """Per-point removal deadlines R over the parent tree; R(root) = inf."""

    times: np.ndarray
    tree: ParentFunction = field(repr=False)

    def __post_init__(self):
        r = as_extended_matrix(np.atleast_1d(np.asarray(self.times, dtype=float)))
        if r.ndim != 1 or r.size != len(self.tree):
            raise InputValidationError("restriction times do not match the tree")
        if not np.isinf(r[self.tree.root]):
            raise InputValidationError("root restriction time must be infinite")
        p = self.tree.parent
        bad = np.nonzero(r[p] < r)[0]
        if bad.size:
            raise InputValidationError(
                f"restriction time of node {int(bad[0])} exceeds its parent's"
            )
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "times", r)

    def __getitem__(self, l):
        return float(self.times[l])

    def __len__(self):
        return self.times.size
