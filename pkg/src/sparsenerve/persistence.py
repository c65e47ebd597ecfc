"""Persistent homology over Z/2 and interleaving verification utilities."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .model import INF, InputValidationError, TranslationFunction
from .nerve import FilteredComplex


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (dimension, birth, death) triples, canonically sorted.

    Zero-length pairs are dropped from ``points`` but counted in
    ``n_zero_length`` for diagnostics.
    """

    points: tuple
    n_zero_length: int = 0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    def in_dimension(self, k: int) -> list:
        return [(b, d) for dim, b, d in self.points if dim == k]

    def __len__(self):
        return len(self.points)


def _boundary_columns(K: FilteredComplex):
    index = {s: i for i, s in enumerate(K.simplices)}
    cols = []
    for s in K.simplices:
        if len(s) == 1:
            cols.append(frozenset())
        else:
            try:
                cols.append(
                    frozenset(
                        index[s[:j] + s[j + 1 :]] for j in range(len(s))
                    )
                )
            except KeyError as exc:
                raise InputValidationError(
                    f"complex is not closed: missing face of {s}"
                ) from exc
    return cols


def _reduce_twist(cols, dims):
    """Column reduction in decreasing dimension with clearing.

    Returns (pairs, essential) where pairs are (birth_index, death_index)
    and essential are unpaired creator indices.
    """
    n = len(cols)
    pivot = {}
    cleared = [False] * n
    reduced = {}
    creators = set(i for i in range(n) if dims[i] == 0)
    for p in range(max(dims, default=0), 0, -1):
        for j in range(n):
            if dims[j] != p or cleared[j]:
                continue
            col = set(cols[j])
            while col:
                low = max(col)
                other = pivot.get(low)
                if other is None:
                    break
                col ^= reduced[other]
            if col:
                low = max(col)
                pivot[low] = j
                reduced[j] = col
                cleared[low] = True
            else:
                creators.add(j)
    pairs = sorted((low, j) for low, j in pivot.items())
    essential = sorted(i for i in creators if i not in pivot)
    return pairs, essential


def _reduce_plain(cols, dims):
    """Textbook left-to-right reduction; used to cross-check the twist variant."""
    n = len(cols)
    pivot = {}
    reduced = {}
    zeroed = []
    for j in range(n):
        col = set(cols[j])
        while col:
            low = max(col)
            other = pivot.get(low)
            if other is None:
                break
            col ^= reduced[other]
        if col:
            pivot[max(col)] = j
            reduced[j] = col
        else:
            zeroed.append(j)
    pairs = sorted((low, j) for low, j in pivot.items())
    paired_births = set(pivot.keys())
    essential = [j for j in zeroed if j not in paired_births]
    return pairs, essential


def compute_persistence(
    K: FilteredComplex, max_dim: int, algorithm: str = "twist"
) -> PersistenceDiagram:
    """Persistence diagram of a filtered complex over Z/2, dimensions 0..max_dim.

    The complex must be sorted, downward closed and monotone (checked).
    Deaths in dimension k need (k+1)-simplices, so ``max_dim`` should be at
    most ``K.dim_cap - 1`` for the top dimension to be complete.
    """
    K.check()
    dims = [len(s) - 1 for s in K.simplices]
    cols = _boundary_columns(K)
    reduce = {"twist": _reduce_twist, "plain": _reduce_plain}[algorithm]
    pairs, essential = reduce(cols, dims)
    values = K.values
    points = []
    zero_length = 0
    for birth, death in pairs:
        dim = dims[birth]
        if dim > max_dim:
            continue
        b, d = float(values[birth]), float(values[death])
        if b == d:
            zero_length += 1
        else:
            points.append((dim, b, d))
    for i in essential:
        if dims[i] <= max_dim:
            points.append((dims[i], float(values[i]), INF))
    return PersistenceDiagram(points=tuple(points), n_zero_length=zero_length)


@dataclass(frozen=True)
class InterleavingLine:
    """Polyline (t, alpha(t)) drawn over a persistence diagram."""

    alpha: TranslationFunction
    ts: np.ndarray
    vs: np.ndarray

    def guaranteed(self, birth: float, death: float) -> bool:
        """True when the point is certified to match a true feature."""
        return death > self.alpha(birth)


def interleaving_line(
    alpha: TranslationFunction, t_max: float, samples: int = 256
) -> InterleavingLine:
    """Sample the graph of alpha on [0, t_max]."""
    if t_max <= 0:
        raise InputValidationError("t_max must be positive")
    ts = np.linspace(0.0, t_max, samples)
    return InterleavingLine(alpha=alpha, ts=ts, vs=np.asarray(alpha(ts)))


@dataclass(frozen=True)
class InterleavingReport:
    """Result of attempting an interleaving-compatible partial matching."""

    passed: bool
    matching: tuple  # ((dim, approx_point, exact_point), ...)
    unmatched_required: tuple
    messages: tuple = ()


def _box_admissible(alpha, a, e, tol):
    """Can approx point a=(b,d) match exact point e=(b',d') within the alpha box?"""
    for x, y in ((a[0], e[0]), (a[1], e[1])):
        lo = alpha.preimage(x)
        hi = alpha(x)
        if np.isinf(x):
            if not np.isinf(y):
                return False
            continue
        if np.isinf(y):
            return False
        if not (lo - tol <= y <= hi + tol):
            return False
    return True


def _saturating_matching(edges, n_left, n_right, req_left, req_right):
    """Partial matching covering both required sets, via max-flow with lower bounds.

    Returns the matching as a list of (left, right) pairs, or None if no
    feasible matching exists.
    """
    G = nx.DiGraph()
    src, snk, ssrc, ssnk = "s", "t", "S*", "T*"
    excess = {}

    def add(u, v, low, cap):
        G.add_edge(u, v, capacity=cap - low)
        if low:
            excess[v] = excess.get(v, 0) + low
            excess[u] = excess.get(u, 0) - low

    for i in range(n_left):
        add(src, ("a", i), 1 if i in req_left else 0, 1)
    for j in range(n_right):
        add(("e", j), snk, 1 if j in req_right else 0, 1)
    for i, j in edges:
        add(("a", i), ("e", j), 0, 1)
    add(snk, src, 0, len(edges) + 1)
    need = 0
    for node, ex in excess.items():
        if ex > 0:
            G.add_edge(ssrc, node, capacity=ex)
            need += ex
        elif ex < 0:
            G.add_edge(node, ssnk, capacity=-ex)
    if need == 0:
        return []
    flow_value, flow = nx.maximum_flow(G, ssrc, ssnk)
    if flow_value < need:
        return None
    matched = []
    for i in range(n_left):
        # a->e edges have zero lower bound, so their flow is the real flow
        for v, f in flow.get(("a", i), {}).items():
            if f > 0 and isinstance(v, tuple) and v[0] == "e":
                matched.append((i, v[1]))
    return matched


def diagram_interleaving_check(
    exact: PersistenceDiagram,
    approx: PersistenceDiagram,
    alpha: TranslationFunction,
    tol: float = 1e-9,
) -> InterleavingReport:
    """Verify that two diagrams are compatible with an alpha interleaving.

    Per dimension, looks for a partial matching where every point (b, d)
    with d > alpha(b) — on either side — is matched, and matched coordinates
    lie inside each other's alpha boxes [preimage(x), alpha(x)].  For a
    multiplicative alpha this is the multiplicative bottleneck check:
    matched coordinates agree within the factor, unmatched points satisfy
    d <= c * b.
    """
    dims = sorted({p[0] for p in exact.points} | {p[0] for p in approx.points})
    all_matches = []
    unmatched = []
    messages = []
    passed = True
    for k in dims:
        A = approx.in_dimension(k)
        E = exact.in_dimension(k)
        req_a = {i for i, (b, d) in enumerate(A) if d > alpha(b) + tol}
        req_e = {j for j, (b, d) in enumerate(E) if d > alpha(b) + tol}
        edges = [
            (i, j)
            for i, a in enumerate(A)
            for j, e in enumerate(E)
            if _box_admissible(alpha, a, e, tol)
        ]
        matching = _saturating_matching(edges, len(A), len(E), req_a, req_e)
        if matching is None:
            passed = False
            unmatched.append(k)
            messages.append(f"dimension {k}: no admissible saturating matching")
            continue
        all_matches.extend((k, A[i], E[j]) for i, j in matching)
    return InterleavingReport(
        passed=passed,
        matching=tuple(all_matches),
        unmatched_required=tuple(unmatched),
        messages=tuple(messages),
    )
