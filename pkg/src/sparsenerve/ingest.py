"""Input conversion: files, point clouds, weighted graphs, synthetic generators.

File formats are plain text, one row per line, comma or whitespace separated,
with ``inf`` for infinity and ``#`` starting a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from .model import INF, DowkerDissimilarity, InputValidationError


@dataclass(frozen=True)
class PointCloud:
    """Finite point set in Euclidean n-space."""

    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise InputValidationError(f"expected an (n, dim) array, got {p.shape}")
        if not np.isfinite(p).all():
            raise InputValidationError("point coordinates must be finite")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class WeightedGraph:
    """Simple weighted graph on nodes 0..node_count-1."""

    node_count: int
    edges: tuple  # (u, v, weight)
    directed: bool = False

    def __post_init__(self):
        edges = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise InputValidationError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise InputValidationError(f"self-loop at node {u}")
            if not np.isfinite(w) or w < 0:
                raise InputValidationError(f"bad weight {w} on edge ({u}, {v})")
            edges.append((u, v, w))
        object.__setattr__(self, "edges", tuple(edges))


def _parse_rows(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            tokens = body.replace(",", " ").split()
            try:
                rows.append((lineno, [float(t) for t in tokens]))
            except ValueError as exc:
                raise InputValidationError(
                    f"{path}:{lineno}: non-numeric token in {body!r}"
                ) from exc
    if not rows:
        raise InputValidationError(f"{path}: no data rows")
    return rows


def read_point_cloud(path) -> PointCloud:
    rows = _parse_rows(path)
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise InputValidationError(f"{path}:{lineno}: ragged row")
    return PointCloud(np.array([row for _, row in rows]))


def read_distance_matrix(path, metric: bool = True) -> DowkerDissimilarity:
    rows = _parse_rows(path)
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise InputValidationError(f"{path}:{lineno}: ragged row")
    return DowkerDissimilarity(np.array([row for _, row in rows]), metric=metric)


def read_edge_list(path, directed: bool = False) -> WeightedGraph:
    rows = _parse_rows(path)
    edges = []
    max_node = 0
    for lineno, row in rows:
        if len(row) == 2:
            u, v, w = row[0], row[1], 1.0
        elif len(row) == 3:
            u, v, w = row
        else:
            raise InputValidationError(
                f"{path}:{lineno}: expected 'u v' or 'u v weight'"
            )
        if u != int(u) or v != int(v):
            raise InputValidationError(f"{path}:{lineno}: node ids must be integers")
        edges.append((int(u), int(v), w))
        max_node = max(max_node, int(u), int(v))
    return WeightedGraph(node_count=max_node + 1, edges=tuple(edges), directed=directed)


def write_point_cloud(path, cloud: PointCloud):
    with open(path, "w") as fh:
        for row in cloud.points:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def write_distance_matrix(path, dd: DowkerDissimilarity):
    with open(path, "w") as fh:
        for row in dd.values:
            fh.write(" ".join("inf" if np.isinf(x) else repr(float(x)) for x in row) + "\n")


def write_edge_list(path, g: WeightedGraph):
    with open(path, "w") as fh:
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w!r}\n")


def write_diagram(path, diagram):
    with open(path, "w") as fh:
        for dim, b, d in diagram.points:
            fh.write(f"{dim},{b!r},{'inf' if np.isinf(d) else repr(d)}\n")


def distance_matrix(cloud: PointCloud) -> DowkerDissimilarity:
    """Euclidean distance matrix of a point cloud (square, symmetric)."""
    X = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, float)
    diff = X[:, None, :] - X[None, :, :]
    dm = np.sqrt(np.sum(diff * diff, axis=-1))
    dm = 0.5 * (dm + dm.T)
    np.fill_diagonal(dm, 0.0)
    return DowkerDissimilarity(dm, metric=True)


def shortest_path_matrix(g: WeightedGraph) -> DowkerDissimilarity:
    """All-pairs shortest-path distances; unreachable pairs are infinite."""
    n = g.node_count
    if g.edges:
        u, v, w = zip(*g.edges)
        adj = coo_matrix((w, (u, v)), shape=(n, n))
    else:
        adj = coo_matrix((n, n))
    dm = shortest_path(adj.tocsr(), directed=g.directed)
    np.fill_diagonal(dm, 0.0)
    return DowkerDissimilarity(dm, metric=not g.directed)


def raw_weight_matrix(g: WeightedGraph) -> DowkerDissimilarity:
    """Adjacency-weight dissimilarity: edge weight, inf off-edges, zero diagonal."""
    dm = np.full((g.node_count, g.node_count), INF)
    np.fill_diagonal(dm, 0.0)
    for u, v, w in g.edges:
        dm[u, v] = min(dm[u, v], w)
        if not g.directed:
            dm[v, u] = min(dm[v, u], w)
    return DowkerDissimilarity(dm)


GRAPH_KINDS = (
    "cycle",
    "star",
    "wheel",
    "ladder",
    "circular_ladder",
    "grid",
    "complete_multipartite",
)


def generate_graph(kind: str, **params) -> WeightedGraph:
    """Standard graph families, unit edge weights.

    Parameters: ``nodes`` for cycle/star/wheel; ``rungs`` for ladder and
    circular_ladder (2*rungs nodes); ``rows``/``cols`` for grid;
    ``groups``/``group_size`` for complete_multipartite.
    """
    if kind == "cycle":
        G = nx.cycle_graph(_positive(params, "nodes"))
    elif kind == "star":
        G = nx.star_graph(_positive(params, "nodes") - 1)
    elif kind == "wheel":
        G = nx.wheel_graph(_positive(params, "nodes"))
    elif kind == "ladder":
        G = nx.ladder_graph(_positive(params, "rungs"))
    elif kind == "circular_ladder":
        G = nx.circular_ladder_graph(_positive(params, "rungs"))
    elif kind == "grid":
        G = nx.grid_2d_graph(_positive(params, "rows"), _positive(params, "cols"))
        G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    elif kind == "complete_multipartite":
        sizes = [_positive(params, "group_size")] * _positive(params, "groups")
        G = nx.complete_multipartite_graph(*sizes)
    else:
        raise InputValidationError(f"unknown graph kind {kind!r}")
    edges = tuple((min(u, v), max(u, v), 1.0) for u, v in sorted(G.edges()))
    return WeightedGraph(node_count=G.number_of_nodes(), edges=edges)


def _positive(params, key) -> int:
    try:
        value = int(params[key])
    except KeyError as exc:
        raise InputValidationError(f"missing graph parameter {key!r}") from exc
    if value < 1:
        raise InputValidationError(f"graph parameter {key!r} must be >= 1")
    return value


def sample_clifford_torus(n: int, seed: int) -> PointCloud:
    """n points (cos u, sin u, cos v, sin v)/sqrt(2) with u, v uniform on [0, 2pi)."""
    if n < 1:
        raise InputValidationError("need at least one sample")
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, 2.0 * np.pi, size=n)
    v = rng.uniform(0.0, 2.0 * np.pi, size=n)
    pts = np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], axis=1) / np.sqrt(2.0)
    return PointCloud(pts)
