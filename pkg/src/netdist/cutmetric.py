"""Cut norm, cut distance on a shared node set, and the correspondence-based
cut analogue for finite metric spaces.

Subsets are handled as bitmasks. ``cut_norm`` and ``cut_delta_same_nodes``
enumerate the row subset and pick the best column subset in closed form
(all positive or all negative column sums), which is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import config
from .core import Correspondence, Network, correspondence_masks
from .errors import DimensionError, EmptySetError, MetricError

__all__ = [
    "WeightedGraph",
    "XiKind",
    "e_g",
    "cut_norm",
    "cut_delta_same_nodes",
    "xi_eval",
    "validate_metric",
    "dis_box",
    "delta_box",
]

METRIC_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    node_weights: np.ndarray
    edge_weights: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.node_weights, dtype=np.float64)
        b = np.asarray(self.edge_weights, dtype=np.float64)
        if b.ndim != 2 or b.shape != (a.size, a.size):
            raise DimensionError("edge weights must be n x n for n node weights")
        if np.any(a < 0) or abs(a.sum() - 1.0) > 1e-12:
            raise ValueError("node weights must be non-negative and sum to 1")
        if not np.all(np.isfinite(b)):
            raise ValueError("edge weights must be finite")
        object.__setattr__(self, "node_weights", a)
        object.__setattr__(self, "edge_weights", b)

    @classmethod
    def uniform(cls, beta) -> WeightedGraph:
        b = np.asarray(beta, dtype=np.float64)
        return cls(np.full(len(b), 1.0 / len(b)), b)

    @property
    def n(self) -> int:
        return self.node_weights.size


class XiKind(str, enum.Enum):
    HAUSDORFF = "hausdorff"
    MAX = "max"
    MIN = "min"


def _index(subset, n, what="subset"):
    idx = np.unique(np.asarray(list(subset), dtype=np.intp))
    if idx.size == 0:
        raise EmptySetError(f"{what} must be nonempty")
    if idx[0] < 0 or idx[-1] >= n:
        raise IndexError(f"{what} has indices outside range({n})")
    return idx


def e_g(G: WeightedGraph, S, T) -> float:
    s, t = _index(S, G.n, "S"), _index(T, G.n, "T")
    a = G.node_weights
    return float(a[s] @ G.edge_weights[np.ix_(s, t)] @ a[t])


def _subset_masks(n):
    codes = np.arange(1, 1 << n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(np.float64)


def _max_abs_block_sum(A: np.ndarray) -> float:
    """max over nonempty row sets S and any column set T of |sum_{S x T} A|."""
    sums = _subset_masks(A.shape[0]) @ A          # row-subset column sums
    pos = np.where(sums > 0, sums, 0.0).sum(axis=1)
    neg = np.where(sums < 0, -sums, 0.0).sum(axis=1)
    return float(np.maximum(pos, neg).max())


def _check_subset_guard(n, guard):
    limit = config.DEFAULT_SUBSET_GUARD if guard is None else int(guard)
    config.check_guard("subset guard (n)", n, limit)


def cut_norm(A, guard=None) -> float:
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError("cut norm needs a square matrix")
    n = A.shape[0]
    _check_subset_guard(n, guard)
    return _max_abs_block_sum(A) / n**2


def cut_delta_same_nodes(G: WeightedGraph, H: WeightedGraph, guard=None) -> float:
    if G.n != H.n:
        raise DimensionError(f"graphs have {G.n} and {H.n} nodes")
    _check_subset_guard(G.n, guard)
    wg = np.outer(G.node_weights, G.node_weights) * G.edge_weights
    wh = np.outer(H.node_weights, H.node_weights) * H.edge_weights
    return _max_abs_block_sum(wg - wh)


def validate_metric(D, tol: float = METRIC_TOL) -> np.ndarray:
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise MetricError("distance matrix must be square")
    if not np.all(np.isfinite(D)):
        raise MetricError("distances must be finite")
    if np.any(np.diag(D) != 0):
        raise MetricError("diagonal must be zero")
    if np.any(D < 0) or not np.allclose(D, D.T, rtol=0, atol=tol):
        raise MetricError("distances must be non-negative and symmetric")
    via = (D[:, :, None] + D[None, :, :]).min(axis=1)
    if np.any(D > via + tol):
        raise MetricError("triangle inequality violated")
    return D


def _xi(kind, block):
    if kind is XiKind.MAX:
        return block.max()
    if kind is XiKind.MIN:
        return block.min()
    return max(block.min(axis=1).max(), block.min(axis=0).max())


def xi_eval(kind, D, A, B, validate: bool = True) -> float:
    """Hausdorff / largest / smallest distance between index sets A and B."""
    kind = XiKind(kind)
    D = validate_metric(D) if validate else np.asarray(D, dtype=np.float64)
    a, b = _index(A, len(D), "A"), _index(B, len(D), "B")
    return float(_xi(kind, D[np.ix_(a, b)]))


def _xi_table(kind, D) -> np.ndarray:
    """E[s, t] = xi over node-subset bitmasks s, t (row/col 0 unused)."""
    n = len(D)
    masks = _subset_masks(n).astype(bool)
    E = np.zeros((1 << n, 1 << n))
    for s, ms in enumerate(masks, start=1):
        rows = D[ms]
        for t, mt in enumerate(masks, start=1):
            E[s, t] = _xi(kind, rows[:, mt])
    return E


def _dis_box_cells(cells, n, m, Ex, Ey):
    """dis_box for a correspondence given as flat cell indices (i*m + j)."""
    r = len(cells)
    sub = _subset_masks(r).astype(np.int64)
    bx = (1 << (cells // m)).astype(np.int64)
    by = (1 << (cells % m)).astype(np.int64)
    # projections of every subset of R, as node bitmasks
    px = np.bitwise_or.reduce(np.where(sub == 1, bx, 0), axis=1)
    py = np.bitwise_or.reduce(np.where(sub == 1, by, 0), axis=1)
    combos = np.unique(np.stack([px, py], axis=1), axis=0)
    cx, cy = combos[:, 0], combos[:, 1]
    return float(np.abs(Ex[np.ix_(cx, cx)] - Ey[np.ix_(cy, cy)]).max())


def dis_box(R: Correspondence, X: Network, Y: Network, kind="hausdorff", guard=None) -> float:
    """Largest discrepancy of the set function over all pairs of nonempty
    sub-relations of R."""
    kind = XiKind(kind)
    if (R.n, R.m) != (X.n, Y.n):
        raise DimensionError("correspondence does not match the spaces")
    limit = config.DEFAULT_DISBOX_GUARD if guard is None else int(guard)
    config.check_guard("dis_box guard (|R|)", len(R), limit)
    Dx, Dy = validate_metric(X.weights), validate_metric(Y.weights)
    cells = np.array([i * Y.n + j for i, j in R.sorted_pairs()], dtype=np.int64)
    return _dis_box_cells(cells, X.n, Y.n, _xi_table(kind, Dx), _xi_table(kind, Dy))


def delta_box(X: Network, Y: Network, kind="hausdorff", guard=None) -> float:
    """Half the least ``dis_box`` over all correspondences."""
    kind = XiKind(kind)
    limit = config.DEFAULT_DELTA_BOX_GUARD if guard is None else int(guard)
    config.check_guard("delta_box guard (n*m)", X.n * Y.n, limit)
    Ex = _xi_table(kind, validate_metric(X.weights))
    Ey = _xi_table(kind, validate_metric(Y.weights))
    best = np.inf
    for chunk in correspondence_masks(X.n, Y.n, guard=max(limit, X.n * Y.n)):
        for row in chunk:
            config.check_guard("dis_box guard (|R|)", int(row.sum()), config.DEFAULT_DISBOX_GUARD)
            best = min(best, _dis_box_cells(np.flatnonzero(row), X.n, Y.n, Ex, Ey))
    return 0.5 * best
