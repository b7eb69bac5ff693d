"""Networks, correspondences, distortion and the enumeration primitives.

A network is a finite node set with an arbitrary real weight on every
ordered pair of nodes (self-loops included). Everything mathematical here is
index based; labels only travel along for I/O and reporting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import config
from .errors import CoverageError, DimensionError

__all__ = [
    "Network",
    "Correspondence",
    "distortion",
    "compose",
    "enumerate_correspondences",
    "enumerate_minimal_correspondences",
    "enumerate_bijections",
    "correspondence_masks",
    "gap_tensor",
    "batch_distortion",
]


def _as_weight_matrix(weights) -> np.ndarray:
    w = np.array(weights, dtype=np.float64, copy=True)
    if w.ndim == 0:
        w = w.reshape(1, 1)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionError(f"weight matrix must be square, got shape {w.shape}")
    if w.shape[0] == 0:
        raise DimensionError("a network needs at least one node")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite (no NaN or inf)")
    w.flags.writeable = False
    return w


@dataclass(frozen=True, eq=False)
class Network:
    """Node labels plus an n x n weight matrix, ``weights[i, j] = w(x_i, x_j)``."""

    weights: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        w = _as_weight_matrix(self.weights)
        object.__setattr__(self, "weights", w)
        labels = tuple(str(s) for s in self.labels) or tuple(f"n{i}" for i in range(w.shape[0]))
        if len(labels) != w.shape[0]:
            raise DimensionError(f"{len(labels)} labels for a {w.shape[0]}-node network")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.labels, self.weights.tobytes()))

    def __repr__(self):
        return f"Network(n={self.n}, labels={list(self.labels)!r})"

    def permuted(self, perm: Sequence[int]) -> Network:
        """Relabel so that new node k is old node ``perm[k]``."""
        p = np.asarray(perm, dtype=np.intp)
        return Network(self.weights[np.ix_(p, p)], tuple(self.labels[k] for k in p))


@dataclass(frozen=True)
class Correspondence:
    """A relation between ``range(n)`` and ``range(m)`` covering both sides."""

    n: int
    m: int
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for i, j in pairs:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise DimensionError(f"pair {(i, j)} outside a {self.n} x {self.m} index range")
        rows = {i for i, _ in pairs}
        cols = {j for _, j in pairs}
        if len(rows) != self.n or len(cols) != self.m:
            missing_r = sorted(set(range(self.n)) - rows)
            missing_c = sorted(set(range(self.m)) - cols)
            raise CoverageError(f"not a correspondence: uncovered rows {missing_r}, columns {missing_c}")

    @classmethod
    def from_matrix(cls, matrix) -> Correspondence:
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2:
            raise DimensionError("correspondence matrix must be 2-d")
        rows, cols = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], frozenset(zip(rows.tolist(), cols.tolist())))

    @classmethod
    def identity(cls, n: int) -> Correspondence:
        return cls(n, n, frozenset((i, i) for i in range(n)))

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.m), dtype=bool)
        for i, j in self.pairs:
            a[i, j] = True
        return a

    def transpose(self) -> Correspondence:
        return Correspondence(self.m, self.n, frozenset((j, i) for i, j in self.pairs))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())

    def is_minimal(self) -> bool:
        """No pair can be dropped without losing coverage."""
        rows = np.bincount([i for i, _ in self.pairs], minlength=self.n)
        cols = np.bincount([j for _, j in self.pairs], minlength=self.m)
        return all(rows[i] == 1 or cols[j] == 1 for i, j in self.pairs)


def _coerce(R, n, m) -> Correspondence:
    if isinstance(R, Correspondence):
        if (R.n, R.m) != (n, m):
            raise DimensionError(f"correspondence is {R.n} x {R.m}, networks are {n} x {m}")
        return R
    return Correspondence(n, m, frozenset(R))


def distortion(R, X: Network, Y: Network) -> float:
    """Largest ``|w_X(i, i') - w_Y(j, j')|`` over pairs of pairs in ``R``."""
    R = _coerce(R, X.n, Y.n)
    idx = np.array(R.sorted_pairs(), dtype=np.intp)
    I, J = idx[:, 0], idx[:, 1]
    return float(np.max(np.abs(X.weights[np.ix_(I, I)] - Y.weights[np.ix_(J, J)])))


def compose(R: Correspondence, S: Correspondence) -> Correspondence:
    """``{(i, k) : (i, j) in R and (j, k) in S for some j}``."""
    if R.m != S.n:
        raise DimensionError(f"cannot compose {R.n}x{R.m} with {S.n}x{S.m}")
    forward: dict[int, set[int]] = {}
    for j, k in S.pairs:
        forward.setdefault(j, set()).add(k)
    out = {(i, k) for i, j in R.pairs for k in forward.get(j, ())}
    return Correspondence(R.n, S.m, frozenset(out))


# -- enumeration -------------------------------------------------------------

_CHUNK_BITS = 16


def _check_cells(n, m, guard):
    if n < 1 or m < 1:
        raise DimensionError("index ranges must be nonempty")
    limit = config.correspondence_guard(guard)
    config.check_guard(
        "correspondence guard (n*m)", n * m, limit,
        "raise the guard deliberately or use the polynomial lower bounds instead",
    )


def correspondence_masks(n: int, m: int, minimal: bool = False, guard=None) -> Iterator[np.ndarray]:
    """Yield chunks of boolean ``(k, n*m)`` arrays, one row per correspondence.

    Cell ``(i, j)`` is column ``i*m + j``. Rows come in increasing bitmask
    order, so the stream is deterministic.
    """
    _check_cells(n, m, guard)
    return _mask_chunks(n, m, minimal)


def _mask_chunks(n, m, minimal):
    cells = n * m
    shifts = np.arange(cells, dtype=np.int64)
    total = 1 << cells
    step = 1 << min(cells, _CHUNK_BITS)
    for start in range(1, total, step):
        codes = np.arange(start, min(start + step, total), dtype=np.int64)
        bits = ((codes[:, None] >> shifts) & 1).astype(bool)
        grid = bits.reshape(-1, n, m)
        row_cnt = grid.sum(axis=2)
        col_cnt = grid.sum(axis=1)
        ok = (row_cnt > 0).all(axis=1) & (col_cnt > 0).all(axis=1)
        if minimal:
            # every selected cell must be the only one in its row or its column
            sole = (row_cnt[:, :, None] == 1) | (col_cnt[:, None, :] == 1)
            ok &= (~grid | sole).reshape(len(codes), -1).all(axis=1)
        if ok.any():
            yield bits[ok]


def _masks_to_correspondences(n, m, chunks):
    for chunk in chunks:
        for row in chunk:
            cells = np.flatnonzero(row)
            yield Correspondence(n, m, frozenset(zip((cells // m).tolist(), (cells % m).tolist())))


def enumerate_correspondences(n: int, m: int, guard=None) -> Iterator[Correspondence]:
    """Every correspondence between ``range(n)`` and ``range(m)``, each once."""
    return _masks_to_correspondences(n, m, correspondence_masks(n, m, guard=guard))


def enumerate_minimal_correspondences(n: int, m: int, guard=None) -> Iterator[Correspondence]:
    """Correspondences from which no single pair can be removed."""
    return _masks_to_correspondences(n, m, correspondence_masks(n, m, minimal=True, guard=guard))


def enumerate_bijections(n: int, guard=None) -> Iterator[tuple[int, ...]]:
    limit = config.DEFAULT_BIJECTION_GUARD if guard is None else int(guard)
    config.check_guard("bijection guard (n)", n, limit)
    if n < 1:
        raise DimensionError("n must be positive")
    return itertools.permutations(range(n))


# -- vectorised distortion ---------------------------------------------------

def gap_tensor(X: Network, Y: Network) -> np.ndarray:
    """``G[c, c']`` = |w_X(i, i') - w_Y(j, j')| for cells c=(i, j), c'=(i', j')."""
    n, m = X.n, Y.n
    g = np.abs(X.weights[:, None, :, None] - Y.weights[None, :, None, :])
    return g.reshape(n * m, n * m)


def batch_distortion(masks: np.ndarray, gap: np.ndarray, block: int = 4096) -> np.ndarray:
    """Distortion of each boolean row of ``masks`` given ``gap_tensor`` output."""
    out = np.empty(len(masks))
    for s in range(0, len(masks), block):
        b = masks[s:s + block]
        both = b[:, :, None] & b[:, None, :]
        out[s:s + block] = np.where(both, gap, 0.0).max(axis=(1, 2))
    return out


def as_network(obj) -> Network:
    return obj if isinstance(obj, Network) else Network(obj)
