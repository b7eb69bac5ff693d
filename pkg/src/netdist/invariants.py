"""Network invariants and the Hausdorff comparisons between them.

Set-valued invariants are returned as :class:`RealSet` (sorted, no
duplicates). Hausdorff distance cannot see multiplicity, so nothing is lost.
``diam``/``out``/``in`` use absolute weights; trace and spectra are signed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import config
from .core import Network
from .errors import EmptySetError

__all__ = [
    "RealSet",
    "MotifSet",
    "hausdorff_reals",
    "diam",
    "trace_set",
    "out_set",
    "in_set",
    "out_values",
    "in_values",
    "m_out",
    "m_in",
    "spec_global",
    "spec_out_local",
    "spec_in_local",
    "motif_set",
    "motif_distance",
]


@dataclass(frozen=True)
class RealSet:
    values: tuple[float, ...]

    @classmethod
    def of(cls, values: Iterable[float]) -> RealSet:
        return cls(tuple(np.unique(_flat(values)).tolist()))

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("RealSet values must be strictly increasing")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __contains__(self, x):
        return float(x) in self.values

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


def _flat(values) -> np.ndarray:
    if not isinstance(values, np.ndarray):
        values = list(values)
    return np.asarray(values, dtype=np.float64).ravel()


def _sorted_array(A) -> np.ndarray:
    if isinstance(A, RealSet):
        return A.as_array()
    return np.unique(_flat(A))


def _directed_sorted(a: np.ndarray, b: np.ndarray) -> float:
    """max over a of the distance to the nearest element of sorted b."""
    pos = np.searchsorted(b, a)
    left = b[np.clip(pos - 1, 0, len(b) - 1)]
    right = b[np.clip(pos, 0, len(b) - 1)]
    return float(np.max(np.minimum(np.abs(a - left), np.abs(a - right))))


def hausdorff_reals(A, B) -> float:
    """Hausdorff distance between two finite nonempty subsets of the line."""
    a, b = _sorted_array(A), _sorted_array(B)
    if a.size == 0 or b.size == 0:
        raise EmptySetError("Hausdorff distance needs nonempty sets")
    return max(_directed_sorted(a, b), _directed_sorted(b, a))


def diam(X: Network) -> float:
    return float(np.max(np.abs(X.weights)))


def out_values(X: Network) -> np.ndarray:
    """Per-node largest absolute outgoing weight (row maxima)."""
    return np.max(np.abs(X.weights), axis=1)


def in_values(X: Network) -> np.ndarray:
    """Per-node largest absolute incoming weight (column maxima)."""
    return np.max(np.abs(X.weights), axis=0)


def trace_set(X: Network) -> RealSet:
    return RealSet.of(np.diag(X.weights))


def out_set(X: Network) -> RealSet:
    return RealSet.of(out_values(X))


def in_set(X: Network) -> RealSet:
    return RealSet.of(in_values(X))


def m_out(X: Network) -> float:
    return float(np.min(out_values(X)))


def m_in(X: Network) -> float:
    return float(np.min(in_values(X)))


def spec_global(X: Network) -> RealSet:
    return RealSet.of(X.weights)


def _check_node(X, i):
    if not 0 <= i < X.n:
        raise IndexError(f"node index {i} out of range for a {X.n}-node network")


def spec_out_local(X: Network, i: int) -> RealSet:
    _check_node(X, i)
    return RealSet.of(X.weights[i, :])


def spec_in_local(X: Network, i: int) -> RealSet:
    _check_node(X, i)
    return RealSet.of(X.weights[:, i])


# -- motif sets --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MotifSet:
    """All n x n weight matrices realised by length-n node tuples.

    ``matrices`` has shape ``(k, n, n)`` with duplicate motifs removed.
    """

    order: int
    matrices: np.ndarray

    def __len__(self):
        return len(self.matrices)

    def __eq__(self, other):
        if not isinstance(other, MotifSet):
            return NotImplemented
        return self.order == other.order and np.array_equal(
            _canonical(self.matrices), _canonical(other.matrices))

    def __contains__(self, mat):
        mat = np.asarray(mat, dtype=np.float64).reshape(self.order, self.order)
        return bool(np.any(np.all(self.matrices == mat, axis=(1, 2))))


def _canonical(mats):
    flat = mats.reshape(len(mats), -1)
    return np.unique(flat, axis=0)


def motif_set(X: Network, n: int, guard: int | None = None) -> MotifSet:
    if n < 1:
        raise ValueError("motif order must be positive")
    limit = config.DEFAULT_MOTIF_GUARD if guard is None else int(guard)
    config.check_guard("motif guard (|X|^n)", X.n ** n, limit, "try a smaller motif order")
    tuples = np.indices((X.n,) * n).reshape(n, -1).T
    mats = X.weights[tuples[:, :, None], tuples[:, None, :]]
    flat = np.unique(mats.reshape(len(mats), -1), axis=0)
    return MotifSet(n, flat.reshape(-1, n, n))


def _directed_linf(A: np.ndarray, B: np.ndarray, block: int = 512) -> float:
    worst = 0.0
    for s in range(0, len(A), block):
        d = np.abs(A[s:s + block, None, :] - B[None, :, :]).max(axis=2)
        worst = max(worst, float(d.min(axis=1).max()))
    return worst


def motif_distance(X: Network, Y: Network, n: int, guard: int | None = None) -> float:
    """Hausdorff distance between n-motif sets under the entrywise max norm."""
    A = motif_set(X, n, guard).matrices.reshape(-1, n * n)
    B = motif_set(Y, n, guard).matrices.reshape(-1, n * n)
    return max(_directed_linf(A, B), _directed_linf(B, A))
