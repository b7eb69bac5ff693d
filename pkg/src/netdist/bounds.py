"""Polynomial-time lower bounds on the network distance.

Every bound here is half the discrepancy of a 2-Lipschitz invariant. The
local-spectra bounds need a bottleneck assignment over correspondences,
solved by :func:`minmax_match` (threshold the sorted distinct costs until the
admissible cells cover every row and column).
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import invariants as inv
from .core import Network
from .errors import ParameterError

__all__ = [
    "BoundMethod",
    "BoundReport",
    "lb_scalar",
    "lb_hausdorff",
    "local_spectra_cost",
    "test_correspondence",
    "minmax_match",
    "lb_local_spectra",
    "lower_bound",
    "best_lower_bound",
]


class BoundMethod(str, enum.Enum):
    DIAM = "diam"
    TRACE = "trace"
    OUT = "out"
    IN = "in"
    M_OUT = "m_out"
    M_IN = "m_in"
    SPEC_GLOBAL = "spec_global"
    SPEC_LOCAL_OUT = "spec_local_out"
    SPEC_LOCAL_IN = "spec_local_in"
    SPEC_LOCAL_BOTH = "spec_local_both"


@dataclass(frozen=True)
class BoundReport:
    method: BoundMethod
    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("a lower bound on a distance cannot be negative")


_SCALARS = {"diam": inv.diam, "m_out": inv.m_out, "m_in": inv.m_in}
_SET_INVARIANTS = {
    "trace": inv.trace_set,
    "out": inv.out_set,
    "in": inv.in_set,
    "spec_global": inv.spec_global,
}


def _key(which, allowed):
    key = which.value if isinstance(which, BoundMethod) else str(which)
    if key not in allowed:
        raise ParameterError(f"unknown invariant {which!r}; expected one of {sorted(allowed)}")
    return key


def lb_scalar(X: Network, Y: Network, which="diam") -> float:
    f = _SCALARS[_key(which, _SCALARS)]
    return 0.5 * abs(f(X) - f(Y))


def lb_hausdorff(X: Network, Y: Network, which="spec_global") -> float:
    f = _SET_INVARIANTS[_key(which, _SET_INVARIANTS)]
    return 0.5 * inv.hausdorff_reals(f(X), f(Y))


def _nearest_gap(values: np.ndarray, sorted_row: np.ndarray) -> np.ndarray:
    """Distance from each entry of ``values`` to the closest element of ``sorted_row``."""
    pos = np.searchsorted(sorted_row, values)
    left = sorted_row[np.clip(pos - 1, 0, sorted_row.size - 1)]
    right = sorted_row[np.clip(pos, 0, sorted_row.size - 1)]
    return np.minimum(np.abs(values - left), np.abs(values - right))


def _pairwise_hausdorff(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Hausdorff distance between every row-set of A and every row-set of B.

    One sorted search per row keeps memory linear in the matrix sizes.
    """
    sa, sb = np.sort(A, axis=1), np.sort(B, axis=1)
    a_to_b = np.empty((A.shape[0], B.shape[0]))
    b_to_a = np.empty_like(a_to_b)
    for j in range(B.shape[0]):
        a_to_b[:, j] = _nearest_gap(A, sb[j]).max(axis=1)
    for i in range(A.shape[0]):
        b_to_a[i] = _nearest_gap(B, sa[i]).max(axis=1)
    return np.maximum(a_to_b, b_to_a)


def local_spectra_cost(X: Network, Y: Network, mode: str = "both") -> np.ndarray:
    """Cost ``C[i, j]`` comparing the local spectra of node i of X and node j of Y.

    ``mode="both"`` takes the entrywise max of the out and in costs.
    """
    if mode not in ("out", "in", "both"):
        raise ParameterError(f"mode must be 'out', 'in' or 'both', got {mode!r}")
    cost = None
    if mode in ("out", "both"):
        cost = _pairwise_hausdorff(X.weights, Y.weights)
    if mode in ("in", "both"):
        c_in = _pairwise_hausdorff(X.weights.T, Y.weights.T)
        cost = c_in if cost is None else np.maximum(cost, c_in)
    return cost


def test_correspondence(R: np.ndarray) -> bool:
    """True when the boolean matrix R has a True in every row and every column."""
    return bool(R.any(axis=1).all() and R.any(axis=0).all())


test_correspondence.__test__ = False  # not a pytest test


def minmax_match(C, bisect: bool = False) -> float:
    """min over correspondences R of max_{(i,j) in R} C[i, j].

    Linear scan over the sorted distinct entries of C; ``bisect=True`` binary
    searches the same list instead and returns the same value.
    """
    C = np.asarray(C, dtype=np.float64)
    if C.ndim != 2 or C.size == 0:
        raise ParameterError("cost matrix must be a nonempty 2-d array")
    values = np.unique(C)
    if not bisect:
        for c in values:
            if test_correspondence(C <= c):
                return float(c)
        return float(values[-1])  # unreachable: the max always admits every cell
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if test_correspondence(C <= values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(values[lo])


def lb_local_spectra(X: Network, Y: Network, mode: str = "both", bisect: bool = False) -> float:
    return 0.5 * minmax_match(local_spectra_cost(X, Y, mode), bisect=bisect)


def lower_bound(X: Network, Y: Network, method) -> float:
    """Evaluate a single bound by method name."""
    try:
        key = BoundMethod(method).value
    except ValueError:
        raise ParameterError(
            f"unknown bound method {method!r}; choose from {[m.value for m in BoundMethod]}"
        ) from None
    if key in _SCALARS:
        return lb_scalar(X, Y, key)
    if key in _SET_INVARIANTS:
        return lb_hausdorff(X, Y, key)
    return lb_local_spectra(X, Y, key.rsplit("_", 1)[1])


def best_lower_bound(X: Network, Y: Network, workers: int = 1) -> list[BoundReport]:
    """All implemented bounds, tightest first (ties keep declaration order)."""
    methods = list(BoundMethod)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(lambda m: lower_bound(X, Y, m), methods))
    else:
        values = [lower_bound(X, Y, m) for m in methods]
    reports = [BoundReport(m, v) for m, v in zip(methods, values)]
    return sorted(reports, key=lambda r: -r.value)
