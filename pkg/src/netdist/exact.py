"""Exhaustive network distances for small networks.

These are the ground truth the bounds are checked against. Everything is
brute force behind size guards; use :mod:`netdist.bounds` beyond them.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import config
from .core import Network, batch_distortion, correspondence_masks, gap_tensor
from .errors import CardinalityError, DimensionError

__all__ = [
    "dn_exact",
    "dn_exact_full",
    "dnhat_exact",
    "dn_two_node_closed_form",
    "is_strongly_isomorphic",
    "is_weakly_isomorphic",
]


def _min_distortion(X, Y, minimal, guard):
    gap = gap_tensor(X, Y)
    best = np.inf
    for chunk in correspondence_masks(X.n, Y.n, minimal=minimal, guard=guard):
        best = min(best, float(batch_distortion(chunk, gap).min()))
    return best


def dn_exact(X: Network, Y: Network, guard=None) -> float:
    """Half the least distortion, minimised over minimal correspondences."""
    return 0.5 * _min_distortion(X, Y, True, guard)


def dn_exact_full(X: Network, Y: Network, guard=None) -> float:
    """Same value as :func:`dn_exact`, minimised over every correspondence."""
    return 0.5 * _min_distortion(X, Y, False, guard)


def _permutations(n, guard):
    limit = config.DEFAULT_BIJECTION_GUARD if guard is None else int(guard)
    config.check_guard("bijection guard (n)", n, limit)
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def dnhat_exact(X: Network, Y: Network, guard=None) -> float:
    """Half the least distortion over bijections; needs equal cardinalities."""
    if X.n != Y.n:
        raise CardinalityError(f"bijections need equal sizes, got {X.n} and {Y.n}")
    perms = _permutations(X.n, guard)
    best = np.inf
    for s in range(0, len(perms), 8192):
        p = perms[s:s + 8192]
        moved = Y.weights[p[:, :, None], p[:, None, :]]
        best = min(best, float(np.abs(X.weights - moved).max(axis=(1, 2)).min()))
    return 0.5 * best


def dn_two_node_closed_form(X: Network, Y: Network) -> float:
    if X.n != 2 or Y.n != 2:
        raise DimensionError("closed form applies to two 2-node networks only")
    (a, d), (b, g) = X.weights
    (a2, d2), (b2, g2) = Y.weights
    keep = max(abs(a - a2), abs(b - b2), abs(d - d2), abs(g - g2))
    swap = max(abs(a - g2), abs(g - a2), abs(d - b2), abs(b - d2))
    return 0.5 * min(keep, swap)


def is_strongly_isomorphic(X: Network, Y: Network, tol: float = 0.0, guard=None) -> bool:
    if X.n != Y.n:
        return False
    perms = _permutations(X.n, guard)
    for s in range(0, len(perms), 8192):
        p = perms[s:s + 8192]
        moved = Y.weights[p[:, :, None], p[:, None, :]]
        if np.any(np.abs(X.weights - moved).max(axis=(1, 2)) <= tol):
            return True
    return False


def is_weakly_isomorphic(X: Network, Y: Network, tol: float = 0.0, guard=None) -> bool:
    return dn_exact(X, Y, guard) <= tol
