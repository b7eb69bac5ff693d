"""Dataset pipelines: normalisation, pairwise distance matrices and
single-linkage clustering."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds, exact
from .core import Network
from .errors import DegenerateInputError, DimensionError, GuardError, ParameterError
from .invariants import diam

__all__ = [
    "DistanceMatrix",
    "Dendrogram",
    "METHODS",
    "normalize_by_diameter",
    "pair_value",
    "distance_matrix",
    "single_linkage",
    "cluster_assignments",
    "cluster_purity",
]

EXACT_METHODS = ("dn", "dnhat")
METHODS = tuple(m.value for m in bounds.BoundMethod) + EXACT_METHODS


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        k = len(self.labels)
        if v.shape != (k, k):
            raise DimensionError(f"{k} labels for a matrix of shape {v.shape}")
        if not np.allclose(v, v.T, rtol=0, atol=1e-12):
            raise ValueError("distance matrix must be symmetric")
        if np.any(np.diag(v) != 0) or np.any(v < 0):
            raise ValueError("distance matrix needs a zero diagonal and non-negative entries")
        v.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Dendrogram:
    """Merges as ``(a, b, height)``. Leaves are 0..k-1 and the cluster made by
    merge r gets id k + r."""

    merges: tuple[tuple[int, int, float], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.merges) != len(self.labels) - 1:
            raise ValueError("a dendrogram on k leaves has exactly k-1 merges")
        heights = [h for _, _, h in self.merges]
        if any(b < a for a, b in zip(heights, heights[1:])):
            raise ValueError("merge heights must be non-decreasing")

    @property
    def heights(self) -> list[float]:
        return [h for _, _, h in self.merges]


def normalize_by_diameter(X: Network) -> Network:
    d = diam(X)
    if d == 0:
        raise DegenerateInputError("cannot normalise a network whose weights are all zero")
    return Network(X.weights / d, X.labels)


def pair_value(X: Network, Y: Network, method: str) -> float:
    if method == "dn":
        return exact.dn_exact(X, Y)
    if method == "dnhat":
        return exact.dnhat_exact(X, Y)
    return bounds.lower_bound(X, Y, method)


def _entry(args):
    i, j, X, Y, method = args
    try:
        return pair_value(X, Y, method)
    except GuardError as exc:
        raise GuardError(f"pair ({i}, {j}): {exc}", exc.guard_name, exc.limit, exc.requested) from exc


def distance_matrix(dataset: Sequence[Network], method: str = "spec_local_both",
                    normalize: bool = False, labels: Sequence[str] | None = None,
                    workers: int = 1) -> DistanceMatrix:
    """Symmetric matrix of pairwise values; each unordered pair is computed once."""
    if method not in METHODS:
        raise ParameterError(f"unknown method {method!r}; choose from {list(METHODS)}")
    nets = [normalize_by_diameter(X) if normalize else X for X in dataset]
    k = len(nets)
    labels = tuple(labels) if labels is not None else tuple(f"net{i}" for i in range(k))
    jobs = [(i, j, nets[i], nets[j], method) for i in range(k) for j in range(i + 1, k)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            vals = list(pool.map(_entry, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        vals = [_entry(job) for job in jobs]
    D = np.zeros((k, k))
    for (i, j, *_), v in zip(jobs, vals):
        D[i, j] = D[j, i] = v
    return DistanceMatrix(labels, D)


def single_linkage(D: DistanceMatrix) -> Dendrogram:
    """Agglomerate at minimum single-link distance.

    Ties go to the lexicographically smallest (id_a, id_b) among active
    cluster ids, with id_a < id_b.
    """
    k = len(D)
    if k < 2:
        raise DimensionError("single linkage needs at least two items")
    dist = {}
    values = D.values
    for a in range(k):
        for b in range(a + 1, k):
            dist[(a, b)] = float(values[a, b])
    active = list(range(k))
    merges = []
    next_id = k
    while len(active) > 1:
        (a, b), h = min(dist.items(), key=lambda kv: (kv[1], kv[0]))
        merges.append((a, b, h))
        active = [c for c in active if c not in (a, b)]
        for c in active:
            d = min(dist.pop(tuple(sorted((a, c)))), dist.pop(tuple(sorted((b, c)))))
            dist[(c, next_id)] = d
        del dist[(a, b)]
        active.append(next_id)
        next_id += 1
    return Dendrogram(tuple(merges), D.labels)


def cluster_assignments(dendro: Dendrogram, k: int) -> list[int]:
    """Flat cluster index per leaf after undoing the last k-1 merges."""
    leaves = len(dendro.labels)
    if not 1 <= k <= leaves:
        raise ParameterError(f"k must lie in [1, {leaves}]")
    parent = list(range(2 * leaves - 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, (a, b, _) in enumerate(dendro.merges[: leaves - k]):
        parent[find(a)] = leaves + r
        parent[find(b)] = leaves + r
    roots = [find(i) for i in range(leaves)]
    order = {root: idx for idx, root in enumerate(dict.fromkeys(roots))}
    return [order[r] for r in roots]


def cluster_purity(dendro: Dendrogram, classes: Sequence, k: int) -> float:
    leaves = len(dendro.labels)
    if len(classes) != leaves:
        raise DimensionError("need one class label per leaf")
    if not 2 <= k <= leaves:
        raise ParameterError(f"k must lie in [2, {leaves}]")
    groups: dict[int, list] = {}
    for cid, cls in zip(cluster_assignments(dendro, k), classes):
        groups.setdefault(cid, []).append(cls)
    majority = sum(Counter(members).most_common(1)[0][1] for members in groups.values())
    return majority / leaves
