"""Example networks: small fixed networks, sampled directed circles and
simulated place-cell networks.

Simulation randomness comes from ``numpy.random.Generator`` seeded through
``SeedSequence``; the trajectory and the place fields get separate child
streams so changing the cell count never perturbs the walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Correspondence, Network
from .errors import DimensionError, ParameterError, SimulationError

__all__ = [
    "n1",
    "n2",
    "nk",
    "circle",
    "circle_rev",
    "circle_nesting_correspondence",
    "Environment",
    "SpikeRaster",
    "simulate_trajectory",
    "place_fields",
    "spike_raster",
    "hippocampal_network",
    "simulate_hippocampus",
    "HOLE_FRACTION",
]

TWO_PI = 2.0 * math.pi
HOLE_FRACTION = 0.33


def n1(alpha: float) -> Network:
    return Network([[alpha]], ("p",))


def n2(omega) -> Network:
    w = np.asarray(omega, dtype=np.float64)
    if w.shape != (2, 2):
        raise DimensionError(f"n2 needs a 2x2 matrix, got shape {w.shape}")
    return Network(w, ("p", "q"))


def nk(sigma) -> Network:
    return Network(sigma)


def _arc_matrix(n: int) -> np.ndarray:
    k = np.arange(n)
    steps = (k[None, :] - k[:, None]) % n
    return TWO_PI * steps / n


def circle(n: int) -> Network:
    """Directed circle on n equally spaced nodes; weight = counterclockwise arc."""
    if n < 1:
        raise DimensionError("circle needs at least one node")
    return Network(_arc_matrix(n), tuple(f"s{k}" for k in range(n)))


def circle_rev(n: int, rho: float) -> Network:
    """Directed circle where going clockwise costs ``rho`` times the arc."""
    if n < 1:
        raise DimensionError("circle needs at least one node")
    if not rho >= 1:
        raise ParameterError(f"reversibility must be >= 1, got {rho}")
    d = _arc_matrix(n)
    w = np.minimum(d, rho * d.T)
    return Network(w, tuple(f"s{k}" for k in range(n)))


def circle_nesting_correspondence(n: int, m: int) -> Correspondence:
    """Pair node l of circle(m) with the first node of circle(n) reached by
    moving counterclockwise from it (itself, if it is one).

    Returned as a correspondence between circle(m) (rows) and circle(n).
    """
    if n < 1 or m < 1:
        raise DimensionError("circle sizes must be positive")
    if m % n:
        raise ParameterError(f"{n} does not divide {m}")
    ratio = m // n
    pairs = {(l, -(-l // ratio) % n) for l in range(m)}
    return Correspondence(m, n, frozenset(pairs))


# -- place-cell simulation ---------------------------------------------------

@dataclass(frozen=True)
class Environment:
    """Square ``[0, side]^2``, optionally with a closed central disk removed."""

    side: float = 1.0
    hole_radius: float | None = None

    def __post_init__(self):
        if not self.side > 0:
            raise ParameterError("side must be positive")
        if self.hole_radius is not None and not 0 < self.hole_radius < self.side / 2:
            raise ParameterError("hole radius must lie in (0, side/2)")

    @classmethod
    def square(cls, side: float = 1.0) -> Environment:
        return cls(side)

    @classmethod
    def one_hole(cls, side: float = 1.0) -> Environment:
        return cls(side, HOLE_FRACTION * side)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.side / 2, self.side / 2])

    def contains(self, pts) -> np.ndarray:
        p = np.atleast_2d(np.asarray(pts, dtype=np.float64))
        ok = np.all((p >= 0) & (p <= self.side), axis=1)
        if self.hole_radius is not None:
            ok &= np.hypot(*(p - self.center).T) > self.hole_radius
        return ok

    def start(self) -> np.ndarray:
        if self.hole_radius is None:
            return self.center
        # midway across the band between hole and right wall
        return self.center + np.array([(self.hole_radius + self.side / 2) / 2, 0.0])


@dataclass(frozen=True, eq=False)
class SpikeRaster:
    spikes: np.ndarray           # (cells, steps) bool
    field_centers: np.ndarray    # (cells, 2)
    field_radius: float

    def __post_init__(self):
        if self.spikes.ndim != 2 or self.field_centers.shape != (self.spikes.shape[0], 2):
            raise DimensionError("raster and field centres disagree on the cell count")

    @property
    def cells(self) -> int:
        return self.spikes.shape[0]

    @property
    def steps(self) -> int:
        return self.spikes.shape[1]


_MOVES = np.array([[0, 1], [0, -1], [-1, 0], [1, 0]])  # up, down, left, right


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def simulate_trajectory(env: Environment, steps: int, step_len: float, seed=None) -> np.ndarray:
    """Lattice random walk; disallowed moves are dropped and the remaining
    directions stay equally likely. Returns ``(steps + 1, 2)`` positions."""
    if not step_len > 0:
        raise ParameterError("step length must be positive")
    rng = _rng(seed)
    origin = env.start()
    # integer lattice offsets avoid drift from repeated float addition
    cell = np.zeros(2, dtype=np.int64)
    path = np.empty((steps + 1, 2))
    path[0] = origin
    for t in range(1, steps + 1):
        candidates = origin + (cell + _MOVES) * step_len
        allowed = np.flatnonzero(env.contains(candidates))
        if allowed.size == 0:
            raise SimulationError(f"walker stuck at {path[t - 1]}")
        cell = cell + _MOVES[allowed[rng.integers(allowed.size)]]
        path[t] = origin + cell * step_len
    return path


def place_fields(env: Environment, count: int, radius: float, seed=None) -> np.ndarray:
    """Field centres drawn uniformly over the environment by rejection."""
    if count < 1:
        raise ParameterError("need at least one place field")
    if not radius > 0:
        raise ParameterError("field radius must be positive")
    rng = _rng(seed)
    out = np.empty((0, 2))
    while len(out) < count:
        batch = rng.uniform(0, env.side, size=(2 * count, 2))
        out = np.vstack([out, batch[env.contains(batch)]])
    return out[:count]


def spike_raster(trajectory, centers, radius: float, fire_prob: float | None = None, seed=None) -> SpikeRaster:
    """Cell i spikes at step t when the agent is within ``radius`` of centre i.

    With ``fire_prob`` set, each in-field step spikes only with that
    probability (off by default).
    """
    traj = np.asarray(trajectory, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64)
    dist = np.hypot(*(centers[:, None, :] - traj[None, :, :]).transpose(2, 0, 1))
    spikes = dist <= radius
    if fire_prob is not None:
        if not 0 <= fire_prob <= 1:
            raise ParameterError("fire_prob must lie in [0, 1]")
        spikes &= _rng(seed).random(spikes.shape) < fire_prob
    return SpikeRaster(spikes, centers, float(radius))


def hippocampal_network(raster: SpikeRaster, window: int = 5) -> Network:
    """``w(i, j) = 1 - (#spikes of j preceded by a spike of i within window
    steps) / (#spikes of j)``; 1 when j never spikes."""
    if window < 1:
        raise ParameterError("window must be >= 1")
    s = raster.spikes.astype(np.int64)
    cells, steps = s.shape
    csum = np.concatenate([np.zeros((cells, 1), dtype=np.int64), np.cumsum(s, axis=1)], axis=1)
    t = np.arange(steps)
    lo = np.maximum(t - window, 0)
    recent = (csum[:, t] - csum[:, lo]) > 0           # i spiked in [t-window, t-1]
    hits = recent.astype(np.int64) @ s.T              # hits[i, j]
    counts = s.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = 1.0 - hits / counts[None, :]
    w[:, counts == 0] = 1.0
    w = np.clip(w, 0.0, 1.0)
    return Network(w, tuple(f"cell{i}" for i in range(cells)))


def simulate_hippocampus(env: Environment, cells: int = 200, steps: int = 5000,
                         radius: float | None = None, seed=0, window: int = 5,
                         step_len: float | None = None) -> tuple[Network, SpikeRaster, np.ndarray]:
    """Walk, scatter fields, record spikes and build the network in one go."""
    radius = 0.1 * env.side if radius is None else radius
    step_len = 0.1 * env.side if step_len is None else step_len
    walk_ss, field_ss = np.random.SeedSequence(seed).spawn(2)
    traj = simulate_trajectory(env, steps, step_len, np.random.default_rng(walk_ss))
    centers = place_fields(env, cells, radius, np.random.default_rng(field_ss))
    raster = spike_raster(traj, centers, radius)
    return hippocampal_network(raster, window), raster, traj
