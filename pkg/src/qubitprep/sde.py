"""Reproducible Wiener increments and generic Euler-Maruyama time stepping.

Noise streams are counter-based (Philox) and keyed on (seed, path_id), so
the increments for a given path are a pure function of the key: identical
across runs, across worker counts, and independent between paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class IntegrationError(RuntimeError):
    """A stepper produced a non-finite state; carries the failing step index."""

    def __init__(self, message: str, step: int, path_id: int | None = None):
        super().__init__(message)
        self.step = step
        self.path_id = path_id


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t = 0, dt, ..., n_steps * dt."""
    dt: float
    n_steps: int

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")
        if self.n_steps < 0:
            raise ValueError(f"n_steps must be >= 0, got {self.n_steps!r}")

    @property
    def horizon(self) -> float:
        return self.n_steps * self.dt

    def times(self, stride: int = 1) -> np.ndarray:
        """Recorded times: every `stride` steps, always including t=0 and t=T."""
        idx = recorded_steps(self.n_steps, stride)
        return idx * self.dt


def recorded_steps(n_steps: int, stride: int) -> np.ndarray:
    """Step indices kept by a strided recorder: 0, stride, 2*stride, ..., n_steps."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride!r}")
    idx = np.arange(0, n_steps + 1, stride)
    if idx[-1] != n_steps:
        idx = np.append(idx, n_steps)
    return idx


@dataclass(frozen=True)
class NoiseSpec:
    """Keyed noise stream for one path on a fixed grid."""
    seed: int
    dt: float
    n_steps: int
    path_id: int = 0

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not 0 <= self.path_id < 2**64:
            raise ValueError(f"path_id must be a 64-bit unsigned integer, got {self.path_id!r}")


def path_rng(seed: int, path_id: int) -> np.random.Generator:
    """Philox generator with the 128-bit key (seed << 64) | path_id.

    Distinct (seed, path_id) pairs get distinct keys, hence provably
    non-overlapping streams.
    """
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(path_id)))


def wiener_increments(spec: NoiseSpec) -> np.ndarray:
    """i.i.d. N(0, dt) increments, bit-identical for identical specs."""
    rng = path_rng(spec.seed, spec.path_id)
    return rng.standard_normal(spec.n_steps) * np.sqrt(spec.dt)


class BlockNoise:
    """Streams Wiener increments for a batch of paths in step blocks.

    Successive blocks continue each path's keyed stream, so the
    concatenation over blocks is bit-identical to ``wiener_increments``
    for every path.
    """

    def __init__(self, seed: int, path_ids, dt: float, block_steps: int = 2000):
        self._rngs = [path_rng(seed, p) for p in path_ids]
        self._sqrt_dt = np.sqrt(dt)
        self.block_steps = block_steps

    def next_block(self, n_steps: int) -> np.ndarray:
        """Increments of shape (n_paths, n_steps)."""
        out = np.empty((len(self._rngs), n_steps))
        for i, rng in enumerate(self._rngs):
            out[i] = rng.standard_normal(n_steps)
        out *= self._sqrt_dt
        return out


@dataclass
class PathRecord:
    """Recorded times and states of one trajectory.

    ``states`` has shape (n_rec,) for scalar-state models or (n_rec, d)
    for coupled ones; column 0 is the true angle, column 1 the nominal.
    """
    times: np.ndarray
    states: np.ndarray
    path_id: int = 0
    record_increments: np.ndarray | None = None

    @property
    def delta(self) -> np.ndarray:
        return self.states if self.states.ndim == 1 else self.states[:, 0]

    @property
    def delta_nominal(self) -> np.ndarray | None:
        return None if self.states.ndim == 1 else self.states[:, 1]


def integrate(initial_state, stepper, grid: TimeGrid, noise, stride: int = 1,
              path_id: int = 0) -> PathRecord:
    """Euler-Maruyama driver: apply `stepper(state, t, dW, dt)` over the grid.

    `noise` is either a NoiseSpec (matching the grid) or a precomputed
    increment array of length n_steps.  The state is recorded every
    `stride` steps, always including t=0 and t=T.
    """
    if isinstance(noise, NoiseSpec):
        if noise.n_steps != grid.n_steps or noise.dt != grid.dt:
            raise ValueError("noise spec does not match the time grid")
        dW = wiener_increments(noise)
        path_id = noise.path_id
    else:
        dW = np.asarray(noise, dtype=float)
        if dW.shape != (grid.n_steps,):
            raise ValueError(f"expected {grid.n_steps} increments, got shape {dW.shape}")

    rec_idx = recorded_steps(grid.n_steps, stride)
    rec_set = set(int(i) for i in rec_idx)
    state = np.asarray(initial_state, dtype=float)
    records = [state.copy()]
    for s in range(grid.n_steps):
        state = np.asarray(stepper(state, s * grid.dt, dW[s], grid.dt), dtype=float)
        if not np.all(np.isfinite(state)):
            raise IntegrationError(f"non-finite state at step {s + 1}", s + 1, path_id)
        if (s + 1) in rec_set:
            records.append(state.copy())
    states = np.array(records)
    if states.ndim == 2 and states.shape[1] == 1:
        states = states[:, 0]
    return PathRecord(times=rec_idx * grid.dt, states=states, path_id=path_id)
