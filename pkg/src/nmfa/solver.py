"""Noisy mean-field annealing.

One iteration computes, for every spin simultaneously, the normalized mean
field plus fresh Gaussian noise, maps it through the Boltzmann response
-tanh(phi/T) at the current temperature, and mixes the result into the spin
with feedback weight alpha.  The temperature follows a piecewise exponential
schedule over the iteration count; the final analog spins are sign-rounded
to a +-1 configuration.

Randomness: each run owns a counter-based Philox4x32-10 stream keyed by
``(RUN_STREAM_TAG << 64) | seed``, and run k of a batch uses seed + k
(mod 2^64).  Normal deviates come from numpy's ziggurat rejection sampler,
which is a fixed function of the stream.  Noise is drawn as one
standard-normal matrix of shape (t_f, n), so draws are tied to spin
indices, never to execution order.
Results are therefore bit-identical for a given seed regardless of thread
count.  The two kernel backends agree to roughly 1e-12 per step (numpy's
vectorized tanh may differ from libm by one ulp); within a backend, runs
are exactly reproducible.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .problem import energy, sign_round

MASK64 = (1 << 64) - 1

# Disjoint 128-bit Philox key spaces for solver noise vs. instance generation.
RUN_STREAM_TAG = 2

DEFAULT_ALPHA = 0.15
DEFAULT_SIGMA = 0.15
DEFAULT_TF = 1000


class Schedule:
    """Piecewise exponential temperature curve over the anneal fraction.

    Defined by breakpoints (f_k, T_k) with f_0 = 0, f_last = 1 and f strictly
    increasing; between breakpoints the temperature interpolates
    geometrically, so log T is piecewise linear in f.
    """

    def __init__(self, breakpoints):
        pts = [(float(f), float(T)) for f, T in breakpoints]
        if len(pts) < 2:
            raise ValueError("schedule needs at least two breakpoints")
        fs = np.array([f for f, _ in pts])
        Ts = np.array([T for _, T in pts])
        if fs[0] != 0.0 or fs[-1] != 1.0:
            raise ValueError("schedule must start at f=0 and end at f=1")
        if np.any(np.diff(fs) <= 0.0):
            raise ValueError("schedule fractions must be strictly increasing")
        if np.any(Ts <= 0.0) or not np.all(np.isfinite(Ts)):
            raise ValueError("schedule temperatures must be positive and finite")
        self._fs = fs
        self._Ts = Ts
        self._fs.flags.writeable = False
        self._Ts.flags.writeable = False

    @property
    def breakpoints(self):
        return tuple(zip(self._fs.tolist(), self._Ts.tolist()))

    def temperatures(self, t_f):
        """Temperatures for iterations t = 1..t_f."""
        t_f = int(t_f)
        if t_f < 1:
            raise ValueError("t_f must be at least 1")
        if t_f == 1:
            f = np.zeros(1)
        else:
            f = np.arange(t_f) / (t_f - 1)
        fs, Ts = self._fs, self._Ts
        k = np.clip(np.searchsorted(fs, f, side="right") - 1, 0, len(fs) - 2)
        frac = (f - fs[k]) / (fs[k + 1] - fs[k])
        out = Ts[k] * (Ts[k + 1] / Ts[k]) ** frac
        out[f >= fs[-1]] = Ts[-1]
        return out

    def temperature(self, t, t_f):
        t, t_f = int(t), int(t_f)
        if t_f < 1:
            raise ValueError("t_f must be at least 1")
        if not 1 <= t <= t_f:
            raise ValueError(f"iteration {t} outside [1, {t_f}]")
        f = 0.0 if t_f == 1 else (t - 1) / (t_f - 1)
        fs, Ts = self._fs, self._Ts
        if f >= fs[-1]:
            return float(Ts[-1])
        k = min(max(int(np.searchsorted(fs, f, side="right")) - 1, 0), len(fs) - 2)
        frac = (f - fs[k]) / (fs[k + 1] - fs[k])
        return float(Ts[k] * (Ts[k + 1] / Ts[k]) ** frac)

    @classmethod
    def parse(cls, text):
        """Parse "f:T,f:T,..." (e.g. "0:2,0.25:0.8,0.75:0.2,1:0.02")."""
        pts = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            bits = part.split(":")
            if len(bits) != 2:
                raise ValueError(f"bad schedule point {part!r}, expected f:T")
            try:
                pts.append((float(bits[0]), float(bits[1])))
            except ValueError:
                raise ValueError(f"bad schedule point {part!r}, expected f:T") from None
        return cls(pts)

    def format(self):
        return ",".join(f"{f:g}:{T:g}" for f, T in self.breakpoints)

    def __repr__(self):
        return f"Schedule({self.format()!r})"

    def __eq__(self, other):
        return isinstance(other, Schedule) and self.breakpoints == other.breakpoints

    def __hash__(self):
        return hash(self.breakpoints)


# Default curve: noise-dominated start, mean-field-dominated finish.  These
# breakpoints are package defaults chosen by calibration (see README), not
# fixed constants of the method, and are overridable everywhere.
DEFAULT_SCHEDULE = Schedule([(0.0, 2.0), (0.25, 0.8), (0.75, 0.2), (1.0, 0.02)])


def schedule_eval(schedule, t, t_f):
    """Temperature at iteration t of t_f (t is 1-based)."""
    return schedule.temperature(t, t_f)


@dataclass(frozen=True)
class NmfaParams:
    """Solver parameters: feedback alpha, noise sigma, length t_f, schedule, seed."""

    alpha: float = DEFAULT_ALPHA
    sigma: float = DEFAULT_SIGMA
    t_f: int = DEFAULT_TF
    schedule: Schedule = DEFAULT_SCHEDULE
    seed: int = 0

    def __post_init__(self):
        # alpha = 0 is the degenerate identity step; useful dynamics need > 0
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if int(self.t_f) < 1:
            raise ValueError(f"t_f must be at least 1, got {self.t_f}")
        object.__setattr__(self, "t_f", int(self.t_f))
        if not 0 <= int(self.seed) <= MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class Trajectory:
    """Per-iteration record: analog spins and the energy of their rounding."""

    spins: np.ndarray      # (t_f, n)
    energies: np.ndarray   # (t_f,)


@dataclass(frozen=True)
class RunResult:
    final_config: np.ndarray
    final_energy: float
    seed: int
    wall_clock: float      # seconds for this run, measured
    trajectory: Trajectory | None = None


def noise_stream(seed):
    """Philox generator for a run's noise; documented stream identity."""
    key = (RUN_STREAM_TAG << 64) | (int(seed) & MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def run_with_noise(problem, temps, noise, alpha, s0=None, record_trajectory=False):
    """Anneal with caller-supplied noise; the seam for noise-pairing tests.

    ``noise`` has shape (t_f, n) and is the full additive term (already
    scaled by sigma).  Returns (final analog spins, Trajectory or None).
    """
    temps = np.asarray(temps, dtype=np.float64)
    noise = np.asarray(noise, dtype=np.float64)
    if noise.shape != (temps.shape[0], problem.n):
        raise ValueError(
            f"noise shape {noise.shape} does not match ({temps.shape[0]}, {problem.n})"
        )
    if s0 is None:
        s = np.zeros(problem.n)
    else:
        s = np.array(s0, dtype=np.float64)
        if s.shape != (problem.n,):
            raise ValueError(f"s0 length does not match problem size {problem.n}")
    if problem.is_dense:
        s, s_hist, e_hist = kernels.anneal_dense(
            problem.dense_weights, problem.h, problem.normalizers_safe,
            s, temps, noise, float(alpha), bool(record_trajectory),
        )
    else:
        s, s_hist, e_hist = kernels.anneal_sparse(
            problem.csr_indptr, problem.csr_indices, problem.csr_weights,
            problem.h, problem.normalizers_safe,
            s, temps, noise, float(alpha), bool(record_trajectory),
        )
    traj = Trajectory(spins=s_hist, energies=e_hist) if record_trajectory else None
    return s, traj


def nmfa_step(problem, s, T, params, rng):
    """One synchronous update of every spin at temperature T.

    All mean fields are computed from the incoming ``s`` before any spin is
    replaced; noise is drawn from ``rng`` as one length-n normal vector.
    """
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T}")
    noise = rng.standard_normal(problem.n) * params.sigma
    s_new, _ = run_with_noise(
        problem, np.array([float(T)]), noise[None, :], params.alpha, s0=s
    )
    return s_new


def _run(problem, params, temps, record_trajectory):
    t0 = time.perf_counter()
    rng = noise_stream(params.seed)
    noise = rng.standard_normal((params.t_f, problem.n))
    if params.sigma != 1.0:
        noise *= params.sigma
    s, traj = run_with_noise(
        problem, temps, noise, params.alpha, record_trajectory=record_trajectory
    )
    config = sign_round(s)
    e = energy(problem, config)
    return RunResult(
        final_config=config,
        final_energy=e,
        seed=params.seed,
        wall_clock=time.perf_counter() - t0,
        trajectory=traj,
    )


def nmfa_run(problem, params, record_trajectory=False):
    """Full anneal from all-zero spins; deterministic given (problem, seed)."""
    temps = params.schedule.temperatures(params.t_f)
    return _run(problem, params, temps, record_trajectory)


def nmfa_batch(problem, params, n_runs, threads=1, record_trajectory=False):
    """n_runs independent anneals; run k uses seed params.seed + k.

    Results come back in run order and are identical for any thread count,
    because every run owns its own noise stream.
    """
    n_runs = int(n_runs)
    if n_runs < 1:
        raise ValueError(f"n_runs must be at least 1, got {n_runs}")
    temps = params.schedule.temperatures(params.t_f)
    seeds = [(params.seed + k) & MASK64 for k in range(n_runs)]

    def one(seed):
        return _run(problem, replace(params, seed=seed), temps, record_trajectory)

    if threads <= 1:
        return [one(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=int(threads)) as pool:
        return list(pool.map(one, seeds))
