"""Exact ground-state oracle and benchmark statistics.

Ground truth for small instances comes from exhaustive enumeration; large
benchmark instances carry best-known energies instead.  Success probability
counts runs that reach the reference energy, and time to solution converts
that into the expected time to hit the optimum at least once with the given
confidence: TTS = tau * ln(1 - confidence) / ln(1 - p).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

# Exhaustive enumeration bound; 2^26 states is a few seconds in the
# compiled kernel.
MAX_EXACT_N = 26

ENERGY_TIE_TOL = 1e-9


@dataclass(frozen=True)
class GroundTruth:
    energy: float
    degeneracy: int      # 0 means unknown (BEST_KNOWN references)
    source: str          # "EXACT" or "BEST_KNOWN"


@dataclass(frozen=True)
class RunStats:
    """Per-instance benchmark summary over a batch of runs."""

    p_success: float
    tts_seconds: float   # may be math.inf when no run succeeded
    mean_energy: float
    best_energy: float


@dataclass(frozen=True)
class AggregateStats:
    """Median and interquartile range of per-instance stats at one size."""

    p_success_median: float
    p_success_q1: float
    p_success_q3: float
    tts_median: float
    tts_q1: float
    tts_q3: float


def brute_force_ground(problem):
    """Exact minimum energy and its degeneracy over all 2^n configurations.

    Enumerates in Gray-code order with single-flip incremental energy
    updates; limited to n <= MAX_EXACT_N.
    """
    if problem.n > MAX_EXACT_N:
        raise ValueError(
            f"exhaustive enumeration is limited to n <= {MAX_EXACT_N}, "
            f"got n = {problem.n}"
        )
    emin, count = kernels.gray_ground(
        problem.csr_indptr, problem.csr_indices, problem.csr_weights, problem.h
    )
    return GroundTruth(energy=float(emin), degeneracy=int(count), source="EXACT")


def success_probability(results, ground):
    """Fraction of runs whose final energy reaches the reference energy."""
    if not results:
        raise ValueError("success probability needs at least one run")
    hits = sum(1 for r in results if r.final_energy <= ground.energy + ENERGY_TIE_TOL)
    return hits / len(results)


def time_to_solution(p, tau_seconds, confidence=0.99):
    """Expected time to see the optimum at least once with given confidence.

    p is the per-run success probability and tau the time per run.  p = 0
    gives infinity; p >= confidence means a single run suffices.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"success probability must be in [0, 1], got {p}")
    if tau_seconds <= 0.0:
        raise ValueError(f"time per run must be positive, got {tau_seconds}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    if p == 0.0:
        return math.inf
    if p >= confidence:
        return tau_seconds
    return tau_seconds * math.log(1.0 - confidence) / math.log(1.0 - p)


def instance_stats(results, ground, tau_seconds, confidence=0.99):
    """Summarize one instance's batch against its ground truth."""
    p = success_probability(results, ground)
    energies = [r.final_energy for r in results]
    return RunStats(
        p_success=p,
        tts_seconds=time_to_solution(p, tau_seconds, confidence),
        mean_energy=float(np.mean(energies)),
        best_energy=float(min(energies)),
    )


def _percentile_sorted(v, q):
    # plain linear interpolation; exact picks avoid inf * 0 = nan when a
    # tail of the data is infinite (unreached TTS)
    pos = q / 100.0 * (v.size - 1)
    lo = math.floor(pos)
    frac = pos - lo
    if frac == 0.0:
        return float(v[lo])
    return float(v[lo] * (1.0 - frac) + v[lo + 1] * frac)


def median_iqr(values):
    """(median, 25th, 75th percentile) with linear interpolation."""
    v = np.sort(np.asarray(values, dtype=np.float64))
    if v.size == 0:
        raise ValueError("cannot aggregate an empty collection")
    return (
        _percentile_sorted(v, 50.0),
        _percentile_sorted(v, 25.0),
        _percentile_sorted(v, 75.0),
    )


def aggregate(per_instance_stats):
    """Median/IQR of success probability and TTS across instances."""
    stats = list(per_instance_stats)
    if not stats:
        raise ValueError("cannot aggregate an empty collection")
    p_med, p_q1, p_q3 = median_iqr([s.p_success for s in stats])
    t_med, t_q1, t_q3 = median_iqr([s.tts_seconds for s in stats])
    return AggregateStats(
        p_success_median=p_med, p_success_q1=p_q1, p_success_q3=p_q3,
        tts_median=t_med, tts_q1=t_q1, tts_q3=t_q3,
    )
