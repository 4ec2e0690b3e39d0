"""Command-line interface: generate, solve, bench, exact, schedule-dump.

Standard output is machine-parseable (key=value lines or CSV); progress and
timing go to standard error.  All randomness flows from --seed, so reruns
with identical flags produce byte-identical output files at any --threads.

Exit codes: 0 success, 2 usage error, 3 parse error (instance or config
file), 4 runtime error (missing file, size limit exceeded).
"""

import argparse
import csv
import io
import sys
import time
from dataclasses import replace

import numpy as np

from .config import ConfigError, load_config
from .generators import (
    gen_cubic_maxcut,
    gen_dense_maxcut,
    gen_sk,
    is_connected,
    moebius_ladder,
)
from .gset import GsetParseError, load_gset, write_gset, write_results_csv
from .metrics import (
    MAX_EXACT_N,
    GroundTruth,
    aggregate,
    brute_force_ground,
    instance_stats,
    success_probability,
)
from .problem import cut_value
from .solver import (
    DEFAULT_ALPHA,
    DEFAULT_SIGMA,
    DEFAULT_TF,
    DEFAULT_SCHEDULE,
    NmfaParams,
    Schedule,
    nmfa_batch,
    nmfa_run,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RUNTIME = 4

DEFAULT_RUNS = 100
BENCH_INSTANCES = 10
BENCH_RUNS = 1000


class UsageError(Exception):
    pass


def _add_solver_flags(p):
    p.add_argument("--config", help="run-configuration file (key = value lines)")
    p.add_argument("--alpha", type=float, help="feedback constant in (0, 1]")
    p.add_argument("--sigma", type=float, help="noise standard deviation")
    p.add_argument("--tf", type=int, help="iteration count")
    p.add_argument("--schedule", help="temperature breakpoints, e.g. 0:2,0.25:0.8,0.75:0.2,1:0.02")
    p.add_argument("--seed", type=int, help="base seed (default 0)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nmfa",
        description="Noisy mean-field annealing solver and benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a benchmark instance file")
    g.add_argument("--class", dest="cls", required=True,
                   choices=["sk", "dense", "cubic", "moebius"])
    g.add_argument("--n", type=int, required=True, help="spin count")
    g.add_argument("--p", type=float, default=0.5,
                   help="edge probability (dense class only, default 0.5)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: instance text to stdout)")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run a batch of anneals on an instance file")
    s.add_argument("instance", help="instance file path")
    _add_solver_flags(s)
    s.add_argument("--runs", type=int, help=f"number of runs (default {DEFAULT_RUNS})")
    s.add_argument("--threads", type=int, default=1, help="batch parallelism")
    s.add_argument("--out", help="per-run results CSV path")
    s.add_argument("--trajectory", action="store_true",
                   help="also record run 0 and write <out>.traj.csv")
    s.add_argument("--timings", action="store_true",
                   help="write measured wall clocks into the CSV (breaks byte-reproducibility)")
    s.add_argument("--reference-energy", type=float,
                   help="known ground energy; adds p_success to the summary")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="success-probability scaling over generated instances")
    b.add_argument("--class", dest="cls", required=True, choices=["sk", "dense", "cubic"])
    b.add_argument("--sizes", required=True, help="comma-separated spin counts, e.g. 10,14,18")
    b.add_argument("--instances", type=int, default=BENCH_INSTANCES,
                   help=f"instances per size (default {BENCH_INSTANCES})")
    b.add_argument("--runs", type=int, help=f"runs per instance (default {BENCH_RUNS})")
    b.add_argument("--p", type=float, default=0.5, help="edge probability (dense class)")
    _add_solver_flags(b)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--out", help="aggregate CSV path (default stdout)")
    b.add_argument("--timings", action="store_true",
                   help="report TTS in seconds from measured wall clock instead of run units")
    b.add_argument("--reference-energy", dest="reference_energy",
                   help="CSV of n,instance,energy for sizes beyond the enumeration bound")
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("exact", help="exhaustive ground state of a small instance")
    e.add_argument("instance", help="instance file path")
    e.set_defaults(func=cmd_exact)

    d = sub.add_parser("schedule-dump", help="CSV of the temperature at every iteration")
    _add_solver_flags(d)
    d.add_argument("--out", help="output path (default stdout)")
    d.set_defaults(func=cmd_schedule_dump)

    return parser


def _load_cfg(args):
    return load_config(args.config) if getattr(args, "config", None) else {}


def _pick(flag, cfg, key, default):
    if flag is not None:
        return flag
    if key in cfg:
        return cfg[key]
    return default


def _merged_params(args, cfg):
    schedule = DEFAULT_SCHEDULE
    if "schedule" in cfg:
        schedule = cfg["schedule"]
    if getattr(args, "schedule", None) is not None:
        try:
            schedule = Schedule.parse(args.schedule)
        except ValueError as exc:
            raise UsageError(f"bad --schedule: {exc}") from None
    try:
        return NmfaParams(
            alpha=_pick(getattr(args, "alpha", None), cfg, "alpha", DEFAULT_ALPHA),
            sigma=_pick(getattr(args, "sigma", None), cfg, "sigma", DEFAULT_SIGMA),
            t_f=_pick(getattr(args, "tf", None), cfg, "t_f", DEFAULT_TF),
            schedule=schedule,
            seed=_pick(getattr(args, "seed", None), cfg, "seed", 0),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _make_instance(cls, n, p, seed):
    try:
        if cls == "sk":
            return gen_sk(n, seed)
        if cls == "dense":
            return gen_dense_maxcut(n, p, seed)
        if cls == "cubic":
            return gen_cubic_maxcut(n, seed)
        if cls == "moebius":
            return moebius_ladder(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown instance class {cls!r}")


def cmd_generate(args):
    problem = _make_instance(args.cls, args.n, args.p, args.seed)
    text = write_gset(problem)
    summary = (
        f"class={args.cls}\nn={problem.n}\nedges={problem.num_edges}\n"
        f"connected={'yes' if is_connected(problem) else 'no'}\n"
    )
    if args.out is None:
        sys.stdout.write(text)
        sys.stderr.write(summary)
    else:
        _write_text(args.out, text)
        sys.stdout.write(summary)
    return EXIT_OK


def cmd_solve(args):
    cfg = _load_cfg(args)
    params = _merged_params(args, cfg)
    n_runs = _pick(args.runs, cfg, "n_runs", DEFAULT_RUNS)
    if n_runs < 1:
        raise UsageError(f"--runs must be at least 1, got {n_runs}")
    want_traj = args.trajectory or cfg.get("trajectory", False)
    if want_traj and args.out is None:
        raise UsageError("--trajectory requires --out for the trajectory file")

    problem = load_gset(args.instance)
    t0 = time.perf_counter()
    results = nmfa_batch(problem, params, n_runs, threads=args.threads)
    batch_wall = time.perf_counter() - t0

    if args.out is not None:
        csv_text = write_results_csv(
            results,
            {"instance_id": args.instance, "problem": problem, "timings": args.timings},
        )
        _write_text(args.out, csv_text)
    if want_traj:
        traj_run = nmfa_run(problem, params, record_trajectory=True)
        _write_text(args.out + ".traj.csv", _trajectory_csv(problem, params, traj_run))

    energies = np.array([r.final_energy for r in results])
    lines = [
        f"instance={args.instance}",
        f"n={problem.n}",
        f"edges={problem.num_edges}",
        f"runs={n_runs}",
        f"seed={params.seed}",
        f"mean_energy={float(np.mean(energies))!r}",
        f"best_energy={float(np.min(energies))!r}",
    ]
    if not np.any(problem.h != 0.0):
        cuts = np.array([cut_value(problem, r.final_config) for r in results])
        lines.append(f"mean_cut={float(np.mean(cuts))!r}")
        lines.append(f"best_cut={float(np.max(cuts))!r}")
    if args.reference_energy is not None:
        ref = GroundTruth(args.reference_energy, 0, "BEST_KNOWN")
        lines.append(f"p_success={success_probability(results, ref)!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stderr.write(
        f"wall_clock_total_s={batch_wall:.3f}\n"
        f"wall_clock_per_run_us={batch_wall / n_runs * 1e6:.1f}\n"
    )
    return EXIT_OK


def _trajectory_csv(problem, params, run):
    temps = params.schedule.temperatures(params.t_f)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "temperature", "energy"] + [f"s{i}" for i in range(problem.n)])
    for t in range(params.t_f):
        row = [t + 1, repr(float(temps[t])), repr(float(run.trajectory.energies[t]))]
        row += [repr(float(v)) for v in run.trajectory.spins[t]]
        writer.writerow(row)
    return buf.getvalue()


def _load_reference_energies(path):
    table = {}
    with open(path, "r", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().lower() == "n":
                continue
            if len(row) != 3:
                raise UsageError(f"reference energy rows must be n,instance,energy: {row}")
            try:
                table[(int(row[0]), int(row[1]))] = float(row[2])
            except ValueError:
                raise UsageError(f"bad reference energy row: {row}") from None
    return table


def cmd_bench(args):
    cfg = _load_cfg(args)
    params = _merged_params(args, cfg)
    n_runs = _pick(args.runs, cfg, "n_runs", BENCH_RUNS)
    if n_runs < 1 or args.instances < 1:
        raise UsageError("--runs and --instances must be at least 1")
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    if not sizes:
        raise UsageError("--sizes must list at least one size")

    references = None
    if args.reference_energy:
        references = _load_reference_energies(args.reference_energy)
    needs_ref = [n for n in sizes if n > MAX_EXACT_N]
    if needs_ref and references is None:
        raise UsageError(
            f"sizes {needs_ref} exceed the enumeration bound {MAX_EXACT_N}; "
            "supply --reference-energy"
        )

    rows = []
    instance_counter = 0
    for n in sizes:
        stats = []
        for g in range(args.instances):
            problem = _make_instance(args.cls, n, args.p, params.seed + instance_counter)
            if n <= MAX_EXACT_N:
                ground = brute_force_ground(problem)
            else:
                try:
                    ground = GroundTruth(references[(n, g)], 0, "BEST_KNOWN")
                except KeyError:
                    raise UsageError(
                        f"no reference energy for size {n} instance {g}"
                    ) from None
            run_params = replace(
                params, seed=(params.seed + instance_counter * n_runs) & ((1 << 64) - 1)
            )
            t0 = time.perf_counter()
            results = nmfa_batch(problem, run_params, n_runs, threads=args.threads)
            wall = time.perf_counter() - t0
            tau = wall / n_runs if args.timings else 1.0
            stats.append(instance_stats(results, ground, tau))
            instance_counter += 1
            sys.stderr.write(
                f"size {n} instance {g + 1}/{args.instances}: "
                f"p_success={stats[-1].p_success:.3f} ({wall:.2f}s)\n"
            )
        agg = aggregate(stats)
        rows.append([
            args.cls, n, args.instances, n_runs,
            repr(agg.p_success_q1), repr(agg.p_success_median), repr(agg.p_success_q3),
            repr(agg.tts_q1), repr(agg.tts_median), repr(agg.tts_q3),
        ])

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "class", "n", "instances", "runs",
        "p_success_q1", "p_success_median", "p_success_q3",
        "tts_q1", "tts_median", "tts_q3",
    ])
    writer.writerows(rows)
    _write_text(args.out, buf.getvalue())
    return EXIT_OK


def cmd_exact(args):
    problem = load_gset(args.instance)
    if problem.n > MAX_EXACT_N:
        raise RuntimeError(
            f"instance has {problem.n} spins; exhaustive enumeration is "
            f"limited to n <= {MAX_EXACT_N}"
        )
    gt = brute_force_ground(problem)
    lines = [
        f"instance={args.instance}",
        f"n={problem.n}",
        f"edges={problem.num_edges}",
        f"ground_energy={gt.energy!r}",
        f"degeneracy={gt.degeneracy}",
    ]
    if not np.any(problem.h != 0.0):
        lines.append(f"max_cut={(problem.w_total - gt.energy) / 2!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_schedule_dump(args):
    cfg = _load_cfg(args)
    params = _merged_params(args, cfg)
    temps = params.schedule.temperatures(params.t_f)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "temperature"])
    for t in range(params.t_f):
        writer.writerow([t + 1, repr(float(temps[t]))])
    _write_text(args.out, buf.getvalue())
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (GsetParseError, ConfigError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RUNTIME
    except RuntimeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RUNTIME
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
