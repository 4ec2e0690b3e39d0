"""Reading and writing benchmark instances and machine-readable results.

Instance files use the common edge-list text format: a header line
"n_vertices n_edges" followed by one "u v w" line per edge with 1-based
vertex indices.  Lines starting with '#' or 'c' are comments; blank lines
are ignored.  The writer emits a canonical form (edges sorted by (u, v),
single-space separated, trailing newline) so parse(write(p)) round-trips.
"""

import csv
import io

import numpy as np

from .problem import IsingProblem, cut_value


class GsetParseError(ValueError):
    """Malformed instance text; carries the 1-based offending line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _tokens(text):
    """Yield (line_no, token_list) for content lines, skipping comments."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c"):
            continue
        yield line_no, line.split()


def parse_gset(text):
    """Parse instance text into a zero-field problem."""
    it = _tokens(text)
    try:
        line_no, parts = next(it)
    except StopIteration:
        raise GsetParseError(0, "empty instance: missing header") from None
    if len(parts) != 2:
        raise GsetParseError(line_no, f"header must be 'n m', got {len(parts)} tokens")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GsetParseError(line_no, f"non-numeric header token in {parts}") from None
    if n < 1:
        raise GsetParseError(line_no, f"vertex count must be positive, got {n}")
    if m < 0:
        raise GsetParseError(line_no, f"edge count must be nonnegative, got {m}")

    seen = set()
    couplers = np.empty((m, 3))
    count = 0
    last_line = line_no
    for line_no, parts in it:
        last_line = line_no
        if len(parts) != 3:
            raise GsetParseError(
                line_no, f"edge line must be 'u v w', got {len(parts)} tokens"
            )
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GsetParseError(line_no, f"non-numeric token in {parts}") from None
        if not 1 <= u <= n or not 1 <= v <= n:
            raise GsetParseError(line_no, f"vertex index out of range [1, {n}]")
        if u == v:
            raise GsetParseError(line_no, f"self-loop at vertex {u}")
        if w == 0.0 or not np.isfinite(w):
            raise GsetParseError(line_no, f"edge weight must be finite and nonzero, got {parts[2]}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GsetParseError(line_no, f"duplicate edge {key}")
        seen.add(key)
        if count >= m:
            raise GsetParseError(line_no, f"more edge lines than the declared {m}")
        couplers[count] = (u - 1, v - 1, w)
        count += 1
    if count != m:
        raise GsetParseError(last_line, f"header declared {m} edges but found {count}")
    return IsingProblem(n, couplers)


def load_gset(path):
    """Read and parse an instance file; undecodable bytes become parse errors."""
    with open(path, "rb") as fh:
        raw = fh.read()
    return parse_gset(raw.decode("utf-8", errors="replace"))


def write_gset(problem):
    """Canonical instance text; requires zero fields and integer weights."""
    if np.any(problem.h != 0.0):
        raise ValueError("instance format has no field column; h must be zero")
    w = problem.edge_weights
    if not np.all(w == np.round(w)):
        raise ValueError("instance format requires integer weights")
    lines = [f"{problem.n} {problem.num_edges}"]
    for i, j, wij in zip(problem.edges_i, problem.edges_j, w):
        lines.append(f"{i + 1} {j + 1} {int(wij)}")
    return "\n".join(lines) + "\n"


RESULT_COLUMNS = ("instance_id", "seed", "final_energy", "cut_value", "wall_clock_us")


def write_results_csv(results, metadata):
    """One CSV row per run with a fixed column order.

    ``metadata`` keys: ``instance_id`` (stamped on every row), optional
    ``problem`` (enables the cut_value column when its fields are zero) and
    ``timings`` (bool; when false, wall_clock_us is written as 0 so reruns
    of the same seeds produce byte-identical files).
    """
    instance_id = metadata.get("instance_id", "")
    problem = metadata.get("problem")
    timings = bool(metadata.get("timings", False))
    has_cut = problem is not None and not np.any(problem.h != 0.0)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULT_COLUMNS)
    for r in results:
        cut = repr(cut_value(problem, r.final_config)) if has_cut else ""
        us = int(round(r.wall_clock * 1e6)) if timings else 0
        writer.writerow([instance_id, r.seed, repr(r.final_energy), cut, us])
    return buf.getvalue()
