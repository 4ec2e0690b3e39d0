"""Run-configuration files.

Plain key-value text, one setting per line::

    # solver settings
    alpha = 0.15
    sigma = 0.15
    t_f = 1000
    seed = 42
    schedule = 0:2,0.25:0.8,0.75:0.2,1:0.02
    n_runs = 100
    trajectory = off

'#' starts a comment (full-line or trailing), blank lines are ignored, keys
are case-sensitive and must be from the set above.  Command-line flags win
over config values; config values win over built-in defaults.
"""

from .solver import MASK64, Schedule


class ConfigError(ValueError):
    """Malformed configuration text; carries the 1-based line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


_TRUE = {"on", "true", "1", "yes"}
_FALSE = {"off", "false", "0", "no"}


def _parse_bool(text):
    low = text.lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(f"expected on/off, got {text!r}")


def _parse_seed(text):
    v = int(text)
    if not 0 <= v <= MASK64:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {v}")
    return v


def _parse_count(text):
    v = int(text)
    if v < 1:
        raise ValueError(f"expected a positive count, got {v}")
    return v


_PARSERS = {
    "alpha": float,
    "sigma": float,
    "t_f": _parse_count,
    "seed": _parse_seed,
    "schedule": Schedule.parse,
    "n_runs": _parse_count,
    "trajectory": _parse_bool,
}


def parse_config(text):
    """Parse configuration text into a dict of typed values."""
    out = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line_no, f"expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _PARSERS:
            raise ConfigError(line_no, f"unknown key {key!r}")
        if key in out:
            raise ConfigError(line_no, f"duplicate key {key!r}")
        try:
            out[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(line_no, f"bad value for {key}: {exc}") from None
    return out


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
