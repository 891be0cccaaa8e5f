"""Scenario files: ``key = value`` lines with ``#`` comments.

Recognised keys and defaults::

    omega0 = <required>          intrinsic frequency of the packet
    omega  = <required>          trap frequency
    gamma  = 0                   initial position-momentum correlation
    hbar   = 1
    mass   = 1
    t      = 1                   fixed time for omega and gamma sweeps
    sweep  = <var> <lo> <hi> <samples>    var in {t, omega, gamma}; required
    outputs = B, mu_principal, mu_unwrapped, gouy_rate
    format = csv                 csv or json
    unwrap = false               emit mu_principal columns as mu_unwrapped
    wigner_x = 0                 phase-space point of the wigner output
    wigner_p = 0                   (dimensionless x/sigma0, p sigma0/hbar)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..errors import ParseError, ValidationError

SWEEP_VARIABLES = ("t", "omega", "gamma")
QUANTITIES = ("B", "u", "mu_principal", "mu_unwrapped", "gouy_rate", "wigner", "cfi", "qfi", "covariance")
FORMATS = ("csv", "json")
DEFAULT_OUTPUTS = ("B", "mu_principal", "mu_unwrapped", "gouy_rate")

_FLOAT_KEYS = ("omega0", "omega", "gamma", "hbar", "mass", "t", "wigner_x", "wigner_p")
_KEYS = _FLOAT_KEYS + ("sweep", "outputs", "format", "unwrap")
_CANONICAL_ORDER = (
    "omega0", "omega", "gamma", "hbar", "mass", "t", "sweep", "outputs", "format", "unwrap", "wigner_x", "wigner_p",
)


@dataclass(frozen=True)
class SweepAxis:
    variable: str
    lo: float
    hi: float
    samples: int

    def values(self) -> list[float]:
        n = self.samples
        step = (self.hi - self.lo) / (n - 1)
        # exact endpoints, evenly spaced interior
        return [self.lo + i * step if i < n - 1 else self.hi for i in range(n)]


@dataclass(frozen=True)
class Scenario:
    omega0: float
    omega: float
    sweep: SweepAxis
    gamma: float = 0.0
    hbar: float = 1.0
    mass: float = 1.0
    t: float = 1.0
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    format: str = "csv"
    unwrap: bool = False
    wigner_x: float = 0.0
    wigner_p: float = 0.0

    def __post_init__(self):
        validate_scenario(self)

    def with_changes(self, **changes) -> "Scenario":
        return replace(self, **changes)

    def columns(self) -> list[str]:
        """Output column names, in order."""
        cols = [self.sweep.variable]
        for q in self.outputs:
            if q == "covariance":
                cols += ["sxx", "sxp", "spp"]
            elif q == "mu_principal" and self.unwrap:
                cols.append("mu_unwrapped")
            else:
                cols.append(q)
        return cols + ["flag"]


def validate_scenario(sc: Scenario) -> None:
    for name in _FLOAT_KEYS:
        value = getattr(sc, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ValidationError(name, f"must be a finite number, got {value!r}")
    for name in ("omega0", "hbar", "mass"):
        if getattr(sc, name) <= 0:
            raise ValidationError(name, "must be > 0")
    # omega may be swept through non-positive values (rows get flagged), but a
    # fixed omega has to be valid
    if sc.sweep.variable != "omega" and sc.omega <= 0:
        raise ValidationError("omega", "must be > 0")
    ax = sc.sweep
    if ax.variable not in SWEEP_VARIABLES:
        raise ValidationError("sweep", f"variable must be one of {', '.join(SWEEP_VARIABLES)}")
    if not (math.isfinite(ax.lo) and math.isfinite(ax.hi)) or not ax.lo < ax.hi:
        raise ValidationError("sweep", "need finite lo < hi")
    if ax.samples < 2:
        raise ValidationError("sweep", "samples must be >= 2")
    if not sc.outputs:
        raise ValidationError("outputs", "at least one quantity is required")
    for q in sc.outputs:
        if q not in QUANTITIES:
            raise ValidationError("outputs", f"unknown quantity {q!r}")
    if len(set(sc.outputs)) != len(sc.outputs):
        raise ValidationError("outputs", "duplicate quantity")
    if sc.format not in FORMATS:
        raise ValidationError("format", f"must be csv or json, got {sc.format!r}")


def _number(value: str, lineno: int, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"{key}: {value!r} is not a number", lineno) from None


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario file.

    Raises
    ------
    ParseError
        Malformed line, unknown or repeated key, unreadable value (with line number).
    ValidationError
        Well-formed values that violate a constraint (names the field).
    """
    found: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in found:
            raise ParseError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ParseError(f"{key} has no value", lineno)

        if key in _FLOAT_KEYS:
            found[key] = _number(value, lineno, key)
        elif key == "sweep":
            parts = value.split()
            if len(parts) != 4:
                raise ParseError("sweep needs '<var> <lo> <hi> <samples>'", lineno)
            var, lo, hi, n = parts
            try:
                samples = int(n)
            except ValueError:
                raise ParseError(f"sweep: samples {n!r} is not an integer", lineno) from None
            found[key] = SweepAxis(var, _number(lo, lineno, key), _number(hi, lineno, key), samples)
        elif key == "outputs":
            found[key] = tuple(q.strip() for q in value.split(","))
        elif key == "format":
            found[key] = value.lower()
        elif key == "unwrap":
            flag = value.lower()
            if flag not in ("true", "false"):
                raise ParseError(f"unwrap must be true or false, got {value!r}", lineno)
            found[key] = flag == "true"

    for key in ("omega0", "omega", "sweep"):
        if key not in found:
            raise ValidationError(key, "is required")
    return Scenario(**found)


def _fmt(x: float) -> str:
    return repr(float(x))


def serialize_scenario(sc: Scenario) -> str:
    """Canonical text form; ``parse_scenario(serialize_scenario(s)) == s``."""
    values = {
        "omega0": _fmt(sc.omega0),
        "omega": _fmt(sc.omega),
        "gamma": _fmt(sc.gamma),
        "hbar": _fmt(sc.hbar),
        "mass": _fmt(sc.mass),
        "t": _fmt(sc.t),
        "sweep": f"{sc.sweep.variable} {_fmt(sc.sweep.lo)} {_fmt(sc.sweep.hi)} {sc.sweep.samples}",
        "outputs": ", ".join(sc.outputs),
        "format": sc.format,
        "unwrap": "true" if sc.unwrap else "false",
        "wigner_x": _fmt(sc.wigner_x),
        "wigner_p": _fmt(sc.wigner_p),
    }
    return "".join(f"{k} = {values[k]}\n" for k in _CANONICAL_ORDER)


def scenario_to_dict(sc: Scenario) -> dict:
    """JSON echo of a scenario."""
    return {
        "omega0": sc.omega0,
        "omega": sc.omega,
        "gamma": sc.gamma,
        "hbar": sc.hbar,
        "mass": sc.mass,
        "t": sc.t,
        "sweep": {"variable": sc.sweep.variable, "lo": sc.sweep.lo, "hi": sc.sweep.hi, "samples": sc.sweep.samples},
        "outputs": list(sc.outputs),
        "format": sc.format,
        "unwrap": sc.unwrap,
        "wigner_x": sc.wigner_x,
        "wigner_p": sc.wigner_p,
    }
