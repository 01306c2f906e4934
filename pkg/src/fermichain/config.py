"""
Plain-text coupling files.

Two layouts are accepted (TOML syntax)::

    L = 2
    A = [0.1, 1.0, -0.5, 1.0, 0.1]   # index -L first
    B = [-0.2, -0.7, 0.0, 0.7, 0.2]

or the XY shorthand::

    xy = { gamma = 0.9, h = 1.0 }
"""

from __future__ import annotations

from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .chain import CouplingSet, make_coupling_set, xy_couplings
from .errors import ConstraintError


def parse_couplings(text: str) -> CouplingSet:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConstraintError(f"malformed coupling file: {exc}") from exc
    if "xy" in data:
        xy = data["xy"]
        if not isinstance(xy, dict) or not {"gamma", "h"} <= set(xy):
            raise ConstraintError("xy shorthand needs both 'gamma' and 'h'")
        extra = set(data) - {"xy"}
        if extra:
            raise ConstraintError(f"xy shorthand cannot be combined with {sorted(extra)}")
        return xy_couplings(float(xy["gamma"]), float(xy["h"]))
    missing = {"L", "A", "B"} - set(data)
    if missing:
        raise ConstraintError(f"coupling file is missing keys {sorted(missing)}")
    return make_coupling_set(data["L"], data["A"], data["B"])


def load_couplings(path) -> CouplingSet:
    return parse_couplings(Path(path).read_text())


def dump_couplings(c: CouplingSet) -> str:
    fmt = lambda xs: "[" + ", ".join(repr(float(x)) for x in xs) + "]"
    return f"L = {c.L}\nA = {fmt(c.A)}\nB = {fmt(c.B)}\n"
