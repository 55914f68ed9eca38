"""Run configuration: a line-oriented ``key = value`` text format.

Blank lines and ``#`` comments are ignored. Unknown keys are rejected.
``to_text``/``from_text`` round-trip every field exactly (floats are written
with ``repr``).

Keys, defaults and ranges:

    seed            0           integer >= 0
    mapping         cs          rgb | cs
    cost            census      census | zncc | sad | gt
    preprocess      agnostic    none | agnostic
    dmax            64          integer >= 0
    p1              10.0        >= 0
    p2              120.0       >= p1
    paths           8           4 | 8
    window          auto        auto | odd integer >= 1 (census: <= 7)
    agnostic_window 3           odd integer >= 3
    subpixel        false       bool
    lr_check        false       bool
    lr_tol          1.0         >= 0
    median_post     false       bool
    out             out         output directory
    workers         1           integer >= 1
    left_name       view1.ppm   per-scene left image; "{c}" = one file per band
    right_name      view5.ppm   per-scene right image
    gt_left_name    disp1.pgm   left ground truth (.pfm or .pgm); "none" to skip
    gt_divisor      1.0         integer ground truth is divided by this (> 0)
    left_channel    G           plane used by `match` for colour inputs
    right_channel   G

``cost = gt`` replaces the matcher by the ground truth itself; it exists to
check the evaluation plumbing end to end.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields

from crossband.errors import ConfigError


@dataclass
class RunConfig:
    seed: int = 0
    mapping: str = "cs"
    cost: str = "census"
    preprocess: str = "agnostic"
    dmax: int = 64
    p1: float = 10.0
    p2: float = 120.0
    paths: int = 8
    window: int | None = None
    agnostic_window: int = 3
    subpixel: bool = False
    lr_check: bool = False
    lr_tol: float = 1.0
    median_post: bool = False
    out: str = "out"
    workers: int = 1
    left_name: str = "view1.ppm"
    right_name: str = "view5.ppm"
    gt_left_name: str = "disp1.pgm"
    gt_divisor: float = 1.0
    left_channel: str = "G"
    right_channel: str = "G"

    def validate(self) -> "RunConfig":
        def need(ok, msg):
            if not ok:
                raise ConfigError(msg)
        need(self.seed >= 0, "seed must be >= 0")
        need(self.mapping in ("rgb", "cs"), f"mapping must be rgb or cs, not {self.mapping!r}")
        need(self.cost in ("census", "zncc", "sad", "gt"), f"unknown cost {self.cost!r}")
        need(self.preprocess in ("none", "agnostic"), f"unknown preprocess {self.preprocess!r}")
        need(self.dmax >= 0, "dmax must be >= 0")
        need(0 <= self.p1 <= self.p2, "need 0 <= p1 <= p2")
        need(self.paths in (4, 8), "paths must be 4 or 8")
        if self.window is not None:
            need(self.window >= 1 and self.window % 2 == 1, "window must be odd and >= 1")
            need(self.cost != "census" or self.window <= 7, "census window must be <= 7")
        need(self.agnostic_window >= 3 and self.agnostic_window % 2 == 1,
             "agnostic_window must be odd and >= 3")
        need(self.lr_tol >= 0, "lr_tol must be >= 0")
        need(self.workers >= 1, "workers must be >= 1")
        need(self.gt_divisor > 0, "gt_divisor must be > 0")
        need(self.left_channel in "RGB" and self.right_channel in "RGB"
             and len(self.left_channel) == len(self.right_channel) == 1,
             "left_channel/right_channel must be R, G or B")
        return self

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                text = "auto"
            elif isinstance(v, bool):
                text = "true" if v else "false"
            elif isinstance(v, float):
                text = repr(v)
            else:
                text = str(v)
            lines.append(f"{f.name} = {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, base: "RunConfig | None" = None) -> "RunConfig":
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key] = value
        return (base or cls()).updated(**{k: _coerce(k, v) for k, v in values.items()})

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as f:
            return cls.from_text(f.read())

    def updated(self, **changes) -> "RunConfig":
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return dataclasses.replace(self, **changes).validate()


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, text: str):
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    kind = _TYPES[key]
    try:
        if kind == "bool":
            low = text.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError
            return low in ("true", "1", "yes")
        if kind == "int":
            return int(text)
        if kind == "float":
            return float(text)
        if kind == "int | None":
            return None if text.lower() == "auto" else int(text)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {text!r}") from None
    return text
