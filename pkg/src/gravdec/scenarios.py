"""Scenario files: named experiment configurations driving the reports.

A scenario binds a test mass, its superposition size (or fountain pulse
sequence), the self-energy cutoff and a list of gravitating sources. Files
are YAML with a top-level ``scenarios`` list; numbers written in exponent
notation are coerced whether or not the YAML resolver recognised them.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import yaml

from . import composite
from .constants import DP_CUTOFF_DEFAULT, constants
from .dp import DPParams
from .errors import ScenarioError
from .interferometry import LMTSequence

__all__ = ["SourceSpec", "Scenario", "load_scenarios"]

_C = constants()


@dataclass(frozen=True)
class SourceSpec:
    """One gravitating source: an on-axis point (optionally repeated) or a
    homogeneous ball the test mass sits next to."""

    kind: str  # "point" | "ball"
    mass: float
    distance: float = 0.0   # point: separation from the test mass, m
    count: int = 1
    radius: float = 0.0     # ball only
    c_factor: float = composite.BALL_GEOMETRIC_FACTOR  # ball only

    def __post_init__(self):
        if self.kind not in ("point", "ball"):
            raise ScenarioError(f"unknown source kind {self.kind!r}", field="kind")
        if self.mass <= 0.0:
            raise ScenarioError("source mass must be positive", field="mass")
        if self.kind == "point" and self.distance <= 0.0:
            raise ScenarioError("point source distance must be positive",
                                field="distance")
        if self.count < 1:
            raise ScenarioError("source count must be >= 1", field="count")
        if self.kind == "ball" and self.radius <= 0.0:
            raise ScenarioError("ball source radius must be positive", field="radius")


@dataclass(frozen=True)
class Scenario:
    """A named experiment configuration (the unit of CLI work)."""

    name: str
    test_mass: float
    dx: float
    sources: Tuple[SourceSpec, ...]
    dp_delta: float = DP_CUTOFF_DEFAULT
    c_factor: float = 1.0
    single_particle_sources: bool = True
    lmt: Optional[LMTSequence] = None

    def __post_init__(self):
        if not self.name:
            raise ScenarioError("scenario needs a name", field="name")
        if self.test_mass <= 0.0:
            raise ScenarioError("test_mass must be positive", field="test_mass")
        if self.dx < 0.0:
            raise ScenarioError("dx must be non-negative", field="dx")
        if self.dp_delta <= 0.0:
            raise ScenarioError("dp_delta must be positive", field="dp_delta")
        if not self.sources:
            raise ScenarioError("scenario needs at least one source", field="sources")

    def dp_params(self) -> DPParams:
        return DPParams(delta=self.dp_delta, mass=self.test_mass, dx=self.dx, n1=1)

    def ktm_coefficient(self) -> float:
        """Minimal channel dephasing coefficient of all sources, m^-2 s^-1.

        Point sources sit on the superposition axis at their distances, so
        each contributes its pair gradient; a ball source contributes its
        surface-geometry coefficient ``c_factor * G m M / (hbar R^3)``.
        """
        coeff = 0.0
        axis = composite.SuperpositionAxis(np.array([0.0, 0.0, 1.0]), self.dx)
        test = composite.MassDistribution.point_set(
            [composite.Constituent(self.test_mass, np.zeros(3))])
        points = []
        for src in self.sources:
            if src.kind == "ball":
                coeff += src.c_factor * _C.G * self.test_mass * src.mass / (
                    _C.hbar * src.radius**3)
            else:
                for i in range(src.count):
                    # stacked along -z; nesting order is irrelevant to the sum
                    points.append(composite.Constituent(
                        src.mass, np.array([0.0, 0.0, -src.distance - 1e-12 * i])))
        if points:
            coeff += composite.d_min(
                test, composite.MassDistribution.point_source_list(points), axis)
        return coeff


def _as_float(entry, key, where):
    val = entry.get(key)
    if val is None:
        raise ScenarioError(f"{where}: missing field {key!r}", field=key)
    try:
        return float(val)
    except (TypeError, ValueError):
        raise ScenarioError(f"{where}: field {key!r} is not a number: {val!r}",
                            field=key) from None


def _as_optional_float(entry, key, where, default):
    if key not in entry or entry[key] is None:
        return default
    return _as_float(entry, key, where)


def _parse_source(entry, where) -> SourceSpec:
    if not isinstance(entry, dict):
        raise ScenarioError(f"{where}: source entries must be mappings",
                            field="sources")
    kind = entry.get("kind", "point")
    kwargs = {"kind": kind, "mass": _as_float(entry, "mass", where)}
    if kind == "point":
        kwargs["distance"] = _as_float(entry, "distance", where)
        kwargs["count"] = int(entry.get("count", 1))
    elif kind == "ball":
        kwargs["radius"] = _as_float(entry, "radius", where)
        if "c_factor" in entry:
            kwargs["c_factor"] = _as_float(entry, "c_factor", where)
    try:
        return SourceSpec(**kwargs)
    except ScenarioError as exc:
        raise ScenarioError(f"{where}: {exc}", field=exc.field) from None


def _parse_scenario(entry, index) -> Scenario:
    where = f"scenario[{index}]"
    if not isinstance(entry, dict):
        raise ScenarioError(f"{where}: scenario entries must be mappings")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError(f"{where}: missing or invalid name", field="name")
    where = f"scenario {name!r}"
    sources = entry.get("sources")
    if not isinstance(sources, list) or not sources:
        raise ScenarioError(f"{where}: needs a non-empty sources list",
                            field="sources")
    lmt = None
    dx = _as_optional_float(entry, "dx", where, None)
    if "lmt" in entry:
        lm = entry["lmt"]
        lmt = LMTSequence.from_recoil(
            n=int(lm["n"]),
            recoil_velocity=_as_float(lm, "recoil_velocity", f"{where}.lmt"),
            t_half=_as_float(lm, "t_half", f"{where}.lmt"),
            m=_as_float(entry, "test_mass", where),
        )
        if dx is None:
            dx = lmt.peak_separation
    if dx is None:
        raise ScenarioError(f"{where}: needs dx or an lmt block", field="dx")
    try:
        return Scenario(
            name=name,
            test_mass=_as_float(entry, "test_mass", where),
            dx=dx,
            sources=tuple(_parse_source(s, f"{where}.sources[{i}]")
                          for i, s in enumerate(sources)),
            dp_delta=_as_optional_float(entry, "dp_delta", where, DP_CUTOFF_DEFAULT),
            c_factor=_as_optional_float(entry, "c_factor", where, 1.0),
            single_particle_sources=bool(entry.get("single_particle_sources", True)),
            lmt=lmt,
        )
    except ScenarioError as exc:
        if str(exc).startswith("scenario"):
            raise
        raise ScenarioError(f"{where}: {exc}", field=exc.field) from None


def load_scenarios(path) -> List[Scenario]:
    """Parse and validate a scenario file; empty files give an empty list."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            line = None
            mark = getattr(exc, "problem_mark", None)
            if mark is not None:
                line = mark.line + 1
            raise ScenarioError(f"{path}: parse error: {exc}", line=line) from None
    if doc is None:
        return []
    entries = doc.get("scenarios", doc) if isinstance(doc, dict) else doc
    if entries is None:
        return []
    if not isinstance(entries, list):
        raise ScenarioError(f"{path}: expected a list of scenarios")
    scenarios = [_parse_scenario(e, i) for i, e in enumerate(entries)]
    seen = set()
    for s in scenarios:
        if s.name in seen:
            raise ScenarioError(f"duplicate scenario name {s.name!r}", field="name")
        seen.add(s.name)
    return scenarios
