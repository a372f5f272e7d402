"""Campaign configuration: YAML sections mapped onto typed settings.

Every section mirrors one settings object; unknown keys anywhere are
errors, so typos fail loudly instead of silently running defaults.
Omitted keys take the documented defaults.  The conserved charges are
never entered directly: they derive from the reference configuration in
the `physics` section.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

import yaml

from .classify import ClassifierPolicy
from .integrator import IntegratorSettings
from .scattering import ChargeSet, reference_charges

__all__ = [
    "ConfigError",
    "PhysicsConfig",
    "OutcomeConfig",
    "BivariateGridConfig",
    "TrivariateGridConfig",
    "AbsorptivityConfig",
    "HistogramConfig",
    "CompareConfig",
    "CampaignConfig",
    "load_config",
    "config_from_dict",
]

_TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Malformed campaign configuration."""


def default_trivariate_levels() -> tuple[float, ...]:
    shallow = [-30.0 - 10.0 * i for i in range(14)]        # -30 .. -160
    deep = [-180.0 - 20.0 * i for i in range(7)]           # -180 .. -300
    return tuple(shallow + deep)


@dataclass(frozen=True)
class PhysicsConfig:
    masses: tuple[float, float, float] = (15.0, 15.0, 15.0)
    binary_semi_axis: float = 5.0
    single_distance_factor: float = 20.0

    @property
    def single_distance(self) -> float:
        return self.single_distance_factor * self.binary_semi_axis

    def charges(self) -> ChargeSet:
        return reference_charges(self.masses, self.binary_semi_axis,
                                 self.single_distance)


@dataclass(frozen=True)
class OutcomeConfig:
    realizations: int = 100_000
    chunk: int = 2000


@dataclass(frozen=True)
class BivariateGridConfig:
    eps_min: float = -150.0
    eps_max: float = -30.0
    eps_count: int = 100
    l_values: tuple[float, ...] = (1.5, 2.5, 7.5, 10.0, 20.0, 30.0,
                                   40.0, 50.0, 60.0, 70.0)
    include_boundary: bool = True


@dataclass(frozen=True)
class TrivariateGridConfig:
    eps_levels: tuple[float, ...] = field(default_factory=default_trivariate_levels)
    chebyshev_n: int = 28
    inner_radius_frac: float = 0.4
    inner_spacing_frac: float = 0.1


@dataclass(frozen=True)
class AbsorptivityConfig:
    variant: str = "bivariate"
    realizations_per_point: int = 1000
    start_factor: float = 20.0
    chunk: int = 2000
    bivariate: BivariateGridConfig = field(default_factory=BivariateGridConfig)
    trivariate: TrivariateGridConfig = field(default_factory=TrivariateGridConfig)


@dataclass(frozen=True)
class HistogramConfig:
    eps_range: tuple[float, float] = (-150.0, -30.0)
    l_range: tuple[float, float] = (1.5, 70.0)
    eps_bins: int = 40
    l_bins: int = 40
    min_count: int = 20


@dataclass(frozen=True)
class CompareConfig:
    eps_range: tuple[float, float] = (-150.0, -30.0)
    l_range: tuple[float, float] = (1.5, 70.0)


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 20260823
    output_dir: str = "runs/campaign"
    physics: PhysicsConfig = field(default_factory=PhysicsConfig)
    integrator: IntegratorSettings = field(default_factory=IntegratorSettings)
    classifier: ClassifierPolicy = field(default_factory=ClassifierPolicy)
    outcome: OutcomeConfig = field(default_factory=OutcomeConfig)
    absorptivity: AbsorptivityConfig = field(default_factory=AbsorptivityConfig)
    histogram: HistogramConfig = field(default_factory=HistogramConfig)
    compare: CompareConfig = field(default_factory=CompareConfig)

    def scaled(self, factor: float) -> "CampaignConfig":
        """Multiply realization counts by a factor (at least one remains)."""
        if factor <= 0:
            raise ConfigError("scale factor must be positive")
        return replace(
            self,
            outcome=replace(self.outcome, realizations=max(
                1, round(self.outcome.realizations * factor))),
            absorptivity=replace(self.absorptivity, realizations_per_point=max(
                1, round(self.absorptivity.realizations_per_point * factor))),
        )


def _build(cls, data, path, **coercions):
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"section {path!r} must be a mapping")
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown keys in {path!r}: {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        coerce = coercions.get(key)
        try:
            kwargs[key] = coerce(value) if coerce else value
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {path}.{key}: {exc}") from exc
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid section {path!r}: {exc}") from exc


def _float_tuple(n=None):
    def conv(value):
        seq = tuple(float(v) for v in value)
        if n is not None and len(seq) != n:
            raise ValueError(f"expected {n} entries, got {len(seq)}")
        return seq
    return conv


def _pos_int(value):
    iv = int(value)
    if iv <= 0:
        raise ValueError("must be positive")
    return iv


def config_from_dict(data: dict) -> CampaignConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be a mapping")
    known = {"seed", "output_dir", "physics", "integrator", "classifier",
             "outcome", "absorptivity", "histogram", "compare"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")

    physics = _build(PhysicsConfig, data.get("physics"), "physics",
                     masses=_float_tuple(3),
                     binary_semi_axis=float, single_distance_factor=float)

    integ_data = dict(data.get("integrator") or {})
    integrator = _build(IntegratorSettings, integ_data, "integrator",
                        rtol=float,
                        atol=lambda v: None if v is None else float(v),
                        time_transform=bool, energy_gate=bool)

    clf_data = dict(data.get("classifier") or {})
    # the cut is configured in years; policy stores code time (1 yr = 2 pi)
    if "lifetime_cut_years" in clf_data:
        clf_data["lifetime_cut"] = float(clf_data.pop("lifetime_cut_years")) * _TWO_PI
    classifier = _build(ClassifierPolicy, clf_data, "classifier",
                        democracy_threshold=float, nd_min=_pos_int,
                        lifetime_cut=float, escape_tidal_threshold=float,
                        escape_distance_multiple=float,
                        escape_recession_steps=_pos_int,
                        conservation_alarm=float, max_time=float,
                        max_steps=_pos_int)

    outcome = _build(OutcomeConfig, data.get("outcome"), "outcome",
                     realizations=_pos_int, chunk=_pos_int)

    absorb_data = dict(data.get("absorptivity") or {})
    bi = _build(BivariateGridConfig, absorb_data.pop("bivariate", None),
                "absorptivity.bivariate",
                eps_min=float, eps_max=float, eps_count=_pos_int,
                l_values=_float_tuple(), include_boundary=bool)
    tri = _build(TrivariateGridConfig, absorb_data.pop("trivariate", None),
                 "absorptivity.trivariate",
                 eps_levels=_float_tuple(), chebyshev_n=_pos_int,
                 inner_radius_frac=float, inner_spacing_frac=float)
    absorb_data["bivariate"] = bi
    absorb_data["trivariate"] = tri
    absorptivity = _build(AbsorptivityConfig, absorb_data, "absorptivity",
                          variant=str, realizations_per_point=_pos_int,
                          start_factor=float, chunk=_pos_int)
    if absorptivity.variant not in ("bivariate", "trivariate"):
        raise ConfigError(
            f"absorptivity.variant must be bivariate or trivariate, "
            f"got {absorptivity.variant!r}")

    histogram = _build(HistogramConfig, data.get("histogram"), "histogram",
                       eps_range=_float_tuple(2), l_range=_float_tuple(2),
                       eps_bins=_pos_int, l_bins=_pos_int, min_count=_pos_int)
    compare = _build(CompareConfig, data.get("compare"), "compare",
                     eps_range=_float_tuple(2), l_range=_float_tuple(2))

    seed = data.get("seed", 20260823)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError("seed must be a nonnegative integer")
    output_dir = data.get("output_dir", "runs/campaign")
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir must be a nonempty string")

    return CampaignConfig(seed=seed, output_dir=output_dir, physics=physics,
                          integrator=integrator, classifier=classifier,
                          outcome=outcome, absorptivity=absorptivity,
                          histogram=histogram, compare=compare)


def load_config(path: str) -> CampaignConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}")
    return config_from_dict(data)
