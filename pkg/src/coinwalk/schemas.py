"""Request/response models for the experiment service.

ExperimentConfig is the single source of truth for what a run means;
the CLI, the HTTP service, and meta.json all speak this model. Field
values mirror the core domain objects one to one.
"""

from __future__ import annotations

import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .coins import CoinParams
from .disorder import ContinuousSU2, Ensemble, Regime, TwoCoin, validate_ensemble
from .errors import ParameterDomainError
from .initial import XI1, XI2, InitialCondition, gaussian_profile, grid_localized, grid_two_site, random_ics

TWO_PI = 2.0 * math.pi


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CoinSpec(_Strict):
    q: float
    theta: float = 0.0
    phi: float = 0.0

    def to_params(self) -> CoinParams:
        return CoinParams(self.q, self.theta, self.phi)


HADAMARD_SPEC = CoinSpec(q=0.5, theta=0.0, phi=0.0)
FOURIER_SPEC = CoinSpec(q=0.5, theta=math.pi / 2.0, phi=math.pi / 2.0)


class TwoCoinSpec(_Strict):
    kind: Literal["two-coin"] = "two-coin"
    c1: CoinSpec = HADAMARD_SPEC
    c2: CoinSpec = FOURIER_SPEC
    p: float = 0.5

    def to_ensemble(self) -> TwoCoin:
        return TwoCoin(self.c1.to_params(), self.c2.to_params(), self.p)


class ContinuousSpec(_Strict):
    kind: Literal["continuous"] = "continuous"
    q_range: tuple[float, float] = (0.0, 1.0)
    theta_range: tuple[float, float] = (0.0, TWO_PI)
    phi_range: tuple[float, float] = (0.0, TWO_PI)

    def to_ensemble(self) -> ContinuousSU2:
        return ContinuousSU2(self.q_range, self.theta_range, self.phi_range)


EnsembleSpec = Annotated[Union[TwoCoinSpec, ContinuousSpec], Field(discriminator="kind")]


class GridTwoSiteSpec(_Strict):
    kind: Literal["grid-two-site"] = "grid-two-site"
    delta: float = Field(gt=0.0)


class GridLocalizedSpec(_Strict):
    kind: Literal["grid-localized"] = "grid-localized"
    delta: float = Field(gt=0.0)


class RandomSpec(_Strict):
    """Random-angle initial conditions; "random" starts at site 0,
    "random-two-site" also draws position angles."""

    kind: Literal["random", "random-two-site"] = "random"
    count: int = Field(ge=1)


class GaussianSpec(_Strict):
    kind: Literal["gaussian"] = "gaussian"
    sigma: float = Field(gt=0.0)
    cutoff: float = Field(default=6.0, ge=3.0)
    spin: Literal["xi1", "xi2"] = "xi1"


ICSpec = Annotated[
    Union[GridTwoSiteSpec, GridLocalizedSpec, RandomSpec, GaussianSpec],
    Field(discriminator="kind"),
]


class ExperimentConfig(_Strict):
    regime: Literal["ordered", "dynamic", "fluctuating", "static"]
    ensemble: EnsembleSpec = Field(default_factory=TwoCoinSpec)
    ic: ICSpec
    steps: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    thresholds: list[float] = [0.95, 0.97, 0.99]
    drop_first: int = Field(default=100, ge=0)
    replicates: int = Field(default=1, ge=1)
    label: str | None = Field(default=None, pattern=r"^[A-Za-z0-9_.-]+$", max_length=64)
    out_dir: str | None = None

    @field_validator("thresholds")
    @classmethod
    def _thresholds_in_unit(cls, v: list[float]) -> list[float]:
        for th in v:
            if not (0.0 <= th <= 1.0):
                raise ValueError(f"thresholds must lie in [0, 1], got {th!r}")
        return v

    @model_validator(mode="after")
    def _ensemble_valid(self) -> "ExperimentConfig":
        try:
            validate_ensemble(self.to_ensemble())
        except ParameterDomainError as exc:
            raise ValueError(str(exc)) from exc
        return self

    def to_regime(self) -> Regime:
        return Regime(self.regime)

    def to_ensemble(self) -> Ensemble:
        return self.ensemble.to_ensemble()

    def to_ics(self) -> list[InitialCondition]:
        ic = self.ic
        if isinstance(ic, GridTwoSiteSpec):
            return grid_two_site(ic.delta)
        if isinstance(ic, GridLocalizedSpec):
            return grid_localized(ic.delta)
        if isinstance(ic, RandomSpec):
            kind = "two-site" if ic.kind == "random-two-site" else "localized"
            return random_ics(ic.count, self.seed, kind)
        spin = XI1 if ic.spin == "xi1" else XI2
        return [gaussian_profile(ic.sigma, spin, ic.cutoff)]

    def effective_label(self) -> str:
        if self.label:
            return self.label
        kind = "two-coin" if isinstance(self.ensemble, TwoCoinSpec) else "continuous"
        return f"{self.regime}-{kind}"


class RunRequest(_Strict):
    config: ExperimentConfig
    threads: int = Field(default=1, ge=1)


class RunMeta(_Strict):
    artifact: str
    version: str
    config: ExperimentConfig
    realizations: int
    wall_time_s: float
    threads: int


class RunResponse(_Strict):
    timeseries_csv: str
    distribution_csv: str
    thresholds_csv: str
    meta: RunMeta


class FitRequest(_Strict):
    timeseries_csv: str
    drop_first: int = Field(default=100, ge=0)
    column: str = "mean_distance"


class FitResponse(_Strict):
    slope: float
    intercept: float
    slope_stderr: float
    ci95: tuple[float, float]
    points_used: int
    points_dropped: int


class CompareRequest(_Strict):
    configs: list[ExperimentConfig] = Field(min_length=2)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _consistent(self) -> "CompareRequest":
        steps = {c.steps for c in self.configs}
        if len(steps) != 1:
            raise ValueError(f"configs must share a step count, got {sorted(steps)}")
        labels = [c.effective_label() for c in self.configs]
        if len(set(labels)) != len(labels):
            raise ValueError(f"config labels must be distinct, got {labels}")
        return self


class CompareEntry(_Strict):
    label: str
    final_mean_entropy: float


class CompareSummary(_Strict):
    steps: int
    final_entropy: list[CompareEntry]


class CompareResponse(_Strict):
    timeseries_csv: str
    distribution_csv: str
    summary: CompareSummary


class OracleCheckRequest(_Strict):
    cases: int = Field(default=100, ge=1)
    steps: int = Field(default=8, ge=1, le=12)
    seed: int = Field(default=7, ge=0, lt=2**64)
    tolerance: float = Field(default=1e-12, gt=0.0)


class OracleCheckResponse(_Strict):
    cases: int
    steps: int
    max_difference: float
    tolerance: float
    passed: bool


class HealthResponse(_Strict):
    status: str
    version: str
