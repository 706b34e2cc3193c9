"""Data models for the subcycle_uncertainty package."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from subcycle_uncertainty.utils.constants import (
    DEFAULT_CUTOFF_SIGMAS,
    DEFAULT_ORDER,
    DEFAULT_OUT_DIR,
    DEFAULT_PANELS,
    DEFAULT_WINDOW_SIGMAS,
    QUARTER_ROOT_HALF_PI,
)


class GaussianModeParams(BaseModel):
    """Parameters of the Gaussian subcycle wavepacket mode."""

    model_config = ConfigDict(frozen=True)

    omega0: float = Field(gt=0, allow_inf_nan=False)
    sigma: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    t0: float = Field(default=0.0, allow_inf_nan=False)
    area: float = Field(default=1.0, gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_ratio(self) -> "GaussianModeParams":
        if not math.isfinite(self.omega0 / self.sigma):
            raise ValueError("omega0/sigma must be finite")
        return self

    @property
    def r(self) -> float:
        """Dimensionless carrier-to-bandwidth ratio omega0/sigma."""
        return self.omega0 / self.sigma

    @classmethod
    def from_ratio(
        cls, r: float, t0: float = 0.0, area: float = 1.0
    ) -> "GaussianModeParams":
        """Build a mode in internal units (sigma = 1) from the ratio r."""
        return cls(omega0=r, sigma=1.0, t0=t0, area=area)


def _coupling_scale(omega: float, sigma: float) -> float:
    return math.sqrt(omega / sigma) * QUARTER_ROOT_HALF_PI


class DetectorParams(BaseModel):
    """Harmonic-oscillator detector with Gaussian switching.

    Exactly one of ``theta_u`` and ``coupling`` (JSON alias ``lambda``) is given;
    the other one is derived from ``omega_u`` and ``sigma_u``.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    omega_u: float = Field(gt=0, allow_inf_nan=False)
    sigma_u: float = Field(gt=0, allow_inf_nan=False)
    t_u: float = Field(default=0.0, allow_inf_nan=False)
    theta_u: float = Field(allow_inf_nan=False)
    coupling: float = Field(alias="lambda", allow_inf_nan=False)
    area: float = Field(default=1.0, gt=0, allow_inf_nan=False)

    @model_validator(mode="before")
    @classmethod
    def _derive_coupling(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        theta = data.get("theta_u")
        coupling = data.get("coupling", data.get("lambda"))
        if (theta is None) == (coupling is None):
            raise ValueError("exactly one of theta_u or lambda must be given")
        try:
            scale = _coupling_scale(float(data["omega_u"]), float(data["sigma_u"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            # Field validation reports the missing or invalid frequencies
            return data
        data = dict(data)
        if theta is None:
            data["theta_u"] = -0.5 * float(coupling) * scale
        else:
            data["coupling"] = -2.0 * float(theta) / scale
        return data

    @classmethod
    def mode_matched(
        cls, mode: GaussianModeParams, theta_u: float = math.pi / 2
    ) -> "DetectorParams":
        """Detector tuned to a mode: omega_u = omega0, sigma_u = sigma, t_u = t0."""
        return cls(
            omega_u=mode.omega0,
            sigma_u=mode.sigma,
            t_u=mode.t0,
            theta_u=theta_u,
            area=mode.area,
        )

    def is_mode_matched(self, mode: GaussianModeParams, rel_tol: float = 1e-12) -> bool:
        """Check whether the detector is tuned to the given mode."""
        return (
            math.isclose(self.omega_u, mode.omega0, rel_tol=rel_tol)
            and math.isclose(self.sigma_u, mode.sigma, rel_tol=rel_tol)
            and math.isclose(self.t_u, mode.t0, rel_tol=rel_tol, abs_tol=rel_tol)
        )


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Quadrature nodes and weights on (0, omega_max]."""

    nodes: np.ndarray
    weights: np.ndarray
    omega_max: float

    def __post_init__(self) -> None:
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if self.nodes.size == 0:
            raise ValueError("grid must contain at least one node")
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("grid nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise ValueError("grid weights must be positive")
        if self.nodes[0] <= 0 or self.nodes[-1] > self.omega_max:
            raise ValueError("grid nodes must lie in (0, omega_max]")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def same_as(self, other: "FrequencyGrid") -> bool:
        """Check whether two grids have identical nodes and weights."""
        if self is other:
            return True
        return (
            self.omega_max == other.omega_max
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class SpectralFunction:
    """Complex spectrum sampled at +omega_k (``pos``) and -omega_k (``neg``)."""

    grid: FrequencyGrid
    pos: np.ndarray
    neg: np.ndarray

    def __post_init__(self) -> None:
        if self.pos.shape != (self.grid.size,) or self.neg.shape != (self.grid.size,):
            raise ValueError("spectral samples must match the grid node count")
        if not (np.all(np.isfinite(self.pos)) and np.all(np.isfinite(self.neg))):
            raise ValueError("spectral samples must be finite")


@dataclass(frozen=True)
class ModeNorm:
    """Canonical commutator value of a mode and the tolerance it was checked at."""

    norm: float
    tolerance_used: float

    @property
    def is_canonical(self) -> bool:
        return abs(self.norm - 1.0) <= self.tolerance_used


@dataclass(frozen=True)
class FrequencySplit:
    """Split of a mode into canonical positive- and negative-frequency parts."""

    theta_g: float
    cosh2: float
    sinh2: float
    overlap_c: complex
    underflow: bool = False


@dataclass(frozen=True)
class MomentSet:
    """Vacuum moments of a single bosonic mode operator."""

    n: float
    m: complex
    n2: float
    var: float

    @classmethod
    def from_wick(cls, n: float, m: complex) -> "MomentSet":
        """Moments of a zero-mean Gaussian state from <a^dag a> and <a^2>."""
        abs_m2 = abs(m) ** 2
        return cls(
            n=n,
            m=complex(m),
            n2=abs_m2 + 2.0 * n * n + n,
            var=abs_m2 + n * n + n,
        )

    @property
    def abs_m(self) -> float:
        return abs(self.m)

    def max_difference(self, other: "MomentSet") -> float:
        """Largest absolute difference between the moments of two sets."""
        return max(
            abs(self.n - other.n),
            abs(self.m - other.m),
            abs(self.n2 - other.n2),
            abs(self.var - other.var),
        )


@dataclass(frozen=True, eq=False)
class DiscretizedMode:
    """Mode operator a = sum_k (alpha_k b_k + beta_k b_k^dag) over field bins."""

    alpha: np.ndarray
    beta: np.ndarray
    grid: Optional[FrequencyGrid] = None

    def __post_init__(self) -> None:
        if self.alpha.ndim != 1 or self.alpha.shape != self.beta.shape:
            raise ValueError("alpha and beta must be 1-D arrays of equal length")
        if self.grid is not None and self.grid.size != self.alpha.size:
            raise ValueError("coefficient count must match the grid node count")

    @property
    def mode_count(self) -> int:
        return int(self.alpha.size)

    @property
    def commutator(self) -> float:
        """Discrete commutator sum_k (|alpha_k|^2 - |beta_k|^2)."""
        return float(np.sum(np.abs(self.alpha) ** 2) - np.sum(np.abs(self.beta) ** 2))

    @property
    def defect(self) -> float:
        return abs(self.commutator - 1.0)


@dataclass(frozen=True)
class UncertaintyReport:
    """Time-energy uncertainty product of the detector after the interaction."""

    r: float
    delta_E: float
    delta_t: float
    product: float
    split: FrequencySplit
    field_moments: MomentSet
    detector_moments: MomentSet
    dt_convention: str = "stddev"
    flags: Tuple[str, ...] = ()


@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated deep-subcycle value of the uncertainty product."""

    value: float
    residual: float
    ladder: Tuple[float, ...]
    products: Tuple[float, ...]
    extrapolated: bool


@dataclass(frozen=True)
class MagnusValidity:
    """Advisory check of the rapid-switching condition sigma_u >> omega_u."""

    ratio: float
    status: Literal["pass", "warn"]
    note: str = ""


@dataclass(frozen=True)
class MagnusRow:
    """Exact detector response against the beamsplitter prediction."""

    sigma_ratio: float
    steps: int
    n_exact: float
    n_predicted: float
    var_exact: float
    var_predicted: float
    flags: Tuple[str, ...] = ()

    @property
    def deviation(self) -> float:
        return abs(self.n_exact - self.n_predicted)

    @property
    def relative_deviation(self) -> float:
        if self.n_predicted == 0.0:
            return 0.0 if self.n_exact == 0.0 else math.inf
        return self.deviation / self.n_predicted

    @property
    def var_deviation(self) -> float:
        return abs(self.var_exact - self.var_predicted)


@dataclass(frozen=True)
class SweepRow:
    """One row of the uncertainty-product sweep."""

    r: float
    theta_g: float
    n_g: float
    abs_m: float
    n2: float
    delta_E: float
    delta_t: float
    product: float
    flags: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ConvergenceRow:
    """Error of one quantity at one refinement level."""

    study: str
    level: float
    value: float
    error: float


@dataclass
class ConvergenceReport:
    """Results of the refinement studies."""

    rows: List[ConvergenceRow] = field(default_factory=list)
    magnus: List[MagnusRow] = field(default_factory=list)

    def study(self, name: str) -> List[ConvergenceRow]:
        """Rows belonging to one study, in refinement order."""
        return [row for row in self.rows if row.study == name]


@dataclass(frozen=True)
class ValidationCheck:
    """Outcome of one acceptance check run by the validate command."""

    name: str
    value: float
    tolerance: float
    passed: bool


class GridSettings(BaseModel):
    """Production frequency grid settings."""

    model_config = ConfigDict(frozen=True)

    panels: int = Field(default=DEFAULT_PANELS, ge=1)
    order: int = Field(default=DEFAULT_ORDER, ge=2)
    cutoff_sigmas: float = Field(default=DEFAULT_CUTOFF_SIGMAS, ge=10.0)


class LimitSettings(BaseModel):
    """Ladder of ratios used to extrapolate the product to r = 0."""

    model_config = ConfigDict(frozen=True)

    ladder: List[float] = Field(
        default_factory=lambda: [1e-2, 1e-3, 1e-4], min_length=1
    )
    tolerance: float = Field(default=1e-6, gt=0)

    @field_validator("ladder")
    @classmethod
    def _positive_ladder(cls, value: List[float]) -> List[float]:
        if any(not math.isfinite(r) or r <= 0 for r in value):
            raise ValueError("ladder ratios must be positive and finite")
        return value


class DynamicsSettings(BaseModel):
    """Settings of the exact detector-field evolution."""

    model_config = ConfigDict(frozen=True)

    ratios: List[float] = Field(
        default_factory=lambda: [5.0, 10.0, 25.0, 50.0], min_length=1
    )
    theta_u: float = math.pi / 2
    panels: int = Field(default=32, ge=1)
    order: int = Field(default=16, ge=2)
    cutoff_sigmas: float = Field(default=DEFAULT_CUTOFF_SIGMAS, ge=10.0)
    initial_steps: int = Field(default=1000, ge=1)
    max_steps: int = Field(default=256000, ge=1)
    step_tolerance: float = Field(default=1e-8, gt=0)
    window_sigmas: float = Field(default=DEFAULT_WINDOW_SIGMAS, ge=8.0)
    scheme: Literal["midpoint", "cf4"] = "cf4"

    @field_validator("ratios")
    @classmethod
    def _positive_ratios(cls, value: List[float]) -> List[float]:
        if any(not math.isfinite(r) or r <= 0 for r in value):
            raise ValueError("sigma_u/omega_u ratios must be positive and finite")
        return value


class ConvergenceSettings(BaseModel):
    """Refinement ladders of the convergence study."""

    model_config = ConfigDict(frozen=True)

    r: float = Field(default=1.0, gt=0)
    quadrature_panels: List[int] = Field(
        default_factory=lambda: [16, 32, 64], min_length=1
    )
    quadrature_order: int = Field(default=2, ge=2)
    k_panels: List[int] = Field(default_factory=lambda: [128, 512, 2048], min_length=1)
    k_order: int = Field(default=2, ge=2)
    step_ladder: List[int] = Field(
        default_factory=lambda: [250, 500, 1000, 2000], min_length=1
    )
    step_ratio: float = Field(default=10.0, gt=0)
    include_magnus: bool = True


class OutputSettings(BaseModel):
    """Where tables and plots are written."""

    model_config = ConfigDict(frozen=True)

    out_dir: Path = Path(DEFAULT_OUT_DIR)
    csv_name: str = "sweep.csv"
    svg_name: str = "sweep.svg"


def _default_r_values() -> List[float]:
    return [float(r) for r in np.logspace(-3.0, 1.0, 30)]


class SweepConfig(BaseModel):
    """Complete configuration of a run, loaded from one JSON document."""

    model_config = ConfigDict(frozen=True)

    r_values: List[float] = Field(default_factory=_default_r_values, min_length=1)
    sigma: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    t0: float = Field(default=0.0, allow_inf_nan=False)
    area: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    theta_u: float = Field(default=math.pi / 2, allow_inf_nan=False)
    dt_convention: Literal["stddev", "fwhm"] = "stddev"
    hbar: float = Field(default=1.0, gt=0, allow_inf_nan=False)
    grid: GridSettings = Field(default_factory=GridSettings)
    limit: LimitSettings = Field(default_factory=LimitSettings)
    dynamics: DynamicsSettings = Field(default_factory=DynamicsSettings)
    convergence: ConvergenceSettings = Field(default_factory=ConvergenceSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @field_validator("r_values")
    @classmethod
    def _positive_r_values(cls, value: List[float]) -> List[float]:
        if any(not math.isfinite(r) or r <= 0 for r in value):
            raise ValueError("r_values must be positive and finite")
        return value

    def with_out_dir(self, out_dir: Path) -> "SweepConfig":
        """Copy of the config writing into another directory."""
        output = self.output.model_copy(update={"out_dir": Path(out_dir)})
        return self.model_copy(update={"output": output})
