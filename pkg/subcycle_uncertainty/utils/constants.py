"""Constants for the subcycle_uncertainty package."""

import math
from typing import List

# Numerical constants
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
# theta_u = -(lambda/2) * sqrt(omega/sigma) * (pi/2)^(1/4)
QUARTER_ROOT_HALF_PI = (math.pi / 2.0) ** 0.25
SUBCYCLE_LIMIT = INV_SQRT_2PI  # deep-subcycle value of the time-energy product (hbar=1)

# Frequency grid defaults (multiples of sigma)
DEFAULT_CUTOFF_SIGMAS = 12.0
MIN_CUTOFF_SIGMAS = 10.0
DEFAULT_PANELS = 64
DEFAULT_ORDER = 16
SELF_NORM_TOLERANCE = 1e-10

# Gaussian mode classification
SUBCYCLE_RATIO_THRESHOLD = 0.5
UNDERFLOW_RATIO = 40.0

# Detector
MAGNUS_WARN_RATIO = 0.1
DT_CONVENTIONS = ("stddev", "fwhm")

# Dynamics oracle
DEFAULT_WINDOW_SIGMAS = 8.0
STEP_SCHEMES = ("midpoint", "cf4")
SYMPLECTIC_TOLERANCE = 1e-9
COMMUTATOR_TOLERANCE = 1e-10
FOCK_TOLERANCE = 1e-10
MAX_FOCK_MODES = 4
MAX_FOCK_CUTOFF = 16
MAX_FOCK_DIMENSION = 2**16
MAX_FOCK_FIELD_BINS = 3

# Flags attached to sweep rows
FLAG_SUBCYCLE = "subcycle"
FLAG_UNDERFLOW = "optical_underflow"

# Flags attached to dynamics rows
FLAG_BEAMSPLITTER_BREAKDOWN = "beamsplitter_breakdown"
FLAG_NOT_DECREASING = "deviation_not_decreasing"
BREAKDOWN_RELATIVE_DEVIATION = 1.0

# Output
SWEEP_CSV_HEADER: List[str] = [
    "r",
    "theta_g",
    "n_g",
    "abs_m",
    "n2",
    "delta_E",
    "delta_t",
    "product",
    "flags",
]
DEFAULT_OUT_DIR = "results"
OUT_DIR_ENVVAR = "SUBCYCLE_OUT_DIR"
LOG_FILE_NAME = "subcycle_uncertainty.log"
