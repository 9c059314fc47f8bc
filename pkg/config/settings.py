"""
Histogram Toolkit Configuration
-------------------------------
Policy:
- Everything here is a code constant; no environment variables are read
- CLI flags are the only override
- Defaults follow 8-bit grayscale (256 shades)
"""


# ============================================================
# Gray Levels
# ============================================================
DEFAULT_LEVELS = 256
MAX_LEVELS = 256
MIN_LEVELS = 2

if not MIN_LEVELS <= DEFAULT_LEVELS <= MAX_LEVELS <= 256:
    raise ValueError(
        f"❌ DEFAULT_LEVELS ({DEFAULT_LEVELS}) must lie in "
        f"[{MIN_LEVELS}, {MAX_LEVELS}] and MAX_LEVELS must not exceed 256"
    )


# ============================================================
# PGM Codec
# ============================================================
PGM_ASCII_MAGIC = b"P2"
PGM_BINARY_MAGIC = b"P5"
PGM_MAX_MAXVAL = 255
MASK_MAXVAL = 255


# ============================================================
# Numerical Tolerances
# ============================================================
DISTRIBUTION_TOLERANCE = 1e-9


# ============================================================
# Statistics Report
# ============================================================
REPORT_DECIMALS = 1
CSV_DECIMALS = 9
DEFAULT_SNR_KIND = "range"
NOT_AVAILABLE = "NA"

REPORT_ROWS = (
    "Average",
    "Standard deviation",
    "Minimum",
    "Median",
    "Maximum",
    "Mode",
    "SNR(db)",
)


# ============================================================
# Segmentation
# ============================================================
DEFAULT_SMOOTH_WINDOW = 5

if DEFAULT_SMOOTH_WINDOW < 1 or DEFAULT_SMOOTH_WINDOW % 2 == 0:
    raise ValueError(
        f"❌ DEFAULT_SMOOTH_WINDOW ({DEFAULT_SMOOTH_WINDOW}) must be odd and >= 1"
    )


# ============================================================
# Synthetic Images
# ============================================================
DEFAULT_GRID_SIZE = 256
DEFAULT_EXTENT = 0.5
DEFAULT_SHAPE_A = 0.25
DEFAULT_SIGMA = 0.1

# Bimodal (two-Gaussian) generator, in gray levels
DEFAULT_BIMODAL_SPREAD = 20.0
DEFAULT_BIMODAL_RATIO = 1.0


# ============================================================
# Exit Codes
# ============================================================
EXIT_OK = 0
EXIT_IO = 2
EXIT_INVALID = 3
EXIT_UNKNOWN = 4
EXIT_ALGORITHM = 5
