"""Application constants for companion-algebra.

Centralized constants to avoid magic numbers throughout the codebase.
"""

# =============================================================================
# Application
# =============================================================================

APP_NAME = "companion_algebra"
PROG_NAME = "companion-algebra"
CONFIG_SECTION = "companion"
CONFIG_FILENAME = "companion.cfg"
LOG_FILENAME = "companion.log"
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# =============================================================================
# Exit codes
# =============================================================================

EXIT_OK = 0
EXIT_USAGE = 2  # same code argparse uses for usage errors
EXIT_DOMAIN = 3
EXIT_INVARIANT = 4

# =============================================================================
# Randomized verification defaults
# =============================================================================

DEFAULT_TRIALS = 100
DEFAULT_MAX_WORD_LEN = 8
DEFAULT_SEED = 0
DEFAULT_COEFF_BOUND = 9
DEFAULT_WORKERS = 1

MAX_TRIALS = 100000
MAX_WORD_LEN = 64
MAX_COEFF_BOUND = 1000
MAX_WORKERS = 64

# Random p, q pairs drawn by the coordinate-identity checks
COORD_CHECK_TRIALS = 20

# =============================================================================
# Algorithm limits
# =============================================================================

# Constant-generator search doubles its shift bound up to this value
HNF_FALLBACK_MAX_BOUND = 256

# Structure matrices are n^2 x n^2; beyond this degree SNF gets slow
MAX_DEGREE = 8
MIN_DEGREE = 2

# =============================================================================
# Presentations
# =============================================================================

VARIANT_FULL = "full"
VARIANT_FULL_CONSTANT_S = "full-constant-s"
VARIANT_SUBALGEBRA = "subalgebra"
VARIANTS = (VARIANT_FULL, VARIANT_FULL_CONSTANT_S, VARIANT_SUBALGEBRA)

LABEL_F_RELATION = "f-rel"
LABEL_G_RELATION = "g-rel"
LABEL_SWAP_PREFIX = "swap-"
LABEL_H_RELATION = "h-rel"
