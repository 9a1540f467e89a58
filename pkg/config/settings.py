import os
from pathlib import Path
from dotenv import load_dotenv


def _str_to_bool(value: str) -> bool:
	return value.strip().lower() in {"1", "true", "yes", "on"}

# Load environment variables from .env file
ENV_FILE = Path(__file__).parent.parent / ".env"
load_dotenv(ENV_FILE)

PROJECT_ROOT = Path(__file__).parent.parent

# ============================================================================
# Oracle Arithmetic
# ============================================================================
ARITHMETIC_MODE = os.getenv("FPLAB_ARITHMETIC_MODE", "modular")  # "modular" or "exact"
PRIME_BITS = int(os.getenv("FPLAB_PRIME_BITS", "62"))  # Random primes are drawn just below 2**PRIME_BITS
MODULAR_PRIME_COUNT = 2  # Independent primes that must agree

# Debug dump of every condition matrix the oracle builds
DUMP_MATRICES = _str_to_bool(os.getenv("FPLAB_DUMP_MATRICES", "false"))
DUMP_DIR = Path(os.getenv("FPLAB_DUMP_DIR", str(PROJECT_ROOT / "matrix_dumps")))

# ============================================================================
# Configuration Generation
# ============================================================================
COORD_BOUND = int(os.getenv("FPLAB_COORD_BOUND", "10000"))  # Coordinates drawn from [-B, B]
RETRY_BUDGET = int(os.getenv("FPLAB_RETRY_BUDGET", "64"))  # Resamples before a degeneracy error

# ============================================================================
# Scan / Extremal Runs
# ============================================================================
SCAN_MAX_SIGMA = int(os.getenv("FPLAB_SCAN_MAX_SIGMA", "12"))
SCAN_SEEDS = int(os.getenv("FPLAB_SCAN_SEEDS", "3"))  # K seeds per confirmed vector
SCAN_SAMPLE_EVERY = int(os.getenv("FPLAB_SCAN_SAMPLE_EVERY", "4"))  # Oracle-confirm every k-th vector
EXTREMAL_TRIALS = int(os.getenv("FPLAB_EXTREMAL_TRIALS", "50"))
WORKERS = int(os.getenv("FPLAB_WORKERS", "4"))

# ============================================================================
# Reproduction Fixtures
# ============================================================================
FIXTURES_PATH = Path(os.getenv("FPLAB_FIXTURES_PATH", str(PROJECT_ROOT / "fixtures" / "printed_examples.json")))

# ============================================================================
# Logging
# ============================================================================
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
