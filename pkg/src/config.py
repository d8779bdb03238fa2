"""
Configuration management.
Loads environment variables and provides application configuration.
"""
import os
import logging
from pathlib import Path
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Load environment variables
# Variables already present in the environment (docker-compose env_file, CI)
# win over the .env file
env_vars_already_set = bool(os.getenv("ADDILOPE_MAX_GRID") or os.getenv("ADDILOPE_TOLERANCE"))

if not env_vars_already_set:
    env_paths = [
        Path(__file__).parent.parent / ".env",  # Project root (from src/config.py)
        Path.cwd() / ".env",  # Current working directory
    ]

    env_loaded = False
    for env_path in env_paths:
        if env_path.exists():
            logger.info(f"Loading .env from: {env_path}")
            load_dotenv(dotenv_path=env_path, override=False)
            env_loaded = True
            break

    if not env_loaded:
        logger.debug("No .env file found in standard locations, using default load_dotenv() behavior")
        load_dotenv()
else:
    logger.info("Environment variables already set, skipping .env file load")


def _read_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def _read_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return value


# Total number of grid points any single grid may hold
MAX_GRID_POINTS = _read_int("ADDILOPE_MAX_GRID", 4_000_000)

# Corner estimate growth factor per refinement that marks a transform as divergent
DIVERGENCE_GROWTH = _read_float("ADDILOPE_DIVERGENCE_GROWTH", 1.25)

# Relative tolerance factor for floating grids: tau = factor * (1 + max|a|)
TOLERANCE_FACTOR = _read_float("ADDILOPE_TOLERANCE", 1e-9)

# Directional convexity is cross-checked by quadruple scan below this many quadruples
ORACLE_QUADRUPLE_LIMIT = _read_int("ADDILOPE_ORACLE_LIMIT", 5000)

# Linear-dual verifier: largest accepted gap ratio between consecutive levels
# Linear-dual verifier: smallest accepted gap ratio between consecutive levels
GAP_RATIO_MIN = _read_float("ADDILOPE_GAP_RATIO_MIN", 0.4)

GAP_RATIO_MAX = _read_float("ADDILOPE_GAP_RATIO_MAX", 0.6)

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

# Directory for CLI outputs
OUTPUT_DIR = Path(os.getenv("ADDILOPE_OUTPUT_DIR", "out"))

if DIVERGENCE_GROWTH <= 1.0:
    raise ValueError("ADDILOPE_DIVERGENCE_GROWTH must be greater than 1")

if GAP_RATIO_MIN > GAP_RATIO_MAX:
    raise ValueError("ADDILOPE_GAP_RATIO_MIN must not exceed ADDILOPE_GAP_RATIO_MAX")

logger.debug(
    f"Limits: max_grid={MAX_GRID_POINTS}, divergence_growth={DIVERGENCE_GROWTH}, "
    f"tolerance={TOLERANCE_FACTOR}, oracle_limit={ORACLE_QUADRUPLE_LIMIT}"
)
