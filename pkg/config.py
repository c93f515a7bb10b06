# ==========================================================
# SCHUBERTIST — CONFIG
# Environment-driven settings and status output
# ==========================================================

import os
import sys
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent
VERSION_FILE = BASE_DIR / "VERSION"

CI_SWEEP_MAX_N = 5
DESK_SWEEP_MAX_N = 6


def is_env_true(name, default="0"):
    return os.environ.get(name, default).strip().lower() in {"1", "true", "yes", "on"}


def env_int(name, default, minimum=None):
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    if minimum is not None:
        value = max(minimum, value)
    return value


def load_app_version():
    override = os.environ.get("SCHUBERT_APP_VERSION", "").strip()
    if override:
        return override
    try:
        raw = VERSION_FILE.read_text(encoding="utf-8").strip()
        if raw:
            return raw
    except OSError:
        pass
    return "0.0.0"


APP_VERSION = load_app_version()
CACHE_PATH = os.environ.get("SCHUBERT_CACHE", "").strip()
DEFAULT_JOBS = env_int("SCHUBERT_JOBS", 1, minimum=1)
DEFAULT_SEED = env_int("SCHUBERT_SEED", 20210601, minimum=0)
CHECK_EXPANSIONS = is_env_true("SCHUBERT_CHECK_EXPANSIONS", "0")
ALLOW_DEEP_SWEEPS = is_env_true("SCHUBERT_ALLOW_DEEP_SWEEPS", "0")


def quiet():
    # Read on every call so tests and scripts can flip it at runtime.
    return is_env_true("SCHUBERT_QUIET", "0")


def log(message):
    # stdout is reserved for JSON and rendered results.
    if not quiet():
        print(message, file=sys.stderr)


def warn(message):
    log(f"⚠️ {message}")
