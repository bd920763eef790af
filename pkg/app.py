import os
import logging
from dataclasses import dataclass

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class AppConfig:
    log_level: str = "WARNING"
    oracle_bound: int = 16
    exhaustive_bound: int = 40
    suite_bound_sp: int = 12
    suite_bound_so: int = 13
    jobs: int = 1
    reports_dir: str = "reports"


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.warning(f"Ignoring malformed {name}={raw!r}, using {default}")
        return default


def configure_logging(level=None):
    """Send library logs to stderr so stdout stays machine readable"""
    if isinstance(level, str):
        level = getattr(logging, level.upper(), None)
        if not isinstance(level, int):
            level = logging.WARNING
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=level or logging.WARNING, format=LOG_FORMAT)
    elif level is not None:
        root.setLevel(level)


def create_app():
    config = AppConfig(
        log_level=os.environ.get("NILCOVER_LOG_LEVEL", "WARNING").upper(),
        oracle_bound=_env_int("NILCOVER_ORACLE_BOUND", AppConfig.oracle_bound),
        exhaustive_bound=_env_int("NILCOVER_EXHAUSTIVE_BOUND", AppConfig.exhaustive_bound),
        suite_bound_sp=_env_int("NILCOVER_SUITE_BOUND_SP", AppConfig.suite_bound_sp),
        suite_bound_so=_env_int("NILCOVER_SUITE_BOUND_SO", AppConfig.suite_bound_so),
        jobs=_env_int("NILCOVER_JOBS", AppConfig.jobs),
        reports_dir=os.environ.get("NILCOVER_REPORTS_DIR", AppConfig.reports_dir),
    )
    configure_logging(config.log_level)
    logging.debug(f"Loaded configuration {config}")
    return config


# Process-wide configuration
app = create_app()
