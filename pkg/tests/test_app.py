import logging

from app import AppConfig, configure_logging, create_app

ENV_VARS = (
    "NILCOVER_LOG_LEVEL",
    "NILCOVER_ORACLE_BOUND",
    "NILCOVER_EXHAUSTIVE_BOUND",
    "NILCOVER_SUITE_BOUND_SP",
    "NILCOVER_SUITE_BOUND_SO",
    "NILCOVER_JOBS",
    "NILCOVER_REPORTS_DIR",
)


def test_defaults(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    config = create_app()
    assert config == AppConfig()
    assert config.oracle_bound == 16
    assert config.suite_bound_sp == 12
    assert config.suite_bound_so == 13


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("NILCOVER_ORACLE_BOUND", "20")
    monkeypatch.setenv("NILCOVER_JOBS", "4")
    monkeypatch.setenv("NILCOVER_REPORTS_DIR", "/tmp/nilcover")
    config = create_app()
    assert config.oracle_bound == 20
    assert config.jobs == 4
    assert config.reports_dir == "/tmp/nilcover"


def test_malformed_values_fall_back(monkeypatch, caplog):
    monkeypatch.setenv("NILCOVER_EXHAUSTIVE_BOUND", "many")
    with caplog.at_level(logging.WARNING):
        config = create_app()
    assert config.exhaustive_bound == 40
    assert "NILCOVER_EXHAUSTIVE_BOUND" in caplog.text


def test_configure_logging_accepts_names():
    configure_logging("debug")
    assert logging.getLogger().level == logging.DEBUG
    configure_logging(logging.WARNING)
    assert logging.getLogger().level == logging.WARNING
