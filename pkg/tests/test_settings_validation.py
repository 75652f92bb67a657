from __future__ import annotations

import pytest

from gwrecon.config import Settings


def test_defaults_are_valid():
    s = Settings.model_validate({})
    assert s.cache_path == ""
    assert s.oracle_max_N >= 4


def test_cache_path_accepts_both_names():
    assert Settings.model_validate({"GWRECON_CACHE": "a.json"}).cache_path == "a.json"
    assert Settings.model_validate({"CACHE_PATH": "b.json"}).cache_path == "b.json"


@pytest.mark.parametrize(
    "case",
    [
        {"name": "bad log level", "data": {"log_level": "LOUD"}, "msg": "LOG_LEVEL"},
        {"name": "zero bound", "data": {"census_max_degree": 0}, "msg": "CENSUS_MAX_DEGREE must be positive"},
        {"name": "tiny oracle", "data": {"oracle_max_N": 3}, "msg": "ORACLE_MAX_N must be at least 4"},
        {"name": "negative kappa", "data": {"audit_max_kappa": -1}, "msg": "AUDIT_MAX_KAPPA"},
    ],
    ids=lambda c: c["name"],
)
def test_invalid_settings(case: dict[str, object]):
    with pytest.raises(Exception) as excinfo:
        Settings.model_validate(case["data"])
    assert case["msg"] in str(excinfo.value)


def test_errors_are_collected():
    with pytest.raises(Exception) as excinfo:
        Settings.model_validate({"cycle_type_bound": 0, "km_max_degree": -2})
    msg = str(excinfo.value)
    assert "CYCLE_TYPE_BOUND" in msg
    assert "KM_MAX_DEGREE" in msg
