"""Tests for configuration management."""

import pytest
from pydantic import ValidationError as PydanticValidationError

from amm_verify.config import (AmmConfig, get_config, reload_config,
                               resolve_threads, update_config, validate_config)
from amm_verify.errors import ValidationError


class TestDefaults:
    def test_default_values(self):
        config = get_config()
        assert config.arithmetic.oracle_bound == 2000
        assert config.arithmetic.escalation_cap == 512
        assert config.scan.budget_bits == 34
        assert config.verifier.max_ell == 6
        assert config.threads is None

    def test_get_config_is_singleton(self):
        assert get_config() is get_config()

    def test_reload_resets(self):
        update_config(scan={"budget_bits": 20})
        assert reload_config().scan.budget_bits == 34


class TestUpdateConfig:
    def test_nested_update(self):
        config = update_config(verifier={"max_ell": 3})
        assert config.verifier.max_ell == 3

    def test_top_level_update(self):
        assert update_config(threads=4).threads == 4

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            update_config(colour="blue")

    def test_assignment_is_validated(self):
        with pytest.raises(PydanticValidationError):
            update_config(scan={"budget_bits": 0})

    def test_log_level_normalised(self):
        config = update_config(logging={"level": "debug"})
        assert config.logging.level == "DEBUG"


class TestResolveThreads:
    def test_environment_wins(self, monkeypatch):
        monkeypatch.setenv("AMM_THREADS", "3")
        assert resolve_threads(8) == 3

    def test_explicit_value(self):
        assert resolve_threads(2) == 2

    def test_config_value(self):
        update_config(threads=5)
        assert resolve_threads() == 5

    def test_falls_back_to_cpu_count(self, monkeypatch):
        monkeypatch.setattr("amm_verify.config.os.cpu_count", lambda: 7)
        assert resolve_threads() == 7

    def test_rejects_zero(self):
        with pytest.raises(ValidationError):
            resolve_threads(0)


class TestValidateConfig:
    def test_defaults_are_clean(self):
        assert validate_config(AmmConfig()) == []

    def test_large_budget_warns(self):
        config = AmmConfig()
        config.scan.budget_bits = 44
        warnings = validate_config(config)
        assert any("budget_bits" in w for w in warnings)
