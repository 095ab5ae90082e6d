"""Tests for okubo.settings: all 5 precedence steps and error paths."""

from pathlib import Path

import pytest
import tomlkit

import okubo.settings as settings_module
from okubo.errors import ParseError
from okubo.settings import _list_profiles, get_settings


def _write_config(tmp_path: Path, config: dict) -> Path:
    config_path = tmp_path / "config.toml"
    config_path.write_text(tomlkit.dumps(config))
    return config_path


@pytest.fixture(autouse=True)
def reset_lru_cache():
    """Clear the lru_cache before each test."""
    settings_module._load_toml.cache_clear()
    yield
    settings_module._load_toml.cache_clear()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("OKUBO_PROFILE", "OKUBO_SEED", "OKUBO_MAX_HEIGHT", "OKUBO_RANDOM_PAIRS"):
        monkeypatch.delenv(name, raising=False)


class TestListProfiles:
    def test_returns_section_keys(self) -> None:
        config = {"profile": "quick", "quick": {"random_pairs": 100}, "thorough": {"random_pairs": 10**6}}
        assert _list_profiles(config) == ["quick", "thorough"]

    def test_skips_scalar_keys(self) -> None:
        assert _list_profiles({"seed": 3, "quick": {"seed": 4}}) == ["quick"]

    def test_empty_config(self) -> None:
        assert _list_profiles({}) == []


class TestGetSettings:
    def test_override_takes_precedence(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"seed": 5, "quick": {"seed": 6}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)
        monkeypatch.setenv("OKUBO_SEED", "7")

        assert get_settings("quick", seed=8).seed == 8

    def test_env_var_takes_precedence_over_toml(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"seed": 5, "quick": {"seed": 6}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)
        monkeypatch.setenv("OKUBO_SEED", "7")

        assert get_settings("quick").seed == 7

    def test_profile_over_top_level(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"seed": 5, "max_height": 2, "quick": {"seed": 6}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)

        s = get_settings("quick")
        assert s.seed == 6
        assert s.max_height == 2

    def test_profile_key_in_file(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"profile": "thorough", "thorough": {"random_pairs": 123}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)

        assert get_settings().random_pairs == 123

    def test_profile_from_env(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"quick": {"random_pairs": 10}, "thorough": {"random_pairs": 99}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)
        monkeypatch.setenv("OKUBO_PROFILE", "thorough")

        assert get_settings().random_pairs == 99

    def test_missing_profile_raises(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"quick": {"seed": 1}})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)

        with pytest.raises(ParseError, match="quick"):
            get_settings("nonexistent")

    def test_none_overrides_are_ignored(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config_path = _write_config(tmp_path, {"max_height": 4})
        monkeypatch.setattr(settings_module, "CONFIG_PATH", config_path)

        assert get_settings(max_height=None).max_height == 4

    def test_no_config_file_returns_defaults(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(settings_module, "CONFIG_PATH", tmp_path / "nonexistent.toml")

        s = get_settings()
        assert s.seed == 0
        assert s.max_height == 3
        assert s.enumeration_limit == 10**8
