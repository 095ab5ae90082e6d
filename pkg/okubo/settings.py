"""Settings resolution: CLI overrides, OKUBO_* environment, named TOML profile, TOML defaults, field defaults."""

import os
from collections.abc import Mapping
from functools import lru_cache
from pathlib import Path
from typing import Any

import tomlkit
from pydantic_settings import BaseSettings, SettingsConfigDict

from okubo.errors import ParseError

CONFIG_PATH = Path.home() / ".config" / "okubo" / "config.toml"


class OkuboSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="OKUBO_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    seed: int = 0  # randomized identity tests
    max_height: int = 3  # lattice-search coefficient height on infinite fields
    quaternion_height: int = 8  # isotropy search height over Q
    random_pairs: int = 10_000
    random_pairs_infinite: int = 64
    exhaustive_pairs: int = 2**20
    enumeration_limit: int = 10**8  # |F|^d bound for brute-force enumeration
    search_limit: int = 50_000  # candidates per lattice search
    order_cap: int = 512


@lru_cache(maxsize=1)
def _load_toml() -> tomlkit.TOMLDocument:
    """Load ~/.config/okubo/config.toml, returning an empty document if missing."""
    if not CONFIG_PATH.exists():
        return tomlkit.document()
    return tomlkit.load(CONFIG_PATH.open())


def _list_profiles(config: Mapping) -> list[str]:
    # tomlkit Table implements MutableMapping but not dict, so check Mapping
    return [k for k, v in config.items() if isinstance(v, Mapping)]


def _plain(values: Mapping) -> dict[str, Any]:
    return {k: v.unwrap() if hasattr(v, "unwrap") else v for k, v in values.items() if not isinstance(v, Mapping)}


def get_settings(profile: str | None = None, **overrides: Any) -> OkuboSettings:
    """Resolve the active profile and return a fully populated OkuboSettings.

    Precedence (highest to lowest):
    1. keyword overrides (CLI flags)
    2. OKUBO_* environment variables and .env
    3. the selected profile table of ~/.config/okubo/config.toml
    4. top-level keys of the same file
    5. field defaults

    The profile is the `profile` argument, else OKUBO_PROFILE, else the file's `profile` key.
    """
    config = _load_toml()
    active = profile or os.environ.get("OKUBO_PROFILE") or config.get("profile")

    file_defaults = _plain(config)
    file_defaults.pop("profile", None)
    if active:
        if active not in config or not isinstance(config[active], Mapping):
            profiles = _list_profiles(config)
            raise ParseError(f"profile '{active}' not found in {CONFIG_PATH}. Available: {profiles or '(none)'}")
        file_defaults |= _plain(config[active])

    # values coming from the environment land in model_fields_set and must win over the file
    from_env = OkuboSettings()
    merged = {k: v for k, v in file_defaults.items() if k not in from_env.model_fields_set}
    merged |= {k: v for k, v in overrides.items() if v is not None}
    return OkuboSettings(**merged)
