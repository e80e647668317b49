# File: packetforge/packetforge/config.py
# This file defines runtime settings, read from the environment and an optional .env file.

from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="PACKETFORGE_", case_sensitive=False)

    # App Settings
    APP_NAME: str = "PacketForge"
    VERSION: str = "0.1.0"
    LOG_LEVEL: str = "WARNING"

    # Base configuration file used when --config is not given
    CONFIG_PATH: Optional[str] = None

    # Engine limits
    MAX_CUSPIDAL_LETTERS: int = 14

    # Verification policy
    EPS_PRODUCT_OVERRIDE: bool = False
    STRICT_CERTIFICATES: bool = False
    ZERO_CHAIN_GENERIC_SIGN: int = 1

    # Reporting
    DEFAULT_FORMAT: str = "json"
    DEFAULT_JOBS: int = 1


settings = Settings()
