"""Application configuration settings."""
from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Process-level settings loaded from environment variables."""

    # Application
    APP_NAME: str = "stlplan"
    DEBUG: bool = False  # forces DEBUG logging unless --log-level is given

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None

    # Workers
    STLPLAN_THREADS: int = 1

    # Robustness of `true`; must exceed every channel magnitude in a trace
    TOP_VALUE: float = 1e9

    # Outputs
    OUTPUT_DIR: str = "./runs"

    class Config:
        env_file = ".env"
        case_sensitive = True


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
