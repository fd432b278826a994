"""
Configuration for excross
Settings are read from the environment (prefix EXCROSS_) and an optional .env file.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

# Get the project root directory
PROJECT_ROOT = Path(__file__).parent.absolute()


class Settings(BaseSettings):
    """
    Application settings with validation and environment variable support.
    Every field can be overridden with EXCROSS_<FIELD>, e.g. EXCROSS_MAX_GROUP_ORDER=10.
    """

    # --- Logging ---
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: Literal["json", "text"] = "text"
    LOG_FILE: Optional[Path] = None

    # --- Environment ---
    ENVIRONMENT: str = "development"
    DEBUG: bool = False

    # --- Enumeration bounds ---
    MAX_GROUP_ORDER: int = 8

    # --- Word oracle ---
    ORACLE_MAX_WORD_LEN: Optional[int] = None
    ORACLE_MAX_WORDS: int = 5_000_000

    # --- Randomized verification ---
    RANDOM_SEED: int = 0
    RANDOM_TRIPLES: int = 10_000
    VERIFY_LEVEL: Literal["quick", "exhaustive"] = "quick"

    # --- Contractivity spot-check (floating point) ---
    CONTRACTIVITY_SAMPLES: int = 100
    POWER_ITERATIONS: int = 200
    CONTRACTIVITY_TOLERANCE: float = 1e-9

    model_config = SettingsConfigDict(
        env_prefix="EXCROSS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    @property
    def is_production(self) -> bool:
        return self.ENVIRONMENT.lower() == "production"


# Create a global settings instance
settings = Settings()


def validate_configuration(config: Settings = None) -> bool:
    """Validate that all bounds are usable; raise ValueError listing every problem."""
    config = config or settings
    errors = []

    positive = {
        "MAX_GROUP_ORDER": config.MAX_GROUP_ORDER,
        "ORACLE_MAX_WORDS": config.ORACLE_MAX_WORDS,
        "RANDOM_TRIPLES": config.RANDOM_TRIPLES,
        "CONTRACTIVITY_SAMPLES": config.CONTRACTIVITY_SAMPLES,
        "POWER_ITERATIONS": config.POWER_ITERATIONS,
    }
    for name, value in positive.items():
        if value <= 0:
            errors.append(f"{name} must be positive (got {value})")

    if config.ORACLE_MAX_WORD_LEN is not None and config.ORACLE_MAX_WORD_LEN <= 0:
        errors.append(f"ORACLE_MAX_WORD_LEN must be positive (got {config.ORACLE_MAX_WORD_LEN})")

    if config.CONTRACTIVITY_TOLERANCE < 0:
        errors.append("CONTRACTIVITY_TOLERANCE must be non-negative")

    if config.is_production and config.DEBUG:
        errors.append("DEBUG mode should be disabled in production")

    if errors:
        error_msg = "Configuration validation failed:\n" + "\n".join(f"  - {e}" for e in errors)
        raise ValueError(error_msg)

    return True


if __name__ == "__main__":
    print("=" * 60)
    print("excross Configuration")
    print("=" * 60)
    print(f"Environment: {settings.ENVIRONMENT}")
    print(f"Log Level: {settings.LOG_LEVEL} ({settings.LOG_FORMAT})")
    print(f"Max Group Order: {settings.MAX_GROUP_ORDER}")
    print(f"Oracle Word Length: {settings.ORACLE_MAX_WORD_LEN or 'derived per query'}")
    print(f"Oracle Word Budget: {settings.ORACLE_MAX_WORDS:,}")
    print(f"Random Seed: {settings.RANDOM_SEED}")
    print(f"Verification Level: {settings.VERIFY_LEVEL}")
    print("=" * 60)

    try:
        validate_configuration()
        print("✅ Configuration is valid")
    except ValueError as e:
        print(f"❌ Configuration errors:\n{e}")
