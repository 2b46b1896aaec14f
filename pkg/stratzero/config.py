from functools import lru_cache

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="STRATZERO_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_format: str = "human"  # human | json

    # Generator payoff range (inclusive integers)
    value_low: int = -50
    value_high: int = 50

    # Float fast path: |x| <= tolerance counts as zero
    float_tolerance: float = 1e-9

    # Support enumeration refuses games larger than this in either dimension
    support_enum_max_dim: int = 6

    # Certified generation gives up after this many re-draws
    max_redraws: int = 1000

    # Thread pool size for benchmark reps (1 = sequential)
    bench_workers: int = 1

    # Each bench rep keeps the fastest of this many classify runs on the same game
    bench_inner_runs: int = 3

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept any casing for level names (e.g. 'debug')."""
        return v.upper() if isinstance(v, str) else v

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v not in ("human", "json"):
            raise ValueError("log_format must be 'human' or 'json'")
        return v

    @model_validator(mode="after")
    def validate_value_range(self) -> "Settings":
        """Generators need at least one nonzero value to draw from."""
        if self.value_low > self.value_high:
            raise ValueError("value_low must not exceed value_high")
        if self.value_low == self.value_high == 0:
            raise ValueError("value range must contain a nonzero integer")
        return self

    @model_validator(mode="after")
    def validate_limits(self) -> "Settings":
        if self.float_tolerance < 0:
            raise ValueError("float_tolerance must be non-negative")
        limits = (self.support_enum_max_dim, self.max_redraws, self.bench_workers, self.bench_inner_runs)
        if min(limits) < 1:
            raise ValueError("support_enum_max_dim, max_redraws, bench_workers and bench_inner_runs must be >= 1")
        return self

    @property
    def value_range(self) -> tuple[int, int]:
        return (self.value_low, self.value_high)


@lru_cache
def get_settings() -> Settings:
    return Settings()
