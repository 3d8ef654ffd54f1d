"""Runtime configuration with environment-variable overrides for budgets."""

import os
from dataclasses import dataclass

ENV_PREFIX = "THUELAT_"


@dataclass(frozen=True)
class Config:
    precision_bits: int = 128
    max_precision_bits: int = 1 << 14
    brute_radius_override: float | None = None
    default_radius: float = 100.0
    y_max_for_convergents: int = 10**12
    factorization_budget: int = 10**40  # largest m we agree to factor
    oracle_budget: int = 10**6  # largest p^k for the exhaustive projective scan
    enum_budget: int = 10**8  # most candidate points a single scan may visit
    shard_count: int = 1
    output_format: str = "kv-text"  # kv-text | csv (report-style commands)

    def __post_init__(self):
        if self.precision_bits <= 0 or self.shard_count <= 0:
            raise ValueError("precision_bits and shard_count must be positive")
        if self.output_format not in ("kv-text", "csv"):
            raise ValueError("output_format must be 'kv-text' or 'csv'")

    @classmethod
    def from_env(cls, **overrides):
        """Build a Config, letting THUELAT_* environment variables override budgets."""
        values = {}
        for name, caster in (
            ("precision_bits", int),
            ("factorization_budget", int),
            ("oracle_budget", int),
            ("enum_budget", int),
            ("y_max_for_convergents", int),
            ("shard_count", int),
            ("default_radius", float),
        ):
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = caster(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


DEFAULT_CONFIG = Config()
