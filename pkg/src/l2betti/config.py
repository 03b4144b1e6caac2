"""Run configuration shared by the command-line front end and scripts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .homology import DEFAULT_CEILING

BACKENDS = ("exact", "float")


@dataclass
class RunConfig:
    """Knobs for a single command run.

    backend selects the arithmetic for the comparisons that have a
    floating-point route; tolerance applies only there.  ceiling bounds
    the bar-complex size, seed drives every random draw, and out, when
    set, receives the report instead of stdout.
    """

    backend: str = "exact"
    tolerance: float = 1e-9
    ceiling: int = DEFAULT_CEILING
    seed: int = 0
    trials: int = 100
    max_degree: int = 2
    out: Optional[str] = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not self.ceiling > 0:
            raise ValueError("ceiling must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def public_dict(self) -> dict:
        return {
            "backend": self.backend,
            "tolerance": self.tolerance,
            "ceiling": self.ceiling,
            "seed": self.seed,
            "trials": self.trials,
            "max_degree": self.max_degree,
        }
