"""
Runtime limits for the command line and the membership solver.

Values come from the defaults below, then from CHOWRING_* environment
variables, then from explicit command line flags.
"""

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from chowring.errors import SizeLimitError
from chowring.hypersurface_combinatorics import dim_W

ENV_PREFIX = "CHOWRING_"
FIELDS = ("max_n", "max_d", "max_dim", "slice_limit", "jobs")


@dataclass(frozen=True)
class Limits:
    """Size guards for computations that grow quickly with n and d"""
    max_n: int = 4
    max_d: int = 5
    max_dim: int = 21
    slice_limit: int = 5000
    jobs: int = 1

    def __post_init__(self):
        for name in FIELDS:
            if getattr(self, name) < 1:
                raise ValueError(f"Limit '{name}' must be positive, got {getattr(self, name)}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Limits":
        environ = os.environ if environ is None else environ
        values = {}
        for name in FIELDS:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None or not raw.strip():
                continue
            try:
                values[name] = int(raw)
            except ValueError:
                raise ValueError(f"{ENV_PREFIX + name.upper()} must be an integer, got '{raw}'") from None
        return cls(**values)

    def with_overrides(self, **overrides) -> "Limits":
        """Return a copy with the given non-None fields replaced"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def check_size(self, n: int, d: int, unsafe: bool = False) -> None:
        if n < 1 or d < 1:
            raise SizeLimitError(f"n and d must be positive, got n={n}, d={d}")
        if unsafe:
            return
        if n > self.max_n or d > self.max_d:
            raise SizeLimitError(
                f"(n, d) = ({n}, {d}) exceeds the size guard n <= {self.max_n}, d <= {self.max_d}; "
                "pass --unsafe-sizes to override"
            )
        if dim_W(n, d) > self.max_dim:
            raise SizeLimitError(
                f"dim W_d = {dim_W(n, d)} for (n, d) = ({n}, {d}) exceeds the size guard {self.max_dim}; "
                "pass --unsafe-sizes to override"
            )


DEFAULT_LIMITS = Limits()
