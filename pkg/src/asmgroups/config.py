"""Run configuration: command-line flags override ASMGROUPS_* environment
variables, which override the defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from typing import Mapping

from .order import DEFAULT_CLOSURE_MAX, DEFAULT_MAGNITUDE_BOUND, DEFAULT_ORDER_CAP

ENV_PREFIX = "ASMGROUPS_"
FORMATS = ("text", "json", "structured")  # json and structured are synonyms


@dataclass(frozen=True)
class RunConfig:
    order_cap: int = DEFAULT_ORDER_CAP
    magnitude_bound: int = DEFAULT_MAGNITUDE_BOUND
    closure_max: int = DEFAULT_CLOSURE_MAX
    jobs: int = 0  # 0 means one worker per logical CPU
    output_format: str = "text"

    def __post_init__(self):
        for name in ("order_cap", "magnitude_bound", "closure_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.jobs < 0:
            raise ValueError("jobs must be >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}")

    @property
    def effective_jobs(self) -> int:
        return self.jobs or os.cpu_count() or 1

    @classmethod
    def resolve(cls, flags: Mapping[str, object] | None = None,
                env: Mapping[str, str] | None = None) -> "RunConfig":
        """Merge flag values (None = unset) over environment over defaults."""
        env = os.environ if env is None else env
        flags = flags or {}
        values = {}
        for f in fields(cls):
            flag = flags.get(f.name)
            if flag is not None:
                values[f.name] = flag
                continue
            raw = env.get(ENV_PREFIX + f.name.upper())
            if raw is not None and raw != "":
                values[f.name] = raw if f.type in ("str", str) else int(raw)
        return cls(**values)
