"""Versioned numeric defaults. CLI flags and function arguments override these."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

CONFIG_VERSION = 1


@dataclass(frozen=True)
class Defaults:
    quad_rtol: float = 1e-12
    transport_tol: float = 1e-11
    rcond_cut: float = 1e-12
    min_step: float = 1e-14
    anchor_radius: float = 50.0
    anchor_order: int = 12
    jet_depth: int = 6
    locus_grid: int = 41
    resonance_eps: float = 1e-9
    resonance_warn: float = 1e-6


DEFAULTS = Defaults()


def with_overrides(**kwargs) -> Defaults:
    return replace(DEFAULTS, **{k: v for k, v in kwargs.items() if v is not None})


def max_threads() -> int:
    """Parallelism cap taken from HEUNRH_THREADS; 1 means run serially."""
    try:
        return max(1, int(os.environ.get("HEUNRH_THREADS", "1")))
    except ValueError:
        return 1


def as_dict() -> dict:
    d = {k: getattr(DEFAULTS, k) for k in DEFAULTS.__dataclass_fields__}
    d["version"] = CONFIG_VERSION
    return d
