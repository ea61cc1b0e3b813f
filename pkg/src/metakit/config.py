"""Precision and evaluation settings.

Both dataclasses are frozen so they can be passed around by value.  Values
can be overridden from a ``key=value`` file named by the ``METAKIT_CONFIG``
environment variable (see :func:`load_config`).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from .errors import DomainError

DET_TOL = 1e-12


@dataclass(frozen=True)
class PrecisionConfig:
    # em_terms=None means "auto": 40 + 2*ceil(|Im s|)
    em_terms: Optional[int] = None
    em_order: int = 12
    quad_tol: float = 1e-9
    pole_guard: float = 1e-6

    def __post_init__(self):
        if self.em_terms is not None and self.em_terms < 8:
            raise DomainError("em_terms must be >= 8")
        if self.em_order < 2:
            raise DomainError("em_order must be >= 2")
        if not (0.0 < self.quad_tol <= 1e-2):
            raise DomainError("quad_tol must lie in (0, 1e-2]")
        if self.pole_guard <= 0:
            raise DomainError("pole_guard must be positive")

    def terms_for(self, s: complex) -> int:
        if self.em_terms is not None:
            return self.em_terms
        s = complex(s)
        if s.real < 0:
            # the head sum grows like N^(1-Re s) and cancels; use the shortest
            # N for which the Bernoulli corrections still shrink
            return max(8, math.ceil((abs(s) + 2 * self.em_order) / math.pi) + 4)
        return 40 + 2 * math.ceil(abs(s.imag))


@dataclass(frozen=True)
class EvalConfig:
    fourier_n_max: int = 24
    cusp_sum_radius: int = 1200
    quad_tol: float = 1e-9
    ibp_depth: int = 0  # 0 = automatic
    b_truncation: int = 4000
    a_truncation: int = 20000

    def __post_init__(self):
        if self.fourier_n_max < 4:
            raise DomainError("fourier_n_max must be >= 4")
        if self.cusp_sum_radius < 8:
            raise DomainError("cusp_sum_radius must be >= 8")
        if not (0.0 < self.quad_tol <= 1e-2):
            raise DomainError("quad_tol must lie in (0, 1e-2]")
        if self.ibp_depth < 0:
            raise DomainError("ibp_depth must be >= 0")


DEFAULT_PRECISION = PrecisionConfig()
DEFAULT_EVAL = EvalConfig()


def parse_config_text(text: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _apply(cfg, overrides: dict):
    known = {f.name: f for f in fields(cfg)}
    changes = {}
    for key, value in overrides.items():
        if key not in known:
            continue
        default = getattr(cfg, key)
        if value is None or isinstance(value, (int, float)):
            changes[key] = value
        elif isinstance(default, float):
            changes[key] = float(value)
        else:
            v = str(value).strip().lower()
            changes[key] = None if v in ("none", "auto") else int(value)
    return replace(cfg, **changes)


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None):
    """Return ``(PrecisionConfig, EvalConfig)`` from a file plus overrides.

    Keys are matched against the field names of both dataclasses.  A key
    present in both (``quad_tol``) sets both.
    """
    values = {}
    path = path or os.environ.get("METAKIT_CONFIG")
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return _apply(DEFAULT_PRECISION, values), _apply(DEFAULT_EVAL, values)
