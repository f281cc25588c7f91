"""Worked integrals with known closed forms, used by ``ortho-l1 examples``.

Each row is ``scale * moment(spec, n, i)`` where ``moment`` is the zero-sum
rule; ``scale`` undoes the normalization when the integrand is written with a
different constant in front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .families import FamilySpec

_r2 = math.sqrt(2.0)
_r3 = math.sqrt(3.0)
_rpi = math.sqrt(math.pi)
_e = math.exp


@dataclass(frozen=True)
class GoldenRow:
    key: str
    integral: str
    spec: FamilySpec
    n: int
    i: int
    scale: float
    exact: Callable[[], float]


ROWS = (
    GoldenRow("laguerre-0-2-0", "int_0^inf (1/2) e^-t |t^2-4t+2| dt", FamilySpec.laguerre(0.0), 2, 0, 1.0,
              lambda: 2 * _e(-2) * (_e(_r2) * (_r2 - 1) + _e(-_r2) * (1 + _r2))),
    GoldenRow("laguerre-0-2-1", "int_0^inf (1/2) t e^-t |t^2-4t+2| dt", FamilySpec.laguerre(0.0), 2, 1, 1.0,
              lambda: 2 * _e(-2) * (_e(_r2) * (5 * _r2 - 7) + _e(-_r2) * (5 * _r2 + 7))),
    GoldenRow("laguerre-2-1-0", "int_0^inf (1/6) t^2 |3-t| e^-t dt", FamilySpec.laguerre(2.0), 1, 0, 1.0,
              lambda: 9 * _e(-3)),
    GoldenRow("laguerre-1-2-0", "int_0^inf (1/6) t |t^2-6t+6| e^-t dt", FamilySpec.laguerre(1.0), 2, 0, 1.0,
              lambda: _e(-3 + _r3) * (4 * _r3 - 6) + _e(-3 - _r3) * (4 * _r3 + 6)),
    GoldenRow("laguerre-1-2-1", "int_0^inf (1/6) t^2 |t^2-6t+6| e^-t dt", FamilySpec.laguerre(1.0), 2, 1, 1.0,
              lambda: 2 * _e(-3) * (_e(_r3) * (14 * _r3 - 24) + _e(-_r3) * (14 * _r3 + 24))),
    GoldenRow("hermite-2-0", "int |2t^2-1| e^-t^2 dt", FamilySpec.hermite(), 2, 0, 4 * _rpi,
              lambda: 2 * _r2 * _e(-0.5)),
    GoldenRow("hermite-2-1", "int |t (2t^2-1)| e^-t^2 dt", FamilySpec.hermite(), 2, 1, 4 * _rpi,
              lambda: 4 * _e(-0.5) - 1),
    GoldenRow("hermite-3-0", "int |t (2t^2-3)| e^-t^2 dt", FamilySpec.hermite(), 3, 0, 12 * _rpi,
              lambda: 1 + 4 * _e(-1.5)),
    GoldenRow("hermite-3-1", "int |t^2 (2t^2-3)| e^-t^2 dt", FamilySpec.hermite(), 3, 1, 12 * _rpi,
              lambda: 3 * math.sqrt(6.0) * _e(-1.5)),
    GoldenRow("hermite-3-2", "int |t^3 (2t^2-3)| e^-t^2 dt", FamilySpec.hermite(), 3, 2, 24 * _rpi,
              lambda: 2 * (7 * _e(-1.5) - 0.5)),
    GoldenRow("jacobi-0-0-2-0", "int_-1^1 (5/4) |3t^2-1| dt", FamilySpec.jacobi(0.0, 0.0), 2, 0, 1.0,
              lambda: 10 * _r3 / 9),
    GoldenRow("jacobi-0-0-2-1", "int_-1^1 (5/4) |t (3t^2-1)| dt", FamilySpec.jacobi(0.0, 0.0), 2, 1, 1.0,
              lambda: 25 / 24),
    GoldenRow("jacobi-0-0-3-0", "int_-1^1 (7/4) |5t^3-3t| dt", FamilySpec.jacobi(0.0, 0.0), 3, 0, 1.0,
              lambda: 91 / 40),
    GoldenRow("jacobi-0-0-3-1", "int_-1^1 (7/4) |t (5t^3-3t)| dt", FamilySpec.jacobi(0.0, 0.0), 3, 1, 1.0,
              lambda: 42 / 25 * math.sqrt(3 / 5)),
    GoldenRow("jacobi-1-0-2-0", "int_-1^1 (3/4) |-5t^3+3t^2+3t-1| dt", FamilySpec.jacobi(1.0, 0.0), 2, 0, 1.0,
              lambda: 72 * math.sqrt(6.0) / 125),
    GoldenRow("jacobi-1-0-2-1", "int_-1^1 (3/4) |t (-5t^3+3t^2+3t-1)| dt", FamilySpec.jacobi(1.0, 0.0), 2, 1, 1.0,
              lambda: 18921 / 25000),
)
