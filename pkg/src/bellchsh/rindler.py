"""Unruh-temperature parametrization of the vacuum CHSH value.

To a uniformly accelerated observer the Minkowski vacuum is a product
over Rindler modes of two-mode squeezed states pairing the left and
right wedges, with per-mode squeezing ``exp(-pi omega / a)``.  The
identity

    2 eta / (1 + eta^2) = 1 / cosh(pi omega / a)      (eta = e^{-pi omega / a})

turns the squeezed-oscillator prefactor into a thermal form factor

    tau(T) = sum_i 1 / cosh(omega_i / (2 T)),    T = a / (2 pi),

and at the maximal-violation phase choice the CHSH value is
``2 sqrt(2) tau(T)``.  The per-mode factor lies in (0, 1); a summed
multi-mode tau can exceed 1, in which case the literal value is
reported and the row is flagged supra-Tsirelson rather than clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .chsh import AngleSet, TSIRELSON_BOUND
from .errors import DomainError

#: Phase choice at which the squeezed closed form saturates its cosine
#: combination; identical to the oscillator maximal-violation phases.
RINDLER_ANGLES = AngleSet(0.0, math.pi / 2, -math.pi / 4, math.pi / 4)


@dataclass(frozen=True)
class RindlerModeSet:
    """Finite set of Rindler mode frequencies with an acceleration."""

    frequencies: tuple[float, ...]
    acceleration: float

    def __post_init__(self):
        freqs = tuple(float(w) for w in self.frequencies)
        object.__setattr__(self, "frequencies", freqs)
        if not freqs:
            raise DomainError("mode set needs at least one frequency")
        if any(w <= 0.0 for w in freqs):
            raise DomainError(f"frequencies must be positive, got {freqs}")
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise DomainError(f"frequencies must be strictly ascending, got {freqs}")
        if not self.acceleration > 0.0:
            raise DomainError(
                f"acceleration must be positive, got {self.acceleration}"
            )

    @property
    def temperature(self) -> float:
        return unruh_temperature(self.acceleration)

    def with_temperature(self, temperature: float) -> "RindlerModeSet":
        if not temperature > 0.0:
            raise DomainError(f"temperature must be positive, got {temperature}")
        return RindlerModeSet(self.frequencies, 2.0 * math.pi * temperature)


def unruh_temperature(acceleration: float) -> float:
    """Unruh temperature T = a / (2 pi) of a uniformly accelerated observer."""
    if not acceleration > 0.0:
        raise DomainError(f"acceleration must be positive, got {acceleration}")
    return acceleration / (2.0 * math.pi)


def mode_squeezing(omega: float, acceleration: float) -> float:
    """Per-mode squeezing parameter exp(-pi omega / a), in (0, 1)."""
    if not omega > 0.0:
        raise DomainError(f"frequency must be positive, got {omega}")
    if not acceleration > 0.0:
        raise DomainError(f"acceleration must be positive, got {acceleration}")
    return math.exp(-math.pi * omega / acceleration)


def _sech(x: float) -> float:
    # 1/cosh(x) without overflow: underflows gracefully to 0 for large x
    e = math.exp(-abs(x))
    return 2.0 * e / (1.0 + e * e)


def tau(modes: RindlerModeSet) -> float:
    """Thermal form factor sum_i 1 / cosh(omega_i / (2 T))."""
    t = modes.temperature
    return sum(_sech(w / (2.0 * t)) for w in modes.frequencies)


def tau_exponential_form(modes: RindlerModeSet) -> float:
    """The form factor written with explicit exponentials,

        sum_i 2 (e^{pi w/a} - e^{-pi w/a}) / (e^{2 pi w/a} - e^{-2 pi w/a}),

    algebraically identical to :func:`tau`; kept literal so the two
    evaluations can be compared numerically.
    """
    a = modes.acceleration
    total = 0.0
    for w in modes.frequencies:
        x = math.pi * w / a
        total += 2.0 * (math.exp(x) - math.exp(-x)) \
            / (math.exp(2.0 * x) - math.exp(-2.0 * x))
    return total


def rindler_chsh(modes: RindlerModeSet) -> float:
    """Vacuum CHSH value 2 sqrt(2) tau at the maximal-violation phases."""
    return TSIRELSON_BOUND * tau(modes)


@dataclass(frozen=True)
class ScanRow:
    """One temperature-scan row."""

    temperature: float
    tau: float
    chsh: float
    supra_tsirelson: bool

    #: Marker text used in tabular output for flagged rows.
    FLAG_TEXT = "supra-Tsirelson (summed modes)"

    @property
    def flag(self) -> str:
        return self.FLAG_TEXT if self.supra_tsirelson else ""


def temperature_scan(modes: RindlerModeSet,
                     t_grid: Sequence[float] | Iterable[float]) -> list[ScanRow]:
    """Recompute (tau, CHSH) over an ascending grid of temperatures.

    Each row replaces the acceleration by 2 pi T.  Rows whose summed
    form factor exceeds 1 (possible only with several modes) are
    flagged supra-Tsirelson; the literal value is reported unclamped.
    """
    grid = [float(t) for t in t_grid]
    if not grid:
        raise DomainError("temperature grid must be non-empty")
    if any(t <= 0.0 for t in grid):
        raise DomainError(f"temperatures must be positive, got {grid}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("temperature grid must be strictly ascending")
    rows = []
    for t in grid:
        at_t = modes.with_temperature(t)
        form = tau(at_t)
        rows.append(ScanRow(
            temperature=t,
            tau=form,
            chsh=TSIRELSON_BOUND * form,
            supra_tsirelson=form > 1.0,
        ))
    return rows
