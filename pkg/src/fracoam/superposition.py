"""n-fold rotational superpositions of fractional vortices.

Two constructions of the n-section state are provided:

* ``superposition``: the normalized sum of the n copies of ``|M(alpha)>``
  rotated by ``2*pi*k/n``.  Its norm vanishes for integer charges with
  ``M mod n != 0``.
* ``sector``: the phase profile of an n-section plate,
  ``exp(1j*M*((phi - alpha) mod 2*pi/n))``, defined for every charge.

Where both exist they agree up to a global phase.  Fields are split at the n
sector boundaries ``alpha + 2*pi*j/n`` and additionally at ``phi = 0`` when a
sector straddles it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .oracle import inner_product
from .phase_core import (
    ANGLE_SNAP,
    TWO_PI,
    ChargeLike,
    DegenerateSuperposition,
    FractionalCharge,
    PiecewiseExpField,
    Segment,
    as_charge,
    canonical_angle,
    fields_from_pieces,
    fractional_vortex_field,
    rotate_field,
)

# Same threshold as the closed-form degeneracy check, applied to the field norm.
NORM_THRESHOLD = 1e-9


class Construction(str, enum.Enum):
    SUPERPOSITION = "superposition"
    SECTOR = "sector"


@dataclass(frozen=True)
class SuperposedState:
    n: int
    charge: FractionalCharge
    alpha: float
    field: PiecewiseExpField
    construction: Construction

    def sector_boundaries(self) -> list[float]:
        """The n sector start angles, ascending."""
        period = TWO_PI / self.n
        first = math.fmod(self.alpha, period)
        return [first + j * period for j in range(self.n)]


@dataclass(frozen=True)
class ModeSpectrum:
    coefficients: dict[int, complex]
    m_min: int
    m_max: int

    def weights(self) -> dict[int, float]:
        return {m: abs(c) ** 2 for m, c in self.coefficients.items()}

    def total_weight(self) -> float:
        return float(sum(self.weights().values()))


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _cuts(n: int, alpha: float) -> list[float]:
    period = TWO_PI / n
    first = math.fmod(alpha, period)
    cuts = {0.0, TWO_PI}
    for j in range(n):
        c = first + j * period
        if ANGLE_SNAP < c < TWO_PI - ANGLE_SNAP:
            cuts.add(c)
    return sorted(cuts)


def _unnormalized_sum(n: int, charge: FractionalCharge, alpha: float) -> PiecewiseExpField:
    copies = [rotate_field(fractional_vortex_field(charge, alpha), TWO_PI * k / n) for k in range(n)]
    cuts = _cuts(n, alpha)
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        total = 0j
        for copy in copies:
            seg = copy.segment_at(mid)
            total += seg.coefficient
        pieces.append(Segment(lo, hi, charge.value, 0.0, total))
    return fields_from_pieces(pieces)


def build_superposed(n: int, charge: ChargeLike, alpha: float) -> SuperposedState:
    """Normalized sum of n rotated copies of the fractional vortex at ``alpha``.

    Within each sector every copy is ``const * exp(1j*M*phi)``, so the sum is
    collapsed to one complex constant per sector.

    Raises:
        DegenerateSuperposition: if the unnormalized norm is below
            :data:`NORM_THRESHOLD`.
    """
    n = _check_n(n)
    c = as_charge(charge)
    alpha = canonical_angle(alpha)
    raw = _unnormalized_sum(n, c, alpha)
    norm = raw.norm_squared()
    if norm < NORM_THRESHOLD:
        raise DegenerateSuperposition(
            f"n={n}, M={c.value}: rotational superposition has norm {norm:.3e}"
        )
    return SuperposedState(n, c, alpha, raw.scaled(1.0 / math.sqrt(norm)), Construction.SUPERPOSITION)


def build_spp_profile(n: int, charge: ChargeLike, alpha: float) -> SuperposedState:
    """n-section ramp ``exp(1j*M*((phi - alpha) mod 2*pi/n))``; valid for any charge."""
    n = _check_n(n)
    c = as_charge(charge)
    alpha = canonical_angle(alpha)
    period = TWO_PI / n
    cuts = _cuts(n, alpha)
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        j = math.floor((0.5 * (lo + hi) - alpha) / period)
        pieces.append(Segment(lo, hi, c.value, -c.value * (alpha + j * period)))
    return SuperposedState(n, c, alpha, fields_from_pieces(pieces), Construction.SECTOR)


def build_state(n: int, charge: ChargeLike, alpha: float, construction="sector") -> SuperposedState:
    construction = Construction(construction)
    if construction is Construction.SUPERPOSITION:
        return build_superposed(n, charge, alpha)
    return build_spp_profile(n, charge, alpha)


def is_degenerate(n: int, charge: ChargeLike) -> bool:
    """Whether the rotational superposition has vanishing norm for this (n, M)."""
    return unnormalized_norm(n, charge) < NORM_THRESHOLD


def unnormalized_norm(n: int, charge: ChargeLike) -> float:
    """``<Mn'|Mn'> = n * sum_k Re <M| U(2*pi*k/n) |M>`` from the closed-form self overlap."""
    from .closed_form import superposition_normalization

    n = _check_n(n)
    return n * superposition_normalization(n, charge)


def symmetry_residual(state: SuperposedState, samples: int = 1024) -> float:
    """Largest pointwise change of the field under rotations by ``2*pi*t/n``."""
    phi = np.arange(samples) * (TWO_PI / samples)
    # keep samples off the discontinuities, where either side is a valid value
    phi = phi + 0.5 * TWO_PI / samples
    base = state.field(phi)
    worst = 0.0
    for t in range(1, state.n + 1):
        rotated = rotate_field(state.field, TWO_PI * t / state.n)
        worst = max(worst, float(np.max(np.abs(base - rotated(phi)))))
    return worst


def decompose_superposed(state: SuperposedState, m_min: int, m_max: int) -> ModeSpectrum:
    """Integer-OAM coefficients ``(1/2pi) * integral exp(-1j*m'*phi) * psi(phi)``."""
    if m_min > m_max:
        raise ValueError(f"empty mode range [{m_min}, {m_max}]")
    coeffs = {
        m: inner_product(PiecewiseExpField.eigenmode(m), state.field) for m in range(m_min, m_max + 1)
    }
    return ModeSpectrum(coeffs, m_min, m_max)
