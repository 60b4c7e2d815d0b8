"""Piecewise closed-form overlap amplitudes and probabilities.

All functions broadcast over numpy arrays of angles; scalar inputs give
Python scalars back.  Angles are canonicalized into ``[0, 2*pi)`` first.
Branches follow the lower-inclusive / upper-exclusive convention, except the
rotated-amplitude families whose first branch is ``alpha + beta <= 2*pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .phase_core import (
    ANGLE_SNAP,
    TWO_PI,
    ChargeLike,
    DegenerateSuperposition,
    as_charge,
    canonical_angle,
)

PI = math.pi
FOUR_PI2 = 4.0 * PI * PI

# Threshold on the superposition normalization below which the state is degenerate.
DEGENERACY_THRESHOLD = 1e-9


@dataclass(frozen=True)
class OverlapResult:
    """Overlap amplitude (when one exists), probability and 1-based branch index."""

    amplitude: Optional[complex]
    probability: float
    branch: int


def _scalarize(x):
    if isinstance(x, np.ndarray) and x.ndim == 0:
        x = x[()]
    if isinstance(x, np.complexfloating):
        return complex(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _angles(*angles):
    return [np.asarray(canonical_angle(a), dtype=float) for a in angles]


def _split(charge: ChargeLike):
    c = as_charge(charge)
    return c.value, c.integer_part, c.fractional_part


def _phase(x):
    return np.exp(1j * x)


def overlap_amplitude_base(charge: ChargeLike, alpha):
    """``<M(0)|M(alpha)>``, the overlap of a fractional vortex with its rotated copy."""
    _, _, mu = _split(charge)
    (a,) = _angles(alpha)
    out = (a * _phase((TWO_PI - a) * mu) + (TWO_PI - a) * _phase(-a * mu)) / TWO_PI
    return _scalarize(out)


def _rotated(charge, a, b):
    M, m, mu = _split(charge)
    s = a + b
    first = s * _phase((TWO_PI - s) * mu) + (TWO_PI - s) * _phase(-s * mu)
    r = s - TWO_PI
    second = r * _phase((4 * PI - s) * mu) + (4 * PI - s) * _phase(-r * mu)
    amp = _phase(-m * b) / TWO_PI * np.where(s <= TWO_PI, first, second)
    branch = np.where(s <= TWO_PI, 1, 2)
    return amp, branch


def overlap_amplitude_rotated(charge: ChargeLike, alpha, beta) -> OverlapResult:
    """``<M(0)| U(beta) |M(alpha)>`` with its two-branch closed form.

    Branch 1 applies while ``alpha + beta <= 2*pi``.  ``probability`` is the
    modulus squared of the amplitude.
    """
    a, b = _angles(alpha, beta)
    amp, branch = _rotated(charge, a, b)
    return OverlapResult(_scalarize(amp), _scalarize(np.abs(amp) ** 2), _scalarize(branch))


def rotated_amplitude_complement(charge: ChargeLike, alpha, beta):
    """``<M(0)| U(2*pi - beta) |M(alpha)>`` in its own two-branch form (split at ``alpha <= beta``)."""
    _, m, mu = _split(charge)
    a, b = _angles(alpha, beta)
    d = b - a
    first = (TWO_PI - d) * _phase(d * mu) + d * _phase(-(TWO_PI - d) * mu)
    second = -d * _phase((TWO_PI + d) * mu) + (TWO_PI + d) * _phase(d * mu)
    out = _phase(m * b) / TWO_PI * np.where(a <= b, first, second)
    return _scalarize(out)


def rotated_probability(charge: ChargeLike, alpha, beta):
    """``|<M(0)| U(beta) |M(alpha)>|^2`` as a real two-branch parabola in ``alpha + beta``."""
    M, _, _ = _split(charge)
    a, b = _angles(alpha, beta)
    s = a + b
    s2 = math.sin(PI * M) ** 2
    first = 4 * s * (s - TWO_PI) * s2 + FOUR_PI2
    second = 4 * (s - 4 * PI) * (s - TWO_PI) * s2 + FOUR_PI2
    return _scalarize(np.where(s <= TWO_PI, first, second) / FOUR_PI2)


def self_rotation_amplitude(charge: ChargeLike, beta):
    """``<M(alpha)| U(beta) |M(alpha)>``; independent of the dislocation angle."""
    _, m, mu = _split(charge)
    (b,) = _angles(beta)
    out = _phase(-m * b) / TWO_PI * (b * _phase((TWO_PI - b) * mu) + (TWO_PI - b) * _phase(-b * mu))
    return _scalarize(out)


def self_rotation_real(charge: ChargeLike, beta):
    """Real part of :func:`self_rotation_amplitude` written with cosines only."""
    M, _, mu = _split(charge)
    (b,) = _angles(beta)
    out = (b * np.cos(TWO_PI * mu - b * M) + (TWO_PI - b) * np.cos(b * M)) / TWO_PI
    return _scalarize(out)


def base_product(charge: ChargeLike, alpha, beta):
    """``<M(0)|M(alpha)> * conj(<M(0)| U(beta) |M(alpha)>)``."""
    M, _, _ = _split(charge)
    a, b = _angles(alpha, beta)
    s = a + b
    first = (
        (a * s + (TWO_PI - a) * (TWO_PI - s)) * _phase(b * M)
        + (TWO_PI - a) * s * _phase(-(TWO_PI - b) * M)
        + a * (TWO_PI - s) * _phase((TWO_PI + b) * M)
    )
    second = (
        (a * (s - TWO_PI) + (TWO_PI - a) * (4 * PI - s)) * _phase(-(TWO_PI - b) * M)
        + (TWO_PI - a) * (s - TWO_PI) * _phase(-(4 * PI - b) * M)
        + a * (4 * PI - s) * _phase(b * M)
    )
    return _scalarize(np.where(s <= TWO_PI, first, second) / FOUR_PI2)


def base_product_real(charge: ChargeLike, alpha, beta):
    """Real part of :func:`base_product`."""
    M, _, _ = _split(charge)
    a, b = _angles(alpha, beta)
    s = a + b
    s2 = math.sin(PI * M) ** 2
    first = (4 * (a * a + a * b - TWO_PI * a - PI * b) * s2 + FOUR_PI2) * np.cos(b * M) + TWO_PI * b * math.sin(
        TWO_PI * M
    ) * np.sin(b * M)
    second = (
        2 * (a * a + a * b - 4 * PI * a - PI * b + FOUR_PI2) * np.cos((TWO_PI - b) * M)
        + (TWO_PI - a) * (s - TWO_PI) * np.cos((4 * PI - b) * M)
        + a * (4 * PI - s) * np.cos(b * M)
    )
    return _scalarize(np.where(s <= TWO_PI, first, second) / FOUR_PI2)


def _product_branch(x, y):
    return np.where(x <= TWO_PI, np.where(y <= TWO_PI, 1, 2), np.where(y <= TWO_PI, 3, 4))


def product_amplitude(charge: ChargeLike, alpha, beta1, beta2):
    """``<M(0)|U(beta1)|M(alpha)> * conj(<M(0)|U(beta2)|M(alpha)>)`` via its four branches.

    The branch is fixed by whether ``alpha + beta1`` and ``alpha + beta2``
    exceed ``2*pi``.  Equal angles give the real nonnegative
    :func:`rotated_probability`; ``beta1 = 0`` gives :func:`base_product`.
    """
    M, _, _ = _split(charge)
    a, b1, b2 = _angles(alpha, beta1, beta2)
    x, y = a + b1, a + b2
    s2 = math.sin(PI * M) ** 2
    twist = 2j * PI * (b1 - b2) * math.sin(TWO_PI * M)
    both_low = 4 * s2 * (x * y - PI * (2 * a + b1 + b2)) + FOUR_PI2 + twist
    low_high = (
        (x * (y - TWO_PI) + (TWO_PI - x) * (4 * PI - y)) * _phase(-TWO_PI * M)
        + (TWO_PI - x) * (y - TWO_PI) * _phase(-4 * PI * M)
        + x * (4 * PI - y)
    )
    high_low = (
        ((x - TWO_PI) * y + (4 * PI - x) * (TWO_PI - y)) * _phase(TWO_PI * M)
        + (x - TWO_PI) * (TWO_PI - y) * _phase(4 * PI * M)
        + (4 * PI - x) * y
    )
    both_high = 4 * s2 * (x * y - PI * (6 * a + 3 * b1 + 3 * b2 - 8 * PI)) + FOUR_PI2 + twist
    branch = _product_branch(x, y)
    body = np.select([branch == 1, branch == 2, branch == 3], [both_low, low_high, high_low], both_high)
    return _scalarize(_phase(-(b1 - b2) * M) / FOUR_PI2 * body)


def product_real(charge: ChargeLike, alpha, beta1, beta2):
    """Real part of :func:`product_amplitude`, written out with cosines per branch."""
    M, _, _ = _split(charge)
    a, b1, b2 = _angles(alpha, beta1, beta2)
    x, y = a + b1, a + b2
    d = b1 - b2
    s2 = math.sin(PI * M) ** 2
    s2pi = math.sin(TWO_PI * M)
    both_low = (4 * s2 * (x * y - PI * (2 * a + b1 + b2)) + FOUR_PI2) * np.cos(d * M) + TWO_PI * d * s2pi * np.sin(
        d * M
    )
    low_high = (
        (x * (y - TWO_PI) + (TWO_PI - x) * (4 * PI - y)) * np.cos((d + TWO_PI) * M)
        + (TWO_PI - x) * (y - TWO_PI) * np.cos((d + 4 * PI) * M)
        + x * (4 * PI - y) * np.cos(d * M)
    )
    high_low = (
        ((x - TWO_PI) * y + (4 * PI - x) * (TWO_PI - y)) * np.cos((d - TWO_PI) * M)
        + (x - TWO_PI) * (TWO_PI - y) * np.cos((d - 4 * PI) * M)
        + (4 * PI - x) * y * np.cos(d * M)
    )
    both_high = (
        4 * s2 * (x * y - PI * (6 * a + 3 * b1 + 3 * b2 - 8 * PI)) + FOUR_PI2
    ) * np.cos(d * M) + TWO_PI * d * s2pi * np.sin(d * M)
    branch = _product_branch(x, y)
    body = np.select([branch == 1, branch == 2, branch == 3], [both_low, low_high, high_low], both_high)
    return _scalarize(body / FOUR_PI2)


def section_index(n: int, alpha):
    """1-based section ``t`` with ``2*pi*(t-1)/n <= alpha < 2*pi*t/n``."""
    (a,) = _angles(alpha)
    x = n * a / TWO_PI
    nearest = np.rint(x)
    x = np.where(np.abs(x - nearest) < n * ANGLE_SNAP, nearest, x)
    return _scalarize(np.clip(np.floor(x).astype(int) + 1, 1, n))


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _parabola(n, charge, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    t = np.asarray(section_index(n, a))
    arg = M * PI / n
    prob = (PI * (2 * t - 1) - n * a) ** 2 / PI**2 * math.sin(arg) ** 2 + math.cos(arg) ** 2
    return prob, t


def overlap_probability_n(n: int, charge: ChargeLike, alpha) -> OverlapResult:
    """Overlap probability of two n-section states at relative angle ``alpha``.

    An n-section parabola of period ``2*pi/n``; constant when ``M mod n == 0``.
    """
    n = _check_n(n)
    prob, t = _parabola(n, charge, alpha)
    return OverlapResult(None, _scalarize(prob), _scalarize(t))


def superposition_normalization(n: int, charge: ChargeLike) -> float:
    """``sum_k Re <M| U(2*pi*k/n) |M>``, the denominator of the n-fold overlap amplitude."""
    n = _check_n(n)
    return float(sum(self_rotation_real(charge, TWO_PI * k / n) for k in range(n)))


def superposed_overlap_amplitude(n: int, charge: ChargeLike, alpha):
    """``<Mn(0)|Mn(alpha)>`` assembled from rotated single-vortex amplitudes.

    Raises:
        DegenerateSuperposition: if the normalization is below
            :data:`DEGENERACY_THRESHOLD` in magnitude.
    """
    n = _check_n(n)
    denom = superposition_normalization(n, charge)
    if abs(denom) < DEGENERACY_THRESHOLD:
        raise DegenerateSuperposition(
            f"n={n}, M={float(as_charge(charge))}: superposition norm vanishes ({denom:.3e})"
        )
    (a,) = _angles(alpha)
    numer = sum(_rotated(charge, a, np.asarray(TWO_PI * k / n))[0] for k in range(n))
    return _scalarize(numer / denom)


# Literal specializations for one, two and four sections, and the n = 2 / 4
# probabilities assembled term by term from the rotated-product formulas.


def one_section_probability(charge: ChargeLike, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    return _scalarize((1 - a / PI) ** 2 * math.sin(M * PI) ** 2 + math.cos(M * PI) ** 2)


def two_section_probability(charge: ChargeLike, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    s2, c2 = math.sin(M * PI / 2) ** 2, math.cos(M * PI / 2) ** 2
    first = (1 - 2 * a / PI) ** 2 * s2 + c2
    second = (3 - 2 * a / PI) ** 2 * s2 + c2
    return _scalarize(np.where(a < PI, first, second))


def four_section_probability(charge: ChargeLike, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    s2, c2 = math.sin(M * PI / 4) ** 2, math.cos(M * PI / 4) ** 2
    pieces = [(k - 4 * a / PI) ** 2 * s2 + c2 for k in (1, 3, 5, 7)]
    return _scalarize(np.select([a < PI / 2, a < PI, a < 1.5 * PI], pieces[:3], pieces[3]))


def two_section_probability_assembled(charge: ChargeLike, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    numer = (
        np.abs(overlap_amplitude_base(charge, a)) ** 2
        + rotated_probability(charge, a, PI)
        + 2 * base_product_real(charge, a, PI)
    )
    return _scalarize(numer / (1 + math.cos(PI * M)) ** 2)


def four_section_probability_assembled(charge: ChargeLike, alpha):
    M, _, _ = _split(charge)
    (a,) = _angles(alpha)
    quarter, half, three = PI / 2, PI, 1.5 * PI
    numer = np.abs(overlap_amplitude_base(charge, a)) ** 2
    for b in (half, quarter, three):
        numer = numer + rotated_probability(charge, a, b) + 2 * base_product_real(charge, a, b)
    numer = (
        numer
        + 2 * product_real(charge, a, half, quarter)
        + 2 * product_real(charge, a, half, three)
        + 2 * product_real(charge, a, quarter, three)
    )
    denom = 1 + math.cos(PI * M) + 2 * math.cos(PI * M / 2) ** 3
    return _scalarize(numer / denom**2)
