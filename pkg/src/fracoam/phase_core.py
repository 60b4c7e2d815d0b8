"""Angle arithmetic, fractional vortex fields and the rotation operator.

A field on the unit circle is stored as a :class:`PiecewiseExpField`: an
ordered partition of ``[0, 2*pi)`` where each segment carries
``amplitude * exp(1j * (gradient * phi + offset))``.  Every state used in this
package (single fractional vortices, n-fold superpositions, sector profiles
and integer eigenmodes) has that form, which is what lets the inner products
in :mod:`fracoam.oracle` be computed exactly.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

TWO_PI = 2.0 * math.pi

# Boundary snap used for every canonicalized angle.
ANGLE_SNAP = 1e-12


class DegenerateSuperposition(ValueError):
    """The rotational superposition of fractional vortices has (near) zero norm."""


def canonical_angle(angle):
    """Wrap ``angle`` into ``[0, 2*pi)``.

    Values within :data:`ANGLE_SNAP` of ``2*pi`` (after wrapping) map to 0 so
    that branch selection at the wrap point is deterministic.  Accepts scalars
    or numpy arrays.
    """
    if np.ndim(angle) == 0:
        a = math.fmod(float(angle), TWO_PI)
        if a < 0.0:
            a += TWO_PI
        if a >= TWO_PI - ANGLE_SNAP:
            a = 0.0
        return a
    a = np.mod(np.asarray(angle, dtype=float), TWO_PI)
    return np.where(a >= TWO_PI - ANGLE_SNAP, 0.0, a)


def canonical_add(a, b):
    """Return ``(a + b) mod 2*pi`` in ``[0, 2*pi)``."""
    return canonical_angle(a + b)


@dataclass(frozen=True)
class FractionalCharge:
    """Step index ``M`` split as ``M = integer_part + fractional_part``.

    The split is floor based for negative values too, so the fractional part
    always lies in ``[0, 1)``.
    """

    value: float
    integer_part: int
    fractional_part: float

    @classmethod
    def from_value(cls, value: float) -> "FractionalCharge":
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"charge must be finite, got {value!r}")
        m = math.floor(value)
        mu = value - m
        if mu >= 1.0:
            # only reachable for tiny negative values where value - floor rounds to 1
            m, mu = m + 1, 0.0
            value = float(m)
        return cls(value, int(m), mu)

    @property
    def is_integer(self) -> bool:
        return self.fractional_part == 0.0

    def __float__(self) -> float:
        return self.value


ChargeLike = Union[float, int, FractionalCharge]


def as_charge(charge: ChargeLike) -> FractionalCharge:
    if isinstance(charge, FractionalCharge):
        return charge
    return FractionalCharge.from_value(charge)


@dataclass(frozen=True)
class Segment:
    """``amplitude * exp(1j*(gradient*phi + offset))`` on ``[start, end)``."""

    start: float
    end: float
    gradient: float
    offset: float
    amplitude: complex = 1.0 + 0.0j

    @property
    def width(self) -> float:
        return self.end - self.start

    @property
    def coefficient(self) -> complex:
        """The complex constant multiplying ``exp(1j*gradient*phi)``."""
        return complex(self.amplitude) * complex(math.cos(self.offset), math.sin(self.offset))


@dataclass(frozen=True)
class PiecewiseExpField:
    """A unit-circle field that is a single complex exponential per segment."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("a field needs at least one segment")
        if segs[0].start != 0.0 or segs[-1].end != TWO_PI:
            raise ValueError("segments must cover [0, 2*pi)")
        for left, right in zip(segs, segs[1:]):
            if left.end != right.start or not left.start < right.start:
                raise ValueError("segments must be contiguous with increasing starts")
        object.__setattr__(self, "_starts", [s.start for s in segs])

    @classmethod
    def eigenmode(cls, m: int) -> "PiecewiseExpField":
        """The integer OAM eigenmode ``exp(1j*m*phi)``."""
        return cls((Segment(0.0, TWO_PI, float(m), 0.0),))

    def __len__(self) -> int:
        return len(self.segments)

    def segment_at(self, phi: float) -> Segment:
        """Segment containing the canonicalized angle ``phi``."""
        phi = canonical_angle(phi)
        i = bisect.bisect_right(self._starts, phi) - 1
        return self.segments[i]

    def __call__(self, phi):
        """Evaluate the field at ``phi`` (scalar or array, any real angle)."""
        scalar = np.ndim(phi) == 0
        p = np.atleast_1d(canonical_angle(phi))
        idx = np.searchsorted(self._starts, p, side="right") - 1
        grad = np.array([s.gradient for s in self.segments])[idx]
        off = np.array([s.offset for s in self.segments])[idx]
        amp = np.array([complex(s.amplitude) for s in self.segments])[idx]
        out = amp * np.exp(1j * (grad * p + off))
        return complex(out[0]) if scalar else out

    def scaled(self, factor: complex) -> "PiecewiseExpField":
        return PiecewiseExpField(
            tuple(
                Segment(s.start, s.end, s.gradient, s.offset, complex(s.amplitude) * factor)
                for s in self.segments
            )
        )

    def norm_squared(self) -> float:
        """``(1/2pi) * integral |field|^2``; exact since each segment has constant modulus."""
        return sum(abs(s.amplitude) ** 2 * s.width for s in self.segments) / TWO_PI


def fields_from_pieces(pieces: Sequence[Segment]) -> PiecewiseExpField:
    """Build a field from pieces, dropping zero-width ones and fixing the ends.

    ``pieces`` must already be sorted and contiguous up to the angle snap.
    """
    kept = [p for p in pieces if p.end - p.start > ANGLE_SNAP]
    out = []
    for k, p in enumerate(kept):
        start = 0.0 if k == 0 else out[-1].end
        end = TWO_PI if k == len(kept) - 1 else p.end
        out.append(Segment(start, end, p.gradient, p.offset, p.amplitude))
    return PiecewiseExpField(tuple(out))


def fractional_vortex_field(charge: ChargeLike, alpha: float) -> PiecewiseExpField:
    """Azimuthal field of a fractional vortex with its dislocation at ``alpha``.

    ``exp(1j*m*phi) * exp(1j*mu*(phi + 2*pi*[phi < alpha] - alpha))``.
    """
    c = as_charge(charge)
    alpha = canonical_angle(alpha)
    mu = c.fractional_part
    if mu == 0.0:
        return PiecewiseExpField.eigenmode(c.integer_part)
    if alpha == 0.0:
        return PiecewiseExpField((Segment(0.0, TWO_PI, c.value, 0.0),))
    return PiecewiseExpField(
        (
            Segment(0.0, alpha, c.value, mu * (TWO_PI - alpha)),
            Segment(alpha, TWO_PI, c.value, -mu * alpha),
        )
    )


def rotate_field(psi: PiecewiseExpField, beta: float) -> PiecewiseExpField:
    """Rotate a field by ``beta``: the result is ``phi -> psi((phi - beta) mod 2*pi)``.

    For a fractional vortex this reproduces ``exp(-1j*m*beta) |M(alpha + beta)>``
    including the integer-part phase.  At most one segment (the one crossing
    ``2*pi`` after the shift) is split.
    """
    beta = canonical_angle(beta)
    if beta == 0.0:
        return psi
    pieces = []
    for s in psi.segments:
        a, b = s.start + beta, s.end + beta
        shifted = s.offset - s.gradient * beta
        wrapped = shifted + TWO_PI * s.gradient
        if b <= TWO_PI + ANGLE_SNAP:
            pieces.append(Segment(a, min(b, TWO_PI), s.gradient, shifted, s.amplitude))
        elif a >= TWO_PI - ANGLE_SNAP:
            pieces.append(Segment(max(a - TWO_PI, 0.0), b - TWO_PI, s.gradient, wrapped, s.amplitude))
        else:
            pieces.append(Segment(a, TWO_PI, s.gradient, shifted, s.amplitude))
            pieces.append(Segment(0.0, b - TWO_PI, s.gradient, wrapped, s.amplitude))
    pieces.sort(key=lambda p: p.start)
    return fields_from_pieces(pieces)


def mode_coefficient(charge: ChargeLike, alpha: float, m_prime: int, beta: float = 0.0) -> complex:
    """Integer-OAM coefficient of the rotated fractional vortex.

    Returns ``<m'| U(beta) |M(alpha)>``; with ``beta = 0`` this is the plain
    decomposition coefficient.  Integer charges give a Kronecker delta.
    """
    c = as_charge(charge)
    m, mu = c.integer_part, c.fractional_part
    if mu == 0.0:
        return 1.0 + 0.0j if m_prime == m else 0.0j
    alpha = canonical_angle(alpha)
    beta = canonical_angle(beta)
    rotated = canonical_add(alpha, beta)
    prefactor = complex(math.cos(m * beta), -math.sin(m * beta))
    phase = (m - m_prime) * rotated
    numer = 1j * complex(math.cos(phase), math.sin(phase)) * (1.0 - np.exp(1j * TWO_PI * mu))
    return complex(prefactor * numer / (TWO_PI * (c.value - m_prime)))
