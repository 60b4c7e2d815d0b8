"""Exact inner products of piecewise-exponential fields.

This is the brute-force reference every closed form is checked against.  It
never calls into :mod:`fracoam.closed_form`: the partitions of the two fields
are intersected and each piece ``K * exp(1j*a*phi)`` is integrated with its
antiderivative.
"""

from __future__ import annotations

import cmath
import math

from .phase_core import ANGLE_SNAP, TWO_PI, ChargeLike, PiecewiseExpField

# Below this gradient difference a piece is integrated as a constant.
FLAT_GRADIENT = 1e-12


def _piece_integral(coeff: complex, a: float, lo: float, hi: float) -> complex:
    width = hi - lo
    if abs(a) < FLAT_GRADIENT:
        return coeff * width
    # (e^{ia hi} - e^{ia lo}) / (ia), written around the midpoint so small
    # gradients do not cancel catastrophically
    half = 0.5 * a * width
    return coeff * cmath.exp(0.5j * a * (lo + hi)) * (2.0 * math.sin(half) / a)


def _boundaries(bra: PiecewiseExpField, ket: PiecewiseExpField) -> list[float]:
    cuts = sorted({s.start for s in bra.segments} | {s.start for s in ket.segments} | {TWO_PI})
    merged = [cuts[0]]
    for c in cuts[1:]:
        if c - merged[-1] > ANGLE_SNAP:
            merged.append(c)
        elif c == TWO_PI:
            merged[-1] = TWO_PI
    return merged


def inner_product(bra: PiecewiseExpField, ket: PiecewiseExpField) -> complex:
    """``(1/2pi) * integral conj(bra(phi)) * ket(phi) dphi`` over ``[0, 2pi)``, exactly."""
    cuts = _boundaries(bra, ket)
    total = 0j
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        sb = bra.segment_at(mid)
        sk = ket.segment_at(mid)
        coeff = sb.coefficient.conjugate() * sk.coefficient
        total += _piece_integral(coeff, sk.gradient - sb.gradient, lo, hi)
    return total / TWO_PI


def overlap_probability_oracle(
    n: int, charge: ChargeLike, alpha: float, construction: str = "sector"
) -> float:
    """``|<Mn(0)|Mn(alpha)>|^2`` by exact integration of constructed states.

    ``construction`` is ``"sector"`` (n-sector ramp profile) or
    ``"superposition"`` (normalized sum of rotated fractional vortices); the
    latter raises :class:`~fracoam.phase_core.DegenerateSuperposition` for
    zero-norm charges.
    """
    from .superposition import build_state

    ref = build_state(n, charge, 0.0, construction)
    rotated = build_state(n, charge, alpha, construction)
    return abs(inner_product(ref.field, rotated.field)) ** 2
