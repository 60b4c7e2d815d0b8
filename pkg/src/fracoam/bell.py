"""CHSH test with two n-section spiral phase plates as OAM analyzers.

The normalized coincidence rate for analyzer orientations ``alpha_s`` and
``alpha_i`` is the n-section overlap probability at their wrapped difference.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .closed_form import overlap_probability_n
from .phase_core import TWO_PI, ChargeLike, as_charge, canonical_angle

RNG_ALGORITHM = "numpy PCG64 via SeedSequence([seed, row])"

ORTHOGONAL_CLASS_TOL = 1e-9


class OutOfClassWarning(UserWarning):
    """The charge is outside ``(M - n/2) mod n == 0``; fringes never reach zero."""


@dataclass(frozen=True)
class AnalyzerSettings:
    n: int
    alpha_s: float
    alpha_s_prime: float
    alpha_i: float
    alpha_i_prime: float
    t_perp: int = 1

    def __post_init__(self):
        if not 1 <= self.t_perp <= self.n:
            raise ValueError(f"t_perp must lie in 1..{self.n}, got {self.t_perp}")
        for name in ("alpha_s", "alpha_s_prime", "alpha_i", "alpha_i_prime"):
            object.__setattr__(self, name, canonical_angle(getattr(self, name)))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha_s": self.alpha_s,
            "alpha_s_prime": self.alpha_s_prime,
            "alpha_i": self.alpha_i,
            "alpha_i_prime": self.alpha_i_prime,
            "t_perp": self.t_perp,
        }


@dataclass(frozen=True)
class BellResult:
    correlations: tuple[float, float, float, float]
    S: float
    in_orthogonal_class: bool = True


@dataclass(frozen=True)
class FringeRow:
    alpha: float
    probability: float
    counts: Optional[int] = None


@dataclass(frozen=True)
class FringeTable:
    rows: tuple[FringeRow, ...]
    metadata: dict = field(default_factory=dict)


def in_orthogonal_class(n: int, charge: ChargeLike, tol: float = ORTHOGONAL_CLASS_TOL) -> bool:
    """Whether ``(M - n/2) mod n == 0`` within ``tol``."""
    r = math.fmod(as_charge(charge).value - n / 2.0, n)
    r = abs(r)
    return min(r, n - r) < tol


def coincidence_probability(n: int, charge: ChargeLike, alpha_s: float, alpha_i: float) -> float:
    """Normalized coincidence rate, a function of ``(alpha_s - alpha_i) mod 2*pi`` only."""
    delta = canonical_angle(alpha_s - alpha_i)
    return overlap_probability_n(n, charge, delta).probability


def perpendicular(n: int, alpha: float, t_perp: int = 1) -> float:
    """Analyzer angle selecting the state orthogonal to the one at ``alpha``."""
    return canonical_angle(alpha + math.pi * (2 * t_perp - 1) / n)


def _correlation(n, charge, alpha_s, alpha_i, t_perp):
    if not 1 <= t_perp <= n:
        raise ValueError(f"t_perp must lie in 1..{n}, got {t_perp}")
    s_perp = perpendicular(n, alpha_s, t_perp)
    i_perp = perpendicular(n, alpha_i, t_perp)
    same = coincidence_probability(n, charge, alpha_s, alpha_i) + coincidence_probability(n, charge, s_perp, i_perp)
    cross = coincidence_probability(n, charge, alpha_s, i_perp) + coincidence_probability(n, charge, s_perp, alpha_i)
    denom = same + cross
    if not denom > 0:
        raise ArithmeticError("coincidence probabilities sum to zero")
    return (same - cross) / denom


def correlation_E(n: int, charge: ChargeLike, alpha_s: float, alpha_i: float, t_perp: int = 1) -> float:
    """Correlation from the four coincidence rates at the analyzer angles and their orthogonal partners.

    Emits :class:`OutOfClassWarning` when the charge is not in the orthogonal class.
    """
    if not in_orthogonal_class(n, charge):
        warnings.warn(f"M={float(as_charge(charge))} is outside the orthogonal class for n={n}", OutOfClassWarning)
    return _correlation(n, charge, alpha_s, alpha_i, t_perp)


def standard_settings(n: int) -> AnalyzerSettings:
    """Polarization CHSH angles scaled by ``1/(2n)``: ``-pi/4n, pi/4n, -pi/2n, 0``."""
    return AnalyzerSettings(
        n=n,
        alpha_s=-math.pi / (4 * n),
        alpha_s_prime=math.pi / (4 * n),
        alpha_i=-math.pi / (2 * n),
        alpha_i_prime=0.0,
        t_perp=1,
    )


def chsh_parameter(n: int, charge: ChargeLike, settings: Optional[AnalyzerSettings] = None) -> BellResult:
    """CHSH combination ``E(s,i) - E(s',i) + E(s,i') + E(s',i')``."""
    if settings is None:
        settings = standard_settings(n)
    st = settings
    pairs = [
        (st.alpha_s, st.alpha_i),
        (st.alpha_s_prime, st.alpha_i),
        (st.alpha_s, st.alpha_i_prime),
        (st.alpha_s_prime, st.alpha_i_prime),
    ]
    in_class = in_orthogonal_class(n, charge)
    if not in_class:
        warnings.warn(f"M={float(as_charge(charge))} is outside the orthogonal class for n={n}", OutOfClassWarning)
    e = tuple(_correlation(n, charge, a, b, st.t_perp) for a, b in pairs)
    S = e[0] - e[1] + e[2] + e[3]
    return BellResult(e, S, in_class)


def _grid(points: int) -> np.ndarray:
    if points < 2:
        raise ValueError("points must be at least 2")
    return np.arange(points) * (TWO_PI / points)


def fringe_scan(n: int, charge: ChargeLike, points: int = 721) -> FringeTable:
    """Overlap probability on ``points`` uniform angles in ``[0, 2*pi)``."""
    alphas = _grid(points)
    probs = overlap_probability_n(n, charge, alphas).probability
    rows = tuple(FringeRow(float(a), float(p)) for a, p in zip(alphas, probs))
    return FringeTable(rows, {"route": "closed_form"})


def row_generator(seed: int, row: int) -> np.random.Generator:
    """Independent generator for one fringe row; rows can be drawn in any order."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, row])))


def sample_fringe(n: int, charge: ChargeLike, points: int, shots: int, seed: int) -> FringeTable:
    """Binomial coincidence counts at each scan angle.

    The ``probability`` column holds the empirical rate ``counts / shots``
    (0 when ``shots == 0``).
    """
    if shots < 0:
        raise ValueError("shots must be nonnegative")
    rows = []
    for k, alpha in enumerate(_grid(points)):
        p = min(max(coincidence_probability(n, charge, float(alpha), 0.0), 0.0), 1.0)
        counts = int(row_generator(seed, k).binomial(shots, p)) if shots else 0
        rate = counts / shots if shots else 0.0
        rows.append(FringeRow(float(alpha), rate, counts))
    meta = {"rng": RNG_ALGORITHM, "seed": seed, "shots": shots}
    return FringeTable(tuple(rows), meta)
