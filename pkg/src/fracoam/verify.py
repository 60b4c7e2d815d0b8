"""Closed-form versus exact-integration sweep.

Every closed form in :mod:`fracoam.closed_form` is evaluated on a grid of
charges and angles and compared with inner products of explicitly built
fields.  The sweep is a pure map over parameter tuples; records come back
in grid order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form as cf
from .oracle import inner_product
from .phase_core import TWO_PI, DegenerateSuperposition, fractional_vortex_field, rotate_field
from .superposition import build_spp_profile, build_superposed

DEFAULT_NS = (1, 2, 3, 4, 5)
DEFAULT_CHARGES = (0.3, 0.5, 1.25, 2.5, 3.7)
TOLERANCE = 1e-10

# Size of the injected perturbation used to self-test the gate.
FAULT_SIZE = 1e-6


@dataclass
class FormulaCheck:
    formula: str
    n: np.ndarray
    charge: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray  # shape (k,) or (k, 2); NaN where unused
    closed: np.ndarray
    oracle: np.ndarray

    @property
    def abs_err(self) -> np.ndarray:
        return np.abs(self.closed - self.oracle)


@dataclass
class VerifyReport:
    checks: list[FormulaCheck] = field(default_factory=list)
    tolerance: float = TOLERANCE

    @property
    def cases(self) -> int:
        return int(sum(len(c.closed) for c in self.checks))

    @property
    def max_abs_err(self) -> float:
        return float(max((c.abs_err.max() for c in self.checks if len(c.closed)), default=0.0))

    @property
    def failures(self) -> int:
        return int(sum(int(np.sum(~(c.abs_err < self.tolerance))) for c in self.checks))

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def per_formula(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for c in self.checks:
            if len(c.closed):
                out[c.formula] = max(out.get(c.formula, 0.0), float(c.abs_err.max()))
        return out

    def summary(self) -> dict:
        return {
            "max_abs_err": self.max_abs_err,
            "cases": self.cases,
            "failures": self.failures,
            "tolerance": self.tolerance,
            "per_formula_max_abs_err": self.per_formula(),
        }

    def records(self):
        for c in self.checks:
            err = c.abs_err
            for k in range(len(c.closed)):
                beta = c.beta[k]
                if np.ndim(beta):
                    beta = [float(b) for b in beta]
                else:
                    beta = None if math.isnan(beta) else float(beta)
                yield {
                    "formula": c.formula,
                    "n": None if c.n[k] == 0 else int(c.n[k]),
                    "M": float(c.charge[k]),
                    "alpha": float(c.alpha[k]),
                    "beta": beta,
                    "closed": _jsonable(c.closed[k]),
                    "oracle": _jsonable(c.oracle[k]),
                    "abs_err": float(err[k]),
                }


def _jsonable(x):
    if np.iscomplexobj(x):
        return [float(np.real(x)), float(np.imag(x))]
    return float(x)


def _grid(points: int) -> np.ndarray:
    return np.arange(points) * (TWO_PI / points)


def _check(formula, closed, oracle, charge, alpha, beta=None, n=None, beta_pairs=None) -> FormulaCheck:
    closed = np.asarray(closed)
    size = closed.size
    if beta_pairs is not None:
        beta = np.asarray(beta_pairs, dtype=float)
    elif beta is None:
        beta = np.full(size, np.nan)
    else:
        beta = np.asarray(beta, dtype=float).ravel()
    return FormulaCheck(
        formula,
        np.full(size, 0 if n is None else n, dtype=int),
        np.full(size, float(charge)),
        np.asarray(alpha, dtype=float).ravel(),
        beta,
        closed.ravel(),
        np.asarray(oracle).ravel(),
    )


def _single_vortex_checks(M: float, alphas, betas, beta2s, fault: bool) -> list[FormulaCheck]:
    base_fields = {a: fractional_vortex_field(M, a) for a in alphas}
    ref = base_fields[alphas[0]] if alphas[0] == 0.0 else fractional_vortex_field(M, 0.0)

    # oracle <M(0)|U(b)|M(a)> on the alpha x beta grid
    d1 = np.array([[inner_product(ref, rotate_field(base_fields[a], b)) for b in betas] for a in alphas])
    comp = np.array(
        [[inner_product(ref, rotate_field(base_fields[a], TWO_PI - b)) for b in betas] for a in alphas]
    )
    selfrot = np.array(
        [[inner_product(base_fields[a], rotate_field(base_fields[a], b)) for b in betas] for a in alphas]
    )
    base = d1[:, :1]
    A, B = np.meshgrid(alphas, betas, indexing="ij")

    checks = []
    base_closed = cf.overlap_amplitude_base(M, alphas)
    if fault:
        base_closed = base_closed + FAULT_SIZE
    checks.append(_check("base_amplitude", base_closed, base[:, 0], M, alphas))
    checks.append(_check("self_rotation_amplitude", cf.self_rotation_amplitude(M, B), selfrot, M, A, B))
    checks.append(_check("self_rotation_real", cf.self_rotation_real(M, B), selfrot.real, M, A, B))
    checks.append(
        _check("rotated_amplitude", cf.overlap_amplitude_rotated(M, A, B).amplitude, d1, M, A, B)
    )
    checks.append(
        _check("rotated_amplitude_complement", cf.rotated_amplitude_complement(M, A, B), comp, M, A, B)
    )
    checks.append(_check("rotated_probability", cf.rotated_probability(M, A, B), np.abs(d1) ** 2, M, A, B))
    prod0 = base * np.conj(d1)
    checks.append(_check("base_product", cf.base_product(M, A, B), prod0, M, A, B))
    checks.append(_check("base_product_real", cf.base_product_real(M, A, B), prod0.real, M, A, B))

    # two-angle products: beta1 over the full beta grid, beta2 over beta2s
    idx2 = [int(np.argmin(np.abs(betas - b))) for b in beta2s]
    A3d, B1, B2 = np.meshgrid(alphas, betas, betas[idx2], indexing="ij")
    oracle_prod = d1[:, :, None] * np.conj(d1[:, None, idx2])
    pair = np.stack([B1.ravel(), B2.ravel()], axis=1)
    checks.append(
        _check("product_amplitude", cf.product_amplitude(M, A3d, B1, B2), oracle_prod, M, A3d, beta_pairs=pair)
    )
    checks.append(_check("product_real", cf.product_real(M, A3d, B1, B2), oracle_prod.real, M, A3d, beta_pairs=pair))
    return checks


_LITERAL_SECTIONS = {
    1: ("one_section_probability", cf.one_section_probability),
    2: ("two_section_probability", cf.two_section_probability),
    4: ("four_section_probability", cf.four_section_probability),
}
_ASSEMBLED = {
    2: ("two_section_probability_assembled", cf.two_section_probability_assembled),
    4: ("four_section_probability_assembled", cf.four_section_probability_assembled),
}


def _section_checks(n: int, M: float, alphas) -> list[FormulaCheck]:
    general = cf.overlap_probability_n(n, M, alphas).probability
    sector_ref = build_spp_profile(n, M, 0.0).field
    sector = np.array([abs(inner_product(sector_ref, build_spp_profile(n, M, a).field)) ** 2 for a in alphas])
    checks = [_check("n_section_probability[sector]", general, sector, M, alphas, n=n)]
    try:
        ref = build_superposed(n, M, 0.0).field
    except DegenerateSuperposition:
        return checks
    amps = np.array([inner_product(ref, build_superposed(n, M, a).field) for a in alphas])
    probs = np.abs(amps) ** 2
    checks.append(_check("n_section_probability[superposition]", general, probs, M, alphas, n=n))
    checks.append(
        _check("superposed_overlap_amplitude", cf.superposed_overlap_amplitude(n, M, alphas), amps, M, alphas, n=n)
    )
    if n in _LITERAL_SECTIONS:
        name, fn = _LITERAL_SECTIONS[n]
        checks.append(_check(name, fn(M, alphas), probs, M, alphas, n=n))
    if n in _ASSEMBLED:
        name, fn = _ASSEMBLED[n]
        checks.append(_check(name, fn(M, alphas), probs, M, alphas, n=n))
    return checks


def run_verification(
    ns=DEFAULT_NS,
    charges=DEFAULT_CHARGES,
    alpha_points: int = 64,
    beta_points: int = 64,
    beta2_points: int = 8,
    fault: bool = False,
    tolerance: float = TOLERANCE,
) -> VerifyReport:
    """Compare every closed form with the exact oracle over the requested grid.

    ``beta2_points`` must divide ``beta_points``; the second rotation angle of
    the two-angle products runs over that coarser subset of the beta grid.
    """
    if beta_points % beta2_points:
        raise ValueError("beta2_points must divide beta_points")
    alphas = _grid(alpha_points)
    betas = _grid(beta_points)
    beta2s = _grid(beta2_points)
    report = VerifyReport(tolerance=tolerance)
    for M in charges:
        report.checks.extend(_single_vortex_checks(M, alphas, betas, beta2s, fault))
    for n in ns:
        for M in charges:
            report.checks.extend(_section_checks(n, M, alphas))
    return report
