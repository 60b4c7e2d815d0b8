"""Hand-specialized rotated-overlap expressions at quarter-turn angles.

Each function is transcribed term for term as printed, scalar in ``alpha``,
so it can be checked against the general closed forms.  Sections are
lower-inclusive.  ``three_quarter_turn_cross_real`` is kept as printed; its
first section carries a sign slip that ``three_quarter_turn_cross_real_fixed``
corrects.
"""

from math import cos, pi, sin


def _s2(M):
    return sin(M * pi) ** 2


def half_turn_probability(M, a):
    """|<M(0)|U(pi)|M(a)>|^2"""
    if a < pi:
        v = (a**2 - pi**2) * _s2(M) + pi**2
    else:
        v = (a - pi) * (a - 3 * pi) * _s2(M) + pi**2
    return v / pi**2


def half_turn_cross_real(M, a):
    """Re[<M(0)|M(a)> <M(0)|U(pi)|M(a)>*]"""
    if a < pi:
        v = a * (pi - a) * cos(3 * M * pi) + (4 * pi**2 - pi * a + a**2) * cos(M * pi)
    else:
        v = (2 * pi - a) * (a - pi) * cos(3 * M * pi) + (6 * pi**2 - 3 * pi * a + a**2) * cos(M * pi)
    return v / (4 * pi**2)


def quarter_turn_probability(M, a):
    """|<M(0)|U(pi/2)|M(a)>|^2"""
    if a < 3 * pi / 2:
        v = (a + pi / 2) * (a - 3 * pi / 2) * _s2(M) + pi**2
    else:
        v = (a - 3 * pi / 2) * (a - 7 * pi / 2) * _s2(M) + pi**2
    return v / pi**2


def three_quarter_turn_probability(M, a):
    """|<M(0)|U(3pi/2)|M(a)>|^2"""
    if a < pi / 2:
        v = (a + 3 * pi / 2) * (a - pi / 2) * _s2(M) + pi**2
    else:
        v = (a - pi / 2) * (a - 5 * pi / 2) * _s2(M) + pi**2
    return v / pi**2


def quarter_turn_cross_real(M, a):
    """Re[<M(0)|M(a)> <M(0)|U(pi/2)|M(a)>*]"""
    if a < 3 * pi / 2:
        v = (2 * (2 * a**2 - 3 * pi * a - pi**2) * _s2(M) + 4 * pi**2) * cos(M * pi / 2) + pi**2 * sin(
            2 * M * pi
        ) * sin(M * pi / 2)
    else:
        v = (
            (2 * a**2 - 7 * pi * a + 7 * pi**2) * cos(3 * M * pi / 2)
            + (7 / 2 * pi * a - a**2 - 3 * pi**2) * cos(7 * M * pi / 2)
            + a * (7 / 2 * pi - a) * cos(M * pi / 2)
        )
    return v / (4 * pi**2)


def _three_quarter_tail(M, a):
    return (
        (2 * a**2 - 5 * pi * a + 5 * pi**2) * cos(M * pi / 2)
        + (5 / 2 * pi * a - a**2 - pi**2) * cos(5 * M * pi / 2)
        + a * (5 / 2 * pi - a) * cos(3 * M * pi / 2)
    )


def three_quarter_turn_cross_real(M, a):
    """Re[<M(0)|M(a)> <M(0)|U(3pi/2)|M(a)>*], as printed."""
    if a < pi / 2:
        v = (2 * (2 * a**2 - pi * a + 3 * pi**2) * _s2(M) + 4 * pi**2) * cos(3 * M * pi / 2) + 3 * pi**2 * sin(
            2 * M * pi
        ) * sin(3 * M * pi / 2)
    else:
        v = _three_quarter_tail(M, a)
    return v / (4 * pi**2)


def three_quarter_turn_cross_real_fixed(M, a):
    """Same quantity with the constant ``-3 pi^2`` in the first section."""
    if a < pi / 2:
        v = (2 * (2 * a**2 - pi * a - 3 * pi**2) * _s2(M) + 4 * pi**2) * cos(3 * M * pi / 2) + 3 * pi**2 * sin(
            2 * M * pi
        ) * sin(3 * M * pi / 2)
    else:
        v = _three_quarter_tail(M, a)
    return v / (4 * pi**2)


def half_quarter_cross_real(M, a):
    """Re[<M(0)|U(pi)|M(a)> <M(0)|U(pi/2)|M(a)>*]"""
    if a < pi:
        v = (4 * _s2(M) * (a**2 - pi / 2 * a - pi**2) + 4 * pi**2) * cos(M * pi / 2) + pi**2 * sin(2 * M * pi) * sin(
            M * pi / 2
        )
    elif a < 3 * pi / 2:
        v = (
            (2 * a**2 + 4 * pi**2 - 5 * pi * a) * cos(3 * M * pi / 2)
            + (a - pi) * (3 * pi / 2 - a) * cos(7 * M * pi / 2)
            + (3 * pi - a) * (a + pi / 2) * cos(M * pi / 2)
        )
    else:
        v = (4 * _s2(M) * (a**2 - 9 / 2 * pi * a + 4 * pi**2) + 4 * pi**2) * cos(M * pi / 2) + pi**2 * sin(
            2 * M * pi
        ) * sin(M * pi / 2)
    return v / (4 * pi**2)


def half_three_quarter_cross_real(M, a):
    """Re[<M(0)|U(pi)|M(a)> <M(0)|U(3pi/2)|M(a)>*]"""
    if a < pi / 2:
        v = (4 * _s2(M) * (a**2 + pi / 2 * a - pi**2) + 4 * pi**2) * cos(M * pi / 2) + pi**2 * sin(2 * M * pi) * sin(
            M * pi / 2
        )
    elif a < pi:
        v = (
            (2 * a**2 + 2 * pi**2 - 3 * pi * a) * cos(3 * M * pi / 2)
            + (pi - a) * (a - pi / 2) * cos(7 * M * pi / 2)
            + (a + pi) * (5 * pi / 2 - a) * cos(M * pi / 2)
        )
    else:
        v = (4 * _s2(M) * (a**2 - 7 * pi / 2 * a + 2 * pi**2) + 4 * pi**2) * cos(M * pi / 2) + pi**2 * sin(
            2 * M * pi
        ) * sin(M * pi / 2)
    return v / (4 * pi**2)


def quarter_three_quarter_cross_real(M, a):
    """Re[<M(0)|U(pi/2)|M(a)> <M(0)|U(3pi/2)|M(a)>*]"""
    if a < pi / 2:
        v = (4 * _s2(M) * (a**2 - 5 / 4 * pi**2) + 4 * pi**2) * cos(M * pi) + 2 * pi**2 * sin(2 * M * pi) * sin(
            M * pi
        )
    elif a < 3 * pi / 2:
        v = (a**2 - 2 * pi * a + 19 / 4 * pi**2) * cos(M * pi) + (3 * pi / 2 - a) * (a - pi / 2) * cos(3 * M * pi)
    else:
        v = (4 * _s2(M) * (a**2 - 4 * pi * a + 11 / 4 * pi**2) + 4 * pi**2) * cos(M * pi) + 2 * pi**2 * sin(
            2 * M * pi
        ) * sin(M * pi)
    return v / (4 * pi**2)


# name -> (expression, matching general closed form as (charge, alpha) -> value)
def general_counterparts():
    from fracoam import closed_form as cf

    return {
        "half_turn_probability": (half_turn_probability, lambda M, a: cf.rotated_probability(M, a, pi)),
        "half_turn_cross_real": (half_turn_cross_real, lambda M, a: cf.base_product_real(M, a, pi)),
        "quarter_turn_probability": (quarter_turn_probability, lambda M, a: cf.rotated_probability(M, a, pi / 2)),
        "three_quarter_turn_probability": (
            three_quarter_turn_probability,
            lambda M, a: cf.rotated_probability(M, a, 3 * pi / 2),
        ),
        "quarter_turn_cross_real": (quarter_turn_cross_real, lambda M, a: cf.base_product_real(M, a, pi / 2)),
        "three_quarter_turn_cross_real": (
            three_quarter_turn_cross_real,
            lambda M, a: cf.base_product_real(M, a, 3 * pi / 2),
        ),
        "half_quarter_cross_real": (half_quarter_cross_real, lambda M, a: cf.product_real(M, a, pi, pi / 2)),
        "half_three_quarter_cross_real": (
            half_three_quarter_cross_real,
            lambda M, a: cf.product_real(M, a, pi, 3 * pi / 2),
        ),
        "quarter_three_quarter_cross_real": (
            quarter_three_quarter_cross_real,
            lambda M, a: cf.product_real(M, a, pi / 2, 3 * pi / 2),
        ),
    }
