"""Constrained engineering design problems: spring, pressure vessel, speed reducer."""

from __future__ import annotations

import numpy as np

from ..problem import IntegerDim, Problem

# --- tension/compression spring over (r, d, N) -------------------------------


def spring_weight(x):
    r, d, n = x[..., 0], x[..., 1], x[..., 2]
    return (2.0 + n) * r**2 * d


def _spring_g1(x):
    r, d, n = x[..., 0], x[..., 1], x[..., 2]
    return 1.0 - n * d**3 / (71785.0 * r**4)


def _spring_g2(x):
    r, d = x[..., 0], x[..., 1]
    return d * (4 * d - r) / (12566.0 * r**3 * (d - r)) + 1.0 / (5108.0 * r**2) - 1.0


def _spring_g3(x):
    r, d, n = x[..., 0], x[..., 1], x[..., 2]
    return 1.0 - 140.45 * r / (d**2 * n)


def _spring_g4(x):
    return (x[..., 1] + x[..., 0]) - 1.5


def spring_problem() -> Problem:
    return Problem(
        name="spring",
        lower=[0.05, 0.25, 2.0],
        upper=[2.0, 1.3, 15.0],
        objective=spring_weight,
        constraints=(_spring_g1, _spring_g2, _spring_g3, _spring_g4),
        known_min=0.012665,
        metadata={"variables": ("r", "d", "N")},
    )


# --- pressure vessel over (d1, d2, r, W) --------------------------------------

THICKNESS_STEP = 0.0625


def vessel_cost(x):
    d1, d2, r, w = x[..., 0], x[..., 1], x[..., 2], x[..., 3]
    return 0.6224 * r * w * d1 + 1.7781 * r**2 * d2 + 19.84 * r * d1**2 + 3.1661 * w * d1**2


def _vessel_g1(x):
    return -x[..., 0] + 0.0193 * x[..., 2]


def _vessel_g2(x):
    return -x[..., 1] + 0.00954 * x[..., 2]


def _vessel_g3(x):
    r, w = x[..., 2], x[..., 3]
    return -4.0 * np.pi * r**3 / 3.0 - np.pi * r**2 * w + 1296000.0


def _vessel_g4(x):
    return x[..., 3] - 240.0


def pressure_vessel_problem() -> Problem:
    """Shell thicknesses ``d1, d2`` live on multiples of 0.0625 in."""
    return Problem(
        name="vessel",
        lower=[THICKNESS_STEP, THICKNESS_STEP, 10.0, 10.0],
        upper=[99 * THICKNESS_STEP, 99 * THICKNESS_STEP, 200.0, 200.0],
        objective=vessel_cost,
        constraints=(_vessel_g1, _vessel_g2, _vessel_g3, _vessel_g4),
        integer_dims=(IntegerDim(0, THICKNESS_STEP), IntegerDim(1, THICKNESS_STEP)),
        known_min=6059.714,
        metadata={"variables": ("d1", "d2", "r", "W")},
    )


# --- speed reducer over x1..x7 ------------------------------------------------


def reducer_cost(x):
    x1, x2, x3, x4, x5, x6, x7 = (x[..., i] for i in range(7))
    gear = x1 * x2**2 * (3.3333 * x3**2 + 14.9334 * x3 - 43.0934)
    return (
        0.7854 * (gear + x4 * x6**2 + x5 * x7**2)
        - 1.508 * x1 * (x6**2 + x7**2)
        + 7.4777 * (x6**3 + x7**3)
    )


def _reducer_constraints():
    def g1(x):
        return 27.0 / (x[..., 0] * x[..., 1] ** 2 * x[..., 2]) - 1.0

    def g2(x):
        return 397.5 / (x[..., 0] * x[..., 1] ** 2 * x[..., 2] ** 2) - 1.0

    def g3(x):
        return 1.93 * x[..., 3] ** 3 / (x[..., 1] * x[..., 2] * x[..., 5] ** 4) - 1.0

    def g4(x):
        return 1.93 * x[..., 4] ** 3 / (x[..., 1] * x[..., 2] * x[..., 6] ** 4) - 1.0

    def g5(x):
        load = 745.0 * x[..., 3] / (x[..., 1] * x[..., 2])
        return np.sqrt(load**2 + 16.9e6) / (110.0 * x[..., 5] ** 3) - 1.0

    def g6(x):
        load = 745.0 * x[..., 4] / (x[..., 1] * x[..., 2])
        return np.sqrt(load**2 + 157.5e6) / (85.0 * x[..., 6] ** 3) - 1.0

    def g7(x):
        return x[..., 1] * x[..., 2] - 40.0

    def g8(x):
        return 5.0 * x[..., 1] - x[..., 0]

    def g9(x):
        return x[..., 0] - 12.0 * x[..., 1]

    def g10(x):
        return (1.5 * x[..., 5] + 1.9) - x[..., 3]

    def g11(x):
        return (1.1 * x[..., 6] + 1.9) - x[..., 4]

    return (g1, g2, g3, g4, g5, g6, g7, g8, g9, g10, g11)


REDUCER_CONSTRAINTS = _reducer_constraints()


def speed_reducer_problem() -> Problem:
    """Seven-variable gearbox design; ``x3`` (tooth count) is integer."""
    return Problem(
        name="reducer",
        lower=[2.6, 0.7, 17.0, 7.3, 7.8, 2.9, 5.0],
        upper=[3.6, 0.8, 28.0, 8.3, 8.4, 3.9, 5.5],
        objective=reducer_cost,
        constraints=REDUCER_CONSTRAINTS,
        integer_dims=(IntegerDim(2, 1.0),),
        known_min=2996.348165,
    )
