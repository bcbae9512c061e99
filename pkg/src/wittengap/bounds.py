"""Closed-form lower bounds for the spectral gap of a drift Laplacian.

For a weighted space with Bakry-Emery curvature bounded below by K and
diameter at most d, the first nonzero eigenvalue of the drift Laplacian
L = Delta - grad(phi) . grad satisfies, for every s in (0, 1),

    lambda_1  >=  4 s (1 - s) pi^2 / d^2  +  s K.                    (*)

``sup_bound_grid`` maximizes (*) over a uniform s-grid and is the slow,
deliberately naive evaluator.  ``sup_bound_closed`` is the closed form of
the same supremum:

    0                          if K d^2  <  -4 pi^2
    (pi/d + K d / (4 pi))^2    if K d^2 in [-4 pi^2, 4 pi^2]
    K                          if K d^2  >   4 pi^2

Two classical fixed-slope specializations are kept for comparison:
``futaki_sano_bound`` is pi^2/d^2 + 0.31 K, and ``andrews_ni_bound`` is
pi^2/d^2 + K/2, the s = 1/2 member of (*).

The same family of inequalities turns into diameter lower bounds.  On a
nontrivial compact shrinking Ricci soliton Ric + Hess(f) = lam g, the
potential (minus a constant) is an eigenfunction of the drift Laplacian
with eigenvalue 2 lam, so lambda_1 <= 2 lam; feeding the gap bounds at
K = lam into that ceiling forces the diameter up, see
``soliton_diameter_bounds``.  For a closed self-shrinker curve of the
curve shortening flow the same argument with K = lam - K0 (K0 the maximum
of curvature squared) gives ``shrinker_diameter_bound``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "BoundInput",
    "SolitonInput",
    "ShrinkerBoundInput",
    "OptimalS",
    "SolitonDiameterBounds",
    "gap_expression",
    "sup_bound_grid",
    "sup_bound_closed",
    "sup_bound_branch",
    "futaki_sano_bound",
    "andrews_ni_bound",
    "soliton_optimal_s",
    "soliton_diameter_bounds",
    "shrinker_diameter_bound",
    "shrinker_diameter_bound_sup",
]

_FOUR_PI_SQ = 4.0 * math.pi**2


@dataclass(frozen=True)
class BoundInput:
    """Curvature lower bound K and diameter upper bound d for one case."""

    K: float
    d: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.K):
            raise ValueError(f"curvature bound K must be finite, got {self.K!r}")
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise ValueError(f"diameter d must be finite and positive, got {self.d!r}")


@dataclass(frozen=True)
class SolitonInput:
    """Soliton constant lam in the normalization Ric + Hess(f) = lam g."""

    lam: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError(f"soliton constant lam must be positive, got {self.lam!r}")


@dataclass(frozen=True)
class ShrinkerBoundInput:
    """Shrinker constant lam and curvature-squared maximum K0 of a closed curve."""

    lam: float
    K0: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError(f"shrinker constant lam must be positive, got {self.lam!r}")
        if not (math.isfinite(self.K0) and self.K0 >= 0.0):
            raise ValueError(f"curvature maximum K0 must be nonnegative, got {self.K0!r}")


def gap_expression(s, K: float, d: float):
    """One-parameter gap bound 4 s (1 - s) pi^2 / d^2 + s K, vectorized in s."""
    return 4.0 * s * (1.0 - s) * math.pi**2 / d**2 + s * K


@lru_cache(maxsize=4)
def _interior_grid(grid_size: int) -> np.ndarray:
    """Uniform grid {i/(grid_size+1)} on (0, 1), endpoints excluded."""
    s = np.arange(1, grid_size + 1, dtype=np.float64) / (grid_size + 1)
    s.setflags(write=False)
    return s


def sup_bound_grid(inp: BoundInput, grid_size: int = 10**6) -> float:
    """Maximize the gap expression over a uniform interior s-grid.

    The supremum is taken over the open interval (0, 1).  Its value is
    never below the s -> 0 limit of the expression, which is 0, so 0 is
    included as a candidate; this keeps the evaluator a lower bound for
    the true supremum even where the expression is negative on the whole
    interior.  Slow on purpose; serves as the oracle for
    ``sup_bound_closed``.
    """
    if grid_size < 1:
        raise ValueError(f"grid_size must be >= 1, got {grid_size}")
    values = gap_expression(_interior_grid(grid_size), inp.K, inp.d)
    return max(0.0, float(values.max()))


def sup_bound_closed(inp: BoundInput) -> float:
    """Closed form of sup over s in (0, 1) of the gap expression.

    The expression is a downward parabola in s vanishing at s = 0.  Its
    vertex sits at s* = 1/2 + K d^2 / (8 pi^2); the three branches are
    vertex left of the interval (supremum is the boundary limit 0),
    vertex interior (value (pi/d + K d/(4 pi))^2), and vertex right of
    the interval (supremum is the s -> 1 limit, K).
    """
    K, d = inp.K, inp.d
    kd2 = K * d * d
    if kd2 < -_FOUR_PI_SQ:
        return 0.0
    if kd2 > _FOUR_PI_SQ:
        return K
    root = math.pi / d + K * d / (4.0 * math.pi)
    return root * root


def sup_bound_branch(inp: BoundInput) -> tuple[str, float | None]:
    """Branch taken by ``sup_bound_closed`` and the maximizing s.

    Returns ``("zero_limit", None)`` or ``("curvature_limit", None)`` when
    the supremum is a boundary limit (not attained), else
    ``("interior", s_star)``.
    """
    kd2 = inp.K * inp.d * inp.d
    if kd2 < -_FOUR_PI_SQ:
        return "zero_limit", None
    if kd2 > _FOUR_PI_SQ:
        return "curvature_limit", None
    return "interior", 0.5 + kd2 / (8.0 * math.pi**2)


def futaki_sano_bound(inp: BoundInput) -> float:
    """Fixed-slope gap bound pi^2/d^2 + 0.31 K."""
    return math.pi**2 / inp.d**2 + 0.31 * inp.K


def andrews_ni_bound(inp: BoundInput) -> float:
    """Gap bound pi^2/d^2 + K/2, the s = 1/2 member of the sup family."""
    return math.pi**2 / inp.d**2 + 0.5 * inp.K


@dataclass(frozen=True)
class OptimalS:
    s_star: float
    g_max: float


def soliton_optimal_s() -> OptimalS:
    """Maximizer of g(s) = 4 s (1 - s) / (2 - s) on (0, 1), in closed form.

    g governs the soliton diameter bound: lambda_1 <= 2 lam combined with
    the gap bound at K = lam gives d^2 >= (pi^2 / lam) g(s) for every s,
    and g peaks at s* = 2 - sqrt(2) with value 12 - 8 sqrt(2).
    """
    return OptimalS(s_star=2.0 - math.sqrt(2.0), g_max=12.0 - 8.0 * math.sqrt(2.0))


@dataclass(frozen=True)
class SolitonDiameterBounds:
    """Diameter lower bounds for one soliton, labeled by the gap bound used."""

    sup_bound: float
    futaki_sano: float
    andrews_ni: float


def soliton_diameter_bounds(inp: SolitonInput) -> SolitonDiameterBounds:
    """Diameter lower bounds for a nontrivial compact shrinking Ricci soliton.

    Each gap bound, evaluated at K = lam and capped by lambda_1 <= 2 lam,
    yields a bound d >= c / sqrt(lam):

        sup over s     ->  c = 2 (sqrt(2) - 1) pi   (largest)
        slope 0.31     ->  c = 10 pi / 13           (smallest)
        slope 1/2      ->  c = sqrt(2/3) pi
    """
    rt = math.sqrt(inp.lam)
    return SolitonDiameterBounds(
        sup_bound=2.0 * (math.sqrt(2.0) - 1.0) * math.pi / rt,
        futaki_sano=10.0 * math.pi / (13.0 * rt),
        andrews_ni=math.sqrt(2.0 / 3.0) * math.pi / rt,
    )


def shrinker_diameter_bound(inp: ShrinkerBoundInput) -> float:
    """Intrinsic diameter lower bound pi / sqrt(3 lam / 2 + K0 / 2).

    This is the s = 1/2 case of the shrinker-curve diameter family; see
    ``shrinker_diameter_bound_sup`` for the sharper supremum over s.
    """
    return math.pi / math.sqrt(1.5 * inp.lam + 0.5 * inp.K0)


def shrinker_diameter_bound_sup(inp: ShrinkerBoundInput, grid_size: int = 10**5) -> float:
    """Grid-search the s-family of shrinker diameter bounds.

    For s in (0, 1) the gap bound with K = lam - K0 under the ceiling
    lambda_1 <= 2 lam gives d >= 2 pi sqrt(s (1 - s) / (2 lam - s K)).
    The denominator equals lam (2 - s) + s K0 and is always positive.
    Returns the largest bound over a uniform s-grid; the s = 1/2 member
    recovers ``shrinker_diameter_bound``.
    """
    K = inp.lam - inp.K0
    s = _interior_grid(grid_size)
    values = 2.0 * math.pi * np.sqrt(s * (1.0 - s) / (2.0 * inp.lam - s * K))
    return float(values.max())
