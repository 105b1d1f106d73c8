"""Multiplicative sequences of even characteristic power series.

A normalised even series ``Q(x) = 1 + a_1 x^2 + a_2 x^4 + ...`` determines
polynomials ``K_j(p_1, ..., p_j)`` with ``prod_i Q(x_i) = sum_j K_j`` where
``p_j = e_j(x_1^2, ...)``.  They are computed from ``log Q`` written in power
sums of ``x^2``, converted by the Newton identities and exponentiated in the
truncated graded ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .errors import UsageError
from .graded import DEFAULT_CAP, GradedPoly, exp_nilpotent, power_sums, to_fraction

# Integral Wu class lifting of Hopkins-Singer; coefficients of x^2, x^4, ..., x^10.
WU_SERIES_COEFFS = (Fraction(1, 2), Fraction(11, 8), Fraction(37, 16),
                    Fraction(691, 128), Fraction(2847, 256))


# Univariate truncated series in y = x^2, stored as coefficient lists.

def _mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _inv(a: Sequence[Fraction], n: int) -> list[Fraction]:
    if a[0] == 0:
        raise UsageError("series with zero constant term is not invertible")
    out = [1 / Fraction(a[0])]
    for k in range(1, n + 1):
        s = sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out.append(-s / a[0])
    return out


def series_log(a: Sequence[Fraction], n: int) -> list[Fraction]:
    """``log`` of a series with constant term 1, through ``y^n``."""
    if a[0] != 1:
        raise UsageError("log needs constant term 1")
    a = list(a[: n + 1]) + [Fraction(0)] * max(0, n + 1 - len(a))
    deriv = [k * a[k] for k in range(1, n + 1)]  # coefficients of y^{k-1}
    quotient = _mul(deriv, _inv(a, n), n - 1) if n else []
    return [Fraction(0)] + [quotient[k - 1] / k for k in range(1, n + 1)]


@dataclass(frozen=True)
class CharacteristicSeries:
    """Normalised even series ``1 + sum coeffs[k-1] x^{2k}``."""

    name: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))

    def in_squares(self, n: int) -> list[Fraction]:
        """Coefficients of ``1, y, ..., y^n`` with ``y = x^2``."""
        if n > len(self.coeffs):
            raise UsageError(f"series {self.name!r} only known through x^{2 * len(self.coeffs)}")
        return [Fraction(1)] + list(self.coeffs[:n])


def ahat_series(n: int = DEFAULT_CAP) -> CharacteristicSeries:
    """``(x/2) / sinh(x/2)`` through ``x^{2n}``."""
    # sinh(t)/t = sum t^{2k}/(2k+1)!, t = x/2
    sinhc = [Fraction(1, 4 ** k * math.factorial(2 * k + 1)) for k in range(n + 1)]
    return CharacteristicSeries("ahat", tuple(_inv(sinhc, n)[1:]))


def l_series(n: int = DEFAULT_CAP) -> CharacteristicSeries:
    """``x / tanh(x)`` through ``x^{2n}``."""
    cosh = [Fraction(1, math.factorial(2 * k)) for k in range(n + 1)]
    sinhc = [Fraction(1, math.factorial(2 * k + 1)) for k in range(n + 1)]
    return CharacteristicSeries("L", tuple(_mul(cosh, _inv(sinhc, n), n)[1:]))


def wu_series() -> CharacteristicSeries:
    return CharacteristicSeries("wu_spin", WU_SERIES_COEFFS)


@dataclass(frozen=True)
class MultiplicativeSequence:
    cap: int
    polys: tuple[GradedPoly, ...]

    def __getitem__(self, j: int) -> GradedPoly:
        return self.polys[j]

    @property
    def top(self) -> GradedPoly:
        return self.polys[self.cap]

    def total(self) -> GradedPoly:
        return sum(self.polys[1:], self.polys[0])


def multiplicative_sequence(q: CharacteristicSeries, cap: int = DEFAULT_CAP) -> MultiplicativeSequence:
    if cap < 1:
        raise UsageError("cap must be at least 1")
    logs = series_log(q.in_squares(cap), cap)
    ps = power_sums(cap)
    exponent = GradedPoly.zero(cap)
    for k in range(1, cap + 1):
        exponent = exponent + ps[k] * logs[k]
    total = exp_nilpotent(exponent)
    return MultiplicativeSequence(cap, tuple(total.homogeneous(j) for j in range(cap + 1)))


@lru_cache(maxsize=None)
def ahat_class(cap: int = DEFAULT_CAP) -> MultiplicativeSequence:
    return multiplicative_sequence(ahat_series(cap), cap)


@lru_cache(maxsize=None)
def l_class(cap: int = DEFAULT_CAP) -> MultiplicativeSequence:
    return multiplicative_sequence(l_series(cap), cap)


@lru_cache(maxsize=None)
def wu_spin_class(cap: int = 3) -> MultiplicativeSequence:
    """Multiplicative sequence of the Hopkins-Singer series.

    Only five coefficients of the series are known in closed form here, so
    weights above 5 cannot be produced.
    """
    if cap > len(WU_SERIES_COEFFS):
        raise UsageError(f"insufficient g coefficients for weight {cap} "
                         f"(known through weight {len(WU_SERIES_COEFFS)})")
    return multiplicative_sequence(wu_series(), cap)
