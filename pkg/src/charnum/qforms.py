"""Exact q-expansions of level-one modular forms and the Witten genus in dimension 24."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import UsageError
from .graded import PontryaginNumbers, format_fraction, to_fraction
from .twist import ChernCharacter, ch_tangent, symmetric_power, tensor, twisted_ahat


@dataclass(frozen=True)
class QSeries:
    """``sum_{n=0}^{trunc} coeffs[n] q^n``; arithmetic truncates at the shorter precision."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise UsageError("a q-series needs at least a constant term")
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, n: int) -> QSeries:
        return cls((Fraction(0),) * (n + 1))

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, n: int) -> QSeries:
        if n > self.trunc:
            raise UsageError(f"series only known through q^{self.trunc}")
        return QSeries(self.coeffs[: n + 1])

    def __add__(self, other: QSeries) -> QSeries:
        n = min(self.trunc, other.trunc)
        return QSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])))

    def __neg__(self) -> QSeries:
        return QSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __mul__(self, other) -> QSeries:
        if not isinstance(other, QSeries):
            c = to_fraction(other)
            return QSeries(tuple(c * a for a in self.coeffs))
        n = min(self.trunc, other.trunc)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    out[i + j] += a * b
        return QSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, c) -> QSeries:
        return self * (1 / to_fraction(c))

    def __pow__(self, k: int) -> QSeries:
        result = QSeries((Fraction(1),) + (Fraction(0),) * self.trunc)
        for _ in range(k):
            result = result * self
        return result

    def to_json(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]


def divisor_sigma(k: int, n: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein_e4(n: int) -> QSeries:
    return QSeries((1,) + tuple(240 * divisor_sigma(3, m) for m in range(1, n + 1)))


def eisenstein_e6(n: int) -> QSeries:
    return QSeries((1,) + tuple(-504 * divisor_sigma(5, m) for m in range(1, n + 1)))


def delta(n: int) -> QSeries:
    """``q prod_{m>=1} (1 - q^m)^24``."""
    if n < 0:
        raise UsageError("truncation must be non-negative")
    prod = [Fraction(0)] * (n + 1)
    prod[0] = Fraction(1)
    for m in range(1, n + 1):
        for _ in range(24):
            # multiply in place by (1 - q^m)
            for i in range(n, m - 1, -1):
                prod[i] -= prod[i - m]
    return QSeries((Fraction(0),) + tuple(prod[:n]))


def delta_bar(n: int) -> QSeries:
    return eisenstein_e4(n) ** 3 - delta(n) * 744


def witten_modular(nums: PontryaginNumbers, n: int) -> QSeries:
    """``A(M) * Delta_bar + A(M, T) * Delta`` for a 24-dimensional String class."""
    if nums.dim != 24:
        raise UsageError("the modular formula is only valid in dimension 24")
    a0 = twisted_ahat(nums, ChernCharacter.trivial(6))
    a1 = twisted_ahat(nums, ch_tangent(24, 6))
    return delta_bar(n) * a0 + delta(n) * a1


@lru_cache(maxsize=None)
def _reduced_symmetric_powers(dim: int, cap: int, n: int) -> tuple[ChernCharacter, ...]:
    """``S^k(T - C^dim)`` for k = 0..n, from ``S_t(E - C^dim) = S_t(E) (1 - t)^dim``."""
    t = ch_tangent(dim, cap)
    sym = [symmetric_power(k, t) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        acc = ChernCharacter.trivial(cap, 0)
        for i in range(k + 1):
            acc = acc + sym[k - i] * ((-1) ** i * math.comb(dim, i))
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=None)
def witten_bundle(n: int, dim: int = 24, cap: int = 6) -> tuple[ChernCharacter, ...]:
    """q-coefficients (through ``q^n``) of ``ch(prod_{m>=1} S_{q^m}(T - C^dim))``."""
    red = _reduced_symmetric_powers(dim, cap, n)
    coeffs = [ChernCharacter.trivial(cap)] + [ChernCharacter.trivial(cap, 0)] * n
    for m in range(1, n + 1):
        factor = [ChernCharacter.trivial(cap, 0)] * (n + 1)
        for k in range(n // m + 1):
            factor[k * m] = red[k]
        new = [ChernCharacter.trivial(cap, 0)] * (n + 1)
        for i, a in enumerate(coeffs):
            for j in range(0, n + 1 - i, m):
                new[i + j] = new[i + j] + tensor(a, factor[j])
        coeffs = new
    return tuple(coeffs)


def witten_direct(nums: PontryaginNumbers, n: int) -> QSeries:
    """Twisted A-hat genus of the Witten bundle, coefficient by coefficient."""
    if nums.dim != 24:
        raise UsageError("witten_direct is implemented for dimension 24")
    if n > 3:
        raise UsageError("witten_direct supports truncation at most q^3")
    return QSeries(tuple(twisted_ahat(nums, c) for c in witten_bundle(n)))


def image_coordinates(w: QSeries) -> tuple[Fraction, Fraction]:
    """Coordinates of a weight-12 form in the basis ``E4^3, 24 Delta``."""
    c0 = w[0]
    c1 = (w[1] - c0 * eisenstein_e4(1)[1] * 3) / 24
    return c0, c1


def series_equal(a: QSeries, b: QSeries, n: int | None = None) -> bool:
    n = min(a.trunc, b.trunc) if n is None else n
    return a.coeffs[: n + 1] == b.coeffs[: n + 1]


def as_series(values: Sequence) -> QSeries:
    return QSeries(tuple(values))
