"""Chern characters of bundles built from the complexified tangent bundle.

A :class:`ChernCharacter` stores the rank and the degree-4j components as
polynomials in Pontryagin classes.  Every bundle produced here is self-dual,
so components in degrees 4j+2 vanish and are not stored.  Exterior and
symmetric powers come from the lambda-ring Newton recurrences over Adams
operations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UsageError
from .genus import ahat_class, l_class
from .graded import DEFAULT_CAP, GradedPoly, PontryaginNumbers, pair, power_sums, to_fraction


@dataclass(frozen=True)
class ChernCharacter:
    cap: int
    rank: Fraction
    comps: tuple[GradedPoly, ...]  # comps[j-1] is the degree-4j component

    def __post_init__(self):
        object.__setattr__(self, "rank", to_fraction(self.rank))
        if len(self.comps) != self.cap:
            raise UsageError("need exactly one component per weight 1..cap")
        for j, c in enumerate(self.comps, start=1):
            if c.cap != self.cap or not c.is_homogeneous(j):
                raise UsageError(f"component {j} is not homogeneous of weight {j}")

    @classmethod
    def from_poly(cls, poly: GradedPoly) -> ChernCharacter:
        return cls(poly.cap, poly.coefficient(()),
                   tuple(poly.homogeneous(j) for j in range(1, poly.cap + 1)))

    @classmethod
    def trivial(cls, cap: int = DEFAULT_CAP, rank=1) -> ChernCharacter:
        return cls.from_poly(GradedPoly.constant(rank, cap))

    def comp(self, j: int) -> GradedPoly:
        """Degree-4j component; ``comp(0)`` is the rank."""
        if j == 0:
            return GradedPoly.constant(self.rank, self.cap)
        return self.comps[j - 1]

    def as_poly(self) -> GradedPoly:
        return sum(self.comps, GradedPoly.constant(self.rank, self.cap))

    def _check(self, other: ChernCharacter) -> None:
        if self.cap != other.cap:
            raise UsageError(f"mismatched caps {self.cap} and {other.cap}")

    def __add__(self, other: ChernCharacter) -> ChernCharacter:
        self._check(other)
        return ChernCharacter.from_poly(self.as_poly() + other.as_poly())

    def __sub__(self, other: ChernCharacter) -> ChernCharacter:
        self._check(other)
        return ChernCharacter.from_poly(self.as_poly() - other.as_poly())

    def __mul__(self, other) -> ChernCharacter:
        if isinstance(other, ChernCharacter):
            return tensor(self, other)
        return ChernCharacter.from_poly(self.as_poly() * to_fraction(other))

    __rmul__ = __mul__


def ch_tangent(dim: int, cap: int = DEFAULT_CAP) -> ChernCharacter:
    """Chern character of ``TM (x) C``; its roots are ``+-x_i``, so ``ch_{4j} = 2 ps_j(x^2) / (2j)!``."""
    if dim % 2:
        raise UsageError("tangent bundle needs even dimension")
    ps = power_sums(cap)
    return ChernCharacter(cap, Fraction(dim),
                          tuple(ps[j] * Fraction(2, math.factorial(2 * j)) for j in range(1, cap + 1)))


def tensor(a: ChernCharacter, b: ChernCharacter) -> ChernCharacter:
    a._check(b)
    return ChernCharacter.from_poly(a.as_poly() * b.as_poly())


def adams(k: int, a: ChernCharacter) -> ChernCharacter:
    if k < 1:
        raise UsageError("Adams operations are indexed by positive integers")
    return ChernCharacter(a.cap, a.rank, tuple(c * k ** (2 * j) for j, c in enumerate(a.comps, start=1)))


def ch2_scale(a: ChernCharacter) -> ChernCharacter:
    """Scale the degree-2i piece by ``2^i``."""
    return ChernCharacter(a.cap, a.rank, tuple(c * 4 ** j for j, c in enumerate(a.comps, start=1)))


def exterior_power(j: int, a: ChernCharacter) -> ChernCharacter:
    """``j lambda^j = sum_{m=1}^{j} (-1)^{m-1} psi^m . lambda^{j-m}``."""
    if j < 0:
        raise UsageError("exterior power index must be non-negative")
    if j >= 2 and a.rank < 0:
        raise UsageError("exterior powers of virtual bundles with negative rank are not supported")
    lam = [ChernCharacter.trivial(a.cap)]
    psi = [None] + [adams(m, a) for m in range(1, j + 1)]
    for n in range(1, j + 1):
        acc = ChernCharacter.trivial(a.cap, 0)
        for m in range(1, n + 1):
            acc = acc + tensor(psi[m], lam[n - m]) * (-1) ** (m - 1)
        lam.append(acc * Fraction(1, n))
    return lam[j]


def symmetric_power(k: int, a: ChernCharacter) -> ChernCharacter:
    """``k s^k = sum_{m=1}^{k} psi^m . s^{k-m}``."""
    if k < 0:
        raise UsageError("symmetric power index must be non-negative")
    sym = [ChernCharacter.trivial(a.cap)]
    psi = [None] + [adams(m, a) for m in range(1, k + 1)]
    for n in range(1, k + 1):
        acc = ChernCharacter.trivial(a.cap, 0)
        for m in range(1, n + 1):
            acc = acc + tensor(psi[m], sym[n - m])
        sym.append(acc * Fraction(1, n))
    return sym[k]


def _check_dims(nums: PontryaginNumbers, a: ChernCharacter) -> None:
    if nums.dim != 4 * a.cap:
        raise UsageError(f"character cap {a.cap} does not match dimension {nums.dim}")


def twisted_ahat(nums: PontryaginNumbers, a: ChernCharacter) -> Fraction:
    _check_dims(nums, a)
    return pair(ahat_class(a.cap).total() * a.as_poly(), nums)


def twisted_sig(nums: PontryaginNumbers, a: ChernCharacter) -> Fraction:
    _check_dims(nums, a)
    return pair(l_class(a.cap).total() * ch2_scale(a).as_poly(), nums)


# -- twist expressions "T^i*L^j*S^k" ----------------------------------------

_FACTOR = re.compile(r"^\s*([TLS])\s*(?:\^\s*(\d+))?\s*$")


def parse_twist(expr: str) -> tuple[int, int, int]:
    """Parse ``"T^i*L^j*S^k"`` (any order, exponents optional, ``"1"`` for trivial).

    ``T^i`` is the i-fold tensor power of the complexified tangent bundle,
    ``L^j`` its j-th exterior power and ``S^k`` its k-th symmetric power.
    """
    counts = {"T": 0, "L": 0, "S": 0}
    seen = set()
    expr = expr.strip()
    if expr in ("", "1"):
        return 0, 0, 0
    for factor in expr.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise UsageError(f"cannot parse twist factor {factor!r} in {expr!r}")
        letter, exp = m.group(1), int(m.group(2) or 1)
        if letter in seen:
            raise UsageError(f"factor {letter} repeated in {expr!r}")
        seen.add(letter)
        counts[letter] = exp
    return counts["T"], counts["L"], counts["S"]


def format_twist(i: int, j: int, k: int) -> str:
    parts = [f"{s}^{n}" for s, n in (("T", i), ("L", j), ("S", k)) if n]
    return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def twist_character(i: int, j: int, k: int, dim: int = 24, cap: int = DEFAULT_CAP) -> ChernCharacter:
    t = ch_tangent(dim, cap)
    result = ChernCharacter.trivial(cap)
    for _ in range(i):
        result = tensor(result, t)
    if j:
        result = tensor(result, exterior_power(j, t))
    if k:
        result = tensor(result, symmetric_power(k, t))
    return result
