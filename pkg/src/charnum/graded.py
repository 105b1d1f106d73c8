"""Truncated graded polynomial rings over the rationals.

Two polynomial types live here:

* :class:`GradedPoly` -- polynomials in Pontryagin-type generators
  ``p_1, p_2, ...`` where ``p_i`` has weight ``i``.  Monomials are keyed by
  partitions (descending tuples), so ``p_2**3`` is ``(2, 2, 2)`` and the
  constant term is ``()``.  Terms of weight above ``cap`` are discarded.
* :class:`RootPoly` -- polynomials in formal Chern roots ``x_1, ..., x_n``
  truncated at a total degree.

:func:`symmetric_reduce` rewrites a root polynomial that is invariant under
permutations and sign changes of the roots as a :class:`GradedPoly` in
``p_j = e_j(x_1^2, ..., x_n^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence, TypeVar

from . import linalg
from .errors import ConsistencyError, NotSymmetricError, UsageError

DEFAULT_CAP = 6

Partition = tuple[int, ...]
T = TypeVar("T")


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction (never a float)."""
    if isinstance(value, float):
        raise UsageError("floating point values are not accepted")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# -- partitions --------------------------------------------------------------


def canonical(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in parts):
        raise UsageError(f"partition parts must be positive: {parts}")
    return parts


def weight(parts: Partition) -> int:
    return sum(parts)


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` with parts at most ``max_part``, in reverse lex order."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out: list[Partition] = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_str(parts: Partition) -> str:
    return ",".join(str(p) for p in parts)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return canonical(int(t) for t in text.split(","))


# -- graded polynomials in Pontryagin generators ----------------------------


class GradedPoly:
    """Polynomial in weighted generators, truncated above ``cap``.

    Instances are immutable.  ``symbol`` only affects printing (``p`` for
    Pontryagin classes, ``q`` for Spin classes) but takes part in equality so
    that the two families are never silently mixed.
    """

    __slots__ = ("cap", "symbol", "_terms")

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None,
                 cap: int = DEFAULT_CAP, symbol: str = "p"):
        if cap < 0:
            raise UsageError("cap must be non-negative")
        clean: dict[Partition, Fraction] = {}
        for key, coeff in (terms or {}).items():
            part = canonical(key)
            if weight(part) > cap:
                continue
            c = to_fraction(coeff)
            total = clean.get(part, Fraction(0)) + c
            if total:
                clean[part] = total
            else:
                clean.pop(part, None)
        self.cap = cap
        self.symbol = symbol
        self._terms = clean

    @classmethod
    def constant(cls, c, cap: int = DEFAULT_CAP, symbol: str = "p") -> GradedPoly:
        return cls({(): c}, cap, symbol)

    @classmethod
    def one(cls, cap: int = DEFAULT_CAP, symbol: str = "p") -> GradedPoly:
        return cls.constant(1, cap, symbol)

    @classmethod
    def zero(cls, cap: int = DEFAULT_CAP, symbol: str = "p") -> GradedPoly:
        return cls({}, cap, symbol)

    @classmethod
    def gen(cls, i: int, cap: int = DEFAULT_CAP, symbol: str = "p") -> GradedPoly:
        return cls({(i,): 1}, cap, symbol)

    @classmethod
    def monomial(cls, parts: Iterable[int], coeff=1, cap: int = DEFAULT_CAP,
                 symbol: str = "p") -> GradedPoly:
        return cls({tuple(parts): coeff}, cap, symbol)

    @property
    def terms(self) -> dict[Partition, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Partition, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (weight(kv[0]), kv[0])))

    def coefficient(self, parts: Iterable[int]) -> Fraction:
        return self._terms.get(canonical(parts), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def homogeneous(self, w: int) -> GradedPoly:
        return GradedPoly({k: v for k, v in self._terms.items() if weight(k) == w},
                          self.cap, self.symbol)

    def is_homogeneous(self, w: int) -> bool:
        return all(weight(k) == w for k in self._terms)

    def max_weight(self) -> int:
        return max((weight(k) for k in self._terms), default=0)

    def with_cap(self, cap: int) -> GradedPoly:
        return GradedPoly(self._terms, cap, self.symbol)

    def _check(self, other: GradedPoly) -> None:
        if self.cap != other.cap:
            raise UsageError(f"mismatched caps {self.cap} and {other.cap}")
        if self.symbol != other.symbol:
            raise UsageError(f"cannot combine {self.symbol}- and {other.symbol}-polynomials")

    def _coerce(self, other) -> GradedPoly:
        if isinstance(other, GradedPoly):
            self._check(other)
            return other
        return GradedPoly.constant(to_fraction(other), self.cap, self.symbol)

    def __add__(self, other) -> GradedPoly:
        other = self._coerce(other)
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return GradedPoly(terms, self.cap, self.symbol)

    __radd__ = __add__

    def __neg__(self) -> GradedPoly:
        return GradedPoly({k: -v for k, v in self._terms.items()}, self.cap, self.symbol)

    def __sub__(self, other) -> GradedPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GradedPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> GradedPoly:
        if not isinstance(other, GradedPoly):
            c = to_fraction(other)
            return GradedPoly({k: c * v for k, v in self._terms.items()}, self.cap, self.symbol)
        self._check(other)
        out: dict[Partition, Fraction] = {}
        for ka, va in self._terms.items():
            wa = weight(ka)
            for kb, vb in other._terms.items():
                if wa + weight(kb) > self.cap:
                    continue
                k = tuple(sorted(ka + kb, reverse=True))
                out[k] = out.get(k, Fraction(0)) + va * vb
        return GradedPoly(out, self.cap, self.symbol)

    def __rmul__(self, other) -> GradedPoly:
        return self * other

    def __truediv__(self, other) -> GradedPoly:
        return self * (1 / to_fraction(other))

    def __pow__(self, n: int) -> GradedPoly:
        if n < 0:
            raise UsageError("negative powers are not defined")
        result = GradedPoly.one(self.cap, self.symbol)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedPoly):
            return (self.cap, self.symbol, self._terms) == (other.cap, other.symbol, other._terms)
        if isinstance(other, (int, Fraction)):
            return self == GradedPoly.constant(other, self.cap, self.symbol)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.cap, self.symbol, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"GradedPoly({self}, cap={self.cap})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for part, c in self.items():
            mono = "*".join(
                f"{self.symbol}{i}" + (f"^{n}" if (n := part.count(i)) > 1 else "")
                for i in sorted(set(part))
            )
            if not mono:
                pieces.append(format_fraction(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{format_fraction(c)}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def evaluate(self, images: Mapping[int, T] | Callable[[int], T], one: T) -> T:
        """Substitute ``images[i]`` for the i-th generator.

        ``images`` may be anything supporting ``+``, ``*`` and multiplication
        by a Fraction; ``one`` is the unit of that ring.
        """
        get = images if callable(images) else images.__getitem__
        cache: dict[int, T] = {}
        total = one * Fraction(0)
        for part, c in self.items():
            term = one
            for i in part:
                if i not in cache:
                    cache[i] = get(i)
                term = term * cache[i]
            total = total + term * c
        return total

    def substitute(self, images: Mapping[int, GradedPoly]) -> GradedPoly:
        """Substitute graded polynomials for the generators (result keeps their cap/symbol)."""
        sample = next(iter(images.values()))
        return self.evaluate(images, GradedPoly.one(sample.cap, sample.symbol))

    def to_json(self) -> dict[str, str]:
        return {partition_str(k): format_fraction(v) for k, v in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str], cap: int = DEFAULT_CAP, symbol: str = "p") -> GradedPoly:
        return cls({parse_partition(k): to_fraction(v) for k, v in data.items()}, cap, symbol)


def poly_mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    return a * b


def exp_nilpotent(f: GradedPoly) -> GradedPoly:
    """``exp(f)`` for ``f`` without constant term (the series terminates at the cap)."""
    if f.coefficient(()):
        raise UsageError("exp_nilpotent needs a polynomial without constant term")
    result = GradedPoly.one(f.cap, f.symbol)
    term = GradedPoly.one(f.cap, f.symbol)
    for n in range(1, f.cap + 1):
        term = term * f / n
        result = result + term
    return result


def power_sums(cap: int, symbol: str = "p") -> list[GradedPoly]:
    """Power sums ``ps_k = sum y_i^k`` written in ``e_j(y)`` (as generators), k = 0..cap.

    Newton: ``ps_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i ps_{k-i} + (-1)^{k-1} k e_k``.
    ``ps_0`` is returned as 0 and is never used.
    """
    ps = [GradedPoly.zero(cap, symbol)]
    for k in range(1, cap + 1):
        acc = GradedPoly.gen(k, cap, symbol) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + GradedPoly.gen(i, cap, symbol) * ps[k - i] * (-1) ** (i - 1)
        ps.append(acc)
    return ps


# -- Pontryagin numbers ------------------------------------------------------


@dataclass(frozen=True)
class PontryaginNumbers:
    """Characteristic numbers of a closed ``dim``-manifold indexed by partitions of ``dim/4``."""

    dim: int
    numbers: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim % 4:
            raise UsageError(f"dimension {self.dim} is not a multiple of 4")
        n = self.dim // 4
        clean: dict[Partition, Fraction] = {}
        for key, value in self.numbers.items():
            part = parse_partition(key) if isinstance(key, str) else canonical(key)
            if weight(part) != n:
                raise UsageError(f"partition {part} does not have weight {n}")
            v = to_fraction(value)
            if v:
                clean[part] = v
        object.__setattr__(self, "numbers", dict(sorted(clean.items())))

    def __getitem__(self, parts) -> Fraction:
        part = parse_partition(parts) if isinstance(parts, str) else canonical(parts)
        return self.numbers.get(part, Fraction(0))

    def __add__(self, other: PontryaginNumbers) -> PontryaginNumbers:
        if self.dim != other.dim:
            raise UsageError("cannot add number vectors of different dimensions")
        keys = set(self.numbers) | set(other.numbers)
        return PontryaginNumbers(self.dim, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other: PontryaginNumbers) -> PontryaginNumbers:
        return self + other * -1

    def __mul__(self, c) -> PontryaginNumbers:
        c = to_fraction(c)
        return PontryaginNumbers(self.dim, {k: c * v for k, v in self.numbers.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> PontryaginNumbers:
        return self * (1 / to_fraction(c))

    def is_string(self) -> bool:
        return all(1 not in k for k in self.numbers)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.numbers.values())

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "numbers": {partition_str(k): format_fraction(v) for k, v in self.numbers.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> PontryaginNumbers:
        return cls(int(data["dim"]), {parse_partition(k): to_fraction(v)
                                      for k, v in data.get("numbers", {}).items()})


def linear_combination(coeffs: Sequence, vectors: Sequence[PontryaginNumbers]) -> PontryaginNumbers:
    total = PontryaginNumbers(vectors[0].dim)
    for c, v in zip(coeffs, vectors):
        total = total + v * c
    return total


def pair(poly: GradedPoly, nums: PontryaginNumbers) -> Fraction:
    """Evaluate the top-weight part of ``poly`` on the fundamental class."""
    if poly.cap * 4 != nums.dim:
        raise UsageError(f"polynomial cap {poly.cap} does not match dimension {nums.dim}")
    return sum((c * nums[k] for k, c in poly.items() if weight(k) == poly.cap), Fraction(0))


# -- Bernoulli numbers -------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        b.append(-sum((math.comb(m + 1, k) * b[k] for k in range(m)), Fraction(0)) / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """Even-index Bernoulli number with ``B_2 = 1/6``."""
    if n < 2 or n % 2:
        raise UsageError(f"bernoulli expects an even index >= 2, got {n}")
    return _bernoulli_table(n)[n]


# -- polynomials in formal roots --------------------------------------------

Exponent = tuple[int, ...]


class RootPoly:
    """Polynomial in formal roots, truncated above total degree ``cap``."""

    __slots__ = ("variables", "cap", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None,
                 cap: int = 2 * DEFAULT_CAP):
        self.variables = tuple(variables)
        self.cap = cap
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise UsageError(f"exponent vector {exps} has wrong length for {n} variables")
            if sum(exps) > cap:
                continue
            c = to_fraction(coeff)
            total = clean.get(exps, Fraction(0)) + c
            if total:
                clean[exps] = total
            else:
                clean.pop(exps, None)
        self._terms = clean

    @classmethod
    def constant(cls, variables: Sequence[str], c, cap: int) -> RootPoly:
        return cls(variables, {(0,) * len(variables): c}, cap)

    @classmethod
    def linear(cls, variables: Sequence[str], coeffs: Sequence, cap: int) -> RootPoly:
        n = len(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(variables, terms, cap)

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def one(self) -> RootPoly:
        return RootPoly.constant(self.variables, 1, self.cap)

    def coefficient(self, exps: Exponent) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def homogeneous(self, d: int) -> RootPoly:
        return RootPoly(self.variables, {k: v for k, v in self._terms.items() if sum(k) == d}, self.cap)

    def _check(self, other: RootPoly) -> None:
        if self.variables != other.variables or self.cap != other.cap:
            raise UsageError("root polynomials live in different rings")

    def __add__(self, other) -> RootPoly:
        if not isinstance(other, RootPoly):
            other = RootPoly.constant(self.variables, other, self.cap)
        self._check(other)
        terms = dict(self._terms)
        for k, v in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return RootPoly(self.variables, terms, self.cap)

    __radd__ = __add__

    def __neg__(self) -> RootPoly:
        return self * -1

    def __sub__(self, other) -> RootPoly:
        return self + (-other if isinstance(other, RootPoly) else -to_fraction(other))

    def __mul__(self, other) -> RootPoly:
        if not isinstance(other, RootPoly):
            c = to_fraction(other)
            return RootPoly(self.variables, {k: c * v for k, v in self._terms.items()}, self.cap)
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        cap = self.cap
        for ka, va in self._terms.items():
            da = sum(ka)
            for kb, vb in other._terms.items():
                if da + sum(kb) > cap:
                    continue
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, Fraction(0)) + va * vb
        return RootPoly(self.variables, out, cap)

    def __rmul__(self, other) -> RootPoly:
        return self * other

    def __pow__(self, n: int) -> RootPoly:
        result = self.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootPoly):
            return NotImplemented
        return (self.variables, self.cap, self._terms) == (other.variables, other.cap, other._terms)

    def __hash__(self) -> int:
        return hash((self.variables, self.cap, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"RootPoly({len(self._terms)} terms in {self.variables}, cap={self.cap})"

    def permute(self, perm: Sequence[int]) -> RootPoly:
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for k, v in self._terms.items():
            e = [0] * len(k)
            for i, a in enumerate(k):
                e[perm[i]] = a
            out[tuple(e)] = v
        return RootPoly(self.variables, out, self.cap)

    def flip_sign(self, i: int) -> RootPoly:
        return RootPoly(self.variables,
                        {k: (-v if k[i] % 2 else v) for k, v in self._terms.items()}, self.cap)

    def is_hyperoctahedral_invariant(self) -> bool:
        n = len(self.variables)
        if n == 0:
            return True
        if self.flip_sign(0) != self:
            return False
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = i + 1, i
            if self.permute(perm) != self:
                return False
        return True


def exp_root(r: RootPoly) -> RootPoly:
    """``exp(r)`` truncated at the cap of ``r`` (``r`` must have no constant term)."""
    if r.coefficient((0,) * len(r.variables)):
        raise UsageError("exp_root needs a root polynomial without constant term")
    result = r.one()
    term = r.one()
    for n in range(1, r.cap + 1):
        term = term * r * Fraction(1, n)
        result = result + term
    return result


def elementary_in_squares(variables: Sequence[str], cap: int) -> list[RootPoly]:
    """``[e_0(x^2), e_1(x^2), ..., e_n(x^2)]`` as root polynomials."""
    n = len(variables)
    prod = RootPoly.constant(variables, 1, cap)
    for i in range(n):
        e = [0] * n
        e[i] = 2
        prod = prod * RootPoly(variables, {(0,) * n: 1, tuple(e): 1}, cap)
    return [prod.homogeneous(2 * j) for j in range(n + 1)]


def symmetric_reduce(rp: RootPoly, n_roots: int) -> GradedPoly:
    """Express a sign- and permutation-invariant root polynomial in ``p_j = e_j(x^2)``.

    Works one weight at a time: the coefficients of the monomial-symmetric
    representatives (descending even exponent vectors) determine the
    polynomial, and the matrix of ``p_lambda`` against them is square and
    invertible.
    """
    if len(rp.variables) != n_roots:
        raise UsageError(f"root polynomial has {len(rp.variables)} variables, expected {n_roots}")
    if not rp.is_hyperoctahedral_invariant():
        raise NotSymmetricError("root polynomial is not symmetric under permutations and sign changes")
    cap = rp.cap // 2
    e = elementary_in_squares(rp.variables, rp.cap)
    cache: dict[Partition, RootPoly] = {(): e[0]}

    def p_lambda(part: Partition) -> RootPoly:
        if part not in cache:
            cache[part] = p_lambda(part[1:]) * e[part[0]]
        return cache[part]

    result: dict[Partition, Fraction] = {}
    for w in range(cap + 1):
        cols = partitions(w, n_roots)
        rows = [tuple(2 * a for a in mu) + (0,) * (n_roots - len(mu))
                for mu in partitions(w) if len(mu) <= n_roots]
        target = [rp.coefficient(r) for r in rows]
        if not any(target):
            continue
        matrix = [[p_lambda(c).coefficient(r) for c in cols] for r in rows]
        try:
            sol = linalg.solve(matrix, target)
        except ConsistencyError as exc:  # pragma: no cover - cannot happen for symmetric input
            raise ConsistencyError(f"symmetric reduction failed at weight {w}") from exc
        for c, v in zip(cols, sol):
            if v:
                result[c] = v
    return GradedPoly(result, cap)


def substitute_roots(poly: GradedPoly, variables: Sequence[str], root_cap: int) -> RootPoly:
    """Inverse of :func:`symmetric_reduce`: set ``p_j = e_j(x^2)`` (``p_j = 0`` for j > n)."""
    e = elementary_in_squares(variables, root_cap)
    zero = RootPoly(variables, {}, root_cap)
    return poly.evaluate(lambda j: e[j] if j < len(e) else zero, e[0])
