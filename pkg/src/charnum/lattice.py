"""The 24-dimensional String cobordism lattice in the basis M1..M4.

Covers the kappa map ``(A, A(-,T)/24, A(-,L^2), Sig/8)`` and its matrix K,
decomposition of number vectors into basis coordinates, gcd/valuation
computations over congruence sublattices, the modified signature and the
twisted-genus sweep over ``T^i (x) L^j (x) S^k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ConsistencyError, NotStringError, UsageError
from .genus import wu_spin_class
from .graded import PontryaginNumbers, linear_combination, pair
from .manifolds import m1_m2_numbers, m3_model, numbers, signature
from .twist import ChernCharacter, ch_tangent, exterior_power, twist_character, twisted_ahat, twisted_sig

STRING_PARTITIONS = ((2, 2, 2), (4, 2), (3, 3), (6,))


def valuation(p: int, n: int) -> float:
    """p-adic valuation; ``inf`` for zero."""
    n = int(n)
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def basis_numbers() -> tuple[PontryaginNumbers, ...]:
    from .bh import m4_numbers

    m1, m2 = m1_m2_numbers()
    return m1, m2, numbers(m3_model()), m4_numbers()


def _require_string(nums: PontryaginNumbers) -> None:
    if nums.dim != 24:
        raise UsageError(f"expected a 24-dimensional class, got dimension {nums.dim}")
    if not nums.is_string():
        raise NotStringError("Pontryagin numbers involving p1 are nonzero")


def kappa(nums: PontryaginNumbers) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    _require_string(nums)
    t = ch_tangent(24)
    return (
        twisted_ahat(nums, ChernCharacter.trivial()),
        twisted_ahat(nums, t) / 24,
        twisted_ahat(nums, exterior_power(2, t)),
        twisted_sig(nums, ChernCharacter.trivial()) / 8,
    )


@dataclass(frozen=True)
class KappaData:
    K: tuple[tuple[int, ...], ...]
    K_inv: tuple[tuple[Fraction, ...], ...]
    basis_numbers: tuple[PontryaginNumbers, ...]

    @property
    def det(self) -> Fraction:
        return linalg.det(self.K)


@lru_cache(maxsize=None)
def kappa_data() -> KappaData:
    basis = basis_numbers()
    columns = [kappa(b) for b in basis]
    if any(v.denominator != 1 for col in columns for v in col):
        raise ConsistencyError("kappa of a basis manifold is not integral")
    k = tuple(tuple(int(columns[j][i]) for j in range(4)) for i in range(4))
    return KappaData(k, tuple(tuple(r) for r in linalg.inverse(k)), basis)


@dataclass(frozen=True)
class CobordismVector:
    """Integral coordinates in the basis M1..M4."""

    x: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.x) != 4 or any(Fraction(v).denominator != 1 for v in self.x):
            raise UsageError(f"cobordism vector must be an integral 4-vector, got {self.x}")
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))

    def numbers(self) -> PontryaginNumbers:
        return linear_combination(self.x, basis_numbers())

    def kappa(self) -> tuple[Fraction, ...]:
        return tuple(linalg.matvec(kappa_data().K, self.x))


@dataclass(frozen=True)
class Decomposition:
    coords: tuple[Fraction, ...]

    @property
    def in_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def vector(self) -> CobordismVector:
        if not self.in_lattice:
            raise UsageError(f"not in the integral lattice: coordinates {self.coords}")
        return CobordismVector(tuple(int(c) for c in self.coords))


def decompose(nums: PontryaginNumbers) -> Decomposition:
    _require_string(nums)
    basis = basis_numbers()
    a = [[b[part] for b in basis] for part in STRING_PARTITIONS]
    rhs = [nums[part] for part in STRING_PARTITIONS]
    return Decomposition(tuple(linalg.solve(a, rhs)))


def from_kappa(y: Sequence) -> Decomposition:
    """Coordinates of the class with ``kappa = y``: ``K^{-1} y``."""
    return Decomposition(tuple(linalg.matvec(kappa_data().K_inv, y)))


# -- sublattices and gcds ---------------------------------------------------------


@dataclass(frozen=True)
class SublatticeConstraint:
    """``nu_p(sum_i x_i * functional_i) >= min_valuation``."""

    functional: tuple[int, ...]
    prime: int
    min_valuation: int

    def __post_init__(self):
        object.__setattr__(self, "functional", tuple(int(v) for v in self.functional))
        if self.prime < 2 or any(self.prime % d == 0 for d in range(2, math.isqrt(self.prime) + 1)):
            raise UsageError(f"{self.prime} is not prime")
        if self.min_valuation < 0:
            raise UsageError("minimal valuation must be non-negative")

    @property
    def modulus(self) -> int:
        return self.prime ** self.min_valuation


def sublattice_basis(constraints: Sequence[SublatticeConstraint], n: int = 4) -> list[list[int]]:
    """A Z-basis of ``{x in Z^n : every constraint holds}``.

    Each constraint cuts the current lattice to the kernel of a map to
    ``Z / p^e``: unimodular moves concentrate the functional's values on one
    basis vector, which is then multiplied by the order of its image.
    """
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    for con in constraints:
        if len(con.functional) != n:
            raise UsageError("constraint functional has the wrong length")
        m = con.modulus
        if m == 1:
            continue
        vals = [sum(f * b for f, b in zip(con.functional, vec)) % m for vec in basis]
        # Euclid on the values, mirrored on the basis vectors
        while sum(1 for v in vals if v) > 1:
            i = min((k for k in range(n) if vals[k]), key=lambda k: vals[k])
            for k in range(n):
                if k != i and vals[k]:
                    q = vals[k] // vals[i]
                    basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
                    vals[k] = (vals[k] - q * vals[i]) % m
        for k in range(n):
            if vals[k]:
                order = m // math.gcd(vals[k], m)
                basis[k] = [order * a for a in basis[k]]
    return basis


def gcd_over_sublattice(values: Sequence[int], constraints: Sequence[SublatticeConstraint] = ()) -> int:
    """Positive generator of ``{values . x : x in sublattice}``."""
    values = [int(v) for v in values]
    g = 0
    for vec in sublattice_basis(constraints, len(values)):
        g = math.gcd(g, sum(v * x for v, x in zip(values, vec)))
    return g


def witness(values: Sequence[int], constraints: Sequence[SublatticeConstraint], p: int) -> list[int]:
    """A sublattice vector on which ``values . x`` has minimal p-adic valuation."""
    basis = sublattice_basis(constraints, len(values))
    return min(basis, key=lambda vec: valuation(p, sum(int(v) * x for v, x in zip(values, vec))))


def residue_search_min_valuation(values: Sequence[int], constraints: Sequence[SublatticeConstraint],
                                 p: int, depth: int) -> int:
    """Minimal ``nu_p(values . x)`` over the sublattice, by exhaustive search mod ``p^depth``.

    Constraints at ``p`` and the values are first divided by their p-content.
    The answer is exact when it is below ``content(values) + depth``;
    otherwise ``content(values) + depth`` is returned, meaning "at least".
    Constraints at other primes do not affect p-adic valuations and are ignored.
    """
    n = len(values)
    v_content = min(valuation(p, v) for v in values)
    if v_content == math.inf:
        return math.inf
    reduced = []
    for con in constraints:
        if con.prime != p:
            continue
        c = min(valuation(p, f) for f in con.functional)
        if c == math.inf:
            continue
        e = con.min_valuation - c
        if e > 0:
            reduced.append(([f // p ** c for f in con.functional], e))
    if any(e > depth for _, e in reduced):
        raise UsageError("search depth is smaller than a constraint's reduced valuation")
    mod = p ** depth
    vals = np.array([(int(v) // p ** v_content) % mod for v in values], dtype=np.int64)
    cons = [(np.array([f % mod for f in func], dtype=np.int64), p ** e) for func, e in reduced]

    tail = min(n, 3)
    grid = np.stack(np.meshgrid(*([np.arange(mod, dtype=np.int64)] * tail), indexing="ij"), -1).reshape(-1, tail)
    best = depth
    for head in itertools.product(range(mod), repeat=n - tail):
        xs = np.concatenate([np.tile(np.array(head, dtype=np.int64), (len(grid), 1)), grid], axis=1) \
            if head else grid
        ok = np.ones(len(xs), dtype=bool)
        for func, m in cons:
            ok &= (xs @ func) % m == 0
        s = (xs[ok] @ vals) % mod
        for w in range(best):
            if np.any(s % p ** (w + 1) != 0):
                best = w
                break
        if best == 0:
            break
    return v_content + best


# -- characteristic-number vectors on the basis ----------------------------------


def values_on_basis(functional) -> tuple[Fraction, ...]:
    return tuple(functional(b) for b in basis_numbers())


def p2_cubed(nums: PontryaginNumbers) -> Fraction:
    return nums[(2, 2, 2)]


def sig(nums: PontryaginNumbers) -> Fraction:
    return signature(nums)


def sig_wedge2(nums: PontryaginNumbers) -> Fraction:
    return twisted_sig(nums, exterior_power(2, ch_tangent(24)))


def modified_signature(nums: PontryaginNumbers) -> Fraction:
    """``Sig(M) - <nu_12 . nu_12, [M]>`` with the Hopkins-Singer integral Wu class.

    On String classes ``nu_12 = 5 p_3`` so this is ``Sig - 25 p_3^2``.
    """
    _require_string(nums)
    nu12 = wu_spin_class(3)[3].with_cap(6)
    return signature(nums) - pair(nu12 * nu12, nums)


def _int_vector(vals: Sequence[Fraction]) -> list[int]:
    if any(Fraction(v).denominator != 1 for v in vals):
        raise ConsistencyError(f"expected integral values, got {vals}")
    return [int(v) for v in vals]


@dataclass
class TheoremCheck:
    theorem: str
    name: str
    ok: bool
    detail: str
    witness: list[int] | None = None


THEOREMS = ("sig32", "modsig", "wedge2", "compound")
# numeric aliases accepted on the command line
THEOREM_ALIASES = {"1.2": "sig32", "1.4": "modsig", "1.5": "wedge2"}


def _compound_exponent(p: int, n_exp: int) -> int:
    """``nu_p`` of the truncated quotient ``(n^3 / (2^2 3^5 5^3 41))`` for ``n = p^n_exp``."""
    denom = {2: 2, 3: 5, 5: 3, 41: 1}.get(p, 0)
    return max(3 * n_exp - denom, 0)


def basis_value_vectors() -> dict[str, list[int]]:
    """Integer value vectors on M1..M4 of the functionals used by the divisibility checks."""
    return {
        "p2^3": _int_vector(values_on_basis(p2_cubed)),
        "sig": _int_vector(values_on_basis(sig)),
        "modified_sig": _int_vector(values_on_basis(modified_signature)),
        "sig_wedge2": _int_vector(values_on_basis(sig_wedge2)),
    }


def divisibility_theorems(theorems: Sequence[str] = THEOREMS) -> list[TheoremCheck]:
    """Gcd/valuation checks over the lattice.

    Divisibility of the class ``p_2`` by ``n`` is modelled by the number-level
    consequence ``nu_p(p_2^3) >= 3 nu_p(n)``.  A failing check carries a
    witness vector on which the claimed valuation is not reached.
    """
    theorems = [THEOREM_ALIASES.get(t, t) for t in theorems]
    for t in theorems:
        if t not in THEOREMS:
            raise UsageError(f"unknown theorem {t!r}; expected one of {', '.join(THEOREMS)}")
    vecs = basis_value_vectors()
    p2c, sigs, msig, sw2 = vecs["p2^3"], vecs["sig"], vecs["modified_sig"], vecs["sig_wedge2"]
    out = []

    if "sig32" in theorems:
        g = gcd_over_sublattice(sigs)
        out.append(TheoremCheck("sig32", "unconstrained", g == 8, f"gcd of Sig = {g}"))
        con = [SublatticeConstraint(p2c, 2, 6)]
        g = gcd_over_sublattice(sigs, con)
        out.append(TheoremCheck("sig32", "4 | p2", g == 32, f"gcd of Sig over {{nu_2(p2^3) >= 6}} = {g}",
                                witness(sigs, con, 2)))

    if "modsig" in theorems:
        g = gcd_over_sublattice(msig)
        m67 = modified_signature(CobordismVector((0, 0, 67, 3)).numbers())
        out.append(TheoremCheck("modsig", "modified signature", g == 32 and m67 == 32,
                                f"gcd of Sig(-, nu) = {g}; Sig(67M3+3M4, nu) = {m67}"))

    if "wedge2" in theorems:
        g = gcd_over_sublattice(sw2)
        out.append(TheoremCheck("wedge2", "unconstrained", g == 96, f"gcd of Sig(-, L^2) = {g}"))
        for k in (1, 2):
            con = [SublatticeConstraint(p2c, 3, 3 * (k + 1))]
            by_basis = valuation(3, gcd_over_sublattice(sw2, con))
            depth = max(3 * (k + 1) - min(valuation(3, f) for f in p2c),
                        3 * k - 1 - min(valuation(3, v) for v in sw2))
            by_search = residue_search_min_valuation(sw2, con, 3, depth)
            if by_search < min(valuation(3, v) for v in sw2) + depth and by_search != by_basis:
                raise ConsistencyError("lattice basis and residue search disagree")
            out.append(TheoremCheck("wedge2", f"k={k}", by_search >= 3 * k - 1,
                                    f"min nu_3 Sig(-, L^2) over {{nu_3(p2^3) >= {3 * (k + 1)}}} = "
                                    f"{by_basis} (residue search mod 3^{depth}: {by_search}); "
                                    f"claimed >= {3 * k - 1}",
                                    witness(sw2, con, 3)))

    if "compound" in theorems:
        for p in (2, 3, 5, 41):
            con = [SublatticeConstraint(p2c, p, 3)]
            need = _compound_exponent(p, 1)
            got = valuation(p, gcd_over_sublattice(sigs, con))
            out.append(TheoremCheck("compound", f"n={p}", got >= need,
                                    f"min nu_{p} Sig over {{nu_{p}(p2^3) >= 3}} = {got}; claimed >= {need}",
                                    witness(sigs, con, p)))
    return out


# -- sweep ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    i: int
    j: int
    k: int
    rank: Fraction
    ahat: Fraction
    sig: Fraction
    modulus: int

    @property
    def integral(self) -> bool:
        return self.ahat.denominator == 1 and self.sig.denominator == 1

    @property
    def ahat_mod(self) -> int | None:
        return int(self.ahat) % self.modulus if self.ahat.denominator == 1 else None

    @property
    def sig_mod(self) -> int | None:
        return int(self.sig) % self.modulus if self.sig.denominator == 1 else None

    @property
    def passes(self) -> bool:
        return self.integral and self.ahat_mod == 0 and self.sig_mod == 0


@dataclass
class SweepTable:
    max_total: int
    modulus: int
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.passes for r in self.rows)


def twist_triples(max_total: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for total in range(max_total + 1)
            for i in range(total + 1) for j in range(total - i + 1)
            for k in [total - i - j]]


def conjecture_sweep(max_total: int = 5, modulus: int = 24,
                     nums: PontryaginNumbers | None = None) -> SweepTable:
    if max_total < 0:
        raise UsageError("max_total must be non-negative")
    if modulus < 1:
        raise UsageError("modulus must be positive")
    nums = nums or basis_numbers()[0]
    table = SweepTable(max_total, modulus)
    for i, j, k in twist_triples(max_total):
        ch = twist_character(i, j, k)
        table.rows.append(SweepRow(i, j, k, ch.rank, twisted_ahat(nums, ch), twisted_sig(nums, ch), modulus))
    return table
