"""Rational cohomology-ring models of closed manifolds.

A :class:`RingModel` is given on an additive basis of ``H^*(X; Q)``: every
basis element has a label and an even degree, products of basis elements are
stored as structure constants, and the fundamental class is a functional on
top-degree elements.  The total Pontryagin class is kept as one ring element
per degree ``4k``.

Only even-degree cohomology ever occurs here, so the rings are commutative
and no Koszul signs are needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from . import linalg
from .errors import ConsistencyError, ManifestError, NotRealizableError, UsageError
from .genus import l_class
from .graded import (GradedPoly, PontryaginNumbers, bernoulli, format_fraction, pair,
                     partitions, to_fraction)

UNIT = "1"


class Element:
    """An element of a :class:`RingModel`, as a sparse combination of basis labels."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingModel, coeffs: Mapping[str, object] | None = None):
        self.ring = ring
        clean: dict[str, Fraction] = {}
        for label, c in (coeffs or {}).items():
            if label not in ring.degrees:
                raise UsageError(f"{label!r} is not a basis element of {ring.name}")
            c = to_fraction(c)
            if c:
                clean[label] = clean.get(label, Fraction(0)) + c
        self.coeffs = {k: v for k, v in clean.items() if v}

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise UsageError("elements of different rings")
            return other
        return self.ring.one() * to_fraction(other)

    def __add__(self, other) -> Element:
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Element(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return self * -1

    def __sub__(self, other) -> Element:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Element:
        return self._coerce(other) - self

    def __mul__(self, other) -> Element:
        if not isinstance(other, Element):
            c = to_fraction(other)
            return Element(self.ring, {k: c * v for k, v in self.coeffs.items()})
        other = self._coerce(other)
        out: dict[str, Fraction] = {}
        mult = self.ring.basis_product
        for a, va in self.coeffs.items():
            for b, vb in other.coeffs.items():
                for lab, c in mult(a, b).items():
                    out[lab] = out.get(lab, Fraction(0)) + va * vb * c
        return Element(self.ring, out)

    def __rmul__(self, other) -> Element:
        return self * other

    def __truediv__(self, other) -> Element:
        return self * (1 / to_fraction(other))

    def __pow__(self, n: int) -> Element:
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def degree_part(self, d: int) -> Element:
        return Element(self.ring, {k: v for k, v in self.coeffs.items() if self.ring.degrees[k] == d})

    def is_zero(self) -> bool:
        return not self.coeffs

    def integrate(self) -> Fraction:
        """Pair with the fundamental class."""
        return sum((v * self.ring.fundamental.get(k, Fraction(0)) for k, v in self.coeffs.items()),
                   Fraction(0))

    def to_json(self) -> dict[str, str]:
        order = self.ring.labels
        return {k: format_fraction(self.coeffs[k]) for k in order if k in self.coeffs}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in self.ring.labels:
            if k in self.coeffs:
                c = self.coeffs[k]
                if k == UNIT:
                    parts.append(format_fraction(c))
                elif abs(c) == 1:
                    parts.append(k if c > 0 else f"-{k}")
                else:
                    parts.append(f"{format_fraction(c)}*{k}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(eq=False)
class RingModel:
    name: str
    dim: int
    degrees: dict[str, int]
    products: dict[tuple[str, str], dict[str, Fraction]]
    fundamental: dict[str, Fraction]
    pontryagin: tuple[dict[str, Fraction], ...]

    def __post_init__(self):
        if self.dim % 2 or self.dim < 0:
            raise UsageError("model dimension must be even and non-negative")
        if self.degrees.get(UNIT) != 0:
            raise UsageError("basis must contain the unit '1' in degree 0")
        used = {lab for (a, b), prod in self.products.items() for lab in (a, b, *prod)}
        used |= set(self.fundamental) | {lab for piece in self.pontryagin for lab in piece}
        unknown = sorted(used - set(self.degrees))
        if unknown:
            raise UsageError(f"labels {unknown} are not in the basis")
        for (a, b), prod in list(self.products.items()):
            for lab in prod:
                if self.degrees[lab] != self.degrees[a] + self.degrees[b]:
                    raise UsageError(f"product {a}*{b} -> {lab} is not degree-additive")
            self.products.setdefault((b, a), prod)
            if self.products[(b, a)] != prod:
                raise UsageError(f"products {a}*{b} and {b}*{a} disagree")
        for lab, v in self.fundamental.items():
            if v and self.degrees[lab] != self.dim:
                raise UsageError(f"fundamental class is nonzero on {lab!r} outside top degree")
        if len(self.pontryagin) != self.dim // 4 + 1:
            raise UsageError("need one Pontryagin piece per degree 0, 4, ..., dim")
        if {k: v for k, v in self.pontryagin[0].items() if v} != {UNIT: 1}:
            raise UsageError("Pontryagin class must start with 1")
        for k, piece in enumerate(self.pontryagin):
            for lab in piece:
                if self.degrees[lab] != 4 * k:
                    raise UsageError(f"p{k} has a term {lab!r} of degree {self.degrees[lab]}")

    @property
    def labels(self) -> list[str]:
        return list(self.degrees)

    def basis_product(self, a: str, b: str) -> Mapping[str, Fraction]:
        if a == UNIT:
            return {b: Fraction(1)}
        if b == UNIT:
            return {a: Fraction(1)}
        return self.products.get((a, b), {})

    def one(self) -> Element:
        return Element(self, {UNIT: 1})

    def zero(self) -> Element:
        return Element(self)

    def gen(self, label: str) -> Element:
        return Element(self, {label: 1})

    def element(self, coeffs: Mapping[str, object]) -> Element:
        return Element(self, coeffs)

    def p(self, k: int) -> Element:
        if k < len(self.pontryagin):
            return Element(self, self.pontryagin[k])
        return self.zero()

    def total_pontryagin(self) -> Element:
        return sum((self.p(k) for k in range(1, len(self.pontryagin))), self.one())

    def check_associative(self) -> bool:
        gens = [self.gen(k) for k in self.labels]
        return all((a * b) * c == a * (b * c) for a in gens for b in gens for c in gens)

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        order = {k: i for i, k in enumerate(self.labels)}
        prods = []
        for (a, b), prod in sorted(self.products.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
            if order[a] <= order[b] and prod:
                prods.append([a, b, {k: format_fraction(v) for k, v in prod.items()}])
        return {
            "kind": "ring_model",
            "name": self.name,
            "dim": self.dim,
            "basis": [[k, d] for k, d in self.degrees.items()],
            "products": prods,
            "fundamental": {k: format_fraction(v) for k, v in self.fundamental.items() if v},
            "pontryagin": {str(k): Element(self, piece).to_json()
                           for k, piece in enumerate(self.pontryagin) if k and piece},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RingModel:
        try:
            dim = int(data["dim"])
            degrees = {str(lab): int(deg) for lab, deg in data["basis"]}
            products = {(a, b): {k: to_fraction(v) for k, v in prod.items()}
                        for a, b, prod in data.get("products", [])}
            fundamental = {k: to_fraction(v) for k, v in data.get("fundamental", {}).items()}
            pont = [dict() for _ in range(dim // 4 + 1)]
            pont[0] = {UNIT: Fraction(1)}
            for k, piece in data.get("pontryagin", {}).items():
                pont[int(k)] = {lab: to_fraction(v) for lab, v in piece.items()}
            return cls(str(data.get("name", "X")), dim, degrees, products, fundamental, tuple(pont))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ManifestError(f"malformed ring model manifest: {exc}") from exc


# -- constructions -------------------------------------------------------------


def point() -> RingModel:
    return RingModel("pt", 0, {UNIT: 0}, {}, {UNIT: Fraction(1)}, ({UNIT: Fraction(1)},))


def _power_label(gen: str, k: int) -> str:
    return UNIT if k == 0 else gen if k == 1 else f"{gen}^{k}"


def truncated_polynomial_model(name: str, gen: str, degree: int, max_power: int,
                               pont: Sequence[Mapping[int, object]] = (),
                               fundamental: object = 1) -> RingModel:
    """``Q[g] / g^{max_power+1}`` with ``deg g = degree``.

    ``pont[k]`` maps a power of ``g`` to its coefficient in ``p_k``; the
    fundamental class takes value ``fundamental`` on the top power.
    """
    dim = degree * max_power
    degrees = {_power_label(gen, k): degree * k for k in range(max_power + 1)}
    products = {}
    for i in range(1, max_power + 1):
        for j in range(1, max_power + 1):
            if i + j <= max_power:
                products[(_power_label(gen, i), _power_label(gen, j))] = {_power_label(gen, i + j): Fraction(1)}
    pieces = [dict() for _ in range(dim // 4 + 1)]
    pieces[0] = {UNIT: Fraction(1)}
    for k, terms in enumerate(pont):
        if k == 0:
            continue
        pieces[k] = {_power_label(gen, e): to_fraction(c) for e, c in terms.items() if c}
    top = {_power_label(gen, max_power): to_fraction(fundamental)} if max_power else {UNIT: to_fraction(fundamental)}
    return RingModel(name, dim, degrees, products, top, tuple(pieces))


def kervaire_milnor_top_class(n: int) -> Fraction:
    """``denom(B_{2n} / 4n) * a_n * (2n-1)!`` with ``a_n = 2`` for odd n, 1 for even n."""
    if not 1 <= n <= 6:
        raise UsageError(f"Kervaire-Milnor generator index {n} outside 1..6")
    a_n = 2 if n % 2 else 1
    return Fraction((bernoulli(2 * n) / (4 * n)).denominator * a_n * math.factorial(2 * n - 1))


def kervaire_milnor_model(n: int) -> RingModel:
    """Almost parallelizable ``M_0^{4n}``: only the top Pontryagin class is nonzero."""
    top = kervaire_milnor_top_class(n)
    pont = [dict() for _ in range(n + 1)]
    pont[n] = {1: top}
    return truncated_polynomial_model(f"M0_{4 * n}", "x", 4 * n, 1, pont)


def op2_model() -> RingModel:
    """Cayley plane: ``Q[u]/u^3``, ``deg u = 8``, ``p = 1 + 6u + 39u^2``."""
    return truncated_polynomial_model("OP2", "u", 8, 2, [{}, {}, {1: 6}, {}, {2: 39}])


def _atoms(label: str) -> list[str]:
    return [] if label == UNIT else label.split("*")


def _atom_name(atom: str) -> str:
    return atom.split("^")[0]


def _rename(label: str, suffix: str) -> str:
    if label == UNIT:
        return label
    out = []
    for atom in label.split("*"):
        name, _, power = atom.partition("^")
        out.append(name + suffix + ("^" + power if power else ""))
    return "*".join(out)


def _join(a: str, b: str) -> str:
    atoms = _atoms(a) + _atoms(b)
    return "*".join(atoms) if atoms else UNIT


def product_model(x: RingModel, y: RingModel, name: str | None = None) -> RingModel:
    """Kunneth product ``X x Y`` with the Whitney product of Pontryagin classes."""
    xnames = {_atom_name(a) for lab in x.labels for a in _atoms(lab)}
    suffix = ""
    while {_atom_name(a) + suffix for lab in y.labels for a in _atoms(lab)} & xnames:
        suffix += "'"
    ylab = {lab: _rename(lab, suffix) for lab in y.labels}

    pairs = {(a, b): _join(a, ylab[b]) for a in x.labels for b in y.labels}
    degrees = {pairs[(a, b)]: x.degrees[a] + y.degrees[b] for a in x.labels for b in y.labels}
    if len(degrees) != len(pairs):
        raise ConsistencyError("label collision while forming product basis")

    products: dict[tuple[str, str], dict[str, Fraction]] = {}
    for (a1, b1), l1 in pairs.items():
        for (a2, b2), l2 in pairs.items():
            if l1 == UNIT or l2 == UNIT:
                continue
            pa = x.basis_product(a1, a2)
            pb = y.basis_product(b1, b2)
            prod = {}
            for ka, va in pa.items():
                for kb, vb in pb.items():
                    lab = pairs[(ka, kb)]
                    prod[lab] = prod.get(lab, Fraction(0)) + va * vb
            prod = {k: v for k, v in prod.items() if v}
            if prod:
                products[(l1, l2)] = prod

    fundamental = {}
    for (a, b), lab in pairs.items():
        v = x.fundamental.get(a, Fraction(0)) * y.fundamental.get(b, Fraction(0))
        if v:
            fundamental[lab] = v

    dim = x.dim + y.dim
    pieces = [dict() for _ in range(dim // 4 + 1)]
    for i, pi in enumerate(x.pontryagin):
        for j, pj in enumerate(y.pontryagin):
            target = pieces[i + j]
            for a, va in pi.items():
                for b, vb in pj.items():
                    lab = pairs[(a, b)]
                    target[lab] = target.get(lab, Fraction(0)) + va * vb
    pieces = [{k: v for k, v in piece.items() if v} for piece in pieces]
    return RingModel(name or f"{x.name}x{y.name}", dim, degrees, products, fundamental, tuple(pieces))


def embed_left(product: RingModel, x: RingModel, elem: Element) -> Element:
    """Image of ``elem`` under ``H^*(X) -> H^*(X x Y)``, ``a -> a (x) 1``."""
    return Element(product, {lab: c for lab, c in elem.coeffs.items()})


def embed_right(product: RingModel, x: RingModel, y: RingModel, elem: Element) -> Element:
    xnames = {_atom_name(a) for lab in x.labels for a in _atoms(lab)}
    suffix = ""
    while {_atom_name(a) + suffix for lab in y.labels for a in _atoms(lab)} & xnames:
        suffix += "'"
    return Element(product, {_rename(lab, suffix): c for lab, c in elem.coeffs.items()})


def scale_top_class(x: RingModel, c, name: str | None = None) -> RingModel:
    """A "fake manifold": scale the single nonzero Pontryagin piece by ``c``."""
    nonzero = [k for k, piece in enumerate(x.pontryagin) if k and piece]
    if len(nonzero) != 1:
        raise UsageError(f"{x.name} has {len(nonzero)} nonzero Pontryagin pieces; scaling needs exactly one")
    c = to_fraction(c)
    pieces = list(x.pontryagin)
    k = nonzero[0]
    pieces[k] = {lab: v * c for lab, v in pieces[k].items()}
    return RingModel(name or f"{format_fraction(c)}{x.name}", x.dim, dict(x.degrees),
                     dict(x.products), dict(x.fundamental), tuple(pieces))


def numbers(x: RingModel) -> PontryaginNumbers:
    if x.dim % 4:
        raise UsageError(f"{x.name} has dimension {x.dim}, not a multiple of 4")
    n = x.dim // 4
    ps = [x.p(k) for k in range(n + 1)]
    out = {}
    for part in partitions(n):
        elem = x.one()
        for i in part:
            elem = elem * ps[i]
        out[part] = elem.integrate()
    return PontryaginNumbers(x.dim, out)


def signature(x: RingModel | PontryaginNumbers) -> Fraction:
    """Signature by the Hirzebruch signature theorem."""
    nums = numbers(x) if isinstance(x, RingModel) else x
    if nums.dim == 0:
        return Fraction(1) if isinstance(x, RingModel) and x.fundamental.get(UNIT) else Fraction(0)
    return pair(l_class(nums.dim // 4).top, nums)


def evaluate_in(poly: GradedPoly, x: RingModel) -> Element:
    """Evaluate a polynomial in Pontryagin classes on the model's Pontryagin classes."""
    return poly.evaluate(x.p, x.one())


# -- Wall's 3-connected 8-manifolds --------------------------------------------


@dataclass(frozen=True)
class WallPair:
    """Intersection form ``A`` and first Spin class ``b`` of a 3-connected 8-manifold."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(int(v) for v in row) for row in self.A))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))

    @property
    def rank(self) -> int:
        return len(self.b)

    def bAb(self) -> int:
        return sum(self.b[i] * self.A[i][j] * self.b[j] for i in range(self.rank) for j in range(self.rank))

    def form_signature(self) -> int:
        return linalg.signature(self.A)

    def validate(self) -> None:
        n = self.rank
        if len(self.A) != n or any(len(row) != n for row in self.A):
            raise NotRealizableError("matrix size does not match length of b")
        if any(self.A[i][j] != self.A[j][i] for i in range(n) for j in range(n)):
            raise NotRealizableError("intersection matrix is not symmetric")
        if abs(linalg.det(self.A)) != 1:
            raise NotRealizableError("intersection matrix is not unimodular")
        bad = [i for i in range(n) if (self.A[i][i] - self.b[i]) % 2]
        if bad:
            raise NotRealizableError(f"parity condition a_ii = b_i mod 2 fails at indices {bad}")
        if (self.form_signature() - self.bAb()) % 224:
            raise NotRealizableError(
                f"Sig(A) = {self.form_signature()} is not congruent to bAb^T = {self.bAb()} mod 224")


HYPERBOLIC = ((0, 1), (1, 0))
E8 = (
    (2, 1, 0, 0, 0, 0, 0, 0),
    (1, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (0, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 1),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 0),
    (0, 0, 0, 0, 1, 0, 0, 2),
)


def block_diag(*blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for blk in blocks:
        for row in blk:
            rows.append((0,) * offset + tuple(row) + (0,) * (n - offset - len(row)))
        offset += len(blk)
    return tuple(rows)


def m4_base_pair() -> WallPair:
    return WallPair(block_diag(HYPERBOLIC, E8), (2, 2) + (0,) * 8)


def wall_model(wp: WallPair, labels: Sequence[str] | None = None, name: str = "N8") -> RingModel:
    """Rational model of the Wall manifold realising ``(A, b)``.

    ``p_1 = 2 q_1 = 2 sum b_i x_i``; ``p_2`` is the multiple of the top class
    fixed by the signature theorem ``<(7 p_2 - p_1^2) / 45, [N]> = Sig(A)``.
    """
    wp.validate()
    n = wp.rank
    labels = list(labels) if labels else [f"x{i + 1}" for i in range(n)]
    if len(labels) != n:
        raise UsageError("need one label per basis element of H^4")
    top = "top"
    degrees = {UNIT: 0, **{lab: 4 for lab in labels}, top: 8}
    products = {}
    for i in range(n):
        for j in range(n):
            if wp.A[i][j]:
                products[(labels[i], labels[j])] = {top: Fraction(wp.A[i][j])}
    p1_squared = 4 * wp.bAb()
    p2 = (45 * wp.form_signature() + p1_squared) / Fraction(7)
    pont = (
        {UNIT: Fraction(1)},
        {labels[i]: Fraction(2 * wp.b[i]) for i in range(n) if wp.b[i]},
        {top: p2} if p2 else {},
    )
    return RingModel(name, 8, degrees, products, {top: Fraction(1)}, pont)


@lru_cache(maxsize=None)
def n8_model() -> RingModel:
    return wall_model(m4_base_pair(), ["a1", "a2"] + [f"b{i}" for i in range(1, 9)], "N8")


# -- M1 and M2 from the Kervaire-Milnor basis ---------------------------------


def b_basis_models() -> dict[str, RingModel]:
    m8 = kervaire_milnor_model(2)
    half12 = scale_top_class(kervaire_milnor_model(3), Fraction(1, 2), "half_M0_12")
    return {
        "B1": product_model(product_model(m8, m8), m8, "B1"),
        "B2": product_model(half12, half12, "B2"),
        "B3": product_model(m8, kervaire_milnor_model(4), "B3"),
        "B4": scale_top_class(kervaire_milnor_model(6), Fraction(1, 2), "B4"),
    }


@lru_cache(maxsize=None)
def m1_m2_numbers() -> tuple[PontryaginNumbers, PontryaginNumbers]:
    models = b_basis_models()
    b1, b2 = numbers(models["B1"]), numbers(models["B2"])
    m1 = (b1 + b2) / 72
    m2 = (b1 * -41 + b2 * 31) / 72
    for label, v in (("M1", m1), ("M2", m2)):
        if not v.is_integral():
            raise ConsistencyError(f"{label} has non-integral Pontryagin numbers")
    return m1, m2


@lru_cache(maxsize=None)
def m3_model() -> RingModel:
    return product_model(kervaire_milnor_model(2), op2_model(), "M3")


# -- manifests ------------------------------------------------------------------

DATA_DIR = Path(__file__).with_name("data")


def numbers_manifest(name: str, nums: PontryaginNumbers) -> dict:
    return {"kind": "pontryagin_numbers", "name": name, **nums.to_json()}


def load_manifest(source: str | Path | Mapping) -> RingModel | PontryaginNumbers:
    """Read a ring-model or number-vector manifest from a path or parsed JSON."""
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ManifestError(f"cannot read manifest {source}: {exc}") from exc
    if not isinstance(data, Mapping):
        raise ManifestError("manifest must be a JSON object")
    kind = data.get("kind", "ring_model" if "basis" in data else "pontryagin_numbers")
    try:
        if kind == "ring_model":
            return RingModel.from_json(data)
        if kind == "pontryagin_numbers":
            return PontryaginNumbers.from_json(data)
    except UsageError as exc:
        raise ManifestError(str(exc)) from exc
    raise ManifestError(f"unknown manifest kind {kind!r}")


def as_numbers(x: RingModel | PontryaginNumbers) -> PontryaginNumbers:
    return numbers(x) if isinstance(x, RingModel) else x
