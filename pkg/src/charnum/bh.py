"""Borel-Hirzebruch computation of the F4 / Spin(9) Cayley-plane bundle.

Pipeline:

1. :func:`fiber_pontryagin` -- the Pontryagin class of the bundle along the
   fibre of ``G/H -> BH -> BG``, from the roots of ``G`` complementary to
   those of ``H``: ``prod_j (1 + b_j^2)`` rewritten in ``p_1, ..., p_n``.
2. :func:`spin_to_pont` / :func:`pont_to_spin` -- universal Spin classes.
3. :func:`pullback_solver` -- images of ``p_3, p_4`` forced by the vanishing of
   the F4-invariant generators in degrees 12 and 16.
4. :func:`m4_model` -- the 24-dimensional String manifold ``M_4``, total space
   of the Cayley-plane bundle over the Wall manifold ``N^8``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from . import linalg
from .errors import ConsistencyError, ManifestError, UsageError
from .graded import (DEFAULT_CAP, GradedPoly, RootPoly, partitions, symmetric_reduce,
                     to_fraction)
from .manifolds import (Element, RingModel, embed_left, embed_right, n8_model, numbers,
                        product_model, signature, truncated_polynomial_model, op2_model)


@dataclass(frozen=True)
class RootSystemData:
    """Complementary roots of ``G`` relative to ``H``, one per ``+-`` pair, in the torus basis."""

    n_torus: int
    complementary_roots: tuple[tuple[Fraction, ...], ...]
    name: str = ""

    def __post_init__(self):
        roots = tuple(tuple(to_fraction(c) for c in r) for r in self.complementary_roots)
        for r in roots:
            if len(r) != self.n_torus:
                raise UsageError(f"root {r} does not have {self.n_torus} coordinates")
            if not any(r):
                raise UsageError("roots must be nonzero")
        object.__setattr__(self, "complementary_roots", roots)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.n_torus))

    def root_polys(self, cap: int) -> list[RootPoly]:
        return [RootPoly.linear(self.variables, r, 2 * cap) for r in self.complementary_roots]

    def to_json(self) -> dict:
        return {"name": self.name, "n_torus": self.n_torus,
                "roots": [[str(c) for c in r] for r in self.complementary_roots]}

    @classmethod
    def from_json(cls, data: Mapping) -> RootSystemData:
        try:
            return cls(int(data["n_torus"]), tuple(tuple(r) for r in data["roots"]), str(data.get("name", "")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"malformed root data: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> RootSystemData:
        try:
            return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            raise ManifestError(f"cannot read root data {path}: {exc}") from exc


def f4_spin9_roots() -> RootSystemData:
    """The eight ``r_i = (x_1 +- x_2 +- x_3 +- x_4) / 2``."""
    half = Fraction(1, 2)
    roots = tuple((half, s2 * half, s3 * half, s4 * half)
                  for s2, s3, s4 in itertools.product((1, -1), repeat=3))
    return RootSystemData(4, roots, "F4/Spin(9)")


def fiber_pontryagin(rsd: RootSystemData, cap: int = DEFAULT_CAP) -> GradedPoly:
    prod = RootPoly.constant(rsd.variables, 1, 2 * cap)
    for r in rsd.root_polys(cap):
        prod = prod * (1 + r * r)
    return symmetric_reduce(prod, rsd.n_torus)


# -- Spin classes ----------------------------------------------------------------

SPIN_CAP = 4


def _q(i: int, cap: int = SPIN_CAP) -> GradedPoly:
    return GradedPoly.gen(i, cap, "q")


def _p(i: int, cap: int = SPIN_CAP) -> GradedPoly:
    return GradedPoly.gen(i, cap, "p")


def pont_in_spin(cap: int = SPIN_CAP) -> dict[int, GradedPoly]:
    """``p_1 = 2q_1, p_2 = 2q_2 + q_1^2, p_3 = q_3, p_4 = 2q_4 + q_2^2 - 2q_1q_3``."""
    q = lambda i: _q(i, cap)  # noqa: E731
    return {1: 2 * q(1), 2: 2 * q(2) + q(1) ** 2, 3: q(3), 4: 2 * q(4) + q(2) ** 2 - 2 * q(1) * q(3)}


def spin_in_pont(cap: int = SPIN_CAP) -> dict[int, GradedPoly]:
    """Inverse of :func:`pont_in_spin`, solved one weight at a time."""
    p = lambda i: _p(i, cap)  # noqa: E731
    q1 = p(1) / 2
    q2 = (p(2) - q1 ** 2) / 2
    q3 = p(3)
    q4 = (p(4) - q2 ** 2 + 2 * q1 * q3) / 2
    return {1: q1, 2: q2, 3: q3, 4: q4}


def _check_spin_weight(poly: GradedPoly) -> None:
    if poly.max_weight() > SPIN_CAP:
        raise UsageError("Spin/Pontryagin conversion is only defined through weight 4")


def spin_to_pont(qexpr: GradedPoly) -> GradedPoly:
    """Rewrite a polynomial in ``q_i`` as a polynomial in ``p_i``."""
    if qexpr.symbol != "q":
        raise UsageError("expected a polynomial in Spin classes q_i")
    _check_spin_weight(qexpr)
    images = spin_in_pont(qexpr.cap) if qexpr.cap >= SPIN_CAP else \
        {i: v.with_cap(qexpr.cap) for i, v in spin_in_pont().items()}
    return qexpr.evaluate(images, GradedPoly.one(qexpr.cap, "p"))


def pont_to_spin(pexpr: GradedPoly) -> GradedPoly:
    """Rewrite a polynomial in ``p_i`` as a polynomial in ``q_i``."""
    if pexpr.symbol != "p":
        raise UsageError("expected a polynomial in Pontryagin classes p_i")
    _check_spin_weight(pexpr)
    images = pont_in_spin(pexpr.cap) if pexpr.cap >= SPIN_CAP else \
        {i: v.with_cap(pexpr.cap) for i, v in pont_in_spin().items()}
    return pexpr.evaluate(images, GradedPoly.one(pexpr.cap, "q"))


# -- F4 invariants ---------------------------------------------------------------


def f4_invariant_generators(cap: int = SPIN_CAP) -> dict[int, GradedPoly]:
    """Generators of the F4-invariants through weight 4, keyed by weight."""
    p = lambda i: _p(i, cap)  # noqa: E731
    return {1: p(1), 3: -6 * p(3) + p(1) * p(2), 4: 12 * p(4) + p(2) ** 2 - p(1) ** 2 * p(2) / 2}


def pullback_solver(img_p1: Element, img_p2: Element) -> tuple[Element, Element]:
    """Images of ``p_3, p_4`` making the weight-3 and weight-4 F4-invariants vanish."""
    img_p3 = img_p1 * img_p2 / 6
    img_p4 = (-(img_p2 * img_p2) + img_p1 * img_p1 * img_p2 / 2) / 12
    return img_p3, img_p4


def weyl_invariant_power_sums(rsd: RootSystemData | None = None, max_weight: int = SPIN_CAP) -> dict[int, GradedPoly]:
    """``I_{2k} = sum_i x_i^{2k} + sum_j r_j^{2k}`` in ``p_1..p_4``, for ``k <= max_weight``."""
    rsd = rsd or f4_spin9_roots()
    out = {}
    cap = max_weight
    xs = [RootPoly.linear(rsd.variables, [int(i == j) for j in range(rsd.n_torus)], 2 * cap)
          for i in range(rsd.n_torus)]
    rs = rsd.root_polys(cap)
    for k in range(1, max_weight + 1):
        total = RootPoly(rsd.variables, {}, 2 * cap)
        for v in xs + rs:
            total = total + v ** (2 * k)
        out[k] = symmetric_reduce(total, rsd.n_torus)
    return out


def _graded_span(gens: Mapping[int, GradedPoly], w: int) -> list[list[Fraction]]:
    """Coordinates (in the basis p_lambda, lambda |- w) of all monomials of weight w in ``gens``."""
    rows = []
    weights = sorted(gens)

    def monomials(remaining: int, start: int):
        if remaining == 0:
            yield ()
            return
        for idx in range(start, len(weights)):
            gw = weights[idx]
            if gw <= remaining:
                for rest in monomials(remaining - gw, idx):
                    yield (gw,) + rest

    basis = partitions(w)
    for mono in monomials(w, 0):
        poly = GradedPoly.one(next(iter(gens.values())).cap)
        for gw in mono:
            poly = poly * gens[gw]
        rows.append([poly.coefficient(b) for b in basis])
    return rows


@dataclass
class WeylReport:
    invariants: dict[int, GradedPoly]
    dims: dict[int, tuple[int, int, int]] = field(default_factory=dict)  # (I-span, generator span, joint)
    ok: bool = True
    failures: list[str] = field(default_factory=list)


def weyl_invariant_check(max_weight: int = SPIN_CAP) -> WeylReport:
    """Compare the graded spans of ``Q[I_2, I_6, I_8]`` and of the three p-generators."""
    inv = weyl_invariant_power_sums(max_weight=max_weight)
    i_gens = {k: inv[k] for k in (1, 3, 4) if k <= max_weight}
    p_gens = {k: v for k, v in f4_invariant_generators(max_weight).items() if k <= max_weight}
    report = WeylReport(inv)
    for w in range(1, max_weight + 1):
        a = _graded_span(i_gens, w)
        b = _graded_span(p_gens, w)
        ra, rb, rab = linalg.rank(a), linalg.rank(b), linalg.rank(a + b)
        report.dims[w] = (ra, rb, rab)
        if not (ra == rb == rab):
            report.ok = False
            report.failures.append(f"weight {w}: spans differ (dims {ra}, {rb}, joint {rab})")
    return report


# -- M4 ------------------------------------------------------------------------------


@dataclass
class M4Construction:
    """Everything produced while building ``M_4``; the checks refer to these fields."""

    model: RingModel
    base: RingModel
    q_images: dict[int, Element]
    p_images: dict[int, Element]
    fiber_class: GradedPoly
    unreduced: RingModel
    unreduced_total: Element


def _m4_ring(fiber_top_power: int) -> tuple[RingModel, RingModel, RingModel]:
    base = n8_model()
    if fiber_top_power == 2:
        fiber = op2_model()
    else:
        # same generator without the relation u^3 = 0, for termwise comparisons
        fiber = truncated_polynomial_model("OP2_free", "u", 8, fiber_top_power)
    return product_model(base, fiber, "M4" if fiber_top_power == 2 else "M4_free"), base, fiber


def _assemble(fiber_top_power: int, fiber_class: GradedPoly):
    ring, base, fiber = _m4_ring(fiber_top_power)
    a = lambda lab: embed_left(ring, base, base.gen(lab))  # noqa: E731
    u = embed_right(ring, base, fiber, fiber.gen("u"))
    a_sum = a("a1") + a("a2")
    q_img = {1: -a_sum, 2: 3 * u}
    p_img = {1: 2 * q_img[1], 2: 2 * q_img[2] + q_img[1] * q_img[1]}
    p_img[3], p_img[4] = pullback_solver(p_img[1], p_img[2])
    base_total = embed_left(ring, base, base.total_pontryagin())
    fiber_part = fiber_class.evaluate(lambda i: p_img.get(i, ring.zero()), ring.one())
    return ring, base, q_img, p_img, base_total * fiber_part


@lru_cache(maxsize=None)
def m4_construction() -> M4Construction:
    fiber_class = fiber_pontryagin(f4_spin9_roots(), DEFAULT_CAP)
    ring, base, q_img, p_img, total = _assemble(2, fiber_class)
    pieces = tuple(total.degree_part(4 * k).coeffs for k in range(ring.dim // 4 + 1))
    model = RingModel("M4", ring.dim, dict(ring.degrees), dict(ring.products),
                      dict(ring.fundamental), pieces)
    free_ring, _, _, _, free_total = _assemble(3, fiber_class)
    construction = M4Construction(model, base, q_img, p_img, fiber_class, free_ring, free_total)
    failures = m4_cross_checks(construction)
    if failures:
        raise ConsistencyError("M4 construction failed cross-checks: " + "; ".join(failures))
    return construction


def m4_model() -> RingModel:
    return m4_construction().model


def m4_cross_checks(c: M4Construction) -> list[str]:
    """Mandatory internal checks of the M4 pipeline; returns a list of failures."""
    failures = []
    m = c.model
    if not m.p(1).is_zero():
        failures.append(f"p1(M4) = {m.p(1)} is not zero")
    ring = c.q_images[1].ring
    # the F4-invariants of weight 3 and 4 must pull back to zero
    for w, gen in f4_invariant_generators().items():
        if w == 1:
            continue
        img = gen.evaluate(c.p_images, ring.one())
        if not img.is_zero():
            failures.append(f"weight-{w} invariant pulls back to {img}")
    # Spin-class images recovered from the p-images
    q_from_p = {i: poly.evaluate(c.p_images, ring.one()) for i, poly in spin_in_pont().items()}
    for i in (1, 2):
        if q_from_p[i] != c.q_images[i]:
            failures.append(f"q{i} image not recovered by the conversion formulas")
    sig = signature(m)
    if sig != 8:
        failures.append(f"L-genus of M4 is {sig}, expected 8")
    return failures


def spin_images(c: M4Construction | None = None) -> dict[int, Element]:
    """``f~*(q_i)`` for i = 1..4, obtained by converting the p-images back to Spin classes."""
    c = c or m4_construction()
    ring = c.q_images[1].ring
    return {i: poly.evaluate(c.p_images, ring.one()) for i, poly in spin_in_pont().items()}


def m4_numbers():
    return numbers(m4_model())


def sig_n8_times_op2() -> Fraction:
    """Multiplicativity of the signature in the bundle: ``Sig(N^8) * Sig(OP^2)``."""
    return signature(n8_model()) * signature(op2_model())
