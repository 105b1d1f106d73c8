"""Acceptance criteria 1-10.  Every comparison is exact; each test prints one PASS/FAIL line."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from charnum.bh import (f4_invariant_generators, f4_spin9_roots, fiber_pontryagin, m4_construction,
                        sig_n8_times_op2, spin_images)
from charnum.genus import ahat_class, l_class
from charnum.graded import (GradedPoly, PontryaginNumbers, RootPoly, exp_root, pair, partitions,
                            substitute_roots, symmetric_reduce)
from charnum.lattice import (CobordismVector, SublatticeConstraint, basis_numbers, basis_value_vectors,
                             conjecture_sweep, decompose, gcd_over_sublattice, kappa, kappa_data,
                             modified_signature, residue_search_min_valuation, valuation)
from charnum.manifolds import (kervaire_milnor_model, m1_m2_numbers, m3_model, n8_model, numbers, op2_model,
                               product_model, signature)
from charnum.qforms import delta, delta_bar, eisenstein_e4, eisenstein_e6, series_equal, witten_direct, witten_modular
from charnum.twist import ch_tangent, exterior_power, symmetric_power, twisted_ahat, twisted_sig


class Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.failures = number, title, []

    def expect(self, label, expected, got):
        if expected != got:
            self.failures.append(f"{label}: expected {expected}, got {got}")

    def check(self, label, ok):
        if not ok:
            self.failures.append(label)

    def finish(self, capsys):
        ok = not self.failures
        line = f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title}"
        if not ok:
            line += " -- " + "; ".join(self.failures)
        with capsys.disabled():
            print("\n" + line)
        assert ok, self.failures


def elem(e):
    return {k: v for k, v in e.coeffs.items()}


def test_criterion_01_kervaire_milnor_generators(capsys):
    c = Criterion(1, "Kervaire-Milnor generators")
    for n, top, sig in ((1, 48, 16), (2, 1440, 224), (3, 120960, 7936)):
        m = kervaire_milnor_model(n)
        c.expect(f"p{n}(M0^{4 * n})", top, m.p(n).integrate())
        c.expect(f"Sig(M0^{4 * n})", sig, signature(m))
    c.finish(capsys)


def test_criterion_02_m1_m2_numbers(capsys):
    c = Criterion(2, "Pontryagin numbers of M1 and M2")
    m1, m2 = m1_m2_numbers()
    expected = {
        "M1": (m1, {(2, 2, 2): 2 ** 13 * 3 ** 5 * 5 ** 3, (3, 3): 2 ** 10 * 3 ** 4 * 5 ** 2 * 7 ** 2,
                    (4, 2): 2 ** 12 * 3 ** 5 * 5 ** 3, (6,): 2 ** 9 * 3 ** 4 * 5 ** 2 * 89}),
        "M2": (m2, {(2, 2, 2): -(2 ** 13) * 3 ** 5 * 5 ** 3 * 41, (3, 3): 2 ** 10 * 3 ** 4 * 5 ** 2 * 7 ** 2 * 31,
                    (4, 2): -(2 ** 12) * 3 ** 5 * 5 ** 3 * 41, (6,): -(2 ** 9) * 3 ** 4 * 5 ** 2 * 11 ** 2}),
    }
    for name, (nums, ref) in expected.items():
        c.expect(name, PontryaginNumbers(24, ref), nums)
    c.expect("p6(M1)", 2 ** 9 * 3 ** 4 * 5 ** 2 * 89, m1[(6,)])
    c.finish(capsys)


def test_criterion_03_m3(capsys):
    c = Criterion(3, "Pontryagin numbers of M3 and A(M3, L^2)")
    nums = numbers(m3_model())
    c.expect("p2^3", 2 ** 7 * 3 ** 5 * 5, nums[(2, 2, 2)])
    c.expect("p2p4", 2 ** 5 * 3 ** 3 * 5 ** 3, nums[(4, 2)])
    c.expect("p6", 2 ** 5 * 3 ** 3 * 5 * 13, nums[(6,)])
    c.expect("p3^2", 0, nums[(3, 3)])
    c.expect("A(M3, L^2)", -1, twisted_ahat(nums, exterior_power(2, ch_tangent(24))))
    c.finish(capsys)


def test_criterion_04_fiber_class(capsys):
    c = Criterion(4, "fiber Pontryagin class through weight 6")
    F = Fraction
    p = {i: GradedPoly.gen(i) for i in range(1, 7)}
    p1, p2, p3, p4 = p[1], p[2], p[3], p[4]
    expected = [
        GradedPoly.one(),
        2 * p1,
        -p2 + F(7, 4) * p1 ** 2,
        2 * p3 - F(3, 2) * p1 * p2 + F(7, 8) * p1 ** 3,
        -F(17, 2) * p4 + 2 * p1 * p3 + F(3, 8) * p2 ** 2 - F(15, 16) * p1 ** 2 * p2 + F(35, 128) * p1 ** 4,
        -F(5, 2) * p1 * p4 - p2 * p3 + F(3, 4) * p1 ** 2 * p3 + F(3, 8) * p1 * p2 ** 2
        - F(5, 16) * p1 ** 3 * p2 + F(7, 128) * p1 ** 5,
        -F(7, 4) * p2 * p4 + F(5, 16) * p1 ** 2 * p4 + p3 ** 2 - F(1, 2) * p1 * p2 * p3 + F(1, 8) * p1 ** 3 * p3
        - F(1, 16) * p2 ** 3 + F(9, 64) * p1 ** 2 * p2 ** 2 - F(15, 256) * p1 ** 4 * p2 + F(7, 1024) * p1 ** 6,
    ]
    computed = fiber_pontryagin(f4_spin9_roots(), 6)
    for w, ref in enumerate(expected):
        c.expect(f"weight {w}", str(ref), str(computed.homogeneous(w)))
    c.finish(capsys)


def test_criterion_05_m4_pipeline(capsys):
    c = Criterion(5, "N8, pullback images, p(M4), numbers of M4, Sig(M4) = 8")
    n8 = n8_model()
    c.expect("p1(N8)", {"a1": 4, "a2": 4}, elem(n8.p(1)))
    c.expect("p2(N8)", {"top": 56}, elem(n8.p(2)))
    con = m4_construction()
    c.expect("image p1", {"a1": -2, "a2": -2}, elem(con.p_images[1]))
    c.expect("image p2", {"u": 6, "top": 2}, elem(con.p_images[2]))
    c.expect("image p3", {"a1*u": -2, "a2*u": -2}, elem(con.p_images[3]))
    c.expect("image p4", {"u^2": -3}, elem(con.p_images[4]))
    q = spin_images(con)
    c.expect("image q1", {"a1": -1, "a2": -1}, elem(q[1]))
    c.expect("image q2", {"u": 3}, elem(q[2]))
    c.expect("image q3", {"a1*u": -2, "a2*u": -2}, elem(q[3]))
    c.expect("image q4", {"u^2": -6, "top*u": 4}, elem(q[4]))
    for w, gen in f4_invariant_generators().items():
        if w > 1:
            c.check(f"weight-{w} invariant pulls back to 0", gen.evaluate(con.p_images, q[1].ring.one()).is_zero())
    m = con.model
    c.expect("p1(M4)", {}, elem(m.p(1)))
    c.expect("p2(M4)", {"top": 36, "u": -6}, elem(m.p(2)))
    c.expect("p3(M4)", {"a1*u": -10, "a2*u": -10}, elem(m.p(3)))
    c.expect("p4(M4)", {"top*u": -244, "u^2": 39}, elem(m.p(4)))
    c.expect("p5(M4)", {"a1*u^2": 126, "a2*u^2": 126}, elem(m.p(5)))
    c.expect("p6(M4)", {"top*u^2": 1958}, elem(m.p(6)))
    nums = numbers(m)
    c.expect("M4 numbers", PontryaginNumbers(24, {(2, 2, 2): 3888, (3, 3): 200, (4, 2): 2868, (6,): 1958}), nums)
    c.expect("Sig(M4) by L-genus", 8, signature(nums))
    c.expect("Sig(N8) Sig(OP2)", 8, sig_n8_times_op2())
    c.finish(capsys)


def test_criterion_06_kappa(capsys):
    c = Criterion(6, "kappa columns, det K, kappa o decompose")
    kd = kappa_data()
    K = ((0, 1, 0, 0), (-1, 0, 0, 0), (1080, 218076, -1, 0), (46848, 47360, 28, 1))
    c.expect("K", K, kd.K)
    for j, nums in enumerate(basis_numbers()):
        c.expect(f"kappa(M{j + 1})", tuple(K[i][j] for i in range(4)), tuple(kappa(nums)))
    c.expect("det K", -1, kd.det)
    rng = random.Random(11)
    for _ in range(25):
        x = tuple(rng.randint(-1000, 1000) for _ in range(4))
        v = CobordismVector(x)
        c.expect(f"decompose {x}", v, decompose(v.numbers()).vector())
    c.finish(capsys)


def test_criterion_07_witten(capsys):
    c = Criterion(7, "Witten genus of the basis")
    m1, m2, m3, m4 = basis_numbers()
    c.expect("W(M1) through q^5", (delta(5) * -24).coeffs, witten_modular(m1, 5).coeffs)
    c.expect("W(M1) literal", (0, -24, 576, -6048, 35328, -115920), witten_modular(m1, 5).coeffs)
    c.expect("W(M2) through q^5", delta_bar(5).coeffs, witten_modular(m2, 5).coeffs)
    for name, nums in (("M1", m1), ("M2", m2), ("M3", m3), ("M4", m4)):
        c.check(f"direct = modular for {name}", series_equal(witten_direct(nums, 2), witten_modular(nums, 2)))
    c.expect("W(M3)", (0,) * 6, witten_modular(m3, 5).coeffs)
    c.expect("W(M4)", (0,) * 6, witten_modular(m4, 5).coeffs)
    c.finish(capsys)


def test_criterion_08_divisibility(capsys):
    c = Criterion(8, "divisibility of signatures over the lattice")
    v = basis_value_vectors()
    c.expect("Sig vector", [2 ** 11 * 3 * 61, 2 ** 11 * 5 * 37, 2 ** 5 * 7, 2 ** 3], v["sig"])
    c.expect("gcd Sig", 8, gcd_over_sublattice(v["sig"]))
    c.expect("gcd Sig over 4 | p2", 32, gcd_over_sublattice(v["sig"], [SublatticeConstraint(v["p2^3"], 2, 6)]))
    c.expect("modified Sig vector",
             [-(2 ** 10) * 3 * 826753, -(2 ** 10) * 5 * 23 * 668687, 2 ** 5 * 7, -(2 ** 7) * 3 * 13],
             v["modified_sig"])
    c.expect("gcd modified Sig", 32, gcd_over_sublattice(v["modified_sig"]))
    c.expect("Sig(67 M3 + 3 M4, nu)", 32, modified_signature(CobordismVector((0, 0, 67, 3)).numbers()))
    c.expect("Sig(-, L^2) vector",
             [2 ** 13 * 3 * 4013, -(2 ** 13) * 3 ** 4 * 1063, 2 ** 7 * 3 * 7 * 23, 2 ** 5 * 3 * 23], v["sig_wedge2"])
    c.expect("gcd Sig(-, L^2)", 96, gcd_over_sublattice(v["sig_wedge2"]))
    for k in (1, 2):
        con = [SublatticeConstraint(v["p2^3"], 3, 3 * (k + 1))]
        found = residue_search_min_valuation(v["sig_wedge2"], con, 3, 3 * k - 1)
        c.check(f"3^{3 * k - 1} | Sig(-, L^2) when 3^{k + 1} | p2 (residue search finds nu_3 = {found})",
                found >= 3 * k - 1)
    c.finish(capsys)


def test_criterion_09_sweep(capsys):
    c = Criterion(9, "twisted genera of M1 over T^i L^j S^k, i+j+k <= 5, mod 24")
    start = time.perf_counter()
    table = conjecture_sweep(5, 24)
    elapsed = time.perf_counter() - start
    c.expect("rows", 56, len(table.rows))
    for r in table.rows:
        c.check(f"A(M1, {r.i},{r.j},{r.k}) = {r.ahat} integral and divisible by 24",
                r.ahat.denominator == 1 and r.ahat % 24 == 0)
        c.check(f"Sig(M1, {r.i},{r.j},{r.k}) = {r.sig} integral and divisible by 24",
                r.sig.denominator == 1 and r.sig % 24 == 0)
    c.check(f"sweep took {elapsed:.1f}s", elapsed < 60)
    c.finish(capsys)


def _exp_roots(m, cap):
    xs = tuple(f"x{i + 1}" for i in range(m))
    out = []
    for i in range(m):
        for s in (1, -1):
            out.append(exp_root(RootPoly.linear(xs, [s * int(i == j) for j in range(m)], 2 * cap)))
    return xs, out


def _elementary_and_complete(values, n, one):
    e = [one] + [one * 0] * n
    h = [one] + [one * 0] * n
    for v in values:
        for k in range(n, 0, -1):
            e[k] = e[k] + e[k - 1] * v
        for k in range(1, n + 1):
            h[k] = h[k] + h[k - 1] * v
    return e, h


def test_criterion_10_properties(capsys):
    c = Criterion(10, "property suites")
    # genus multiplicativity on products
    for x, y in ((kervaire_milnor_model(1), kervaire_milnor_model(2)), (kervaire_milnor_model(2), op2_model()),
                 (kervaire_milnor_model(1), kervaire_milnor_model(1))):
        xy = product_model(x, y)
        for seq in (ahat_class, l_class):
            g = lambda m: pair(seq(m.dim // 4).top.with_cap(m.dim // 4), numbers(m))  # noqa: E731
            c.expect(f"{seq.__name__} of {x.name} x {y.name}", g(x) * g(y), g(xy))
    # symmetric_reduce round trip on 50 random inputs
    rng = random.Random(3)
    xs = ("x1", "x2", "x3", "x4")
    parts = [p for w in range(5) for p in partitions(w, 4)]
    for i in range(50):
        poly = GradedPoly({rng.choice(parts): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)}, 4)
        c.expect(f"round trip {i}", poly, symmetric_reduce(substitute_roots(poly, xs, 8), 4))
    # exterior and symmetric powers against Chern roots of a real rank-4 bundle
    rxs, roots = _exp_roots(2, 4)
    e, h = _elementary_and_complete(roots, 4, roots[0].one())
    t = ch_tangent(4, 4)
    for j in range(5):
        c.check(f"Lambda^{j}", substitute_roots(exterior_power(j, t).as_poly(), rxs, 8) == e[j])
        c.check(f"S^{j}", substitute_roots(symmetric_power(j, t).as_poly(), rxs, 8) == h[j])
    # gcd over sublattices against the box [-8, 8]^4
    box = np.stack(np.meshgrid(*([np.arange(-8, 9)] * 4), indexing="ij"), -1).reshape(-1, 4)
    rng = np.random.default_rng(5)
    for _ in range(20):
        values = rng.integers(-400, 400, 4)
        func = rng.integers(-30, 30, 4)
        prime, e_ = [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1)][int(rng.integers(0, 5))]
        con = SublatticeConstraint(tuple(int(f) for f in func), prime, e_)
        mask = (box @ func) % con.modulus == 0
        brute = int(np.gcd.reduce(np.abs(box[mask] @ values)))
        c.expect(f"gcd {values.tolist()} / {con}", brute, gcd_over_sublattice([int(v) for v in values], [con]))
    # Delta = (E4^3 - E6^2) / 1728 through q^10
    c.expect("Delta", delta(10).coeffs, ((eisenstein_e4(10) ** 3 - eisenstein_e6(10) ** 2) / 1728).coeffs)
    c.finish(capsys)
