"""Reference checks behind ``charnum verify``.

Each suite compares computed values against literal reference values and
returns one :class:`Check` per comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .graded import GradedPoly, format_fraction
from .manifolds import kervaire_milnor_model, n8_model, numbers, signature

# ---------------------------------------------------------------------------
# reference values

KM_TOP = {1: 48, 2: 1440, 3: 120960}
KM_SIG = {1: 16, 2: 224, 3: 7936}

BASIS_NUMBERS = {
    "M1": {"2,2,2": 2**13 * 3**5 * 5**3, "3,3": 2**10 * 3**4 * 5**2 * 7**2,
           "4,2": 2**12 * 3**5 * 5**3, "6": 2**9 * 3**4 * 5**2 * 89},
    "M2": {"2,2,2": -(2**13) * 3**5 * 5**3 * 41, "3,3": 2**10 * 3**4 * 5**2 * 7**2 * 31,
           "4,2": -(2**12) * 3**5 * 5**3 * 41, "6": -(2**9) * 3**4 * 5**2 * 11**2},
    "M3": {"2,2,2": 2**7 * 3**5 * 5, "3,3": 0, "4,2": 2**5 * 3**3 * 5**3, "6": 2**5 * 3**3 * 5 * 13},
    "M4": {"2,2,2": 3888, "3,3": 200, "4,2": 2868, "6": 1958},
}

K_MATRIX = ((0, 1, 0, 0),
            (-1, 0, 0, 0),
            (1080, 218076, -1, 0),
            (46848, 47360, 28, 1))

SIG = (2**11 * 3 * 61, 2**11 * 5 * 37, 2**5 * 7, 2**3)
MODIFIED_SIG = (-(2**10) * 3 * 826753, -(2**10) * 5 * 23 * 668687, 2**5 * 7, -(2**7) * 3 * 13)
SIG_WEDGE2 = (2**13 * 3 * 4013, -(2**13) * 3**4 * 1063, 2**7 * 3 * 7 * 23, 2**5 * 3 * 23)

F = Fraction
# fiber Pontryagin class of the universal OP2-bundle, in Pontryagin classes of BSpin(9)
FIBER_CLASS = {
    (): 1,
    (1,): 2,
    (2,): -1, (1, 1): F(7, 4),
    (3,): 2, (2, 1): F(-3, 2), (1, 1, 1): F(7, 8),
    (4,): F(-17, 2), (3, 1): 2, (2, 2): F(3, 8), (2, 1, 1): F(-15, 16), (1, 1, 1, 1): F(35, 128),
    (4, 1): F(-5, 2), (3, 2): -1, (3, 1, 1): F(3, 4), (2, 2, 1): F(3, 8), (2, 1, 1, 1): F(-5, 16),
    (1, 1, 1, 1, 1): F(7, 128),
    (4, 2): F(-7, 4), (4, 1, 1): F(5, 16), (3, 3): 1, (3, 2, 1): F(-1, 2), (3, 1, 1, 1): F(1, 8),
    (2, 2, 2): F(-1, 16), (2, 2, 1, 1): F(9, 64), (2, 1, 1, 1, 1): F(-15, 256), (1, 1, 1, 1, 1, 1): F(7, 1024),
}

# labels of the N8 x OP2 model: top = a1 a2 in N8, u the OP2 generator
N8_PONTRYAGIN = {1: {"a1": 4, "a2": 4}, 2: {"top": 56}}
M4_P_IMAGES = {1: {"a1": -2, "a2": -2}, 2: {"u": 6, "top": 2},
               3: {"a1*u": -2, "a2*u": -2}, 4: {"u^2": -3}}
M4_Q_IMAGES = {1: {"a1": -1, "a2": -1}, 2: {"u": 3},
               3: {"a1*u": -2, "a2*u": -2}, 4: {"u^2": -6, "top*u": 4}}
M4_PONTRYAGIN = {1: {}, 2: {"top": 36, "u": -6}, 3: {"a1*u": -10, "a2*u": -10},
                 4: {"top*u": -244, "u^2": 39}, 5: {"a1*u^2": 126, "a2*u^2": 126},
                 6: {"top*u^2": 1958}}

SWEEP_MAX = 5
SWEEP_MODULUS = 24


# ---------------------------------------------------------------------------


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    expected: str
    got: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.suite}: {self.name}"
        if not self.ok:
            text += f" (expected {self.expected}, got {self.got})"
        return text


def _show(v) -> str:
    if isinstance(v, Fraction):
        return format_fraction(v)
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return str(v)


def _eq(suite: str, name: str, expected, got) -> Check:
    return Check(suite, name, expected == got, _show(expected), _show(got))


def _elem_dict(elem) -> dict[str, Fraction]:
    return {k: v for k, v in elem.coeffs.items() if v}


def _ref_dict(d: dict) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in d.items() if v}


def suite_generators() -> list[Check]:
    out = []
    for n in (1, 2, 3):
        m = kervaire_milnor_model(n)
        out.append(_eq("generators", f"p{n}(M0^{4 * n})", Fraction(KM_TOP[n]), m.p(n).integrate()))
        out.append(_eq("generators", f"Sig(M0^{4 * n})", Fraction(KM_SIG[n]), signature(m)))
    return out


def suite_basis() -> list[Check]:
    from .lattice import basis_numbers, kappa
    from .twist import ChernCharacter, ch_tangent, exterior_power, twisted_ahat

    out = []
    for name, nums in zip(("M1", "M2", "M3", "M4"), basis_numbers()):
        for part, value in BASIS_NUMBERS[name].items():
            out.append(_eq("basis", f"{name} p[{part}]", Fraction(value), nums[part]))
        out.append(_eq("basis", f"{name} is String", True, nums.is_string()))
    m3 = basis_numbers()[2]
    out.append(_eq("basis", "A(M3, L^2)", Fraction(-1), twisted_ahat(m3, exterior_power(2, ch_tangent(24)))))
    out.append(_eq("basis", "A(M3)", Fraction(0), twisted_ahat(m3, ChernCharacter.trivial())))
    out.append(_eq("basis", "kappa(M3)", (0, 0, -1, 28), tuple(kappa(m3))))
    return out


def suite_fiber_class() -> list[Check]:
    from .bh import f4_spin9_roots, fiber_pontryagin

    computed = fiber_pontryagin(f4_spin9_roots(), 6)
    ref = GradedPoly(FIBER_CLASS, 6)
    return [_eq("fiber_class", f"weight {w}", str(ref.homogeneous(w)), str(computed.homogeneous(w)))
            for w in range(7)]


def suite_m4() -> list[Check]:
    from .bh import m4_construction, m4_cross_checks, sig_n8_times_op2, spin_images

    out = []
    n8 = n8_model()
    for k, piece in N8_PONTRYAGIN.items():
        out.append(_eq("m4", f"p{k}(N8)", _ref_dict(piece), _elem_dict(n8.p(k))))
    out.append(_eq("m4", "Sig(N8)", Fraction(8), signature(n8)))
    c = m4_construction()
    for k, piece in M4_P_IMAGES.items():
        out.append(_eq("m4", f"image of p{k}", _ref_dict(piece), _elem_dict(c.p_images[k])))
    q = spin_images(c)
    for k, piece in M4_Q_IMAGES.items():
        out.append(_eq("m4", f"image of q{k}", _ref_dict(piece), _elem_dict(q[k])))
    for k, piece in M4_PONTRYAGIN.items():
        out.append(_eq("m4", f"p{k}(M4)", _ref_dict(piece), _elem_dict(c.model.p(k))))
    free_top = _elem_dict(c.unreduced_total.degree_part(24))
    out.append(_eq("m4", "weight-6 piece before u^3 = 0", {"top*u^2": Fraction(1958), "u^3": Fraction(18)}, free_top))
    nums = numbers(c.model)
    for part, value in BASIS_NUMBERS["M4"].items():
        out.append(_eq("m4", f"M4 p[{part}]", Fraction(value), nums[part]))
    out.append(_eq("m4", "Sig(M4) by L-genus", Fraction(8), signature(nums)))
    out.append(_eq("m4", "Sig(N8) Sig(OP2)", Fraction(8), sig_n8_times_op2()))
    out.append(_eq("m4", "internal cross-checks", [], m4_cross_checks(c)))
    return out


def suite_kappa() -> list[Check]:
    from .lattice import CobordismVector, decompose, from_kappa, kappa_data

    kd = kappa_data()
    out = [_eq("kappa", "K", K_MATRIX, kd.K), _eq("kappa", "det K", Fraction(-1), kd.det)]
    for x in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (3, -7, 11, 2), (-5, 2, 0, 67)):
        v = CobordismVector(x)
        out.append(_eq("kappa", f"decompose(numbers{x})", tuple(Fraction(c) for c in x),
                       decompose(v.numbers()).coords))
        out.append(_eq("kappa", f"K^-1 kappa{x}", tuple(Fraction(c) for c in x),
                       from_kappa(v.kappa()).coords))
    return out


def suite_witten() -> list[Check]:
    from .lattice import basis_numbers
    from .qforms import delta, delta_bar, series_equal, witten_direct, witten_modular

    out = []
    m1, m2, m3, m4 = basis_numbers()
    out.append(_eq("witten", "W(M1) = -24 Delta through q^5", (delta(5) * -24).coeffs, witten_modular(m1, 5).coeffs))
    out.append(_eq("witten", "W(M2) = Delta_bar through q^5", delta_bar(5).coeffs, witten_modular(m2, 5).coeffs))
    for name, nums in zip(("M1", "M2", "M3", "M4"), (m1, m2, m3, m4)):
        out.append(_eq("witten", f"direct = modular for {name} through q^2", True,
                       series_equal(witten_direct(nums, 2), witten_modular(nums, 2))))
    for name, nums in (("M3", m3), ("M4", m4)):
        out.append(_eq("witten", f"W({name}) = 0", (Fraction(0),) * 6, witten_modular(nums, 5).coeffs))
    return out


def suite_modular() -> list[Check]:
    from .qforms import delta, eisenstein_e4, eisenstein_e6

    lhs = delta(10)
    rhs = (eisenstein_e4(10) ** 3 - eisenstein_e6(10) ** 2) / 1728
    return [_eq("modular", "Delta = (E4^3 - E6^2)/1728 through q^10", lhs.coeffs, rhs.coeffs),
            _eq("modular", "tau(1..6)", (1, -24, 252, -1472, 4830, -6048), tuple(int(c) for c in lhs.coeffs[1:7]))]


def suite_divisibility() -> list[Check]:
    from .lattice import basis_value_vectors, divisibility_theorems

    vecs = basis_value_vectors()
    out = [_eq("divisibility", "Sig on basis", list(SIG), vecs["sig"]),
           _eq("divisibility", "modified Sig on basis", list(MODIFIED_SIG), vecs["modified_sig"]),
           _eq("divisibility", "Sig(-, L^2) on basis", list(SIG_WEDGE2), vecs["sig_wedge2"])]
    for t in divisibility_theorems():
        out.append(Check("divisibility", f"{t.theorem} {t.name}", t.ok, "claim holds",
                         t.detail + ("" if t.ok else f"; witness x = {t.witness}")))
    return out


def suite_sweep() -> list[Check]:
    from .lattice import conjecture_sweep

    table = conjecture_sweep(SWEEP_MAX, SWEEP_MODULUS)
    bad = [(r.i, r.j, r.k) for r in table.rows if not r.passes]
    return [_eq("sweep", "row count", 56, len(table.rows)),
            _eq("sweep", f"all entries integral and divisible by {SWEEP_MODULUS}", [], bad)]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "generators": suite_generators,
    "basis": suite_basis,
    "fiber_class": suite_fiber_class,
    "m4": suite_m4,
    "kappa": suite_kappa,
    "witten": suite_witten,
    "modular": suite_modular,
    "divisibility": suite_divisibility,
    "sweep": suite_sweep,
}


def run(names=None) -> list[Check]:
    checks = []
    for name in names or SUITES:
        checks.extend(SUITES[name]())
    return checks
