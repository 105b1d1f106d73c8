from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charnum.builtin import GENERATORS, bundled_path, resolve_manifold
from charnum.errors import ManifestError, NotRealizableError, UsageError
from charnum.graded import PontryaginNumbers, canonical, partitions
from charnum.manifolds import (E8, HYPERBOLIC, RingModel, WallPair, b_basis_models, block_diag,
                               kervaire_milnor_model, kervaire_milnor_top_class, load_manifest, m1_m2_numbers,
                               m3_model, n8_model, numbers, op2_model, point, product_model, scale_top_class,
                               signature, truncated_polynomial_model, wall_model)


def test_kervaire_milnor_generators():
    assert [kervaire_milnor_top_class(n) for n in (1, 2, 3)] == [48, 1440, 120960]
    assert [signature(kervaire_milnor_model(n)) for n in (1, 2, 3)] == [16, 224, 7936]
    with pytest.raises(UsageError):
        kervaire_milnor_top_class(0)


def test_op2():
    x = op2_model()
    assert numbers(x) == PontryaginNumbers(16, {(2, 2): 36, (4,): 39})
    assert signature(x) == 1
    assert x.check_associative()


def test_point_and_truncated_polynomial():
    assert numbers(point()) == PontryaginNumbers(0, {(): 1})
    hp2 = truncated_polynomial_model("HP2", "h", 4, 2, [{}, {1: 2}, {2: 7}])
    assert numbers(hp2) == PontryaginNumbers(8, {(1, 1): 4, (2,): 7})
    assert signature(hp2) == 1


def whitney_numbers(x: PontryaginNumbers, y: PontryaginNumbers) -> PontryaginNumbers:
    """Numbers of X x Y from those of the factors: p_k(X x Y) = sum_{a+b=k} p_a(X) p_b(Y)."""
    nx, ny = x.dim // 4, y.dim // 4
    out = {}
    for lam in partitions(nx + ny):
        total = Fraction(0)
        for split in itertools.product(*[range(part + 1) for part in lam]):
            if sum(split) != nx:
                continue
            mu = canonical(a for a in split if a)
            nu = canonical(part - a for part, a in zip(lam, split) if part - a)
            total += x[mu] * y[nu]
        out[lam] = total
    return PontryaginNumbers(x.dim + y.dim, out)


@pytest.mark.parametrize("pair", [("km1", "km1"), ("km2", "op2"), ("km1", "km3"), ("op2", "km2"), ("km2", "km2")])
def test_product_numbers_against_whitney_oracle(pair):
    models = {"km1": kervaire_milnor_model(1), "km2": kervaire_milnor_model(2),
              "km3": kervaire_milnor_model(3), "op2": op2_model()}
    x, y = (models[k] for k in pair)
    xy = product_model(x, y)
    assert xy.check_associative()
    assert numbers(xy) == whitney_numbers(numbers(x), numbers(y))


def test_product_with_colliding_labels():
    x = kervaire_milnor_model(2)
    sq = product_model(x, x)
    assert len(sq.labels) == 4
    assert signature(sq) == 224 ** 2


def test_scale_top_class():
    half = scale_top_class(kervaire_milnor_model(3), Fraction(1, 2))
    assert numbers(half)[(3,)] == 60480
    with pytest.raises(UsageError):
        scale_top_class(op2_model(), 2)


def test_b_basis_and_m1_m2():
    b = b_basis_models()
    assert numbers(b["B4"])[(6,)] == 1307674368000
    assert numbers(b["B1"])[(2, 2, 2)] == 6 * 1440 ** 3
    m1, m2 = m1_m2_numbers()
    assert m1[(6,)] == 2 ** 9 * 3 ** 4 * 5 ** 2 * 89
    assert m2[(6,)] == -(2 ** 9) * 3 ** 4 * 5 ** 2 * 11 ** 2
    assert m1.is_string() and m2.is_string()


def test_m3():
    nums = numbers(m3_model())
    assert nums == PontryaginNumbers(24, {(2, 2, 2): 2 ** 7 * 3 ** 5 * 5, (4, 2): 2 ** 5 * 3 ** 3 * 5 ** 3,
                                          (6,): 2 ** 5 * 3 ** 3 * 5 * 13})


def test_n8():
    n8 = n8_model()
    assert {k: v for k, v in n8.p(1).coeffs.items() if v} == {"a1": 4, "a2": 4}
    assert n8.p(2).integrate() == 56
    assert signature(n8) == 8
    assert n8.check_associative()


def test_wall_pair_violations():
    with pytest.raises(NotRealizableError, match="parity"):
        WallPair(((1,),), (0,)).validate()
    with pytest.raises(NotRealizableError, match="224"):
        WallPair(E8, (0,) * 8).validate()
    with pytest.raises(NotRealizableError, match="unimodular"):
        WallPair(((2,),), (0,)).validate()
    with pytest.raises(NotRealizableError, match="symmetric"):
        WallPair(((0, 1), (0, 0)), (0, 0)).validate()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([1, -1]), st.sampled_from([1, -1, 15, -15])), min_size=1, max_size=5),
       st.integers(0, 2))
def test_wall_signature_matches_l_genus(diag, n_hyp):
    # b_i^2 - 1 is 0 or 224, so Sig = bAb mod 224 holds for every choice
    blocks = [((s,),) for s, _ in diag] + [HYPERBOLIC] * n_hyp
    b = tuple(v for _, v in diag) + (0, 0) * n_hyp
    wp = WallPair(block_diag(*blocks), b)
    model = wall_model(wp)
    assert signature(model) == wp.form_signature() == sum(s for s, _ in diag)
    assert model.check_associative()


def test_ring_model_validation():
    with pytest.raises(UsageError):
        RingModel("bad", 4, {"1": 0, "x": 4}, {}, {"x": 1}, ({"1": 1}, {"y": 1}))


@pytest.mark.parametrize("factory", [op2_model, n8_model, m3_model, lambda: kervaire_milnor_model(2)])
def test_ring_model_json_round_trip(factory):
    x = factory()
    y = RingModel.from_json(json.loads(json.dumps(x.to_json())))
    assert y.to_json() == x.to_json()
    assert numbers(y) == numbers(x)


@pytest.mark.parametrize("name", list(GENERATORS))
def test_bundled_manifests_match_constructions(name):
    bundled = json.loads(bundled_path(name).read_text(encoding="utf-8"))
    assert bundled == GENERATORS[name]()
    resolve_manifold(name)


def test_bad_manifests(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(ManifestError):
        load_manifest(bad)
    with pytest.raises(ManifestError):
        load_manifest({"kind": "ring_model", "dim": 8})
    with pytest.raises(ManifestError):
        load_manifest({"kind": "something"})
    with pytest.raises(ManifestError):
        load_manifest({"kind": "pontryagin_numbers", "dim": 24, "numbers": {"5": "1"}})
    with pytest.raises(ManifestError):
        resolve_manifold(str(tmp_path / "missing.json"))
