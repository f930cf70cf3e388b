"""Field arithmetic in GF(2^m)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symvert.field import FieldCtx, default_modulus, make_field, splitting_degree


def test_default_moduli_are_the_expected_polynomials():
    # x+1, x^2+x+1, x^3+x+1, x^4+x+1, x^8+x^4+x^3+x+1 (AES field)
    assert default_modulus(1) == 0b11
    assert default_modulus(2) == 0b111
    assert default_modulus(3) == 0b1011
    assert default_modulus(4) == 0b10011
    assert default_modulus(8) == 0b100011011


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldCtx(2, modulus=0b101)  # x^2 + 1 = (x+1)^2


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    F = make_field(m)
    els = list(F.elements())
    for a in els:
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        assert F.frobenius(F.sqrt(a)) == a  # sqrt is the Frobenius inverse
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
                # distributivity: addition is xor
                assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_squaring_is_a_bijection(m):
    F = make_field(m)
    assert sorted(F.frobenius(a) for a in F.elements()) == list(F.elements())


@given(st.integers(0, 15), st.integers(0, 15))
def test_vectorized_agrees_with_scalar_gf16(a, b):
    F = make_field(4)
    assert int(F.vmul(np.array([a]), np.array([b]))[0]) == F.mul(a, b)


@settings(max_examples=50)
@given(st.integers(1, 255), st.integers(0, 6))
def test_pow_matches_repeated_mul_gf256(a, e):
    F = make_field(8)
    r = 1
    for _ in range(e):
        r = F.mul(r, a)
    assert F.pow(a, e) == r


def test_vscale_special_cases():
    F = make_field(2)
    v = np.array([0, 1, 2, 3], dtype=np.int64)
    assert (F.vscale(0, v) == 0).all()
    assert (F.vscale(1, v) == v).all()
    assert (F.vscale(2, v) == np.array([0, 2, 3, 1])).all()


def test_elem_hex_round_trip():
    F = make_field(8)
    for a in (0, 1, 0xAB, 255):
        assert F.elem_from_hex(F.elem_to_hex(a)) == a


def test_splitting_degree_examples():
    from symvert import catalog

    # odd part of exponent: S3 -> 3 (ord 2 mod 3 = 2); V4 -> 1;
    # S5 -> 15 (ord 2 mod 15 = 4)
    assert splitting_degree(catalog.suite_group("S3")) == 2
    assert splitting_degree(catalog.suite_group("V4")) == 1
    assert splitting_degree(catalog.suite_group("S5")) == 4
