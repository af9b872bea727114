import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfq_ldpc.galois import (
    DEFAULT_MODULI,
    FieldError,
    GaloisField,
    ZeroInverseError,
    is_irreducible,
    poly_mul,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 11, 16, 32, 64]


@pytest.fixture(scope="module")
def gf16():
    return GaloisField(16)


@pytest.fixture(scope="module")
def gf7():
    return GaloisField(7)


def test_spec_examples_add(gf16, gf7):
    assert gf16.add(5, 5) == 0
    assert gf16.add(0, 9) == 9
    assert gf7.add(5, 4) == 2


def test_spec_examples_mul(gf16, gf7):
    assert gf16.modulus == 0b10011
    assert gf16.mul(1, 13) == 13
    # x * x^3 = x^4 = x + 1 mod x^4 + x + 1
    assert gf16.mul(2, 8) == 3
    assert gf7.mul(3, 5) == 1


def test_spec_examples_inv_neg(gf16, gf7):
    assert gf16.inv(1) == 1
    assert gf7.inv(3) == 5
    with pytest.raises(ZeroInverseError):
        gf16.inv(0)
    assert gf16.neg(11) == 11
    assert gf7.neg(3) == 4
    assert gf16.neg(0) == 0 and gf7.neg(0) == 0


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    gf = GaloisField(q)
    els = range(q)
    for a in els:
        assert gf.add(a, 0) == a
        assert gf.mul(a, 1) == a
        assert gf.mul(a, 0) == 0
        assert gf.add(a, gf.neg(a)) == 0
        for b in els:
            assert gf.add(a, b) == gf.add(b, a)
            assert gf.mul(a, b) == gf.mul(b, a)
            assert gf.sub(gf.add(a, b), b) == a
            for c in els:
                assert gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
                assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
                assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))


@pytest.mark.parametrize("q", [2, 3, 4, 8, 16, 32, 64, 128, 251, 256])
def test_inverse_exhaustive(q):
    gf = GaloisField(q)
    for a in range(1, q):
        assert gf.mul(a, gf.inv(a)) == 1


@pytest.mark.parametrize("m", range(2, 9))
def test_tables_match_polynomial_multiply(m):
    gf = GaloisField(1 << m)
    for a in range(gf.q):
        for b in range(gf.q):
            assert gf.mul(a, b) == poly_mul(a, b, gf.modulus)


def test_default_moduli_irreducible():
    for m, mod in DEFAULT_MODULI.items():
        assert mod.bit_length() - 1 == m
        assert is_irreducible(mod)


def test_non_primitive_modulus_still_works():
    # x^4 + x^3 + x^2 + x + 1 is irreducible, but x has order 5
    gf = GaloisField(16, modulus=0x1F)
    for a in range(16):
        for b in range(16):
            assert gf.mul(a, b) == poly_mul(a, b, 0x1F)


@pytest.mark.parametrize(
    "q, modulus",
    [(6, None), (9, None), (1, None), (1 << 17, None), (16, 0x15), (16, 0x7)],
)
def test_rejects_bad_fields(q, modulus):
    with pytest.raises(FieldError):
        GaloisField(q, modulus)


def test_check_element(gf7):
    assert gf7.check(6) == 6
    with pytest.raises(FieldError):
        gf7.check(7)


LARGE = [GaloisField(1 << 16), GaloisField(65521), GaloisField(1 << 10)]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(LARGE), st.data())
def test_field_axioms_randomized(gf, data):
    el = st.integers(0, gf.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
    assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))
    assert gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
    if a:
        assert gf.mul(a, gf.inv(a)) == 1
    if gf.degree > 1:
        assert gf.mul(a, b) == poly_mul(a, b, gf.modulus)
    else:
        assert gf.mul(a, b) == a * b % gf.q
