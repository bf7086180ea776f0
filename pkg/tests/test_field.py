"""GF(2)[T] and GF(2)(T) arithmetic."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treefloer import field as gf
from treefloer.field import Frac, frac_parse, frac_str, one_plus_tpow, poly_parse, poly_str, tpow


def P(s):
    return poly_parse(s)


class TestPoly:
    def test_char2_add(self):
        a = P("T + 1")
        assert a ^ a == 0

    def test_gcd_frobenius(self):
        # T^2 + 1 = (T+1)^2 over GF(2)
        assert gf.gcd(P("T^2 + 1"), P("T + 1")) == P("T + 1")

    def test_hand_product(self):
        assert gf.mul(P("T^3 + T + 1"), P("T + 1")) == P("T^4 + T^3 + T^2 + 1")

    def test_divmod(self):
        a, b = P("T^5 + T^2 + 1"), P("T^2 + T")
        q, r = gf.divmod_poly(a, b)
        assert gf.mul(q, b) ^ r == a
        assert gf.deg(r) < gf.deg(b)

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            gf.divmod_poly(P("T"), 0)

    def test_mul_matches_schoolbook(self):
        rng = random.Random(7)
        for _ in range(300):
            a = rng.getrandbits(rng.randrange(1, 400))
            b = rng.getrandbits(rng.randrange(1, 400))
            ref = 0
            bb = b
            k = 0
            while bb:
                if bb & 1:
                    ref ^= a << k
                bb >>= 1
                k += 1
            assert gf.mul(a, b) == ref

    def test_str_roundtrip(self):
        rng = random.Random(3)
        for _ in range(50):
            a = rng.getrandbits(60)
            assert poly_parse(poly_str(a)) == a


class TestFrac:
    def test_tpow_inverse(self):
        assert tpow(-2) * tpow(2) == gf.F_ONE

    def test_char2(self):
        x = Frac(1, P("T^3 + 1"))
        assert x + x == gf.F_ZERO

    def test_cancellation(self):
        # T^2/(1+T) + T/(1+T) = T
        d = P("T + 1")
        assert Frac(P("T^2"), d) + Frac(P("T"), d) == Frac(P("T"))

    def test_one_plus_tpow(self):
        assert one_plus_tpow(3) == Frac(P("T^3 + 1"))
        assert one_plus_tpow(-2) == Frac(P("T^2 + 1"), P("T^2"))
        with pytest.raises(ZeroDivisionError):
            one_plus_tpow(0)

    def test_str_roundtrip(self):
        cases = ["T^3 + T + 1", "(T^2 + 1)/(T^5 + T + 1)", "1/T^4", "0", "1"]
        for s in cases:
            assert frac_str(frac_parse(s)) == s

    def test_canonical_equality(self):
        a = Frac(P("T^2 + T"), P("T + 1"))  # reduces to T
        assert a == Frac(P("T"))
        assert hash(a) == hash(Frac(P("T")))


def fracs(max_bits=24):
    polys = st.integers(min_value=0, max_value=(1 << max_bits) - 1)
    nz = st.integers(min_value=1, max_value=(1 << max_bits) - 1)
    return st.builds(Frac, polys, nz)


@settings(max_examples=200, deadline=None)
@given(fracs(), fracs(), fracs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == gf.F_ZERO
    if a:
        assert a * a.inv() == gf.F_ONE


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=-200, max_value=200))
def test_one_plus_tpow_nonzero(w):
    if w == 0:
        return
    assert one_plus_tpow(w) != gf.F_ZERO
