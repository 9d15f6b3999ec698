import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hkcalc import dyadic
from hkcalc.dyadic import (GammaElement, LevelMismatch, XElement, augmentation, coarsen, gamma_mul,
                           increments, sharp, to_gamma, uv_identity_holds, uv_identity_sides,
                           uv_sample, xor_convolve)
from hkcalc.hilbert_kunz import phi_sample
from hkcalc.poly import Poly2, parse_poly

from oracles import brute_colength, naive_xor_convolve

F = Fraction


def ramp(n):
    q = 2**n
    return XElement(n, [F(i, q) for i in range(q + 1)])


def jump(n):
    return XElement(n, [0] + [1] * 2**n)


def brute_phi(terms, r, n):
    q = 2**n
    return XElement(n, [F(brute_colength(terms, r, q, i), q**r) for i in range(q + 1)])


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def x_elements(level):
    return st.lists(rationals, min_size=2**level, max_size=2**level).map(
        lambda d: XElement.from_increments(level, d))


@st.composite
def x_pair(draw, max_level=6):
    level = draw(st.integers(1, max_level))
    return draw(x_elements(level)), draw(x_elements(level))


# -- increments and containers -------------------------------------------------

def test_increments_examples():
    assert increments(ramp(3)) == [F(1, 8)] * 8
    for n in range(1, 5):
        q = 2**n
        assert increments(uv_sample(n)) == [F(2 * q - 1 - 2 * i, q * q) for i in range(q)]
    assert increments(jump(3)) == [1] + [0] * 7


def test_xelement_validation():
    with pytest.raises(ValueError):
        XElement(1, [0, 1])
    with pytest.raises(ValueError):
        XElement(1, [1, 1, 1])
    with pytest.raises(ValueError):
        GammaElement(2, [1, 2, 3])


# -- XOR convolution -----------------------------------------------------------

@pytest.mark.parametrize("method", ["naive", "wht", "auto"])
def test_xor_convolve_examples(method):
    assert xor_convolve([1, 0], [0, 1], method) == [0, 1]
    assert xor_convolve([1] * 4, [1] * 4, method) == [4] * 4


def test_xor_convolve_errors():
    with pytest.raises(ValueError):
        xor_convolve([1, 2], [1, 2, 3, 4])
    with pytest.raises(ValueError):
        xor_convolve([1, 2, 3], [1, 2, 3])
    with pytest.raises(ValueError):
        xor_convolve([1, 2], [1, 2], "fft")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5).flatmap(lambda k: st.tuples(
    st.lists(rationals, min_size=2**k, max_size=2**k), st.lists(rationals, min_size=2**k, max_size=2**k))))
def test_wht_equals_naive(uv):
    u, v = uv
    naive = xor_convolve(u, v, "naive")
    assert xor_convolve(u, v, "wht") == naive
    assert naive == naive_xor_convolve(u, v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4).flatmap(lambda k: st.lists(
    st.lists(rationals, min_size=2**k, max_size=2**k), min_size=3, max_size=3)))
def test_convolution_commutative_associative_identity(vs):
    a, b, c = vs
    assert xor_convolve(a, b) == xor_convolve(b, a)
    assert xor_convolve(xor_convolve(a, b), c) == xor_convolve(a, xor_convolve(b, c))
    e = [1] + [0] * (len(a) - 1)
    assert xor_convolve(a, e) == [F(x) for x in a]


# -- the # product -------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 6))
def test_sharp_with_jump_is_identity(n):
    a = XElement.from_increments(n, [F(i * i - 3, 7) for i in range(2**n)])
    assert sharp(a, jump(n)) == a


@pytest.mark.parametrize("n", range(0, 4))
def test_sharp_ramp_ramp_is_phi_of_x_plus_y(n):
    assert sharp(ramp(n), ramp(n)) == ramp(n)
    assert sharp(ramp(n), ramp(n)) == brute_phi({(1, 0), (0, 1)}, 2, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sharp_uv_x3_gives_colengths_of_uv_plus_x3(n):
    q = 2**n
    s = sharp(uv_sample(n), phi_sample(parse_poly("x^3", "x"), n))
    G = {(1, 1, 0), (0, 0, 3)}
    powers = range(q + 1) if n < 3 else [1, 2, 5]
    for i in powers:
        assert s.at(i) * q**3 == brute_colength(G, 3, q, i)


def test_sharp_level_mismatch():
    with pytest.raises(LevelMismatch):
        sharp(ramp(2), ramp(3))


@settings(max_examples=20, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3)), min_size=1, max_size=2).filter(lambda s: (0,) not in s),
       st.sets(st.tuples(st.integers(0, 3)), min_size=1, max_size=2).filter(lambda s: (0,) not in s),
       st.integers(0, 3))
def test_sharp_realises_disjoint_sum(fa, ga, n):
    f = Poly2(frozenset(fa), ("x",))
    g = Poly2(frozenset(ga), ("y",))
    both = {(t[0], 0) for t in fa} | {(0, t[0]) for t in ga}
    assert sharp(phi_sample(f, n), phi_sample(g, n)) == brute_phi(both, 2, n)


@settings(max_examples=40, deadline=None)
@given(x_pair())
def test_coarsening_commutes_with_sharp(ab):
    a, b = ab
    assert coarsen(sharp(a, b)) == sharp(coarsen(a), coarsen(b))


# -- Gamma_Q ---------------------------------------------------------------------

def test_to_gamma_examples():
    for n in range(1, 5):
        q = 2**n
        assert to_gamma(uv_sample(n)).coeffs == tuple(F((-1) ** i * (2 * q - 1 - 2 * i), q * q) for i in range(q))
    a = XElement(0, [0, F(5, 3)])
    assert to_gamma(a).coeffs == (F(5, 3),)
    assert to_gamma(jump(3)) == GammaElement.basis(3, 0)


def test_gamma_mul_basis():
    for n in range(1, 4):
        x = GammaElement(n, [F(i + 1, 3) for i in range(2**n)])
        assert gamma_mul(GammaElement.basis(n, 0), x) == x
        for i in range(2**n):
            for j in range(2**n):
                assert gamma_mul(GammaElement.basis(n, i), GammaElement.basis(n, j)) == GammaElement.basis(n, i ^ j)
    with pytest.raises(LevelMismatch):
        gamma_mul(GammaElement.basis(1, 0), GammaElement.basis(2, 0))


@settings(max_examples=60, deadline=None)
@given(x_pair())
def test_sharp_maps_to_gamma_product(ab):
    a, b = ab
    assert to_gamma(sharp(a, b)) == gamma_mul(to_gamma(a), to_gamma(b))


@settings(max_examples=60, deadline=None)
@given(x_pair())
def test_augmentation_is_multiplicative(ab):
    x, y = to_gamma(ab[0]), to_gamma(ab[1])
    assert augmentation(gamma_mul(x, y)) == augmentation(x) * augmentation(y)


def test_augmentation_examples():
    for n in range(0, 6):
        assert augmentation(to_gamma(uv_sample(n))) == F(1, 2**n)
    for n in range(1, 6):
        assert augmentation(to_gamma(ramp(n))) == 0
    a = XElement(0, [0, F(-2, 9)])
    assert augmentation(to_gamma(a)) == F(-2, 9)


# -- coarsening ----------------------------------------------------------------

def test_coarsen_examples():
    assert coarsen(XElement(1, [0, F(1, 3), 1])) == XElement(0, [0, 1])
    f = parse_poly("x^3+y^3+x*y*z", "xyz")
    for n in range(1, 4):
        assert coarsen(phi_sample(f, n)).values == phi_sample(f, n - 1).values
    a = XElement.from_increments(4, [F(i, 5) for i in range(16)])
    assert coarsen(coarsen(a)) == XElement(2, a.values[::4])
    with pytest.raises(ValueError):
        coarsen(XElement(0, [0, 1]))


def test_coarsen_matches_paired_coefficients():
    # to_gamma(coarsen(a)) has coefficients (-1)^i (d_2i + d_2i+1)
    a = XElement.from_increments(3, [F(i * i, 4) for i in range(8)])
    d = increments(a)
    expected = tuple((-1) ** i * (d[2 * i] + d[2 * i + 1]) for i in range(4))
    assert to_gamma(coarsen(a)).coeffs == expected


# -- the uv identity -------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_uv_identity_on_x3(n):
    assert uv_identity_holds(phi_sample(parse_poly("x^3", "x"), n))


def test_uv_identity_jump_level_one():
    assert uv_identity_sides(jump(1)) == (1, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(x_elements))
def test_uv_identity_random(a):
    assert uv_identity_holds(a)


def test_uv_identity_rejects_level_zero():
    with pytest.raises(ValueError):
        uv_identity_sides(XElement(0, [0, 1]))


def test_vectors_use_exact_rationals():
    a = XElement.from_increments(2, [0.5, 0.25, 0, 0.25])
    assert all(isinstance(v, Fraction) for v in a.values)
    assert all(isinstance(v, Fraction) for v in xor_convolve([1, 2], [3, 4], "wht"))
