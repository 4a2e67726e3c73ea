"""Exact arithmetic on the coefficient layer.

Golden values here are classical: cyclotomic polynomial tables, Mobius
sums of primitive roots, and quadratic Gauss sums.  Everything is checked
with exact equality; there are no tolerances anywhere in this suite.
"""

import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from heckebc import (
    Cyc,
    LaurentV,
    MultiLaurent,
    SqrtScalar,
    character_from_exponents,
    cyclotomic,
    msym,
    unramified_character,
)

FLIP = ((0, 1), (1, 0))
ID2 = ((1, 0), (0, 1))


def small_cyc(level=12):
    coords = st.lists(st.integers(-4, 4), min_size=1, max_size=level)
    return coords.map(lambda cs: Cyc(level, tuple(cs)))


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def test_cyclotomic_table():
    # low-degree coefficients first, classical table
    table = {
        1: (-1, 1),
        2: (1, 1),
        3: (1, 1, 1),
        4: (1, 0, 1),
        5: (1, 1, 1, 1, 1),
        6: (1, -1, 1),
        8: (1, 0, 0, 0, 1),
        9: (1, 0, 0, 1, 0, 0, 1),
        12: (1, 0, -1, 0, 1),
    }
    for m, coeffs in table.items():
        assert cyclotomic(m) == coeffs


def test_cyclotomic_degree_is_totient():
    def phi(m):
        return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)

    for m in range(1, 31):
        assert len(cyclotomic(m)) == phi(m) + 1


# ---------------------------------------------------------------------------
# Cyc


def test_root_of_unity_order():
    for m in (2, 3, 4, 5, 8, 12):
        z = Cyc.root(m, 1)
        acc = Cyc.one(m)
        for _ in range(m):
            acc = acc * z
        assert acc == Cyc.one(m)


def test_full_root_sum_vanishes():
    for p in (3, 5, 7):
        total = Cyc.zero(p)
        for k in range(p):
            total = total + Cyc.root(p, k)
        assert total.is_zero()


def test_primitive_root_sum_is_mobius():
    # sum over primitive m-th roots equals mu(m)
    mobius = {4: 0, 5: -1, 6: 1, 8: 0, 9: 0, 10: 1, 12: 0, 15: 1}
    for m, mu in mobius.items():
        total = Cyc.zero(m)
        for k in range(m):
            if math.gcd(k, m) == 1:
                total = total + Cyc.root(m, k)
        assert total == Cyc.from_rational(Fraction(mu), m)


def test_quadratic_gauss_sum():
    # g^2 = (-1)^((p-1)/2) * p, with g built from Legendre symbols
    for p in (3, 5, 7, 11, 13):
        g = Cyc.zero(p)
        for a in range(1, p):
            sign = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
            g = g + Cyc.from_rational(Fraction(sign), p) * Cyc.root(p, a)
        want = Fraction(p if p % 4 == 1 else -p)
        assert g * g == Cyc.from_rational(want, p)


def test_cross_level_identities():
    assert Cyc.root(2, 1) == Cyc.from_rational(Fraction(-1), 1)
    assert Cyc.root(6, 1) * Cyc.root(6, 1) == Cyc.root(3, 1)
    assert Cyc.root(12, 3) == Cyc.root(4, 1)
    # equality promotes through lifts
    assert Cyc.root(3, 1).lift(12) == Cyc.root(12, 4)


def test_conjugation_inverts_roots():
    for m in (5, 8, 12):
        for k in range(1, m):
            assert Cyc.root(m, k).conj() == Cyc.root(m, (-k) % m)


def test_galois_action_on_roots():
    for k in (1, 3, 7, 9):
        assert Cyc.root(20, 1).galois(k) == Cyc.root(20, k)


def test_inverse_of_unit():
    samples = [
        Cyc.root(8, 3),
        Cyc.one(5) + Cyc.root(5, 1),
        Cyc.from_rational(Fraction(3, 7), 12) + Cyc.root(12, 5),
    ]
    for z in samples:
        assert z * z.inverse() == Cyc.one(z.m)


def test_rational_detection():
    z = Cyc.root(4, 1)
    assert not z.is_rational()
    assert (z * z).is_rational()
    assert (z * z).rational() == Fraction(-1)


@settings(max_examples=40, deadline=None)
@given(small_cyc(), small_cyc(), small_cyc())
def test_cyc_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=30, deadline=None)
@given(small_cyc(), small_cyc())
def test_conj_is_ring_hom(a, b):
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()


# ---------------------------------------------------------------------------
# LaurentV


def test_laurent_basics():
    v = LaurentV.v(1)
    f = v + LaurentV.const(2)
    assert f.coeff(1) == 1
    assert f.coeff(0) == 2
    assert f.coeff(5) == 0
    assert f.min_deg() == 0 and f.max_deg() == 1
    assert f.shift(3) == LaurentV({4: 1, 3: 2})


def test_laurent_monomial_inverse():
    f = LaurentV({3: Fraction(2)})
    assert f * f.inverse() == LaurentV.one()
    g = LaurentV({1: 1, 0: 1})
    try:
        g.inverse()
    except ValueError:
        pass
    else:  # pragma: no cover
        raise AssertionError("binomial inverse should fail")


def test_laurent_substitute_power():
    f = LaurentV({2: 1, -1: 3, 0: 5})
    assert f.substitute_power(3) == LaurentV({6: 1, -3: 3, 0: 5})


def test_laurent_specialize_to_sqrt():
    # v |-> sqrt(p); even powers land in the plain part
    assert LaurentV({2: 1}).specialize(3, 1) == Fraction(3)
    assert LaurentV({-2: 1}).specialize(5, 1) == Fraction(1, 5)
    s = LaurentV({1: 1}).specialize(3, 1)
    assert s * s == Fraction(3)
    mixed = LaurentV({1: 1, 0: 2}).specialize(3, 1)
    assert mixed == SqrtScalar(3, Cyc.from_rational(Fraction(2), 1), Cyc.one(1))


@settings(max_examples=30, deadline=None)
@given(
    st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4),
    st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4),
)
def test_laurent_ring_commutes(ca, cb):
    a, b = LaurentV(ca), LaurentV(cb)
    assert a + b == b + a
    assert a * b == b * a


# ---------------------------------------------------------------------------
# SqrtScalar


def test_sqrt_scalar_norm_form():
    a = Cyc.from_rational(Fraction(1, 2), 1)
    b = Cyc.from_rational(Fraction(3), 1)
    s = SqrtScalar(2, a, b)
    sbar = SqrtScalar(2, a, Cyc.zero(1) - b)
    # (a + b sqrt p)(a - b sqrt p) = a^2 - p b^2
    assert s * sbar == Fraction(1, 4) - 2 * Fraction(9)


def test_sqrt_scalar_inverse():
    s = SqrtScalar(3, Cyc.from_rational(Fraction(2), 1), Cyc.one(1))
    assert s * s.inverse() == Fraction(1)


def test_sqrt_scalar_plain_collapse():
    s = SqrtScalar(5, Cyc.from_rational(Fraction(7, 3), 1), Cyc.zero(1))
    assert s == Fraction(7, 3)


# ---------------------------------------------------------------------------
# MultiLaurent and orbit sums


def test_multilaurent_monomial_algebra():
    x = MultiLaurent.monomial((1, 0))
    y = MultiLaurent.monomial((0, 1))
    f = x * y + x * x
    assert f.coeff((1, 1)) == 1
    assert f.coeff((2, 0)) == 1
    assert f.support() == [(1, 1), (2, 0)]


def test_multilaurent_act_permutes_exponents():
    f = MultiLaurent.monomial((2, -1), Fraction(3))
    g = f.act(FLIP)
    assert g == MultiLaurent.monomial((-1, 2), Fraction(3))
    assert f.act(ID2) == f


def test_multilaurent_substitute_power():
    f = MultiLaurent.monomial((1, -2)) + MultiLaurent.monomial((0, 1))
    assert f.substitute_power(2) == (
        MultiLaurent.monomial((2, -4)) + MultiLaurent.monomial((0, 2))
    )


def test_multilaurent_evaluate():
    f = MultiLaurent.monomial((1, 0)) + MultiLaurent.monomial((0, 1))
    assert f.evaluate((Fraction(2), Fraction(3))) == Fraction(5)
    g = MultiLaurent.monomial((-1, 0))
    assert g.evaluate((Fraction(2, 7), Fraction(1))) == Fraction(7, 2)


def test_msym_orbit_sum():
    f = msym((ID2, FLIP), (2, 0))
    assert f == MultiLaurent.monomial((2, 0)) + MultiLaurent.monomial((0, 2))
    assert f.act(FLIP) == f
    # stabilized weight appears once, not twice
    g = msym((ID2, FLIP), (1, 1))
    assert g == MultiLaurent.monomial((1, 1))


# ---------------------------------------------------------------------------
# torus characters


def test_unramified_character_is_multiplicative():
    eta = unramified_character((Fraction(2), Fraction(3)))
    assert eta((1, -1)) == Fraction(2, 3)
    assert eta((0, 0)) == Fraction(1)
    for lam in ((1, 0), (2, -1), (-3, 2)):
        for mu in ((0, 1), (1, 1), (-1, -2)):
            total = tuple(a + b for a, b in zip(lam, mu))
            assert eta(total) == eta(lam) * eta(mu)


def test_character_from_exponents():
    eta = character_from_exponents(8, (1, 2))
    assert eta((1, 1)) == Cyc.root(8, 3)
    assert eta((2, 3)) == Cyc.root(8, 0)
    assert eta((1, 0)) * eta((0, 1)) == eta((1, 1))
