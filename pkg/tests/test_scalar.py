"""Exactness and algebra of the cyclotomic scalar layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisweil.scalar import (
    CycNumber,
    cyclotomic_polynomial,
    gauss_sum,
    imaginary_unit,
    legendre_symbol,
    root_of_unity,
    run_conductor,
    zeta_p,
)

ODD_PRIMES = [3, 5, 7, 11, 13]


def brute_gauss_sum(p: int, conductor: int) -> CycNumber:
    # Independent oracle: term-by-term evaluation of sum (t/p) zeta_p^t.
    out = CycNumber.zero(conductor)
    for t in range(1, p):
        out = out + legendre_symbol(t, p) * zeta_p(p, t, conductor=conductor)
    return out


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    # Phi_{4p}(x) = sum_{k<p} (-1)^k x^{2k} for odd primes p
    for p in ODD_PRIMES:
        coeffs = [0] * (2 * p - 1)
        coeffs[0::4] = [1] * len(coeffs[0::4])
        coeffs[2::4] = [-1] * len(coeffs[2::4])
        assert cyclotomic_polynomial(4 * p) == tuple(coeffs)


def test_root_of_unity_identity():
    assert root_of_unity(3, 0) == CycNumber.one(3)


def test_root_of_unity_omega_relation():
    omega = root_of_unity(3, 1)
    assert omega * omega + omega + 1 == CycNumber.zero(3)


def test_root_of_unity_i_squares_to_minus_one():
    i = root_of_unity(4, 1)
    assert i * i == -CycNumber.one(4)
    assert imaginary_unit(12) ** 2 == -CycNumber.one(12)


@pytest.mark.parametrize("n,k", [(12, 1), (12, 8), (20, 5), (28, 21), (7, 3)])
def test_root_of_unity_order(n, k):
    from math import gcd

    assert root_of_unity(n, k).multiplicative_order() == n // gcd(n, k)


def test_gauss_sum_p3_closed_form():
    # two-term evaluation: zeta_3 - zeta_3^2
    g = gauss_sum(3, conductor=3)
    z = root_of_unity(3, 1)
    assert g == z - z**2
    assert g * g == CycNumber.from_rational(3, -3)


def test_gauss_sum_p5_closed_form():
    g = gauss_sum(5, conductor=5)
    z = root_of_unity(5, 1)
    assert g == z - z**2 - z**3 + z**4
    assert g * g == CycNumber.from_rational(5, 5)


def test_gauss_sum_p7_square():
    g = gauss_sum(7)
    assert g * g == CycNumber.from_rational(run_conductor(7), -7)


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_gauss_sum_against_bruteforce_and_norm(p):
    n = run_conductor(p)
    g = gauss_sum(p)
    assert g == brute_gauss_sum(p, n)
    assert g * g.conj() == CycNumber.from_rational(n, p)
    sign = -1 if p % 4 == 3 else 1
    assert g * g == CycNumber.from_rational(n, sign * p)


@pytest.mark.parametrize("p", [2, 9, 15, 1])
def test_gauss_sum_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        gauss_sum(p)


def small_cyc(n):
    return st.builds(
        lambda nums, den: CycNumber(n, nums, den),
        st.lists(st.integers(-6, 6), min_size=len_phi(n), max_size=len_phi(n)),
        st.integers(1, 5),
    )


def len_phi(n):
    return len(cyclotomic_polynomial(n)) - 1


@settings(max_examples=60, deadline=None)
@given(a=small_cyc(12), b=small_cyc(12), c=small_cyc(12))
def test_field_axioms_hold_exactly(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == CycNumber.one(12)


@settings(max_examples=60, deadline=None)
@given(a=small_cyc(20), b=small_cyc(20))
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


@pytest.mark.parametrize("n,k", [(12, 5), (20, 13), (28, 3)])
def test_conj_of_root_is_inverse_root(n, k):
    assert root_of_unity(n, k).conj() == root_of_unity(n, -k)


def test_embedding_matches_floats():
    # diagnostics-only float embedding should agree with exact values
    g = gauss_sum(5)
    assert abs(g.to_complex() - 5**0.5) < 1e-9
    g3 = gauss_sum(3)
    assert abs(g3.to_complex() - 1j * 3**0.5) < 1e-9


def test_json_roundtrip():
    x = gauss_sum(3) / 7 + root_of_unity(12, 5)
    assert CycNumber.from_json(x.to_json()) == x
    assert x.to_json()["N"] == 12


def test_rational_detection():
    x = root_of_unity(12, 6)  # = -1
    assert x.is_rational() and x.rational_value() == Fraction(-1)
    assert not root_of_unity(12, 4).is_rational()
