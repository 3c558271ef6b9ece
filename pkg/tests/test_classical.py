"""Eisenstein series, Bernoulli numbers, Miller bases, delta, hauptmoduls.

Reference values come from independent constructions: sympy's Bernoulli
numbers, the pentagonal number theorem for eta products, and hand-checked
small q-expansion coefficients.
"""

from __future__ import annotations

import pytest
import sympy

from katzexp import (
    QQ,
    bernoulli,
    delta_series,
    dim_weight,
    eisenstein_series,
    hauptmodul_series,
    miller_basis,
    miller_form,
    qs_from_list,
    qs_mul,
    qs_pow,
    qs_sub,
    qs_val,
    sigma_k,
)
from katzexp.errors import InvalidWeight, PrecisionTooLow, UnsupportedPrime


def eta_quotient_pentagonal(N):
    """prod_{n>=1} (1 - q^n) to precision N, via the pentagonal number theorem."""
    coeffs = [QQ(0)] * N
    k = 0
    while True:
        done = True
        for kk in (k, -k) if k else (0,):
            g = kk * (3 * kk - 1) // 2
            if g < N:
                coeffs[g] += QQ(-1) ** abs(kk)
                done = False
        if done:
            break
        k += 1
    return qs_from_list(coeffs)


@pytest.mark.parametrize("k", range(0, 102, 2))
def test_bernoulli_matches_sympy(k):
    num, den = sympy.bernoulli(k).as_numer_denom()
    assert bernoulli(k) == QQ(int(num), int(den))


def test_bernoulli_rejects_odd_and_negative():
    for k in (1, 3, 17, -2):
        with pytest.raises(InvalidWeight):
            bernoulli(k)


@pytest.mark.parametrize("k", range(2, 62, 2))
def test_von_staudt_clausen(k):
    total = bernoulli(k)
    p = 2
    while p <= k + 1:
        if sympy.isprime(p) and k % (p - 1) == 0:
            total += QQ(1, p)
        p += 1
    assert total.denominator == 1


def test_sigma_k():
    assert sigma_k(6, 1) == 12
    assert sigma_k(6, 3) == 252
    assert sigma_k(1, 9) == 1
    assert sigma_k(12, 0) == 6


def test_eisenstein_small_coefficients():
    e4 = eisenstein_series(4, 4)
    assert list(e4.coeffs) == [1, 240, 2160, 6720]
    e6 = eisenstein_series(6, 3)
    assert list(e6.coeffs) == [1, -504, -16632]
    e14 = eisenstein_series(14, 2)
    assert e14.coeffs[1] == -24
    assert e4.weight_tag == 4


def test_eisenstein_multiplicative_coefficient():
    # a_n / a_1 = sigma_{k-1}(n)
    e8 = eisenstein_series(8, 13)
    assert e8.coeffs[12] == e8.coeffs[1] * sigma_k(12, 7)


def test_eisenstein_invalid_weights():
    for k in (0, 2, 5, -4):
        with pytest.raises(InvalidWeight):
            eisenstein_series(k, 10)


def test_delta_matches_eta_product():
    N = 60
    eta24 = qs_pow(eta_quotient_pentagonal(N), 24)
    shifted = qs_from_list([QQ(0)] + list(eta24.coeffs[: N - 1]))
    d = delta_series(N)
    assert d.coeffs == shifted.coeffs
    assert d.weight_tag == 12


def test_delta_first_coefficients():
    d = delta_series(6)
    assert list(d.coeffs) == [0, 1, -24, 252, -1472, 4830]


KNOWN_DIMS = {0: 1, 2: 0, 4: 1, 6: 1, 8: 1, 10: 1, 12: 2, 14: 1,
              16: 2, 18: 2, 20: 2, 22: 2, 24: 3, 26: 2, 48: 5, 50: 4}


@pytest.mark.parametrize("k,d", sorted(KNOWN_DIMS.items()))
def test_dim_weight(k, d):
    got_d, eps = dim_weight(k)
    assert got_d == d
    assert eps == (0 if k % 4 == 0 else 1)


@pytest.mark.parametrize("k", [12, 24, 36, 48, 50])
def test_miller_basis_unit_upper_triangular(k):
    d, _ = dim_weight(k)
    basis = miller_basis(k, d + 5)
    assert len(basis.forms) == d
    for j, g in enumerate(basis.forms):
        for i in range(j):
            assert g.coeffs[i] == 0
        assert g.coeffs[j] == 1
        assert all(c.denominator == 1 for c in g.coeffs)
        assert g.weight_tag == k


def test_miller_form_is_product_of_generators():
    # weight 24, j = 1: delta * E4^3 (eps = 0, a = 3)
    g = miller_form(24, 1, 10)
    ref = qs_mul(delta_series(10), qs_pow(eisenstein_series(4, 10), 3))
    assert g.coeffs == ref.coeffs
    # weight 50, j = 2: delta^2 * E4^5 * E6
    g = miller_form(50, 2, 8)
    ref = qs_mul(
        qs_pow(delta_series(8), 2),
        qs_mul(qs_pow(eisenstein_series(4, 8), 5), eisenstein_series(6, 8)),
    )
    assert g.coeffs == ref.coeffs


def test_products_lie_in_miller_span():
    # E4 * E6 and E6^2 expand exactly over the Miller basis of the product weight
    for f, k in [
        (qs_mul(eisenstein_series(4, 12), eisenstein_series(6, 12)), 10),
        (qs_pow(eisenstein_series(6, 12), 2), 12),
        (qs_mul(delta_series(12), eisenstein_series(4, 12)), 16),
    ]:
        d, _ = dim_weight(k)
        rem = f
        for j, g in enumerate(miller_basis(k, 12).forms):
            rem = qs_sub(rem, qs_mul(qs_from_list([rem.coeffs[j]] + [QQ(0)] * 11), g))
        assert all(c == 0 for c in rem.coeffs)


def test_miller_precision_too_low():
    with pytest.raises(PrecisionTooLow):
        miller_basis(24, 2)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_eisenstein_weight_p_minus_1_is_1_mod_p(p):
    e = eisenstein_series(p - 1, 30)
    assert e.coeffs[0] == 1
    assert qs_val(qs_sub(e, qs_from_list([QQ(1)] + [QQ(0)] * 29)), p) >= 1


@pytest.mark.parametrize("p,n", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_eisenstein_power_congruence_mod_p_squared(p, n):
    # E_{n(p-1)} and E_{p-1}^n agree one level deeper than mod p
    a = eisenstein_series(n * (p - 1), 40)
    b = qs_pow(eisenstein_series(p - 1, 40), n)
    assert qs_val(qs_sub(a, b), p) >= 2


@pytest.mark.parametrize("p", [5, 7, 13])
def test_hauptmodul_matches_eta_quotient(p):
    N = 40
    e = 24 // (p - 1)
    eta = eta_quotient_pentagonal(N)
    eta_p = qs_from_list(
        [eta.coeffs[n // p] if n % p == 0 else QQ(0) for n in range(N)]
    )
    ratio = qs_pow(qs_mul(eta_p, qs_pow(eta, -1)), e)
    expect = qs_from_list([QQ(0)] + list(ratio.coeffs[: N - 1]))
    got = hauptmodul_series(p, N)
    assert got.coeffs == expect.coeffs


def test_hauptmodul_leading_coefficients():
    t5 = hauptmodul_series(5, 4)
    assert t5.coeffs[0] == 0
    assert t5.coeffs[1] == 1
    assert t5.coeffs[2] == 6


def test_hauptmodul_unsupported_prime():
    for p in (11, 17, 2, 3):
        with pytest.raises(UnsupportedPrime):
            hauptmodul_series(p, 10)
