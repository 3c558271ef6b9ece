"""Classical level-1 modular forms: Eisenstein series, Delta, Miller bases.

Everything is exact: Bernoulli numbers from the defining recurrence, divisor
sums by direct enumeration, eta-quotient hauptmoduls by sparse products of
(1 - q^m)^(+-e) factors.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ._rational import QQ, ZZ
from .errors import InvalidWeight, PrecisionTooLow, UnsupportedPrime
from .series import QSeries, qs_mul, qs_pow, qs_scalar_mul, qs_sub, qs_truncate

_ZERO = QQ(0)

# B_0, B_2, B_4, ...; odd-index Bernoulli numbers vanish past B_1 = -1/2,
# so the table keeps even indices only.
_bernoulli_even = [QQ(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int):
    """Exact Bernoulli number B_k for even k >= 0.

    Uses the defining recurrence sum_{j<=m} C(m+1,j) B_j = 0, restricted to
    even j (plus the lone B_1 term), memoized across calls.
    """
    if k < 0 or k % 2 != 0:
        raise InvalidWeight(f"B_k implemented for even k >= 0, got {k}")
    half = k // 2
    if half < len(_bernoulli_even):
        return _bernoulli_even[half]
    with _bernoulli_lock:
        while len(_bernoulli_even) <= half:
            m = 2 * len(_bernoulli_even)
            # sum over even j < m, with the j=0 and j=1 terms folded in:
            # B_m = -(1/(m+1)) * (1 - (m+1)/2 + sum_{j=2,4,..,m-2} C(m+1,j) B_j)
            acc = QQ(2 - (m + 1), 2)
            binom = ZZ(1)
            for j in range(0, m - 2, 2):
                binom = binom * ((m + 1 - j) * (m - j)) // ((j + 1) * (j + 2))
                acc += binom * _bernoulli_even[j // 2 + 1]
            _bernoulli_even.append(-acc / (m + 1))
    return _bernoulli_even[half]


def sigma_k(n: int, k: int):
    """Divisor power sum sigma_k(n) = sum of d^k over divisors d of n."""
    if n < 1:
        raise ValueError("sigma_k needs n >= 1")
    total = ZZ(0)
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += ZZ(d) ** k
            e = n // d
            if e != d:
                total += ZZ(e) ** k
        d += 1
    return total


def eisenstein_series(k: int, N: int) -> QSeries:
    """Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n to N terms."""
    if k < 4 or k % 2 != 0:
        raise InvalidWeight(f"E_k needs even k >= 4, got {k}")
    factor = QQ(2 * k) / bernoulli(k)
    coeffs = [_ZERO] * N
    coeffs[0] = QQ(1)
    # accumulate d^(k-1) into every multiple of d: one big power per divisor
    sums = [ZZ(0)] * N
    for d in range(1, N):
        pw = ZZ(d) ** (k - 1)
        for m in range(d, N, d):
            sums[m] += pw
    for n in range(1, N):
        coeffs[n] = -factor * sums[n]
    return QSeries(tuple(coeffs), weight_tag=k)


def delta_series(N: int) -> QSeries:
    """The discriminant cusp form (E_4^3 - E_6^2)/1728 to N terms."""
    if N < 1:
        raise ValueError("need N >= 1")
    e4 = eisenstein_series(4, N)
    e6 = eisenstein_series(6, N)
    diff = qs_sub(qs_pow(e4, 3), qs_mul(e6, e6))
    return QSeries(qs_scalar_mul(QQ(1, 1728), diff).coeffs, weight_tag=12)


def dim_weight(k: int):
    """(d_k, eps(k)) for even k >= 0: dimension of the weight-k space and the
    exponent of E_6 in its Miller basis."""
    if k < 0 or k % 2 != 0:
        raise InvalidWeight(f"dimension formula needs even k >= 0, got {k}")
    d = k // 12 + (0 if k % 12 == 2 else 1)
    eps = 0 if k % 4 == 0 else 1
    return d, eps


@dataclass(frozen=True)
class MillerBasis:
    weight: int
    forms: tuple
    dims: tuple  # (d_k, eps(k))


# caches for form construction; keyed by precision so truncations never mix
_pow_cache: dict = {}
_pow_lock = threading.Lock()


def _base_series(name: str, N: int) -> QSeries:
    key = (name, 1, N)
    got = _pow_cache.get(key)
    if got is None:
        if name == "E4":
            got = eisenstein_series(4, N)
        elif name == "E6":
            got = eisenstein_series(6, N)
        else:
            got = delta_series(N)
        with _pow_lock:
            _pow_cache[key] = got
    return got


def _cached_pow(name: str, e: int, N: int) -> QSeries:
    """name^e at precision N via repeated halving, memoized."""
    if e == 0:
        base = _base_series(name, N)
        return qs_pow(base, 0)
    if e == 1:
        return _base_series(name, N)
    key = (name, e, N)
    got = _pow_cache.get(key)
    if got is None:
        h = e // 2
        got = qs_mul(_cached_pow(name, h, N), _cached_pow(name, e - h, N))
        with _pow_lock:
            _pow_cache[key] = got
    return got


def miller_form(k: int, j: int, N: int) -> QSeries:
    """The basis form Delta^j E_4^a E_6^eps of weight k, leading term q^j."""
    d, eps = dim_weight(k)
    if not 0 <= j < d:
        raise ValueError(f"index {j} outside 0..{d - 1} for weight {k}")
    a = (k - 12 * j - 6 * eps) // 4
    g = _cached_pow("D", j, N)
    if a:
        g = qs_mul(g, _cached_pow("E4", a, N))
    if eps:
        g = qs_mul(g, _base_series("E6", N))
    return QSeries(g.coeffs, weight_tag=k)


def miller_basis(k: int, N: int) -> MillerBasis:
    """All d_k basis forms of weight k, ordered by leading q-exponent."""
    d, eps = dim_weight(k)
    if N < d:
        raise PrecisionTooLow(f"weight {k} needs at least {d} coefficients, got {N}")
    return MillerBasis(k, tuple(miller_form(k, j, N) for j in range(d)), (d, eps))


def _sparse_mul_in_place(c: list, m: int, reps: int):
    # multiply by (1 - q^m)^reps
    N = len(c)
    for _ in range(reps):
        for i in range(N - 1, m - 1, -1):
            c[i] = c[i] - c[i - m]


def _sparse_div_in_place(c: list, m: int, reps: int):
    # divide by (1 - q^m)^reps, i.e. multiply by the geometric series in q^m
    N = len(c)
    for _ in range(reps):
        for i in range(m, N):
            c[i] = c[i] + c[i - m]


def hauptmodul_series(p: int, N: int) -> QSeries:
    """Genus-zero uniformizer t = q * prod (1-q^{pn})^e / prod (1-q^n)^e,
    e = 24/(p-1); available for p in {5, 7, 13}."""
    if p not in (5, 7, 13):
        raise UnsupportedPrime(f"hauptmodul available for p in 5, 7, 13; got {p}")
    if N < 1:
        raise ValueError("need N >= 1")
    e = 24 // (p - 1)
    c = [ZZ(0)] * N
    if N >= 2:
        c[1] = ZZ(1)
        for m in range(1, N - 1):
            _sparse_div_in_place(c, m, e)
        for m in range(1, (N - 1) // p + 1):
            _sparse_mul_in_place(c, p * m, e)
    return QSeries(tuple(QQ(x) for x in c), weight_tag=0)


def clear_caches():
    """Drop the memoized power series (not the Bernoulli table)."""
    with _pow_lock:
        _pow_cache.clear()
