"""Hecke operators on q-expansions, their weight-twisted versions, and
iteration of projector polynomials in U and T_ell.

Operators here act purely on truncated q-expansions. Each application of U
or T_ell divides the usable precision, so drivers should budget input
precision backward from the length they need out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ._rational import INF, QQ, ZZ, is_prime
from .classical import eisenstein_series
from .errors import EllEqualsP, InvalidWeight, PrecisionTooLow
from .series import (
    QSeries,
    apply_U,
    apply_V,
    qs_add,
    qs_inv,
    qs_mul,
    qs_pow,
    qs_scalar_mul,
    qs_truncate,
)

_ZERO = QQ(0)


def hecke_T_ell(f: QSeries, k: int, ell: int, *, p: int | None = None) -> QSeries:
    """T_ell at weight k: a_n -> a_{ell*n} + ell^(k-1) * a_{n/ell}.

    The divisor term only contributes when ell | n. Output precision is
    floor(prec/ell). Pass p to guard against accidentally using ell = p,
    which is the job of U, not T_ell.
    """
    if not is_prime(ell):
        raise InvalidWeight(f"T_ell needs a prime index, got {ell}")
    if p is not None and ell == p:
        raise EllEqualsP(f"T_{ell} coincides with the working prime; use U")
    N = f.prec
    M = N // ell
    if M < 1:
        raise PrecisionTooLow(f"prec {N} leaves no coefficients after T_{ell}")
    scale = QQ(ZZ(ell) ** (k - 1)) if k >= 1 else QQ(1, ZZ(ell) ** (1 - k))
    out = []
    for n in range(M):
        c = f.coeffs[ell * n]
        if n % ell == 0 and n // ell < N:
            c = c + scale * f.coeffs[n // ell]
        out.append(c)
    return QSeries(tuple(out), f.weight_tag)


def twisted_U(f: QSeries, n: int, p: int) -> QSeries:
    """U twisted into weight 0 by E_{p-1}^n: U(f * E^n) / E^n."""
    N = f.prec
    if N < p:
        raise PrecisionTooLow(f"prec {N} leaves no coefficients after U")
    if n == 0:
        return apply_U(f, p)
    E = eisenstein_series(p - 1, N)
    g = apply_U(qs_mul(f, qs_pow(E, n)), p)
    return qs_mul(g, qs_pow(qs_truncate(E, g.prec), -n))


def twisted_T_ell(f: QSeries, ell: int, n: int, p: int) -> QSeries:
    """T_ell twisted into weight 0 at weight n(p-1): T_ell(f * E^n) / E^n."""
    if ell == p:
        raise EllEqualsP(f"T_{ell} coincides with the working prime; use U")
    if n < 1:
        raise InvalidWeight("twisted T_ell is defined for n >= 1")
    N = f.prec
    E = eisenstein_series(p - 1, N)
    g = hecke_T_ell(qs_mul(f, qs_pow(E, n)), n * (p - 1), ell)
    return qs_mul(g, qs_pow(qs_truncate(E, g.prec), -n))


def t_p_n_one(n: int, p: int, N: int) -> QSeries:
    """(U(E^n) + p^(n(p-1)-1) * V(E^n)) / E^n at weight-0, n >= 1.

    N is the construction precision; the output has floor(N/p) terms.
    """
    if n < 1:
        raise InvalidWeight("defined for n >= 1")
    if N < p:
        raise PrecisionTooLow(f"prec {N} leaves no coefficients after U")
    E = eisenstein_series(p - 1, N)
    En = qs_pow(E, n)
    top = apply_U(En, p)
    M = top.prec
    scale = QQ(ZZ(p) ** (n * (p - 1) - 1))
    top = qs_add(top, qs_scalar_mul(scale, qs_truncate(apply_V(En, p), M)))
    return qs_mul(top, qs_pow(qs_truncate(E, M), -n))


@dataclass(frozen=True)
class HPolynomial:
    """Polynomial in U and finitely many T_ell, no constant term.

    terms maps a monomial key (u_exp, ((ell, exp), ...)) to its rational
    coefficient. Every monomial must contain U at least once.
    """

    terms: tuple  # of ((u_exp, ((ell, e), ...)), QQ)

    def __post_init__(self):
        if not self.terms:
            raise ValueError("polynomial must have at least one term")
        for (u_exp, tells), coeff in self.terms:
            if u_exp < 1:
                raise ValueError("every monomial must contain U")
            if coeff == 0:
                raise ValueError("zero coefficients should be dropped")
            for ell, e in tells:
                if not is_prime(ell) or e < 1:
                    raise ValueError(f"bad T index/exponent ({ell}, {e})")

    def check_p_integral(self, p: int):
        for _, coeff in self.terms:
            if coeff.denominator % p == 0:
                raise ValueError(f"coefficient {coeff} is not {p}-integral")

    def max_divisor(self, p: int) -> int:
        """Worst precision shrink factor of a single application."""
        worst = 1
        for (u_exp, tells), _ in self.terms:
            d = p ** u_exp
            for ell, e in tells:
                d *= ell ** e
            worst = max(worst, d)
        return worst

    def __str__(self):
        parts = []
        for (u_exp, tells), coeff in self.terms:
            factors = [] if coeff == 1 else [str(coeff)]
            factors += ["U"] * u_exp
            for ell, e in tells:
                factors += [f"T{ell}"] * e
            parts.append("*".join(factors))
        return " + ".join(parts)


U_POLY = HPolynomial((((1, ()), QQ(1)),))


def _mono_mul(a, b):
    (ua, ta), (ub, tb) = a, b
    merged = dict(ta)
    for ell, e in tb:
        merged[ell] = merged.get(ell, 0) + e
    return (ua + ub, tuple(sorted(merged.items())))


def _poly(terms_dict):
    return {k: v for k, v in terms_dict.items() if v != 0}


class _Parser:
    """Recursive descent for `U`, `T<ell>`, integers, `+`, `*`, parentheses."""

    _TOKEN = re.compile(r"\s*(U|T\d+|\d+|[+*()])")

    def __init__(self, text):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"bad token at {text[pos:]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        acc = self.term()
        while self.peek() == "+":
            self.next()
            t = self.term()
            for k, v in t.items():
                acc[k] = acc.get(k, 0) + v
            acc = _poly(acc)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.next()
            rhs = self.factor()
            out = {}
            for ka, va in acc.items():
                for kb, vb in rhs.items():
                    k = _mono_mul(ka, kb)
                    out[k] = out.get(k, 0) + va * vb
            acc = _poly(out)
        return acc

    def factor(self):
        tok = self.next()
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok == "(":
            inner = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        if tok == "U":
            return {(1, ()): QQ(1)}
        if tok.startswith("T"):
            ell = int(tok[1:])
            return {(0, ((ell, 1),)): QQ(1)}
        if tok.isdigit():
            return {(0, ()): QQ(int(tok))}
        raise ValueError(f"unexpected token {tok!r}")


def parse_hpoly(text: str) -> HPolynomial:
    """Parse an operator polynomial, e.g. '11*U*(U+5)' or 'U'."""
    parser = _Parser(text)
    terms = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input at {parser.peek()!r}")
    ordered = tuple(sorted(terms.items()))
    return HPolynomial(ordered)


def projector_poly(p: int) -> HPolynomial:
    """The stock projector choice for small primes: U alone, except p=13."""
    if p == 13:
        return parse_hpoly("11*U*(U+5)")
    if p in (5, 7):
        return U_POLY
    raise InvalidWeight(f"no stock projector for p={p}; supply one explicitly")


def apply_hpoly(h: HPolynomial, f: QSeries, k: int, p: int) -> QSeries:
    """Apply a U/T_ell polynomial to a weight-k expansion.

    The result is truncated to the precision of the deepest monomial.
    """
    h.check_p_integral(p)
    out_prec = f.prec // h.max_divisor(p)
    if out_prec < 1:
        raise PrecisionTooLow(f"prec {f.prec} exhausted by {h}")
    acc = None
    for (u_exp, tells), coeff in h.terms:
        g = f
        for ell, e in tells:
            for _ in range(e):
                g = hecke_T_ell(g, k, ell, p=p)
        for _ in range(u_exp):
            g = apply_U(g, p)
        g = qs_scalar_mul(coeff, qs_truncate(g, out_prec))
        acc = g if acc is None else qs_add(acc, g)
    return acc


def _u_power_of_product(f: QSeries, g: QSeries, p: int, u: int) -> QSeries:
    """U^u(f*g) without materializing the full product.

    Only every p^u-th coefficient of f*g survives, so the convolution is
    evaluated at those strides directly.
    """
    stride = p ** u
    N = min(f.prec, g.prec)
    M = N // stride
    if M < 1:
        raise PrecisionTooLow(f"prec {N} exhausted by U^{u}")
    fc, gc = f.coeffs, g.coeffs
    out = []
    for m in range(M):
        t = stride * m
        acc = _ZERO
        for j in range(t + 1):
            a = fc[j]
            if a:
                b = gc[t - j]
                if b:
                    acc = acc + a * b
        out.append(acc)
    tag = None
    if f.weight_tag is not None and g.weight_tag is not None:
        tag = f.weight_tag + g.weight_tag
    return QSeries(tuple(out), tag)


def apply_hpoly_twisted(h: HPolynomial, f: QSeries, n: int, p: int) -> QSeries:
    """One step of the twisted projector: H(f * E^n) / E^n.

    U powers are taken through the product directly so the full-precision
    multiplication f * E^n never happens; T_ell factors act on the short
    series that comes out.
    """
    h.check_p_integral(p)
    N = f.prec
    out_prec = N // h.max_divisor(p)
    if out_prec < 1:
        raise PrecisionTooLow(f"prec {N} exhausted by {h}")
    E = eisenstein_series(p - 1, N)
    En = qs_truncate(qs_pow(E, n), N)
    acc = None
    for (u_exp, tells), coeff in h.terms:
        g = _u_power_of_product(f, En, p, u_exp)
        for ell, e in tells:
            for _ in range(e):
                g = hecke_T_ell(g, n * (p - 1), ell, p=p)
        g = qs_scalar_mul(coeff, qs_truncate(g, out_prec))
        acc = g if acc is None else qs_add(acc, g)
    return qs_mul(acc, qs_pow(qs_truncate(E, acc.prec), -n))


def iterate_H(h: HPolynomial, n: int, p: int, iters: int, N: int):
    """Orbit of the constant 1 under f -> H(f * E^n)/E^n, listed per step.

    Precision shrinks geometrically, so N must cover h's worst shrink
    factor raised to iters.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    D = h.max_divisor(p)
    if N < D ** iters:
        raise PrecisionTooLow(f"need N >= {D ** iters} for {iters} steps, got {N}")
    out = []
    cur = QSeries((QQ(1),) + (_ZERO,) * (N - 1), 0)
    for _ in range(iters):
        cur = apply_hpoly_twisted(h, cur, n, p)
        out.append(cur)
    return out
