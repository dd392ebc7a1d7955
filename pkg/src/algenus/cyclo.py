"""Exact arithmetic in cyclotomic fields Q(zeta_m), with certified signs.

Elements are polynomials in zeta reduced mod the m-th cyclotomic polynomial,
with Fraction coefficients.  Equality with zero is decided exactly; the sign
of a real element is determined by interval refinement (mpmath at growing
precision with a rigorous error envelope), which terminates because zero has
already been excluded symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .errors import ContractError

# -- cyclotomic polynomials (dense int coefficient lists) ---------------


def _poly_divexact_q(p: list[int], q: list[int]) -> list[int]:
    rem = list(p)
    out = [0] * (len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1]
        assert c % lead == 0
        f = c // lead
        out[k] = f
        for i, b in enumerate(q):
            rem[k + i] -= f * b
    assert not any(rem)
    return out


def cyclotomic_polynomial(m: int) -> list[int]:
    """Coefficients of Phi_m, ascending."""
    if m < 1:
        raise ValueError("m must be positive")
    p = [-1] + [0] * (m - 1) + [1]  # t^m - 1
    for d in range(1, m):
        if m % d == 0:
            p = _poly_divexact_q(p, cyclotomic_polynomial(d))
    return p


# -- field elements ------------------------------------------------------


@dataclass(frozen=True)
class CycloField:
    m: int

    def __post_init__(self):
        object.__setattr__(self, "_phi", tuple(cyclotomic_polynomial(self.m)))

    @property
    def degree(self) -> int:
        return len(self._phi) - 1

    def reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        phi = self._phi
        deg = len(phi) - 1
        c = list(coeffs)
        for k in range(len(c) - 1, deg - 1, -1):
            f = c[k]
            if f:
                for i in range(deg + 1):
                    c[k - deg + i] -= f * phi[i]
        c = c[:deg]
        c += [Fraction(0)] * (deg - len(c))
        return tuple(c)

    def element(self, coeffs) -> "CycloNum":
        return CycloNum(self, self.reduce([Fraction(x) for x in coeffs]))

    def integer(self, n: int) -> "CycloNum":
        return self.element([n])

    def zeta(self, power: int = 1) -> "CycloNum":
        power %= self.m
        return self.element([0] * power + [1])


@dataclass(frozen=True)
class CycloNum:
    field: CycloField
    coeffs: tuple[Fraction, ...]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CycloNum") -> "CycloNum":
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloNum") -> "CycloNum":
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycloNum") -> "CycloNum":
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CycloNum(self.field, self.field.reduce(out))

    def conj(self) -> "CycloNum":
        """Complex conjugation zeta -> zeta^-1."""
        m = self.field.m
        out = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            out[(-k) % m] += c
        return CycloNum(self.field, self.field.reduce(out))

    def inverse(self) -> "CycloNum":
        """Inverse via the extended Euclidean algorithm mod Phi_m."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(c) for c in self.field._phi]
        a = list(self.coeffs)
        # extended euclid over Q[x]: find s with s*a = gcd (a unit) mod phi
        r0, r1 = phi, _qnorm(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _qdeg(r1) > 0:
            q, rem = _qdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        if not r1:
            raise ZeroDivisionError("not invertible (zero divisor mod Phi)")
        c = r1[0]
        inv = [x / c for x in s1]
        return CycloNum(self.field, self.field.reduce(inv))

    def __truediv__(self, other: "CycloNum") -> "CycloNum":
        return self * other.inverse()

    @property
    def is_real(self) -> bool:
        return self == self.conj()


def _qnorm(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdeg(p):
    return len(p) - 1


def _qsub(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return _qnorm(out)


def _qmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _qnorm(out)


def _qdivmod(p, q):
    rem = list(p)
    if not q:
        raise ZeroDivisionError
    out = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        f = rem[k + len(q) - 1] / lead
        out[k] = f
        if f:
            for i, b in enumerate(q):
                rem[k + i] -= f * b
    return _qnorm(out), _qnorm(rem)


def sign_real(x: CycloNum) -> int:
    """Certified sign of a real cyclotomic number at zeta = exp(2 pi i / m).

    Exact zero test first; otherwise interval refinement until the numeric
    envelope excludes zero.
    """
    if not x.is_real:
        raise ContractError("sign of a non-real element")
    if x.is_zero:
        return 0
    m = x.field.m
    scale = max(abs(c.numerator) / max(c.denominator, 1) for c in x.coeffs)
    terms = len(x.coeffs)
    prec = 64
    while True:
        with mpmath.workprec(prec):
            total = mpmath.mpf(0)
            for k, c in enumerate(x.coeffs):
                if c:
                    total += mpmath.mpf(c.numerator) / c.denominator * mpmath.cos(
                        2 * mpmath.pi * k / m)
            # each term near-correctly rounded; generous linear envelope
            err = mpmath.mpf(scale + 1) * (terms + 4) * mpmath.mpf(2) ** (6 - prec)
            if abs(total) > err:
                return 1 if total > 0 else -1
        prec *= 2
        if prec > 1 << 16:  # pragma: no cover - zero was excluded exactly
            raise ArithmeticError("sign refinement failed to converge")


def hermitian_signature(H: list[list[CycloNum]], field: CycloField) -> int:
    """Signature of an exactly-represented nonsingular Hermitian matrix.

    Congruence diagonalization over Q(zeta_m); each pivot's sign is
    certified by sign_real.
    """
    n = len(H)
    a = [row[:] for row in H]
    one = field.integer(1)
    zeta = field.zeta()

    def add_row_col(i: int, j: int, f: CycloNum) -> None:
        # row_i += f * row_j, col_i += conj(f) * col_j
        fbar = f.conj()
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]
        for r in a:
            r[i] = r[i] + fbar * r[j]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]

    sig = 0
    for k in range(n):
        if a[k][k].is_zero:
            l = next((i for i in range(k + 1, n) if not a[i][i].is_zero), None)
            if l is not None:
                swap(k, l)
            else:
                found = False
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if not a[i][j].is_zero:
                            for mu in (one, zeta):
                                cand = mu * a[i][j]
                                if not (cand + cand.conj()).is_zero:
                                    add_row_col(i, j, mu)
                                    found = True
                                    break
                            if found:
                                break
                    if found:
                        break
                if not found:
                    raise ContractError("matrix is singular")
                if i != k:
                    swap(k, i)
        d = a[k][k]
        sig += sign_real(d)
        dinv = d.inverse()
        for i in range(k + 1, n):
            if not a[i][k].is_zero:
                add_row_col(i, k, -(a[i][k] * dinv))
    return sig
