"""Validated Seifert forms of links and their classical invariants.

A bilinear form on Z^(2g + r - 1) arises as the Seifert form of a genus-g
Seifert surface of an r-component link exactly when the antisymmetrization
has radical Z^(r-1) and induces a determinant-1 form on the quotient; this
module checks those conditions and computes the Alexander polynomial,
signature, nullity and Levine-Tristram signatures from the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclo import CycloField, hermitian_signature
from .errors import (ContractError, DimensionError, SingularOmegaError,
                     ValidationError)
from .intlinalg import (IntMatrix, invariant_factors, radical_rank,
                        signature_symmetric)
from .laurent import (LaurentMatrix, LaurentPoly, breadth,
                      canonical_alexander, det_laurent)


@dataclass(frozen=True)
class SeifertForm:
    matrix: IntMatrix
    components: int

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def genus(self) -> int:
        return (self.dim - self.components + 1) // 2


def validate(M: IntMatrix, r: int = 1) -> SeifertForm:
    """Check the Seifert-form conditions and return the validated form.

    Distinct failures raise ValidationError with codes ``parity``,
    ``radical-rank`` and ``quotient-not-unimodular``.
    """
    if not M.is_square:
        raise DimensionError("Seifert matrix must be square")
    if r < 1:
        raise ContractError("component count must be >= 1")
    n = M.rows
    if (n - r + 1) % 2 != 0 or n - r + 1 < 0:
        raise ValidationError("parity", f"dimension {n} with {r} components: {n} - {r} + 1 must be even and >= 0")
    A = M - M.transpose()
    if radical_rank(A) != r - 1:
        raise ValidationError("radical-rank",
                              f"antisymmetrization has radical rank {radical_rank(A)}, expected {r - 1}")
    nonzero = [d for d in invariant_factors(A) if d != 0]
    if any(d != 1 for d in nonzero):
        raise ValidationError("quotient-not-unimodular",
                              "antisymmetrization does not induce a unimodular form on the quotient")
    return SeifertForm(M, r)


def t_linear(M: IntMatrix) -> LaurentMatrix:
    """The matrix t*M - M^t over the Laurent ring."""
    t = LaurentPoly.t_power(1)
    Mt = M.transpose()
    return LaurentMatrix.from_rows(
        [[LaurentPoly.constant(M[i, j]) * t - LaurentPoly.constant(Mt[i, j])
          for j in range(M.cols)] for i in range(M.rows)])


def alexander_raw(f: SeifertForm) -> LaurentPoly:
    """t^-g * det(t*M - M^t), without any normalization."""
    return det_laurent(t_linear(f.matrix)).shift(-f.genus)


def alexander_polynomial(f: SeifertForm) -> LaurentPoly:
    """Canonical representative: exponent span centered, positive lead."""
    return canonical_alexander(alexander_raw(f))


def signature_and_nullity(f: SeifertForm) -> tuple[int, int]:
    S = f.matrix + f.matrix.transpose()
    return signature_symmetric(S), radical_rank(S)


def alexander_breadth(f: SeifertForm) -> int | None:
    """Breadth of the Alexander polynomial; None when it vanishes."""
    p = alexander_raw(f)
    return None if p.is_zero else breadth(p)


def omega_is_alexander_root(f: SeifertForm, j: int, d: int) -> bool:
    """Exact test whether exp(2 pi i j/d) is a zero of the Alexander polynomial."""
    p = alexander_raw(f)
    if p.is_zero:
        return True
    g = gcd(j, d)
    m = d // g
    field = CycloField(m)
    # divisibility by Phi_m of the integer numerator polynomial
    phi = field._phi
    num = list(p.coeffs)
    # remainder of num mod phi over Z (phi is monic)
    for k in range(len(num) - 1, len(phi) - 2, -1):
        c = num[k]
        if c:
            for i in range(len(phi)):
                num[k - (len(phi) - 1) + i] -= c * phi[i]
    return not any(num)


def levine_tristram(f: SeifertForm, j: int, d: int) -> int:
    """Signature of (1-w)M + (1-conj(w))M^t at w = exp(2 pi i j/d), exactly.

    Raises SingularOmegaError when w is a zero of the Alexander polynomial
    (no averaging convention is applied there).
    """
    if not (0 < j < d):
        raise ContractError("need 0 < j < d")
    if omega_is_alexander_root(f, j, d):
        raise SingularOmegaError(f"omega = exp(2 pi i {j}/{d}) is a root of the Alexander polynomial")
    g = gcd(j, d)
    m, jj = d // g, j // g
    field = CycloField(m)
    one = field.integer(1)
    w = field.zeta(jj)
    wbar = w.conj()
    c1 = one - w
    c2 = one - wbar
    M = f.matrix
    n = f.dim
    H = [[field.integer(M[i, k]) * c1 + field.integer(M[k, i]) * c2
          for k in range(n)] for i in range(n)]
    return hermitian_signature(H, field)


def classical_lower_bound(f: SeifertForm, r2: int) -> int:
    """Certified lower bound for twice the algebraic genus.

    For knots this is max(|sigma| + eta, r2); for r-component links both
    terms are shifted by -(r - 1), which is what the summand argument in
    the branched-cover bound actually yields.
    """
    sigma, eta = signature_and_nullity(f)
    r = f.components
    return max(abs(sigma) + eta - r + 1, r2 - r + 1, 0)


@dataclass(frozen=True)
class InvariantSet:
    alexander: LaurentPoly
    signature: int
    nullity: int
    breadth: int | None
    lower_bound_2galg: int


def invariant_set(f: SeifertForm, r2: int) -> InvariantSet:
    sigma, eta = signature_and_nullity(f)
    return InvariantSet(
        alexander=alexander_polynomial(f),
        signature=sigma,
        nullity=eta,
        breadth=alexander_breadth(f),
        lower_bound_2galg=classical_lower_bound(f, r2),
    )
