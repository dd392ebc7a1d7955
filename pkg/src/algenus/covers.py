"""Homology of cyclic branched covers computed from the Seifert form.

For a knot form M the d-fold cover homology is presented by
P^d - (P - 1)^d with P = (M^t - M)^-1 M^t; the minimal generator count r_d
feeds the realization lower bound max over prime powers of
ceil(r_d / (2(d-1))) for the topological slice genus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError, KnotsOnlyError
from .forms import SeifertForm, alexander_breadth
from .intlinalg import IntMatrix, smith_normal_form, unimodular_inverse


@dataclass(frozen=True)
class CoverHomology:
    d: int
    presentation: IntMatrix
    invariant_factors: tuple[int, ...]  # non-unit entries only; 0 means a free summand
    order: int | None                   # None encodes infinite order
    r_d: int


def cover_presentation(f: SeifertForm, d: int) -> IntMatrix:
    """The integer presentation matrix P^d - (P - 1)^d of the d-fold cover."""
    if d < 2:
        raise ContractError("cover degree must be >= 2")
    if f.components != 1:
        raise KnotsOnlyError("the matrix-power presentation needs a unimodular antisymmetrization (knots)")
    M = f.matrix
    A = M.transpose() - M
    P = unimodular_inverse(A) @ M.transpose()
    n = f.dim
    Q = P - IntMatrix.identity(n)
    Pp = IntMatrix.identity(n)
    Qp = IntMatrix.identity(n)
    for _ in range(d):
        Pp = Pp @ P
        Qp = Qp @ Q
    return Pp - Qp


def homology_structure(f: SeifertForm, d: int) -> CoverHomology:
    """Invariant factors, order, and minimal generator count of H_1 of the cover.

    For multi-component links only the double cover is available, presented
    by M + M^t.
    """
    if f.components == 1:
        pres = cover_presentation(f, d)
    elif d == 2:
        pres = f.matrix + f.matrix.transpose()
    else:
        raise KnotsOnlyError("covers of degree >= 3 require a one-component form")
    factors = smith_normal_form(pres).invariant_factors
    nonunit = tuple(x for x in factors if x != 1)
    order: int | None
    if any(x == 0 for x in nonunit):
        order = None
    else:
        order = 1
        for x in nonunit:
            order *= x
    return CoverHomology(d=d, presentation=pres, invariant_factors=nonunit,
                         order=order, r_d=len(nonunit))


def r2(f: SeifertForm) -> int:
    return homology_structure(f, 2).r_d


def prime_powers(limit: int) -> list[int]:
    """All prime powers d with 2 <= d <= limit."""
    out = []
    for d in range(2, limit + 1):
        x = d
        p = None
        for q in range(2, d + 1):
            if x % q == 0:
                p = q
                while x % q == 0:
                    x //= q
                break
        if p is not None and x == 1:
            out.append(d)
    return out


def cover_genus_lower_bound(f: SeifertForm, d_max: int) -> tuple[int, int | None]:
    """max over prime powers d of ceil(r_d / (2(d-1))), with the witness d.

    The range is truncated at max(2, breadth/2): beyond it the quotient
    cannot exceed 1 and cannot beat the d = 2 term by more than the
    breadth bound allows.
    """
    if d_max < 2:
        raise ContractError("d_max must be >= 2")
    if f.components != 1:
        raise KnotsOnlyError("cover genus bound is defined for knot forms")
    b = alexander_breadth(f)
    cap = min(d_max, max(2, (b or 0) // 2))
    best, witness = 0, None
    for d in prime_powers(cap):
        rd = homology_structure(f, d).r_d
        val = -(-rd // (2 * (d - 1)))
        if val > best:
            best, witness = val, d
    return best, witness
