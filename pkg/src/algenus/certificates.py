"""Machine-checkable subgroup certificates and the moves that transport them.

A certificate stores a basis (columns), the restricted form, and re-verifies
from those alone: Alexander-trivial means the t-determinant of the
restriction is a unit and the basis spans a summand; isotropic means the
restriction vanishes; a metabolizer is an isotropic summand of half rank.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

from .errors import (ContractError, DimensionError, NotUnimodularError,
                     ShapeError)
from .forms import SeifertForm, t_linear, validate
from .intlinalg import (IntMatrix, apply_congruence, complete_basis,
                        determinant, is_primitive_sublattice,
                        unimodular_inverse)
from .lattice import pair_value
from .laurent import det_laurent, is_unit

ALEXANDER_TRIVIAL = "alexander-trivial"
ISOTROPIC = "isotropic"
METABOLIZER = "metabolizer"


@dataclass(frozen=True)
class SubgroupCertificate:
    kind: str
    basis: IntMatrix          # dim x rank, columns are the subgroup basis
    restricted: IntMatrix     # rank x rank, basis^t M basis
    verified: bool
    reason: str | None = None

    @property
    def rank(self) -> int:
        return self.basis.cols


def _restrict(f: SeifertForm, basis: IntMatrix) -> IntMatrix:
    if basis.rows != f.dim:
        raise DimensionError(f"basis vectors live in Z^{basis.rows}, form has dimension {f.dim}")
    return apply_congruence(f.matrix, basis)


def verify_alexander_trivial(f: SeifertForm, basis: IntMatrix) -> SubgroupCertificate:
    """Certificate that the columns of `basis` span an Alexander-trivial summand."""
    restricted = _restrict(f, basis)
    if basis.cols % 2 != 0:
        return SubgroupCertificate(ALEXANDER_TRIVIAL, basis, restricted, False,
                                   "odd rank: Alexander-trivial subgroups have even rank")
    if not is_primitive_sublattice(basis):
        return SubgroupCertificate(ALEXANDER_TRIVIAL, basis, restricted, False,
                                   "basis does not span a summand")
    if not is_unit(det_laurent(t_linear(restricted))):
        return SubgroupCertificate(ALEXANDER_TRIVIAL, basis, restricted, False,
                                   "t-determinant of the restriction is not a unit")
    return SubgroupCertificate(ALEXANDER_TRIVIAL, basis, restricted, True)


def verify_isotropic(f: SeifertForm, basis: IntMatrix) -> SubgroupCertificate:
    restricted = _restrict(f, basis)
    if not restricted.is_zero:
        return SubgroupCertificate(ISOTROPIC, basis, restricted, False,
                                   "form does not vanish on the subgroup")
    if not is_primitive_sublattice(basis):
        return SubgroupCertificate(ISOTROPIC, basis, restricted, False,
                                   "basis does not span a summand")
    return SubgroupCertificate(ISOTROPIC, basis, restricted, True)


def verify_metabolizer(f: SeifertForm, basis: IntMatrix) -> SubgroupCertificate:
    iso = verify_isotropic(f, basis)
    if not iso.verified:
        return replace(iso, kind=METABOLIZER)
    if 2 * basis.cols != f.dim:
        return SubgroupCertificate(METABOLIZER, basis, iso.restricted, False,
                                   f"rank {basis.cols} is not half of dimension {f.dim}")
    return SubgroupCertificate(METABOLIZER, basis, iso.restricted, True)


def verify(f: SeifertForm, basis: IntMatrix, kind: str) -> SubgroupCertificate:
    if kind == ALEXANDER_TRIVIAL:
        return verify_alexander_trivial(f, basis)
    if kind == ISOTROPIC:
        return verify_isotropic(f, basis)
    if kind == METABOLIZER:
        return verify_metabolizer(f, basis)
    raise ContractError(f"unknown certificate kind {kind!r}")


# -- triangular normal form ------------------------------------------------


class NormalForm(NamedTuple):
    N: IntMatrix
    result: IntMatrix
    transform: IntMatrix  # unimodular T with T^t B T = result


def normal_form_alex_trivial(B: IntMatrix) -> NormalForm:
    """Kill the lower-right block of [[0, 1+P], [P^t, Q]] by a congruence.

    N is the unique solution of Q = N + NP + (NP)^t, built by induction on
    i + j; the transform [[1, -N^t], [0, 1]] (columns) yields
    [[0, 1+P], [P^t, 0]].
    """
    n = B.rows
    if not B.is_square or n % 2 != 0:
        raise ShapeError("need a square matrix of even size")
    g = n // 2
    for i in range(g):
        for j in range(g):
            if B[i, j] != 0:
                raise ShapeError("upper-left block must be zero")
            top = B[i, g + j]
            if i == j and top != 1:
                raise ShapeError("upper-right block must have unit diagonal")
            if i > j and top != 0:
                raise ShapeError("upper-right block must be upper triangular")
            if B[g + i, j] != B[j, g + i] - (1 if i == j else 0):
                raise ShapeError("lower-left block must be the transpose of the strict part")
    P = IntMatrix.from_rows([[B[i, g + j] - (1 if i == j else 0) for j in range(g)]
                             for i in range(g)])
    Q = IntMatrix.from_rows([[B[g + i, g + j] for j in range(g)] for i in range(g)])

    N = [[0] * g for _ in range(g)]
    for s in range(2, 2 * g + 1):       # s = i + j in 1-based indexing
        for i1 in range(1, g + 1):
            j1 = s - i1
            if not (1 <= j1 <= g):
                continue
            i, j = i1 - 1, j1 - 1
            acc = Q[i, j]
            for k in range(j):
                acc -= N[i][k] * P[k, j]
            for k in range(i):
                acc -= N[j][k] * P[k, i]
            N[i][j] = acc
    Nm = IntMatrix.from_rows(N)

    T = IntMatrix.block([[IntMatrix.identity(g), -Nm.transpose()],
                         [IntMatrix.zeros(g, g), IntMatrix.identity(g)]])
    result = apply_congruence(B, T)
    lower_right = result.submatrix(range(g, 2 * g), range(g, 2 * g))
    if not lower_right.is_zero:
        raise ShapeError("normal form failed to clear the lower-right block")
    return NormalForm(Nm, result, T)


# -- stabilization and crossing-change moves --------------------------------


def stabilize(f: SeifertForm, v: Sequence[int]) -> SeifertForm:
    """Enlarge the form by the standard two-dimensional stabilization block.

    Same component count, genus + 1; any certificate survives with the two
    new basis vectors appended (see lift_through_stabilization).
    """
    n = f.dim
    if len(v) != n:
        raise DimensionError("stabilization vector must match the form dimension")
    rows = []
    for i in range(n):
        rows.append(list(f.matrix.row(i)) + [v[i], 0])
    rows.append(list(v) + [0, 1])
    rows.append([0] * n + [0, 0])
    return validate(IntMatrix.from_rows(rows), f.components)


def lift_through_stabilization(cert: SubgroupCertificate, stabilized: SeifertForm) -> SubgroupCertificate:
    """Append the two new basis vectors to an Alexander-trivial certificate."""
    n = stabilized.dim - 2
    cols = [tuple(c) + (0, 0) for c in cert.basis.columns()]
    cols.append(tuple(0 for _ in range(n)) + (1, 0))
    cols.append(tuple(0 for _ in range(n)) + (0, 1))
    return verify_alexander_trivial(stabilized, IntMatrix.from_columns(cols))


def crossing_change_move(f: SeifertForm, sign: int) -> SeifertForm:
    """The stabilized form of M + sign*e11 that a crossing change produces.

    The output contains M + sign*e11 as its core block, with a -sign entry
    in the first stabilization column; certificates of f transport to it
    with the same rank (lift_through_crossing_change), which is the
    certificate-level content of |change of the genus bound| <= 1.
    """
    if sign not in (1, -1):
        raise ContractError("sign must be +1 or -1")
    if f.dim < 1:
        raise ContractError("need dimension >= 1")
    n = f.dim
    M2 = f.matrix.to_lists()
    M2[0][0] += sign
    rows = []
    for i in range(n):
        rows.append(M2[i] + [-sign if i == 0 else 0, 0])
    rows.append([0] * n + [0, 1])
    rows.append([0] * n + [0, 0])
    return validate(IntMatrix.from_rows(rows), f.components)


def lift_through_crossing_change(cert: SubgroupCertificate, moved: SeifertForm) -> SubgroupCertificate:
    """Transport a certificate of f to crossing_change_move(f, sign).

    The congruence adding the first stabilization row/column back into the
    first coordinate restores the original matrix as the core block, so the
    lifted basis is u |-> (u, u_1, 0); the restricted form is unchanged.
    """
    n = moved.dim - 2
    cols = []
    for c in cert.basis.columns():
        if len(c) != n:
            raise DimensionError("certificate does not match the moved form")
        cols.append(tuple(c) + (c[0], 0))
    return verify_alexander_trivial(moved, IntMatrix.from_columns(cols))


# -- metabolic 4x4 reduction -------------------------------------------------


def metabolic_4x4_reduce(f: SeifertForm, metabolizer: SubgroupCertificate) -> SubgroupCertificate:
    """Rank-2 Alexander-trivial certificate inside a unimodular metabolic 4x4 form.

    Conjugates the off-block V' by shear and swap moves until a zero appears
    on its diagonal; the proof of the size bound guarantees this terminates.
    Requires |det M| = 1 so the block normalizations stay integral.
    """
    if f.dim != 4:
        raise ContractError("reduction is for 4x4 forms")
    if abs(determinant(f.matrix)) != 1:
        raise NotUnimodularError("not-unimodular: |det M| must be 1")
    if determinant(f.matrix - f.matrix.transpose()) != 1:
        raise ContractError("antisymmetrization must be unimodular")
    if not (metabolizer.verified and metabolizer.kind == METABOLIZER and metabolizer.rank == 2):
        raise ContractError("need a verified rank-2 metabolizer")
    check = verify_metabolizer(f, metabolizer.basis)
    if not check.verified:
        raise ContractError("metabolizer failed re-verification")

    total = complete_basis(metabolizer.basis)
    A1 = apply_congruence(f.matrix, total)
    U = A1.submatrix((0, 1), (2, 3))
    diag = IntMatrix.block([[IntMatrix.identity(2), IntMatrix.zeros(2, 2)],
                            [IntMatrix.zeros(2, 2), unimodular_inverse(U)]])
    total = total @ diag
    A2 = apply_congruence(f.matrix, total)

    picked = None
    while picked is None:
        a, b = A2[2, 0], A2[2, 1]
        c, d = A2[3, 0], A2[3, 1]
        if a == 0:
            picked = (0, 2)
        elif d == 0:
            picked = (1, 3)
        else:
            # conjugating V' by T: upper shear a -> a - eps*c, lower shear
            # a -> a + eps*b, quarter turn a <-> d
            moves = []
            for eps in (1, -1):
                moves.append((abs(a - eps * c), IntMatrix.from_rows([[1, eps], [0, 1]])))
                moves.append((abs(a + eps * b), IntMatrix.from_rows([[1, 0], [eps, 1]])))
            moves.append((abs(d), IntMatrix.from_rows([[0, 1], [-1, 0]])))
            moves.sort(key=lambda m: m[0])
            best, T = moves[0]
            if best >= abs(a):
                raise ContractError("reduction stalled; hypotheses violated")
            grow = IntMatrix.block([[T, IntMatrix.zeros(2, 2)],
                                    [IntMatrix.zeros(2, 2),
                                     unimodular_inverse(T).transpose()]])
            total = total @ grow
            A2 = apply_congruence(f.matrix, total)

    basis = IntMatrix.from_columns([total.column(picked[0]), total.column(picked[1])])
    cert = verify_alexander_trivial(f, basis)
    if not cert.verified:
        raise ContractError("reduced subgroup failed verification")
    return cert
