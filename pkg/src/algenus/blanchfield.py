"""Hermitian presentation of the Blanchfield pairing and the splitting
that certifies the unknotting-move bound u_alg <= 2 * (genus bound).

Everything stays at the matrix level over Z[t, t^-1]: the pairing itself is
only ever represented by a presenting Hermitian matrix, congruences have
unit determinant, and the only inverted matrices are triangular with unit
diagonal entries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import SubgroupCertificate, normal_form_alex_trivial, verify_alexander_trivial
from .errors import (ContractError, InternalConsistencyError, ShapeError,
                     ShapeReductionError)
from .forms import SeifertForm, alexander_breadth
from .intlinalg import (IntMatrix, apply_congruence, determinant,
                        complete_basis, radical_rank, signature_symmetric,
                        smith_normal_form, solve_integer)
from .lattice import lagrangian_split
from .laurent import LaurentMatrix, LaurentPoly, det_laurent, is_unit

_T = LaurentPoly.t_power(1)
_TINV = LaurentPoly.t_power(-1)
_ONE = LaurentPoly.one()
_X = (_ONE - _T) * (_ONE - _TINV)  # (1-t)(1-t^-1) = 2 - t - t^-1


@dataclass(frozen=True)
class HermitianLaurentMatrix:
    entries: LaurentMatrix

    def __post_init__(self):
        if self.entries.conj_transpose() != self.entries:
            raise ShapeError("matrix is not Hermitian under t -> t^-1")

    @property
    def size(self) -> int:
        return self.entries.rows

    def at_one(self) -> IntMatrix:
        return IntMatrix.from_rows(self.entries.evaluate_unit(1))


def is_symplectic_block_shape(M: IntMatrix) -> bool:
    """[[B, C+1], [C^t, D]] with g x g blocks, B and D symmetric."""
    n = M.rows
    if not M.is_square or n % 2 != 0:
        return False
    g = n // 2
    for i in range(g):
        for j in range(g):
            if M[i, j] != M[j, i] or M[g + i, g + j] != M[g + j, g + i]:
                return False
            if M[g + i, j] != M[j, g + i] - (1 if i == j else 0):
                return False
    return True


def symplectic_basis(A: IntMatrix) -> IntMatrix:
    """Unimodular S with S^t A S = [[0, 1], [-1, 0]] for antisymmetric unimodular A."""
    n = A.rows
    if not (A + A.transpose()).is_zero or abs(determinant(A)) != 1:
        raise ContractError("need an antisymmetric unimodular matrix")
    basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    a_list: list[tuple[int, ...]] = []
    b_list: list[tuple[int, ...]] = []
    while basis:
        u = basis[0]
        uA = A.transpose().mul_vec(u)  # functional x -> u^t A x
        vals = IntMatrix.from_rows([tuple(sum(a * b for a, b in zip(uA, x)) for x in basis)])
        coeffs = solve_integer(vals, [1])
        if coeffs is None:  # pragma: no cover - unimodularity makes the pairing onto
            raise InternalConsistencyError("symplectic pairing is not onto")
        w = tuple(sum(c * x[i] for c, x in zip(coeffs, basis)) for i in range(n))
        a_list.append(u)
        b_list.append(w)
        wA = A.transpose().mul_vec(w)
        projected = []
        for x in basis:
            cu = sum(a * b for a, b in zip(uA, x))
            cw = sum(a * b for a, b in zip(wA, x))
            # x' = x - (u^t A x) w + (w^t A x) u lands in the orthogonal complement
            projected.append(tuple(x[i] - cu * w[i] + cw * u[i] for i in range(n)))
        basis = _lattice_basis(projected, n)
    S = IntMatrix.from_columns(a_list + b_list)
    return S


def _lattice_basis(spanning: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    cols = [v for v in spanning if any(v)]
    if not cols:
        return []
    P = IntMatrix.from_columns(cols)
    snf = smith_normal_form(P)
    uinv = _uinv_cache(snf.U)
    out = []
    for i, d in enumerate(snf.invariant_factors):
        if d != 0:
            out.append(tuple(d * x for x in uinv.column(i)))
    return out


def _uinv_cache(U: IntMatrix) -> IntMatrix:
    from .intlinalg import unimodular_inverse
    return unimodular_inverse(U)


def symplectic_block_form(f: SeifertForm) -> tuple[IntMatrix, IntMatrix]:
    """Congruent matrix in the shape [[B, C+1], [C^t, D]], plus the transform."""
    if f.components != 1:
        raise ContractError("block form requires a knot form")
    S = symplectic_basis(f.matrix - f.matrix.transpose())
    shaped = apply_congruence(f.matrix, S)
    if not is_symplectic_block_shape(shaped):  # pragma: no cover
        raise InternalConsistencyError("symplectic arrangement failed")
    return shaped, S


def _diag_is_odd(M: IntMatrix, idx: range) -> bool:
    return any(M[i, i] % 2 != 0 for i in idx)


def make_block_odd(shaped: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Congruent block-shaped matrix whose upper-left block is an odd form.

    If B is even and D is even, the shear [[1,0],[1,1]] adds the odd
    identity into B; if D is odd, the quarter turn swaps the roles.
    """
    if not is_symplectic_block_shape(shaped):
        raise ShapeError("input is not in the symplectic block shape")
    n = shaped.rows
    g = n // 2
    if g == 0 or _diag_is_odd(shaped, range(g)):
        return shaped, IntMatrix.identity(n)
    one = IntMatrix.identity(g)
    zero = IntMatrix.zeros(g, g)
    if not _diag_is_odd(shaped, range(g, n)):  # D even as well
        T = IntMatrix.block([[one, zero], [one, one]])
    else:
        T = IntMatrix.block([[zero, one], [-one, zero]])
    out = apply_congruence(shaped, T)
    if not (is_symplectic_block_shape(out) and _diag_is_odd(out, range(g))):  # pragma: no cover
        raise InternalConsistencyError("odd normalization failed")
    return out, T


def blanchfield_matrix(shaped: IntMatrix) -> HermitianLaurentMatrix:
    """The Hermitian matrix presenting the Blanchfield pairing.

    [[B, -t + (1-t)C], [-t^-1 + (1-t^-1)C^t, x D]] with
    x = (1-t)(1-t^-1); evaluation at t = 1 is always [[B, -1], [-1, 0]].
    """
    if not is_symplectic_block_shape(shaped):
        raise ShapeError("input is not in the symplectic block shape")
    n = shaped.rows
    g = n // 2
    B = shaped.submatrix(range(g), range(g))
    C = IntMatrix.from_rows([[shaped[i, g + j] - (1 if i == j else 0) for j in range(g)]
                             for i in range(g)])
    D = shaped.submatrix(range(g, n), range(g, n))

    one_minus_t = _ONE - _T
    one_minus_tinv = _ONE - _TINV

    def lift(M: IntMatrix, scalar: LaurentPoly) -> list[list[LaurentPoly]]:
        return [[LaurentPoly.constant(M[i, j]) * scalar for j in range(M.cols)]
                for i in range(M.rows)]

    top_left = lift(B, _ONE)
    top_right = lift(C, one_minus_t)
    bot_left = lift(C.transpose(), one_minus_tinv)
    bot_right = lift(D, _X)
    for i in range(g):
        top_right[i][i] = top_right[i][i] - _T
        bot_left[i][i] = bot_left[i][i] - _TINV
    rows = [tuple(top_left[i]) + tuple(top_right[i]) for i in range(g)]
    rows += [tuple(bot_left[i]) + tuple(bot_right[i]) for i in range(g)]
    return HermitianLaurentMatrix(LaurentMatrix(tuple(rows)))


def check_diagonalizable_at_1(S: IntMatrix) -> bool:
    """Sufficient criterion: odd, indefinite, and unimodular symmetric forms
    are integrally congruent to diagonal ones.  Not a complete decision
    procedure; size 0 counts as diagonal."""
    if not S.is_symmetric:
        raise ContractError("need a symmetric matrix")
    n = S.rows
    if n == 0:
        return True
    odd = any(S[i, i] % 2 != 0 for i in range(n))
    if abs(determinant(S)) != 1:
        return False
    sigma = signature_symmetric(S)
    indefinite = abs(sigma) < n
    return odd and indefinite


@dataclass(frozen=True)
class UalgCertificate:
    """Witness that the Blanchfield pairing is presented by a Hermitian
    matrix of the stated size whose value at 1 diagonalizes."""

    presentation: HermitianLaurentMatrix
    at_one: IntMatrix
    odd: bool
    indefinite: bool
    unimodular: bool
    bound: int

    @property
    def certified(self) -> bool:
        return self.odd and self.indefinite and self.unimodular


def _block_permutation(k: int, m: int) -> IntMatrix:
    """Permutation swapping the middle two blocks of sizes (k, k, m, m) -> (k, m, k, m)."""
    n = 2 * k + 2 * m
    order = list(range(k)) + list(range(2 * k, 2 * k + m)) + \
        list(range(k, 2 * k)) + list(range(2 * k + m, n))
    cols = []
    for target in order:
        cols.append(tuple(1 if i == target else 0 for i in range(n)))
    return IntMatrix.from_columns(cols)


def _lift_int(M: IntMatrix) -> LaurentMatrix:
    return LaurentMatrix.from_int(M.to_lists())


def reduce_blanchfield(f: SeifertForm, cert: SubgroupCertificate) -> UalgCertificate:
    """Split the Blanchfield presentation along an Alexander-trivial certificate.

    Arranges a basis whose first vectors generate the certified subgroup in
    triangular normal form, clears the mixed blocks with a determinant-1
    transform over the Laurent ring, and returns the surviving Hermitian
    block of size 2 * (g - rank/2) together with its parity, definiteness
    and determinant flags at t = 1.
    """
    if f.components != 1:
        raise ContractError("reduction requires a knot form")
    if not cert.verified:
        raise ContractError("certificate must be verified")
    recheck = verify_alexander_trivial(f, cert.basis)
    if not recheck.verified:
        raise InternalConsistencyError("certificate failed re-verification")
    g = f.genus
    k = cert.rank // 2
    m = g - k

    # 1. normal form on the certified subgroup
    if k > 0:
        split = lagrangian_split(cert.restricted)
        if split is None:
            raise ShapeReductionError("could not reduce the restricted form to the triangular shape")
        S1, shaped_r = split
        nf = normal_form_alex_trivial(shaped_r)
        R = S1 @ nf.transform
        F = complete_basis(cert.basis @ R)
    else:
        F = IntMatrix.identity(f.dim)

    # 2. clear the mixed antisymmetric block against the unimodular top-left part
    V1 = apply_congruence(f.matrix, F)
    if k > 0 and m > 0:
        A1 = V1 - V1.transpose()
        Z = A1.submatrix(range(2 * k), range(2 * k, 2 * g))
        zero = IntMatrix.zeros(k, k)
        one = IntMatrix.identity(k)
        K = IntMatrix.block([[zero, one], [-one, zero]]) @ Z  # -P1^-1 Z
        G1 = IntMatrix.block([[IntMatrix.identity(2 * k), K],
                              [IntMatrix.zeros(2 * m, 2 * k), IntMatrix.identity(2 * m)]])
        F = F @ G1
        V1 = apply_congruence(f.matrix, F)

    # 3. arrange the complement block and make its B-part odd
    if m > 0:
        M4 = V1.submatrix(range(2 * k, 2 * g), range(2 * k, 2 * g))
        S4 = symplectic_basis(M4 - M4.transpose())
        shaped4 = apply_congruence(M4, S4)
        shaped4, T_odd = make_block_odd(shaped4)
        G2 = IntMatrix.block([[IntMatrix.identity(2 * k), IntMatrix.zeros(2 * k, 2 * m)],
                              [IntMatrix.zeros(2 * m, 2 * k), S4 @ T_odd]])
        F = F @ G2
        V1 = apply_congruence(f.matrix, F)

    V = V1
    A = V - V.transpose()
    if k > 0:
        upper = A.submatrix(range(2 * k), range(2 * k, 2 * g))
        if not upper.is_zero:  # pragma: no cover
            raise InternalConsistencyError("mixed antisymmetric block did not vanish")

    # 4. Hermitian presentation: swap to block shape, build, swap back
    perm = _block_permutation(k, m)
    swapped = apply_congruence(V, perm)
    if not is_symplectic_block_shape(swapped):  # pragma: no cover
        raise InternalConsistencyError("completed basis is not in block shape")
    herm = blanchfield_matrix(swapped)
    # undo the permutation: swapped = P^t V P, so conjugate back by P^-1 = P^t
    perm_l = _lift_int(perm)
    W1 = perm_l @ herm.entries @ perm_l.transpose()

    if k == 0:
        W4 = HermitianLaurentMatrix(W1)
        return _finish(W4, m)

    # 5. unit-determinant transform clearing the mixed Laurent blocks
    U = IntMatrix.from_rows([[V[i, k + j] - (1 if i == j else 0) for j in range(k)]
                             for i in range(k)])
    L = _lift_int(U).scale(_ONE - _T) - LaurentMatrix.identity(k, 1)  # -t*1 + (1-t)U
    S = _triangular_inverse(L)
    E = _lift_int(V.submatrix(range(k), range(2 * k, 2 * k + m)))
    Fb = _lift_int(V.submatrix(range(k), range(2 * k + m, 2 * g)))
    G = _lift_int(V.submatrix(range(k, 2 * k), range(2 * k, 2 * k + m)))
    H = _lift_int(V.submatrix(range(k, 2 * k), range(2 * k + m, 2 * g)))

    Sbar_t = S.conj_transpose()
    blocks_top = [
        [LaurentMatrix.identity(k), _zero(k, k),
         Sbar_t @ G.scale(-(_ONE - _TINV)), Sbar_t @ H.scale(-(_X))],
        [_zero(k, k), LaurentMatrix.identity(k),
         S @ E.scale(LaurentPoly.constant(-1)), S @ Fb.scale(-(_ONE - _T))],
        [_zero(m, k), _zero(m, k), LaurentMatrix.identity(m), _zero(m, m)],
        [_zero(m, k), _zero(m, k), _zero(m, m), LaurentMatrix.identity(m)],
    ]
    T = _assemble(blocks_top)
    dT = det_laurent(T)
    if dT != LaurentPoly.one():
        raise InternalConsistencyError("clearing transform does not have determinant 1")
    W2 = T.conj_transpose() @ W1 @ T

    # 6. split: W2 = W3 (+) W4
    n2k = 2 * k
    for i in range(n2k):
        for j in range(n2k, 2 * g):
            if not (W2[i, j].is_zero and W2[j, i].is_zero):
                raise InternalConsistencyError("off-diagonal blocks did not vanish")
    W3 = LaurentMatrix(tuple(tuple(W2[i, j] for j in range(n2k)) for i in range(n2k)))
    if not is_unit(det_laurent(W3)):
        raise InternalConsistencyError("split-off block does not have unit determinant")
    W4 = LaurentMatrix(tuple(tuple(W2[i, j] for j in range(n2k, 2 * g))
                             for i in range(n2k, 2 * g)))
    return _finish(HermitianLaurentMatrix(W4), m)


def _finish(W4: HermitianLaurentMatrix, m: int) -> UalgCertificate:
    at_one = W4.at_one()
    if m == 0:
        # empty presentation: the pairing is trivial, the bound is 0
        return UalgCertificate(W4, at_one, True, True, True, 0)
    B = at_one.submatrix(range(m), range(m))
    expected = IntMatrix.block([[B, -IntMatrix.identity(m)],
                                [-IntMatrix.identity(m), IntMatrix.zeros(m, m)]])
    if at_one != expected:
        raise InternalConsistencyError("evaluation at 1 is not in the expected hyperbolic shape")
    odd = any(at_one[i, i] % 2 != 0 for i in range(2 * m))
    unimodular = abs(determinant(at_one)) == 1
    sigma = signature_symmetric(at_one)
    indefinite = radical_rank(at_one) == 0 and abs(sigma) < 2 * m
    return UalgCertificate(W4, at_one, odd, indefinite, unimodular, 2 * m)


def _zero(r: int, c: int) -> LaurentMatrix:
    z = LaurentPoly.zero()
    return LaurentMatrix(tuple(tuple(z for _ in range(c)) for _ in range(r)))


def _assemble(blocks: list[list[LaurentMatrix]]) -> LaurentMatrix:
    rows: list[tuple[LaurentPoly, ...]] = []
    for band in blocks:
        height = band[0].rows
        for i in range(height):
            row: tuple[LaurentPoly, ...] = ()
            for blk in band:
                row += blk.entries[i] if blk.entries else ()
            rows.append(row)
    return LaurentMatrix(tuple(rows))


def _triangular_inverse(L: LaurentMatrix) -> LaurentMatrix:
    """Inverse of an upper triangular Laurent matrix with unit diagonal entries."""
    n = L.rows
    zero = LaurentPoly.zero()
    inv = [[zero for _ in range(n)] for _ in range(n)]
    for j in range(n):
        # solve L x = e_j by back substitution; diagonal entries are units +-t^k
        x = [zero] * n
        for i in range(j, -1, -1):
            acc = LaurentPoly.one() if i == j else LaurentPoly.zero()
            for p in range(i + 1, j + 1):
                acc = acc - L[i, p] * x[p]
            d = L[i, i]
            if not is_unit(d):
                raise ContractError("diagonal entry is not a unit")
            scale = LaurentPoly.t_power(-d.low, 1 if d.coeffs[0] == 1 else -1)
            x[i] = acc * scale
        for i in range(n):
            inv[i][j] = x[i]
    return LaurentMatrix(tuple(tuple(r) for r in inv))
