"""Sublattice machinery behind the certificate searches.

Candidate vector pools, isotropic-subgroup tools, the dual-completion that
extends an isotropic subgroup to an Alexander-trivial one, and integer
unipotent triangularization.  Everything here is deterministic: pools are
sorted, boxes are scanned smallest-first.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterator, Sequence

from .errors import ShapeReductionError
from .intlinalg import (IntMatrix, complete_basis, determinant,
                        is_primitive_sublattice, kernel_basis, solve_integer,
                        unimodular_inverse)

Vec = tuple[int, ...]


def _gcd_all(xs: Sequence[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def candidate_vectors(dim: int, cap: int, max_support: int) -> list[Vec]:
    """Primitive vectors with bounded entries and support, first nonzero positive.

    Sorted by (support size, L1 norm, lexicographic) so searches scan the
    simplest candidates first.
    """
    out: set[Vec] = set()
    vals = [x for x in range(-cap, cap + 1) if x != 0]
    max_support = min(max_support, dim)
    for k in range(1, max_support + 1):
        for support in itertools.combinations(range(dim), k):
            for choice in itertools.product(vals, repeat=k):
                if choice[0] < 0:
                    continue
                if _gcd_all(choice) != 1:
                    continue
                v = [0] * dim
                for pos, val in zip(support, choice):
                    v[pos] = val
                out.add(tuple(v))
    return sorted(out, key=lambda v: (sum(1 for x in v if x), sum(abs(x) for x in v), v))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def pair_value(M: IntMatrix, u: Vec, v: Vec) -> int:
    """u^t M v."""
    return dot(u, M.mul_vec(v))


def pair_is_primitive(u: Vec, v: Vec) -> bool:
    """True iff {u, v} spans a rank-2 summand (gcd of 2x2 minors is 1)."""
    n = len(u)
    g = 0
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, u[i] * v[j] - u[j] * v[i])
            if g == 1:
                return True
    return False


def _box_values(cap: int) -> list[int]:
    out = [0]
    for k in range(1, cap + 1):
        out += [k, -k]
    return out


def rank2_pair_scan(M: IntMatrix, pool: Sequence[Vec],
                    max_pairs: int | None = None) -> Iterator[tuple[Vec, Vec]]:
    """All rank-2 Alexander-trivial subgroups spanned by two pool vectors.

    Closed form: the restriction B = [[a,b],[c,d]] has unit t-determinant
    iff det B = 0 and |b - c| = 1; the Pfaffian condition already forces
    the span to be a summand.
    """
    Mv = [M.mul_vec(v) for v in pool]
    Mtv = [M.transpose().mul_vec(v) for v in pool]
    q = [dot(v, Mv[i]) for i, v in enumerate(pool)]
    seen = 0
    for i, u in enumerate(pool):
        mu, mtu, qu = Mv[i], Mtv[i], q[i]
        for j in range(i + 1, len(pool)):
            if max_pairs is not None and seen >= max_pairs:
                return
            seen += 1
            v = pool[j]
            b = dot(v, mtu)  # u^t M v
            c = dot(v, mu)   # v^t M u
            if b - c != 1 and c - b != 1:
                continue
            if qu * q[j] != b * c:
                continue
            yield u, v


def isotropic_vectors(M: IntMatrix, pool: Sequence[Vec]) -> list[Vec]:
    return [v for v in pool if pair_value(M, v, v) == 0]


def isotropic_pairs(M: IntMatrix, pool: Sequence[Vec],
                    max_pairs: int | None = None) -> list[tuple[Vec, Vec]]:
    """Primitive rank-2 subgroups on which the form vanishes identically."""
    iso = isotropic_vectors(M, pool)
    Mv = {v: M.mul_vec(v) for v in iso}
    Mtv = {v: M.transpose().mul_vec(v) for v in iso}
    out = []
    for i, u in enumerate(iso):
        for v in iso[i + 1:]:
            if dot(v, Mv[u]) == 0 and dot(v, Mtv[u]) == 0 and pair_is_primitive(u, v):
                out.append((u, v))
                if max_pairs is not None and len(out) >= max_pairs:
                    return out
    return out


def _quotient_directions(kernel: list[Vec], V: list[Vec], dim: int) -> list[Vec]:
    """Lift a basis of ker/span(V); corrections along V itself are no-ops."""
    if not kernel:
        return []
    F = complete_basis(IntMatrix.from_columns(V)) if V else IntMatrix.identity(dim)
    Finv = unimodular_inverse(F)
    k = len(V)
    proj_cols = [Finv.mul_vec(z)[k:] for z in kernel]
    proj = IntMatrix.from_columns(proj_cols) if proj_cols else IntMatrix.zeros(dim - k, 0)
    out: list[Vec] = []
    from .intlinalg import smith_normal_form
    snf = smith_normal_form(proj)
    rankp = sum(1 for d in snf.invariant_factors if d != 0)
    uinv = unimodular_inverse(snf.U)
    for t in range(rankp):
        target = uinv.column(t)
        # scale to the invariant factor to stay inside the image lattice
        target = tuple(x * snf.D[t, t] for x in target)
        coeffs = solve_integer(proj, target)
        if coeffs is None:  # pragma: no cover - image vector is solvable by construction
            continue
        z = tuple(sum(c * kernel[a][i] for a, c in enumerate(coeffs)) for i in range(dim))
        out.append(z)
    return out


def complete_isotropic(M: IntMatrix, V: Sequence[Vec], box: int = 2,
                       max_hits: int = 1) -> list[IntMatrix]:
    """Extend an isotropic V (rank 1 or 2) to an Alexander-trivial subgroup.

    Solves for duals W with antisymmetrized pairing = identity, then scans
    integer corrections from ker/V.  With that pairing the t-determinant of
    the restriction is automatically a unit once the theta-blocks satisfy
    rank 1: theta(v, w) in {0, 1};  rank 2: det X = det Y = 0.
    Returns up to max_hits bases [v..., w...] as column matrices.
    """
    k = len(V)
    if k not in (1, 2):
        raise ShapeReductionError("completion implemented for isotropic rank 1 and 2")
    n = M.rows
    A = M - M.transpose()
    R = IntMatrix.from_rows([tuple(dot(v, A.column(j)) for j in range(n)) for v in V])
    duals = []
    for j in range(k):
        e = [1 if i == j else 0 for i in range(k)]
        w = solve_integer(R, e)
        if w is None:
            return []
        duals.append(w)
    zs = _quotient_directions(kernel_basis(R), list(V), n)
    box_vals = _box_values(box)
    hits: list[IntMatrix] = []

    def theta(u: Sequence[int], w: Sequence[int]) -> int:
        return pair_value(M, tuple(u), tuple(w))

    if k == 1:
        v = V[0]
        w0 = duals[0]
        x0 = theta(v, w0)
        xz = [theta(v, z) for z in zs]
        for c in itertools.product(box_vals, repeat=len(zs)):
            x = x0 + sum(ci * xi for ci, xi in zip(c, xz))
            if x == 0 or x == 1:
                w = tuple(w0[i] + sum(ci * z[i] for ci, z in zip(c, zs)) for i in range(n))
                hits.append(IntMatrix.from_columns([v, w]))
                if len(hits) >= max_hits:
                    return hits
        return hits

    v1, v2 = V
    w1, w2 = duals
    X0 = [[theta(v1, w1), theta(v1, w2)], [theta(v2, w1), theta(v2, w2)]]
    Xz = [(theta(v1, z), theta(v2, z)) for z in zs]
    K = len(zs)

    def column_candidates(base_top: int, base_bot: int):
        for c in itertools.product(box_vals, repeat=K):
            top = base_top + sum(ci * Xz[a][0] for a, ci in enumerate(c))
            bot = base_bot + sum(ci * Xz[a][1] for a, ci in enumerate(c))
            yield c, top, bot

    col2 = list(column_candidates(X0[0][1], X0[1][1]))
    for c1, x11, x21 in column_candidates(X0[0][0], X0[1][0]):
        W1 = tuple(w1[i] + sum(ci * z[i] for ci, z in zip(c1, zs)) for i in range(n))
        y11, y12 = theta(W1, v1), theta(W1, v2)
        for c2, x12, x22 in col2:
            if x11 * x22 != x12 * x21:
                continue
            W2 = tuple(w2[i] + sum(ci * z[i] for ci, z in zip(c2, zs)) for i in range(n))
            if theta(W2, v1) * y12 != theta(W2, v2) * y11:
                # det Y = y11*y22 - y12*y21 with rows (y11,y12),(y21,y22)
                continue
            hits.append(IntMatrix.from_columns([v1, v2, W1, W2]))
            if len(hits) >= max_hits:
                return hits
    return hits


def unipotent_triangularize(X: IntMatrix) -> IntMatrix:
    """Unimodular C with C^-1 X C upper triangular with unit diagonal.

    Requires X - 1 nilpotent (all eigenvalues 1); built from the kernel
    flag of X - 1, recursively.
    """
    d = X.rows
    if d == 0:
        return IntMatrix.identity(0)
    N = X - IntMatrix.identity(d)
    if N.is_zero:
        return IntMatrix.identity(d)
    ker = kernel_basis(N)
    if not ker:
        raise ShapeReductionError("matrix is not unipotent")
    F = complete_basis(IntMatrix.from_columns(ker))
    Finv = unimodular_inverse(F)
    Np = Finv @ N @ F
    c = len(ker)
    sub = IntMatrix.from_rows([row[c:] for row in Np.entries[c:]]) + IntMatrix.identity(d - c)
    C2 = unipotent_triangularize(sub)
    blk = IntMatrix.block([[IntMatrix.identity(c), IntMatrix.zeros(c, d - c)],
                           [IntMatrix.zeros(d - c, c), C2]])
    return F @ blk


def lagrangian_split(B: IntMatrix, cap: int = 3) -> tuple[IntMatrix, IntMatrix] | None:
    """Reduce an Alexander-trivial matrix to the triangular block shape.

    Returns (S, shaped) with shaped = S^t B S = [[0, 1+P], [P^t, Q]],
    P strictly upper triangular, or None when the bounded search for a
    vanishing half-rank subgroup fails.
    """
    n = B.rows
    if n % 2 != 0:
        raise ShapeReductionError("odd dimension cannot be Alexander-trivial")
    d = n // 2
    if d == 0:
        return IntMatrix.identity(0), B

    V = _find_lagrangian(B, d, cap)
    if V is None:
        return None

    A = B - B.transpose()
    R = IntMatrix.from_rows([tuple(dot(v, A.column(j)) for j in range(n)) for v in V])
    duals = []
    for j in range(d):
        e = [1 if i == j else 0 for i in range(d)]
        w = solve_integer(R, e)
        if w is None:
            return None
        duals.append(tuple(w))
    X = IntMatrix.from_rows([tuple(pair_value(B, v, w) for w in duals) for v in V])
    try:
        C = unipotent_triangularize(X)
    except ShapeReductionError:
        return None
    Cinv_t = unimodular_inverse(C).transpose()
    Vm = IntMatrix.from_columns(list(V)) @ Cinv_t
    Wm = IntMatrix.from_columns(duals) @ C
    S = Vm.hstack(Wm)
    if abs(determinant(S)) != 1:
        return None
    shaped = S.transpose() @ B @ S
    # shape sanity: zero top-left, unit-upper-triangular top-right, transposed lower-left
    for i in range(d):
        for j in range(d):
            if shaped[i, j] != 0:
                return None
            top = shaped[i, d + j]
            if i == j and top != 1:
                return None
            if i > j and top != 0:
                return None
            if shaped[d + i, j] != shaped[j, d + i] - (1 if i == j else 0):
                return None
    return S, shaped


def _find_lagrangian(B: IntMatrix, d: int, cap: int) -> list[Vec] | None:
    """A rank-d primitive subgroup on which the form vanishes identically."""
    n = B.rows
    for c in range(1, cap + 1):
        pool = candidate_vectors(n, c, n)
        iso = isotropic_vectors(B, pool)
        if d == 1:
            for v in iso:
                return [v]
            continue
        found = _grow_lagrangian(B, iso, [], d)
        if found is not None:
            return found
    return None


def _grow_lagrangian(B: IntMatrix, iso: list[Vec], current: list[Vec], d: int) -> list[Vec] | None:
    if len(current) == d:
        M = IntMatrix.from_columns(current)
        return current if is_primitive_sublattice(M) else None
    start = 0
    for idx in range(start, len(iso)):
        v = iso[idx]
        ok = all(pair_value(B, u, v) == 0 and pair_value(B, v, u) == 0 for u in current)
        if not ok:
            continue
        cand = current + [v]
        if not is_primitive_sublattice(IntMatrix.from_columns(cand)):
            continue
        res = _grow_lagrangian(B, iso[idx + 1:], cand, d)
        if res is not None:
            return res
    return None
