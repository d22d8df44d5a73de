"""Dense exact linear algebra over duck-typed scalars.

Matrices are lists of row lists; entries may be rationals, Cyclotomic
values or ParamPoly values (any ring with +, -, *, exact zero test, and
division where required).  Everything here is elementary and exact; no
floating point is involved.
"""

from __future__ import annotations

from .scalars import QQ0, QQ1, Cyclotomic, ParamPoly, QQ, is_rational_scalar


def is_zero_scalar(x) -> bool:
    # Cyclotomic and ParamPoly define __bool__ as nonzero-ness
    return not x


def sconj(x):
    """Complex conjugate; identity on rationals and real parameters."""
    if isinstance(x, (Cyclotomic, ParamPoly)):
        return x.conj()
    return x


def sinv(x):
    if isinstance(x, Cyclotomic):
        return x.inverse()
    return QQ1 / QQ(x)


def zeros(nrows: int, ncols: int):
    return [[QQ0] * ncols for _ in range(nrows)]


def identity(n: int):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = QQ1
    return out


def mat_mul(a, b):
    nr, nk, nc = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(nr):
        arow = a[i]
        row = []
        for j in range(nc):
            s = None
            for k in range(nk):
                x = arow[k]
                if is_zero_scalar(x):
                    continue
                t = x * b[k][j]
                s = t if s is None else s + t
            row.append(QQ0 if s is None else s)
        out.append(row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = None
        for x, y in zip(row, v):
            if is_zero_scalar(x) or is_zero_scalar(y):
                continue
            t = x * y
            s = t if s is None else s + t
        out.append(QQ0 if s is None else s)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def conj_transpose(a):
    return [[sconj(x) for x in col] for col in zip(*a)] if a else []


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    for r, s in zip(a, b):
        if len(r) != len(s):
            return False
        for x, y in zip(r, s):
            if not is_zero_scalar(x - y):
                return False
    return True


def is_zero_matrix(a) -> bool:
    return all(is_zero_scalar(x) for row in a for x in row)


def is_hermitian(a) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(i, n):
            if not is_zero_scalar(a[i][j] - sconj(a[j][i])):
                return False
    return True


# ---------------------------------------------------------------------------
# Gaussian elimination


def _rref(rows, ncols):
    """In-place reduced row echelon; returns pivot column list."""
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if not is_zero_scalar(rows[i][c]):
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = sinv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not is_zero_scalar(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(a) -> int:
    if not a:
        return 0
    rows = [list(r) for r in a]
    return len(_rref(rows, len(rows[0])))


def nullspace(a, ncols=None):
    """Basis of the right kernel (list of coordinate vectors)."""
    if not a:
        return [[QQ1 if i == j else QQ0 for i in range(ncols or 0)]
                for j in range(ncols or 0)]
    n = ncols if ncols is not None else len(a[0])
    rows = [list(r) for r in a]
    pivots = _rref(rows, n)
    pivset = set(pivots)
    basis = []
    for fc in range(n):
        if fc in pivset:
            continue
        v = [QQ0] * n
        v[fc] = QQ1
        for rr, pc in enumerate(pivots):
            v[pc] = -rows[rr][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    if not a:
        return None
    n = len(a[0])
    rows = [list(r) + [bb] for r, bb in zip(a, b)]
    pivots = _rref(rows, n)
    for row in rows:
        if all(is_zero_scalar(x) for x in row[:n]) and not is_zero_scalar(row[n]):
            return None
    x = [QQ0] * n
    for rr, pc in enumerate(pivots):
        x[pc] = rows[rr][n]
    return x


def invert(a):
    n = len(a)
    rows = [list(r) + [QQ1 if i == j else QQ0 for j in range(n)]
            for i, r in enumerate(a)]
    pivots = _rref(rows, n)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in rows]


def same_span(basis_a, basis_b) -> bool:
    """Exact equality of two subspaces given by spanning vectors."""
    ra = rank(basis_a) if basis_a else 0
    rb = rank(basis_b) if basis_b else 0
    if ra != rb:
        return False
    joint = [list(v) for v in basis_a] + [list(v) for v in basis_b]
    return (rank(joint) if joint else 0) == ra


# ---------------------------------------------------------------------------
# Hermitian congruence diagonalization


class CongruenceResult:
    """Outcome of symmetric (Hermitian) congruence diagonalization.

    ``pivots`` is a list of (value, vector) with vector in the original
    coordinates and value = form(vector, vector); zero values span the
    kernel.  ``hyperbolic`` is None or a (vector, value) pair with a
    certified-negative value produced when the remaining block had a zero
    diagonal but a nonzero off-diagonal entry (an indefinite form).
    """

    def __init__(self):
        self.pivots = []
        self.kernel = []
        self.hyperbolic = None


def congruence_diagonalize(g, vectors: bool = True) -> CongruenceResult:
    """Diagonalize a Hermitian matrix by congruence with diagonal pivoting.

    Exact zero tests only; no sign decisions are made here.  The invariant
    form(v_i, v_j) = delta_ij * pivot_i holds for the returned vectors.
    With vectors=False, pivot vectors / kernel / hyperbolic witnesses are
    omitted (None placeholders) and only the pivot values are produced;
    callers rerun with vectors=True when a witness is actually needed.
    """
    n = len(g)
    a = [list(row) for row in g]
    basis = identity(n) if vectors else None
    res = CongruenceResult()
    k = 0
    while k < n:
        p = None
        for i in range(k, n):
            if a[i][i]:
                p = i
                break
        if p is None:
            # All remaining diagonal entries vanish.  For a positive
            # semidefinite form this forces the whole block to vanish; a
            # surviving off-diagonal entry certifies indefiniteness via a
            # hyperbolic pair.
            off = None
            for i in range(k, n):
                arow = a[i]
                for j in range(i + 1, n):
                    if arow[j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                if vectors:
                    res.kernel.extend(basis[k:])
                    for i in range(k, n):
                        res.pivots.append((QQ0, basis[i]))
                else:
                    for i in range(k, n):
                        res.pivots.append((QQ0, None))
                return res
            i, j = off
            gij = a[i][j]
            # form(v_i - g v_j, v_i - g v_j) = -2 g conj(g) < 0
            val = QQ(-2) * (gij * sconj(gij))
            if vectors:
                vec = [x - gij * y for x, y in zip(basis[i], basis[j])]
            else:
                vec = None
            res.hyperbolic = (vec, val)
            return res
        if p != k:
            a[k], a[p] = a[p], a[k]
            for row in a:
                row[k], row[p] = row[p], row[k]
            if vectors:
                basis[k], basis[p] = basis[p], basis[k]
        d = a[k][k]
        dinv = sinv(d)
        row_k = a[k]
        for i in range(k + 1, n):
            f = a[i][k] * dinv
            if not f:
                continue
            arow = a[i]
            # Schur complement row update: a[i][j] -= f * a[k][j]
            for j in range(k + 1, n):
                y = row_k[j]
                if y:
                    arow[j] = arow[j] - f * y
            if vectors:
                basis[i] = [x - f * y for x, y in zip(basis[i], basis[k])]
        res.pivots.append((d, basis[k] if vectors else None))
        k += 1
    return res


def quadratic_value(g, v):
    """form(v, v) for the Hermitian matrix g (linear first slot)."""
    gv = mat_vec(g, [sconj(x) for x in v])
    s = None
    for x, y in zip(v, gv):
        if is_zero_scalar(x) or is_zero_scalar(y):
            continue
        t = x * y
        s = t if s is None else s + t
    return QQ0 if s is None else s
