"""Graded pieces of lowest-weight modules tau (x) Sym(h*) and their forms.

The contravariant form is produced along two independent routes:

* ``gram_via_dunkl`` lowers the first argument through the defining
  commutation relation, peeling the smallest variable of each monomial;
* ``f_operator`` builds the degree-m intertwiner F with beta_c = beta_0 o F
  through its recursion over ordered words.

Their exact agreement is the central internal oracle.  All computations
work over rationals, cyclotomics, or polynomials in the parameters,
depending on what the reflection parameter carries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import linalg
from .errors import OutOfRange
from .groups import CParameter, Irrep, ReflectionGroup, isotypic_projectors, \
    reflection_eigenvalue_sum
from .linalg import is_zero_scalar, sconj
from .scalars import QQ, QQ0, QQ1, Cyclotomic, ParamPoly


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, m: int) -> tuple:
    """Exponent tuples of total degree m, lexicographically sorted."""
    if m == 0:
        return ((0,) * nvars,)
    if nvars == 1:
        return ((m,),)
    out = []
    for first in range(m, -1, -1):
        for rest in monomials_of_degree(nvars - 1, m - first):
            out.append((first,) + rest)
    return tuple(sorted(out))


class ModuleBasis:
    """Parameter-independent bookkeeping for tau (x) S^m h*.

    Basis vectors are (monomial, tau-index) pairs, indexed by
    mono_position * dim_tau + tau_index.  Group elements act monomially on
    monomials; the exact scalars are cached.
    """

    def __init__(self, group: ReflectionGroup, tau: Irrep):
        self.group = group
        self.tau = tau
        self.n = group.dim_h
        self.dt = tau.dim

    def monomials(self, m: int) -> tuple:
        return monomials_of_degree(self.n, m)

    @lru_cache(maxsize=None)
    def _index_map(self, m: int):
        return {mu: i for i, mu in enumerate(monomials_of_degree(self.n, m))}

    def mono_index(self, m: int, mu) -> int:
        return self._index_map(m)[mu]

    def dim(self, m: int) -> int:
        return len(self.monomials(m)) * self.dt

    def basis_labels(self, m: int):
        return [(mu, a) for mu in self.monomials(m) for a in range(self.dt)]

    @staticmethod
    def peel(mu) -> int:
        for j, e in enumerate(mu):
            if e:
                return j
        raise ValueError("cannot peel the empty monomial")

    def act_monomial(self, w: int, mu):
        """(scalar, w.mu) for the monomial action of group element w."""
        perm, scal = self.group.hstar_monomial(w)
        out = [0] * self.n
        factor = QQ1
        for j, e in enumerate(mu):
            if e:
                out[perm[j]] = e
                s = scal[j]
                if not (s is QQ1 or s == 1):
                    factor = factor * s ** e
        return (factor, tuple(out))

    def w_action_matrix(self, w: int, m: int):
        """Dense matrix of w on tau (x) S^m h*."""
        monos = self.monomials(m)
        idx = self._index_map(m)
        dt = self.dt
        rho = self.tau.matrix(w)
        dim = len(monos) * dt
        out = linalg.zeros(dim, dim)
        for mi, mu in enumerate(monos):
            factor, nu = self.act_monomial(w, mu)
            ni = idx[nu]
            for a in range(dt):
                col = mi * dt + a
                for b in range(dt):
                    v = rho[b][a]
                    if not is_zero_scalar(v):
                        out[ni * dt + b][col] = factor * v
        return out

    def w_action_matrices(self, m: int):
        return [self.w_action_matrix(w, m) for w in range(self.group.order)]


@dataclass
class GradedGram:
    """Gram matrix of the contravariant form on one graded piece."""

    degree: int
    matrix: list
    basis: ModuleBasis

    def is_hermitian(self) -> bool:
        return linalg.is_hermitian(self.matrix)


@dataclass
class HWeight:
    """Lowest h-eigenvalue; linear in the parameters, dim h/2 at zero."""

    value: object


@dataclass
class SingularSpace:
    degree: int
    dimension: int
    type_decomposition: dict
    basis_vectors: list


class DunklEngine:
    """Per-(module, parameter) cache of y-actions, Grams and F-operators."""

    def __init__(self, basis: ModuleBasis, c: CParameter):
        self.basis = basis
        self.c = c
        group = basis.group
        n = basis.n
        # A_{ij} reflection data: [y_i, x_j] = delta_ij - sum_s coef * s
        # with coef = c_s alpha_s[i] alpha_check_s[j]
        self._acoef = [[[] for _ in range(n)] for _ in range(n)]
        # F recursion data: per reflection, k_s = 2 c_s / (1 - lambda_s)
        self._fcoef = []
        for r in group.reflections:
            cs = c.value_for_class(r.class_index)
            for i in range(n):
                ai = r.alpha[i]
                if is_zero_scalar(ai):
                    continue
                for j in range(n):
                    av = r.alpha_check[j]
                    if is_zero_scalar(av):
                        continue
                    self._acoef[i][j].append(
                        (r.element_index, cs * (ai * av)))
            lam = r.lam
            denom = 1 - lam if isinstance(lam, Cyclotomic) else QQ1 - lam
            kinv = linalg.sinv(denom)
            self._fcoef.append((r.element_index, (cs * 2) * kinv))
        self._ycols = {}
        self._gram = {}
        self._fmat = {}

    # -- y action -----------------------------------------------------------

    def y_columns(self, m: int):
        """For each i, the columns of y_i: degree m -> m-1 as sparse dicts."""
        got = self._ycols.get(m)
        if got is not None:
            return got
        if m < 1:
            raise ValueError("y lowers positive degrees")
        basis = self.basis
        n, dt = basis.n, basis.dt
        monos = basis.monomials(m)
        prev_idx = basis._index_map(m - 1)
        pp_monos = basis.monomials(m - 2) if m >= 2 else None
        tau = basis.tau
        prev_cols = self.y_columns(m - 1) if m >= 2 else None
        out = [[] for _ in range(n)]
        for i in range(n):
            cols = out[i]
            acoef_i = self._acoef[i]
            for mu in monos:
                j = basis.peel(mu)
                mup = list(mu)
                mup[j] -= 1
                mup = tuple(mup)
                mup_idx = prev_idx[mup]
                mup_idx_prevdeg = mup_idx
                for a in range(dt):
                    col = {}
                    # X_j composed with the recursive column
                    if m >= 2:
                        rec = prev_cols[i][mup_idx_prevdeg * dt + a]
                        for r, v in rec.items():
                            nu, b = pp_monos[r // dt], r % dt
                            nuj = list(nu)
                            nuj[j] += 1
                            rr = prev_idx[tuple(nuj)] * dt + b
                            col[rr] = col.get(rr, QQ0) + v
                    # [y_i, x_j] applied to (mup, a)
                    if i == j:
                        rr = mup_idx * dt + a
                        col[rr] = col.get(rr, QQ0) + QQ1
                    for (elem, coef) in acoef_i[j]:
                        factor, numov = basis.act_monomial(elem, mup)
                        ni = prev_idx[numov]
                        rho = tau.matrix(elem)
                        cf = coef * factor
                        for b in range(dt):
                            v = rho[b][a]
                            if not is_zero_scalar(v):
                                rr = ni * dt + b
                                col[rr] = col.get(rr, QQ0) - cf * v
                    cols.append({r: v for r, v in col.items()
                                 if not is_zero_scalar(v)})
        self._ycols[m] = out
        return out

    def y_matrices(self, m: int):
        """Dense matrices of y_1..y_n from degree m to degree m-1."""
        cols = self.y_columns(m)
        nr, nc = self.basis.dim(m - 1), self.basis.dim(m)
        out = []
        for i in range(self.basis.n):
            mat = linalg.zeros(nr, nc)
            for cidx, col in enumerate(cols[i]):
                for r, v in col.items():
                    mat[r][cidx] = v
            out.append(mat)
        return out

    # -- contravariant Gram via lowering ------------------------------------

    def gram_rows(self, m: int):
        got = self._gram.get(m)
        if got is not None:
            return got
        basis = self.basis
        dt = basis.dt
        if m == 0:
            form = basis.tau.invariant_form
            rows = [[form[a] if a == b else QQ0 for b in range(dt)]
                    for a in range(dt)]
            self._gram[0] = rows
            return rows
        prev = self.gram_rows(m - 1)
        ycols = self.y_columns(m)
        monos = basis.monomials(m)
        prev_idx = basis._index_map(m - 1)
        dim = len(monos) * dt
        rows = []
        for mu in monos:
            j = basis.peel(mu)
            mup = list(mu)
            mup[j] -= 1
            prow_base = prev_idx[tuple(mup)] * dt
            yj = ycols[j]
            for a in range(dt):
                prow = prev[prow_base + a]
                row = []
                for cidx in range(dim):
                    s = None
                    for r, v in yj[cidx].items():
                        pv = prow[r]
                        if is_zero_scalar(pv):
                            continue
                        t = pv * sconj(v)
                        s = t if s is None else s + t
                    row.append(QQ0 if s is None else s)
                rows.append(row)
        self._gram[m] = rows
        return rows

    # -- F operator via the ordered-word recursion ---------------------------

    def f_matrix(self, m: int):
        got = self._fmat.get(m)
        if got is not None:
            return got
        basis = self.basis
        dt = basis.dt
        if m == 0:
            mat = linalg.identity(dt)
            self._fmat[0] = mat
            return mat
        prev = self.f_matrix(m - 1)
        group = basis.group
        monos = basis.monomials(m)
        idx = basis._index_map(m)
        prev_idx = basis._index_map(m - 1)
        prev_monos = basis.monomials(m - 1)
        tau = basis.tau
        dim = len(monos) * dt
        prev_dim = len(prev_monos) * dt
        inv_m = QQ1 / QQ(m)
        cols = []

        def shift_into(acc, vec, j, coef):
            # acc += coef * x_j * vec   (vec indexed by degree m-1)
            for r in range(prev_dim):
                v = vec[r]
                if is_zero_scalar(v):
                    continue
                nu, b = prev_monos[r // dt], r % dt
                nuj = list(nu)
                nuj[j] += 1
                rr = idx[tuple(nuj)] * dt + b
                acc[rr] = acc[rr] + coef * v

        for mu in monos:
            word = [j for j, e in enumerate(mu) for _ in range(e)]
            for a in range(dt):
                acc = [QQ0] * dim
                for p in range(m):
                    j = word[p]
                    # term 1: x_j F_{m-1}(word minus position p)
                    rest = list(mu)
                    rest[j] -= 1
                    fcol_idx = prev_idx[tuple(rest)] * dt + a
                    fcol = [prev[r][fcol_idx] for r in range(prev_dim)]
                    shift_into(acc, fcol, j, QQ1)
                    # term 2: reflections acting on the tail
                    head = [0] * basis.n
                    for q in range(p):
                        head[word[q]] += 1
                    tail = [0] * basis.n
                    for q in range(p + 1, m):
                        tail[word[q]] += 1
                    tail = tuple(tail)
                    for ridx, (elem, kcoef) in enumerate(self._fcoef):
                        perm, scal = group.hstar_monomial(elem)
                        # (1 - s) x_j = x_j - scal[j] x_perm[j]
                        if perm[j] == j and _is_one(scal[j]):
                            continue
                        factor, tmoved = basis.act_monomial(elem, tail)
                        combined = tuple(h + t for h, t in zip(head, tmoved))
                        base = prev_idx[combined] * dt
                        rho = tau.matrix(elem)
                        for b in range(dt):
                            rv = rho[b][a]
                            if is_zero_scalar(rv):
                                continue
                            coef = kcoef * (factor * rv)
                            fcol_idx = base + b
                            fcol = [prev[r][fcol_idx] for r in range(prev_dim)]
                            shift_into(acc, fcol, j, -coef)
                            shift_into(acc, fcol, perm[j], coef * scal[j])
                mu_col = [v * inv_m for v in acc]
                cols.append(mu_col)
        mat = [[cols[cidx][r] for cidx in range(dim)] for r in range(dim)]
        self._fmat[m] = mat
        return mat


def _is_one(x) -> bool:
    return is_zero_scalar(x - 1)


# ---------------------------------------------------------------------------
# public operations


_ENGINES = {}


def _ckey(c: CParameter):
    return tuple(repr(v) for v in c.values)


def get_engine(group: ReflectionGroup, tau: Irrep, c: CParameter) -> DunklEngine:
    key = (id(group), repr(tau.label), _ckey(c))
    eng = _ENGINES.get(key)
    if eng is None:
        eng = DunklEngine(ModuleBasis(group, tau), c)
        _ENGINES[key] = eng
    return eng


def beta0_gram(group: ReflectionGroup, tau: Irrep, m: int) -> GradedGram:
    """Parameter-free Gram: apolarity pairing tensored with the tau form.

    Distinct monomials are orthogonal and ||x^mu||^2 = mu! times the tau
    weight, positive definite.
    """
    basis = ModuleBasis(group, tau)
    monos = basis.monomials(m)
    dt = tau.dim
    dim = len(monos) * dt
    mat = linalg.zeros(dim, dim)
    for mi, mu in enumerate(monos):
        w = QQ(1)
        for e in mu:
            w = w * factorial(e)
        for a in range(dt):
            mat[mi * dt + a][mi * dt + a] = w * tau.invariant_form[a]
    return GradedGram(m, mat, basis)


def gram_via_dunkl(group: ReflectionGroup, tau: Irrep, m: int,
                   c: CParameter) -> GradedGram:
    """Contravariant Gram on degree m, computed by y-lowering."""
    eng = get_engine(group, tau, c)
    return GradedGram(m, eng.gram_rows(m), eng.basis)


def f_operator(group: ReflectionGroup, tau: Irrep, m: int, c: CParameter):
    """The degree-m operator F with beta_c = beta_0 o F; identity at c=0."""
    eng = get_engine(group, tau, c)
    return eng.f_matrix(m)


def y_action(group: ReflectionGroup, tau: Irrep, m: int, c: CParameter):
    """Dense matrices of y_1..y_n mapping degree m to degree m-1."""
    eng = get_engine(group, tau, c)
    return eng.y_matrices(m)


def h_weight(group: ReflectionGroup, tau: Irrep, c: CParameter) -> HWeight:
    """Lowest h-eigenvalue: dim h / 2 - sum_s (2 c_s / (1 - lambda_s)) s|_tau."""
    total = QQ(group.dim_h, 2)
    class_scalars = reflection_eigenvalue_sum(group, tau)
    # group reflections by class; lambda is constant on each class
    lam_of_class = {}
    for r in group.reflections:
        lam_of_class.setdefault(r.class_index, r.lam)
    acc = None
    for ci, scal in enumerate(class_scalars):
        lam = lam_of_class[ci]
        denom = 1 - lam if isinstance(lam, Cyclotomic) else QQ1 - lam
        coef = QQ(2) * linalg.sinv(denom)
        term = (c.value_for_class(ci) * coef) * scal
        acc = term if acc is None else acc + term
    value = total - acc if acc is not None else total
    if isinstance(value, Cyclotomic) and value.is_rational():
        value = value.as_rational()
    return HWeight(value)


def degree_weight_identity(group, tau, m: int, c: CParameter) -> bool:
    """Check sum_i x_i y_i + dim h/2 - sum_s (2c_s/(1-lambda_s)) s = h_c + m
    as matrices on degree m (the grading element acting as a scalar)."""
    eng = get_engine(group, tau, c)
    basis = eng.basis
    dim = basis.dim(m)
    dt = basis.dt
    acc = linalg.zeros(dim, dim)
    if m >= 1:
        ycols = eng.y_columns(m)
        monos = basis.monomials(m)
        prev_monos = basis.monomials(m - 1)
        idx = basis._index_map(m)
        for i in range(basis.n):
            cols = ycols[i]
            for cidx in range(dim):
                for r, v in cols[cidx].items():
                    nu, b = prev_monos[r // dt], r % dt
                    nui = list(nu)
                    nui[i] += 1
                    acc[idx[tuple(nui)] * dt + b][cidx] = \
                        acc[idx[tuple(nui)] * dt + b][cidx] + v
    hw = h_weight(group, tau, c).value
    target = hw + m
    # subtract the reflection term and the constant, compare with target * I
    const = QQ(group.dim_h, 2)
    refl = linalg.zeros(dim, dim)
    for r in group.reflections:
        cs = c.value_for_class(r.class_index)
        lam = r.lam
        denom = 1 - lam if isinstance(lam, Cyclotomic) else QQ1 - lam
        coef = (cs * 2) * linalg.sinv(denom)
        w = basis.w_action_matrix(r.element_index, m)
        for rr in range(dim):
            for cc in range(dim):
                x = w[rr][cc]
                if not is_zero_scalar(x):
                    refl[rr][cc] = refl[rr][cc] + coef * x
    for rr in range(dim):
        for cc in range(dim):
            val = acc[rr][cc] - refl[rr][cc]
            if rr == cc:
                val = val + const
            want = target if rr == cc else QQ0
            if not is_zero_scalar(val - want):
                return False
    return True


def singular_vectors(group: ReflectionGroup, tau: Irrep, m: int,
                     c: CParameter) -> SingularSpace:
    """Joint kernel of all y_i on degree m, with its W-type decomposition."""
    if m < 1:
        raise OutOfRange("singular vectors live in positive degrees")
    eng = get_engine(group, tau, c)
    basis = eng.basis
    cols = eng.y_columns(m)
    dim = basis.dim(m)
    stacked = []
    for i in range(basis.n):
        nr = basis.dim(m - 1)
        mat = [[QQ0] * dim for _ in range(nr)]
        for cidx, col in enumerate(cols[i]):
            for r, v in col.items():
                mat[r][cidx] = v
        stacked.extend(mat)
    kernel = linalg.nullspace(stacked, ncols=dim)
    decomp = {}
    if kernel:
        mats = basis.w_action_matrices(m)
        projs = isotypic_projectors(group, mats, check=False)
        for sigma in group.irreps():
            p = projs[sigma.label]
            imgs = [linalg.mat_vec(p, v) for v in kernel]
            r = linalg.rank(imgs)
            if r:
                mult, rem = divmod(r, sigma.dim)
                if rem:
                    raise AssertionError("isotypic rank not divisible by dim")
                decomp[sigma.label] = mult
    return SingularSpace(m, len(kernel), decomp, kernel)


# ---------------------------------------------------------------------------
# Gaussian form


@dataclass
class TruncatedGram:
    """Form on the degree <= D truncation with per-degree offsets."""

    max_degree: int
    matrix: list
    offsets: list
    basis: ModuleBasis


def _lowering_f_matrix(eng: DunklEngine, D: int, offsets, dim):
    """Matrix of f (= y1 y2 for dihedral, else (1/2) sum y_i^2) on the
    truncation; lowers degree by exactly 2."""
    basis = eng.basis
    out = linalg.zeros(dim, dim)
    dihedral = basis.group.kind.startswith("dihedral")
    for m in range(2, D + 1):
        ym = eng.y_matrices(m)
        ym1 = eng.y_matrices(m - 1)
        if dihedral:
            block = linalg.mat_mul(ym1[0], ym[1])
        else:
            acc = None
            for i in range(basis.n):
                t = linalg.mat_mul(ym1[i], ym[i])
                acc = t if acc is None else linalg.mat_add(acc, t)
            half = QQ(1, 2)
            block = [[x * half for x in row] for row in acc]
        ro, co = offsets[m - 2], offsets[m]
        for r in range(len(block)):
            for cidx in range(len(block[0])):
                v = block[r][cidx]
                if not is_zero_scalar(v):
                    out[ro + r][co + cidx] = v
    return out


def gaussian_gram(group: ReflectionGroup, tau: Irrep, D: int,
                  c: CParameter) -> TruncatedGram:
    """Gram of the Gaussian form beta(exp(f) . , exp(f) . ) on degrees <= D.

    exp(f) is exact: f lowers degree by two, so it is nilpotent on the
    truncation.  The result mixes degrees, unlike the graded contravariant
    form it is built from.
    """
    eng = get_engine(group, tau, c)
    basis = eng.basis
    offsets = [0]
    for m in range(D + 1):
        offsets.append(offsets[-1] + basis.dim(m))
    dim = offsets[D + 1]
    offsets_by_degree = offsets[:-1]
    fmat = _lowering_f_matrix(eng, D, offsets_by_degree, dim)
    # exp(f) = sum f^k / k!, finite
    expf = linalg.identity(dim)
    power = linalg.identity(dim)
    k = 1
    while True:
        power = linalg.mat_mul(fmat, power)
        if linalg.is_zero_matrix(power):
            break
        coef = QQ(1, factorial(k))
        expf = linalg.mat_add(expf, [[x * coef for x in row] for row in power])
        k += 1
    # block-diagonal graded Gram
    g = linalg.zeros(dim, dim)
    for m in range(D + 1):
        rows = eng.gram_rows(m)
        o = offsets_by_degree[m]
        for r in range(len(rows)):
            for cidx in range(len(rows)):
                v = rows[r][cidx]
                if not is_zero_scalar(v):
                    g[o + r][o + cidx] = v
    expf_conj = [[sconj(x) for x in row] for row in expf]
    gamma = linalg.mat_mul(linalg.transpose(expf),
                           linalg.mat_mul(g, expf_conj))
    return TruncatedGram(D, gamma, offsets_by_degree, basis)
