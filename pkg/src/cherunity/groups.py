"""Reflection groups and their irreducible representations, exactly.

Three families are supported:

* ``symmetric(n)``  -- S_n acting on C^n by permutation matrices, irreps in
  Young's seminormal form (all-rational entries, diagonal invariant form);
* ``cyclic(m)``     -- Z/m acting on C by j -> lambda^-j;
* ``dihedral``      -- odd order 2(2d+1) and even order 4d, realized on C^2
  in the complex-diagonal basis (rotation -> diag(zeta, zeta^-1), base
  reflection -> coordinate swap).

All matrix entries are rationals or cyclotomics; every group element acts
monomially on the chosen basis of h*, which the module layer exploits.
Reflection data (alpha, alpha_check, lambda, conjugacy class) is extracted
from the matrices, normalized to (alpha, alpha_check) = 2.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from . import linalg
from .errors import NotARepresentation, OutOfRange, UnknownGroupSpec
from .scalars import QQ, QQ0, QQ1, Cyclotomic, is_rational_scalar


# ---------------------------------------------------------------------------
# partitions (plain tuples) and symmetric-group combinatorics


def check_partition(parts) -> tuple:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return parts


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n, reverse-lexicographic ((n) first, (1^n) last)."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(maxpart, remaining), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n, [])
    return tuple(out)


def conjugate_partition(parts) -> tuple:
    parts = tuple(parts)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def partition_content(parts) -> int:
    """Sum of (column - row) over the cells of the diagram, 0-based."""
    return sum(j - i for i, p in enumerate(parts) for j in range(p))


def standard_tableaux(shape) -> tuple:
    """All standard Young tableaux of the given shape (rows of 1..n)."""
    shape = check_partition(shape)
    n = sum(shape)
    rows = [[] for _ in shape]
    out = []

    def rec(k):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, p in enumerate(shape):
            if len(rows[i]) < p and (i == 0 or len(rows[i]) < len(rows[i - 1])):
                rows[i].append(k)
                rec(k + 1)
                rows[i].pop()

    rec(1)
    return tuple(sorted(out))


def hook_length_count(shape) -> int:
    """Number of standard tableaux, by the hook length formula."""
    shape = check_partition(shape)
    n = sum(shape)
    conj = conjugate_partition(shape)
    prod = 1
    for i, p in enumerate(shape):
        for j in range(p):
            prod *= (p - j) + (conj[j] - i) - 1
    from math import factorial

    return factorial(n) // prod


@lru_cache(maxsize=None)
def _cycle_type(perm: tuple) -> tuple:
    n = len(perm)
    seen = [False] * n
    lens = []
    for i in range(n):
        if not seen[i]:
            l, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                l += 1
            lens.append(l)
    return tuple(sorted(lens, reverse=True))


@lru_cache(maxsize=None)
def sn_character(shape: tuple, cycle_type: tuple) -> int:
    """Murnaghan-Nakayama evaluation of the S_n character chi_shape."""
    if not cycle_type:
        return 1
    k = cycle_type[0]
    rest = cycle_type[1:]
    total = 0
    parts = list(shape)
    m = len(parts)
    # border-strip removal in the beta-number encoding: removing a strip of
    # size k moves one first-column hook length b to b-k
    beta = [parts[i] + (m - 1 - i) for i in range(m)]
    betaset = set(beta)
    for b in beta:
        if b - k >= 0 and (b - k) not in betaset:
            newbeta = sorted((x for x in beta if x != b), reverse=True)
            newbeta.append(b - k)
            newbeta.sort(reverse=True)
            # height = number of beta entries strictly between b-k and b
            height = sum(1 for x in beta if b - k < x < b)
            # convert back to a partition
            nb = sorted(newbeta, reverse=True)
            newshape = tuple(x - (len(nb) - 1 - i) for i, x in enumerate(nb))
            newshape = tuple(p for p in newshape if p > 0)
            total += (-1) ** height * sn_character(newshape, rest)
    return total


# ---------------------------------------------------------------------------
# reflection data


class ReflectionDatum:
    """One reflection with its root data, normalized to (alpha, alpha_check)=2."""

    __slots__ = ("element_index", "alpha", "alpha_check", "lam", "class_index")

    def __init__(self, element_index, alpha, alpha_check, lam, class_index):
        self.element_index = element_index
        self.alpha = alpha
        self.alpha_check = alpha_check
        self.lam = lam
        self.class_index = class_index

    def to_json(self):
        def enc(x):
            return x.to_json() if isinstance(x, Cyclotomic) else str(x)

        return {
            "element": self.element_index,
            "alpha": [enc(a) for a in self.alpha],
            "alpha_check": [enc(a) for a in self.alpha_check],
            "lambda": enc(self.lam),
            "class": self.class_index,
        }


class Irrep:
    """Irreducible representation with exact matrices.

    ``invariant_form`` is the diagonal of a positive W-invariant Hermitian
    form in this basis (identity for the unitary cyclic/dihedral models,
    the classical diagonal weights for Young's seminormal form).
    """

    def __init__(self, group, label, dim, matrix_fn, char_fn, invariant_form):
        self.group = group
        self.label = label
        self.dim = dim
        self._matrix_fn = matrix_fn
        self._char_fn = char_fn
        self.invariant_form = invariant_form
        self._cache = {}

    def matrix(self, i: int):
        m = self._cache.get(i)
        if m is None:
            m = self._matrix_fn(i)
            self._cache[i] = m
        return m

    def character(self, i: int):
        return self._char_fn(i)

    @property
    def matrices(self):
        return {i: self.matrix(i) for i in range(self.group.order)}

    def __repr__(self):
        return f"Irrep({self.group.name}, {self.label}, dim={self.dim})"


class ReflectionGroup:
    """A finite reflection group with exact unitary matrices on h.

    Elements are indexed 0..order-1 with the identity at index 0;
    ``mult``/``inv`` compose indices.  Every element acts monomially on the
    chosen basis of h*: ``hstar_monomial(i)`` returns (perm, scal) with
    w . x_j = scal[j] * x_perm[j].
    """

    def __init__(self, kind, name, dim_h, order, mult_fn, inv_fn,
                 h_matrix_fn, degrees, coxeter_number):
        self.kind = kind
        self.name = name
        self.dim_h = dim_h
        self.order = order
        self._mult_fn = mult_fn
        self._inv_fn = inv_fn
        self._h_matrix_fn = h_matrix_fn
        self.degrees = degrees
        self.coxeter_number = coxeter_number
        self._hstar = {}
        self._irreps = None
        self.reflections = []
        self.reflection_classes = []

    # -- group structure ----------------------------------------------------

    def mult(self, i: int, j: int) -> int:
        return self._mult_fn(i, j)

    def inv(self, i: int) -> int:
        return self._inv_fn(i)

    def h_matrix(self, i: int):
        return self._h_matrix_fn(i)

    def hstar_matrix(self, i: int):
        # action on the dual basis: transpose of the inverse matrix
        return linalg.transpose(linalg.invert(self.h_matrix(i)))

    def hstar_monomial(self, i: int):
        got = self._hstar.get(i)
        if got is None:
            m = self.hstar_matrix(i)
            perm, scal = [], []
            for j in range(self.dim_h):
                hits = [r for r in range(self.dim_h)
                        if not linalg.is_zero_scalar(m[r][j])]
                if len(hits) != 1:
                    raise AssertionError("group action is not monomial")
                perm.append(hits[0])
                scal.append(m[hits[0]][j])
            got = (tuple(perm), tuple(scal))
            self._hstar[i] = got
        return got

    @property
    def is_coxeter(self) -> bool:
        return all(_scalar_eq(r.lam, QQ(-1)) for r in self.reflections)

    def irreps(self):
        if self._irreps is None:
            self._irreps = self._build_irreps()
        return self._irreps

    def irrep(self, label):
        for s in self.irreps():
            if s.label == label:
                return s
        raise KeyError(f"no irrep labelled {label!r} in {self.name}")

    def reflection_data_json(self):
        return {
            "group": self.name,
            "dim_h": self.dim_h,
            "order": self.order,
            "degrees": list(self.degrees),
            "reflections": [r.to_json() for r in self.reflections],
            "classes": [list(c) for c in self.reflection_classes],
        }

    def __repr__(self):
        return f"ReflectionGroup({self.name})"


def _scalar_eq(a, b) -> bool:
    return linalg.is_zero_scalar(a - b)


def _attach_reflections(group: ReflectionGroup):
    """Locate reflections, extract root data, split into conjugacy classes."""
    dim = group.dim_h
    refl_elems = []
    for i in range(1, group.order):
        m = group.h_matrix(i)
        delta = [[m[r][c] - (QQ1 if r == c else QQ0) for c in range(dim)]
                 for r in range(dim)]
        if linalg.rank(delta) == 1:
            refl_elems.append(i)
    refl_set = set(refl_elems)
    # conjugacy classes by full closure
    classes = []
    assigned = {}
    for s in refl_elems:
        if s in assigned:
            continue
        cls = set()
        for g in range(group.order):
            cls.add(group.mult(group.mult(g, s), group.inv(g)))
        if not cls <= refl_set:
            raise AssertionError("reflections not closed under conjugation")
        idx = len(classes)
        classes.append(sorted(cls))
        for x in cls:
            assigned[x] = idx

    def first_nonzero_col(mat):
        for c in range(dim):
            col = [mat[r][c] for r in range(dim)]
            if any(not linalg.is_zero_scalar(x) for x in col):
                return col
        raise AssertionError("expected rank-1 image")

    def canon(vec):
        for x in vec:
            if not linalg.is_zero_scalar(x):
                if is_rational_scalar(x) and x < 0:
                    return [-v for v in vec]
                return vec
        return vec

    data = []
    for s in refl_elems:
        mh = group.h_matrix(s)
        mhs = group.hstar_matrix(s)
        delta_h = [[mh[r][c] - (QQ1 if r == c else QQ0) for c in range(dim)]
                   for r in range(dim)]
        delta_hs = [[mhs[r][c] - (QQ1 if r == c else QQ0) for c in range(dim)]
                    for r in range(dim)]
        alpha_check = canon(first_nonzero_col(delta_h))
        alpha = canon(first_nonzero_col(delta_hs))
        pairing = QQ0
        for a, b in zip(alpha, alpha_check):
            pairing = pairing + a * b
        scale = QQ(2) * linalg.sinv(pairing)
        alpha = [a * scale for a in alpha]
        # nontrivial eigenvalue of s on h*: M* alpha = lambda alpha
        img = linalg.mat_vec(mhs, alpha)
        k = next(r for r in range(dim)
                 if not linalg.is_zero_scalar(alpha[r]))
        lam = img[k] * linalg.sinv(alpha[k]) if not is_rational_scalar(alpha[k]) \
            else img[k] / alpha[k]
        data.append(ReflectionDatum(s, alpha, alpha_check, lam, assigned[s]))
    group.reflections = data
    group.reflection_classes = classes


# ---------------------------------------------------------------------------
# symmetric groups


def _perm_word(perm):
    """Adjacent-transposition word: perm == s_{w_r} ... s_{w_1} (1-indexed k)."""
    line = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for k in range(len(line) - 1):
            if line[k] > line[k + 1]:
                line[k], line[k + 1] = line[k + 1], line[k]
                word.append(k)
                changed = True
    # line is now identity: perm * s_{w1} * ... * s_{wr} = e
    return list(reversed(word))


def build_symmetric(n: int, max_n: int = 8) -> ReflectionGroup:
    """S_n on h = C^n (permutation representation).

    Reflections are the transpositions (one class), alpha_(ij) = x_i - x_j,
    alpha_check = e_i - e_j, lambda = -1.  The reflection action has degrees
    2..n and Coxeter number n.
    """
    if not 2 <= n <= max_n:
        raise OutOfRange(f"symmetric group size {n} outside [2, {max_n}]")
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}

    def mult(i, j):
        a, b = elems[i], elems[j]
        return index[tuple(a[b[k]] for k in range(n))]

    def inv(i):
        a = elems[i]
        out = [0] * n
        for k in range(n):
            out[a[k]] = k
        return index[tuple(out)]

    def h_matrix(i):
        a = elems[i]
        m = linalg.zeros(n, n)
        for k in range(n):
            m[a[k]][k] = QQ1
        return m

    g = ReflectionGroup("symmetric", f"Sn:{n}", n, len(elems), mult, inv,
                        h_matrix, list(range(2, n + 1)), n)
    g.elements = elems
    g.element_index = index
    _attach_reflections(g)
    g._build_irreps = lambda: _symmetric_irreps(g)
    return g


def _seminormal_generators(shape):
    """Young's seminormal matrices for adjacent transpositions s_1..s_{n-1}
    plus the diagonal invariant form weights."""
    tabs = standard_tableaux(shape)
    tab_index = {t: i for i, t in enumerate(tabs)}
    n = sum(shape)
    dim = len(tabs)

    def position(tab, v):
        for r, row in enumerate(tab):
            for c, x in enumerate(row):
                if x == v:
                    return r, c
        raise ValueError

    def swap_tab(tab, k):
        out = [list(r) for r in tab]
        for r, row in enumerate(out):
            for c, x in enumerate(row):
                if x == k:
                    out[r][c] = k + 1
                elif x == k + 1:
                    out[r][c] = k
        return tuple(tuple(r) for r in out)

    gens = []
    for k in range(1, n):
        m = linalg.zeros(dim, dim)
        for t, tab in enumerate(tabs):
            r1, c1 = position(tab, k)
            r2, c2 = position(tab, k + 1)
            if r1 == r2:
                m[t][t] = QQ1
            elif c1 == c2:
                m[t][t] = QQ(-1)
            else:
                d = (c2 - r2) - (c1 - r1)
                other = tab_index[swap_tab(tab, k)]
                dd = QQ(d)
                if d > 0:
                    # this tableau is the content-increasing member of the pair
                    m[t][t] = QQ1 / dd
                    m[other][t] = 1 - QQ1 / (dd * dd)
                else:
                    m[t][t] = QQ1 / dd
                    m[other][t] = QQ1
        gens.append(m)

    # diagonal invariant weights: gamma_A = (1 - 1/d^2) gamma_B across pairs
    weights = [None] * dim
    weights[0] = QQ1
    pending = [0]
    while pending:
        t = pending.pop()
        tab = tabs[t]
        for k in range(1, n):
            r1, c1 = position(tab, k)
            r2, c2 = position(tab, k + 1)
            if r1 == r2 or c1 == c2:
                continue
            other = tab_index[swap_tab(tab, k)]
            if weights[other] is not None:
                continue
            d = (c2 - r2) - (c1 - r1)
            dd = QQ(d) * QQ(d)
            factor = 1 - QQ1 / dd
            if d > 0:
                weights[other] = weights[t] / factor
            else:
                weights[other] = weights[t] * factor
            pending.append(other)
    return tabs, gens, weights


def _symmetric_irreps(group):
    n = group.dim_h
    out = []
    for shape in partitions_of(n):
        out.append(_symmetric_irrep(group, shape))
    return out


def _symmetric_irrep(group, shape):
    shape = check_partition(shape)
    tabs, gens, weights = _seminormal_generators(shape)
    dim = len(tabs)
    words = [None] * group.order

    def matrix_fn(i):
        w = words[i]
        if w is None:
            w = _perm_word(group.elements[i])
            words[i] = w
        m = linalg.identity(dim)
        for k in w:
            m = linalg.mat_mul(m, gens[k])
        return m

    def char_fn(i):
        return QQ(sn_character(shape, _cycle_type(group.elements[i])))

    return Irrep(group, shape, dim, matrix_fn, char_fn, weights)


# ---------------------------------------------------------------------------
# cyclic groups


def build_cyclic(m: int, max_m: int = 12) -> ReflectionGroup:
    """Z/m on h = C, with j acting by lambda^-j (lambda = zeta_m).

    Every nonidentity power is a reflection forming its own conjugacy class;
    lambda_{g^j} = zeta_m^j is its eigenvalue on h*.
    """
    if not 2 <= m <= max_m:
        raise OutOfRange(f"cyclic order {m} outside [2, {max_m}]")
    zeta = Cyclotomic.zeta(m)

    def mult(i, j):
        return (i + j) % m

    def inv(i):
        return (-i) % m

    def h_matrix(i):
        return [[zeta ** ((m - i) % m)]] if i else [[QQ1]]

    g = ReflectionGroup("cyclic", f"Cyc:{m}", 1, m, mult, inv,
                        h_matrix, [m], 2 if m == 2 else None)
    _attach_reflections(g)
    g._build_irreps = lambda: _cyclic_irreps(g, m, zeta)
    return g


def _zpow(order: int, e: int):
    """zeta_order^e as a reduced cyclotomic (rational when possible)."""
    e %= order
    if e == 0:
        return QQ1
    z = Cyclotomic.zeta(order, e)
    return z.as_rational() if z.is_rational() else z


def _cyclic_irreps(group, m, zeta):
    out = []
    for j in range(m):
        def matrix_fn(i, j=j):
            return [[_zpow(m, j * i)]]

        def char_fn(i, j=j):
            return _zpow(m, j * i)

        out.append(Irrep(group, j, 1, matrix_fn, char_fn, [QQ1]))
    return out


# ---------------------------------------------------------------------------
# dihedral groups


def build_dihedral(parity: str, d: int, max_order: int = 48) -> ReflectionGroup:
    """Dihedral group in the complex-diagonal model on h = C^2.

    ``parity`` is "odd" (group order 2(2d+1), one reflection class) or
    "even" (order 4d, two reflection classes represented by the Coxeter
    generators s_1 = s and s_2 = s r).  The rotation acts on h by
    diag(zeta, zeta^-1).
    """
    if parity == "odd":
        if d < 1:
            raise OutOfRange("odd dihedral needs d >= 1")
        npoly = 2 * d + 1
    elif parity == "even":
        if d < 2:
            raise OutOfRange("even dihedral needs d >= 2")
        npoly = 2 * d
    else:
        raise OutOfRange(f"unknown dihedral parity {parity!r}")
    order = 2 * npoly
    if order > max_order:
        raise OutOfRange(f"dihedral order {order} exceeds {max_order}")
    zeta = Cyclotomic.zeta(npoly)

    # element index: k + npoly*e  <->  r^k s^e
    def mult(i, j):
        k1, e1 = i % npoly, i // npoly
        k2, e2 = j % npoly, j // npoly
        k = (k1 + (k2 if e1 == 0 else -k2)) % npoly
        return k + npoly * ((e1 + e2) % 2)

    def inv(i):
        k, e = i % npoly, i // npoly
        if e == 0:
            return (-k) % npoly
        return i  # reflections are involutions

    def h_matrix(i):
        k, e = i % npoly, i // npoly
        zk = zeta ** k
        zmk = zeta ** ((npoly - k) % npoly)
        if e == 0:
            return [[zk, QQ0], [QQ0, zmk]]
        # r^k s: swap composed with the rotation
        return [[QQ0, zk], [zmk, QQ0]]

    name = f"DihOdd:{d}" if parity == "odd" else f"DihEven:{d}"
    g = ReflectionGroup(f"dihedral_{parity}", name, 2, order, mult, inv,
                        h_matrix, [2, npoly], npoly)
    g.npoly = npoly
    g.dihedral_d = d
    _attach_reflections(g)
    g._build_irreps = lambda: _dihedral_irreps(g, parity, d, npoly, zeta)
    return g


def _dihedral_irreps(group, parity, d, npoly, zeta):
    def one_dim(values_fn, label):
        def matrix_fn(i):
            return [[values_fn(i)]]

        return Irrep(group, label, 1, matrix_fn, values_fn, [QQ1])

    def triv_fn(i):
        return QQ1

    def sign_fn(i):
        return QQ1 if i < npoly else QQ(-1)

    out = [one_dim(triv_fn, "triv"), one_dim(sign_fn, "sign")]
    if parity == "even":
        def eps1_fn(i):
            k, e = i % npoly, i // npoly
            return QQ((-1) ** (k + e))

        def eps2_fn(i):
            k, e = i % npoly, i // npoly
            return QQ((-1) ** k)

        out.append(one_dim(eps1_fn, "eps1"))
        out.append(one_dim(eps2_fn, "eps2"))
    lmax = d if parity == "odd" else d - 1
    for l in range(1, lmax + 1):
        def matrix_fn(i, l=l):
            k, e = i % npoly, i // npoly
            zl = _zpow(npoly, l * k)
            zml = _zpow(npoly, -l * k)
            if e == 0:
                return [[zl, QQ0], [QQ0, zml]]
            return [[QQ0, zl], [zml, QQ0]]

        def char_fn(i, l=l):
            k, e = i % npoly, i // npoly
            if e:
                return QQ0
            return _zpow(npoly, l * k) + _zpow(npoly, -l * k)

        out.append(Irrep(group, ("tau", l), 2, matrix_fn, char_fn, [QQ1, QQ1]))
    return out


# ---------------------------------------------------------------------------
# projectors and class sums


def isotypic_projectors(group: ReflectionGroup, rep_matrices, check: bool = True):
    """Character projectors P_sigma = (dim sigma/|W|) sum_w chi(w^-1) rep(w).

    ``rep_matrices`` is a list of matrices indexed like the group elements.
    The projectors are idempotent, mutually orthogonal and sum to 1.
    """
    if len(rep_matrices) != group.order:
        raise NotARepresentation("need one matrix per group element")
    if check:
        import random

        rng = random.Random(7)
        for _ in range(min(8, group.order)):
            i = rng.randrange(group.order)
            j = rng.randrange(group.order)
            prod = linalg.mat_mul(rep_matrices[i], rep_matrices[j])
            if not linalg.mat_eq(prod, rep_matrices[group.mult(i, j)]):
                raise NotARepresentation(
                    f"matrices fail multiplicativity at ({i}, {j})")
    dim = len(rep_matrices[0])
    inv_order = QQ1 / QQ(group.order)
    out = {}
    for sigma in group.irreps():
        acc = linalg.zeros(dim, dim)
        for w in range(group.order):
            chi = sigma.character(group.inv(w))
            if linalg.is_zero_scalar(chi):
                continue
            mw = rep_matrices[w]
            for r in range(dim):
                accr = acc[r]
                mwr = mw[r]
                for c in range(dim):
                    x = mwr[c]
                    if not linalg.is_zero_scalar(x):
                        accr[c] = accr[c] + chi * x
        scale = QQ(sigma.dim) * inv_order
        out[sigma.label] = [[x * scale for x in row] for row in acc]
    return out


def reflection_eigenvalue_sum(group: ReflectionGroup, sigma: Irrep):
    """Per reflection class: the scalar by which the class sum acts on sigma.

    For Coxeter groups these are rational (for S_n the single-class total is
    the diagram content ct(tau)); for cyclic groups the exact value may be a
    cyclotomic.  Returned as a list indexed by class.
    """
    out = []
    for cls in group.reflection_classes:
        total = None
        for s in cls:
            chi = sigma.character(s)
            total = chi if total is None else total + chi
        scalar = total / QQ(sigma.dim)
        if isinstance(scalar, Cyclotomic) and scalar.is_rational():
            scalar = scalar.as_rational()
        out.append(scalar)
    return out


def total_reflection_sum(group: ReflectionGroup, sigma: Irrep):
    """Eigenvalue of the full reflection sum on sigma (D_tau)."""
    total = QQ0
    for x in reflection_eigenvalue_sum(group, sigma):
        total = total + x
    return total


# ---------------------------------------------------------------------------
# parameters


class CParameter:
    """A W-invariant reflection parameter: one value per conjugacy class.

    Values may be rationals, cyclotomics (cyclic case) or ParamPoly
    indeterminates.  ``is_self_adjoint`` checks c(s^-1) = conj(c(s)).
    """

    def __init__(self, group: ReflectionGroup, values):
        values = list(values)
        if len(values) != len(group.reflection_classes):
            raise ValueError("need one parameter per reflection class")
        self.group = group
        self.values = values

    @staticmethod
    def constant(group, value) -> "CParameter":
        return CParameter(group, [value] * len(group.reflection_classes))

    @staticmethod
    def symbolic(group) -> "CParameter":
        from .scalars import ParamPoly

        k = len(group.reflection_classes)
        if k > 2:
            raise ValueError("symbolic parameters support at most 2 classes")
        return CParameter(group,
                          [ParamPoly.parameter(i, k) for i in range(k)])

    def value_for_class(self, ci: int):
        return self.values[ci]

    def is_symbolic(self) -> bool:
        from .scalars import ParamPoly

        return any(isinstance(v, ParamPoly) for v in self.values)

    def is_self_adjoint(self) -> bool:
        if self.is_symbolic():
            return True  # symbolic parameters stand for real values
        cls_of = {}
        for r in self.group.reflections:
            cls_of[r.element_index] = r.class_index
        for r in self.group.reflections:
            ci = r.class_index
            cj = cls_of[self.group.inv(r.element_index)]
            vi, vj = self.values[ci], self.values[cj]
            want = vi.conj() if isinstance(vi, Cyclotomic) else vi
            if not linalg.is_zero_scalar(want - vj):
                return False
        return True

    def __repr__(self):
        return f"CParameter({self.group.name}, {self.values!r})"


# ---------------------------------------------------------------------------
# spec strings


@lru_cache(maxsize=None)
def parse_group_spec(spec: str) -> ReflectionGroup:
    """Build a group from a CLI spec: Sn:4, Cyc:5, DihOdd:2, DihEven:3.

    Cached: groups are immutable once built, so sharing is safe.
    """
    try:
        head, _, arg = spec.partition(":")
        value = int(arg)
    except ValueError:
        raise UnknownGroupSpec(f"malformed group spec {spec!r}") from None
    head = head.strip()
    try:
        if head == "Sn":
            return build_symmetric(value)
        if head == "Cyc":
            return build_cyclic(value)
        if head == "DihOdd":
            return build_dihedral("odd", value)
        if head == "DihEven":
            return build_dihedral("even", value)
    except OutOfRange:
        raise
    raise UnknownGroupSpec(f"unknown group family in {spec!r}")
