"""Isotypic reduction of graded contravariant Grams.

Positive semidefiniteness of the W-invariant form on tau (x) S^m h* is
equivalent to positive semidefiniteness of one small Hermitian block per
irreducible W-type sigma, living on the multiplicity space of sigma.  This
module builds those blocks without ever materializing the full Gram:

* monomials fall into W-orbits; only Gram rows at orbit representatives
  are computed (rows at other monomials follow from W-invariance);
* the multiplicity space of sigma is spanned by matrix-element projector
  probes P^{1k} e_(rep, a), which are parameter-independent and computed
  once per module;
* the block entries are beta(u_i, u_j) = (d_{k_i}/d_1) * row(seed_i)
  . conj(P^{k_i k_j} e_{seed_j}), using that our irrep models are unitary
  for their stored diagonal invariant form.

Everything is validated against the dense route in the test suite.
"""

from __future__ import annotations

from .linalg import is_zero_scalar, sconj, sinv
from .scalars import QQ, QQ0, QQ1, Cyclotomic
from .verma import DunklEngine, ModuleBasis


def _is_one(x) -> bool:
    return is_zero_scalar(x - 1)


class Orbit:
    """One W-orbit of degree-m monomials.

    ``reach[member]`` holds (w, scal) with w . x^rep = scal * x^member.
    """

    __slots__ = ("rep", "members", "reach")

    def __init__(self, rep, members, reach):
        self.rep = rep
        self.members = members
        self.reach = reach


class DegreeReduction:
    """Parameter-independent reduction data for one graded piece.

    Two modes.  "plain" reduces all of tau (x) S^m h*.  "pfree" (symmetric
    groups only) reduces just the complement of p1 * V_{m-1}, where p1 =
    x_1 + ... + x_n is the invariant variable: the module is an orthogonal
    tensor product C[p1] (x) (p1-free part) because sum_i y_i degrades to
    sum_i d/dx_i (the reflection terms cancel on the invariant direction),
    so positivity degree by degree only ever needs the new p1-free block.
    """

    def __init__(self, iso, m, mode="plain"):
        self.iso = iso
        self.m = m
        self.mode = mode
        basis = iso.basis
        group = basis.group
        self.dim = basis.dim(m)
        monos = basis.monomials(m)
        idx = basis._index_map(m)
        # --- action tables: per element, target index and scalar ----------
        nm = len(monos)
        self._act_idx = []
        self._act_scal = []
        for w in range(group.order):
            perm, scal = group.hstar_monomial(w)
            trivial_scal = all(_is_one(s) for s in scal)
            tgt = [0] * nm
            sc = None if trivial_scal else [QQ1] * nm
            for mi, mu in enumerate(monos):
                out = [0] * basis.n
                factor = QQ1
                for j, e in enumerate(mu):
                    if e:
                        out[perm[j]] = e
                        if not trivial_scal:
                            s = scal[j]
                            if not _is_one(s):
                                factor = factor * s ** e
                tgt[mi] = idx[tuple(out)]
                if sc is not None:
                    sc[mi] = factor
            self._act_idx.append(tgt)
            self._act_scal.append(sc)
        # --- orbit decomposition -------------------------------------------
        self.orbits = []
        self.orbit_of = {}
        assigned = set()
        for mi in range(nm):
            if mi in assigned:
                continue
            reach = {mi: (0, QQ1)}
            for w in range(1, group.order):
                ni = self._act_idx[w][mi]
                if ni not in reach:
                    sc = self._act_scal[w]
                    reach[ni] = (w, QQ1 if sc is None else sc[mi])
            members = sorted(reach)
            orb = Orbit(mi, members, reach)
            pos = len(self.orbits)
            self.orbits.append(orb)
            for ni in members:
                assigned.add(ni)
                self.orbit_of[ni] = pos
        # --- per-block characters --------------------------------------------
        # chi_block(w) = sum over members fixed by w of the monomial scalar
        self._block_chars = []
        for orb in self.orbits:
            chars = []
            for w in range(group.order):
                tgt = self._act_idx[w]
                sc = self._act_scal[w]
                tot = None
                for ni in orb.members:
                    if tgt[ni] == ni:
                        s = QQ1 if sc is None else sc[ni]
                        tot = s if tot is None else tot + s
                chars.append(QQ0 if tot is None else tot)
            self._block_chars.append(chars)
        # --- probes per irrep -------------------------------------------------
        self.sigma_data = {}
        total = 0
        want = self.dim if mode == "plain" else \
            self.dim - (basis.dim(m - 1) if m else 0)
        for sigma in group.irreps():
            data = self._build_sigma(sigma)
            if data["rank"]:
                self.sigma_data[sigma.label] = data
                total += sigma.dim * data["rank"]
        if total != want:
            raise AssertionError(
                f"isotypic reduction lost dimensions: {total} != {want}")

    def act(self, w: int, mi: int):
        """(scalar, target monomial index) of element w on monomial mi."""
        sc = self._act_scal[w]
        return (QQ1 if sc is None else sc[mi]), self._act_idx[w][mi]

    def _multiplicity(self, sigma, block_index):
        group = self.iso.basis.group
        tau = self.iso.basis.tau
        chars = self._block_chars[block_index]
        tot = None
        for w in range(group.order):
            cb = chars[w]
            if is_zero_scalar(cb):
                continue
            v = sigma.character(group.inv(w)) * (tau.character(w) * cb)
            tot = v if tot is None else tot + v
        if tot is None:
            return 0
        if isinstance(tot, Cyclotomic):
            tot = tot.as_rational()
        mult = tot / QQ(group.order)
        if mult.denominator != 1:
            raise AssertionError("non-integer isotypic multiplicity")
        return int(mult)

    def full_multiplicity(self, sigma) -> int:
        return sum(self._multiplicity(sigma, bi)
                   for bi in range(len(self.orbits)))

    # -- p1-free projection (symmetric groups) ------------------------------

    def _apply_d(self, vec, k):
        """sum_i d/dx_i on a sparse degree-k vector (tensor slot untouched)."""
        basis = self.iso.basis
        dt = basis.dt
        monos = basis.monomials(k)
        idx = basis._index_map(k - 1)
        out = {}
        for key, v in vec.items():
            mi, b = key // dt, key % dt
            mu = monos[mi]
            for i, e in enumerate(mu):
                if e:
                    nu = list(mu)
                    nu[i] -= 1
                    kk = idx[tuple(nu)] * dt + b
                    nv = out.get(kk, QQ0) + QQ(e) * v
                    out[kk] = nv
        return {r: v for r, v in out.items() if v}

    def _apply_p1(self, vec, k):
        """Multiplication by p1 = x_1 + ... + x_n on a degree-k vector."""
        basis = self.iso.basis
        dt = basis.dt
        monos = basis.monomials(k)
        idx = basis._index_map(k + 1)
        out = {}
        for key, v in vec.items():
            mi, b = key // dt, key % dt
            mu = monos[mi]
            for i in range(basis.n):
                nu = list(mu)
                nu[i] += 1
                kk = idx[tuple(nu)] * dt + b
                nv = out.get(kk, QQ0) + v
                out[kk] = nv
        return {r: v for r, v in out.items() if v}

    def p1_free_project(self, vec):
        """Projection onto ker(sum d/dx_i) along p1 V_{m-1}, degree m.

        Pi = sum_k (-1)^k / (n^k k!) p1^k D^k, the standard projector for a
        pair with [D, p1] = n; finite because D^k kills degree < k.
        """
        m = self.m
        if m == 0 or not vec:
            return dict(vec)
        n = QQ(self.iso.basis.n)
        out = dict(vec)
        term = vec
        coef = QQ1
        for k in range(1, m + 1):
            term = self._apply_d(term, m - k + 1)
            if not term:
                break
            coef = coef * QQ(-1) / (n * k)
            lifted = term
            for j in range(k):
                lifted = self._apply_p1(lifted, m - k + j)
            for r, v in lifted.items():
                nv = out.get(r, QQ0) + coef * v
                if nv:
                    out[r] = nv
                else:
                    out.pop(r, None)
        return out

    def _probe(self, sigma, rep_mi, a, k):
        """P^{k1} applied to the seed (rep monomial, tau-index a).

        On each copy of sigma the operator P^{ab} acts as the matrix unit
        e_{ba}, so P^{k1} lands in the e_1-slot with the k-th coordinate
        functional as coefficient; letting k run extracts a spanning set
        of the multiplicity space.
        """
        return self._probe_general(sigma, rep_mi, a, k, 0)

    def _accept(self, echelon, u):
        """Echelon rank test; append the reduced vector when independent."""
        red = dict(u)
        for pkey, pvec in echelon:
            cv = red.get(pkey)
            if cv is not None and cv:
                for r, v in pvec.items():
                    nv = red.get(r, QQ0) - cv * v
                    if nv:
                        red[r] = nv
                    else:
                        red.pop(r, None)
        red = {r: v for r, v in red.items() if v}
        if not red:
            return False
        pkey = min(red)
        pin = sinv(red[pkey])
        echelon.append((pkey, {r: v * pin for r, v in red.items()}))
        return True

    def _build_sigma(self, sigma):
        basis = self.iso.basis
        dt = basis.dt
        probes = []     # the u_i vectors (sparse dicts)
        seeds = []      # (rep_mono_index, a, k) per accepted probe
        if self.mode == "plain":
            for bi, orb in enumerate(self.orbits):
                target = self._multiplicity(sigma, bi)
                if target == 0:
                    continue
                echelon = []  # block-local: blocks have disjoint support
                accepted = 0
                for a in range(dt):
                    if accepted >= target:
                        break
                    for k in range(sigma.dim):
                        if accepted >= target:
                            break
                        u = self._probe(sigma, orb.rep, a, k)
                        if u and self._accept(echelon, u):
                            probes.append(u)
                            seeds.append((orb.rep, a, k))
                            accepted += 1
                if accepted != target:
                    raise AssertionError(
                        f"probing found {accepted} < {target} copies of "
                        f"{sigma.label} in block {bi}")
        else:
            prev = self.iso.degree(self.m - 1) if self.m else None
            target = self.full_multiplicity(sigma) - \
                (prev.full_multiplicity(sigma) if prev else 0)
            if target:
                echelon = []
                accepted = 0
                for orb in self.orbits:
                    if accepted >= target:
                        break
                    for a in range(dt):
                        if accepted >= target:
                            break
                        for k in range(sigma.dim):
                            if accepted >= target:
                                break
                            u = self._probe(sigma, orb.rep, a, k)
                            if not u:
                                continue
                            u = self.p1_free_project(u)
                            if u and self._accept(echelon, u):
                                probes.append(u)
                                seeds.append((orb.rep, a, k))
                                accepted += 1
                if accepted != target:
                    raise AssertionError(
                        f"p1-free probing found {accepted} < {target} copies "
                        f"of {sigma.label} at degree {self.m}")
        # pairing helper vectors for every k in use
        ks = sorted({k for (_, _, k) in seeds})
        return {"rank": len(probes), "probes": probes, "seeds": seeds,
                "pair_ks": ks, "sigma": sigma}

    def pair_vectors(self, label):
        """w_j^(k) = P^{k_j k} e_{seed_j}, lazily, for every k in use.

        These satisfy beta(u_i, u_j) = (d_1/d_{k_i}) row(seed_i)
        . conj(w_j^(k_i)), since P^{k1} is beta-adjoint to (d_1/d_k) P^{1k}
        and P^{1a} P^{b1} = P^{ba} on our diagonal-form-unitary models.
        """
        data = self.sigma_data[label]
        if "pairvecs" in data:
            return data["pairvecs"]
        sigma = data["sigma"]
        out = []
        for (rep_mi, a, kj) in data["seeds"]:
            per_k = {}
            for k in data["pair_ks"]:
                vec = self._probe_general(sigma, rep_mi, a, kj, k)
                if self.mode == "pfree":
                    # Pi is beta-self-adjoint (the p1-split is orthogonal)
                    # and commutes with the projectors, so it may simply be
                    # applied to the pair vector.
                    vec = self.p1_free_project(vec)
                # stored pre-conjugated as (index, conj value) pairs: the
                # assembly only ever needs conj(w_j)
                per_k[k] = [(r, sconj(v)) for r, v in sorted(vec.items())]
            out.append(per_k)
        data["pairvecs"] = out
        return out

    def _probe_general(self, sigma, rep_mi, a, row_k, col_k):
        """P^{row_k col_k} applied to the seed basis vector."""
        basis = self.iso.basis
        group = basis.group
        dt = basis.dt
        out = {}
        scale = QQ(sigma.dim, group.order)
        for w in range(group.order):
            coef = sigma.matrix(group.inv(w))[row_k][col_k]
            if is_zero_scalar(coef):
                continue
            scal, ni = self.act(w, rep_mi)
            rho = basis.tau.matrix(w)
            f = coef * scal
            for b in range(dt):
                rv = rho[b][a]
                if is_zero_scalar(rv):
                    continue
                key = ni * dt + b
                out[key] = out.get(key, QQ0) + f * rv
        return {r: v * scale for r, v in out.items() if not is_zero_scalar(v)}


class IsotypicEngine:
    """Per-(group, tau) cache of degree reductions.

    Symmetric groups use the p1-free mode: only the new block per degree is
    certified, the rest is covered by lower degrees through the orthogonal
    C[p1] tensor factor.
    """

    def __init__(self, group, tau, mode=None):
        self.basis = ModuleBasis(group, tau)
        self.mode = mode or ("pfree" if group.kind == "symmetric" else "plain")
        self._degrees = {}
        # make sure all irrep matrices exist (probing touches every element)
        for sigma in group.irreps():
            _materialize(group, sigma)
        _materialize(group, tau)

    def degree(self, m: int) -> DegreeReduction:
        got = self._degrees.get(m)
        if got is None:
            if self.mode == "pfree" and m:
                self.degree(m - 1)  # multiplicity differences need m-1
            got = DegreeReduction(self, m, self.mode)
            self._degrees[m] = got
        return got


def _materialize(group, sigma):
    """Fill the irrep matrix cache via one generator product per element."""
    if getattr(sigma, "_materialized", False):
        return
    gens = _generators(group)
    known = {0}
    sigma.matrix(0)
    frontier = [0]
    while frontier:
        new = []
        for i in frontier:
            mi = sigma.matrix(i)
            for g in gens:
                j = group.mult(i, g)
                if j not in known:
                    known.add(j)
                    from .linalg import mat_mul

                    sigma._cache[j] = mat_mul(mi, sigma.matrix(g))
                    new.append(j)
        frontier = new
    sigma._materialized = True


def _generators(group):
    if group.kind == "symmetric":
        n = group.dim_h
        gens = []
        for k in range(n - 1):
            line = list(range(n))
            line[k], line[k + 1] = line[k + 1], line[k]
            gens.append(group.element_index[tuple(line)])
        return gens
    if group.kind == "cyclic":
        return [1]
    # dihedral: rotation and base reflection
    return [1, group.npoly]


class ReducedGramEngine:
    """Per-(module, parameter-point) reduced Gram blocks.

    Gram rows are produced only at orbit-representative monomials, degree
    by degree; rows at other monomials are reconstructed through the group
    action when the recursion peels into them.
    """

    def __init__(self, iso: IsotypicEngine, c):
        self.iso = iso
        self.dunkl = DunklEngine(iso.basis, c)
        self._rep_rows = {}
        self._twist_memo = {}
        self._yconj = {}

    # -- Gram rows -----------------------------------------------------------

    def _conj_ycols(self, m: int, j: int):
        got = self._yconj.get((m, j))
        if got is None:
            got = [sorted((r, sconj(v)) for r, v in col.items())
                   for col in self.dunkl.y_columns(m)[j]]
            self._yconj[(m, j)] = got
        return got

    def rep_row(self, m: int, orbit_index: int):
        """Gram rows (one per tau-index) at one orbit representative."""
        key = (m, orbit_index)
        got = self._rep_rows.get(key)
        if got is not None:
            return got
        basis = self.iso.basis
        dt = basis.dt
        if m == 0:
            form = basis.tau.invariant_form
            got = [[form[a] if a == b else QQ0 for b in range(dt)]
                   for a in range(dt)]
            self._rep_rows[key] = got
            return got
        red = self.iso.degree(m)
        orb = red.orbits[orbit_index]
        prev_idx = basis._index_map(m - 1)
        mu = basis.monomials(m)[orb.rep]
        j = basis.peel(mu)
        mup = list(mu)
        mup[j] -= 1
        mup_idx = prev_idx[tuple(mup)]
        yj = self._conj_ycols(m, j)
        dim = red.dim
        out = []
        for a in range(dt):
            prow = self.row(m - 1, mup_idx, a)
            row = []
            append = row.append
            for col in yj:
                s = None
                for r, cv in col:
                    pv = prow[r]
                    if pv:
                        t = pv * cv
                        s = t if s is None else s + t
                append(QQ0 if s is None else s)
            out.append(row)
        self._rep_rows[key] = out
        return out

    def row(self, m: int, mono_idx: int, a: int):
        """Full Gram row at any (monomial, tau-index), via the W twist."""
        red = self.iso.degree(m)
        oi = red.orbit_of[mono_idx]
        orb = red.orbits[oi]
        rep_rows = self.rep_row(m, oi)
        if mono_idx == orb.rep:
            return rep_rows[a]
        key = (m, mono_idx, a)
        got = self._twist_memo.get(key)
        if got is not None:
            return got
        basis = self.iso.basis
        group = basis.group
        dt = basis.dt
        nm = len(basis.monomials(m))
        w, scal = orb.reach[mono_idx]
        winv = group.inv(w)
        rho = basis.tau.matrix(winv)
        inv_scal = sinv(scal)
        # combined := sum_a' rho[a'][a] * rep_row(a')
        combined = None
        for ap in range(dt):
            cv = rho[ap][a]
            if is_zero_scalar(cv):
                continue
            part = [cv * x for x in rep_rows[ap]]
            combined = part if combined is None else \
                [p + q for p, q in zip(combined, part)]
        dim = red.dim
        out = [QQ0] * dim
        one_scal = _is_one(inv_scal)
        for ki in range(nm):
            sb, kp_idx = red.act(winv, ki)
            f = inv_scal * sconj(sb) if not (one_scal and _is_one(sb)) else None
            base = kp_idx * dt
            for cc in range(dt):
                s = None
                for b in range(dt):
                    rv = rho[b][cc]
                    if is_zero_scalar(rv):
                        continue
                    t = sconj(rv) * combined[base + b]
                    s = t if s is None else s + t
                if s is not None and not is_zero_scalar(s):
                    out[ki * dt + cc] = s if f is None else f * s
        self._twist_memo[key] = out
        return out

    # -- reduced blocks -------------------------------------------------------

    def reduced_blocks(self, m: int):
        """Hermitian multiplicity-space block per W-type, for degree m.

        Only the lower triangle is assembled; the upper half is mirrored
        by conjugation (Hermiticity of the underlying form is covered by
        the dense-route comparison tests).
        """
        red = self.iso.degree(m)
        out = {}
        for label, data in red.sigma_data.items():
            seeds = data["seeds"]
            r = data["rank"]
            pairvecs = red.pair_vectors(label)
            form = data["sigma"].invariant_form
            block = [[QQ0] * r for _ in range(r)]
            for i in range(r):
                rep_mi, a_i, k_i = seeds[i]
                rowvec = self.rep_row(m, red.orbit_of[rep_mi])[a_i]
                factor = form[0] / form[k_i]
                one = factor == 1
                brow = block[i]
                for jj in range(i + 1):
                    s = None
                    for colk, cv in pairvecs[jj][k_i]:
                        rv = rowvec[colk]
                        if rv:
                            t = rv * cv
                            s = t if s is None else s + t
                    if s is not None and s:
                        v = s if one else s * factor
                        brow[jj] = v
                        if jj != i:
                            block[jj][i] = sconj(v)
            out[label] = block
        return out

    def lift(self, label, m: int, coeffs):
        """Lift multiplicity-space coordinates to a module vector."""
        red = self.iso.degree(m)
        data = red.sigma_data[label]
        out = {}
        for x, u in zip(coeffs, data["probes"]):
            if is_zero_scalar(x):
                continue
            for rr, v in u.items():
                nv = out.get(rr, QQ0) + x * v
                out[rr] = nv
        vec = [QQ0] * red.dim
        for rr, v in out.items():
            if not is_zero_scalar(v):
                vec[rr] = v
        return vec


_ISO_CACHE = {}


def get_isotypic(group, tau, mode=None) -> IsotypicEngine:
    key = (id(group), repr(tau.label), mode)
    got = _ISO_CACHE.get(key)
    if got is None:
        got = IsotypicEngine(group, tau, mode)
        _ISO_CACHE[key] = got
    return got
