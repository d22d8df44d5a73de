"""Exact scalar arithmetic.

Three layers, each closed under the ring operations:

* rationals -- ``gmpy2.mpq`` when available (much faster), else
  ``fractions.Fraction``;
* :class:`Cyclotomic` -- elements of Q(zeta_N) in the power basis reduced
  modulo the N-th cyclotomic polynomial, with exact complex conjugation;
* :class:`ParamPoly` -- polynomials in one or two real parameters with
  rational or cyclotomic coefficients.

Sign determination for conjugation-fixed cyclotomics is certified: exact
symbolic zero test first, then interval arithmetic at doubling precision
until the enclosure excludes zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import ArityMismatch, NotReal, PrecisionCeiling

from fractions import Fraction as _Fraction

try:
    from gmpy2 import mpq as _mpq

    def QQ(num, den=1):
        return _mpq(num, den)

    _RAT_TYPES = (int, type(_mpq(0)), _Fraction)
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = _Fraction

    def QQ(num, den=1):
        return _mpq(num, den)

    _RAT_TYPES = (int, _Fraction)

QQ0 = QQ(0)
QQ1 = QQ(1)


def is_rational_scalar(x) -> bool:
    return isinstance(x, _RAT_TYPES)


def parse_rational(text: str):
    """Parse "p/q" or "p" into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return QQ(int(num), int(den))
    return QQ(int(text))


def rational_str(q) -> str:
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic polynomials and power-basis reduction tables


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficient tuple (low to high) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) / prod_{d|n, d<n} Phi_d via exact polynomial division.
    """
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            phi_d = cyclotomic_polynomial(d)
            num = _polydiv_exact(num, list(phi_d))
    return tuple(num)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials (remainder must vanish)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dlead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q, r = divmod(c, dlead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        out[k] = q
        if q:
            for i, dc in enumerate(den):
                num[k + i] -= q * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_table(order: int):
    """(degree, table) where table[e] for degree <= e < order expresses
    zeta^e in the power basis 1, zeta, ..., zeta^(degree-1)."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    # phi is monic: zeta^deg = -(phi[0] + phi[1] z + ... + phi[deg-1] z^(deg-1))
    base = [QQ(-c) for c in phi[:deg]]
    table = {deg: list(base)}
    prev = base
    for e in range(deg + 1, order):
        cur = [QQ0] * deg
        # multiply prev by zeta, reduce the overflow through the base row
        top = prev[deg - 1]
        for i in range(deg - 1):
            cur[i + 1] = prev[i]
        if top:
            for i in range(deg):
                cur[i] += top * base[i]
        table[e] = cur
        prev = cur
    return deg, table


class Cyclotomic:
    """Element of Q(zeta_order), reduced to the canonical power basis.

    ``coeffs`` maps exponent e (0 <= e < degree of Phi_order) to a nonzero
    rational.  Conjugation sends zeta to zeta^-1; an element fixed by it is
    real.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs, *, _reduced=False):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        if _reduced:
            self.coeffs = coeffs
            return
        deg, table = _reduction_table(order)
        out = {}
        for e, q in coeffs.items() if isinstance(coeffs, dict) else coeffs:
            if not q:
                continue
            q = QQ(q)
            e %= order
            if e < deg:
                out[e] = out.get(e, QQ0) + q
            else:
                row = table[e]
                for i in range(deg):
                    if row[i]:
                        out[i] = out.get(i, QQ0) + q * row[i]
        self.coeffs = {e: q for e, q in out.items() if q}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(q, order: int = 1) -> "Cyclotomic":
        q = QQ(q)
        return Cyclotomic(order, {0: q} if q else {}, _reduced=True)

    @staticmethod
    def zeta(order: int, e: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {e % order: QQ1})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def as_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs.get(0, QQ0)

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [((self.order - e) % self.order, q)
                                       for e, q in self.coeffs.items()])

    def is_real(self) -> bool:
        return self.conj() == self

    def promoted(self, order: int) -> "Cyclotomic":
        """Re-express in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("target order must be a multiple")
        k = order // self.order
        return Cyclotomic(order, [(e * k, q) for e, q in self.coeffs.items()])

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other):
        if is_rational_scalar(other):
            other = Cyclotomic.rational(other, self.order)
        elif not isinstance(other, Cyclotomic):
            return None, None
        if self.order == other.order:
            return self, other
        n = self.order * other.order // gcd(self.order, other.order)
        return self.promoted(n), other.promoted(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        out = dict(a.coeffs)
        for e, q in b.coeffs.items():
            s = out.get(e, QQ0) + q
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Cyclotomic(a.order, out, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {e: -q for e, q in self.coeffs.items()},
                          _reduced=True)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational_scalar(other):
            if not other:
                return Cyclotomic(self.order, {}, _reduced=True)
            return Cyclotomic(self.order,
                              {e: q * other for e, q in self.coeffs.items()},
                              _reduced=True)
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        out = {}
        for e1, q1 in a.coeffs.items():
            for e2, q2 in b.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, QQ0) + q1 * q2
        return Cyclotomic(a.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        if self.is_rational():
            return Cyclotomic.rational(QQ1 / self.coeffs[0], self.order)
        deg, _ = _reduction_table(self.order)
        phi = [QQ(c) for c in cyclotomic_polynomial(self.order)]
        a = [self.coeffs.get(e, QQ0) for e in range(deg)]
        inv = _poly_modinv(a, phi)
        return Cyclotomic(self.order, dict(enumerate(inv)))

    def __truediv__(self, other):
        if is_rational_scalar(other):
            return self * (QQ1 / QQ(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.rational(QQ1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if is_rational_scalar(other):
            return self.is_rational() and self.coeffs.get(0, QQ0) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if self.is_rational():
            return f"Cyc({self.coeffs.get(0, QQ0)})"
        terms = " + ".join(f"{q}*z{self.order}^{e}"
                           for e, q in sorted(self.coeffs.items()))
        return f"Cyc({terms})"

    def to_json(self):
        return {"order": self.order,
                "coeffs": [[e, rational_str(q)]
                           for e, q in sorted(self.coeffs.items())]}

    @staticmethod
    def from_json(obj) -> "Cyclotomic":
        return Cyclotomic(obj["order"],
                          [(e, parse_rational(s)) for e, s in obj["coeffs"]])


def _poly_modinv(a, m):
    """Inverse of polynomial a modulo m over Q (coefficient lists, m monic)."""
    def norm(p):
        while p and not p[-1]:
            p.pop()
        return p

    def polymod(p, q):
        p = list(p)
        while len(p) >= len(q):
            f = p[-1] / q[-1]
            for i in range(len(q)):
                p[len(p) - len(q) + i] -= f * q[i]
            norm(p)
            if not p:
                break
        return p

    def polymul(p, q):
        out = [QQ0] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi:
                for j, qj in enumerate(q):
                    out[i + j] += pi * qj
        return norm(out)

    def polysub(p, q):
        out = [QQ0] * max(len(p), len(q))
        for i, pi in enumerate(p):
            out[i] += pi
        for i, qi in enumerate(q):
            out[i] -= qi
        return norm(out)

    # extended Euclid on (m, a)
    r0, r1 = list(m), norm(list(a))
    t0, t1 = [], [QQ1]
    while r1:
        # divide r0 by r1
        q = []
        r = list(r0)
        while len(r) >= len(r1) and r:
            shift = len(r) - len(r1)
            f = r[-1] / r1[-1]
            term = [QQ0] * shift + [f]
            q = polysub(q, [-c for c in term])
            r = polysub(r, polymul(term, r1))
        r0, r1 = r1, r
        t0, t1 = t1, polysub(t0, polymul(q, t1))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible (shares factor with modulus)")
    lead = r0[0]
    return [c / lead for c in polymod(t0, m)]


# ---------------------------------------------------------------------------
# sign certification


SIGN_NEGATIVE = "negative"
SIGN_ZERO = "zero"
SIGN_POSITIVE = "positive"

_MIN_BITS = 64
_MAX_BITS = 4096


@dataclass(frozen=True)
class SignCertificate:
    value: object
    sign: str
    precision_bits: int


def _rational_sign(q) -> str:
    if q > 0:
        return SIGN_POSITIVE
    if q < 0:
        return SIGN_NEGATIVE
    return SIGN_ZERO


def certify_sign(x, max_bits: int = _MAX_BITS) -> SignCertificate:
    """Certified sign of a real scalar.

    Exact zero is decided symbolically.  Otherwise the real value
    sum_e q_e cos(2 pi e / N) is enclosed in an interval at doubling
    precision until the interval excludes zero; exceeding ``max_bits``
    raises :class:`PrecisionCeiling` rather than guessing.
    """
    if is_rational_scalar(x):
        return SignCertificate(x, _rational_sign(x), 0)
    if not isinstance(x, Cyclotomic):
        raise TypeError(f"cannot certify sign of {type(x).__name__}")
    if not x.is_real():
        raise NotReal(f"{x!r} is not conjugation-fixed")
    if x.is_zero():
        return SignCertificate(x, SIGN_ZERO, 0)
    if x.is_rational():
        return SignCertificate(x, _rational_sign(x.coeffs[0]), 0)

    from mpmath import iv

    n = x.order
    bits = _MIN_BITS
    saved = iv.prec
    try:
        while bits <= max_bits:
            iv.prec = bits
            total = iv.mpf(0)
            two_pi = 2 * iv.pi
            for e, q in x.coeffs.items():
                qi = iv.mpf(int(q.numerator)) / iv.mpf(int(q.denominator))
                total += qi * iv.cos(two_pi * e / n)
            if total.a > 0:
                return SignCertificate(x, SIGN_POSITIVE, bits)
            if total.b < 0:
                return SignCertificate(x, SIGN_NEGATIVE, bits)
            bits *= 2
    finally:
        iv.prec = saved
    raise PrecisionCeiling(
        f"sign of {x!r} not separated from zero at {max_bits} bits")


def normalize(x: Cyclotomic) -> Cyclotomic:
    """Canonical reduced representative (idempotent)."""
    if isinstance(x, Cyclotomic):
        return Cyclotomic(x.order, list(x.coeffs.items()))
    return x


# ---------------------------------------------------------------------------
# parameter polynomials


class ParamPoly:
    """Polynomial in 1 or 2 real parameters with exact coefficients.

    ``terms`` maps exponent tuples to nonzero rational or cyclotomic
    coefficients.  Evaluation at a rational point is exact substitution.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        if arity not in (1, 2):
            raise ValueError("arity must be 1 or 2")
        self.arity = arity
        out = {}
        if terms:
            for exps, coeff in terms.items() if isinstance(terms, dict) else terms:
                exps = tuple(exps)
                if len(exps) != arity:
                    raise ArityMismatch("term exponent arity mismatch")
                if _coeff_nonzero(coeff):
                    c = out.get(exps)
                    coeff = coeff if c is None else c + coeff
                    if _coeff_nonzero(coeff):
                        out[exps] = coeff
                    else:
                        out.pop(exps, None)
        self.terms = out

    @staticmethod
    def constant(value, arity: int = 1) -> "ParamPoly":
        return ParamPoly(arity, {(0,) * arity: value})

    @staticmethod
    def parameter(index: int = 0, arity: int = 1) -> "ParamPoly":
        exps = tuple(1 if i == index else 0 for i in range(arity))
        return ParamPoly(arity, {exps: QQ1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def conj(self) -> "ParamPoly":
        return ParamPoly(self.arity,
                         {e: _coeff_conj(c) for e, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.arity != self.arity:
                raise ArityMismatch("mixed polynomial arities")
            return other
        if is_rational_scalar(other) or isinstance(other, Cyclotomic):
            return ParamPoly.constant(other, self.arity)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if _coeff_nonzero(s):
                out[e] = s
            else:
                out.pop(e, None)
        return ParamPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational_scalar(other) or isinstance(other, Cyclotomic):
            if not _coeff_nonzero(other):
                return ParamPoly(self.arity)
            return ParamPoly(self.arity,
                             {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityMismatch("mixed polynomial arities")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                p = c1 * c2
                s = p if s is None else s + p
                out[e] = s
        return ParamPoly(self.arity, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_rational_scalar(other):
            return self * (QQ1 / QQ(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        if isinstance(other, ParamPoly) and other.degree() == 0:
            c = other.terms.get((0,) * other.arity)
            if c is None:
                raise ZeroDivisionError("division by zero polynomial")
            return self * _coeff_inverse(c)
        return NotImplemented

    def __pow__(self, k: int):
        out = ParamPoly.constant(QQ1, self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        names = ("c",) if self.arity == 1 else ("c1", "c2")
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{nm}^{k}" if k > 1 else nm
                            for nm, k in zip(names, e) if k)
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(parts) + ")"

    def eval(self, point):
        return poly_eval(self, point)


def _coeff_nonzero(c) -> bool:
    if isinstance(c, Cyclotomic):
        return not c.is_zero()
    return bool(c)


def _coeff_conj(c):
    return c.conj() if isinstance(c, Cyclotomic) else c


def _coeff_inverse(c):
    if isinstance(c, Cyclotomic):
        return c.inverse()
    return QQ1 / QQ(c)


def poly_eval(p: ParamPoly, point):
    """Exact substitution of a rational point; ring homomorphism."""
    point = tuple(point)
    if len(point) != p.arity:
        raise ArityMismatch(f"expected {p.arity} coordinates, got {len(point)}")
    total = None
    for exps, coeff in p.terms.items():
        v = coeff
        for x, e in zip(point, exps):
            if e:
                v = v * x ** e
        total = v if total is None else total + v
    if total is None:
        return QQ0
    return total


def poly_divmod(p: ParamPoly, q: ParamPoly):
    """Quotient and remainder for univariate parameter polynomials."""
    if p.arity != 1 or q.arity != 1:
        raise ArityMismatch("poly_divmod is univariate")
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    rem = {e[0]: c for e, c in p.terms.items()}
    qd = q.degree()
    qlead = q.terms[(qd,)]
    quot = {}
    while rem:
        d = max(rem)
        if d < qd:
            break
        f = rem[d] * _coeff_inverse(qlead) if isinstance(qlead, Cyclotomic) \
            else rem[d] / qlead
        quot[d - qd] = f
        for (e,), c in q.terms.items():
            k = d - qd + e
            s = rem.get(k, QQ0) - f * c
            if _coeff_nonzero(s):
                rem[k] = s
            else:
                rem.pop(k, None)
    return (ParamPoly(1, {(e,): c for e, c in quot.items()}),
            ParamPoly(1, {(e,): c for e, c in rem.items()}))
