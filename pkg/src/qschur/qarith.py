"""Exact arithmetic in Z[v, v^-1] and Q(v).

``LaurentPoly`` is a finitely supported exponent -> integer map.
``RationalFunction`` keeps a canonical form ``v^shift * num(v) / den(v)``
where ``num`` and ``den`` are integer polynomials with nonzero constant
terms, coprime over Q, jointly primitive, and ``den`` has a positive
leading coefficient.  Two values are equal iff their fields coincide.

Polynomials are plain tuples of ints, lowest degree first, without
trailing zeros; the empty tuple is the zero polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import IndexOutOfRange, PoleAtPoint, ZeroEvaluationPoint

# ---------------------------------------------------------------------------
# dense integer polynomials

_ONE = (1,)


def _trim(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _shift_up(p, k):
    return (0,) * k + p if k else p


def _content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(p):
    g = _content(p)
    if p[-1] < 0:
        g = -g
    if g == 1:
        return p
    return tuple(c // g for c in p)


def _prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for k, c in enumerate(b):
            r[k + shift] -= lr * c
        r = list(_trim(r))
    return tuple(r)


def _pgcd(a, b):
    """Primitive gcd over Z[v] with positive leading coefficient."""
    a = _primitive(a)
    b = _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return b
        a, b = b, _primitive(r)
    if not b:
        return a
    return _ONE  # b is a nonzero constant


def _pdivmod_exact(a, b):
    """Exact division a / b over Z; raises ArithmeticError on remainder."""
    if len(b) == 1 and b[0] == 1:
        return a
    if not a:
        return ()
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    q = [0] * (len(a) - db) if len(a) > db else []
    while r and len(r) - 1 >= db:
        lr = r[-1]
        if lr % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lr // lb
        shift = len(r) - 1 - db
        q[shift] = c
        for k, bc in enumerate(b):
            r[k + shift] -= c * bc
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Element of Z[v, v^-1]; ``terms`` maps exponent -> nonzero integer."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def bar(self):
        """The involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def low(self):
        return min(self.terms) if self.terms else 0

    def high(self):
        return max(self.terms) if self.terms else 0

    def _dense(self):
        lo = self.low()
        out = [0] * (self.high() - lo + 1)
        for e, c in self.terms.items():
            out[e - lo] = c
        return lo, tuple(out)

    def exact_div(self, other):
        """Quotient in Z[v, v^-1]; raises ArithmeticError if not exact."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        q = _pdivmod_exact(a, b)
        return LaurentPoly({lo_a - lo_b + k: c for k, c in enumerate(q)})

    def to_list(self):
        """Ascending ``[exponent, coefficient]`` pairs."""
        return [[e, self.terms[e]] for e in sorted(self.terms)]

    @classmethod
    def from_list(cls, pairs):
        return cls({int(e): int(c) for e, c in pairs})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return _format_laurent(self.terms)


def _format_monomial(e, var="v"):
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _format_laurent(terms, var="v"):
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        mono = _format_monomial(e, var)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# rational functions


def _finish(shift, num, den):
    """Integer-content and sign normalization; num/den already coprime."""
    g = gcd(_content(num), _content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den = tuple(c // g for c in den)
    return _raw(shift, num, den)


def _normalize(shift, num, den):
    num = _trim(num)
    if not num:
        return ZERO
    k = 0
    while num[k] == 0:
        k += 1
    if k:
        num = num[k:]
        shift += k
    k = 0
    while den[k] == 0:
        k += 1
    if k:
        den = den[k:]
        shift -= k
    if len(den) > 1 and len(num) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod_exact(num, g)
            den = _pdivmod_exact(den, g)
    if den == _ONE:
        return _raw(shift, num, _ONE)
    return _finish(shift, num, den)


def _raw(shift, num, den):
    x = object.__new__(RationalFunction)
    x.shift = shift if num else 0
    x.num = num
    x.den = den
    x._hash = None
    return x


class RationalFunction:
    """Canonical element of Q(v)."""

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, value=0):
        other = _coerce(value)
        self.shift = other.shift
        self.num = other.num
        self.den = other.den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @staticmethod
    def from_parts(shift, num, den=_ONE):
        num = tuple(int(c) for c in num)
        den = _trim(tuple(int(c) for c in den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        return _normalize(int(shift), num, den)

    @staticmethod
    def from_laurent(lp):
        if not lp:
            return ZERO
        lo, dense = lp._dense()
        return _raw(lo, dense, _ONE)

    @staticmethod
    def vpow(k):
        return _raw(k, _ONE, _ONE)

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den == _ONE

    def to_laurent(self):
        if self.den != _ONE:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return LaurentPoly({self.shift + k: c for k, c in enumerate(self.num)})

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = _coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        s = min(self.shift, other.shift)
        n1 = _shift_up(self.num, self.shift - s)
        n2 = _shift_up(other.num, other.shift - s)
        if self.den == other.den:
            num = _padd(n1, n2)
            if self.den == _ONE:
                if not num:
                    return ZERO
                k = 0
                while num[k] == 0:
                    k += 1
                return _raw(s + k, num[k:], _ONE)
            return _normalize(s, num, self.den)
        num = _padd(_pmul(n1, other.den), _pmul(n2, self.den))
        return _normalize(s, num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.shift, _pneg(self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = _coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = _coerce(other)
        if not self.num or not other.num:
            return ZERO
        shift = self.shift + other.shift
        if self.den == _ONE and other.den == _ONE:
            return _raw(shift, _pmul(self.num, other.num), _ONE)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if len(n1) > 1 and len(d2) > 1:
            g = _pgcd(n1, d2)
            if len(g) > 1:
                n1 = _pdivmod_exact(n1, g)
                d2 = _pdivmod_exact(d2, g)
        if len(n2) > 1 and len(d1) > 1:
            g = _pgcd(n2, d1)
            if len(g) > 1:
                n2 = _pdivmod_exact(n2, g)
                d1 = _pdivmod_exact(d1, g)
        return _finish(shift, _pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return _raw(-self.shift, num, den)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = _coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def bar(self):
        """The field automorphism v -> v^-1."""
        if not self.num:
            return ZERO
        # v^s n(1/v)/d(1/v) = v^(s - deg n + deg d) rev(n)/rev(d)
        dn, dd = len(self.num) - 1, len(self.den) - 1
        return _normalize(-self.shift - dn + dd, self.num[::-1], self.den[::-1])

    # -- evaluation / serialization --------------------------------------
    def evaluate(self, v0):
        v0 = Fraction(v0)
        if v0 == 0:
            raise ZeroEvaluationPoint("cannot evaluate at v = 0")
        d = _peval(self.den, v0)
        if d == 0:
            raise PoleAtPoint(f"{self} has a pole at v = {v0}")
        return v0 ** self.shift * _peval(self.num, v0) / d

    def to_dict(self):
        return {"shift": self.shift, "num": list(self.num), "den": list(self.den)}

    @staticmethod
    def from_dict(d):
        return RationalFunction.from_parts(d["shift"], d["num"], d["den"])

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if not self.num:
            return "0"
        num_terms = {self.shift + k: c for k, c in enumerate(self.num) if c}
        if self.den == _ONE:
            return _format_laurent(num_terms)
        den_terms = {k: c for k, c in enumerate(self.den) if c}
        return f"({_format_laurent(num_terms)})/({_format_laurent(den_terms)})"


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return _raw(0, (x,), _ONE) if x else ZERO
    if isinstance(x, Fraction):
        if x == 0:
            return ZERO
        return _finish(0, (x.numerator,), (x.denominator,))
    if isinstance(x, LaurentPoly):
        return RationalFunction.from_laurent(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")


ZERO = _raw(0, (), _ONE)
ONE = _raw(0, _ONE, _ONE)
V = _raw(1, _ONE, _ONE)

RF = RationalFunction


# ---------------------------------------------------------------------------
# quantum numbers


def _d(c, i):
    if not 0 <= i < c.n:
        raise IndexOutOfRange(f"index {i} outside 0..{c.n - 1}")
    return c.d[i]


def qint_d(a, d):
    """[a] with v replaced by v^d."""
    if a == 0:
        return LaurentPoly()
    if a < 0:
        return -qint_d(-a, d)
    return LaurentPoly({d * (a - 1 - 2 * k): 1 for k in range(a)})


def qint(c, a, i):
    """The quantum integer [a]_i = (v_i^a - v_i^-a) / (v_i - v_i^-1)."""
    return qint_d(a, _d(c, i))


def qfactorial_d(t, d):
    out = LaurentPoly.constant(1)
    for s in range(1, t + 1):
        out = out * qint_d(s, d)
    return out


def qfactorial(c, t, i):
    return qfactorial_d(t, _d(c, i))


def _vdiff(e):
    # v^e - v^-e
    if e == 0:
        return LaurentPoly()
    return LaurentPoly({e: 1, -e: -1})


def qbinom_d(a, t, d):
    if t < 0:
        raise ValueError("t must be nonnegative")
    num = LaurentPoly.constant(1)
    for s in range(t):
        num = num * _vdiff(d * (a - s))
    den = LaurentPoly.constant(1)
    for s in range(1, t + 1):
        den = den * _vdiff(d * s)
    # exact by construction; exact_div raises otherwise
    return num.exact_div(den)


def qbinom(c, a, t, i):
    """Gaussian binomial [a choose t]_i via the closed product formula."""
    return qbinom_d(a, t, _d(c, i))


def evaluate(x, v0):
    """Specialize a LaurentPoly or RationalFunction at a nonzero rational v0."""
    if isinstance(x, LaurentPoly):
        x = RationalFunction.from_laurent(x)
    elif isinstance(x, (int, Fraction)):
        x = _coerce(x)
    return x.evaluate(v0)


# ---------------------------------------------------------------------------
# coefficient fields used by generic (field-agnostic) code


class ExactField:
    """Q(v) with exact rational functions."""

    name = "Q(v)"
    exact = True

    def laurent(self, lp):
        return RationalFunction.from_laurent(lp)

    def vpow(self, k):
        return RationalFunction.vpow(k)

    def convert(self, x):
        return _coerce(x)


class SpecializedField:
    """Q with v specialized to a nonzero rational v0 (classical when v0 = 1)."""

    exact = False

    def __init__(self, v0):
        v0 = Fraction(v0)
        if v0 == 0:
            raise ZeroEvaluationPoint("cannot specialize at v = 0")
        self.v0 = v0
        self.name = "Q" if v0 == 1 else f"Q[v={v0}]"

    def laurent(self, lp):
        return evaluate(lp, self.v0)

    def vpow(self, k):
        return self.v0 ** k

    def convert(self, x):
        if isinstance(x, RationalFunction):
            return x.evaluate(self.v0)
        if isinstance(x, LaurentPoly):
            return evaluate(x, self.v0)
        return Fraction(x)
