"""Weight-lattice combinatorics.

A weight is a tuple of ints ``(l_1, ..., l_n)`` with ``l_i = <alpha_i^vee, l>``.
A weight set is a sorted tuple of distinct weights (lexicographic order),
which is the canonical serialization order.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product

from .cartan import simple_root
from .errors import IndexOutOfRange, InputError, NotDominant


def weight_set(weights):
    return tuple(sorted({tuple(int(x) for x in w) for w in weights}))


def is_dominant(lam):
    return all(x >= 0 for x in lam)


def add(lam, mu):
    return tuple(x + y for x, y in zip(lam, mu))


def sub(lam, mu):
    return tuple(x - y for x, y in zip(lam, mu))


def scale(k, lam):
    return tuple(k * x for x in lam)


def combination(c, coeffs):
    """sum_j coeffs[j] * alpha_j as a weight."""
    n = c.n
    return tuple(sum(c.a[i][j] * coeffs[j] for j in range(n)) for i in range(n))


def reflect(c, i, lam):
    """s_i(lam) = lam - lam_i alpha_i."""
    if not 0 <= i < c.n:
        raise IndexOutOfRange(f"index {i} outside 0..{c.n - 1}")
    k = lam[i]
    return tuple(lam[r] - k * c.a[r][i] for r in range(c.n))


def orbit(c, weights):
    """Closure of a weight set under all simple reflections."""
    seen = set()
    queue = deque()
    for w in weight_set(weights):
        if w not in seen:
            seen.add(w)
            queue.append(w)
    while queue:
        w = queue.popleft()
        for i in range(c.n):
            r = reflect(c, i, w)
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return weight_set(seen)


def root_coefficients(c, delta):
    """Rational c with delta = sum_j c_j alpha_j."""
    inv = c.inverse
    n = c.n
    return tuple(sum(inv[j][i] * delta[i] for i in range(n)) for j in range(n))


def _nonneg_integral(coeffs):
    return all(x.denominator == 1 and x >= 0 for x in coeffs)


def dominance_leq(c, lam, mu):
    """lam <= mu iff mu - lam is a nonnegative integer combination of simple roots."""
    return _nonneg_integral(root_coefficients(c, sub(mu, lam)))


def height(c, delta):
    """Sum of root coefficients of delta (delta must lie in the root lattice)."""
    s = sum(root_coefficients(c, delta))
    if isinstance(s, Fraction):
        assert s.denominator == 1
        s = int(s)
    return s


def dominant_representative(c, lam):
    lam = tuple(lam)
    while True:
        i = next((k for k, x in enumerate(lam) if x < 0), None)
        if i is None:
            return lam
        lam = reflect(c, i, lam)


def lowest_weight(c, mu):
    """w_0 mu."""
    return tuple(-x for x in dominant_representative(c, tuple(-x for x in mu)))


def dominant_below(c, mu):
    """All dominant lam with lam <= mu."""
    mu = tuple(mu)
    if not is_dominant(mu):
        raise NotDominant(f"{mu} is not dominant")
    box = root_coefficients(c, sub(mu, lowest_weight(c, mu)))
    if not _nonneg_integral(box):
        raise AssertionError("mu - w0 mu must lie in the nonnegative root cone")
    out = []
    for coeffs in product(*(range(int(b) + 1) for b in box)):
        lam = sub(mu, combination(c, coeffs))
        if is_dominant(lam):
            out.append(lam)
    return weight_set(out)


def _require_dominant(weights):
    for w in weights:
        if not is_dominant(w):
            raise NotDominant(f"{w} is not dominant")


def saturate(c, pi):
    """Smallest saturated set containing pi."""
    pi = weight_set(pi)
    _require_dominant(pi)
    out = set()
    for mu in pi:
        out.update(dominant_below(c, mu))
    return weight_set(out)


def is_saturated(c, pi):
    pi = weight_set(pi)
    return saturate(c, pi) == pi


def largest_saturated_subset(c, pi):
    """Elements of pi whose whole dominant lower set lies in pi."""
    pi = weight_set(pi)
    _require_dominant(pi)
    members = set(pi)
    return weight_set(mu for mu in pi if set(dominant_below(c, mu)) <= members)


def positive_roots(c):
    """Positive roots (weight coordinates), sorted by height then lexicographically."""
    simple = [simple_root(c, j) for j in range(c.n)]
    roots = [r for r in orbit(c, simple) if _nonneg_integral(root_coefficients(c, r))]
    return sorted(roots, key=lambda r: (height(c, r), r))


def parse_weight(text, n=None):
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"cannot parse weight {text!r}") from None
    if n is not None and len(w) != n:
        raise InputError(f"weight {text!r} has {len(w)} coordinates, expected {n}")
    return w


def parse_weight_set(text, n=None):
    parts = [p.strip() for p in text.split(";") if p.strip()]
    return weight_set(parse_weight(p, n) for p in parts)


def format_weight(w):
    return ",".join(str(x) for x in w)


def format_weight_set(ws):
    return ";".join(format_weight(w) for w in ws)
