"""Finite-type Cartan data.

Indices are 0-based throughout the Python API; user-facing labels
(``E1``, ``F2``...) are 1-based.

Catalog orientation (Bourbaki numbering, ``a[i][j] = <alpha_i^vee, alpha_j>``):

* ``B_n``: alpha_n is short, e.g. B2 = [[2,-1],[-2,2]], d = (2,1).
* ``C_n``: alpha_n is long,  e.g. C2 = [[2,-2],[-1,2]], d = (1,2); the
  natural 2n-dimensional module has highest weight (1,0,...,0).
* ``F4``: alpha_1, alpha_2 long.
* ``G2``: alpha_1 short, G2 = [[2,-3],[-1,2]], d = (1,3); the
  7-dimensional module has highest weight (1,0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    BadDiagonal,
    IndexOutOfRange,
    InputError,
    NotFiniteType,
    NotSymmetrizable,
    SymmetrizerOutOfRange,
    UnknownType,
)


@dataclass(frozen=True)
class CartanData:
    a: tuple
    d: tuple
    label: str = field(default="", compare=False)

    @property
    def n(self):
        return len(self.a)

    @cached_property
    def inverse(self):
        """Inverse Cartan matrix over Q, rows indexed like ``a``."""
        return _invert([[Fraction(x) for x in row] for row in self.a])

    def symmetrized(self):
        return tuple(tuple(self.d[i] * self.a[i][j] for j in range(self.n)) for i in range(self.n))

    def to_dict(self):
        return {"label": self.label, "matrix": [list(r) for r in self.a], "d": list(self.d)}

    def __str__(self):
        return self.label or "x".join(str(list(r)) for r in self.a)


def _invert(m):
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _symmetrizer(a):
    """Minimal positive integer d with d_i a_ij = d_j a_ji, per component."""
    n = len(a)
    d = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or (a[i][j] == 0 and a[j][i] == 0):
                    continue
                if a[i][j] == 0 or a[j][i] == 0:
                    raise NotSymmetrizable(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
                want = d[i] * a[i][j] / a[j][i]
                if want <= 0:
                    raise NotSymmetrizable("no positive symmetrizer exists")
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    stack.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable("symmetry constraints are inconsistent")
        den = 1
        for i in comp:
            den = den * d[i].denominator // gcd(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = x // g
    return tuple(int(x) for x in d)


def validate_cartan(matrix, label=""):
    """Check a square integer matrix and return its CartanData."""
    a = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise InputError("Cartan matrix must be square and nonempty")
    for i in range(n):
        if a[i][i] != 2:
            raise BadDiagonal(f"a[{i}][{i}] = {a[i][i]} (must be 2)")
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise BadDiagonal(f"a[{i}][{j}] = {a[i][j]} > 0")
    d = _symmetrizer(a)
    if any(x not in (1, 2, 3) for x in d):
        raise SymmetrizerOutOfRange(f"symmetrizer {d} has entries outside {{1,2,3}}")
    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        minor = _det([row[:k] for row in sym[:k]])
        if minor <= 0:
            raise NotFiniteType(f"leading principal minor of order {k} is {minor}")
    return CartanData(a=a, d=d, label=label)


def _catalog_matrix(family, r):
    a = [[0] * r for _ in range(r)]
    for i in range(r):
        a[i][i] = 2
    for i in range(r - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if family == "A" and r >= 1:
        return a
    if family == "B" and r >= 2:
        a[r - 1][r - 2] = -2
        return a
    if family == "C" and r >= 2:
        a[r - 2][r - 1] = -2
        return a
    if family == "D" and r >= 4:
        a[r - 2][r - 1] = a[r - 1][r - 2] = 0
        a[r - 3][r - 1] = a[r - 1][r - 3] = -1
        return a
    if family == "E" and r in (6, 7, 8):
        # Bourbaki: chain 1-3-4-5-6-(7-8), node 2 attached to node 4
        a = [[0] * r for _ in range(r)]
        for i in range(r):
            a[i][i] = 2
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, r - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if family == "F" and r == 4:
        a[2][1] = -2
        return a
    if family == "G" and r == 2:
        return [[2, -3], [-1, 2]]
    raise UnknownType(f"no finite type {family}{r}")


def builtin_cartan(family, rank):
    family = family.upper()
    rank = int(rank)
    if family not in "ABCDEFG" or len(family) != 1 or rank < 1:
        raise UnknownType(f"no finite type {family}{rank}")
    return validate_cartan(_catalog_matrix(family, rank), label=f"{family}{rank}")


def parse_type(text):
    """Parse labels like ``A2`` or ``g2``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
    if not m:
        raise UnknownType(f"cannot parse Cartan type {text!r}")
    return builtin_cartan(m.group(1), int(m.group(2)))


def parse_matrix_text(text, label=""):
    """Text format: first line n, then n lines of n integers."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    try:
        n = int(lines[0][0])
        rows = [[int(x) for x in ln] for ln in lines[1 : n + 1]]
    except (IndexError, ValueError) as exc:
        raise InputError(f"malformed Cartan matrix text: {exc}") from None
    if len(lines[0]) != 1 or len(rows) != n or any(len(r) != n for r in rows) or len(lines) != n + 1:
        raise InputError("malformed Cartan matrix text: expected n then n rows of n integers")
    return validate_cartan(rows, label=label)


def format_matrix_text(c):
    return "\n".join([str(c.n)] + [" ".join(str(x) for x in row) for row in c.a]) + "\n"


def simple_root(c, j):
    """alpha_j in fundamental-weight coordinates: column j of the Cartan matrix."""
    if not 0 <= j < c.n:
        raise IndexOutOfRange(f"index {j} outside 0..{c.n - 1}")
    return tuple(c.a[i][j] for i in range(c.n))
