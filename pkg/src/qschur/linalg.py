"""Sparse exact linear algebra over an arbitrary field.

Entries may be ``RationalFunction`` or ``Fraction`` (or ints, which both
coerce); missing entries are zero.  Nothing here knows which field it runs
over, so the same code serves Q(v) and its specializations.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .errors import ResourceBudgetExceeded


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    # -- construction -----------------------------------------------------
    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        m = cls(nrows, ncols)
        for (r, c), x in entries.items() if isinstance(entries, dict) else entries:
            if x:
                m.rows.setdefault(r, {})[c] = x
        return m

    @classmethod
    def identity(cls, n, one=1):
        return cls(n, n, {k: {k: one} for k in range(n)})

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls(n, n, {k: {k: x} for k, x in enumerate(values) if x})

    @classmethod
    def zeros(cls, nrows, ncols=None):
        return cls(nrows, nrows if ncols is None else ncols)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, {r: dict(row) for r, row in self.rows.items()})

    # -- access -----------------------------------------------------------
    def __getitem__(self, rc):
        r, c = rc
        return self.rows.get(r, {}).get(c, 0)

    def items(self):
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def nnz(self):
        return sum(len(row) for row in self.rows.values())

    def is_zero(self):
        return not self.rows

    def __bool__(self):
        return bool(self.rows)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def first_difference(self, other):
        """Position and values of the first entry where self and other differ."""
        keys = sorted({(r, c) for r, row in self.rows.items() for c in row}
                      | {(r, c) for r, row in other.rows.items() for c in row})
        for r, c in keys:
            a, b = self[r, c], other[r, c]
            if a != b:
                return (r, c), a, b
        return None

    # -- arithmetic -------------------------------------------------------
    def _combine(self, other, sign):
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, orow in other.rows.items():
            row = rows.setdefault(r, {})
            for c, x in orow.items():
                y = row.get(c)
                z = (x if sign > 0 else -x) if y is None else (y + x if sign > 0 else y - x)
                if z:
                    row[c] = z
                elif c in row:
                    del row[c]
            if not row:
                del rows[r]
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return SparseMatrix(self.nrows, self.ncols,
                            {r: {c: -x for c, x in row.items()} for r, row in self.rows.items()})

    def scale(self, s):
        if not s:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            {r: {c: s * x for c, x in row.items()} for r, row in self.rows.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        out = {}
        orows = other.rows
        for r, row in self.rows.items():
            acc = {}
            for k, x in row.items():
                orow = orows.get(k)
                if not orow:
                    continue
                for c, y in orow.items():
                    p = x * y
                    if c in acc:
                        acc[c] = acc[c] + p
                    else:
                        acc[c] = p
            acc = {c: z for c, z in acc.items() if z}
            if acc:
                out[r] = acc
        return SparseMatrix(self.nrows, other.ncols, out)

    def __pow__(self, k):
        out = SparseMatrix.identity(self.nrows)
        for _ in range(k):
            out = self @ out
        return out

    @property
    def T(self):
        out = {}
        for r, row in self.rows.items():
            for c, x in row.items():
                out.setdefault(c, {})[r] = x
        return SparseMatrix(self.ncols, self.nrows, out)

    def map(self, f):
        out = {}
        for r, row in self.rows.items():
            new = {c: f(x) for c, x in row.items()}
            new = {c: x for c, x in new.items() if x}
            if new:
                out[r] = new
        return SparseMatrix(self.nrows, self.ncols, out)

    def kron(self, other):
        out = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                r = r1 * other.nrows + r2
                acc = out.setdefault(r, {})
                for c1, x in row1.items():
                    for c2, y in row2.items():
                        acc[c1 * other.ncols + c2] = x * y
        return SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols, out)

    def submatrix(self, rows, cols):
        cpos = {c: k for k, c in enumerate(cols)}
        out = {}
        for k, r in enumerate(rows):
            row = self.rows.get(r)
            if not row:
                continue
            new = {cpos[c]: x for c, x in row.items() if c in cpos}
            if new:
                out[k] = new
        return SparseMatrix(len(rows), len(cols), out)

    def to_dense(self):
        return [[self[r, c] for c in range(self.ncols)] for r in range(self.nrows)]

    def triplets(self, fmt=lambda x: x):
        return [[r, c, fmt(x)] for (r, c), x in self.items()]

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def block_diagonal(blocks):
    offset = 0
    rows = {}
    total_r = sum(b.nrows for b in blocks)
    for b in blocks:
        for r, row in b.rows.items():
            rows[r + offset] = {c + offset: x for c, x in row.items()}
        offset += b.nrows
    return SparseMatrix(total_r, total_r, rows)


# ---------------------------------------------------------------------------
# echelon forms


class EchelonBasis:
    """Incremental row-echelon basis of sparse vectors (dict key -> value).

    Keys must be mutually comparable; each stored row is normalized to 1 at its
    pivot (its smallest key) and has no entries at keys smaller than the pivot.
    """

    def __init__(self):
        self.pivots = {}
        self.order = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec):
        vec = {k: x for k, x in vec.items() if x}
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            x = vec.get(k)
            if not x:
                continue
            row = self.pivots.get(k)
            if row is None:
                continue
            for kk, y in row.items():
                z = vec.get(kk)
                z = -x * y if z is None else z - x * y
                if z:
                    if kk not in vec:
                        heapq.heappush(heap, kk)
                    vec[kk] = z
                else:
                    vec.pop(kk, None)
        return vec

    def insert(self, vec):
        """Add vec to the span; return True iff it was independent."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = _inverse(r[p])
        row = {k: x * inv for k, x in r.items()}
        self.pivots[p] = row
        self.order.append(p)
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def coordinates(self, vec):
        """Coefficients of vec w.r.t. the stored rows (keyed by pivot); None if outside."""
        vec = {k: x for k, x in vec.items() if x}
        coeffs = {}
        for p in sorted(self.pivots):
            x = vec.get(p)
            if not x:
                continue
            coeffs[p] = x
            for kk, y in self.pivots[p].items():
                z = vec.get(kk, 0) - x * y
                if z:
                    vec[kk] = z
                else:
                    vec.pop(kk, None)
        return None if vec else coeffs


def _inverse(x):
    return x.inverse() if hasattr(x, "inverse") else 1 / Fraction(x)


def rank(matrix):
    eb = EchelonBasis()
    for r in sorted(matrix.rows):
        eb.insert(matrix.rows[r])
    return len(eb)


def solve(a, b):
    """Solve A X = B for square nonsingular dense A (lists) and dense B (lists of columns)."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(a[r]) + list(b[r]) for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _inverse(aug[col][col])
        aug[col] = [x * inv if x else x for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [x - f * y if y else x for x, y in zip(aug[r], aug[col])]
    return [row[n:n + m] for row in aug]


def invert(a):
    n = len(a)
    ident = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    return solve(a, ident)


def independent_rows(vectors):
    """Indices of a greedy maximal independent subset (in order) and the basis."""
    eb = EchelonBasis()
    keep = []
    for k, v in enumerate(vectors):
        if eb.insert(v):
            keep.append(k)
    return keep, eb


# ---------------------------------------------------------------------------
# span closure


def _flatten(m):
    return {(r, c): x for r, row in m.rows.items() for c, x in row.items()}


def span_closure(generators, size, budget=None):
    """Dimension and echelon basis of the unital algebra generated by matrices.

    Seeds with the identity, multiplies by generators on the left, row-reduces,
    and repeats until no new independent element appears.
    """
    eb = EchelonBasis()
    ident = SparseMatrix.identity(size)
    queue = [ident]
    eb.insert(_flatten(ident))
    while queue:
        x = queue.pop()
        for g in generators:
            y = g @ x
            if y and eb.insert(_flatten(y)):
                if budget is not None and len(eb) > budget:
                    raise ResourceBudgetExceeded(f"algebra dimension exceeds budget {budget}")
                queue.append(y)
    return len(eb), eb


class GradedClosure:
    """Span closure of an algebra containing all weight-space projectors.

    ``blocks`` maps a grading label (weight) to the list of basis indices of
    that weight space; ``generators`` are (matrix, shift) pairs with each
    matrix sending the ``mu`` block into the ``mu + shift`` block.  The
    algebra is the direct sum over (nu, mu) of i_nu A i_mu, and A i_mu is the
    left-multiplication closure of the projector i_mu, so each graded piece
    is reduced separately.
    """

    def __init__(self, blocks, generators, budget=None):
        self.blocks = blocks
        self.generators = generators
        self.pieces = {}
        self.elements = {}
        total = 0
        for mu in sorted(blocks):
            idx = blocks[mu]
            proj = SparseMatrix(0, 0, {k: {k: 1} for k in idx})
            queue = [(mu, proj)]
            self._insert(mu, mu, proj)
            while queue:
                nu, x = queue.pop()
                for g, shift in self.generators:
                    target = tuple(a + b for a, b in zip(nu, shift))
                    if target not in blocks:
                        continue
                    y = _mul_rows(g, x)
                    if y and self._insert(target, mu, y):
                        total += 1
                        if budget is not None and total > budget:
                            raise ResourceBudgetExceeded(f"algebra dimension exceeds budget {budget}")
                        queue.append((target, y))

    def _insert(self, nu, mu, x):
        eb = self.pieces.setdefault((nu, mu), EchelonBasis())
        if eb.insert(_flatten(x)):
            self.elements.setdefault((nu, mu), []).append(x)
            return True
        return False

    @property
    def dimension(self):
        return sum(len(eb) for eb in self.pieces.values())

    def piece_dimensions(self):
        return {k: len(eb) for k, eb in sorted(self.pieces.items()) if len(eb)}

    def contains(self, nu, mu, x):
        eb = self.pieces.get((nu, mu))
        if eb is None:
            return not x
        return eb.contains(_flatten(x))


def _mul_rows(g, x):
    """g @ x ignoring declared shapes (x is stored with global indices)."""
    out = {}
    for r, row in g.rows.items():
        acc = {}
        for k, a in row.items():
            xrow = x.rows.get(k)
            if not xrow:
                continue
            for c, b in xrow.items():
                p = a * b
                acc[c] = acc[c] + p if c in acc else p
        acc = {c: z for c, z in acc.items() if z}
        if acc:
            out[r] = acc
    return SparseMatrix(0, 0, out)
