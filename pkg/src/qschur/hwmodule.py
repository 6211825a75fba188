"""Simple highest-weight modules over Q(v) as explicit matrices.

The module is built weight by weight, top down.  At weight ``mu`` the
candidate vectors are ``F_i b`` for basis vectors ``b`` one step higher; the
action of each ``E_j`` on a candidate follows from the commutation rule
``E_j F_i = F_i E_j + delta_ij [mu_i]_i`` using blocks that are already
known, and the contravariant form then gives the Gram matrix of the
candidates.  Its rank must equal the Freudenthal multiplicity, which is
computed independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cartan import simple_root
from .errors import CartanMismatch, NotDominant, QSchurError, RankMismatch, ResourceBudgetExceeded
from .linalg import EchelonBasis, SparseMatrix, solve
from .qarith import ONE, RationalFunction, qint_d
from .weyl import (
    add,
    dominant_below,
    height,
    is_dominant,
    orbit,
    positive_roots,
    root_coefficients,
    sub,
    weight_set,
)


# ---------------------------------------------------------------------------
# weight diagrams


@dataclass(frozen=True)
class WeightDiagram:
    mult: dict
    highest: tuple = ()

    @property
    def total(self):
        return sum(self.mult.values())

    def support(self):
        return weight_set(self.mult)


def _inner(c, mu, nu):
    """Symmetrized form (mu, nu) = sum_i d_i mu_i c_nu,i."""
    cn = root_coefficients(c, nu)
    return sum(c.d[i] * mu[i] * cn[i] for i in range(c.n))


def freudenthal(c, lam):
    """Weight multiplicities of the simple module of highest weight lam."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    weights = orbit(c, dominant_below(c, lam))
    roots = positive_roots(c)
    rho = (1,) * c.n
    depth = {mu: height(c, sub(lam, mu)) for mu in weights}
    present = set(weights)
    mult = {lam: 1}
    lr = add(lam, rho)
    top = _inner(c, lr, lr)
    root_ip = {}
    for mu in sorted(weights, key=lambda w: (depth[w], w)):
        if mu == lam:
            continue
        s = Fraction(0)
        for alpha in roots:
            k = 1
            nu = add(mu, alpha)
            while nu in present:
                m = mult.get(nu, 0)
                if m:
                    key = (nu, alpha)
                    if key not in root_ip:
                        root_ip[key] = _inner(c, nu, alpha)
                    s += m * root_ip[key]
                k += 1
                nu = add(nu, alpha)
        mr = add(mu, rho)
        m = 2 * s / (top - _inner(c, mr, mr))
        if m.denominator != 1:
            raise AssertionError(f"non-integral multiplicity {m} at {mu}")
        if m:
            mult[mu] = int(m)
    return WeightDiagram(mult=mult, highest=lam)


def convolve(a, b):
    out = {}
    for mu, m in a.items():
        for nu, k in b.items():
            w = add(mu, nu)
            out[w] = out.get(w, 0) + m * k
    return out


def tensor_power_support(c, lam_v, d):
    """Dominant weights occurring in the d-th tensor power of the simple module."""
    lam_v = tuple(lam_v)
    if not is_dominant(lam_v):
        raise NotDominant(f"{lam_v} is not dominant")
    if d < 0:
        raise ValueError("d must be nonnegative")
    base = freudenthal(c, lam_v).mult
    char = {(0,) * c.n: 1}
    for _ in range(d):
        char = convolve(char, base)
    return weight_set(mu for mu, m in char.items() if m > 0 and is_dominant(mu))


# ---------------------------------------------------------------------------
# contravariant pairing of F-words (Verma-level, independent of build_module)


def _apply_e(c, lam, i, word):
    """E_i F_word v+ as a list of (coefficient, shorter word)."""
    out = []
    wt = list(lam)
    # weight of F_{word[p+1:]} v+, scanning from the right
    weights = [None] * len(word)
    for p in range(len(word) - 1, -1, -1):
        weights[p] = tuple(wt)
        j = word[p]
        for r in range(c.n):
            wt[r] -= c.a[r][j]
    for p, j in enumerate(word):
        if j == i:
            coef = qint_d(weights[p][i], c.d[i])
            if coef:
                out.append((coef, word[:p] + word[p + 1:]))
    return out


@lru_cache(maxsize=None)
def _pair(c, lam, w, w2):
    if len(w) != len(w2) or sorted(w) != sorted(w2):
        return None
    if not w:
        return ONE
    total = None
    for coef, word in _apply_e(c, lam, w[0], w2):
        p = _pair(c, lam, w[1:], word)
        if p:
            term = RationalFunction.from_laurent(coef) * p
            total = term if total is None else total + term
    return total


def pair_words(c, lam, w, w2):
    """<F_w v+, F_w2 v+> with <v+, v+> = 1; words list F indices, leftmost applied last."""
    r = _pair(c, tuple(lam), tuple(w), tuple(w2))
    return r if r is not None else RationalFunction(0)


# ---------------------------------------------------------------------------
# module actions


@dataclass
class ModuleAction:
    """Matrices of E_i, F_i on a weight basis; K_i acts by v_i^{mu_i}."""

    cartan: object
    weights: list
    E: list
    F: list

    @property
    def dim(self):
        return len(self.weights)

    def K(self, i, power=1):
        d = self.cartan.d[i]
        return SparseMatrix.diagonal([RationalFunction.vpow(power * d * w[i]) for w in self.weights])


@dataclass
class HWModule:
    cartan: object
    highest: tuple
    diagram: WeightDiagram
    weight_order: list
    basis: list  # labels (weight, index within weight space)
    words: list  # F-word (tuple of indices) producing each basis vector
    E: list
    F: list
    gram: dict  # weight -> dense Gram block
    offsets: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def weights(self):
        return [lab[0] for lab in self.basis]

    @property
    def action(self):
        return ModuleAction(self.cartan, self.weights, self.E, self.F)

    def K(self, i, power=1):
        return self.action.K(i, power)

    def block_indices(self, mu):
        off = self.offsets[mu]
        return list(range(off, off + len(self.gram[mu])))

    def gram_matrix(self):
        """Block-diagonal Gram matrix over the whole module."""
        rows = {}
        for mu, g in self.gram.items():
            off = self.offsets[mu]
            for r, row in enumerate(g):
                vals = {off + k: x for k, x in enumerate(row) if x}
                if vals:
                    rows[off + r] = vals
        return SparseMatrix(self.dim, self.dim, rows)

    def gram_inverse(self):
        rows = {}
        for mu, g in self.gram.items():
            off = self.offsets[mu]
            ginv = solve(g, [[int(r == k) for k in range(len(g))] for r in range(len(g))])
            for r, row in enumerate(ginv):
                vals = {off + k: x for k, x in enumerate(row) if x}
                if vals:
                    rows[off + r] = vals
        return SparseMatrix(self.dim, self.dim, rows)


def _matvec(m, v):
    """Dense matrix (list of rows) times dense vector."""
    out = []
    for row in m:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _candidate_data(c, mu, basis_words, gram, eblk, fblk, alphas):
    """Candidates F_i b at weight mu with their E_j coordinates and Gram matrix."""
    n = c.n
    cands = []
    for i in range(n):
        src = add(mu, alphas[i])
        if src in basis_words:
            for k, w in enumerate(basis_words[src]):
                cands.append((i, src, k, (i,) + w))
    cands.sort(key=lambda t: t[3])
    ecoords = []
    for i, src, k, _ in cands:
        per_j = {}
        for j in range(n):
            tgt = add(mu, alphas[j])
            if tgt not in basis_words:
                continue
            vec = [0] * len(basis_words[tgt])
            up = add(src, alphas[j])
            if up in basis_words:
                col = [row[k] for row in eblk[(j, src)]]
                fb = fblk.get((i, up))
                if fb is not None:
                    vec = _matvec(fb, col)
            if i == j:
                q = qint_d(src[i], c.d[i])
                if q:
                    vec[k] = vec[k] + RationalFunction.from_laurent(q)
            per_j[j] = vec
        ecoords.append(per_j)
    size = len(cands)
    g = [[0] * size for _ in range(size)]
    for a, (i, src, k, _) in enumerate(cands):
        grow = gram[src][k]
        for b in range(a, size):
            vec = ecoords[b].get(i)
            if vec is None:
                continue
            acc = 0
            for x, y in zip(grow, vec):
                if x and y:
                    acc = acc + x * y
            g[a][b] = acc
            g[b][a] = acc
    return cands, ecoords, g


def build_module(c, lam, budget=None):
    """Construct the simple module of highest weight lam with E_i, F_i matrices and Gram blocks."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    diagram = freudenthal(c, lam)
    if budget is not None and diagram.total > budget:
        raise ResourceBudgetExceeded(f"dim of module {lam} is {diagram.total} > budget {budget}")
    n = c.n
    alphas = [simple_root(c, i) for i in range(n)]
    depth = {mu: height(c, sub(lam, mu)) for mu in diagram.mult}
    order = sorted(diagram.mult, key=lambda mu: (depth[mu], tuple(-x for x in mu)))
    basis_words = {lam: [()]}
    gram = {lam: [[ONE]]}
    eblk = {}  # (j, mu) -> dense block basis(mu) -> basis(mu + alpha_j)
    fblk = {}  # (i, mu) -> dense block basis(mu) -> basis(mu - alpha_i)
    for mu in order:
        if mu == lam:
            continue
        cands, ecoords, g = _candidate_data(c, mu, basis_words, gram, eblk, fblk, alphas)
        keep, _ = _greedy_rows(g)
        if len(keep) != diagram.mult[mu]:
            raise RankMismatch(f"weight {mu}: Gram rank {len(keep)} != multiplicity {diagram.mult[mu]}")
        gb = [[g[a][b] for b in keep] for a in keep]
        rhs = [[g[a][b] for b in range(len(cands))] for a in keep]
        coords = solve(gb, rhs)  # coords[r][cand] = coordinate of cand on basis vector r
        basis_words[mu] = [cands[a][3] for a in keep]
        gram[mu] = gb
        for col, (i, src, k, _) in enumerate(cands):
            blk = fblk.setdefault((i, src), [[0] * len(basis_words[src]) for _ in keep])
            for r in range(len(keep)):
                blk[r][k] = coords[r][col]
        for j in range(n):
            tgt = add(mu, alphas[j])
            if tgt not in basis_words:
                continue
            blk = [[0] * len(keep) for _ in basis_words[tgt]]
            for b, a in enumerate(keep):
                vec = ecoords[a][j]
                for r, x in enumerate(vec):
                    blk[r][b] = x
            eblk[(j, mu)] = blk
    # F-words leaving the support must vanish in the simple quotient
    for mu in order:
        for i in range(n):
            nu = sub(mu, alphas[i])
            if nu in basis_words:
                continue
            _, _, g = _candidate_data(c, nu, basis_words, gram, eblk, fblk, alphas)
            if any(x for row in g for x in row):
                raise RankMismatch(f"weight {nu} outside the support has nonzero Gram block")
    offsets = {}
    labels, words = [], []
    for mu in order:
        offsets[mu] = len(labels)
        for k, w in enumerate(basis_words[mu]):
            labels.append((mu, k))
            words.append(w)
    dim = len(labels)
    E = [SparseMatrix(dim, dim) for _ in range(n)]
    F = [SparseMatrix(dim, dim) for _ in range(n)]
    for (j, mu), blk in eblk.items():
        _place(E[j], blk, offsets[add(mu, alphas[j])], offsets[mu])
    for (i, mu), blk in fblk.items():
        tgt = sub(mu, alphas[i])
        if tgt in offsets:
            _place(F[i], blk, offsets[tgt], offsets[mu])
    return HWModule(
        cartan=c,
        highest=lam,
        diagram=diagram,
        weight_order=order,
        basis=labels,
        words=words,
        E=E,
        F=F,
        gram=gram,
        offsets=offsets,
    )


def _greedy_rows(g):
    eb = EchelonBasis()
    keep = []
    for a, row in enumerate(g):
        if eb.insert({b: x for b, x in enumerate(row) if x}):
            keep.append(a)
    return keep, eb


def _place(m, blk, roff, coff):
    for r, row in enumerate(blk):
        for k, x in enumerate(row):
            if x:
                m.rows.setdefault(roff + r, {})[coff + k] = x


# ---------------------------------------------------------------------------
# tensor products


def _as_action(m):
    return m.action if isinstance(m, HWModule) else m


def tensor(c, m1, m2):
    """Tensor product action with E -> E x 1 + K x E, F -> F x K^-1 + 1 x F."""
    a, b = _as_action(m1), _as_action(m2)
    for x in (a, b):
        if (x.cartan.a, x.cartan.d) != (c.a, c.d):
            raise CartanMismatch("tensor factors must share the Cartan data")
    ia, ib = SparseMatrix.identity(a.dim), SparseMatrix.identity(b.dim)
    E, F = [], []
    for i in range(c.n):
        E.append(a.E[i].kron(ib) + a.K(i).kron(b.E[i]))
        F.append(a.F[i].kron(b.K(i, -1)) + ia.kron(b.F[i]))
    weights = [add(wa, wb) for wa in a.weights for wb in b.weights]
    out = ModuleAction(c, weights, E, F)
    from .relations import VerificationReport, check_u_relations

    rep = VerificationReport("tensor")
    check_u_relations(rep, c, out.E, out.F, [out.K(i) for i in range(c.n)], [out.K(i, -1) for i in range(c.n)])
    if not rep.passed:
        raise QSchurError(f"tensor action violates relations: {rep.failures()[0]}")
    return out


def tensor_power(c, module, d):
    if d < 1:
        raise ValueError("d must be positive")
    act = _as_action(module)
    out = act
    for _ in range(d - 1):
        out = tensor(c, out, act)
    return out


# ---------------------------------------------------------------------------
# serialization


def module_dump(m):
    from .weyl import format_weight

    return {
        "cartan": m.cartan.to_dict(),
        "highest_weight": list(m.highest),
        "dimension": m.dim,
        "basis": [{"weight": list(mu), "index": k, "word": [i + 1 for i in m.words[p]]}
                  for p, (mu, k) in enumerate(m.basis)],
        "E": [E.triplets(lambda x: x.to_dict()) for E in m.E],
        "F": [F.triplets(lambda x: x.to_dict()) for F in m.F],
        "gram": {format_weight(mu): [[RationalFunction(x).to_dict() for x in row] for row in g]
                 for mu, g in sorted(m.gram.items())},
    }
