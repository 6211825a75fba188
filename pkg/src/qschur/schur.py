"""The generalized q-Schur algebra realized on a direct sum of simple modules.

For a saturated set ``pi`` of dominant weights the algebra acts faithfully on
the sum of the simple modules with highest weights in ``pi``.  Everything
below works with that block realization: generator matrices, weight
projectors, the contravariant Gram form, span closures and the cell datum.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyPi, MembershipFailure, NotDominant, NotSaturated
from .hwmodule import build_module, tensor_power, module_dump
from .linalg import EchelonBasis, GradedClosure, SparseMatrix, block_diagonal, span_closure, _flatten
from .qarith import ExactField, RationalFunction, SpecializedField
from .relations import (
    VerificationReport,
    check_classical_u_relations,
    check_divided_relations,
    check_nilpotent,
    check_s_relations,
    check_toral,
    check_u_relations,
)
from .weyl import format_weight, is_dominant, is_saturated, orbit, weight_set

COPRODUCT = "E->E(x)1+K(x)E, F->F(x)K^-1+1(x)F, K->K(x)K"


@dataclass
class SchurRep:
    cartan: object
    pi: tuple
    wpi: tuple
    summands: list
    labels: list  # (highest weight, weight, index within the weight space of that summand)
    E: list
    F: list
    idem: dict
    gram: SparseMatrix
    gram_inv: SparseMatrix
    v0: object = None  # None for the generic rep over Q(v)

    @property
    def dim(self):
        return len(self.labels)

    @property
    def field(self):
        return ExactField() if self.v0 is None else SpecializedField(self.v0)

    def weight_blocks(self):
        out = {}
        for k, (_, mu, _) in enumerate(self.labels):
            out.setdefault(mu, []).append(k)
        return out

    def summand_offsets(self):
        out, off = {}, 0
        for m in self.summands:
            out[m.highest] = off
            off += m.dim
        return out

    def idempotent_ranks(self):
        return {mu: len(p.rows) for mu, p in sorted(self.idem.items())}


def _check_pi(c, pi):
    pi = weight_set(pi)
    if not pi:
        raise EmptyPi("pi must be nonempty")
    for lam in pi:
        if len(lam) != c.n:
            raise NotDominant(f"weight {lam} does not have {c.n} coordinates")
        if not is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
    if not is_saturated(c, pi):
        raise NotSaturated(f"{{{';'.join(format_weight(w) for w in pi)}}} is not saturated")
    return pi


def assemble(c, pi, budget=None):
    """Block realization of S(pi) on the sum of the simple modules of pi."""
    pi = _check_pi(c, pi)
    summands = []
    used = 0
    for lam in pi:
        remaining = None if budget is None else budget - used
        m = build_module(c, lam, budget=remaining)
        used += m.dim
        summands.append(m)
    labels = [(m.highest, mu, k) for m in summands for (mu, k) in m.basis]
    E = [block_diagonal([m.E[i] for m in summands]) for i in range(c.n)]
    F = [block_diagonal([m.F[i] for m in summands]) for i in range(c.n)]
    gram = block_diagonal([m.gram_matrix() for m in summands])
    gram_inv = block_diagonal([m.gram_inverse() for m in summands])
    wpi = orbit(c, pi)
    size = len(labels)
    idem = {mu: SparseMatrix(size, size) for mu in wpi}
    for k, (_, mu, _) in enumerate(labels):
        idem[mu].rows[k] = {k: 1}
    return SchurRep(c, pi, wpi, summands, labels, E, F, idem, gram, gram_inv)


def k_elements(rep):
    """K_i = sum_mu v_i^{mu_i} i_mu and their inverses, as diagonal matrices."""
    c, fld = rep.cartan, rep.field
    K, Kinv = [], []
    for i in range(c.n):
        K.append(SparseMatrix.diagonal([fld.vpow(c.d[i] * mu[i]) for _, mu, _ in rep.labels]))
        Kinv.append(SparseMatrix.diagonal([fld.vpow(-c.d[i] * mu[i]) for _, mu, _ in rep.labels]))
        prod = K[i] @ Kinv[i]
        assert prod == SparseMatrix.identity(rep.dim), "K_i K_i^-1 must be the identity"
    return K, Kinv


def tamper_k(K, i=0, position=0):
    """Copy of K with one diagonal entry of K_i multiplied by v (negative control)."""
    out = [k.copy() for k in K]
    m = out[i]
    x = m[position, position]
    m.rows.setdefault(position, {})[position] = x * RationalFunction.vpow(1) if x else RationalFunction.vpow(1)
    return out


def verify_presentation(rep, K=None, Kinv=None):
    """All defining relations, the relations of U on (E, F, K), idempotent recovery and nilpotency."""
    c, fld = rep.cartan, rep.field
    report = VerificationReport("presentation")
    if K is None or Kinv is None:
        K0, K0inv = k_elements(rep)
        K = K if K is not None else K0
        Kinv = Kinv if Kinv is not None else K0inv
    check_s_relations(report, c, rep.E, rep.F, rep.idem, rep.wpi, fld)
    check_u_relations(report, c, rep.E, rep.F, K, Kinv, fld)
    check_toral(report, c, K, rep.idem, rep.wpi, lambda i, mu: fld.vpow(c.d[i] * mu[i]), "K")
    check_nilpotent(report, c, rep.E, rep.F, rep.wpi)
    for i in range(c.n):
        lhs = rep.gram_inv @ rep.E[i].T @ rep.gram
        report.check("contravariance", {"i": i + 1}, lhs, rep.F[i])
    return report


def verify_divided(rep, abound):
    if abound < 1:
        raise ValueError("abound must be positive")
    report = VerificationReport("divided")
    check_divided_relations(report, rep.cartan, rep.E, rep.F, rep.idem, rep.wpi, abound, rep.field)
    return report


# ---------------------------------------------------------------------------
# span closure


def _graded_generators(rep):
    c = rep.cartan
    gens = []
    for i in range(c.n):
        alpha = tuple(c.a[r][i] for r in range(c.n))
        gens.append((rep.E[i], alpha))
        gens.append((rep.F[i], tuple(-x for x in alpha)))
    return gens


def closure(rep, budget=None):
    """Graded span closure of the algebra generated by E_i, F_i and the i_mu."""
    return GradedClosure(rep.weight_blocks(), _graded_generators(rep), budget=budget)


def algebra_dimension(rep, budget=None, cross_check=False):
    """Dimension of the matrix algebra generated by E_i, F_i, i_mu (unital).

    The algebra contains every weight projector, so it splits as the sum of
    the pieces i_nu A i_mu and each piece is closed separately.  With
    ``cross_check`` the plain closure seeded by the identity is run as well
    and must agree.
    """
    g = closure(rep, budget=budget)
    dim = g.dimension
    if cross_check:
        gens = list(rep.E) + list(rep.F) + [rep.idem[mu] for mu in rep.wpi]
        plain, _ = span_closure(gens, rep.dim, budget=budget)
        if plain != dim:
            raise AssertionError(f"graded closure {dim} disagrees with plain closure {plain}")
    return dim


def expected_dimension(rep):
    return sum(m.dim ** 2 for m in rep.summands)


def screen_dimension(rep, v0=None, seed=0, budget=None):
    """Fast pre-screen: closure dimension at a random rational point."""
    if v0 is None:
        rng = random.Random(seed)
        v0 = Fraction(rng.randint(101, 997), rng.randint(101, 997))
        while v0 == 1:
            v0 = Fraction(rng.randint(101, 997), rng.randint(101, 997))
    return algebra_dimension(specialize_matrices(rep, v0), budget=budget)


# ---------------------------------------------------------------------------
# cell datum


@dataclass
class CellDatum:
    rep: SchurRep
    labels: dict  # lam -> list of global basis indices M(lam)
    elements: dict  # (lam, S, T) -> matrix
    report: VerificationReport = field(default_factory=lambda: VerificationReport("cell"))
    coefficients: dict = field(default_factory=dict)  # (generator name, lam, S', S) -> r_u(S', S)

    @property
    def size(self):
        return len(self.elements)

    def iota(self, x):
        return iota(self.rep, x)


def iota(rep, x):
    """Anti-involution X -> G^-1 X^T G."""
    return rep.gram_inv @ x.T @ rep.gram


def _cell_element(rep, s, t):
    row = rep.gram.rows.get(t, {})
    return SparseMatrix(rep.dim, rep.dim, {s: dict(row)} if row else {})


def _coefficients(rep, y, t, block):
    """r with y = sum_{S'} r(S') c_{S',T}; None when y is not of that shape."""
    z = y @ rep.gram_inv
    out = {}
    for r, row in z.rows.items():
        for col, x in row.items():
            if col != t or r not in block:
                return None
            out[r] = x
    return out


def cell_basis(rep, graded=None, budget=None):
    """Gram-twisted rank-one cell elements with the cellular and involution checks."""
    if graded is None:
        graded = closure(rep, budget=budget)
    offsets = rep.summand_offsets()
    labels = {m.highest: list(range(offsets[m.highest], offsets[m.highest] + m.dim)) for m in rep.summands}
    datum = CellDatum(rep, labels, {})
    report = datum.report
    wt = [mu for _, mu, _ in rep.labels]
    gens = [(f"E{i + 1}", rep.E[i]) for i in range(rep.cartan.n)]
    gens += [(f"F{i + 1}", rep.F[i]) for i in range(rep.cartan.n)]
    gens += [(f"i({format_weight(mu)})", rep.idem[mu]) for mu in rep.wpi]
    span = EchelonBasis()
    for lam, idx in labels.items():
        block = set(idx)
        for s in idx:
            for t in idx:
                x = _cell_element(rep, s, t)
                datum.elements[(lam, s, t)] = x
                if not graded.contains(wt[s], wt[t], x):
                    raise MembershipFailure(f"cell element ({format_weight(lam)}, {s}, {t}) outside the algebra")
                span.insert({(r, col): v for (r, col), v in x.items()})
        for s in idx:
            for t in idx:
                report.check("iota-swap", {"lam": lam, "S": s, "T": t},
                             iota(rep, datum.elements[(lam, s, t)]), datum.elements[(lam, t, s)])
        for name, u in gens:
            for s in idx:
                ref = None
                for t in idx:
                    y = u @ datum.elements[(lam, s, t)]
                    coeffs = _coefficients(rep, y, t, block)
                    p = {"u": name, "lam": lam, "S": s, "T": t}
                    if coeffs is None:
                        report.check_true("cell-action-shape", p, False, "product leaves the cell")
                        continue
                    # the coefficients are the matrix entries u[S', S]
                    want = {r: u[r, s] for r in idx if u[r, s]}
                    report.check_true("cell-action-coefficients", p, coeffs == want)
                    if ref is None:
                        ref = coeffs
                        for r, val in coeffs.items():
                            datum.coefficients[(name, lam, r, s)] = val
                    else:
                        report.check_true("cell-coefficients-independent-of-T", p, coeffs == ref)
    total = sum(len(idx) ** 2 for idx in labels.values())
    report.check_true("cell-independence", {"count": total}, len(span) == total == len(datum.elements))
    report.check_true("cell-count-equals-dimension", {"count": total, "dim": graded.dimension},
                      total == graded.dimension)
    for i in range(rep.cartan.n):
        report.check("iota-E-to-F", {"i": i + 1}, iota(rep, rep.E[i]), rep.F[i])
        report.check("iota-F-to-E", {"i": i + 1}, iota(rep, rep.F[i]), rep.E[i])
        report.check("iota-involution", {"i": i + 1}, iota(rep, iota(rep, rep.E[i])), rep.E[i])
    for mu in rep.wpi:
        report.check("iota-fixes-idempotent", {"mu": mu}, iota(rep, rep.idem[mu]), rep.idem[mu])
    for i in range(rep.cartan.n):
        for j in range(rep.cartan.n):
            x, y = rep.E[i], rep.F[j]
            report.check("iota-anti-multiplicative", {"i": i + 1, "j": j + 1},
                         iota(rep, x @ y), iota(rep, y) @ iota(rep, x))
    return datum


# ---------------------------------------------------------------------------
# specialization


def specialize_matrices(rep, v0):
    """The same rep with every entry evaluated at v = v0."""
    fld = SpecializedField(v0)
    ev = fld.convert
    return SchurRep(
        cartan=rep.cartan,
        pi=rep.pi,
        wpi=rep.wpi,
        summands=rep.summands,
        labels=rep.labels,
        E=[m.map(ev) for m in rep.E],
        F=[m.map(ev) for m in rep.F],
        idem={mu: p.map(Fraction) for mu, p in rep.idem.items()},
        gram=rep.gram.map(ev),
        gram_inv=rep.gram_inv.map(ev),
        v0=fld.v0,
    )


def h_elements(rep):
    """h_i = sum_mu mu_i i_mu."""
    return [SparseMatrix.diagonal([Fraction(mu[i]) for _, mu, _ in rep.labels]) for i in range(rep.cartan.n)]


def specialize(rep, v0, with_dimension=True, budget=None):
    """Evaluate at v0 and verify the specialized relations.

    At v0 = 1 this is the classical presentation: h_i replaces K_i and the
    enveloping-algebra relations, the toral identities for h_i and nilpotency
    are checked too.  At other points the defining relations are checked with
    specialized coefficients.
    """
    sp = specialize_matrices(rep, v0)
    fld = sp.field
    c = rep.cartan
    report = VerificationReport("classical" if sp.v0 == 1 else f"specialized v={sp.v0}")
    check_s_relations(report, c, sp.E, sp.F, sp.idem, sp.wpi, fld)
    if sp.v0 == 1:
        h = h_elements(sp)
        check_classical_u_relations(report, c, sp.E, sp.F, h)
        check_toral(report, c, h, sp.idem, sp.wpi, lambda i, mu: mu[i], "h")
        check_nilpotent(report, c, sp.E, sp.F, sp.wpi, names=("e", "f"))
    else:
        K, Kinv = k_elements(sp)
        check_u_relations(report, c, sp.E, sp.F, K, Kinv, fld)
    if with_dimension:
        dim = algebra_dimension(sp, budget=budget)
        report.check_true("specialized-dimension", {"dim": dim, "expected": expected_dimension(rep)},
                          dim == expected_dimension(rep))
    return sp, report


# ---------------------------------------------------------------------------
# image of the quantized enveloping algebra on a tensor power


def enveloping_image_dim(c, lam_v, d, budget=None, cross_check=False):
    """Dimension of the image of U on the d-th tensor power of the simple module lam_v.

    The K_i^{+-1} generate all weight projectors of the tensor power (their
    joint eigenvalues are distinct powers of v), so the graded closure over
    the weight spaces applies.
    """
    lam_v = tuple(lam_v)
    if not is_dominant(lam_v):
        raise NotDominant(f"{lam_v} is not dominant")
    if d < 1:
        raise ValueError("d must be positive")
    m = build_module(c, lam_v, budget=budget)
    if budget is not None and m.dim ** d > budget:
        from .errors import ResourceBudgetExceeded

        raise ResourceBudgetExceeded(f"tensor power dimension {m.dim ** d} exceeds budget {budget}")
    act = tensor_power(c, m, d)
    blocks = {}
    for k, mu in enumerate(act.weights):
        blocks.setdefault(mu, []).append(k)
    gens = []
    for i in range(c.n):
        alpha = tuple(c.a[r][i] for r in range(c.n))
        gens.append((act.E[i], alpha))
        gens.append((act.F[i], tuple(-x for x in alpha)))
    g = GradedClosure(blocks, gens, budget=budget)
    dim = g.dimension
    if cross_check:
        plain_gens = list(act.E) + list(act.F)
        plain_gens += [act.K(i) for i in range(c.n)] + [act.K(i, -1) for i in range(c.n)]
        plain, _ = span_closure(plain_gens, act.dim, budget=budget)
        if plain != dim:
            raise AssertionError(f"graded closure {dim} disagrees with plain closure {plain}")
    return dim


# ---------------------------------------------------------------------------
# serialization


def _entry(x):
    if isinstance(x, RationalFunction):
        return x.to_dict()
    x = Fraction(x)
    return str(x)


def rep_dump(rep, extras=True):
    out = {
        "cartan": rep.cartan.to_dict(),
        "pi": [list(w) for w in rep.pi],
        "Wpi": [list(w) for w in rep.wpi],
        "dimension": rep.dim,
        "summand_dimensions": {format_weight(m.highest): m.dim for m in rep.summands},
        "idempotent_ranks": {format_weight(mu): r for mu, r in rep.idempotent_ranks().items()},
        "basis": [{"summand": list(lam), "weight": list(mu), "index": k} for lam, mu, k in rep.labels],
        "coproduct": COPRODUCT,
        "E": [m.triplets(_entry) for m in rep.E],
        "F": [m.triplets(_entry) for m in rep.F],
        "idempotents": {format_weight(mu): sorted(p.rows) for mu, p in sorted(rep.idem.items())},
        "gram": rep.gram.triplets(_entry),
    }
    if extras:
        K, _ = k_elements(rep)
        out["K"] = [m.triplets(_entry) for m in K]
    if rep.v0 is not None:
        out["v0"] = str(rep.v0)
    return out


__all__ = [
    "CellDatum",
    "SchurRep",
    "algebra_dimension",
    "assemble",
    "cell_basis",
    "closure",
    "enveloping_image_dim",
    "expected_dimension",
    "h_elements",
    "iota",
    "k_elements",
    "module_dump",
    "rep_dump",
    "screen_dimension",
    "specialize",
    "specialize_matrices",
    "tamper_k",
    "verify_divided",
    "verify_presentation",
]
