"""Relation families checked on explicit matrices, and the report type.

Every check compares two exact matrices and records the first differing
entry on failure.  Scalars are produced through a coefficient field object
(``ExactField`` or ``SpecializedField``) so the same families serve the
quantum case, the classical case (v = 1) and other specializations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import SparseMatrix
from .qarith import ExactField, LaurentPoly, qbinom_d, qfactorial_d, qint_d
from .weyl import add, format_weight, scale, sub


@dataclass
class CheckItem:
    relation: str
    params: dict
    passed: bool
    defect: tuple | None = None  # ((row, col), lhs entry, rhs entry)

    def line(self):
        ps = " ".join(f"{k}={_fmt_param(v)}" for k, v in self.params.items())
        head = f"{'PASS' if self.passed else 'FAIL'} {self.relation}" + (f" {ps}" if ps else "")
        if self.passed:
            return head
        (r, c), a, b = self.defect
        return f"{head} defect at ({r},{c}): lhs={a} rhs={b}"


def _fmt_param(v):
    if isinstance(v, tuple):
        return "(" + format_weight(v) + ")"
    return str(v)


@dataclass
class VerificationReport:
    suite: str
    items: list = field(default_factory=list)

    @property
    def passed(self):
        return all(it.passed for it in self.items)

    def failures(self):
        return [it for it in self.items if not it.passed]

    def check(self, relation, params, lhs, rhs):
        diff = lhs.first_difference(rhs)
        self.items.append(CheckItem(relation, dict(params), diff is None, diff))
        return diff is None

    def check_true(self, relation, params, ok, note=None):
        self.items.append(CheckItem(relation, dict(params), bool(ok), None if ok else ((0, 0), note, "expected")))
        return bool(ok)

    def extend(self, other):
        self.items.extend(other.items)
        return self

    def counts(self):
        out = {}
        for it in self.items:
            p, f = out.get(it.relation, (0, 0))
            out[it.relation] = (p + it.passed, f + (not it.passed))
        return out

    def lines(self, verbose=False):
        out = []
        if verbose:
            out.extend(f"[{self.suite}] {it.line()}" for it in self.items)
        else:
            for rel, (p, f) in self.counts().items():
                out.append(f"[{self.suite}] {'PASS' if not f else 'FAIL'} {rel}: {p} passed, {f} failed")
            out.extend(f"[{self.suite}] {it.line()}" for it in self.failures())
        return out

    def summary(self):
        n = len(self.items)
        f = len(self.failures())
        return {"suite": self.suite, "checks": n, "failed": f, "passed": f == 0}


# ---------------------------------------------------------------------------
# helpers


def _zero(size):
    return SparseMatrix(size, size)


def _ident(size):
    return SparseMatrix.identity(size)


def _serre_coefficients(c, i, j, fld):
    m = 1 - c.a[i][j]
    return [(s, fld.laurent(qbinom_d(m, s, c.d[i]) * (-1) ** s)) for s in range(m + 1)]


def _powers(x, top):
    out = [_ident(x.nrows)]
    for _ in range(top):
        out.append(x @ out[-1])
    return out


def check_serre(rep, c, X, name, fld):
    """sum_s (-1)^s [1-a_ij choose s]_i X_i^{1-a_ij-s} X_j X_i^s = 0 for i != j."""
    size = X[0].nrows if X else 0
    for i in range(c.n):
        for j in range(c.n):
            if i == j:
                continue
            m = 1 - c.a[i][j]
            pw = _powers(X[i], m)
            total = _zero(size)
            for s, coef in _serre_coefficients(c, i, j, fld):
                total = total + (pw[m - s] @ X[j] @ pw[s]).scale(coef)
            rep.check(name, {"i": i + 1, "j": j + 1}, total, _zero(size))


def check_u_relations(rep, c, E, F, K, Kinv, fld=None):
    """Relations of the quantized enveloping algebra on matrices E, F, K, K^-1."""
    fld = fld or ExactField()
    n = c.n
    size = E[0].nrows if n else 0
    ident = _ident(size)
    for i in range(n):
        for j in range(n):
            rep.check("K-commute", {"i": i + 1, "j": j + 1}, K[i] @ K[j], K[j] @ K[i])
        rep.check("K-inverse", {"i": i + 1}, K[i] @ Kinv[i], ident)
        rep.check("K-inverse-left", {"i": i + 1}, Kinv[i] @ K[i], ident)
    for i in range(n):
        di = c.d[i]
        denom = fld.vpow(di) - fld.vpow(-di)
        for j in range(n):
            lhs = E[i] @ F[j] - F[j] @ E[i]
            rhs = (K[i] - Kinv[i]).scale(1 / denom) if i == j else _zero(size)
            rep.check("EF-commutator-K", {"i": i + 1, "j": j + 1}, lhs, rhs)
            q = fld.vpow(di * c.a[i][j])
            qi = fld.vpow(-di * c.a[i][j])
            rep.check("KE-conjugation", {"i": i + 1, "j": j + 1}, K[i] @ E[j], (E[j] @ K[i]).scale(q))
            rep.check("KF-conjugation", {"i": i + 1, "j": j + 1}, K[i] @ F[j], (F[j] @ K[i]).scale(qi))
    check_serre(rep, c, E, "serre-E", fld)
    check_serre(rep, c, F, "serre-F", fld)
    return rep


def _idem(idem, mu, size):
    m = idem.get(mu)
    return m if m is not None else _zero(size)


def check_s_relations(rep, c, E, F, idem, wpi, fld=None):
    """Defining relations of the generalized q-Schur algebra on matrices.

    ``idem`` maps each weight of ``wpi`` to its projector; weights outside
    ``wpi`` have zero idempotent.  With a classical field the q-integers
    specialize to ordinary integers.
    """
    fld = fld or ExactField()
    n = c.n
    size = E[0].nrows if n else next(iter(idem.values())).nrows
    alphas = [tuple(c.a[r][i] for r in range(n)) for i in range(n)]
    total = _zero(size)
    for lam in wpi:
        for mu in wpi:
            rhs = idem[lam] if lam == mu else _zero(size)
            rep.check("idem-product", {"lam": lam, "mu": mu}, idem[lam] @ idem[mu], rhs)
        total = total + idem[lam]
    rep.check("idem-sum", {}, total, _ident(size))
    for i in range(n):
        for j in range(n):
            lhs = E[i] @ F[j] - F[j] @ E[i]
            rhs = _zero(size)
            if i == j:
                for lam in wpi:
                    q = qint_d(lam[i], c.d[i])
                    if q:
                        rhs = rhs + idem[lam].scale(fld.laurent(q))
            rep.check("EF-commutator", {"i": i + 1, "j": j + 1}, lhs, rhs)
    for i in range(n):
        a = alphas[i]
        for lam in wpi:
            p = {"i": i + 1, "lam": lam}
            rep.check("E-idem", p, E[i] @ idem[lam], _idem(idem, add(lam, a), size) @ E[i])
            rep.check("F-idem", p, F[i] @ idem[lam], _idem(idem, sub(lam, a), size) @ F[i])
            rep.check("idem-E", p, idem[lam] @ E[i], E[i] @ _idem(idem, sub(lam, a), size))
            rep.check("idem-F", p, idem[lam] @ F[i], F[i] @ _idem(idem, add(lam, a), size))
    check_serre(rep, c, E, "serre-E", fld)
    check_serre(rep, c, F, "serre-F", fld)
    return rep


def _poly_in(x, roots, size):
    """prod_r (x - r)."""
    out = _ident(size)
    ident = _ident(size)
    for r in roots:
        out = (x - ident.scale(r)) @ out if r else x @ out
    return out


def check_toral(rep, c, H, idem, wpi, eigen, name):
    """Idempotent recovery from the toral elements and their minimal polynomials.

    ``eigen(i, mu)`` is the scalar by which ``H[i]`` acts on the mu weight
    space (v_i^{mu_i} for K_i, mu_i for h_i).
    """
    n = c.n
    size = H[0].nrows if n else next(iter(idem.values())).nrows
    for lam in wpi:
        prod = _ident(size)
        for i in range(n):
            roots = [eigen(i, mu) for mu in wpi if mu[i] != lam[i]]
            prod = prod @ _poly_in(H[i], roots, size)
        diff = None
        # the product must be a nonzero scalar multiple of i_lam
        pos = next(iter(idem[lam].items()), None)
        if pos is None:
            rep.check_true(f"idempotent-from-{name}", {"lam": lam}, False, "empty projector")
            continue
        (r, _), _ = pos
        scalar = prod[r, r]
        ok = bool(scalar)
        if ok:
            diff = prod.first_difference(idem[lam].scale(scalar))
            ok = diff is None
        rep.items.append(CheckItem(f"idempotent-from-{name}", {"lam": lam}, ok,
                                   None if ok else (diff[0] if diff else (r, r), scalar, "nonzero multiple")))
    for i in range(n):
        roots = [eigen(i, mu) for mu in wpi]
        rep.check(f"{name}-minimal-polynomial", {"i": i + 1}, _poly_in(H[i], roots, size), _zero(size))


def string_length(wpi, lam, alpha):
    """Number of steps in the maximal alpha-string through lam inside wpi."""
    members = set(wpi)
    lo = lam
    while sub(lo, alpha) in members:
        lo = sub(lo, alpha)
    steps = 0
    cur = lo
    while add(cur, alpha) in members:
        cur = add(cur, alpha)
        steps += 1
    return steps


def nilpotency_bound(c, wpi, i):
    alpha = tuple(c.a[r][i] for r in range(c.n))
    return 1 + max((string_length(wpi, lam, alpha) for lam in wpi), default=0)


def check_nilpotent(rep, c, E, F, wpi, names=("E", "F")):
    for i in range(c.n):
        m = nilpotency_bound(c, wpi, i)
        size = E[i].nrows
        for X, nm in ((E[i], names[0]), (F[i], names[1])):
            rep.check(f"nilpotent-{nm}", {"i": i + 1, "m": m}, X ** m, _zero(size))


def check_classical_u_relations(rep, c, e, f, h):
    """Enveloping-algebra relations on e_i, f_i, h_i."""
    n = c.n
    size = e[0].nrows if n else 0
    from .qarith import SpecializedField

    one = SpecializedField(1)
    for i in range(n):
        for j in range(n):
            p = {"i": i + 1, "j": j + 1}
            rep.check("h-commute", p, h[i] @ h[j], h[j] @ h[i])
            rep.check("ef-commutator-h", p, e[i] @ f[j] - f[j] @ e[i], h[i] if i == j else _zero(size))
            rep.check("he-commutator", p, h[i] @ e[j] - e[j] @ h[i], e[j].scale(c.a[i][j]))
            rep.check("hf-commutator", p, h[i] @ f[j] - f[j] @ h[i], f[j].scale(-c.a[i][j]))
    check_serre(rep, c, e, "serre-e", one)
    check_serre(rep, c, f, "serre-f", one)
    return rep


def divided_powers(c, X, i, top, fld):
    """X^(a) = X^a / [a]_i! for a = 0..top."""
    pw = _powers(X, top)
    return [pw[a].scale(1 / fld.laurent(qfactorial_d(a, c.d[i]))) for a in range(top + 1)]


def check_divided_relations(rep, c, E, F, idem, wpi, abound, fld=None):
    """Relations of the integral form on divided powers, 0 <= a, b <= abound."""
    fld = fld or ExactField()
    n = c.n
    size = E[0].nrows if n else next(iter(idem.values())).nrows
    ident = _ident(size)
    zero = _zero(size)
    alphas = [tuple(c.a[r][i] for r in range(n)) for i in range(n)]
    top = 2 * abound
    Ed = [divided_powers(c, E[i], i, top, fld) for i in range(n)]
    Fd = [divided_powers(c, F[i], i, top, fld) for i in range(n)]

    total = zero
    for lam in wpi:
        for mu in wpi:
            rep.check("div-idem-product", {"lam": lam, "mu": mu}, idem[lam] @ idem[mu],
                      idem[lam] if lam == mu else zero)
        total = total + idem[lam]
    rep.check("div-idem-sum", {}, total, ident)

    for i in range(n):
        di = c.d[i]
        rep.check("div-unit", {"i": i + 1}, Ed[i][0], ident)
        rep.check("div-unit", {"i": i + 1, "f": 1}, Fd[i][0], ident)
        for a in range(abound + 1):
            for b in range(abound + 1):
                coef = fld.laurent(qbinom_d(a + b, a, di))
                p = {"i": i + 1, "a": a, "b": b}
                rep.check("div-E-product", p, Ed[i][a] @ Ed[i][b], Ed[i][a + b].scale(coef))
                rep.check("div-F-product", p, Fd[i][a] @ Fd[i][b], Fd[i][a + b].scale(coef))

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for a in range(abound + 1):
                for b in range(abound + 1):
                    rep.check("div-EF-commute", {"i": i + 1, "j": j + 1, "a": a, "b": b},
                              Ed[i][a] @ Fd[j][b], Fd[j][b] @ Ed[i][a])

    straighten = sorted(set(wpi) | {tuple(-x for x in w) for w in wpi})
    for i in range(n):
        di = c.d[i]
        al = alphas[i]
        for lam in straighten:
            for a in range(abound + 1):
                for b in range(abound + 1):
                    p = {"i": i + 1, "lam": lam, "a": a, "b": b}
                    k = a + b - lam[i]
                    # E^(a) i_{-lam} F^(b)
                    nu = tuple(-x for x in lam)
                    lhs = Ed[i][a] @ _idem(idem, nu, size) @ Fd[i][b]
                    rhs = zero
                    for t in range(min(a, b) + 1):
                        coef = qbinom_d(k, t, di)
                        if not coef:
                            continue
                        w = add(nu, scale(a + b - t, al))
                        term = Fd[i][b - t] @ _idem(idem, w, size) @ Ed[i][a - t]
                        rhs = rhs + term.scale(fld.laurent(coef))
                    rep.check("div-E-idem-F", p, lhs, rhs)
                    lhs = Fd[i][b] @ _idem(idem, lam, size) @ Ed[i][a]
                    rhs = zero
                    for t in range(min(a, b) + 1):
                        coef = qbinom_d(k, t, di)
                        if not coef:
                            continue
                        w = sub(lam, scale(a + b - t, al))
                        term = Ed[i][a - t] @ _idem(idem, w, size) @ Fd[i][b - t]
                        rhs = rhs + term.scale(fld.laurent(coef))
                    rep.check("div-F-idem-E", p, lhs, rhs)
        for lam in wpi:
            for a in range(abound + 1):
                p = {"i": i + 1, "lam": lam, "a": a}
                up, down = add(lam, scale(a, al)), sub(lam, scale(a, al))
                rep.check("div-E-idem", p, Ed[i][a] @ idem[lam], _idem(idem, up, size) @ Ed[i][a])
                rep.check("div-F-idem", p, Fd[i][a] @ idem[lam], _idem(idem, down, size) @ Fd[i][a])
                rep.check("div-idem-E", p, idem[lam] @ Ed[i][a], Ed[i][a] @ _idem(idem, down, size))
                rep.check("div-idem-F", p, idem[lam] @ Fd[i][a], Fd[i][a] @ _idem(idem, up, size))

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = 1 - c.a[i][j]
            Ei = divided_powers(c, E[i], i, m, fld)
            Fi = divided_powers(c, F[i], i, m, fld)
            se, sf = zero, zero
            for s in range(m + 1):
                sign = (-1) ** s
                se = se + (Ei[m - s] @ E[j] @ Ei[s]).scale(sign)
                sf = sf + (Fi[m - s] @ F[j] @ Fi[s]).scale(sign)
            rep.check("div-serre-E", {"i": i + 1, "j": j + 1}, se, zero)
            rep.check("div-serre-F", {"i": i + 1, "j": j + 1}, sf, zero)
    return rep


__all__ = [
    "CheckItem",
    "VerificationReport",
    "check_classical_u_relations",
    "check_divided_relations",
    "check_nilpotent",
    "check_s_relations",
    "check_serre",
    "check_toral",
    "check_u_relations",
    "divided_powers",
    "nilpotency_bound",
    "string_length",
    "LaurentPoly",
]
