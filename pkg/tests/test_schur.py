from fractions import Fraction

import pytest

from qschur.cartan import builtin_cartan
from qschur.errors import EmptyPi, NotDominant, NotSaturated, PoleAtPoint, ZeroEvaluationPoint
from qschur.hwmodule import freudenthal
from qschur.linalg import SparseMatrix, independent_rows, solve
from qschur.qarith import V, RationalFunction
from qschur.relations import divided_powers, nilpotency_bound
from qschur.qarith import ExactField
from qschur.schur import (
    algebra_dimension,
    assemble,
    cell_basis,
    enveloping_image_dim,
    expected_dimension,
    h_elements,
    iota,
    k_elements,
    rep_dump,
    screen_dimension,
    specialize,
    specialize_matrices,
    tamper_k,
    verify_divided,
    verify_presentation,
)

A1 = builtin_cartan("A", 1)
A2 = builtin_cartan("A", 2)
B2 = builtin_cartan("B", 2)
C2 = builtin_cartan("C", 2)
G2 = builtin_cartan("G", 2)

DESK = [
    (A1, [(1,)]),
    (A1, [(0,), (2,)]),
    (A1, [(1,), (3,)]),
    (A2, [(1, 0)]),
    (A2, [(2, 0), (0, 1)]),
    (B2, [(0, 1)]),
    (C2, [(1, 0)]),
    (G2, [(0, 0), (1, 0)]),
]


def test_assemble_examples():
    r = assemble(A1, [(1,)])
    assert r.dim == 2 and r.idempotent_ranks() == {(-1,): 1, (1,): 1}
    r = assemble(A1, [(0,), (2,)])
    assert r.dim == 4 and r.idempotent_ranks() == {(-2,): 1, (0,): 2, (2,): 1}
    assert assemble(A2, [(0, 0), (1, 0)]).dim == 4


def test_assemble_errors():
    with pytest.raises(NotSaturated):
        assemble(A1, [(2,)])
    with pytest.raises(EmptyPi):
        assemble(A1, [])
    with pytest.raises(NotDominant):
        assemble(A1, [(-1,)])


def test_k_elements_examples():
    K, Kinv = k_elements(assemble(A1, [(1,)]))
    assert [K[0][k, k] for k in range(2)] == [V, 1 / V]
    K, _ = k_elements(assemble(A1, [(0,), (2,)]))
    assert sorted((K[0][k, k] for k in range(4)), key=lambda x: x.shift) == [V ** -2, 1, 1, V ** 2]
    K, _ = k_elements(assemble(A2, [(1, 1), (0, 0)]))
    assert K[0] @ K[1] == K[1] @ K[0]


@pytest.mark.parametrize("c,pi", DESK)
def test_presentation_and_divided(c, pi):
    r = assemble(c, pi)
    rep = verify_presentation(r)
    assert rep.passed, rep.lines()[:10]
    rep = verify_divided(r, 2)
    assert rep.passed, rep.lines()[:10]


def test_tampered_k_reports_defect():
    r = assemble(A1, [(0,), (2,)])
    K, Kinv = k_elements(r)
    rep = verify_presentation(r, K=tamper_k(K), Kinv=Kinv)
    assert not rep.passed
    failed = {it.relation for it in rep.failures()}
    assert "K-inverse" in failed
    item = next(it for it in rep.failures() if it.relation == "K-inverse")
    (row, col), lhs, rhs = item.defect
    assert (row, col) == (0, 0) and lhs != rhs


def test_trivial_rep():
    r = assemble(A1, [(0,)])
    assert not r.E[0] and not r.F[0]
    assert verify_presentation(r).passed
    assert verify_divided(r, 3).passed
    assert algebra_dimension(r) == 1


def test_divided_instance_on_natural_module():
    # F i_(1) E = sum_t [1 choose t] E^(1-t) i_{(1)-(2-t)alpha} F^(1-t)
    r = assemble(A1, [(1,)])
    fld = ExactField()
    Ed = divided_powers(A1, r.E[0], 0, 2, fld)
    Fd = divided_powers(A1, r.F[0], 0, 2, fld)
    zero = SparseMatrix(2, 2)
    lhs = Fd[1] @ r.idem[(1,)] @ Ed[1]
    rhs = Ed[1] @ r.idem.get((-3,), zero) @ Fd[1] + r.idem[(-1,)]
    assert lhs == rhs
    assert verify_divided(r, 3).passed


def test_divided_beyond_nilpotency():
    r = assemble(A1, [(1,)])
    Ed = divided_powers(A1, r.E[0], 0, 4, ExactField())
    assert nilpotency_bound(A1, r.wpi, 0) == 2
    assert not Ed[2] and not Ed[3]


@pytest.mark.parametrize("c,pi,expected", [
    (A1, [(1,)], 4), (A1, [(0,), (2,)], 10), (A2, [(1, 0)], 9), (A1, [(1,), (3,)], 20),
    (B2, [(0, 1)], 16), (A2, [(0, 0), (1, 1)], 65),
])
def test_algebra_dimension(c, pi, expected):
    r = assemble(c, pi)
    assert algebra_dimension(r, cross_check=True) == expected == expected_dimension(r)
    assert screen_dimension(r) == expected


@pytest.mark.parametrize("c,pi", DESK)
def test_rep_invariants(c, pi):
    r = assemble(c, pi)
    ranks = r.idempotent_ranks()
    assert sum(ranks.values()) == r.dim == sum(freudenthal(c, lam).total for lam in pi)
    for mu, k in ranks.items():
        assert k == sum(freudenthal(c, lam).mult.get(mu, 0) for lam in pi)
    for i in range(c.n):
        assert r.gram_inv @ r.E[i].T @ r.gram == r.F[i]


def test_cell_basis_examples():
    r = assemble(A1, [(1,)])
    cells = cell_basis(r)
    assert cells.size == 4 and cells.report.passed
    for (lam, s, t), x in cells.elements.items():
        assert x.nnz() == 1 and x[s, t] == r.gram[t, t]
    r = assemble(A1, [(0,), (2,)])
    cells = cell_basis(r)
    assert cells.size == 10 == algebra_dimension(r)
    for x in list(r.E) + list(r.F):
        assert iota(r, iota(r, x)) == x


@pytest.mark.parametrize("c,pi", DESK)
def test_cell_axioms(c, pi):
    r = assemble(c, pi)
    cells = cell_basis(r)
    assert cells.report.passed, cells.report.lines()[:10]
    names = {it.relation for it in cells.report.items}
    if any(m.dim > 1 for m in r.summands):
        assert "cell-coefficients-independent-of-T" in names


def test_specialize_classical_natural():
    r = assemble(A1, [(1,)])
    sp, rep = specialize(r, 1)
    assert rep.passed
    assert h_elements(sp)[0].to_dense() == [[1, 0], [0, -1]]


@pytest.mark.parametrize("c,pi", DESK)
def test_specialize_classical(c, pi):
    r = assemble(c, pi)
    sp, rep = specialize(r, 1)
    assert rep.passed, rep.lines()[:10]
    assert algebra_dimension(sp) == expected_dimension(r)
    assert all(isinstance(x, Fraction) for m in sp.E for _, x in m.items())


def test_specialize_other_point():
    r = assemble(A2, [(2, 0), (0, 1)])
    sp, rep = specialize(r, Fraction(-2, 3))
    assert rep.passed
    K, _ = k_elements(sp)
    for k, (_, mu, _) in enumerate(sp.labels):
        assert K[0][k, k] == Fraction(-2, 3) ** mu[0]


def test_specialize_errors():
    r = assemble(A1, [(1,)])
    with pytest.raises(ZeroEvaluationPoint):
        specialize(r, 0)
    r.E[0].rows[0][1] = 1 / (V - 2)
    with pytest.raises(PoleAtPoint):
        specialize_matrices(r, 2)


@pytest.mark.parametrize("lam,d,expected", [((2,), 1, 9), ((1,), 1, 4), ((1,), 2, 10), ((1,), 3, 20)])
def test_enveloping_image(lam, d, expected):
    assert enveloping_image_dim(A1, lam, d, cross_check=True) == expected


def test_enveloping_image_a2():
    assert enveloping_image_dim(A2, (1, 0), 2, cross_check=True) == 45


def test_rep_dump_deterministic():
    import json

    a = json.dumps(rep_dump(assemble(B2, [(0, 1)])), sort_keys=True)
    b = json.dumps(rep_dump(assemble(B2, [(0, 1)])), sort_keys=True)
    assert a == b
    d = json.loads(a)
    assert d["dimension"] == 4 and len(d["idempotents"]) == 4


def _express(y, basis):
    """Coordinates of y in the span of basis matrices (exact)."""
    keys = sorted({k for b in basis for k, _ in b.items()} | {k for k, _ in y.items()})
    cols = [{j: b[k] for j, b in enumerate(basis) if b[k]} for k in keys]
    rows, _ = independent_rows(cols)
    assert len(rows) == len(basis)
    a = [[basis[j][keys[r]] for j in range(len(basis))] for r in rows]
    coords = [row[0] for row in solve(a, [[y[keys[r]]] for r in rows])]
    total = SparseMatrix(y.nrows, y.ncols)
    for x, b in zip(coords, basis):
        if x:
            total = total + b.scale(x)
    assert total == y
    return coords


@pytest.mark.parametrize("pi", [[(1,)], [(0,), (2,)], [(1,), (3,)]])
def test_divided_structure_constants_are_laurent(pi):
    r = assemble(A1, pi)
    fld = ExactField()
    top = max(lam[0] for lam in pi)
    Ed = divided_powers(A1, r.E[0], 0, top, fld)
    Fd = divided_powers(A1, r.F[0], 0, top, fld)
    monomials = []
    for lam in r.wpi:
        for a in range(top + 1):
            for b in range(top + 1):
                x = Fd[b] @ r.idem[lam] @ Ed[a]
                if x:
                    monomials.append(x)
    keep, _ = independent_rows([{k: v for k, v in m.items()} for m in monomials])
    basis = [monomials[k] for k in keep]
    assert len(basis) == expected_dimension(r)
    gens = Ed[1:] + Fd[1:] + list(r.idem.values())
    for g in gens:
        for b in basis:
            for x in _express(g @ b, basis):
                assert RationalFunction(x).is_laurent()
