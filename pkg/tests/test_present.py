from fractions import Fraction

import pytest

from qschur.cartan import builtin_cartan
from qschur.errors import BoundTooSmall, EmptyPi, ResourceBudgetExceeded, Unstabilized
from qschur.present import (
    _key,
    complete,
    confluence_check,
    instantiate_presentation,
    predicted_dimension,
    presentation_dump,
    presented_dimension,
    random_point,
)
from qschur.qarith import RationalFunction, qint_d
from qschur.schur import algebra_dimension, assemble

A1 = builtin_cartan("A", 1)
A2 = builtin_cartan("A", 2)
B2 = builtin_cartan("B", 2)
G2 = builtin_cartan("G", 2)

DESK = [
    (A1, [(1,)], 8),
    (A1, [(0,), (2,)], 10),
    (A1, [(1,), (3,)], 12),
    (A2, [(1, 0)], 8),
    (A2, [(2, 0), (0, 1)], 10),
    (B2, [(0, 1)], 10),
    (G2, [(0, 0), (1, 0)], 12),
]


def test_instantiate_natural_a1():
    p = instantiate_presentation(A1, [(1,)])
    assert p.alphabet == ["i[-1]", "i[1]", "E1", "F1"]
    counts = {}
    for name, _, _ in p.relations:
        counts[name] = counts.get(name, 0) + 1
    assert counts == {"idem-product": 4, "idem-sum": 1, "EF-commutator": 1,
                      "E-idem": 2, "F-idem": 2, "idem-E": 2, "idem-F": 2}
    assert len(p.relations) == 14
    # E i_(1) = i_(3) E = 0: a single-term relation
    rel = next(poly for name, params, poly in p.relations if name == "E-idem" and params["lam"] == (1,))
    assert list(rel) == [(p.E(0), p.idem_symbol((1,)))]


def test_instantiate_shapes():
    p = instantiate_presentation(A1, [(0,), (2,)])
    assert len(p.alphabet) == 5 and p.wpi == ((-2,), (0,), (2,))
    q = instantiate_presentation(A1, [(1,)], classical=True)
    assert [len(x[2]) for x in q.relations] == [len(x[2]) for x in instantiate_presentation(A1, [(1,)]).relations]
    for _, _, poly in q.relations:
        assert all(isinstance(x, Fraction) for x in poly.values())
    g = instantiate_presentation(G2, [(1, 0)])
    assert g.max_degree == 5
    with pytest.raises(EmptyPi):
        instantiate_presentation(A1, [])


def test_commutator_coefficients():
    p = instantiate_presentation(A1, [(0,), (2,)])
    rel = next(poly for name, _, poly in p.relations if name == "EF-commutator")
    assert rel[(p.idem_symbol((2,)),)] == -RationalFunction.from_laurent(qint_d(2, 1))
    assert (p.idem_symbol((0,)),) not in rel


def test_complete_examples():
    rs = complete(instantiate_presentation(A1, [(1,)]), 8)
    assert rs.stabilized and rs.dimension == 4
    rs = complete(instantiate_presentation(A1, [(2,)]), 6)
    assert rs.stabilized and rs.trivial and rs.dimension == 0
    with pytest.raises(BoundTooSmall):
        complete(instantiate_presentation(A2, [(1, 0)]), 2)


def test_rules_are_oriented():
    rs = complete(instantiate_presentation(A2, [(2, 0), (0, 1)]), 10)
    for lead, tail in rs.rules.items():
        for w in tail:
            assert _key(w) < _key(lead)
    for w in rs.normal_words:
        assert rs.is_normal(w)


def test_unstabilized_reported():
    with pytest.raises(Unstabilized) as info:
        complete(instantiate_presentation(A1, [(1,), (3,)]), 3)
    assert info.value.system is not None


def test_rule_budget():
    with pytest.raises(ResourceBudgetExceeded):
        complete(instantiate_presentation(A2, [(2, 0), (0, 1)]), 10, budget=20)


@pytest.mark.parametrize("c,pi,bound", DESK)
def test_oracle_agreement(c, pi, bound):
    rs = complete(instantiate_presentation(c, pi), bound)
    assert rs.dimension == algebra_dimension(assemble(c, pi)) == predicted_dimension(c, pi)
    assert confluence_check(rs, samples=200) == []


@pytest.mark.parametrize("c,pi,bound", DESK)
def test_classical_and_specialized_agree(c, pi, bound):
    exact = presented_dimension(c, pi, degree_bound=bound)
    assert presented_dimension(c, pi, classical=True, degree_bound=bound) == exact
    v0 = random_point(seed=len(pi))
    assert v0 not in (0, 1, -1) and abs(v0.numerator) <= 50 and v0.denominator <= 50
    assert presented_dimension(c, pi, v_eval=v0, degree_bound=bound) == exact


@pytest.mark.parametrize("c,pi,expected", [
    (A1, [(2,)], 0),
    (A1, [(1,), (2,)], 4),
    (A2, [(1, 1)], 0),
    (A2, [(0, 0), (1, 1), (2, 0)], 65),
])
def test_collapse_to_largest_saturated_subset(c, pi, expected):
    assert presented_dimension(c, pi, degree_bound=12) == expected == predicted_dimension(c, pi)


def test_dump_deterministic():
    p = instantiate_presentation(A1, [(0,), (2,)])
    rs = complete(p, 10)
    a = presentation_dump(p, rs)
    b = presentation_dump(instantiate_presentation(A1, [(0,), (2,)]), complete(instantiate_presentation(A1, [(0,), (2,)]), 10))
    assert a == b
    assert any(line.startswith("EF-commutator") and "(+ " in line for line in a)
    assert "normal-words 10" in a
