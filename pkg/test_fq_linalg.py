"""
test_fq_linalg.py - Matrizes, RREF, subespaços e enumeração de grupos sobre F_q
"""

import pytest

from conftest import P
from src.config import Settings
from src.errors import BudgetExceededError, MixedFieldError
from src.fields.finite_field import make_field
from src.linalg.fq_linalg import (
    FqMatrix,
    FqVector,
    enumerate_subspaces,
    format_matrix,
    full_space,
    gaussian_binomial,
    parse_matrix,
    rref,
    standard_vector,
    subspace_span,
)
from src.linalg.groups import (
    gl_enumerate,
    gl_generators,
    group_order,
    levi_elements,
    p_lambda_contains,
    p_lambda_elements,
    p_lambda_minus_contains,
    p_lambda_minus_elements,
    p_lambda_order,
    random_invertible,
    u_lambda_elements,
    u_lambda_minus_elements,
    u_lambda_order,
    unitriangular_elements,
)


def test_rref_and_rank(f3):
    m = parse_matrix(f3, "1,2,0;2,1,0;0,0,1")
    reduced, rank = rref(m)
    assert rank == 2
    assert format_matrix(reduced) == "1,2,0;0,0,1;0,0,0"
    assert m.rank() == 2
    assert not m.is_invertible()


def test_inverse(f4, rng):
    for _ in range(10):
        g = random_invertible(3, f4, rng)
        assert (g @ g.inverse()).is_identity()
        assert (g.inverse() @ g).is_identity()
    with pytest.raises(ValueError):
        FqMatrix.zeros(f4, 2, 2).inverse()


def test_matrix_vector_consistency(f3, rng):
    g = random_invertible(3, f3, rng)
    h = random_invertible(3, f3, rng)
    v = FqVector(f3, [1, 2, 0])
    assert (g @ h).apply(v) == g.apply(h.apply(v))
    assert g.solve(g.apply(v)) == v
    assert (g + (-g)) == FqMatrix.zeros(f3, 3, 3)


def test_elementary_and_diagonal(f4):
    e = FqMatrix.elementary(f4, 2, 0, 1, 3)
    assert format_matrix(e) == "1,3;0,1"
    d = FqMatrix.diagonal(f4, [2, 3])
    assert (d @ d.inverse()).is_identity()


def test_mixed_field_matrices(f2, f3):
    with pytest.raises(MixedFieldError):
        FqMatrix.identity(f2, 2) @ FqMatrix.identity(f3, 2)


def test_parse_matrix_errors(f2):
    with pytest.raises(ValueError):
        parse_matrix(f2, "1,0;1")
    with pytest.raises(ValueError):
        parse_matrix(f2, "2,0;0,1")


def test_subspace_canonical_form(f3):
    a = subspace_span([FqVector(f3, [1, 1, 0]), FqVector(f3, [0, 1, 1])])
    b = subspace_span([FqVector(f3, [1, 0, 2]), FqVector(f3, [0, 2, 2])])
    assert a.dim == 2
    assert a == b
    assert a.contains(FqVector(f3, [1, 2, 1]))
    assert not a.contains(standard_vector(f3, 3, 0))
    assert full_space(f3, 3).contains_subspace(a)


def test_subspace_transform(f2, rng):
    line = subspace_span([standard_vector(f2, 3, 0)])
    g = random_invertible(3, f2, rng)
    image = line.transform(g)
    assert image == subspace_span([g.column(0)])


@pytest.mark.parametrize("q,e,d", [(2, 3, 1), (2, 3, 2), (3, 3, 1), (2, 4, 2), (4, 2, 1)])
def test_subspace_counts(q, e, d):
    field = make_field(q)
    subs = enumerate_subspaces(d, full_space(field, e))
    assert len(subs) == gaussian_binomial(e, d, q)
    assert len(set(subs)) == len(subs)
    assert [s.key() for s in subs] == sorted(s.key() for s in subs)


def test_group_orders():
    assert group_order(2, 2) == 6
    assert group_order(3, 2) == 168
    assert group_order(2, 3) == 48


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_gl_enumerate_counts(n, q):
    field = make_field(q)
    elements = list(gl_enumerate(n, field))
    assert len(elements) == group_order(n, q)
    assert len(set(elements)) == len(elements)
    assert all(g.is_invertible() for g in elements)


def test_gl_enumerate_budget(f2):
    with pytest.raises(BudgetExceededError):
        list(gl_enumerate(3, f2, budget=100))


def test_u_lambda(f2):
    lam = P(2, 1)
    elements = list(u_lambda_elements(lam, f2))
    assert len(elements) == u_lambda_order(lam, 2) == 4
    assert all(p_lambda_contains(u, lam) for u in elements)
    assert len(list(unitriangular_elements(3, f2))) == 8


def _is_upper(g):
    return all(g.entry(i, j) == 0 for i in range(g.rows) for j in range(i))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_borel_and_unitriangular_exhaustive(n, f2):
    """P_{(1^n)} = triangulares superiores invertíveis; U_{(1^n)} = unitriangulares."""
    lam = P(*([1] * n))
    group = list(gl_enumerate(n, f2))
    borel = {g for g in group if _is_upper(g)}
    unitriangular = {g for g in borel if all(g.entry(i, i) == 1 for i in range(n))}
    assert {g for g in group if p_lambda_contains(g, lam)} == borel
    assert set(p_lambda_elements(lam, f2)) == borel
    assert set(u_lambda_elements(lam, f2)) == unitriangular
    assert set(unitriangular_elements(n, f2)) == unitriangular


@pytest.mark.parametrize("lam", [P(2, 1), P(1, 1, 1), P(2, 2)])
def test_u_lambda_minus_is_transpose(lam, f2):
    upper = list(u_lambda_elements(lam, f2))
    lower = list(u_lambda_minus_elements(lam, f2))
    assert lower == [u.transpose() for u in upper]
    assert len(set(lower)) == u_lambda_order(lam, 2)
    assert all(p_lambda_minus_contains(v, lam) for v in lower)


def test_parabolic_enumeration(f2):
    lam = P(2, 1)
    elements = list(p_lambda_elements(lam, f2))
    assert len(elements) == p_lambda_order(lam, 2) == 24
    assert len(set(elements)) == len(elements)
    assert all(p_lambda_contains(g, lam) for g in elements)
    assert len(list(levi_elements(lam, f2))) == 6
    members = {g for g in gl_enumerate(3, f2) if p_lambda_contains(g, lam)}
    assert members == set(elements)


def test_parabolic_minus_enumeration(f2):
    lam = P(2, 1)
    elements = list(p_lambda_minus_elements(lam, f2))
    upper = set(p_lambda_elements(lam, f2))
    assert all(p_lambda_minus_contains(g, lam) for g in elements)
    assert {g.transpose() for g in elements} == upper


def test_parabolic_contains_shape_error(f2):
    with pytest.raises(ValueError):
        p_lambda_contains(FqMatrix.zeros(f2, 2, 3), P(2, 1))


def test_generators_generate(f4):
    """O fecho dos geradores de GL_2(F_4) é o grupo todo (180 elementos)."""
    gens = gl_generators(2, f4)
    seen = {FqMatrix.identity(f4, 2)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s @ g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    assert len(seen) == group_order(2, 4) == 180


def test_default_element_budget_covers_gl4_f3():
    assert group_order(4, 3) == 24_261_120
    assert Settings().budget_elements >= group_order(4, 3)
