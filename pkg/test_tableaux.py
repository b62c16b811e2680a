"""
test_tableaux.py - F_q^n-tableaux, U(T), P(T), X(T), ψ_T e T̄
"""

import itertools

import pytest

from conftest import P
from src.combinatorics.partitions import conjugate
from src.errors import NotInSubgroupError
from src.fields.finite_field import make_field
from src.linalg.fq_linalg import FqMatrix, FqVector, standard_vector
from src.linalg.groups import gl_enumerate, p_lambda_minus_contains, random_invertible
from src.modules.flag_modules import enumerate_flags, flag_of
from src.modules.tableaux import (
    act,
    bar,
    bar_element,
    format_tableau,
    make_tableau,
    p_contains,
    p_elements,
    parse_tableau,
    psi,
    psi_inverse,
    standard_tableau,
    tableau_for_flag,
    u_contains,
    u_elements,
    u_elements_by_spans,
    u_order,
    x_pairs,
)


def test_make_tableau_validation(f2):
    e = [standard_vector(f2, 2, i) for i in range(2)]
    assert make_tableau(P(2), e) == standard_tableau(P(2), f2)
    with pytest.raises(ValueError):
        make_tableau(P(2), e[:1])
    with pytest.raises(ValueError):
        make_tableau(P(2), [e[0], e[0]])


def test_x_pairs_column_major():
    t = standard_tableau(P(4, 2, 2, 1), make_field(3))
    assert x_pairs(t) == {(1, 5), (2, 6), (3, 7), (5, 8), (8, 9)}
    assert x_pairs(standard_tableau(P(1, 1), make_field(2))) == frozenset()


def test_entries_in_column_major_order(f3):
    t = standard_tableau(P(2, 1), f3)
    # coluna 1: v1, v2; coluna 2: v3
    assert t.entry(0, 0) == standard_vector(f3, 3, 0)
    assert t.entry(1, 0) == standard_vector(f3, 3, 1)
    assert t.entry(0, 1) == standard_vector(f3, 3, 2)


def test_u_of_standard_tableau(f2):
    t = standard_tableau(P(2), f2)
    elements = set(u_elements(t))
    assert elements == {FqMatrix.identity(f2, 2), FqMatrix.elementary(f2, 2, 0, 1, 1)}
    assert u_order(t) == 2
    assert u_order(standard_tableau(P(1, 1), f2)) == 1


@pytest.mark.parametrize("shape", [P(3), P(2, 1), P(1, 1, 1)])
def test_u_conjugation_matches_span_conditions(shape, f2, rng):
    t = act(random_invertible(3, f2, rng), standard_tableau(shape, f2))
    by_conjugation = set(u_elements(t))
    assert set(u_elements_by_spans(t)) == by_conjugation
    assert len(by_conjugation) == u_order(t)


def test_u_of_translated_tableau(f3, rng):
    t = standard_tableau(P(2, 1), f3)
    g = random_invertible(3, f3, rng)
    g_inv = g.inverse()
    assert set(u_elements(act(g, t))) == {g @ u @ g_inv for u in u_elements(t)}


def test_p_of_standard_tableau(f2):
    shape = P(2, 1)
    t = standard_tableau(shape, f2)
    for g in gl_enumerate(3, f2):
        assert p_contains(g, t) == p_lambda_minus_contains(g, conjugate(shape))


def test_p_contains_excludes_right_moving_element(f2):
    t = standard_tableau(P(2), f2)
    assert not p_contains(FqMatrix.elementary(f2, 2, 0, 1, 1), t)
    assert p_contains(FqMatrix.elementary(f2, 2, 1, 0, 1), t)


def test_p_elements_match_membership(f2, rng):
    t = act(random_invertible(3, f2, rng), standard_tableau(P(2, 1), f2))
    elements = set(p_elements(t))
    assert elements == {g for g in gl_enumerate(3, f2) if p_contains(g, t)}
    assert all(u_contains(u, t) for u in u_elements(t))


def test_psi_values(f2, k2):
    t = standard_tableau(P(2), f2)
    assert psi(t, FqMatrix.identity(f2, 2), k2) == 1
    assert psi(t, FqMatrix.elementary(f2, 2, 0, 1, 1), k2) == -1


def test_psi_is_a_homomorphism(f3, k3, rng):
    t = act(random_invertible(3, f3, rng), standard_tableau(P(2, 1), f3))
    elements = list(u_elements(t))
    for u1, u2 in itertools.product(elements, repeat=2):
        assert psi(t, u1 @ u2, k3) == psi(t, u1, k3) * psi(t, u2, k3)
    for u in elements:
        assert psi_inverse(t, u, k3) == psi(t, u.inverse(), k3)


def test_psi_rejects_outside_u(f2, k2):
    t = standard_tableau(P(2), f2)
    with pytest.raises(NotInSubgroupError):
        psi(t, FqMatrix.elementary(f2, 2, 1, 0, 1), k2)


def test_bar_in_characteristic_two(f2):
    t = standard_tableau(P(2, 1), f2)
    assert bar(t) == t


def test_bar_sign_pattern(f3):
    t = standard_tableau(P(4, 2, 2, 1), f3)
    minus = f3.neg(1)
    signs = [minus] * 4 + [1] * 3 + [minus] + [1]
    assert bar(t).basis == FqMatrix.diagonal(f3, signs)
    assert bar(bar(t)) == t


def test_bar_properties(f3, k3, rng):
    t = act(random_invertible(3, f3, rng), standard_tableau(P(2, 1), f3))
    t_bar = bar(t)
    assert set(u_elements(t_bar)) == set(u_elements(t))
    p = bar_element(t)
    assert p_contains(p, t)
    assert act(p, t) == t_bar
    for u in u_elements(t):
        assert psi(t_bar, u, k3) == psi(t, u.inverse(), k3)


@pytest.mark.parametrize("shape", [P(3), P(2, 1), P(1, 1, 1)])
def test_tableau_for_flag(shape, f2):
    for flag in enumerate_flags(shape, f2):
        t = tableau_for_flag(flag.members, shape)
        assert flag_of(t) == flag


def test_act_and_text_format(f2, rng):
    t = standard_tableau(P(2, 1), f2)
    assert format_tableau(t) == "2,1 | 1,0,0; 0,1,0; 0,0,1"
    assert parse_tableau(f2, "2,1 | 1,0,0; 0,1,0; 0,0,1") == t
    g = random_invertible(3, f2, rng)
    assert act(g, t).basis == g
    with pytest.raises(ValueError):
        act(FqMatrix.identity(f2, 2), t)
    with pytest.raises(ValueError):
        parse_tableau(f2, "2,1 1,0,0")
    with pytest.raises(ValueError):
        make_tableau(P(2), [FqVector(f2, [1, 0, 0]), FqVector(f2, [0, 1, 0])])
