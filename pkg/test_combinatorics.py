"""
test_combinatorics.py - Partições, dominância, SSYT e polinômios de Kostka-Foulkes
"""

import pytest

from conftest import P
from src.combinatorics.kostka import IntPolynomial, charge, kostka_number, kostka_polynomial, kostka_table
from src.combinatorics.partitions import (
    Dominance,
    Partition,
    SemistandardTableau,
    conjugate,
    dominance_leq,
    dominates,
    parse_partition,
    partitions_of,
    semistandard_tableaux,
)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])
    assert str(P(4, 3, 1, 1)) == "4,3,1,1"
    assert parse_partition(" 2, 1 ") == P(2, 1)
    assert P(3, 1).partial_sums() == [3, 4]


def test_partitions_of_order():
    assert partitions_of(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]
    assert [len(partitions_of(n)) for n in range(1, 7)] == [1, 2, 3, 5, 7, 11]
    with pytest.raises(ValueError):
        partitions_of(0)


def test_conjugate():
    assert conjugate(P(4, 2, 2, 1)) == P(4, 3, 1, 1)
    assert conjugate(P(3)) == P(1, 1, 1)
    for lam in partitions_of(5):
        assert conjugate(conjugate(lam)) == lam


def test_dominance():
    assert dominance_leq(P(2, 2), P(3, 1)) is Dominance.BELOW_OR_EQUAL
    assert dominance_leq(P(3, 1), P(2, 2)) is Dominance.ABOVE
    assert dominance_leq(P(3, 1, 1, 1), P(2, 2, 2)) is Dominance.INCOMPARABLE
    assert dominance_leq(P(2, 1), P(2, 1)) is Dominance.BELOW_OR_EQUAL
    assert dominates(P(3), P(1, 1, 1))
    with pytest.raises(ValueError):
        dominance_leq(P(2), P(2, 1))


def test_dominance_reverses_under_conjugation():
    shapes = partitions_of(6)
    for lam in shapes:
        for mu in shapes:
            assert dominates(lam, mu) == dominates(conjugate(mu), conjugate(lam))


def test_semistandard_tableau_validation():
    t = SemistandardTableau(P(2, 1), [[1, 2], [3]])
    assert t.reading_word() == [3, 1, 2]
    assert t.content() == {1: 1, 2: 1, 3: 1}
    with pytest.raises(ValueError):
        SemistandardTableau(P(2, 1), [[1, 1], [1]])
    with pytest.raises(ValueError):
        SemistandardTableau(P(2, 1), [[2, 1], [3]])


def test_semistandard_enumeration():
    tableaux = list(semistandard_tableaux(P(2, 1), [1, 1, 1]))
    assert {t.rows for t in tableaux} == {((1, 2), (3,)), ((1, 3), (2,))}
    assert list(semistandard_tableaux(P(1, 1), [2])) == []
    with pytest.raises(ValueError):
        list(semistandard_tableaux(P(2), [1]))


def test_kostka_numbers():
    assert kostka_number(P(2, 1), P(1, 1, 1)) == 2
    assert kostka_number(P(3, 2), P(2, 2, 1)) == 2
    assert kostka_number(P(1, 1), P(2)) == 0
    for lam in partitions_of(5):
        assert kostka_number(P(5), lam) == 1
        assert kostka_number(lam, lam) == 1


def test_kostka_vanishes_outside_dominance():
    shapes = partitions_of(5)
    for mu in shapes:
        for lam in shapes:
            if kostka_number(mu, lam):
                assert dominates(mu, lam)


def test_charge():
    assert charge([1]) == 0
    assert charge([1, 2]) == 1
    assert charge([2, 1]) == 0
    assert charge([2, 1, 3]) == 1
    assert charge([3, 1, 2]) == 2
    # duas subpalavras standard: 2 3 1 e 1
    assert charge([2, 3, 1, 1]) == 1


@pytest.mark.parametrize("mu,lam,expected", [
    (P(2), P(1, 1), IntPolynomial([0, 1])),
    (P(1, 1), P(1, 1), IntPolynomial([1])),
    (P(3), P(2, 1), IntPolynomial([0, 1])),
    (P(2, 1), P(1, 1, 1), IntPolynomial([0, 1, 1])),
    (P(3), P(1, 1, 1), IntPolynomial.monomial(3)),
    (P(2, 2), P(1, 1, 1, 1), IntPolynomial([0, 0, 1, 0, 1])),
    (P(3, 1), P(1, 1, 1, 1), IntPolynomial([0, 0, 0, 1, 1, 1])),
    (P(2, 2), P(2, 1, 1), IntPolynomial([0, 1])),
    (P(4), P(1, 1, 1, 1), IntPolynomial.monomial(6)),
])
def test_kostka_polynomials(mu, lam, expected):
    assert kostka_polynomial(mu, lam) == expected


def test_kostka_polynomial_at_one():
    shapes = partitions_of(5)
    for mu in shapes:
        for lam in shapes:
            assert kostka_polynomial(mu, lam).evaluate(1) == kostka_number(mu, lam)


def test_int_polynomial_format():
    assert str(IntPolynomial([1, 2, 0, 1])) == "1 + 2*t + t^3"
    assert str(IntPolynomial([0, 0])) == "0"
    assert IntPolynomial([1, 1]).evaluate(2) == 3
    assert IntPolynomial([1]) + IntPolynomial([0, 1]) == IntPolynomial([1, 1])
    assert IntPolynomial([1]) == 1


def test_kostka_tables_n2():
    table = kostka_table(2)
    assert list(table.index) == ["2", "1,1"]
    assert list(table.columns) == ["2", "1,1"]
    assert table.values.tolist() == [[1, 1], [0, 1]]
    graded = kostka_table(2, graded=True)
    assert graded.values.tolist() == [["1", "t"], ["0", "1"]]


def test_kostka_size_mismatch():
    with pytest.raises(ValueError):
        kostka_number(P(2), P(1, 1, 1))
    with pytest.raises(ValueError):
        kostka_polynomial(P(3), P(1))
