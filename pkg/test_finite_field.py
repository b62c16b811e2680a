"""
test_finite_field.py - Corpos F_q, módulo irredutível e traço absoluto
"""

import itertools

import pytest

from src.errors import MixedFieldError
from src.fields.finite_field import (
    FqScalar,
    absolute_trace,
    format_scalar,
    is_irreducible,
    make_field,
    parse_scalar,
    prime_power,
)


@pytest.mark.parametrize("q,modulus", [
    (4, (1, 1, 1)),        # x^2 + x + 1
    (8, (1, 1, 0, 1)),     # x^3 + x + 1
    (9, (1, 0, 1)),        # x^2 + 1
    (16, (1, 1, 0, 0, 1)), # x^4 + x + 1
])
def test_smallest_irreducible_modulus(q, modulus):
    assert make_field(q).modulus == modulus


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    for bad in (1, 6, 12):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_make_field_bounds_and_registry():
    with pytest.raises(ValueError):
        make_field(6)
    with pytest.raises(ValueError):
        make_field(32)
    assert make_field(32, max_order=32).q == 32
    assert make_field(4) is make_field(4)


def test_is_irreducible():
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)   # (x+1)^2
    assert not is_irreducible((2, 0, 1), 3)   # x^2 - 1


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_field_axioms(q):
    field = make_field(q)
    elements = list(field.elements())
    one = field.scalar(1)
    zero = field.scalar(0)
    for a in elements:
        assert a + zero == a
        assert a + (-a) == zero
        if not a.is_zero():
            assert a * a.inverse() == one
            assert a ** (q - 1) == one
    for a, b in itertools.product(elements, repeat=2):
        assert a * b == b * a
        assert (a + b) ** field.p == a ** field.p + b ** field.p


def test_inverse_of_zero(f4):
    with pytest.raises(ZeroDivisionError):
        f4.scalar(0).inverse()
    with pytest.raises(ZeroDivisionError):
        f4.scalar(1) / f4.scalar(0)


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9, 16])
def test_trace_is_balanced(q):
    """Tr: F_q → F_p é sobrejetora com fibras de tamanho q/p."""
    field = make_field(q)
    counts = {}
    for a in field.elements():
        t = absolute_trace(a)
        counts[t] = counts.get(t, 0) + 1
    assert counts == {t: q // field.p for t in range(field.p)}


def test_trace_in_f4(f4):
    # 1 + 1 = 0; x + x^2 = x + (x + 1) = 1
    assert f4.scalar(1).trace() == 0
    assert f4.scalar(2).trace() == 1


def test_primitive_element():
    for q in (2, 3, 4, 5, 8, 9):
        field = make_field(q)
        assert field.order(field.primitive) == q - 1


def test_fp_basis():
    assert make_field(9).fp_basis() == (1, 3)
    assert make_field(3).fp_basis() == (1,)


def test_mixed_fields(f2, f3):
    with pytest.raises(MixedFieldError):
        f2.scalar(1) + f3.scalar(1)
    with pytest.raises(ValueError):
        FqScalar(f3, 3)


def test_scalar_text_format(f4):
    a = f4.scalar(3)
    assert format_scalar(a) == "3"
    assert parse_scalar(f4, " 3 ") == a
