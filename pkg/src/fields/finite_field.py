"""
finite_field.py - Aritmética exata em F_q, q = p^k
Unipotent Modules Project - Fase 1

Cada corpo é um quociente explícito F_p[x]/(f) com f mônico irredutível de grau k.
Elementos são codificados como inteiros 0..q-1: os dígitos na base p são os
coeficientes do resíduo (termo constante menos significativo).

LÓGICA:
- As tabelas de soma, produto, oposto, inverso e traço são calculadas uma única vez
  por corpo a partir da aritmética polinomial (q ≤ 16, no máximo 256 entradas).
- Um registro global por q garante que todos os escalares de um mesmo q compartilham
  o mesmo FieldSpec, então misturas de corpos são detectáveis por identidade.
"""

import itertools
import logging
import threading
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from src.config import get_settings
from src.errors import MixedFieldError

logger = logging.getLogger(__name__)


def _digits(value: int, p: int, k: int) -> List[int]:
    """Coeficientes (constante primeiro) da codificação base p."""
    out = []
    for _ in range(k):
        out.append(value % p)
        value //= p
    return out


def _encode(coeffs: Sequence[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + (c % p)
    return value


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    """Produto de a e b em F_p[x]/(modulus); modulus mônico, constante primeiro."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1) if k > 0 else [0]
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduz graus ≥ k usando x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for t in range(k):
                prod[deg - k + t] = (prod[deg - k + t] - c * modulus[t]) % p
    return prod[:k]


def _poly_divides(divisor: Sequence[int], poly: Sequence[int], p: int) -> bool:
    """True se o mônico divisor divide poly em F_p[x]."""
    rem = list(poly)
    d = len(divisor) - 1
    for deg in range(len(rem) - 1, d - 1, -1):
        c = rem[deg]
        if c:
            for t in range(d + 1):
                rem[deg - d + t] = (rem[deg - d + t] - c * divisor[t]) % p
    return not any(rem[:d])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    Teste exaustivo: nenhum mônico de grau 1..k//2 divide o módulo.

    Args:
        modulus: coeficientes (constante primeiro) de um polinômio mônico
        p: característica

    Returns:
        True se irredutível em F_p[x]
    """
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_divides(list(low) + [1], modulus, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Menor mônico irredutível de grau k, ordenado pela codificação base p dos coeficientes baixos."""
    if k == 1:
        return (0, 1)
    for low in range(p ** k):
        modulus = _digits(low, p, k) + [1]
        if is_irreducible(modulus, p):
            return tuple(modulus)
    raise ValueError(f"Nenhum irredutível de grau {k} sobre F_{p}")  # pragma: no cover


class FieldSpec:
    """
    Corpo finito F_q com tabelas de operações.

    Atributos públicos: p, k, q, modulus (constante primeiro), primitive (codificação
    do elemento primitivo em cache) e as tabelas numpy add/mul/neg/inv/trace.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        if k > 1 and not is_irreducible(self.modulus, p):
            raise ValueError(f"Módulo {self.modulus} não é irredutível sobre F_{p}")

        q = self.q
        coeffs = [_digits(a, p, k) for a in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = _encode([(x + y) % p for x, y in zip(coeffs[a], coeffs[b])], p)
                if k == 1:
                    mul[a, b] = (a * b) % p
                else:
                    mul[a, b] = _encode(_poly_mulmod(coeffs[a], coeffs[b], self.modulus, p), p)
        neg = np.array([_encode([(-x) % p for x in coeffs[a]], p) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])

        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        for table in (add, mul, neg, inv):
            table.setflags(write=False)

        self.trace_table = np.array([self._trace(a) for a in range(q)], dtype=np.int64)
        self.trace_table.setflags(write=False)
        self.primitive = self._find_primitive()

    # ------------------------------------------------------------------
    # aritmética sobre codificações inteiras
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Inverso de 0 em F_q")
        return int(self.inv_table[a])

    def power(self, a: int, e: int) -> int:
        """Exponenciação por quadrados; expoentes negativos usam o inverso."""
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _trace(self, a: int) -> int:
        total, x = 0, a
        for _ in range(self.k):
            total = self.add(total, x)
            x = self.power(x, self.p)
        return total

    def _find_primitive(self) -> int:
        for g in range(1, self.q):
            if self.order(g) == self.q - 1:
                return g
        raise ValueError("Grupo multiplicativo sem gerador")  # pragma: no cover

    def order(self, a: int) -> int:
        """Ordem multiplicativa de a ≠ 0."""
        if a == 0:
            raise ZeroDivisionError("0 não tem ordem multiplicativa")
        x, n = a, 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def trace(self, a: int) -> int:
        """Traço absoluto Tr(a) = a + a^p + ... + a^{p^{k-1}}, em 0..p-1."""
        return int(self.trace_table[a])

    # ------------------------------------------------------------------
    def elements(self) -> Iterator["FqScalar"]:
        for a in range(self.q):
            yield FqScalar(self, a)

    def fp_basis(self) -> Tuple[int, ...]:
        """Base 1, x, ..., x^{k-1} de F_q sobre F_p (codificações)."""
        return tuple(self.p ** i for i in range(self.k))

    def scalar(self, value: int) -> "FqScalar":
        return FqScalar(self, value)

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q}, modulus={self.modulus})"


class FqScalar:
    """Elemento de F_q (tipo valor)."""

    __slots__ = ('field', 'value')

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"Codificação {value} fora de 0..{field.q - 1}")
        self.field = field
        self.value = int(value)

    def _check(self, other: "FqScalar") -> None:
        if not isinstance(other, FqScalar):
            raise TypeError(f"Operando não é FqScalar: {other!r}")
        if other.field is not self.field:
            raise MixedFieldError(f"Escalares de F_{self.field.q} e F_{other.field.q} misturados")

    def __add__(self, other):
        self._check(other)
        return FqScalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return FqScalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return FqScalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return FqScalar(self.field, self.field.mul(self.value, self.field.inv(other.value)))

    def __neg__(self):
        return FqScalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FqScalar(self.field, self.field.power(self.value, e))

    def inverse(self) -> "FqScalar":
        return FqScalar(self.field, self.field.inv(self.value))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if not isinstance(other, FqScalar):
            return NotImplemented
        return self.field is other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F{self.field.q}({self.value})"


_REGISTRY = {}
_REGISTRY_LOCK = threading.Lock()


def prime_power(q: int) -> Tuple[int, int]:
    """Decompõe q = p^k; ValueError se q não for potência de primo."""
    if q < 2:
        raise ValueError(f"q = {q} não é potência de primo")
    factors = factorint(q)
    if len(factors) != 1:
        raise ValueError(f"q = {q} não é potência de primo")
    (p, k), = factors.items()
    return int(p), int(k)


def make_field(q: int, max_order: Optional[int] = None) -> FieldSpec:
    """
    Retorna o corpo F_q registrado (criando-o na primeira chamada).

    Args:
        q: ordem do corpo, potência de primo
        max_order: limite superior para q (padrão: settings.max_field_order)

    Returns:
        FieldSpec compartilhado por todas as chamadas com o mesmo q
    """
    bound = max_order if max_order is not None else get_settings().max_field_order
    p, k = prime_power(q)
    if q > bound:
        raise ValueError(f"q = {q} excede o limite configurado ({bound})")
    with _REGISTRY_LOCK:
        field = _REGISTRY.get(q)
        if field is None:
            field = FieldSpec(p, k, smallest_irreducible(p, k))
            _REGISTRY[q] = field
            logger.debug(f"Corpo F_{q} criado com módulo {field.modulus}")
    return field


def absolute_trace(a: FqScalar) -> int:
    """Traço absoluto de a, como inteiro 0..p-1 (elemento do subcorpo primo)."""
    return a.trace()


def format_scalar(a: FqScalar) -> str:
    return str(a.value)


def parse_scalar(field: FieldSpec, text: str) -> FqScalar:
    return FqScalar(field, int(text.strip()))
