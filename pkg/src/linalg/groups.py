"""
groups.py - Enumeração de GL_n(F_q) e dos subgrupos P_λ, U_λ, P_λ^-, U_λ^-
Unipotent Modules Project - Fase 2

Os grupos nunca são objetos abstratos: cada subgrupo é um predicado de pertinência
mais um gerador determinístico de elementos.

O tableau de leitura por linhas de formato λ numera as células linha a linha;
o bloco de um índice é a linha da sua célula. Para i, j índices:
- U_λ: g_ii = 1 e g_ij = 0 a menos que i = j ou i esteja estritamente acima de j;
- P_λ: g_ij = 0 se i está estritamente abaixo de j;
- P_λ^-, U_λ^-: transpostos.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

from src.combinatorics.partitions import Partition
from src.config import get_settings
from src.errors import check_budget
from src.fields.finite_field import FieldSpec
from src.linalg.fq_linalg import FqMatrix

logger = logging.getLogger(__name__)


def group_order(n: int, q: int) -> int:
    """|GL_n(F_q)| = Π_{i<n} (q^n - q^i)."""
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


def _budget(budget: Optional[int]) -> int:
    return budget if budget is not None else get_settings().budget_elements


@lru_cache(maxsize=None)
def row_blocks(lam: Partition) -> Tuple[int, ...]:
    """Linha de cada índice no tableau de leitura por linhas."""
    return tuple(r for r, length in enumerate(lam.parts) for _ in range(length))


def _upper_positions(lam: Partition) -> List[Tuple[int, int]]:
    blocks = row_blocks(lam)
    n = len(blocks)
    return [(i, j) for i in range(n) for j in range(n) if blocks[i] < blocks[j]]


def u_lambda_order(lam: Partition, q: int) -> int:
    return q ** len(_upper_positions(lam))


def gl_enumerate(n: int, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """
    Todos os elementos de GL_n(F_q), cada um uma vez.

    LÓGICA: linha a linha; a linha r percorre F_q^n em ordem lexicográfica
    (primeira entrada mais lenta) e é descartada se estiver no espaço gerado pelas
    linhas anteriores.
    """
    q = field.q
    check_budget(f"GL_{n}(F_{q})", group_order(n, q), _budget(budget))
    vectors = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)
    scalars = np.arange(q, dtype=np.int64)

    def extend(rows: List[np.ndarray], span: np.ndarray) -> Iterator[FqMatrix]:
        if len(rows) == n:
            yield FqMatrix(field, np.array(rows, dtype=np.int64).reshape(n, n))
            return
        members = set(map(tuple, span.tolist()))
        for v in vectors:
            if tuple(v.tolist()) in members:
                continue
            multiples = field.mul_table[scalars[:, None], v[None, :]]
            new_span = field.add_table[span[:, None, :], multiples[None, :, :]].reshape(-1, n)
            yield from extend(rows + [v], new_span)

    yield from extend([], np.zeros((1, n), dtype=np.int64))


def u_lambda_elements(lam: Partition, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """Elementos de U_λ; as entradas livres variam em ordem linha a linha."""
    positions = _upper_positions(lam)
    n = lam.n
    check_budget(f"U_{lam}", field.q ** len(positions), _budget(budget))
    for values in itertools.product(range(field.q), repeat=len(positions)):
        m = np.eye(n, dtype=np.int64)
        for (i, j), x in zip(positions, values):
            m[i, j] = x
        yield FqMatrix(field, m)


def u_lambda_minus_elements(lam: Partition, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    for u in u_lambda_elements(lam, field, budget):
        yield u.transpose()


def unitriangular_elements(n: int, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """UT_n(F_q) = U_{(1^n)}."""
    return u_lambda_elements(Partition([1] * n), field, budget)


def _check_shape(g: FqMatrix, lam: Partition) -> None:
    if not g.is_square():
        raise ValueError(f"Matriz não quadrada: {g.shape}")
    if g.rows != lam.n:
        raise ValueError(f"Matriz {g.shape} incompatível com |{lam}| = {lam.n}")


def p_lambda_contains(g: FqMatrix, lam: Partition) -> bool:
    """g ∈ P_λ: invertível e g_ij = 0 quando i está estritamente abaixo de j."""
    _check_shape(g, lam)
    blocks = np.array(row_blocks(lam))
    below = blocks[:, None] > blocks[None, :]
    return not np.any(g.data[below]) and g.is_invertible()


def p_lambda_minus_contains(g: FqMatrix, lam: Partition) -> bool:
    """g ∈ P_λ^- (transposto de P_λ)."""
    _check_shape(g, lam)
    blocks = np.array(row_blocks(lam))
    above = blocks[:, None] < blocks[None, :]
    return not np.any(g.data[above]) and g.is_invertible()


def levi_order(lam: Partition, q: int) -> int:
    order = 1
    for part in lam.parts:
        order *= group_order(part, q)
    return order


def p_lambda_order(lam: Partition, q: int) -> int:
    """|P_λ| = |U_λ| · Π |GL_{λ_i}(F_q)|."""
    return u_lambda_order(lam, q) * levi_order(lam, q)


def levi_elements(lam: Partition, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """Matrizes bloco-diagonais com blocos em GL_{λ_i}(F_q)."""
    check_budget(f"Levi({lam})", levi_order(lam, field.q), _budget(budget))
    blocks = [list(gl_enumerate(part, field, budget)) for part in lam.parts]
    n = lam.n
    offsets = [0] + lam.partial_sums()[:-1]
    for choice in itertools.product(*blocks):
        m = np.zeros((n, n), dtype=np.int64)
        for start, block in zip(offsets, choice):
            size = block.rows
            m[start:start + size, start:start + size] = block.data
        yield FqMatrix(field, m)


def p_lambda_elements(lam: Partition, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """P_λ = Levi(λ) · U_λ, cada elemento uma vez."""
    check_budget(f"P_{lam}", p_lambda_order(lam, field.q), _budget(budget))
    unipotent = list(u_lambda_elements(lam, field, budget))
    for levi in levi_elements(lam, field, budget):
        for u in unipotent:
            yield levi @ u


def p_lambda_minus_elements(lam: Partition, field: FieldSpec, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    for g in p_lambda_elements(lam, field, budget):
        yield g.transpose()


def gl_generators(n: int, field: FieldSpec) -> List[FqMatrix]:
    """{I + αE_ij : i ≠ j, α numa F_p-base de F_q} ∪ {diag(γ, 1, ..., 1)}."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for alpha in field.fp_basis():
                    gens.append(FqMatrix.elementary(field, n, i, j, alpha))
    gens.append(FqMatrix.diagonal(field, [field.primitive] + [1] * (n - 1)))
    return gens


def random_invertible(n: int, field: FieldSpec, rng: np.random.Generator) -> FqMatrix:
    """Elemento aleatório de GL_n(F_q) (amostragem por rejeição)."""
    while True:
        g = FqMatrix(field, rng.integers(0, field.q, size=(n, n)))
        if g.is_invertible():
            return g
