"""
tableaux.py - F_q^n-tableaux e os subgrupos U(T), P(T)
Unipotent Modules Project - Fase 3

Um F_q^n-tableau de formato λ preenche o diagrama de Young com uma base de F_q^n.
As entradas são numeradas de cima para baixo e depois da esquerda para a direita
(ordem por colunas); a matriz A guarda v_1, ..., v_n como colunas.

LÓGICA:
- U(T): g·v_i - v_i no espaço gerado pelas entradas estritamente à esquerda de v_i;
  para a base padrão U(T) = U_{λ'}, em geral U(T) = A·U_{λ'}·A^{-1}.
- P(T): g·v_i no espaço gerado pelas entradas em colunas ≥ coluna de v_i;
  para a base padrão P(T) = P_{λ'}^-, em geral P(T) = A·P_{λ'}^-·A^{-1}.
- X(T): pares (i, j) com v_i imediatamente à esquerda de v_j.
- ψ_T(u) = θ(Σ_{(i,j)∈X(T)} c_ij(u)), c_ij(u) a coordenada de u·v_j em v_i.
"""

from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.combinatorics.partitions import Partition, conjugate, parse_partition
from src.errors import NotInSubgroupError
from src.fields.coeff_field import CoeffFieldSpec, KScalar, theta
from src.fields.finite_field import FieldSpec, FqScalar
from src.linalg.fq_linalg import (
    FqMatrix,
    FqVector,
    Subspace,
    format_vector,
    parse_vector,
    subspace_span,
)
from src.linalg.groups import gl_enumerate, p_lambda_minus_elements, u_lambda_elements

XPairs = FrozenSet[Tuple[int, int]]


@lru_cache(maxsize=None)
def cell_positions(shape: Partition) -> Tuple[Tuple[int, int], ...]:
    """(linha, coluna) de cada índice na numeração por colunas."""
    lam_conj = conjugate(shape)
    return tuple((r, c) for c, height in enumerate(lam_conj.parts) for r in range(height))


@lru_cache(maxsize=None)
def column_of(shape: Partition) -> Tuple[int, ...]:
    return tuple(c for _, c in cell_positions(shape))


@lru_cache(maxsize=None)
def _x_pairs0(shape: Partition) -> Tuple[Tuple[int, int], ...]:
    index = {cell: i for i, cell in enumerate(cell_positions(shape))}
    pairs = []
    for (r, c), i in index.items():
        j = index.get((r, c + 1))
        if j is not None:
            pairs.append((i, j))
    return tuple(sorted(pairs))


class FqTableau:
    """Tableau imutável; igualdade entrada a entrada."""

    __slots__ = ('shape', 'field', 'basis', '_suffix', '_prefix')

    def __init__(self, shape: Partition, basis: FqMatrix):
        if basis.shape != (shape.n, shape.n):
            raise ValueError(f"Base {basis.shape} incompatível com |{shape}| = {shape.n}")
        if not basis.is_invertible():
            raise ValueError("Entradas do tableau são linearmente dependentes")
        self.shape = shape
        self.field = basis.field
        self.basis = basis
        self._suffix: Optional[List[Subspace]] = None
        self._prefix: Optional[List[Subspace]] = None

    @property
    def n(self) -> int:
        return self.shape.n

    def vectors(self) -> List[FqVector]:
        return [self.basis.column(i) for i in range(self.n)]

    def entry(self, row: int, col: int) -> FqVector:
        return self.basis.column(cell_positions(self.shape).index((row, col)))

    def column_span_from(self, c: int) -> Subspace:
        """Espaço gerado pelas entradas nas colunas ≥ c."""
        if self._suffix is None:
            cols = column_of(self.shape)
            width = self.shape.part(0)
            vecs = self.vectors()
            self._suffix = [
                subspace_span([v for v, cc in zip(vecs, cols) if cc >= k], self.n, self.field)
                for k in range(width)
            ]
        return self._suffix[c]

    def column_span_before(self, c: int) -> Subspace:
        """Espaço gerado pelas entradas nas colunas < c."""
        if self._prefix is None:
            cols = column_of(self.shape)
            width = self.shape.part(0)
            vecs = self.vectors()
            self._prefix = [
                subspace_span([v for v, cc in zip(vecs, cols) if cc < k], self.n, self.field)
                for k in range(width)
            ]
        return self._prefix[c]

    def __eq__(self, other):
        if not isinstance(other, FqTableau):
            return NotImplemented
        return self.shape == other.shape and self.basis == other.basis

    def __hash__(self):
        return hash((self.shape, self.basis.key()))

    def __repr__(self):
        return f"FqTableau({format_tableau(self)})"


def make_tableau(shape: Partition, vectors: Sequence[FqVector]) -> FqTableau:
    """
    Coloca os vetores nas células na numeração por colunas.

    Raises:
        ValueError: número errado de vetores ou vetores dependentes
    """
    if len(vectors) != shape.n:
        raise ValueError(f"Esperados {shape.n} vetores para o formato {shape}, recebidos {len(vectors)}")
    if any(len(v) != shape.n for v in vectors):
        raise ValueError(f"Vetores devem estar em F_q^{shape.n}")
    return FqTableau(shape, FqMatrix.from_columns(vectors[0].field, list(vectors)))


def standard_tableau(shape: Partition, field: FieldSpec) -> FqTableau:
    """T₀: base padrão e_1, ..., e_n na numeração por colunas."""
    return FqTableau(shape, FqMatrix.identity(field, shape.n))


def act(g: FqMatrix, tableau: FqTableau) -> FqTableau:
    """g·T, entrada a entrada."""
    if g.shape != (tableau.n, tableau.n):
        raise ValueError(f"Matriz {g.shape} incompatível com tableau de F_q^{tableau.n}")
    return FqTableau(tableau.shape, g @ tableau.basis)


def x_pairs(tableau: FqTableau) -> XPairs:
    """X(T) com índices a partir de 1."""
    return frozenset((i + 1, j + 1) for i, j in _x_pairs0(tableau.shape))


def u_elements(tableau: FqTableau, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """U(T) = A·U_{λ'}·A^{-1}, na ordem de U_{λ'}."""
    a = tableau.basis
    a_inv = a.inverse()
    for u in u_lambda_elements(conjugate(tableau.shape), tableau.field, budget):
        yield a @ u @ a_inv


def u_order(tableau: FqTableau) -> int:
    """|U(T)| = q^m, m = número de pares (i, j) com coluna(i) < coluna(j)."""
    cols = column_of(tableau.shape)
    m = sum(1 for ci in cols for cj in cols if ci < cj)
    return tableau.field.q ** m


def u_contains(g: FqMatrix, tableau: FqTableau) -> bool:
    """Pertinência a U(T) pelas condições de span (validação cruzada da conjugação)."""
    if g.shape != (tableau.n, tableau.n) or not g.is_invertible():
        return False
    cols = column_of(tableau.shape)
    for i, v in enumerate(tableau.vectors()):
        image = g.apply(v) + (-v)
        if not tableau.column_span_before(cols[i]).contains(image):
            return False
    return True


def u_elements_by_spans(tableau: FqTableau, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """U(T) por filtragem de GL_n pelas condições de span (lento; só para validação)."""
    for g in gl_enumerate(tableau.n, tableau.field, budget):
        if u_contains(g, tableau):
            yield g


def p_contains(g: FqMatrix, tableau: FqTableau) -> bool:
    """g ∈ P(T): g·v_i no espaço das colunas ≥ coluna(v_i), para todo i."""
    if g.shape != (tableau.n, tableau.n) or not g.is_invertible():
        return False
    cols = column_of(tableau.shape)
    for i, v in enumerate(tableau.vectors()):
        if not tableau.column_span_from(cols[i]).contains(g.apply(v)):
            return False
    return True


def p_elements(tableau: FqTableau, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """P(T) = A·P_{λ'}^-·A^{-1}."""
    a = tableau.basis
    a_inv = a.inverse()
    for p in p_lambda_minus_elements(conjugate(tableau.shape), tableau.field, budget):
        yield a @ p @ a_inv


def coordinates(tableau: FqTableau, g: FqMatrix) -> FqMatrix:
    """Matriz c = A^{-1}·g·A das coordenadas de g·v_j na base B(T)."""
    return tableau.basis.inverse() @ g @ tableau.basis


def x_sum(tableau: FqTableau, u: FqMatrix) -> FqScalar:
    """Σ_{(i,j)∈X(T)} c_ij(u), verificando u ∈ U(T)."""
    c = coordinates(tableau, u)
    cols = np.array(column_of(tableau.shape))
    allowed = (cols[:, None] < cols[None, :]) | np.eye(tableau.n, dtype=bool)
    if np.any(c.data[~allowed]) or np.any(np.diag(c.data) != 1):
        raise NotInSubgroupError("u não pertence a U(T)")
    field = tableau.field
    total = 0
    for i, j in _x_pairs0(tableau.shape):
        total = field.add(total, c.entry(i, j))
    return FqScalar(field, total)


def psi(tableau: FqTableau, u: FqMatrix, coeff: CoeffFieldSpec) -> KScalar:
    """ψ_T(u) = θ(Σ_{(i,j)∈X(T)} c_ij(u))."""
    return theta(x_sum(tableau, u), coeff)


def psi_inverse(tableau: FqTableau, u: FqMatrix, coeff: CoeffFieldSpec) -> KScalar:
    """ψ_T(u^{-1}) = θ(-s); o X-somatório de u^{-1} é o oposto do de u."""
    return theta(-x_sum(tableau, u), coeff)


def _odd_column_signs(tableau: FqTableau) -> List[int]:
    field = tableau.field
    minus_one = field.neg(1)
    # colunas ímpares contando a partir de 1 = índices pares
    return [minus_one if c % 2 == 0 else 1 for c in column_of(tableau.shape)]


def bar(tableau: FqTableau) -> FqTableau:
    """T̄: v_i ↦ -v_i nas colunas ímpares."""
    signs = FqMatrix.diagonal(tableau.field, _odd_column_signs(tableau))
    return FqTableau(tableau.shape, tableau.basis @ signs)


def bar_element(tableau: FqTableau) -> FqMatrix:
    """p ∈ P(T) com p·T = T̄ (matriz de sinais por coluna conjugada por A)."""
    signs = FqMatrix.diagonal(tableau.field, _odd_column_signs(tableau))
    return tableau.basis @ signs @ tableau.basis.inverse()


def tableau_for_flag(members: Sequence[Subspace], shape: Partition) -> FqTableau:
    """
    Tableau adaptado a uma flag V_1 ⊃ V_2 ⊃ ... ⊃ V_m.

    As entradas da coluna c completam uma base de V_{c+1} até uma base de V_c,
    escolhidas entre as linhas da RREF de V_c.
    """
    heights = conjugate(shape).parts
    if len(members) != len(heights):
        raise ValueError(f"Flag com {len(members)} membros para formato {shape}")
    field = members[0].field
    n = shape.n
    columns: Dict[int, List[FqVector]] = {}
    chosen: List[FqVector] = []
    for c in range(len(heights) - 1, -1, -1):
        new: List[FqVector] = []
        for v in members[c].vectors():
            current = subspace_span(chosen + new, n, field)
            if not current.contains(v):
                new.append(v)
        if len(new) != heights[c]:
            raise ValueError(f"Dimensões da flag não correspondem ao formato {shape}")
        columns[c] = new
        chosen = chosen + new
    ordered = [v for c in range(len(heights)) for v in columns[c]]
    return make_tableau(shape, ordered)


# ----------------------------------------------------------------------
# formato texto: "forma | v1; v2; ...; vn" (ordem por colunas)
# ----------------------------------------------------------------------
def format_tableau(tableau: FqTableau) -> str:
    return f"{tableau.shape} | " + "; ".join(format_vector(v) for v in tableau.vectors())


def parse_tableau(field: FieldSpec, text: str) -> FqTableau:
    try:
        shape_text, body = text.split("|")
    except ValueError as e:
        raise ValueError(f"Tableau inválido: {text!r}") from e
    shape = parse_partition(shape_text)
    vectors = [parse_vector(field, chunk) for chunk in body.split(";")]
    return make_tableau(shape, vectors)
