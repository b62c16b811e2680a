"""
fq_linalg.py - Matrizes exatas sobre F_q, escalonamento e subespaços
Unipotent Modules Project - Fase 2

As entradas são codificações inteiras (ver finite_field) guardadas em arrays numpy.
Produtos usam as tabelas do corpo:
- corpo primo: (A @ B) % p;
- característica 2: somas por XOR;
- demais: laço sobre a dimensão interna com add_table.
"""

import itertools
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import MixedFieldError
from src.fields.finite_field import FieldSpec, FqScalar


def _matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if field.k == 1:
        return (a @ b) % field.p
    prods = field.mul_table[a[:, :, None], b[None, :, :]]
    if field.p == 2:
        return np.bitwise_xor.reduce(prods, axis=1)
    acc = prods[:, 0, :]
    for t in range(1, prods.shape[1]):
        acc = field.add_table[acc, prods[:, t, :]]
    return acc


def _rref_array(field: FieldSpec, data: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Escalonamento reduzido com pivôs iguais a 1."""
    m = np.array(data, dtype=np.int64, copy=True)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = field.mul_table[field.inv_table[m[r, c]], m[r]]
        for j in range(rows):
            if j != r and m[j, c]:
                factor = field.neg_table[m[j, c]]
                m[j] = field.add_table[m[j], field.mul_table[factor, m[r]]]
        pivots.append(c)
        r += 1
    return m, pivots


class FqVector:
    """Vetor coluna de F_q^n (tipo valor)."""

    __slots__ = ('field', 'values')

    def __init__(self, field: FieldSpec, values: Sequence[int]):
        self.field = field
        self.values = tuple(int(x) for x in values)

    def __len__(self):
        return len(self.values)

    def __add__(self, other: "FqVector") -> "FqVector":
        _same_field(self.field, other.field)
        return FqVector(self.field, [self.field.add(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "FqVector":
        return FqVector(self.field, [self.field.neg(a) for a in self.values])

    def scale(self, alpha: int) -> "FqVector":
        return FqVector(self.field, [self.field.mul(alpha, a) for a in self.values])

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other):
        return isinstance(other, FqVector) and self.field is other.field and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"FqVector({','.join(str(x) for x in self.values)})"


def standard_vector(field: FieldSpec, n: int, i: int) -> FqVector:
    """e_{i+1} de F_q^n (índice a partir de 0)."""
    return FqVector(field, [1 if j == i else 0 for j in range(n)])


def _same_field(a: FieldSpec, b: FieldSpec) -> None:
    if a is not b:
        raise MixedFieldError(f"Operandos de F_{a.q} e F_{b.q} misturados")


class FqMatrix:
    """
    Matriz imutável sobre F_q.

    A igualdade e o hash usam (forma, bytes das entradas); a ordem de enumeração
    dos grupos é a ordem das entradas linha a linha.
    """

    __slots__ = ('field', 'data', '_key', '_inverse')

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"Matriz deve ser bidimensional, recebido ndim={arr.ndim}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"Entradas fora de 0..{field.q - 1}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr
        self._key = None
        self._inverse = None

    # construtores ------------------------------------------------------
    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FqMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "FqMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def elementary(cls, field: FieldSpec, n: int, i: int, j: int, alpha: int) -> "FqMatrix":
        """I + α E_{ij} (índices a partir de 0)."""
        m = np.eye(n, dtype=np.int64)
        m[i, j] = field.add(int(m[i, j]), alpha)
        return cls(field, m)

    @classmethod
    def diagonal(cls, field: FieldSpec, entries: Sequence[int]) -> "FqMatrix":
        return cls(field, np.diag(np.array(entries, dtype=np.int64)))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[FqVector]) -> "FqMatrix":
        for v in columns:
            _same_field(field, v.field)
        if not columns:
            raise ValueError("Lista de colunas vazia")
        return cls(field, np.array([v.values for v in columns], dtype=np.int64).T)

    # acesso -------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, index: Tuple[int, int]) -> FqScalar:
        return FqScalar(self.field, int(self.data[index]))

    def entry(self, i: int, j: int) -> int:
        return int(self.data[i, j])

    def column(self, j: int) -> FqVector:
        return FqVector(self.field, self.data[:, j])

    def row(self, i: int) -> FqVector:
        return FqVector(self.field, self.data[i, :])

    def key(self) -> Tuple[Tuple[int, int], bytes]:
        if self._key is None:
            self._key = (self.data.shape, self.data.tobytes())
        return self._key

    # aritmética ---------------------------------------------------------
    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        _same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError(f"Dimensões incompatíveis: {self.shape} @ {other.shape}")
        return FqMatrix(self.field, _matmul(self.field, self.data, other.data))

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        _same_field(self.field, other.field)
        return FqMatrix(self.field, self.field.add_table[self.data, other.data])

    def __neg__(self) -> "FqMatrix":
        return FqMatrix(self.field, self.field.neg_table[self.data])

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        return self + (-other)

    def apply(self, v: FqVector) -> FqVector:
        """g·v."""
        _same_field(self.field, v.field)
        if self.cols != len(v):
            raise ValueError(f"Dimensão incompatível: matriz {self.shape}, vetor {len(v)}")
        col = np.array(v.values, dtype=np.int64).reshape(-1, 1)
        return FqVector(self.field, _matmul(self.field, self.data, col)[:, 0])

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.field, self.data.T)

    @property
    def T(self) -> "FqMatrix":
        return self.transpose()

    def rank(self) -> int:
        return len(_rref_array(self.field, self.data)[1])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> "FqMatrix":
        """Inversa via escalonamento de [A | I]; ValueError se singular."""
        if self._inverse is None:
            if not self.is_square():
                raise ValueError(f"Matriz não quadrada: {self.shape}")
            n = self.rows
            aug = np.hstack([self.data, np.eye(n, dtype=np.int64)])
            reduced, pivots = _rref_array(self.field, aug)
            if pivots[:n] != list(range(n)):
                raise ValueError("Matriz singular não tem inversa")
            self._inverse = FqMatrix(self.field, reduced[:, n:])
        return self._inverse

    def solve(self, v: FqVector) -> FqVector:
        """Coordenadas x com A x = v (A invertível)."""
        return self.inverse().apply(v)

    def is_identity(self) -> bool:
        return self.is_square() and np.array_equal(self.data, np.eye(self.rows, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.field is other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FqMatrix[F{self.field.q}]({format_matrix(self)})"


def rref(m: FqMatrix) -> Tuple[FqMatrix, int]:
    """
    Forma escalonada reduzida.

    Returns:
        (matriz escalonada com as mesmas dimensões, posto)
    """
    reduced, pivots = _rref_array(m.field, m.data)
    return FqMatrix(m.field, reduced), len(pivots)


class Subspace:
    """Subespaço de F_q^n representado pela RREF (sem linhas nulas) de uma base em linhas."""

    __slots__ = ('field', 'ambient', 'basis', 'pivots', '_key')

    def __init__(self, field: FieldSpec, ambient: int, rows: np.ndarray):
        reduced, pivots = _rref_array(field, np.array(rows, dtype=np.int64).reshape(-1, ambient))
        self.field = field
        self.ambient = ambient
        self.basis = FqMatrix(field, reduced[:len(pivots)].reshape(len(pivots), ambient))
        self.pivots = tuple(pivots)
        self._key = tuple(int(x) for x in self.basis.data.flatten())

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def key(self) -> Tuple[int, ...]:
        """Entradas concatenadas da RREF (ordem usada para ordenar flags)."""
        return self._key

    def vectors(self) -> List[FqVector]:
        return [self.basis.row(i) for i in range(self.dim)]

    def contains(self, v: FqVector) -> bool:
        _same_field(self.field, v.field)
        if v.is_zero():
            return True
        stacked = np.vstack([self.basis.data, np.array(v.values, dtype=np.int64)])
        return len(_rref_array(self.field, stacked)[1]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def transform(self, g: FqMatrix) -> "Subspace":
        """g·V, com V gerado pelas linhas da base."""
        if self.dim == 0:
            return self
        image = _matmul(self.field, self.basis.data, g.data.T)
        return Subspace(self.field, self.ambient, image)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._key == other._key

    def __hash__(self):
        return hash((self.ambient, self._key))

    def __repr__(self):
        body = ";".join(",".join(str(int(x)) for x in row) for row in self.basis.data)
        return f"Subspace({body or '0'})"


def subspace_span(vectors: Iterable[FqVector], ambient: Optional[int] = None,
                  field: Optional[FieldSpec] = None) -> Subspace:
    """
    Subespaço gerado; representante canônico em RREF.

    Para a lista vazia é preciso informar ambient e field.
    """
    vectors = list(vectors)
    if vectors:
        field = field or vectors[0].field
        ambient = ambient if ambient is not None else len(vectors[0])
        for v in vectors:
            _same_field(field, v.field)
            if len(v) != ambient:
                raise ValueError(f"Vetor de dimensão {len(v)} em F_q^{ambient}")
        rows = np.array([v.values for v in vectors], dtype=np.int64)
    else:
        if ambient is None or field is None:
            raise ValueError("Subespaço vazio requer ambient e field")
        rows = np.zeros((0, ambient), dtype=np.int64)
    return Subspace(field, ambient, rows)


def full_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, np.eye(n, dtype=np.int64))


def rref_patterns(field: FieldSpec, d: int, e: int) -> Iterator[np.ndarray]:
    """
    Todas as matrizes d×e em RREF de posto d (uma por subespaço de dimensão d de F_q^e).

    Cada padrão de pivôs fixa as posições livres: à direita do pivô da linha e fora
    das colunas pivô.
    """
    for pivots in itertools.combinations(range(e), d):
        free = [(r, c) for r in range(d) for c in range(e)
                if c > pivots[r] and c not in pivots]
        for values in itertools.product(range(field.q), repeat=len(free)):
            m = np.zeros((d, e), dtype=np.int64)
            for r, c in enumerate(pivots):
                m[r, c] = 1
            for (r, c), x in zip(free, values):
                m[r, c] = x
            yield m


def enumerate_subspaces(d: int, within: Subspace) -> List[Subspace]:
    """Subespaços de dimensão d contidos em within, em ordem de chave RREF."""
    e = within.dim
    if not 0 <= d <= e:
        raise ValueError(f"Dimensão {d} impossível dentro de um subespaço de dimensão {e}")
    out = []
    for coords in rref_patterns(within.field, d, e):
        rows = _matmul(within.field, coords, within.basis.data)
        out.append(Subspace(within.field, within.ambient, rows))
    return sorted(out, key=Subspace.key)


def gaussian_binomial(e: int, d: int, q: int) -> int:
    """Número de subespaços de dimensão d de F_q^e."""
    if d < 0 or d > e:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (e - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ----------------------------------------------------------------------
# formato texto: linhas separadas por ';', entradas por ','
# ----------------------------------------------------------------------
def format_matrix(m: FqMatrix) -> str:
    return ";".join(",".join(str(int(x)) for x in row) for row in m.data)


def parse_matrix(field: FieldSpec, text: str) -> FqMatrix:
    rows = [[int(x) for x in row.split(",")] for row in text.strip().split(";")]
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"Linhas de tamanhos diferentes em {text!r}")
    return FqMatrix(field, rows)


def format_vector(v: FqVector) -> str:
    return ",".join(str(x) for x in v.values)


def parse_vector(field: FieldSpec, text: str) -> FqVector:
    values = [int(x) for x in text.strip().split(",")]
    if any(not 0 <= x < field.q for x in values):
        raise ValueError(f"Entradas fora de 0..{field.q - 1}: {text!r}")
    return FqVector(field, values)
