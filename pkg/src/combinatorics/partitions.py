"""
partitions.py - Partições, ordem de dominância e tableaux semistandard
Unipotent Modules Project - Fase 1

Convenções:
- partições são guardadas sem zeros finais; part(i) devolve 0 além do comprimento;
- enumerações em ordem lexicográfica decrescente;
- formato texto "4,3,1,1".
"""

from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple


class Partition:
    """Sequência fracamente decrescente de inteiros positivos."""

    __slots__ = ('parts', '_hash')

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"Partes devem ser positivas: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"Partes devem ser fracamente decrescentes: {parts}")
        self.parts = parts
        self._hash = hash(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """λ_i com índice a partir de 0; 0 além do comprimento."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def partial_sums(self) -> List[int]:
        out, total = [], 0
        for x in self.parts:
            total += x
            out.append(total)
        return out

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def __str__(self):
        return ",".join(str(x) for x in self.parts)

    def __repr__(self):
        return f"Partition({self})"


def parse_partition(text: str) -> Partition:
    """'4,3,1,1' → Partition((4,3,1,1))."""
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as e:
        raise ValueError(f"Partição inválida: {text!r}") from e
    if not parts:
        raise ValueError(f"Partição vazia: {text!r}")
    return Partition(parts)


def conjugate(lam: Partition) -> Partition:
    """λ'_i = |{j : λ_j ≥ i}|."""
    if not lam.parts:
        return lam
    return Partition([sum(1 for x in lam.parts if x >= i) for i in range(1, lam.parts[0] + 1)])


class Dominance(Enum):
    BELOW_OR_EQUAL = 'below-or-equal'
    ABOVE = 'above'
    INCOMPARABLE = 'incomparable'


def dominance_leq(mu: Partition, lam: Partition) -> Dominance:
    """
    Compara μ e λ na ordem de dominância.

    Returns:
        BELOW_OR_EQUAL se μ ⪯ λ, ABOVE se λ ≺ μ, INCOMPARABLE caso contrário
    """
    if mu.n != lam.n:
        raise ValueError(f"Tamanhos diferentes: |{mu}| = {mu.n}, |{lam}| = {lam.n}")
    length = max(len(mu), len(lam))
    sm = sl = 0
    mu_le = lam_le = True
    for i in range(length):
        sm += mu.part(i)
        sl += lam.part(i)
        if sm > sl:
            mu_le = False
        if sl > sm:
            lam_le = False
    if mu_le:
        return Dominance.BELOW_OR_EQUAL
    if lam_le:
        return Dominance.ABOVE
    return Dominance.INCOMPARABLE


def dominates(lam: Partition, mu: Partition) -> bool:
    """λ ⪰ μ."""
    return dominance_leq(mu, lam) is Dominance.BELOW_OR_EQUAL


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> List[Partition]:
    """Todas as partições de n em ordem lexicográfica decrescente."""
    if n < 1:
        raise ValueError(f"n deve ser ≥ 1, recebido {n}")
    return [Partition(p) for p in _partitions(n, n)]


# ----------------------------------------------------------------------
# tableaux semistandard
# ----------------------------------------------------------------------
class SemistandardTableau:
    """Preenchimento com linhas fracamente crescentes e colunas estritamente crescentes."""

    __slots__ = ('shape', 'rows')

    def __init__(self, shape: Partition, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(r) for r in rows)
        if tuple(len(r) for r in rows) != shape.parts:
            raise ValueError(f"Linhas {rows} não têm o formato {shape}")
        for r in rows:
            if any(r[c] > r[c + 1] for c in range(len(r) - 1)):
                raise ValueError(f"Linha não é fracamente crescente: {r}")
        for i in range(len(rows) - 1):
            if any(rows[i][c] >= rows[i + 1][c] for c in range(len(rows[i + 1]))):
                raise ValueError(f"Coluna não é estritamente crescente em {rows}")
        self.shape = shape
        self.rows = rows

    def content(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for r in self.rows:
            for x in r:
                counts[x] = counts.get(x, 0) + 1
        return counts

    def reading_word(self) -> List[int]:
        """Linhas da esquerda para a direita, da última linha para a primeira."""
        word: List[int] = []
        for r in reversed(self.rows):
            word.extend(r)
        return word

    def __eq__(self, other):
        return isinstance(other, SemistandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SSYT({self.rows})"


def _horizontal_strips(inner: Tuple[int, ...], outer: Tuple[int, ...], size: int) -> Iterator[Tuple[int, ...]]:
    """Formas ν com inner ⊆ ν ⊆ outer, ν/inner faixa horizontal de tamanho size."""
    rows = len(outer)
    inner = inner + (0,) * (rows - len(inner))

    def extend(i: int, remaining: int, acc: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if i == rows:
            if remaining == 0:
                yield acc
            return
        # faixa horizontal: ν_i ≤ inner_{i-1}
        upper = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for new in range(min(upper, inner[i] + remaining), inner[i] - 1, -1):
            yield from extend(i + 1, remaining - (new - inner[i]), acc + (new,))

    yield from extend(0, size, ())


def semistandard_tableaux(shape: Partition, content: Sequence[int]) -> Iterator[SemistandardTableau]:
    """
    Enumera SSYT de formato shape e conteúdo content (content[i] cópias de i+1).

    LÓGICA: as entradas i = 1, 2, ... são colocadas uma de cada vez como faixas
    horizontais, o que garante as condições de linha e coluna por construção.
    """
    if sum(content) != shape.n:
        raise ValueError(f"Conteúdo {tuple(content)} não soma |{shape}| = {shape.n}")
    outer = shape.parts

    def fill(letter: int, current: Tuple[int, ...], layers: Tuple[Tuple[int, ...], ...]):
        if letter == len(content):
            if current[:len(outer)] == outer:
                yield layers
            return
        for nxt in _horizontal_strips(current, outer, content[letter]):
            yield from fill(letter + 1, nxt, layers + (nxt,))

    for layers in fill(0, (0,) * len(outer), ()):
        rows = [[] for _ in outer]
        previous = (0,) * len(outer)
        for letter, layer in enumerate(layers, start=1):
            for r in range(len(outer)):
                rows[r].extend([letter] * (layer[r] - previous[r]))
            previous = layer
        yield SemistandardTableau(shape, rows)
