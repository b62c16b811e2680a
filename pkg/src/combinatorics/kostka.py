"""
kostka.py - Números e polinômios de Kostka
Unipotent Modules Project - Fase 1

K_{μλ} conta os SSYT de formato μ e conteúdo λ; K_{μλ}(t) os gradua pela carga
(charge) da palavra de leitura.

CONVENÇÃO DA CARGA (congelada):
- palavra de leitura: linhas da esquerda para a direita, da última para a primeira;
- palavra standard: o 1 recebe índice 0; r+1 recebe índice(r)+1 se estiver à
  direita de r, senão o mesmo índice;
- palavras com repetição: extrai-se subpalavras standard varrendo da esquerda
  (primeiro 1, depois o primeiro 2 à sua direita, voltando ao início se preciso, ...)
  e soma-se a carga de cada subpalavra.
"""

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import pandas as pd

from src.combinatorics.partitions import Partition, partitions_of, semistandard_tableaux


class IntPolynomial:
    """Polinômio em t com coeficientes inteiros; índice = potência."""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients: Sequence[int] = ()):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * power + [coeff])

    def evaluate(self, t: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * t + c
        return value

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        length = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (length - len(self.coefficients))
        b = other.coefficients + (0,) * (length - len(other.coefficients))
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            var = "t" if power == 1 else f"t^{power}"
            terms.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"IntPolynomial({self})"


def _standard_charge(positions: Sequence[int]) -> int:
    """Carga da subpalavra standard; positions[r] = posição da letra r+1."""
    index = total = 0
    for r in range(1, len(positions)):
        if positions[r] > positions[r - 1]:
            index += 1
        total += index
    return total


def charge(word: Sequence[int]) -> int:
    """
    Carga de uma palavra de peso partição (#1 ≥ #2 ≥ ...).

    Args:
        word: letras 1..m

    Returns:
        soma das cargas das subpalavras standard extraídas
    """
    remaining = list(range(len(word)))
    total = 0
    while remaining:
        letters = [word[i] for i in remaining]
        top = max(letters)
        positions: List[int] = []
        chosen: List[int] = []
        start = 0
        for letter in range(1, top + 1):
            slots = [k for k in range(len(remaining)) if letters[k] == letter]
            if not slots:
                break
            after = [k for k in slots if k >= start]
            k = after[0] if after else slots[0]
            chosen.append(k)
            positions.append(remaining[k])
            start = k
        total += _standard_charge(positions)
        taken = set(chosen)
        remaining = [i for k, i in enumerate(remaining) if k not in taken]
    return total


def _check_sizes(mu: Partition, lam: Partition) -> None:
    if mu.n != lam.n:
        raise ValueError(f"Tamanhos diferentes: |{mu}| = {mu.n}, |{lam}| = {lam.n}")


@lru_cache(maxsize=None)
def kostka_number(mu: Partition, lam: Partition) -> int:
    """Número de SSYT de formato μ e conteúdo λ (enumeração exaustiva)."""
    _check_sizes(mu, lam)
    return sum(1 for _ in semistandard_tableaux(mu, lam.parts))


@lru_cache(maxsize=None)
def kostka_polynomial(mu: Partition, lam: Partition) -> IntPolynomial:
    """K_{μλ}(t) = Σ_{SSYT T de formato μ, conteúdo λ} t^{charge(T)}."""
    _check_sizes(mu, lam)
    counts: Dict[int, int] = {}
    for tableau in semistandard_tableaux(mu, lam.parts):
        c = charge(tableau.reading_word())
        counts[c] = counts.get(c, 0) + 1
    if not counts:
        return IntPolynomial()
    return IntPolynomial([counts.get(i, 0) for i in range(max(counts) + 1)])


def kostka_table(n: int, graded: bool = False) -> pd.DataFrame:
    """Matriz [K_{μλ}] (ou [K_{μλ}(t)] como texto) com linhas μ e colunas λ."""
    shapes = partitions_of(n)
    data: List[List] = []
    for mu in shapes:
        if graded:
            data.append([str(kostka_polynomial(mu, lam)) for lam in shapes])
        else:
            data.append([kostka_number(mu, lam) for lam in shapes])
    labels: Tuple[str, ...] = tuple(str(s) for s in shapes)
    return pd.DataFrame(data, index=list(labels), columns=list(labels))
