"""
flag_modules.py - O módulo de permutação M^λ, os vetores m_T e e_T, o operador k_T,
o submódulo S^λ, a forma bilinear e dim D^λ
Unipotent Modules Project - Fase 3

m_T é representado pela sua flag canônica (a órbita P(T)·T corresponde a uma flag),
nunca como soma formal sobre P(T).

FILOSOFIA:
- Bases de S^λ são escalonadas e totalmente reduzidas em relação à ordem das flags
  (lexicográfica nas entradas RREF concatenadas); pivôs iguais a 1.
- O fechamento sob geradores é em largura e tem um único escritor (a SpanBasis).
"""

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from src.combinatorics.partitions import Partition, conjugate
from src.config import get_settings
from src.errors import CoefficientGrowthError, OutsideSpanError, check_budget
from src.fields.coeff_field import (
    CoeffFieldSpec,
    KMatrix,
    KScalar,
    format_kscalar,
    kernel_over_k,
    rank_over_k,
)
from src.fields.finite_field import FieldSpec
from src.linalg.fq_linalg import FqMatrix, Subspace, enumerate_subspaces, full_space
from src.linalg.groups import gl_generators, group_order, p_lambda_order
from src.modules.tableaux import (
    FqTableau,
    act,
    psi_inverse,
    standard_tableau,
    u_elements,
)

logger = logging.getLogger(__name__)

Dense = Dict[int, KScalar]


# ======================================================================
# FLAGS
# ======================================================================
class Flag:
    """Cadeia V_1 = F_q^n ⊃ V_2 ⊃ ... ⊃ V_m, V_c = espaço das colunas ≥ c."""

    __slots__ = ('members', '_key', '_hash')

    def __init__(self, members: Sequence[Subspace]):
        self.members = tuple(members)
        self._key = tuple(x for v in self.members for x in v.key())
        self._hash = hash(self._key)

    def key(self) -> Tuple[int, ...]:
        return self._key

    def dims(self) -> Tuple[int, ...]:
        return tuple(v.dim for v in self.members)

    def transform(self, g: FqMatrix) -> "Flag":
        return Flag((self.members[0],) + tuple(v.transform(g) for v in self.members[1:]))

    def is_fixed_by(self, g: FqMatrix) -> bool:
        return all(v.transform(g) == v for v in self.members[1:])

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Flag") -> bool:
        return self._key < other._key

    def __repr__(self):
        return f"Flag({' ⊃ '.join(repr(v) for v in self.members)})"


def flag_dimensions(shape: Partition) -> List[int]:
    """dim V_c = Σ_{c' ≥ c} λ'_{c'}."""
    heights = conjugate(shape).parts
    return [sum(heights[c:]) for c in range(len(heights))]


def flag_of(tableau: FqTableau) -> Flag:
    """Flag canônica de T: invariante da órbita P(T)·T."""
    width = tableau.shape.part(0)
    return Flag(tableau.column_span_from(c) for c in range(width))


def flag_count(shape: Partition, q: int) -> int:
    """|flags| = [G : P_{λ'}]."""
    return group_order(shape.n, q) // p_lambda_order(conjugate(shape), q)


def enumerate_flags(shape: Partition, field: FieldSpec, budget: Optional[int] = None) -> List[Flag]:
    """
    Todas as flags do tipo λ, cada uma uma vez, ordenadas pela chave RREF.

    Raises:
        BudgetExceededError: se [G : P_{λ'}] exceder o orçamento de flags
    """
    limit = budget if budget is not None else get_settings().budget_flags
    expected = flag_count(shape, field.q)
    check_budget(f"flags de M^{shape}", expected, limit)
    dims = flag_dimensions(shape)
    top = full_space(field, shape.n)

    def extend(chain: Tuple[Subspace, ...]) -> Iterator[Tuple[Subspace, ...]]:
        if len(chain) == len(dims):
            yield chain
            return
        for sub in enumerate_subspaces(dims[len(chain)], chain[-1]):
            yield from extend(chain + (sub,))

    flags = sorted(Flag(chain) for chain in extend((top,)))
    if len(flags) != expected:
        raise ArithmeticError(f"Esperadas {expected} flags, encontradas {len(flags)}")  # pragma: no cover
    return flags


# ======================================================================
# VETORES DE M^λ
# ======================================================================
class MVector:
    """Função de suporte finito flags → K, sem zeros guardados."""

    __slots__ = ('shape', 'coeff', 'terms')

    def __init__(self, shape: Partition, coeff: CoeffFieldSpec, terms: Optional[Dict[Flag, KScalar]] = None):
        self.shape = shape
        self.coeff = coeff
        self.terms = {f: c for f, c in (terms or {}).items() if c}

    @classmethod
    def basis_vector(cls, shape: Partition, coeff: CoeffFieldSpec, flag: Flag) -> "MVector":
        return cls(shape, coeff, {flag: coeff.one})

    def _accumulate(self, pairs: Iterable[Tuple[Flag, KScalar]]) -> "MVector":
        terms = dict(self.terms)
        for f, c in pairs:
            terms[f] = terms[f] + c if f in terms else c
        return MVector(self.shape, self.coeff, terms)

    def __add__(self, other: "MVector") -> "MVector":
        if other.shape != self.shape:
            raise ValueError(f"Vetores de M^{self.shape} e M^{other.shape}")
        return self._accumulate(other.terms.items())

    def __neg__(self) -> "MVector":
        return MVector(self.shape, self.coeff, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other: "MVector") -> "MVector":
        return self + (-other)

    def scale(self, alpha: KScalar) -> "MVector":
        return MVector(self.shape, self.coeff, {f: alpha * c for f, c in self.terms.items()})

    def act(self, g: FqMatrix) -> "MVector":
        """g·v (ação por permutação das flags)."""
        return MVector(self.shape, self.coeff)._accumulate((f.transform(g), c) for f, c in self.terms.items())

    def inner(self, other: "MVector") -> KScalar:
        """[v, w] = Σ_F v(F)·w(F) (forma bilinear, flags ortonormais)."""
        total = self.coeff.zero
        small, large = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for f, c in small.terms.items():
            d = large.terms.get(f)
            if d is not None:
                total = total + c * d
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def is_multiple_of(self, other: "MVector") -> bool:
        """self ∈ K·other."""
        if self.is_zero():
            return True
        if other.is_zero():
            return False
        pivot = min(other.terms)
        ratio = self.terms.get(pivot, self.coeff.zero) / other.terms[pivot]
        return (self - other.scale(ratio)).is_zero()

    def __eq__(self, other):
        if not isinstance(other, MVector):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __repr__(self):
        return f"MVector[{self.shape}]({len(self.terms)} termos)"


def m_vector(tableau: FqTableau, coeff: CoeffFieldSpec) -> MVector:
    """m_T: o vetor indicador da flag de T."""
    return MVector.basis_vector(tableau.shape, coeff, flag_of(tableau))


def e_vector(tableau: FqTableau, coeff: CoeffFieldSpec, budget: Optional[int] = None) -> MVector:
    """e_T = Σ_{u∈U(T)} ψ_T(u^{-1})·m_{uT}."""
    pairs = ((flag_of(act(u, tableau)), psi_inverse(tableau, u, coeff))
             for u in u_elements(tableau, budget))
    return MVector(tableau.shape, coeff)._accumulate(pairs)


def k_apply(tableau: FqTableau, v: MVector, budget: Optional[int] = None) -> MVector:
    """k_T·v = Σ_{u∈U(T)} ψ_T(u^{-1})·(u·v); v pode ter qualquer formato μ ⊢ n."""
    if v.shape.n != tableau.n:
        raise ValueError(f"Formatos incompatíveis: |{v.shape}| ≠ {tableau.n}")
    result = MVector(v.shape, v.coeff)
    pairs = []
    for u in u_elements(tableau, budget):
        weight = psi_inverse(tableau, u, v.coeff)
        pairs.extend((f.transform(u), weight * c) for f, c in v.terms.items())
    return result._accumulate(pairs)


# ======================================================================
# M^λ COMO ESPAÇO INDEXADO
# ======================================================================
class PermutationModule:
    """
    M^λ: lista ordenada de flags, índice flag → posição e permutações em cache
    para os geradores de GL_n.
    """

    def __init__(self, shape: Partition, field: FieldSpec, coeff: CoeffFieldSpec,
                 budget_flags: Optional[int] = None):
        self.shape = shape
        self.field = field
        self.coeff = coeff
        self.flags = enumerate_flags(shape, field, budget_flags)
        self.index = {f: i for i, f in enumerate(self.flags)}
        self.generators = gl_generators(shape.n, field)
        self._generator_perms: Dict[int, List[int]] = {}
        logger.debug(f"M^{shape} sobre F_{field.q}: {len(self.flags)} flags")

    @property
    def dim(self) -> int:
        return len(self.flags)

    def act_index(self, g: FqMatrix, i: int) -> int:
        return self.index[self.flags[i].transform(g)]

    def generator_permutation(self, k: int) -> List[int]:
        perm = self._generator_perms.get(k)
        if perm is None:
            g = self.generators[k]
            perm = [self.act_index(g, i) for i in range(self.dim)]
            self._generator_perms[k] = perm
        return perm

    def act_dense(self, g: FqMatrix, v: Dense) -> Dense:
        return {self.act_index(g, i): c for i, c in v.items()}

    def act_generator(self, k: int, v: Dense) -> Dense:
        perm = self.generator_permutation(k)
        return {perm[i]: c for i, c in v.items()}

    def to_dense(self, v: MVector) -> Dense:
        if v.shape != self.shape:
            raise ValueError(f"Vetor de M^{v.shape} em M^{self.shape}")
        return {self.index[f]: c for f, c in v.terms.items()}

    def from_dense(self, v: Dense) -> MVector:
        return MVector(self.shape, self.coeff, {self.flags[i]: c for i, c in v.items()})

    def dump(self, v: MVector) -> str:
        """Linhas 'flag-id: coeficiente' em ordem de flag."""
        dense = self.to_dense(v)
        return "\n".join(f"{i}: {format_kscalar(dense[i])}" for i in sorted(dense))


def dense_inner(v: Dense, w: Dense, coeff: CoeffFieldSpec) -> KScalar:
    total = coeff.zero
    if len(v) > len(w):
        v, w = w, v
    for i, c in v.items():
        d = w.get(i)
        if d is not None:
            total = total + c * d
    return total


# ======================================================================
# BASES ESCALONADAS
# ======================================================================
class SpanBasis:
    """
    Base escalonada totalmente reduzida: cada linha tem 1 no seu pivô e 0 nos
    pivôs das outras linhas; pivôs estritamente crescentes.
    """

    def __init__(self, module: PermutationModule, max_denominator: Optional[int] = None):
        self.module = module
        self.coeff = module.coeff
        self.rows: List[Dense] = []
        self.pivots: List[int] = []
        self.max_denominator = max_denominator or get_settings().max_denominator

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Dense) -> Dense:
        """v - Σ_j v[p_j]·b_j (zera v em todos os pivôs)."""
        w = dict(v)
        for p, row in zip(self.pivots, self.rows):
            c = v.get(p)
            if c is None:
                continue
            for i, x in row.items():
                y = w.get(i)
                y = -(c * x) if y is None else y - c * x
                if y:
                    w[i] = y
                else:
                    w.pop(i, None)
        return w

    def insert(self, v: Dense) -> Optional[Dense]:
        """Insere v; devolve a nova linha ou None se v já estava no espaço."""
        w = self.reduce(v)
        if not w:
            return None
        pivot = min(w)
        inv = w[pivot].inverse()
        w = {i: c * inv for i, c in w.items()}
        self._check_growth(w)
        for row in self.rows:
            c = row.get(pivot)
            if c is not None:
                for i, x in w.items():
                    y = row.get(i)
                    y = -(c * x) if y is None else y - c * x
                    if y:
                        row[i] = y
                    else:
                        row.pop(i, None)
                self._check_growth(row)
        position = bisect_left(self.pivots, pivot)
        self.pivots.insert(position, pivot)
        self.rows.insert(position, w)
        return w

    def _check_growth(self, row: Dense) -> None:
        if self.coeff.is_modular:
            return
        worst = max((c.max_denominator() for c in row.values()), default=1)
        if worst > self.max_denominator:
            raise CoefficientGrowthError(
                f"Denominador {worst} excede o limite {self.max_denominator} em M^{self.module.shape}"
            )

    def contains(self, v: Dense) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Dense) -> List[KScalar]:
        """Coordenadas de v na base; OutsideSpanError se v não estiver no espaço."""
        if self.reduce(v):
            raise OutsideSpanError(f"Vetor fora do espaço gerado em M^{self.module.shape}")
        zero = self.coeff.zero
        return [v.get(p, zero) for p in self.pivots]

    def vectors(self) -> List[MVector]:
        return [self.module.from_dense(row) for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        """Matriz de coeficientes (linhas = vetores da base, colunas = flag-id)."""
        zero = "0"
        data = [[format_kscalar(row[i]) if i in row else zero for i in range(self.module.dim)]
                for row in self.rows]
        return pd.DataFrame(data, columns=[str(i) for i in range(self.module.dim)])


def close_under_generators(module: PermutationModule, seeds: Iterable[Dense],
                           max_denominator: Optional[int] = None) -> SpanBasis:
    """Submódulo gerado pelos seeds: fechamento em largura sob os geradores de GL_n."""
    basis = SpanBasis(module, max_denominator)
    queue = deque()
    for v in seeds:
        if basis.insert(v) is not None:
            queue.append(v)
    while queue:
        v = queue.popleft()
        for k in range(len(module.generators)):
            w = module.act_generator(k, v)
            if basis.insert(w) is not None:
                queue.append(w)
    return basis


def s_basis(shape: Partition, field: FieldSpec, coeff: CoeffFieldSpec,
            seed: Optional[FqTableau] = None, module: Optional[PermutationModule] = None,
            budget: Optional[int] = None, budget_flags: Optional[int] = None,
            max_denominator: Optional[int] = None) -> SpanBasis:
    """
    Base de S^λ: fecha e_{T₀} sob os geradores até o posto estabilizar.

    Args:
        seed: tableau inicial (padrão: T₀ com a base canônica)
        module: M^λ já construído, para reaproveitar permutações em cache
    """
    module = module or PermutationModule(shape, field, coeff, budget_flags)
    seed = seed or standard_tableau(shape, field)
    start = module.to_dense(e_vector(seed, coeff, budget))
    basis = close_under_generators(module, [start], max_denominator)
    logger.info(f"S^{shape} sobre F_{field.q} ({coeff.label}): dim {basis.rank} em M^{shape} de dim {module.dim}")
    return basis


def cyclic_submodule(module: PermutationModule, x: MVector,
                     max_denominator: Optional[int] = None) -> SpanBasis:
    """V = espaço gerado pelos G-transladados de x."""
    return close_under_generators(module, [module.to_dense(x)], max_denominator)


# ======================================================================
# FORMA BILINEAR E D^λ
# ======================================================================
@dataclass
class GramResult:
    gram: KMatrix
    rank: int
    radical_dim: int
    radical: List[MVector] = dc_field(default_factory=list)

    @property
    def dim_d(self) -> int:
        """dim D^λ = posto da matriz de Gram."""
        return self.rank


def gram_matrix(basis: SpanBasis) -> KMatrix:
    coeff = basis.coeff
    rows = basis.rows
    return [[dense_inner(a, b, coeff) for b in rows] for a in rows]


def gram_and_radical(basis: SpanBasis) -> GramResult:
    """Gram da base, dimensão do radical S ∩ S^⊥ e dim D^λ."""
    gram = gram_matrix(basis)
    if not gram:
        return GramResult(gram=[], rank=0, radical_dim=0)
    rank = rank_over_k(gram)
    radical = []
    for x in kernel_over_k(gram):
        combo: Dense = {}
        for coeff_x, row in zip(x, basis.rows):
            if not coeff_x:
                continue
            for i, c in row.items():
                y = combo.get(i)
                y = coeff_x * c if y is None else y + coeff_x * c
                if y:
                    combo[i] = y
                else:
                    combo.pop(i, None)
        radical.append(basis.module.from_dense(combo))
    return GramResult(gram=gram, rank=rank, radical_dim=basis.rank - rank, radical=radical)


def submodule_dichotomy(module: PermutationModule, x: MVector, s: SpanBasis) -> str:
    """
    Classifica o submódulo cíclico V gerado por x.

    Returns:
        'contains-S' se S^λ ⊆ V, 'inside-perp' se V ⊆ (S^λ)^⊥, 'neither' caso contrário
    """
    v = cyclic_submodule(module, x)
    if all(v.contains(row) for row in s.rows):
        return 'contains-S'
    coeff = module.coeff
    if all(not dense_inner(a, b, coeff) for a in v.rows for b in s.rows):
        return 'inside-perp'
    return 'neither'
