"""
characters.py - Caracteres de S^λ, produtos internos e multiplicidades
Unipotent Modules Project - Fase 4

Todas as multiplicidades usam reciprocidade de Frobenius (soma sobre o subgrupo):
- parabólica:   |P_λ|^{-1} Σ_{g∈P_λ} χ^μ(g)                  = K_{μ'λ}
- Gelfand-Graev generalizado: |U(T)|^{-1} Σ_u ψ_T(u^{-1}) χ^μ(u) = K_{μλ}(q)
- Gelfand-Graev degenerado:   |UT_n|^{-1} Σ_u φ_λ(u^{-1}) χ^μ(u) = K_{μλ}
- módulo de permutação:       |G|^{-1} Σ_g χ_{M^λ}(g) χ^μ(g^{-1}) = K_{μ'λ'}

O produto interno usa g ↦ g^{-1} no segundo argumento em vez de conjugação complexa.
Classes de conjugação não são implementadas.

LÓGICA DO TRAÇO:
- a base de S^λ é escalonada e totalmente reduzida, então a coordenada de w ∈ S^λ na
  linha i é w[pivô_i];
- logo χ(g) = Σ_i (g·b_i)[pivô_i] = Σ_i b_i[g^{-1}·F_i], com F_i a flag pivô da linha i.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from src.characters.cache import CharacterStore
from src.combinatorics.partitions import Partition, partitions_of
from src.config import get_settings
from src.fields.coeff_field import CoeffFieldSpec, KMatrix, KScalar, theta
from src.fields.finite_field import FieldSpec, FqScalar
from src.linalg.fq_linalg import FqMatrix
from src.linalg.groups import (
    gl_enumerate,
    group_order,
    p_lambda_elements,
    p_lambda_order,
    unitriangular_elements,
)
from src.modules.flag_modules import (
    GramResult,
    PermutationModule,
    SpanBasis,
    gram_and_radical,
    s_basis,
)
from src.modules.tableaux import psi_inverse, standard_tableau, u_elements, u_order

logger = logging.getLogger(__name__)


class ClassFunctionSample:
    """Função de classe dada por um provedor de valores, com cache por elemento."""

    def __init__(self, tag: str, provider: Callable[[FqMatrix], KScalar]):
        self.tag = tag
        self._provider = provider
        self._values: Dict[tuple, KScalar] = {}

    def value(self, g: FqMatrix) -> KScalar:
        key = g.key()
        cached = self._values.get(key)
        if cached is None:
            cached = self._provider(g)
            self._values[key] = cached
        return cached

    __call__ = value

    def __repr__(self):
        return f"ClassFunctionSample({self.tag})"


class UnipotentContext:
    """
    Estado compartilhado para (n, q, K): módulos M^λ, bases de S^λ e Gram em cache,
    o cache persistente opcional de traços e as configurações de paralelismo.
    """

    def __init__(self, n: int, field: FieldSpec, coeff: CoeffFieldSpec,
                 budget: Optional[int] = None, budget_flags: Optional[int] = None,
                 store: Optional[CharacterStore] = None, n_jobs: Optional[int] = None,
                 progress: Optional[bool] = None):
        settings = get_settings()
        if coeff.p != field.p:
            raise ValueError(f"K foi construído para p = {coeff.p}, mas F_q tem p = {field.p}")
        self.n = n
        self.field = field
        self.coeff = coeff
        self.budget = budget if budget is not None else settings.budget_elements
        self.budget_flags = budget_flags if budget_flags is not None else settings.budget_flags
        self.store = store
        self.n_jobs = n_jobs if n_jobs is not None else settings.n_jobs
        self.progress = progress if progress is not None else settings.progress
        self._modules: Dict[Partition, PermutationModule] = {}
        self._bases: Dict[Partition, SpanBasis] = {}
        self._grams: Dict[Partition, GramResult] = {}
        self._characters: Dict[Partition, ClassFunctionSample] = {}
        self._group: Optional[List[FqMatrix]] = None

    @property
    def shapes(self) -> List[Partition]:
        return partitions_of(self.n)

    def module(self, shape: Partition) -> PermutationModule:
        if shape not in self._modules:
            self._modules[shape] = PermutationModule(shape, self.field, self.coeff, self.budget_flags)
        return self._modules[shape]

    def basis(self, shape: Partition) -> SpanBasis:
        if shape not in self._bases:
            self._bases[shape] = s_basis(shape, self.field, self.coeff, module=self.module(shape),
                                         budget=self.budget)
        return self._bases[shape]

    def gram(self, shape: Partition) -> GramResult:
        if shape not in self._grams:
            self._grams[shape] = gram_and_radical(self.basis(shape))
        return self._grams[shape]

    def group_elements(self) -> List[FqMatrix]:
        """GL_n(F_q) completo (materializado uma vez)."""
        if self._group is None:
            self._group = list(gl_enumerate(self.n, self.field, self.budget))
        return self._group

    def character(self, shape: Partition) -> ClassFunctionSample:
        """χ_{S^λ} como função de classe."""
        if shape not in self._characters:
            self._characters[shape] = ClassFunctionSample(
                f"chi[{shape}]", lambda g, s=shape: char_value(g, s, self))
        return self._characters[shape]

    def require_cyclotomic(self, what: str) -> None:
        if self.coeff.is_modular:
            raise ValueError(f"{what} requer o modo ciclotômico")

    def map_values(self, fn: Callable[[FqMatrix], KScalar], elements: Sequence[FqMatrix],
                   desc: str) -> List[KScalar]:
        """Avalia fn em paralelo (joblib, backend threading) preservando a ordem."""
        iterable = tqdm(elements, desc=desc, disable=not self.progress, leave=False)
        if self.n_jobs == 1:
            return [fn(g) for g in iterable]
        return Parallel(n_jobs=self.n_jobs, backend="threading")(delayed(fn)(g) for g in iterable)


# ======================================================================
# AÇÃO E TRAÇO
# ======================================================================
def action_matrix(g: FqMatrix, basis: SpanBasis) -> KMatrix:
    """
    Matriz de g na base de S^λ (coluna i = coordenadas de g·b_i).

    Raises:
        OutsideSpanError: se algum g·b_i sair do espaço gerado
    """
    if not g.is_invertible():
        raise ValueError("g deve ser invertível")
    module = basis.module
    columns = [basis.coordinates(module.act_dense(g, row)) for row in basis.rows]
    size = basis.rank
    return [[columns[i][j] for i in range(size)] for j in range(size)]


def trace_on_basis(g: FqMatrix, basis: SpanBasis) -> KScalar:
    """Traço de g em S^λ pelo atalho dos pivôs."""
    module = basis.module
    g_inv = g.inverse()
    total = basis.coeff.zero
    for pivot, row in zip(basis.pivots, basis.rows):
        source = module.act_index(g_inv, pivot)
        c = row.get(source)
        if c is not None:
            total = total + c
    return total


def char_value(g: FqMatrix, shape: Partition, context: UnipotentContext) -> KScalar:
    """χ_{S^λ}(g); consulta e alimenta o cache persistente, se houver."""
    label = str(shape)
    if context.store is not None:
        cached = context.store.get(g, label)
        if cached is not None:
            return cached
    value = trace_on_basis(g, context.basis(shape))
    if context.store is not None:
        context.store.put(g, label, value)
    return value


def trivial_character(coeff: CoeffFieldSpec) -> ClassFunctionSample:
    return ClassFunctionSample("trivial", lambda g: coeff.one)


def permutation_character(g: FqMatrix, shape: Partition, context: UnipotentContext) -> int:
    """χ_{M^λ}(g) = número de λ-flags fixadas por g."""
    return sum(1 for f in context.module(shape).flags if f.is_fixed_by(g))


# ======================================================================
# PRODUTOS INTERNOS E MULTIPLICIDADES
# ======================================================================
def _as_multiplicity(value: KScalar, what: str) -> int:
    """Converte o valor exato em inteiro não negativo; ArithmeticError se não for."""
    try:
        number = value.to_fraction()
    except ValueError as e:
        raise ArithmeticError(f"{what}: valor {value} não é racional") from e
    if number.denominator != 1 or number < 0:
        raise ArithmeticError(f"{what}: valor {value} não é inteiro não negativo")
    return number.numerator


def _average(values: Sequence[KScalar], order: int, coeff: CoeffFieldSpec) -> KScalar:
    total = coeff.zero
    for v in values:
        total = total + v
    return total * coeff.from_fraction(Fraction(1, order))


def inner_product(f1: ClassFunctionSample, f2: ClassFunctionSample, context: UnipotentContext) -> KScalar:
    """⟨f1, f2⟩ = |G|^{-1} Σ_{g∈G} f1(g)·f2(g^{-1})."""
    context.require_cyclotomic("Produto interno de caracteres")
    elements = context.group_elements()
    terms = context.map_values(lambda g: f1(g) * f2(g.inverse()), elements,
                               desc=f"<{f1.tag}, {f2.tag}>")
    return _average(terms, len(elements), context.coeff)


def parabolic_multiplicity(lam_par: Partition, mu: Partition, context: UnipotentContext) -> int:
    """⟨Ind_{P_λ}^G(1), χ^μ⟩; deve valer K_{μ'λ}."""
    context.require_cyclotomic("Multiplicidade parabólica")
    chi = context.character(mu)
    elements = list(p_lambda_elements(lam_par, context.field, context.budget))
    values = context.map_values(chi, elements, desc=f"P_{lam_par}")
    value = _average(values, p_lambda_order(lam_par, context.field.q), context.coeff)
    return _as_multiplicity(value, f"parabólica({lam_par}, {mu})")


def ggg_multiplicity(lam: Partition, mu: Partition, context: UnipotentContext) -> int:
    """⟨Γ^λ, χ^μ⟩ com Γ^λ = Ind_{U(T)}^G(ψ_T); deve valer K_{μλ}(q)."""
    context.require_cyclotomic("Multiplicidade de Gelfand-Graev")
    tableau = standard_tableau(lam, context.field)
    chi = context.character(mu)
    coeff = context.coeff
    elements = list(u_elements(tableau, context.budget))
    values = context.map_values(lambda u: psi_inverse(tableau, u, coeff) * chi(u), elements,
                                desc=f"Gamma[{lam}]")
    value = _average(values, u_order(tableau), coeff)
    return _as_multiplicity(value, f"Gamma({lam}, {mu})")


def degenerate_descents(lam: Partition) -> List[int]:
    """D(λ) = {λ_1, λ_1+λ_2, ...} (índices a partir de 1)."""
    return lam.partial_sums()


def phi_degenerate(lam: Partition, u: FqMatrix, coeff: CoeffFieldSpec) -> KScalar:
    """φ_λ(u) = θ(Σ_{i∉D(λ)} u_{i,i+1})."""
    field = u.field
    descents = set(degenerate_descents(lam))
    total = 0
    for i in range(1, lam.n):
        if i not in descents:
            total = field.add(total, u.entry(i - 1, i))
    return theta(FqScalar(field, total), coeff)


def dgg_multiplicity(lam: Partition, mu: Partition, context: UnipotentContext) -> int:
    """⟨Ψ^λ, χ^μ⟩ com Ψ^λ = Ind_{UT_n}^G(φ_λ); deve valer K_{μλ}."""
    context.require_cyclotomic("Multiplicidade de Gelfand-Graev degenerado")
    chi = context.character(mu)
    coeff = context.coeff
    elements = list(unitriangular_elements(context.n, context.field, context.budget))
    values = context.map_values(lambda u: phi_degenerate(lam, u.inverse(), coeff) * chi(u), elements,
                                desc=f"Psi[{lam}]")
    value = _average(values, len(elements), coeff)
    return _as_multiplicity(value, f"Psi({lam}, {mu})")


def permutation_multiplicity(lam: Partition, mu: Partition, context: UnipotentContext) -> int:
    """⟨χ_{M^λ}, χ^μ⟩; deve valer K_{μ'λ'}."""
    context.require_cyclotomic("Multiplicidade no módulo de permutação")
    chi = context.character(mu)
    coeff = context.coeff
    elements = context.group_elements()
    values = context.map_values(
        lambda g: coeff.from_int(permutation_character(g, lam, context)) * chi(g.inverse()),
        elements, desc=f"M[{lam}]")
    value = _average(values, group_order(context.n, context.field.q), coeff)
    return _as_multiplicity(value, f"M({lam}, {mu})")


MULTIPLICITY_KINDS = {
    'multiplicities': ggg_multiplicity,
    'parabolic': parabolic_multiplicity,
    'degenerate': dgg_multiplicity,
    'permutation': permutation_multiplicity,
}


def multiplicity_table(kind: str, context: UnipotentContext) -> pd.DataFrame:
    """Matriz de multiplicidades calculadas, linhas μ e colunas λ."""
    fn = MULTIPLICITY_KINDS[kind]
    shapes = context.shapes
    labels = [str(s) for s in shapes]
    data = [[fn(lam, mu, context) for lam in shapes] for mu in shapes]
    return pd.DataFrame(data, index=labels, columns=labels)


def character_gram(context: UnipotentContext, shapes: Optional[Sequence[Partition]] = None) -> List[List[Fraction]]:
    """[⟨χ_{S^λ}, χ_{S^μ}⟩] em ordem das partições."""
    shapes = list(shapes or context.shapes)
    out = []
    for lam in shapes:
        row = []
        for mu in shapes:
            value = inner_product(context.character(lam), context.character(mu), context)
            row.append(value.to_fraction())
        out.append(row)
    return out

