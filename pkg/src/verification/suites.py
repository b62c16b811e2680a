"""
suites.py - Suítes de verificação por força bruta
Unipotent Modules Project - Fase 5

Cada verificação tem um nome, uma âncora (a identidade que ela testa) e um status
PASS / FAIL / SKIP. As suítes são:
- lemmas:     propriedades dos tableaux, de e_T, k_T, da forma bilinear e dicotomias;
- characters: dimensões, ortonormalidade e propriedades das matrizes de ação;
- kostka:     identidades combinatórias e de multiplicidade.

LÓGICA:
- As verificações fixam T₀ (tableau padrão) e variam T' sobre todas as flags; pela
  equivariância (U(gT) = gU(T)g^{-1} etc.) isso cobre todos os pares de tableaux.
- Toda aleatoriedade vem de numpy.random.default_rng(seed).
"""

import logging
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.characters.characters import (
    UnipotentContext,
    action_matrix,
    char_value,
    character_gram,
    dgg_multiplicity,
    ggg_multiplicity,
    parabolic_multiplicity,
    permutation_multiplicity,
)
from src.combinatorics.kostka import kostka_number, kostka_polynomial
from src.combinatorics.partitions import (
    Dominance,
    Partition,
    conjugate,
    dominance_leq,
    dominates,
    partitions_of,
)
from src.errors import BudgetExceededError
from src.fields.coeff_field import kmat_identity, kmat_mul, rank_over_k
from src.linalg.fq_linalg import FqMatrix
from src.linalg.groups import group_order, random_invertible
from src.modules.flag_modules import (
    MVector,
    e_vector,
    flag_count,
    flag_of,
    k_apply,
    m_vector,
    s_basis,
    submodule_dichotomy,
)
from src.modules.tableaux import (
    act,
    bar,
    bar_element,
    p_contains,
    p_elements,
    psi,
    standard_tableau,
    tableau_for_flag,
    u_elements,
    u_elements_by_spans,
    u_order,
)

logger = logging.getLogger(__name__)

SUITES = ('lemmas', 'characters', 'kostka', 'all')

PASS, FAIL, SKIP = 'PASS', 'FAIL', 'SKIP'

# limite de |G| para somas sobre o grupo inteiro dentro das suítes
FULL_GROUP_LIMIT = 20_000


@dataclass
class CheckResult:
    suite: str
    check: str
    shape: str
    anchor: str
    status: str
    detail: str = ''


class VerificationRunner:
    """
    Executa as suítes e acumula resultados (contadores de aprovadas e falhas).
    """

    def __init__(self, context: UnipotentContext, seed: int = 0,
                 shapes: Optional[Sequence[Partition]] = None,
                 random_samples: int = 3, dichotomy_samples: int = 20):
        self.context = context
        self.seed = seed
        self.shapes = list(shapes) if shapes else context.shapes
        self.random_samples = random_samples
        self.dichotomy_samples = dichotomy_samples
        self.results: List[CheckResult] = []
        self.tests_passed = 0
        self.tests_failed = 0

    # ------------------------------------------------------------------
    def _rng(self, *salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *salt])

    def _random_elements(self, count: int, *salt: int) -> List[FqMatrix]:
        rng = self._rng(*salt)
        return [random_invertible(self.context.n, self.context.field, rng) for _ in range(count)]

    def record(self, suite: str, check: str, shape: str, anchor: str,
               fn: Callable[[], Tuple[Optional[bool], str]]) -> CheckResult:
        """Executa fn; None = SKIP. Orçamento estourado propaga (código de saída 3)."""
        try:
            passed, detail = fn()
        except BudgetExceededError:
            raise
        except Exception as e:
            logger.error(f"Erro na verificação {check} ({shape}): {e}")
            passed, detail = False, f"erro: {e}"
        status = SKIP if passed is None else (PASS if passed else FAIL)
        if status == PASS:
            self.tests_passed += 1
        elif status == FAIL:
            self.tests_failed += 1
        result = CheckResult(suite, check, shape, anchor, status, detail)
        self.results.append(result)
        logger.debug(f"{status} - {suite}/{check} [{shape}] {detail}")
        return result

    @property
    def passed(self) -> bool:
        return self.tests_failed == 0

    def run(self, suite: str) -> List[CheckResult]:
        if suite not in SUITES:
            raise ValueError(f"Suíte desconhecida: {suite}")
        if suite in ('lemmas', 'all'):
            self.run_lemmas()
        if suite in ('characters', 'all'):
            self.run_characters()
        if suite in ('kostka', 'all'):
            self.run_kostka()
        return self.results

    def to_frame(self) -> pd.DataFrame:
        columns = ['suite', 'check', 'shape', 'anchor', 'status', 'detail']
        return pd.DataFrame([asdict(r) for r in self.results], columns=columns)

    # ==================================================================
    # LEMMAS
    # ==================================================================
    def run_lemmas(self) -> None:
        for index, shape in enumerate(self.shapes):
            self._lemmas_for(shape, index)

    def _lemmas_for(self, shape: Partition, salt: int) -> None:
        ctx = self.context
        coeff = ctx.coeff
        field = ctx.field
        t0 = standard_tableau(shape, field)
        u_t0 = list(u_elements(t0, ctx.budget))
        e_t0 = e_vector(t0, coeff, ctx.budget)
        samples = self._random_elements(self.random_samples, 1, salt)
        label = str(shape)

        def rec(check: str, anchor: str, fn):
            self.record('lemmas', check, label, anchor, fn)

        def u_conjugation():
            p_t0 = set(p_elements(t0, ctx.budget))
            for g in samples:
                gt = act(g, t0)
                g_inv = g.inverse()
                if set(u_elements(gt, ctx.budget)) != {g @ u @ g_inv for u in u_t0}:
                    return False, "U(gT) difere de gU(T)g^-1"
                if set(p_elements(gt, ctx.budget)) != {g @ p @ g_inv for p in p_t0}:
                    return False, "P(gT) difere de gP(T)g^-1"
            return True, f"{len(samples)} elementos g"

        def span_crosscheck():
            if group_order(ctx.n, field.q) > FULL_GROUP_LIMIT:
                return None, "grupo grande demais"
            tableau = act(samples[0], t0)
            by_spans = set(u_elements_by_spans(tableau, ctx.budget))
            if by_spans != set(u_elements(tableau, ctx.budget)):
                return False, "U(T) por spans difere da conjugação de U_λ'"
            group = ctx.group_elements()
            p_by_spans = {g for g in group if p_contains(g, tableau)}
            if p_by_spans != set(p_elements(tableau, ctx.budget)):
                return False, "P(T) por spans difere da conjugação de P_λ'^-"
            return True, f"|U(T)| = {len(by_spans)}, |P(T)| = {len(p_by_spans)}"

        def e_equivariance():
            for g in samples:
                if e_t0.act(g) != e_vector(act(g, t0), coeff, ctx.budget):
                    return False, "g·e_T ≠ e_{gT}"
            return True, f"{len(samples)} elementos g"

        def psi_conjugation():
            for g in samples:
                gt = act(g, t0)
                g_inv = g.inverse()
                for u in u_t0:
                    if psi(gt, g @ u @ g_inv, coeff) != psi(t0, u, coeff):
                        return False, "ψ_{gT}(gug^-1) ≠ ψ_T(u)"
            return True, f"{len(u_t0)} elementos u"

        def m_invariance():
            flag = flag_of(t0)
            count = 0
            for p in p_elements(t0, ctx.budget):
                count += 1
                if flag_of(act(p, t0)) != flag:
                    return False, "m_{pT} ≠ m_T"
            for g in samples:
                if m_vector(t0, coeff).act(g) != m_vector(act(g, t0), coeff):
                    return False, "g·m_T ≠ m_{gT}"
            return True, f"|P(T)| = {count}"

        def e_twist():
            for u in u_t0:
                if e_vector(act(u, t0), coeff, ctx.budget) != e_t0.scale(psi(t0, u, coeff)):
                    return False, "e_{uT} ≠ ψ_T(u)e_T"
            return True, f"{len(u_t0)} elementos u"

        def psi_bar():
            t_bar = bar(t0)
            if set(u_elements(t_bar, ctx.budget)) != set(u_t0):
                return False, "U(T̄) ≠ U(T)"
            p = bar_element(t0)
            if not p_contains(p, t0) or act(p, t0) != t_bar:
                return False, "T̄ ∉ P(T)·T"
            for u in u_t0:
                if psi(t_bar, u, coeff) != psi(t0, u.inverse(), coeff):
                    return False, "ψ_{T̄}(u) ≠ ψ_T(u^-1)"
            return True, f"{len(u_t0)} elementos u"

        def k_same_shape():
            module = ctx.module(shape)
            for f in module.flags:
                image = k_apply(t0, MVector.basis_vector(shape, coeff, f), ctx.budget)
                if not image.is_multiple_of(e_t0):
                    return False, f"k_T m_T' ∉ K e_T para a flag {module.index[f]}"
            return True, f"{module.dim} flags"

        def k_eigen():
            expected = e_t0.scale(coeff.from_int(len(u_t0)))
            return k_apply(t0, e_t0, ctx.budget) == expected, f"|U(T)| = {len(u_t0)}"

        def k_on_s():
            basis = ctx.basis(shape)
            nonzero = 0
            for v in basis.vectors():
                image = k_apply(t0, v, ctx.budget)
                if not image.is_multiple_of(e_t0):
                    return False, "k_T S^λ ⊄ K e_T"
                nonzero += not image.is_zero()
            return nonzero > 0, f"{nonzero} imagens não nulas"

        def form_bar():
            value = e_t0.inner(e_vector(bar(t0), coeff, ctx.budget))
            return value == coeff.from_int(u_order(t0)), f"[e_T, e_T̄] = {value}"

        def cross_shape():
            checked = 0
            for mu in partitions_of(ctx.n):
                if dominates(mu, shape):
                    continue
                for f in ctx.module(mu).flags:
                    checked += 1
                    if not k_apply(t0, MVector.basis_vector(mu, coeff, f), ctx.budget).is_zero():
                        return False, f"k_T m_T' ≠ 0 com μ = {mu}"
            return True, f"{checked} pares (T, T')"

        def intersection_dichotomy():
            nontrivial = [u for u in u_t0 if not u.is_identity()]
            for f in ctx.module(shape).flags:
                t_prime = tableau_for_flag(f.members, shape)
                if flag_of(t_prime) != f:
                    return False, "flag_of(tableau_for_flag(F)) ≠ F"
                meets = any(flag_of(act(u, t0)) == f for u in u_t0)
                trivial = not any(p_contains(u, t_prime) for u in nontrivial)
                if meets != trivial:
                    return False, f"dicotomia falha para a flag {ctx.module(shape).index[f]}"
            return True, f"{ctx.module(shape).dim} flags"

        def nontrivial_value():
            witnesses = 0
            for f in ctx.module(shape).flags:
                t_prime = tableau_for_flag(f.members, shape)
                inter = [u for u in u_t0 if not u.is_identity() and p_contains(u, t_prime)]
                if inter:
                    if all(psi(t0, u, coeff) == coeff.one for u in inter):
                        return False, f"ψ_T ≡ 1 em U(T) ∩ P(T') para a flag {ctx.module(shape).index[f]}"
                    witnesses += 1
            return True, f"{witnesses} interseções não triviais"

        def form_invariance():
            module = ctx.module(shape)
            rng = self._rng(2, salt)
            for g in samples:
                x = self._random_vector(module, rng)
                y = self._random_vector(module, rng)
                if x.act(g).inner(y.act(g)) != x.inner(y):
                    return False, "[gx, gy] ≠ [x, y]"
            return True, f"{len(samples)} elementos g"

        def dichotomy():
            module = ctx.module(shape)
            basis = ctx.basis(shape)
            rng = self._rng(3, salt)
            vectors = [self._random_vector(module, rng) for _ in range(self.dichotomy_samples)]
            vectors.append(MVector(shape, coeff, {f: coeff.one for f in module.flags}))
            outcomes = [submodule_dichotomy(module, x, basis) for x in vectors]
            if 'neither' in outcomes:
                return False, "submódulo cíclico viola a dicotomia"
            return True, f"{outcomes.count('contains-S')} contêm S^λ, {outcomes.count('inside-perp')} em S^⊥"

        def seed_independence():
            expected = ctx.basis(shape).rank
            for g in self._random_elements(3, 4, salt):
                seeded = s_basis(shape, field, coeff, seed=act(g, t0), module=ctx.module(shape),
                                 budget=ctx.budget)
                if seeded.rank != expected:
                    return False, f"dim {seeded.rank} ≠ {expected}"
            return True, f"dim S^λ = {expected}"

        def radical():
            gram = ctx.gram(shape)
            dim_s = ctx.basis(shape).rank
            if not coeff.is_modular:
                return gram.radical_dim == 0, f"radical {gram.radical_dim}, dim D = {gram.dim_d}"
            ok = 1 <= gram.dim_d <= dim_s
            if shape == Partition([1] * ctx.n):
                ok = ok and gram.dim_d == 1
            return ok, f"dim D = {gram.dim_d}, dim S = {dim_s}"

        rec('u_conjugation', "U(gT) = gU(T)g^{-1}", u_conjugation)
        rec('u_span_crosscheck', "g·v_i - v_i ∈ F_q-span{v_j strictly left of v_i}", span_crosscheck)
        rec('e_equivariance', "g·e_T = e_{gT}", e_equivariance)
        rec('psi_conjugation', "ψ_{gT}(gug^{-1}) = ψ_T(u)", psi_conjugation)
        rec('m_invariance', "m_{pT} = m_T", m_invariance)
        rec('e_twist', "e_{uT} = ψ_T(u)e_T", e_twist)
        rec('psi_bar', "ψ_{T̄}(u) = ψ_T(u^{-1})", psi_bar)
        rec('k_same_shape', "k_T m_{T'} ∈ K e_T", k_same_shape)
        rec('k_eigen', "k_T e_T = |U(T)| e_T", k_eigen)
        rec('k_on_s', "k_T S^λ = K e_T", k_on_s)
        rec('form_bar', "[e_T, e_{T̄}] = |U(T)|", form_bar)
        rec('cross_shape', "k_T m_{T'} = 0 unless μ ⪰ λ", cross_shape)
        rec('intersection_dichotomy', "uT = pT' if and only if U(T) ∩ P(T') = {1}", intersection_dichotomy)
        rec('nontrivial_value', "U(T) ∩ P(T') ≠ {1} has g with ψ_T(g) ≠ 1", nontrivial_value)
        rec('form_invariance', "[gx, gy] = [x, y]", form_invariance)
        rec('submodule_dichotomy', "either S^λ ⊆ V or V ⊆ (S^λ)^⊥", dichotomy)
        rec('seed_independence', "e_T generates S^λ", seed_independence)
        rec('radical', "D^λ = S^λ/(S^λ ∩ (S^λ)^⊥)", radical)

    def _random_vector(self, module, rng: np.random.Generator) -> MVector:
        """Vetor esparso aleatório de M^λ (até 3 flags, coeficientes 1..3)."""
        coeff = module.coeff
        size = min(3, module.dim)
        picks = rng.choice(module.dim, size=size, replace=False)
        terms = {module.flags[int(i)]: coeff.from_int(int(rng.integers(1, 4))) for i in picks}
        return MVector(module.shape, coeff, terms)

    # ==================================================================
    # CHARACTERS
    # ==================================================================
    def run_characters(self) -> None:
        ctx = self.context
        q = ctx.field.q
        n = ctx.n
        cyclotomic = not ctx.coeff.is_modular
        skip_modular = (None, "requer modo ciclotômico")

        def rec(check: str, shape: str, anchor: str, fn):
            self.record('characters', check, shape, anchor, fn)

        def degree_consistency():
            if not cyclotomic:
                return skip_modular
            total = sum(kostka_number(lam, Partition([1] * n)) * ctx.basis(lam).rank
                        for lam in partitions_of(n))
            complete = flag_count(Partition([n]), q)
            return total == complete, f"Σ f^λ dim S^λ = {total}, flags completas = {complete}"

        rec('degree_consistency', '*', "Σ f^λ dim S^λ = |complete flags|", degree_consistency)

        for index, shape in enumerate(self.shapes):
            label = str(shape)
            samples = self._random_elements(self.random_samples, 5, index)

            def dimension_anchor(shape=shape):
                if not cyclotomic:
                    return skip_modular
                dim = ctx.basis(shape).rank
                if shape == Partition([1] * n):
                    expected = 1
                elif shape == Partition([n]):
                    expected = q ** (n * (n - 1) // 2)
                elif shape == Partition([2, 1]):
                    expected = q * q + q
                else:
                    return None, f"dim S^λ = {dim} (sem valor de referência)"
                return dim == expected, f"dim S^λ = {dim}, esperado {expected}"

            def identity_value(shape=shape):
                identity = FqMatrix.identity(ctx.field, n)
                value = char_value(identity, shape, ctx)
                return value == ctx.coeff.from_int(ctx.basis(shape).rank), f"χ(1) = {value}"

            def trivial_steinberg(shape=shape):
                if shape == Partition([1] * n):
                    ok = all(char_value(g, shape, ctx) == ctx.coeff.one for g in samples)
                    return ok, "χ^{(1^n)} = 1"
                if shape == Partition([n]):
                    dim = ctx.basis(shape).rank
                    return dim == q ** (n * (n - 1) // 2), f"grau de Steinberg {dim}"
                return None, "não se aplica"

            def action_multiplicative(shape=shape, samples=samples):
                basis = ctx.basis(shape)
                size = basis.rank
                identity = FqMatrix.identity(ctx.field, n)
                if action_matrix(identity, basis) != kmat_identity(ctx.coeff, size):
                    return False, "matriz de 1 ≠ identidade"
                for g, h in zip(samples, samples[1:] + samples[:1]):
                    mg, mh = action_matrix(g, basis), action_matrix(h, basis)
                    if action_matrix(g @ h, basis) != kmat_mul(mg, mh):
                        return False, "ρ(gh) ≠ ρ(g)ρ(h)"
                    if kmat_mul(mg, action_matrix(g.inverse(), basis)) != kmat_identity(ctx.coeff, size):
                        return False, "ρ(g)ρ(g^-1) ≠ 1"
                    if rank_over_k(mg) != size:
                        return False, "ρ(g) singular"
                return True, f"{len(samples)} pares"

            def class_function(shape=shape, samples=samples):
                for g, h in zip(samples, samples[1:] + samples[:1]):
                    if char_value(h @ g @ h.inverse(), shape, ctx) != char_value(g, shape, ctx):
                        return False, "χ(hgh^-1) ≠ χ(g)"
                return True, f"{len(samples)} pares conjugados"

            rec('dimension_anchor', label, "dim χ^{(n)} = q^{n(n-1)/2}", dimension_anchor)
            rec('identity_value', label, "χ_{S^λ}(1) = dim S^λ", identity_value)
            rec('trivial_steinberg', label, "χ^{(1^n)} trivial, χ^{(n)} Steinberg", trivial_steinberg)
            rec('action_multiplicative', label, "ρ(gh) = ρ(g)ρ(h)", action_multiplicative)
            rec('class_function', label, "χ(hgh^{-1}) = χ(g)", class_function)

        small_group = group_order(n, q) <= FULL_GROUP_LIMIT

        def orthonormality():
            if not cyclotomic:
                return skip_modular
            if not small_group:
                return None, "grupo grande demais"
            gram = character_gram(ctx, self.shapes)
            size = len(gram)
            ok = all(gram[i][j] == (1 if i == j else 0) for i in range(size) for j in range(size))
            return ok, "matriz de Gram dos caracteres = identidade" if ok else f"Gram = {gram}"

        def permutation_identity():
            if not cyclotomic:
                return skip_modular
            if not small_group:
                return None, "grupo grande demais"
            for lam in self.shapes:
                for mu in partitions_of(n):
                    got = permutation_multiplicity(lam, mu, ctx)
                    want = kostka_number(conjugate(mu), conjugate(lam))
                    if got != want:
                        return False, f"⟨χ_M^{lam}, χ^{mu}⟩ = {got}, esperado {want}"
            return True, "todos os pares"

        rec('orthonormality', '*', "⟨χ^λ, χ^μ⟩ = δ_{λμ}", orthonormality)
        rec('permutation_identity', '*', "⟨χ_{M^λ}, χ^μ⟩ = K_{μ'λ'}", permutation_identity)

    # ==================================================================
    # KOSTKA
    # ==================================================================
    def run_kostka(self) -> None:
        ctx = self.context
        n = ctx.n
        q = ctx.field.q
        shapes = partitions_of(n)
        cyclotomic = not ctx.coeff.is_modular

        def rec(check: str, shape: str, anchor: str, fn):
            self.record('kostka', check, shape, anchor, fn)

        def at_one():
            ok = all(kostka_polynomial(mu, lam).evaluate(1) == kostka_number(mu, lam)
                     for mu in shapes for lam in shapes)
            return ok, f"{len(shapes) ** 2} pares"

        def vanishing():
            for mu in shapes:
                for lam in shapes:
                    if kostka_number(mu, lam) and dominance_leq(lam, mu) is not Dominance.BELOW_OR_EQUAL:
                        return False, f"K_{{{mu},{lam}}} ≠ 0 sem λ ⪯ μ"
            return True, f"{len(shapes) ** 2} pares"

        def conjugation():
            for lam in shapes:
                if conjugate(conjugate(lam)) != lam:
                    return False, f"λ'' ≠ λ para {lam}"
                for mu in shapes:
                    if dominates(lam, mu) != dominates(conjugate(mu), conjugate(lam)):
                        return False, f"dominância não inverte em ({mu}, {lam})"
            return True, f"{len(shapes)} partições"

        def single_row():
            ok = all(kostka_number(Partition([n]), lam) == 1 for lam in shapes)
            return ok, "K_{(n),λ} = 1"

        rec('kostka_at_one', '*', "K_{μλ}(1) = K_{μλ}", at_one)
        rec('kostka_vanishing', '*', "K_{μλ} = 0 unless λ ⪯ μ", vanishing)
        rec('conjugation', '*', "μ ⪯ λ iff λ' ⪯ μ'", conjugation)
        rec('single_row', '*', "K_{(n),λ} = 1", single_row)

        def identity(kind: str, lam: Partition):
            def check():
                if not cyclotomic:
                    return None, "requer modo ciclotômico"
                for mu in shapes:
                    if kind == 'ggg':
                        got = ggg_multiplicity(lam, mu, ctx)
                        want = kostka_polynomial(mu, lam).evaluate(q)
                    elif kind == 'parabolic':
                        got = parabolic_multiplicity(lam, mu, ctx)
                        want = kostka_number(conjugate(mu), lam)
                    else:
                        got = dgg_multiplicity(lam, mu, ctx)
                        want = kostka_number(mu, lam)
                    if got != want:
                        return False, f"μ = {mu}: calculado {got}, esperado {want}"
                return True, f"{len(shapes)} partições μ"
            return check

        for lam in self.shapes:
            label = str(lam)
            rec('ggg_identity', label, "⟨Γ^λ, χ^μ⟩ = K_{μλ}(q)", identity('ggg', lam))
            rec('parabolic_identity', label, "Ind_{P_λ}^G(1) = Σ_{μ'⪰λ} K_{μ'λ} χ^μ", identity('parabolic', lam))
            rec('degenerate_identity', label, "⟨Ψ^λ, χ^μ⟩ = K_{μλ}", identity('degenerate', lam))
