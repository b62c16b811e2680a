"""
runner.py - Executor dos comandos da CLI

Dono do estado de uma execução: corpo F_q, corpo de coeficientes K, cache persistente
de caracteres (opcional) e o contexto com os módulos M^λ / S^λ já construídos.
"""

import json
import logging
from typing import List, Optional

import pandas as pd

from cli.schemas import BUDGET_EXCEEDED, DimsRow, RunConfig
from src.characters.cache import CharacterStore
from src.characters.characters import MULTIPLICITY_KINDS, UnipotentContext, multiplicity_table
from src.combinatorics.kostka import kostka_table
from src.combinatorics.partitions import Partition
from src.config import Settings, get_settings
from src.errors import BudgetExceededError
from src.fields.coeff_field import make_coeff_field
from src.fields.finite_field import make_field
from src.verification.suites import VerificationRunner

logger = logging.getLogger(__name__)

TABLE_KINDS = ('kostka', 'kostka-poly') + tuple(MULTIPLICITY_KINDS)


class UnipotentRunner:
    """
    Classe responsável por montar o contexto e executar dims / verify / tables.
    """

    def __init__(self, config: RunConfig, settings: Optional[Settings] = None):
        """
        Inicializa corpo, coeficientes e cache a partir da configuração validada.
        """
        settings = settings or get_settings()
        self.config = config
        self.field = make_field(config.q, settings.max_field_order)
        self.coeff = make_coeff_field(config.coeff_mode, self.field.p, config.ell)
        self.budget_exceeded = False

        cache_dir = config.cache_dir or settings.cache_dir
        self.store = None
        if cache_dir:
            try:
                self.store = CharacterStore(cache_dir, config.n, config.q, self.coeff)
            except OSError as e:
                logger.warning(f"Cache de caracteres indisponível em {cache_dir}: {e}")

        self.context = UnipotentContext(
            config.n, self.field, self.coeff,
            budget=config.budget_elements or settings.budget_elements,
            budget_flags=config.budget_flags or settings.budget_flags,
            store=self.store,
            n_jobs=config.jobs if config.jobs is not None else settings.n_jobs,
            progress=settings.progress,
        )
        logger.info(f"Executor pronto: n = {config.n}, q = {config.q}, K = {self.coeff.label}")

    @property
    def shapes(self) -> List[Partition]:
        """λ da flag --lambda, ou todas as partições de n."""
        lam = self.config.partition
        return [lam] if lam is not None else self.context.shapes

    # ------------------------------------------------------------------
    def dims_row(self, shape: Partition) -> DimsRow:
        """
        (λ, dim M^λ, dim S^λ, dim D^λ); orçamento estourado marca a linha.
        """
        row = {'lam': str(shape), 'dim_M': BUDGET_EXCEEDED, 'dim_S': BUDGET_EXCEEDED,
               'dim_D': BUDGET_EXCEEDED}
        try:
            row['dim_M'] = self.context.module(shape).dim
            row['dim_S'] = self.context.basis(shape).rank
            row['dim_D'] = self.context.gram(shape).dim_d
        except BudgetExceededError as e:
            logger.warning(f"Orçamento excedido em λ = {shape}: {e}")
            self.budget_exceeded = True
        return DimsRow(**row)

    def dims(self) -> pd.DataFrame:
        rows = [self.dims_row(shape).model_dump(by_alias=True) for shape in self.shapes]
        return pd.DataFrame(rows, columns=['lambda', 'dim_M', 'dim_S', 'dim_D'])

    def basis_matrix(self) -> pd.DataFrame:
        """Base escalonada de S^λ (linhas) nas coordenadas de flag-id (colunas)."""
        shape = self.config.partition
        if shape is None:
            raise ValueError("--dump-basis exige --lambda")
        return self.context.basis(shape).to_frame()

    def verify(self, suite: str) -> VerificationRunner:
        """Executa a suíte; BudgetExceededError propaga."""
        runner = VerificationRunner(self.context, seed=self.config.seed, shapes=self.shapes)
        runner.run(suite)
        logger.info(f"Suíte {suite}: {runner.tests_passed} aprovadas, {runner.tests_failed} falhas")
        return runner

    def tables(self, kind: str) -> pd.DataFrame:
        """Matriz quadrada indexada por partições de n (linhas μ, colunas λ)."""
        if kind not in TABLE_KINDS:
            raise ValueError(f"Tabela desconhecida: {kind}")
        if kind == 'kostka':
            frame = kostka_table(self.config.n)
        elif kind == 'kostka-poly':
            frame = kostka_table(self.config.n, graded=True)
        else:
            frame = multiplicity_table(kind, self.context)
        frame.index.name = 'mu'
        return frame.reset_index()


def render(frame: pd.DataFrame, output_format: str) -> str:
    """TSV ou JSON (lista de registros) com o mesmo conteúdo."""
    if output_format == 'json':
        records = frame.to_dict(orient='records')
        return json.dumps(records, ensure_ascii=False) + "\n"
    return frame.to_csv(sep='\t', index=False, lineterminator='\n')
