"""
config.py - Configuração via variáveis de ambiente
Unipotent Modules Project - Fase 1

Os valores padrão podem ser sobrescritos por um arquivo .env (python-dotenv)
ou pelas flags da CLI.
"""

import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class Settings(BaseModel):
    """Configurações globais do projeto."""

    max_field_order: int = Field(16, ge=2, description="Maior q aceito por make_field")
    budget_elements: int = Field(
        25_000_000, gt=0,
        description="Limite de elementos de grupo enumerados; acima de |GL_4(F_3)| = 24.261.120",
    )
    budget_flags: int = Field(100_000, gt=0, description="Limite de flags de M^λ")
    max_denominator: int = Field(10**12, gt=1, description="Limite de denominadores no modo ciclotômico")
    n_jobs: int = Field(1, description="Workers do joblib para traços")
    cache_dir: Optional[str] = Field(None, description="Diretório do cache persistente de caracteres")
    log_level: str = Field("INFO", description="Nível de logging")
    log_format: str = Field("text", description="text ou json")
    progress: bool = Field(False, description="Barras de progresso tqdm no stderr")

    @classmethod
    def from_env(cls) -> "Settings":
        """Lê as variáveis UNIPOTENT_* (depois de carregar o .env, se existir)."""
        load_dotenv()
        values = {
            'max_field_order': os.getenv('UNIPOTENT_MAX_FIELD_ORDER'),
            'budget_elements': os.getenv('UNIPOTENT_BUDGET_ELEMENTS'),
            'budget_flags': os.getenv('UNIPOTENT_BUDGET_FLAGS'),
            'max_denominator': os.getenv('UNIPOTENT_MAX_DENOMINATOR'),
            'n_jobs': os.getenv('UNIPOTENT_JOBS'),
            'cache_dir': os.getenv('UNIPOTENT_CACHE_DIR'),
            'log_level': os.getenv('UNIPOTENT_LOG_LEVEL'),
            'log_format': os.getenv('UNIPOTENT_LOG_FORMAT'),
            'progress': os.getenv('UNIPOTENT_PROGRESS'),
        }
        return cls(**{k: v for k, v in values.items() if v not in (None, '')})


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
