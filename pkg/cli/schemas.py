"""
schemas.py - Schemas de validação para a CLI
"""

from typing import Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from src.combinatorics.partitions import Partition, parse_partition
from src.fields.coeff_field import CYCLOTOMIC, MODULAR, make_coeff_field
from src.fields.finite_field import prime_power

BUDGET_EXCEEDED = 'budget-exceeded'
MOD_PREFIX = 'mod'


class RunConfig(BaseModel):
    """
    Parâmetros de uma execução (flags da CLI já combinadas com as configurações).
    """
    n: int = Field(..., ge=1, description="Grau de GL_n")
    q: int = Field(..., ge=2, description="Ordem do corpo F_q (potência de primo)")
    coeff: str = Field(CYCLOTOMIC, description="cyclotomic ou mod:L")
    lam: Optional[str] = Field(None, description="Partição λ, por exemplo '2,1'")
    seed: int = Field(0, description="Semente dos testes aleatórios")
    output_format: str = Field('tsv', pattern='^(tsv|json)$', description="Formato de saída")
    budget_elements: Optional[int] = Field(None, gt=0, description="Limite de elementos de grupo")
    budget_flags: Optional[int] = Field(None, gt=0, description="Limite de flags")
    cache_dir: Optional[str] = Field(None, description="Diretório do cache de caracteres")
    jobs: Optional[int] = Field(None, description="Workers do joblib")

    @field_validator('q')
    @classmethod
    def check_prime_power(cls, v):
        """q precisa ser potência de primo."""
        prime_power(v)
        return v

    @field_validator('coeff')
    @classmethod
    def check_coeff(cls, v):
        v = v.strip()
        if v == CYCLOTOMIC:
            return v
        prefix, _, ell = v.partition(':')
        if prefix.strip() != MOD_PREFIX or not ell.strip().isdigit():
            raise ValueError(f"Modo de coeficientes inválido: {v!r} (use cyclotomic ou mod:L)")
        return f"{MOD_PREFIX}:{int(ell)}"

    @model_validator(mode='after')
    def check_combination(self):
        """mod:L exige p | L-1; λ precisa ser partição de n."""
        p, _ = prime_power(self.q)
        make_coeff_field(self.coeff_mode, p, self.ell)
        if self.lam is not None and self.partition.n != self.n:
            raise ValueError(f"λ = {self.lam} não é partição de n = {self.n}")
        return self

    @property
    def coeff_mode(self) -> str:
        return CYCLOTOMIC if self.coeff == CYCLOTOMIC else MODULAR

    @property
    def ell(self) -> Optional[int]:
        if self.coeff_mode == MODULAR:
            return int(self.coeff.split(':')[1])
        return None

    @property
    def partition(self) -> Optional[Partition]:
        return parse_partition(self.lam) if self.lam is not None else None

    class Config:
        json_schema_extra = {
            "example": {
                "n": 3,
                "q": 2,
                "coeff": "mod:7",
                "lam": "2,1",
                "seed": 0,
                "output_format": "tsv",
            }
        }


class DimsRow(BaseModel):
    """
    Uma linha de `dims`; colunas de dimensão podem trazer 'budget-exceeded'.
    """
    lam: str = Field(..., serialization_alias='lambda')
    dim_M: Union[int, str]
    dim_S: Union[int, str]
    dim_D: Union[int, str]

    class Config:
        json_schema_extra = {
            "example": {
                "lambda": "2,1",
                "dim_M": 7,
                "dim_S": 6,
                "dim_D": 6,
            }
        }
