"""
errors.py - Hierarquia de exceções
Unipotent Modules Project - Fase 1
"""


class UnipotentError(Exception):
    """Erro base do projeto."""


class BudgetExceededError(UnipotentError):
    """Uma enumeração excederia o orçamento configurado."""

    def __init__(self, what: str, size: int, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(
            f"Orçamento excedido para {what}: {size} elementos (limite {budget})"
        )


class MixedFieldError(UnipotentError, ValueError):
    """Operandos pertencem a corpos diferentes."""


class NotInSubgroupError(UnipotentError, ValueError):
    """Elemento fora do subgrupo exigido pela operação."""


class OutsideSpanError(UnipotentError, ArithmeticError):
    """g·v saiu do espaço gerado (indica bug no fechamento)."""


class CoefficientGrowthError(UnipotentError, ArithmeticError):
    """Denominadores cresceram além do limite configurado."""


def check_budget(what: str, size: int, budget: int) -> None:
    """Levanta BudgetExceededError se size > budget."""
    if size > budget:
        raise BudgetExceededError(what, size, budget)
