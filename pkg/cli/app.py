"""
app.py - CLI para construção e verificação dos módulos unipotentes

Uso:
    python -m cli.app --n 3 --q 2 dims
    python -m cli.app --n 3 --q 2 --lambda 2,1 dims --dump-basis
    python -m cli.app --n 2 --q 2 verify lemmas
    python -m cli.app --n 3 --q 2 --format json tables kostka-poly

Códigos de saída: 0 sucesso, 1 falha de verificação, 2 erro de uso,
3 orçamento excedido. Resultados vão para stdout; logs e resumo para stderr.
"""

import logging
import sys
from typing import Callable

import click
from colorama import Fore, Style
from pydantic import ValidationError
from pythonjsonlogger import jsonlogger

from cli.runner import TABLE_KINDS, UnipotentRunner, render
from cli.schemas import RunConfig
from src.config import Settings, get_settings
from src.errors import BudgetExceededError
from src.verification.suites import SUITES, VerificationRunner

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def setup_logging(settings: Settings) -> None:
    """Configura o logger raiz (stderr; texto ou JSON)."""
    handler = logging.StreamHandler(sys.stderr)
    if settings.log_format == 'json':
        handler.setFormatter(jsonlogger.JsonFormatter(LOG_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logging.basicConfig(level=settings.log_level.upper(), handlers=[handler], force=True)


def print_summary(runner: VerificationRunner) -> None:
    """Resumo colorido das verificações (stderr)."""
    total = runner.tests_passed + runner.tests_failed
    skipped = len(runner.results) - total
    click.echo("=" * 80, err=True)
    click.echo(f"{Fore.GREEN}✅ Verificações aprovadas: {runner.tests_passed}/{total}{Style.RESET_ALL}", err=True)
    color = Fore.RED if runner.tests_failed else Fore.GREEN
    click.echo(f"{color}❌ Verificações com falha: {runner.tests_failed}/{total}{Style.RESET_ALL}", err=True)
    if skipped:
        click.echo(f"{Fore.YELLOW}⏭  Ignoradas: {skipped}{Style.RESET_ALL}", err=True)
    click.echo("=" * 80, err=True)


def _execute(config: RunConfig, action: Callable[[UnipotentRunner], int]) -> None:
    """Monta o executor, roda a ação e converte erros em códigos de saída."""
    ctx = click.get_current_context()
    try:
        runner = UnipotentRunner(config)
        code = action(runner)
    except BudgetExceededError as e:
        logger.error(f"Orçamento excedido: {e}")
        click.echo(f"{Fore.RED}Orçamento excedido: {e}{Style.RESET_ALL}", err=True)
        ctx.exit(EXIT_BUDGET)
    except ValueError as e:
        logger.warning(f"Erro de uso: {e}")
        click.echo(f"Erro: {e}", err=True)
        ctx.exit(EXIT_USAGE)
    ctx.exit(code)


@click.group()
@click.option('--n', 'n', type=int, required=True, help="Grau n de GL_n(F_q)")
@click.option('--q', 'q', type=int, required=True, help="Ordem do corpo F_q")
@click.option('--coeff', default='cyclotomic', show_default=True, help="cyclotomic ou mod:L")
@click.option('--lambda', 'lam', default=None, help="Restringe a uma partição, ex. '2,1'")
@click.option('--seed', default=0, show_default=True, type=int, help="Semente dos testes aleatórios")
@click.option('--format', 'output_format', type=click.Choice(['tsv', 'json']), default='tsv',
              show_default=True)
@click.option('--budget-elements', type=int, default=None, help="Limite de elementos de grupo")
@click.option('--budget-flags', type=int, default=None, help="Limite de flags de M^λ")
@click.option('--cache-dir', default=None, help="Diretório do cache persistente de caracteres")
@click.option('--jobs', type=int, default=None, help="Workers paralelos para traços")
@click.pass_context
def cli(ctx, **options):
    """Módulos unipotentes S^λ e D^λ de GL_n(F_q)."""
    setup_logging(get_settings())
    try:
        ctx.obj = RunConfig(**options)
    except ValidationError as e:
        logger.warning(f"Erro de validação: {e}")
        click.echo(f"Parâmetros inválidos:\n{e}", err=True)
        ctx.exit(EXIT_USAGE)


@cli.command()
@click.option('--dump-basis', is_flag=True, default=False,
              help="Emite a matriz de coeficientes da base de S^λ (exige --lambda)")
@click.pass_obj
def dims(config: RunConfig, dump_basis: bool):
    """Tabela (λ, dim M^λ, dim S^λ, dim D^λ)."""
    def action(runner: UnipotentRunner) -> int:
        frame = runner.basis_matrix() if dump_basis else runner.dims()
        click.echo(render(frame, config.output_format), nl=False)
        return EXIT_BUDGET if runner.budget_exceeded else EXIT_OK

    _execute(config, action)


@cli.command()
@click.argument('suite', type=click.Choice(list(SUITES)))
@click.pass_obj
def verify(config: RunConfig, suite: str):
    """Executa as suítes de verificação (lemmas, characters, kostka ou all)."""
    def action(runner: UnipotentRunner) -> int:
        report = runner.verify(suite)
        click.echo(render(report.to_frame(), config.output_format), nl=False)
        print_summary(report)
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED

    _execute(config, action)


@cli.command()
@click.argument('kind', type=click.Choice(list(TABLE_KINDS)))
@click.pass_obj
def tables(config: RunConfig, kind: str):
    """Tabelas de Kostka, Kostka-Foulkes e multiplicidades calculadas."""
    def action(runner: UnipotentRunner) -> int:
        frame = runner.tables(kind)
        click.echo(render(frame, config.output_format), nl=False)
        return EXIT_OK

    _execute(config, action)


if __name__ == '__main__':
    cli()
