"""
test_cli.py - Testes da CLI (dims, verify, tables) e dos códigos de saída
"""

import json

import pytest
from click.testing import CliRunner

from cli.app import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, cli
from cli.schemas import BUDGET_EXCEEDED, RunConfig


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args))


def test_dims_tsv(runner):
    result = invoke(runner, '--n', '2', '--q', '2', 'dims')
    assert result.exit_code == EXIT_OK, result.output
    assert result.stdout == "lambda\tdim_M\tdim_S\tdim_D\n2\t3\t2\t2\n1,1\t1\t1\t1\n"


def test_dims_json(runner):
    result = invoke(runner, '--n', '2', '--q', '2', '--format', 'json', 'dims')
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout) == [
        {"lambda": "2", "dim_M": 3, "dim_S": 2, "dim_D": 2},
        {"lambda": "1,1", "dim_M": 1, "dim_S": 1, "dim_D": 1},
    ]


def test_dims_n3(runner):
    result = invoke(runner, '--n', '3', '--q', '2', 'dims')
    assert result.exit_code == EXIT_OK
    lines = result.stdout.splitlines()
    assert lines[1:] == ["3\t21\t8\t8", "2,1\t7\t6\t6", "1,1,1\t1\t1\t1"]


def test_dims_modular(runner):
    result = invoke(runner, '--n', '2', '--q', '2', '--coeff', 'mod:3', 'dims')
    assert result.exit_code == EXIT_OK
    assert result.stdout.splitlines()[1:] == ["2\t3\t2\t1", "1,1\t1\t1\t1"]


def test_dims_n1(runner):
    result = invoke(runner, '--n', '1', '--q', '2', 'dims')
    assert result.exit_code == EXIT_OK
    assert result.stdout.splitlines()[1:] == ["1\t1\t1\t1"]


def test_dims_single_partition(runner):
    result = invoke(runner, '--n', '3', '--q', '2', '--lambda', '2,1', 'dims')
    assert result.exit_code == EXIT_OK
    assert result.stdout.splitlines() == ["lambda\tdim_M\tdim_S\tdim_D", "2,1\t7\t6\t6"]


def test_dims_dump_basis(runner):
    """S^{(2,1)} em q = 2 são os vetores de soma zero de M^{(2,1)} (7 retas)."""
    result = invoke(runner, '--n', '3', '--q', '2', '--lambda', '2,1', 'dims', '--dump-basis')
    assert result.exit_code == EXIT_OK, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "\t".join(str(i) for i in range(7))
    rows = [line.split("\t") for line in lines[1:]]
    assert len(rows) == 6
    for i, row in enumerate(rows):
        expected = ["0"] * 7
        expected[i] = "1"
        expected[6] = "-1"
        assert row == expected


def test_dims_dump_basis_json_matches_rank(runner):
    result = invoke(runner, '--n', '2', '--q', '2', '--lambda', '2', '--format', 'json',
                    'dims', '--dump-basis')
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout) == [
        {"0": "1", "1": "0", "2": "-1"},
        {"0": "0", "1": "1", "2": "-1"},
    ]


def test_dims_dump_basis_requires_lambda(runner):
    result = invoke(runner, '--n', '2', '--q', '2', 'dims', '--dump-basis')
    assert result.exit_code == EXIT_USAGE


def test_verify_lemmas(runner):
    result = invoke(runner, '--n', '2', '--q', '2', 'verify', 'lemmas')
    assert result.exit_code == EXIT_OK, result.output
    header = result.stdout.splitlines()[0]
    assert header == "suite\tcheck\tshape\tanchor\tstatus\tdetail"
    assert "\tFAIL\t" not in result.stdout


def test_verify_is_deterministic(runner):
    args = ('--n', '2', '--q', '3', '--seed', '5', 'verify', 'lemmas')
    first = invoke(runner, *args)
    second = invoke(runner, *args)
    assert first.exit_code == second.exit_code == EXIT_OK
    assert first.stdout == second.stdout


def test_tables_kostka(runner):
    result = invoke(runner, '--n', '2', '--q', '2', 'tables', 'kostka')
    assert result.exit_code == EXIT_OK
    assert result.stdout == "mu\t2\t1,1\n2\t1\t1\n1,1\t0\t1\n"


def test_tables_kostka_poly_json(runner):
    result = invoke(runner, '--n', '2', '--q', '2', '--format', 'json', 'tables', 'kostka-poly')
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout) == [
        {"mu": "2", "2": "1", "1,1": "t"},
        {"mu": "1,1", "2": "0", "1,1": "1"},
    ]


def test_tables_multiplicities_match_kostka_poly_at_q(runner):
    result = invoke(runner, '--n', '2', '--q', '2', 'tables', 'multiplicities')
    assert result.exit_code == EXIT_OK
    assert result.stdout == "mu\t2\t1,1\n2\t1\t2\n1,1\t0\t1\n"


@pytest.mark.parametrize("args", [
    ('--n', '2', '--q', '6', 'dims'),
    ('--n', '2', '--q', '2', '--coeff', 'mod:4', 'dims'),
    ('--n', '2', '--q', '3', '--coeff', 'mod:5', 'dims'),
    ('--n', '2', '--q', '2', '--coeff', 'padic', 'dims'),
    ('--n', '2', '--q', '2', '--lambda', '2,1', 'dims'),
    ('--n', '2', '--q', '2', 'verify', 'everything'),
    ('--n', '2', '--q', '2', 'tables', 'nope'),
    ('--n', '2', '--q', '2', '--coeff', 'mod:3', 'tables', 'multiplicities'),
])
def test_usage_errors(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == EXIT_USAGE


def test_budget_exceeded(runner):
    result = invoke(runner, '--n', '2', '--q', '2', '--budget-flags', '2', 'dims')
    assert result.exit_code == EXIT_BUDGET
    first, second = result.stdout.splitlines()[1:]
    assert first == "\t".join(["2"] + [BUDGET_EXCEEDED] * 3)
    assert second == "1,1\t1\t1\t1"


def test_run_config_normalizes_coeff():
    config = RunConfig(n=3, q=2, coeff=' mod:07 ')
    assert config.coeff == 'mod:7'
    assert config.ell == 7
    assert RunConfig(n=2, q=4).ell is None
