"""
test_verification.py - Suítes de verificação (lemmas, characters, kostka)
"""

import pytest

from src.characters.characters import UnipotentContext
from src.verification.suites import FAIL, PASS, SKIP, SUITES, VerificationRunner


def _statuses(runner):
    return {r.status for r in runner.results}


def test_all_suites_pass_n2(ctx_2_2):
    runner = VerificationRunner(ctx_2_2, seed=0)
    runner.run('all')
    assert runner.passed, runner.to_frame().query("status == 'FAIL'").to_string()
    assert runner.tests_failed == 0
    assert runner.tests_passed > 0
    assert {r.suite for r in runner.results} == {'lemmas', 'characters', 'kostka'}


def test_lemmas_pass_n3(ctx_3_2):
    runner = VerificationRunner(ctx_3_2, seed=7)
    runner.run('lemmas')
    assert runner.passed
    checks = {r.check for r in runner.results}
    assert {'intersection_dichotomy', 'k_eigen', 'form_bar', 'submodule_dichotomy'} <= checks


def test_characters_pass_with_q3(ctx_2_3):
    runner = VerificationRunner(ctx_2_3)
    runner.run('characters')
    assert runner.passed
    assert FAIL not in _statuses(runner)


def test_modular_mode_skips_character_identities(f2, k2_mod3):
    context = UnipotentContext(2, f2, k2_mod3)
    runner = VerificationRunner(context)
    runner.run('all')
    assert runner.passed
    frame = runner.to_frame()
    skipped = set(frame.loc[frame['status'] == SKIP, 'check'])
    assert {'orthonormality', 'ggg_identity'} <= skipped
    radical = frame[frame['check'] == 'radical']
    assert set(radical['status']) == {PASS}


def test_frame_layout_and_anchors(ctx_2_2):
    runner = VerificationRunner(ctx_2_2)
    runner.run('lemmas')
    frame = runner.to_frame()
    assert list(frame.columns) == ['suite', 'check', 'shape', 'anchor', 'status', 'detail']
    anchors = set(frame['anchor'])
    assert any("if and only if" in a for a in anchors)
    assert set(frame["shape"]) == {"2", "1,1"}


def test_same_seed_same_results(ctx_2_2):
    first = VerificationRunner(ctx_2_2, seed=3)
    second = VerificationRunner(ctx_2_2, seed=3)
    first.run('lemmas')
    second.run('lemmas')
    assert first.to_frame().equals(second.to_frame())


def test_unknown_suite(ctx_2_2):
    assert 'all' in SUITES
    with pytest.raises(ValueError):
        VerificationRunner(ctx_2_2).run('nope')


def test_failing_check_is_recorded(ctx_2_2):
    runner = VerificationRunner(ctx_2_2)

    def broken():
        raise ArithmeticError("boom")

    result = runner.record('lemmas', 'broken', '*', 'anchor', broken)
    assert result.status == FAIL
    assert "boom" in result.detail
    assert not runner.passed
