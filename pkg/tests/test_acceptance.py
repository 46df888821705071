"""End-to-end agreement: known constants, the bundled corpus and the random master grid"""

import math

import pytest

import config
import verify
from env_config import get_env_config
from quad import integrate_spec

CATALAN = 0.915965594177219015054603514932

KNOWN_CONSTANTS = [
    ('x-over-sinh', config.FAMILY_COSH_SINH, {'mu': 2.0, 'nu': 1.0}, math.pi ** 2 / 4),
    ('x-over-cosh', config.FAMILY_COSH_COSH, {'mu': 2.0, 'nu': 1.0}, 2 * CATALAN),
    ('sinh-over-cosh2-over-x', config.VARIANT_EX3_SINH_COSH2, {'mu': 0.0}, 4 * CATALAN / math.pi),
    ('sinh-over-cosh2', config.VARIANT_EX3_SINH_COSH2, {'mu': 1.0}, 1.0),
    ('sinh-over-cosh2-power', config.VARIANT_POW_SINH_COSH, {'mu': 1.0, 'nu': 2.0}, 1.0),
    ('sech', config.FAMILY_COSH_COSH, {'m': 1, 'nu': 1.0}, math.pi / 2),
]


@pytest.mark.parametrize("name, family, params, expected", KNOWN_CONSTANTS, ids=[k[0] for k in KNOWN_CONSTANTS])
def test_known_constants(name, family, params, expected):
    spec = verify.build_spec(family, **params)
    closed = verify.closed_form(verify.CaseRecord(name, family, spec))
    assert closed.value == pytest.approx(expected, abs=1e-9)
    assert integrate_spec(spec).value == pytest.approx(expected, abs=1e-9)


def test_catalan_digits():
    assert 2 * CATALAN == pytest.approx(1.8319311883, abs=1e-10)
    assert 4 * CATALAN / math.pi == pytest.approx(1.1662436, abs=1e-7)


def test_bundled_corpus_passes(tmp_path):
    corpus = get_env_config().base_dir / config.DEFAULT_CORPUS
    report, exit_code = verify.run_suite(corpus, json_path=tmp_path / 'report.json')
    failures = [(r.id, r.error, r.message, r.rel_err) for r in report.results if not r.pass_]
    assert failures == []
    assert exit_code == config.EXIT_PASS
    assert report.summary['max_rel_err'] <= config.DEFAULT_TOL


def test_bundled_corpus_expected_values():
    corpus = get_env_config().base_dir / config.DEFAULT_CORPUS
    for record in verify.load_corpus(corpus):
        if record.expected is None:
            continue
        closed = verify.closed_form(record)
        assert closed.value == pytest.approx(record.expected, rel=record.tol), record.id


@pytest.mark.slow
def test_master_grid():
    records = verify.generate_random_cases(200, seed=config.DEFAULT_SEED)
    results = [verify.run_case(record) for record in records]
    failures = [(r.id, r.family, r.formula_id, r.error, r.message, r.rel_err)
                for r in results if not r.pass_]
    assert failures == []
    assert max(r.rel_err for r in results) <= config.DEFAULT_TOL
