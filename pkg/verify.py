#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification Module
Loads case corpora, evaluates every case with the closed-form engine and the
quadrature oracle, and assembles deterministic reports
"""

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np
import pandas as pd

import config
import closedform
from closedform import IntegralSpec
from quad import PowerSpec, integrate_spec
from error_handler import ParseError, DomainError, NotConvergent, isolate_case_errors
from logger_config import get_logger, VerificationLogger

logger = get_logger('hyperint.verify')

CORPUS_FIELDS = ('id', 'family', 'm', 'mu', 'nu', 'a', 'b', 'beta', 'expected', 'gr_ref', 'tol')

_SQUARED_DENOM_BY_NAME = {
    config.VARIANT_EX3_COSH_SINH2: closedform.COSH_OVER_SINH2,
    config.VARIANT_EX3_SINH_COSH2: closedform.SINH_OVER_COSH2,
}


@dataclass(frozen=True)
class CaseRecord:
    id: str
    family: str
    spec: object
    expected: float = None
    gr_ref: str = None
    tol: float = config.DEFAULT_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise ParseError(f"case {self.id}: tol must be positive")


@dataclass
class CaseResult:
    id: str
    family: str
    gr_ref: str = None
    expected: float = None
    closed_value: float = None
    quad_value: float = None
    abs_diff: float = None
    rel_err: float = None
    est_error: float = None
    quad_err: float = None
    formula_id: str = None
    pass_: bool = False
    error: str = None
    message: str = None
    warnings: list = field(default_factory=list)
    closed_seconds: float = 0.0
    quad_seconds: float = 0.0


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _parse_real(value, name, case_id):
    """Decimal strings or JSON numbers to the nearest binary64"""
    if isinstance(value, bool) or value is None:
        raise ParseError(f"case {case_id}: field {name!r} must be a real number")
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ParseError(f"case {case_id}: field {name!r} = {value!r} is not a real number")
    if not math.isfinite(out):
        raise ParseError(f"case {case_id}: field {name!r} must be finite")
    return out


def _parse_int(value, name, case_id):
    number = _parse_real(value, name, case_id)
    if number != math.floor(number):
        raise ParseError(f"case {case_id}: field {name!r} must be an integer")
    return int(number)


def build_spec(family, m=0, mu=1.0, nu=1.0, a=0.0, b=1.0, beta=0.0):
    """
    Spec object for a corpus/CLI family name

    Returns:
        IntegralSpec or PowerSpec
    """
    if family in config.INTEGRAL_FAMILIES:
        return IntegralSpec(family, m=m, mu=mu, nu=nu, a=a, b=b, beta_weight=beta)
    if family in config.TRIG_VARIANTS:
        return IntegralSpec(config.TRIG_VARIANTS[family], m=1, mu=1.0, nu=1.0, a=a, b=b, trig=True)
    if family in config.SQUARED_DENOM_VARIANTS:
        return IntegralSpec(config.SQUARED_DENOM_VARIANTS[family], m=1, mu=mu, nu=2.0, a=1.0, b=1.0)
    if family == config.VARIANT_POW_SINH_COSH:
        return PowerSpec(power=mu, nu=nu)
    raise ParseError(f"unknown family {family!r}; expected one of {', '.join(config.ALL_CASE_FAMILIES)}")


def parse_case(entry, default_tol=config.DEFAULT_TOL):
    """
    One corpus object to a CaseRecord

    Args:
        entry: dict with keys among CORPUS_FIELDS
        default_tol: tol used when the entry has none

    Returns:
        CaseRecord
    """
    if not isinstance(entry, dict):
        raise ParseError(f"corpus entries must be objects, got {type(entry).__name__}")
    unknown = sorted(set(entry) - set(CORPUS_FIELDS))
    if unknown:
        raise ParseError(f"unknown corpus field(s): {', '.join(unknown)}")
    case_id = entry.get('id')
    if not isinstance(case_id, str) or not case_id:
        raise ParseError("every case needs a non-empty string id")
    family = entry.get('family')
    if not isinstance(family, str):
        raise ParseError(f"case {case_id}: missing family")

    values = {
        'm': _parse_int(entry.get('m', 0), 'm', case_id),
        'mu': _parse_real(entry.get('mu', 1.0), 'mu', case_id),
        'nu': _parse_real(entry.get('nu', 1.0), 'nu', case_id),
        'a': _parse_real(entry.get('a', 0.0), 'a', case_id),
        'b': _parse_real(entry.get('b', 1.0), 'b', case_id),
        'beta': _parse_real(entry.get('beta', 0.0), 'beta', case_id),
    }
    try:
        spec = build_spec(family, **values)
    except DomainError as e:
        raise ParseError(f"case {case_id}: {e}")

    expected = entry.get('expected')
    expected = None if expected is None else _parse_real(expected, 'expected', case_id)
    tol = entry.get('tol')
    tol = default_tol if tol is None else _parse_real(tol, 'tol', case_id)
    gr_ref = entry.get('gr_ref')
    if gr_ref is not None and not isinstance(gr_ref, str):
        raise ParseError(f"case {case_id}: gr_ref must be text")
    return CaseRecord(case_id, family, spec, expected, gr_ref, tol)


def load_corpus(path, default_tol=config.DEFAULT_TOL):
    """
    Read a JSON corpus file

    Returns:
        list of CaseRecord
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding='utf-8'))
    except OSError as e:
        raise ParseError(f"cannot read corpus {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(f"corpus {path} is not valid JSON: {e}")
    if not isinstance(raw, list):
        raise ParseError(f"corpus {path} must hold a JSON array of cases")
    records = [parse_case(entry, default_tol) for entry in raw]
    seen = set()
    for record in records:
        if record.id in seen:
            raise ParseError(f"duplicate case id {record.id!r}")
        seen.add(record.id)
    logger.info(f"📂 Loaded {len(records)} case(s) from {path}")
    return records


# ---------------------------------------------------------------------------
# Random property cases
# ---------------------------------------------------------------------------

GRID_MU = (1.0, 1.5, 2.0, 3.0)
GRID_MARGIN = 0.05
GRID_COSH_NU_SPAN = 10.0


def random_spec(rng):
    """
    One convergent IntegralSpec from the master grid

    m in 0..3, mu from GRID_MU, nu and a/b drawn GRID_MARGIN inside every
    convergence bound. The cosh denominators have no upper bound on nu, so
    theirs is drawn from a window GRID_COSH_NU_SPAN wide above the lower
    bound. Infeasible draws are redrawn.
    """
    while True:
        family = config.INTEGRAL_FAMILIES[int(rng.integers(0, 4))]
        m = int(rng.integers(0, 4))
        mu = GRID_MU[int(rng.integers(0, len(GRID_MU)))]
        b = float(rng.uniform(0.5, 2.0))
        a = float(b * rng.uniform(0.0, 0.9)) if m else 0.0
        lower = m * a / b + GRID_MARGIN
        if family in (config.FAMILY_COSH_COSH, config.FAMILY_SINH_COSH):
            upper = lower + GRID_COSH_NU_SPAN
        elif family == config.FAMILY_COSH_SINH:
            upper = mu - GRID_MARGIN
        else:
            upper = m + mu - GRID_MARGIN
        if upper <= lower:
            continue
        nu = float(rng.uniform(lower, upper))
        spec = IntegralSpec(family, m=m, mu=mu, nu=nu, a=a, b=b)
        if closedform.validity(spec).convergent:
            return spec


def generate_random_cases(count, seed=config.DEFAULT_SEED, tol=config.DEFAULT_TOL):
    """Seeded random cases; the same seed always gives the same cases"""
    rng = np.random.default_rng(seed)
    records = []
    for index in range(count):
        spec = random_spec(rng)
        records.append(CaseRecord(f"random-{index:04d}", spec.family, spec, tol=tol))
    return records


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def closed_form(record):
    """Closed-form EvalResult for a case"""
    family, spec = record.family, record.spec
    if family in config.INTEGRAL_FAMILIES:
        return closedform.evaluate(spec)
    if family in config.TRIG_VARIANTS:
        return closedform.eval_trig(closedform.TRIG_BY_FAMILY[spec.family], spec.a, spec.b)
    if family in _SQUARED_DENOM_BY_NAME:
        return closedform.eval_example3(_SQUARED_DENOM_BY_NAME[family], spec.mu)
    if family == config.VARIANT_POW_SINH_COSH:
        return closedform.eval_beta_power(spec.power, spec.nu)
    raise ParseError(f"unknown family {family!r}")


def require_convergent(spec):
    """Raise NotConvergent before either engine runs on a divergent integral"""
    if isinstance(spec, PowerSpec):
        if not spec.nu > spec.power > -1:
            raise NotConvergent(
                f"sinh^mu/cosh^nu needs nu > mu > -1, got mu = {spec.power!r}, nu = {spec.nu!r}")
        return
    verdict = closedform.validity(spec)
    if not verdict.convergent:
        raise NotConvergent(verdict.reason)


def _within(value, reference, tol):
    return abs(value - reference) <= max(tol, tol * abs(reference))


@isolate_case_errors
def _evaluate_case(record, quad_tol):
    require_convergent(record.spec)
    started = time.perf_counter()
    closed = closed_form(record)
    closed_seconds = time.perf_counter() - started
    started = time.perf_counter()
    oracle = integrate_spec(record.spec, quad_tol)
    quad_seconds = time.perf_counter() - started
    return {
        'ok': True,
        'closed': closed,
        'oracle': oracle,
        'closed_seconds': closed_seconds,
        'quad_seconds': quad_seconds,
    }


def run_case(record, quad_tol=config.QUAD_TOL):
    """
    Evaluate one case with both engines; never raises for engine errors

    Returns:
        CaseResult
    """
    outcome = _evaluate_case(record, quad_tol)
    result = CaseResult(record.id, record.family, record.gr_ref, record.expected)
    if not outcome['ok']:
        result.error = outcome['error']
        result.message = outcome['message']
        return result

    closed, oracle = outcome['closed'], outcome['oracle']
    result.closed_value = closed.value
    result.formula_id = closed.formula_id
    result.est_error = closed.est_error
    result.warnings = list(closed.warnings)
    result.quad_value = oracle.value
    result.quad_err = oracle.err_est
    result.abs_diff = abs(closed.value - oracle.value)
    result.rel_err = result.abs_diff / max(abs(oracle.value), 1e-300) if oracle.value else result.abs_diff
    result.closed_seconds = outcome['closed_seconds']
    result.quad_seconds = outcome['quad_seconds']
    passed = _within(closed.value, oracle.value, record.tol)
    if record.expected is not None:
        passed = passed and _within(closed.value, record.expected, record.tol)
    result.pass_ = passed
    return result


def _run_case_task(args):
    record, quad_tol = args
    return run_case(record, quad_tol)


@dataclass
class Report:
    results: list
    seed: int
    tol: float
    corpus: str = ''

    @property
    def summary(self):
        rel_errs = [r.rel_err for r in self.results if r.rel_err is not None]
        passed = sum(1 for r in self.results if r.pass_)
        return {
            'corpus': self.corpus,
            'total': len(self.results),
            'passed': passed,
            'failed': len(self.results) - passed,
            'errors': sum(1 for r in self.results if r.error),
            'max_rel_err': max(rel_errs) if rel_errs else 0.0,
            'seed': self.seed,
            'tol': self.tol,
        }

    @property
    def all_passed(self):
        return all(r.pass_ for r in self.results)

    def to_text(self):
        """Human-readable table rendered with pandas"""
        summary = self.summary
        lines = ['=' * 80, 'HYPERINT VERIFICATION REPORT', '=' * 80]
        if not self.results:
            lines.append('No cases in corpus: nothing to verify.')
        else:
            frame = pd.DataFrame([{
                'id': r.id,
                'family': r.family,
                'G&R': r.gr_ref or '',
                'formula': r.formula_id or '',
                'closed': '' if r.closed_value is None else f"{r.closed_value:.15g}",
                'oracle': '' if r.quad_value is None else f"{r.quad_value:.15g}",
                'rel err': '' if r.rel_err is None else f"{r.rel_err:.2e}",
                'status': '✅ PASS' if r.pass_ else f"❌ {r.error or 'FAIL'}",
            } for r in self.results])
            lines.append(frame.to_string(index=False))
        lines.append('-' * 80)
        lines.append(
            f"Total: {summary['total']} | Passed: {summary['passed']} | Failed: {summary['failed']} | "
            f"Errors: {summary['errors']} | Max rel err: {summary['max_rel_err']:.3e} | "
            f"Tol: {summary['tol']:.1e} | Seed: {summary['seed']:#x}"
        )
        lines.append('=' * 80)
        return '\n'.join(lines)

    def to_dict(self):
        cases = []
        timings = {}
        for r in self.results:
            row = asdict(r)
            row['pass'] = row.pop('pass_')
            timings[r.id] = {'closed_seconds': row.pop('closed_seconds'),
                             'quad_seconds': row.pop('quad_seconds')}
            cases.append(row)
        return {'summary': self.summary, 'cases': cases, 'timings': timings}

    def to_json(self, include_timings=True):
        """Structured report; floats carry 17 significant digits"""
        data = self.to_dict()
        if not include_timings:
            data.pop('timings')
        return dump_json(data) + '\n'


def dump_json(obj, indent=0):
    """JSON text with sorted keys and floats written with REPORT_DIGITS significant digits"""
    pad = '  ' * (indent + 1)
    end = '  ' * indent
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f"{pad}{json.dumps(str(k))}: {dump_json(obj[k], indent + 1)}" for k in sorted(obj)]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        return '[\n' + ',\n'.join(pad + dump_json(v, indent + 1) for v in obj) + '\n' + end + ']'
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return json.dumps(str(value))
        return format(value, f'.{config.REPORT_DIGITS}g')
    return json.dumps(str(obj))


def run_suite(corpus_path, tol=config.DEFAULT_TOL, seed=config.DEFAULT_SEED, jobs=1,
              random_cases=0, json_path=None, quad_tol=config.QUAD_TOL):
    """
    Verify every case of a corpus (plus optional seeded random cases)

    Args:
        corpus_path: JSON corpus file
        tol: Default per-case tolerance
        seed: Seed for random cases, recorded in the report
        jobs: Worker processes; results are sorted by id either way
        random_cases: Number of random property cases to append
        json_path: Optional path for the structured report
        quad_tol: Quadrature tolerance

    Returns:
        tuple: (Report, exit code)

    Raises:
        ParseError: unreadable or malformed corpus
    """
    records = load_corpus(corpus_path, tol)
    if random_cases:
        records += generate_random_cases(random_cases, seed, tol)
        logger.info(f"🎲 Added {random_cases} random case(s) with seed {seed:#x}")

    tasks = [(record, quad_tol) for record in records]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case_task, tasks))
    else:
        results = [_run_case_task(task) for task in tasks]
    results.sort(key=lambda r: r.id)

    case_logger = VerificationLogger(get_logger('hyperint'))
    for result in results:
        if result.error:
            case_logger.log_case_error(result.id, result.family, result.error, result.message)
        else:
            case_logger.log_case_result(result)

    report = Report(results, seed, tol, str(corpus_path))
    case_logger.log_suite_summary(report.summary)
    if json_path:
        Path(json_path).write_text(report.to_json(), encoding='utf-8')
        logger.info(f"💾 Structured report written to {json_path}")
    exit_code = config.EXIT_PASS if report.all_passed else config.EXIT_FAIL
    return report, exit_code


def eval_one(family, m=0, mu=1.0, nu=1.0, a=0.0, b=1.0, beta=0.0, oracle=False,
             quad_tol=config.QUAD_TOL, out=print):
    """
    Evaluate a single integral and print value, formula and error estimate

    Returns:
        int: exit code

    Raises:
        ParseError: unknown family or invalid parameters
        HyperIntError: engine errors (NotConvergent is mapped to exit 3 by the caller)
    """
    try:
        spec = build_spec(family, m=m, mu=mu, nu=nu, a=a, b=b, beta=beta)
    except DomainError as e:
        raise ParseError(str(e))
    require_convergent(spec)
    record = CaseRecord('cli', family, spec)
    closed = closed_form(record)
    out(f"value      {closed.value:.17g}")
    out(f"formula    {closed.formula_id}")
    out(f"est_error  {closed.est_error:.3e}")
    for note in closed.warnings:
        out(f"warning    ⚠️  {note}")
    if oracle:
        result = integrate_spec(spec, quad_tol)
        out(f"oracle     {result.value:.17g}")
        out(f"difference {abs(result.value - closed.value):.3e}")
        out(f"quad_err   {result.err_est:.3e} ({result.n_evals} evaluations)")
    return config.EXIT_PASS
