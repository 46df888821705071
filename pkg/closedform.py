#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Closed-Form Evaluation Module
Validity checks and closed-form values for the hyperbolic integrals

    I1 = int_0^inf x^(mu-1) e^(-beta x) cosh^m(ax) / cosh^nu(bx) dx
    I2 = ... sinh^m(ax) / cosh^nu(bx)
    I3 = ... cosh^m(ax) / sinh^nu(bx)
    I4 = ... sinh^m(ax) / sinh^nu(bx)

together with their trigonometric and named special variants.
"""

import math
import sys
from dataclasses import dataclass, field, replace
from functools import wraps

import numpy as np

import config
import specfun
import hypergeom
from hypergeom import ParamList
from error_handler import (DomainError, NotConvergent, PoleError, UnsupportedRegion,
                           DivergentSeries, SlowConvergence, collect_near_poles, ensure_finite)
from logger_config import get_logger

logger = get_logger('hyperint.closedform')

_FLOAT_EPS = sys.float_info.epsilon

# Zeta-form and mu = 2 variants, named numerator/denominator
COSH_SINH = 'CoshSinh'
SINH_SINH = 'SinhSinh'
COSH_COSH = 'CoshCosh'
SINH_COSH = 'SinhCosh'
ZETA_VARIANTS = (COSH_SINH, SINH_SINH, COSH_COSH, SINH_COSH)
FAMILY_TO_VARIANT = {
    config.FAMILY_COSH_COSH: COSH_COSH,
    config.FAMILY_SINH_COSH: SINH_COSH,
    config.FAMILY_COSH_SINH: COSH_SINH,
    config.FAMILY_SINH_SINH: SINH_SINH,
}

# Trigonometric numerators
COS_OVER_COSH = 'CosOverCosh'
SIN_OVER_SINH = 'SinOverSinh'
SIN_OVER_COSH = 'SinOverCosh'
TRIG_BY_FAMILY = {
    config.FAMILY_COSH_COSH: COS_OVER_COSH,
    config.FAMILY_SINH_SINH: SIN_OVER_SINH,
    config.FAMILY_SINH_COSH: SIN_OVER_COSH,
}

# Squared denominators at a = b = 1
COSH_OVER_SINH2 = 'CoshOverSinh2'
SINH_OVER_COSH2 = 'SinhOverCosh2'


@dataclass(frozen=True)
class IntegralSpec:
    """Parameters of one integral from the four families"""
    family: str
    m: int = 0
    mu: float = 1.0
    nu: float = 1.0
    a: float = 0.0
    b: float = 1.0
    beta_weight: float = 0.0
    trig: bool = False

    def __post_init__(self):
        if self.family not in config.INTEGRAL_FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a non-negative integer, got {self.m!r}")
        object.__setattr__(self, 'm', int(self.m))
        for name in ('mu', 'nu', 'a', 'b', 'beta_weight'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if not self.b > 0:
            raise DomainError(f"b must be positive, got {self.b!r}")
        if self.a < 0:
            raise DomainError(f"a must be non-negative, got {self.a!r}")
        if self.beta_weight < 0:
            raise DomainError(f"beta_weight must be non-negative, got {self.beta_weight!r}")
        if self.trig and self.m != 1:
            raise DomainError("trigonometric numerators require m = 1")


@dataclass(frozen=True)
class Validity:
    nu_star: float
    convergent: bool
    reason: str


@dataclass(frozen=True)
class EvalResult:
    value: float
    formula_id: str
    est_error: float
    warnings: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.formula_id:
            raise ValueError("formula_id must be non-empty")
        if self.est_error < 0:
            raise ValueError("est_error must be non-negative")


def _records_near_poles(func):
    """Collect near-pole notes reported underneath into EvalResult.warnings"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        with collect_near_poles() as notes:
            result = func(*args, **kwargs)
        if notes:
            result = replace(result, warnings=result.warnings + tuple(notes))
        return result
    return wrapper


def _result(value, formula_id, est_error=0.0, notes=()):
    value = ensure_finite(float(value), formula_id)
    est = max(float(est_error), config.EST_ERROR_FLOOR)
    return EvalResult(value, formula_id, est, tuple(notes))


def _angle(a, b):
    """pi a / (2b) with the ratio rounded once"""
    return math.pi * (a / (2.0 * b))


# ---------------------------------------------------------------------------
# Validity and the binomial shifts
# ---------------------------------------------------------------------------

def validity(spec):
    """
    Convergence verdict for an IntegralSpec

    At infinity: nu > m nu* + beta/b with nu* = a/b (nu* = 0 for bounded
    trigonometric numerators). At x = 0: I1 mu > 0, I2 mu + m > 0,
    I3 nu < mu, I4 nu < m + mu.

    Returns:
        Validity
    """
    nu_star = 0.0 if spec.trig else spec.a / spec.b
    bound = spec.m * nu_star + spec.beta_weight / spec.b
    if not spec.nu > bound:
        return Validity(nu_star, False,
                        f"diverges at infinity: needs nu > {bound:.17g}, got nu = {spec.nu:.17g}")
    fam = spec.family
    if fam == config.FAMILY_COSH_COSH and not spec.mu > 0:
        return Validity(nu_star, False, "diverges at x = 0: I1 needs mu > 0")
    if fam == config.FAMILY_SINH_COSH and not spec.mu + spec.m > 0:
        return Validity(nu_star, False, "diverges at x = 0: I2 needs mu + m > 0")
    if fam == config.FAMILY_COSH_SINH and not spec.nu < spec.mu:
        return Validity(nu_star, False, "diverges at x = 0: I3 needs nu < mu")
    if fam == config.FAMILY_SINH_SINH and not spec.nu < spec.m + spec.mu:
        return Validity(nu_star, False, "diverges at x = 0: I4 needs nu < m + mu")
    return Validity(nu_star, True, "convergent")


def _require_convergent(spec):
    verdict = validity(spec)
    if not verdict.convergent:
        raise NotConvergent(verdict.reason)
    return verdict


def alpha_r(r, spec):
    """(2r - m) a/(2b) + beta/(2b) for 0 <= r <= m"""
    if not 0 <= r <= spec.m or int(r) != r:
        raise DomainError(f"alpha_r needs 0 <= r <= m = {spec.m}, got r = {r!r}")
    return (2 * r - spec.m) * spec.a / (2.0 * spec.b) + spec.beta_weight / (2.0 * spec.b)


def _binomial_weights(spec):
    sign = -1 if config.is_sinh_numerator(spec.family) else 1
    return [sign ** r * math.comb(spec.m, r) for r in range(spec.m + 1)]


def _zero_a_reduction(spec):
    """a = 0 with m >= 1: sinh numerators vanish, cosh numerators drop to m = 0"""
    if spec.a != 0.0 or spec.m == 0:
        return spec
    if config.is_sinh_numerator(spec.family):
        return None
    return replace(spec, m=0)


# ---------------------------------------------------------------------------
# mu = 1: binomial sums
# ---------------------------------------------------------------------------

def _gamma_sum(spec, nu):
    """2^(nu-m)/(2b) Gamma(1-nu) sum_r w_r Gamma(A_r)/Gamma(1-nu+A_r) and its abs-sum"""
    weights = _binomial_weights(spec)
    prefactor = 2.0 ** (nu - spec.m) / (2.0 * spec.b) * specfun.gamma(1.0 - nu)
    terms = []
    for r, w in enumerate(weights):
        big_a = 0.5 * nu + alpha_r(r, spec)
        terms.append(prefactor * w * specfun.gamma_ratio(big_a, 1.0 - nu + big_a))
    return math.fsum(terms), sum(abs(t) for t in terms)


def _psi_over_gamma(y):
    """psi(y)/Gamma(y), continued to the poles y = -j where it equals (-1)^(j+1) j!"""
    if y <= 0 and y == math.floor(y):
        j = int(-y)
        return (-1.0) ** (j + 1) * math.factorial(j)
    return specfun.digamma(y) * specfun.gamma_ratio(1.0, y)


def _sinh_sinh_integer_limit(spec, k):
    """
    I4 at nu = k (1 <= k <= m): Gamma(1-nu) has a pole that the vanishing
    binomial sum cancels; the value is 2^(k-m)/(2b) (-1)^k/(k-1)! S'(k).
    For k = 1 this is the psi form (1/(2^m b)) sum_r (-1)^(r-1) C(m,r) psi(1/2 + alpha_r).
    """
    weights = _binomial_weights(spec)
    terms = []
    for r, w in enumerate(weights):
        x = 0.5 * k + alpha_r(r, spec)
        y = 1.0 - 0.5 * k + alpha_r(r, spec)
        if k == 1:
            terms.append(w * specfun.digamma(x))
            continue
        gx = specfun.gamma(x)
        terms.append(w * 0.5 * gx * (specfun.digamma(x) * specfun.gamma_ratio(1.0, y) + _psi_over_gamma(y)))
    scale = 2.0 ** (k - spec.m) / (2.0 * spec.b) * (-1.0) ** k / math.factorial(k - 1)
    value = scale * math.fsum(terms)
    return value, abs(scale) * sum(abs(t) for t in terms)


@_records_near_poles
def eval_section2(spec):
    """
    mu = 1 binomial reductions

    I1, I2: 2^(nu-m)/(2b) sum_r (+-1)^r C(m,r) / A_r  2F1(nu, A_r; 1 + A_r; -1)
    I3, I4: 2^(nu-m)/(2b) Gamma(1-nu) sum_r (+-1)^r C(m,r) Gamma(A_r)/Gamma(1-nu+A_r)
    with A_r = nu/2 + alpha_r. I4 at integer nu uses the limiting form.

    Args:
        spec: IntegralSpec with mu = 1, trig False

    Returns:
        EvalResult
    """
    if spec.mu != 1.0 or spec.trig:
        raise DomainError("eval_section2 needs mu = 1 and a hyperbolic numerator")
    _require_convergent(spec)
    reduced = _zero_a_reduction(spec)
    if reduced is None:
        return _result(0.0, 'sinh-numerator-a0')
    spec = reduced

    fam, nu = spec.family, spec.nu
    if fam in (config.FAMILY_COSH_COSH, config.FAMILY_SINH_COSH):
        weights = _binomial_weights(spec)
        prefactor = 2.0 ** (nu - spec.m) / (2.0 * spec.b)
        terms = []
        for r, w in enumerate(weights):
            big_a = 0.5 * nu + alpha_r(r, spec)
            terms.append(prefactor * w / big_a * hypergeom.gauss_2f1_minus1(nu, big_a, 1.0 + big_a))
        est = 1e-15 * sum(abs(t) for t in terms)
        return _result(math.fsum(terms), 'binomial-2F1', est)

    if fam == config.FAMILY_SINH_SINH and spec.m >= 1:
        k = round(nu)
        if 1 <= k <= spec.m and abs(nu - k) < config.NU_LIMIT_SWITCH:
            return _integer_nu_branch(spec, k)

    value, mass = _gamma_sum(spec, nu)
    formula = 'binomial-gamma-continued' if nu > 1.0 else 'binomial-gamma'
    return _result(value, formula, 4e-16 * mass)


def _integer_nu_branch(spec, k):
    """I4 with |nu - k| < NU_LIMIT_SWITCH: exact limit plus a first-order correction"""
    limit, mass = _sinh_sinh_integer_limit(spec, k)
    formula = 'binomial-psi-limit' if k == 1 else 'binomial-gamma-limit'
    offset = spec.nu - k
    if offset == 0.0:
        return _result(limit, formula, 1e-15 * mass)

    notes = [f"nu = {spec.nu!r} is within {abs(offset):.1e} of the removable pole at nu = {k}"]
    step = 1e-3
    try:
        upper, _ = _gamma_sum(spec, k + step)
        lower, _ = _gamma_sum(spec, k - step)
    except (PoleError, DomainError) as e:
        logger.debug(f"no finite-difference correction near nu = {k}: {e}")
        return _result(limit, formula, abs(offset) * max(1.0, abs(limit)), notes)
    slope = (upper - lower) / (2 * step)
    curvature = (upper - 2 * limit + lower) / step ** 2
    value = limit + offset * slope
    est = 0.5 * offset ** 2 * abs(curvature) + abs(offset) * 1e-6 * abs(slope) + 1e-15 * mass
    return _result(value, formula, est, notes)


def _mu_zero_branch(general, limit, mu, formula):
    """
    Gamma(mu) times a vanishing zeta difference, |mu| < MU_ZERO_SWITCH

    The mu = 0 limit plus mu times the slope of general(mu) from a
    symmetric difference at +-1e-3, where the product is still accurate.
    """
    if mu == 0.0:
        return _result(limit, formula, 1e-15 * abs(limit))
    step = 1e-3
    upper, lower = general(step), general(-step)
    slope = (upper - lower) / (2 * step)
    curvature = (upper - 2 * limit + lower) / step ** 2
    value = limit + mu * slope
    est = 0.5 * mu ** 2 * abs(curvature) + abs(mu) * 1e-9 * max(1.0, abs(slope)) + 1e-15 * abs(limit)
    notes = [f"mu = {mu!r} evaluated by the mu = 0 limit with a first-order correction"]
    return _result(value, formula, est, notes)


@_records_near_poles
def eval_m0_special(family, nu, b=1.0):
    """
    m = 0, mu = 1 closed forms

    int dx / cosh^nu(bx) = (sqrt(pi)/(2b)) Gamma(nu/2) / Gamma(1/2 + nu/2),  nu > 0
    int dx / sinh^nu(bx) = Gamma(nu/2) Gamma(1/2 - nu/2) / (2b sqrt(pi)),   0 < nu < 1
    """
    if not b > 0:
        raise DomainError("b must be positive")
    if not nu > 0:
        raise NotConvergent("1/cosh^nu and 1/sinh^nu integrals need nu > 0")
    if config.is_sinh_denominator(family):
        if not nu < 1:
            raise NotConvergent("int dx / sinh^nu diverges at x = 0 for nu >= 1")
        value = specfun.gamma(0.5 * nu) * specfun.gamma(0.5 - 0.5 * nu) / (2.0 * b * math.sqrt(math.pi))
        return _result(value, 'm0-sinh-gamma', 1e-15 * abs(value))
    value = 0.5 * math.sqrt(math.pi) / b * specfun.gamma_ratio(0.5 * nu, 0.5 + 0.5 * nu)
    return _result(value, 'm0-cosh-gamma', 1e-15 * abs(value))


# ---------------------------------------------------------------------------
# m = 1 closed forms
# ---------------------------------------------------------------------------

def m1_closed_value(family, nu, a, b, method='default'):
    """
    m = 1, mu = 1 closed forms at formula level (any real a, no validity check)

    I1: 2^(nu-1)/(2b) B(nu/2 + c, nu/2 - c),  c = a/(2b)
    I2: I1 value - 2^(nu-1)/(b (nu/2 + c)) 2F1(nu, nu/2 + c; 1 + nu/2 + c; -1)
        or, with method='3F2', 2^nu a/((nu b)^2 - a^2) 3F2(nu, nu/2+c, nu/2-c; 1+nu/2+c, 1+nu/2-c; -1)
    I3: 2^(nu-2)/b cos(pi a/2b)/cos(pi nu/2) B(...)
    I4: 2^(nu-2)/b sin(pi a/2b)/sin(pi nu/2) B(...)
    """
    c = a / (2.0 * b)
    p = 0.5 * nu + c
    q = 0.5 * nu - c
    if family == config.FAMILY_SINH_COSH and method == '3F2':
        params = ParamList((nu, p, q), (1.0 + p, 1.0 + q), -1.0)
        return 2.0 ** nu * a / ((nu * b) ** 2 - a * a) * hypergeom.pfq(params)
    if method not in ('default', '3F2'):
        raise DomainError(f"unknown m = 1 method {method!r}")

    beta_pq = specfun.beta(p, q)
    if family == config.FAMILY_COSH_COSH:
        return 2.0 ** (nu - 1) / (2.0 * b) * beta_pq
    if family == config.FAMILY_SINH_COSH:
        return (2.0 ** (nu - 1) / (2.0 * b) * beta_pq
                - 2.0 ** (nu - 1) / (b * p) * hypergeom.gauss_2f1_minus1(nu, p, 1.0 + p))
    theta = _angle(a, b)
    if family == config.FAMILY_COSH_SINH:
        return 2.0 ** (nu - 2) / b * math.cos(theta) / math.cos(0.5 * math.pi * nu) * beta_pq
    return 2.0 ** (nu - 2) / b * math.sin(theta) / math.sin(0.5 * math.pi * nu) * beta_pq


@_records_near_poles
def eval_m1_closed(spec, method='default'):
    """
    m = 1, mu = 1 Beta-function forms

    Args:
        spec: IntegralSpec with m = 1, mu = 1, no exponential weight
        method: 'default', or '3F2' for the I2 hypergeometric form

    Returns:
        EvalResult
    """
    if spec.m != 1 or spec.mu != 1.0 or spec.trig:
        raise DomainError("eval_m1_closed needs m = 1, mu = 1 and hyperbolic numerators")
    if spec.beta_weight != 0.0:
        raise DomainError("the m = 1 Beta forms assume no exponential weight; use eval_section2")
    _require_convergent(spec)
    if spec.a == 0.0 and config.is_sinh_numerator(spec.family):
        return _result(0.0, 'sinh-numerator-a0')

    notes = []
    gap = spec.nu - spec.a / spec.b
    if gap < config.BETA_POLE_WARN:
        notes.append(f"nu - a/b = {gap:.1e}: Beta function is close to its pole")
    value = m1_closed_value(spec.family, spec.nu, spec.a, spec.b, method)
    formula = {
        config.FAMILY_COSH_COSH: 'm1-beta',
        config.FAMILY_SINH_COSH: 'm1-3F2' if method == '3F2' else 'm1-beta-minus-2F1',
        config.FAMILY_COSH_SINH: 'm1-cos-beta',
        config.FAMILY_SINH_SINH: 'm1-sin-beta',
    }[spec.family]
    est = 1e-14 * abs(value)
    if spec.family == config.FAMILY_SINH_COSH and method == 'default':
        # Beta and 2F1 parts cancel for small a/b
        est = 1e-15 * (abs(specfun.beta(0.5 * spec.nu + spec.a / (2 * spec.b),
                                        0.5 * spec.nu - spec.a / (2 * spec.b))) * 2.0 ** spec.nu / spec.b)
    return _result(value, formula, est, notes)


@_records_near_poles
def eval_nu1_elementary(spec):
    """
    m = 1, nu = 1, mu = 1 elementary values, 0 <= a/b < 1

    I1 = (pi/2b) sec(pi a/2b), I4 = (pi/2b) tan(pi a/2b),
    I2 = (pi/2b) sec(pi a/2b) - (1/2b)(psi(3/4 + a/4b) - psi(1/4 + a/4b)),
    the psi difference taken from hypergeom.f21_psi_form
    """
    if spec.m != 1 or spec.nu != 1.0 or spec.mu != 1.0 or spec.trig or spec.beta_weight != 0.0:
        raise DomainError("eval_nu1_elementary needs m = 1, nu = 1, mu = 1 and no weight")
    ratio = spec.a / spec.b
    if not 0 <= ratio < 1:
        raise DomainError(f"elementary nu = 1 forms need 0 <= a/b < 1, got {ratio!r}")
    if spec.family == config.FAMILY_COSH_SINH:
        raise DomainError("cosh(ax)/sinh(bx) diverges at x = 0; no nu = 1 form")
    b = spec.b
    theta = _angle(spec.a, b)
    if spec.family == config.FAMILY_COSH_COSH:
        value = math.pi / (2 * b) / math.cos(theta)
        return _result(value, 'nu1-sec', 1e-15 * value)
    if spec.family == config.FAMILY_SINH_SINH:
        value = math.pi / (2 * b) * math.tan(theta)
        return _result(value, 'nu1-tan', 1e-15 * abs(value))
    secant = math.pi / (2 * b) / math.cos(theta)
    # psi(3/4 + c/2) - psi(1/4 + c/2) = 4/(2c+1) 2F1(1, 1/2 + c; 3/2 + c; -1), c = a/2b
    psi_part = 2.0 * hypergeom.f21_psi_form(spec.a / (2 * b)) / (spec.a + b)
    return _result(secant - psi_part, 'nu1-sec-psi', 1e-15 * secant)


# ---------------------------------------------------------------------------
# sinh^mu / cosh^nu
# ---------------------------------------------------------------------------

@_records_near_poles
def eval_beta_power(mu, nu, method='default'):
    """
    int_0^inf sinh^mu(x) / cosh^nu(x) dx = B((nu-mu)/2, (1+mu)/2) / 2,  nu > mu > -1

    method='kummer' evaluates the same integral as
    2^(nu-mu-1) Gamma(1+mu) Gamma((nu-mu)/2) / Gamma(1+(nu+mu)/2) 2F1(nu, (nu-mu)/2; 1+(nu+mu)/2; -1).
    """
    if not nu > mu:
        raise DomainError(f"sinh^mu/cosh^nu needs nu > mu, got mu = {mu!r}, nu = {nu!r}")
    if not mu > -1:
        raise DomainError(f"sinh^mu/cosh^nu needs mu > -1 for convergence at 0, got {mu!r}")
    half_gap = 0.5 * (nu - mu)
    if method == 'kummer':
        top = 1.0 + 0.5 * (nu + mu)
        value = (2.0 ** (nu - mu - 1) * specfun.gamma(1.0 + mu) * specfun.gamma_ratio(half_gap, top)
                 * hypergeom.gauss_2f1_minus1(nu, half_gap, top))
        return _result(value, 'beta-power-kummer', 1e-14 * abs(value))
    if method != 'default':
        raise DomainError(f"unknown method {method!r}")
    value = 0.5 * specfun.beta(half_gap, 0.5 * (1.0 + mu))
    return _result(value, 'beta-power', 1e-15 * abs(value))


# ---------------------------------------------------------------------------
# General mu: double series
# ---------------------------------------------------------------------------

_SPLIT_POINTS = tuple(0.25 * k for k in range(2, 10))   # 0.5 .. 2.25, below pi


def _split_point(nu, beta_half):
    """Split T with the smallest predicted log-cancellation of head and tail"""
    def worst(t):
        head = nu * math.log(math.cosh(0.5 * t) / math.cos(0.5 * t)) + 2.0 * beta_half * t
        tail = nu * math.log(1.0 / math.tanh(0.5 * t))
        return max(head, tail)
    return min(_SPLIT_POINTS, key=worst)


def _inverse_factorials(length):
    return np.concatenate(([1.0], np.cumprod(1.0 / np.arange(1, length))))


def _numerator_coefficients(spec, length):
    """Taylor coefficients of (2 sinh(kappa t))^m or (2 cosh(kappa t))^m, kappa = a/2b; all >= 0"""
    n = np.arange(length)
    kappa = spec.a / (2.0 * spec.b)
    parity = 1 if config.is_sinh_numerator(spec.family) else 0
    factor = np.where(n % 2 == parity, 2.0 * kappa ** n * _inverse_factorials(length), 0.0)
    coefs = np.zeros(length)
    coefs[0] = 1.0
    for _ in range(spec.m):
        coefs = np.convolve(coefs, factor)[:length]
    return coefs


def _head_coefficients(spec, length):
    """
    Taylor coefficients in t of e^(-beta' t) (2 sh/ch(kappa t))^m (2 cosh(t/2))^-nu

    kappa = a/2b, beta' = beta/2b. The numerator is raised by repeated
    convolution, so small kappa loses nothing to binomial differences.
    """
    nu = spec.nu
    n = np.arange(length)
    inv_fact = _inverse_factorials(length)

    # (2 cosh(t/2))^-nu from cosh(t/2) = sum t^(2j) / (2^(2j) (2j)!)
    g = np.where(n % 2 == 0, 0.5 ** n * inv_fact, 0.0)
    f = np.zeros(length)
    f[0] = 1.0
    for k in range(1, length):
        j = np.arange(2, k + 1, 2)
        f[k] = np.dot(((1.0 - nu) * j - k) * g[j], f[k - j]) / k

    coefs = np.convolve(2.0 ** (-nu) * f, _numerator_coefficients(spec, length))[:length]
    if spec.beta_weight:
        beta_half = spec.beta_weight / (2.0 * spec.b)
        coefs = np.convolve(coefs, (-beta_half) ** n * inv_fact)[:length]
    return coefs


def _split_head(spec, split):
    """int_0^T t^(mu-1) (...) dt term by term; returns (value, abs mass)"""
    length = 128
    while length <= config.SPLIT_HEAD_MAX_TERMS:
        coefs = _head_coefficients(spec, length)
        powers = spec.mu + np.arange(length)
        terms = coefs * np.exp(powers * math.log(split)) / powers
        mass = float(np.sum(np.abs(terms)))
        if np.max(np.abs(terms[-8:])) <= 1e-17 * mass:
            return math.fsum(terms), mass
        length *= 2
    raise SlowConvergence(f"split-form head series did not settle for {spec}")


def _binomial_tail(spec, weights, shifts, split):
    """
    int_T^inf as sum_n (-1)^n (nu)_n/n! sum_r w_r Gamma(mu, (n+A_r)T) (n+A_r)^-mu

    Returns:
        tuple: (value, abs mass)
    """
    mu, nu = spec.mu, spec.nu
    total, mass = [], 0.0
    ratio = 1.0     # (nu)_n / n!
    for n in range(config.TERM_BUDGET):
        parts = [w * specfun.upper_gamma(mu, (n + big_a) * split) * (n + big_a) ** (-mu)
                 for w, big_a in zip(weights, shifts)]
        inner = math.fsum(parts)
        step = ratio * sum(abs(p) for p in parts)
        total.append(-ratio * inner if n % 2 else ratio * inner)
        mass += step
        if n > nu and step <= 1e-17 * mass:
            return math.fsum(total), mass
        ratio *= (nu + n) / (n + 1)
    raise SlowConvergence(f"split-form tail exhausted the term budget for {spec}")


def _power_tail(spec, split):
    """
    int_T^inf with the numerator as its positive Taylor series

        sum_n (-1)^n (nu)_n/n! sum_j s_j Gamma(mu+j, yT) / y^(mu+j),  y = n + nu/2 + beta'

    Gamma(mu+j+1, x) = (mu+j) Gamma(mu+j, x) + x^(mu+j) e^-x runs upward.
    Needs m kappa <= y/4 so the j-sum settles within TAIL_POWER_TERMS.

    Returns:
        tuple: (value, abs mass)
    """
    mu, nu = spec.mu, spec.nu
    numerator = _numerator_coefficients(spec, config.TAIL_POWER_TERMS)
    base = 0.5 * nu + spec.beta_weight / (2.0 * spec.b)
    total, mass = [], 0.0
    ratio = 1.0     # (nu)_n / n!
    for n in range(config.TERM_BUDGET):
        y = n + base
        decay = math.exp(-y * split)
        level = specfun.upper_gamma(mu, y * split) * y ** (-mu)    # Gamma(mu+j, yT) / y^(mu+j)
        t_power = split ** mu
        parts = []
        for j, s_j in enumerate(numerator):
            parts.append(s_j * level)
            level = ((mu + j) * level + t_power * decay) / y
            t_power *= split
        inner = math.fsum(parts)
        if max(parts[-8:]) > 1e-17 * inner:
            raise SlowConvergence(f"split-form power tail did not settle for {spec}")
        step = ratio * inner
        total.append(-step if n % 2 else step)
        mass += step
        if n > nu and step <= 1e-17 * mass:
            return math.fsum(total), mass
        ratio *= (nu + n) / (n + 1)
    raise SlowConvergence(f"split-form tail exhausted the term budget for {spec}")


def _split_series(spec, weights, shifts):
    """
    Cosh denominators with nu > 1 as int_0^inf t^(mu-1) e^(-A t) (1 + e^-t)^-nu dt

    The terms of the alternating double series grow like n^(nu-1-mu), so it
    is only summable by continuation and cancels badly. Split at T instead:
    a Taylor head on [0, T] and incomplete-Gamma tail on [T, inf), each
    with cancellation bounded by about e^(nu/2). The tail keeps the
    numerator as a power series while m kappa is small next to nu/2, where
    the binomial form would cancel.

    Returns:
        tuple: (value, abs mass) scaled to the integral
    """
    split = _split_point(spec.nu, spec.beta_weight / (2.0 * spec.b))
    head, head_mass = _split_head(spec, split)
    kappa = spec.a / (2.0 * spec.b)
    if spec.m * kappa <= 0.25 * (0.5 * spec.nu + spec.beta_weight / (2.0 * spec.b)):
        tail, tail_mass = _power_tail(spec, split)
    else:
        tail, tail_mass = _binomial_tail(spec, weights, shifts, split)
    scale = 2.0 ** (spec.nu - spec.m) / (2.0 * spec.b) ** spec.mu
    logger.debug(f"split form at T = {split} for {spec}: head {head:.6e}, tail {tail:.6e}")
    return scale * (head + tail), scale * (head_mass + tail_mass)


def _series_cross_check(spec, weights, shifts, prefactor):
    """(mu+1)F(mu) form for integer mu; None when its series diverges"""
    mu = int(spec.mu)
    z = 1.0 if config.is_sinh_denominator(spec.family) else -1.0
    total = []
    try:
        for w, big_a in zip(weights, shifts):
            params = ParamList((spec.nu,) + (big_a,) * mu, (1.0 + big_a,) * mu, z)
            total.append(w * big_a ** (-mu) * hypergeom.pfq(params, 1e-13))
    except (DivergentSeries, SlowConvergence, DomainError) as e:
        logger.debug(f"pFq cross-check skipped: {e}")
        return None
    return prefactor * math.fsum(total)


@_records_near_poles
def eval_section3_series(spec):
    """
    General mu > 0 by the double series

        2^(nu-m) Gamma(mu) / (2b)^mu  sum_r (+-1)^r C(m,r) sum_n (-+1)^n (nu)_n/n! (n + A_r)^-mu

    Terms n < N are summed directly. Beyond N, (nu)_n/n! is replaced by its
    Gamma-ratio asymptotic expansion and each power is summed in closed form:
    Euler-Boole for cosh denominators, Euler-Maclaurin for sinh denominators
    with the 1/(s-1) constants dropped where the binomial difference
    annihilates them. Cosh denominators with nu > SPLIT_FORM_MIN_NU, where
    the alternating terms grow, go through the split form instead.

    est_error carries eps times the absolute mass of the sums; when that
    exceeds SERIES_CANCELLATION_LIMIT relative to the value the result is
    refused.

    Args:
        spec: IntegralSpec with mu > 0 and hyperbolic numerators

    Returns:
        EvalResult

    Raises:
        SlowConvergence: tail not settled or cancellation too large
    """
    if spec.trig:
        raise DomainError("eval_section3_series handles hyperbolic numerators only")
    if not spec.mu > 0:
        raise DomainError(f"the double series needs mu > 0, got {spec.mu!r}")
    _require_convergent(spec)
    reduced = _zero_a_reduction(spec)
    if reduced is None:
        return _result(0.0, 'sinh-numerator-a0')
    spec = reduced

    mu, nu, m = spec.mu, spec.nu, spec.m
    weights = _binomial_weights(spec)
    shifts = [0.5 * nu + alpha_r(r, spec) for r in range(m + 1)]
    alternating = not config.is_sinh_denominator(spec.family)
    prefactor = 2.0 ** (nu - m) * specfun.gamma(mu) / (2.0 * spec.b) ** mu

    if alternating and nu > config.SPLIT_FORM_MIN_NU:
        value, mass = _split_series(spec, weights, shifts)
        truncation = 0.0
        formula = 'double-series-split'
    else:
        value, truncation, mass = _direct_series(spec, weights, shifts, prefactor)
        formula = 'double-series'
    rounding = _FLOAT_EPS * mass
    if rounding > config.SERIES_CANCELLATION_LIMIT * abs(value):
        raise SlowConvergence(f"{formula} lost too much to cancellation for {spec}: "
                              f"rounding {rounding:.1e} against value {value:.6e}")
    est = truncation + rounding

    notes = []
    if mu == math.floor(mu):
        check = _series_cross_check(spec, weights, shifts, prefactor)
        if check is not None:
            diff = abs(check - value)
            if diff > 1e-8 * max(1.0, abs(value)):
                notes.append(f"pFq cross-check differs by {diff:.2e}")
                est += diff
            logger.debug(f"pFq cross-check for {spec}: diff {diff:.2e}")
    return _result(value, formula, est, notes)


def _direct_series(spec, weights, shifts, prefactor):
    """Direct terms plus the asymptotic tail; returns (value, truncation, abs mass)"""
    mu, nu, m = spec.mu, spec.nu, spec.m
    alternating = not config.is_sinh_denominator(spec.family)
    annihilated = config.is_sinh_numerator(spec.family)

    n_direct = 48 + 4 * math.ceil(nu + max(shifts) + mu)
    terms = []
    mass = 0.0
    ratio = 1.0     # (nu)_n / n!
    for n in range(n_direct):
        parts = [w * (n + big_a) ** (-mu) for w, big_a in zip(weights, shifts)]
        inner = math.fsum(parts)
        terms.append((-ratio if alternating and n % 2 else ratio) * inner)
        mass += abs(ratio) * sum(abs(p) for p in parts)
        ratio *= (nu + n) / (n + 1)
    direct = math.fsum(terms)

    inv_gamma_nu = 1.0 / specfun.gamma(nu)
    expansions = [specfun.gamma_ratio_series(nu - big_a, 1.0 - big_a, config.TAIL_ORDER) for big_a in shifts]
    levels = []
    for k in range(config.TAIL_ORDER):
        s = mu + 1.0 + k - nu
        parts = []
        for w, big_a, coefs in zip(weights, shifts, expansions):
            y = n_direct + big_a
            if alternating:
                parts.append(w * coefs[k] * specfun.alternating_tail(s, y))
            else:
                parts.append(w * coefs[k] * specfun.hurwitz_tail(s, y, drop_pole=True))
        if not alternating and not (annihilated and k < m):
            pole_weight = math.fsum(w * coefs[k] for w, coefs in zip(weights, expansions))
            if pole_weight != 0.0:
                if s == 1.0:
                    raise PoleError("double-series tail hit s = 1 with a non-vanishing weight")
                parts.append(pole_weight / (s - 1.0))
        levels.append(inv_gamma_nu * math.fsum(parts))
    sign = -1.0 if alternating and n_direct % 2 else 1.0
    tail = sign * math.fsum(levels)

    value = prefactor * (direct + tail)
    if abs(levels[-1]) > 1e-6 * max(abs(direct + tail), 1e-300):
        raise SlowConvergence(f"double-series tail expansion not settled for {spec}")
    mass += sum(abs(level) for level in levels)
    return value, abs(prefactor * levels[-1]), abs(prefactor) * mass


# ---------------------------------------------------------------------------
# m = 1, nu = 1, general mu
# ---------------------------------------------------------------------------

@_records_near_poles
def eval_zeta_forms(variant, mu, a, b):
    """
    m = 1, nu = 1 integrals of x^(mu-1) through Hurwitz zeta and Z

    CoshSinh/SinhSinh: Gamma(mu)/(2b)^mu (zeta(mu, (b-a)/2b) +- zeta(mu, (b+a)/2b))
    CoshCosh/SinhCosh: Gamma(mu)/(4b)^mu (Z(mu, (b-a)/4b) +- Z(mu, (b+a)/4b))
    SinhCosh at mu = 0 is the limit ln tan(pi/4 + pi a/4b).
    """
    if variant not in ZETA_VARIANTS:
        raise DomainError(f"unknown zeta-form variant {variant!r}")
    if not (0 <= a < b):
        raise DomainError(f"zeta forms need 0 <= a < b, got a = {a!r}, b = {b!r}")
    lower_mu = {COSH_SINH: 1.0, SINH_SINH: 0.0, COSH_COSH: 0.0, SINH_COSH: -1.0}[variant]
    if not mu > lower_mu:
        raise DomainError(f"{variant} zeta form needs mu > {lower_mu}, got {mu!r}")

    if variant in (COSH_SINH, SINH_SINH):
        if mu == 1.0:
            raise PoleError(f"{variant}: zeta(mu, .) has a pole at mu = 1")
        x1, x2 = (b - a) / (2 * b), (b + a) / (2 * b)
        sign = 1.0 if variant == COSH_SINH else -1.0
        z1, z2 = specfun.hurwitz_zeta(mu, x1), specfun.hurwitz_zeta(mu, x2)
        value = specfun.gamma(mu) / (2 * b) ** mu * (z1 + sign * z2)
        est = 1e-14 * specfun.gamma(mu) / (2 * b) ** mu * (abs(z1) + abs(z2))
        return _result(value, 'hurwitz-zeta-pair', est)

    y1, y2 = (b - a) / (4 * b), (b + a) / (4 * b)
    if variant == SINH_COSH and abs(mu) < config.MU_ZERO_SWITCH:
        def zed_difference(s):
            return specfun.gamma(s) / (4 * b) ** s * (specfun.zed(s, y1) - specfun.zed(s, y2))
        limit = math.log(math.tan(math.pi / 4 + math.pi * (a / (4 * b))))
        return _mu_zero_branch(zed_difference, limit, mu, 'z-function-mu0-limit')
    sign = 1.0 if variant == COSH_COSH else -1.0
    z1, z2 = specfun.zed(mu, y1), specfun.zed(mu, y2)
    value = specfun.gamma(mu) / (4 * b) ** mu * (z1 + sign * z2)
    est = 1e-14 * abs(specfun.gamma(mu)) / (4 * b) ** mu * (abs(z1) + abs(z2))
    return _result(value, 'z-function-pair', est)


@_records_near_poles
def eval_mu2_elementary(variant, a, b):
    """
    mu = 2, m = 1, nu = 1 by differentiating the nu = 1 forms in a

    SinhCosh: (pi^2/4b^2) sec tan;  CoshSinh: (pi^2/4b^2) sec^2;
    CoshCosh: (pi^2/4b^2) sec tan - (1/8b^2)(psi'(3/4 + a/4b) - psi'(1/4 + a/4b))
    """
    if not (0 <= a < b):
        raise DomainError(f"mu = 2 forms need 0 <= a < b, got a = {a!r}, b = {b!r}")
    theta = _angle(a, b)
    scale = math.pi ** 2 / (4 * b * b)
    sec = 1.0 / math.cos(theta)
    if variant == SINH_COSH:
        value = scale * sec * math.tan(theta)
    elif variant == COSH_SINH:
        value = scale * sec * sec
    elif variant == COSH_COSH:
        y = a / (4 * b)
        value = (scale * sec * math.tan(theta)
                 - (specfun.trigamma(0.75 + y) - specfun.trigamma(0.25 + y)) / (8 * b * b))
    else:
        raise DomainError(f"no mu = 2 elementary form for {variant!r}")
    return _result(value, f'mu2-{variant}', 1e-15 * max(abs(value), scale))


# ---------------------------------------------------------------------------
# Trigonometric numerators and squared denominators
# ---------------------------------------------------------------------------

@_records_near_poles
def eval_trig(variant, a, b, method='default'):
    """
    Trigonometric numerators over hyperbolic denominators

    CosOverCosh: (pi/2b) sech(pi a/2b)
    SinOverSinh: (pi/2b) tanh(pi a/2b)
    SinOverCosh: -(pi/2b) tanh(pi a/2b) + (1/b) Im psi(1/4 + i a/4b)
                 method='sech': real part of
                 -(i pi/2b) sech(pi a/2b) + (i/2b)(psi(3/4 + i a/4b) - psi(1/4 + i a/4b))
    """
    if a < 0 or not b > 0:
        raise DomainError(f"trigonometric forms need a >= 0 and b > 0, got a = {a!r}, b = {b!r}")
    theta = _angle(a, b)
    half = math.pi / (2 * b)
    if variant == COS_OVER_COSH:
        value = half / math.cosh(theta)
        return _result(value, 'trig-sech', 1e-15 * value)
    if variant == SIN_OVER_SINH:
        value = half * math.tanh(theta)
        return _result(value, 'trig-tanh', 1e-15 * value)
    if variant != SIN_OVER_COSH:
        raise DomainError(f"unknown trigonometric variant {variant!r}")

    y = a / (4 * b)
    if method == 'sech':
        psi_diff = specfun.digamma(complex(0.75, y)) - specfun.digamma(complex(0.25, y))
        full = -1j * half / math.cosh(theta) + 1j * psi_diff / (2 * b)
        notes = []
        if abs(full.imag) > 1e-10 * max(1.0, abs(full.real)):
            notes.append(f"imaginary residue {full.imag:.2e} in the sech form")
        return _result(full.real, 'trig-sech-psi', 1e-14 * max(1.0, abs(full.real)), notes)
    if method != 'default':
        raise DomainError(f"unknown method {method!r}")
    value = -half * math.tanh(theta) + specfun.digamma(complex(0.25, y)).imag / b
    return _result(value, 'trig-tanh-psi', 1e-14 * max(half, abs(value)))


_SINH_COSH2_MU0 = 4.0 * specfun.CATALAN / math.pi


@_records_near_poles
def eval_example3(variant, mu, method='default'):
    """
    x^(mu-1) cosh x / sinh^2 x and x^(mu-1) sinh x / cosh^2 x

    CoshOverSinh2: 2 Gamma(mu) zeta(mu-1) (1 - 2^(1-mu)),  mu > 2
    SinhOverCosh2: 2^(3-2mu) Gamma(mu) (zeta(mu-1, 1/4) - zeta(mu-1, 3/4)),  mu > -1
                   (1 at mu = 1, 4G/pi at mu = 0); method='series' uses
                   2 Gamma(mu) sum (-1)^n (2n+1)^(1-mu)
    """
    if variant == COSH_OVER_SINH2:
        if mu == 2.0:
            raise PoleError("x cosh x / sinh^2 x diverges: zeta(mu - 1) pole at mu = 2")
        if not mu > 2:
            raise DomainError(f"CoshOverSinh2 needs mu > 2, got {mu!r}")
        value = 2.0 * specfun.gamma(mu) * specfun.zeta(mu - 1.0) * -math.expm1((1.0 - mu) * math.log(2.0))
        return _result(value, 'ex3-zeta-eta', 1e-14 * abs(value))
    if variant != SINH_OVER_COSH2:
        raise DomainError(f"unknown variant {variant!r}")
    if not mu > -1:
        raise DomainError(f"SinhOverCosh2 needs mu > -1, got {mu!r}")
    if mu == 1.0:
        return _result(1.0, 'ex3-mu1')
    if abs(mu) < config.MU_ZERO_SWITCH:
        def hurwitz_difference(s):
            return 2.0 ** (3.0 - 2.0 * s) * specfun.gamma(s) * specfun.zed(s - 1.0, 0.25)
        return _mu_zero_branch(hurwitz_difference, _SINH_COSH2_MU0, mu, 'ex3-mu0-catalan')
    if method == 'series':
        value = 2.0 * specfun.gamma(mu) * 2.0 ** (1.0 - mu) * specfun.alternating_hurwitz(mu - 1.0, 0.5)
        return _result(value, 'ex3-alternating-series', 1e-14 * abs(value))
    if method != 'default':
        raise DomainError(f"unknown method {method!r}")
    value = 2.0 ** (3.0 - 2.0 * mu) * specfun.gamma(mu) * specfun.zed(mu - 1.0, 0.25)
    return _result(value, 'ex3-hurwitz-difference', 1e-14 * abs(value))


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------

def evaluate(spec):
    """
    Closed-form value of an IntegralSpec by the most specific applicable form

    Args:
        spec: IntegralSpec

    Returns:
        EvalResult

    Raises:
        NotConvergent: outside the validity region
        UnsupportedRegion: mu <= 0 outside the m = 1, nu = 1 forms
    """
    _require_convergent(spec)
    if spec.trig:
        if spec.nu != 1.0 or spec.mu != 1.0 or spec.beta_weight != 0.0:
            raise DomainError("trigonometric numerators are supported for nu = 1, mu = 1, no weight")
        return eval_trig(TRIG_BY_FAMILY[spec.family], spec.a, spec.b)

    plain = spec.beta_weight == 0.0
    if spec.mu == 1.0:
        if spec.m == 0 and plain:
            return eval_m0_special(spec.family, spec.nu, spec.b)
        if spec.m == 1 and plain and spec.a > 0:
            if spec.nu == 1.0 and spec.a < spec.b and spec.family != config.FAMILY_COSH_SINH:
                return eval_nu1_elementary(spec)
            return eval_m1_closed(spec)
        return eval_section2(spec)

    if spec.m == 1 and spec.nu == 1.0 and plain and spec.a < spec.b:
        variant = FAMILY_TO_VARIANT[spec.family]
        if spec.mu == 2.0 and variant != SINH_SINH:
            return eval_mu2_elementary(variant, spec.a, spec.b)
        try:
            return eval_zeta_forms(variant, spec.mu, spec.a, spec.b)
        except (PoleError, UnsupportedRegion) as e:
            logger.debug(f"zeta forms unavailable for {spec}: {e}")
    if spec.mu > 0:
        return eval_section3_series(spec)
    raise UnsupportedRegion(f"mu = {spec.mu!r} <= 0 is only covered by the m = 1, nu = 1 forms")
