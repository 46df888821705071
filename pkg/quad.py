#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quadrature Oracle Module
Double-exponential quadrature on [0, inf) and numerically stable integrands
for the hyperbolic integral families
"""

import math
from dataclasses import dataclass

import numpy as np

import config
from closedform import IntegralSpec, validity
from error_handler import NoConvergence, NonFinite, NotConvergent
from logger_config import get_logger

logger = get_logger('hyperint.quad')

_LN2 = math.log(2.0)
_HALF_PI = 0.5 * math.pi
_TANH_SINH_SPAN = 6.5       # t range of the (0, 1] piece
_EXP_SINH_SPAN = 5.0        # t range of the [1, inf) piece
_TINY_X = 1e-300


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    n_evals: int
    converged: bool


@dataclass(frozen=True)
class PowerSpec:
    """int_0^inf sinh^power(x) / cosh^nu(x) dx"""
    power: float
    nu: float


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def _evaluate_nodes(func, args):
    """Evaluate func on an array; non-finite entries are retried once one ulp higher"""
    with np.errstate(all='ignore'):
        values = np.asarray(func(args), dtype=float)
        bad = ~np.isfinite(values)
        if bad.any():
            nudged = np.nextafter(args[bad], np.inf)
            values[bad] = np.asarray(func(nudged), dtype=float)
            still_bad = ~np.isfinite(values)
            if still_bad.any():
                where = args[still_bad][0]
                raise NonFinite(f"integrand is not finite near node {where!r}")
    return values


class _Piece:
    """One half-line piece: nodes t = j h mapped by a DE transform"""

    def __init__(self, transform, span):
        self.transform = transform
        self.span = span

    def level_sum(self, func, level):
        """Sum of w(t) g(x(t)) over the nodes new at this level (all nodes at level 0)"""
        h = 2.0 ** -level
        count = int(self.span / h)
        j = np.arange(-count, count + 1)
        if level > 0:
            j = j[j % 2 != 0]
        t = j * h
        args, weights = self.transform(t)
        keep = (weights > 0) & np.isfinite(weights)
        args, weights = args[keep], weights[keep]
        if args.size == 0:
            return 0.0, 0.0, 0
        values = _evaluate_nodes(func, args)
        products = weights * values
        return float(np.sum(products)), float(np.sum(np.abs(products))), int(args.size)

    def integrate(self, func, tol, max_level):
        total, mass, n_evals = self.level_sum(func, 0)
        diff = math.inf
        for level in range(1, max_level + 1):
            h = 2.0 ** -level
            new_sum, new_mass, n_new = self.level_sum(func, level)
            n_evals += n_new
            refined = 0.5 * total + h * new_sum
            mass = 0.5 * mass + h * new_mass
            diff = abs(refined - total)
            total = refined
            if level >= config.QUAD_MIN_LEVEL and (diff <= tol * abs(total) or diff <= 1e-15 * mass):
                return total, diff, n_evals, True
        return total, diff, n_evals, False


def _tanh_sinh_unit(t):
    """u in (0, 1) with u'(t) = pi cosh(t) u (1 - u); u -> 0 double-exponentially as t -> -inf"""
    q = np.exp(-math.pi * np.abs(np.sinh(t)))
    u = np.where(t >= 0, 1.0 / (1.0 + q), q / (1.0 + q))
    weights = math.pi * np.cosh(t) * q / (1.0 + q) ** 2
    weights = np.where(u > 0, weights, 0.0)
    return u, weights


def _exp_sinh_tail(t):
    """x = 1 + exp(pi/2 sinh t) on (1, inf)"""
    with np.errstate(over='ignore'):
        e = np.exp(_HALF_PI * np.sinh(t))
        weights = _HALF_PI * np.cosh(t) * e
    x = 1.0 + e
    weights = np.where(np.isfinite(x), weights, 0.0)
    return x, weights


def integrate_semi_infinite(f, singular_exponent=1.0, tol=config.QUAD_TOL,
                            max_level=config.QUAD_MAX_LEVEL, raise_on_failure=True):
    """
    Integrate f over (0, inf)

    The range splits at x = 1. On (0, 1] a tanh-sinh rule is used; when
    singular_exponent s < 1 the substitution x = u^(1/s) first removes the
    x^(s-1) endpoint behaviour. On [1, inf) an exp-sinh rule is used. Each
    piece halves its step until successive levels agree within tol.

    Args:
        f: Vectorised integrand, f(ndarray) -> ndarray, reentrant
        singular_exponent: s such that f(x) x^(1-s) stays bounded near 0
        tol: Relative tolerance between successive levels
        max_level: Number of step halvings allowed per piece
        raise_on_failure: Raise NoConvergence instead of returning converged=False

    Returns:
        QuadResult
    """
    s = float(singular_exponent)
    if not s > 0:
        raise NotConvergent(f"singular exponent {s!r} <= 0: integrand not integrable at 0")

    if s < 1.0:
        def head(u):
            log_x = np.log(u) / s
            x = np.exp(log_x)
            out = np.zeros_like(u)
            ok = x > _TINY_X
            xk = x[ok]
            out[ok] = np.asarray(f(xk), dtype=float) * np.exp((1.0 - s) * log_x[ok]) / s
            return out
    else:
        def head(u):
            out = np.zeros_like(u)
            ok = u > _TINY_X
            out[ok] = np.asarray(f(u[ok]), dtype=float)
            return out

    near = _Piece(_tanh_sinh_unit, _TANH_SINH_SPAN).integrate(head, tol, max_level)
    far = _Piece(_exp_sinh_tail, _EXP_SINH_SPAN).integrate(f, tol, max_level)

    value = near[0] + far[0]
    err_est = near[1] + far[1]
    n_evals = near[2] + far[2]
    converged = near[3] and far[3]
    logger.debug(f"quadrature: value {value:.17g}, err {err_est:.2e}, evals {n_evals}, converged {converged}")
    if not converged and raise_on_failure:
        raise NoConvergence(f"quadrature did not converge within {max_level} levels (last diff {err_est:.2e})")
    return QuadResult(value, err_est, n_evals, converged)


# ---------------------------------------------------------------------------
# Integrands
# ---------------------------------------------------------------------------

def log_cosh(y):
    """log cosh(y) without overflow"""
    y = np.abs(y)
    return y - _LN2 + np.log1p(np.exp(-2.0 * y))


def log_sinh(y):
    """log sinh(y) for y > 0, exact for tiny y and without overflow for large y"""
    return y - _LN2 + np.log(-np.expm1(-2.0 * y))


def build_integrand(spec):
    """
    Stable integrand and its singular exponent for an IntegralSpec or PowerSpec

    The integrand is evaluated as exp(log-magnitude) times an optional
    trigonometric factor, so it neither overflows for large x nor loses
    accuracy for tiny x.

    Args:
        spec: IntegralSpec or PowerSpec

    Returns:
        tuple: (callable ndarray -> ndarray, singular exponent)

    Raises:
        NotConvergent: outside the validity region
    """
    if isinstance(spec, PowerSpec):
        return _power_integrand(spec)
    if not isinstance(spec, IntegralSpec):
        raise TypeError(f"cannot build an integrand for {type(spec).__name__}")

    verdict = validity(spec)
    if not verdict.convergent:
        raise NotConvergent(verdict.reason)

    mu, nu, m, a, b, beta = spec.mu, spec.nu, spec.m, spec.a, spec.b, spec.beta_weight
    sinh_num = config.is_sinh_numerator(spec.family)
    log_den = log_sinh if config.is_sinh_denominator(spec.family) else log_cosh

    exponent = mu
    if config.is_sinh_denominator(spec.family):
        exponent -= nu
    if spec.trig:
        if sinh_num and a > 0:
            exponent += 1.0
    elif sinh_num and m > 0 and a > 0:
        exponent += m

    if sinh_num and m > 0 and a == 0.0:
        def integrand(x):
            return np.zeros_like(np.asarray(x, dtype=float))
        return integrand, max(exponent, 1.0)

    def integrand(x):
        x = np.asarray(x, dtype=float)
        log_mag = (mu - 1.0) * np.log(x) - beta * x - nu * log_den(b * x)
        if spec.trig:
            factor = np.sin(a * x) if sinh_num else np.cos(a * x)
            return np.exp(log_mag) * factor
        if m > 0:
            log_mag = log_mag + m * (log_sinh(a * x) if sinh_num else log_cosh(a * x))
        return np.exp(log_mag)

    return integrand, exponent


def _power_integrand(spec):
    p, nu = spec.power, spec.nu
    if not (nu > p and p > -1):
        raise NotConvergent(f"sinh^p/cosh^nu needs nu > p > -1, got p = {p!r}, nu = {nu!r}")

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return np.exp(p * log_sinh(x) - nu * log_cosh(x))

    return integrand, 1.0 + p


def integrate_spec(spec, tol=config.QUAD_TOL):
    """Quadrature value of an IntegralSpec or PowerSpec"""
    integrand, exponent = build_integrand(spec)
    return integrate_semi_infinite(integrand, exponent, tol)
