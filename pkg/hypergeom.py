#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hypergeometric Series Module
pFq evaluation with convergence classification, summation theorems and the
Pfaff-transformed 2F1 at z = -1
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

import config
import specfun
from error_handler import (DomainError, PoleError, DivergentSeries,
                          SlowConvergence, ensure_finite)
from logger_config import get_logger

logger = get_logger('hyperint.hypergeom')


class Verdict(str, Enum):
    ENTIRE = 'Entire'
    ABSOLUTE = 'AbsolutelyConvergent'
    CONDITIONAL = 'ConditionallyConvergent'
    DIVERGENT = 'Divergent'


@dataclass(frozen=True)
class ConvergenceClass:
    omega: float
    verdict: Verdict


def _is_nonpositive_integer(x):
    return x <= 0 and x == math.floor(x)


@dataclass(frozen=True)
class ParamList:
    """Numerator parameters, denominator parameters and the argument z of pFq"""
    numerators: tuple = field(default_factory=tuple)
    denominators: tuple = field(default_factory=tuple)
    argument: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'numerators', tuple(float(a) for a in self.numerators))
        object.__setattr__(self, 'denominators', tuple(float(b) for b in self.denominators))
        object.__setattr__(self, 'argument', float(self.argument))
        if self.p > self.q + 1:
            raise DomainError(f"{self.p}F{self.q}: only p <= q + 1 is supported")
        bad = [b for b in self.denominators if _is_nonpositive_integer(b)]
        if bad:
            raise DomainError(f"denominator parameter {bad[0]} is a non-positive integer")

    @property
    def p(self):
        return len(self.numerators)

    @property
    def q(self):
        return len(self.denominators)

    @property
    def omega(self):
        """Saalschützian excess sum(b) - sum(a)"""
        return math.fsum(self.denominators) - math.fsum(self.numerators)

    def terminates(self):
        return any(_is_nonpositive_integer(a) for a in self.numerators)


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)"""
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer needs a non-negative integer n, got {n!r}")
    out = 1.0
    for k in range(int(n)):
        out *= a + k
    return ensure_finite(out, 'pochhammer')


def log_pochhammer(a, n):
    """
    Overflow-safe rising factorial

    Returns:
        tuple: (log|(a)_n|, sign); (-inf, 0.0) when the product vanishes
    """
    log_abs = 0.0
    sign = 1.0
    for k in range(int(n)):
        v = a + k
        if v == 0.0:
            return -math.inf, 0.0
        if v < 0:
            sign = -sign
        log_abs += math.log(abs(v))
    return log_abs, sign


def classify(params):
    """
    Convergence verdict of the defining series of pFq at params.argument

    Args:
        params: ParamList

    Returns:
        ConvergenceClass
    """
    omega = params.omega
    z = abs(params.argument)
    if params.terminates() or params.p <= params.q or params.argument == 0.0:
        return ConvergenceClass(omega, Verdict.ENTIRE)
    if z < 1.0:
        return ConvergenceClass(omega, Verdict.ABSOLUTE)
    if z > 1.0:
        return ConvergenceClass(omega, Verdict.DIVERGENT)
    if omega > 0:
        return ConvergenceClass(omega, Verdict.ABSOLUTE)
    if params.argument != 1.0 and omega > -1.0:
        return ConvergenceClass(omega, Verdict.CONDITIONAL)
    return ConvergenceClass(omega, Verdict.DIVERGENT)


def _term_ratio(num, den, z, n):
    ratio = z / (n + 1)
    for a in num:
        ratio *= a + n
    for b in den:
        ratio /= b + n
    return ratio


def _direct_sum(num, den, z, tol, budget=config.TERM_BUDGET):
    """Plain term recurrence; stops once the geometric tail bound is below tol"""
    scale = max([abs(v) for v in num + den] + [1.0])
    terms = [1.0]
    term = 1.0
    for n in range(budget):
        ratio = _term_ratio(num, den, z, n)
        term *= ratio
        terms.append(term)
        if term == 0.0:
            return math.fsum(terms)
        if n > scale + 1:
            r = abs(_term_ratio(num, den, z, n + 1))
            if r < 1.0 and abs(term) * r / (1.0 - r) <= tol * abs(math.fsum(terms)):
                return math.fsum(terms)
    raise SlowConvergence(f"series not converged after {budget} terms")


def euler_transform(terms, tol=config.SERIES_TOL, budget=config.TERM_BUDGET):
    """
    Euler(-Knopp) summation of an alternating series

    Partial sums S_M .. S_{M+k} are averaged pairwise k times; the window
    (M, k) doubles until two successive estimates agree.

    Args:
        terms: Iterator yielding the signed terms t_0, t_1, ...
        tol: Relative agreement required between successive estimates
        budget: Maximum number of terms consumed

    Returns:
        tuple: (value, error estimate)
    """
    tol = max(tol, 1e-14)
    partial = []
    running = 0.0
    previous = None
    start, depth = 20, 20
    while start + depth < budget:
        while len(partial) <= start + depth:
            try:
                running += next(terms)
            except StopIteration:
                return running, 0.0
            partial.append(running)
        window = np.array(partial[start:start + depth + 1])
        for _ in range(depth):
            window = 0.5 * (window[:-1] + window[1:])
        estimate = float(window[0])
        if previous is not None:
            diff = abs(estimate - previous)
            if diff <= tol * max(1.0, abs(estimate)):
                return estimate, diff
        previous = estimate
        start, depth = 2 * start, 2 * depth
    raise SlowConvergence(f"Euler transform did not settle within {budget} terms")


def _term_iterator(num, den, z):
    term = 1.0
    n = 0
    while True:
        yield term
        term *= _term_ratio(num, den, z, n)
        n += 1


def _gamma_quotient(upper, lower):
    """prod Gamma(upper) / prod Gamma(lower) with 1/Gamma zeros handled"""
    if any(_is_nonpositive_integer(v) for v in lower):
        for v in upper:
            if _is_nonpositive_integer(v):
                raise PoleError(f"Gamma pole at {v}")
        return 0.0
    log_abs = 0.0
    sign = 1.0
    for v in upper:
        la, sa = specfun.log_gamma_sign(v)
        log_abs += la
        sign *= sa
    for v in lower:
        la, sa = specfun.log_gamma_sign(v)
        log_abs -= la
        sign *= sa
    return ensure_finite(sign * math.exp(log_abs), 'gamma quotient')


def _multiply_series(left, right, order):
    out = [0.0] * order
    for i, x in enumerate(left[:order]):
        for j, y in enumerate(right[:order - i]):
            out[i + j] += x * y
    return out


def _unit_argument_sum(params, tol):
    """
    q+1Fq(1) with omega > 0: direct terms to N, then the Gamma-ratio
    asymptotic expansion of the terms summed with Hurwitz zeta values
    """
    num, den = params.numerators, params.denominators
    omega = params.omega
    scale = max(abs(v) for v in num + den)
    n_direct = 64 + 4 * math.ceil(scale)
    order = config.GAMMA_RATIO_ORDER

    terms = []
    term = 1.0
    for n in range(n_direct):
        terms.append(term)
        term *= _term_ratio(num, den, 1.0, n)
    direct = math.fsum(terms)
    term_at_n = term

    prefactor = _gamma_quotient(den, num)
    coefs = [1.0] + [0.0] * (order - 1)
    pairs = list(zip(num[:-1], den)) + [(num[-1], 1.0)]
    for a, b in pairs:
        coefs = _multiply_series(coefs, specfun.gamma_ratio_series(a, b, order), order)

    tail_parts = [prefactor * c * specfun.hurwitz_zeta(1.0 + omega + k, n_direct)
                  for k, c in enumerate(coefs)]
    tail = math.fsum(tail_parts)

    predicted = prefactor * n_direct ** (-1.0 - omega) * math.fsum(
        c * n_direct ** (-k) for k, c in enumerate(coefs))
    if term_at_n != 0.0:
        mismatch = abs(predicted - term_at_n) / abs(term_at_n)
        if mismatch > 1e-8:
            logger.debug(f"unit-argument tail mismatch {mismatch:.2e} for {params}")
            if mismatch > 1e-4:
                raise SlowConvergence(f"asymptotic tail unreliable for {params} (mismatch {mismatch:.1e})")
    return ensure_finite(direct + tail, 'pFq(1)')


def pfq(params, tol=config.SERIES_TOL):
    """
    Generalized hypergeometric function pFq(a; b; z) for real parameters

    |z| < 1 and entire series are summed directly; z = -1 uses the Pfaff
    transform for 2F1 and Euler summation otherwise; z = +1 with omega > 0
    uses an asymptotic tail.

    Args:
        params: ParamList
        tol: Relative tolerance

    Returns:
        float

    Raises:
        DivergentSeries: when classify says Divergent
    """
    verdict = classify(params)
    if verdict.verdict is Verdict.DIVERGENT:
        raise DivergentSeries(f"{params.p}F{params.q} diverges at z = {params.argument} (omega = {verdict.omega:.6g})")
    num, den, z = params.numerators, params.denominators, params.argument
    if z == 0.0:
        return 1.0
    if params.terminates():
        limit = min(int(-a) for a in num if _is_nonpositive_integer(a))
        term, total = 1.0, [1.0]
        for n in range(limit):
            term *= _term_ratio(num, den, z, n)
            total.append(term)
        return math.fsum(total)
    if abs(z) < 1.0 or verdict.verdict is Verdict.ENTIRE:
        return ensure_finite(_direct_sum(num, den, z, tol), 'pFq')
    if z == -1.0:
        if params.p == 2 and params.q == 1:
            return gauss_2f1_minus1(num[0], num[1], den[0], tol)
        value, _ = euler_transform(_term_iterator(num, den, z), tol)
        return ensure_finite(value, 'pFq(-1)')
    return _unit_argument_sum(params, tol)


def gauss_2f1_minus1(a, b, c, tol=config.SERIES_TOL):
    """
    2F1(a, b; c; -1) via Pfaff: 2^-a 2F1(a, c - b; c; 1/2)

    Gives the analytic continuation in the parameters, so it is also used
    where the series at -1 itself diverges.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"2F1 denominator parameter c = {c} is a non-positive integer")
    if a == 0.0 or b == 0.0:
        return 1.0
    value = 2.0 ** (-a) * _direct_sum((a, c - b), (c,), 0.5, tol)
    return ensure_finite(value, '2F1(-1)')


def gauss_sum(alpha, beta, gamma):
    """Gauss: 2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), c-a-b > 0"""
    if not gamma - alpha - beta > 0:
        raise DomainError("Gauss's theorem needs gamma - alpha - beta > 0")
    return _gamma_quotient((gamma, gamma - alpha - beta), (gamma - alpha, gamma - beta))


def kummer_sum(alpha, beta):
    """Kummer: 2F1(a, b; 1+a-b; -1) = Gamma(1+a-b) Gamma(1+a/2) / (Gamma(1+a) Gamma(1+a/2-b))"""
    return _gamma_quotient((1 + alpha - beta, 1 + 0.5 * alpha),
                           (1 + alpha, 1 + 0.5 * alpha - beta))


def f43_sum(alpha, beta, gamma):
    """
    Well-poised 4F3(a, 1+a/2, b, c; a/2, 1+a-b, 1+a-c; -1)
    = Gamma(1+a-b) Gamma(1+a-c) / (Gamma(1+a) Gamma(1+a-b-c)),  a/2 - b - c > -1
    """
    if not 0.5 * alpha - beta - gamma > -1:
        raise DomainError("the 4F3 summation needs alpha/2 - beta - gamma > -1")
    return _gamma_quotient((1 + alpha - beta, 1 + alpha - gamma),
                           (1 + alpha, 1 + alpha - beta - gamma))


def f21_psi_form(c):
    """2F1(1, 1/2 + c; 3/2 + c; -1) = ((2c+1)/4) (psi(3/4 + c/2) - psi(1/4 + c/2))"""
    return (2 * c + 1) / 4 * (specfun.digamma(0.75 + 0.5 * c) - specfun.digamma(0.25 + 0.5 * c))
