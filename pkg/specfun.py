#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Special Functions Module
Gamma, Beta, psi, Hurwitz zeta and the alternating Z function, plus the
Bernoulli machinery used for asymptotic series tails.

Complex arguments use Python's complex type; real arguments return floats.
"""

import math
import cmath
from fractions import Fraction

import config
from error_handler import (PoleError, DomainError, UnsupportedRegion, SlowConvergence,
                           report_near_pole, ensure_finite)


CATALAN = 0.915965594177219015054603514932

# Even Bernoulli numbers B_2 .. B_20
_BERNOULLI_EVEN = {
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
}
BERNOULLI = {n: float(v) for n, v in _BERNOULLI_EVEN.items()}

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Euler-Boole tail coefficients: sum (-1)^n f(n) = f(0)/2 - sum_j c_j f^(2j+1)(0)
_BOOLE_COEF = (1/4, -1/48, 1/480, -17/80640, 31/1451520, -691/319334400)


def catalan():
    """Catalan's constant G"""
    return CATALAN


def bernoulli(n):
    """
    Bernoulli number B_n for n = 0, 1 or even 2 <= n <= 20

    Args:
        n: Index

    Returns:
        float: B_n (B_1 = -1/2 convention)
    """
    if n == 0:
        return 1.0
    if n == 1:
        return -0.5
    if n % 2 == 1:
        return 0.0
    if n not in BERNOULLI:
        raise UnsupportedRegion(f"Bernoulli numbers are stored up to B_20, got B_{n}")
    return BERNOULLI[n]


def _is_complex(*values):
    return any(isinstance(v, complex) for v in values)


def _check_pole(z, what):
    """Raise PoleError on non-positive integers, report a near pole within POLE_PROXIMITY"""
    if isinstance(z, complex):
        if z.imag != 0.0:
            return
        x = z.real
    else:
        x = float(z)
    nearest = round(x)
    if nearest > 0:
        return
    distance = abs(x - nearest)
    if distance == 0.0:
        raise PoleError(f"{what} has a pole at {nearest}")
    if distance < config.POLE_PROXIMITY:
        report_near_pole(f"{what}({x!r}) is within {distance:.1e} of the pole at {nearest}", stacklevel=3)


# ---------------------------------------------------------------------------
# Gamma and Beta
# ---------------------------------------------------------------------------

def _lanczos_log_gamma(z):
    """Principal log-gamma for Re z >= 1/2"""
    z = z - 1
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def ln_gamma(z):
    """
    Logarithm of the Gamma function

    Complex arguments give the principal branch (Lanczos with reflection).
    Real arguments give log|Gamma(x)|; pair with log_gamma_sign for the sign.

    Args:
        z: float or complex, not a non-positive integer

    Returns:
        float or complex
    """
    _check_pole(z, 'ln_gamma')
    if not isinstance(z, complex):
        return ensure_finite(math.lgamma(float(z)), 'ln_gamma')
    if z.real >= 0.5:
        value = _lanczos_log_gamma(z)
    else:
        value = math.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _lanczos_log_gamma(1 - z)
    return ensure_finite(value, 'ln_gamma')


def log_gamma_sign(x):
    """
    Real log-gamma with sign

    Returns:
        tuple: (log|Gamma(x)|, sign of Gamma(x))
    """
    x = float(x)
    _check_pole(x, 'gamma')
    if x > 0:
        return math.lgamma(x), 1.0
    # Gamma(x) = pi / (sin(pi x) Gamma(1 - x)) with Gamma(1 - x) > 0
    sign = 1.0 if math.sin(math.pi * x) > 0 else -1.0
    return math.lgamma(x), sign


def gamma(x):
    """Gamma function of a real argument"""
    log_abs, sign = log_gamma_sign(x)
    return ensure_finite(sign * math.exp(log_abs), 'gamma')


def gamma_ratio(x, y):
    """
    Gamma(x) / Gamma(y) for real arguments without intermediate overflow

    Returns 0 when y is a non-positive integer (1/Gamma vanishes there).
    """
    if float(y) <= 0 and float(y) == round(float(y)):
        _check_pole(x, 'gamma')
        return 0.0
    lx, sx = log_gamma_sign(x)
    ly, sy = log_gamma_sign(y)
    return ensure_finite(sx * sy * math.exp(lx - ly), 'gamma_ratio')


def beta(a, b):
    """
    Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)

    Args:
        a, b: float or complex, neither a non-positive integer

    Returns:
        float for real arguments, complex otherwise
    """
    if _is_complex(a, b):
        a, b = complex(a), complex(b)
        _check_pole(a, 'beta')
        _check_pole(b, 'beta')
        s = a + b
        if s.imag == 0.0 and s.real <= 0 and s.real == round(s.real):
            return 0j
        return ensure_finite(cmath.exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(s)), 'beta')
    la, sa = log_gamma_sign(a)
    lb, sb = log_gamma_sign(b)
    s = float(a) + float(b)
    if s <= 0 and s == round(s):
        return 0.0
    ls, ss = log_gamma_sign(s)
    return ensure_finite(sa * sb * ss * math.exp(la + lb - ls), 'beta')


def upper_gamma(s, x):
    """
    Upper incomplete Gamma function Gamma(s, x) = int_x^inf t^(s-1) e^-t dt

    Gamma(s) minus the lower series when x < s + 1, the Lentz continued
    fraction otherwise.

    Args:
        s: Real, s > 0
        x: Real, x >= 0

    Returns:
        float
    """
    s, x = float(s), float(x)
    if not s > 0 or x < 0:
        raise DomainError(f"upper_gamma needs s > 0 and x >= 0, got s = {s!r}, x = {x!r}")
    if x == 0.0:
        return gamma(s)
    log_scale = s * math.log(x) - x

    if x < s + 1.0:
        term = 1.0 / s
        total = term
        for k in range(1, config.TERM_BUDGET):
            term *= x / (s + k)
            total += term
            if term < 1e-17 * total:
                break
        else:
            raise SlowConvergence(f"upper_gamma({s!r}, {x!r}): lower series exhausted the term budget")
        return ensure_finite(gamma(s) - math.exp(log_scale) * total, 'upper_gamma')

    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, config.TERM_BUDGET):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 4e-16:
            break
    else:
        raise SlowConvergence(f"upper_gamma({s!r}, {x!r}): continued fraction exhausted the term budget")
    return ensure_finite(math.exp(log_scale) * h, 'upper_gamma')


# ---------------------------------------------------------------------------
# Digamma and trigamma
# ---------------------------------------------------------------------------

def digamma(z):
    """
    Digamma psi(z) for real or complex z

    Upward recurrence until |z| > 10, then the asymptotic series.
    Reflection is used for Re z < 1/2.
    """
    _check_pole(z, 'digamma')
    complex_arg = isinstance(z, complex)
    lib = cmath if complex_arg else math
    if not complex_arg:
        z = float(z)

    if z.real < 0.5:
        value = digamma(1 - z) - math.pi / lib.tan(math.pi * z)
        return ensure_finite(value, 'digamma')

    shift = 0.0
    while abs(z) <= 10.0:
        shift += 1.0 / z
        z += 1
    inv2 = 1.0 / (z * z)
    series = 0.0
    power = inv2
    for k in range(1, 8):
        series += BERNOULLI[2 * k] / (2 * k) * power
        power *= inv2
    value = lib.log(z) - 0.5 / z - series - shift
    return ensure_finite(value, 'digamma')


def trigamma(x):
    """Trigamma psi'(x) for real x > 0"""
    x = float(x)
    if x <= 0:
        raise DomainError(f"trigamma is implemented for x > 0, got {x!r}")
    shift = 0.0
    while x <= 10.0:
        shift += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = inv + 0.5 * inv2
    power = inv2 * inv
    for k in range(1, 8):
        series += BERNOULLI[2 * k] * power
        power *= inv2
    return ensure_finite(series + shift, 'trigamma')


def alt_psi_sum(x):
    """sum_{n>=0} (-1)^n / (n + x) = (psi(1/2 + x/2) - psi(x/2)) / 2, x > 0"""
    if x <= 0:
        raise DomainError(f"alt_psi_sum needs x > 0, got {x!r}")
    return 0.5 * (digamma(0.5 + 0.5 * x) - digamma(0.5 * x))


# ---------------------------------------------------------------------------
# Euler-Maclaurin and Euler-Boole tails
# ---------------------------------------------------------------------------

def _em_remainder(s, y):
    """Euler-Maclaurin terms of sum_{n>=0} (n+y)^-s after the integral term"""
    total = 0.5 * y ** (-s)
    rising = s          # (s)_{2k-1}
    factorial = 2.0     # (2k)!
    power = y ** (-s - 1)
    inv2 = 1.0 / (y * y)
    for k in range(1, 7):
        total += BERNOULLI[2 * k] / factorial * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        factorial *= (2 * k + 1) * (2 * k + 2)
        power *= inv2
    return total


def _expm1_ratio(u, log_y):
    """expm1(u log_y) / u, continuous at u = 0"""
    if u == 0.0:
        return log_y
    return math.expm1(u * log_y) / u


def hurwitz_tail(s, y, drop_pole=False):
    """
    sum_{n>=0} (n + y)^-s for large y by Euler-Maclaurin

    With drop_pole the constant 1/(s-1) of the integral term
    y^(1-s)/(s-1) = 1/(s-1) + (y^(1-s) - 1)/(s-1) is omitted; callers use
    this when that constant cancels across a finite difference.

    Args:
        s: Real exponent (any real; the result is the analytic continuation)
        y: Real shift, should exceed |s| + 10 for full accuracy
        drop_pole: Omit the 1/(s-1) constant

    Returns:
        float
    """
    # (y^(1-s) - 1)/(s-1) = -expm1((1-s) log y)/(1-s)
    integral = -_expm1_ratio(1.0 - s, math.log(y))
    if not drop_pole:
        if s == 1.0:
            raise PoleError("hurwitz_tail: pole at s = 1")
        integral += 1.0 / (s - 1.0)
    return integral + _em_remainder(s, y)


def alternating_tail(s, y):
    """
    sum_{n>=0} (-1)^n (n + y)^-s for large y by the Euler-Boole formula

    Valid for every real s (analytic continuation when the sum diverges).
    """
    total = 0.5 * y ** (-s)
    rising = s          # (s)_{2j+1}
    power = y ** (-s - 1)
    inv2 = 1.0 / (y * y)
    for j, coef in enumerate(_BOOLE_COEF):
        total += coef * rising * power
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2)
        power *= inv2
    return total


def _tail_start(s, x):
    """Number of directly summed terms so the tails start beyond |s| + 20"""
    return max(0, math.ceil(20.0 + abs(s) - x))


# ---------------------------------------------------------------------------
# Zeta functions
# ---------------------------------------------------------------------------

def _check_region(s, what):
    if not s > config.HURWITZ_MIN_S:
        raise UnsupportedRegion(f"{what}: s = {s!r} outside the supported region s > {config.HURWITZ_MIN_S}")


def hurwitz_zeta(s, a):
    """
    Hurwitz zeta function zeta(s, a) = sum_{n>=0} (n + a)^-s

    Euler-Maclaurin with N = max(10, ceil(|s|) + 10) direct terms and
    Bernoulli corrections through B_12. Analytic continuation for s < 1.

    The error bound is mixed. For s > 1 it is relative, about 1e-14. For
    s < 1 the direct sum and y^(1-s)/(s-1) cancel, leaving an absolute
    error of about 1e-15 * (N + a)^(1-s); close to a zero of zeta(s, a)
    the relative error is unbounded.

    Args:
        s: Real, s > -3, s != 1
        a: Real, a > 0

    Returns:
        float
    """
    s = float(s)
    a = float(a)
    if a <= 0:
        raise DomainError(f"hurwitz_zeta needs a > 0, got a = {a!r}")
    _check_region(s, 'hurwitz_zeta')
    if s == 1.0:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if abs(s - 1.0) < config.POLE_PROXIMITY:
        report_near_pole(f"hurwitz_zeta: s = {s!r} is next to the pole at 1")

    n_direct = max(10, math.ceil(abs(s)) + 10)
    direct = math.fsum((n + a) ** (-s) for n in range(n_direct))
    y = n_direct + a
    value = direct + y ** (1.0 - s) / (s - 1.0) + _em_remainder(s, y)
    return ensure_finite(value, 'hurwitz_zeta')


def zeta(s):
    """Riemann zeta function, s > -3, s != 1"""
    return hurwitz_zeta(s, 1.0)


def alternating_hurwitz(s, x):
    """
    sum_{n>=0} (-1)^n (n + x)^-s, analytically continued in s

    Direct terms until n + x exceeds |s| + 20, then the Euler-Boole tail.
    """
    s = float(s)
    x = float(x)
    if x <= 0:
        raise DomainError(f"alternating_hurwitz needs x > 0, got x = {x!r}")
    n_direct = _tail_start(s, x)
    direct = math.fsum((-1) ** n * (n + x) ** (-s) for n in range(n_direct))
    sign = -1.0 if n_direct % 2 else 1.0
    return ensure_finite(direct + sign * alternating_tail(s, x + n_direct), 'alternating_hurwitz')


def zed(mu, a):
    """
    Z(mu, a) = zeta(mu, a) - zeta(mu, a + 1/2)

    For a <= 5 the two Euler-Maclaurin evaluations are differenced term by
    term (expm1/log1p) so no cancellation occurs; the difference has no pole
    at mu = 1. For a > 5, Z(mu, a) = 2^mu sum (-1)^n (n + 2a)^-mu.

    Args:
        mu: Real, mu > -3
        a: Real, a > 0

    Returns:
        float
    """
    s = float(mu)
    a = float(a)
    if a <= 0:
        raise DomainError(f"zed needs a > 0, got a = {a!r}")
    _check_region(s, 'zed')
    if a > config.ZED_ALTERNATING_SWITCH:
        return ensure_finite(2.0 ** s * alternating_hurwitz(s, 2.0 * a), 'zed')

    n_direct = max(10, math.ceil(abs(s)) + 10)
    terms = []
    for n in range(n_direct):
        p = n + a
        terms.append(-(p ** (-s)) * math.expm1(-s * math.log1p(0.5 / p)))
    y1 = n_direct + a
    y2 = y1 + 0.5
    pole_diff = y1 ** (1.0 - s) * _expm1_ratio(1.0 - s, math.log1p(0.5 / y1))
    terms.append(pole_diff)
    terms.append(_em_remainder(s, y1))
    terms.append(-_em_remainder(s, y2))
    return ensure_finite(math.fsum(terms), 'zed')


# ---------------------------------------------------------------------------
# Generalized Bernoulli polynomials and Gamma-ratio expansions
# ---------------------------------------------------------------------------

def generalized_binomial(x, k):
    """C(x, k) for real x and integer k >= 0"""
    out = 1.0
    for j in range(k):
        out *= (x - j) / (j + 1)
    return out


def generalized_bernoulli(k_max, sigma, x):
    """
    Generalized Bernoulli polynomials B_k^(sigma)(x) for k < k_max

    From the generating function (t/(e^t - 1))^sigma e^(x t), with
    log(t/(e^t - 1)) = -t/2 - sum_j B_2j t^2j / (2j (2j)!).

    Returns:
        list of floats
    """
    if k_max > 21:
        raise UnsupportedRegion("generalized_bernoulli supports k_max <= 21")
    log_coef = [0.0] * k_max
    if k_max > 1:
        log_coef[1] = -0.5 * sigma + x
    factorial = 2.0
    for j in range(2, k_max, 2):
        log_coef[j] = -sigma * BERNOULLI[j] / (j * factorial)
        factorial *= (j + 1) * (j + 2)

    exp_coef = [0.0] * k_max
    exp_coef[0] = 1.0
    for n in range(1, k_max):
        exp_coef[n] = sum(k * log_coef[k] * exp_coef[n - k] for k in range(1, n + 1)) / n

    out = []
    factorial = 1.0
    for k in range(k_max):
        if k:
            factorial *= k
        out.append(factorial * exp_coef[k])
    return out


def gamma_ratio_series(a, b, k_max=config.GAMMA_RATIO_ORDER):
    """
    Coefficients c_k with Gamma(z+a)/Gamma(z+b) ~ z^(a-b) sum_k c_k z^-k

    c_k = C(a-b, k) B_k^(a-b+1)(a)

    Returns:
        list of floats, c_0 = 1
    """
    rho = a - b
    polys = generalized_bernoulli(k_max, rho + 1.0, a)
    return [generalized_binomial(rho, k) * polys[k] for k in range(k_max)]
