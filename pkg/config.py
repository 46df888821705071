#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Numerical constants, thresholds and names shared by the hyperint modules
"""

# Verification tolerances
DEFAULT_TOL = 1e-8          # closed form vs quadrature, relative
QUAD_TOL = 1e-11            # requested quadrature accuracy
SERIES_TOL = 1e-15          # convergent hypergeometric sums
EST_ERROR_FLOOR = 1e-13     # smallest error estimate ever reported

# Budgets
TERM_BUDGET = 10000         # max terms for any single series
QUAD_MIN_LEVEL = 3
QUAD_MAX_LEVEL = 12         # step halvings per quadrature piece

# Thresholds
POLE_PROXIMITY = 1e-12      # distance to a Gamma/zeta pole that triggers NearPole
NU_LIMIT_SWITCH = 1e-4      # I4: use the limiting form when |nu - k| is below this
BETA_POLE_WARN = 1e-6       # m = 1 Beta forms: nu - a/b below this is flagged
ZED_ALTERNATING_SWITCH = 5.0
HURWITZ_MIN_S = -3.0        # zeta arguments must satisfy s > HURWITZ_MIN_S
MU_ZERO_SWITCH = 1e-5       # mu -> 0: limit plus first-order correction below this

# General-mu double series
SPLIT_FORM_MIN_NU = 1.0             # cosh denominators above this use the split form
SPLIT_HEAD_MAX_TERMS = 512          # Taylor terms of the split-form head
TAIL_POWER_TERMS = 64               # numerator Taylor terms in the split-form tail
SERIES_CANCELLATION_LIMIT = 1e-9    # eps * abs mass / |value| above this is refused

# Asymptotic expansion orders
TAIL_ORDER = 12
GAMMA_RATIO_ORDER = 14

# Random property cases
DEFAULT_SEED = 0xD1CE
DEFAULT_RANDOM_CASES = 0
DEFAULT_JOBS = 1

# Integral families
FAMILY_COSH_COSH = 'I1'
FAMILY_SINH_COSH = 'I2'
FAMILY_COSH_SINH = 'I3'
FAMILY_SINH_SINH = 'I4'
INTEGRAL_FAMILIES = (FAMILY_COSH_COSH, FAMILY_SINH_COSH, FAMILY_COSH_SINH, FAMILY_SINH_SINH)

# Named variants accepted by corpora and by the eval subcommand
VARIANT_TRIG_COS_COSH = 'trig-cos-cosh'
VARIANT_TRIG_SIN_SINH = 'trig-sin-sinh'
VARIANT_TRIG_SIN_COSH = 'trig-sin-cosh'
VARIANT_EX3_COSH_SINH2 = 'ex3-cosh-sinh2'
VARIANT_EX3_SINH_COSH2 = 'ex3-sinh-cosh2'
VARIANT_POW_SINH_COSH = 'pow-sinh-cosh'

TRIG_VARIANTS = {
    VARIANT_TRIG_COS_COSH: FAMILY_COSH_COSH,
    VARIANT_TRIG_SIN_SINH: FAMILY_SINH_SINH,
    VARIANT_TRIG_SIN_COSH: FAMILY_SINH_COSH,
}
SQUARED_DENOM_VARIANTS = {
    VARIANT_EX3_COSH_SINH2: FAMILY_COSH_SINH,
    VARIANT_EX3_SINH_COSH2: FAMILY_SINH_COSH,
}
ALL_CASE_FAMILIES = (INTEGRAL_FAMILIES + tuple(TRIG_VARIANTS)
                     + tuple(SQUARED_DENOM_VARIANTS) + (VARIANT_POW_SINH_COSH,))

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGENT = 3

# Reports
REPORT_DIGITS = 17
DEFAULT_CORPUS = 'files/corpus/gr_cited.json'


def is_sinh_numerator(family):
    """True for the families whose numerator is sinh^m(ax)"""
    return family in (FAMILY_SINH_COSH, FAMILY_SINH_SINH)


def is_sinh_denominator(family):
    """True for the families whose denominator is sinh^nu(bx)"""
    return family in (FAMILY_COSH_SINH, FAMILY_SINH_SINH)
