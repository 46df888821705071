#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Error Handling Module
Exception hierarchy for the numerical engines and case isolation helpers
"""

import math
import cmath
import traceback
import warnings
from contextlib import contextmanager
from contextvars import ContextVar
from functools import wraps

from logger_config import get_logger


class HyperIntError(Exception):
    """Base exception for hyperint"""
    pass


class PoleError(HyperIntError):
    """Argument sits exactly on a pole of Gamma, psi or zeta"""
    pass


class DomainError(HyperIntError):
    """Parameters outside the region a formula is defined for"""
    pass


class UnsupportedRegion(HyperIntError):
    """Valid mathematically, but outside the region this implementation covers"""
    pass


class NotConvergent(HyperIntError):
    """The requested integral diverges"""
    pass


class DivergentSeries(HyperIntError):
    """A hypergeometric series diverges at the requested argument"""
    pass


class SlowConvergence(HyperIntError):
    """A series did not reach tolerance within the term budget"""
    pass


class NoConvergence(HyperIntError):
    """Quadrature exhausted its level budget"""
    pass


class NonFinite(HyperIntError):
    """NaN or infinity produced where a finite value was required"""
    pass


class ParseError(HyperIntError):
    """Malformed corpus or command-line input"""
    pass


class ConfigurationError(HyperIntError):
    """Malformed environment configuration"""
    pass


class NearPoleWarning(UserWarning):
    """Argument within POLE_PROXIMITY of a pole; result accuracy is reduced"""
    pass


# Near-pole notes of the evaluation running in the current context
_near_pole_notes = ContextVar('hyperint_near_pole_notes', default=None)


@contextmanager
def collect_near_poles():
    """
    Gather near-pole notes reported in this context into a list

    The list is private to the current thread or task, so evaluations
    running concurrently never see each other's notes. Outside any
    collector, report_near_pole falls back to a NearPoleWarning.

    Yields:
        list: messages in the order they were reported
    """
    notes = []
    token = _near_pole_notes.set(notes)
    try:
        yield notes
    finally:
        _near_pole_notes.reset(token)


def report_near_pole(message, stacklevel=2):
    """Append message to the active collector, or warn when none is active"""
    notes = _near_pole_notes.get()
    if notes is not None:
        notes.append(message)
    else:
        warnings.warn(NearPoleWarning(message), stacklevel=stacklevel + 1)


def ensure_finite(value, context=""):
    """
    Raise NonFinite unless value (real or complex) is finite

    Args:
        value: Number to check
        context: Where the value came from, for the message

    Returns:
        The value unchanged
    """
    finite = cmath.isfinite(value) if isinstance(value, complex) else math.isfinite(value)
    if not finite:
        raise NonFinite(f"non-finite result {value!r}" + (f" in {context}" if context else ""))
    return value


def isolate_case_errors(func):
    """
    Decorator for per-case evaluation: any failure becomes a failed outcome

    The wrapped function returns a dict; on failure the dict is
    {'ok': False, 'error': <class name>, 'message': <text>} so one bad case
    never aborts a suite.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HyperIntError as e:
            get_logger('hyperint.cases').debug(f"{func.__name__}: {type(e).__name__}: {e}")
            return {'ok': False, 'error': type(e).__name__, 'message': str(e)}
        except Exception as e:
            log_error(e, context=f"unexpected failure in {func.__name__}")
            return {'ok': False, 'error': type(e).__name__, 'message': str(e)}

    return wrapper


def log_error(error, context=""):
    """
    Log error with context

    Args:
        error: Exception object
        context: Additional context string
    """
    logger = get_logger('hyperint')
    lines = ['=' * 80]
    if context:
        lines.append(f"Context: {context}")
    lines.append(f"Error Type: {type(error).__name__}")
    lines.append(f"Error Message: {error}")
    tb = ''.join(traceback.format_exception(type(error), error, error.__traceback__))
    lines.append(f"Traceback:\n{tb}")
    lines.append('=' * 80)
    logger.error('\n'.join(lines))
