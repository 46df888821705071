#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Logging Configuration Module
Console output on stderr (stdout carries reports), rotating run, error and
case logs on disk
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from logging.handlers import RotatingFileHandler

MB = 1024 * 1024

DETAILED_FORMAT = '%(asctime)s | %(levelname)-8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s'
SHORT_FORMAT = '%(asctime)s | %(levelname)-8s | %(message)s'

# (file suffix, level, detailed format, max bytes, backups, CASE lines only)
LOG_FILES = (
    ('hyperint', logging.DEBUG, True, 10 * MB, 5, False),
    ('errors', logging.ERROR, True, 5 * MB, 3, False),
    ('cases', logging.INFO, False, 10 * MB, 10, True),
)


class ColoredFormatter(logging.Formatter):
    """Level names in ANSI colors; the record itself is left untouched"""

    LEVEL_COLORS = {
        logging.DEBUG: '\033[36m',
        logging.INFO: '\033[32m',
        logging.WARNING: '\033[33m',
        logging.ERROR: '\033[31m',
        logging.CRITICAL: '\033[35m',
    }
    RESET = '\033[0m'

    def format(self, record):
        color = self.LEVEL_COLORS.get(record.levelno)
        if color is None:
            return super().format(record)
        tinted = logging.makeLogRecord(record.__dict__)
        tinted.levelname = f"{color}{record.levelname}{self.RESET}"
        return super().format(tinted)


def _is_case_line(record):
    return 'CASE' in record.getMessage()


def _file_handler(path, level, formatter, max_bytes, backups, cases_only):
    handler = RotatingFileHandler(path, maxBytes=max_bytes, backupCount=backups, encoding='utf-8')
    handler.setLevel(level)
    handler.setFormatter(formatter)
    if cases_only:
        handler.addFilter(_is_case_line)
    return handler


def setup_logger(name='hyperint', log_dir=None, level=logging.INFO):
    """
    Attach console and rotating file handlers to a logger

    Calling it again for a logger that already has handlers is a no-op.

    Args:
        name: Logger name
        log_dir: Directory for log files (default: ./logs next to this module)
        level: Console level; files always record DEBUG and up

    Returns:
        logging.Logger: Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    if logger.handlers:
        return logger

    log_dir = Path(log_dir) if log_dir is not None else Path(__file__).parent / 'logs'
    log_dir.mkdir(parents=True, exist_ok=True)
    today = datetime.now().strftime('%Y-%m-%d')

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level)
    console.setFormatter(ColoredFormatter(SHORT_FORMAT, datefmt='%H:%M:%S'))
    logger.addHandler(console)

    detailed = logging.Formatter(DETAILED_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
    short = logging.Formatter(SHORT_FORMAT, datefmt='%H:%M:%S')
    for suffix, file_level, use_detailed, max_bytes, backups, cases_only in LOG_FILES:
        logger.addHandler(_file_handler(
            log_dir / f'{today}_{suffix}.log', file_level,
            detailed if use_detailed else short, max_bytes, backups, cases_only,
        ))
    return logger


class VerificationLogger:
    """
    Case-level log lines; every line carries the CASE tag so the cases log
    picks it up
    """

    def __init__(self, logger=None):
        self.logger = logger or get_logger('hyperint')

    def log_case_result(self, result):
        """One verified case (a verify.CaseResult)"""
        status = 'PASS' if result.pass_ else 'FAIL'
        line = (
            f"CASE {status} | {result.id} | {result.family} | {result.formula_id} | "
            f"closed: {result.closed_value:.17g} | quad: {result.quad_value:.17g} | "
            f"rel err: {result.rel_err:.3e}"
        )
        self.logger.log(logging.INFO if result.pass_ else logging.WARNING, line)

    def log_case_error(self, case_id, family, error, message):
        """A case whose evaluation raised"""
        self.logger.warning(f"CASE ERROR | {case_id} | {family} | {error}: {message}")

    def log_suite_summary(self, summary):
        self.logger.info(
            f"CASE SUMMARY | {summary['passed']}/{summary['total']} passed | "
            f"errors: {summary['errors']} | max rel err: {summary['max_rel_err']:.3e} | "
            f"tol: {summary['tol']:.1e} | seed: {summary['seed']:#x}"
        )


def get_logger(name='hyperint'):
    """Library modules log through children of 'hyperint' (e.g. 'hyperint.quad')"""
    return logging.getLogger(name)


def _banner(command, event):
    logger = get_logger('hyperint')
    logger.info('=' * 80)
    logger.info(f"HYPERINT {command.upper()} {event}")
    logger.info(f"Time: {datetime.now():%Y-%m-%d %H:%M:%S}")
    logger.info('=' * 80)


def log_run_start(command):
    _banner(command, 'STARTING')


def log_run_stop(command):
    _banner(command, 'FINISHED')
