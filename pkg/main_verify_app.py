#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Main Verification Application
Command-line entry point: verify corpora against the quadrature oracle or
evaluate a single integral
"""

import argparse
import logging
import sys

import config
import verify
from env_config import get_env_config
from error_handler import HyperIntError, ParseError, NotConvergent, ConfigurationError, log_error
from logger_config import setup_logger, log_run_start, log_run_stop


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits, got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser(env):
    """
    Argument parser; defaults come from the environment configuration

    Args:
        env: EnvConfig

    Returns:
        argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog='hyperint',
        description='Closed-form hyperbolic integrals with a quadrature oracle',
    )
    parser.add_argument('--log-dir', default=None, help='directory for rotating log files')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug output on the console')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('verify', help='verify every case of a JSON corpus')
    run.add_argument('corpus', nargs='?', default=str(env.get_corpus_path()), help='corpus file')
    run.add_argument('--tol', type=float, default=env.tolerance, help='per-case tolerance (default %(default)g)')
    run.add_argument('--json', dest='json_path', default=None, help='write the structured report here')
    run.add_argument('--seed', type=_u64, default=env.seed, help='seed for random cases')
    run.add_argument('--jobs', type=_positive_int, default=env.jobs, help='worker processes')
    run.add_argument('--random', dest='random_cases', type=_non_negative_int, default=env.random_cases,
                     help='number of seeded random property cases to add')

    one = commands.add_parser('eval', help='evaluate one integral')
    one.add_argument('--family', required=True, choices=config.ALL_CASE_FAMILIES)
    one.add_argument('--m', type=_non_negative_int, default=0)
    one.add_argument('--mu', type=float, default=1.0)
    one.add_argument('--nu', type=float, default=1.0)
    one.add_argument('--a', type=float, default=0.0)
    one.add_argument('--b', type=float, default=1.0)
    one.add_argument('--beta', type=float, default=0.0)
    one.add_argument('--oracle', action='store_true', help='also integrate numerically')
    return parser


class VerifyApp:
    """
    Orchestrates one CLI invocation
    """

    def __init__(self, args, env):
        self.args = args
        self.env = env
        level = logging.DEBUG if args.verbose else getattr(logging, env.log_level)
        self.logger = setup_logger('hyperint', log_dir=args.log_dir or env.get_log_dir(), level=level)

    def run_verify(self):
        """Run a corpus; prints the text report to stdout"""
        args = self.args
        if args.tol <= 0:
            raise ParseError(f"--tol must be positive, got {args.tol!r}")
        report, exit_code = verify.run_suite(
            args.corpus, tol=args.tol, seed=args.seed, jobs=args.jobs,
            random_cases=args.random_cases, json_path=args.json_path,
        )
        print(report.to_text())
        if exit_code == config.EXIT_PASS:
            self.logger.info("✅ All cases passed")
        else:
            self.logger.warning(f"❌ {report.summary['failed']} case(s) failed")
        return exit_code

    def run_eval(self):
        """Evaluate one integral"""
        args = self.args
        return verify.eval_one(
            args.family, m=args.m, mu=args.mu, nu=args.nu, a=args.a, b=args.b,
            beta=args.beta, oracle=args.oracle,
        )

    def run(self):
        """
        Dispatch the subcommand and map errors to exit codes

        Returns:
            int: process exit code
        """
        command = self.args.command
        log_run_start(command)
        try:
            if command == 'verify':
                return self.run_verify()
            return self.run_eval()
        except ParseError as e:
            self.logger.error(f"❌ {e}")
            return config.EXIT_USAGE
        except NotConvergent as e:
            self.logger.error(f"❌ Not convergent: {e}")
            return config.EXIT_NOT_CONVERGENT
        except HyperIntError as e:
            self.logger.error(f"❌ {type(e).__name__}: {e}")
            return config.EXIT_FAIL
        except Exception as e:
            log_error(e, f"{command} failed")
            return config.EXIT_FAIL
        finally:
            log_run_stop(command)


def main(argv=None):
    """Main entry point"""
    try:
        env = get_env_config()
    except ConfigurationError as e:
        print(f"❌ {e}", file=sys.stderr)
        return config.EXIT_USAGE
    parser = build_parser(env)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return config.EXIT_USAGE if e.code else config.EXIT_PASS
    return VerifyApp(args, env).run()


if __name__ == "__main__":
    sys.exit(main())
