# Copyright (C) 2026 The luq developers
# SPDX-License-Identifier: MIT

"""Command-line front end: ``luq standard-form | check | verify | random``."""

import argparse
from dataclasses import dataclass, field
from enum import IntEnum
import logging
import os
from pathlib import Path
import sys
from typing import Callable, Dict, Mapping, NoReturn, Optional, Sequence, TextIO

from ._exceptions import StateDomainException, StateFileException
from ._files import (
    dumps,
    load_certificate,
    load_state,
    save_layer,
    save_state,
    state_to_dict,
)
from ._logger import logger
from ._random import (
    ghz_state,
    haar_layer,
    haar_state,
    linear_cluster_state,
    product_state,
    w_state,
)
from ._solver import decide_lu_equivalence
from ._standard_form import schmidt_coefficients, standard_form, verify_certificate
from ._state import PureState
from ._util import DEFAULT_TOLERANCES, SolverConfiguration, ToleranceContext

SEED_VARIABLE = "LUQ_SEED"
RANDOM_KINDS = ("haar_state", "layer", "ghz", "w", "cluster", "product")


class ExitCode(IntEnum):
    """Process exit codes. Codes above 2 never describe a verdict."""

    EQUIVALENT = 0
    NOT_EQUIVALENT = 1
    UNDETERMINED = 2
    USAGE_ERROR = 3
    FILE_ERROR = 4


class UsageError(Exception):
    """Raised for command-line input that parses but cannot be acted on."""


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is the undetermined verdict here
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """Settings shared by every subcommand.

    Parameters
    ----------
    seed : int
        Seed of the random fixtures and of the search starting points.
    restarts : int
        Number of multi-start search runs.
    workers : int
        Number of threads for concurrent search restarts.
    tolerances : ToleranceContext
        Tolerances with the command-line overrides applied.
    output : pathlib.Path, optional
        Destination file. Standard output is used when unset.
    verbosity : int
        ``-1`` for ``--quiet``, ``0`` by default, ``1`` for ``--verbose``.
    """

    seed: int = 0
    restarts: int = 64
    workers: int = 1
    tolerances: ToleranceContext = field(default=DEFAULT_TOLERANCES)
    output: Optional[Path] = None
    verbosity: int = 0

    @staticmethod
    def resolve_seed(seed: Optional[int], environ: Mapping[str, str]) -> int:
        """Pick the ``--seed`` value, then ``LUQ_SEED``, then zero."""
        if seed is None:
            raw = environ.get(SEED_VARIABLE)
            if raw is None or not raw.strip():
                return 0
            try:
                seed = int(raw, 0)
            except ValueError:
                raise UsageError(f"{SEED_VARIABLE} must be an integer, got '{raw}'.") from None
        if not 0 <= seed < 2**64:
            raise UsageError(f"Seed must be an unsigned 64-bit integer, got {seed}.")
        return seed

    @classmethod
    def from_args(
        cls, args: argparse.Namespace, environ: Optional[Mapping[str, str]] = None
    ) -> "RunConfig":
        """Build the run configuration from parsed arguments and the environment."""
        environ = os.environ if environ is None else environ
        try:
            tolerances = DEFAULT_TOLERANCES.replace(
                fidelity_accept=args.tol_fidelity, degeneracy=args.tol_degeneracy
            )
        except ValueError as exception:
            raise UsageError(str(exception)) from None
        if args.restarts < 1 or args.workers < 1:
            raise UsageError("--restarts and --workers must be at least 1.")
        return cls(
            seed=cls.resolve_seed(args.seed, environ),
            restarts=args.restarts,
            workers=args.workers,
            tolerances=tolerances,
            output=args.output,
            verbosity=-1 if args.quiet else min(args.verbose, 1),
        )

    @property
    def log_level(self) -> int:
        """Logging level implied by the verbosity flags."""
        return {-1: logging.WARNING, 0: logging.INFO, 1: logging.DEBUG}[self.verbosity]

    def solver_configuration(self) -> SolverConfiguration:
        """Solver parameters for this run."""
        return SolverConfiguration(
            tolerances=self.tolerances,
            restarts=self.restarts,
            seed=self.seed,
            workers=self.workers,
        )

    def emit(self, text: str) -> None:
        """Write ``text`` to the output file, or to standard output."""
        if self.output is None:
            sys.stdout.write(text)
        else:
            self.output.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {self.output}")


def _report(config: RunConfig, line: str, stream: Optional[TextIO] = None) -> None:
    if config.verbosity >= 0:
        print(line, file=stream or sys.stdout)


def cmd_standard_form(args: argparse.Namespace, config: RunConfig) -> int:
    """Write the standard form of a state and the layer reaching it."""
    state = load_state(args.input, config.tolerances)
    result = standard_form(state)
    # the document goes to stdout when no output file is given
    stream = sys.stderr if config.output is None else sys.stdout
    _report(config, f"generic: {str(result.generic).lower()}", stream)
    for k, spectrum in enumerate(result.spectra, start=1):
        flag = " (degenerate)" if spectrum.degenerate else ""
        _report(
            config,
            f"qubit {k}: spectrum ({spectrum.lambda1:.12g}, {spectrum.lambda2:.12g}){flag}",
            stream,
        )
    if state.n == 2:
        coefficients = ", ".join(f"{c:.12g}" for c in schmidt_coefficients(state))
        _report(config, f"schmidt coefficients: ({coefficients})", stream)

    layer_output = args.layer_output
    if layer_output is None and config.output is not None:
        layer_output = config.output.with_suffix(".layer.json")
    if config.output is None:
        document = {"state": state_to_dict(result.canonical), "layer": result.layer.to_dict()}
        sys.stdout.write(dumps(document))
    else:
        save_state(result.canonical, config.output)
    if layer_output is not None:
        save_layer(result.layer, layer_output)
    return ExitCode.EQUIVALENT


def cmd_check(args: argparse.Namespace, config: RunConfig) -> int:
    """Decide equivalence of two state files and emit the certificate."""
    psi = load_state(args.first, config.tolerances)
    phi = load_state(args.second, config.tolerances)
    if psi.n != phi.n:
        raise UsageError(f"States have different qubit counts: {psi.n} and {phi.n}.")
    verdict = decide_lu_equivalence(psi, phi, config.solver_configuration())
    config.emit(dumps(verdict.to_dict()))
    logger.info(f"{args.first} vs {args.second}: {verdict.kind.value}")
    return verdict.kind.exit_code


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    """Replay a certificate on two state files."""
    psi = load_state(args.first, config.tolerances)
    phi = load_state(args.second, config.tolerances)
    certificate = load_certificate(args.certificate)
    try:
        layer = certificate.to_layer(config.tolerances)
    except StateDomainException as exception:
        raise StateFileException(str(args.certificate), str(exception)) from None
    if layer is None:
        raise StateFileException(
            str(args.certificate), f"a '{certificate.verdict}' certificate carries no layer"
        )
    if not psi.n == phi.n == layer.n:
        raise UsageError(
            f"Sizes differ: states on {psi.n} and {phi.n} qubits, certificate on {layer.n}."
        )
    residual = verify_certificate(psi, phi, layer)
    accepted = residual <= config.tolerances.fidelity_accept
    _report(config, f"residual: {residual:.6e} ({'accepted' if accepted else 'rejected'})")
    return ExitCode.EQUIVALENT if accepted else ExitCode.NOT_EQUIVALENT


def cmd_random(args: argparse.Namespace, config: RunConfig) -> int:
    """Write a named or seeded random state, or a random layer."""
    n = args.n
    generators: Dict[str, Callable[[], PureState]] = {
        "haar_state": lambda: haar_state(n, config.seed, config.tolerances),
        "ghz": lambda: ghz_state(n, config.tolerances),
        "w": lambda: w_state(n, config.tolerances),
        "cluster": lambda: linear_cluster_state(n, config.tolerances),
        "product": lambda: product_state(n, tol=config.tolerances),
    }
    try:
        if args.kind == "layer":
            config.emit(dumps(haar_layer(n, config.seed).to_dict()))
        else:
            config.emit(dumps(state_to_dict(generators[args.kind]())))
    except StateDomainException as exception:
        raise UsageError(str(exception)) from None
    return ExitCode.EQUIVALENT


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=None, help=f"u64 seed (fallback: ${SEED_VARIABLE})"
    )
    common.add_argument("--restarts", type=int, default=64, help="multi-start search runs")
    common.add_argument("--workers", type=int, default=1, help="threads for search restarts")
    common.add_argument("--tol-fidelity", type=float, default=None, help="accepted residual")
    common.add_argument(
        "--tol-degeneracy", type=float, default=None, help="degeneracy threshold of spectra"
    )
    common.add_argument("--output", type=Path, default=None, help="output file (default: stdout)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="only log warnings")
    verbosity.add_argument("-v", "--verbose", action="count", default=0, help="log debug output")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Create the ``luq`` argument parser."""
    common = _common_options()
    parser = _ArgumentParser(
        prog="luq", description="Local-unitary equivalence of multi-qubit pure states."
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    standard = commands.add_parser(
        "standard-form", parents=[common], help="canonical representative of a state"
    )
    standard.add_argument("input", type=Path)
    standard.add_argument("--layer-output", type=Path, default=None, help="layer file")
    standard.set_defaults(handler=cmd_standard_form)

    check = commands.add_parser("check", parents=[common], help="decide LU equivalence")
    check.add_argument("first", type=Path)
    check.add_argument("second", type=Path)
    check.set_defaults(handler=cmd_check)

    verify = commands.add_parser("verify", parents=[common], help="replay a certificate")
    verify.add_argument("first", type=Path)
    verify.add_argument("second", type=Path)
    verify.add_argument("certificate", type=Path)
    verify.set_defaults(handler=cmd_verify)

    random = commands.add_parser("random", parents=[common], help="write a fixture state or layer")
    random.add_argument("kind", choices=RANDOM_KINDS)
    random.add_argument("n", type=int)
    random.set_defaults(handler=cmd_random)
    return parser


def main(argv: Optional[Sequence[str]] = None, environ: Optional[Mapping[str, str]] = None) -> int:
    """Run the command line and return the process exit code."""
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        config = RunConfig.from_args(args, environ)
    except UsageError as exception:
        parser.exit(ExitCode.USAGE_ERROR, f"luq: error: {exception}\n")

    logging.basicConfig(
        stream=sys.stderr, format="%(levelname)s %(asctime)s - %(message)s", level=config.log_level
    )
    logger.setLevel(config.log_level)

    handler: Callable[[argparse.Namespace, RunConfig], int] = args.handler
    try:
        return int(handler(args, config))
    except UsageError as exception:
        logger.error(str(exception))
        return ExitCode.USAGE_ERROR
    except StateFileException as exception:
        logger.error(f"Invalid file {exception}")
        return ExitCode.FILE_ERROR
    except OSError as exception:
        logger.error(f"Cannot access {exception.filename}: {exception.strerror}")
        return ExitCode.FILE_ERROR

