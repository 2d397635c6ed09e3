"""Command-line front end: group in, modular data and verification report out.

Exit status is 0 when the run succeeds and every verification check passes,
1 when a check fails or the pipeline hits a numerical error, and 2 for bad
input (unparsable options, files or group specifications).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import TENSOR_GATE
from .exceptions import ClosureTooLarge, DoubleKitError, NotAGroup, NotAPermutation, ParseError
from .groups import BUILTIN_GROUPS, builtin_group, group_from_permutations, group_from_table, parse_permutation
from .modular import MATRIX_TOL, modular_data
from .reps import INT_TOL, QuantumDouble
from .serialize import dumps_json, load_table, modular_document, write_csv
from .verify import Settings, verify_group

log = logging.getLogger("doublekit")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    group: str | None = None
    table: str | None = None
    perm: str | None = None
    out: str | None = None
    format: str = "json"
    tol: float = 1e-9
    int_tol: float = INT_TOL
    seed: int = 0
    tensor_gate: int = TENSOR_GATE
    verify: bool = False

    def __post_init__(self):
        if sum(x is not None for x in (self.group, self.table, self.perm)) != 1:
            raise ParseError("give exactly one of --group, --table, --perm")
        if not (self.tol > 0 and self.int_tol > 0):
            raise ParseError("tolerances must be positive")
        if self.tensor_gate < 1:
            raise ParseError("tensor gate must be at least 1")
        if self.format == "csv" and self.out is None:
            raise ParseError("csv output needs --out DIRECTORY")


def parse_perm_arg(text):
    """Parse ``"degree:gen;gen"`` with each generator in disjoint cycle notation."""
    head, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"permutation argument {text!r} lacks 'degree:'")
    try:
        degree = int(head)
    except ValueError as exc:
        raise ParseError(f"bad degree {head!r}") from exc
    gens = [g.strip() for g in rest.split(";") if g.strip()]
    if not gens:
        raise ParseError("no generators given")
    for g in gens:
        parse_permutation(g, degree)  # fail early, before the closure
    return degree, gens


def load_group(config):
    if config.group is not None:
        return builtin_group(config.group)
    if config.table is not None:
        return group_from_table(load_table(config.table), name=Path(config.table).stem)
    degree, gens = parse_perm_arg(config.perm)
    return group_from_permutations(degree, gens, name=config.perm)


def run(config, stdout=None, stderr=None):
    """Execute one pipeline run; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        G = load_group(config)
    except (ParseError, NotAGroup, NotAPermutation, ClosureTooLarge) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    try:
        D = QuantumDouble(G, seed=config.seed)
        # structural guards never get stricter than the default; --tol drives the checks
        data = modular_data(D, int_tol=config.int_tol, tol=max(config.tol, MATRIX_TOL))
    except DoubleKitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAILED
    report = None
    if config.verify:
        settings = Settings(tol=config.tol, int_tol=config.int_tol, seed=config.seed, gate=config.tensor_gate)
        report = verify_group(G, D, settings)
        for line in report.lines():
            print(line, file=stderr)
    if config.format == "csv":
        names = write_csv(config.out, D, data)
        if report is not None:
            (Path(config.out) / "report.json").write_text(dumps_json(report.to_dict()))
            names.append("report.json")
        log.info("wrote %s", ", ".join(names))
    else:
        text = dumps_json(modular_document(G, D, data, report))
        if config.out is None:
            stdout.write(text)
        else:
            Path(config.out).write_text(text)
    if report is not None and not report.passed:
        return EXIT_FAILED
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="doublekit",
        description="Modular data (S, T, U, fusion) of the quantum double D(G) of a finite group.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help=f"builtin group: {', '.join(BUILTIN_GROUPS)}")
    src.add_argument("--table", metavar="FILE",
                     help="Cayley table: JSON rows, a previous JSON output, or integer rows")
    src.add_argument("--perm", metavar="PERMS", help='permutation generators, e.g. "3:(1 2 3);(1 2)"')
    p.add_argument("--out", metavar="PATH", help="output file (json) or directory (csv); json goes to stdout if omitted")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="one JSON document, or a directory of CSV tables")
    p.add_argument("--verify", action="store_true", help="run the verification checks and attach the report")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance for the verification checks")
    p.add_argument("--int-tol", type=float, default=INT_TOL, help="distance allowed from integers before rounding")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $DOUBLEKIT_SEED or 0)")
    p.add_argument("--tensor-gate", type=int, default=TENSOR_GATE,
                   help="largest |G| for checks that build D(G) (x) D(G) arrays")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _seed(arg):
    if arg is not None:
        return arg
    env = os.environ.get("DOUBLEKIT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ParseError(f"DOUBLEKIT_SEED={env!r} is not an integer") from exc


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(group=args.group, table=args.table, perm=args.perm, out=args.out,
                           format=args.format, tol=args.tol, int_tol=args.int_tol, seed=_seed(args.seed),
                           tensor_gate=args.tensor_gate, verify=args.verify)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
