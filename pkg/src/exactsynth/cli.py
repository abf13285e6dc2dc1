"""Command-line front end.

    exactsynth synth MATRIX [-o CIRCUIT] [--no-ancilla] [--two-level-only] [--verify]
    exactsynth verify MATRIX CIRCUIT
    exactsynth residue-table

Matrix files are JSON: {"dim": n, "entries": [[a, b, c, d, k], ...]} with
n*n entries in row-major order, each meaning (a w^3 + b w^2 + c w + d) / sqrt2^k.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from .errors import DeterminantObstruction, NotInRing, NotUnitary, ParseError
from .linalg import ExactMatrix, lde_matrix
from .lowering import Circuit, format_circuit, lower_circuit, parse_circuit
from .ring import DOmega, Residue
from .synthesis import STANDARD, DecompositionResult, decompose, synthesize_no_ancilla
from .verify import check_exact

log = logging.getLogger("exactsynth")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_UNITARY = 3
EXIT_NOT_IN_RING = 4
EXIT_DET_OBSTRUCTION = 5
EXIT_VERIFY_FAIL = 6

_INT_RE = re.compile(r"^[+-]?\d+$")


def _coefficient(x) -> int:
    if isinstance(x, bool):
        raise ParseError(f"bad coefficient {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and _INT_RE.match(x.strip()):
        return int(x)
    # numbers that are not integers describe values outside Z[1/sqrt2, i]
    try:
        value = Fraction(x) if isinstance(x, (str, float)) else None
    except (ValueError, ZeroDivisionError):
        value = None
    if value is None:
        raise ParseError(f"bad coefficient {x!r}")
    raise NotInRing(f"coefficient {x!r} is not an integer")


def parse_matrix(text: str) -> ExactMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise ParseError("expected an object with 'dim' and 'entries'")
    dim, entries = doc["dim"], doc["entries"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"bad dim {dim!r}")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ParseError(f"expected {dim * dim} entries")
    values = []
    for e in entries:
        if not isinstance(e, list) or len(e) != 5:
            raise ParseError(f"entry {e!r} is not [a, b, c, d, k]")
        values.append(DOmega.from_tuple([_coefficient(x) for x in e]))
    return ExactMatrix([values[i * dim:(i + 1) * dim] for i in range(dim)])


def format_matrix(u: ExactMatrix) -> str:
    entries = [list(e.to_tuple()) for row in u.rows for e in row]
    body = ",\n    ".join(json.dumps(e) for e in entries)
    return f'{{\n  "dim": {u.dim},\n  "entries": [\n    {body}\n  ]\n}}\n'


def _qubits(u: ExactMatrix) -> int:
    n = u.dim.bit_length() - 1
    if u.dim != 1 << n:
        raise ParseError(f"dimension {u.dim} is not a power of two")
    return n


def residue_table() -> str:
    lines = ["rho(t) rho(sqrt2*t) rho(t*t) reducible twice_reducible"]
    for x in Residue.all():
        flags = ["yes" if f else "no" for f in (x.is_reducible(), x.is_twice_reducible())]
        lines.append(" ".join([str(x), str(x.mul_sqrt2()), str(x.norm()), *flags]))
    return "\n".join(lines) + "\n"


def stats_block(result: DecompositionResult, circuit: Circuit | None) -> str:
    s = result.stats
    rows = [
        ("mode", result.mode),
        ("two_level_ops", len(result.ops)),
        ("initial_exponent", s.initial_exponent),
        ("max_exponent", s.max_exponent),
        ("exponent_bound_violations", s.exponent_bound_violations),
    ]
    if result.phase_fix:
        rows.append(("phase_fix", result.phase_fix))
    if circuit is not None:
        rows += [
            ("total_gates", len(circuit)),
            ("t_count", circuit.t_count()),
            ("ancillas", circuit.n_ancilla),
        ]
    return "".join(f"{k}: {v}\n" for k, v in rows)


def two_level_listing(result: DecompositionResult) -> str:
    lines = [str(op) for op in result.ops]
    if result.phase_fix:
        lines.append(f"D^{result.phase_fix}")
    return "\n".join(lines) + ("\n" if lines else "")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_synth(args) -> int:
    u = parse_matrix(_read(args.matrix))
    n = _qubits(u)
    log.info("parsed %dx%d matrix, least denominator exponent %d", u.dim, u.dim, lde_matrix(u))
    if args.no_ancilla:
        result = synthesize_no_ancilla(u, n)
    else:
        result = decompose(u, STANDARD)
    if args.two_level_only:
        _write(args.output, two_level_listing(result))
        _write_stats(args, stats_block(result, None))
        return EXIT_OK
    circuit = lower_circuit(result, n)
    if args.verify:
        report = check_exact(circuit, u)
        if not report:
            print(f"verification failed: {report}", file=sys.stderr)
            return EXIT_VERIFY_FAIL
    _write(args.output, format_circuit(circuit))
    _write_stats(args, stats_block(result, circuit))
    return EXIT_OK


def _write_stats(args, text: str) -> None:
    if args.stats:
        _write(args.stats, text)
    else:
        sys.stderr.write(text)


def cmd_verify(args) -> int:
    u = parse_matrix(_read(args.matrix))
    circuit = parse_circuit(_read(args.circuit))
    if u.dim != 2**circuit.n_data:
        print(f"FAIL: matrix is {u.dim}x{u.dim} but circuit has {circuit.n_data} data qubits")
        return EXIT_VERIFY_FAIL
    report = check_exact(circuit, u)
    print(report)
    return EXIT_OK if report else EXIT_VERIFY_FAIL


def cmd_residue_table(args) -> int:
    sys.stdout.write(residue_table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exactsynth", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a Clifford+T circuit")
    p.add_argument("matrix", help="matrix file ('-' for stdin)")
    p.add_argument("-o", "--output", help="circuit file (default stdout)")
    p.add_argument("--no-ancilla", action="store_true", help="ancilla-free synthesis")
    p.add_argument("--two-level-only", action="store_true", help="list two-level operators only")
    p.add_argument("--verify", action="store_true", help="check the circuit exactly before writing")
    p.add_argument("--stats", help="write the stats block here instead of stderr")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit against a matrix")
    p.add_argument("matrix")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("residue-table", help="print the residue operation table")
    p.set_defaults(func=cmd_residue_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotUnitary as exc:
        print(f"not unitary: {exc}", file=sys.stderr)
        return EXIT_NOT_UNITARY
    except NotInRing as exc:
        print(f"not in ring: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_RING
    except DeterminantObstruction as exc:
        print(f"determinant obstruction: {exc}", file=sys.stderr)
        return EXIT_DET_OBSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
