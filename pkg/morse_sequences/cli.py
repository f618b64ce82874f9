"""
The command line interface.

Results go to standard out, or to a file with --out; log records, including rejected inputs,
go to standard error.
"""

import argparse
import json
import logging
import os
import sys

from pathlib import Path
from typing import Optional as O

from morse_sequences.core_complex import SimplexPool, closure, euler_characteristic
from morse_sequences.error_formatter import format_errors, format_report, format_stack_error
from morse_sequences.errors import DomainError, StackError
from morse_sequences.formats.file_parser import ComplexFile, Error, ErrorType, Source, parse_file
from morse_sequences.formats.parsers import (
    parse_complex,
    parse_off,
    parse_sequence,
    parse_vertex_values,
)
from morse_sequences.formats.writers import (
    complex_to_text,
    sequence_to_text,
    write_complex,
    write_sequence,
)
from morse_sequences.homology_oracle import betti_mod2
from morse_sequences.morse_complex import betti_mod2_from_morse
from morse_sequences.morse_sequence import (
    MorseSequence,
    audit_maximal,
    audit_minimal,
    critical_vector,
    validate_f,
    validate_on,
)
from morse_sequences.schedulers import max_f, max_lower_star, min_f
from morse_sequences.stacks import (
    Stack,
    VertexMap,
    constant_stack,
    induced_stack,
    is_theta_map,
)
from morse_sequences.utils import Settings, inject_config_dependencies, read_config

VERSION = "0.1.0"

CONFIG_ENV = "MORSE_SEQUENCES_CONFIG"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_STACK = 3


class _InputError(Exception):
    """ Carries file errors up to the command dispatcher. """

    def __init__(self, errors: tuple[Error, ...]):
        super().__init__(errors)
        self.errors = errors


def _log_error(e: Exception):
    logging.error({"message": "Unexpected error while parsing input", "error": str(e)},
                  exc_info=e)


def _load(path: Path, parser):
    res = parse_file(path, parser, _log_error)
    if res.errors:
        raise _InputError(res.errors)
    return res.result


def _load_complex(path: Path) -> ComplexFile:
    return _load(path, parse_off if path.suffix.lower() == ".off" else parse_complex)


def _domain_error(message: str, path: O[Path] = None) -> _InputError:
    return _InputError((Error(ErrorType.DOMAIN_MISMATCH, message,
                              Source(path) if path else None),))


def _stack_for(cf: ComplexFile, args: argparse.Namespace) -> Stack:
    """ The stack selected by --values or --weights, the constant stack otherwise. """
    values = getattr(args, "values", None)
    if values:
        f = _load(values, parse_vertex_values)
        if cf.weighted:
            raise _domain_error("--values requires an unweighted complex file", args.complex)
        try:
            return induced_stack(f, cf.pool)
        except DomainError as e:
            raise _domain_error(str(e), values)
    if getattr(args, "weights", False):
        if not cf.weighted:
            raise _domain_error("--weights requires a weighted complex file", args.complex)
        return cf.stack
    return constant_stack(cf.pool)


def _emit_sequence(seq: MorseSequence, out: O[Path]):
    if out:
        write_sequence(out, seq)
    else:
        sys.stdout.write(sequence_to_text(seq))


def _run_scheduler(args: argparse.Namespace, scheduler) -> int:
    cf = _load_complex(args.complex)
    F = _stack_for(cf, args)
    seq = scheduler(cf.pool, F)
    _emit_sequence(seq, args.out)
    logging.info({"command": args.command, "complex": str(args.complex), "simplexes": len(cf.pool),
                  "critical_vector": critical_vector(seq)})
    return EXIT_OK


def _cmd_max(args: argparse.Namespace) -> int:
    return _run_scheduler(args, max_f)


def _cmd_min(args: argparse.Namespace) -> int:
    return _run_scheduler(args, min_f)


def _cmd_lowerstar(args: argparse.Namespace) -> int:
    cf = _load_complex(args.complex)
    f: VertexMap = _load(args.values, parse_vertex_values)
    if cf.weighted or not cf.pool.simplicial:
        raise _domain_error("lowerstar requires an unweighted complex file", args.complex)
    try:
        f.check_domain(cf.pool)
    except DomainError as e:
        raise _domain_error(str(e), args.values)
    if not is_theta_map(f):
        logging.error({"command": args.command,
                       "message": "The vertex values are not distinct; lower stars need an "
                       + "injective vertex map. Run the max command with --values instead."})
        return EXIT_STACK
    seq = max_lower_star(cf.pool, f, args.jobs)
    _emit_sequence(seq, args.out)
    logging.info({"command": args.command, "complex": str(args.complex), "simplexes": len(cf.pool),
                  "critical_vector": critical_vector(seq)})
    return EXIT_OK


def _cmd_weigh(args: argparse.Namespace) -> int:
    cf = _load_complex(args.complex)
    F = _stack_for(cf, args)
    if args.out:
        write_complex(args.out, cf.pool, F)
    else:
        sys.stdout.write(complex_to_text(cf.pool, F))
    logging.info({"command": args.command, "complex": str(args.complex), "simplexes": len(cf.pool),
                  "levels": len(F.levels())})
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    cf = _load_complex(args.complex)
    seq: MorseSequence = _load(args.sequence, parse_sequence)
    F = _stack_for(cf, args)
    if cf.pool.simplicial and not len(seq.base):
        K = cf.pool
        report = validate_f(seq, K, F)
    else:
        K = closure(cf.pool)
        report = validate_on(seq, cf.pool, F)
    res = format_report(report)
    ok = report.valid
    if ok and args.audit:
        audit = (audit_maximal(seq, K, F) if args.audit == "max"
                 else audit_minimal(seq, seq.base, F))
        res[args.audit + "imal"] = audit
        ok = audit
    sys.stdout.write(json.dumps(res) + "\n")
    return EXIT_OK if ok else EXIT_INVALID


def _cmd_betti(args: argparse.Namespace) -> int:
    cf = _load_complex(args.complex)
    if not cf.pool.simplicial:
        raise _domain_error("Betti numbers require a simplicial complex", args.complex)
    if args.oracle:
        betti = betti_mod2(cf.pool)
    elif args.from_sequence:
        seq = _load(args.from_sequence, parse_sequence)
        if seq.complex() != cf.pool:
            raise _domain_error("The sequence does not end at the complex", args.from_sequence)
        betti = betti_mod2_from_morse(seq)
    else:
        betti = betti_mod2_from_morse(max_f(cf.pool, constant_stack(cf.pool)))
    sys.stdout.write(" ".join(str(b) for b in betti) + "\n")
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    cf = _load_complex(args.complex)
    if args.sequence:
        seq = _load(args.sequence, parse_sequence)
    else:
        seq = max_f(cf.pool, constant_stack(cf.pool))
    stats = {
        "simplexes": cf.pool.count_by_dimension(),
        "critical_vector": critical_vector(seq),
        "euler_characteristic": euler_characteristic(_full(cf.pool)),
    }
    sys.stdout.write(json.dumps(stats) + "\n")
    return EXIT_OK


def _full(pool: SimplexPool) -> SimplexPool:
    return pool if pool.simplicial else closure(pool)


_COMMANDS = {
    "max": _cmd_max,
    "min": _cmd_min,
    "lowerstar": _cmd_lowerstar,
    "weigh": _cmd_weigh,
    "validate": _cmd_validate,
    "betti": _cmd_betti,
    "stats": _cmd_stats,
}


def _add_stack_args(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--values', type=Path, help=
        'A vertex values file; the stack is the one induced by the values')
    group.add_argument('--weights', action='store_true', help=
        'Use the weights of the complex file as the stack')


def parse_args(argv: O[list[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog='morse_sequences',
        description='Compute Morse sequences, gradient vector fields and Morse complexes')
    parser.add_argument('--config', type=Path, help=
        f'The configuration file. Defaults to the value of the {CONFIG_ENV} environment '
        + 'variable')
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)

    for name, help_ in (('max', 'Compute a maximal F-sequence'),
                        ('min', 'Compute a minimal F-sequence')):
        p = sub.add_parser(name, help=help_)
        p.add_argument('complex', type=Path, help='The complex file')
        _add_stack_args(p)
        p.add_argument('--out', type=Path, help='Write the sequence to this file')

    p = sub.add_parser('lowerstar', help=
        'Compute a sequence that is maximal on every lower star of an injective vertex map')
    p.add_argument('complex', type=Path, help='The complex file')
    p.add_argument('--values', type=Path, required=True, help='The vertex values file')
    p.add_argument('--jobs', type=int, help='The number of worker processes')
    p.add_argument('--out', type=Path, help='Write the sequence to this file')

    p = sub.add_parser('weigh', help=
        'Write the stack induced by vertex values as a weighted complex file')
    p.add_argument('complex', type=Path, help='The complex file')
    p.add_argument('--values', type=Path, required=True, help='The vertex values file')
    p.add_argument('--out', type=Path, help='Write the weighted complex to this file')

    p = sub.add_parser('validate', help='Validate a sequence file against a complex')
    p.add_argument('complex', type=Path, help='The complex file')
    p.add_argument('sequence', type=Path, help='The sequence file')
    _add_stack_args(p)
    p.add_argument('--audit', choices=['max', 'min'], help=
        'Also check that the sequence is maximal or minimal for the stack')

    p = sub.add_parser('betti', help='Compute the mod 2 Betti numbers of a complex')
    p.add_argument('complex', type=Path, help='The complex file')
    group = p.add_mutually_exclusive_group()
    group.add_argument('--from-sequence', type=Path, help=
        'Compute the Betti numbers on the Morse complex of this sequence')
    group.add_argument('--oracle', action='store_true', help=
        'Compute the Betti numbers from the full boundary matrices')

    p = sub.add_parser('stats', help=
        'Print simplex counts, a critical vector and the Euler characteristic')
    p.add_argument('complex', type=Path, help='The complex file')
    p.add_argument('--sequence', type=Path, help=
        'The sequence to take the critical vector from. Defaults to a maximal sequence')
    return parser.parse_args(argv)


def main(argv: O[list[str]] = None) -> int:
    args = parse_args(argv)
    config_path = args.config or os.environ.get(CONFIG_ENV)
    if config_path:
        inject_config_dependencies(read_config(str(config_path)))
    logging.basicConfig(stream=sys.stderr, level=Settings.log_level(), force=True)
    try:
        return _COMMANDS[args.command](args)
    except _InputError as e:
        logging.error({"command": args.command, "errors": format_errors(list(e.errors))})
        if any(err.error == ErrorType.INVALID_STACK for err in e.errors):
            return EXIT_STACK
        return EXIT_INPUT
    except StackError as e:
        logging.error({"command": args.command, "errors": [format_stack_error(e)]})
        return EXIT_STACK
    except DomainError as e:
        logging.error({"command": args.command, "errors": [{"type": "domain_error",
                                                            "message": str(e)}]})
        return EXIT_INPUT
