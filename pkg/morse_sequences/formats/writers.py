"""
Write Morse sequences and complexes in the formats read by the parsers module.

Sequence files are canonical JSON: fixed key order, two space indentation, a trailing newline,
and no floats, so that parsing and writing a file written here reproduces it byte for byte.
"""

import json

from pathlib import Path
from typing import Any, Optional as O

from morse_sequences.core_complex import Simplex, SimplexPool
from morse_sequences.morse_sequence import Critical, MorseSequence, Pair, critical_vector
from morse_sequences.stacks import Stack

# this version is synonymous to the version in parsers.py. However, this module should only
# ever write the most recent format, while the parsers may need to also be able to parse
# earlier versions.
_VERSION = 1

_FORMAT = "morse-sequence"


class SequenceWriteException(Exception):
    """
    An exception thrown when the input to a writer is not writable.
    """
    pass


def _vertices(s: Simplex) -> str:
    return " ".join(str(v) for v in s)


def _format_item(it: Any) -> str:
    if isinstance(it, Critical):
        return f"C {_vertices(it.nu)}"
    if isinstance(it, Pair):
        return f"P {_vertices(it.sigma)} | {_vertices(it.tau)}"
    raise SequenceWriteException(f"Illegal sequence item: {it!r}")


def sequence_to_dict(seq: MorseSequence) -> dict[str, Any]:
    """ The JSON structure of a sequence file, in canonical key order. """
    if not isinstance(seq, MorseSequence):
        raise SequenceWriteException("Only Morse sequences can be written")
    return {
        "format": _FORMAT,
        "version": _VERSION,
        "base": [list(s) for s in seq.base],
        "items": [_format_item(it) for it in seq.items],
        "summary": {
            "critical_vector": critical_vector(seq),
            "items": len(seq),
            "pairs": len(seq.pairs()),
        },
    }


def sequence_to_text(seq: MorseSequence) -> str:
    return json.dumps(sequence_to_dict(seq), indent=2) + "\n"


def write_sequence(path: Path, seq: MorseSequence) -> Path:
    """
    Write a sequence file.

    path - the file to write. Parent folders must exist.
    seq - the sequence.
    """
    if not path:
        # this is a programming error, not a user input error, so not using the custom
        # exception here
        raise ValueError("The path cannot be null")
    text = sequence_to_text(seq)
    with open(path, "w") as f:
        f.write(text)
    return path


def complex_to_text(pool: SimplexPool, stack: O[Stack] = None, header: bool = True) -> str:
    """
    Render a complex file. Without a stack, only the facets are listed since the parser closes
    the generators; with a stack every simplex is listed with its weight.
    """
    if stack is not None and stack.pool != pool:
        raise SequenceWriteException("The stack must be defined on the pool")
    lines = [f"dim {pool.dimension}"] if header and len(pool) else []
    if stack is None:
        for i, s in enumerate(pool):
            if not pool.coboundary_indices(i):
                lines.append(_vertices(s))
    else:
        for i, s in enumerate(pool):
            lines.append(f"{_vertices(s)} : {stack.at(i)}")
    return "\n".join(lines) + "\n"


def write_complex(path: Path, pool: SimplexPool, stack: O[Stack] = None) -> Path:
    """ Write a complex file. See complex_to_text. """
    if not path:
        raise ValueError("The path cannot be null")
    with open(path, "w") as f:
        f.write(complex_to_text(pool, stack))
    return path
