"""
Parsers for the input formats: complex files, vertex value files, sequence files and a minimal
OFF mesh importer.

Every parser takes a path and returns ParseResults; bad user input never raises.

Complex files hold an optional `dim <d>` header followed by one simplex per line as space
separated vertex ids, optionally suffixed by ` : <weight>`. Lines starting with # are comments.
Unweighted lines are generators and the complex is their closure. If any line carries a weight,
all must, and the listed simplexes are taken as is: they must form a cosimplicial complex and
the weights a stack.
"""

import json
import pandas
import re

from pathlib import Path
from typing import Any

from morse_sequences.core_complex import Simplex, SimplexPool, closure, make_simplex
from morse_sequences.errors import DomainError
from morse_sequences.formats.file_parser import (
    ComplexFile,
    Error,
    ErrorType,
    ParseResults,
    Source,
)
from morse_sequences.morse_sequence import Critical, MorseSequence, Pair, critical_vector
from morse_sequences.stacks import Stack, VertexMap, find_stack_violation

# this version defines the schema of sequence files.
# if we need to support a new format, use the version number to detect whether to use
# the current parsing strategy or the new strategy that you will develop.
_VERSION = 1

_FORMAT = "morse-sequence"
_COMMENT = "#"
_DIM_REGEX = re.compile(r"dim\s+(\d+)")
_SIMPLEX_REGEX = re.compile(r"(\d+(?:\s+\d+)*)\s*(?::\s*(-?\d+))?")
_CRITICAL_REGEX = re.compile(r"C((?:\s+\d+)+)")
_PAIR_REGEX = re.compile(r"P((?:\s+\d+)+)\s+\|((?:\s+\d+)+)")

_KEY_FORMAT = "format"
_KEY_VERSION = "version"
_KEY_BASE = "base"
_KEY_ITEMS = "items"
_KEY_SUMMARY = "summary"
_KEY_CRITICAL_VECTOR = "critical_vector"
_KEY_ITEM_COUNT = "items"
_KEY_PAIRS = "pairs"


class _ParseException(Exception):
    pass


def _error(error: Error) -> ParseResults:
    return ParseResults(errors=tuple([error]))


def _read_lines(path: Path, src: Source) -> list[str]:
    try:
        with open(path) as f:
            return f.read().splitlines()
    except UnicodeDecodeError:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, "Not a text file", src))


def _content_lines(lines: list[str]) -> list[tuple[int, str]]:
    res = []
    for i, line in enumerate(lines, start=1):
        line = line.strip()
        if line and not line.startswith(_COMMENT):
            res.append((i, line))
    return res


def _parse_simplex(text: str, src: Source) -> Simplex:
    try:
        return make_simplex(int(v) for v in text.split())
    except DomainError as e:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, str(e), src))


def _parse_complex_lines(path: Path) -> ComplexFile:
    src = Source(path)
    lines = _content_lines(_read_lines(path, src))
    dimension = None
    dim_line = None
    if lines:
        match = _DIM_REGEX.fullmatch(lines[0][1])
        if match:
            dim_line = lines[0][0]
            dimension = int(match[1])
            lines = lines[1:]
    seen: dict[Simplex, int] = {}
    weights: dict[Simplex, int] = {}
    unweighted_line = None
    for n, line in lines:
        lsrc = Source(path, n)
        match = _SIMPLEX_REGEX.fullmatch(line)
        if not match:
            raise _ParseException(Error(
                ErrorType.PARSE_FAIL, f'Invalid simplex line: "{line}"', lsrc))
        s = _parse_simplex(match[1], lsrc)
        if s in seen:
            raise _ParseException(Error(
                ErrorType.DUPLICATE_ENTRY, f"Simplex {s} is listed twice",
                Source(path, seen[s]), lsrc))
        seen[s] = n
        if match[2] is None:
            unweighted_line = unweighted_line or n
        else:
            weights[s] = int(match[2])
        if weights and unweighted_line:
            raise _ParseException(Error(
                ErrorType.PARSE_FAIL,
                "Either every simplex or no simplex must have a weight",
                Source(path, max(unweighted_line, n))))
    if weights:
        pool = SimplexPool(seen, canonical=True)
        if not pool.cosimplicial:
            raise _ParseException(Error(
                ErrorType.NOT_COSIMPLICIAL,
                "The weighted simplexes do not form a cosimplicial complex", src))
        stack = Stack.from_mapping(pool, weights)
        bad = find_stack_violation(stack)
        if bad:
            raise _ParseException(Error(
                ErrorType.INVALID_STACK,
                f"The weight of {bad[0]} exceeds the weight of its coface {bad[1]}",
                Source(path, seen[bad[0]]), Source(path, seen[bad[1]])))
    else:
        pool = closure(SimplexPool(seen, canonical=True))
        stack = None
    if dimension is not None and pool.dimension != dimension:
        raise _ParseException(Error(
            ErrorType.PARSE_FAIL,
            f"The header declares dimension {dimension} but the complex has dimension "
            + f"{pool.dimension}",
            Source(path, dim_line)))
    return ComplexFile(pool, stack, dimension)


def _guard(path: Path, parse) -> ParseResults:
    src = Source(path)
    try:
        return ParseResults(parse(path))
    except FileNotFoundError:
        return _error(Error(ErrorType.FILE_NOT_FOUND, source_1=src))
    except IsADirectoryError:
        return _error(Error(ErrorType.PARSE_FAIL, "The given path is a directory", src))
    except _ParseException as e:
        return _error(e.args[0])


def parse_complex(path: Path) -> ParseResults:
    """ Parse a complex file. The result is a ComplexFile. """
    return _guard(path, _parse_complex_lines)


def _row_sources(path: Path, rows: int, src: Source) -> list[Source]:
    # pandas drops blank and comment lines, so map its rows back to the file's content lines
    lines = [n for n, _ in _content_lines(_read_lines(path, src))]
    if len(lines) != rows:
        return [src] * rows
    return [Source(path, n) for n in lines]


def _parse_vertex_frame(path: Path) -> VertexMap:
    src = Source(path)
    try:
        df = pandas.read_csv(
            path, sep=r"\s+", header=None, comment=_COMMENT, dtype=str, skip_blank_lines=True)
    except pandas.errors.EmptyDataError:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, "No data in file", src))
    except pandas.errors.ParserError as e:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, str(e).strip(), src))
    except UnicodeDecodeError:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, "Not a text file", src))
    if df.shape[1] != 2:
        raise _ParseException(Error(
            ErrorType.PARSE_FAIL,
            f"Expected 2 columns, vertex id and value, got {df.shape[1]}", src))
    sources = _row_sources(path, len(df), src)
    values = {}
    seen: dict[int, Source] = {}
    for lsrc, (vertex, value) in zip(sources, df.itertuples(index=False, name=None)):
        if pandas.isna(vertex) or pandas.isna(value):
            raise _ParseException(Error(
                ErrorType.PARSE_FAIL, "Every line must hold a vertex id and a value", lsrc))
        try:
            v, x = int(vertex), int(value)
        except ValueError:
            raise _ParseException(Error(
                ErrorType.PARSE_FAIL, f'Invalid vertex value line: "{vertex} {value}"', lsrc))
        if v < 0:
            raise _ParseException(Error(
                ErrorType.PARSE_FAIL, f"Vertex ids must be non-negative, got {v}", lsrc))
        if v in values:
            raise _ParseException(Error(
                ErrorType.DUPLICATE_ENTRY, f"Vertex {v} has more than one value", seen[v],
                lsrc))
        values[v] = x
        seen[v] = lsrc
    return VertexMap.of(values)


def parse_vertex_values(path: Path) -> ParseResults:
    """
    Parse a vertex values file: one `vertex_id value` line per vertex. The result is a
    VertexMap.
    """
    return _guard(path, _parse_vertex_frame)


def _require(cond: bool, message: str, src: Source):
    if not cond:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, message, src))


def _parse_item(text: Any, src: Source):
    _require(isinstance(text, str), f"Sequence items must be strings, got {text!r}", src)
    try:
        match = _CRITICAL_REGEX.fullmatch(text)
        if match:
            return Critical(_parse_simplex(match[1], src))
        match = _PAIR_REGEX.fullmatch(text)
        if match:
            return Pair(_parse_simplex(match[1], src), _parse_simplex(match[2], src))
    except ValueError as e:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, f'Invalid item "{text}": {e}', src))
    raise _ParseException(Error(ErrorType.PARSE_FAIL, f'Invalid item "{text}"', src))


def _parse_base(base: Any, src: Source) -> SimplexPool:
    _require(isinstance(base, list), f"{_KEY_BASE} must be a list", src)
    simplexes = []
    for s in base:
        _require(isinstance(s, list) and all(type(v) == int for v in s),
                 f"{_KEY_BASE} entries must be lists of vertex ids", src)
        simplexes.append(_parse_simplex(" ".join(str(v) for v in s), src))
    return SimplexPool(simplexes, canonical=True)


def _parse_sequence_json(path: Path) -> MorseSequence:
    src = Source(path)
    try:
        with open(path) as f:
            doc = json.load(f)
    except UnicodeDecodeError:
        raise _ParseException(Error(ErrorType.PARSE_FAIL, "Not a text file", src))
    except json.JSONDecodeError as e:
        raise _ParseException(Error(
            ErrorType.PARSE_FAIL, f"Invalid JSON: {e.msg}", Source(path, e.lineno)))
    _require(isinstance(doc, dict), "A sequence file must hold a JSON object", src)
    _require(doc.get(_KEY_FORMAT) == _FORMAT, f'{_KEY_FORMAT} must be "{_FORMAT}"', src)
    version = doc.get(_KEY_VERSION)
    _require(type(version) == int, f"{_KEY_VERSION} must be an integer", src)
    _require(version <= _VERSION,
             f"Schema version {version} is larger than maximum processable version {_VERSION}",
             src)
    base = _parse_base(doc.get(_KEY_BASE, []), src)
    items = doc.get(_KEY_ITEMS)
    _require(isinstance(items, list), f"{_KEY_ITEMS} must be a list", src)
    seq = MorseSequence(tuple(_parse_item(it, src) for it in items), base)
    summary = doc.get(_KEY_SUMMARY)
    if summary is not None:
        _require(isinstance(summary, dict), f"{_KEY_SUMMARY} must be an object", src)
        expected = {
            _KEY_CRITICAL_VECTOR: critical_vector(seq),
            _KEY_ITEM_COUNT: len(seq),
            _KEY_PAIRS: len(seq.pairs()),
        }
        _require(summary == expected,
                 f"{_KEY_SUMMARY} does not match the items; expected {expected}", src)
    return seq


def parse_sequence(path: Path) -> ParseResults:
    """ Parse a sequence file. The result is a MorseSequence. """
    return _guard(path, _parse_sequence_json)


def _parse_off_lines(path: Path) -> ComplexFile:
    src = Source(path)
    lines = _content_lines(_read_lines(path, src))
    _require(bool(lines) and lines[0][1].split()[0] == "OFF", "Missing OFF header", src)
    header = lines[0][1].split()[1:]
    rest = lines[1:]
    if not header:
        _require(bool(rest), "Missing OFF counts line", src)
        header = rest[0][1].split()
        rest = rest[1:]
    try:
        nv, nf = int(header[0]), int(header[1])
    except (IndexError, ValueError):
        raise _ParseException(Error(ErrorType.PARSE_FAIL, "Invalid OFF counts line", src))
    _require(len(rest) >= nv + nf, "The OFF file has fewer lines than its counts declare", src)
    # vertex coordinates are ignored
    generators = [(v,) for v in range(nv)]
    for n, line in rest[nv:nv + nf]:
        lsrc = Source(path, n)
        parts = line.split()
        try:
            k = int(parts[0])
            face = [int(v) for v in parts[1:k + 1]]
        except ValueError:
            raise _ParseException(Error(ErrorType.PARSE_FAIL, f'Invalid face line: "{line}"',
                                        lsrc))
        _require(len(face) == k and k > 0 and all(0 <= v < nv for v in face),
                 f'Invalid face line: "{line}"', lsrc)
        generators.append(_parse_simplex(" ".join(map(str, face)), lsrc))
    return ComplexFile(closure(SimplexPool(generators, canonical=True)))


def parse_off(path: Path) -> ParseResults:
    """
    Import the faces of an OFF mesh as the generators of a complex. Coordinates are ignored.
    The result is a ComplexFile.
    """
    return _guard(path, _parse_off_lines)
