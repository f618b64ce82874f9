"""
Result and error types shared by the file parsers, and the entry point that runs a parser
without letting unexpected exceptions escape.
"""

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional as O

from morse_sequences.core_complex import SimplexPool
from morse_sequences.stacks import Stack


class ErrorType(Enum):
    """
    The type of an error encountered when trying to parse an input file.
    """
    FILE_NOT_FOUND = 1
    PARSE_FAIL = 2
    DUPLICATE_ENTRY = 3
    INVALID_STACK = 4
    NOT_COSIMPLICIAL = 5
    DOMAIN_MISMATCH = 6
    OTHER = 100


@dataclass(frozen=True)
class Source:
    """
    The location of an input.

    file - the file.
    line - the 1-based line number in the file, if any.
    """
    file: Path
    line: O[int] = None

    def __post_init__(self):
        if not self.file:
            raise ValueError("file is required")
        if self.line is not None and self.line < 1:
            raise ValueError("line must be at least 1")


_ERR_MESSAGE = 'message'
_ERR_SOURCE_1 = 'source_1'
_ERR_SOURCE_2 = 'source_2'

_ERRTYPE_TO_REQ_ARGS = {
    ErrorType.FILE_NOT_FOUND: (_ERR_SOURCE_1,),
    ErrorType.PARSE_FAIL: (_ERR_MESSAGE, _ERR_SOURCE_1),
    ErrorType.DUPLICATE_ENTRY: (_ERR_MESSAGE, _ERR_SOURCE_1, _ERR_SOURCE_2),
    ErrorType.INVALID_STACK: (_ERR_MESSAGE, _ERR_SOURCE_1),
    ErrorType.NOT_COSIMPLICIAL: (_ERR_MESSAGE, _ERR_SOURCE_1),
    ErrorType.DOMAIN_MISMATCH: (_ERR_MESSAGE,),
    ErrorType.OTHER: (_ERR_MESSAGE,),
}


@dataclass(frozen=True)
class Error:
    f"""
    An error found while attempting to parse a file.

    error - the type of the error.
    {_ERR_MESSAGE} - the error message, if any
    {_ERR_SOURCE_1} - the first input location associated with the error, if any
    {_ERR_SOURCE_2} - the second input location associated with the error, if any

    Each error type has different required arguments:
    {ErrorType.FILE_NOT_FOUND.name}: {_ERR_SOURCE_1}
    {ErrorType.PARSE_FAIL.name}: {_ERR_MESSAGE} and {_ERR_SOURCE_1}
    {ErrorType.DUPLICATE_ENTRY.name}: {_ERR_MESSAGE}, {_ERR_SOURCE_1}, and {_ERR_SOURCE_2}
    {ErrorType.INVALID_STACK.name}: {_ERR_MESSAGE} and {_ERR_SOURCE_1}
    {ErrorType.NOT_COSIMPLICIAL.name}: {_ERR_MESSAGE} and {_ERR_SOURCE_1}
    {ErrorType.DOMAIN_MISMATCH.name}: {_ERR_MESSAGE}. source arguments are optional.
    {ErrorType.OTHER.name}: {_ERR_MESSAGE}. source arguments are optional and may be included if
        the error applies to one or more input files.
    """
    error: ErrorType
    message: O[str] = None
    source_1: O[Source] = None
    source_2: O[Source] = None

    def __post_init__(self):
        if not self.error:
            raise ValueError("error is required")
        if self.error not in _ERRTYPE_TO_REQ_ARGS:
            # can't test this line in a meaningful way
            assert 0, f"unexpected error type: {self.error}"
        attrs = _ERRTYPE_TO_REQ_ARGS[self.error]
        for attr in attrs:
            if not getattr(self, attr):
                raise ValueError(f"{', '.join(attrs)} is required for a {self.error.name} error")


@dataclass(frozen=True)
class ComplexFile:
    """
    The contents of a complex file.

    pool - the simplexes. A simplicial complex for unweighted files, a cosimplicial complex for
        weighted files.
    stack - the weights, for weighted files.
    dimension - the dimension declared in the file header, if any.
    """
    pool: SimplexPool
    stack: O[Stack] = None
    dimension: O[int] = None

    def __post_init__(self):
        if self.pool is None:
            raise ValueError("pool is required")
        if self.stack is not None and self.stack.pool != self.pool:
            raise ValueError("The stack must be defined on the pool")

    @property
    def weighted(self) -> bool:
        return self.stack is not None


@dataclass(frozen=True)
class ParseResults:
    """
    The outcome of parsing a file.

    result - the parsed value.
    errors - the errors encountered while parsing the file, if any.

    Exactly one of result or errors must be provided. An empty complex is a legal result.
    """
    result: Any = None
    errors: O[tuple[Error, ...]] = None

    def __post_init__(self):
        if not ((self.result is not None) ^ bool(self.errors)):  # xnor
            raise ValueError("Exactly one of result or errors must be supplied")


def parse_file(
    path: Path,
    parser: Callable[[Path], ParseResults],
    log_error: Callable[[Exception], None]
) -> ParseResults:
    """
    Parse a file, turning unexpected exceptions into an OTHER error.

    path - the file to parse.
    parser - the parser for the file format.
    log_error - callable for logging an exception.
    """
    if not path:
        raise ValueError("path is required")
    try:
        return parser(path)
    except Exception as e:
        log_error(e)
        return ParseResults(errors=(Error(ErrorType.OTHER, str(e) or type(e).__name__,
                                          Source(path)),))
