"""
This module formats errors and validation reports into primitive types and containers.
"""

from typing import Any

from morse_sequences.errors import StackError
from morse_sequences.formats.file_parser import Error, ErrorType
from morse_sequences.morse_sequence import ValidationReport

# Types for the lambda parameters are strings and ints
# We don't add hints in to avoid repeating them over and over
_ERROR_FORMATTERS = {
    ErrorType.OTHER: lambda msg, file1, line1, file2, line2: {
        "type": "unexpected_error",
        "message": msg,
        "file": file1,
    },
    ErrorType.FILE_NOT_FOUND: lambda msg, file1, line1, file2, line2: {
        "type": "cannot_find_file",
        "file": file1,
    },
    ErrorType.PARSE_FAIL: lambda msg, file1, line1, file2, line2: {
        "type": "cannot_parse_file",
        "message": msg,
        "file": file1,
        "line": line1,
    },
    ErrorType.DUPLICATE_ENTRY: lambda msg, file1, line1, file2, line2: {
        "type": "duplicate_entry",
        "message": msg,
        "file": file1,
        "line_1": line1,
        "line_2": line2,
    },
    ErrorType.INVALID_STACK: lambda msg, file1, line1, file2, line2: {
        "type": "invalid_stack",
        "message": msg,
        "file": file1,
        "line_1": line1,
        "line_2": line2,
    },
    ErrorType.NOT_COSIMPLICIAL: lambda msg, file1, line1, file2, line2: {
        "type": "not_cosimplicial",
        "message": msg,
        "file": file1,
    },
    ErrorType.DOMAIN_MISMATCH: lambda msg, file1, line1, file2, line2: {
        "type": "domain_mismatch",
        "message": msg,
        "file": file1,
    },
}


def format_errors(errors: list[Error]) -> list[dict[str, Any]]:
    """
    Formats a list of file errors into a list of dicts.
    """
    errs = []
    for e in errors:
        file1 = None
        line1 = None
        file2 = None
        line2 = None
        if e.source_1:
            file1 = str(e.source_1.file)
            line1 = e.source_1.line
        if e.source_2:
            file2 = str(e.source_2.file)
            line2 = e.source_2.line
        errs.append(_ERROR_FORMATTERS[e.error](e.message, file1, line1, file2, line2))
    return errs


def format_stack_error(err: StackError) -> dict[str, Any]:
    return {
        "type": "invalid_stack",
        "message": err.args[0] if err.args else None,
        "sigma": list(err.sigma) if err.sigma else None,
        "tau": list(err.tau) if err.tau else None,
    }


def format_report(report: ValidationReport) -> dict[str, Any]:
    """ Formats a validation report into a dict. """
    if report.valid:
        return {"valid": True}
    return {
        "valid": False,
        "index": report.index,
        "violation": report.violation.name.lower(),
        "message": report.message,
    }
