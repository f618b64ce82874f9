import json
import uuid

from collections.abc import Callable, Generator
from pathlib import Path
from pytest import fixture
from tests.test_utils import closed, pool

from morse_sequences.formats.file_parser import (
    ComplexFile,
    Error,
    ErrorType,
    ParseResults,
    Source,
)
from morse_sequences.formats.parsers import (
    parse_complex,
    parse_off,
    parse_sequence,
    parse_vertex_values,
)
from morse_sequences.morse_sequence import MorseSequence, items_from
from morse_sequences.stacks import Stack, VertexMap


@fixture(scope="module")
def temp_dir(tmp_path_factory) -> Generator[Path, None, None]:
    yield tmp_path_factory.mktemp("parsers")


def _write(temp_dir: Path, text: str) -> Path:
    path = temp_dir / str(uuid.uuid4())
    with open(path, "w") as f:
        f.write(text)
    return path


def _parse_fail(
    temp_dir: Path,
    parser: Callable[[Path], ParseResults],
    text: str,
    errtype: ErrorType,
    message: str,
    line_1: int = None,
    line_2: int = None,
):
    path = _write(temp_dir, text)

    res = parser(path)

    source_2 = Source(path, line_2) if line_2 is not None else None
    assert res == ParseResults(errors=(Error(errtype, message, Source(path, line_1), source_2),))


##########################################
# complex files
##########################################


def test_parse_complex(temp_dir: Path):
    path = _write(temp_dir, "# a triangle and a dangling edge\ndim 2\n\n1 2 3\n  3 4  \n")

    res = parse_complex(path)

    assert res == ParseResults(ComplexFile(closed((1, 2, 3), (3, 4)), dimension=2))


def test_parse_complex_without_header(temp_dir: Path):
    path = _write(temp_dir, "2 1\n5\n")

    assert parse_complex(path) == ParseResults(ComplexFile(closed((1, 2), (5,))))


def test_parse_complex_empty(temp_dir: Path):
    path = _write(temp_dir, "# nothing here\n")

    assert parse_complex(path) == ParseResults(ComplexFile(pool()))


def test_parse_complex_weighted(temp_dir: Path):
    path = _write(temp_dir, "dim 2\n1 2 3 : 4\n2 1 : -1\n")

    res = parse_complex(path)

    S = pool((1, 2), (1, 2, 3))
    assert res == ParseResults(ComplexFile(S, Stack(S, (-1, 4)), 2))
    assert res.result.weighted


def test_parse_complex_fail(temp_dir: Path):
    fail = lambda text, *args: _parse_fail(temp_dir, parse_complex, text, *args)

    fail("1 2\n1 x\n", ErrorType.PARSE_FAIL, 'Invalid simplex line: "1 x"', 2)
    fail("1 2 :\n", ErrorType.PARSE_FAIL, 'Invalid simplex line: "1 2 :"', 1)
    fail("1 1\n", ErrorType.PARSE_FAIL, "Duplicate vertex id in simplex (1, 1)", 1)
    fail("1 2\n\n2 1\n", ErrorType.DUPLICATE_ENTRY, "Simplex (1, 2) is listed twice", 1, 3)
    fail("1 2 : 0\n3\n", ErrorType.PARSE_FAIL,
         "Either every simplex or no simplex must have a weight", 2)
    fail("3\n1 2 : 0\n", ErrorType.PARSE_FAIL,
         "Either every simplex or no simplex must have a weight", 2)
    fail("dim 3\n1 2\n", ErrorType.PARSE_FAIL,
         "The header declares dimension 3 but the complex has dimension 1", 1)


def test_parse_complex_not_cosimplicial(temp_dir: Path):
    path = _write(temp_dir, "1 : 0\n1 2 3 : 0\n")

    assert parse_complex(path) == ParseResults(errors=(Error(
        ErrorType.NOT_COSIMPLICIAL, "The weighted simplexes do not form a cosimplicial complex",
        Source(path)),))


def test_parse_complex_invalid_stack(temp_dir: Path):
    path = _write(temp_dir, "1 2 : 2\n1 2 3 : 1\n")

    assert parse_complex(path) == ParseResults(errors=(Error(
        ErrorType.INVALID_STACK, "The weight of (1, 2) exceeds the weight of its coface (1, 2, 3)",
        Source(path, 1), Source(path, 2)),))


def test_parse_complex_missing_file(temp_dir: Path):
    path = temp_dir / "not_a_file"

    assert parse_complex(path) == ParseResults(errors=(Error(
        ErrorType.FILE_NOT_FOUND, source_1=Source(path)),))


def test_parse_complex_directory(temp_dir: Path):
    assert parse_complex(temp_dir) == ParseResults(errors=(Error(
        ErrorType.PARSE_FAIL, "The given path is a directory", Source(temp_dir)),))


##########################################
# vertex value files
##########################################


def test_parse_vertex_values(temp_dir: Path):
    path = _write(temp_dir, "# vertex value\n1 0\n2   5\n\n3\t-1\n")

    assert parse_vertex_values(path) == ParseResults(VertexMap.of({1: 0, 2: 5, 3: -1}))


def test_parse_vertex_values_fail(temp_dir: Path):
    fail = lambda text, *args: _parse_fail(temp_dir, parse_vertex_values, text, *args)

    fail("", ErrorType.PARSE_FAIL, "No data in file")
    fail("1 2 3\n", ErrorType.PARSE_FAIL, "Expected 2 columns, vertex id and value, got 3")
    fail("1\n2\n", ErrorType.PARSE_FAIL, "Expected 2 columns, vertex id and value, got 1")
    fail("1 0\n2\n", ErrorType.PARSE_FAIL, "Every line must hold a vertex id and a value", 2)
    fail("1 a\n", ErrorType.PARSE_FAIL, 'Invalid vertex value line: "1 a"', 1)
    fail("1.5 0\n", ErrorType.PARSE_FAIL, 'Invalid vertex value line: "1.5 0"', 1)
    fail("-1 0\n", ErrorType.PARSE_FAIL, "Vertex ids must be non-negative, got -1", 1)


def test_parse_vertex_values_duplicate(temp_dir: Path):
    path = _write(temp_dir, "1 0\n2 1\n1 2\n")

    assert parse_vertex_values(path) == ParseResults(errors=(Error(
        ErrorType.DUPLICATE_ENTRY, "Vertex 1 has more than one value", Source(path, 1),
        Source(path, 3)),))

    path = _write(temp_dir, "# vertex value\n1 0\n\n2 1\n1 2\n")
    assert parse_vertex_values(path) == ParseResults(errors=(Error(
        ErrorType.DUPLICATE_ENTRY, "Vertex 1 has more than one value", Source(path, 2),
        Source(path, 5)),))


def test_parse_vertex_values_missing_file(temp_dir: Path):
    path = temp_dir / "not_a_values_file"

    assert parse_vertex_values(path) == ParseResults(errors=(Error(
        ErrorType.FILE_NOT_FOUND, source_1=Source(path)),))


##########################################
# sequence files
##########################################


def _sequence_doc(**kwargs) -> str:
    doc = {"format": "morse-sequence", "version": 1, "base": [[1]],
           "items": ["P 2 | 1 2", "C 3"]}
    doc.update(kwargs)
    return json.dumps(doc)


def test_parse_sequence(temp_dir: Path):
    path = _write(temp_dir, _sequence_doc())

    assert parse_sequence(path) == ParseResults(MorseSequence(
        items_from([((2,), (1, 2)), (3,)]), pool((1,))))


def test_parse_sequence_with_summary(temp_dir: Path):
    path = _write(temp_dir, _sequence_doc(
        summary={"critical_vector": [1, 0], "items": 2, "pairs": 1}))

    assert parse_sequence(path).result.criticals() == [(3,)]


def test_parse_sequence_without_base(temp_dir: Path):
    path = _write(temp_dir, json.dumps(
        {"format": "morse-sequence", "version": 1, "items": ["C 2 1"]}))

    assert parse_sequence(path) == ParseResults(MorseSequence(items_from([(1, 2)])))


def test_parse_sequence_fail(temp_dir: Path):
    fail = lambda text, msg: _parse_fail(temp_dir, parse_sequence, text, ErrorType.PARSE_FAIL,
                                         msg)

    fail("[]", "A sequence file must hold a JSON object")
    fail(_sequence_doc(format="csv"), 'format must be "morse-sequence"')
    fail(_sequence_doc(version="1"), "version must be an integer")
    fail(_sequence_doc(version=2),
         "Schema version 2 is larger than maximum processable version 1")
    fail(_sequence_doc(base={}), "base must be a list")
    fail(_sequence_doc(base=[[1, "a"]]), "base entries must be lists of vertex ids")
    fail(_sequence_doc(base=[[]]), "A simplex must have at least one vertex")
    fail(_sequence_doc(items="C 1"), "items must be a list")
    fail(_sequence_doc(items=[5]), "Sequence items must be strings, got 5")
    fail(_sequence_doc(items=["X 1"]), 'Invalid item "X 1"')
    fail(_sequence_doc(items=["P 1 | 2 3"]),
         'Invalid item "P 1 | 2 3": (1,) is not a codimension one face of (2, 3)')
    fail(_sequence_doc(summary=[]), "summary must be an object")


def test_parse_sequence_summary_mismatch(temp_dir: Path):
    path = _write(temp_dir, _sequence_doc(
        summary={"critical_vector": [1], "items": 2, "pairs": 1}))

    res = parse_sequence(path)

    assert res.result is None
    assert res.errors[0].error == ErrorType.PARSE_FAIL
    assert res.errors[0].message.startswith("summary does not match the items; expected ")


def test_parse_sequence_invalid_json(temp_dir: Path):
    path = _write(temp_dir, '{\n"format": "morse-sequence",\n}')

    res = parse_sequence(path)

    assert res.errors[0].error == ErrorType.PARSE_FAIL
    assert res.errors[0].message.startswith("Invalid JSON: ")
    assert res.errors[0].source_1 == Source(path, 3)


##########################################
# OFF files
##########################################


def test_parse_off(temp_dir: Path):
    path = _write(temp_dir, "OFF\n# a square\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n"
                  + "3 0 1 2\n3 0 2 3\n")

    assert parse_off(path) == ParseResults(ComplexFile(closed((0, 1, 2), (0, 2, 3))))


def test_parse_off_counts_on_header_line_and_isolated_vertex(temp_dir: Path):
    path = _write(temp_dir, "OFF 3 1 0\n0 0 0\n1 0 0\n2 2 2\n2 0 1\n")

    assert parse_off(path) == ParseResults(ComplexFile(closed((0, 1), (2,))))


def test_parse_off_fail(temp_dir: Path):
    fail = lambda text, *args: _parse_fail(temp_dir, parse_off, text, ErrorType.PARSE_FAIL,
                                           *args)

    fail("", "Missing OFF header")
    fail("PLY\n", "Missing OFF header")
    fail("OFF\n", "Missing OFF counts line")
    fail("OFF\nthree 1 0\n", "Invalid OFF counts line")
    fail("OFF 2 1 0\n0 0 0\n", "The OFF file has fewer lines than its counts declare")
    fail("OFF 2 1 0\n0 0 0\n1 1 1\n3 0 1 2\n", 'Invalid face line: "3 0 1 2"', 4)
    fail("OFF 2 1 0\n0 0 0\n1 1 1\n2 0 x\n", 'Invalid face line: "2 0 x"', 4)
    fail("OFF 2 1 0\n0 0 0\n1 1 1\n2 0 0\n", "Duplicate vertex id in simplex (0, 0)", 4)
