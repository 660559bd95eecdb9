import pytest
from pydantic import ValidationError

from app.algebra.tgraph import TranspositionSet, enumerate_connected, family
from app.core.errors import InputParseError, RangeError
from app.db.repository import (
    export_to_file,
    format_edge_list,
    format_inline,
    import_from_file,
    load,
    parse_edge_list,
)
from app.schemas.schemas import InputSpec


class TestParseEdgeList:
    def test_with_comments(self):
        text = "# bubble-sort on 4 points\n4 3\n1 2\n2 3\n3 4\n"
        assert parse_edge_list(text) == family("path", 4)

    def test_blank_lines_ignored(self):
        assert parse_edge_list("\n3 2\n\n1 2\n1 3\n") == family("star", 3)

    def test_no_edges(self):
        assert len(parse_edge_list("3 0\n")) == 0

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("4 1\n1 x\n", 2, 3),
            ("4 1\n1 5\n", 2, 3),
            ("4 1\n2 1\n", 2, 1),
            ("4 2\n1 2\n1 2\n", 3, 1),
            ("4 1\n1 2 3\n", 2, 5),
            ("four 1\n", 1, 1),
        ],
    )
    def test_diagnostics(self, text, line, column):
        with pytest.raises(InputParseError) as exc:
            parse_edge_list(text, source="g.txt")
        assert exc.value.line == line
        assert exc.value.column == column
        assert str(exc.value).startswith(f"g.txt:{line}:{column}:")

    def test_edge_count_mismatch(self):
        with pytest.raises(InputParseError, match="announces 2 edges"):
            parse_edge_list("4 2\n1 2\n")

    def test_missing_header(self):
        with pytest.raises(InputParseError):
            parse_edge_list("# nothing here\n")


class TestFormat:
    def test_edge_list_is_parseable(self):
        s = family("cycle", 5)
        assert parse_edge_list(format_edge_list(s, comment="C_5")) == s

    def test_edge_list_layout(self):
        assert format_edge_list(family("star", 3)) == "3 2\n1 2\n1 3\n"

    def test_inline(self):
        assert format_inline(family("path", 3)) == "3 2 | 1 2, 2 3"


class TestFiles:
    def test_import_export(self, tmp_path):
        path = tmp_path / "star.txt"
        assert export_to_file(path, [family("star", 5)]) == 1
        assert import_from_file(path) == family("star", 5)

    def test_export_many_is_concatenated_blocks(self, tmp_path):
        path = tmp_path / "classes.txt"
        assert export_to_file(path, enumerate_connected(3)) == 2
        assert path.read_text().splitlines()[0] == "3 2"

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputParseError) as exc:
            import_from_file(tmp_path / "absent.txt")
        assert exc.value.exit_code == 3

    def test_invalid_utf8_reports_position(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"3 2\n1 2\n2 \xff3\n")
        with pytest.raises(InputParseError, match="byte offset 10") as exc:
            import_from_file(path)
        assert (exc.value.line, exc.value.column) == (3, 3)
        assert exc.value.exit_code == 3


class TestInputSpec:
    def test_family_uri(self):
        spec = InputSpec(source="family:bubble-sort:5")
        assert spec.kind == "family" and spec.family == "bubble-sort" and spec.degree == 5
        assert load(spec) == family("path", 5)

    def test_file_source(self, edge_list_file):
        path = edge_list_file("2 1\n1 2\n")
        spec = InputSpec(source=str(path))
        assert spec.kind == "file"
        assert load(spec) == TranspositionSet.of(2, [(1, 2)])

    @pytest.mark.parametrize("source", ["family:star", "family:wheel:5", "family:star:x"])
    def test_bad_uri(self, source):
        with pytest.raises(ValidationError):
            InputSpec(source=source)

    def test_family_degree_out_of_range(self):
        with pytest.raises(RangeError):
            load(InputSpec(source="family:cycle:2"))
