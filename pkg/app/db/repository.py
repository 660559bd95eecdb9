"""Reading and writing transposition sets: edge-list files and family URIs.

Edge-list format: optional '#' comment lines, then "n m", then m lines
"i j" with 1 <= i < j <= n.
"""
import logging
from pathlib import Path
from typing import Iterable, Union

from app.algebra.tgraph import TranspositionSet, family
from app.core.errors import InputParseError
from app.schemas.schemas import InputSpec

logger = logging.getLogger(__name__)


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with their 1-based columns."""
    result = []
    col = 0
    while col < len(line):
        if line[col].isspace():
            col += 1
            continue
        start = col
        while col < len(line) and not line[col].isspace():
            col += 1
        result.append((start + 1, line[start:col]))
    return result


def _int_pair(line: str, lineno: int, source: str) -> tuple[int, int]:
    tokens = _tokens(line)
    if len(tokens) != 2:
        column = tokens[2][0] if len(tokens) > 2 else len(line.rstrip()) + 1
        raise InputParseError(f"expected two integers, got {len(tokens)} tokens", lineno, column, source)
    values = []
    for column, token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise InputParseError(f"not an integer: {token!r}", lineno, column, source) from None
    return values[0], values[1]


def parse_edge_list(text: str, source: str = "<input>") -> TranspositionSet:
    header = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    n = m = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            n, m = header = _int_pair(line, lineno, source)
            if n < 1 or m < 0:
                raise InputParseError(f"invalid header n={n} m={m}", lineno, 1, source)
            continue
        i, j = _int_pair(line, lineno, source)
        tokens = _tokens(line)
        if not 1 <= i <= n:
            raise InputParseError(f"point {i} outside 1..{n}", lineno, tokens[0][0], source)
        if not 1 <= j <= n:
            raise InputParseError(f"point {j} outside 1..{n}", lineno, tokens[1][0], source)
        if not i < j:
            raise InputParseError(f"expected i < j, got {i} {j}", lineno, tokens[0][0], source)
        if (i, j) in seen:
            raise InputParseError(f"duplicate edge {i} {j}", lineno, tokens[0][0], source)
        seen.add((i, j))
        pairs.append((i, j))
    if header is None:
        raise InputParseError("missing header line 'n m'", source=source)
    if len(pairs) != m:
        raise InputParseError(f"header announces {m} edges, found {len(pairs)}", source=source)
    return TranspositionSet.of(n, pairs)


def format_edge_list(s: TranspositionSet, comment: str = "") -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{s.n} {len(s)}")
    lines.extend(f"{i} {j}" for i, j in s.sorted_pairs())
    return "\n".join(lines) + "\n"


def format_inline(s: TranspositionSet) -> str:
    """One class per line: "n m | i j, i j, ..." """
    edges = ", ".join(f"{i} {j}" for i, j in s.sorted_pairs())
    return f"{s.n} {len(s)} | {edges}"


def import_from_file(file_path: Union[str, Path]) -> TranspositionSet:
    path = Path(file_path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise InputParseError(f"cannot read file: {e.strerror or e}", source=str(path)) from e
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        head = data[: e.start]
        line = head.count(b"\n") + 1
        column = e.start - head.rfind(b"\n")
        raise InputParseError(
            f"invalid UTF-8 at byte offset {e.start}", line=line, column=column, source=str(path)
        ) from e
    logger.debug("read %d bytes from %s", len(data), path)
    return parse_edge_list(text, source=str(path))


def export_to_file(file_path: Union[str, Path], sets: Iterable[TranspositionSet]) -> int:
    count = 0
    with open(file_path, "w", encoding="utf-8") as f:
        for s in sets:
            f.write(format_edge_list(s))
            count += 1
    return count


def load(spec: InputSpec) -> TranspositionSet:
    if spec.kind == "family":
        return family(spec.family, spec.degree)
    return import_from_file(spec.source)
