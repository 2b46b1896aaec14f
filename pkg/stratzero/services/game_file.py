"""
Plain-text game files.

    # comment lines start with '#'
    3 3
    -1 6 2
    1 8 -2
    -3 10 0

    9 13 5
    -1 3 7
    14 6 10

Line 1 holds "m n", then m rows of Ã, a blank line and m rows of B̃.
Tokens are integers, fractions ("p/q") or decimals, parsed exactly.
"""

import re
from pathlib import Path

from stratzero.constants import GAME_FILE_COMMENT
from stratzero.errors import GameFileError, RationalParseError
from stratzero.services.exactnum import BimatrixGame, GameMatrix, Vector, rational_from_text, render_rational

_BLOCKS = ("A", "B")
_DIMENSION = re.compile(r"[0-9]+")


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(line number, stripped text) of every non-blank, non-comment line."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(GAME_FILE_COMMENT, 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _parse_header(lines: list[tuple[int, str]]) -> tuple[int, int]:
    if not lines:
        raise GameFileError("empty game file: expected a header line 'm n'")
    number, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or not all(_DIMENSION.fullmatch(token) for token in tokens):
        raise GameFileError(f"line {number}: header must be two positive integers 'm n', got {header!r}")
    m, n = int(tokens[0]), int(tokens[1])
    if m < 1 or n < 1:
        raise GameFileError(f"line {number}: game dimensions must be at least 1x1, got {m}x{n}")
    return m, n


def _parse_row(number: int, line: str, block: str, row: int, n: int) -> Vector:
    tokens = line.split()
    if len(tokens) != n:
        raise GameFileError(f"line {number}: row {row} of block {block} has {len(tokens)} entries, expected {n}")
    try:
        return tuple(rational_from_text(token) for token in tokens)
    except RationalParseError as e:
        raise GameFileError(f"line {number}: row {row} of block {block}: {e}") from e


def parse_game_file(text: str) -> BimatrixGame:
    """
    Parse a game file into an exact game.

    Blank lines are only separators, so extra spacing is tolerated.

    Raises:
        GameFileError: bad header, wrong token count, malformed rational,
            a missing block or trailing rows. Messages name the row and block.
    """
    lines = _content_lines(text)
    m, n = _parse_header(lines)
    body = lines[1:]

    matrices: list[GameMatrix] = []
    for index, block in enumerate(_BLOCKS):
        chunk = body[index * m : (index + 1) * m]
        if len(chunk) < m:
            raise GameFileError(f"block {block} is missing or incomplete: found {len(chunk)} of {m} rows")
        rows = [_parse_row(number, line, block, row, n) for row, (number, line) in enumerate(chunk, start=1)]
        matrices.append(GameMatrix(tuple(rows)))

    if len(body) > 2 * m:
        number, _ = body[2 * m]
        raise GameFileError(f"line {number}: unexpected content after block B")
    return BimatrixGame(matrices[0], matrices[1])


def render_game_file(game: BimatrixGame, comment: str | None = None) -> str:
    """Render a game so that parse_game_file gives it back exactly."""
    lines = []
    if comment:
        lines.extend(f"{GAME_FILE_COMMENT} {part}" for part in comment.splitlines())
    lines.append(f"{game.m} {game.n}")
    lines.extend(" ".join(render_rational(v) for v in row) for row in game.a_tilde.entries)
    lines.append("")
    lines.extend(" ".join(render_rational(v) for v in row) for row in game.b_tilde.entries)
    return "\n".join(lines) + "\n"


def read_game_file(path: Path) -> BimatrixGame:
    """
    Raises:
        GameFileError: the file cannot be read or decoded, or fails to parse.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise GameFileError(f"cannot read {path}: {e}") from e
    return parse_game_file(text)
