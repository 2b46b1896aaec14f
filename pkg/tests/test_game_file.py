"""
Game File Tests.

Test Category: Unit
Related Code: stratzero/services/game_file.py

Coverage:
- Parsing the worked example, comments and loose spacing
- Error messages naming the offending row and block
- render/parse round trip on random rational games
"""

from fractions import Fraction

import pytest

from stratzero.errors import GameFileError
from stratzero.services.exactnum import BimatrixGame, GameMatrix
from stratzero.services.game_file import parse_game_file, read_game_file, render_game_file
from tests.conftest import RPS_GAME_FILE, random_rational_matrix

pytestmark = pytest.mark.unit


class TestParseGameFile:
    def test_worked_example(self, rps_game):
        game = parse_game_file(RPS_GAME_FILE)
        assert game.shape == (3, 3)
        assert game.a_tilde.entry(1, 1) == -1
        assert game.b_tilde.entry(3, 1) == 14
        assert game == rps_game

    def test_one_by_one_without_separator(self):
        game = parse_game_file("1 1\n0\n0\n")
        assert game == BimatrixGame.from_rows([[0]], [[0]])

    def test_rationals_and_decimals(self):
        game = parse_game_file("1 2\n1/3 0.25\n\n-2/4 7\n")
        assert game.a_tilde.row(1) == (Fraction(1, 3), Fraction(1, 4))
        assert game.b_tilde.row(1) == (Fraction(-1, 2), 7)

    def test_comments_and_extra_spacing(self):
        text = "# header next\n  2   1  \n\n 1 # row one\n2\n\n\n# B\n3\n4\n"
        game = parse_game_file(text)
        assert game.b_tilde.col(1) == (3, 4)

    def test_short_row_names_row_and_block(self):
        text = "2 3\n1 2 3\n4 5 6\n\n1 2 3\n4 5\n"
        with pytest.raises(GameFileError, match="row 2 of block B"):
            parse_game_file(text)

    def test_malformed_token(self):
        with pytest.raises(GameFileError, match="row 1 of block A"):
            parse_game_file("1 2\n1 x\n\n1 2\n")

    def test_zero_denominator(self):
        with pytest.raises(GameFileError, match="zero denominator"):
            parse_game_file("1 1\n1/0\n\n1\n")

    def test_missing_block(self):
        with pytest.raises(GameFileError, match="block B"):
            parse_game_file("2 2\n1 2\n3 4\n")

    @pytest.mark.parametrize("header", ["0 3", "2", "a b", "-1 2", "2 2 2"])
    def test_bad_header(self, header):
        with pytest.raises(GameFileError):
            parse_game_file(f"{header}\n1 2\n")

    @pytest.mark.parametrize("header", ["1 \u00b2", "\u0663 2"])
    def test_header_needs_ascii_digits(self, header):
        with pytest.raises(GameFileError, match="header"):
            parse_game_file(f"{header}\n0 0\n\n0 0\n")

    def test_entry_needs_ascii_digits(self):
        with pytest.raises(GameFileError, match="block A"):
            parse_game_file("1 1\n\u0663\n\n0\n")

    def test_empty(self):
        with pytest.raises(GameFileError, match="empty"):
            parse_game_file("# nothing here\n\n")

    def test_trailing_rows(self):
        with pytest.raises(GameFileError, match="after block B"):
            parse_game_file("1 1\n1\n\n2\n3\n")


class TestRenderGameFile:
    def test_round_trip(self, rng):
        for _ in range(20):
            m, n = (int(x) for x in rng.integers(1, 6, 2))
            game = BimatrixGame(random_rational_matrix(rng, m, n), random_rational_matrix(rng, m, n))
            assert parse_game_file(render_game_file(game)) == game

    def test_layout(self):
        game = BimatrixGame(GameMatrix.from_rows([[1, Fraction(1, 2)]]), GameMatrix.from_rows([[0, -3]]))
        assert render_game_file(game) == "1 2\n1/1 1/2\n\n0/1 -3/1\n"

    def test_comment_lines(self, rps_game):
        text = render_game_file(rps_game, comment="generated\nseed=1")
        assert text.startswith("# generated\n# seed=1\n3 3\n")
        assert parse_game_file(text) == rps_game


class TestReadGameFile:
    def test_reads_file(self, tmp_path, rps_game):
        path = tmp_path / "rps.game"
        path.write_text(RPS_GAME_FILE, encoding="utf-8")
        assert read_game_file(path) == rps_game

    def test_missing_file(self, tmp_path):
        with pytest.raises(GameFileError, match="cannot read"):
            read_game_file(tmp_path / "absent.game")

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "bad.game"
        path.write_bytes(b"\xff\xfe\x00")
        with pytest.raises(GameFileError):
            read_game_file(path)
