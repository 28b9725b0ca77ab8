import pytest

from nashaxioms import GameFormatError, build_game, dump_game, load_game, parse_game
from nashaxioms.fixtures import FIXTURES, fixture_game, fixture_path


def test_parse_payoffs_and_ranks_agree():
    by_payoffs = parse_game(
        '{"players": 1, "strategies": [["a", "b"]], "payoffs": [[5.5, 1.0]]}'
    )
    by_ranks = parse_game(
        '{"players": 1, "strategies": [["a", "b"]], "ranks": [[0, 7]]}'
    )
    assert by_payoffs == by_ranks


def test_roundtrip_preserves_canonical_id(tmp_path, ex5):
    path = tmp_path / "g.game"
    path.write_text(dump_game(ex5), encoding="utf-8")
    assert load_game(path).canonical_id == ex5.canonical_id


def test_parse_reports_line_numbers():
    with pytest.raises(GameFormatError) as err:
        parse_game('{\n  "players": 2,\n  "strategies" [["a"]]\n}')
    assert "line 3" in str(err.value)


def test_parse_field_errors():
    with pytest.raises(GameFormatError):
        parse_game('{"players": 2, "strategies": [["a"], ["x"]]}')
    with pytest.raises(GameFormatError):
        parse_game(
            '{"players": 1, "strategies": [["a"]], '
            '"payoffs": [[1]], "ranks": [[0]]}'
        )
    with pytest.raises(GameFormatError):
        parse_game('{"players": 0, "strategies": [], "payoffs": []}')
    with pytest.raises(GameFormatError):
        parse_game(
            '{"players": 1, "strategies": [["a", "b"]], "payoffs": [[1]]}'
        )


def test_bundled_files_match_builders():
    for name in FIXTURES:
        from_file = load_game(fixture_path(name))
        assert from_file == fixture_game(name), name


def test_linear_order_is_player_one_most_significant():
    g = parse_game(
        '{"players": 2, "strategies": [["r0", "r1"], ["c0", "c1"]],'
        ' "payoffs": [[3, 2, 1, 0], [0, 1, 2, 3]]}'
    )
    # payoff 3 at (r0, c0) means rank 0 at linear index 0
    assert g.ranks[0] == (0, 1, 2, 3)
    assert g.labels_of(g.profile_at(1)) == ("r0", "c1")


def test_build_game_rejects_bad_nested_shape():
    with pytest.raises(GameFormatError):
        build_game(2, [["a", "b"], ["x"]], payoffs=[[[1], [2], [3]], [[1], [2]]])
