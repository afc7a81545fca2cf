import numpy as np
import pytest

from tpass.decompose import BimatrixGame
from tpass.errors import InputError
from tpass.game import TpassGame, random_tpass
from tpass.gamefile import dumps_game, load_game, parse_game, save_game


def test_parse_tpass_with_fractions_and_decimals():
    text = '{"kind": "tpass", "A": [[0, 1], [-1, 0]], "pi": ["1/2", "3/4"], "rho": [0.5, 0.75]}'
    g = parse_game(text)
    assert isinstance(g, TpassGame)
    assert g.pi.tolist() == [0.5, 0.75]
    assert g.rho.tolist() == [0.5, 0.75]


def test_fraction_and_decimal_forms_agree_exactly():
    a = parse_game('{"kind": "tpass", "A": [["1/10"]], "pi": ["-3/4"], "rho": ["7e-2"]}')
    b = parse_game('{"kind": "tpass", "A": [[0.1]], "pi": [-0.75], "rho": [0.07]}')
    assert a.A[0, 0] == b.A[0, 0]
    assert a.pi[0] == b.pi[0]
    assert a.rho[0] == b.rho[0]


def test_parse_bimatrix():
    text = '{"kind": "bimatrix", "B": [[1, 2]], "C": [["1/3", 4]]}'
    bg = parse_game(text)
    assert isinstance(bg, BimatrixGame)
    assert bg.C[0, 0] == pytest.approx(1 / 3)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("not json", "invalid JSON"),
        ("[1, 2]", "JSON object"),
        ('{"kind": "other"}', "kind"),
        ('{"kind": "tpass", "pi": [0], "rho": [0]}', "'A' is missing"),
        ('{"kind": "tpass", "A": [[0, 1], [2]], "pi": [0, 0], "rho": [0, 0]}', "A[2]"),
        ('{"kind": "tpass", "A": [["x"]], "pi": [0], "rho": [0]}', "A[1][1]"),
        ('{"kind": "tpass", "A": [["1/0"]], "pi": [0], "rho": [0]}', "zero denominator"),
        ('{"kind": "tpass", "A": [[true]], "pi": [0], "rho": [0]}', "boolean"),
        ('{"kind": "tpass", "A": [[Infinity]], "pi": [0], "rho": [0]}', "not finite"),
        ('{"kind": "tpass", "A": [[0]], "pi": [0, 1], "rho": [0]}', "pi"),
        ('{"kind": "bimatrix", "B": [[0]], "C": [[0, 1]]}', "shape"),
    ],
)
def test_parse_errors_name_the_problem(text, fragment):
    with pytest.raises(InputError) as err:
        parse_game(text)
    assert fragment in str(err.value)


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputError):
        load_game(tmp_path / "nope.json")


def test_round_trip_is_byte_stable(tmp_path):
    g = random_tpass(3, 2, -1.0, 1.0, seed=2024)
    text = dumps_game(g)
    again = dumps_game(parse_game(text))
    assert text == again
    path = tmp_path / "game.json"
    save_game(g, path)
    loaded = load_game(path)
    assert np.array_equal(loaded.A, g.A)
    assert np.array_equal(loaded.pi, g.pi)
    assert np.array_equal(loaded.rho, g.rho)


def test_dumps_bimatrix_round_trip():
    bg = BimatrixGame([[1.0, 0.5]], [[0.25, 0.0]])
    loaded = parse_game(dumps_game(bg))
    assert np.array_equal(loaded.B, bg.B)
    assert np.array_equal(loaded.C, bg.C)
