import json

import numpy as np
import pytest

from gamble_calc import Gamble, ParseError, ProbabilityMeasure, StateSpace, identity_utility
from gamble_calc import fileio


@pytest.fixture
def sp():
    return StateSpace(("up", "down"))


class TestGambleJson:
    def test_round_trip(self, sp):
        f = Gamble(sp, np.array([0.1, -0.27]))
        again = fileio.gamble_from_json(fileio.gamble_to_json(f))
        assert again == f

    def test_exact_floats_survive(self, sp):
        f = Gamble(sp, np.array([0.1 + 2e-16, 1 / 3]))
        again = fileio.gamble_from_json(fileio.gamble_to_json(f))
        assert again.rewards.tobytes() == f.rewards.tobytes()

    def test_unknown_keys_rejected(self):
        with pytest.raises(ParseError) as err:
            fileio.gamble_from_json('{"states": ["a"], "rewards": {"a": 1}, "extra": 2}')
        assert "extra" in str(err.value)

    def test_reward_keys_must_match_states(self):
        with pytest.raises(ParseError):
            fileio.gamble_from_json('{"states": ["a", "b"], "rewards": {"a": 1, "c": 2}}')

    def test_booleans_are_not_numbers(self):
        with pytest.raises(ParseError):
            fileio.gamble_from_json('{"states": ["a"], "rewards": {"a": true}}')

    def test_top_level_must_be_object(self):
        with pytest.raises(ParseError):
            fileio.gamble_from_json("[1, 2]")

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            fileio.gamble_from_json("{nope")


class TestMeasureJson:
    def test_round_trip(self, sp):
        p = ProbabilityMeasure(sp, np.array([0.3, 0.7]))
        again = fileio.measure_from_json(fileio.measure_to_json(p))
        assert np.array_equal(again.weights, p.weights)

    def test_bad_weights_surface_as_parse_error(self):
        with pytest.raises(ParseError):
            fileio.measure_from_json('{"states": ["a", "b"], "weights": {"a": 0.9, "b": 0.9}}')


class TestCsv:
    def test_gamble_round_trip(self, sp):
        f = Gamble(sp, np.array([0.5, -0.4]))
        again = fileio.gamble_from_csv(fileio.gamble_to_csv(f))
        assert again == f

    def test_header_is_checked(self):
        with pytest.raises(ParseError) as err:
            fileio.gamble_from_csv("state,price\nup,1\n")
        assert "state,reward" in str(err.value)

    def test_bad_cell_names_row(self):
        with pytest.raises(ParseError) as err:
            fileio.gamble_from_csv("state,reward\nup,1\ndown,oops\n")
        assert "row 3" in str(err.value)

    def test_measure_round_trip(self, sp):
        p = ProbabilityMeasure(sp, np.array([0.25, 0.75]))
        again = fileio.measure_from_csv(fileio.measure_to_csv(p))
        assert np.array_equal(again.weights, p.weights)


class TestBatchCsv:
    def test_parses_rows(self):
        text = "id,up,down\nsafe,0.1,0.1\nrisky,0.5,-0.4\n"
        named = fileio.gambles_from_batch_csv(text)
        assert [name for name, _ in named] == ["safe", "risky"]
        assert named[1][1].rewards == pytest.approx([0.5, -0.4])

    def test_missing_id_header(self):
        with pytest.raises(ParseError):
            fileio.gambles_from_batch_csv("up,down\n0.1,0.1\n")

    def test_blank_name_gets_row_number(self):
        named = fileio.gambles_from_batch_csv("id,up\n,0.1\n")
        assert named[0][0] == "row-2"

    def test_cell_errors_name_row_and_column(self):
        with pytest.raises(ParseError) as err:
            fileio.gambles_from_batch_csv("id,up,down\nx,0.1,zzz\n")
        msg = str(err.value)
        assert "row 2" in msg and "down" in msg


class TestAcceptanceSetJson:
    def test_round_trip(self, sp):
        d = fileio.acceptance_set_from_json(
            '{"states": ["up", "down"], "generators": [[1.0, -0.5], [0.1, 0.2]]}',
            identity_utility(),
        )
        assert len(d) == 2
        text = fileio.acceptance_set_to_json(d)
        again = fileio.acceptance_set_from_json(text, identity_utility())
        assert again.generators == d.generators

    def test_ragged_generators_rejected(self):
        with pytest.raises(ParseError) as err:
            fileio.acceptance_set_from_json(
                '{"states": ["a", "b"], "generators": [[1.0]]}', identity_utility()
            )
        assert "generator 0" in str(err.value)


class TestFileDispatch:
    def test_suffix_routing(self, tmp_path, sp):
        f = Gamble(sp, np.array([0.1, 0.2]))
        j = tmp_path / "f.json"
        c = tmp_path / "f.csv"
        fileio.save_gamble(f, j)
        fileio.save_gamble(f, c)
        assert json.loads(j.read_text())["states"] == ["up", "down"]
        assert c.read_text().startswith("state,reward")
        assert fileio.load_gamble(j) == f
        assert fileio.load_gamble(c) == f

    def test_missing_file_is_parse_error(self, tmp_path):
        with pytest.raises(ParseError) as err:
            fileio.load_gamble(tmp_path / "absent.json")
        assert "absent.json" in str(err.value)


class TestTrajectoryCsv:
    def test_long_format(self):
        paths = np.array([[1.0, 1.5], [1.0, 0.6]])
        text = fileio.paths_to_csv(paths)
        lines = text.strip().split("\n")
        assert lines[0] == "trajectory,period,wealth"
        assert lines[1] == "0,0,1.0"
        assert lines[2] == "0,1,1.5"
        assert lines[3] == "1,0,1.0"
        assert lines[4] == "1,1,0.6"

    def test_values_round_trip_exactly(self):
        paths = np.array([[1.0, 1.0000000000000002, 2 / 3]])
        text = fileio.paths_to_csv(paths)
        cells = [line.split(",")[2] for line in text.strip().split("\n")[1:]]
        assert [float(c) for c in cells] == list(paths[0])
