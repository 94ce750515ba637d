"""Config persistence: round trips, atomic writes, schema validation."""

import json
import os

import pytest

from cablebot import Point3, WinchParams
from cablebot.config import (
    PersistedConfig,
    default_config,
    load_config,
    load_or_create_config,
    save_config,
    serialize_config,
)
from cablebot.controller import SavedPosition
from cablebot.errors import ConfigError


@pytest.fixture
def config_path(tmp_path):
    return tmp_path / "cablebot.json"


def populated_config():
    config = default_config()
    config.saved_positions = [
        SavedPosition(1, "start", Point3(60.0, 60.0, 97.0)),
        SavedPosition(2, "shelf", Point3(10.5, 110.25, 30.125)),
    ]
    config.ui_default_language = "fr"
    return config


class TestRoundTrip:
    def test_save_then_load_equal(self, config_path):
        config = populated_config()
        save_config(config_path, config)
        assert load_config(config_path) == config

    def test_saving_a_loaded_file_is_byte_stable(self, config_path):
        save_config(config_path, populated_config())
        first = config_path.read_bytes()
        save_config(config_path, load_config(config_path))
        assert config_path.read_bytes() == first

    def test_serialized_key_order_is_fixed(self):
        text = serialize_config(default_config())
        data = json.loads(text)
        assert list(data.keys()) == ["schema_version", "ui_default_language",
                                     "anchors", "winches", "saved_positions"]
        assert list(data["anchors"].keys()) == ["A", "B", "C", "D"]

    def test_robot_config_round_trip(self):
        config = populated_config()
        robot = config.to_robot_config()
        back = PersistedConfig.from_robot_config(robot, ("A", "B", "C", "D"),
                                                 ui_default_language="fr")
        assert back == config


class TestValidation:
    def test_future_schema_version_rejected(self, config_path):
        data = default_config().to_json_dict()
        data["schema_version"] = 2
        config_path.write_text(json.dumps(data))
        with pytest.raises(ConfigError):
            load_config(config_path)

    def test_corrupt_json_rejected(self, config_path):
        config_path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(config_path)

    def test_missing_winches_rejected(self, config_path):
        data = default_config().to_json_dict()
        del data["winches"]
        config_path.write_text(json.dumps(data))
        with pytest.raises(ConfigError):
            load_config(config_path)

    def test_anchor_coil_mismatch_rejected(self):
        config = default_config()
        with pytest.raises(ConfigError):
            PersistedConfig(anchors={"A": (0, 0, 1), "B": (1, 0, 1)},
                            winches=config.winches)

    def test_unknown_language_rejected(self):
        config = default_config()
        with pytest.raises(ConfigError):
            PersistedConfig(anchors=config.anchors, winches=config.winches,
                            ui_default_language="de")

    def test_duplicate_position_ids_rejected(self):
        config = default_config()
        with pytest.raises(ConfigError):
            PersistedConfig(
                anchors=config.anchors, winches=config.winches,
                saved_positions=[SavedPosition(1, "a", Point3(0, 0, 0)),
                                 SavedPosition(1, "b", Point3(1, 1, 1))])

    def test_collinear_anchors_rejected_at_robot_config(self):
        config = default_config()
        config.anchors = {"A": (0.0, 0.0, 1.0), "B": (1.0, 0.0, 1.0),
                          "C": (2.0, 0.0, 1.0), "D": (3.0, 0.0, 1.0)}
        with pytest.raises(ConfigError):
            config.to_robot_config()

    def test_bad_winch_values_rejected(self, config_path):
        data = default_config().to_json_dict()
        data["winches"]["A"]["steps_per_turn"] = "many"
        config_path.write_text(json.dumps(data))
        with pytest.raises(ConfigError):
            load_config(config_path)


class TestLoadOrCreate:
    def test_absent_file_gets_defaults(self, config_path):
        config = load_or_create_config(config_path)
        assert config == default_config()
        assert config_path.exists()
        assert load_config(config_path) == config

    def test_existing_file_is_loaded_not_overwritten(self, config_path):
        config = populated_config()
        save_config(config_path, config)
        before = config_path.read_bytes()
        loaded = load_or_create_config(config_path)
        assert loaded == config
        assert config_path.read_bytes() == before

    def test_no_temp_files_left_behind(self, config_path):
        save_config(config_path, default_config())
        save_config(config_path, populated_config())
        leftovers = [name for name in os.listdir(config_path.parent)
                     if name != config_path.name]
        assert leftovers == []

    def test_defaults_describe_a_consistent_home(self):
        # freshly zeroed cables at the 100 cm mark must intersect in a point
        from cablebot import CableLengths, solve_platform_position
        robot = default_config().to_robot_config()
        sol = solve_platform_position(CableLengths((100.0,) * 4), robot.anchors)
        assert sol.converged
