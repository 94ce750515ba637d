"""Configuration persistence: JSON on disk, atomic writes, stable layout.

The file is meant to be hand-editable, so keys are written in a fixed
order and saving is byte-stable: loading a saved file and saving it
again reproduces the same bytes.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field

from .controller import RobotConfig, SavedPosition
from .errors import ConfigError
from .kinematics import AnchorSet, Point3, SingularGeometryError, WinchParams

SCHEMA_VERSION = 1
LANGUAGES = ("en", "fr")

DEFAULT_CONFIG_FILENAME = "cablebot.json"

# default classroom rig: a 120 cm square of coils at 150 cm; with every
# cable at its 100 cm mark the platform hangs at the center, so a freshly
# zeroed robot starts from a consistent pose
_DEFAULT_ANCHORS = {
    "A": (0.0, 0.0, 150.0),
    "B": (120.0, 0.0, 150.0),
    "C": (120.0, 120.0, 150.0),
    "D": (0.0, 120.0, 150.0),
}

_write_lock = threading.Lock()


@dataclass
class PersistedConfig:
    """On-disk application state; see ``to_json_dict`` for the layout."""

    anchors: dict
    winches: dict
    saved_positions: list = field(default_factory=list)
    ui_default_language: str = "en"
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.ui_default_language not in LANGUAGES:
            raise ConfigError(
                f"ui_default_language must be one of {LANGUAGES}, "
                f"got {self.ui_default_language!r}")
        if set(self.anchors) != set(self.winches):
            raise ConfigError("anchors and winches must list the same coils")
        ids = [p.id for p in self.saved_positions]
        if len(ids) != len(set(ids)):
            raise ConfigError("saved position ids must be unique")

    def to_json_dict(self):
        return {
            "schema_version": self.schema_version,
            "ui_default_language": self.ui_default_language,
            "anchors": {coil: list(xyz) for coil, xyz in self.anchors.items()},
            "winches": {
                coil: {
                    "home_length_l0": params.home_length_l0,
                    "drum_radius_r": params.drum_radius_r,
                    "steps_per_turn": params.steps_per_turn,
                }
                for coil, params in self.winches.items()
            },
            "saved_positions": [
                {"id": p.id, "label": p.label,
                 "point": [p.point.x, p.point.y, p.point.z]}
                for p in self.saved_positions
            ],
        }

    @classmethod
    def from_json_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ConfigError(
                f"unsupported schema_version {version!r} "
                f"(this build reads version {SCHEMA_VERSION}, no migration)")
        try:
            anchors = {coil: tuple(float(v) for v in xyz)
                       for coil, xyz in data["anchors"].items()}
            winches = {coil: WinchParams(
                           home_length_l0=float(raw["home_length_l0"]),
                           drum_radius_r=float(raw["drum_radius_r"]),
                           steps_per_turn=int(raw["steps_per_turn"]))
                       for coil, raw in data["winches"].items()}
            saved = [SavedPosition(id=int(raw["id"]), label=str(raw["label"]),
                                   point=Point3(*map(float, raw["point"])))
                     for raw in data.get("saved_positions", [])]
            language = data.get("ui_default_language", "en")
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        for coil, xyz in anchors.items():
            if len(xyz) != 3:
                raise ConfigError(f"anchor {coil} must have 3 coordinates")
        return cls(anchors=anchors, winches=winches, saved_positions=saved,
                   ui_default_language=language, schema_version=version)

    def to_robot_config(self) -> RobotConfig:
        try:
            anchor_set = AnchorSet.from_coordinates(list(self.anchors.values()))
        except (ValueError, SingularGeometryError) as exc:
            raise ConfigError(f"invalid anchor layout: {exc}") from exc
        return RobotConfig(
            anchors=anchor_set,
            winch_params=dict(self.winches),
            saved_positions=list(self.saved_positions),
        )

    @classmethod
    def from_robot_config(cls, robot_config: RobotConfig, coils,
                          ui_default_language="en"):
        anchors = {coil: (a.x, a.y, a.z)
                   for coil, a in zip(coils, robot_config.anchors)}
        winches = {coil: robot_config.winch_params[coil] for coil in coils}
        return cls(anchors=anchors, winches=winches,
                   saved_positions=list(robot_config.saved_positions),
                   ui_default_language=ui_default_language)


def default_config() -> PersistedConfig:
    return PersistedConfig(
        anchors=dict(_DEFAULT_ANCHORS),
        winches={coil: WinchParams() for coil in _DEFAULT_ANCHORS},
    )


def serialize_config(config: PersistedConfig) -> str:
    return json.dumps(config.to_json_dict(), indent=2) + "\n"


def load_config(path) -> PersistedConfig:
    """Read and validate a config file; ConfigError on any defect."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return PersistedConfig.from_json_dict(data)


def save_config(path, config: PersistedConfig) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    text = serialize_config(config)
    directory = os.path.dirname(os.path.abspath(path))
    with _write_lock:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".cablebot-",
                                        suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
            raise


def load_or_create_config(path) -> PersistedConfig:
    """Load the config, writing defaults first if the file is absent."""
    if not os.path.exists(path):
        config = default_config()
        save_config(path, config)
        return config
    return load_config(path)
