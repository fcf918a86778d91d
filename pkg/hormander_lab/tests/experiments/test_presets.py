import pytest
from pydantic import ValidationError

from hormander_lab.experiments.presets import PRESETS, RunConfig, resolve_config
from hormander_lab.src.utils.errors import ParameterError
from hormander_lab.src.utils.settings import LabSettings


def test_defaults_come_from_settings():
    cfg = resolve_config(LabSettings(grid_m=64, seed=4))
    assert cfg.grid_m == 64
    assert cfg.seed == 4
    assert cfg.sharpness.regime == "case1"
    assert cfg.count(20) == 20


def test_precedence():
    """Defaults < config file < preset < flags; None flags are ignored."""
    cfg = resolve_config(
        LabSettings(grid_m=64),
        file_values={"grid_m": "128", "seed": "9", "instances": "5", "colour": "blue"},
        preset="acceptance",
        flags={"grid_m": None, "seed": 3},
    )
    assert cfg.grid_m == 512
    assert cfg.seed == 3
    assert cfg.count(20) == 5


def test_config_file_overrides_settings():
    cfg = resolve_config(LabSettings(), file_values={"half_width": "8"})
    assert cfg.half_width == 8.0


def test_unknown_preset():
    with pytest.raises(ParameterError, match="unknown preset"):
        resolve_config(LabSettings(), preset="huge")


@pytest.mark.parametrize("name", ["case1", "case2", "control"])
def test_sharpness_presets(name):
    cfg = resolve_config(LabSettings(), preset=name)
    assert cfg.sharpness.regime == name
    assert cfg.symbol_grid_m == 1024


def test_grid_sizes_must_halve_twice():
    with pytest.raises(ValidationError):
        RunConfig(grid_m=250)
    with pytest.raises(ValidationError):
        RunConfig(grid_m=8)


def test_echo_is_plain_json(tmp_path):
    echo = RunConfig(dump_dir=tmp_path).echo()
    assert "dump_dir" not in echo
    assert echo["regime"] == "case1"
    assert echo["sharpness"]["t"] == 1.9
    assert echo["n_values"] == [16, 32, 64, 128, 256, 512, 1024]


def test_every_preset_validates():
    for name in PRESETS:
        resolve_config(LabSettings(), preset=name)
