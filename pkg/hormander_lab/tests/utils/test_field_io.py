import numpy as np
import pytest

from hormander_lab.src.models.fields import SampledField
from hormander_lab.src.utils.errors import GridError
from hormander_lab.src.utils.field_io import (
    MAGIC,
    decode_field,
    dump_field,
    encode_field,
    load_field,
)
from hormander_lab.src.utils.random_fields import white_noise_field


@pytest.fixture
def noise(line, rng) -> SampledField:
    return white_noise_field(line, rng)


def test_dump_and_load_preserve_field(noise, tmp_path):
    path = dump_field(noise, tmp_path / "nested" / "noise.hlab")
    loaded = load_field(path)
    assert loaded.grid == noise.grid
    assert loaded.space == "physical"
    np.testing.assert_array_equal(loaded.values, noise.values)


def test_frequency_tag_survives(noise):
    spectral = noise.with_values(noise.values, space="frequency")
    assert decode_field(encode_field(spectral)).space == "frequency"


def test_header_layout(noise):
    data = encode_field(noise)
    assert data.startswith(MAGIC)
    # 5 magic + 2 u32 + f64 + u8 header, then 16 bytes per sample
    assert len(data) == 5 + 8 + 8 + 1 + 16 * 256


def test_rejects_bad_magic(noise):
    data = b"XXXXX" + encode_field(noise)[5:]
    with pytest.raises(GridError, match="magic"):
        decode_field(data)


def test_rejects_truncated_header():
    with pytest.raises(GridError, match="truncated"):
        decode_field(MAGIC)


def test_rejects_short_body(noise):
    with pytest.raises(GridError, match="samples"):
        decode_field(encode_field(noise)[:-16])


def test_rejects_partial_sample(noise):
    with pytest.raises(GridError, match="whole number"):
        decode_field(encode_field(noise)[:-3])
