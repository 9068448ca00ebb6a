import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powchar.rng import GENERATOR_VERSION, McConfig, uniforms


def test_deterministic():
    cfg = McConfig(1000, seed=42, stream=3)
    assert np.array_equal(uniforms(cfg), uniforms(cfg))
    assert np.array_equal(uniforms(cfg, 1, 2), uniforms(cfg, 1, 2))


def test_streams_differ():
    a = uniforms(McConfig(1000, 1, 0))
    b = uniforms(McConfig(1000, 1, 1))
    c = uniforms(McConfig(1000, 1, 0), 0)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert abs(np.corrcoef(a, b)[0, 1]) < 4 / np.sqrt(1000)


@given(st.integers(0, 2**64 - 1), st.integers(0, 1000))
def test_open_interval(seed, stream):
    u = uniforms(McConfig(200, seed, stream))
    assert np.all((u > 0) & (u < 1))


def test_version_names_generator():
    assert "PCG64DXSM" in GENERATOR_VERSION


@pytest.mark.parametrize("kw", [{"n": 0}, {"n": 1, "seed": -1}, {"n": 1, "stream": -1}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        McConfig(**kw)
