import numpy as np
import pytest

from atomfilt import signals
from atomfilt.errors import ParameterError


def test_gaussian_circular_vs_linear():
    circ = signals.gaussian_signal(10, center=0, circular=True)
    lin = signals.gaussian_signal(10, center=0, circular=False)
    assert circ[9] == circ[1]  # wraps around
    assert lin[9] < lin[1]
    assert circ.max() == circ[0] == 1.0


def test_pulse_and_sine():
    p = signals.pulse_signal(5, at=2)
    assert p.sum() == 1.0 and p[2] == 1.0
    s = signals.sine_signal(8, cycles=2.0)
    assert abs(s[0]) <= 1e-12
    assert abs(s[1] - np.sin(np.pi / 2)) <= 1e-12


def test_signal_json_roundtrip(tmp_path):
    x = np.array([1.0 + 2.0j, -0.5, 3.25])
    signals.save_signal(x, tmp_path / "x.json")
    back = signals.load_signal(tmp_path / "x.json")
    assert np.array_equal(back, x)
    y = np.array([1.0, 2.0])
    signals.save_signal(y, tmp_path / "y.json")
    back = signals.load_signal(tmp_path / "y.json")
    assert np.array_equal(back, y.astype(complex))


def test_signal_validation():
    with pytest.raises(ParameterError):
        signals.pulse_signal(4, at=4)
    with pytest.raises(ParameterError):
        signals.signal_from_dict({"n": 3, "real": [1.0, 2.0]})
