"""Canned test signals used by the CLI, the figure pipelines, and demos.

All three shapes index vertices 0-based and are pure functions of their
arguments.  Signal files use the JSON schema
``{"n": N, "real": [...], "imag": [...]}`` with ``imag`` optional.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import ParameterError


def gaussian_signal(n: int, center: int | None = None, width: float | None = None,
                    circular: bool = True) -> np.ndarray:
    """Gaussian bump over vertex-index distance from ``center``.

    Distance is circular (ring-like) by default, linear (path-like) when
    ``circular`` is False.  Width defaults to n/10.
    """
    if n < 1:
        raise ParameterError("signal length must be positive")
    if center is None:
        center = n // 2
    if width is None:
        width = n / 10.0
    idx = np.arange(n)
    dist = np.abs(idx - center)
    if circular:
        dist = np.minimum(dist, n - dist)
    return np.exp(-(dist.astype(float) ** 2) / (2.0 * width**2))


def pulse_signal(n: int, at: int = 0) -> np.ndarray:
    """Unit impulse at one vertex."""
    if not 0 <= at < n:
        raise ParameterError(f"pulse position {at} out of range for n={n}")
    x = np.zeros(n)
    x[at] = 1.0
    return x


def sine_signal(n: int, cycles: float = 2.0) -> np.ndarray:
    """sin(2*pi*cycles*idx/n) over vertex index."""
    if n < 1:
        raise ParameterError("signal length must be positive")
    return np.sin(2.0 * np.pi * cycles * np.arange(n) / n)


def signal_to_dict(x: np.ndarray) -> dict:
    x = np.asarray(x, dtype=complex)
    d = {"n": x.size, "real": x.real.tolist()}
    if np.any(x.imag != 0.0):
        d["imag"] = x.imag.tolist()
    return d


def signal_from_dict(d: dict) -> np.ndarray:
    try:
        n = int(d["n"])
        re = np.asarray(d["real"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed signal record: {exc}") from exc
    if re.shape != (n,):
        raise ParameterError("signal record length mismatch")
    if "imag" in d:
        im = np.asarray(d["imag"], dtype=float)
        if im.shape != (n,):
            raise ParameterError("signal record length mismatch")
        return re + 1j * im
    return re.astype(complex)


def save_signal(x: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        json.dump(signal_to_dict(x), fh)
        fh.write("\n")


def load_signal(path) -> np.ndarray:
    with open(path) as fh:
        return signal_from_dict(json.load(fh))
