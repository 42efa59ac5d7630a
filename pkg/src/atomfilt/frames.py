"""Windowed Fourier atoms on graphs: dictionaries, analysis, synthesis.

An atom is a spectrally shifted window modulated by a basis vector,
g_{a,k} = (H_a g) . u_k (entrywise product).  With a response matrix A whose
rows are orthonormal and strictly positive per-vertex weights
C_n = sum_l |ghat(l)|^2 |u_l(n)|^2, the atom family is a frame and the
weighted synthesis reconstructs any signal exactly.  When every basis entry
has modulus 1/sqrt(n) (circulant graphs) the frame is tight with
C_n = ||g||^2 / n.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWindowError, FrameConditionError, ParameterError
from .spectral import FourierBasis, dft_basis

#: weights at or below this are treated as zero (window misses a vertex).
WEIGHT_FLOOR = 1e-12
#: entrywise tolerance for the row-orthonormality Gram check of A.
ROW_TOL = 1e-9


@dataclass(frozen=True)
class FrameDictionary:
    """Atoms, weights, and bounds for one (basis, window, responses) triple.

    ``atoms`` has one column per (j, k) pair, laid out row-major by response
    column j then basis column k: column index j*n + k.  ``weights`` holds
    C_n and ``bounds`` is (min C_n, max C_n).
    """

    basis: FourierBasis
    window: np.ndarray
    spectral_window: np.ndarray
    responses: np.ndarray
    atoms: np.ndarray
    weights: np.ndarray
    bounds: tuple[float, float]

    @property
    def n(self) -> int:
        return self.window.size

    @property
    def j_count(self) -> int:
        return self.responses.shape[1]


def build_frame(
    basis: FourierBasis,
    window,
    responses,
    *,
    normalize_window: bool = True,
    row_tol: float = ROW_TOL,
    weight_floor: float = WEIGHT_FLOOR,
) -> FrameDictionary:
    """Assemble the atom dictionary for a window and an N-by-J response matrix.

    Preconditions enforced here because exact reconstruction depends on them:
    J >= N; the rows of the response matrix orthonormal within ``row_tol``
    (FrameConditionError carries the Gram residual); every weight C_n above
    ``weight_floor`` (DegenerateWindowError names the dead vertices).  By
    default the window is rescaled to unit norm so bounds are comparable
    across windows.
    """
    n = basis.n
    g = np.array(window, dtype=complex)
    if g.shape != (n,):
        raise ParameterError(f"window length {g.shape} does not match basis size {n}")
    if not np.all(np.isfinite(g)):
        raise ParameterError("window must be finite")
    norm = float(np.linalg.norm(g))
    if norm == 0.0:
        raise ParameterError("window must be nonzero")
    if normalize_window:
        g = g / norm

    a = np.asarray(responses, dtype=complex)
    if a.ndim != 2 or a.shape[0] != n:
        raise ParameterError(f"response matrix must be {n}-by-J")
    j_count = a.shape[1]
    if j_count < n:
        raise ParameterError(f"need at least {n} response columns, got {j_count}")
    gram_residual = float(np.max(np.abs(a @ a.conj().T - np.eye(n))))
    if gram_residual > row_tol:
        raise FrameConditionError(
            f"response matrix rows are not orthonormal (Gram residual {gram_residual:.3e})"
        )

    u = basis.matrix
    ghat = u.conj().T @ g
    weights = (np.abs(u) ** 2) @ (np.abs(ghat) ** 2)
    dead = np.nonzero(weights <= weight_floor)[0]
    if dead.size:
        raise DegenerateWindowError(
            f"window has (near-)zero weight at vertices {dead.tolist()}", vertices=dead.tolist()
        )

    shifted = u @ (a * ghat[:, None])  # column j = H_{a_j} g
    atoms = (shifted[:, :, None] * u[:, None, :]).reshape(n, j_count * n)
    bounds = (float(weights.min()), float(weights.max()))
    for arr in (g, ghat, atoms, weights):
        arr.setflags(write=False)
    a = a.copy()
    a.setflags(write=False)
    return FrameDictionary(basis, g, ghat, a, atoms, weights, bounds)


def power_responses(response) -> np.ndarray:
    """Columns a_j = (a_1^{j-1}, ..., a_N^{j-1})^T / sqrt(N) for j = 1..N.

    This is the response family of the successive powers of H_a, scaled so
    the full matrix can have orthonormal rows; it does iff the components of
    ``a`` are a rotated set of N-th roots of unity (see
    :func:`dft_factorization`).
    """
    a = np.asarray(response, dtype=complex)
    if a.ndim != 1 or a.size < 1:
        raise ParameterError("response must be a nonempty vector")
    return np.vander(a, increasing=True) / np.sqrt(a.size)


@dataclass(frozen=True)
class DftFactors:
    """Writes the scaled power-Vandermonde matrix as P U C.

    ``perm`` maps sorted-phase position k to the original row perm[k], so the
    permutation matrix is P[perm[k], k] = 1; U is the DFT basis and
    C = diag(1, c, ..., c^{N-1}) for the unit scalar ``c``.
    ``reproduction_error`` is the max-abs error of P U C against the input.
    """

    perm: np.ndarray
    scalar: complex
    reproduction_error: float

    def reconstruct(self) -> np.ndarray:
        n = self.perm.size
        uc = dft_basis(n).matrix * self.scalar ** np.arange(n)[None, :]
        out = np.empty_like(uc)
        out[self.perm] = uc
        return out


def dft_factorization(response, tol: float = 1e-9) -> DftFactors | None:
    """Factor power_responses(a) as permutation * DFT * diagonal, if unitary.

    The scaled power-Vandermonde matrix is unitary exactly when all |a_k| = 1
    and the sorted phases are consecutive multiples of 2*pi/N apart; then
    a_k = c * omega^{j_k} for a unit scalar c and a permutation j.  Returns
    None when any check fails (the matrix is then not unitary).
    """
    a = np.asarray(response, dtype=complex)
    n = a.size
    if n == 0:
        raise ParameterError("response must be nonempty")
    if n == 1:
        return DftFactors(np.array([0]), 1.0 + 0.0j, 0.0)
    gaps = np.abs(a[:, None] - a[None, :])[np.triu_indices(n, k=1)]
    if float(np.min(gaps)) <= tol:
        return None
    if float(np.max(np.abs(np.abs(a) - 1.0))) > tol:
        return None
    phases = np.mod(np.angle(a), 2.0 * np.pi)
    order = np.argsort(phases, kind="stable")
    sorted_phases = phases[order]
    if float(np.max(np.abs(np.diff(sorted_phases) - 2.0 * np.pi / n))) > tol:
        return None
    scalar = complex(a[order[0]])
    factors = DftFactors(order, scalar, 0.0)
    err = float(np.max(np.abs(factors.reconstruct() - np.vander(a, increasing=True) / np.sqrt(n))))
    if err > max(tol, 64 * np.finfo(float).eps * n):
        return None
    return DftFactors(order, scalar, err)


def analyze(frame: FrameDictionary, signal) -> np.ndarray:
    """Inner products of the signal against every atom, as a J-by-N matrix."""
    f = np.asarray(signal, dtype=complex)
    if f.shape != (frame.n,):
        raise ParameterError(f"signal length {f.shape} does not match frame size {frame.n}")
    return (frame.atoms.conj().T @ f).reshape(frame.j_count, frame.n)


def synthesize(frame: FrameDictionary, coefficients) -> np.ndarray:
    """Weighted synthesis: sum the coefficient-scaled atoms, divide by C_n.

    For coefficients produced by :func:`analyze` this reconstructs the
    original signal exactly (up to roundoff).
    """
    c = np.asarray(coefficients, dtype=complex)
    if c.shape != (frame.j_count, frame.n):
        raise ParameterError(
            f"coefficient shape {c.shape} does not match ({frame.j_count}, {frame.n})"
        )
    return (frame.atoms @ c.ravel()) / frame.weights


# --- frame JSON / coefficient CSV files --------------------------------------


def frame_to_dict(frame: FrameDictionary) -> dict:
    return {
        "n": frame.n,
        "J": frame.j_count,
        "responses_real": frame.responses.real.tolist(),
        "responses_imag": frame.responses.imag.tolist(),
        "weights": [float(w) for w in frame.weights],
        "alpha": frame.bounds[0],
        "beta": frame.bounds[1],
    }


def save_frame(frame: FrameDictionary, path) -> None:
    with open(path, "w") as fh:
        json.dump(frame_to_dict(frame), fh)
        fh.write("\n")


def save_coefficients(coefficients: np.ndarray, path) -> None:
    c = np.asarray(coefficients, dtype=complex)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["j", "k", "re", "im"])
        for j in range(c.shape[0]):
            for k in range(c.shape[1]):
                writer.writerow([j, k, repr(float(c[j, k].real)), repr(float(c[j, k].imag))])


def load_coefficients(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["j", "k", "re", "im"]:
            raise ParameterError(f"unexpected coefficient CSV header {header!r}")
        for row in reader:
            rows.append((int(row[0]), int(row[1]), float(row[2]), float(row[3])))
    if not rows:
        raise ParameterError("coefficient CSV has no rows")
    j_count = max(r[0] for r in rows) + 1
    n = max(r[1] for r in rows) + 1
    out = np.zeros((j_count, n), dtype=complex)
    for j, k, re, im in rows:
        out[j, k] = re + 1j * im
    return out
