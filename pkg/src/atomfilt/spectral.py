"""Laplacian spectra and graph Fourier bases.

Three flavors of basis appear here:

* the real orthonormal eigenbasis of the Laplacian (``RealSpectrum``),
* the complex discrete Fourier basis (``dft_basis``), which diagonalizes
  every circulant adjacency, and
* a conjugate-paired complex eigenbasis (``normal_basis``) assembled from
  real eigenvector pairs drawn inside equal-eigenvalue groups.  Columns
  satisfy u_k = conj(u_{n+2-k}) (1-based), which is the structural condition
  for unit-modulus frequency responses to act as real operators.

The conjugate-paired construction exists iff at most one nonzero eigenvalue
group has odd multiplicity; by a counting argument that means exactly one
such group for even n and none for odd n.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AtomfiltError, GraphStructureError, NoNormalBasisError, ParameterError

#: orthonormality tolerance for basis validation (entrywise).
UNITARITY_TOL = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RealSpectrum:
    """Ascending Laplacian eigenvalues with real orthonormal eigenvectors.

    ``eigenvalues[0]`` is exactly 0 and ``vectors[:, 0]`` is the constant
    vector 1/sqrt(n); column k is the eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        vec = np.asarray(self.vectors, dtype=float)
        n = lam.size
        if vec.shape != (n, n):
            raise ParameterError("eigenvector matrix shape does not match eigenvalue count")
        scale = max(1.0, float(lam[-1]))
        if abs(lam[0]) > 1e-9 * scale:
            raise ParameterError("smallest eigenvalue must be zero")
        if np.any(np.diff(lam) < 0):
            raise ParameterError("eigenvalues must be ascending")
        if np.max(np.abs(vec.T @ vec - np.eye(n))) > UNITARITY_TOL:
            raise ParameterError("eigenvectors must be orthonormal")
        if np.max(np.abs(vec[:, 0] - 1.0 / np.sqrt(n))) > UNITARITY_TOL:
            raise ParameterError("first eigenvector must be the constant 1/sqrt(n)")
        object.__setattr__(self, "eigenvalues", _readonly(lam))
        object.__setattr__(self, "vectors", _readonly(vec))

    @property
    def n(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class Pairing:
    """Involution on basis columns with unit scalars: u_k = c_k * conj(u_{p(k)}).

    ``partner`` is a 0-based index map with ``partner[0] == 0``;
    ``scalars[k]`` is the unit-modulus constant c_k relating column k to the
    conjugate of its partner column.
    """

    partner: np.ndarray
    scalars: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.partner, dtype=int)
        c = np.asarray(self.scalars, dtype=complex)
        if p.ndim != 1 or c.shape != p.shape:
            raise ParameterError("pairing arrays must be 1-D and equally long")
        if p[0] != 0:
            raise ParameterError("pairing must fix the constant column")
        if not np.array_equal(p[p], np.arange(p.size)):
            raise ParameterError("pairing must be an involution")
        if np.max(np.abs(np.abs(c) - 1.0)) > UNITARITY_TOL:
            raise ParameterError("pairing scalars must have unit modulus")
        object.__setattr__(self, "partner", _readonly(p))
        object.__setattr__(self, "scalars", _readonly(c))


@dataclass(frozen=True)
class FourierBasis:
    """Unitary (possibly complex) Fourier basis with aligned eigenvalues.

    ``matrix`` holds the columns u_k; ``eigenvalues[k]`` is the Laplacian
    eigenvalue associated with column k (not necessarily ascending -- the
    conjugate-paired construction reorders them).  ``pairing`` records a
    known conjugation structure when one exists.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    pairing: Pairing | None = None

    def __post_init__(self):
        u = np.asarray(self.matrix, dtype=complex)
        lam = np.asarray(self.eigenvalues, dtype=float)
        n = u.shape[0]
        if u.shape != (n, n) or lam.shape != (n,):
            raise ParameterError("basis matrix must be square with one eigenvalue per column")
        if np.max(np.abs(u.conj().T @ u - np.eye(n))) > UNITARITY_TOL:
            raise ParameterError("basis columns must be orthonormal")
        if np.max(np.abs(u[:, 0] - 1.0 / np.sqrt(n))) > UNITARITY_TOL:
            raise ParameterError("first basis column must be the constant 1/sqrt(n)")
        object.__setattr__(self, "matrix", _readonly(u))
        object.__setattr__(self, "eigenvalues", _readonly(lam))

    @property
    def n(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class EigenGroup:
    """One multiplicity group: representative value and member column indices."""

    value: float
    indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class MultiplicityGroups:
    groups: tuple[EigenGroup, ...]
    tol: float

    def sizes(self) -> tuple[int, ...]:
        return tuple(g.size for g in self.groups)


class NormalSupport(NamedTuple):
    """Verdict plus the odd-multiplicity nonzero eigenvalues that decide it."""

    supported: bool
    odd_nonzero: tuple[float, ...]


def _default_group_tol(eigenvalues: np.ndarray) -> float:
    return 1e-8 * max(1.0, float(np.max(eigenvalues)))


def eigendecompose(laplacian: np.ndarray) -> RealSpectrum:
    """Real orthonormal eigendecomposition of a connected-graph Laplacian.

    The input must be symmetric within 1e-12.  Output is deterministic:
    eigenvalues ascending, the zero eigenvector replaced by the exact
    constant 1/sqrt(n), and every other column sign-normalized so its first
    significantly nonzero entry is positive.
    """
    lap = np.asarray(laplacian, dtype=float)
    n = lap.shape[0]
    if lap.ndim != 2 or lap.shape != (n, n):
        raise ParameterError("Laplacian must be square")
    if np.max(np.abs(lap - lap.T)) > 1e-12:
        raise ParameterError("Laplacian must be symmetric within 1e-12")
    lam, vec = np.linalg.eigh(lap)
    scale = max(1.0, float(lam[-1]))
    if abs(lam[0]) > 1e-9 * scale:
        raise GraphStructureError("matrix is not positive semidefinite with a zero mode")
    lam[0] = 0.0
    if n > 1 and lam[1] <= 1e-9 * scale:
        raise GraphStructureError("zero eigenvalue is repeated: the graph is disconnected")
    vec[:, 0] = 1.0 / np.sqrt(n)
    for k in range(1, n):
        col = vec[:, k]
        nz = np.nonzero(np.abs(col) > 1e-8 * np.max(np.abs(col)))[0]
        if col[nz[0]] < 0:
            vec[:, k] = -col
    if np.max(np.abs(lap @ vec - vec * lam)) > 1e-8 * scale:
        raise AtomfiltError("eigendecomposition residual exceeds tolerance")
    return RealSpectrum(lam, vec)


def partition_eigenvalues(eigenvalues: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    """Group ascending values into runs whose consecutive gaps are <= tol."""
    lam = np.asarray(eigenvalues, dtype=float)
    groups = []
    start = 0
    for k in range(1, lam.size + 1):
        if k == lam.size or lam[k] - lam[k - 1] > tol:
            groups.append(tuple(range(start, k)))
            start = k
    return tuple(groups)


def multiplicity_partition(spectrum: RealSpectrum, tol: float | None = None) -> MultiplicityGroups:
    """Partition the spectrum into equal-eigenvalue groups by gap threshold."""
    if tol is None:
        tol = _default_group_tol(spectrum.eigenvalues)
    lam = spectrum.eigenvalues
    groups = tuple(
        EigenGroup(float(np.mean(lam[list(idx)])), idx) for idx in partition_eigenvalues(lam, tol)
    )
    return MultiplicityGroups(groups, tol)


def supports_normal_atomic(spectrum: RealSpectrum, tol: float | None = None) -> NormalSupport:
    """Decide whether a conjugate-paired eigenbasis exists for this spectrum.

    Requires at most one nonzero eigenvalue group of odd multiplicity;
    counting the n-1 nonzero eigenvalues forces that to mean none when n is
    odd and exactly one when n is even.  The returned diagnostic lists the
    odd-multiplicity nonzero eigenvalues found.
    """
    parts = multiplicity_partition(spectrum, tol)
    odd = tuple(g.value for g in parts.groups if 0 not in g.indices and g.size % 2 == 1)
    n = spectrum.n
    required = 1 if n % 2 == 0 else 0
    return NormalSupport(len(odd) == required and len(odd) <= 1, odd)


def normal_basis(spectrum: RealSpectrum, tol: float | None = None) -> FourierBasis:
    """Build a conjugate-paired complex eigenbasis from a real spectrum.

    Columns are reordered so paired slots carry equal eigenvalues, then each
    pair of real eigenvectors (alpha, beta) from one multiplicity group is
    combined into (alpha + i*beta)/sqrt(2) and its conjugate.  The factor
    1/sqrt(2) keeps the columns unit norm.  When n is even, the leftover
    vector of the single odd group fills the self-paired middle column.
    Raises NoNormalBasisError when the multiplicity condition fails.
    """
    support = supports_normal_atomic(spectrum, tol)
    if not support.supported:
        parts = multiplicity_partition(spectrum, tol)
        bad = [(g.value, g.size) for g in parts.groups if 0 not in g.indices and g.size % 2 == 1]
        raise NoNormalBasisError(
            "spectrum has odd-multiplicity nonzero eigenvalue groups "
            f"{bad}: no conjugate-paired basis exists",
            groups=bad,
        )
    parts = multiplicity_partition(spectrum, tol)
    n = spectrum.n
    alpha = spectrum.vectors
    lam = spectrum.eigenvalues
    u = np.zeros((n, n), dtype=complex)
    lam_out = np.zeros(n)
    u[:, 0] = 1.0 / np.sqrt(n)
    slot = 1
    middle = None  # (column index, eigenvalue) for even n
    for group in parts.groups:
        if 0 in group.indices:
            continue
        members = list(group.indices)
        if len(members) % 2 == 1:
            middle = (members[-1], group.value)
            members = members[:-1]
        for a, b in zip(members[0::2], members[1::2]):
            u[:, slot] = (alpha[:, a] + 1j * alpha[:, b]) / np.sqrt(2.0)
            u[:, n - slot] = (alpha[:, a] - 1j * alpha[:, b]) / np.sqrt(2.0)
            lam_out[slot] = lam_out[n - slot] = group.value
            slot += 1
    if n % 2 == 0:
        col, value = middle
        u[:, n // 2] = alpha[:, col]
        lam_out[n // 2] = value
    partner = np.concatenate(([0], n - np.arange(1, n)))
    pairing = Pairing(partner, np.ones(n, dtype=complex))
    return FourierBasis(u, lam_out, pairing)


def dft_basis(n: int, eigenvalues: np.ndarray | None = None) -> FourierBasis:
    """Discrete Fourier basis: u_k(j) = exp(2*pi*i*j*k/n) / sqrt(n) (0-based).

    These columns diagonalize every circulant adjacency matrix.  By default
    the attached eigenvalues are those of the unit-weight ring Laplacian,
    2 - 2*cos(2*pi*k/n), which the DFT columns diagonalize; pass
    ``eigenvalues`` (e.g. from :func:`circulant_eigenvalues`) to align the
    basis with another circulant graph.
    """
    if n < 1:
        raise ParameterError("dft_basis needs n >= 1")
    k = np.arange(n)
    u = np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    if eigenvalues is None:
        eigenvalues = 2.0 - 2.0 * np.cos(2.0 * np.pi * k / n)
    else:
        eigenvalues = np.asarray(eigenvalues, dtype=float)
        if eigenvalues.shape != (n,):
            raise ParameterError("eigenvalues must have length n")
    partner = np.concatenate(([0], n - np.arange(1, n))) if n > 1 else np.array([0])
    pairing = Pairing(partner, np.ones(n, dtype=complex))
    return FourierBasis(u, eigenvalues, pairing)


def circulant_eigenvalues(c) -> np.ndarray:
    """Laplacian eigenvalues of a circulant graph, aligned with DFT columns.

    The Laplacian of the circulant generated by ``c`` is itself circulant
    with first row (sum(c), -c_1, ..., -c_{n-1}); its eigenvalue for DFT
    column k is the k-th DFT coefficient of that row (real by symmetry).
    """
    from .graphs import validate_generating_vector

    c = validate_generating_vector(c)
    row = -c
    row[0] = c.sum()
    lam = np.fft.fft(row).real
    lam[0] = 0.0
    return lam


def as_fourier_basis(spectrum: RealSpectrum) -> FourierBasis:
    """View a real spectrum as a complex Fourier basis (identity pairing)."""
    n = spectrum.n
    pairing = Pairing(np.arange(n), np.ones(n, dtype=complex))
    return FourierBasis(spectrum.vectors.astype(complex), spectrum.eigenvalues, pairing)


def gft(basis: FourierBasis, x: np.ndarray, direction: str = "forward") -> np.ndarray:
    """Graph Fourier transform: forward is U* x, inverse is U x."""
    x = np.asarray(x)
    if x.shape != (basis.n,):
        raise ParameterError(f"signal length {x.shape} does not match basis size {basis.n}")
    if direction == "forward":
        return basis.matrix.conj().T @ x
    if direction == "inverse":
        return basis.matrix @ x
    raise ParameterError(f"unknown direction {direction!r}")


# --- spectrum JSON files ----------------------------------------------------
#
# Schema: {"n": N, "eigenvalues": [...], "U_real": [[...]], "U_imag": [[...]]}
# with U stored row-major.  The loader re-validates unitarity.


def spectrum_to_dict(basis: FourierBasis) -> dict:
    return {
        "n": basis.n,
        "eigenvalues": [float(v) for v in basis.eigenvalues],
        "U_real": basis.matrix.real.tolist(),
        "U_imag": basis.matrix.imag.tolist(),
    }


def spectrum_from_dict(d: dict) -> FourierBasis:
    try:
        n = int(d["n"])
        lam = np.asarray(d["eigenvalues"], dtype=float)
        u = np.asarray(d["U_real"], dtype=float) + 1j * np.asarray(d["U_imag"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed spectrum record: {exc}") from exc
    if lam.shape != (n,) or u.shape != (n, n):
        raise ParameterError("spectrum record shapes are inconsistent")
    return FourierBasis(u, lam)  # constructor validates unitarity


def save_spectrum(basis: FourierBasis, path) -> None:
    with open(path, "w") as fh:
        json.dump(spectrum_to_dict(basis), fh)
        fh.write("\n")


def load_spectrum(path) -> FourierBasis:
    with open(path) as fh:
        return spectrum_from_dict(json.load(fh))
