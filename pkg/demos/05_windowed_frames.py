"""Windowed Fourier atoms, frame bounds, and exact reconstruction.

Atoms are built by spectrally shifting a window and modulating it with basis
columns.  The per-vertex weights C_n control everything: they must stay
positive for reconstruction, their min/max are the frame bounds, and when all
basis entries share modulus 1/sqrt(N) (circulant graphs) the bounds collapse
to the tight value ||g||^2 / N.
"""
import numpy as np

from atomfilt import (
    DegenerateWindowError,
    analyze,
    as_fourier_basis,
    build_frame,
    complete_bipartite_graph,
    dft_basis,
    dft_factorization,
    eigendecompose,
    gaussian_signal,
    normal_basis,
    path_graph,
    power_responses,
    synthesize,
)

rng = np.random.default_rng(3)

# --- tight frame on a ring -----------------------------------------------
N = 32
basis = dft_basis(N)
responses = power_responses(np.exp(2j * np.pi * np.arange(N) / N))
frame = build_frame(basis, gaussian_signal(N), responses)
alpha, beta = frame.bounds
print(f"ring N={N}: alpha={alpha:.6f}, beta={beta:.6f}, tight={abs(alpha-beta) < 1e-10}")

f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
coeffs = analyze(frame, f)
rec = synthesize(frame, coeffs)
print(f"  reconstruction max error: {np.max(np.abs(rec - f)):.3e}")
print(f"  coefficient energy / ||f||^2 = {np.sum(np.abs(coeffs)**2) / np.linalg.norm(f)**2:.6f}")

# --- non-tight frame on the paired bipartite basis -------------------------
graph = complete_bipartite_graph(5, 3)
nb = normal_basis(eigendecompose(graph.laplacian()))
frame_b = build_frame(nb, gaussian_signal(8), power_responses(np.exp(2j * np.pi * np.arange(8) / 8)))
print(f"\nbipartite (5,3): bounds [{frame_b.bounds[0]:.4f}, {frame_b.bounds[1]:.4f}]")
f = rng.standard_normal(8) + 1j * rng.standard_normal(8)
rec = synthesize(frame_b, analyze(frame_b, f))
print(f"  reconstruction max error: {np.max(np.abs(rec - f)):.3e}")

# --- the response matrix must be a rotated DFT to have orthonormal rows ----
good = dft_factorization(np.exp(2j * np.pi * (np.arange(8) + 0.2) / 8))
bad = dft_factorization(np.exp(1j * np.sort(rng.uniform(0, 2 * np.pi, 8))))
print(f"\nrotated root nodes factor as P*DFT*diag: {good is not None}")
print(f"generic unit-modulus nodes do not:       {bad is None}")

# --- a window that misses a vertex cannot reconstruct ----------------------
pb = as_fourier_basis(eigendecompose(path_graph(3).laplacian()))
dead_window = pb.matrix[:, 1].real  # (1, 0, -1)/sqrt(2)
try:
    build_frame(pb, dead_window, power_responses(np.exp(2j * np.pi * np.arange(3) / 3)))
except DegenerateWindowError as err:
    print(f"\ndegenerate window refused, dead vertices: {list(err.vertices)}")
