"""Where spectral shifts become the familiar cyclic shift.

On a circulant graph the DFT basis diagonalizes the Laplacian, and the
filter with phase response theta_k = 2*pi*k/N is literally the downshift
permutation: (H x)(n) = x(n-1 mod N).  This script builds that filter on a
ring, compares it entrywise against the permutation matrix, and walks a
pulse around the ring.
"""
import numpy as np

from atomfilt import (
    apply,
    classical_shift_matrix,
    dft_basis,
    make_from_thetas,
    pulse_signal,
    ring_graph,
)

N = 12
graph = ring_graph(N)
basis = dft_basis(N)

thetas = 2 * np.pi * np.arange(N) / N
filt, diag = make_from_thetas(basis, thetas)
print(f"phase structure: paired={diag.phase_paired}, equispaced={diag.equispaced}")

S = classical_shift_matrix(N)
print(f"max |H - S| = {np.max(np.abs(filt.matrix - S)):.3e}")

x = pulse_signal(N, at=0)
print("\npulse walking around the ring (vertex of the maximum):")
for power in range(0, 5):
    y = apply(filt, x, power)
    print(f"  H^{power} x peaks at vertex {int(np.argmax(np.abs(y)))}")

# powers wrap: N applications give back the input
err = np.max(np.abs(apply(filt, x, N) - x))
print(f"\nfull cycle H^{N} x - x: max error {err:.3e}")
