"""Existence and construction of conjugate-paired eigenbases.

A unit-modulus atomic filter can only map real signals to real signals if
the Fourier basis columns pair up under conjugation.  Such a basis exists iff
at most one nonzero Laplacian eigenvalue has odd multiplicity (equivalently:
none for odd N, exactly one for even N).  Rings and complete graphs qualify;
path graphs never do for N >= 3, because their eigenvalues are all simple.
"""
import numpy as np

from atomfilt import (
    NoNormalBasisError,
    complete_bipartite_graph,
    complete_graph,
    eigendecompose,
    make_filter,
    multiplicity_partition,
    normal_basis,
    path_graph,
    pulse_signal,
    ring_graph,
    supports_normal_atomic,
)

candidates = [
    ("ring N=8", ring_graph(8)),
    ("ring N=9", ring_graph(9)),
    ("complete N=6", complete_graph(6)),
    ("path N=10", path_graph(10)),
    ("bipartite (5,3)", complete_bipartite_graph(5, 3)),
    ("bipartite (5,4)", complete_bipartite_graph(5, 4)),
]

for label, graph in candidates:
    spec = eigendecompose(graph.laplacian())
    sizes = multiplicity_partition(spec).sizes()
    verdict = supports_normal_atomic(spec)
    print(f"{label:18s} multiplicities {str(sizes):22s} paired basis: {verdict.supported}")
    if not verdict.supported:
        print(f"{'':18s}   odd nonzero eigenvalues: {np.round(verdict.odd_nonzero, 4)}")

print("\nbuilding the paired basis for bipartite (5,3):")
graph = complete_bipartite_graph(5, 3)
spec = eigendecompose(graph.laplacian())
basis = normal_basis(spec)
n = graph.n
pair_err = max(np.max(np.abs(basis.matrix[:, k] - basis.matrix[:, (n - k) % n].conj()))
               for k in range(1, n))
print(f"  column conjugation error: {pair_err:.3e}")
print(f"  eigenvalues along columns: {np.round(basis.eigenvalues, 6)}")

# a unit-modulus response respecting the pairing keeps real signals real
a = np.exp(-2j * np.pi * np.arange(n) / n)
filt = make_filter(basis, a)
y = filt.matrix @ pulse_signal(n, at=4)
print(f"  filtered pulse, max |imag|: {np.max(np.abs(y.imag)):.3e}")

try:
    normal_basis(eigendecompose(path_graph(6).laplacian()))
except NoNormalBasisError as err:
    print(f"\npath N=6 is refused: {len(err.groups)} odd-multiplicity nonzero groups")
