"""Every co-diagonalized filter is a polynomial in one atomic filter.

Distinct response components make the Vandermonde system V(a) c = b solvable,
so the powers H^0 .. H^{N-1} span the whole filter algebra.  Well-separated
unit-modulus nodes keep the solve accurate; nearly coincident nodes are still
atomic in exact arithmetic but the returned result carries an
ill-conditioning warning instead of silently losing digits.
"""
import numpy as np

from atomfilt import dft_basis, make_filter, polynomial_expand

rng = np.random.default_rng(11)
N = 16
basis = dft_basis(N)

a = np.exp(2j * np.pi * (np.arange(N) + rng.uniform(-0.3, 0.3, N)) / N)
atomic = make_filter(basis, a)

print("expanding three targets in the powers of one atomic filter:")
for label, b in [
    ("the filter itself", a.copy()),
    ("the identity", np.ones(N, dtype=complex)),
    ("a random filter", rng.standard_normal(N) + 1j * rng.standard_normal(N)),
]:
    result = polynomial_expand(atomic, b)
    lead = np.argmax(np.abs(result.coeffs))
    print(f"  {label:18s} dominant power {lead:2d}  "
          f"solve residual {result.residual:.2e}  "
          f"matrix residual {result.matrix_residual:.2e}")

# squaring the response shifts the coefficient one power up
squared = polynomial_expand(atomic, a**2)
print(f"\ncoefficients for b = a^2 (should be e_3): {np.round(np.abs(squared.coeffs), 6)}")

# cluster four nodes: conditioning collapses and the result says so
clustered = np.exp(2j * np.pi * np.arange(N) / N)
for i, eps in enumerate((1e-6, 2e-6, 3e-6), start=5):
    clustered[i] = clustered[4] * np.exp(1j * eps)
result = polynomial_expand(make_filter(basis, clustered), rng.standard_normal(N))
print(f"\nclustered nodes: residual {result.residual:.2e}, "
      f"ill_conditioned={result.ill_conditioned}")
