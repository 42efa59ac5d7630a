import numpy as np
import pytest

from atomfilt import filters, frames, graphs, signals, spectral
from atomfilt.errors import DegenerateWindowError, FrameConditionError, ParameterError


def omega_power_matrix(n):
    return frames.power_responses(np.exp(2j * np.pi * np.arange(n) / n))


def bipartite_normal_basis():
    g = graphs.complete_bipartite_graph(5, 3)
    return spectral.normal_basis(spectral.eigendecompose(g.laplacian()))


# --- build_frame ----------------------------------------------------------------


def test_tight_frame_on_dft_basis():
    rng = np.random.default_rng(2)
    n = 12
    basis = spectral.dft_basis(n)
    g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    frame = frames.build_frame(basis, g, omega_power_matrix(n))
    expected = np.linalg.norm(frame.window) ** 2 / n
    assert np.max(np.abs(frame.weights - expected)) <= 1e-10
    assert abs(frame.bounds[0] - frame.bounds[1]) <= 1e-10


def test_constant_window_gives_unit_weights():
    n = 9
    basis = spectral.dft_basis(n)
    g = np.sqrt(n) * basis.matrix[:, 0]  # spectral mass only on the constant column
    frame = frames.build_frame(basis, g, omega_power_matrix(n), normalize_window=False)
    assert np.max(np.abs(frame.weights - 1.0)) <= 1e-10


def test_degenerate_window_on_path_eigenvector():
    g = graphs.path_graph(3)
    basis = spectral.as_fourier_basis(spectral.eigendecompose(g.laplacian()))
    window = basis.matrix[:, 1].real  # (1, 0, -1)/sqrt(2): dead at the middle vertex
    with pytest.raises(DegenerateWindowError) as err:
        frames.build_frame(basis, window, omega_power_matrix(3))
    assert 1 in err.value.vertices


def test_rejects_nonorthonormal_rows():
    n = 6
    basis = spectral.dft_basis(n)
    bad = frames.power_responses(np.exp(1j * np.array([0.0, 0.4, 1.1, 2.0, 3.3, 4.0])))
    with pytest.raises(FrameConditionError, match="Gram"):
        frames.build_frame(basis, np.ones(n), bad)


def test_rejects_too_few_columns():
    n = 5
    basis = spectral.dft_basis(n)
    with pytest.raises(ParameterError, match="at least"):
        frames.build_frame(basis, np.ones(n), omega_power_matrix(n)[:, :3])


def test_atom_columns_match_filtered_window():
    rng = np.random.default_rng(8)
    basis = bipartite_normal_basis()
    n = basis.n
    window = rng.standard_normal(n)
    responses = omega_power_matrix(n)
    frame = frames.build_frame(basis, window, responses)
    ghat = spectral.gft(basis, frame.window, "forward")
    for j in (0, 3, 7):
        shifted = filters.make_filter(basis, responses[:, j]).matrix @ frame.window
        for k in (0, 2, 5):
            atom = frame.atoms[:, j * n + k]
            assert np.max(np.abs(atom - shifted * basis.matrix[:, k])) <= 1e-10
    # weight identity C_n = sum_l |ghat_l|^2 |u_l(n)|^2, recomputed directly
    direct = (np.abs(basis.matrix) ** 2) @ (np.abs(ghat) ** 2)
    assert np.max(np.abs(frame.weights - direct)) <= 1e-10
    assert frame.bounds == (frame.weights.min(), frame.weights.max())


# --- power responses and the unitary factorization -------------------------------


def test_power_responses_roots_of_unity_unitary():
    mat = omega_power_matrix(8)
    assert np.max(np.abs(mat.conj().T @ mat - np.eye(8))) <= 1e-12


def test_power_responses_small_cases():
    assert np.allclose(frames.power_responses([1.0]), [[1.0]])
    mat = frames.power_responses([1.0, -1.0])
    assert np.allclose(mat, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    assert np.max(np.abs(mat.conj().T @ mat - np.eye(2))) <= 1e-12


def test_factorization_identity_nodes():
    factors = frames.dft_factorization(np.exp(2j * np.pi * np.arange(4) / 4))
    assert factors is not None
    assert np.array_equal(factors.perm, np.arange(4))
    assert abs(factors.scalar - 1.0) <= 1e-12
    assert factors.reproduction_error <= 1e-12


def test_factorization_shuffled_and_rotated():
    rng = np.random.default_rng(17)
    n = 8
    c = np.exp(1j * 0.31)
    perm = rng.permutation(n)
    a = c * np.exp(2j * np.pi * perm / n)
    factors = frames.dft_factorization(a)
    assert factors is not None
    assert abs(factors.scalar - c) <= 1e-10
    assert np.max(np.abs(factors.reconstruct() - frames.power_responses(a))) <= 1e-10


def test_factorization_rejects_wrong_gaps():
    assert frames.dft_factorization(np.array([1.0, 1j, -1.0])) is None


def test_factorization_rejects_nonunit_modulus():
    assert frames.dft_factorization(np.array([1.0, 2.0, 3.0])) is None


def test_factorization_rejects_duplicates():
    assert frames.dft_factorization(np.array([1.0, 1.0, -1.0])) is None


def test_factorization_iff_gram_small():
    rng = np.random.default_rng(23)
    n = 6
    for trial in range(40):
        if trial % 2 == 0:
            c = np.exp(1j * rng.uniform(0, 2 * np.pi))
            a = c * np.exp(2j * np.pi * rng.permutation(n) / n)
        else:
            a = np.exp(1j * np.sort(rng.uniform(0, 2 * np.pi, n)))
        mat = frames.power_responses(a)
        gram = np.max(np.abs(mat.conj().T @ mat - np.eye(n)))
        factors = frames.dft_factorization(a, tol=1e-9)
        assert (factors is not None) == (gram <= 10 * 1e-9)


# --- analysis / synthesis ------------------------------------------------------------


def test_analyze_zero_signal():
    basis = spectral.dft_basis(5)
    frame = frames.build_frame(basis, np.ones(5), omega_power_matrix(5))
    assert np.max(np.abs(frames.analyze(frame, np.zeros(5)))) == 0.0


def test_frame_inequality_and_parseval():
    rng = np.random.default_rng(4)
    basis = bipartite_normal_basis()
    n = basis.n
    frame = frames.build_frame(basis, signals.gaussian_signal(n), omega_power_matrix(n))
    alpha, beta = frame.bounds
    for _ in range(100):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        coeffs = frames.analyze(frame, f)
        total = np.sum(np.abs(coeffs) ** 2)
        nrm = np.linalg.norm(f) ** 2
        slack = 1e-9 * beta * nrm
        assert alpha * nrm - slack <= total <= beta * nrm + slack
        weighted = np.sum(frame.weights * np.abs(f) ** 2)
        assert abs(total - weighted) <= 1e-9 * weighted


def test_tight_frame_coefficient_energy():
    rng = np.random.default_rng(6)
    n = 16
    basis = spectral.dft_basis(n)
    frame = frames.build_frame(basis, signals.gaussian_signal(n), omega_power_matrix(n))
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    total = np.sum(np.abs(frames.analyze(frame, f)) ** 2)
    expected = np.linalg.norm(frame.window) ** 2 / n * np.linalg.norm(f) ** 2
    assert abs(total - expected) <= 1e-9 * expected


@pytest.mark.parametrize(
    "make_basis,window",
    [
        (lambda: spectral.dft_basis(32), signals.gaussian_signal(32)),
        (bipartite_normal_basis, signals.pulse_signal(8, at=4) + 0.4),
        (
            lambda: spectral.as_fourier_basis(
                spectral.eigendecompose(graphs.gen_sensor(10, radius=0.6, seed=9).laplacian())
            ),
            np.linspace(0.2, 1.0, 10),
        ),
    ],
    ids=("ring-dft", "bipartite-normal", "sensor-real"),
)
def test_roundtrip_reconstruction(make_basis, window):
    basis = make_basis()
    n = basis.n
    frame = frames.build_frame(basis, window, omega_power_matrix(n))
    rng = np.random.default_rng(42)
    for _ in range(10):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        rec = frames.synthesize(frame, frames.analyze(frame, f))
        assert np.max(np.abs(rec - f)) <= 1e-9 * max(1.0, np.max(np.abs(f)))


def test_roundtrip_with_wide_response_matrix():
    # J > N: stack two unitary blocks scaled by 1/sqrt(2); rows stay orthonormal
    n = 10
    basis = spectral.dft_basis(n)
    u1 = omega_power_matrix(n)
    u2 = np.eye(n, dtype=complex)
    wide = np.hstack([u1, u2]) / np.sqrt(2.0)
    frame = frames.build_frame(basis, signals.gaussian_signal(n), wide)
    assert frame.j_count == 2 * n
    rng = np.random.default_rng(1)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    rec = frames.synthesize(frame, frames.analyze(frame, f))
    assert np.max(np.abs(rec - f)) <= 1e-9


def test_delta_reconstruction_on_bipartite():
    basis = bipartite_normal_basis()
    frame = frames.build_frame(basis, signals.gaussian_signal(8), omega_power_matrix(8))
    f = signals.pulse_signal(8, at=4).astype(complex)  # delta at vertex 5 (1-based)
    rec = frames.synthesize(frame, frames.analyze(frame, f))
    assert np.max(np.abs(rec - f)) <= 1e-9


def test_synthesize_zero_coefficients():
    basis = spectral.dft_basis(4)
    frame = frames.build_frame(basis, np.ones(4), omega_power_matrix(4))
    assert np.max(np.abs(frames.synthesize(frame, np.zeros((4, 4))))) == 0.0


def test_shape_validation():
    basis = spectral.dft_basis(4)
    frame = frames.build_frame(basis, np.ones(4), omega_power_matrix(4))
    with pytest.raises(ParameterError):
        frames.analyze(frame, np.ones(5))
    with pytest.raises(ParameterError):
        frames.synthesize(frame, np.zeros((3, 4)))
    with pytest.raises(ParameterError):
        frames.build_frame(basis, np.zeros(4), omega_power_matrix(4))


# --- files ----------------------------------------------------------------------------


def test_frame_json_and_coefficients_csv(tmp_path):
    basis = spectral.dft_basis(6)
    frame = frames.build_frame(basis, signals.gaussian_signal(6), omega_power_matrix(6))
    frames.save_frame(frame, tmp_path / "frame.json")
    import json

    d = json.loads((tmp_path / "frame.json").read_text())
    assert d["n"] == 6 and d["J"] == 6
    assert abs(d["alpha"] - frame.bounds[0]) == 0.0

    rng = np.random.default_rng(0)
    f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    coeffs = frames.analyze(frame, f)
    frames.save_coefficients(coeffs, tmp_path / "c.csv")
    back = frames.load_coefficients(tmp_path / "c.csv")
    assert np.array_equal(back, coeffs)
