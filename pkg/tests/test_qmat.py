import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_density, random_hermitian
from minlab.qmat import (
    DensityMatrix,
    InputDomainError,
    PureState,
    herm_eigvals,
    hs_norm_sq,
    kron,
    partial_trace,
    schmidt_spectrum,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
BELL = PureState(np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_sigma_z():
    assert np.array_equal(kron(SZ, SZ), np.diag([1, -1, -1, 1]))


def test_kron_matches_index_formula(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    out = kron(a, b)
    assert out.shape == (4, 6)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(3):
                    assert abs(out[i * 2 + k, j * 3 + l] - a[i, j] * b[k, l]) < 1e-15


def test_kron_associative(rng):
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) < 1e-12


def test_partial_trace_bell():
    out = partial_trace(BELL.density(), [0])
    assert np.allclose(out.matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_ghz3():
    ghz = np.zeros(8)
    ghz[[0, 7]] = np.sqrt(0.5)
    out = partial_trace(PureState(ghz).density(), [0, 1])
    # direct sum over the traced basis: <ab0|..|a'b'0> + <ab1|..|a'b'1>
    expect = np.zeros((4, 4))
    expect[0, 0] = expect[3, 3] = 0.5
    assert np.allclose(out.matrix, expect, atol=1e-15)


def test_partial_trace_product(rng):
    rho = random_density(rng, 1)
    sigma = random_density(rng, 2)
    out = partial_trace(DensityMatrix(kron(rho, sigma)), [0])
    assert np.allclose(out.matrix, rho, atol=1e-12)
    out = partial_trace(DensityMatrix(kron(rho, sigma)), [1, 2])
    assert np.allclose(out.matrix, sigma, atol=1e-12)


def test_partial_trace_respects_keep_order(rng):
    rho = random_density(rng, 1)
    sigma = random_density(rng, 1)
    out = partial_trace(DensityMatrix(kron(rho, sigma)), [1, 0])
    assert np.allclose(out.matrix, kron(sigma, rho), atol=1e-12)


@pytest.mark.parametrize("keep", [[], [0, 0], [3]])
def test_partial_trace_rejects_bad_keep(keep):
    with pytest.raises(InputDomainError):
        partial_trace(BELL.density(), keep)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.data())
def test_partial_trace_is_a_state(seed, n, data):
    rng = np.random.default_rng(seed)
    keep = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
    out = partial_trace(DensityMatrix(random_density(rng, n, rank=2)), keep)
    m = out.matrix
    assert np.max(np.abs(m - m.conj().T)) <= 1e-12
    assert abs(np.trace(m).real - 1) <= 1e-12
    assert min(np.linalg.eigvalsh(m)) >= -1e-10


def test_hs_norm_sq():
    assert hs_norm_sq(np.eye(2)) == 2
    assert hs_norm_sq(np.zeros((3, 3))) == 0
    assert abs(hs_norm_sq(SX / np.sqrt(2)) - 1) < 1e-15


def test_herm_eigvals_examples():
    assert np.array_equal(herm_eigvals(SZ), [-1, 1])
    assert np.array_equal(herm_eigvals(np.diag([0, 0, 0.25])), [0, 0, 0.25])


@pytest.mark.parametrize("side", [2, 3, 4, 6, 16])
def test_herm_eigvals_char_poly_residual(rng, side):
    h = random_hermitian(rng, side)
    vals = herm_eigvals(h)
    assert np.all(np.diff(vals) >= 0)
    scale = max(1.0, np.abs(vals).max())
    for lam in vals:
        # |det(H - lam I)| relative to the spread of the spectrum
        others = np.abs(vals - lam)
        others = others[others > 1e-12]
        assert abs(np.linalg.det(h - lam * np.eye(side))) < 1e-8 * scale * max(1.0, np.prod(others))
    assert abs(vals.sum() - np.trace(h).real) < 1e-9


def test_herm_eigvals_4x4_det_residual(rng):
    h = random_hermitian(rng, 4) / 4
    for lam in herm_eigvals(h):
        assert abs(np.linalg.det(h - lam * np.eye(4))) < 1e-8


def test_herm_eigvals_unitary_invariance(rng):
    h = random_hermitian(rng, 5)
    q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    assert np.max(np.abs(herm_eigvals(h) - herm_eigvals(q @ h @ q.conj().T))) < 1e-8


def test_herm_eigvals_repeated_eigenvalues(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    h = q @ np.diag([0.0, 0.0, 0.25]) @ q.conj().T
    assert np.max(np.abs(herm_eigvals((h + h.conj().T) / 2) - [0, 0, 0.25])) < 1e-14


def test_herm_eigvals_rejects_non_hermitian():
    with pytest.raises(InputDomainError):
        herm_eigvals(np.array([[0, 1], [0, 0]]))


def test_density_matrix_validation():
    with pytest.raises(InputDomainError):
        DensityMatrix(np.eye(2))
    with pytest.raises(InputDomainError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(InputDomainError):
        PureState([1, 1])


def test_schmidt_examples():
    assert schmidt_spectrum(BELL, [0]).values == pytest.approx((0.5, 0.5), abs=1e-15)
    assert schmidt_spectrum(PureState([1, 0, 0, 0]), [0]).values == (1.0, 0.0)
    ggzh = np.zeros(8)
    ggzh[0], ggzh[7] = 0.8, 0.6
    assert schmidt_spectrum(PureState(ggzh), [0]).values == pytest.approx((0.64, 0.36), abs=1e-14)


def test_schmidt_rejects_improper_cut():
    with pytest.raises(InputDomainError):
        schmidt_spectrum(BELL, [])
    with pytest.raises(InputDomainError):
        schmidt_spectrum(BELL, [0, 1])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.data())
def test_schmidt_symmetry(seed, n, data):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    psi = PureState(v / np.linalg.norm(v))
    cut = data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n - 1, unique=True))
    rest = [q for q in range(n) if q not in cut]
    a = np.array(schmidt_spectrum(psi, cut).values)
    b = np.array(schmidt_spectrum(psi, rest).values)
    k = max(a.size, b.size)
    a, b = np.pad(a, (0, k - a.size)), np.pad(b, (0, k - b.size))
    assert np.max(np.abs(a - b)) <= 1e-10
    assert abs(a.sum() - 1) <= 1e-10
