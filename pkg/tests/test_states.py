import numpy as np
import pytest

from minlab.qmat import InputDomainError, reduce_pure, schmidt_spectrum
from minlab.states import (
    FAMILIES,
    GENERIC_BASIS,
    AcinParams,
    GenericCoeffs,
    SamplerSpec,
    acin_state,
    draw_parameters,
    generic4_state,
    gghz_state,
    sample,
    sample_batch,
    special_state,
    w_state,
)

H = np.sqrt(0.5)


def ket(bits: str) -> np.ndarray:
    v = np.zeros(1 << len(bits), dtype=complex)
    v[int(bits, 2)] = 1
    return v


GHZ3 = (ket("000") + ket("111")) * H
GHZ4 = (ket("0000") + ket("1111")) * H


def test_acin_ghz():
    assert np.allclose(acin_state(AcinParams((H, 0, 0, 0, H))).amplitudes, GHZ3, atol=1e-15)


def test_acin_x0_w_point():
    psi = acin_state(AcinParams((H, 0, 0.5, 0.5, 0)))
    assert np.allclose(psi.amplitudes, H * ket("000") + 0.5 * ket("101") + 0.5 * ket("110"))


def test_acin_phase_slot():
    psi = acin_state(AcinParams((0.6, 0.8, 0, 0, 0), theta=np.pi / 2))
    assert psi.amplitudes[4] == pytest.approx(0.8j)


def test_acin_rejects_unnormalized():
    with pytest.raises(InputDomainError):
        AcinParams((1, 1, 0, 0, 0))


def test_gghz():
    assert np.allclose(gghz_state(3, H, H).amplitudes, GHZ3)
    assert np.allclose(gghz_state(4, H, H).amplitudes, generic4_state(GenericCoeffs((H, H, 0, 0))).amplitudes)
    assert schmidt_spectrum(gghz_state(3, 0.8, 0.6), [0]).values == pytest.approx((0.64, 0.36), abs=1e-14)
    with pytest.raises(InputDomainError):
        gghz_state(3, 1, 1)


def test_w_state():
    w3 = w_state([3**-0.5] * 3)
    assert np.allclose(w3.amplitudes, (ket("100") + ket("010") + ket("001")) / np.sqrt(3))
    prod = w_state([1, 0, 0])
    assert np.allclose(prod.amplitudes, ket("100"))
    support = np.nonzero(w_state([0.5] * 4).amplitudes)[0]
    assert all(bin(i).count("1") == 1 for i in support)
    with pytest.raises(InputDomainError):
        w_state([H, H])


def test_generic_basis():
    assert np.allclose(generic4_state(GenericCoeffs((1, 0, 0, 0))).amplitudes, 0.5 * (ket("0000") + ket("0011") + ket("1100") + ket("1111")))
    # u2 = |psi+>|psi+>
    psi_plus = (ket("01") + ket("10")) * H
    assert np.allclose(generic4_state(GenericCoeffs((0, 0, 1, 0))).amplitudes, np.kron(psi_plus, psi_plus))
    assert np.allclose(GENERIC_BASIS @ GENERIC_BASIS.conj().T, np.eye(4))
    # GHZ4 from (u0 + u1)/sqrt2
    assert np.allclose(generic4_state(GenericCoeffs((H, H, 0, 0))).amplitudes, GHZ4)


def _coeffs(psi):
    return GENERIC_BASIS.conj() @ psi.amplitudes


@pytest.mark.parametrize("name", ["L", "M4"])
def test_special_states_in_class_M(name):
    z = _coeffs(special_state(name))
    assert abs(np.sum(np.abs(z) ** 2) - 1) < 1e-12
    assert abs(np.sum(z**2)) < 1e-12


def test_special_L_coefficients():
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(_coeffs(special_state("L")), np.array([1, w, w * w, 0]) / np.sqrt(3))


def test_cluster4_reductions():
    psi = special_state("cluster4")
    for pair in ([0, 2], [0, 3]):
        assert np.allclose(reduce_pure(psi.amplitudes, pair), np.eye(4) / 4, atol=1e-15)
    assert np.allclose(reduce_pure(psi.amplitudes, [0, 1]), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def _spec(family):
    return SamplerSpec(family, seed=11, n=5 if family == "wn" else None)


@pytest.mark.parametrize("family", FAMILIES)
def test_sampler_determinism_and_batching(family):
    spec = _spec(family)
    batch = sample_batch(spec, np.arange(40))
    for i in (0, 17, 39):
        assert np.array_equal(sample(spec, i).amplitudes, batch[i])
        assert np.array_equal(sample(spec, i).amplitudes, sample(spec, i).amplitudes)
    assert np.max(np.abs(np.linalg.norm(batch, axis=1) - 1)) < 1e-12


def test_class_M_constraints():
    z = draw_parameters(_spec("class_M"), np.arange(2000))["z"]
    assert np.max(np.abs(np.sum(z**2, axis=1))) < 1e-10
    assert np.max(np.abs(np.sum(np.abs(z) ** 2, axis=1) - 1)) < 1e-10
    x, y = z.real, z.imag
    assert np.max(np.abs(np.sum(x * x, axis=1) - 0.5)) < 1e-10
    assert np.max(np.abs(np.sum(y * y, axis=1) - 0.5)) < 1e-10
    assert np.max(np.abs(np.sum(x * y, axis=1))) < 1e-10


def test_class_taumin_real():
    z = draw_parameters(_spec("class_taumin"), np.arange(500))["z"]
    assert np.all(z.imag == 0)


@pytest.mark.parametrize("family", ["acin_full", "acin_x0", "wclass3", "wclass3_x0"])
def test_acin_family_constraints(family):
    p = draw_parameters(_spec(family), np.arange(1000))
    lam, theta = p["lam"], p["theta"]
    assert np.all(lam >= 0)
    assert np.max(np.abs(np.sum(lam**2, axis=1) - 1)) < 1e-12
    assert np.all((theta >= 0) & (theta <= np.pi))
    if family.endswith("x0"):
        assert np.allclose(lam[:, 0] ** 2, 0.5, atol=1e-15) and np.all(lam[:, 1] == 0)
    if family.startswith("wclass"):
        assert np.all(lam[:, 4] == 0)
    for i in (0, 999):
        AcinParams(tuple(lam[i]), float(theta[i]))


def test_wn_positive_orthant():
    a = draw_parameters(_spec("wn"), np.arange(300))["amps"]
    assert np.all(a >= 0) and a.shape == (300, 5)


def test_sampler_spec_validation():
    with pytest.raises(InputDomainError):
        SamplerSpec("nope")
    with pytest.raises(InputDomainError):
        SamplerSpec("wn", n=2)
