"""Dense complex linear algebra for small qubit registers.

Qubit ordering is big-endian throughout the package: qubit 0 (party A) is
the most significant bit of a computational-basis index, so ``|q0 q1 ... >``
maps to index ``q0 * 2**(n-1) + ... + q_{n-1}``.  Every other module relies
on this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-12

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class InputDomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


def _num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise InputDomainError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over an ordered qubit register."""

    amplitudes: np.ndarray
    num_qubits: int = field(init=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        n = _num_qubits(amps.size)
        if n < 1:
            raise InputDomainError("a pure state needs at least one qubit")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise InputDomainError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "num_qubits", n)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on qubits."""

    matrix: np.ndarray
    num_qubits: int = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputDomainError(f"density matrix must be square, got {m.shape}")
        n = _num_qubits(m.shape[0])
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise InputDomainError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise InputDomainError(f"density matrix trace is {np.trace(m).real!r}")
        # eigenvalues >= -PSD_TOL  <=>  m + PSD_TOL * I is positive definite
        try:
            np.linalg.cholesky(m + PSD_TOL * np.eye(m.shape[0]))
        except np.linalg.LinAlgError:
            raise InputDomainError("density matrix is not positive semidefinite") from None
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "num_qubits", n)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SchmidtSpectrum:
    values: tuple[float, ...]

    def __post_init__(self):
        if abs(sum(self.values) - 1.0) > 1e-10:
            raise InputDomainError("Schmidt coefficients do not sum to one")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; entry (i*rB + k, j*cB + l) is a[i, j] * b[k, l]."""
    a = np.asarray(a)
    b = np.asarray(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def hs_norm_sq(a: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm tr(A^dagger A)."""
    a = np.asarray(a)
    return float(np.sum(a.real**2 + a.imag**2))


def _check_keep(keep: Sequence[int], n: int) -> tuple[int, ...]:
    keep = tuple(int(k) for k in keep)
    if not keep:
        raise InputDomainError("keep must be non-empty")
    if len(set(keep)) != len(keep):
        raise InputDomainError(f"repeated qubit index in {keep}")
    for k in keep:
        if not 0 <= k < n:
            raise InputDomainError(f"qubit index {k} out of range for {n} qubits")
    return keep


def reduce_matrix(matrix: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Partial trace on a raw square array, keeping qubits in the given order.

    Leading batch axes are allowed: ``matrix`` may have shape
    ``(..., 2**n, 2**n)``.
    """
    matrix = np.asarray(matrix)
    batch = matrix.shape[:-2]
    n = _num_qubits(matrix.shape[-1])
    keep = _check_keep(keep, n)
    traced = [q for q in range(n) if q not in keep]
    nb = len(batch)
    t = matrix.reshape(batch + (2,) * (2 * n))
    rows = [nb + q for q in keep + tuple(traced)]
    cols = [nb + n + q for q in keep + tuple(traced)]
    t = np.transpose(t, list(range(nb)) + rows + cols)
    dk, dt = 1 << len(keep), 1 << len(traced)
    t = t.reshape(batch + (dk, dt, dk, dt))
    return np.einsum("...ajbj->...ab", t)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on ``keep``; output qubits follow the order of ``keep``."""
    return DensityMatrix(reduce_matrix(rho.matrix, keep))


def reduce_pure(amplitudes: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a state vector (batched over leading axes)."""
    amps = np.asarray(amplitudes)
    batch = amps.shape[:-1]
    n = _num_qubits(amps.shape[-1])
    keep = _check_keep(keep, n)
    traced = [q for q in range(n) if q not in keep]
    nb = len(batch)
    t = amps.reshape(batch + (2,) * n)
    t = np.transpose(t, list(range(nb)) + [nb + q for q in keep + tuple(traced)])
    t = t.reshape(batch + (1 << len(keep), 1 << len(traced)))
    return t @ np.conj(np.swapaxes(t, -1, -2))


def _eigvals_2x2(h: np.ndarray) -> np.ndarray:
    a = h[..., 0, 0].real
    d = h[..., 1, 1].real
    b = h[..., 0, 1]
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), np.abs(b))
    return np.stack([mean - rad, mean + rad], axis=-1)


def jacobi_eigvals(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of (batched) Hermitian matrices by cyclic Jacobi sweeps.

    ``h`` has shape ``(..., m, m)``.  Sweeps stop once every matrix in the
    batch has off-diagonal norm below ``JACOBI_TOL`` (relative to its norm
    when that exceeds one) or after ``JACOBI_MAX_SWEEPS``.
    """
    h = np.asarray(h, dtype=complex)
    batch = h.shape[:-2]
    size = h.shape[-1]
    a = h.reshape((-1, size, size)).copy()
    diag_idx = np.arange(size)
    offmask = ~np.eye(size, dtype=bool)
    tol = JACOBI_TOL * np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2))))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if np.all(off < tol):
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                c = a[:, p, q]
                g = np.abs(c)
                # U = diag(1, conj(phase)) @ [[cos, -sin], [sin, cos]] zeroes a[p, q]
                tiny = g < 1e-300
                phase = np.where(tiny, 1.0, np.exp(1j * np.angle(c)))
                theta = np.where(tiny, 0.0, 0.5 * np.arctan2(2.0 * g, a[:, p, p].real - a[:, q, q].real))
                cs, sn = np.cos(theta), np.sin(theta)
                u = np.empty((a.shape[0], 2, 2), dtype=complex)
                u[:, 0, 0] = cs
                u[:, 0, 1] = -sn
                u[:, 1, 0] = sn * np.conj(phase)
                u[:, 1, 1] = cs * np.conj(phase)
                idx = [p, q]
                a[:, :, idx] = a[:, :, idx] @ u
                a[:, idx, :] = np.conj(np.swapaxes(u, 1, 2)) @ a[:, idx, :]
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    vals = np.sort(a[:, diag_idx, diag_idx].real, axis=-1)
    return vals.reshape(batch + (size,))


def herm_eigvals(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    Sides 1 and 2 use closed forms; larger matrices go through cyclic
    complex Jacobi sweeps.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InputDomainError(f"expected a square matrix, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-10:
        raise InputDomainError("matrix is not Hermitian")
    side = h.shape[0]
    if side == 1:
        return np.array([h[0, 0].real])
    if side == 2:
        return _eigvals_2x2(h)
    return jacobi_eigvals(h)


def clip_spectrum(values: np.ndarray) -> np.ndarray:
    """Zero out roundoff negatives in [-PSD_TOL, 0)."""
    values = np.asarray(values, dtype=float).copy()
    values[(values < 0) & (values >= -PSD_TOL)] = 0.0
    return values


def _check_cut(cut: Sequence[int], n: int) -> tuple[int, ...]:
    cut = tuple(sorted(_check_keep(cut, n)))
    if len(cut) == n:
        raise InputDomainError("cut must be a proper subset of the qubits")
    return cut


def schmidt_spectrum(psi: PureState, cut: Sequence[int]) -> SchmidtSpectrum:
    """Schmidt coefficients s_i (squared singular values) across ``cut``."""
    if len(tuple(cut)) == 0:
        raise InputDomainError("cut must be non-empty")
    cut = _check_cut(cut, psi.num_qubits)
    rho_a = reduce_pure(psi.amplitudes, cut)
    vals = clip_spectrum(herm_eigvals(rho_a))[::-1]
    return SchmidtSpectrum(tuple(float(v) for v in vals))
