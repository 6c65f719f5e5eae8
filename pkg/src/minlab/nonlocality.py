"""Measurement-induced non-locality (MIN) of qubit-pivot bipartitions.

MIN of a state rho on A|B is the largest squared Hilbert-Schmidt disturbance
||rho - Pi(rho)||^2 over von Neumann measurements Pi on A that leave the
marginal rho_A unchanged.  Three routes are provided:

* ``min_pure``: pure global states, N = 1 - sum_i s_i^2 over the Schmidt
  coefficients.
* ``min_2xn``: any state with a single-qubit side A, through the correlation
  matrix T and coherent vector x of its orthonormal operator expansion.
* ``min_bruteforce``: direct maximization over measurement directions, kept
  independent of T and x so it can serve as an oracle.

``min3_closed`` and ``min4_closed`` evaluate the explicit three-qubit
(canonical form) and four-qubit (generic class) specializations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .qmat import (
    DensityMatrix,
    InputDomainError,
    PureState,
    jacobi_eigvals,
    hs_norm_sq,
    kron,
    reduce_matrix,
    schmidt_spectrum,
)
from .states import AcinParams, GenericCoeffs

EPSILON_X = 1e-10
NEAR_DEGENERATE_X = 1e-6
VALUE_CLIP = 1e-12

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
# X_1..X_3 of the qubit side: Pauli matrices normalized so tr(X_i X_j) = delta_ij
QUBIT_BASIS = SIGMA / np.sqrt(2)


@lru_cache(maxsize=None)
def gell_mann_basis(n: int) -> np.ndarray:
    """Generalized Gell-Mann matrices Y_1..Y_{n^2-1} with tr(Y_i Y_j) = delta_ij."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            mats.append(s)
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = -1j / np.sqrt(2)
            a[k, j] = 1j / np.sqrt(2)
            mats.append(a)
    for l in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        d[np.arange(l), np.arange(l)] = 1.0
        d[l, l] = -l
        mats.append(d / np.sqrt(l * (l + 1)))
    out = np.array(mats).reshape(n * n - 1, n, n)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CorrelationData:
    """Expansion coefficients of rho = sum c_ij X_i (x) Y_j.

    ``T[i-1, j-1] = c_ij`` for i, j >= 1, ``x[i-1] = c_i0`` (qubit side) and
    ``y[j-1] = c_0j`` (the n-dimensional side).
    """

    T: np.ndarray
    x: np.ndarray
    y: np.ndarray

    @property
    def ttt(self) -> np.ndarray:
        return self.T @ self.T.T


@dataclass(frozen=True)
class MinResult:
    value: float
    branch: str
    spectrum: tuple[float, ...] = ()
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch axis e of the qubit measurement {(I + e.sigma)/2, (I - e.sigma)/2}."""

    e: tuple[float, float, float]

    def __post_init__(self):
        e = tuple(float(v) for v in self.e)
        if abs(np.linalg.norm(e) - 1.0) > 1e-12:
            raise InputDomainError("measurement direction must be a unit vector")
        object.__setattr__(self, "e", e)


def _clip(value: float) -> float:
    if -VALUE_CLIP <= value < 0:
        return 0.0
    return float(value)


def _split(rho: DensityMatrix) -> int:
    if rho.num_qubits < 2:
        raise InputDomainError("need a qubit side A and a non-empty side B")
    return rho.dim // 2


def correlation_data(rho: DensityMatrix) -> CorrelationData:
    """Correlation matrix and coherent vector of ``rho`` split after qubit 0."""
    nb = _split(rho)
    t4 = rho.matrix.reshape(2, nb, 2, nb)
    ybasis = gell_mann_basis(nb)
    # tr(rho (A (x) B)) = sum rho[a, b, c, d] A[c, a] B[d, b]
    T = np.einsum("abcd,ica,jdb->ij", t4, QUBIT_BASIS, ybasis)
    x = np.einsum("abcd,ica,db->i", t4, QUBIT_BASIS, np.eye(nb) / np.sqrt(nb))
    y = np.einsum("abcd,ca,jdb->j", t4, np.eye(2) / np.sqrt(2), ybasis)
    return CorrelationData(T.real.copy(), x.real.copy(), y.real.copy())


def reconstruct(data: CorrelationData, nb: int) -> np.ndarray:
    """Rebuild rho from its expansion coefficients (inverse of ``correlation_data``)."""
    ybasis = gell_mann_basis(nb)
    x0 = np.eye(2) / np.sqrt(2)
    y0 = np.eye(nb) / np.sqrt(nb)
    rho = kron(x0, y0) / np.sqrt(2 * nb)
    rho = rho + sum(xi * kron(X, y0) for xi, X in zip(data.x, QUBIT_BASIS))
    rho = rho + sum(yj * kron(x0, Y) for yj, Y in zip(data.y, ybasis))
    rho = rho + np.einsum("ij,iab,jcd->acbd", data.T, QUBIT_BASIS, ybasis).reshape(2 * nb, 2 * nb)
    return rho


def min_pure(psi: PureState, cut: Sequence[int]) -> MinResult:
    spec = schmidt_spectrum(psi, cut)
    return MinResult(_clip(1.0 - sum(s * s for s in spec.values)), "pure")


def _two_branch(ttt: np.ndarray, x: np.ndarray, epsilon_x: float) -> MinResult:
    spectrum = jacobi_eigvals(ttt)
    trace = float(np.trace(ttt))
    xnorm = float(np.linalg.norm(x))
    zero_value = trace - spectrum[0]
    spec = tuple(float(v) for v in spectrum)
    if xnorm > epsilon_x:
        value = trace - float(x @ ttt @ x) / (xnorm * xnorm)
        diagnostics = {}
        if xnorm < NEAR_DEGENERATE_X:
            diagnostics = {"x_norm": xnorm, "x_nonzero_value": value, "x_zero_value": zero_value}
        return MinResult(_clip(value), "x_nonzero", spec, diagnostics)
    return MinResult(_clip(zero_value), "x_zero", spec)


def min_2xn(rho: DensityMatrix, epsilon_x: float = EPSILON_X) -> MinResult:
    """MIN with a one-qubit measured side, from the (T, x) expansion.

    For ||x|| > epsilon_x the value is tr(TT^t) - x^t TT^t x / ||x||^2,
    otherwise tr(TT^t) minus the smallest eigenvalue of TT^t.  Inputs with
    ||x|| just above the threshold (below 1e-6) carry both branch values in
    ``diagnostics`` because the two formulas disagree across the boundary.
    """
    data = correlation_data(rho)
    return _two_branch(data.ttt, data.x, epsilon_x)


def measurement_residual(rho: np.ndarray, e: Sequence[float]) -> float:
    """||rho - sum_k (P_k (x) I) rho (P_k (x) I)||^2 for the qubit projectors along e."""
    rho = np.asarray(rho)
    nb = rho.shape[0] // 2
    es = np.einsum("i,iab->ab", np.asarray(e, dtype=float), SIGMA)
    ident = np.eye(nb)
    out = np.zeros_like(rho)
    for sign in (1.0, -1.0):
        p = kron((np.eye(2) + sign * es) / 2, ident)
        out = out + p @ rho @ p
    return hs_norm_sq(rho - out)


def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * np.arange(count)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _tangent_basis(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[int(np.argmin(np.abs(e)))]
    t1 = np.cross(e, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(e, t1)


def _refine(rho: np.ndarray, e: np.ndarray, step: float, tol: float = 1e-7) -> tuple[np.ndarray, float]:
    best = measurement_residual(rho, e)
    while step >= tol:
        t1, t2 = _tangent_basis(e)
        moved = False
        for d in (t1, -t1, t2, -t2):
            cand = e + step * d
            cand /= np.linalg.norm(cand)
            val = measurement_residual(rho, cand)
            if val > best:
                best, e, moved = val, cand, True
        if not moved:
            step /= 2
    return e, best


def min_bruteforce(rho: DensityMatrix, grid_points: int = 20000) -> MinResult:
    """Direct maximization of the measurement disturbance over admissible directions.

    A non-degenerate qubit marginal admits only its eigenbasis (unique up to
    sign).  A degenerate one admits every axis: a Fibonacci-sphere grid is
    scanned, then the best point is polished by a shrinking pattern search.
    """
    nb = _split(rho)
    m = rho.matrix
    rho_a = reduce_matrix(m, [0])
    bloch = np.einsum("ab,iba->i", rho_a, SIGMA).real
    gap = float(np.linalg.norm(bloch))
    if gap > 1e-8:
        e = bloch / gap
        return MinResult(_clip(measurement_residual(m, e)), "oracle", (), {"direction": tuple(e), "gap": gap})

    grid = fibonacci_sphere(grid_points)
    # ||rho - Pi_e(rho)||^2 = (||rho||^2 - tr(rho M rho M)) / 2 with M = e.sigma (x) I,
    # and tr(rho M rho M) = e^t G e; used only to pick the starting direction
    ops = [kron(s, np.eye(nb)) for s in SIGMA]
    g = np.array([[np.trace(m @ a @ m @ b).real for b in ops] for a in ops])
    scores = 0.5 * (hs_norm_sq(m) - np.einsum("ki,ij,kj->k", grid, g, grid))
    start = grid[int(np.argmax(scores))]
    step = np.sqrt(4 * np.pi / grid_points)
    e, value = _refine(m, start.copy(), step)
    return MinResult(_clip(value), "oracle", (), {"direction": tuple(e), "gap": gap})


# --- three-qubit canonical form ------------------------------------------------


@dataclass(frozen=True)
class ClosedFormTerms3:
    """Scalar terms of the closed forms; a, b, c belong to rho_AB and g, f, k to rho_AC.

    In the ``x_zero`` branch b is the shared off-diagonal term and f equals b.
    """

    branch: str
    a: float
    b: float
    c: float
    g: float
    f: float
    k: float


def _coherent3(p: AcinParams) -> np.ndarray:
    l0, l1 = p.lam[0], p.lam[1]
    return np.array([l0 * l1 * np.cos(p.theta), l0 * l1 * np.sin(p.theta), l0 * l0 - 0.5])


def correlation3(p: AcinParams, pair: str) -> np.ndarray:
    """Correlation matrix of rho_AB (or rho_AC, by exchanging lambda_2 and lambda_3)."""
    l0, l1, l2, l3, l4 = p.lam
    if pair == "AC":
        l2, l3 = l3, l2
    elif pair != "AB":
        raise InputDomainError(f"pair must be AB or AC, got {pair!r}")
    c, s = np.cos(p.theta), np.sin(p.theta)
    return np.array(
        [
            [l0 * l3, 0.0, l0 * l1 * c],
            [0.0, -l0 * l3, l0 * l1 * s],
            [-l1 * l3 * c - l2 * l4, l1 * l3 * s, 0.5 - l1 * l1 - l2 * l2],
        ]
    )


def closed_form_terms3(p: AcinParams, epsilon_x: float = EPSILON_X) -> ClosedFormTerms3:
    l0, l1, l2, l3, l4 = p.lam
    c, s = np.cos(p.theta), np.sin(p.theta)
    if np.linalg.norm(_coherent3(p)) <= epsilon_x:
        a = l0**2 * l3**2
        b = -l0 * l2 * l3 * l4
        cc = l2**2 * l4**2 + (0.5 - l2**2) ** 2
        g = l0**2 * l2**2
        k = l3**2 * l4**2 + (0.5 - l3**2) ** 2
        return ClosedFormTerms3("x_zero", a, b, cc, g, b, k)
    a = l0**2 * l3**2 + l0**2 * l1**2 * c**2
    b = l0**2 * l3**2 + l0**2 * l1**2 * s**2
    cc = (l2 * l4 + l1 * l3 * c) ** 2 + l1**2 * l3**2 * s**2 + (0.5 - l1**2 - l2**2) ** 2
    g = l0**2 * l2**2 + l0**2 * l1**2 * c**2
    f = l0**2 * l2**2 + l0**2 * l1**2 * s**2
    k = (l3 * l4 + l1 * l2 * c) ** 2 + l1**2 * l2**2 * s**2 + (0.5 - l1**2 - l3**2) ** 2
    return ClosedFormTerms3("x_nonzero", a, b, cc, g, f, k)


def min3_closed(p: AcinParams, pair: str) -> MinResult:
    """N(rho_AB) or N(rho_AC) of the canonical three-qubit state."""
    T = correlation3(p, pair)
    terms = closed_form_terms3(p)
    if pair == "AB":
        diag, off, corner = terms.a, terms.b, terms.c
        trace_part = terms.a + terms.b + terms.c
    else:
        diag, off, corner = terms.g, terms.b, terms.k
        trace_part = terms.g + terms.f + terms.k
    ttt = T @ T.T
    spectrum = tuple(float(v) for v in jacobi_eigvals(ttt))
    if terms.branch == "x_zero":
        # TT^t = [[d, 0, o], [0, d, 0], [o, 0, c]]: eigenvalues d and those of [[d, o], [o, c]]
        inner = 0.5 * (diag + corner - np.sqrt((diag - corner) ** 2 + 4 * off**2))
        value = 2 * diag + corner - min(diag, inner)
        return MinResult(_clip(value), "x_zero", spectrum)
    x = _coherent3(p)
    value = trace_part - float(x @ ttt @ x) / float(x @ x)
    return MinResult(_clip(value), "x_nonzero", spectrum)


def min3_global(p: AcinParams) -> float:
    """N(rho_A|BC) = 2 lambda_0^2 (lambda_2^2 + lambda_3^2 + lambda_4^2)."""
    l0, _, l2, l3, l4 = p.lam
    return 2 * l0**2 * (l2**2 + l3**2 + l4**2)


# --- four-qubit generic class --------------------------------------------------

KCONST = 1.0 / 16.0


@dataclass(frozen=True)
class XStateParams:
    """rho_AX = (1/4)[[alpha,0,0,beta],[0,gamma,delta,0],[0,delta,gamma,0],[beta,0,0,alpha]]."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    a: complex
    b: complex
    c: complex
    d: complex
    kconst: float = KCONST

    def matrix(self) -> np.ndarray:
        al, be, ga, de = self.alpha, self.beta, self.gamma, self.delta
        return 0.25 * np.array(
            [[al, 0, 0, be], [0, ga, de, 0], [0, de, ga, 0], [be, 0, 0, al]], dtype=complex
        )


def xstate_params(coeffs: GenericCoeffs, pair: str) -> XStateParams:
    z0, z1, z2, z3 = coeffs.z
    a, b, c, d = z0 + z1, z0 - z1, z2 + z3, z2 - z3
    if pair == "AB":
        vals = (
            2 * (abs(z0) ** 2 + abs(z1) ** 2),
            2 * (abs(z0) ** 2 - abs(z1) ** 2),
            2 * (abs(z2) ** 2 + abs(z3) ** 2),
            2 * (abs(z2) ** 2 - abs(z3) ** 2),
        )
    elif pair == "AC":
        vals = (abs(a) ** 2 + abs(c) ** 2, 2 * (a.conjugate() * c).real, abs(b) ** 2 + abs(d) ** 2, 2 * (b.conjugate() * d).real)
    elif pair == "AD":
        vals = (abs(a) ** 2 + abs(d) ** 2, 2 * (a.conjugate() * d).real, abs(b) ** 2 + abs(c) ** 2, 2 * (b.conjugate() * c).real)
    else:
        raise InputDomainError(f"pair must be AB, AC or AD, got {pair!r}")
    return XStateParams(*(float(v) for v in vals), a, b, c, d)


def min4_closed(coeffs: GenericCoeffs, pair: str) -> MinResult:
    """N(rho_AX) for a generic-class state; the coherent vector always vanishes."""
    xs = xstate_params(coeffs, pair)
    k = xs.kconst
    eig = sorted(
        (k * (xs.beta + xs.delta) ** 2, k * (xs.beta - xs.delta) ** 2, k * (xs.alpha - xs.gamma) ** 2)
    )
    value = k * (2 * (xs.beta**2 + xs.delta**2) + (xs.alpha - xs.gamma) ** 2) - eig[0]
    return MinResult(_clip(value), "x_zero", tuple(eig))


# --- batched two-qubit route (campaign kernels) ---------------------------------

_PAULI_PAIRS = np.einsum("iab,jcd->ijacbd", QUBIT_BASIS, QUBIT_BASIS).reshape(3, 3, 4, 4)
_PAULI_A = np.einsum("iab,cd->iacbd", QUBIT_BASIS, np.eye(2) / np.sqrt(2)).reshape(3, 4, 4)


def correlation_2x2_batch(rhos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(T, x)`` for a stack of two-qubit matrices of shape (N, 4, 4)."""
    T = np.einsum("nab,ijba->nij", rhos, _PAULI_PAIRS).real
    x = np.einsum("nab,iba->ni", rhos, _PAULI_A).real
    return T, x


def min_2x2_batch(rhos: np.ndarray, epsilon_x: float = EPSILON_X) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``min_2xn`` for a stack of two-qubit matrices, shape (N, 4, 4).

    Returns the MIN values and a boolean mask of samples that took the
    ``x_zero`` branch.
    """
    T, x = correlation_2x2_batch(rhos)
    ttt = T @ np.swapaxes(T, 1, 2)
    trace = np.trace(ttt, axis1=1, axis2=2)
    xsq = np.sum(x * x, axis=1)
    zero = np.sqrt(xsq) <= epsilon_x
    lowest = jacobi_eigvals(ttt)[:, 0]
    safe = np.where(zero, 1.0, xsq)
    proj = np.einsum("ni,nij,nj->n", x, ttt, x) / safe
    value = np.where(zero, trace - lowest, trace - proj)
    value = np.where((value < 0) & (value >= -VALUE_CLIP), 0.0, value)
    return value, zero
