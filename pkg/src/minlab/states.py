"""State constructors and seeded samplers for the three- and four-qubit families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import rng
from .qmat import InputDomainError, PureState, kron

SQRT_HALF = np.sqrt(0.5)

PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) * SQRT_HALF
PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) * SQRT_HALF
PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) * SQRT_HALF
PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) * SQRT_HALF

# u_j = |b_j>_AB |b_j>_CD for the four Bell states b_j
GENERIC_BASIS = np.stack(
    [kron(b[:, None], b[:, None]).ravel() for b in (PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS)]
)

# basis positions of |000>, |100>, |101>, |110>, |111>
_ACIN_SLOTS = (0, 4, 5, 6, 7)

FAMILIES = (
    "acin_full",
    "acin_x0",
    "wclass3",
    "wclass3_x0",
    "generic4",
    "class_M",
    "class_taumin",
    "wn",
)

MEASURES = {
    "acin_full": "lambda uniform on positive orthant of S^4, theta uniform on [0, pi]",
    "acin_x0": "lambda0=1/sqrt2, lambda1=0, (lambda2..lambda4) uniform on positive-orthant sphere of radius 1/sqrt2",
    "wclass3": "lambda4=0, (lambda0..lambda3) uniform on positive orthant of S^3, theta uniform on [0, pi]",
    "wclass3_x0": "lambda0=1/sqrt2, lambda1=lambda4=0, (lambda2, lambda3) uniform on positive quarter circle of radius 1/sqrt2",
    "generic4": "z Haar-uniform on the unit sphere of C^4 (8 standard normals, normalized)",
    "class_M": "x, y Gram-Schmidt orthonormalized standard normal 4-vectors scaled to 1/sqrt2, z = x + iy",
    "class_taumin": "real x uniform on S^3",
    "wn": "amplitudes uniform on positive orthant of real S^(n-1)",
}


@dataclass(frozen=True)
class AcinParams:
    """Canonical three-qubit form l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>."""

    lam: tuple[float, float, float, float, float]
    theta: float = 0.0

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lam)
        if len(lam) != 5:
            raise InputDomainError("Acin form needs five lambda values")
        if min(lam) < 0:
            raise InputDomainError("lambda values must be nonnegative")
        if abs(sum(v * v for v in lam) - 1.0) > 1e-12:
            raise InputDomainError("sum of lambda^2 must be 1")
        if not 0.0 <= self.theta <= np.pi:
            raise InputDomainError("theta must lie in [0, pi]")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class GenericCoeffs:
    """Coefficients z_0..z_3 of sum_j z_j u_j."""

    z: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        z = tuple(complex(v) for v in self.z)
        if len(z) != 4:
            raise InputDomainError("generic class needs four coefficients")
        if abs(sum(abs(v) ** 2 for v in z) - 1.0) > 1e-12:
            raise InputDomainError("sum |z_j|^2 must be 1")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class SamplerSpec:
    family: str
    seed: int = 0
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputDomainError(f"unknown family {self.family!r}")
        if self.family == "wn":
            if self.n is None or self.n < 3:
                raise InputDomainError("wn sampler needs n >= 3")
        if not 0 <= self.seed < 2**64:
            raise InputDomainError("seed must be an unsigned 64-bit integer")

    @property
    def label(self) -> str:
        return f"wn({self.n})" if self.family == "wn" else self.family

    @property
    def num_qubits(self) -> int:
        if self.family == "wn":
            return self.n
        return 4 if self.family in ("generic4", "class_M", "class_taumin") else 3

    @property
    def measure_name(self) -> str:
        return MEASURES[self.family]


def acin_state(p: AcinParams) -> PureState:
    amps = np.zeros(8, dtype=complex)
    l0, l1, l2, l3, l4 = p.lam
    for slot, value in zip(_ACIN_SLOTS, (l0, l1 * np.exp(1j * p.theta), l2, l3, l4)):
        amps[slot] = value
    return PureState(amps)


def gghz_state(n: int, alpha: complex, beta: complex) -> PureState:
    """alpha|0...0> + beta|1...1>."""
    if n < 2:
        raise InputDomainError("generalized GHZ needs n >= 2")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = alpha
    amps[-1] = beta
    return PureState(amps)


def w_state(amps: Sequence[complex]) -> PureState:
    """Generalized W state; ``amps[i]`` multiplies the ket with a single 1 on qubit i."""
    amps = [complex(a) for a in amps]
    n = len(amps)
    if n < 3:
        raise InputDomainError("W states need at least three qubits")
    vec = np.zeros(1 << n, dtype=complex)
    for i, a in enumerate(amps):
        vec[1 << (n - 1 - i)] = a
    return PureState(vec)


def generic4_state(c: GenericCoeffs) -> PureState:
    return PureState(np.asarray(c.z) @ GENERIC_BASIS)


_OMEGA = np.exp(2j * np.pi / 3)

SPECIAL_COEFFS = {
    "L": np.array([1, _OMEGA, _OMEGA**2, 0]) / np.sqrt(3),
    "M4": np.array([1j / np.sqrt(2), 1 / np.sqrt(6), 1 / np.sqrt(6), 1 / np.sqrt(6)]),
}


def special_state(name: str) -> PureState:
    """Named four-qubit states: ``cluster4``, ``L`` and ``M4``."""
    if name == "cluster4":
        amps = np.zeros(16, dtype=complex)
        amps[[0b0000, 0b0011, 0b1100]] = 0.5
        amps[0b1111] = -0.5
        return PureState(amps)
    if name in SPECIAL_COEFFS:
        return PureState(SPECIAL_COEFFS[name] @ GENERIC_BASIS)
    raise InputDomainError(f"unknown special state {name!r}")


def _rownorm(x: np.ndarray) -> np.ndarray:
    # column-by-column accumulation keeps results independent of batch size
    total = np.zeros(x.shape[0])
    for col in range(x.shape[1]):
        total = total + np.abs(x[:, col]) ** 2
    return np.sqrt(total)


def _rowdot(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    total = np.zeros(x.shape[0])
    for col in range(x.shape[1]):
        total = total + x[:, col] * y[:, col]
    return total


def _orthant(g: np.ndarray, radius: float = 1.0) -> np.ndarray:
    g = np.abs(g)
    return radius * g / _rownorm(g)[:, None]


def draw_parameters(spec: SamplerSpec, indices) -> dict[str, np.ndarray]:
    """Family parameters for each index, as arrays with a leading sample axis.

    Acin-type families return ``lam`` (N, 5) and ``theta`` (N,); the
    four-qubit families return ``z`` (N, 4); ``wn`` returns ``amps`` (N, n).
    """
    idx = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    rows = idx.size
    fam = spec.family
    if fam in ("acin_full", "wclass3"):
        k = 5 if fam == "acin_full" else 4
        lam = np.zeros((rows, 5))
        lam[:, :k] = _orthant(rng.normals(spec.seed, idx, k))
        theta = np.pi * rng.uniforms(spec.seed, idx, 1)[:, 0]
        return {"lam": lam, "theta": theta}
    if fam in ("acin_x0", "wclass3_x0"):
        k = 3 if fam == "acin_x0" else 2
        lam = np.zeros((rows, 5))
        lam[:, 0] = SQRT_HALF
        lam[:, 2 : 2 + k] = _orthant(rng.normals(spec.seed, idx, k), SQRT_HALF)
        return {"lam": lam, "theta": np.zeros(rows)}
    if fam == "generic4":
        g = rng.normals(spec.seed, idx, 8)
        z = g[:, :4] + 1j * g[:, 4:]
        return {"z": z / _rownorm(z)[:, None]}
    if fam == "class_M":
        g = rng.normals(spec.seed, idx, 8)
        x = g[:, :4] / _rownorm(g[:, :4])[:, None]
        y = g[:, 4:] - _rowdot(x, g[:, 4:])[:, None] * x
        y = y / _rownorm(y)[:, None]
        return {"z": (x + 1j * y) * SQRT_HALF}
    if fam == "class_taumin":
        g = rng.normals(spec.seed, idx, 4)
        return {"z": (g / _rownorm(g)[:, None]).astype(complex)}
    # wn
    return {"amps": _orthant(rng.normals(spec.seed, idx, spec.n))}


def build_amplitudes(spec: SamplerSpec, params: dict[str, np.ndarray]) -> np.ndarray:
    """Stack of state vectors, shape (N, 2**num_qubits), from ``draw_parameters`` output."""
    fam = spec.family
    if "lam" in params:
        lam, theta = params["lam"], params["theta"]
        amps = np.zeros((lam.shape[0], 8), dtype=complex)
        amps[:, 0] = lam[:, 0]
        amps[:, 4] = lam[:, 1] * np.exp(1j * theta)
        amps[:, 5] = lam[:, 2]
        amps[:, 6] = lam[:, 3]
        amps[:, 7] = lam[:, 4]
        return amps
    if "z" in params:
        return params["z"] @ GENERIC_BASIS
    if fam == "wn":
        n = spec.n
        a = params["amps"]
        vec = np.zeros((a.shape[0], 1 << n), dtype=complex)
        for i in range(n):
            vec[:, 1 << (n - 1 - i)] = a[:, i]
        return vec
    raise InputDomainError(f"cannot build states for {fam!r}")


def sample_batch(spec: SamplerSpec, indices) -> np.ndarray:
    return build_amplitudes(spec, draw_parameters(spec, indices))


def sample(spec: SamplerSpec, index: int) -> PureState:
    """Deterministic state for ``(spec.seed, index)`` drawn from ``spec.family``."""
    return PureState(sample_batch(spec, [index])[0])


def params_at(params: dict[str, np.ndarray], row: int) -> dict:
    """JSON-friendly parameters of a single sample (used for witnesses)."""
    out = {}
    for key, value in params.items():
        v = value[row]
        if np.iscomplexobj(v):
            out[key] = [[float(c.real), float(c.imag)] for c in np.atleast_1d(v)]
        elif np.ndim(v):
            out[key] = [float(c) for c in v]
        else:
            out[key] = float(v)
    return out
