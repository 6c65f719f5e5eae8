"""Self-check suites run by ``minlab verify``.

Each suite samples seeded inputs, compares two independent routes (or a
route against a bound) and reports the worst case it saw.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .monogamy import tangle_summary
from .montecarlo import verify_bounds
from .nonlocality import min_2xn, min_bruteforce, min_pure
from .qmat import DensityMatrix, PureState, kron, reduce_pure
from .states import SamplerSpec, sample

SUITES = ("thm1_thm2", "oracle", "thm3", "thm4", "thm5", "tangles", "lu_invariance")


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    worst: float
    tolerance: float
    checked: int
    witness: dict = field(default_factory=dict)


def _complex_gaussian(seed: int, index: int, dim: int, salt: int = 0) -> np.ndarray:
    g = rng.normals(seed ^ salt, [index], 2 * dim)[0]
    return g[:dim] + 1j * g[dim:]


def random_pure(seed: int, index: int, num_qubits: int) -> PureState:
    v = _complex_gaussian(seed, index, 1 << num_qubits)
    return PureState(v / np.linalg.norm(v))


def random_mixed(seed: int, index: int, b_qubits: int, env_qubits: int = 2, degenerate: bool = False) -> DensityMatrix:
    """A 2 x 2**b_qubits state obtained by tracing ``env_qubits`` out of a random pure state.

    With ``degenerate`` the qubit marginal is exactly I/2: the pure state is
    (|0>|f0> + |1>|f1>)/sqrt2 with orthonormal random f0, f1.
    """
    rest = b_qubits + env_qubits
    n = 1 + rest
    if degenerate:
        dim = 1 << rest
        f0 = _complex_gaussian(seed, index, dim)
        f1 = _complex_gaussian(seed, index, dim, salt=0x5DEECE66D)
        f0 /= np.linalg.norm(f0)
        f1 = f1 - np.vdot(f0, f1) * f0
        f1 /= np.linalg.norm(f1)
        psi = np.concatenate([f0, f1]) / np.sqrt(2)
    else:
        psi = random_pure(seed, index, n).amplitudes
    rho = reduce_pure(psi, list(range(1 + b_qubits)))
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def haar_unitary(seed: int, index: int, dim: int, salt: int = 0) -> np.ndarray:
    g = rng.normals(seed ^ salt, [index], 2 * dim * dim)[0]
    z = (g[: dim * dim] + 1j * g[dim * dim :]).reshape(dim, dim)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def suite_thm1_thm2(samples: int = 300, seed: int = 0) -> SuiteResult:
    worst, witness = 0.0, {}
    for i in range(samples):
        m = (1, 2, 3)[i % 3]
        psi = random_pure(seed, i, 1 + m)
        gap = abs(min_pure(psi, [0]).value - min_2xn(psi.density()).value)
        if gap > worst:
            worst, witness = gap, {"index": i, "b_qubits": m}
    return SuiteResult("thm1_thm2", worst <= 1e-9, worst, 1e-9, samples, witness)


def suite_oracle(samples: int = 200, seed: int = 0, grid_points: int = 20000) -> SuiteResult:
    worst, witness = 0.0, {}
    for i in range(samples):
        m = 1 + (i // 2) % 2
        rho = random_mixed(seed, i, m, degenerate=bool(i % 2))
        gap = abs(min_2xn(rho).value - min_bruteforce(rho, grid_points).value)
        if gap > worst:
            worst, witness = gap, {"index": i, "b_qubits": m, "degenerate": bool(i % 2)}
    return SuiteResult("oracle", worst <= 1e-5, worst, 1e-5, samples, witness)


def suite_lu_invariance(samples: int = 200, seed: int = 0) -> SuiteResult:
    worst, witness = 0.0, {}
    for i in range(samples):
        m = 1 + i % 2
        rho = random_mixed(seed, i, m, degenerate=bool((i // 2) % 2))
        u = kron(haar_unitary(seed, i, 2, salt=1), haar_unitary(seed, i, 1 << m, salt=2))
        moved = u @ rho.matrix @ u.conj().T
        rotated = DensityMatrix(0.5 * (moved + moved.conj().T))
        gap = abs(min_2xn(rho).value - min_2xn(rotated).value)
        if gap > worst:
            worst, witness = gap, {"index": i, "b_qubits": m}
    return SuiteResult("lu_invariance", worst <= 1e-8, worst, 1e-8, samples, witness)


def suite_tangles(samples: int = 100, seed: int = 0) -> SuiteResult:
    worst, witness = 0.0, {}
    targets = {"class_M": (1.0, 4 / 3, 0.0), "class_taumin": (1.0, 1.0, 1.0)}
    for family, target in targets.items():
        spec = SamplerSpec(family, seed)
        for i in range(samples):
            t = tangle_summary(sample(spec, i))
            gap = max(abs(a - b) for a, b in zip((t.tau1, t.tau2, t.tau_abcd), target))
            if gap > worst:
                worst, witness = gap, {"family": family, "index": i}
    return SuiteResult("tangles", worst <= 1e-10, worst, 1e-10, 2 * samples, witness)


def _bound_suite(name: str, family: str, samples: int, seed: int) -> SuiteResult:
    check = verify_bounds(family, samples, seed)
    return SuiteResult(name, check.passed, check.worst, 1e-9, samples, check.witness)


def run_suite(name: str, samples: int | None = None, seed: int = 0) -> SuiteResult:
    if name == "thm1_thm2":
        return suite_thm1_thm2(samples or 300, seed)
    if name == "oracle":
        return suite_oracle(samples or 200, seed)
    if name == "lu_invariance":
        return suite_lu_invariance(samples or 200, seed)
    if name == "tangles":
        return suite_tangles(samples or 100, seed)
    if name == "thm3":
        return _bound_suite(name, "thm3", samples or 10_000, seed)
    if name == "thm4":
        return _bound_suite(name, "M_thm4", samples or 10_000, seed)
    if name == "thm5":
        return _bound_suite(name, "taumin_thm5", samples or 10_000, seed)
    raise ValueError(f"unknown suite {name!r}")
