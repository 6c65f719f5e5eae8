"""Monogamy of MIN for a pivot party, and the tangle quantities of four-qubit states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .nonlocality import min_2x2_batch, min_2xn, min_pure
from .qmat import DensityMatrix, InputDomainError, PureState, reduce_pure

MONOGAMY_SLACK = 1e-9


@dataclass(frozen=True)
class MonogamyReport:
    pivot: int
    global_min: float
    pairwise: tuple[tuple[int, float], ...]
    pair_sum: float
    deficit: float
    monogamous: bool

    def to_dict(self) -> dict:
        return {
            "pivot": self.pivot,
            "global_min": self.global_min,
            "pairwise": [[p, v] for p, v in self.pairwise],
            "pair_sum": self.pair_sum,
            "deficit": self.deficit,
            "monogamous": self.monogamous,
        }


@dataclass(frozen=True)
class TangleSummary:
    tau1: float
    tau2: float
    tau_abcd: float


def is_monogamous(deficit) -> np.ndarray | bool:
    """Equality counts as monogamous, up to the fixed slack."""
    return deficit >= -MONOGAMY_SLACK


def monogamy_report(psi: PureState, pivot: int = 0) -> MonogamyReport:
    """Compare N(pivot | rest) with the sum of N(pivot, partner) over partners.

    The global value comes from the Schmidt spectrum of the pure state; each
    pairwise value comes from the two-qubit reduction (pivot first).
    """
    n = psi.num_qubits
    if n < 3:
        raise InputDomainError("monogamy needs at least three qubits")
    if not 0 <= pivot < n:
        raise InputDomainError(f"pivot {pivot} out of range")
    global_min = min_pure(psi, [pivot]).value
    pairwise = []
    for partner in range(n):
        if partner == pivot:
            continue
        rho = DensityMatrix(reduce_pure(psi.amplitudes, [pivot, partner]))
        pairwise.append((partner, min_2xn(rho).value))
    pair_sum = float(sum(v for _, v in pairwise))
    deficit = global_min - pair_sum
    return MonogamyReport(pivot, global_min, tuple(pairwise), pair_sum, deficit, bool(is_monogamous(deficit)))


def monogamy_batch(amplitudes: np.ndarray, pivot: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized ``monogamy_report`` over a stack of state vectors.

    Returns ``(global_min, pair_sum, deficit)`` arrays.  The global value uses
    1 - tr(rho_pivot^2), which equals 1 - sum s_i^2 for a one-qubit cut.
    """
    amplitudes = np.asarray(amplitudes)
    n = int(amplitudes.shape[-1]).bit_length() - 1
    if n < 3:
        raise InputDomainError("monogamy needs at least three qubits")
    rho_p = reduce_pure(amplitudes, [pivot])
    purity = np.sum(np.abs(rho_p) ** 2, axis=(1, 2))
    global_min = 1.0 - purity
    global_min = np.where((global_min < 0) & (global_min >= -1e-12), 0.0, global_min)
    pair_sum = np.zeros(amplitudes.shape[0])
    for partner in range(n):
        if partner == pivot:
            continue
        values, _ = min_2x2_batch(reduce_pure(amplitudes, [pivot, partner]))
        pair_sum = pair_sum + values
    return global_min, pair_sum, global_min - pair_sum


def tangle(psi: PureState, cut: Sequence[int]) -> float:
    """2 (1 - tr rho_cut^2) across the bipartition ``cut`` | rest."""
    cut = tuple(cut)
    if not cut or len(set(cut)) == psi.num_qubits:
        raise InputDomainError("tangle needs a proper non-empty cut")
    rho = reduce_pure(psi.amplitudes, sorted(cut))
    return float(2.0 * (1.0 - np.sum(np.abs(rho) ** 2)))


def tangle_summary(psi: PureState) -> TangleSummary:
    if psi.num_qubits != 4:
        raise InputDomainError("tangle summary is defined for four qubits")
    tau1 = sum(tangle(psi, [q]) for q in range(4)) / 4
    # AB|CD, AC|BD, AD|BC
    tau2 = sum(tangle(psi, [0, q]) for q in (1, 2, 3)) / 3
    return TangleSummary(tau1, tau2, 4 * tau1 - 3 * tau2)

