"""Seeded sampling campaigns over the state families.

A campaign draws ``samples`` states from a family, evaluates the monogamy
deficit of each against the pivot party, and aggregates the results.  Work
is split into fixed-size index chunks, so the output does not depend on the
number of workers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import rng
from .monogamy import MONOGAMY_SLACK, is_monogamous, monogamy_batch, monogamy_report
from .nonlocality import correlation_2x2_batch, min_2x2_batch
from .qmat import InputDomainError, reduce_pure
from .states import (
    GENERIC_BASIS,
    SamplerSpec,
    build_amplitudes,
    draw_parameters,
    gghz_state,
    params_at,
)

CHUNK = 16384
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class CampaignConfig:
    sampler: SamplerSpec
    samples: int
    pivot: int = 0
    histogram_bins: int = 64
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise InputDomainError("a campaign needs at least one sample")
        if self.histogram_bins < 1 or self.workers < 1:
            raise InputDomainError("histogram_bins and workers must be positive")
        if not 0 <= self.pivot < self.sampler.num_qubits:
            raise InputDomainError(f"pivot {self.pivot} out of range")


@dataclass(frozen=True)
class CampaignStats:
    family: str
    measure_name: str
    seed: int
    samples: int
    fraction_monogamous: float
    mean_deficit: float
    min_deficit: float
    max_deficit: float
    min_pair_sum: float
    max_pair_sum: float
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]
    numerical_flags: int = 0

    @property
    def monogamous_count(self) -> int:
        return round(self.fraction_monogamous * self.samples)

    @property
    def max_abs_deficit(self) -> float:
        return max(abs(self.min_deficit), abs(self.max_deficit))

    def wilson_interval(self, confidence: float = 0.95) -> tuple[float, float]:
        return wilson_interval(self.monogamous_count, self.samples, confidence)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["histogram"] = {"edges": list(d.pop("histogram_edges")), "counts": list(d.pop("histogram_counts"))}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CampaignStats":
        d = dict(d)
        hist = d.pop("histogram")
        return cls(
            histogram_edges=tuple(float(v) for v in hist["edges"]),
            histogram_counts=tuple(int(v) for v in hist["counts"]),
            **d,
        )


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    from scipy.stats import binomtest

    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def _chunk_bounds(samples: int) -> list[tuple[int, int]]:
    return [(start, min(start + CHUNK, samples)) for start in range(0, samples, CHUNK)]


def _evaluate_chunk(cfg: CampaignConfig, bounds: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(bounds[0], bounds[1], dtype=np.uint64)
    amps = build_amplitudes(cfg.sampler, draw_parameters(cfg.sampler, idx))
    _, pair_sum, deficit = monogamy_batch(amps, cfg.pivot)
    return pair_sum, deficit


def evaluate(cfg: CampaignConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample ``(pair_sum, deficit)`` arrays in index order."""
    chunks = _chunk_bounds(cfg.samples)
    if cfg.workers == 1 or len(chunks) == 1:
        parts = [_evaluate_chunk(cfg, b) for b in chunks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda b: _evaluate_chunk(cfg, b), chunks))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def run_campaign(cfg: CampaignConfig) -> CampaignStats:
    pair_sum, deficit = evaluate(cfg)
    finite = np.isfinite(pair_sum) & np.isfinite(deficit)
    flags = int(np.count_nonzero(~finite))
    pair_sum, deficit = pair_sum[finite], deficit[finite]
    partners = cfg.sampler.num_qubits - 1
    # two-qubit MIN never exceeds 1/2, so the edges cover every possible pair sum
    edges = np.linspace(0.0, 0.5 * partners, cfg.histogram_bins + 1)
    counts, _ = np.histogram(np.clip(pair_sum, edges[0], edges[-1]), bins=edges)
    count = int(np.count_nonzero(is_monogamous(deficit)))
    return CampaignStats(
        family=cfg.sampler.label,
        measure_name=cfg.sampler.measure_name,
        seed=cfg.sampler.seed,
        samples=cfg.samples,
        fraction_monogamous=count / cfg.samples,
        mean_deficit=float(np.mean(deficit)),
        min_deficit=float(np.min(deficit)),
        max_deficit=float(np.max(deficit)),
        min_pair_sum=float(np.min(pair_sum)),
        max_pair_sum=float(np.max(pair_sum)),
        histogram_edges=tuple(float(v) for v in edges),
        histogram_counts=tuple(int(v) for v in counts),
        numerical_flags=flags,
    )


# --- export -------------------------------------------------------------------


def stats_to_json(stats: CampaignStats) -> str:
    return json.dumps(stats.to_dict(), indent=2) + "\n"


def stats_to_csv(stats: CampaignStats) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_low", "bin_high", "count"])
    edges = stats.histogram_edges
    for lo, hi, c in zip(edges[:-1], edges[1:], stats.histogram_counts):
        writer.writerow([repr(lo), repr(hi), c])
    summary = stats.to_dict()
    summary.pop("histogram")
    for key, value in summary.items():
        buf.write(f"# {key}={value!r}\n" if isinstance(value, float) else f"# {key}={value}\n")
    return buf.getvalue()


def export_stats(stats: CampaignStats, fmt: str, path) -> Path:
    if fmt == "json":
        text = stats_to_json(stats)
    elif fmt == "csv":
        text = stats_to_csv(stats)
    else:
        raise InputDomainError(f"unknown export format {fmt!r}")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write campaign stats to {path}: {exc}") from exc
    return path


def load_stats(path) -> CampaignStats:
    return CampaignStats.from_dict(json.loads(Path(path).read_text()))


# --- bound verification ---------------------------------------------------------

BOUND_FAMILIES = ("M_thm4", "taumin_thm5", "thm3", "x_nonzero_sum3")


@dataclass(frozen=True)
class BoundCheck:
    family: str
    passed: bool
    samples: int
    worst: float
    bound: tuple[float, float]
    witness: dict = field(default_factory=dict)


def _haar_reduced_pairs(seed: int, samples: int) -> tuple[np.ndarray, dict]:
    """Two-qubit states from random four-qubit vectors; odd indices use the generic class.

    Haar vectors give a non-degenerate marginal (x != 0); generic-class
    vectors give a maximally mixed one (x = 0), so both branches appear.
    """
    idx = np.arange(samples, dtype=np.uint64)
    g = rng.normals(seed, idx, 32)
    vec = g[:, :16] + 1j * g[:, 16:]
    z = g[:, :4] + 1j * g[:, 4:8]
    odd = (idx % 2).astype(bool)
    vec[odd] = z[odd] @ GENERIC_BASIS
    vec /= np.linalg.norm(vec, axis=1)[:, None]
    return reduce_pure(vec, [0, 1]), {"amplitudes": vec}


def verify_bounds(family: str, samples: int, seed: int) -> BoundCheck:
    """Check a sampled inequality; on failure the witness holds the worst state's parameters."""
    if family not in BOUND_FAMILIES:
        raise InputDomainError(f"unknown bound family {family!r}")
    if samples < 1:
        raise InputDomainError("samples must be positive")
    idx = np.arange(samples, dtype=np.uint64)
    if family in ("M_thm4", "taumin_thm5"):
        spec = SamplerSpec("class_M" if family == "M_thm4" else "class_taumin", seed)
        params = draw_parameters(spec, idx)
        _, value, _ = monogamy_batch(build_amplitudes(spec, params))
        lo, hi = (-np.inf, 0.25) if family == "M_thm4" else (0.5, 0.75)
    elif family == "x_nonzero_sum3":
        spec = SamplerSpec("acin_full", seed)
        params = draw_parameters(spec, idx)
        amps = build_amplitudes(spec, params)
        value = min_2x2_batch(reduce_pure(amps, [0, 1]))[0] + min_2x2_batch(reduce_pure(amps, [0, 2]))[0]
        lo, hi = (-np.inf, 0.5)
    else:
        rhos, params = _haar_reduced_pairs(seed, samples)
        mins, _ = min_2x2_batch(rhos)
        T, _ = correlation_2x2_batch(rhos)
        # N - tr(TT^t) must stay <= 0
        value = mins - np.sum(T * T, axis=(1, 2))
        lo, hi = (-np.inf, 0.0)
    excess = np.maximum(value - hi, lo - value)
    row = int(np.argmax(excess))
    passed = bool(excess[row] <= BOUND_SLACK)
    witness = {} if passed else params_at(params, row)
    return BoundCheck(family, passed, samples, float(value[row]), (float(lo), float(hi)), witness)


# --- reproduction of reported figures ---------------------------------------------

CLAIMS = ("fig1", "pct3q_generic_x0", "pct3q_wclass_x0", "w_equality", "ghz4_violation")


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    statistic: str
    computed: float
    reported: str
    window: tuple[float, float]
    within: bool
    samples: int
    measure_name: str = ""
    measure_dependent: bool = False
    interval: tuple[float, float] | None = None
    notes: tuple[str, ...] = ()


_FRACTION_CLAIMS = {
    # claim: (family, default samples, reported, window)
    "fig1": ("generic4", 100_000, "about 66% monogamous (34% violation)", (0.56, 0.76)),
    "pct3q_generic_x0": ("acin_x0", 1_000_000, "around 0.02% monogamous", (0.0, 0.005)),
    "pct3q_wclass_x0": ("wclass3_x0", 100_000, "around 20% monogamous", (0.05, 0.35)),
}

_X0_NOTE = (
    "three-qubit percentages are evaluated on the ||x|| = 0 families "
    "(lambda0^2 = 1/2, lambda1 = 0), where the statement is made"
)


def swapped_corner_pair_sum(lam: np.ndarray) -> np.ndarray:
    """N_AB + N_AC for x = 0 canonical states with the (3,3) correlation entries of AB and AC exchanged.

    Diagnostic only: it shows how the three-qubit percentages respond when
    the corner terms use (1/2 - lambda_3^2) for AB and (1/2 - lambda_2^2)
    for AC instead of the values implied by the reduced states.
    """
    l0, _, l2, l3, l4 = np.asarray(lam).T
    b = -l0 * l2 * l3 * l4

    def pair(d, c):
        return 2 * d + c - np.minimum(d, 0.5 * (d + c - np.sqrt((d - c) ** 2 + 4 * b**2)))

    ab = pair(l0**2 * l3**2, l2**2 * l4**2 + (0.5 - l3**2) ** 2)
    ac = pair(l0**2 * l2**2, l3**2 * l4**2 + (0.5 - l2**2) ** 2)
    return ab + ac


def reproduce(claim: str, samples: int | None = None, seed: int = 0, workers: int = 1) -> ClaimReport:
    if claim not in CLAIMS:
        raise InputDomainError(f"unknown claim {claim!r}")
    if claim in _FRACTION_CLAIMS:
        family, default, reported, window = _FRACTION_CLAIMS[claim]
        spec = SamplerSpec(family, seed)
        cfg = CampaignConfig(spec, samples or default, workers=workers)
        stats = run_campaign(cfg)
        frac = stats.fraction_monogamous
        notes = []
        if family != "generic4":
            notes.append(_X0_NOTE)
            lam = draw_parameters(spec, np.arange(cfg.samples, dtype=np.uint64))["lam"]
            alt = float(np.mean(swapped_corner_pair_sum(lam) <= 0.5 + MONOGAMY_SLACK))
            notes.append(f"fraction with AB/AC corner entries exchanged: {alt:.6g}")
        return ClaimReport(
            claim,
            "fraction_monogamous",
            frac,
            reported,
            window,
            window[0] <= frac <= window[1],
            cfg.samples,
            spec.measure_name,
            True,
            stats.wilson_interval(),
            tuple(notes),
        )
    if claim == "w_equality":
        spec = SamplerSpec("wn", seed, n=3)
        cfg = CampaignConfig(spec, samples or 1000, workers=workers)
        stats = run_campaign(cfg)
        worst = stats.max_abs_deficit
        return ClaimReport(
            claim, "max |deficit|", worst, "monogamy holds with equality", (0.0, 1e-8), worst <= 1e-8, cfg.samples, spec.measure_name
        )
    report = monogamy_report(gghz_state(4, math.sqrt(0.5), math.sqrt(0.5)), 0)
    return ClaimReport(
        claim,
        "deficit",
        report.deficit,
        "GHZ4 is not monogamous",
        (-math.inf, -MONOGAMY_SLACK),
        not report.monogamous,
        1,
    )
