"""Command-line front end.

Exit codes: 0 success, 1 verification failure (or a reproduced figure
outside its window), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import montecarlo as mc
from . import verification
from .monogamy import monogamy_report
from .nonlocality import min3_closed, min4_closed, min_2xn, min_bruteforce, min_pure
from .qmat import DensityMatrix, InputDomainError, reduce_pure
from .states import (
    FAMILIES,
    AcinParams,
    GenericCoeffs,
    SamplerSpec,
    acin_state,
    generic4_state,
    gghz_state,
    sample,
    special_state,
    w_state,
)

STATE_FAMILIES = ("bell", "gghz", "gghz3", "ghz3", "ghz4", "w", "acin", "generic4", "special") + tuple(
    f for f in FAMILIES if f != "generic4"
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def fmt(x: float) -> str:
    return f"{x:.10g}"


def parse_complex(text: str) -> complex:
    """``"re,im"``, a plain real, or Python complex syntax."""
    text = text.strip()
    if "," in text:
        re_, im_ = text.split(",", 1)
        return complex(float(re_), float(im_))
    return complex(text.replace("i", "j"))


def parse_qubits(text: str) -> list[int]:
    """``"A"``, ``"AB"`` or ``"0,1"`` to a list of qubit indices."""
    text = text.strip()
    if text.replace(",", "").isdigit():
        return [int(t) for t in text.split(",")]
    if text.isalpha() and text.isupper():
        return [ord(ch) - ord("A") for ch in text]
    raise InputDomainError(f"cannot parse qubit set {text!r}")


def default_seed() -> int:
    return int(os.environ.get("MINLAB_SEED", "0"))


def add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=STATE_FAMILIES)
    p.add_argument("--alpha", type=parse_complex, help="generalized GHZ amplitude on |0...0>")
    p.add_argument("--beta", type=parse_complex, help="generalized GHZ amplitude on |1...1>")
    p.add_argument("--n", type=int, help="qubit count for gghz and wn")
    p.add_argument("--amps", help="comma-separated W amplitudes, pivot first")
    p.add_argument("--lambdas", help="l0,l1,l2,l3,l4 of the canonical three-qubit form")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--z", nargs=4, type=parse_complex, metavar="RE,IM", help="generic-class coefficients")
    p.add_argument("--name", choices=("cluster4", "L", "M4"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--index", type=int, default=0, help="sample index for sampler families")
    p.add_argument("--json", action="store_true", help="also print a JSON record")


def _need(value, flag: str):
    if value is None:
        raise InputDomainError(f"--family needs {flag}")
    return value


def build_state(args) -> tuple:
    """Return ``(PureState, params)`` where params is AcinParams, GenericCoeffs or None."""
    fam = args.family
    half = math.sqrt(0.5)
    if fam == "bell":
        return gghz_state(2, half, half), None
    if fam == "ghz3":
        return gghz_state(3, half, half), None
    if fam == "ghz4":
        coeffs = GenericCoeffs((half, half, 0, 0))
        return generic4_state(coeffs), coeffs
    if fam in ("gghz", "gghz3"):
        n = 3 if fam == "gghz3" else _need(args.n, "--n")
        return gghz_state(n, _need(args.alpha, "--alpha"), _need(args.beta, "--beta")), None
    if fam == "w":
        return w_state([parse_complex(a) for a in _need(args.amps, "--amps").split(",")]), None
    if fam == "acin":
        params = AcinParams(tuple(float(v) for v in _need(args.lambdas, "--lambdas").split(",")), args.theta)
        return acin_state(params), params
    if fam == "generic4":
        coeffs = GenericCoeffs(tuple(_need(args.z, "--z")))
        return generic4_state(coeffs), coeffs
    if fam == "special":
        return special_state(_need(args.name, "--name")), None
    seed = args.seed if args.seed is not None else default_seed()
    spec = SamplerSpec(fam, seed, n=args.n)
    return sample(spec, args.index), None


def pair_min(rho: DensityMatrix, params, pair: str):
    """Closed form when the state carries its family parameters, generic route otherwise."""
    if isinstance(params, AcinParams) and pair in ("AB", "AC"):
        return min3_closed(params, pair)
    if isinstance(params, GenericCoeffs) and pair in ("AB", "AC", "AD"):
        return min4_closed(params, pair)
    return min_2xn(rho)


def cmd_eval(args) -> int:
    psi, params = build_state(args)
    if args.pair:
        pair = parse_qubits(args.pair)
        if len(pair) != 2:
            raise InputDomainError("--pair names exactly two qubits")
        rho = DensityMatrix(reduce_pure(psi.amplitudes, pair))
        result = pair_min(rho, params, args.pair)
        label = f"pair {args.pair}"
    else:
        cut = parse_qubits(args.cut)
        result = min_pure(psi, cut)
        rho = psi.density() if cut == [0] else None
        label = f"cut {args.cut}"
    print(f"MIN ({label}) = {fmt(result.value)}")
    print(f"branch       = {result.branch}")
    if result.spectrum:
        print("TT^t spectrum = " + ", ".join(fmt(v) for v in result.spectrum))
    record = {"value": result.value, "branch": result.branch, "spectrum": list(result.spectrum)}
    if result.diagnostics:
        print(f"diagnostics  = {result.diagnostics}")
    if args.oracle:
        if rho is None:
            raise InputDomainError("--oracle needs --pair or a single-qubit cut on A")
        oracle = min_bruteforce(rho, args.grid_points)
        gap = abs(oracle.value - result.value)
        print(f"oracle       = {fmt(oracle.value)} (gap {gap:.3e})")
        record.update(oracle=oracle.value, gap=gap)
    if args.json:
        print(json.dumps(record))
    return EXIT_OK


def cmd_check(args) -> int:
    psi, _ = build_state(args)
    pivot = parse_qubits(args.pivot)
    if len(pivot) != 1:
        raise InputDomainError("--pivot names one qubit")
    report = monogamy_report(psi, pivot[0])
    name = chr(ord("A") + report.pivot)
    print(f"{'pair':<8}{'N':>18}")
    for partner, value in report.pairwise:
        print(f"{name + chr(ord('A') + partner):<8}{fmt(value):>18}")
    print(f"{'sum':<8}{fmt(report.pair_sum):>18}")
    print(f"{'global':<8}{fmt(report.global_min):>18}   N({name}|rest)")
    print(f"{'deficit':<8}{fmt(report.deficit):>18}")
    equality = abs(report.deficit) <= 1e-9
    verdict = "MONOGAMOUS" if report.monogamous else "POLYGAMOUS"
    print(f"verdict: {verdict}{' (equality)' if report.monogamous and equality else ''}")
    if args.json:
        print(json.dumps(report.to_dict()))
    return EXIT_OK


def cmd_sweep(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    cfg = mc.CampaignConfig(
        SamplerSpec(args.family, seed, n=args.n),
        args.samples,
        pivot=args.pivot,
        histogram_bins=args.bins,
        workers=args.workers,
    )
    stats = mc.run_campaign(cfg)
    if args.out:
        mc.export_stats(stats, args.format, args.out)
    lo, hi = stats.wilson_interval()
    print(
        f"{stats.family} seed={stats.seed} samples={stats.samples} "
        f"fraction_monogamous={fmt(stats.fraction_monogamous)} "
        f"[95% Wilson {fmt(lo)}, {fmt(hi)}] "
        f"deficit min/mean/max={fmt(stats.min_deficit)}/{fmt(stats.mean_deficit)}/{fmt(stats.max_deficit)} "
        f"max|deficit|={stats.max_abs_deficit:.3e}"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    names = verification.SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in names:
        res = verification.run_suite(name, args.samples, seed)
        ok &= res.passed
        status = "PASS" if res.passed else "FAIL"
        line = f"{name:<14}{status}  worst={res.worst:.3e} tol={res.tolerance:g} n={res.checked}"
        if not res.passed:
            line += f" witness={json.dumps(res.witness)}"
        print(line)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    rep = mc.reproduce(args.claim, args.samples, seed, args.workers)
    lo, hi = rep.window
    print(f"claim      : {rep.claim}")
    print(f"reported   : {rep.reported}")
    print(f"computed   : {rep.statistic} = {fmt(rep.computed)} over {rep.samples} sample(s)")
    if rep.interval:
        print(f"95% Wilson : [{fmt(rep.interval[0])}, {fmt(rep.interval[1])}]")
    print(f"window     : [{fmt(lo)}, {fmt(hi)}]")
    if rep.measure_dependent:
        print(f"measure    : {rep.measure_name} (result is measure-dependent)")
    for note in rep.notes:
        print(f"note       : {note}")
    print(f"status     : {'WITHIN' if rep.within else 'OUTSIDE'}")
    return EXIT_OK if rep.within else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minlab", description="Measurement-induced non-locality toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="MIN of a described state")
    add_state_flags(p)
    p.add_argument("--cut", default="A", help="side A of a pure-state cut (default A)")
    p.add_argument("--pair", help="two-qubit reduction, e.g. AB")
    p.add_argument("--oracle", action="store_true", help="compare against brute-force maximization")
    p.add_argument("--grid-points", type=int, default=20000)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="monogamy report for one pivot")
    add_state_flags(p)
    p.add_argument("--pivot", default="A")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="seeded sampling campaign")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--pivot", type=int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("--suite", required=True, choices=verification.SUITES + ("all",))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="compare a computed statistic with a reported figure")
    p.add_argument("--claim", required=True, choices=mc.CLAIMS)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputDomainError, ValueError) as exc:
        print(f"minlab {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"minlab {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
