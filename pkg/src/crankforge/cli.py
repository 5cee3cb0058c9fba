"""Command line interface: expand, verify, scan, table, campaign.

Exit codes: 0 all checks passed, 1 a mathematical claim was refuted,
2 usage or validation error.  All mathematical output is deterministic
for identical invocations (records are emitted in a fixed order); the
wall_time_ms field of verification records is a measurement and is the
one exception.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .congruence import (
    CongruenceClaim,
    CongruenceReport,
    CrankSpec,
    admissible_deltas,
    build_conjecture_spec,
    build_crank_spec_j2,
    build_crank_spec_j3,
    build_crank_spec_jl,
    report_json_line,
    scan_congruences,
    validate_counts,
    verify_congruence,
    verify_congruence_bruteforce,
)
from .partitions import distribution_to_csv, residue_distribution
from .qseries import (
    FactorSpec,
    ProductSpec,
    crank_generating_spec,
    dump_series,
    expand_product,
    partition_generating_spec,
    pkj_generating_spec,
)

DEPTH_LIMIT_ENV = "CRANKFORGE_DEPTH_LIMIT"
DEFAULT_DEPTH_LIMIT = 10**6


class UsageError(Exception):
    pass


def _depth_limit() -> int:
    raw = os.environ.get(DEPTH_LIMIT_ENV)
    if raw is None or raw == "":
        return DEFAULT_DEPTH_LIMIT
    try:
        limit = int(raw)
    except ValueError:
        raise UsageError(f"{DEPTH_LIMIT_ENV} is not an integer: {raw!r}") from None
    if limit < 0:
        raise UsageError(f"{DEPTH_LIMIT_ENV} must be >= 0, got {limit}")
    return limit


def _check_depth(depth: int, flag: str = "--depth") -> int:
    if depth < 0:
        raise UsageError(f"{flag} must be >= 0, got {depth}")
    limit = _depth_limit()
    if depth > limit:
        raise UsageError(
            f"{flag} {depth} exceeds the configured limit {limit} "
            f"(set {DEPTH_LIMIT_ENV} to raise it)"
        )
    return depth


def _write_output(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# expand

_GENERATORS = (
    "partitions",
    "crank",
    "pkj",
    "theta",
    "theta01",
    "crank-j2",
    "crank-j3",
    "crank-jl",
    "crank-conjecture",
)


def _parse_factor(text: str) -> FactorSpec:
    bits = text.split(",")
    if len(bits) != 4:
        raise UsageError(f"--factor wants sign,zeta_exp,q_stride,power, got {text!r}")
    try:
        sign, zexp, stride, power = (int(b) for b in bits)
    except ValueError:
        raise UsageError(f"--factor fields must be integers, got {text!r}") from None
    try:
        return FactorSpec(sign, zexp, stride, power)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _build_expansion_spec(args: argparse.Namespace) -> ProductSpec:
    if args.factor and args.gen:
        raise UsageError("pass either --gen or --factor entries, not both")
    if args.factor:
        return ProductSpec(tuple(_parse_factor(t) for t in args.factor))
    if not args.gen:
        raise UsageError("pass --gen NAME or one or more --factor entries")
    gen = args.gen
    if gen == "partitions":
        return partition_generating_spec()
    if gen == "crank":
        return crank_generating_spec()
    if gen == "pkj":
        if args.k is None or args.j is None:
            raise UsageError("--gen pkj needs --k and --j")
        return pkj_generating_spec(args.k, args.j)
    if gen in ("theta", "theta01"):
        if args.a is None:
            raise UsageError(f"--gen {gen} needs --a")
        sign = -1 if gen == "theta" else 1
        return ProductSpec(
            (
                FactorSpec(-1, 0, 1, 1),
                FactorSpec(sign, args.a, 1, 1),
                FactorSpec(sign, -args.a, 1, 1),
            )
        )
    return _build_crank_spec_from_flags(gen.removeprefix("crank-"), args).product


def cmd_expand(args: argparse.Namespace) -> int:
    depth = _check_depth(args.depth)
    spec = _build_expansion_spec(args)
    series = expand_product(spec, depth)
    _write_output(args.out, dump_series(series))
    return 0


# ---------------------------------------------------------------------------
# verify

def _build_crank_spec_from_flags(thm: str, args: argparse.Namespace) -> CrankSpec:
    if thm in ("j2", "j3", "jl"):
        if args.l is None:
            raise UsageError(f"--thm {thm} needs --l")
        m = args.m if args.m is not None else 0
        builder = {
            "j2": build_crank_spec_j2,
            "j3": build_crank_spec_j3,
            "jl": build_crank_spec_jl,
        }[thm]
        return builder(args.l, m)
    if thm == "conjecture":
        if args.k is None or args.j is None:
            raise UsageError("--thm conjecture needs --k and --j")
        return build_conjecture_spec(args.k, args.j)
    raise UsageError(f"unknown family {thm!r}")


def _verify_records(
    spec: CrankSpec,
    modulus: int,
    deltas: Sequence[int],
    depth: int,
    counts_depth: int,
    bruteforce_depth: int | None,
) -> tuple[list[str], list[CongruenceReport], bool]:
    lines: list[str] = []
    reports: list[CongruenceReport] = []
    ok = validate_counts(spec, counts_depth)
    if not ok:
        return lines, reports, False
    for delta in deltas:
        t0 = time.perf_counter()
        rep = verify_congruence(spec, delta, depth, ell=modulus)
        ms = int((time.perf_counter() - t0) * 1000)
        lines.append(report_json_line(rep, ms))
        reports.append(rep)
        if bruteforce_depth is not None:
            claim = CongruenceClaim(spec.k, spec.j, modulus, delta, bruteforce_depth)
            t0 = time.perf_counter()
            rep2 = verify_congruence_bruteforce(claim)
            ms = int((time.perf_counter() - t0) * 1000)
            lines.append(report_json_line(rep2, ms))
            reports.append(rep2)
    return lines, reports, True


def _deltas_for(spec: CrankSpec, modulus: int, given: Sequence[int] | None) -> list[int]:
    if given:
        out = sorted(set(given))
        for d in out:
            if not 0 <= d < modulus:
                raise UsageError(f"--delta {d} out of range for modulus {modulus}")
        return out
    if spec.source == "j3":
        return sorted(admissible_deltas(modulus, 4))
    if spec.source in ("j2", "jl"):
        return sorted(admissible_deltas(modulus, 8))
    raise UsageError(
        "the conjectural family has no recorded admissible set; pass --delta"
    )


def cmd_verify(args: argparse.Namespace) -> int:
    depth = _check_depth(args.depth)
    counts_depth = _check_depth(args.counts_depth, "--counts-depth")
    bf_depth = None
    if args.bruteforce_depth is not None:
        bf_depth = _check_depth(args.bruteforce_depth, "--bruteforce-depth")
    spec = _build_crank_spec_from_flags(args.thm, args)
    modulus = spec.ell if spec.ell is not None else args.l
    if modulus is None:
        raise UsageError("--thm conjecture needs --l to pick the modulus")
    deltas = _deltas_for(spec, modulus, args.delta)
    for d in deltas:
        if depth < d:
            raise UsageError(f"--depth {depth} does not reach delta {d}")
    try:
        lines, reports, counts_ok = _verify_records(
            spec, modulus, deltas, depth, counts_depth, bf_depth
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not counts_ok:
        print(
            f"counting validation failed: the series does not count "
            f"p_{{{spec.k},{spec.j}}} through {counts_depth}",
            file=sys.stderr,
        )
        return 1
    _write_output(args.out, "".join(line + "\n" for line in lines))
    if args.plot:
        from . import figures

        figures.save_verify_figure(reports, args.plot)
    return 1 if any(r.failures for r in reports) else 0


# ---------------------------------------------------------------------------
# scan

def cmd_scan(args: argparse.Namespace) -> int:
    depth = _check_depth(args.depth)
    claims = scan_congruences(args.k, args.j, args.lmax, depth)
    lines = []
    for c in claims:
        witnesses = (c.depth - c.delta) // c.ell + 1
        rec = {
            "k": c.k,
            "j": c.j,
            "ell": c.ell,
            "delta": c.delta,
            "depth": c.depth,
            "witnesses": witnesses,
            "method": "brute-force",
            "status": "empirical",
        }
        lines.append(json.dumps(rec, separators=(", ", ": ")))
    _write_output(args.out, "".join(line + "\n" for line in lines))
    if args.plot:
        from . import figures

        figures.save_scan_figure(claims, args.k, args.j, args.lmax, depth, args.plot)
    return 0


# ---------------------------------------------------------------------------
# table

def cmd_table(args: argparse.Namespace) -> int:
    table = residue_distribution(args.n, args.mod, args.stat)
    _write_output(args.out, distribution_to_csv(table, include_members=args.members))
    if args.plot:
        from . import figures

        figures.save_distribution_figure(table, args.plot)
    return 0


# ---------------------------------------------------------------------------
# campaign

def _validate_campaign_job(idx: int, job: dict) -> dict:
    if not isinstance(job, dict):
        raise UsageError(f"job {idx}: not an object")
    kind = job.get("kind")
    if kind == "scan":
        for key in ("k", "j", "lmax", "depth"):
            if not isinstance(job.get(key), int):
                raise UsageError(f"job {idx}: scan needs integer {key!r}")
        _check_depth(job["depth"], f"job {idx} depth")
        if job["depth"] < 3 * job["lmax"]:
            raise UsageError(f"job {idx}: depth below 3 * lmax")
        return job
    if kind == "verify":
        ns = argparse.Namespace(
            l=job.get("l"), m=job.get("m"), k=job.get("k"), j=job.get("j")
        )
        thm = job.get("thm")
        if not isinstance(thm, str):
            raise UsageError(f"job {idx}: verify needs a family name under 'thm'")
        try:
            spec = _build_crank_spec_from_flags(thm, ns)
        except ValueError as exc:
            raise UsageError(f"job {idx}: {exc}") from None
        modulus = spec.ell if spec.ell is not None else job.get("l")
        if modulus is None:
            raise UsageError(f"job {idx}: conjectural job needs 'l'")
        depth = job.get("depth")
        if not isinstance(depth, int):
            raise UsageError(f"job {idx}: verify needs integer 'depth'")
        _check_depth(depth, f"job {idx} depth")
        deltas = job.get("deltas", "admissible")
        if deltas == "admissible":
            resolved = _deltas_for(spec, modulus, None)
        elif isinstance(deltas, list) and all(isinstance(d, int) for d in deltas):
            resolved = _deltas_for(spec, modulus, deltas)
        else:
            raise UsageError(f"job {idx}: 'deltas' must be a list or 'admissible'")
        counts_depth = job.get("counts_depth", 60)
        if not isinstance(counts_depth, int):
            raise UsageError(f"job {idx}: 'counts_depth' must be an integer")
        _check_depth(counts_depth, f"job {idx} counts_depth")
        return {
            "kind": "verify",
            "spec": spec,
            "modulus": modulus,
            "deltas": resolved,
            "depth": depth,
            "counts_depth": counts_depth,
            "bruteforce_depth": job.get("bruteforce_depth"),
        }
    raise UsageError(f"job {idx}: unknown kind {kind!r}")


def _run_campaign_job(job: dict) -> tuple[list[str], bool]:
    if job.get("kind") == "scan":
        claims = scan_congruences(job["k"], job["j"], job["lmax"], job["depth"])
        lines = []
        for c in claims:
            rec = {
                "k": c.k,
                "j": c.j,
                "ell": c.ell,
                "delta": c.delta,
                "depth": c.depth,
                "witnesses": (c.depth - c.delta) // c.ell + 1,
                "method": "brute-force",
                "status": "empirical",
            }
            lines.append(json.dumps(rec, separators=(", ", ": ")))
        return lines, True
    lines, reports, counts_ok = _verify_records(
        job["spec"],
        job["modulus"],
        job["deltas"],
        job["depth"],
        job["counts_depth"],
        job.get("bruteforce_depth"),
    )
    ok = counts_ok and not any(r.failures for r in reports)
    if not counts_ok:
        lines.append(json.dumps({"error": "counting validation failed"}))
    return lines, ok


def cmd_campaign(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from None
    if not isinstance(config, dict) or not isinstance(config.get("jobs"), list):
        raise UsageError("config must be an object with a 'jobs' list")
    out_path = args.output or config.get("output")
    parallelism = args.parallelism or config.get("parallelism", 1)
    if not isinstance(parallelism, int) or parallelism < 1:
        raise UsageError("parallelism must be a positive integer")
    # Validate every job before any work starts.
    jobs = [_validate_campaign_job(i, job) for i, job in enumerate(config["jobs"])]
    if parallelism == 1:
        results = [_run_campaign_job(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_run_campaign_job, jobs))
    # Buffered per job, written in submission order.
    all_lines = [line for lines, _ in results for line in lines]
    _write_output(out_path, "".join(line + "\n" for line in all_lines))
    return 0 if all(ok for _, ok in results) else 1


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crankforge",
        description="exact q-series engine for colored-partition crank congruences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a product and dump its coefficients")
    p.add_argument("--gen", choices=_GENERATORS, help="named generating function")
    p.add_argument("--factor", action="append", metavar="S,A,C,E",
                   help="explicit factor (1 + S*zeta^A*q^(C*n))^E; repeatable")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--l", type=int, help="modulus for crank-j2/j3/jl")
    p.add_argument("--m", type=int, help="power parameter for crank-j2/j3/jl")
    p.add_argument("--k", type=int, help="unbounded colors for pkj/crank-conjecture")
    p.add_argument("--j", type=int, help="distinct colors for pkj/crank-conjecture")
    p.add_argument("--a", type=int, help="zeta exponent for theta/theta01")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("verify", help="verify congruences of a crank series")
    p.add_argument("--thm", required=True, choices=("j2", "j3", "jl", "conjecture"))
    p.add_argument("--l", type=int, help="prime modulus")
    p.add_argument("--m", type=int, help="power parameter (default 0)")
    p.add_argument("--k", type=int, help="unbounded colors (conjecture)")
    p.add_argument("--j", type=int, help="distinct colors (conjecture)")
    p.add_argument("--delta", type=int, action="append",
                   help="residue class; repeatable (default: admissible set)")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--counts-depth", type=int, default=60,
                   help="depth of the brute-force counting validation")
    p.add_argument("--bruteforce-depth", type=int,
                   help="also check counts mod ell to this depth")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--plot", help="also render a verdict figure to this file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="scan for zero progressions of p_{k,j}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--plot", help="also render a hit-grid figure to this file")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("table", help="bucket partitions of n by a statistic mod ell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--stat", required=True, choices=("rank", "crank"))
    p.add_argument("--members", action="store_true",
                   help="include the partitions of each class")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--plot", help="also render a bar chart to this file")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("campaign", help="run a list of verify/scan jobs from a config")
    p.add_argument("--config", required=True, help="JSON file with a 'jobs' list")
    p.add_argument("--output", help="override the config's output path")
    p.add_argument("--parallelism", type=int,
                   help="concurrent jobs (default from config, else 1)")
    p.set_defaults(fn=cmd_campaign)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
