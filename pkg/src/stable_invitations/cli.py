"""Command-line front end: ``python -m stable_invitations <command> ...``.

Exit codes: 0 solved or verified, 1 no stable invitation (``solve``) or a
failed verification, 2 usage or input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .asip import MultiSlotInstance, solve_asip_multislot
from .core import (
    CapacityError,
    GsipInstance,
    InstanceError,
    ShapeError,
    is_envy_free,
    is_individually_rational,
    is_stable,
)
from .documents import DocumentError, load_instance, serialize_instance
from .generate import FAMILIES, GeneratorConfig, generate_random_instance
from .gsip import DEFAULT_MAX_EXACT_N, solve_gsip
from .mechanism import ThresholdProfile, run_inc_mechanism
from .oracle import DEFAULT_ORACLE_CAP, enumerate_stable, oracle_max_stable
from .strategic import CASES, MECHANISMS, find_manipulation, verify_no_sp_stable_mechanism

EXIT_OK, EXIT_NO_STABLE, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ids(members) -> list[int]:
    return sorted(i + 1 for i in members)


def _names(members) -> str:
    return "{" + ", ".join(f"a{i}" for i in _ids(members)) + "}"


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load(path) -> GsipInstance | MultiSlotInstance:
    try:
        return load_instance(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _need_gsip(inst, command) -> GsipInstance:
    if not isinstance(inst, GsipInstance):
        raise UsageError(f"{command} needs a single-slot instance")
    return inst


def cmd_solve(args) -> int:
    inst = _load(args.file)
    if isinstance(inst, MultiSlotInstance):
        slot, res = solve_asip_multislot(inst)
        payload = {"stable": res.stable, "slot": slot + 1, "size": res.size,
                   "members": _ids(res.invitation) if res.stable else None, "path": "asip_multislot"}
        text = (f"slot {slot + 1}: stable invitation of size {res.size}: {_names(res.invitation)}"
                if res.stable else "no stable invitation in any slot")
        _emit(args, payload, text + "\npath: asip_multislot")
        return EXIT_OK if res.stable else EXIT_NO_STABLE
    res = solve_gsip(inst, max_exact_n=args.max_exact_n)
    payload = {"stable": res.stable, "size": res.size,
               "members": _ids(res.invitation) if res.stable else None,
               "path": res.path, "nodes": res.nodes, "sizes_tried": list(res.sizes_tried)}
    text = (f"stable invitation of size {res.size}: {_names(res.invitation)}"
            if res.stable else "no stable invitation")
    _emit(args, payload, f"{text}\npath: {res.path}")
    return EXIT_OK if res.stable else EXIT_NO_STABLE


def _parse_invitation(text: str, n: int) -> frozenset:
    try:
        ids = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--invitation expects comma-separated agent ids, got {text!r}") from None
    if any(not 1 <= i <= n for i in ids):
        raise UsageError(f"--invitation ids must lie in 1..{n}")
    return frozenset(i - 1 for i in ids)


def cmd_check(args) -> int:
    inst = _need_gsip(_load(args.file), "check")
    S = _parse_invitation(args.invitation, inst.n)
    flags = {"individually_rational": is_individually_rational(inst, S),
             "envy_free": is_envy_free(inst, S), "stable": is_stable(inst, S)}
    text = "\n".join(f"{'IR' if k.startswith('ind') else 'EF' if k == 'envy_free' else 'stable'}={str(v).lower()}"
                     for k, v in flags.items())
    _emit(args, {"members": _ids(S), **flags}, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    inst = _need_gsip(_load(args.file), "enumerate")
    found = enumerate_stable(inst, cap=args.cap)
    best = oracle_max_stable(inst, cap=args.cap)
    lines = [_names(S) for S in found] or ["no stable invitation"]
    payload = {"stable_invitations": [_ids(S) for S in found], "count": len(found),
               "max_size": best.size}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_mechanism(args) -> int:
    inst = _need_gsip(_load(args.file), "mechanism")
    if not inst.is_asip:
        raise UsageError("the threshold mechanism needs an anonymous instance")
    try:
        profile = ThresholdProfile.from_instance(inst)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    S = run_inc_mechanism(profile)
    payload = {"thresholds": list(profile.thresholds), "members": _ids(S), "size": len(S)}
    _emit(args, payload, f"thresholds: {list(profile.thresholds)}\ninvitation: {_names(S)}")
    return EXIT_OK


def cmd_manipulate(args) -> int:
    inst = _need_gsip(_load(args.file), "manipulate")
    if not 1 <= args.agent <= inst.n:
        raise UsageError(f"--agent must lie in 1..{inst.n}")
    mech = args.mech or ("algorithm1" if inst.is_asip else "gsip_solver")
    try:
        found = find_manipulation(inst, mech, args.agent - 1, args.mode)
    except ShapeError as exc:
        raise UsageError(str(exc)) from None
    except InstanceError as exc:
        raise UsageError(str(exc)) from None
    if found is None:
        _emit(args, {"found": False, "mechanism": mech, "mode": args.mode},
              f"no profitable misreport for a{args.agent} ({mech}, {args.mode})")
        return EXIT_OK
    payload = {"found": True, "mechanism": mech, "mode": args.mode, "misreport": str(found.misreport),
               "truthful": _ids(found.outcome_truthful), "deviant": _ids(found.outcome_deviant)}
    text = (f"a{args.agent} gains by reporting {str(found.misreport)}: "
            f"{_names(found.outcome_truthful)} -> {_names(found.outcome_deviant)}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_no_sp_stable_mechanism(args.case)
    payload = {"case": rep.case, "tables_enumerated": rep.tables_enumerated, "sp_tables": rep.sp_tables,
               "stable_finding_tables": rep.stable_finding_tables, "intersection": rep.intersection}
    text = (f"{rep.case}: {rep.tables_enumerated:,} tables, {rep.sp_tables} strategy-proof, "
            f"{rep.stable_finding_tables} stable-finding, intersection {rep.intersection} "
            f"of {rep.tables_enumerated:,} tables")
    _emit(args, payload, text)
    return EXIT_OK if rep.verified or args.case == "single_agent" else EXIT_NO_STABLE


def _gen_config(args) -> GeneratorConfig:
    fields = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                fields = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {args.config}: {exc.strerror or exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad generator config: {exc}") from None
    for key in ("n", "preference_family", "alpha_max", "beta_max", "seed"):
        val = getattr(args, key)
        if val is not None:
            fields[key] = val
    if args.exact_bounds:
        fields["exact_bounds"] = True
    if "n" not in fields:
        raise UsageError("gen needs --n (or n in --config)")
    try:
        return GeneratorConfig(**fields)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad generator config: {exc}") from None


def cmd_gen(args) -> int:
    inst = generate_random_instance(_gen_config(args))
    sys.stdout.write(serialize_instance(inst))
    return EXIT_OK


def cmd_bench(args) -> int:
    times, oracle_times, mismatches = [], [], 0
    for t in range(args.trials):
        cfg = GeneratorConfig(args.n, args.family, args.alpha_max, args.beta_max, args.seed + t)
        inst = generate_random_instance(cfg)
        t0 = time.perf_counter()
        res = solve_gsip(inst, max_exact_n=args.max_exact_n)
        times.append(time.perf_counter() - t0)
        if args.n <= min(args.oracle_cap, DEFAULT_ORACLE_CAP):
            t0 = time.perf_counter()
            ref = oracle_max_stable(inst)
            oracle_times.append(time.perf_counter() - t0)
            mismatches += ref.size != res.size
    payload = {"trials": args.trials, "n": args.n, "family": args.family,
               "solver_mean_s": float(np.mean(times)) if times else 0.0,
               "oracle_mean_s": float(np.mean(oracle_times)) if oracle_times else None,
               "mismatches": mismatches}
    text = (f"{args.trials} trials, n={args.n}, {args.family}: solver {payload['solver_mean_s'] * 1e3:.3f} ms/inst"
            + (f", oracle {payload['oracle_mean_s'] * 1e3:.3f} ms/inst, {mismatches} mismatches"
               if oracle_times else ""))
    _emit(args, payload, text)
    return EXIT_OK if mismatches == 0 else EXIT_NO_STABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stable-invitations", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[fmt], help="maximum stable invitation")
    p.add_argument("file")
    p.add_argument("--max-exact-n", type=int, default=DEFAULT_MAX_EXACT_N)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", parents=[fmt], help="IR / envy-free / stable flags of an invitation")
    p.add_argument("file")
    p.add_argument("--invitation", required=True, help="comma-separated 1-based ids; empty for none")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[fmt], help="every stable invitation, by brute force")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mechanism", parents=[fmt], help="threshold mechanism on increasing preferences")
    p.add_argument("file")
    p.set_defaults(func=cmd_mechanism)

    p = sub.add_parser("manipulate", parents=[fmt], help="search a profitable misreport")
    p.add_argument("file")
    p.add_argument("--agent", type=int, required=True)
    p.add_argument("--mode", choices=("brute_force", "interval_reports", "fr_sets"), default="brute_force")
    p.add_argument("--mech", choices=sorted(MECHANISMS))
    p.set_defaults(func=cmd_manipulate)

    p = sub.add_parser("verify-impossibility", parents=[fmt], help="enumerate every mechanism table")
    p.add_argument("--case", choices=sorted(CASES), required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="random instance document")
    p.add_argument("--config", help="JSON generator config; flags override its fields")
    p.add_argument("--n", type=int)
    p.add_argument("--family", dest="preference_family", choices=FAMILIES)
    p.add_argument("--alpha-max", dest="alpha_max", type=int)
    p.add_argument("--beta-max", dest="beta_max", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--exact-bounds", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[fmt], help="time solve against the oracle on random instances")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--family", choices=FAMILIES, default="arbitrary_preorder")
    p.add_argument("--alpha-max", type=int, default=0)
    p.add_argument("--beta-max", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-exact-n", type=int, default=DEFAULT_MAX_EXACT_N)
    p.add_argument("--oracle-cap", type=int, default=16)
    p.set_defaults(func=cmd_bench)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, DocumentError, InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())
