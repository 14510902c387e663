"""Command-line driver: verification suites and exact matrix dumps.

Usage (noun-verb and verb-noun orders both work):

    heisweil verify all --p 3 --ell 1
    heisweil weil verify --p 5 --mode exhaustive
    heisweil weil dump --p 3 --ell 1 --zeta 1 --model minus
    heisweil heisenberg dump --p 3
    heisweil mackey dump
    heisweil sqrt --n 1 --p 3 --K 4 --k0 1 --matrix "[[4]]"

Exit codes: 0 all selected checks passed, 1 at least one check failed,
2 bad arguments or a guard violation.  Reports are JSON, deterministic
for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from heisweil.suites import (
    CheckResult,
    RunConfig,
    SUITES,
    _jsonable,
)

SUITE_NAMES = ["heisenberg", "reps", "weil", "mackey", "sqrt"]

__all__ = ["main", "run"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisweil",
        description="exact verification suites for Heisenberg/Weil structures",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES + ["all"], nargs="?")
    verify.add_argument(
        "--suite",
        dest="suite_flag",
        choices=SUITE_NAMES + ["all"],
        default=None,
        help="alternative way to pick the suite",
    )
    _add_config_flags(verify)

    dump = sub.add_parser("dump", help="emit exact matrices or tables as JSON")
    dump.add_argument("what", choices=["weil", "heisenberg", "reps", "mackey"])
    _add_config_flags(dump)
    dump.add_argument("--zeta", type=int, default=1, help="central character exponent")
    dump.add_argument("--model", choices=["plus", "minus"], default="minus")

    sqrt = sub.add_parser("sqrt", help="square root in 1 + p^k0 M_n(Z/p^K)")
    sqrt.add_argument("--n", type=int, required=True)
    sqrt.add_argument("--p", type=int, required=True)
    sqrt.add_argument("--K", type=int, required=True)
    sqrt.add_argument("--k0", type=int, default=1)
    sqrt.add_argument("--matrix", type=str, required=True, help="JSON matrix")
    sqrt.add_argument("--out", type=str, default=None)
    return parser


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--precision", type=int, default=4, help="K for sqrt suites")
    p.add_argument("--k0", type=int, default=1)
    p.add_argument(
        "--mode",
        choices=["exhaustive", "relations", "sampled"],
        default="exhaustive",
    )
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", type=str, default=None, help="report path (default stdout)")


def _normalize_argv(argv: list[str]) -> list[str]:
    """Accept both 'verify weil ...' and 'weil verify ...' orders."""
    if len(argv) >= 2:
        a, b = argv[0], argv[1]
        if a in SUITE_NAMES + ["all"] and b in ("verify", "dump"):
            return [b, a] + list(argv[2:])
    return list(argv)


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        p=args.p,
        ell=args.ell,
        precision=args.precision,
        k0=args.k0,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
    )


def _emit(payload, out_path: str | None, fmt: str = "json") -> None:
    if fmt == "csv":
        reports = payload if isinstance(payload, list) else [payload]
        lines = ["suite,checks,failures,seed"]
        for r in reports:
            lines.append(
                f"{r['suite']},{r['checks']},{len(r['failures'])},{r['seed']}"
            )
        text = "\n".join(lines)
    else:
        text = json.dumps(payload, sort_keys=True, indent=1)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _suite_report(name: str, cfg: RunConfig, results: list[CheckResult]) -> dict:
    return {
        "suite": name,
        "checks": sum(r.count for r in results),
        "failures": [
            {"check": r.check, "witness": _jsonable(r.witness)}
            for r in results
            if not r.passed
        ],
        "seed": cfg.seed,
        "config": asdict(cfg),
    }


def run(argv: list[str] | None = None) -> int:
    argv = _normalize_argv(sys.argv[1:] if argv is None else list(argv))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    if args.verb == "sqrt":
        return _run_sqrt(args)

    cfg = _config_from_args(args)
    if args.verb == "verify":
        suite = args.suite or args.suite_flag
        if suite is None:
            sys.stderr.write("error: no suite selected\n")
            return 2
        names = SUITE_NAMES if suite == "all" else [suite]
        for name in names:
            err = cfg.validate_for(name)
            if err:
                sys.stderr.write(f"guard: {err}\n")
                return 2
        reports = []
        failed = False
        for name in names:
            results = SUITES[name](cfg)
            report = _suite_report(name, cfg, results)
            reports.append(report)
            failed |= bool(report["failures"])
            line = "PASS" if not report["failures"] else "FAIL"
            sys.stderr.write(
                f"{line} suite={name} checks={report['checks']} "
                f"failures={len(report['failures'])}\n"
            )
        _emit(reports if suite == "all" else reports[0], args.out, args.format)
        return 1 if failed else 0

    if args.verb == "dump":
        err = cfg.validate_for("weil" if args.what == "weil" else "heisenberg")
        if err:
            sys.stderr.write(f"guard: {err}\n")
            return 2
        payload = _dump(args, cfg)
        _emit(payload, args.out)
        return 0
    return 2


def _dump(args, cfg: RunConfig):
    from heisweil.heisenberg import HeisenbergGroup, all_special_isos
    from heisweil.reps import heisenberg_rep
    from heisweil.symplectic import SymplecticSpace
    from heisweil.weil import weil_lift

    space = SymplecticSpace(cfg.p, cfg.ell)
    group = HeisenbergGroup(space)
    if args.what == "weil":
        tau = heisenberg_rep(group, args.zeta, model=args.model)
        lift = weil_lift(tau)
        entries = [
            {
                "element": s.matrix.tolist(),
                "matrix": lift.sp_images[s].to_json(),
            }
            for s in sorted(lift.sp_images, key=lambda s: s.matrix.tolist())
        ]
        return {
            "p": cfg.p,
            "ell": cfg.ell,
            "zeta_exponent": args.zeta,
            "model": args.model,
            "normalization": lift.normalization.to_json(),
            "images": entries,
        }
    if args.what == "reps":
        tau = heisenberg_rep(group, args.zeta, model=args.model)
        return {
            "p": cfg.p,
            "ell": cfg.ell,
            "images": [
                {
                    "element": {"w": list(h.w), "z": h.z},
                    "matrix": tau.images[h].to_json(),
                }
                for h in sorted(group.elements())
            ],
        }
    if args.what == "heisenberg":
        payload = {
            "p": cfg.p,
            "ell": cfg.ell,
            "elements": [
                {"w": list(h.w), "z": h.z} for h in sorted(group.elements())
            ],
            "special_iso_offsets": [
                list(nu.offset) for nu in all_special_isos(group)
            ],
        }
        from heisweil.symplectic import GuardError

        try:
            payload["subgroups"] = [
                [{"w": list(h.w), "z": h.z} for h in sorted(sub)]
                for sub in group.all_subgroups()
            ]
        except GuardError:
            pass  # subgroup sweep is guarded for larger groups
        return payload
    if args.what == "mackey":
        from heisweil.mackey import heisenberg_table_group

        tg = heisenberg_table_group(group)
        return json.loads(tg.to_json())
    raise AssertionError(args.what)


def _run_sqrt(args) -> int:
    from heisweil.prounipotent import CongruenceGroup, sqrt_with_trace

    try:
        matrix = json.loads(args.matrix)
        group = CongruenceGroup(args.n, args.p, args.K, args.k0)
        root, levels = sqrt_with_trace(group, matrix)
    except (ValueError, AssertionError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(
        {
            "root": root.tolist(),
            "residual_levels": levels,
            "modulus": group.modulus,
        },
        args.out,
    )
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
