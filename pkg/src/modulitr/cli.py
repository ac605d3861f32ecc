"""Command-line verification harness.

``verify <subcommand>`` runs one of the check suites (or all of them),
writes a deterministic JSON report plus a CSV summary, and exits nonzero
exactly when some check failed.  ``dump-invariants`` prints the basic
exact tables as JSON, and ``serve`` exposes the same functionality over
HTTP.

Flags override the optional ``--config`` file, which overrides the
environment (``MODULI_TR_CACHE`` for the cache directory), which
overrides built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .config import build_config
from .report import Report

SUITE_COMMANDS = {
    "check-main": ("main",),
    "check-n10": ("n10",),
    "check-tr-spin": ("tr",),
    "check-anc": ("anc",),
    "check-lemmas": ("lemmas",),
    "check-all": checks.ALL_SUITES,
}


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="flat key = value config file")
    p.add_argument("--gmax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--cache-dir", dest="cache_dir")
    p.add_argument("--hodge-table", dest="hodge_table")
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p.add_argument("--jobs", type=int, help="worker threads for the check queue")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="exact verification harness for the intersection-number "
        "and topological-recursion library",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUITE_COMMANDS:
        p = sub.add_parser(name, help=f"run the {name[len('check-'):]} suite(s)")
        _add_common_flags(p)
    p = sub.add_parser("dump-invariants", help="dump exact tables as JSON")
    _add_common_flags(p)
    p = sub.add_parser("serve", help="serve the harness over HTTP")
    _add_common_flags(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _config_from_args(args) -> "RunConfig":
    overrides = {
        key: getattr(args, key, None)
        for key in ("gmax", "nmax", "kmax", "dmax", "order", "jobs",
                    "cache_dir", "hodge_table")
    }
    return build_config(getattr(args, "config", None), overrides)


def run_suites(cfg, suites) -> Report:
    checks.load_wk_cache(cfg)
    tasks = checks.build_tasks(cfg, suites)
    records = checks.run_tasks(tasks, cfg.jobs)
    checks.save_wk_cache(cfg)
    # the worker count cannot influence the report bytes
    config = {k: v for k, v in cfg.to_dict().items() if k != "jobs"}
    report = Report(config, records)
    report.sort()
    return report


def _emit(report: Report, out_path: str | None) -> int:
    payload = report.to_json()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        csv_path = out_path.rsplit(".", 1)[0] + ".csv"
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_csv())
    else:
        sys.stdout.write(payload)
        sys.stdout.write(report.to_csv())
    summary = report.summary()
    sys.stderr.write(
        f"pass {summary['pass']}  fail {summary['fail']}  skip {summary['skip']}\n"
    )
    return report.exit_code()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    if args.command in SUITE_COMMANDS:
        suites = SUITE_COMMANDS[args.command]
        if args.command == "check-all" and cfg.checks:
            suites = tuple(s for s in suites if s in cfg.checks)
        report = run_suites(cfg, suites)
        return _emit(report, args.out)
    if args.command == "dump-invariants":
        checks.load_wk_cache(cfg)
        doc = checks.dump_invariants(cfg)
        payload = json.dumps(doc, indent=2) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
        checks.save_wk_cache(cfg)
        return 0
    if args.command == "serve":
        from .service import serve

        serve(cfg, args.host, args.port)
        return 0
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
