"""Command line: translate, classify, verify.

Exit codes: 0 when every expected outcome is met, 1 on a mismatch, 2 on a
usage, configuration or resolution error. ``translate`` also uses 3 for a
formula that does not parse and 4 for a formula the translation cannot map.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .catalog import CatalogError, load_catalog
from .formula import FormulaError, parse, render
from .translation import FormatError, TranslationError, apply_translation, classify_shape
from .suites import (BOUND_KEYS, SUITES, ConfigError, RunConfig, get_job, parse_bound_args, resolve_edge,
                     run_job)
from .verify.report import REPORT_SCHEMA, dumps

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PARSE, EXIT_UNTRANSLATABLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _catalog(args):
    try:
        return load_catalog(args.catalog or [])
    except (CatalogError, FormatError, OSError) as e:
        raise UsageError(f"catalog: {e}") from None


def cmd_translate(args) -> int:
    cat = _catalog(args)
    try:
        t = cat.translation(args.name)
    except CatalogError as e:
        raise UsageError(str(e)) from None
    try:
        f = parse(args.formula)
    except FormulaError as e:
        print(f"error: cannot parse formula: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        print(render(apply_translation(t, f)))
    except TranslationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNTRANSLATABLE
    return EXIT_OK


def cmd_classify(args) -> int:
    cat = _catalog(args)
    try:
        t = cat.translation(args.name)
    except CatalogError as e:
        raise UsageError(str(e)) from None
    shape = classify_shape(t)
    out = {"translation": t.name, "source": t.source, "target": t.target, "shape": shape.to_json(),
           "requires_model_map": t.requires_model_map}
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_OK


def _jobs(args) -> list[str]:
    targets = list(args.target or [])
    if args.suite:
        targets = [args.suite, *targets]
    if not targets:
        raise UsageError("name a suite or 'edge SPEC'")
    jobs = []
    i = 0
    while i < len(targets):
        word = targets[i]
        if word == "edge":
            if i + 1 >= len(targets):
                raise UsageError("'edge' needs a spec such as 'CPL->L3 via Tl'")
            jobs.append("edge:" + targets[i + 1])
            i += 2
            continue
        if word not in SUITES:
            raise UsageError(f"unknown suite {word!r}; known: {', '.join(SUITES)}")
        jobs += [j for j in SUITES[word] if j not in jobs]
        i += 1
    return jobs


def run_jobs(jobs: list[str], config: RunConfig) -> list[dict]:
    """Results in submission order, whatever the worker count."""
    if config.workers == 1 or len(jobs) == 1:
        return [run_job(j, config) for j in jobs]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = [pool.submit(run_job, j, config) for j in jobs]
        return [f.result() for f in futures]


def build_report(jobs: list[str], results: list[dict], config: RunConfig) -> dict:
    expectations = [dict(e, job=r["job"]) for r in results for e in r["expectations"]]
    unmet = [e for e in expectations if not e["met"]]
    return {
        "schema": REPORT_SCHEMA,
        "jobs": jobs,
        "bounds": dict(sorted(config.bounds.items())),
        "results": results,
        "summary": {"entries": sum(len(r["entries"]) for r in results), "expectations": len(expectations),
                    "unmet": [f"{e['job']}: {e['check']}" for e in unmet]},
    }


def cmd_verify(args) -> int:
    try:
        config = RunConfig(parse_bound_args(args.bounds), tuple(args.catalog or ()), args.workers,
                           timing=not args.no_timing)
        jobs = _jobs(args)
        cat = _catalog(args)
        for j in jobs:
            if j.startswith("edge:"):
                resolve_edge(cat, j[5:])
            get_job(j)
    except ConfigError as e:
        raise UsageError(str(e)) from None
    results = run_jobs(jobs, config)
    report = build_report(jobs, results, config)
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in results:
        for e in r["expectations"]:
            mark = "ok  " if e["met"] else "FAIL"
            print(f"{mark} {r['job']}: {e['check']}")
    unmet = report["summary"]["unmet"]
    print(f"{report['summary']['expectations'] - len(unmet)}/{report['summary']['expectations']} expectations met")
    return EXIT_OK if not unmet else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", action="append", metavar="PATH", help="extra catalog file (repeatable)")
    p = argparse.ArgumentParser(prog="logictrans", description="Translations between logics and their properties.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("translate", parents=[common], help="print the image of a formula")
    t.add_argument("name")
    t.add_argument("formula")
    t.set_defaults(func=cmd_translate)

    c = sub.add_parser("classify", parents=[common], help="print shape flags of a translation")
    c.add_argument("name")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="run verification suites or edges")
    v.add_argument("target", nargs="*", help=f"suite ({', '.join(SUITES)}) or 'edge SPEC'")
    v.add_argument("--suite", help="suite name")
    v.add_argument("--bounds", action="append", metavar="K=V", help=", ".join(BOUND_KEYS))
    v.add_argument("--out", metavar="PATH", help="write the JSON report here")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="omit elapsed_ms fields")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
