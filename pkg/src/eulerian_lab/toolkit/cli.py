"""
Command-line front end.

Usage:
    eulerian-lab triangle --kind eulerian --n 6 --format csv
    eulerian-lab stats 6214573 --r 2
    eulerian-lab foata 51283647 [--inverse]
    eulerian-lab trees --n 4
    eulerian-lab verify --id thm4_desc_exc --max-n 7
    eulerian-lab verify --id all
    eulerian-lab oeis-check --bfile eulerian_rows.txt --kind eulerian --n 6
    eulerian-lab oeis-check --footnote --ref b120434.txt --ref b144696.txt
    eulerian-lab cache save --kind eulerian --n 20

Exit status: 0 success / all PASS, 1 some verification FAIL, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import counting, trees
from ..bijections import exc_to_desc
from ..exceptions import EulerianLabError
from ..foata import foata_inverse, foata_transform, record_blocks
from ..identities import (ALL_VARIANTS, AS_PRINTED, CORRECTED, INTRO_FORM, IdentityId, Ranges,
                          verify)
from ..perm_core import DEFAULT_ENUMERATION_BOUND, StatFamily, StatKind, count_stat, \
    new_permutation, positions_stat
from . import cache as cache_mod
from .export import export_table, report_to_json
from .oeis import crosscheck_sequence, footnote_check, read_bfile

__all__ = ["cli_main", "main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VARIANTS = {
    "as_printed": AS_PRINTED,
    "intro": INTRO_FORM,
    "corrected": CORRECTED,
    "corrected_intro": ALL_VARIANTS[3],
}
TABLE_KINDS = ["eulerian", "trees_R", "trees_T"] + [f.value for f in StatFamily]


class UsageError(EulerianLabError):
    pass


def parse_word(text: str):
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        return new_permutation([int(p) for p in parts])
    except ValueError as exc:
        raise UsageError(f"cannot parse permutation {text!r}: {exc}") from None


def load_config(path) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return cfg


def _setting(args, cfg, name, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return cfg.get(name, default)


def _emit(text: str, out) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------

def build_table(kind: str, n: int, r: int = 1, method: str = "recurrence", jobs: int = 1,
                bound: int = DEFAULT_ENUMERATION_BOUND):
    if kind == "eulerian":
        if method == "enumeration" and n > bound:
            raise UsageError(f"n={n} exceeds the enumeration bound {bound}")
        return counting.eulerian_table(n, method, jobs=jobs)
    if kind == "trees_R":
        entries = {(n, ell, x): v for (ell, x), v in sorted(trees.r_class_counts(n).items())}
        return counting.CountTable("trees_R", ("n", "ell", "x"), entries, "enumeration", {"n": n})
    if kind == "trees_T":
        from .oeis import t_triangle
        return t_triangle(n)
    return counting.count_by_enumeration(n, r, StatFamily(kind), jobs=jobs, bound=bound)


def cmd_triangle(args, cfg) -> int:
    jobs = _setting(args, cfg, "jobs", 1)
    bound = cfg.get("bound", DEFAULT_ENUMERATION_BOUND)
    table = None
    key = cache_mod.cache_key(f"{args.kind}/{args.method}", args.n, args.r)
    cache_path = Path(args.cache) if args.cache else cache_mod.default_cache_path()
    stored = {}
    if args.use_cache and cache_path.exists():
        stored = cache_mod.load_cache(cache_path).tables
        table = stored.get(key)
    if table is None:
        table = build_table(args.kind, args.n, args.r, args.method, jobs, bound)
        if args.use_cache:
            stored[key] = table
            cache_mod.save_cache(cache_path, stored)
    if args.format == "text":
        if args.kind == "eulerian":
            rows = {}
            for (n, m), v in sorted(table.entries.items()):
                rows.setdefault(n, []).append(str(v))
            text = "".join(" ".join(rows[n]) + "\n" for n in sorted(rows))
        else:
            text = "".join(f"{dict(zip(table.index, k))} {v}\n" for k, v in sorted(table.entries.items()))
        _emit(text, args.out)
    else:
        _emit(export_table(table, args.format), args.out)
    return EXIT_OK


def cmd_stats(args, cfg) -> int:
    p = parse_word(args.word)
    print(f"permutation {p}")
    for family in StatFamily:
        s = StatKind(family, args.r)
        print(f"{family.value:>18} r={args.r}: {count_stat(p, s)}  positions {positions_stat(p, s)}")
    return EXIT_OK


def cmd_foata(args, cfg) -> int:
    p = parse_word(args.word)
    if args.exc_to_desc:
        q = exc_to_desc(p)
    elif args.inverse:
        q = foata_inverse(p)
    else:
        print(f"blocks {record_blocks(p)}")
        q = foata_transform(p)
    print(q.word())
    return EXIT_OK


def cmd_trees(args, cfg) -> int:
    n = args.n
    bound = cfg.get("bound", DEFAULT_ENUMERATION_BOUND)
    if n < 2 or n > bound:
        raise UsageError(f"--n must lie in 2..{bound}")
    classes = trees.r_class_counts(n)
    print(f"recursive trees on {n} vertices: {sum(classes.values())}")
    for (ell, x), v in sorted(classes.items()):
        print(f"R({n},{ell},{x}) = {v}   recurrence {trees.count_R_recurrence(n, ell, x)}")
    for ell in sorted({e for e, _ in classes}):
        print(f"T({n},{ell}) = {trees.count_T(n, ell)}   printed closed form "
              f"{trees.t_closed_form(n, ell)}")
    return EXIT_OK


def _ranges(args, cfg) -> Ranges:
    base = Ranges()
    return Ranges(
        max_n=_setting(args, cfg, "max_n", base.max_n),
        max_r=_setting(args, cfg, "max_r", base.max_r),
        max_x=_setting(args, cfg, "max_x", base.max_x),
        min_n=_setting(args, cfg, "min_n", base.min_n),
        max_degree=_setting(args, cfg, "max_degree", base.max_degree),
        bound=cfg.get("bound", DEFAULT_ENUMERATION_BOUND),
    )


def _references(paths) -> dict:
    refs = {}
    for p in paths or []:
        seq = read_bfile(p)
        refs[seq.source_id] = seq
    return refs


def cmd_verify(args, cfg) -> int:
    rg = _ranges(args, cfg)
    jobs = _setting(args, cfg, "jobs", 1)
    refs = _references(args.ref)
    ids = [i.value for i in IdentityId] if args.id == "all" else [args.id]
    reports = []
    for ident in ids:
        if ident == IdentityId.FOOTNOTE_2EULERIAN.value and args.id == "all" and not refs:
            continue
        reports.append(verify(ident, rg, variant=VARIANTS[args.variant], references=refs,
                              jobs=jobs))
    if args.format == "json":
        _emit(report_to_json(reports), args.out)
    else:
        _emit("".join(r.summary() + "\n" for r in reports), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_oeis_check(args, cfg) -> int:
    if args.footnote:
        report = footnote_check(_references(args.ref), _ranges(args, cfg))
    else:
        if not args.bfile:
            raise UsageError("--bfile is required unless --footnote is given")
        ref = read_bfile(args.bfile)
        table = build_table(args.kind, args.n, args.r, "recurrence")
        if len(table.index) != 2:
            raise UsageError(f"kind {args.kind} is not a two-index triangle")
        report = crosscheck_sequence(table, ref, reverse=args.reverse)
    if args.format == "json":
        _emit(report_to_json(report), args.out)
    else:
        _emit(report.summary() + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_cache(args, cfg) -> int:
    path = Path(args.cache) if args.cache else cache_mod.default_cache_path()
    if args.action == "save":
        tables = cache_mod.load_cache(path).tables if path.exists() else {}
        key = cache_mod.cache_key(f"{args.kind}/{args.method}", args.n, args.r)
        tables[key] = build_table(args.kind, args.n, args.r, args.method)
        cache_mod.save_cache(path, tables)
        print(f"saved {key} to {path}")
    elif args.action == "info":
        cf = cache_mod.load_cache(path)
        print(f"{path}: format {cf.format_version}, {len(cf.tables)} table(s)")
        for key, t in sorted(cf.tables.items()):
            print(f"  {key}: {len(t)} entries ({t.method})")
    elif args.action == "clear":
        if path.exists():
            path.unlink()
        print(f"cleared {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eulerian-lab",
                                 description="Generalized Eulerian numbers: tables, maps, checks.")
    ap.add_argument("--config", help="JSON file with max_n, max_r, max_x, jobs, bound")
    sub = ap.add_subparsers(dest="command", required=True)

    def table_opts(p):
        p.add_argument("--kind", choices=TABLE_KINDS, default="eulerian")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--r", type=int, default=1)
        p.add_argument("--method", choices=["recurrence", "enumeration", "closed_form"],
                       default="recurrence", help="eulerian kind only")

    def out_opts(p, formats):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write here instead of stdout")

    def range_opts(p):
        p.add_argument("--max-n", dest="max_n", type=int)
        p.add_argument("--min-n", dest="min_n", type=int)
        p.add_argument("--max-r", dest="max_r", type=int)
        p.add_argument("--max-x", dest="max_x", type=int)
        p.add_argument("--max-degree", dest="max_degree", type=int)
        p.add_argument("--jobs", type=int)

    p = sub.add_parser("triangle", help="print a count table")
    table_opts(p)
    out_opts(p, ["text", "csv", "json"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--use-cache", action="store_true")
    p.add_argument("--cache", help="cache file (default $EULERIAN_LAB_CACHE)")
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("stats", help="statistics of one permutation")
    p.add_argument("word")
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("foata", help="Foata transform of a word")
    p.add_argument("word")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--inverse", action="store_true", help="cycles -> word direction")
    g.add_argument("--exc-to-desc", dest="exc_to_desc", action="store_true",
                   help="inverse, then cycles -> word")
    p.set_defaults(func=cmd_foata)

    p = sub.add_parser("trees", help="R(n,l,x) and T(n,l) by enumeration")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("verify", help="run the identity harness")
    p.add_argument("--id", required=True, choices=["all"] + [i.value for i in IdentityId])
    p.add_argument("--variant", choices=sorted(VARIANTS), default="as_printed")
    p.add_argument("--ref", action="append", help="OEIS b-file (repeatable)")
    range_opts(p)
    out_opts(p, ["text", "json"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oeis-check", help="compare a table against a local b-file")
    p.add_argument("--bfile")
    p.add_argument("--kind", choices=["eulerian", "trees_T"], default="eulerian")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--reverse", action="store_true", help="read each row backwards")
    p.add_argument("--footnote", action="store_true",
                   help="tree leaf counts vs A120434 / doubled A144696")
    p.add_argument("--ref", action="append", help="b-file for --footnote (repeatable)")
    range_opts(p)
    out_opts(p, ["text", "json"])
    p.set_defaults(func=cmd_oeis_check)

    p = sub.add_parser("cache", help="manage the table cache")
    p.add_argument("action", choices=["save", "info", "clear"])
    p.add_argument("--kind", choices=TABLE_KINDS, default="eulerian")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--method", choices=["recurrence", "enumeration", "closed_form"],
                   default="recurrence")
    p.add_argument("--cache", help="cache file (default $EULERIAN_LAB_CACHE)")
    p.set_defaults(func=cmd_cache)
    return ap


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (EulerianLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
