"""Command-line entry point: ``hfree <subcommand> ...``.

Machine-readable output (JSON / JSONL) goes to stdout or ``--out`` files;
human-readable tables go to stderr.  Exit codes: 0 success, 1 a check or
verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import defaultdict
from dataclasses import asdict, dataclass

from .audit import audit, audit_s_minus
from .enumeration import (EXHAUSTIVE_MAX_M, TIE_TOL, CheckpointError, EnumerationError,
                          EnumerationTask, RunRecord, enumerate_connected, read_records)
from .families import FamilyError, parse_family_spec
from .graph import GraphError, parse_graph6, write_graph6
from .search import SearchConfig, SearchError, check_trace, hill_climb
from .spectral import ConvergenceError, lemma22_bound, odd_bound, rho_prime, size_bound, spectral_radius
from .subgraph import contains_subgraph, named_pattern

DEFAULT_SEED = 20240601
WORKERS_ENV = "HFREE_WORKERS"
UNCONDITIONAL = ("edge_count_identity", "eigen_row_identity", "eigen_square_identity", "walk_bound")


class UsageError(Exception):
    pass


@dataclass
class Config:
    tol: float = 1e-12
    workers: int = 1
    checkpoint_dir: str | None = None
    out: str | None = None
    seed: int = DEFAULT_SEED

    def validate(self):
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if self.workers < 1:
            raise UsageError("worker count must be >= 1")
        return self


def load_config(path: str | None, env=None) -> Config:
    """Defaults, then the environment, then a key=value file.  Flags are applied later."""
    env = os.environ if env is None else env
    cfg = Config()
    if env.get(WORKERS_ENV):
        try:
            cfg.workers = int(env[WORKERS_ENV])
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer") from None
    if path:
        try:
            with open(path) as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        for num, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in Config.__dataclass_fields__:
                raise UsageError(f"{path}:{num}: expected one of "
                                 f"{sorted(Config.__dataclass_fields__)} as key=value")
            try:
                if key in ("workers", "seed"):
                    value = int(value)
                elif key == "tol":
                    value = float(value)
            except ValueError:
                raise UsageError(f"{path}:{num}: bad value for {key}") from None
            setattr(cfg, key, value)
    return cfg.validate()


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _graph(text: str):
    try:
        return parse_graph6(text)
    except GraphError as exc:
        raise UsageError(f"bad graph6 {text!r}: {exc}") from None


def _patterns(spec: str | None):
    if not spec:
        return (), ()
    names = tuple(s.strip() for s in spec.split(",") if s.strip())
    try:
        return tuple(named_pattern(n) for n in names), names
    except (GraphError, ValueError, KeyError) as exc:
        raise UsageError(f"unknown pattern in {spec!r}: {exc}") from None


def _m_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad size range {text!r} (expected K or LO..HI)") from None


def _table(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------

def cmd_families(args, cfg):
    try:
        g = parse_family_spec(args.spec).build()
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    _emit({"graph6": write_graph6(g), "n": g.n, "m": g.m, "degrees": g.degrees()}, cfg.out)
    return 0


def cmd_rho(args, cfg):
    g = _graph(args.graph6)
    try:
        res = spectral_radius(g, tol=cfg.tol)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit({"rho": res.rho, "residual": res.residual, "iterations": res.iterations}, cfg.out)
    return 0


def cmd_rho_prime(args, cfg):
    m = args.m
    if m < 6 or m % 2:
        raise UsageError("rho-prime needs an even m >= 6")
    _emit({"m": m, "rho_prime": rho_prime(m), "lower_bound": lemma22_bound(m),
           "upper_bound": odd_bound(m)}, cfg.out)
    return 0


def cmd_check(args, cfg):
    host = _graph(args.graph6)
    pattern = _patterns(args.pattern)[0][0]
    witness = contains_subgraph(host, pattern)
    _emit({"contains": witness is not None, "witness": witness}, cfg.out)
    return 0


def _summary_row(m: int, records) -> dict:
    best = max(records, key=lambda r: r.rho) if records else None
    bound = size_bound(m)
    row = {"m": m, "count": len(records), "max_rho": best.rho if best else None,
           "bound": bound, "extremal_graph6": best.graph6 if best else ""}
    if best and bound is not None:
        row["tight"] = "yes" if abs(best.rho - bound) <= TIE_TOL else "no"
        row["gap"] = bound - best.rho
    else:
        row["tight"], row["gap"] = "n/a", None
    return row


def cmd_enumerate(args, cfg):
    filters, names = _patterns(args.forbid)
    if not 1 <= args.m <= EXHAUSTIVE_MAX_M:
        raise UsageError(f"--m must lie in 1..{EXHAUSTIVE_MAX_M}")
    task = EnumerationTask(args.m, filters, restrict_connected=not args.no_isolated, filter_names=names)
    checkpoint = args.checkpoint
    if checkpoint is None and cfg.checkpoint_dir and not args.no_isolated:
        checkpoint = os.path.join(cfg.checkpoint_dir, f"enumerate-m{args.m}-{task.fingerprint()[:12]}.json")
    resuming = checkpoint is not None and os.path.exists(checkpoint)
    out = cfg.out
    fh = open(out, "a" if resuming else "w") if out else sys.stdout
    records = []

    def consume(rec):
        fh.write(rec.to_json() + "\n")
        records.append(rec)

    try:
        total = enumerate_connected(task, consume, checkpoint=checkpoint, workers=cfg.workers)
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if out:
            fh.close()
        else:
            fh.flush()
    row = _summary_row(args.m, records)
    row["count"] = total
    if checkpoint and os.path.exists(checkpoint):
        # earlier invocations may hold the maximiser
        with open(checkpoint) as cf:
            best = json.load(cf).get("best")
        if best and (row["max_rho"] is None or best["rho"] > row["max_rho"]):
            row.update(_summary_row(args.m, [RunRecord(**best)]), count=total)
    table = _table([row], ["m", "count", "max_rho", "extremal_graph6", "bound", "tight", "gap"])
    print(table, end="", file=sys.stderr)
    if args.csv:
        with open(args.csv, "w") as cf:
            cf.write(table)
    return 0


def cmd_search(args, cfg):
    filters, _ = _patterns(args.forbid)
    sc = SearchConfig(args.m, filters, restarts=args.restarts, move_budget=args.budget,
                      rng_seed=cfg.seed, workers=cfg.workers)
    try:
        trace = hill_climb(sc)
    except SearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lines = [json.dumps(asdict(r), sort_keys=True) for r in trace.restarts]
    summary = {"m": args.m, "best_graph6": write_graph6(trace.best_graph), "best_rho": trace.best_rho,
               "restarts": len(trace.restarts), "seed": cfg.seed}
    bound = size_bound(args.m)
    if bound is not None:
        summary["bound"] = bound
        summary["hit_rate"] = trace.hit_rate(bound)
    problems = check_trace(trace)
    summary["trace_problems"] = len(problems)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    _emit(summary)
    for p in problems:
        print(f"warning: {p}", file=sys.stderr)
    return 1 if problems else 0


def cmd_audit(args, cfg):
    if args.fixture:
        if args.fixture != "s-minus":
            raise UsageError("only the s-minus fixture exists")
        if not args.m:
            raise UsageError("--fixture needs --m")
        results, ok_all = [], True
        for m in _m_range(args.m):
            if m % 2 or m < 6:
                continue
            rep, ok = audit_s_minus(m)
            ok_all &= ok
            results.append({"m": m, "ok": ok, "report": rep.to_dict()})
            print(f"m={m}: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
        _emit(results, cfg.out)
        return 0 if ok_all and results else 1
    if not args.graph6:
        raise UsageError("audit needs a graph6 string or --fixture")
    rep = audit(_graph(args.graph6))
    if args.json or cfg.out:
        _emit(rep.to_dict(), cfg.out)
    else:
        for e in rep.entries:
            print(f"{e.status:15s} {e.name:32s} {e.note}", file=sys.stderr)
    # structural predicates are observations; only identities that hold for
    # every connected graph affect the exit code
    return 1 if rep.failures(UNCONDITIONAL) else 0


def cmd_verify(args, cfg):
    from .acceptance import run_suite

    results = run_suite(quick=args.quick, workers=cfg.workers, seed=cfg.seed,
                        report=lambda s: print(s, file=sys.stderr))
    _emit([asdict(r) for r in results], cfg.out)
    return 0 if all(r.passed for r in results) else 1


def cmd_report(args, cfg):
    by_m = defaultdict(list)
    bad = 0
    for path in args.inputs:
        try:
            with open(path) as fh:
                recs, nbad = read_records(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        bad += nbad
        for r in recs:
            by_m[r.m].append(r)
    rows = [_summary_row(m, by_m[m]) for m in sorted(by_m)]
    columns = ["m", "count", "max_rho", "bound", "extremal_graph6", "tight", "gap"]
    if args.format == "markdown":
        text = "| " + " | ".join(columns) + " |\n|" + "---|" * len(columns) + "\n"
        text += "".join("| " + " | ".join(str(r[c]) for c in columns) + " |\n" for r in rows)
    else:
        text = _table(rows, columns)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if bad:
        print(f"warning: skipped {bad} malformed record(s)", file=sys.stderr)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file (tol, workers, seed, checkpoint_dir, out)")
    common.add_argument("--workers", type=int, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    common.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED})")
    common.add_argument("--out", help="write machine output to this file")

    p = argparse.ArgumentParser(prog="hfree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("families", parents=[common], help="build a named graph family member")
    s.add_argument("spec", help="e.g. s_minus:21, s:6, h(4,3), f_prime(12,3)")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("rho", parents=[common], help="spectral radius of a graph6 graph")
    s.add_argument("graph6")
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("rho-prime", parents=[common], help="largest root of the even-size quartic")
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_rho_prime)

    s = sub.add_parser("check", parents=[common], help="subgraph containment with witness")
    s.add_argument("graph6")
    s.add_argument("--pattern", required=True, help="pattern name (h43, h33, f5, ...) or graph6")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("enumerate", parents=[common], help="isomorph-free enumeration by size")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--forbid", help="comma-separated pattern names")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--connected-only", action="store_true", help="connected graphs only (default)")
    g.add_argument("--no-isolated", action="store_true",
                   help="all graphs without isolated vertices (m <= 8 cross-checks)")
    s.add_argument("--checkpoint", help="checkpoint file; resumed when present")
    s.add_argument("--csv", help="also write the summary table to this CSV file")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", parents=[common], help="hill climbing with restarts")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--forbid", default="h43")
    s.add_argument("--restarts", type=int, default=50)
    s.add_argument("--budget", type=int, default=500)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("audit", parents=[common], help="proof-step audit ledger")
    s.add_argument("graph6", nargs="?")
    s.add_argument("--json", action="store_true")
    s.add_argument("--fixture", help="s-minus")
    s.add_argument("--m", help="size or LO..HI range for --fixture")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", choices=("paper", "acceptance"), default="acceptance",
                   help="both names select the acceptance criteria")
    s.add_argument("--quick", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="summarise RunRecord JSONL files")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--format", choices=("csv", "markdown"), default="csv")
    s.set_defaults(func=cmd_report)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if args.workers is not None:
            cfg.workers = args.workers
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        if getattr(args, "tol", None) is not None:
            cfg.tol = args.tol
        cfg.validate()
        return args.func(args, cfg)
    except (UsageError, EnumerationError, SearchError, GraphError) as exc:
        if isinstance(exc, CheckpointError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
