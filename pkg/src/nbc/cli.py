"""nbc: command-line front end.

Exit status: 0 success, 1 negative result, 2 input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from collections import Counter
from decimal import Decimal
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__
from .algebra import VERIFIED, canonical_json, verify_nbc
from .bounds import CSV_HEADER, FAMILY_BUILDERS, BoundsError, bound_report, family_asymptotics, format_sig
from .checks import check_splitting, groebner_gap_check
from .chromatic import ComplexUndefined, chromatic_polynomial, f_h_vectors
from .families import FAMILIES, generate_family, phi_graph, theta_labelings
from .families import _cycle_sequences
from .graph import GraphError, OrderedGraph, format_graph, parse_graph
from .poly import FieldError, field_name, parse_field
from .search import EXHAUSTED, FOUND, STRATEGIES, search_ordering, small_blocks

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

VERIFY_MAX_Q = 24
EXHAUSTIVE_MAX_Q = 18
DEFAULT_STORE = Path.home() / ".cache" / "nbc"


class InputError(Exception):
    pass


def read_graph(path: str) -> OrderedGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_range(text: str) -> list[int]:
    """'2..12' or '2:12' (inclusive) or '3,5,8'."""
    try:
        for sep in ("..", ":"):
            if sep in text:
                lo, hi = text.split(sep)
                return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad range {text!r}") from None


# ---------------------------------------------------------------------------
# single-graph commands


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    if g.q > args.max_q:
        raise InputError(f"q = {g.q} exceeds the verify cap {args.max_q} (raise it with --max-q)")
    cert = verify_nbc(g, args.field, circuit_cap=args.max_circuits)
    if args.format == "text":
        lines = [
            f"p={g.p} q={g.q} k={g.k} field={field_name(cert.field)}",
            f"verdict: {cert.verdict}",
            "d  dim  rank  |L_d|  h_d  indep",
        ]
        for r in cert.records:
            flag = " (implied)" if r.implied else ""
            lines.append(f"{r.degree:<2} {r.monomial_dim:>4} {r.ideal_rank:>5} {r.basis_count:>6} {r.h:>4}  {r.independent}{flag}")
        emit("\n".join(lines) + "\n", args.out)
    else:
        emit(cert.to_json(), args.out)
    return EXIT_OK if cert.verdict == VERIFIED else EXIT_NEGATIVE


def cmd_chromatic(args) -> int:
    g = read_graph(args.graph)
    data = chromatic_polynomial(g)
    out = {"p": g.p, "q": g.q, "coefficients": list(data.coefficients)}
    try:
        fh = f_h_vectors(g)
        out.update(f_vector=list(fh.f_vector), h_vector=list(fh.h_vector), alpha=fh.alpha)
    except ComplexUndefined as exc:
        out.update(f_vector=None, h_vector=None, alpha=0, note=str(exc))
    if args.format == "text":
        lines = [f"{k}: {v}" for k, v in out.items()]
        emit("\n".join(lines) + "\n", args.out)
    else:
        emit(canonical_json(out), args.out)
    return EXIT_OK


def _bounds_table_text(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def cmd_bounds(args) -> int:
    if args.family:
        if args.graph:
            raise InputError("give either a graph or --family, not both")
        if not args.range:
            raise InputError("--family needs --range")
        try:
            table = family_asymptotics(args.family, _parse_range(args.range), exact=args.exact)
        except BoundsError as exc:
            raise InputError(str(exc)) from None
        if args.format == "json":
            payload = {
                "family": table.family,
                "rows": [dict(param=r.param, **r.report.to_dict()) for r in table.rows],
                "checks": table.checks,
            }
            emit(canonical_json(payload), args.out)
        elif args.format == "csv":
            emit(table.to_csv(), args.out)
        else:
            rows = [list(CSV_HEADER)] + [r.csv_fields() for r in table.rows]
            failed = [name for name, ok in table.checks.items() if not ok]
            text = _bounds_table_text(rows) + ("checks: all passed\n" if not failed else f"checks failed: {failed}\n")
            emit(text, args.out)
        return EXIT_OK if table.ok else EXIT_NEGATIVE
    if not args.graph:
        raise InputError("give a graph file or --family")
    g = read_graph(args.graph)
    rep = bound_report(g, with_exact=args.exact, certify=args.certify)
    if args.format == "csv":
        fields = [
            "",
            str(rep.p), str(rep.q), str(rep.k),
            "" if rep.alpha is None else str(rep.alpha),
            str(rep.gamma), format_sig(rep.beta), str(rep.fredman), str(rep.two_q),
            "" if not rep.alpha else format_sig(rep.gamma / rep.alpha),
            format_sig(rep.beta / rep.gamma),
        ]
        emit(",".join(CSV_HEADER) + "\n" + ",".join(fields) + "\n", args.out)
    elif args.format == "text":
        emit("".join(f"{k}: {v}\n" for k, v in rep.to_dict().items()), args.out)
    else:
        emit(canonical_json(rep.to_dict()), args.out)
    return EXIT_NEGATIVE if rep.violations() else EXIT_OK


def cmd_search(args) -> int:
    g = read_graph(args.graph)
    if args.strategy == "exhaustive" and g.q > EXHAUSTIVE_MAX_Q:
        raise InputError(f"exhaustive search is capped at q <= {EXHAUSTIVE_MAX_Q}")
    res = search_ordering(
        g, args.strategy, budget=args.budget, seed=args.seed, field=args.field, workers=args.workers
    )
    payload = res.to_dict()
    payload["strategy"] = args.strategy
    payload["seed"] = args.seed
    if args.format == "text":
        lines = [f"status: {res.status}", f"tried: {res.tried}", f"verdicts: {dict(res.verdicts)}"]
        if res.certificate is not None:
            lines.append(format_graph(res.certificate.graph()).rstrip())
        emit("\n".join(lines) + "\n", args.out)
    else:
        emit(canonical_json(payload), args.out)
    if res.status == FOUND:
        return EXIT_OK
    return EXIT_NEGATIVE if res.status == EXHAUSTED else EXIT_BUDGET


def cmd_family(args) -> int:
    if args.list:
        sys.stdout.write("".join(f"{v}\n" for v in FAMILIES.values()))
        return EXIT_OK
    desc = args.name
    if ":" not in desc:
        name = desc
        if args.lengths:
            arg = args.lengths + (f"/{args.offsets}" if args.offsets else "")
        elif args.n is not None and args.t is not None:
            arg = f"{args.n}x{args.t}"
        elif args.t is not None:
            arg = str(args.t)
        elif args.n is not None:
            arg = str(args.n)
        else:
            raise InputError("give --n/--t, --lengths, or a descriptor such as theta:2x3")
        desc = f"{name}:{arg}"
    emit(format_graph(generate_family(desc)), args.out)
    return EXIT_OK


def cmd_splitting(args) -> int:
    g = read_graph(args.graph)
    rep = check_splitting(g)
    payload = {
        "w": rep.w,
        "holds": rep.holds,
        "sizes": list(rep.sizes),
        "L": [list(m) for m in rep.L],
        "L_deleted": [list(m) for m in rep.L_deleted],
        "L_contracted": [list(m) for m in rep.L_contracted],
    }
    if args.format == "text":
        a, b, c = rep.sizes
        emit(f"w = {rep.w}\n|L(G)| = {a} = {b} + {c}\nholds: {rep.holds}\n", args.out)
    else:
        emit(canonical_json(payload), args.out)
    return EXIT_OK if rep.holds else EXIT_NEGATIVE


def cmd_groebner(args) -> int:
    rep = groebner_gap_check(args.field)
    payload = {
        "field": field_name(rep.field),
        "slice_rank": rep.slice_rank,
        "slice_dim": rep.slice_dim,
        "membership": rep.membership,
        "chosen_in_support": rep.chosen_in_support,
        "gap": rep.gap,
    }
    if args.format == "text":
        lines = [f"field {field_name(rep.field)}: degree-3 slice rank {rep.slice_rank} of {rep.slice_dim}"]
        lines += [f"{name} in J: {member}" for name, member in rep.membership.items()]
        lines.append(f"no term order realises the chosen monomials: {rep.gap}")
        emit("\n".join(lines) + "\n", args.out)
    else:
        emit(canonical_json(payload), args.out)
    return EXIT_OK if rep.gap else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class JobSpec:
    command: str  # "verify" or "bounds"
    graph: str  # graph file text
    field: int = 2
    label: str = ""
    param: int | None = None
    params: tuple = ()  # extra options that change the result, e.g. (("exact", True),)

    @property
    def key(self) -> str:
        body = canonical_json(
            {"command": self.command, "graph": self.graph, "field": self.field, "params": [list(p) for p in self.params]}
        )
        return hashlib.sha256(body.encode()).hexdigest()


def run_job(job: JobSpec) -> dict:
    g = parse_graph(job.graph)
    record = {
        "key": job.key,
        "command": job.command,
        "field": field_name(job.field),
        "label": job.label,
        "param": job.param,
        "graph": job.graph,
    }
    try:
        if job.command == "verify":
            cert = verify_nbc(g, job.field)
            record["verdict"] = cert.verdict
            record["result"] = cert.to_dict()
        else:
            opts = dict(job.params)
            rep = bound_report(g, with_exact=opts.get("exact", False), certify=opts.get("certify", False))
            record["verdict"] = "violation" if rep.violations() else "ok"
            record["result"] = rep.to_dict()
    except (GraphError, FieldError) as exc:
        record["verdict"] = "error"
        record["error"] = str(exc)
    return record


def _store_path(store: Path, key: str) -> Path:
    return store / key[:2] / f"{key}.json"


def _run_and_store(args) -> str:
    job, store = args
    record = run_job(job)
    atomic_write(_store_path(store, job.key), canonical_json(record))
    return record["verdict"]


def sweep(jobs: Iterable[JobSpec], store: Path, workers: int = 1) -> tuple[Counter, int, int]:
    """Run every job not already in the store; returns (verdict counts, computed, skipped)."""
    store = Path(store)
    try:
        store.mkdir(parents=True, exist_ok=True)
        probe = store / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise InputError(f"store {store} is not writable: {exc.strerror}") from None
    counts: Counter = Counter()
    todo = []
    skipped = 0
    seen = set()
    for job in jobs:
        if job.key in seen:
            continue
        seen.add(job.key)
        path = _store_path(store, job.key)
        if path.exists():
            counts[json.loads(path.read_text())["verdict"]] += 1
            skipped += 1
        else:
            todo.append((job, store))
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(workers) as pool:
            for verdict in pool.map(_run_and_store, todo, chunksize=16):
                counts[verdict] += 1
    else:
        for item in todo:
            counts[_run_and_store(item)] += 1
    return counts, len(todo), skipped


def phi_opposite_graphs(max_q: int) -> Iterator[tuple[str, OrderedGraph]]:
    """Every cycle-length sequence with q <= max_q, each glue edge opposite its partner."""
    for lengths in _cycle_sequences(max_q):
        yield "phi:" + ",".join(map(str, lengths)), phi_graph(lengths)


def phi_all_graphs(max_q: int) -> Iterator[tuple[str, OrderedGraph]]:
    """Every cycle-length sequence with q <= max_q and every choice of glue offsets."""
    for lengths in _cycle_sequences(max_q):
        for offsets in product(*[range(1, n) for n in lengths[:-1]]):
            desc = "phi:" + ",".join(map(str, lengths))
            if offsets:
                desc += "/" + ",".join(map(str, offsets))
            yield desc, phi_graph(lengths, offsets)


def sweep_sources(source: str, max_q: int | None, params: list[int] | None) -> Iterator[tuple[str, str, int | None, OrderedGraph]]:
    """(command, label, param, graph) for a named sweep source."""
    if source == "theta":
        for lengths, g in theta_labelings(max_q or 14):
            yield "verify", "theta:" + ",".join(map(str, lengths)), None, g
    elif source == "phi":
        for desc, g in phi_all_graphs(max_q or 14):
            yield "verify", desc, None, g
    elif source == "phi-opposite":
        for desc, g in phi_opposite_graphs(max_q or 14):
            yield "verify", desc, None, g
    elif source == "blocks":
        for i, g in enumerate(small_blocks(max_q or 7)):
            yield "verify", f"block#{i}", i, g
    elif source.startswith("bounds:"):
        name = source.split(":", 1)[1]
        if name not in FAMILY_BUILDERS:
            raise InputError(f"unknown bounds family {name!r}; choose from {sorted(FAMILY_BUILDERS)}")
        build, lo, hi = FAMILY_BUILDERS[name]
        if not params:
            raise InputError("bounds sweeps need --range")
        if min(params) < lo or max(params) > hi:
            raise InputError(f"{name} parameters must lie in {lo}..{hi}")
        for x in params:
            yield "bounds", name, x, build(x)
    else:
        raise InputError(f"unknown sweep source {source!r}")


def resolve_store(arg: str | None) -> Path:
    if arg:
        return Path(arg)
    env = os.environ.get("NBC_CACHE_DIR")
    return Path(env) if env else DEFAULT_STORE


def cmd_sweep(args) -> int:
    store = resolve_store(args.store)
    rng = _parse_range(args.range) if args.range else None
    fields = [parse_field(f) for f in args.field]
    jobs = []
    for source in args.source:
        for command, label, param, g in sweep_sources(source, args.max_q, rng):
            text = format_graph(g)
            if command == "verify":
                for f in fields:
                    jobs.append(JobSpec("verify", text, f, label, param))
            else:
                jobs.append(JobSpec("bounds", text, 2, label, param, (("exact", bool(args.exact)),)))
    counts, computed, skipped = sweep(jobs, store, args.workers)
    print(f"computed {computed}, reused {skipped}", file=sys.stderr)
    summary = {"jobs": sum(counts.values()), "verdicts": dict(sorted(counts.items())), "sources": args.source}
    emit(canonical_json(summary), args.out)
    bad = {"cardinality-mismatch", "spanning-failure", "violation", "error"}
    return EXIT_NEGATIVE if bad & set(counts) else EXIT_OK


def load_store(store: Path) -> list[dict]:
    if not store.is_dir():
        return []
    return [json.loads(p.read_text()) for p in sorted(store.glob("*/*.json"))]


def cmd_report(args) -> int:
    store = resolve_store(args.store)
    records = [r for r in load_store(store) if r.get("command") == "bounds" and "result" in r]
    if not records:
        print(f"no bound reports in {store}", file=sys.stderr)
        return EXIT_NEGATIVE
    records.sort(key=lambda r: (r["label"], r["param"] if r["param"] is not None else -1, r["key"]))
    rows = []
    for r in records:
        res = r["result"]
        alpha, gamma = res["alpha"], res["gamma"]
        gamma_ratio = "" if not alpha else format_sig(Fraction(gamma, alpha))
        beta_ratio = format_sig(Fraction(Decimal(res["beta"])) / gamma)
        rows.append(
            [
                r["label"],
                "" if r["param"] is None else str(r["param"]),
                str(res["p"]), str(res["q"]), str(res["k"]),
                "" if alpha is None else str(alpha),
                str(gamma), res["beta"], str(res["fredman"]), str(res["two_q"]),
                gamma_ratio, beta_ratio,
            ]
        )
    if args.format == "csv":
        text = ",".join(CSV_HEADER) + "\n" + "".join(",".join(row[1:]) + "\n" for row in rows)
        emit(text, args.out)
    else:
        chunks = []
        for label in sorted({row[0] for row in rows}):
            group = [row[1:] for row in rows if row[0] == label]
            chunks.append(f"== {label} ==\n" + _bounds_table_text([list(CSV_HEADER)] + group))
        emit("\n".join(chunks), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nbc", description="Broken-circuit bases and acyclic orientation bounds.")
    ap.add_argument("--version", action="version", version=f"nbc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("verify", help="certify L(G) for a graph file")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--field", default="gf2")
    p.add_argument("--max-q", type=int, default=VERIFY_MAX_Q)
    p.add_argument("--max-circuits", type=int, default=10**6)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chromatic", help="chromatic polynomial, f- and h-vectors, acyclic count")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("bounds", help="acyclic orientation bounds for a graph or a family")
    p.add_argument("graph", nargs="?")
    p.add_argument("--exact", action="store_true", help="also compute alpha and h exactly")
    p.add_argument("--certify", action="store_true", help="verify L(G) so alpha <= gamma is backed")
    p.add_argument("--family", choices=sorted(FAMILY_BUILDERS))
    p.add_argument("--range", help="parameter range such as 2..12")
    common(p, ("json", "csv", "text"))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="search standard orderings for a verified one")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=STRATEGIES, default="exhaustive")
    p.add_argument("--budget", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--field", default="gf2")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", help="print a labeled family member in graph file format")
    p.add_argument("name", nargs="?", default="theta", help="family name or descriptor like theta:2x3")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--lengths", help="comma-separated path or cycle lengths")
    p.add_argument("--offsets", help="phi glue offsets")
    p.add_argument("--list", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sweep", help="batch runs with a content-addressed result store")
    p.add_argument("source", nargs="+", help="theta | phi | phi-opposite | blocks | bounds:<family>")
    p.add_argument("--max-q", type=int)
    p.add_argument("--range", help="parameter range for bounds sources")
    p.add_argument("--field", action="append", help="repeatable; default gf2")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--store")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="tables from bound reports in a store")
    p.add_argument("--store")
    common(p, ("text", "csv"))
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("splitting-check", help="L(G) = L(G - e_q) + x_k L(G / e_q)")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_splitting)

    p = sub.add_parser("groebner-gap", help="degree-3 membership test for the three-path theta ideal")
    p.add_argument("--field", default="gf3")
    common(p)
    p.set_defaults(func=cmd_groebner)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "field", None) is None and args.command == "sweep":
        args.field = ["gf2"]
    try:
        return args.func(args)
    except (InputError, GraphError, FieldError) as exc:
        print(f"nbc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
