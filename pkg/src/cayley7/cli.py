"""Command-line front end: rows, the n-list, Cayley checks, covers, selftest."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import verify
from .atlas import default_witness_dir, resolve_group
from .graphs import cayley_graph
from .search import SubgroupSearchBudget

DESK_ROWS = (6, 7, 8, 15, 16, 17, 18)
TSV_COLUMNS = ("row", "M", "|G|", "|Mv|", "factorization", "g_count", "g2elt_count",
               "method", "expected", "match")
EXIT_MATCH, EXIT_MISMATCH, EXIT_UNKNOWN = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    rows: tuple = DESK_ROWS
    seed: int = 0
    format: str = "tsv"
    emit_graph: Path | None = None
    witness_dir: Path = field(default_factory=default_witness_dir)
    budget: SubgroupSearchBudget = field(default_factory=SubgroupSearchBudget)
    jobs: int = 1
    paranoid: bool = False
    manifest: Path | None = None
    count: int = 3


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    out.write("\t".join(TSV_COLUMNS) + "\n")
    for r in records:
        out.write("\t".join(str(r[c]) for c in TSV_COLUMNS) + "\n")


def _row_job(args):
    spec, witness_dir, paranoid, budget, seed, want_graph = args
    res = verify.verify_row(spec, witness_dir, paranoid=paranoid, budget=budget, seed=seed)
    rec = res.record()
    graph_text = None
    trips = []
    for M, Mv, g in res.feasible:
        if M.order() // Mv.order() > verify.COSET_INDEX_LIMIT:
            trips.append({"skipped": "coset graph too large"})
            continue
        cg, prof = verify.sabidussi_roundtrip(M, Mv, g)
        trips.append({"vertices": cg.graph.n, "valency": cg.valency,
                      "connected": cg.graph.is_connected(), "stabilizer": prof.order,
                      "s": prof.s, "case": prof.prop210_match})
        if want_graph and graph_text is None:
            graph_text = cg.graph.to_edge_list()
    rec["roundtrip"] = trips
    return rec, graph_text


def _exit_status(records: list[dict]) -> int:
    if any(r["match"] == "false" for r in records):
        return EXIT_MISMATCH
    if any(r["match"] == "unknown" for r in records):
        return EXIT_UNKNOWN
    return EXIT_MATCH


def run_rows(cfg: RunConfig, out=None) -> int:
    specs = [s for s in verify.load_manifest(cfg.manifest) if s.row_id in set(cfg.rows)]
    missing = set(cfg.rows) - {s.row_id for s in specs}
    if missing:
        raise SystemExit(f"rows not in manifest: {sorted(missing)}")
    jobs = [(s, cfg.witness_dir, cfg.paranoid, cfg.budget, cfg.seed, cfg.emit_graph is not None)
            for s in specs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_row_job, jobs))
    else:
        results = [_row_job(j) for j in jobs]
    records = [r for r, _ in results]
    if cfg.format == "tsv":
        for r in records:
            r.pop("roundtrip")
    _emit(records, cfg.format, out)
    if cfg.emit_graph is not None:
        text = next((t for _, t in results if t is not None), None)
        if text is None:
            print("no feasible element, no graph written", file=sys.stderr)
        else:
            Path(cfg.emit_graph).write_text(text)
    return _exit_status(records)


def run_nlist(cfg: RunConfig, out=None) -> int:
    for n in verify.admissible_n_list():
        out.write(f"{n}\n")
    return EXIT_MATCH


def run_cayley(cfg: RunConfig, out=None) -> int:
    A5 = resolve_group("A:5")
    ok = True
    records = []
    for i, S in enumerate(verify.diverse_seven_valent_sets(A5, cfg.count, seed=cfg.seed)):
        rep = verify.cayley_normality_check(A5, S, cfg.budget)
        ok &= rep.godsil_holds
        records.append({"graph": i, "vertices": rep.vertex_count, "aut_order": rep.aut_order,
                        "normal": rep.normal, "normalizer_order": rep.normalizer_order,
                        "aut_G_S": rep.aut_fixing_order, "godsil": rep.godsil_holds})
        if i == 0 and cfg.emit_graph is not None:
            Path(cfg.emit_graph).write_text(cayley_graph(A5, S).graph.to_edge_list())
    _emit_plain(records, cfg.format, out)
    return EXIT_MATCH if ok else EXIT_MISMATCH


def run_covers(cfg: RunConfig, out=None) -> int:
    checks = verify.covering_group_checks(cfg.witness_dir, seed=cfg.seed)
    records = [{"group": c.name, "order": c.order,
                "index7_classes": ";".join(f"{o}/{z}/{'perfect' if p else 'not-perfect'}"
                                           for o, z, p in c.classes),
                "ok": c.ok} for c in checks]
    _emit_plain(records, cfg.format, out)
    return EXIT_MATCH if all(c.ok for c in checks) else EXIT_MISMATCH


def _emit_plain(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    if records:
        cols = list(records[0])
        out.write("\t".join(cols) + "\n")
        for r in records:
            out.write("\t".join(str(r[c]).lower() if isinstance(r[c], bool) else str(r[c])
                                for c in cols) + "\n")


def run_selftest(cfg: RunConfig, out=None) -> int:
    from . import selftest
    results = selftest.run_all(cfg)
    for name, ok, detail in results:
        out.write(f"{name}\t{'pass' if ok else 'FAIL'}\t{detail}\n")
    return EXIT_MATCH if all(ok for _, ok, _ in results) else EXIT_MISMATCH


COMMANDS = {"table3": run_rows, "row": run_rows, "nlist": run_nlist, "cayley": run_cayley,
            "covers": run_covers, "selftest": run_selftest}


def _parse_rows(text: str) -> tuple:
    return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley7", description=__doc__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("row_id", nargs="?", type=int, help="row number for the 'row' command")
    p.add_argument("--rows", type=_parse_rows, default=DESK_ROWS)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--emit-graph", type=Path, default=None)
    p.add_argument("--witness-dir", type=Path, default=default_witness_dir())
    p.add_argument("--manifest", type=Path, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-limit", type=int, default=20_000_000)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--count", type=int, default=3, help="graphs for the 'cayley' command")
    p.add_argument("--paranoid", action="store_true")
    return p


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    rows = a.rows
    if a.command == "row":
        if a.row_id is None:
            raise SystemExit("the 'row' command needs a row number")
        rows = (a.row_id,)
    if not a.witness_dir.is_dir():
        raise SystemExit(f"witness directory {a.witness_dir} does not exist")
    return RunConfig(a.command, rows, a.seed, a.format, a.emit_graph, a.witness_dir,
                     SubgroupSearchBudget(a.node_limit, a.time_limit), max(1, a.jobs),
                     a.paranoid, a.manifest, a.count)


def run(cfg: RunConfig, out=None) -> int:
    return COMMANDS[cfg.command](cfg, out or sys.stdout)


def main(argv=None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
