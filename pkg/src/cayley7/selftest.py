"""Invariant suites run by ``cayley7 selftest``; each returns (ok, detail)."""

from __future__ import annotations

import random

from . import oracles, verify
from .atlas import WitnessError, builtin_group, load_witness
from .graphs import (bipartite_double_cover, complete_graph, cycle_graph, lift_to_double_cover,
                     quotient_graph, s_arc_transitivity)
from .automorphisms import graph_automorphisms
from .groups import PermGroup
from .perm import compose, from_cycles, inv, mul
from .search import centralizer_in_group, centralizer_in_sym, core, intersection, normalizer


def suite_perm(cfg):
    rng = random.Random(cfg.seed)
    for _ in range(200):
        n = rng.randint(1, 9)
        p, q = rng.sample(range(n), n), rng.sample(range(n), n)
        r = mul(p, q)
        if any(r[x] != q[p[x]] for x in range(n)) or mul(p, inv(p)) != tuple(range(n)):
            return False, "composition or inverse disagrees with the pointwise oracle"
    # (0 1) then (1 2) sends 0 to 2
    if compose(from_cycles([(0, 1)], 3), from_cycles([(1, 2)], 3))[0] != 2:
        return False, "left-to-right convention broken"
    return True, "200 random products"


def suite_chain(cfg):
    for name in ("S:4", "A:5", "S:5", "A:6", "PSL32@7", "PSL32@8", "S:7"):
        G = builtin_group(name)
        if G.order() != len(oracles.closure(G.generators, G.degree)):
            return False, f"{name}: chain order differs from element count"
    return True, "orders agree with closure for 7 groups"


def suite_search(cfg):
    rng = random.Random(cfg.seed)
    S7 = builtin_group("S:7")
    full = oracles.closure(S7.generators, 7)
    pairs = 0
    while pairs < 25:
        H = PermGroup([S7.random_element(rng) for _ in range(rng.randint(1, 2))], degree=7)
        K = PermGroup([S7.random_element(rng) for _ in range(rng.randint(1, 2))], degree=7)
        if H.order() > 720 or K.order() > 720:
            continue
        he = oracles.closure(H.generators, 7)
        ke = oracles.closure(K.generators, 7)
        if intersection(H, K).order() != len(he & ke):
            return False, "intersection"
        if normalizer(S7, H).order() != len(oracles.normalizer(full, he)):
            return False, "normalizer"
        if centralizer_in_group(S7, H).order() != len(oracles.centralizer(full, he)):
            return False, "centralizer"
        if core(S7, H).order() != len(oracles.core(full, he)):
            return False, "core"
        pairs += 1
    return True, f"{pairs} random pairs in S7"


def suite_centralizer_sym(cfg):
    for name in ("C:7", "PSL32@7", "A:5", "S:5", "PSL32@8", "A:7"):
        G = builtin_group(name)
        C = centralizer_in_sym(G)
        if not oracles.is_semiregular(oracles.closure(C.generators, G.degree)):
            return False, f"{name}: centralizer in Sym not semiregular"
    C = centralizer_in_sym(builtin_group("C:7"))
    if C.order() != 7 or not C.is_transitive():
        return False, "regular group: centralizer not regular of equal order"
    return True, "semiregular on transitive groups"


def suite_graphs(cfg):
    K8 = complete_graph(8)
    if graph_automorphisms(K8).order() != 40320 or graph_automorphisms(cycle_graph(6)).order() != 12:
        return False, "automorphism orders"
    if s_arc_transitivity(builtin_group("A:8"), K8) != 2:
        return False, "A8 on K8 should be 2-arc-transitive"
    cover, deck = bipartite_double_cover(K8)
    X = PermGroup([lift_to_double_cover(g) for g in builtin_group("S:8").generators] + [deck])
    Q, rep = quotient_graph(cover, X, PermGroup([deck]))
    if Q is None or Q.edges() != K8.edges() or not rep.normal_cover:
        return False, "double cover quotient"
    return True, "K8, C6, s-arcs, double cover"


def suite_nlist(cfg):
    got = verify.admissible_n_list()
    return len(got) == 15, f"{len(got)} values"


def suite_conjclass(cfg):
    bad = [n for n in ("A:5", "A:6", "A:7", "PSL32@7") if verify.conjclass_size7_check(builtin_group(n))]
    pos = verify.conjclass_size7_check(builtin_group("C:8"))
    return not bad and pos, "no 7-element class union for A5, A6, A7, PSL(3,2)"


def suite_covers(cfg):
    try:
        for name in ("2A7.wit", "3A7.wit"):
            load_witness(cfg.witness_dir / name)
        checks = verify.covering_group_checks(cfg.witness_dir, seed=cfg.seed)
    except (WitnessError, OSError) as exc:
        return False, str(exc)
    return all(c.ok for c in checks), "; ".join(f"{c.name}: {c.classes}" for c in checks)


def suite_godsil(cfg):
    A5 = builtin_group("A:5")
    sets = verify.diverse_seven_valent_sets(A5, 3, seed=cfg.seed)
    reps = [verify.cayley_normality_check(A5, S) for S in sets]
    return all(r.godsil_holds for r in reps), ", ".join(
        f"|A|={r.aut_order} |N|={r.normalizer_order}" for r in reps)


def suite_table3(cfg):
    specs = [s for s in verify.load_manifest(cfg.manifest) if s.row_id in verify_rows()]
    bad = []
    for s in specs:
        res = verify.verify_row(s, cfg.witness_dir, budget=cfg.budget, seed=cfg.seed)
        if res.match is not True:
            bad.append(f"row {s.row_id} {s.G_name}/{s.Mv_name}: {res.computed}")
    return not bad, "; ".join(bad) or f"{len(specs)} records match"


def verify_rows():
    from .cli import DESK_ROWS
    return DESK_ROWS


SUITES = [("perm", suite_perm), ("chain", suite_chain), ("search", suite_search),
          ("centralizer-sym", suite_centralizer_sym), ("graphs", suite_graphs),
          ("nlist", suite_nlist), ("conjclass", suite_conjclass), ("covers", suite_covers),
          ("godsil", suite_godsil), ("table3", suite_table3)]


def run_all(cfg) -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in SUITES:
        try:
            ok, detail = fn(cfg)
        except Exception as exc:  # failures are reported, not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
