"""Factorization verdicts, feasible elements and the related group checks."""

from __future__ import annotations

import itertools
import random
import shlex
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .atlas import default_witness_dir, resolve_group
from .graphs import (Graph, cayley_graph, coset_graph, s_arc_transitivity,
                     vertex_stabilizer_order)
from .automorphisms import graph_automorphisms
from .groups import PermGroup, conjugacy_classes, center, derived_subgroup
from .perm import inv, is_identity, is_two_element, mul, order as perm_order
from .search import (EXHAUSTIVE_LIMIT, BudgetExceeded, CosetCanon, SubgroupSearchBudget,
                     _signature, intersection, low_index_subgroups, normalizer,
                     right_transversal, subgroups_of_order_exhaustive)

VALENCY = 7
COSET_INDEX_LIMIT = 10**5

# -- stabilizer orders of 7-valent symmetric graphs, by s ---------------------

STABILIZER_ORDERS = {
    1: (7, 14, 21, 28, 63),
    2: (42, 84, 126, 168, 2520, 5040, 1344, 2688),
    3: (252, 4032, 2**6 * 3**4 * 5**2 * 7, 2**8 * 3**4 * 5**2 * 7, 2**7 * 3**4 * 5**2 * 7,
        2**10 * 3**2 * 7, 2**24 * 3**2 * 7),
}
# solvable stabilizer orders ruled out by the classification of the solvable case
SOLVABLE_EXCLUDED = frozenset({14, 28, 42, 126, 252})
ORDER_BOUND = 2**24 * 3**4 * 5**2 * 7
ADMISSIBLE_N = (7, 21, 63, 84, 168, 1344, 2520, 2688, 4032, 5040, 64512, 907200, 1814400,
                3628800, 1056964608)


def admissible_n_list() -> list[int]:
    """Stabilizer orders n with (A_n, A_{n-1}) still possible, sorted."""
    out = set()
    for orders in STABILIZER_ORDERS.values():
        for n in orders:
            if n % 7 == 0 and ORDER_BOUND % n == 0 and n not in SOLVABLE_EXCLUDED:
                out.add(n)
    result = sorted(out)
    if tuple(result) != ADMISSIBLE_N:
        raise AssertionError("admissible list differs from the transcribed values")
    return result


@dataclass
class StabilizerProfile:
    order: int
    s: int
    prop210_match: str  # "(1)", "(2)", "(3)" or "none"
    reason: str = ""


def stabilizer_profile(X: PermGroup, graph: Graph) -> StabilizerProfile:
    """|X_v|, s and the case of the stabilizer order list that contains |X_v|."""
    order = vertex_stabilizer_order(X)
    if graph.valency() != VALENCY:
        return StabilizerProfile(order, 0, "none", "graph is not 7-valent")
    if not graph.is_connected():
        return StabilizerProfile(order, 0, "none", "graph is not connected")
    s = s_arc_transitivity(X, graph, s_max=3)
    if s == 0:
        return StabilizerProfile(order, 0, "none", "action is not arc-transitive")
    if order in STABILIZER_ORDERS[s]:
        return StabilizerProfile(order, s, f"({s})")
    return StabilizerProfile(order, s, "none", "order not in the list for this s")


# -- factorizations ------------------------------------------------------------


def check_factorization(M: PermGroup, G: PermGroup, H: PermGroup, budget=None) -> bool:
    """M = GH, tested as |M| |G n H| = |G| |H|."""
    if not (G.is_subgroup_of(M) and H.is_subgroup_of(M)):
        raise ValueError("G and H must be subgroups of M")
    return M.order() * intersection(G, H, budget).order() == G.order() * H.order()


def impossibility_certificate(M_order: int, G_order: int, Mv: PermGroup) -> str:
    """'impossible' when no subgroup of Mv can be the intersection G n Mv."""
    num = G_order * Mv.order()
    if num % M_order:
        return "impossible"
    d = num // M_order
    if Mv.order() > EXHAUSTIVE_LIMIT:
        raise ValueError("subgroup beyond the exhaustive regime")
    return "inconclusive" if subgroups_of_order_exhaustive(Mv, d) else "impossible"


@dataclass
class FeasibleScan:
    classes: list  # (class id, |K|, |N_M(K)|, gate passed, feasible cosets, 2-element cosets)
    feasible: list  # feasible transversal elements g
    two_element: list  # per feasible g, whether its coset Kg holds a 2-element

    @property
    def g_count(self) -> int:
        return len(self.feasible)

    @property
    def g2elt_count(self) -> int:
        return sum(self.two_element)


def _coset_orbit_size(canon: CosetCanon, Mv: PermGroup, g, cap: int) -> int:
    """Size of the Mv-orbit of the coset Mv g, stopping past cap."""
    start = canon(g)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for h in Mv.generators:
            y = canon(mul(x, h))
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return len(seen)
                queue.append(y)
    return len(seen)


def _is_feasible(M_order: int, Mv: PermGroup, canon: CosetCanon, g) -> bool:
    if not Mv.contains(mul(g, g)):
        return False
    if _coset_orbit_size(canon, Mv, g, VALENCY) != VALENCY:
        return False
    return PermGroup(list(Mv.generators) + [g], degree=Mv.degree).order() == M_order


def reverify_feasible(M: PermGroup, Mv: PermGroup, g, budget=None) -> bool:
    """All four conditions on g, each recomputed from scratch."""
    gMg = PermGroup([mul(mul(inv(g), h), g) for h in Mv.generators], degree=Mv.degree)
    inter = intersection(Mv, gMg, budget)
    normalizes = all(inter.contains(mul(mul(inv(g), x), g)) for x in inter.generators)
    return (normalizes and Mv.contains(mul(g, g))
            and Mv.order() == VALENCY * inter.order()
            and PermGroup(list(M.generators), degree=M.degree).order()
            == PermGroup(list(Mv.generators) + [tuple(g)], degree=M.degree).order())


def feasible_elements(M: PermGroup, Mv: PermGroup, paranoid: bool = False,
                      budget=None, seed: int = 0) -> FeasibleScan:
    """Scan right transversals of index-7 subgroups K in N_M(K).

    The scan is skipped when <Mv, N_M(K)> is proper in M, unless paranoid.
    Feasibility is constant on each coset Kg, so the 2-element count records
    cosets containing an element of 2-power order.
    """
    M_order = M.order()
    canon = CosetCanon(Mv)
    classes, feasible, two = [], [], []
    for cid, K in enumerate(low_index_subgroups(Mv, VALENCY, seed=seed)):
        N = normalizer(M, K, budget)
        gate = PermGroup(list(Mv.generators) + list(N.generators), degree=M.degree).order() == M_order
        found = two_found = 0
        if gate or paranoid:
            k_elems = None
            for g in right_transversal(N, K, check=False):
                if not _is_feasible(M_order, Mv, canon, g):
                    continue
                if not reverify_feasible(M, Mv, g, budget):
                    raise AssertionError("feasible element failed re-verification")
                if k_elems is None:
                    k_elems = list(K.chain.elements())
                has2 = any(is_two_element(mul(k, g)) for k in k_elems)
                feasible.append(g)
                two.append(has2)
                found += 1
                two_found += has2
        if paranoid and not gate and found:
            raise AssertionError("gate skipped a class with feasible elements")
        classes.append((cid, K.order(), N.order(), gate, found, two_found))
    return FeasibleScan(classes, feasible, two)


# -- rows ----------------------------------------------------------------------


@dataclass
class RowSpec:
    row_id: int
    M: str
    G_order: int
    Mv_order: int
    expected_factorization: bool
    expected_g_exists: bool | None = None
    G_witness: str | None = None
    Mv_witness: str | None = None
    G_type: str | None = None
    Mv_type: str | None = None
    names: dict = field(default_factory=dict)

    @property
    def M_name(self) -> str:
        return self.names.get("M", self.M)

    @property
    def G_name(self) -> str:
        return self.names.get("G", self.G_witness or self.G_type or str(self.G_order))

    @property
    def Mv_name(self) -> str:
        return self.names.get("Mv", self.Mv_witness or self.Mv_type or str(self.Mv_order))


@dataclass
class RowResult:
    spec: RowSpec
    factorization: str  # yes, no or unknown
    method: str  # exhaustive, certificate, witness or unknown
    feasible_g_count: int = 0
    feasible_2element_g_count: int = 0
    per_subgroup_breakdown: list = field(default_factory=list)
    note: str = ""
    feasible: list = field(default_factory=list)  # (M, Mv, g), not serialized

    @property
    def g_exists(self):
        if self.factorization != "yes":
            return None
        return self.feasible_g_count > 0

    @property
    def expected(self) -> str:
        e = "yes" if self.spec.expected_factorization else "no"
        if self.spec.expected_g_exists is not None:
            e += "," + ("yes" if self.spec.expected_g_exists else "no")
        return e

    @property
    def computed(self) -> str:
        if self.factorization != "yes":
            return self.factorization
        return "yes," + ("yes" if self.g_exists else "no")

    @property
    def match(self):
        """True, False, or None when the verdict is unknown."""
        if self.factorization == "unknown":
            return None
        if (self.factorization == "yes") != self.spec.expected_factorization:
            return False
        if self.factorization == "yes" and self.spec.expected_g_exists is not None:
            return self.g_exists == self.spec.expected_g_exists
        return True

    def record(self) -> dict:
        return {
            "row": self.spec.row_id, "M": self.spec.M_name, "|G|": self.spec.G_order,
            "|Mv|": self.spec.Mv_order, "factorization": self.factorization,
            "g_count": self.feasible_g_count, "g2elt_count": self.feasible_2element_g_count,
            "method": self.method, "expected": self.expected,
            "match": "unknown" if self.match is None else str(self.match).lower(),
            "G": self.spec.G_name, "Mv": self.spec.Mv_name,
            "breakdown": [list(b) for b in self.per_subgroup_breakdown], "note": self.note,
        }


_SPEC_KEYS = {"M", "Gorder", "Mvorder", "Gwitness", "Mvwitness", "Gtype", "Mvtype",
              "expect", "Mname", "Gname", "Mvname"}


def parse_row_line(line: str) -> RowSpec:
    toks = shlex.split(line)
    if len(toks) < 2 or toks[0] != "row":
        raise ValueError(f"bad manifest line: {line!r}")
    kv = {}
    for t in toks[2:]:
        k, sep, v = t.partition("=")
        if not sep or k not in _SPEC_KEYS:
            raise ValueError(f"bad manifest field {t!r}")
        kv[k] = v
    for k in ("M", "Gorder", "Mvorder", "expect"):
        if k not in kv:
            raise ValueError(f"manifest line lacks {k}: {line!r}")
    exp = kv["expect"].split(",")
    if not 1 <= len(exp) <= 2 or any(e not in ("yes", "no") for e in exp):
        raise ValueError(f"bad expect field {kv['expect']!r}")
    names = {k[:-4]: kv[k] for k in ("Mname", "Gname", "Mvname") if k in kv}
    return RowSpec(int(toks[1]), kv["M"], int(kv["Gorder"]), int(kv["Mvorder"]),
                   exp[0] == "yes", (exp[1] == "yes") if len(exp) == 2 else None,
                   kv.get("Gwitness"), kv.get("Mvwitness"), kv.get("Gtype"), kv.get("Mvtype"),
                   names)


def load_manifest(path: str | Path | None = None) -> list[RowSpec]:
    path = Path(path) if path else Path(__file__).resolve().parent / "data" / "rows.manifest"
    specs = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            specs.append(parse_row_line(line))
    return specs


_group_cache: dict = {}
_class_cache: dict = {}


def _group(desc: str, witness_dir) -> PermGroup:
    key = (desc, str(witness_dir))
    if key not in _group_cache:
        _group_cache[key] = resolve_group(desc, witness_dir)
    return _group_cache[key]


def _classes(M: PermGroup, M_desc: str, order: int, type_desc: str | None, witness_dir):
    key = (M_desc, order)
    if key not in _class_cache:
        _class_cache[key] = subgroups_of_order_exhaustive(M, order)
    classes = _class_cache[key]
    if type_desc is None:
        return classes
    want = _signature(frozenset(_group(type_desc, witness_dir).chain.elements()))
    return [H for H in classes if _signature(frozenset(H.chain.elements())) == want]


def _feasible_into(res: RowResult, M, Mvs, paranoid, budget, seed):
    for j, Mv in enumerate(Mvs):
        scan = feasible_elements(M, Mv, paranoid=paranoid, budget=budget, seed=seed)
        res.feasible_g_count += scan.g_count
        res.feasible_2element_g_count += scan.g2elt_count
        res.per_subgroup_breakdown += [(j,) + c for c in scan.classes]
        res.feasible += [(M, Mv, g) for g in scan.feasible]


def verify_row(spec: RowSpec, witness_dir=None, paranoid: bool = False,
               budget: SubgroupSearchBudget | None = None, seed: int = 0) -> RowResult:
    """Factorization verdict, then feasible elements when it holds."""
    witness_dir = witness_dir or default_witness_dir()
    try:
        M = _group(spec.M, witness_dir)
        M_order = M.order()
        if spec.G_witness and spec.Mv_witness:
            G = _group(spec.G_witness, witness_dir)
            Mv = _group(spec.Mv_witness, witness_dir)
            for H, o in ((G, spec.G_order), (Mv, spec.Mv_order)):
                if H.order() != o or not H.is_subgroup_of(M):
                    raise ValueError("witness subgroup has the wrong order or ambient group")
            res = RowResult(spec, "no", "witness")
            if check_factorization(M, G, Mv, budget):
                res.factorization = "yes"
                res.note = f"|G n Mv| = {spec.G_order * spec.Mv_order // M_order}"
                _feasible_into(res, M, [Mv], paranoid, budget, seed)
            return res
        Mv_model = spec.Mv_witness or spec.Mv_type
        if Mv_model:
            model = _group(Mv_model, witness_dir)
            if model.order() != spec.Mv_order:
                raise ValueError("Mv model has the wrong order")
            if model.order() <= EXHAUSTIVE_LIMIT and \
                    impossibility_certificate(M_order, spec.G_order, model) == "impossible":
                return RowResult(spec, "no", "certificate",
                                 note="no subgroup of Mv has the forced intersection order")
        if M_order > EXHAUSTIVE_LIMIT:
            return RowResult(spec, "unknown", "unknown",
                             note="certificate inconclusive and M beyond the exhaustive regime")
        Gs = _classes(M, spec.M, spec.G_order, spec.G_type, witness_dir)
        Mvs = _classes(M, spec.M, spec.Mv_order, spec.Mv_type, witness_dir)
        good = [Mv for Mv in Mvs
                if any(check_factorization(M, G, Mv, budget) for G in Gs)]
        res = RowResult(spec, "yes" if good else "no", "exhaustive",
                        note=f"{len(Gs)} G classes, {len(Mvs)} Mv classes, {len(good)} factorizing")
        if good:
            _feasible_into(res, M, good, paranoid, budget, seed)
        return res
    except BudgetExceeded as exc:
        return RowResult(spec, "unknown", "unknown", note=f"budget exhausted: {exc}")


def sabidussi_roundtrip(M: PermGroup, Mv: PermGroup, g):
    """Coset graph of a feasible g with its stabilizer profile."""
    if M.order() // Mv.order() > COSET_INDEX_LIMIT:
        raise ValueError("coset graph too large")
    cg = coset_graph(M, Mv, g)
    return cg, stabilizer_profile(cg.action, cg.graph)


# -- conjugacy classes of size 7 -----------------------------------------------


def conjclass_size7_check(K: PermGroup, seed: int = 0) -> bool:
    """Is some inverse-closed union of nontrivial classes of size 7 generating K?"""
    if K.order() > 10**5:
        raise ValueError("group beyond the class enumeration regime")
    classes = [(rep, size) for rep, size in conjugacy_classes(K, seed) if not is_identity(rep)]
    # bundle each class with the class of its inverses
    from .search import is_conjugate_in
    bundles, used = [], set()
    for i, (rep, size) in enumerate(classes):
        if i in used:
            continue
        used.add(i)
        group = [i]
        if is_conjugate_in(K, rep, inv(rep)) is None:
            j = next(j for j, (r, _) in enumerate(classes)
                     if j not in used and is_conjugate_in(K, r, inv(rep)) is not None)
            used.add(j)
            group.append(j)
        bundles.append((group, sum(classes[x][1] for x in group)))
    small = [b for b in bundles if b[1] <= VALENCY]
    for r in range(1, len(small) + 1):
        for combo in itertools.combinations(small, r):
            if sum(b[1] for b in combo) != VALENCY:
                continue
            elems = set()
            for group, _ in combo:
                for x in group:
                    elems |= _class_elements(K, classes[x][0])
            if PermGroup(sorted(elems), degree=K.degree).order() == K.order():
                return True
    return False


def _class_elements(K: PermGroup, x) -> set:
    seen = {tuple(x)}
    queue = deque([tuple(x)])
    while queue:
        y = queue.popleft()
        for g in K.generators:
            z = mul(mul(inv(g), y), g)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


# -- automorphisms fixing a subset ---------------------------------------------


@dataclass
class AutFixing:
    elements: list  # enumeration of G, as in cayley_graph
    automorphisms: list  # each a permutation of element indices
    aut_order: int  # |Aut(G)|

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    def group(self) -> PermGroup:
        return PermGroup(self.automorphisms, degree=len(self.elements))


def _extend_hom(gens, images, elems_index):
    """Element map defined by gens -> images, or None if not an automorphism."""
    e = tuple(range(len(gens[0])))
    phi = {e: tuple(range(len(images[0])))}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y, fy = mul(x, s), mul(phi[x], t)
            if y in phi:
                if phi[y] != fy:
                    return None
            else:
                phi[y] = fy
                queue.append(y)
    if len(set(phi.values())) != len(phi) or any(v not in elems_index for v in phi.values()):
        return None
    return phi


def aut_fixing_set(G: PermGroup, S: Sequence[Sequence[int]], elements=None) -> AutFixing:
    """Automorphisms of G fixing S setwise, as permutations of the elements."""
    if G.order() > 400:
        raise ValueError("group beyond the automorphism search regime")
    elems = list(elements) if elements is not None else sorted(G.chain.elements())
    index = {x: i for i, x in enumerate(elems)}
    S = {tuple(s) for s in S}
    if not S <= set(index):
        raise ValueError("S is not contained in G")
    gens = [tuple(g) for g in G.generators if not is_identity(g)]
    if not gens:
        return AutFixing(elems, [tuple(range(len(elems)))], 1)
    orders = [perm_order(g) for g in gens]
    pools = [[x for x in elems if perm_order(x) == o] for o in orders]
    auts, total = [], 0
    for images in itertools.product(*pools):
        phi = _extend_hom(gens, list(images), index)
        if phi is None or len(phi) != len(elems):
            continue
        total += 1
        if {phi[s] for s in S} == S:
            auts.append(tuple(index[phi[x]] for x in elems))
    return AutFixing(elems, sorted(auts), total)


# -- Cayley graph normality ----------------------------------------------------


@dataclass
class NormalityReport:
    vertex_count: int
    aut_order: int
    normal: bool
    normalizer_order: int
    aut_fixing_order: int
    godsil_holds: bool


def cayley_normality_check(G: PermGroup, S, budget=None) -> NormalityReport:
    """Aut of Cay(G, S), whether R(G) is normal, and |N_A(R(G))| = |G| |Aut(G,S)|."""
    if G.order() > 200:
        raise ValueError("group beyond the normality regime")
    cg = cayley_graph(G, S)
    if not cg.graph.is_connected():
        raise ValueError("S does not generate G")
    A = graph_automorphisms(cg.graph, budget)
    R = cg.R
    N = normalizer(A, R, budget)
    af = aut_fixing_set(G, S, cg.elements)
    normal = N.order() == A.order()
    if normal != R.is_normal_in(A):
        raise AssertionError("normality verdicts disagree")
    return NormalityReport(cg.graph.n, A.order(), normal, N.order(), af.order,
                           N.order() == G.order() * af.order)


def seven_valent_sets(G: PermGroup, count: int, seed: int = 0, tries: int = 20000) -> list:
    """Distinct inverse-closed generating 7-subsets of G, by seeded search."""
    rng = random.Random(seed)
    elems = sorted(x for x in G.chain.elements() if not is_identity(x))
    invols = [x for x in elems if perm_order(x) == 2]
    pairs = sorted({tuple(sorted((x, inv(x)))) for x in elems if perm_order(x) > 2})
    out, seen = [], set()
    for _ in range(tries):
        k = rng.choice([1, 3, 5, 7])
        S = set(rng.sample(invols, k))
        for p in rng.sample(pairs, (VALENCY - k) // 2):
            S.update(p)
        key = tuple(sorted(S))
        if key in seen:
            continue
        seen.add(key)
        if PermGroup(list(key), degree=G.degree).order() == G.order():
            out.append(list(key))
            if len(out) == count:
                return out
    raise ValueError("not enough generating sets found")


# -- covering groups -----------------------------------------------------------


@dataclass
class CoverCheck:
    name: str
    order: int
    classes: list  # (order, center order, perfect) per index-7 class
    ok: bool
    detail: str = ""


def _index7_profile(G: PermGroup, seed: int):
    out = []
    for K in low_index_subgroups(G, VALENCY, seed=seed):
        perfect = derived_subgroup(K).order() == K.order()
        out.append((K.order(), center(K).order(), perfect))
    return out


def covering_group_checks(witness_dir=None, seed: int = 0) -> list[CoverCheck]:
    """Index-7 subgroup classes of A7, 2.A7 and 3.A7."""
    witness_dir = witness_dir or default_witness_dir()
    results = []
    A7 = resolve_group("A:7")
    prof = _index7_profile(A7, seed)
    results.append(CoverCheck("A7", 2520, prof, prof == [(360, 1, True)]))
    G2 = resolve_group("2A7.wit", witness_dir)
    prof = _index7_profile(G2, seed)
    ok = G2.order() == 5040 and bool(prof) and all(p == (720, 2, True) for p in prof)
    results.append(CoverCheck("2A7", G2.order(), prof, ok,
                              "every class perfect of order 720 with center of order 2"))
    G3 = resolve_group("3A7.wit", witness_dir)
    prof = _index7_profile(G3, seed)
    ok = G3.order() == 7560 and len(prof) == 1 and prof[0][0] == 1080 and prof[0][2]
    results.append(CoverCheck("3A7", G3.order(), prof, ok,
                              "one class, perfect of order 1080 (so not A6 x 3)"))
    return results


def diverse_seven_valent_sets(G: PermGroup, count: int, seed: int = 0, pool: int = 400) -> list:
    """Generating 7-sets with distinct |Aut(G,S)|, largest first."""
    by_order: dict[int, list] = {}
    for S in seven_valent_sets(G, pool, seed=seed):
        by_order.setdefault(aut_fixing_set(G, S).order, S)
    picked = [by_order[k] for k in sorted(by_order, reverse=True)]
    if len(picked) < count:
        raise ValueError("not enough distinct sets")
    return picked[:count]
