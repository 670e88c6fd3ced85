import math

import pytest

from cayley7 import verify
from cayley7.atlas import builtin_group, resolve_group
from cayley7.graphs import complete_graph
from cayley7.groups import PermGroup
from cayley7.perm import parse_permutation
from cayley7.search import SubgroupSearchBudget


def P(text, n):
    return parse_permutation(text, n)


def test_stabilizer_orders_against_published_lists():
    published = {
        1: [7, 2 * 7, 3 * 7, 2**2 * 7, 3**2 * 7],
        2: [2 * 3 * 7, 2**2 * 3 * 7, 2 * 3**2 * 7, 2**3 * 3 * 7, 2**3 * 3**2 * 5 * 7,
            2**4 * 3**2 * 5 * 7, 2**6 * 3 * 7, 2**7 * 3 * 7],
        3: [2**2 * 3**2 * 7, 2**6 * 3**2 * 7, 2**6 * 3**4 * 5**2 * 7, 2**8 * 3**4 * 5**2 * 7,
            2**7 * 3**4 * 5**2 * 7, 2**10 * 3**2 * 7, 2**24 * 3**2 * 7],
    }
    assert {s: list(v) for s, v in verify.STABILIZER_ORDERS.items()} == published


def test_admissible_list_against_published_values():
    published = [7, 3 * 7, 3**2 * 7, 2**2 * 3 * 7, 2**3 * 3 * 7, 2**3 * 3**2 * 5 * 7,
                 2**4 * 3**2 * 5 * 7, 2**6 * 3 * 7, 2**7 * 3 * 7, 2**6 * 3**2 * 7,
                 2**6 * 3**4 * 5**2 * 7, 2**7 * 3**4 * 5**2 * 7, 2**8 * 3**4 * 5**2 * 7,
                 2**10 * 3**2 * 7, 2**24 * 3**2 * 7]
    assert verify.admissible_n_list() == sorted(published)
    assert len(published) == 15


def test_admissible_list_by_filtering():
    every = sorted({n for v in verify.STABILIZER_ORDERS.values() for n in v})
    kept = [n for n in every if verify.ORDER_BOUND % n == 0 and n not in verify.SOLVABLE_EXCLUDED]
    assert kept == verify.admissible_n_list()
    assert verify.SOLVABLE_EXCLUDED <= set(every)
    assert verify.admissible_n_list()[-1] == 1056964608


def test_stabilizer_profile_k8():
    prof = verify.stabilizer_profile(builtin_group("A:8"), complete_graph(8))
    assert (prof.order, prof.s, prof.prop210_match) == (2520, 2, "(2)")
    prof = verify.stabilizer_profile(builtin_group("AGL32"), complete_graph(8))
    assert (prof.order, prof.s, prof.prop210_match) == (168, 2, "(2)")
    prof = verify.stabilizer_profile(builtin_group("PSL32@8"), complete_graph(8))
    assert (prof.order, prof.s, prof.prop210_match) == (21, 1, "(1)")


def test_stabilizer_profile_rejections():
    prof = verify.stabilizer_profile(builtin_group("S:6"), complete_graph(6))
    assert prof.prop210_match == "none" and "7-valent" in prof.reason
    prof = verify.stabilizer_profile(builtin_group("C:8"), complete_graph(8))
    assert prof.s == 0 and prof.prop210_match == "none"
    # S8 on K8 has stabilizer S7 which is in the s=2 list
    assert verify.stabilizer_profile(builtin_group("S:8"), complete_graph(8)).prop210_match == "(2)"


def test_check_factorization():
    A5 = builtin_group("A:5")
    C5 = PermGroup([P("(0 1 2 3 4)", 5)])
    A4 = A5.point_stabilizer(4)
    assert verify.check_factorization(A5, C5, A4) is True
    C3 = PermGroup([P("(0 1 2)", 5)])
    assert verify.check_factorization(A5, C3, A4) is False
    with pytest.raises(ValueError):
        verify.check_factorization(A5, PermGroup([P("(0 1)", 5)]), A4)


def test_impossibility_certificate():
    L = builtin_group("PSL32@7")
    assert verify.impossibility_certificate(20160, 360, builtin_group("A:7")) == "impossible"
    assert verify.impossibility_certificate(1451520, 20160, builtin_group("A:7")) == "impossible"
    assert verify.impossibility_certificate(20160, 360, L) == "inconclusive"
    assert verify.impossibility_certificate(20160, 7, L) == "impossible"


def test_feasible_elements_psl42_on_a7():
    M = builtin_group("PSL42@15")
    Mv = next(H for H in verify._classes(M, "PSL42@15", 2520, "A:7", None))
    scan = verify.feasible_elements(M, Mv, paranoid=True)
    assert scan.g_count == 1 and scan.g2elt_count == 1
    g = scan.feasible[0]
    assert verify.reverify_feasible(M, Mv, g)
    cg, prof = verify.sabidussi_roundtrip(M, Mv, g)
    assert cg.graph.n == 8 and cg.valency == 7 and cg.graph == complete_graph(8)
    assert (prof.order, prof.s, prof.prop210_match) == (2520, 2, "(2)")


def test_feasible_elements_a8_on_k8():
    A8 = builtin_group("A:8")
    A7 = A8.point_stabilizer(7)
    scan = verify.feasible_elements(A8, A7)
    assert scan.g_count == 1
    g = scan.feasible[0]
    assert verify.reverify_feasible(A8, A7, g)
    assert not verify.reverify_feasible(A8, A7, A8.identity())


def test_no_feasible_elements_for_psl32_in_a7():
    # no class of PSL(3,2) in A7 admits a feasible element
    A7 = builtin_group("A:7")
    L = builtin_group("PSL32@7")
    assert L.degree == 7
    Mvs = verify._classes(A7, "A:7", 168, "PSL32@7", None)
    for Mv in Mvs:
        assert verify.feasible_elements(A7, Mv, paranoid=True).g_count == 0


def test_parse_row_line():
    spec = verify.parse_row_line("row 8 M=PSL42@15 Mname=PSL(4,2) Gorder=168 Gtype=PSL32@7 "
                                 "Gname=L Mvorder=2520 Mvtype=A:7 Mvname=A7 expect=yes,yes")
    assert spec.row_id == 8 and spec.G_order == 168 and spec.Mv_type == "A:7"
    assert spec.expected_factorization is True and spec.expected_g_exists is True
    for bad in ("row x M=A:5", "row 1 M=A:5 Gorder=1 Mvorder=1 expect=maybe",
                "row 1 M=A:5 bogus=1 Gorder=1 Mvorder=1 expect=no", "col 1"):
        with pytest.raises(ValueError):
            verify.parse_row_line(bad)


def test_manifest_covers_published_rows():
    specs = verify.load_manifest()
    assert sorted({s.row_id for s in specs}) == [6, 7, 8, 15, 16, 17, 18, 19]
    expected = {(s.row_id, s.G_name, s.Mv_name): verify.RowResult(s, "no", "x").expected
                for s in specs}
    published = {
        (6, "A8", "A7"): "no", (6, "A8", "S7"): "no",
        (7, "A6", "A7"): "no", (7, "A6", "SL(3,2)"): "yes,no",
        (8, "PSL(3,2)", "A7"): "yes,yes", (15, "A5", "PSL(3,2)"): "yes,no",
        (16, "M11", "A7"): "yes,no", (16, "M11", "S7"): "yes,no",
        (16, "M12", "A7"): "yes,no", (16, "M12", "S7"): "yes,no",
        (17, "PSL(2,8)", "A7"): "yes,no", (17, "PSL(2,8)", "S7"): "yes,no",
        (18, "A5", "AGL(3,2)"): "yes,no", (18, "A6", "AGL(3,2)"): "yes,no",
        (18, "A7", "AGL(3,2)"): "yes,no", (18, "A6", "SL(3,2)"): "yes,no",
        (18, "A7", "SL(3,2)"): "yes,no",
        (19, "M23", "2^6:(SL(3,2)xS3)"): "yes,no", (19, "M23", "SL(3,2)"): "yes,yes"}
    assert expected == published


@pytest.mark.parametrize("row", [7, 15, 17])
def test_verify_row_matches(row):
    for spec in verify.load_manifest():
        if spec.row_id == row:
            res = verify.verify_row(spec)
            assert res.match is True, (spec.G_name, spec.Mv_name, res.computed, res.note)
            assert res.method in ("exhaustive", "certificate", "witness")


def test_row_result_match_logic():
    spec = verify.parse_row_line("row 1 M=A:5 Mname=A5 Gorder=5 Gname=C Mvorder=12 Mvname=A4 "
                                 "expect=yes,no")
    assert verify.RowResult(spec, "unknown", "unknown").match is None
    assert verify.RowResult(spec, "no", "certificate").match is False
    assert verify.RowResult(spec, "yes", "exhaustive", feasible_g_count=0).match is True
    assert verify.RowResult(spec, "yes", "exhaustive", feasible_g_count=2).match is False
    rec = verify.RowResult(spec, "yes", "exhaustive").record()
    assert rec["expected"] == "yes,no" and rec["match"] == "true"


def test_budget_gives_unknown():
    spec = next(s for s in verify.load_manifest() if s.row_id == 15)
    verify._class_cache.clear()
    verify._group_cache.clear()
    res = verify.verify_row(spec, budget=SubgroupSearchBudget(node_limit=1))
    assert res.factorization == "unknown" and res.match is None


def test_wrong_witness_order_is_rejected(tmp_path):
    spec = verify.parse_row_line("row 1 M=A:5 Mname=A5 Gorder=6 Gwitness=C:5 Gname=C "
                                 "Mvorder=12 Mvwitness=A:4@5 Mvname=A4 expect=yes,no")
    with pytest.raises(ValueError):
        verify.verify_row(spec)


def test_conjclass_size7():
    for name in ("A:5", "A:6", "A:7", "PSL32@7"):
        assert verify.conjclass_size7_check(builtin_group(name)) is False
    assert verify.conjclass_size7_check(builtin_group("C:8")) is True
    # F21: the two classes of size 7 are swapped by inversion, so 14 is the smallest bundle
    F21 = PermGroup([P("(0 1 2 3 4 5 6)", 7), P("(1 2 4)(3 6 5)", 7)])
    assert F21.order() == 21
    assert verify.conjclass_size7_check(F21) is False
    # D14: the seven reflections form one class and generate
    D14 = PermGroup([P("(0 1 2 3 4 5 6)", 7), P("(1 6)(2 5)(3 4)", 7)])
    assert verify.conjclass_size7_check(D14) is True


def test_aut_fixing_set():
    A5 = builtin_group("A:5")
    af = verify.aut_fixing_set(A5, [])
    assert af.aut_order == 120 and af.order == 120
    S = [P("(0 1)(2 3)", 5), P("(0 1 2 3 4)", 5), P("(0 4 3 2 1)", 5)]
    af = verify.aut_fixing_set(A5, S)
    assert af.order == 2 and af.group().order() == 2
    C7 = builtin_group("C:7")
    assert verify.aut_fixing_set(C7, []).aut_order == 6


def test_cayley_normality_a5():
    A5 = builtin_group("A:5")
    for S in verify.diverse_seven_valent_sets(A5, 3, seed=0):
        assert len(S) == 7
        rep = verify.cayley_normality_check(A5, S)
        assert rep.vertex_count == 60 and rep.godsil_holds
        assert rep.normal == (rep.aut_order == rep.normalizer_order)


def test_cayley_normality_nonnormal_example():
    Z8 = builtin_group("C:8")
    c = Z8.generators[0]
    S, x = [], c
    for _ in range(7):
        S.append(x)
        from cayley7.perm import mul
        x = mul(x, c)
    rep = verify.cayley_normality_check(Z8, S)
    assert rep.aut_order == math.factorial(8) and not rep.normal
    assert rep.normalizer_order == 32 and rep.aut_fixing_order == 4 and rep.godsil_holds


def test_seven_valent_sets_are_valid():
    A5 = builtin_group("A:5")
    from cayley7.perm import inv
    for S in verify.seven_valent_sets(A5, 5, seed=3):
        assert len(set(S)) == 7 and {inv(s) for s in S} == set(S)
        assert PermGroup(S, degree=5).order() == 60


def test_covering_group_checks(witness_dir):
    checks = verify.covering_group_checks(witness_dir)
    assert [c.name for c in checks] == ["A7", "2A7", "3A7"]
    assert all(c.ok for c in checks)
    assert checks[2].classes == [(1080, 3, True)]
