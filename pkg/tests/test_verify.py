from __future__ import annotations

import json
import random

import pytest

from facekit.catalog import cyclic_group, dictionary
from facekit.exactnum import Cyclotomic, rank
from facekit.facebuild import dumps_face_algebra, face_algebra_from_json, with_tables
from facekit.verify import (
    MUTABLE_TABLES,
    AxiomReport,
    Comodule,
    antipode_inverse,
    check_all,
    check_antipode,
    check_face_algebra,
    comodule_defects,
    dual_comodule,
    evaluation_map,
    intertwiner_space,
    is_comodule_map,
    mutate,
    reconstruct_fusion,
    simple_comodule,
    simple_comodules,
    tensor_comodules,
    unit_label,
)
from _support import ALL, algebra, fusion

FACE_AXIOMS = ["eta-algebra", "D(ee)", "counit", "coassociativity", "unit", "associativity",
               "D(ab)", "e(ab)", "D(eeaee)", "eae*a", "e(ee)"]
ANTIPODE_AXIOMS = ["S(a)a", "S(a)aS(a)", "S(ee)", "S-antialgebra", "S-anticoalgebra", "S-bijective"]


def isomorphic(M: Comodule, N: Comodule) -> bool:
    if M.dim != N.dim:
        return False
    return any(rank(f) == M.dim for f in intertwiner_space(M, N))


# ---------------------------------------------------------------- reports
def test_report_layout_and_counts():
    H = algebra("vec_s3")
    report = check_all(H)
    assert [r.axiom for r in report.results] == FACE_AXIOMS + ANTIPODE_AXIOMS
    entry = report["D(ab)"].to_json()
    assert entry == {"axiom": "D(ab)", "status": "pass", "checked": 46656}
    assert report.ok and "overall: PASS" in report.to_text()


def test_reports_are_deterministic(monkeypatch):
    H = algebra("ising")
    first = check_all(H, level="full").dumps()
    assert check_all(H, level="full").dumps() == first
    monkeypatch.setenv("FACEKIT_THREADS", "4")
    assert check_all(H, level="full").dumps() == first


def test_unknown_level():
    with pytest.raises(ValueError):
        check_face_algebra(algebra("vec_z2"), level="thorough")


def test_fast_level_samples_associativity_above_64():
    H = algebra("vec_s3")
    fast = check_face_algebra(H, level="fast")["associativity"]
    full = check_face_algebra(H, level="full")["associativity"]
    assert fast.passed and full.passed
    assert fast.checked < full.checked == 216**3


def test_mutated_product_gives_counterexample():
    H = algebra("fibonacci")
    key = sorted(H.product)[5]
    entry = dict(H.product[key])
    k = sorted(entry)[0]
    entry[k] = entry[k] + 1
    bad = with_tables(H, product={**H.product, key: entry})
    report = check_face_algebra(bad)
    assert not report.ok
    assert "D(ab)" in report.failed()
    ce = report["D(ab)"].counterexample
    assert set(ce) >= {"a", "b", "a_basis", "b_basis", "lhs", "rhs"}
    assert ce["lhs"] != ce["rhs"]
    json.dumps(report.to_json())


def test_identity_antipode_on_one_block_fails():
    H = algebra("ising")
    s = H.labels.index("s")
    table = list(H.antipode)
    for u in H.block_indices(s):
        table[u] = H.basis_vector(u)
    report = check_antipode(with_tables(H, antipode=tuple(table)))
    assert not report["S(a)a"].passed


def test_missing_antipode_is_reported():
    H = with_tables(algebra("vec_z2"), antipode=None)
    report = check_antipode(H)
    assert not report.ok and report.failed() == ["antipode-present"]


def test_group_antipode_formula_z4():
    G = cyclic_group(4)
    H = algebra("vec_z4")
    n = G.order
    for a in range(n):
        for b in range(n):
            for g in range(n):
                u = H.index[dictionary(G, a, b, g)]
                v = H.index[dictionary(G, G.mul(b, g), G.mul(a, g), G.inv(g))]
                assert H.antipode[u] == H.basis_vector(v)
    assert check_antipode(H).ok


@pytest.mark.parametrize("name", ["fibonacci", "ising", "rep_s3"])
def test_antipode_inverse(name):
    H = algebra(name)
    inv = antipode_inverse(H)
    for u in range(H.dim):
        assert H.S(inv[u]) == H.basis_vector(u)


@pytest.mark.parametrize("table", MUTABLE_TABLES)
def test_mutate_changes_exactly_one_table(table):
    H = algebra("ising")
    bad, desc = mutate(H, table, random.Random(3))
    assert table in desc
    for other in MUTABLE_TABLES:
        same = getattr(bad, other) == getattr(H, other)
        assert same == (other != table)


def test_stop_on_failure_truncates():
    H = algebra("fibonacci")
    bad, _ = mutate(H, "coproduct", random.Random(0))
    report = check_all(bad, stop_on_failure=True)
    assert not report.ok and not report.results[-1].passed


def test_imported_algebra_checks_identically():
    H = algebra("rep_s3")
    K = face_algebra_from_json(dumps_face_algebra(H))
    assert check_all(K).dumps() == check_all(H).dumps()


# ---------------------------------------------------------------- comodules
@pytest.mark.parametrize("name", ALL)
def test_simple_comodules_satisfy_comodule_laws(name):
    H = algebra(name)
    for M in simple_comodules(H).values():
        assert comodule_defects(M) == []


@pytest.mark.parametrize("name", ["vec_z3", "fibonacci", "rep_s3"])
def test_unit_comodule(name):
    H = algebra(name)
    U = simple_comodule(H, unit_label(H))
    assert U.dim == H.rank
    assert U.faces == tuple((v, v) for v in range(H.rank))


def test_vec_z2_simple_comodule():
    H = algebra("vec_z2")
    G = cyclic_group(2)
    M = simple_comodule(H, 1)
    assert M.dim == 2 and M.faces == ((0, 1), (1, 0))
    # delta(m_J) = sum_I m_I (x) e^a_b[1] with I = (a, a+1), J = (b, b+1)
    for j, b in enumerate((0, 1)):
        for i, a in enumerate((0, 1)):
            assert M.coefficient(i, j) == H.basis_vector(H.index[dictionary(G, a, b, 1)])


def test_fibonacci_tau_comodule_dim():
    H = algebra("fibonacci")
    assert simple_comodule(H, H.labels.index("t")).dim == 3


def test_imported_algebra_recovers_fibers():
    H = algebra("fibonacci")
    K = face_algebra_from_json(dumps_face_algebra(H))
    assert K.fiber is None
    assert [M.faces for M in simple_comodules(K).values()] == [M.faces for M in simple_comodules(H).values()]


@pytest.mark.parametrize("name", ["vec_z3_twisted", "fibonacci", "ising"])
def test_tensor_with_unit(name):
    H = algebra(name)
    U = simple_comodule(H, unit_label(H))
    for M in simple_comodules(H).values():
        T = tensor_comodules(M, U)
        assert comodule_defects(T) == []
        assert isomorphic(M, T)
        assert isomorphic(M, tensor_comodules(U, M))


def test_vec_z2_fusion_through_comodules():
    H = algebra("vec_z2")
    M = simple_comodule(H, 1)
    T = tensor_comodules(M, M)
    assert T.dim == 2
    assert isomorphic(T, simple_comodule(H, 0))


def test_fibonacci_tau_tau():
    H = algebra("fibonacci")
    one, t = H.labels.index("1"), H.labels.index("t")
    T = tensor_comodules(simple_comodule(H, t), simple_comodule(H, t))
    assert len(intertwiner_space(simple_comodule(H, one), T)) == 1
    assert len(intertwiner_space(simple_comodule(H, t), T)) == 1


def test_ising_sigma_sigma_to_unit():
    H = algebra("ising")
    s = H.labels.index("s")
    S = simple_comodule(H, s)
    U = simple_comodule(H, unit_label(H))
    assert len(intertwiner_space(tensor_comodules(S, S), U)) == 1


@pytest.mark.parametrize("name", ["fibonacci", "ising", "rep_s3"])
def test_intertwiners_are_comodule_maps(name):
    H = algebra(name)
    simples = simple_comodules(H)
    for a, M in simples.items():
        for b, N in simples.items():
            T = tensor_comodules(M, N)
            for c, P in simples.items():
                for f in intertwiner_space(P, T):
                    assert is_comodule_map(f, P, T)


def test_non_map_is_rejected():
    H = algebra("fibonacci")
    M = simple_comodule(H, 1)
    f = [[Cyclotomic.rational(1 if i == j else 0, H.conductor) for j in range(M.dim)] for i in range(M.dim)]
    assert is_comodule_map(f, M, M)
    f[0][1] = Cyclotomic.rational(1, H.conductor)
    assert not is_comodule_map(f, M, M)


# ---------------------------------------------------------------- duals
@pytest.mark.parametrize("name", ["vec_z2", "vec_s3", "fibonacci", "ising", "rep_s3", "vec_z3_twisted"])
def test_dual_comodules(name):
    H = algebra(name)
    fd = fusion(name)
    simples = simple_comodules(H)
    U = simples[unit_label(H)]
    for xi, M in simples.items():
        D = dual_comodule(M)
        assert comodule_defects(D) == []
        assert isomorphic(D, simples[fd.dual[xi]])
        src, ev = evaluation_map(M, U)
        assert is_comodule_map(ev, src, U)
        space = intertwiner_space(src, U)
        flat = lambda f: [x for row in f for x in row]
        assert rank([flat(f) for f in space] + [flat(ev)]) == len(space)


def test_unit_comodule_self_dual():
    H = algebra("rep_s3")
    U = simple_comodule(H, unit_label(H))
    assert isomorphic(dual_comodule(U), U)


def test_dual_needs_antipode():
    H = with_tables(algebra("vec_z2"), antipode=None)
    with pytest.raises(NotImplementedError):
        dual_comodule(simple_comodule(H, 1))


# ---------------------------------------------------------------- reconstruction
def test_reconstruct_s3_matches_group_table():
    fd = fusion("vec_s3")
    rec = reconstruct_fusion(algebra("vec_s3"))
    assert rec.ok and rec.fusion_matches and rec.schur_ok
    for (a, b, c), m in rec.N_reconstructed.items():
        assert m == 1 and fd.mult(a, b, c) == 1
    assert len(rec.N_reconstructed) == 36


def test_reconstruct_fibonacci_values():
    H = algebra("fibonacci")
    one, t = H.labels.index("1"), H.labels.index("t")
    rec = reconstruct_fusion(H)
    assert rec.N_reconstructed[(t, t, t)] == 1 and rec.N_reconstructed[(t, t, one)] == 1
    assert rec.dimension_count == (13, 13)


def test_reconstruction_flags_wrong_rules():
    H = algebra("ising")
    N = dict(H.fusion.N)
    s = H.labels.index("s")
    N[(s, s, s)] = 1
    rec = reconstruct_fusion(H, N)
    assert not rec.fusion_matches
    report = rec.as_axiom_report()
    assert isinstance(report, AxiomReport)
    assert report.failed() == ["fusion-rules"]
    assert report["fusion-rules"].counterexample["triple"] == ["s", "s", "s"]
