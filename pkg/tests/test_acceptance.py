"""Acceptance criteria 1-7.

Each test carries a ``criterion`` marker; the session summary prints one
PASS/FAIL line per criterion. Everything is exact, so every tolerance is zero.

    pytest tests/test_acceptance.py -v
"""
from __future__ import annotations

import json
import random
import time

import pytest

from facekit.catalog import diff_against_oracle, group, vec_g
from facekit.cli import main
from facekit.facebuild import build_face_algebra, expected_dimension
from facekit.fusiondata import perturb_entry, validate_all, validate_pentagon
from facekit.verify import MUTABLE_TABLES, check_all, intertwiner_space, mutate, reconstruct_fusion, simple_comodules
from _support import ALL, algebra, fusion

FIXTURE_SET = ("vec_z2", "vec_z3", "vec_z4", "vec_s3", "vec_z3_twisted", "fibonacci", "ising", "rep_s3")
REQUIRED_AXIOMS = {
    "D(ee)", "D(ab)", "e(ab)", "D(eeaee)", "eae*a", "e(ee)", "S(a)a", "S(a)aS(a)", "S(ee)",
    "unit", "associativity", "coassociativity", "S-antialgebra", "S-anticoalgebra",
}
MUTATIONS_PER_TABLE = 7  # 21 mutations per fixture
SEED = 20240229


# ---------------------------------------------------------------- 1
@pytest.mark.criterion(1, "group-example exactness")
@pytest.mark.parametrize("name,order", [("Z2", 2), ("Z3", 3), ("Z4", 4), ("S3", 6)])
def test_group_example_exactness(name, order):
    start = time.perf_counter()
    G = group(name)
    H = build_face_algebra(vec_g(G))
    diff = diff_against_oracle(G, built=H)
    report = check_all(H, level="fast")
    elapsed = time.perf_counter() - start
    print(f"{name}: dim {H.dim}, {len(diff.mismatches)} mismatches, fast check {'pass' if report.ok else 'FAIL'}, {elapsed:.1f}s")
    assert H.dim == order**3
    assert diff.identical, diff.to_text()
    assert set(diff.compared) == {"product", "coproduct", "counit", "eta", "unit", "antipode"}
    assert diff.compared["product"] == H.dim**2
    assert report.ok
    assert elapsed < 60


# ---------------------------------------------------------------- 2
@pytest.mark.criterion(2, "axiom suite on every fixture")
@pytest.mark.parametrize("name", FIXTURE_SET)
@pytest.mark.parametrize("level", ["fast", "full"])
def test_axiom_suite(name, level):
    report = check_all(algebra(name), level=level)
    assert REQUIRED_AXIOMS <= {r.axiom for r in report.results}
    assert report.ok, report.to_text()


# ---------------------------------------------------------------- 3
@pytest.mark.criterion(3, "dimension formula")
@pytest.mark.parametrize("name,dim", [
    ("fibonacci", 13), ("ising", 34), ("vec_z2", 8), ("vec_z3", 27), ("vec_z4", 64),
    ("vec_s3", 216), ("vec_z3_twisted", 27), ("rep_s3", 43),
])
def test_dimension_formula(name, dim):
    H = algebra(name)
    assert H.dim == expected_dimension(fusion(name)) == dim


# ---------------------------------------------------------------- 4
@pytest.mark.criterion(4, "reconstruction of fusion rules")
@pytest.mark.parametrize("name", FIXTURE_SET)
def test_reconstruction(name):
    H = algebra(name)
    rec = reconstruct_fusion(H)
    assert rec.fusion_matches
    simples = simple_comodules(H)
    for a, M in simples.items():
        for b, N in simples.items():
            assert len(intertwiner_space(M, N)) == (1 if a == b else 0)
    assert rec.ok


# ---------------------------------------------------------------- 5
@pytest.mark.criterion(5, "mutation sensitivity")
@pytest.mark.parametrize("name", FIXTURE_SET)
def test_mutation_sensitivity(name):
    H = algebra(name)
    rng = random.Random(SEED)
    undetected = []
    count = 0
    for table in MUTABLE_TABLES:
        for _ in range(MUTATIONS_PER_TABLE):
            bad, desc = mutate(H, table, rng)
            count += 1
            if check_all(bad, stop_on_failure=True).ok:
                undetected.append(desc)
    assert count >= 20
    assert not undetected, undetected


# ---------------------------------------------------------------- 6
@pytest.mark.criterion(6, "pentagon validator")
@pytest.mark.parametrize("name", FIXTURE_SET)
def test_pentagon_validator(name):
    fd = fusion(name)
    start = time.perf_counter()
    report = validate_pentagon(fd)
    elapsed = time.perf_counter() - start
    assert report.ok and elapsed < 10
    assert all(r.ok for r in validate_all(fd))
    accepted = []
    for quad, block in sorted(fd.F.items()):
        for i in range(len(block.rows)):
            for j in range(len(block.cols)):
                bad = perturb_entry(fd, quad, i, j)
                t0 = time.perf_counter()
                ok = validate_pentagon(bad).ok
                assert time.perf_counter() - t0 < 10
                if ok:
                    accepted.append((quad, i, j))
    assert not accepted, accepted


# ---------------------------------------------------------------- 7
@pytest.mark.criterion(7, "export/import round trip")
@pytest.mark.parametrize("name", FIXTURE_SET)
@pytest.mark.parametrize("fmt", [[], ["--json"]])
def test_round_trip(name, fmt, tmp_path, capsys):
    path = tmp_path / f"{name}.json"
    assert main(["export", "--builtin", name, "--output", str(path)]) == 0
    capsys.readouterr()
    assert main(["check", "--builtin", name, *fmt]) == 0
    direct = capsys.readouterr().out
    assert main(["check", "--input", str(path), *fmt]) == 0
    imported = capsys.readouterr().out
    assert imported.encode() == direct.encode()
    if fmt:
        json.loads(imported)


def test_fixture_set_covers_builtins():
    assert set(FIXTURE_SET) == set(ALL)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
