from __future__ import annotations

import itertools

import pytest

from facekit.catalog import (
    BUILTINS,
    FIXTURES,
    Cocycle3,
    CocycleError,
    GroupPresentation,
    builtin,
    cyclic_group,
    diff_against_oracle,
    dictionary,
    fixture,
    group,
    group_oracle,
    oracle_label,
    symmetric_group,
    vec_g,
    z3_cocycle,
)
from facekit.exactnum import Cyclotomic
from facekit.fusiondata import validate_all
from facekit.verify import check_all

z8 = Cyclotomic.zeta(8)


# ---------------------------------------------------------------- groups
def test_group_presentations():
    S3 = symmetric_group(3)
    assert S3.order == 6 and S3.elements[S3.identity] == "123"
    for a in range(6):
        assert S3.mul(a, S3.inv(a)) == S3.identity
    assert any(S3.mul(a, b) != S3.mul(b, a) for a in range(6) for b in range(6))
    assert cyclic_group(4).mul(3, 2) == 1


@pytest.mark.parametrize("table", [
    ((0, 1), (0, 1)),                       # no inverse for 1
    ((0, 1, 2), (1, 2, 0), (2, 0, 0)),      # not a Latin square
])
def test_invalid_groups(table):
    with pytest.raises(ValueError):
        GroupPresentation("bad", tuple(str(i) for i in range(len(table))), table)


def test_unknown_group():
    with pytest.raises(KeyError):
        group("D4")


def test_vec_z2_all_f_one():
    fd = vec_g(cyclic_group(2))
    assert fd.rank == 2
    assert all(b.mat == ((1,),) for b in fd.F.values())


def test_vec_s3_structure():
    G = symmetric_group(3)
    fd = vec_g(G)
    assert fd.labels == G.elements
    for a, b, c in itertools.product(range(6), repeat=3):
        assert fd.mult(a, b, c) == (1 if G.mul(a, b) == c else 0)
    assert [fd.dual[a] for a in range(6)] == [G.inv(a) for a in range(6)]


def test_z3_cocycle_passes_checks():
    fd = vec_g(cyclic_group(3), z3_cocycle())
    assert fd.conductor == 3
    assert all(r.ok for r in validate_all(fd))
    assert fd.block(1, 1, 1, 0).mat[0][0] == 1
    assert fd.block(1, 2, 2, 2).mat[0][0] == Cyclotomic.zeta(3)


def test_bad_cocycle_rejected():
    G = cyclic_group(2)
    with pytest.raises(CocycleError):
        Cocycle3.from_function(G, lambda a, b, c: 2 if a == b == c == 1 else 1, 1)


def test_cocycle_for_other_group_rejected():
    with pytest.raises(CocycleError):
        vec_g(cyclic_group(2), z3_cocycle())


def test_sign_cocycle_on_z2():
    omega = Cocycle3.from_function(cyclic_group(2), lambda a, b, c: -1 if a == b == c == 1 else 1, 1)
    fd = vec_g(cyclic_group(2), omega)
    assert all(r.ok for r in validate_all(fd))


# ---------------------------------------------------------------- fixtures
def test_fixture_values():
    fib = fixture("fibonacci")
    assert fib.conductor == 5
    ising = fixture("ising")
    assert ising.conductor == 8
    s = ising.index("s")
    half_root2 = (z8 + z8**7) / 2
    assert [list(r) for r in ising.block(s, s, s, s).mat] == [[half_root2, half_root2], [half_root2, -half_root2]]
    rep = fixture("rep_s3")
    assert rep.labels == ("triv", "sgn", "std")
    std = rep.index("std")
    assert [rep.mult(std, std, c) for c in range(3)] == [1, 1, 1]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_validate(name):
    assert all(r.ok for r in validate_all(fixture(name)))


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("toric_code")
    with pytest.raises(KeyError):
        builtin("vec_d4")


def test_builtins():
    for name in BUILTINS:
        assert builtin(name).rank >= 2
    assert builtin("vec_s3").rank == 6


# ---------------------------------------------------------------- oracle
def test_oracle_z2():
    G = cyclic_group(2)
    H = group_oracle(G)
    assert H.dim == 8
    # one output per face-matched pair, with coefficient 1
    for x in H.product.values():
        assert len(x) == 1 and list(x.values()) == [1]
    matched = sum(1 for (a, b, g), (c, d, h) in itertools.product(
        itertools.product(range(2), repeat=3), repeat=2) if (a + g) % 2 == c and (b + g) % 2 == d)
    assert len(H.product) == matched
    ring0 = H.face_ring(0)
    want = {H.index[dictionary(G, 0, 0, 0)]: 1, H.index[dictionary(G, 0, 1, 0)]: 1}
    assert ring0 == want


@pytest.mark.parametrize("name", ["Z2", "Z3", "S3"])
def test_oracle_passes_suite(name):
    assert check_all(group_oracle(group(name))).ok


def test_oracle_labels():
    G = symmetric_group(3)
    assert oracle_label(G, 0, 1, 2) == "e^123_132[213]"


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4"])
def test_skewed_dictionary_is_caught(name):
    diff = diff_against_oracle(group(name), skew=True)
    assert not diff.identical
    assert any("coproduct" in m for m in diff.mismatches)
    assert "mismatches" in diff.to_text()
