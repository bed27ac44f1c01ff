"""Regenerate the fixture documents under src/facekit/catalog/data/.

Fibonacci and Ising use closed-form F-symbols in cyclotomic gauges.
Rep(S3) is derived here from explicit rational representations: splitting
maps are intertwiner-space bases, and each F-block is solved from the
left/right tree maps. Every document is checked by the pentagon and duality
validators before it is written.

    python scripts/gen_fixtures.py
"""
from __future__ import annotations

import itertools
import json
from pathlib import Path

from facekit.exactnum import Cyclotomic, cyc, format_cyclotomic, matmul, nullspace, solve
from facekit.fusiondata import FusionData, fusion_to_json, load_fusion, validate_all

DATA = Path(__file__).resolve().parents[1] / "src" / "facekit" / "catalog" / "data"


def skeleton_doc(labels, unit, dual, N, conductor, special):
    """Fill every admissible F-block: identity when the unit is involved,
    ``special[quad]`` when given (canonical tree order), 1 otherwise."""
    doc = {
        "conductor": conductor,
        "labels": labels,
        "unit": unit,
        "dual": dual,
        "N": [{"a": a, "b": b, "c": c, "m": m} for (a, b, c), m in sorted(N.items())],
        "F": [],
    }
    idx = {x: i for i, x in enumerate(labels)}
    sk = FusionData(tuple(labels), idx[unit], tuple(idx[dual[x]] for x in labels),
                    {tuple(idx[x] for x in k): m for k, m in N.items()}, {}, conductor)
    for quad in itertools.product(labels, repeat=4):
        q = tuple(idx[x] for x in quad)
        rows, cols = sk.left_trees(*q), sk.right_trees(*q)
        if not rows:
            continue
        n = len(rows)
        if quad in special:
            mat = special[quad]
        elif n == 1:
            mat = [[1]]
        else:
            assert unit in quad[:3], quad
            mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        doc["F"].append({
            "a": quad[0], "b": quad[1], "c": quad[2], "d": quad[3],
            "rows": [[labels[e], i, j] for e, i, j in rows],
            "cols": [[labels[f], k, l] for f, k, l in cols],
            "mat": [[format_cyclotomic(cyc(x, conductor)) for x in r] for r in mat],
        })
    return doc


def fibonacci():
    n = 5
    z = Cyclotomic.zeta(n)
    phi_inv = z + z**4  # (sqrt5 - 1) / 2
    N = {("1", "1", "1"): 1, ("1", "t", "t"): 1, ("t", "1", "t"): 1, ("t", "t", "1"): 1, ("t", "t", "t"): 1}
    special = {("t", "t", "t", "t"): [[phi_inv, phi_inv], [1, -phi_inv]]}
    return skeleton_doc(["1", "t"], "1", {"1": "1", "t": "t"}, N, n, special)


def ising():
    n = 8
    z = Cyclotomic.zeta(n)
    inv_sqrt2 = (z + z**7) / 2
    N = {}
    for a in "1sp":
        N[("1", a, a)] = N[(a, "1", a)] = 1
    N[("s", "s", "1")] = N[("s", "s", "p")] = 1
    N[("s", "p", "s")] = N[("p", "s", "s")] = 1
    N[("p", "p", "1")] = 1
    special = {
        ("s", "s", "s", "s"): [[inv_sqrt2, inv_sqrt2], [inv_sqrt2, -inv_sqrt2]],
        ("p", "s", "p", "s"): [[-1]],
        ("s", "p", "s", "p"): [[-1]],
    }
    return skeleton_doc(["1", "s", "p"], "1", {"1": "1", "s": "s", "p": "p"}, N, n, special)


# ---------------------------------------------------------------- Rep(S3)
def _kron(A, B):
    return [[x * y for x in ra for y in rb] for ra in A for rb in B]


def _ident(n):
    return [[cyc(1 if i == j else 0) for j in range(n)] for i in range(n)]


def rep_s3():
    one, zero = cyc(1), cyc(0)
    # generators s = (12), r = (123) acting on span(e1-e2, e2-e3)
    std = {"s": [[-one, one], [zero, one]], "r": [[zero, -one], [one, -one]]}
    reps = {
        "triv": {"s": [[one]], "r": [[one]]},
        "sgn": {"s": [[-one]], "r": [[one]]},
        "std": std,
    }
    for name, rho in reps.items():
        s, r = rho["s"], rho["r"]
        d = len(s)
        assert matmul(s, s) == _ident(d) and matmul(r, matmul(r, r)) == _ident(d), name
        assert matmul(s, matmul(r, s)) == matmul(r, r), name
    labels = ["triv", "sgn", "std"]
    dim = {x: len(reps[x]["s"]) for x in labels}

    def intertwiners(c, a, b):
        # maps X: V_c -> V_a (x) V_b with X rho_c(g) = (rho_a (x) rho_b)(g) X
        da, db, dc = dim[a], dim[b], dim[c]
        rows = []
        for g in ("s", "r"):
            P = _kron(reps[a][g], reps[b][g])
            Q = reps[c][g]
            for i in range(da * db):
                for j in range(dc):
                    row = [zero] * (da * db * dc)
                    for k in range(dc):
                        row[i * dc + k] += Q[k][j]
                    for k in range(da * db):
                        row[k * dc + j] -= P[i][k]
                    rows.append(row)
        basis = nullspace(rows, da * db * dc)
        return [[[v[i * dc + j] for j in range(dc)] for i in range(da * db)] for v in basis]

    T = {}
    N = {}
    for a, b, c in itertools.product(labels, repeat=3):
        if a == "triv" or b == "triv":
            maps = [_ident(dim[c])] if (c == (b if a == "triv" else a)) else []
        else:
            maps = intertwiners(c, a, b)
        if maps:
            N[(a, b, c)] = len(maps)
            T[(a, b, c)] = maps
    assert all(m == 1 for m in N.values())

    special = {}
    idx = {x: i for i, x in enumerate(labels)}
    sk = FusionData(tuple(labels), 0, (0, 1, 2), {tuple(idx[x] for x in k): m for k, m in N.items()}, {}, 1)
    for quad in itertools.product(labels, repeat=4):
        a, b, c, d = quad
        q = tuple(idx[x] for x in quad)
        rows, cols = sk.left_trees(*q), sk.right_trees(*q)
        if not rows:
            continue
        left = [matmul(_kron(T[(a, b, labels[e])][i], _ident(dim[c])), T[(labels[e], c, d)][j]) for e, i, j in rows]
        right = [matmul(_kron(_ident(dim[a]), T[(b, c, labels[f])][k]), T[(a, labels[f], d)][l]) for f, k, l in cols]
        flat = lambda M: [x for r in M for x in r]
        A = [list(col) for col in zip(*[flat(R) for R in right])]
        mat = []
        for L in left:
            sol = solve(A, flat(L))
            assert sol is not None and not sol.nullspace
            mat.append(sol.particular)
        special[quad] = mat
    return skeleton_doc(labels, "triv", {x: x for x in labels}, N, 1, special)


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for name, make in [("fibonacci", fibonacci), ("ising", ising), ("rep_s3", rep_s3)]:
        fd = load_fusion(make())
        for report in validate_all(fd):
            print(name, report.summary())
            assert report.ok
        (DATA / f"{name}.json").write_text(json.dumps(fusion_to_json(fd), indent=1) + "\n")


if __name__ == "__main__":
    main()
