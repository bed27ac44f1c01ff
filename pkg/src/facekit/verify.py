"""Axiom checks for face algebras and reconstruction of the fusion rules.

Every comparison is exact. Each axiom records how many instances it
examined and stops at its first counterexample.

Checking levels:

``fast``
    every single-element check, every pairwise check (exhaustive up to
    dimension 256, otherwise ``PAIR_SAMPLES`` pairs drawn with ``DEFAULT_SEED``),
    and associativity exhaustively up to dimension 64, otherwise
    ``TRIPLE_SAMPLES`` triples anchored on nonzero products.
``full``
    additionally makes all pair and triple sweeps exhaustive.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .exactnum import Cyclotomic, format_cyclotomic, nullspace_sparse, rref_sparse
from .facebuild import (
    CoendBasisElement,
    FaceAlgebra,
    FiberVector,
    LinComb,
    _acc,
    lc_add,
    lc_scale,
    prune,
)

DEFAULT_SEED = 20240229
PAIR_SAMPLES = 20000
TRIPLE_SAMPLES = 5000
EXHAUSTIVE_PAIRS_UP_TO = 256
EXHAUSTIVE_TRIPLES_UP_TO = 64
LEVELS = ("fast", "full")


# ---------------------------------------------------------------- reports
@dataclass
class AxiomResult:
    axiom: str
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failed(self) -> list[str]:
        return [r.axiom for r in self.results if not r.passed]

    def extend(self, other: AxiomReport) -> AxiomReport:
        return AxiomReport(self.results + other.results)

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def to_text(self) -> str:
        width = max((len(r.axiom) for r in self.results), default=0)
        lines = []
        for r in self.results:
            lines.append(f"{r.axiom:<{width}}  {r.status:<4}  checked={r.checked}")
            if r.counterexample is not None:
                lines.append("    counterexample: " + json.dumps(r.counterexample, sort_keys=True))
        overall = "PASS" if self.ok else "FAIL"
        lines.append(f"overall: {overall} ({len(self.results) - len(self.failed())}/{len(self.results)} axioms)")
        return "\n".join(lines) + "\n"


def _lc_text(H: FaceAlgebra, x: dict) -> list:
    out = []
    for k, v in sorted(x.items()):
        key = list(k) if isinstance(k, tuple) else k
        out.append([key, format_cyclotomic(v)])
    return out


def _fail(res: AxiomResult, H: FaceAlgebra, where: dict, lhs, rhs) -> None:
    res.passed = False
    ce = dict(where)
    for key in ("a", "b", "c"):
        if isinstance(ce.get(key), int):
            ce[key + "_basis"] = H.describe(ce[key])
    ce["lhs"] = _lc_text(H, lhs) if isinstance(lhs, dict) else format_cyclotomic(lhs)
    ce["rhs"] = _lc_text(H, rhs) if isinstance(rhs, dict) else format_cyclotomic(rhs)
    res.counterexample = ce


def thread_cap() -> int:
    """Parallelism cap from ``FACEKIT_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("FACEKIT_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- helpers
class _Cache:
    """Precomputed per-basis data shared by the checks of one run."""

    def __init__(self, H: FaceAlgebra):
        self.H = H
        self.e = [H.basis_vector(u) for u in range(H.dim)]
        self.delta = [H.delta(x) for x in self.e]
        V = range(H.rank)
        self.plain = [H.face_plain(v) for v in V]
        self.ring = [H.face_ring(v) for v in V]
        # face actions on basis elements, as LinCombs
        self.L_plain = [[H.mul(self.plain[v], x) for x in self.e] for v in V]
        self.R_plain = [[H.mul(x, self.plain[v]) for x in self.e] for v in V]
        self.L_ring = [[H.mul(self.ring[v], x) for x in self.e] for v in V]
        self.R_ring = [[H.mul(x, self.ring[v]) for x in self.e] for v in V]
        self._S = None

    def apply(self, table, x: LinComb) -> LinComb:
        out: dict = {}
        for u, a in x.items():
            for k, c in table[u].items():
                _acc(out, k, a * c)
        return prune(out)

    @property
    def S(self):
        if self._S is None:
            self._S = self.H.antipode
        return self._S

    def nonzero_pairs(self):
        return sorted(self.H.product)


def _pairs(H: FaceAlgebra, level: str, seed: int):
    n = H.dim
    if level == "full" or n <= EXHAUSTIVE_PAIRS_UP_TO:
        return itertools.product(range(n), repeat=2)
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(PAIR_SAMPLES)]


# ---------------------------------------------------------------- axioms
def _check_eta_algebra(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    """E -> H is an algebra map and the unit is the sum of the eta images."""
    res = AxiomResult("eta-algebra")
    V = range(H.rank)
    keys = list(itertools.product(V, repeat=2))
    for (l1, m1), (l2, m2) in itertools.product(keys, repeat=2):
        res.checked += 1
        lhs = H.mul(H.eta[(l1, m1)], H.eta[(l2, m2)])
        rhs = H.eta[(l1, m1)] if (l1, m1) == (l2, m2) else {}
        if lhs != rhs:
            _fail(res, H, {"eta_left": [l1, m1], "eta_right": [l2, m2]}, lhs, rhs)
            return res
    res.checked += 1
    total = lc_add(*H.eta.values())
    if total != H.unit:
        _fail(res, H, {"unit": "sum of eta"}, H.unit, total)
    return res


def _check_D_ee(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("D(ee)")
    V = range(H.rank)
    for lam, mu in itertools.product(V, repeat=2):
        res.checked += 1
        x = H.eta[(lam, mu)]
        lhs = H.delta(x)
        rhs: dict = {}
        for nu in V:
            for a, s in H.eta[(lam, nu)].items():
                for b, t in H.eta[(nu, mu)].items():
                    _acc(rhs, (a, b), s * t)
        rhs = prune(rhs)
        if lhs != rhs:
            _fail(res, H, {"eta": [lam, mu], "part": "coproduct"}, lhs, rhs)
            return res
        e = H.eps(x)
        if e != (1 if lam == mu else 0):
            _fail(res, H, {"eta": [lam, mu], "part": "counit"}, e, Cyclotomic.rational(int(lam == mu), H.conductor))
            return res
    return res


def _check_counit(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("counit")
    for a in range(H.dim):
        res.checked += 1
        left: dict = {}
        right: dict = {}
        for (v, w), c in C.delta[a].items():
            ev = H.counit.get(v)
            if ev:
                _acc(left, w, ev * c)
            ew = H.counit.get(w)
            if ew:
                _acc(right, v, ew * c)
        left, right = prune(left), prune(right)
        if left != C.e[a] or right != C.e[a]:
            _fail(res, H, {"a": a}, left if left != C.e[a] else right, C.e[a])
            return res
    return res


def _coassoc_sides(H: FaceAlgebra, C: _Cache, a: int):
    lhs: dict = {}
    rhs: dict = {}
    for (v, w), c in C.delta[a].items():
        for (v1, v2), d in C.delta[v].items():
            _acc(lhs, (v1, v2, w), c * d)
        for (w1, w2), d in C.delta[w].items():
            _acc(rhs, (v, w1, w2), c * d)
    return prune(lhs), prune(rhs)


def _check_coassociativity(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("coassociativity")
    for a in range(H.dim):
        res.checked += 1
        lhs, rhs = _coassoc_sides(H, C, a)
        if lhs != rhs:
            _fail(res, H, {"a": a}, lhs, rhs)
            return res
    return res


def _check_unit(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("unit")
    for a in range(H.dim):
        res.checked += 1
        left = H.mul(H.unit, C.e[a])
        right = H.mul(C.e[a], H.unit)
        if left != C.e[a] or right != C.e[a]:
            _fail(res, H, {"a": a}, left if left != C.e[a] else right, C.e[a])
            return res
    return res


def _assoc_triples(H: FaceAlgebra, C: _Cache, level: str, seed: int):
    n = H.dim
    nz = C.nonzero_pairs()
    if level == "full" or n <= EXHAUSTIVE_TRIPLES_UP_TO:
        # triples with ab = 0 and bc = 0 are zero on both sides
        seen = set()
        for a, b in nz:
            for c in range(n):
                seen.add((a, b, c))
                yield a, b, c
        for b, c in nz:
            for a in range(n):
                if (a, b, c) not in seen:
                    yield a, b, c
        return
    rng = random.Random(seed)
    for k in range(TRIPLE_SAMPLES):
        if not nz:
            return
        if k % 2 == 0:
            a, b = nz[rng.randrange(len(nz))]
            yield a, b, rng.randrange(n)
        else:
            b, c = nz[rng.randrange(len(nz))]
            yield rng.randrange(n), b, c


def _check_associativity(H: FaceAlgebra, C: _Cache, level: str, seed: int) -> AxiomResult:
    res = AxiomResult("associativity")
    P = H.product
    exhaustive = level == "full" or H.dim <= EXHAUSTIVE_TRIPLES_UP_TO
    for a, b, c in _assoc_triples(H, C, level, seed):
        res.checked += 1
        lhs = H.mul(P.get((a, b), {}), C.e[c])
        rhs = H.mul(C.e[a], P.get((b, c), {}))
        if lhs != rhs:
            _fail(res, H, {"a": a, "b": b, "c": c}, lhs, rhs)
            return res
    if exhaustive:
        res.checked = H.dim ** 3
    return res


def _check_D_ab(H: FaceAlgebra, C: _Cache, level: str, seed: int) -> AxiomResult:
    res = AxiomResult("D(ab)")
    P = H.product
    for a, b in _pairs(H, level, seed):
        res.checked += 1
        lhs = H.delta(P.get((a, b), {}))
        rhs = H.tensor_mul(C.delta[a], C.delta[b])
        if lhs != rhs:
            _fail(res, H, {"a": a, "b": b}, lhs, rhs)
            return res
    return res


def _check_e_ab(H: FaceAlgebra, C: _Cache, level: str, seed: int) -> AxiomResult:
    res = AxiomResult("e(ab)")
    V = range(H.rank)
    e_right = [[H.eps(C.R_plain[nu][a]) for nu in V] for a in range(H.dim)]
    e_left = [[H.eps(C.L_ring[nu][b]) for nu in V] for b in range(H.dim)]
    P = H.product
    zero = H.zero()
    for a, b in _pairs(H, level, seed):
        res.checked += 1
        lhs = H.eps(P.get((a, b), {}))
        rhs = zero
        for nu in V:
            x = e_right[a][nu]
            if x:
                rhs = rhs + x * e_left[b][nu]
        if lhs != rhs:
            _fail(res, H, {"a": a, "b": b}, lhs, rhs)
            return res
    return res


def _check_D_eeaee(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    """Delta(lam' mu c lam'' mu'') = sum lam' c1 lam'' (x) mu c2 mu''."""
    res = AxiomResult("D(eeaee)")
    V = list(range(H.rank))
    keys = list(itertools.product(V, repeat=2))
    for c in range(H.dim):
        res.checked += len(V) ** 4
        lhs = {}
        for r in keys:
            y = H.mul(C.e[c], H.eta[r])
            if not y:
                continue
            for l in keys:
                z = H.mul(H.eta[l], y)
                if z:
                    d = H.delta(z)
                    if d:
                        lhs[(l[0], l[1], r[0], r[1])] = d
        rhs: dict = {}
        for (c1, c2), coef in C.delta[c].items():
            X = {}
            for lam in V:
                y = C.L_ring[lam][c1]
                if not y:
                    continue
                for lam2 in V:
                    z = C.apply(C.R_ring[lam2], y)
                    if z:
                        X[(lam, lam2)] = z
            if not X:
                continue
            Y = {}
            for mu in V:
                y = C.L_plain[mu][c2]
                if not y:
                    continue
                for mu2 in V:
                    z = C.apply(C.R_plain[mu2], y)
                    if z:
                        Y[(mu, mu2)] = z
            for (lam, lam2), x in X.items():
                for (mu, mu2), w in Y.items():
                    slot = rhs.setdefault((lam, mu, lam2, mu2), {})
                    for k1, s in x.items():
                        for k2, t in w.items():
                            _acc(slot, (k1, k2), coef * s * t)
        rhs = {k: prune(v) for k, v in rhs.items()}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            key = sorted(set(lhs) ^ set(rhs) or {k for k in lhs if lhs[k] != rhs.get(k)})[0]
            _fail(res, H, {"c": c, "faces": list(key)}, lhs.get(key, {}), rhs.get(key, {}))
            return res
    return res


def _check_eae_star_a(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    """sum lam c1 mu (x) c2 = sum c1 (x) lam-ring c2 mu-ring."""
    res = AxiomResult("eae*a")
    V = range(H.rank)
    for c in range(H.dim):
        res.checked += H.rank ** 2
        lhs: dict = {}
        rhs: dict = {}
        for (c1, c2), coef in C.delta[c].items():
            for lam in V:
                y = C.L_plain[lam][c1]
                if y:
                    for mu in V:
                        z = C.apply(C.R_plain[mu], y)
                        for k, s in z.items():
                            _acc(lhs.setdefault((lam, mu), {}), (k, c2), coef * s)
                y = C.L_ring[lam][c2]
                if y:
                    for mu in V:
                        z = C.apply(C.R_ring[mu], y)
                        for k, s in z.items():
                            _acc(rhs.setdefault((lam, mu), {}), (c1, k), coef * s)
        lhs = {k: v for k, v in ((k, prune(v)) for k, v in lhs.items()) if v}
        rhs = {k: v for k, v in ((k, prune(v)) for k, v in rhs.items()) if v}
        if lhs != rhs:
            key = sorted(set(lhs) | set(rhs), key=lambda k: lhs.get(k) == rhs.get(k))[0]
            _fail(res, H, {"c": c, "faces": list(key)}, lhs.get(key, {}), rhs.get(key, {}))
            return res
    return res


def _check_e_ee(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("e(ee)")
    V = range(H.rank)
    for c in range(H.dim):
        for lam in V:
            ring_l = C.L_ring[lam][c]
            plain_l = C.L_plain[lam][c]
            for mu in V:
                res.checked += 1
                lhs = H.eps(C.apply(C.R_ring[mu], ring_l)) if ring_l else H.zero()
                rhs = H.eps(C.apply(C.R_plain[mu], plain_l)) if plain_l else H.zero()
                if lhs != rhs:
                    _fail(res, H, {"c": c, "faces": [lam, mu]}, lhs, rhs)
                    return res
    return res


# ---------------------------------------------------------------- antipode
def _check_S_a_a(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    """sum S(a1) a2 = sum eps(a nu) nu  and  sum a1 S(a2) = sum eps(nu a) nu-ring."""
    res = AxiomResult("S(a)a")
    V = range(H.rank)
    S = H.antipode
    for a in range(H.dim):
        res.checked += 1
        lhs: dict = {}
        lhs2: dict = {}
        for (v, w), c in C.delta[a].items():
            for k, s in H.mul(S[v], C.e[w]).items():
                _acc(lhs, k, c * s)
            for k, s in H.mul(C.e[v], S[w]).items():
                _acc(lhs2, k, c * s)
        lhs, lhs2 = prune(lhs), prune(lhs2)
        rhs = lc_add(*(lc_scale(C.plain[nu], H.eps(C.R_plain[nu][a])) for nu in V))
        rhs2 = lc_add(*(lc_scale(C.ring[nu], H.eps(C.L_plain[nu][a])) for nu in V))
        if lhs != rhs:
            _fail(res, H, {"a": a, "side": "S(a1)a2"}, lhs, rhs)
            return res
        if lhs2 != rhs2:
            _fail(res, H, {"a": a, "side": "a1S(a2)"}, lhs2, rhs2)
            return res
    return res


def _check_S_a_a_S(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("S(a)aS(a)")
    S = H.antipode
    for a in range(H.dim):
        res.checked += 1
        triple, _ = _coassoc_sides(H, C, a)
        lhs: dict = {}
        for (v1, v2, v3), c in triple.items():
            x = H.mul(H.mul(S[v1], C.e[v2]), S[v3])
            for k, s in x.items():
                _acc(lhs, k, c * s)
        lhs = prune(lhs)
        if lhs != S[a]:
            _fail(res, H, {"a": a}, lhs, S[a])
            return res
    return res


def _check_S_ee(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("S(ee)")
    V = range(H.rank)
    for lam, mu in itertools.product(V, repeat=2):
        res.checked += 1
        lhs = H.S(H.eta[(lam, mu)])
        rhs = H.eta[(mu, lam)]
        if lhs != rhs:
            _fail(res, H, {"eta": [lam, mu]}, lhs, rhs)
            return res
    return res


def _check_S_antialgebra(H: FaceAlgebra, C: _Cache, level: str, seed: int) -> AxiomResult:
    res = AxiomResult("S-antialgebra")
    S = H.antipode
    P = H.product
    for a, b in _pairs(H, level, seed):
        res.checked += 1
        lhs = H.S(P.get((a, b), {}))
        rhs = H.mul(S[b], S[a])
        if lhs != rhs:
            _fail(res, H, {"a": a, "b": b}, lhs, rhs)
            return res
    return res


def _check_S_anticoalgebra(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("S-anticoalgebra")
    S = H.antipode
    for a in range(H.dim):
        res.checked += 1
        lhs = H.delta(S[a])
        rhs: dict = {}
        for (v, w), c in C.delta[a].items():
            for k2, s in S[w].items():
                for k1, t in S[v].items():
                    _acc(rhs, (k2, k1), c * s * t)
        rhs = prune(rhs)
        if lhs != rhs:
            _fail(res, H, {"a": a}, lhs, rhs)
            return res
    return res


def antipode_rank(H: FaceAlgebra) -> int:
    rows = [dict(x) for x in H.antipode]
    return len(rref_sparse(rows, H.dim)[1])


def _check_S_bijective(H: FaceAlgebra, C: _Cache) -> AxiomResult:
    res = AxiomResult("S-bijective")
    res.checked = H.dim
    r = antipode_rank(H)
    if r != H.dim:
        res.passed = False
        res.counterexample = {"rank": r, "dim": H.dim}
    return res


def antipode_inverse(H: FaceAlgebra) -> tuple[LinComb, ...]:
    """The table of S^{-1}, by exact inversion of the antipode matrix."""
    from .exactnum import inverse

    zero = H.zero()
    M = [[zero] * H.dim for _ in range(H.dim)]
    for u, x in enumerate(H.antipode):
        for k, c in x.items():
            M[k][u] = c
    Minv = inverse(M)
    return tuple(prune({k: Minv[k][u] for k in range(H.dim)}) for u in range(H.dim))


# ---------------------------------------------------------------- drivers
def _run(H: FaceAlgebra, checks: list[Callable[[], AxiomResult]], stop_on_failure: bool, threads: int | None) -> AxiomReport:
    threads = thread_cap() if threads is None else threads
    if threads > 1 and not stop_on_failure:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: f(), checks))
        return AxiomReport(results)
    results = []
    for check in checks:
        r = check()
        results.append(r)
        if stop_on_failure and not r.passed:
            break
    return AxiomReport(results)


def check_face_algebra(
    H: FaceAlgebra,
    level: str = "fast",
    stop_on_failure: bool = False,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
    _cache: _Cache | None = None,
) -> AxiomReport:
    """Run the face-algebra axioms (everything except the antipode)."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    C = _cache or _Cache(H)
    checks = [
        lambda: _check_eta_algebra(H, C),
        lambda: _check_D_ee(H, C),
        lambda: _check_counit(H, C),
        lambda: _check_coassociativity(H, C),
        lambda: _check_unit(H, C),
        lambda: _check_associativity(H, C, level, seed),
        lambda: _check_D_ab(H, C, level, seed),
        lambda: _check_e_ab(H, C, level, seed),
        lambda: _check_D_eeaee(H, C),
        lambda: _check_eae_star_a(H, C),
        lambda: _check_e_ee(H, C),
    ]
    return _run(H, checks, stop_on_failure, threads)


def check_antipode(
    H: FaceAlgebra,
    level: str = "fast",
    stop_on_failure: bool = False,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
    _cache: _Cache | None = None,
) -> AxiomReport:
    """Antipode identities, S on face elements, anti-(co)algebra property, bijectivity."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if H.antipode is None:
        return AxiomReport([AxiomResult("antipode-present", False, 0, {"reason": "no antipode table"})])
    C = _cache or _Cache(H)
    checks = [
        lambda: _check_S_a_a(H, C),
        lambda: _check_S_a_a_S(H, C),
        lambda: _check_S_ee(H, C),
        lambda: _check_S_antialgebra(H, C, level, seed),
        lambda: _check_S_anticoalgebra(H, C),
        lambda: _check_S_bijective(H, C),
    ]
    return _run(H, checks, stop_on_failure, threads)


def check_all(H: FaceAlgebra, level: str = "fast", stop_on_failure: bool = False,
              seed: int = DEFAULT_SEED, threads: int | None = None) -> AxiomReport:
    C = _Cache(H)
    report = check_face_algebra(H, level, stop_on_failure, seed, threads, C)
    if stop_on_failure and not report.ok:
        return report
    return report.extend(check_antipode(H, level, stop_on_failure, seed, threads, C))


# ---------------------------------------------------------------- mutation
MUTABLE_TABLES = ("product", "coproduct", "antipode")


def mutate(H: FaceAlgebra, table: str, rng: random.Random) -> tuple[FaceAlgebra, str]:
    """Add 1 to one randomly chosen stored coefficient of ``table``."""
    from .facebuild import with_tables

    one = Cyclotomic.rational(1, H.conductor)
    if table == "product":
        keys = sorted(H.product)
        key = keys[rng.randrange(len(keys))]
        entry = dict(H.product[key])
        k = sorted(entry)[rng.randrange(len(entry))]
        entry[k] = entry[k] + one
        product = dict(H.product)
        product[key] = prune(entry)
        return with_tables(H, product=product), f"product{list(key)}[{k}] += 1"
    if table == "coproduct":
        rows = [u for u, t in enumerate(H.coproduct) if t]
        u = rows[rng.randrange(len(rows))]
        terms = list(H.coproduct[u])
        i = rng.randrange(len(terms))
        v, w, c = terms[i]
        terms[i] = (v, w, c + one)
        coproduct = list(H.coproduct)
        coproduct[u] = tuple(terms)
        return with_tables(H, coproduct=tuple(coproduct)), f"coproduct[{u}] term ({v},{w}) += 1"
    if table == "antipode":
        rows = [u for u, x in enumerate(H.antipode) if x]
        u = rows[rng.randrange(len(rows))]
        entry = dict(H.antipode[u])
        k = sorted(entry)[rng.randrange(len(entry))]
        entry[k] = entry[k] + one
        antipode = list(H.antipode)
        antipode[u] = prune(entry)
        return with_tables(H, antipode=tuple(antipode)), f"antipode[{u}][{k}] += 1"
    raise ValueError(f"unknown table {table!r}")


# ---------------------------------------------------------------- comodules
@dataclass(frozen=True)
class Comodule:
    """A right comodule: ``delta(m_j) = sum_i m_i (x) coaction[j][i]``.

    ``faces[j] = (lam, mu)`` records that ``m_j`` lies in ``lam M mu``.
    """

    algebra: FaceAlgebra
    faces: tuple[tuple[int, int], ...]
    coaction: tuple[dict[int, LinComb], ...]
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.faces)

    def coefficient(self, i: int, j: int) -> LinComb:
        return self.coaction[j].get(i, {})


def comodule_defects(M: Comodule) -> list[str]:
    """Violations of coassociativity, counit and the face bookkeeping."""
    H = M.algebra
    issues = []
    n = M.dim
    V = range(H.rank)
    plain = [H.face_plain(v) for v in V]
    for i in range(n):
        for j in range(n):
            c = M.coefficient(i, j)
            lhs = H.delta(c)
            rhs: dict = {}
            for k in range(n):
                a = M.coefficient(i, k)
                b = M.coefficient(k, j)
                for u, s in a.items():
                    for w, t in b.items():
                        _acc(rhs, (u, w), s * t)
            if lhs != prune(rhs):
                issues.append(f"coassociativity fails at ({i},{j})")
            if H.eps(c) != (1 if i == j else 0):
                issues.append(f"counit fails at ({i},{j})")
            for lam in V:
                lc = H.mul(plain[lam], c)
                for mu in V:
                    got = H.eps(H.mul(lc, plain[mu])) if lc else 0
                    want = 1 if (i == j and M.faces[j] == (lam, mu)) else 0
                    if got != want:
                        issues.append(f"face action mismatch at ({i},{j}) for ({lam},{mu})")
    return issues


def _fiber_of(H: FaceAlgebra) -> dict[int, tuple[FiberVector, ...]]:
    if H.fiber is not None:
        return H.fiber
    fiber: dict[int, list] = {xi: [] for xi in range(H.rank)}
    for b in H.basis:
        if b.I not in fiber[b.xi]:
            fiber[b.xi].append(b.I)
    return {xi: tuple(v) for xi, v in fiber.items()}


def simple_comodule(H: FaceAlgebra, xi: int) -> Comodule:
    fiber = _fiber_of(H)[xi]
    one = Cyclotomic.rational(1, H.conductor)
    coaction = tuple(
        {i: {H.index[CoendBasisElement(xi, I, J)]: one} for i, I in enumerate(fiber)}
        for J in fiber
    )
    return Comodule(H, tuple((x.left, x.right) for x in fiber), coaction, H.labels[xi])


def simple_comodules(H: FaceAlgebra) -> dict[int, Comodule]:
    """The comodules ``Omega_0(L_xi)`` with coaction read off the coend blocks."""
    return {xi: simple_comodule(H, xi) for xi in range(H.rank)}


def unit_label(H: FaceAlgebra) -> int:
    blocks = {H.basis[u].xi for x in H.eta.values() for u in x}
    if len(blocks) != 1:
        raise ValueError("face idempotents do not lie in a single block")
    return blocks.pop()


def tensor_comodules(M: Comodule, N: Comodule) -> Comodule:
    """``M (x)_R N`` on face-matched pairs with coaction through the product."""
    H = M.algebra
    pairs = [(p, q) for p in range(M.dim) for q in range(N.dim) if M.faces[p][1] == N.faces[q][0]]
    faces = tuple((M.faces[p][0], N.faces[q][1]) for p, q in pairs)
    coaction = []
    for j, l in pairs:
        col = {}
        for r, (i, k) in enumerate(pairs):
            a = M.coefficient(i, j)
            b = N.coefficient(k, l)
            if a and b:
                x = H.mul(a, b)
                if x:
                    col[r] = x
        coaction.append(col)
    return Comodule(H, faces, tuple(coaction), f"({M.name} x {N.name})")


def intertwiner_space(M: Comodule, N: Comodule) -> list[list[list]]:
    """Basis of comodule maps ``M -> N`` as ``N.dim x M.dim`` matrices."""
    H = M.algebra
    var = {}
    for k in range(N.dim):
        for j in range(M.dim):
            if N.faces[k] == M.faces[j]:
                var[(k, j)] = len(var)
    zero = H.zero()
    one = Cyclotomic.rational(1, H.conductor)
    if not var:
        return []
    rows = []
    # delta_N(f m_j) = (f (x) id) delta_M(m_j), compared coefficientwise
    for l in range(N.dim):
        for j in range(M.dim):
            eq: dict = {}
            for k in range(N.dim):
                x = var.get((k, j))
                if x is None:
                    continue
                for h, c in N.coefficient(l, k).items():
                    _acc(eq.setdefault(h, {}), x, c)
            for i in range(M.dim):
                x = var.get((l, i))
                if x is None:
                    continue
                for h, c in M.coefficient(i, j).items():
                    _acc(eq.setdefault(h, {}), x, -c)
            for row in eq.values():
                row = prune(row)
                if row:
                    rows.append(row)
    basis = nullspace_sparse(rows, len(var), zero, one)
    out = []
    for vec in basis:
        f = [[zero] * M.dim for _ in range(N.dim)]
        for (k, j), x in var.items():
            f[k][j] = vec[x]
        out.append(f)
    return out


def is_comodule_map(f: list[list], M: Comodule, N: Comodule) -> bool:
    H = M.algebra
    for l in range(N.dim):
        for j in range(M.dim):
            lhs: dict = {}
            for k in range(N.dim):
                if f[k][j]:
                    for h, c in N.coefficient(l, k).items():
                        _acc(lhs, h, f[k][j] * c)
            rhs: dict = {}
            for i in range(M.dim):
                if f[l][i]:
                    for h, c in M.coefficient(i, j).items():
                        _acc(rhs, h, f[l][i] * c)
            if prune(lhs) != prune(rhs):
                return False
    for k in range(N.dim):
        for j in range(M.dim):
            if f[k][j] and N.faces[k] != M.faces[j]:
                return False
    return True


def dual_comodule(M: Comodule) -> Comodule:
    """Left dual on the linear dual: ``delta(m^i) = sum_j m^j (x) S(c_ij)``."""
    H = M.algebra
    if H.antipode is None:
        raise NotImplementedError("dual comodules need an antipode")
    faces = tuple((mu, lam) for lam, mu in M.faces)
    coaction = []
    for i in range(M.dim):
        col = {}
        for j in range(M.dim):
            x = H.S(M.coefficient(i, j))
            if x:
                col[j] = x
        coaction.append(col)
    return Comodule(H, faces, tuple(coaction), f"{M.name}^v")


def evaluation_map(M: Comodule, unit: Comodule) -> tuple[Comodule, list[list]]:
    """``M^v (x)_R M -> unit`` with ``m^i (x) m_j -> delta_ij * (right face of m_i)``.

    Returns the source comodule and the matrix of the map.
    """
    H = M.algebra
    src = tensor_comodules(dual_comodule(M), M)
    pairs = [(p, q) for p in range(M.dim) for q in range(M.dim) if M.faces[p][0] == M.faces[q][0]]
    unit_pos = {face: k for k, face in enumerate(unit.faces)}
    zero = H.zero()
    one = Cyclotomic.rational(1, H.conductor)
    f = [[zero] * src.dim for _ in range(unit.dim)]
    for r, (p, q) in enumerate(pairs):
        if p == q:
            lam = M.faces[p][1]
            f[unit_pos[(lam, lam)]][r] = one
    return src, f


# ---------------------------------------------------------------- reconstruction
@dataclass
class ReconstructionReport:
    labels: tuple[str, ...]
    N_reconstructed: dict[tuple[int, int, int], int]
    N_input: dict[tuple[int, int, int], int]
    schur: dict[tuple[int, int], int]
    dimension_count: tuple[int, int]
    comodule_defects: dict[str, list[str]]

    @property
    def fusion_matches(self) -> bool:
        keys = set(self.N_reconstructed) | set(self.N_input)
        return all(self.N_reconstructed.get(k, 0) == self.N_input.get(k, 0) for k in keys)

    @property
    def schur_ok(self) -> bool:
        return all(d == (1 if a == b else 0) for (a, b), d in self.schur.items())

    @property
    def ok(self) -> bool:
        return (self.fusion_matches and self.schur_ok and not any(self.comodule_defects.values())
                and self.dimension_count[0] == self.dimension_count[1])

    def as_axiom_report(self) -> AxiomReport:
        n = self.labels
        results = []
        r = AxiomResult("comodule-laws", checked=len(self.comodule_defects))
        bad = {k: v for k, v in self.comodule_defects.items() if v}
        if bad:
            r.passed, r.counterexample = False, {k: v[:3] for k, v in bad.items()}
        results.append(r)
        r = AxiomResult("schur", checked=len(self.schur))
        for (a, b), d in sorted(self.schur.items()):
            if d != (1 if a == b else 0):
                r.passed, r.counterexample = False, {"pair": [n[a], n[b]], "dim": d}
                break
        results.append(r)
        r = AxiomResult("fusion-rules", checked=len(self.N_reconstructed))
        for k in sorted(set(self.N_reconstructed) | set(self.N_input)):
            got, want = self.N_reconstructed.get(k, 0), self.N_input.get(k, 0)
            if got != want:
                r.passed, r.counterexample = False, {"triple": [n[x] for x in k], "reconstructed": got, "input": want}
                break
        results.append(r)
        got, want = self.dimension_count
        results.append(AxiomResult("dimension-count", got == want, 1,
                                   None if got == want else {"dim": got, "sum_of_squares": want}))
        return AxiomReport(results)


def reconstruct_fusion(H: FaceAlgebra, N_input: dict | None = None) -> ReconstructionReport:
    """Recover the fusion rules from hom-spaces between tensor products of
    the canonical simple comodules and compare with the input multiplicities."""
    if N_input is None:
        if H.fusion is None:
            raise ValueError("no input fusion data to compare against")
        N_input = dict(H.fusion.N)
    simples = simple_comodules(H)
    V = range(H.rank)
    defects = {H.labels[xi]: comodule_defects(M) for xi, M in simples.items()}
    schur = {(a, b): len(intertwiner_space(simples[a], simples[b])) for a in V for b in V}
    N_rec = {}
    for xi in V:
        for eta in V:
            T = tensor_comodules(simples[xi], simples[eta])
            for zeta in V:
                d = len(intertwiner_space(simples[zeta], T))
                if d:
                    N_rec[(xi, eta, zeta)] = d
    count = sum(M.dim ** 2 for M in simples.values())
    return ReconstructionReport(H.labels, N_rec, {k: v for k, v in N_input.items() if v}, schur,
                                (H.dim, count), defects)
