"""Presentation of a split finite semisimple tensor category by fusion data.

Labels are handled internally as integer indices into ``FusionData.labels``.
Hom-space bases are fixed per fusion channel: ``T^{ab}_{c,i}`` spans
``C(L_c, L_a (x) L_b)`` and ``T~^{c}_{ab,i}`` is its composition-dual co-basis.

The F-block of a quadruple ``(a, b, c, d)`` expresses the associator applied
to a left-associated tree in terms of right-associated trees::

    a_{abc} o (T^{ab}_{e,i} (x) id_c) o T^{ec}_{d,j}
        = sum_{(f,k,l)} F[(e,i,j), (f,k,l)] (id_a (x) T^{bc}_{f,k}) o T^{af}_{d,l}

so rows are indexed by ``(e, i, j)`` and columns by ``(f, k, l)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

from .exactnum import Cyclotomic, SingularMatrixError, cyc, format_cyclotomic, inverse

Tree = tuple[int, int, int]


class FusionDataError(ValueError):
    """The input document does not describe a valid presentation."""


class SchemaError(FusionDataError):
    pass


class GaugeError(FusionDataError):
    pass


class SingularFError(FusionDataError):
    pass


@dataclass(frozen=True)
class FBlock:
    rows: tuple[Tree, ...]
    cols: tuple[Tree, ...]
    mat: tuple[tuple[Cyclotomic, ...], ...]
    row_index: dict[Tree, int] = field(init=False, repr=False, compare=False)
    col_index: dict[Tree, int] = field(init=False, repr=False, compare=False)
    _inv: list = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "row_index", {r: i for i, r in enumerate(self.rows)})
        object.__setattr__(self, "col_index", {c: i for i, c in enumerate(self.cols)})
        object.__setattr__(self, "_inv", [])

    def entry(self, row: Tree, col: Tree) -> Cyclotomic:
        return self.mat[self.row_index[row]][self.col_index[col]]

    @property
    def inverse(self) -> tuple[tuple[Cyclotomic, ...], ...]:
        """Inverse matrix: rows indexed by ``cols``, columns by ``rows``."""
        if not self._inv:
            self._inv.append(tuple(tuple(r) for r in inverse([list(r) for r in self.mat])))
        return self._inv[0]

    def inverse_entry(self, col: Tree, row: Tree) -> Cyclotomic:
        return self.inverse[self.col_index[col]][self.row_index[row]]


@dataclass(frozen=True)
class FusionData:
    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    N: dict[tuple[int, int, int], int]
    F: dict[tuple[int, int, int, int], FBlock]
    conductor: int
    _channels: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        channels: dict[tuple[int, int], list[int]] = {}
        for (a, b, c), m in sorted(self.N.items()):
            if m > 0:
                channels.setdefault((a, b), []).append(c)
        object.__setattr__(self, "_channels", channels)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"unknown label {name!r}") from None

    def mult(self, a: int, b: int, c: int) -> int:
        return self.N.get((a, b, c), 0)

    def channels(self, a: int, b: int) -> list[int]:
        """Labels c with N(a, b, c) > 0, in label order."""
        return self._channels.get((a, b), [])

    def left_trees(self, a: int, b: int, c: int, d: int) -> list[Tree]:
        return [
            (e, i, j)
            for e in self.channels(a, b)
            for i in range(self.mult(a, b, e))
            for j in range(self.mult(e, c, d))
        ]

    def right_trees(self, a: int, b: int, c: int, d: int) -> list[Tree]:
        return [
            (f, k, l)
            for f in self.channels(b, c)
            for k in range(self.mult(b, c, f))
            for l in range(self.mult(a, f, d))
        ]

    def block(self, a: int, b: int, c: int, d: int) -> FBlock:
        return self.F[(a, b, c, d)]

    def zero(self) -> Cyclotomic:
        return Cyclotomic(self.conductor)

    def one(self) -> Cyclotomic:
        return Cyclotomic.rational(1, self.conductor)


# ---------------------------------------------------------------- loading
def _require(cond: bool, msg: str, exc=SchemaError):
    if not cond:
        raise exc(msg)


def load_fusion(document: str | bytes | Mapping[str, Any]) -> FusionData:
    """Build validated ``FusionData`` from the JSON document (text or parsed).

    Checks the schema, unit simplicity, presence and shape of every admissible
    F-block, invertibility and the unit-normalized gauge. Pentagon and duality
    consistency are separate reports (:func:`validate_pentagon`,
    :func:`validate_duality`).
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    _require(isinstance(document, Mapping), "top level must be an object")
    for key in ("conductor", "labels", "unit", "dual", "N", "F"):
        _require(key in document, f"missing key {key!r}")

    conductor = document["conductor"]
    _require(isinstance(conductor, int) and conductor >= 1, "conductor must be a positive integer")
    names = document["labels"]
    _require(
        isinstance(names, list) and names and all(isinstance(x, str) for x in names),
        "labels must be a nonempty list of strings",
    )
    _require(len(set(names)) == len(names), "label names must be unique")
    idx = {name: i for i, name in enumerate(names)}

    def label(value, where: str) -> int:
        _require(value in idx, f"{where}: unknown label {value!r}")
        return idx[value]

    unit = label(document["unit"], "unit")
    dual_doc = document["dual"]
    _require(isinstance(dual_doc, Mapping), "dual must be an object")
    _require(set(dual_doc) == set(names), "dual must map every label")
    dual = tuple(label(dual_doc[name], f"dual[{name}]") for name in names)

    N: dict[tuple[int, int, int], int] = {}
    _require(isinstance(document["N"], list), "N must be a list")
    for k, entry in enumerate(document["N"]):
        _require(isinstance(entry, Mapping) and {"a", "b", "c", "m"} <= set(entry), f"N[{k}] malformed")
        key = tuple(label(entry[x], f"N[{k}].{x}") for x in "abc")
        m = entry["m"]
        _require(isinstance(m, int) and m >= 0, f"N[{k}].m must be a nonnegative integer")
        _require(key not in N, f"N[{k}] duplicates an earlier entry")
        if m:
            N[key] = m

    n_labels = len(names)
    for a in range(n_labels):
        for b in range(n_labels):
            want = 1 if a == b else 0
            _require(
                N.get((unit, a, b), 0) == want and N.get((a, unit, b), 0) == want,
                f"unit {names[unit]!r} must be simple and strict: N(unit, {names[a]}, {names[b]}) "
                f"and N({names[a]}, unit, {names[b]}) must equal {want}",
                FusionDataError,
            )

    skeleton = FusionData(tuple(names), unit, dual, N, {}, conductor)
    F: dict[tuple[int, int, int, int], FBlock] = {}
    _require(isinstance(document["F"], list), "F must be a list")
    for k, entry in enumerate(document["F"]):
        _require(isinstance(entry, Mapping), f"F[{k}] malformed")
        for x in ("a", "b", "c", "d", "rows", "cols", "mat"):
            _require(x in entry, f"F[{k}] missing {x!r}")
        quad = tuple(label(entry[x], f"F[{k}].{x}") for x in "abcd")
        where = "F(" + ",".join(names[q] for q in quad) + ")"
        _require(quad not in F, f"{where} given twice")
        rows_want = skeleton.left_trees(*quad)
        cols_want = skeleton.right_trees(*quad)
        _require(rows_want, f"{where} is not admissible (no fusion trees)")
        rows = [_tree(t, label, f"{where}.rows") for t in entry["rows"]]
        cols = [_tree(t, label, f"{where}.cols") for t in entry["cols"]]
        _require(sorted(rows) == sorted(rows_want) and len(set(rows)) == len(rows), f"{where}: rows do not match admissible trees")
        _require(sorted(cols) == sorted(cols_want) and len(set(cols)) == len(cols), f"{where}: cols do not match admissible trees")
        _require(len(rows) == len(cols), f"{where}: block is not square")
        mat_doc = entry["mat"]
        _require(
            isinstance(mat_doc, list) and len(mat_doc) == len(rows)
            and all(isinstance(r, list) and len(r) == len(cols) for r in mat_doc),
            f"{where}: mat has wrong shape",
        )
        try:
            given = [[_scalar(x, conductor) for x in r] for r in mat_doc]
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
        # store in canonical tree order
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        mat = tuple(tuple(given[rpos[r]][cpos[c]] for c in cols_want) for r in rows_want)
        block = FBlock(tuple(rows_want), tuple(cols_want), mat)
        try:
            block.inverse
        except SingularMatrixError:
            raise SingularFError(f"{where} is not invertible") from None
        F[quad] = block

    for quad in itertools.product(range(n_labels), repeat=4):
        if skeleton.left_trees(*quad) and quad not in F:
            raise SchemaError("missing F block for admissible quadruple (" + ",".join(names[q] for q in quad) + ")")

    fd = FusionData(tuple(names), unit, dual, N, F, conductor)
    _check_gauge(fd)
    return fd


def _tree(value, label, where: str) -> Tree:
    _require(
        isinstance(value, list) and len(value) == 3 and isinstance(value[1], int) and isinstance(value[2], int),
        f"{where}: tree must be [label, int, int]",
    )
    return (label(value[0], where), value[1], value[2])


def _scalar(value, conductor: int) -> Cyclotomic:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"matrix entries must be integers or cyclotomic literals, got {value!r}")
    return cyc(value, conductor)


def _check_gauge(fd: FusionData) -> None:
    u = fd.unit
    for (a, b, c, d), block in fd.F.items():
        if u in (a, b, c):
            n = len(block.rows)
            for i in range(n):
                for j in range(n):
                    if block.mat[i][j] != (1 if i == j else 0):
                        names = ",".join(fd.labels[x] for x in (a, b, c, d))
                        raise GaugeError(f"F({names}) involves the unit and must be the identity")


def read_fusion(path: str | Path) -> FusionData:
    return load_fusion(Path(path).read_text())


def fusion_to_json(fd: FusionData) -> dict:
    """The input-schema document for ``fd`` (canonical ordering)."""
    names = fd.labels
    return {
        "conductor": fd.conductor,
        "labels": list(names),
        "unit": names[fd.unit],
        "dual": {names[a]: names[fd.dual[a]] for a in range(fd.rank)},
        "N": [
            {"a": names[a], "b": names[b], "c": names[c], "m": m}
            for (a, b, c), m in sorted(fd.N.items())
        ],
        "F": [
            {
                "a": names[a], "b": names[b], "c": names[c], "d": names[d],
                "rows": [[names[e], i, j] for e, i, j in block.rows],
                "cols": [[names[f], k, l] for f, k, l in block.cols],
                "mat": [[format_cyclotomic(x) for x in row] for row in block.mat],
            }
            for (a, b, c, d), block in sorted(fd.F.items())
        ],
    }


def perturb_entry(fd: FusionData, quad: tuple[int, int, int, int], i: int, j: int, delta=1) -> FusionData:
    """Copy of ``fd`` with ``F[quad][i][j]`` shifted by ``delta``; no validation."""
    block = fd.F[quad]
    mat = [list(r) for r in block.mat]
    mat[i][j] = mat[i][j] + delta
    F = dict(fd.F)
    F[quad] = FBlock(block.rows, block.cols, tuple(tuple(r) for r in mat))
    return replace(fd, F=F)


# ---------------------------------------------------------------- validators
@dataclass
class ValidationReport:
    name: str
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        lines = [f"{self.name}: {status}, {self.checked} instances checked"]
        for v in self.violations[:10]:
            lines.append("  " + json.dumps(v, sort_keys=True))
        return "\n".join(lines)


def validate_fusion_ring(fd: FusionData) -> ValidationReport:
    """Cheap screen: associativity of the fusion multiplicities."""
    rep = ValidationReport("fusion-associativity")
    V = range(fd.rank)
    names = fd.labels
    for a, b, d, e in itertools.product(V, repeat=4):
        lhs = sum(fd.mult(a, b, c) * fd.mult(c, d, e) for c in V)
        rhs = sum(fd.mult(b, d, f) * fd.mult(a, f, e) for f in V)
        rep.checked += 1
        if lhs != rhs:
            rep.violations.append({"instance": [names[x] for x in (a, b, d, e)], "lhs": lhs, "rhs": rhs})
    return rep


def validate_pentagon(fd: FusionData, stop_at_first: bool = False) -> ValidationReport:
    """Check the pentagon identity on every admissible 5-tuple of labels.

    For trees of ``C(L_e, ((a b) c) d)`` re-associated to ``a (b (c d))``,
    the two-step route through ``(a b)(c d)`` must agree with the three-step
    route through ``(a (b c)) d`` and ``a ((b c) d)``.
    """
    rep = ValidationReport("pentagon")
    V = range(fd.rank)
    names = fd.labels
    m = fd.mult
    for a, b, c, d, e in itertools.product(V, repeat=5):
        sources = [
            (f, al, g, be, ga)
            for f in fd.channels(a, b) for al in range(m(a, b, f))
            for g in fd.channels(f, c) for be in range(m(f, c, g))
            for ga in range(m(g, d, e))
        ]
        targets = [
            (h, de, k, ze, th)
            for h in fd.channels(c, d) for de in range(m(c, d, h))
            for k in fd.channels(b, h) for ze in range(m(b, h, k))
            for th in range(m(a, k, e))
        ]
        if not sources and not targets:
            continue
        rep.checked += 1
        instance = [names[x] for x in (a, b, c, d, e)]
        if len(sources) != len(targets):
            rep.violations.append({"instance": instance, "reason": "tree counts differ"})
            if stop_at_first:
                break
            continue
        bad = _pentagon_first_mismatch(fd, a, b, c, d, e, sources, targets)
        if bad is not None:
            s, t, lhs, rhs = bad
            rep.violations.append({
                "instance": instance,
                "source": [names[s[0]], s[1], names[s[2]], s[3], s[4]],
                "target": [names[t[0]], t[1], names[t[2]], t[3], t[4]],
                "lhs": format_cyclotomic(lhs),
                "rhs": format_cyclotomic(rhs),
            })
        if stop_at_first and rep.violations:
            break
    return rep


def _pentagon_first_mismatch(fd, a, b, c, d, e, sources, targets):
    m = fd.mult
    zero = fd.zero()
    for s in sources:
        f, al, g, be, ga = s
        for t in targets:
            h, de, k, ze, th = t
            lhs = zero
            if m(f, h, e):
                B1 = fd.block(f, c, d, e)
                B2 = fd.block(a, b, h, e)
                for ep in range(m(f, h, e)):
                    lhs = lhs + B1.entry((g, be, ga), (h, de, ep)) * B2.entry((f, al, ep), (k, ze, th))
            rhs = zero
            B4 = fd.block(a, b, c, g)
            for mm in fd.channels(b, c):
                if not (m(a, mm, g) and m(mm, d, k)):
                    continue
                B5 = fd.block(a, mm, d, e)
                B6 = fd.block(b, c, d, k)
                for mu in range(m(b, c, mm)):
                    for nu in range(m(a, mm, g)):
                        x = B4.entry((f, al, be), (mm, mu, nu))
                        if not x:
                            continue
                        for rho in range(m(mm, d, k)):
                            rhs = rhs + x * B5.entry((g, nu, ga), (k, rho, th)) * B6.entry((mm, mu, rho), (h, de, ze))
            if lhs != rhs:
                return s, t, lhs, rhs
    return None


def validate_duality(fd: FusionData) -> ValidationReport:
    """Rigidity data: unit channels of ``a (x) dual(a)``, involutive fusion rows,
    and solvability of the zig-zag normalization (both identities)."""
    rep = ValidationReport("duality")
    names = fd.labels
    u = fd.unit
    V = range(fd.rank)
    for a in V:
        rep.checked += 1
        ad = fd.dual[a]
        if fd.mult(a, ad, u) != 1 or fd.mult(ad, a, u) != 1:
            rep.violations.append({"label": names[a], "reason": f"N({names[a]}, {names[ad]}, unit) and N({names[ad]}, {names[a]}, unit) must be 1"})
            continue
        add = fd.dual[ad]
        if any(fd.mult(add, b, c) != fd.mult(a, b, c) for b in V for c in V):
            rep.violations.append({"label": names[a], "reason": "dual(dual(a)) has a different fusion row"})
            continue
        unit_tree = (u, 0, 0)
        pivot = fd.block(a, ad, a, a).entry(unit_tree, unit_tree)
        if not pivot:
            rep.violations.append({"label": names[a], "reason": "zig-zag entry F(a, dual a, a, a) at the unit tree is zero"})
            continue
        back = fd.block(ad, a, ad, ad).inverse_entry(unit_tree, unit_tree)
        if back != pivot:
            rep.violations.append({
                "label": names[a],
                "reason": "second zig-zag identity fails",
                "lhs": format_cyclotomic(back),
                "rhs": format_cyclotomic(pivot),
            })
    return rep


def validate_all(fd: FusionData) -> list[ValidationReport]:
    return [validate_fusion_ring(fd), validate_pentagon(fd), validate_duality(fd)]
