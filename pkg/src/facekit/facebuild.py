"""Assemble the face algebra C(Omega_0) of a fusion category.

The canonical fiber functor sends ``X`` to the R-bimodule with
``lambda Omega_0(X) mu = C(L_mu, L_lambda (x) X)``. On a simple ``L_xi`` its
basis is the splitting maps ``T^{lambda xi}_{mu,i}`` (a :class:`FiberVector`).
Because the category is semisimple the coend is the direct sum of matrix
coalgebras ``End(Omega_0(L_xi))^*`` over the simple labels; the basis element
``kappa_xi(x^I (x) x_J)`` is a :class:`CoendBasisElement`.

Linear combinations are plain ``dict[int, Cyclotomic]`` keyed by basis index
with no stored zeros; tensors are ``dict[tuple[int, int], Cyclotomic]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, NamedTuple

from .exactnum import Cyclotomic, SingularMatrixError, cyc, format_cyclotomic, inverse
from .fusiondata import FusionData

LinComb = dict  # dict[int, Cyclotomic]
Tensor = dict  # dict[tuple[int, int], Cyclotomic]


class DualityError(ValueError):
    """Zig-zag normalization impossible for the given F-data."""


class RigidityError(ValueError):
    """A duality Gram matrix is singular in the given gauge."""


class FiberVector(NamedTuple):
    xi: int
    left: int
    right: int
    mult: int


class CoendBasisElement(NamedTuple):
    xi: int
    I: FiberVector
    J: FiberVector

    @property
    def left_weight(self) -> tuple[int, int]:
        """Face weight ``(ring label, plain label)`` for the left E-action."""
        return self.I.left, self.J.left

    @property
    def right_weight(self) -> tuple[int, int]:
        return self.I.right, self.J.right


# ---------------------------------------------------------------- lin. comb.
def _acc(out: dict, key, value) -> None:
    prev = out.get(key)
    out[key] = value if prev is None else prev + value


def prune(x: dict) -> dict:
    return {k: v for k, v in x.items() if v}


def lc_add(*terms: dict) -> dict:
    out: dict = {}
    for t in terms:
        for k, v in t.items():
            _acc(out, k, v)
    return prune(out)


def lc_scale(x: dict, s) -> dict:
    return prune({k: v * s for k, v in x.items()})


def lc_sub(x: dict, y: dict) -> dict:
    return lc_add(x, lc_scale(y, -1))


@dataclass(frozen=True)
class FaceAlgebra:
    """Structure constants of a face algebra over the label set ``labels``.

    ``product[(u, v)]`` is the LinComb of ``b_u b_v`` (absent means zero),
    ``coproduct[u]`` lists ``(v, w, c)`` with ``Delta(b_u) = sum c b_v (x) b_w``,
    ``eta[(lam, mu)]`` is the image of the face element ``lam-ring mu``.
    """

    labels: tuple[str, ...]
    conductor: int
    basis: tuple[CoendBasisElement, ...]
    product: dict[tuple[int, int], LinComb]
    coproduct: tuple[tuple[tuple[int, int, Cyclotomic], ...], ...]
    counit: dict[int, Cyclotomic]
    unit: LinComb
    eta: dict[tuple[int, int], LinComb]
    antipode: tuple[LinComb, ...] | None = None
    cup_scale: dict[int, Cyclotomic] | None = None
    fusion: FusionData | None = None
    fiber: dict[int, tuple[FiberVector, ...]] | None = None
    index: dict[CoendBasisElement, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {b: i for i, b in enumerate(self.basis)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def zero(self) -> Cyclotomic:
        return Cyclotomic(self.conductor)

    def basis_vector(self, u: int) -> LinComb:
        return {u: Cyclotomic.rational(1, self.conductor)}

    def block_indices(self, xi: int) -> list[int]:
        return [u for u, b in enumerate(self.basis) if b.xi == xi]

    # -- algebra
    def mul(self, x: LinComb, y: LinComb) -> LinComb:
        out: dict = {}
        P = self.product
        for i, a in x.items():
            for j, b in y.items():
                t = P.get((i, j))
                if t:
                    ab = a * b
                    for k, c in t.items():
                        _acc(out, k, ab * c)
        return prune(out)

    def delta(self, x: LinComb) -> Tensor:
        out: dict = {}
        for u, a in x.items():
            for v, w, c in self.coproduct[u]:
                _acc(out, (v, w), a * c)
        return prune(out)

    def eps(self, x: LinComb) -> Cyclotomic:
        total = self.zero()
        for u, a in x.items():
            c = self.counit.get(u)
            if c:
                total = total + a * c
        return total

    def S(self, x: LinComb) -> LinComb:
        if self.antipode is None:
            raise NotImplementedError("this face algebra carries no antipode")
        out: dict = {}
        for u, a in x.items():
            for k, c in self.antipode[u].items():
                _acc(out, k, a * c)
        return prune(out)

    def tensor_mul(self, X: Tensor, Y: Tensor) -> Tensor:
        """Componentwise product in H (x) H."""
        out: dict = {}
        P = self.product
        for (a1, a2), s in X.items():
            for (b1, b2), t in Y.items():
                left = P.get((a1, b1))
                if not left:
                    continue
                right = P.get((a2, b2))
                if not right:
                    continue
                st = s * t
                for k1, c1 in left.items():
                    sc = st * c1
                    for k2, c2 in right.items():
                        _acc(out, (k1, k2), sc * c2)
        return prune(out)

    # -- face idempotents
    def face_plain(self, nu: int) -> LinComb:
        """The idempotent ``nu`` = sum over kappa of eta(kappa-ring nu)."""
        return lc_add(*(self.eta.get((k, nu), {}) for k in range(self.rank)))

    def face_ring(self, nu: int) -> LinComb:
        """The idempotent ``nu-ring`` = sum over kappa of eta(nu-ring kappa)."""
        return lc_add(*(self.eta.get((nu, k), {}) for k in range(self.rank)))

    def describe(self, u: int) -> str:
        b = self.basis[u]
        n = self.labels
        return (f"[{n[b.xi]}; ({n[b.I.left]},{n[b.I.right]},{b.I.mult}), "
                f"({n[b.J.left]},{n[b.J.right]},{b.J.mult})]")


# ---------------------------------------------------------------- assembly
def fiber_basis(fd: FusionData) -> dict[int, tuple[FiberVector, ...]]:
    """Basis ``(lambda, mu, i)`` of ``Omega_0(L_xi)`` for every label ``xi``."""
    V = range(fd.rank)
    return {
        xi: tuple(
            FiberVector(xi, lam, mu, i)
            for lam in V for mu in V for i in range(fd.mult(lam, xi, mu))
        )
        for xi in V
    }


def build_coalgebra(fd: FusionData, fiber=None):
    """Matrix-coalgebra blocks: basis, coproduct and counit."""
    fiber = fiber or fiber_basis(fd)
    one = fd.one()
    basis = [CoendBasisElement(xi, I, J) for xi in range(fd.rank) for I in fiber[xi] for J in fiber[xi]]
    index = {b: u for u, b in enumerate(basis)}
    coproduct = []
    counit = {}
    for u, (xi, I, J) in enumerate(basis):
        coproduct.append(tuple(
            (index[CoendBasisElement(xi, I, K)], index[CoendBasisElement(xi, K, J)], one) for K in fiber[xi]
        ))
        if I == J:
            counit[u] = one
    return tuple(basis), tuple(coproduct), counit


def phi2_coeffs(fd: FusionData, x: FiberVector, y: FiberVector) -> dict[tuple[int, int, FiberVector], Cyclotomic]:
    """Expansion of ``phi_2(x (x)_R y)`` projected onto each channel.

    Keys are ``(zeta, t, z)``: the channel ``L_zeta`` of ``L_xi (x) L_eta``
    with splitting index ``t`` and the fiber vector ``z`` of ``Omega_0(L_zeta)``.
    Face-mismatched pairs give an empty expansion.
    """
    if x.right != y.left:
        return {}
    lam, nu, i = x.left, x.right, x.mult
    mu, k = y.right, y.mult
    block = fd.block(lam, x.xi, y.xi, mu)
    row = block.mat[block.row_index[(nu, i, k)]]
    return {
        (zeta, t, FiberVector(zeta, lam, mu, l)): c
        for (zeta, t, l), c in zip(block.cols, row) if c
    }


def _phi2_inverse_coeffs(fd: FusionData, x: FiberVector, y: FiberVector):
    # coefficient of x (x) y in phi_2^{-1}(Omega_0(iota_t) z), keyed like phi2_coeffs
    lam, nu, i = x.left, x.right, x.mult
    mu, k = y.right, y.mult
    block = fd.block(lam, x.xi, y.xi, mu)
    r = block.row_index[(nu, i, k)]
    inv = block.inverse
    out = {}
    for ci, (zeta, t, l) in enumerate(block.cols):
        c = inv[ci][r]
        if c:
            out[(zeta, t, FiberVector(zeta, lam, mu, l))] = c
    return out


def build_product(fd: FusionData, basis, fiber=None):
    """Product table, face-idempotent table ``eta`` and the unit element."""
    fiber = fiber or fiber_basis(fd)
    index = {b: u for u, b in enumerate(basis)}
    product: dict[tuple[int, int], LinComb] = {}
    V = range(fd.rank)
    for xi in V:
        for eta in V:
            pairs = [(X, Y) for X in fiber[xi] for Y in fiber[eta] if X.right == Y.left]
            alpha = {p: _phi2_inverse_coeffs(fd, *p) for p in pairs}
            beta = {p: phi2_coeffs(fd, *p) for p in pairs}
            for I, K in pairs:
                a_row = alpha[(I, K)]
                for J, L in pairs:
                    b_row = beta[(J, L)]
                    out: dict = {}
                    for (zeta, t, A), a in a_row.items():
                        for (zeta2, t2, B), b in b_row.items():
                            if zeta2 == zeta and t2 == t:
                                _acc(out, index[CoendBasisElement(zeta, A, B)], a * b)
                    out = prune(out)
                    if out:
                        product[(index[CoendBasisElement(xi, I, J)], index[CoendBasisElement(eta, K, L)])] = out
    u = fd.unit
    one = fd.one()
    eta_table = {}
    for lam in V:
        for mu in V:
            b = CoendBasisElement(u, FiberVector(u, lam, lam, 0), FiberVector(u, mu, mu, 0))
            eta_table[(lam, mu)] = {index[b]: one}
    unit = lc_add(*eta_table.values())
    return product, eta_table, unit


def compute_cup_scale(fd: FusionData) -> dict[int, Cyclotomic]:
    """Scalars ``s_xi`` with ``ev_xi = s_xi * T~^{unit}_{dual xi, xi}`` solving the
    first zig-zag identity for ``coev_xi = T^{xi, dual xi}_{unit}``."""
    u = fd.unit
    tree = (u, 0, 0)
    scales = {}
    for xi in range(fd.rank):
        xd = fd.dual[xi]
        if fd.mult(xi, xd, u) != 1 or fd.mult(xd, xi, u) != 1:
            raise DualityError(f"{fd.labels[xi]} and its dual do not fuse to the unit exactly once")
        pivot = fd.block(xi, xd, xi, xi).entry(tree, tree)
        if not pivot:
            raise DualityError(f"degenerate duality for {fd.labels[xi]}: zig-zag entry is zero")
        scales[xi] = 1 / pivot
    return scales


def zigzag_defects(fd: FusionData, scales: Mapping[int, Cyclotomic]) -> list[str]:
    """Labels whose second zig-zag identity fails for the given scales."""
    tree = (fd.unit, 0, 0)
    bad = []
    for xi, s in scales.items():
        xd = fd.dual[xi]
        if s * fd.block(xd, xi, xd, xd).inverse_entry(tree, tree) != 1:
            bad.append(fd.labels[xi])
    return bad


def duality_gram(fd: FusionData, xi: int, scale: Cyclotomic, fiber=None):
    """Pairing matrix between ``Omega_0(L_dual(xi))`` (rows) and ``Omega_0(L_xi)``.

    Entry ``(A, J)`` with ``A = (lam, nu, a)`` and ``J = (nu, lam, b)`` is the
    scalar of ``r o (id (x) ev) o a o (A (x) id) o J``, i.e. one F-entry at the
    unit channel times ``scale``.
    """
    fiber = fiber or fiber_basis(fd)
    xd = fd.dual[xi]
    u = fd.unit
    rows, cols = fiber[xd], fiber[xi]
    zero = fd.zero()
    G = [[zero] * len(cols) for _ in rows]
    for r, A in enumerate(rows):
        for c, J in enumerate(cols):
            if A.left == J.right and A.right == J.left:
                block = fd.block(A.left, xd, xi, A.left)
                G[r][c] = scale * block.entry((A.right, A.mult, J.mult), (u, 0, 0))
    return G


def build_antipode(fd: FusionData, basis, cup_scale, fiber=None) -> tuple[LinComb, ...]:
    """Antipode table from the duality isomorphism ``Omega_0(L_xi)^v = Omega_0(L_dual xi)``.

    With ``G`` the pairing matrix, ``S(kappa_xi(x^K (x) x_J)) =
    sum_{A, A'} G^{-1}[K, A] G[A', J] kappa_{dual xi}(w^{A'} (x) w_A)``.
    """
    fiber = fiber or fiber_basis(fd)
    index = {b: u for u, b in enumerate(basis)}
    table: list[LinComb | None] = [None] * len(basis)
    for xi in range(fd.rank):
        xd = fd.dual[xi]
        G = duality_gram(fd, xi, cup_scale[xi], fiber)
        try:
            Ginv = inverse(G)
        except SingularMatrixError:
            raise RigidityError(f"duality pairing for {fd.labels[xi]} is singular") from None
        W, X = fiber[xd], fiber[xi]
        for kk, K in enumerate(X):
            for jj, J in enumerate(X):
                out: dict = {}
                for a, A in enumerate(W):
                    g1 = Ginv[kk][a]
                    if not g1:
                        continue
                    for a2, A2 in enumerate(W):
                        g2 = G[a2][jj]
                        if g2:
                            _acc(out, index[CoendBasisElement(xd, A2, A)], g1 * g2)
                table[index[CoendBasisElement(xi, K, J)]] = prune(out)
    return tuple(table)


def build_face_algebra(fd: FusionData, with_antipode: bool = True) -> FaceAlgebra:
    """The face algebra C(Omega_0) with all structure tables."""
    fiber = fiber_basis(fd)
    basis, coproduct, counit = build_coalgebra(fd, fiber)
    product, eta, unit = build_product(fd, basis, fiber)
    antipode = scales = None
    if with_antipode:
        scales = compute_cup_scale(fd)
        bad = zigzag_defects(fd, scales)
        if bad:
            raise DualityError(f"second zig-zag identity fails for {', '.join(bad)}")
        antipode = build_antipode(fd, basis, scales, fiber)
    return FaceAlgebra(
        labels=fd.labels,
        conductor=fd.conductor,
        basis=basis,
        product=product,
        coproduct=coproduct,
        counit=counit,
        unit=unit,
        eta=eta,
        antipode=antipode,
        cup_scale=scales,
        fusion=fd,
        fiber=fiber,
    )


def expected_dimension(fd: FusionData) -> int:
    return sum(
        sum(fd.mult(lam, xi, mu) for lam in range(fd.rank) for mu in range(fd.rank)) ** 2
        for xi in range(fd.rank)
    )


def block_summary(H: FaceAlgebra) -> list[tuple[str, int]]:
    """``(label, block dimension)`` per simple label."""
    out = []
    for xi, name in enumerate(H.labels):
        out.append((name, sum(1 for b in H.basis if b.xi == xi)))
    return out


# ---------------------------------------------------------------- JSON
def _lc_json(x: LinComb) -> list:
    return [[k, format_cyclotomic(v)] for k, v in sorted(x.items())]


def face_algebra_to_json(H: FaceAlgebra) -> dict[str, Any]:
    """Structure-constant export; indices refer to ``basis``, omitted rows are zero."""
    n = H.labels

    def fv(x: FiberVector):
        return [n[x.left], n[x.right], x.mult]

    doc = {
        "conductor": H.conductor,
        "labels": list(n),
        "dim": H.dim,
        "basis": [{"xi": n[b.xi], "I": fv(b.I), "J": fv(b.J)} for b in H.basis],
        "product": [[i, j, _lc_json(v)] for (i, j), v in sorted(H.product.items())],
        "coproduct": [
            [u, [[v, w, format_cyclotomic(c)] for v, w, c in terms]]
            for u, terms in enumerate(H.coproduct) if terms
        ],
        "counit": [[u, format_cyclotomic(c)] for u, c in sorted(H.counit.items()) if c],
        "unit": _lc_json(H.unit),
        "eta": [[[n[a], n[b]], _lc_json(v)] for (a, b), v in sorted(H.eta.items())],
    }
    if H.antipode is not None:
        doc["antipode"] = [[u, _lc_json(v)] for u, v in enumerate(H.antipode) if v]
    return doc


def dumps_face_algebra(H: FaceAlgebra) -> str:
    return json.dumps(face_algebra_to_json(H), separators=(",", ":")) + "\n"


class StructureImportError(ValueError):
    pass


def face_algebra_from_json(doc: str | Mapping[str, Any]) -> FaceAlgebra:
    """Inverse of :func:`face_algebra_to_json` (no fusion data attached)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        conductor = int(doc.get("conductor", 1))
        basis_doc = doc["basis"]
        names = list(doc.get("labels") or [])
        if not names:
            seen = []
            for b in basis_doc:
                for x in (b["xi"], *b["I"][:2], *b["J"][:2]):
                    if x not in seen:
                        seen.append(x)
            names = seen
        idx = {x: i for i, x in enumerate(names)}
        c = lambda s: cyc(s, conductor)

        def fv(xi, v):
            return FiberVector(xi, idx[v[0]], idx[v[1]], int(v[2]))

        basis = tuple(CoendBasisElement(idx[b["xi"]], fv(idx[b["xi"]], b["I"]), fv(idx[b["xi"]], b["J"])) for b in basis_doc)
        dim = len(basis)
        if doc.get("dim", dim) != dim:
            raise StructureImportError(f"dim {doc['dim']} does not match {dim} basis entries")

        def lc(terms):
            out = {}
            for k, v in terms:
                if not 0 <= k < dim:
                    raise StructureImportError(f"basis index {k} out of range")
                _acc(out, k, c(v))
            return prune(out)

        product = {}
        for i, j, terms in doc.get("product", []):
            v = lc(terms)
            if v:
                product[(i, j)] = v
        coproduct = [()] * dim
        for u, terms in doc.get("coproduct", []):
            coproduct[u] = tuple((v, w, c(s)) for v, w, s in terms)
        counit = {u: c(s) for u, s in doc.get("counit", []) if c(s)}
        unit = lc(doc.get("unit", []))
        eta = {(idx[a], idx[b]): lc(terms) for (a, b), terms in doc.get("eta", [])}
        antipode = None
        if "antipode" in doc:
            table = [{} for _ in range(dim)]
            for u, terms in doc["antipode"]:
                table[u] = lc(terms)
            antipode = tuple(table)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, StructureImportError):
            raise
        raise StructureImportError(f"malformed structure-constant document: {exc}") from None
    return FaceAlgebra(
        labels=tuple(names),
        conductor=conductor,
        basis=basis,
        product=product,
        coproduct=tuple(coproduct),
        counit=counit,
        unit=unit,
        eta=eta,
        antipode=antipode,
    )


def with_tables(H: FaceAlgebra, **changes) -> FaceAlgebra:
    """Copy of ``H`` with some tables replaced (used for mutation tests)."""
    return replace(H, **changes)
