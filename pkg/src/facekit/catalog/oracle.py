"""Closed-form face algebra of a finite group on the basis ``e^a_b[g]``.

For ``Vec_G`` the face algebra has the explicit description

    e^a_b[g] e^c_d[h] = delta(ag, c) delta(bg, d) e^a_b[gh]
    Delta(e^a_b[g])   = sum_c e^a_c[g] (x) e^c_b[g]
    eps(e^a_b[g])     = delta(a, b)
    eta(a-ring b)     = e^a_b[1]
    S(e^a_b[g])       = e^{bg}_{ag}[g^-1]

This module builds those tables directly, without any F-symbols, so they can
serve as ground truth for the coend construction. The dictionary to the
coend basis is ``e^a_b[g] <-> (xi=g, I=(a, ag, 0), J=(b, bg, 0))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..exactnum import Cyclotomic, format_cyclotomic
from ..facebuild import CoendBasisElement, FaceAlgebra, FiberVector, build_face_algebra
from .groups import GroupPresentation, vec_g


def dictionary(G: GroupPresentation, a: int, b: int, g: int, skew: bool = False) -> CoendBasisElement:
    """Coend basis element matching ``e^a_b[g]``.

    ``skew=True`` swaps the two fiber vectors; it is a deliberately wrong
    dictionary used as a negative control.
    """
    I = FiberVector(g, a, G.mul(a, g), 0)
    J = FiberVector(g, b, G.mul(b, g), 0)
    if skew:
        I, J = J, I
    return CoendBasisElement(g, I, J)


def oracle_label(G: GroupPresentation, a: int, b: int, g: int) -> str:
    n = G.elements
    return f"e^{n[a]}_{n[b]}[{n[g]}]"


def group_oracle(G: GroupPresentation) -> FaceAlgebra:
    """The face algebra of ``G`` from the closed forms, basis ordered by ``(g, a, b)``."""
    n = G.order
    one = Cyclotomic.rational(1, 1)
    keys = [(a, b, g) for g in range(n) for a in range(n) for b in range(n)]
    pos = {k: i for i, k in enumerate(keys)}
    basis = tuple(dictionary(G, a, b, g) for a, b, g in keys)
    product = {}
    for (a, b, g), (c, d, h) in itertools.product(keys, repeat=2):
        if G.mul(a, g) == c and G.mul(b, g) == d:
            product[(pos[(a, b, g)], pos[(c, d, h)])] = {pos[(a, b, G.mul(g, h))]: one}
    coproduct = tuple(
        tuple((pos[(a, c, g)], pos[(c, b, g)], one) for c in range(n)) for a, b, g in keys
    )
    counit = {pos[(a, a, g)]: one for a in range(n) for g in range(n)}
    e = G.identity
    eta = {(a, b): {pos[(a, b, e)]: one} for a in range(n) for b in range(n)}
    unit = {pos[(a, b, e)]: one for a in range(n) for b in range(n)}
    antipode = tuple(
        {pos[(G.mul(b, g), G.mul(a, g), G.inv(g))]: one} for a, b, g in keys
    )
    return FaceAlgebra(
        labels=G.elements,
        conductor=1,
        basis=basis,
        product=product,
        coproduct=coproduct,
        counit=counit,
        unit=unit,
        eta=eta,
        antipode=antipode,
    )


@dataclass
class OracleDiff:
    group: str
    dim: tuple[int, int]
    compared: dict[str, int] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)

    @property
    def identical(self) -> bool:
        return not self.mismatches and self.dim[0] == self.dim[1]

    def to_text(self, limit: int = 20) -> str:
        lines = [f"group {self.group}: coend dim {self.dim[0]}, oracle dim {self.dim[1]}"]
        for table, count in self.compared.items():
            lines.append(f"  {table:<10} {count} entries compared")
        if self.identical:
            lines.append("identical")
        else:
            lines.append(f"{len(self.mismatches)} mismatches")
            lines.extend("  " + m for m in self.mismatches[:limit])
            if len(self.mismatches) > limit:
                lines.append(f"  ... {len(self.mismatches) - limit} more")
        return "\n".join(lines) + "\n"


def diff_against_oracle(G: GroupPresentation, built: FaceAlgebra | None = None, skew: bool = False) -> OracleDiff:
    """Compare the coend construction for ``Vec_G`` with :func:`group_oracle`
    table by table, translating basis indices through the dictionary."""
    if built is None:
        built = build_face_algebra(vec_g(G))
    oracle = group_oracle(G)
    n = G.order
    keys = [(a, b, g) for g in range(n) for a in range(n) for b in range(n)]
    out = OracleDiff(G.name, (built.dim, oracle.dim))
    if built.dim != oracle.dim:
        out.mismatches.append("dimensions differ")
        return out
    # oracle index -> built index
    to_built = {}
    for i, (a, b, g) in enumerate(keys):
        j = built.index.get(dictionary(G, a, b, g, skew))
        if j is None:
            out.mismatches.append(f"{oracle_label(G, a, b, g)} has no coend counterpart")
            return out
        to_built[i] = j
    label = {to_built[i]: oracle_label(G, *k) for i, k in enumerate(keys)}

    def tr(x):
        return {to_built[k]: v for k, v in x.items()}

    def show(x):
        return " + ".join(f"{format_cyclotomic(c)}*{label[k]}" for k, c in sorted(x.items())) or "0"

    # product, over every ordered pair
    count = 0
    for i, j in itertools.product(range(oracle.dim), repeat=2):
        count += 1
        want = tr(oracle.product.get((i, j), {}))
        got = built.product.get((to_built[i], to_built[j]), {})
        if got != want:
            out.mismatches.append(
                f"product {label[to_built[i]]} * {label[to_built[j]]}: coend {show(got)}, oracle {show(want)}")
    out.compared["product"] = count

    count = 0
    for i in range(oracle.dim):
        count += 1
        want = {(to_built[v], to_built[w]): c for v, w, c in oracle.coproduct[i]}
        got = built.delta({to_built[i]: Cyclotomic.rational(1, built.conductor)})
        if got != want:
            out.mismatches.append(f"coproduct of {label[to_built[i]]} differs")
    out.compared["coproduct"] = count

    for i in range(oracle.dim):
        want = oracle.counit.get(i, 0)
        got = built.counit.get(to_built[i], 0)
        if got != want:
            out.mismatches.append(f"counit of {label[to_built[i]]}: coend {got}, oracle {want}")
    out.compared["counit"] = oracle.dim

    for key, x in oracle.eta.items():
        if built.eta.get(key, {}) != tr(x):
            names = [G.elements[k] for k in key]
            out.mismatches.append(f"face idempotent {names[0]}-ring {names[1]}: coend {show(built.eta.get(key, {}))}, oracle {show(tr(x))}")
    out.compared["eta"] = len(oracle.eta)
    if built.unit != tr(oracle.unit):
        out.mismatches.append("unit differs")
    out.compared["unit"] = 1

    if built.antipode is None:
        out.mismatches.append("coend algebra has no antipode")
    else:
        for i in range(oracle.dim):
            want = tr(oracle.antipode[i])
            got = built.antipode[to_built[i]]
            if got != want:
                out.mismatches.append(f"antipode of {label[to_built[i]]}: coend {show(got)}, oracle {show(want)}")
        out.compared["antipode"] = oracle.dim
    return out
