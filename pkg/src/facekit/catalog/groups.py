"""Finite groups, 3-cocycles and the pointed categories Vec_G^omega."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..exactnum import Cyclotomic, cyc
from ..fusiondata import FusionData, load_fusion, FusionDataError


@dataclass(frozen=True)
class GroupPresentation:
    """A finite group given by its multiplication table on named elements."""

    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("group element names must be unique")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("multiplication table entries out of range")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError(f"{self.name}: multiplication is not associative")
        if self.identity is None:
            raise ValueError(f"{self.name}: no identity element")
        for a in range(n):
            if self.table[a].count(self.identity) != 1:
                raise ValueError(f"{self.name}: element {self.elements[a]} has no inverse")

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def identity(self) -> int | None:
        n = self.order
        for e in range(n):
            if all(self.table[e][a] == a == self.table[a][e] for a in range(n)):
                return e
        return None

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)


def cyclic_group(n: int) -> GroupPresentation:
    return GroupPresentation(
        f"Z{n}",
        tuple(str(k) for k in range(n)),
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
    )


def symmetric_group(n: int) -> GroupPresentation:
    """S_n on one-line notation; ``(p*q)(i) = p(q(i))``."""
    perms = sorted(itertools.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i] - 1] for i in range(n))] for q in perms) for p in perms
    )
    return GroupPresentation(f"S{n}", tuple("".join(map(str, p)) for p in perms), table)


GROUPS: dict[str, Callable[[], GroupPresentation]] = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
}


def group(name: str) -> GroupPresentation:
    try:
        return GROUPS[name]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; available: {', '.join(GROUPS)}") from None


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class Cocycle3:
    """A normalized 3-cocycle with values in Q(zeta_conductor)."""

    group: GroupPresentation
    values: dict[tuple[int, int, int], Cyclotomic]
    conductor: int

    @classmethod
    def from_function(cls, G: GroupPresentation, fn, conductor: int) -> Cocycle3:
        values = {
            abc: cyc(fn(*abc), conductor) for abc in itertools.product(range(G.order), repeat=3)
        }
        return cls(G, values, conductor)

    def __post_init__(self):
        G = self.group
        for a, b, c, d in itertools.product(range(G.order), repeat=4):
            w = self.values
            lhs = w[(b, c, d)] * w[(a, G.mul(b, c), d)] * w[(a, b, c)]
            rhs = w[(G.mul(a, b), c, d)] * w[(a, b, G.mul(c, d))]
            if lhs != rhs:
                names = [G.elements[x] for x in (a, b, c, d)]
                raise CocycleError(f"3-cocycle identity fails at {names}")


def z3_cocycle() -> Cocycle3:
    """omega(a, b, c) = zeta_3 ** (a * floor((b + c) / 3))."""
    G = cyclic_group(3)
    return Cocycle3.from_function(G, lambda a, b, c: Cyclotomic.zeta(3, a * ((b + c) // 3)), 3)


def vec_g(G: GroupPresentation, omega: Cocycle3 | None = None) -> FusionData:
    """Vec_G (twisted by ``omega`` when given) as validated fusion data."""
    if omega is not None and omega.group != G:
        raise CocycleError("cocycle belongs to a different group")
    conductor = omega.conductor if omega is not None else 1
    names = G.elements
    e = G.identity
    F = []
    for a, b, c in itertools.product(range(G.order), repeat=3):
        ab, bc = G.mul(a, b), G.mul(b, c)
        d = G.mul(ab, c)
        value = omega.values[(a, b, c)] if omega is not None else cyc(1, conductor)
        if e in (a, b, c) and value != 1:
            raise CocycleError("cocycle must be normalized (1 whenever an argument is the identity)")
        F.append({
            "a": names[a], "b": names[b], "c": names[c], "d": names[d],
            "rows": [[names[ab], 0, 0]], "cols": [[names[bc], 0, 0]],
            "mat": [[str(value)]],
        })
    doc = {
        "conductor": conductor,
        "labels": list(names),
        "unit": names[e],
        "dual": {names[a]: names[G.inv(a)] for a in range(G.order)},
        "N": [
            {"a": names[a], "b": names[b], "c": names[G.mul(a, b)], "m": 1}
            for a in range(G.order) for b in range(G.order)
        ],
        "F": F,
    }
    try:
        return load_fusion(doc)
    except FusionDataError as exc:
        raise CocycleError(str(exc)) from None
