"""Exact elements of cyclotomic fields Q(zeta_n).

An element is stored as its coefficient vector in the power basis
``1, q, ..., q^(phi(n)-1)`` where ``q`` is a primitive n-th root of unity.
Higher powers are rewritten using the n-th cyclotomic polynomial, so the
stored vector is unique and equality is a tuple comparison.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from gmpy2 import mpq

Rational = mpq
Scalar = Union[int, "mpq", "Cyclotomic"]

_ZERO = mpq(0)
_MPQ = type(_ZERO)
_ONE = mpq(1)


class ConductorMismatch(ValueError):
    """Raised when two operands live in fields with no automatic common lift."""


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # den monic, low-to-high coefficients
    num = list(num)
    dq = len(num) - len(den)
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = num[k + len(den) - 1]
        quot[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[mpq, ...], ...]:
    """Canonical vectors of q^k for k = 0..n-1."""
    phi = totient(n)
    poly = cyclotomic_polynomial(n)
    table = []
    vec = [_ZERO] * phi
    vec[0] = _ONE
    for _ in range(n):
        table.append(tuple(vec))
        # multiply by q, then reduce q^phi = -sum poly[j] q^j
        top = vec[-1]
        vec = [_ZERO] + vec[:-1]
        if top:
            for j in range(phi):
                vec[j] -= top * poly[j]
    return tuple(table)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)


class Cyclotomic:
    """An exact element of Q(zeta_n).

    Arithmetic with ``int`` and rational operands lifts them automatically.
    Two elements of different conductors combine only when one conductor
    divides the other (the smaller field embeds canonically), or when one of
    them is rational.
    """

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs=None):
        phi = totient(n)
        if coeffs is None:
            c = (_ZERO,) * phi
        else:
            coeffs = [mpq(x) for x in coeffs]
            if len(coeffs) == phi:
                c = tuple(coeffs)
            else:
                c = _reduce(n, coeffs)
        self.n = n
        self.c = c
        self._hash = None

    @classmethod
    def _raw(cls, n: int, c: tuple) -> Cyclotomic:
        obj = object.__new__(cls)
        obj.n = n
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value, n: int = 1) -> Cyclotomic:
        c = [_ZERO] * totient(n)
        c[0] = mpq(value)
        return cls._raw(n, tuple(c))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> Cyclotomic:
        """The power ``zeta_n ** k``."""
        return cls._raw(n, _power_table(n)[k % n])

    # ------------------------------------------------------------ inspection
    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __bool__(self) -> bool:
        return any(self.c)

    def canonical(self) -> Cyclotomic:
        return Cyclotomic._raw(self.n, _reduce(self.n, list(self.c)))

    def lift(self, m: int) -> Cyclotomic:
        """Embed into Q(zeta_m); requires ``self.n`` to divide ``m``."""
        if m == self.n:
            return self
        if m % self.n:
            raise ConductorMismatch(f"cannot lift conductor {self.n} to {m}")
        step = m // self.n
        table = _power_table(m)
        out = [_ZERO] * totient(m)
        for k, x in enumerate(self.c):
            if x:
                for j, y in enumerate(table[(k * step) % m]):
                    if y:
                        out[j] += x * y
        return Cyclotomic._raw(m, tuple(out))

    def galois(self, k: int) -> Cyclotomic:
        """Image under the automorphism ``q -> q^k`` (k coprime to n)."""
        n = self.n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit mod {n}")
        table = _power_table(n)
        out = [_ZERO] * totient(n)
        for p, x in enumerate(self.c):
            if x:
                for j, y in enumerate(table[(p * k) % n]):
                    if y:
                        out[j] += x * y
        return Cyclotomic._raw(n, tuple(out))

    # ------------------------------------------------------------ coercion
    def _coerce(self, other) -> tuple[Cyclotomic, Cyclotomic] | None:
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self, other
            if other.is_rational():
                return self, Cyclotomic.rational(other.c[0], self.n)
            if self.is_rational():
                return Cyclotomic.rational(self.c[0], other.n), other
            if other.n % self.n == 0:
                return self.lift(other.n), other
            if self.n % other.n == 0:
                return self, other.lift(self.n)
            raise ConductorMismatch(f"conductors {self.n} and {other.n} are incompatible")
        if isinstance(other, (int, _MPQ, Fraction)):
            return self, Cyclotomic.rational(other, self.n)
        return None

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if isinstance(other, Cyclotomic) and other.n == self.n:
            a, b = self, other
        else:
            pair = self._coerce(other)
            if pair is None:
                return NotImplemented
            a, b = pair
        return Cyclotomic._raw(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        if isinstance(other, Cyclotomic) and other.n == self.n:
            return Cyclotomic._raw(self.n, tuple(x - y for x, y in zip(self.c, other.c)))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._raw(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyclotomic) and other.n == self.n:
            a, b = self, other
        else:
            pair = self._coerce(other)
            if pair is None:
                return NotImplemented
            a, b = pair
        ac, bc = a.c, b.c
        if len(ac) == 1:
            return Cyclotomic._raw(a.n, (ac[0] * bc[0],))
        if not any(bc[1:]):
            s = bc[0]
            return Cyclotomic._raw(a.n, tuple(x * s for x in ac))
        if not any(ac[1:]):
            s = ac[0]
            return Cyclotomic._raw(a.n, tuple(x * s for x in bc))
        return Cyclotomic._raw(a.n, _mul_vectors(a.n, ac, bc))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse via the product of Galois conjugates."""
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.c[0], self.n)
        conj = Cyclotomic.rational(1, self.n)
        for k in _units(self.n):
            if k % self.n != 1:
                conj = conj * self.galois(k)
        norm = (self * conj).rational_value()
        return conj * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            a, b = self._coerce(other)
            return a * b.inverse()
        value = mpq(other)
        if not value:
            raise ZeroDivisionError("division of cyclotomic by zero")
        return self * (1 / value)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ------------------------------------------------------------ comparison
    def __eq__(self, other):
        if isinstance(other, Cyclotomic) and other.n == self.n:
            return self.c == other.c
        try:
            pair = self._coerce(other)
        except ConductorMismatch:
            return False
        if pair is None:
            return NotImplemented
        return pair[0].c == pair[1].c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c[0]) if self.is_rational() else hash((self.n, self.c))
        return self._hash

    # ------------------------------------------------------------ text
    def __str__(self) -> str:
        return format_cyclotomic(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.n}, {format_cyclotomic(self)!r})"

    def to_complex(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(x) * w**k for k, x in enumerate(self.c))


def _mul_vectors(n: int, ac: tuple, bc: tuple) -> tuple:
    phi = len(ac)
    conv = [_ZERO] * (2 * phi - 1)
    for i, x in enumerate(ac):
        if x:
            for j, y in enumerate(bc):
                if y:
                    conv[i + j] += x * y
    out = conv[:phi]
    table = _power_table(n)
    for k in range(phi, 2 * phi - 1):
        x = conv[k]
        if x:
            for j, y in enumerate(table[k % n]):
                if y:
                    out[j] += x * y
    return tuple(out)


def _reduce(n: int, coeffs: list) -> tuple:
    phi = totient(n)
    table = _power_table(n)
    out = [_ZERO] * phi
    for k, x in enumerate(coeffs):
        if not x:
            continue
        if k < phi:
            out[k] += x
        else:
            for j, y in enumerate(table[k % n]):
                if y:
                    out[j] += x * y
    return tuple(out)


def cyc(value, n: int = 1) -> Cyclotomic:
    """Coerce ``value`` (int, rational, literal string or Cyclotomic) into Q(zeta_n)."""
    if isinstance(value, Cyclotomic):
        if value.n == n:
            return value
        if value.is_rational():
            return Cyclotomic.rational(value.c[0], n)
        return value.lift(n)
    if isinstance(value, str):
        return parse_cyclotomic(value, n)
    return Cyclotomic.rational(value, n)


# ---------------------------------------------------------------- literals
_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)(?:\s*\*\s*q(?:\s*\^\s*(?P<exp1>\d+))?)?
        | q(?:\s*\^\s*(?P<exp2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_cyclotomic(text: str, n: int) -> Cyclotomic:
    """Parse a literal such as ``"1/2 - 1/2*q^2"``; ``q`` is zeta_n."""
    s = text.strip()
    if not s:
        raise ValueError("empty cyclotomic literal")
    coeffs = [_ZERO] * n
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"malformed cyclotomic literal {text!r} at offset {pos}")
        if m.group("coef") is None and "q" not in m.group(0):
            raise ValueError(f"malformed cyclotomic literal {text!r} at offset {pos}")
        coef = mpq(m.group("coef")) if m.group("coef") else _ONE
        if m.group("sign") == "-":
            coef = -coef
        if m.group("coef") is not None:
            exp = m.group("exp1")
            power = (1 if exp is None else int(exp)) if "q" in m.group(0) else 0
        else:
            exp = m.group("exp2")
            power = 1 if exp is None else int(exp)
        coeffs[power % n] += coef
        pos = m.end()
        first = False
    return Cyclotomic(n, coeffs)


def format_cyclotomic(x: Cyclotomic) -> str:
    """Canonical literal text; ``parse_cyclotomic(format_cyclotomic(x), x.n) == x``."""
    parts = []
    for k, c in enumerate(x.c):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            qk = "q" if k == 1 else f"q^{k}"
            body = qk if mag == 1 else f"{mag}*{qk}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
