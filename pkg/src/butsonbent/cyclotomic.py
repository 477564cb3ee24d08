"""Exact arithmetic in Z[zeta_q].

Elements are kept in group-ring form: a length-q integer vector whose entry i
is the coefficient of zeta^i in Z[x]/(x^q - 1).  Multipliers and products by
roots of unity are then index permutations and shifts.  Reduction modulo the
cyclotomic polynomial only happens when equality or a canonical value is
needed.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache

import numpy as np

from .exceptions import ModulusMismatch, NotCoprime


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, index = exponent; den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(q: int) -> tuple[int, ...]:
    """Coefficients of Phi_q, lowest degree first."""
    if q < 1:
        raise ValueError("q must be positive")
    poly = [-1] + [0] * (q - 1) + [1]
    for d in _divisors(q)[:-1]:
        poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def totient(q: int) -> int:
    return len(cyclotomic_poly(q)) - 1


def _reduce_list(coeffs: list[int], q: int) -> list[int]:
    phi = cyclotomic_poly(q)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(q - 1, deg - 1, -1):
        a = c[i]
        if a:
            for j in range(deg + 1):
                c[i - deg + j] -= a * phi[j]
    return c


@lru_cache(maxsize=None)
def reduction_matrix(q: int) -> np.ndarray:
    """Integer matrix R (q x phi(q)) with row r the canonical form of x^r.

    A group-ring vector v reduces to ``v @ R``; entries are small so int64 is
    safe for any vector whose coefficients fit comfortably in int64.
    """
    deg = totient(q)
    rows = []
    for r in range(q):
        e = [0] * q
        e[r] = 1
        rows.append(_reduce_list(e, q)[:deg])
    m = np.array(rows, dtype=np.int64)
    m.setflags(write=False)
    return m


class CycElt:
    """An element of Z[zeta_q] in group-ring coefficient form."""

    __slots__ = ("q", "coeffs", "_canon")

    def __init__(self, q: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != q:
            raise ValueError(f"expected {q} coefficients, got {len(coeffs)}")
        self.q = q
        self.coeffs = coeffs
        self._canon = None

    @classmethod
    def root(cls, q: int, r: int = 1) -> "CycElt":
        c = [0] * q
        c[r % q] = 1
        return cls(q, c)

    @classmethod
    def integer(cls, q: int, m: int) -> "CycElt":
        c = [0] * q
        c[0] = m
        return cls(q, c)

    @classmethod
    def zero(cls, q: int) -> "CycElt":
        return cls(q, [0] * q)

    def canonical(self) -> tuple[int, ...]:
        if self._canon is None:
            self._canon = tuple(_reduce_list(list(self.coeffs), self.q))
        return self._canon

    def reduce_canonical(self) -> "CycElt":
        out = CycElt(self.q, self.canonical())
        out._canon = out.coeffs
        return out

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def _check(self, other: "CycElt") -> None:
        if self.q != other.q:
            raise ModulusMismatch(f"moduli differ: {self.q} vs {other.q}")

    def _coerce(self, other) -> "CycElt":
        if isinstance(other, int):
            return CycElt.integer(self.q, other)
        if isinstance(other, CycElt):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElt(self.q, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.q, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElt(self.q, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.q
        out = [0] * q
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % q] += a * b
        return CycElt(q, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycElt":
        if e < 0:
            raise ValueError("negative powers are not supported")
        acc = CycElt.integer(self.q, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def shift(self, r: int) -> "CycElt":
        """Multiply by zeta^r."""
        q = self.q
        out = [0] * q
        for i, a in enumerate(self.coeffs):
            out[(i + r) % q] = a
        return CycElt(q, out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycElt.integer(self.q, other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.q == other.q and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.q, self.canonical()))

    def sort_key(self) -> tuple[int, ...]:
        return self.canonical()

    def apply_multiplier(self, k: int) -> "CycElt":
        return apply_multiplier(self, k)

    def conj(self) -> "CycElt":
        return apply_multiplier(self, self.q - 1) if self.q > 1 else self

    def norm_sq(self) -> "CycElt":
        return self * self.conj()

    def as_integer(self):
        c = self.canonical()
        if any(c[1:]):
            return None
        return c[0]

    def embed(self) -> complex:
        return embed_complex(self)

    def to_json(self) -> str:
        return json.dumps(list(self.coeffs))

    @classmethod
    def from_json(cls, text: str) -> "CycElt":
        v = json.loads(text)
        return cls(len(v), v)

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.canonical()):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                mon = "z" if i == 1 else f"z^{i}"
                terms.append(mon if a == 1 else f"-{mon}" if a == -1 else f"{a}*{mon}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"CycElt(q={self.q}: {body})"


def root(q: int, r: int = 1) -> CycElt:
    return CycElt.root(q, r)


def reduce_canonical(z: CycElt) -> CycElt:
    return z.reduce_canonical()


def is_zero(z: CycElt) -> bool:
    return z.is_zero()


def arith(a: CycElt, b: CycElt | None, op: str) -> CycElt:
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def apply_multiplier(z: CycElt, k: int) -> CycElt:
    q = z.q
    if math.gcd(k, q) != 1:
        raise NotCoprime(f"multiplier {k} is not coprime to {q}")
    out = [0] * q
    for i, a in enumerate(z.coeffs):
        out[(k * i) % q] += a
    return CycElt(q, out)


def norm_sq(z: CycElt) -> CycElt:
    return z.norm_sq()


def as_integer(z: CycElt):
    return z.as_integer()


@lru_cache(maxsize=None)
def roots_of_unity(q: int) -> np.ndarray:
    r = np.exp(2j * np.pi * np.arange(q) / q)
    r.setflags(write=False)
    return r


def embed_complex(z: CycElt) -> complex:
    # math.fsum on each part keeps the result within a few ulps
    re = math.fsum(a * math.cos(2 * math.pi * i / z.q) for i, a in enumerate(z.coeffs) if a)
    im = math.fsum(a * math.sin(2 * math.pi * i / z.q) for i, a in enumerate(z.coeffs) if a)
    return complex(re, im)


def multiplicative_order(k: int, q: int) -> int:
    if math.gcd(k, q) != 1:
        raise NotCoprime(f"multiplier {k} is not coprime to {q}")
    if q == 1:
        return 1
    t, x = 1, k % q
    while x != 1 % q:
        x = (x * k) % q
        t += 1
    return t


def units(q: int) -> list[int]:
    return [k for k in range(1, max(q, 2)) if math.gcd(k, q) == 1]
