"""Small finite fields and brute-force point counts of hyperelliptic curves.

Elements of ``GF(p^k)`` are encoded as integers whose base-``p`` digits are
the coefficients of a polynomial in a primitive root ``x``; multiplication
goes through discrete-log tables, so fields are limited to desk scale.
"""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

import sympy

MAX_FIELD_SIZE = 10**6


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q = p^k``, or raise ``ValueError``."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = sympy.factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return int(p), int(k)


class GF:
    def __init__(self, p: int, k: int = 1):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p, self.k = p, k
        self.q = p**k
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"GF({p}^{k}) is too large for table arithmetic")
        self.modulus, self.exp = self._primitive_tables()
        self.log = [0] * self.q
        for i, v in enumerate(self.exp):
            self.log[v] = i

    def _primitive_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            g = int(sympy.primitive_root(p))
            exp = [1]
            for _ in range(p - 2):
                exp.append(exp[-1] * g % p)
            return (-g % p, 1), exp
        # search monic degree-k polynomials until x has order q - 1
        for tail in itertools.product(range(p), repeat=k):
            if tail[0] == 0:
                continue
            modulus = tail + (1,)
            exp, seen = [], set()
            cur = (1,) + (0,) * (k - 1)
            for _ in range(q - 1):
                code = self._encode(cur)
                if code in seen:
                    break
                seen.add(code)
                exp.append(code)
                # multiply by x and reduce with x^k = -sum tail_i x^i
                top = cur[-1]
                cur = tuple(((cur[i - 1] if i else 0) - top * tail[i]) % p for i in range(k))
            else:
                if self._encode(cur) == 1:
                    return modulus, exp
        raise ArithmeticError(f"no primitive polynomial of degree {k} over GF({p})")

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def embed(self, c: int) -> int:
        """Image of the integer ``c`` under ``Z -> GF(p) -> GF(p^k)``."""
        return c % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        for _ in range(self.k):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def quadratic_character(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 if self.log[a] % 2 == 0 else -1

    def elements(self) -> range:
        return range(self.q)


@functools.lru_cache(maxsize=64)
def field(p: int, k: int) -> GF:
    return GF(p, k)


def count_hyperelliptic_points(f: Sequence[int], p: int, k: int) -> int:
    """Points on the smooth projective model of ``y^2 = f(x)`` over ``GF(p^k)``.

    ``f`` has integer coefficients (constant term first), read mod ``p``.
    Odd degree gives one point at infinity; even degree gives ``1 + chi(lc)``.
    """
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    F = field(p, k)
    coeffs = [F.embed(c) for c in f]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    affine = 0
    for x in F.elements():
        v = 0
        for c in reversed(coeffs):
            v = F.add(F.mul(v, x), c)
        affine += 1 + F.quadratic_character(v)
    at_infinity = 1 if deg % 2 else 1 + F.quadratic_character(coeffs[-1])
    return affine + at_infinity
