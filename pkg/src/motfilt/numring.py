"""Monogenic number rings ``O_F = Z[x]/(f)``.

Ring elements are integer coordinate vectors in the power basis
``1, theta, ..., theta^(d-1)``.  Every module-theoretic question (quotients,
norms, lattice indices) is reduced to integer matrices and Smith normal form.
The different is represented by its principal generator ``f'(theta)``; this
is only correct when ``Z[theta]`` is the full ring of integers, which the
caller asserts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import sympy

from .homalg import FinAbGroup, IntMatrix, cokernel, hstack


def poly_derivative(f: Sequence[int]) -> list[int]:
    return [k * c for k, c in enumerate(f)][1:]


def poly_trim(f: Sequence[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def sylvester(f: Sequence[int], g: Sequence[int]) -> IntMatrix:
    """Sylvester matrix of two coefficient lists (constant term first)."""
    f, g = poly_trim(f), poly_trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for k in range(n):
        row = [0] * size
        for i, c in enumerate(reversed(f)):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [0] * size
        for i, c in enumerate(reversed(g)):
            row[k + i] = c
        rows.append(row)
    return IntMatrix.from_rows(rows, size)


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return 0
    if len(f) == 1 and len(g) == 1:
        return 1
    return sylvester(f, g).det()


def discriminant(f: Sequence[int]) -> int:
    """``(-1)^(d(d-1)/2) Res(f, f') / lc(f)``."""
    f = poly_trim(f)
    d = len(f) - 1
    if d < 1:
        raise ValueError("discriminant of a constant")
    if d == 1:
        return 1
    res = resultant(f, poly_derivative(f))
    q, r = divmod(res, f[-1])
    if r:
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return -q if (d * (d - 1) // 2) % 2 else q


def is_irreducible(f: Sequence[int]) -> bool:
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(poly_trim(f))), x, domain="ZZ").is_irreducible


@dataclass(frozen=True)
class NumberRing:
    """``Z[x]/(f)`` for a monic irreducible ``f``; ``poly`` lists ``c_0, ..., c_(d-1), 1``."""

    poly: tuple[int, ...]
    disc: int
    label: str = ""
    monogenic_asserted: bool = True

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.degree

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.degree - 1)

    def theta(self) -> tuple[int, ...]:
        if self.degree == 1:
            return (-self.poly[0],)
        return (0, 1) + (0,) * (self.degree - 2)

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        """Reduce an arbitrary integer polynomial in ``theta`` to power-basis coordinates."""
        c = [int(x) for x in coeffs]
        d = self.degree
        f = self.poly
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                # theta^k = -sum f_i theta^(k - d + i)
                for i in range(d):
                    c[k - d + i] -= lead * f[i]
                c[k] = 0
        c = c[:d]
        return tuple(c + [0] * (d - len(c)))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        prod_ = [0] * (len(a) + len(b) - 1) if a and b else [0]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        return self.element(prod_)

    def mult_matrix(self, a: Sequence[int]) -> IntMatrix:
        """Matrix of ``y -> a*y`` on the power basis (column ``k`` is ``a*theta^k``)."""
        a = self.element(a)
        d = self.degree
        cols = [self.mul(a, self.element([0] * k + [1])) for k in range(d)]
        return IntMatrix.from_rows([[cols[k][i] for k in range(d)] for i in range(d)], d)

    def norm(self, a: Sequence[int]) -> int:
        return self.mult_matrix(a).det()

    def different_generator(self) -> tuple[int, ...]:
        """``f'(theta)``, generating the different in the monogenic case."""
        return self.element(poly_derivative(self.poly))

    def to_json(self) -> dict:
        return {"poly": list(self.poly), "label": self.label}


def make_ring(poly: Sequence[int], label: str = "") -> NumberRing:
    f = poly_trim(int(c) for c in poly)
    if len(f) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if f[-1] != 1:
        raise ValueError(f"polynomial is not monic (leading coefficient {f[-1]})")
    if not is_irreducible(f):
        raise ValueError(f"polynomial {f} is reducible over Q")
    disc = discriminant(f)
    return NumberRing(tuple(f), disc, label)


def load_ring(path: str | Path) -> NumberRing:
    """Read ``{"poly": [...], "label": ...}`` from a JSON or TOML file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # Python 3.10
            import tomli as tomllib
        data = tomllib.loads(text)
    else:
        data = json.loads(text)
    return ring_from_json(data)


def ring_from_json(data: dict) -> NumberRing:
    if "poly" not in data:
        raise ValueError("ring description needs a 'poly' coefficient list")
    return make_ring(data["poly"], str(data.get("label", "")))


def different_norm(ring: NumberRing) -> int:
    """``|O_F / (f'(theta))|``, the absolute norm of the different."""
    return abs(ring.norm(ring.different_generator()))


def quotient_group(ring: NumberRing, elems: Sequence[Sequence[int]], j: int = 0) -> FinAbGroup:
    """``O_F / (a_1, ..., a_k, j)`` as an abelian group."""
    d = ring.degree
    blocks = [ring.mult_matrix(a) for a in elems]
    if j:
        blocks.append(IntMatrix.scalar(d, j))
    blocks = [b for b in blocks if not b.is_zero()]
    if not blocks:
        raise ValueError("infinite quotient: the ideal is zero")
    g = cokernel(hstack(*blocks))
    if not g.is_finite():
        raise ValueError(f"infinite quotient {g}")
    return g


def inverse_different_quotient(ring: NumberRing, j: int) -> FinAbGroup:
    """``D_F^-1 / j O_F``.

    Multiplication by ``f'(theta)`` carries ``D_F^-1`` onto ``O_F`` and
    ``j O_F`` onto ``j f'(theta) O_F``, so the quotient is ``O_F / (j f'(theta))``.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    gen = tuple(j * c for c in ring.different_generator())
    return quotient_group(ring, [gen])


def fractional_index(ring: NumberRing, j: int) -> int:
    """Lattice index ``[D_F^-1 : j O_F]``."""
    return inverse_different_quotient(ring, j).order()


def rational_integers() -> NumberRing:
    return make_ring([0, 1], "Q")
