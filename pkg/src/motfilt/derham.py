"""Exterior powers of cotangent complexes and Hodge-truncated derived de Rham data.

For a monogenic ring ``O = Z[x]/(f)`` the cotangent complex is the two-term
complex ``[O.f --f'(theta)--> O.dx]`` in homological degrees 1, 0.  Its
derived exterior powers are computed by the divided-power Koszul complex;
since both terms have rank one over ``O`` only two terms survive, giving
``[O --f'--> O]`` in homological degrees ``i, i-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .hodge import HodgeDiamond
from .homalg import FinAbGroup, IntMatrix, ZComplex, euler_mult, hstack
from .numring import NumberRing


@dataclass(frozen=True)
class LambdaPower:
    i: int
    homological_degree: int
    group: FinAbGroup
    complex: ZComplex


def koszul_complex(ring: NumberRing, i: int) -> ZComplex:
    """Strictly perfect model of ``L Lambda^i L_{O/Z}`` (cohomological grading)."""
    if i < 0:
        return ZComplex(0, ())
    if i == 0:
        return ZComplex.concentrated(0, ring.degree)
    # Gamma^i(O f) in homological degree i -> Gamma^(i-1)(O f) (x) O dx in degree i-1
    return ZComplex.two_term(-i, ring.mult_matrix(ring.different_generator()))


def lambda_power(ring: NumberRing, i: int) -> LambdaPower:
    if i < 0:
        raise ValueError("exterior degree must be >= 0")
    c = koszul_complex(ring, i)
    if i == 0:
        return LambdaPower(0, 0, FinAbGroup.free(ring.degree), c)
    top = c.cohomology(-i)
    if not top.is_trivial():
        raise ArithmeticError(f"f'(theta) is a zero divisor in {ring.poly}")
    return LambdaPower(i, i - 1, c.cohomology(-(i - 1)), c)


def lomega_rank(h: HodgeDiamond, k: int) -> int:
    """``sum_{i<k, j} (-1)^(i+j) h^ij``: rational Euler characteristic of ``L Omega^{<k}``."""
    return sum((-1) ** (i % 2) * h.hodge_row_euler(i) for i in range(min(k, h.d + 1)))


def de_rham_derivative_matrix(ring: NumberRing) -> IntMatrix:
    """``theta^k -> k theta^(k-1)`` on power-basis representatives."""
    d = ring.degree
    rows = [[0] * d for _ in range(d)]
    for k in range(1, d):
        rows[k - 1][k] = k
    return IntMatrix.from_rows(rows, d)


def lomega_two_term(ring: NumberRing) -> ZComplex:
    """Free model of ``L Omega^{<2}_{O/Z} = [O --d--> Omega_{O/Z}]`` in degrees 0, 1.

    ``Omega_{O/Z} = O dtheta / f'(theta) dtheta`` is replaced by its free
    resolution ``[O.f --f'--> O.dx]``, so the complex is
    ``O + O.f --(d, f')--> O.dx``.
    """
    m = hstack(de_rham_derivative_matrix(ring), ring.mult_matrix(ring.different_generator()))
    return ZComplex.two_term(0, m)


@dataclass(frozen=True)
class DeRhamSummary:
    """Cohomology of ``L Omega^{<n}`` (concentrated in degrees 0 and 1).

    ``h1`` is the exact group where it is determined (``n <= 2``); for
    larger ``n`` only the orders of the torsion Hodge-graded pieces are
    recorded in ``graded_orders``.
    """

    n: int
    h0_free_rank: int
    h0_torsion: FinAbGroup
    h1: FinAbGroup | None = None
    graded_orders: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"n": self.n, "h0_rank": self.h0_free_rank}
        if self.h1 is not None:
            out["h1_order"] = self.h1.order()
            out["h1"] = str(self.h1)
        if self.graded_orders is not None:
            out["graded_orders"] = list(self.graded_orders)
        return out


def lomega_summary(ring: NumberRing, n: int) -> DeRhamSummary:
    trivial = FinAbGroup()
    if n <= 0:
        return DeRhamSummary(n, 0, trivial, trivial)
    if n == 1:
        return DeRhamSummary(n, ring.degree, trivial, trivial)
    if n == 2:
        c = lomega_two_term(ring)
        h0 = c.cohomology(0)
        return DeRhamSummary(n, h0.free_rank, h0.torsion(), c.cohomology(1))
    # gr^i = L Lambda^i L[-i] sits in cohomological degree 1 for i >= 1
    orders = tuple(lambda_power(ring, i).group.order() for i in range(1, n))
    return DeRhamSummary(n, ring.degree, trivial, None, orders)


def fp_graded_piece(p: int) -> ZComplex:
    """``L Lambda^i L_{F_p/Z}[-i]``, the same for every ``i >= 0``.

    ``L_{F_p/Z} = (p)/(p^2)[1]`` and décalage gives
    ``L Lambda^i(M[1]) = Gamma^i(M)[i]``, so each piece is ``F_p`` in degree 0,
    modelled by ``[Z --p--> Z]`` in degrees -1, 0.
    """
    return ZComplex.two_term(-1, IntMatrix.scalar(1, p))


def fp_lomega_euler(p: int, n: int) -> int:
    """``chi_x(L Omega^{<n}_{F_p/Z})`` from its ``n`` Hodge-graded pieces."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be >= 0")
    total = ZComplex(0, ())
    for _ in range(n):
        total = total.direct_sum(fp_graded_piece(p))
    value = euler_mult(total)
    assert value.denominator == 1
    return int(value)
