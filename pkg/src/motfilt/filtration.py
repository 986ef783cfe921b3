"""Homotopy of THH, graded pieces of the motivic bifiltration, correcting factors.

Homotopy groups are read off cochain models with ``pi_m = H^(-m)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .derham import koszul_complex, lomega_rank, lomega_two_term
from .hodge import OVER_FQ, OVER_Q, HodgeDiamond
from .homalg import FinAbGroup, IntMatrix, ZComplex, derived_mod, euler_mult
from .numring import NumberRing, inverse_different_quotient

THEORIES = ("THH", "TP", "TCminus", "TCplus")


def thh_z_homotopy(i: int) -> FinAbGroup:
    """``pi_i THH(Z)``: ``Z`` at 0, ``Z/n`` at ``2n-1``, zero otherwise."""
    if i == 0:
        return FinAbGroup.free(1)
    if i > 0 and i % 2 == 1:
        return FinAbGroup.cyclic((i + 1) // 2)
    return FinAbGroup()


class ThhGroup(NamedTuple):
    order: int | None
    structure: FinAbGroup


def thh_of_homotopy(ring: NumberRing, i: int) -> ThhGroup:
    """``pi_i THH(O_F)``: ``O_F`` at 0, ``D_F^-1 / j O_F`` at ``2j-1``, zero otherwise."""
    if i == 0:
        return ThhGroup(None, FinAbGroup.free(ring.degree))
    if i > 0 and i % 2 == 1:
        g = inverse_different_quotient(ring, (i + 1) // 2)
        return ThhGroup(g.order(), g)
    return ThhGroup(1, FinAbGroup())


@dataclass(frozen=True)
class GradedPiece:
    """Symbolic descriptor of ``gr^j_Z gr^n_F`` of one of the four theories.

    The piece is ``object (x)^L Z/j`` suspended ``shift`` times, where
    ``object`` is named by ``kind`` and ``index``:
    ``lambda`` (``L Lambda^index L``), ``completed`` (``L Omega^hat``),
    ``completed_geq`` (``L Omega^hat^{>= index}``) or ``truncated``
    (``L Omega^{< index}``).
    """

    theory: str
    n: int
    j: int
    epsilon: int
    kind: str
    index: int | None
    shift: int

    @property
    def expression(self) -> str:
        base = {
            "lambda": f"LΛ^{self.index}L",
            "completed": "LΩ̂",
            "completed_geq": f"LΩ̂^{{≥{self.index}}}",
            "truncated": f"LΩ^{{<{self.index}}}",
        }[self.kind]
        coeff = f" ⊗ Z/{self.j}" if self.j else ""
        return f"{base}{coeff} [{self.shift}]"

    def to_json(self) -> dict:
        return {
            "theory": self.theory, "n": self.n, "j": self.j, "epsilon": self.epsilon,
            "kind": self.kind, "index": self.index, "shift": self.shift,
            "expression": self.expression,
        }

    def model(self, ring: NumberRing) -> ZComplex:
        """Strictly perfect model of this piece for ``A = O_F`` (cohomological grading).

        Available for THH, and for TCplus when ``n - j <= 2`` (where the
        truncated de Rham complex is known exactly).  The Hodge-completed
        pieces of TP and TCminus have profinite cohomology and stay symbolic.
        """
        if self.theory == "THH":
            base = koszul_complex(ring, self.index)
        elif self.theory == "TCplus":
            m = self.index
            if m <= 0:
                base = ZComplex(0, ())
            elif m == 1:
                base = ZComplex.concentrated(0, ring.degree)
            elif m == 2:
                base = lomega_two_term(ring)
            else:
                raise ValueError(f"LΩ^{{<{m}}} is only known at order level for m >= 3")
        else:
            raise ValueError(f"{self.theory} pieces are Hodge-completed and not evaluable")
        if self.j:
            base = derived_mod(base, self.j) if base.ranks else base
        return base.shift(self.shift)

    def homotopy(self, ring: NumberRing) -> dict[int, FinAbGroup]:
        """Nonzero homotopy groups ``{m: pi_m}`` of the evaluated piece."""
        c = self.model(ring)
        out = {}
        for i in c.degrees():
            h = c.cohomology(i)
            if not h.is_trivial():
                out[-i] = h
        return dict(sorted(out.items()))


def graded_piece(theory: str, n: int, j: int) -> GradedPiece:
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}; expected one of {THEORIES}")
    if j < 0:
        raise ValueError("j must be >= 0")
    eps = min(1, j)
    if theory == "THH":
        return GradedPiece(theory, n, j, eps, "lambda", n - j, n + j - eps)
    if theory == "TP":
        return GradedPiece(theory, n, j, eps, "completed", None, 2 * n - eps)
    if theory == "TCminus":
        return GradedPiece(theory, n, j, eps, "completed_geq", n - j, 2 * n - eps)
    return GradedPiece(theory, n, j, eps, "truncated", n - j, 2 * n - eps)


def weight_euler(ring: NumberRing, n: int) -> Fraction:
    """``prod_m |pi_m gr^n_F THH(O_F)|^((-1)^(m+1))`` assembled from the ``n+1`` Z-graded pieces.

    For ``n >= 1`` every piece is torsion, and the multiplicative Euler
    characteristic is additive along the finite Z-filtration.
    """
    if n < 1:
        raise ValueError("weight must be >= 1")
    out = Fraction(1)
    for j in range(n + 1):
        c = graded_piece("THH", n, j).model(ring)
        # euler_mult uses (-1)^i on H^i = pi_(-i); odd homotopy should count positively
        out /= euler_mult(c)
    return out


def _require_context(h: HodgeDiamond, context: str):
    if h.context != context:
        raise ValueError(f"diamond context is {h.context!r}, expected {context!r}")


def c_infinity(h: HodgeDiamond, n: int) -> Fraction:
    """``prod_{i<n; j} (n-1-i)! ^ ((-1)^(i+j) h^ij)``."""
    _require_context(h, OVER_Q)
    out = Fraction(1)
    for i in range(min(n, h.d + 1)):
        e = (-1) ** (i % 2) * h.hodge_row_euler(i)
        out *= Fraction(factorial(n - 1 - i)) ** e
    return out


def milne_exponent(h: HodgeDiamond, n: int) -> int:
    """``chi(X/F_q, O_X, n) = sum_{i<=n, j} (-1)^(i+j) (n-i) h^ij``; 0 for ``n <= 0``."""
    _require_context(h, OVER_FQ)
    if n <= 0:
        return 0
    return sum(
        (-1) ** (i % 2) * (n - i) * h.hodge_row_euler(i) for i in range(min(n, h.d) + 1)
    )


def hodge_piece_model(h: HodgeDiamond, i: int, noise: random.Random | None = None) -> ZComplex:
    """A strictly perfect complex with ``dim_Q H^k = h^ik``, standing in for ``R Gamma(X, L Lambda^i L)``.

    With ``noise`` given, acyclic-over-Q summands ``[Z --m--> Z]`` are added
    so that the integral cohomology carries torsion.
    """
    c = ZComplex.build({k: h[i, k] for k in range(h.d + 1)})
    if noise is not None:
        for k in range(h.d + 1):
            for _ in range(noise.randint(0, 2)):
                m = noise.randint(2, 9)
                c = c.direct_sum(ZComplex.two_term(k, IntMatrix.scalar(1, m)))
    return c


@dataclass(frozen=True)
class CinfReport:
    product_side: Fraction
    closed_form: Fraction
    formula_side: Fraction
    equal: bool

    def to_json(self) -> dict:
        return {
            "product_side": str(self.product_side),
            "closed_form": str(self.closed_form),
            "formula_side": str(self.formula_side),
        }


def verify_cinf_fiber_seq(h: HodgeDiamond, n: int, noise: random.Random | None = None) -> CinfReport:
    """Check ``chi_x(R Gamma(X, Z^1 L Omega^{<n}_{X/S})) = C_inf(X, n)^-1``.

    The product side multiplies, over the graded pieces
    ``L Omega^{<n-j}_{X/Z} (x)^L Z/j [-1]`` (``1 <= j <= n``) and their Hodge
    pieces ``L Lambda^i L [-i]`` (``i < n-j``), the multiplicative Euler
    characteristic of an explicit integral model reduced mod ``j`` by a
    mapping cone.  The closed form is the factorial product.
    """
    product = Fraction(1)
    for j in range(1, n):
        for i in range(n - j):
            if i > h.d:
                break
            piece = hodge_piece_model(h, i, noise).shift(-i)
            if not piece.ranks:
                continue
            product *= euler_mult(derived_mod(piece, j).shift(-1))
    formula = Fraction(1)
    for j in range(1, n):
        formula *= Fraction(j) ** -lomega_rank(h, n - j)
    closed = 1 / c_infinity(h, n)
    return CinfReport(product, closed, formula, product == closed == formula)
