"""Zeta functions of curves over finite fields and their special values.

``Z(X, t) = P(t) / ((1 - t)(1 - q t))`` with ``zeta(X, s) = Z(X, q^-s)``.
Leading Taylor coefficients are exact elements of
``Q[pi^(+-1/2), (log q)^(+-1)]``; floating point only enters through
``to_mpf`` renderings used for cross-checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import NamedTuple, Sequence

import mpmath
import sympy

from .ffield import count_hyperelliptic_points, prime_power
from .filtration import milne_exponent
from .hodge import OVER_FQ, HodgeDiamond
from .numring import discriminant, poly_trim


@dataclass(frozen=True)
class CurveZeta:
    """Zeta function of a smooth proper curve of genus ``g`` over ``F_q``.

    ``P`` holds the numerator coefficients ``c_0 = 1, ..., c_2g``.
    """

    q: int
    g: int
    P: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(int(c) for c in self.P))
        prime_power(self.q)
        if self.g < 0:
            raise ValueError("genus must be >= 0")
        if len(self.P) != 2 * self.g + 1:
            raise ValueError(f"numerator must have degree 2g = {2 * self.g}")
        if self.P[0] != 1:
            raise ValueError("numerator must satisfy P(0) = 1")
        if not satisfies_functional_equation(self.P, self.q, self.g):
            raise ValueError("P(t) != q^g t^2g P(1/(qt)): functional equation fails")
        if self.g:
            _check_riemann_hypothesis(self.P, self.q)

    def numerator(self, t):
        return sum(c * t**k for k, c in enumerate(self.P))

    def __call__(self, t):
        return self.numerator(t) / ((1 - t) * (1 - self.q * t))

    def power_sums(self, count: int) -> list[int]:
        """``s_m = sum alpha_i^m`` for ``m = 1..count`` over the reciprocal roots."""
        e = [(-1) ** k * c for k, c in enumerate(self.P)]
        s = []
        for m in range(1, count + 1):
            v = (-1) ** (m - 1) * m * (e[m] if m < len(e) else 0)
            for i in range(1, m):
                if i < len(e):
                    v += (-1) ** (i - 1) * e[i] * s[m - i - 1]
            s.append(v)
        return s

    def point_counts(self, count: int) -> list[int]:
        """``N_m = #X(F_(q^m))`` for ``m = 1..count``."""
        return [self.q**m + 1 - s for m, s in enumerate(self.power_sums(count), start=1)]

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g

    def diamond(self) -> HodgeDiamond:
        return HodgeDiamond.curve(self.g, OVER_FQ, self.q)

    def to_json(self) -> dict:
        return {"q": self.q, "genus": self.g, "P": list(self.P)}


def satisfies_functional_equation(P: Sequence[int], q: int, g: int) -> bool:
    """``c_(2g-k) = q^(g-k) c_k``, i.e. ``P(t) = q^g t^2g P(1/(qt))`` coefficientwise."""
    return all(Fraction(P[2 * g - k]) == Fraction(q) ** (g - k) * P[k] for k in range(2 * g + 1))


def _real_weil_polynomial(P: Sequence[int], q: int, g: int) -> list[int]:
    """``H`` with ``t^-g P(t) = H(y)`` at ``y = 1/t + q t``, integer coefficients, constant term first.

    Uses ``x^m + (q/x)^m = D_m(x + q/x)`` with ``D_0 = 2``, ``D_1 = y`` and
    ``D_m = y D_(m-1) - q D_(m-2)``.
    """
    dickson = [[2], [0, 1]]
    for _ in range(2, g + 1):
        a, b = dickson[-1], dickson[-2]
        nxt = [0] + a
        for i, c in enumerate(b):
            nxt[i] -= q * c
        dickson.append(nxt)
    h = [0] * (g + 1)
    h[0] = P[g]
    for k in range(g):
        for i, c in enumerate(dickson[g - k]):
            h[i] += P[k] * c
    return h


def _check_riemann_hypothesis(P: Sequence[int], q: int):
    """Exact check that every reciprocal root has absolute value ``sqrt(q)``.

    Under the functional equation this holds iff all roots of the real Weil
    polynomial ``H`` are real with ``y^2 <= 4q``; both conditions are decided
    by Sturm counts on square-free parts.
    """
    g = (len(P) - 1) // 2
    y, z = sympy.symbols("y z")
    h = sympy.Poly(list(reversed(_real_weil_polynomial(P, q, g))), y).sqf_part()
    if h.count_roots() != h.degree():
        raise ValueError(f"numerator has reciprocal roots off the circle |t| = 1/sqrt({q})")
    squares = sympy.Poly(sympy.resultant(h.as_expr(), z - y**2, y), z).sqf_part()
    if squares.count_roots(0, 4 * q) != squares.degree():
        raise ValueError(f"numerator has reciprocal roots off the circle |t| = 1/sqrt({q})")


def numerator_from_counts(q: int, counts: Sequence[int], genus: int) -> tuple[int, ...]:
    """Recover ``P`` from ``N_1..N_g`` by Newton's identities plus the functional equation."""
    if len(counts) < genus:
        raise ValueError(f"need {genus} point counts for genus {genus}, got {len(counts)}")
    s = [q**m + 1 - n for m, n in enumerate(counts[:genus], start=1)]
    e = [Fraction(1)]
    for k in range(1, genus + 1):
        v = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        e.append(v / k)
    if any(x.denominator != 1 for x in e):
        raise ValueError("inconsistent counts: non-integral numerator coefficients")
    c = [int((-1) ** k * x) for k, x in enumerate(e)]
    full = c + [0] * genus
    for k in range(genus):
        full[2 * genus - k] = q ** (genus - k) * c[k]
    return tuple(full)


def curve_zeta(
    q: int,
    counts: Sequence[int] | None = None,
    genus: int | None = None,
    coeffs: Sequence[int] | None = None,
) -> CurveZeta:
    """Assemble ``Z(X, t)`` from point counts ``N_1, N_2, ...`` or from numerator coefficients.

    Counts beyond the first ``genus`` are checked against the result.
    """
    if coeffs is not None:
        coeffs = tuple(coeffs)
        if len(coeffs) % 2 != 1:
            raise ValueError("numerator must have even degree 2g")
        z = CurveZeta(q, (len(coeffs) - 1) // 2, coeffs)
        if counts is not None and list(counts) != z.point_counts(len(counts)):
            raise ValueError("inconsistent counts for the given numerator")
        return z
    counts = list(counts or [])
    if genus is None:
        genus = len(counts)
    try:
        z = CurveZeta(q, genus, numerator_from_counts(q, counts, genus))
    except ValueError as exc:
        raise ValueError(f"inconsistent counts: {exc}") from exc
    if counts != z.point_counts(len(counts)):
        raise ValueError("inconsistent counts: extra counts disagree with the functional equation")
    return z


def hyperelliptic_genus(f: Sequence[int]) -> int:
    deg = len(poly_trim(f)) - 1
    if deg < 3:
        raise ValueError("need deg f >= 3 for a curve of positive genus")
    return (deg - 1) // 2


def curve_from_model(q: int, f: Sequence[int]) -> CurveZeta:
    """Zeta function of ``y^2 = f(x)`` over ``F_q`` by brute-force counting over ``F_(q^m)``, ``m <= g``."""
    p, k = prime_power(q)
    if p == 2:
        raise ValueError("built-in counter needs odd characteristic")
    f = poly_trim(f)
    if f[-1] % p == 0:
        raise ValueError("leading coefficient vanishes mod p")
    if discriminant(f) % p == 0:
        raise ValueError(f"y^2 = f(x) is singular mod {p}")
    g = hyperelliptic_genus(f)
    counts = [count_hyperelliptic_points(f, p, k * m) for m in range(1, g + 1)]
    return curve_zeta(q, counts, g)


def weierstrass_poly(a: int, b: int) -> list[int]:
    return [b, a, 0, 1]


def curve_from_json(data: dict) -> CurveZeta:
    if "q" not in data:
        raise ValueError("curve description needs 'q'")
    q = int(data["q"])
    if "model" in data:
        model = data["model"]
        if "f" in model:
            return curve_from_model(q, [int(c) for c in model["f"]])
        p, _ = prime_power(q)
        if p in (2, 3):
            raise ValueError("Weierstrass counter needs characteristic != 2, 3")
        return curve_from_model(q, weierstrass_poly(int(model.get("a", 0)), int(model.get("b", 0))))
    if "P" in data or "coeffs" in data:
        return curve_zeta(q, data.get("counts"), coeffs=data.get("P", data.get("coeffs")))
    genus = data.get("genus")
    return curve_zeta(q, data.get("counts", []), None if genus is None else int(genus))


def load_curve(path: str | Path) -> CurveZeta:
    return curve_from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SymbolicReal:
    """``coeff * pi^(half_pi_power/2) * (log q)^logq_power``."""

    coeff: Fraction
    half_pi_power: int = 0
    logq_power: int = 0
    q: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.logq_power and self.q is None:
            raise ValueError("a log q factor needs q")
        if not self.logq_power:
            object.__setattr__(self, "q", None)

    def __mul__(self, other: SymbolicReal) -> SymbolicReal:
        if not isinstance(other, SymbolicReal):
            return SymbolicReal(self.coeff * other, self.half_pi_power, self.logq_power, self.q)
        if self.q is not None and other.q is not None and self.q != other.q:
            raise ValueError("cannot multiply log factors of different bases")
        return SymbolicReal(
            self.coeff * other.coeff,
            self.half_pi_power + other.half_pi_power,
            self.logq_power + other.logq_power,
            self.q if self.q is not None else other.q,
        )

    __rmul__ = __mul__

    def inverse(self) -> SymbolicReal:
        return SymbolicReal(1 / self.coeff, -self.half_pi_power, -self.logq_power, self.q)

    def __truediv__(self, other: SymbolicReal) -> SymbolicReal:
        if not isinstance(other, SymbolicReal):
            return SymbolicReal(self.coeff / other, self.half_pi_power, self.logq_power, self.q)
        return self * other.inverse()

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            v = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            v *= mpmath.pi ** (mpmath.mpf(self.half_pi_power) / 2)
            if self.logq_power:
                v *= mpmath.log(self.q) ** self.logq_power
            return +v

    def __str__(self) -> str:
        parts = [str(self.coeff)]
        if self.half_pi_power:
            parts.append(f"pi^({self.half_pi_power}/2)")
        if self.logq_power:
            parts.append(f"log({self.q})^{self.logq_power}")
        return " * ".join(parts)

    def to_json(self) -> dict:
        return {
            "coeff": str(self.coeff),
            "half_pi_power": self.half_pi_power,
            "logq_power": self.logq_power,
            "q": self.q,
        }


@dataclass(frozen=True)
class SpecialValue:
    """Leading term ``coeff * (log q)^logq_power * (s - n)^order`` at ``s = n``."""

    order: int
    coeff: Fraction
    logq_power: int
    q: int

    def value(self) -> SymbolicReal:
        return SymbolicReal(self.coeff, 0, self.logq_power, self.q)

    def to_mpf(self, dps: int = 50):
        return self.value().to_mpf(dps)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeff": str(self.coeff),
            "logq_power": self.logq_power,
            "numeric": mpmath.nstr(self.to_mpf(30), 25),
        }


def _divide_linear(P: list[Fraction], a: Fraction) -> list[Fraction] | None:
    """Exact quotient of ``P(t)`` by ``1 - a t``, or ``None`` if it does not divide."""
    # P(t) = (1 - a t) Q(t): q_0 = p_0, q_k = p_k + a q_(k-1)
    if len(P) < 2:
        return None
    Q = [P[0]]
    for k in range(1, len(P) - 1):
        Q.append(P[k] + a * Q[-1])
    if P[-1] != -a * Q[-1]:
        return None
    return Q


def special_value(z: CurveZeta, n: int) -> SpecialValue:
    """Leading Taylor coefficient of ``zeta(X, s)`` at ``s = n``.

    A factor ``1 - q^a t`` with ``t = q^-s`` vanishes at ``s = a`` to order one
    with derivative ``log q``, so each vanishing factor contributes
    ``(s - n) log q`` and the remaining factors are exact rationals at ``q^-n``.
    """
    q = z.q
    t0 = Fraction(q) ** -n
    a = Fraction(q) ** n
    P = [Fraction(c) for c in z.P]
    mult = 0
    while True:
        Q = _divide_linear(P, a)
        if Q is None:
            break
        P, mult = Q, mult + 1
    coeff = sum(c * t0**k for k, c in enumerate(P))
    order = mult
    for shift in (0, 1):  # (1 - t) and (1 - q t)
        if n == shift:
            order -= 1
        else:
            coeff /= 1 - Fraction(q) ** shift * t0
    return SpecialValue(order, coeff, order, q)


def direct_zeta_value(z: CurveZeta, s, dps: int = 30):
    """``Z(X, q^-s)`` evaluated numerically; the independent side of special-value checks."""
    with mpmath.workdps(dps):
        t = mpmath.mpf(z.q) ** (-mpmath.mpf(s))
        num = sum(c * t**k for k, c in enumerate(z.P))
        return num / ((1 - t) * (1 - z.q * t))


def special_value_numeric_check(z: CurveZeta, n: int, h: str = "1e-5") -> tuple[float, float, float]:
    """Return ``(symbolic, direct, relative error)`` comparing against ``Z(q^-s) (s-n)^-order``."""
    sv = special_value(z, n)
    with mpmath.workdps(30):
        step = mpmath.mpf(h)
        direct = direct_zeta_value(z, n + step) * step ** (-sv.order)
        sym = sv.to_mpf(30)
        rel = abs(direct - sym) / abs(sym)
        return float(sym), float(direct), float(rel)


def bloch_conductor_fq(z: CurveZeta) -> tuple[int, int]:
    """``A(X) = q^-chi(X/F_q)`` as ``(q, exponent)`` with ``chi = 2 - 2g``."""
    return z.q, -z.euler_characteristic()


@dataclass(frozen=True)
class FunctionalEquationReport:
    n: int
    d: int
    lhs: int
    rhs: int
    sign: int
    det_xi_q_exponent_x2: int
    conductor_q_exponent_x2: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "sign": self.sign,
            "det_xi_q_exponent_x2": self.det_xi_q_exponent_x2,
            "conductor_q_exponent_x2": self.conductor_q_exponent_x2,
            "archimedean_ratio": "1",
        }


def _fe_sides(h: HodgeDiamond, n: int) -> tuple[int, int]:
    d = h.d
    lhs = 2 * (milne_exponent(h, n) - milne_exponent(h, d - n))
    rhs = h.euler_characteristic() * (2 * n - d)
    return lhs, rhs


def fe_sign_convention() -> int:
    """Sign relating the two sides, fixed once by ``P^1`` at ``n = 0``."""
    lhs, rhs = _fe_sides(HodgeDiamond.curve(0, OVER_FQ), 0)
    return lhs // rhs


def verify_thm_fe(z: CurveZeta, h: HodgeDiamond | None, n: int) -> FunctionalEquationReport:
    """Finite-field case of the functional-equation identity for ``det(xi)``.

    Over ``F_q`` the archimedean space is empty, so ``det(xi)`` is the ratio
    of the Milne factors ``q^chi(n) / q^chi(d-n)`` (up to sign) and must equal
    ``A(X)^(n - d/2)``.  Exponents are doubled to stay integral.
    """
    if h is None:
        h = z.diamond()
    if h.context != OVER_FQ:
        raise ValueError("functional-equation check needs a diamond over F_q")
    if h.d != 1 or h[0, 1] != z.g or h[1, 0] != z.g or h[0, 0] != 1 or h[1, 1] != 1:
        raise ValueError(f"diamond does not match a curve of genus {z.g}")
    if h.q is not None and h.q != z.q:
        raise ValueError("diamond and zeta function are over different fields")
    lhs, rhs = _fe_sides(h, n)
    sign = fe_sign_convention()
    _, a_exp = bloch_conductor_fq(z)
    return FunctionalEquationReport(
        n=n,
        d=h.d,
        lhs=lhs,
        rhs=rhs,
        sign=sign,
        det_xi_q_exponent_x2=-lhs,
        conductor_q_exponent_x2=a_exp * (2 * n - h.d),
        passed=(lhs == sign * rhs and -lhs == a_exp * (2 * n - h.d)),
    )


class GammaLeading(NamedTuple):
    order: int
    value: SymbolicReal


def gamma_r_leading(n: int) -> GammaLeading:
    """Leading term of ``Gamma_R(s) = pi^(-s/2) Gamma(s/2)`` at ``s = n``."""
    if n % 2:
        # Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi); Gamma(1/2 - k) = (-4)^k k! / (2k)! sqrt(pi)
        if n > 0:
            k = (n - 1) // 2
            c = Fraction(factorial(2 * k), 4**k * factorial(k))
        else:
            k = (1 - n) // 2
            c = Fraction((-4) ** k * factorial(k), factorial(2 * k))
        return GammaLeading(0, SymbolicReal(c, 1 - n))
    if n > 0:
        return GammaLeading(0, SymbolicReal(Fraction(factorial(n // 2 - 1)), -n))
    # Gamma(s/2) ~ 2 (-1)^m / (m! (s - n)) with m = -n/2
    m = -n // 2
    return GammaLeading(-1, SymbolicReal(Fraction(2 * (-1) ** m, factorial(m)), -n))


def gamma_r_numeric(n: int, h: str = "1e-12", dps: int = 40):
    """``Gamma_R(n + h) h^-order`` numerically."""
    order = gamma_r_leading(n).order
    with mpmath.workdps(dps):
        s = n + mpmath.mpf(h)
        return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.mpf(h) ** (-order)

