import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from motfilt.homalg import (
    FinAbGroup,
    IntMatrix,
    ZComplex,
    cokernel,
    derived_mod,
    euler_mult,
    euler_rank,
    lemma_multadd_check,
    mapping_cone,
    random_complex,
    rational_euler,
    smith_diagonal,
    smith_normal_form,
)


def minors_invariant_factors(m: IntMatrix) -> list[int]:
    """Invariant factors from determinantal divisors: d_k = gcd of k x k minors."""
    rows = m.to_rows()
    divisors = [1]
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for ri in combinations(range(m.rows), k):
            for ci in combinations(range(m.cols), k):
                g = gcd(g, int(sympy.Matrix([[rows[i][j] for j in ci] for i in ri]).det()))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


matrices = st.integers(0, 4).flatmap(
    lambda r: st.integers(0, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r
        ).map(lambda rows, c=c: IntMatrix.from_rows(rows, c))
    )
)


class TestSmithNormalForm:
    def test_example_2468(self):
        _, d, _ = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
        assert d == IntMatrix.diagonal([2, 4])

    def test_identity(self):
        _, d, _ = smith_normal_form(IntMatrix.identity(3))
        assert d == IntMatrix.identity(3)

    def test_zero(self):
        _, d, _ = smith_normal_form(IntMatrix.zeros(2, 3))
        assert d == IntMatrix.zeros(2, 3)

    def test_empty(self):
        u, d, v = smith_normal_form(IntMatrix.zeros(0, 3))
        assert d.shape == (0, 3) and v == IntMatrix.identity(3)

    @settings(max_examples=150, deadline=None)
    @given(matrices)
    def test_contract(self, m):
        u, d, v = smith_normal_form(m)
        assert u @ m @ v == d
        assert abs(u.det()) == 1 and abs(v.det()) == 1
        diag = [d[k, k] for k in range(min(m.rows, m.cols))]
        assert all(d[i, j] == 0 for i in range(d.rows) for j in range(d.cols) if i != j)
        assert all(x >= 0 for x in diag)
        nz = [x for x in diag if x]
        assert diag[: len(nz)] == nz
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))

    @settings(max_examples=80, deadline=None)
    @given(matrices)
    def test_matches_determinantal_divisors(self, m):
        nz = [x for x in smith_diagonal(m) if x]
        assert nz == minors_invariant_factors(m)

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_rank_matches_sympy(self, m):
        assert m.rank() == sympy.Matrix(m.rows, m.cols, list(m.entries)).rank()


class TestIntMatrix:
    def test_bareiss_det(self):
        m = IntMatrix.from_rows([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        assert m.det() == 4

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 4).flatmap(lambda n: st.lists(st.integers(-9, 9), min_size=n * n, max_size=n * n).map(lambda e, n=n: IntMatrix(n, n, tuple(e)))))
    def test_det_matches_sympy(self, m):
        assert m.det() == sympy.Matrix(m.rows, m.cols, list(m.entries)).det()

    def test_shape_checks(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2, (1, 2, 3))
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1], [1, 2]])
        with pytest.raises(ValueError):
            IntMatrix.identity(2) @ IntMatrix.identity(3)

    def test_transpose_and_product(self):
        a = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert a.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]
        assert (a @ a.transpose()).to_rows() == [[14, 32], [32, 77]]


class TestFinAbGroup:
    def test_normalizes_to_invariant_factors(self):
        assert FinAbGroup.from_cyclic([2, 3]) == FinAbGroup.cyclic(6)
        assert FinAbGroup.from_cyclic([4, 6, 1]) == FinAbGroup((2, 12))
        assert FinAbGroup.from_cyclic([0, 5], 1) == FinAbGroup((5,), 2)

    def test_rejects_bad_chain(self):
        with pytest.raises(ValueError):
            FinAbGroup((4, 6))
        with pytest.raises(ValueError):
            FinAbGroup((1,))

    def test_str_and_order(self):
        g = FinAbGroup((6,), 2)
        assert str(g) == "Z^2 + Z/6"
        assert str(FinAbGroup()) == "0"
        assert FinAbGroup((2, 4)).order() == 8
        with pytest.raises(ValueError):
            g.order()
        assert g.torsion() == FinAbGroup.cyclic(6)

    @given(st.lists(st.integers(0, 30), max_size=6), st.integers(0, 3))
    def test_json_roundtrip_and_order(self, orders, free):
        g = FinAbGroup.from_cyclic(orders, free)
        assert FinAbGroup.from_json(g.to_json()) == g
        if g.is_finite():
            expected = 1
            for o in orders:
                expected *= max(o, 1)
            assert g.order() == expected

    def test_cokernel(self):
        assert cokernel(IntMatrix.from_rows([[0, -2], [2, 0]])) == FinAbGroup((2, 2))
        assert cokernel(IntMatrix.zeros(2, 1)) == FinAbGroup.free(2)


def two(m, lo=0):
    return ZComplex.two_term(lo, IntMatrix.from_rows(m))


class TestComplexes:
    def test_cohomology_examples(self):
        c = two([[2]])
        assert c.cohomology(0) == FinAbGroup() and c.cohomology(1) == FinAbGroup.cyclic(2)
        assert two([[0]]).cohomology(0) == FinAbGroup.free(1)
        assert two([[2, 0], [0, 3]]).cohomology(1) == FinAbGroup.cyclic(6)
        assert c.cohomology(7) == FinAbGroup()

    def test_not_a_complex(self):
        with pytest.raises(ValueError, match="not a complex"):
            ZComplex(0, (1, 1, 1), (IntMatrix.scalar(1, 1), IntMatrix.scalar(1, 1)))

    def test_derived_mod_examples(self):
        c = derived_mod(ZComplex.concentrated(0, 1), 5)
        assert all(
            c.cohomology(i) == (FinAbGroup.cyclic(5) if i == 0 else FinAbGroup()) for i in range(-3, 4)
        )
        # Tor_1(Z/2, Z/4) = Z/2
        t = derived_mod(two([[2]], -1), 4)
        assert t.cohomology(0) == FinAbGroup.cyclic(2)
        assert t.cohomology(-1) == FinAbGroup.cyclic(2)
        assert derived_mod(ZComplex(0, ()), 3).ranks == ()
        with pytest.raises(ValueError):
            derived_mod(c, 0)

    def test_euler_examples(self):
        c = ZComplex.build({0: 2, 1: 2}, {0: [[6, 0], [0, 0]]})
        # H^0 = Z, so not torsion
        with pytest.raises(ValueError, match="non-torsion"):
            euler_mult(c)
        # H^0 = Z/6, H^1 = Z/2
        d = two([[6]], -1).direct_sum(two([[2]], 0))
        assert d.cohomology(0) == FinAbGroup.cyclic(6) and d.cohomology(1) == FinAbGroup.cyclic(2)
        assert euler_mult(d) == 3
        assert euler_mult(ZComplex(0, ())) == 1
        assert euler_mult(two([[3**4]], -1)) == 81
        assert euler_rank(ZComplex.concentrated(0, 1)) == 1
        assert euler_rank(two([[2]])) == 0
        assert euler_rank(ZComplex.concentrated(2, 3)) == 3

    def test_lemma_examples(self):
        r = lemma_multadd_check(ZComplex.concentrated(0, 1), 7)
        assert r.lhs == r.rhs == 7 and r.equal
        r = lemma_multadd_check(two([[5]], -1), 3)
        assert r.lhs == r.rhs == 1
        r = lemma_multadd_check(ZComplex.build({0: 1, 1: 1}), 4)
        assert r.lhs == r.rhs == 1

    def test_mapping_cone_requires_chain_map(self):
        c = two([[2]])
        with pytest.raises(ValueError, match="chain map"):
            mapping_cone({0: IntMatrix.scalar(1, 1)}, c, c)

    def test_json_roundtrip(self):
        c = random_complex(random.Random(3), n_degrees=4)
        assert ZComplex.from_json(c.to_json()) == c


seeds = st.integers(0, 2**32)


def rc(seed, **kw):
    return random_complex(random.Random(seed), **kw)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(-3, 3))
def test_shift_moves_cohomology(seed, k):
    c = rc(seed)
    s = c.shift(k)
    for i in range(c.lo - 4, c.hi + 5):
        assert s.cohomology(i) == c.cohomology(i + k)
    assert s.shift(-k) == c


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_direct_sum_cohomology(a, b):
    c, d = rc(a), rc(b)
    s = c.direct_sum(d)
    for i in range(min(c.lo, d.lo) - 1, max(c.hi, d.hi) + 2):
        assert s.cohomology(i) == c.cohomology(i).direct_sum(d.cohomology(i))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 12))
def test_lemma_multadd_random(seed, j):
    c = rc(seed)
    r = lemma_multadd_check(c, j)
    assert r.equal
    assert euler_rank(c) == rational_euler(c)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 9))
def test_euler_mult_multiplicative(seed, j):
    c = derived_mod(rc(seed), j)
    d = derived_mod(rc(seed + 1), j)
    assert euler_mult(c.direct_sum(d)) == euler_mult(c) * euler_mult(d)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 9))
def test_derived_mod_universal_coefficients(seed, j):
    """H^i(C/j) = H^i(C)/j + H^{i+1}(C)[j] by counting orders prime by prime."""
    c = rc(seed)
    m = derived_mod(c, j)

    def size_mod(g: FinAbGroup) -> int:
        # |G / jG|
        out = j**g.free_rank
        for d in g.invariant_factors:
            out *= gcd(d, j)
        return out

    def size_tor(g: FinAbGroup) -> int:
        # |G[j]|
        out = 1
        for d in g.invariant_factors:
            out *= gcd(d, j)
        return out

    for i in range(c.lo - 2, c.hi + 2):
        h = m.cohomology(i)
        assert h.is_finite()
        assert h.order() == size_mod(c.cohomology(i)) * size_tor(c.cohomology(i + 1))


def test_lemma_two_hundred_complexes():
    rng = random.Random(2024)
    for _ in range(200):
        c = random_complex(rng)
        for j in range(1, 9):
            r = lemma_multadd_check(c, j)
            assert r.lhs == r.rhs == Fraction(j) ** rational_euler(c)
