import json

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from motfilt.homalg import FinAbGroup
from motfilt.numring import (
    discriminant,
    different_norm,
    fractional_index,
    inverse_different_quotient,
    load_ring,
    make_ring,
    quotient_group,
    rational_integers,
    resultant,
)

X = sympy.Symbol("x")


def sympy_disc(f):
    return int(sympy.discriminant(sympy.Poly(list(reversed(f)), X)))


GAUSS = [1, 0, 1]
CUBIC23 = [-1, -1, 0, 1]


class TestMakeRing:
    def test_integers(self):
        z = make_ring([0, 1])
        assert z.disc == 1 and z.degree == 1

    def test_examples(self):
        assert make_ring(GAUSS).disc == -4
        assert make_ring(CUBIC23).disc == -23
        assert make_ring([-2, 0, 1]).disc == 8
        assert make_ring([-2, 0, 0, 1]).disc == -108
        assert make_ring([1, 1, 1, 1, 1]).disc == 125

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError, match="monic"):
            make_ring([1, 0, 2])

    def test_rejects_reducible(self):
        with pytest.raises(ValueError, match="reducible"):
            make_ring([-1, 0, 1])
        with pytest.raises(ValueError, match="reducible"):
            product = sympy.Poly((X**2 + 1) * (X**3 + X + 1), X)
            make_ring([int(c) for c in reversed(product.all_coeffs())])

    def test_rejects_constant(self):
        with pytest.raises(ValueError):
            make_ring([3])

    def test_resultant_by_hand(self):
        # Res(x^2 + 1, 2x) = 4
        assert resultant(GAUSS, [0, 2]) == 4


class TestDifferent:
    def test_different_norm(self):
        assert different_norm(rational_integers()) == 1
        assert different_norm(make_ring(GAUSS)) == 4
        assert different_norm(make_ring(CUBIC23)) == 23

    def test_quotient_examples(self):
        r = make_ring(GAUSS)
        assert quotient_group(r, [[2]]) == FinAbGroup((2, 2))
        assert quotient_group(r, [r.different_generator()]) == FinAbGroup((2, 2))
        assert r.mult_matrix(r.different_generator()).to_rows() == [[0, -2], [2, 0]]
        assert quotient_group(rational_integers(), [], 5) == FinAbGroup.cyclic(5)
        with pytest.raises(ValueError, match="infinite quotient"):
            quotient_group(r, [[0, 0]])

    def test_fractional_index_examples(self):
        assert fractional_index(rational_integers(), 4) == 4
        assert fractional_index(make_ring(GAUSS), 3) == 36
        assert inverse_different_quotient(make_ring(GAUSS), 3) == FinAbGroup((6, 6))
        for poly in (GAUSS, CUBIC23, [-2, 0, 1]):
            r = make_ring(poly)
            assert fractional_index(r, 1) == abs(r.disc)


irreducible_monic = st.lists(st.integers(-6, 6), min_size=2, max_size=4).map(lambda c: c + [1])


@settings(max_examples=60, deadline=None)
@given(irreducible_monic, st.integers(1, 6))
def test_random_rings(poly, j):
    assume(sympy.Poly(list(reversed(poly)), X).is_irreducible)
    r = make_ring(poly)
    assert r.disc == discriminant(poly) == sympy_disc(poly)
    assert different_norm(r) == abs(r.disc)
    assert fractional_index(r, j) == abs(r.disc) * j**r.degree


@settings(max_examples=60, deadline=None)
@given(irreducible_monic, st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_ring_arithmetic_matches_sympy(poly, a, b):
    assume(sympy.Poly(list(reversed(poly)), X).is_irreducible)
    r = make_ring(poly)
    f = sympy.Poly(list(reversed(poly)), X)
    expected = sympy.rem(sympy.Poly(list(reversed(a)), X) * sympy.Poly(list(reversed(b)), X), f)
    coeffs = [int(c) for c in reversed(expected.all_coeffs())]
    coeffs += [0] * (r.degree - len(coeffs))
    assert list(r.mul(r.element(a), r.element(b))) == coeffs[: r.degree]
    # norm = resultant of f and the element polynomial (f monic)
    elem = sympy.Poly(list(reversed(list(r.element(a)))), X)
    assert r.norm(a) == int(sympy.resultant(f, elem))


def test_load_json_and_toml(tmp_path):
    (tmp_path / "g.json").write_text(json.dumps({"poly": GAUSS, "label": "Q(i)"}))
    (tmp_path / "g.toml").write_text('poly = [1, 0, 1]\nlabel = "Q(i)"\n')
    a, b = load_ring(tmp_path / "g.json"), load_ring(tmp_path / "g.toml")
    assert a == b and a.label == "Q(i)"
    (tmp_path / "bad.json").write_text("{}")
    with pytest.raises(ValueError):
        load_ring(tmp_path / "bad.json")
