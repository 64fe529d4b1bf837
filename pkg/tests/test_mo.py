import itertools
import random
from fractions import Fraction

import pytest

from gcsurf.mo import MoAlgebra, _add, mc_check, mc_residual
from gcsurf.freelie import t_g


def test_degree_zero_is_unit():
    mo = MoAlgebra(2, 1, max_degree=2)
    assert mo.dim(0) == 1


def test_degree_one_count():
    # r=2, g=1: w11, w12, w22, a(1,1), a(1,2), b(1,1), b(1,2)
    mo = MoAlgebra(2, 1, max_degree=2)
    assert mo.dim(1) == 7


def test_arnold_reduces_by_one_per_triple():
    mo = MoAlgebra(3, 1, max_degree=2)
    # relation span in degree 2: one Arnold + ab-nu (3) + sliding (6)
    assert len(mo._monomials[2]) - mo.dim(2) == 10


def test_graded_commutativity():
    mo = MoAlgebra(2, 1, max_degree=4)
    for u, v in itertools.product(mo.odd + mo.even, repeat=2):
        du = 2 if u.startswith("nu") else 1
        dv = 2 if v.startswith("nu") else 1
        lhs = mo.mult(mo.monomial(u), mo.monomial(v))
        rhs = {k: (-1) ** (du * dv) * c
               for k, c in mo.mult(mo.monomial(v), mo.monomial(u)).items()}
        assert lhs == rhs


def test_diff_examples():
    mo1 = MoAlgebra(1, 1, max_degree=3)
    assert mo1.is_zero(mo1.diff(mo1.monomial("w(1,1)")))  # 2 - 2g = 0
    mo2 = MoAlgebra(1, 2, max_degree=3)
    dw = mo2.diff(mo2.monomial("w(1,1)"))
    expect = mo2.reduce({k: -2 * c for k, c in mo2.monomial("nu(1)").items()})
    assert dw == expect


def test_diff_squares_to_zero():
    for r, g in ((2, 1), (2, 2), (3, 1)):
        mo = MoAlgebra(r, g, max_degree=4)
        for d in range(0, 3):
            for mono in mo._monomials[d]:
                assert mo.is_zero(mo.diff(mo.diff({mono: Fraction(1)})))


def test_leibniz_sampled():
    mo = MoAlgebra(2, 2, max_degree=4)
    rng = random.Random(5)
    for _ in range(30):
        u = {rng.choice(mo._monomials[1]): Fraction(1)}
        v = {rng.choice(mo._monomials[rng.choice([1, 2])]): Fraction(1)}
        du = mo.degree(next(iter(u)))
        lhs = mo.diff(mo.mult(u, v))
        rhs = _add(mo.mult(mo.diff(u), v),
                   {k: (-1) ** du * c for k, c in mo.mult(u, mo.diff(v)).items()})
        assert mo.reduce(lhs) == mo.reduce(rhs)


def test_surface_ring_at_one_point():
    mo = MoAlgebra(1, 2, max_degree=3, framed=True)
    # one-strand algebra: unit; 4 cycles + framing edge; nu and friends
    a1b2 = mo.mult(mo.monomial("a(1,1)"), mo.monomial("b(2,1)"))
    assert not a1b2
    a1b1 = mo.mult(mo.monomial("a(1,1)"), mo.monomial("b(1,1)"))
    nu = mo.reduce(mo.monomial("nu(1)"))
    assert a1b1 == nu


@pytest.mark.parametrize("r,g", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)])
def test_maurer_cartan(r, g):
    assert mc_check(r, g)["ok"]


def test_maurer_cartan_broken_control():
    report = mc_check(2, 2, identify_ab_nu=False)
    assert not report["ok"]
    assert report["blocks"]


def test_unframed_variant():
    assert mc_check(2, 1, framed=False)["ok"]
    mo = MoAlgebra(2, 1, framed=False, max_degree=2)
    assert all(not n.startswith("w(1,1)") and not n.startswith("w(2,2)")
               for n in mo.odd)
