import itertools
import random

import pytest

from conftest import random_raw_graph
from gcsurf.gc import GraphComplex, sp_basis
from gcsurf.graphs import RawGraph, degree_hairy
from gcsurf.hairy import HairyComplex, label_line_graph, line_graph


def one_vertex(genus, *codes):
    decs = tuple((0, c) for c in codes)
    blank = RawGraph(genus, 1, (), decs, ())
    return RawGraph(genus, 1, (), decs, blank.canonical_odd_order())


def gc_pool(gcx, rng, count, **kw):
    out = []
    while len(out) < count:
        raw = random_raw_graph(rng, genus=gcx.genus, tadpoles=False,
                               connected=True, **kw)
        try:
            v = gcx.single(raw)
        except ValueError:
            continue
        if not v.is_zero():
            out.append(v)
    return out


@pytest.fixture(scope="module", params=[1, 2])
def setup(request):
    genus = request.param
    gcx = GraphComplex(genus, "reduced")
    H = HairyComplex(genus, "reduced")
    rng = random.Random(100 + genus)
    pool = [gcx.single(one_vertex(genus, *codes))
            for codes in [("a1",), ("b1",), ("w",), ("a1", "b1"), ("w", "a1")]]
    pool += gc_pool(gcx, rng, 10, max_vertices=2, max_edges=2, max_decs=3)
    pool = [v for v in pool if not v.is_zero()]
    return genus, gcx, H, pool, rng


def test_m1_is_image_of_z(setup):
    genus, gcx, H, pool, rng = setup
    assert (H.m1() - H.F1(gcx.z())).is_zero()
    assert H.m1().degree == 1
    assert H.m2().degree == 1
    # five term families at genus 1, five plus handle copies above
    assert len(H.m1()) == 2 + 3 * genus


def test_maurer_cartan_identities(setup):
    genus, gcx, H, pool, rng = setup
    m1, m2 = H.m1(), H.m2()
    assert (H.bracket(m1, m1) - H.d_split(m1).scale(2)).is_zero()
    assert H.bracket(m1, m2).is_zero()
    assert H.bracket(m2, m2).is_zero()


def test_m2_against_pair_differential(setup):
    genus, gcx, H, pool, rng = setup
    m2 = H.m2()
    for v in pool:
        assert (H.F1(gcx.d_pair(v)) - H.bracket(m2, H.F1(v))).is_zero()


def test_m2_kills_transformation_images(setup):
    genus, gcx, H, pool, rng = setup
    m2 = H.m2()
    for s in sp_basis(genus):
        assert H.bracket(m2, H.F2(s)).is_zero()


def test_action_compatibility(setup):
    genus, gcx, H, pool, rng = setup
    for v in pool:
        for s in sp_basis(genus):
            lhs = H.F1(gcx.sp_action(s, v))
            rhs = H.bracket(H.F2(s), H.F1(v))
            assert (lhs - rhs).is_zero(), s.name


def test_chain_map_graph_part(setup):
    genus, gcx, H, pool, rng = setup
    # the single undecorated vertex is excluded: its star has no incident
    # objects, the one place where counting each unordered split once
    # cannot match the hair-attachment count on the image side
    for v in pool:
        if any(not cls.raw.edges and not cls.raw.decorations for cls, _ in v):
            continue
        lhs = H.F1(gcx.extension_diff(None, v))
        rhs = H.twisted_diff(H.F1(v))
        assert (lhs - rhs).is_zero()


def test_chain_map_transformation_part(setup):
    genus, gcx, H, pool, rng = setup
    # the transformation component: the boundary of (sigma, 0) maps to
    # bracketing the image line against the one-vertex twist element
    zero = gcx.z().scale(0)
    for s in sp_basis(genus):
        koszul = -1 if s.degree % 2 else 1
        lhs = H.F1(gcx.extension_diff(s, zero))  # = -koszul * F1(sigma.z)
        rhs = H.bracket(H.m1(), H.F2(s))
        assert (lhs - rhs).is_zero(), s.name
        assert H.bracket(H.m2(), H.F2(s)).is_zero()
        assert H.d_split(H.F2(s)).is_zero()


def test_bracket_antisymmetry(setup):
    genus, gcx, H, pool, rng = setup
    for _ in range(8):
        X, Y = H.F1(rng.choice(pool)), H.F1(rng.choice(pool))
        if X.is_zero() or Y.is_zero():
            continue
        s = (-1) ** (X.degree * Y.degree)
        assert (H.bracket(X, Y) + H.bracket(Y, X).scale(s)).is_zero()


def test_prelie_empty_cases(setup):
    genus, gcx, H, pool, rng = setup
    # no hairs on the right that match: lines with only label ends absorb
    # nothing from a graph whose labels find no decorations
    m2 = H.m2()
    assert H.prelie(H.F1(pool[0]), m2).is_zero()


def test_hairless_inputs_rejected(setup):
    genus, gcx, H, pool, rng = setup
    raw = one_vertex(genus, "a1")
    with pytest.raises(ValueError):
        H.single(raw)


def test_fig_prelie_example(setup):
    genus, gcx, H, pool, rng = setup
    # a top-class label eats the top-class decoration with coefficient one
    blank = RawGraph(genus, 2, ((0, 1),), ((1, "dw"),), (), ext=1)
    left = H.single(RawGraph(genus, 2, ((0, 1),), ((1, "dw"),),
                             blank.canonical_odd_order(), ext=1))
    blank = RawGraph(genus, 2, ((0, 1),), ((0, "w"), (1, "da1")), (), ext=1)
    right = H.single(RawGraph(genus, 2, ((0, 1),),
                              ((0, "w"), (1, "da1")),
                              blank.canonical_odd_order(), ext=1))
    result = H.prelie(left, right)
    assert len(result) == 1
    (cls, coeff), = list(result)
    assert abs(coeff) == 1
    assert cls.raw.internal == 2


def test_line_degrees(setup):
    genus, gcx, H, pool, rng = setup
    assert degree_hairy(label_line_graph(genus, "dw", "d1")) == 1
    assert degree_hairy(line_graph(genus, "a1", "dw")) == 1
    assert degree_hairy(line_graph(genus, "a1", "db1")) == 0


def test_tadpole_variant_exists():
    H = HairyComplex(1, "tadpole")
    m1 = H.m1()
    assert m1.degree == 1
    with pytest.raises(ValueError):
        HairyComplex(2, "tadpole")
