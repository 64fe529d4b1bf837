import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_raw_graph
from gcsurf.gc import (
    Bounds,
    GraphComplex,
    TruncationOverflow,
    filtration_weight,
    make_sp,
    sigma_alpha,
    sigma_beta,
    sp_basis,
    sp_bracket,
    sp_in_span,
    sp_preserves_pairing,
)
from gcsurf.graphs import RawGraph, degree_gc


def single_vertex(genus, *codes, coeff=1):
    gc_decs = tuple((0, c) for c in codes)
    blank = RawGraph(genus, 1, (), gc_decs, ())
    return RawGraph(genus, 1, (), gc_decs, blank.canonical_odd_order())


def sample_elements(gc, rng, count, max_vertices=3, max_edges=3, max_decs=3):
    out = []
    while len(out) < count:
        raw = random_raw_graph(rng, genus=gc.genus, max_vertices=max_vertices,
                               max_edges=max_edges, max_decs=max_decs,
                               tadpoles=(gc.variant != "reduced"), connected=True)
        try:
            v = gc.single(raw)
        except ValueError:
            continue
        if not v.is_zero():
            out.append(v)
    return out


@pytest.mark.parametrize("genus,variant", [(1, "prime"), (1, "reduced"),
                                           (2, "reduced"), (1, "tadpole")])
def test_d_split_squares_to_zero(genus, variant):
    gc = GraphComplex(genus, variant)
    rng = random.Random(hash((genus, variant)) & 0xFFFF)
    for v in sample_elements(gc, rng, 12):
        assert gc.d_split(gc.d_split(v)).is_zero()


@pytest.mark.parametrize("genus,variant", [(1, "prime"), (2, "reduced")])
def test_full_diff_squares_to_zero(genus, variant):
    gc = GraphComplex(genus, variant)
    rng = random.Random(genus * 7 + 1)
    for v in sample_elements(gc, rng, 12):
        assert gc.full_diff(gc.full_diff(v)).is_zero()


@pytest.mark.parametrize("genus,variant", [(1, "reduced"), (2, "reduced"),
                                           (1, "tadpole")])
def test_twisted_diff_squares_to_zero(genus, variant):
    gc = GraphComplex(genus, variant)
    rng = random.Random(genus * 13 + 5)
    for v in sample_elements(gc, rng, 10):
        assert gc.twisted_diff(gc.twisted_diff(v)).is_zero()


@pytest.mark.parametrize("genus,variant", [(1, "reduced"), (2, "reduced"),
                                           (1, "tadpole")])
def test_z_is_maurer_cartan(genus, variant):
    gc = GraphComplex(genus, variant)
    z = gc.z()
    assert {degree_gc(cls) for cls, _ in z} == {1}
    residual = gc.full_diff(z) + gc.bracket(z, z).scale(Fraction(1, 2))
    assert residual.is_zero()


def test_d_pair_examples():
    # one vertex with a1, b1 pairs to a tadpole with coefficient read off
    # the surface pairing; the tadpole-free variant drops it.
    gc_t = GraphComplex(1, "tadpole")
    v = gc_t.single(single_vertex(1, "a1", "b1"))
    image = gc_t.d_pair(v)
    assert len(image) == 1
    (cls, coeff), = list(image)
    assert cls.raw.has_tadpole()
    gc_r = GraphComplex(1, "reduced")
    v = gc_r.single(single_vertex(1, "a1", "b1"))
    assert gc_r.d_pair(v).is_zero()


def test_bracket_antisymmetry_and_jacobi():
    gc = GraphComplex(2, "reduced")
    rng = random.Random(42)
    els = sample_elements(gc, rng, 8, max_vertices=2, max_edges=2)
    for v, w in itertools.combinations(els, 2):
        s = (-1) ** (v.degree * w.degree)
        assert (gc.bracket(v, w) + gc.bracket(w, v).scale(s)).is_zero()
    for u, v, w in itertools.combinations(els[:6], 3):
        a, b, c = u.degree, v.degree, w.degree
        t1 = gc.bracket(u, gc.bracket(v, w)).scale((-1) ** (a * c))
        t2 = gc.bracket(v, gc.bracket(w, u)).scale((-1) ** (b * a))
        t3 = gc.bracket(w, gc.bracket(u, v)).scale((-1) ** (c * b))
        assert (t1 + t2 + t3).is_zero()


def test_bracket_of_decoration_free_graphs_vanishes():
    gc = GraphComplex(1, "reduced")
    e = RawGraph(1, 2, ((0, 1),), (), (("e", 0),))
    v = gc.single(e)
    assert gc.bracket(v, v).is_zero()


def test_sp_basis_sizes_and_degrees():
    for g, size in ((1, 5), (2, 14)):
        basis = sp_basis(g)
        assert len(basis) == size
        assert sum(1 for b in basis if b.degree == -1) == 2 * g
        n = g + 1
        assert size == 2 * n * n - n - 1


def test_sp_basis_preserves_pairing_and_closes():
    for g in (1, 2):
        basis = sp_basis(g)
        for s in basis:
            assert sp_preserves_pairing(s, g)
            for _, p, _ in s.terms:
                assert p != "1"
        for s, t in itertools.product(basis, repeat=2):
            br = sp_bracket(s, t)
            if br.terms:
                assert sp_in_span(br, basis)


def test_sp_action_on_z():
    gc = GraphComplex(2, "reduced")
    z = gc.z()
    for s in sp_basis(2):
        act = gc.sp_action(s, z)
        if s.degree == 0:
            assert act.is_zero(), s.name
        else:
            assert not act.is_zero(), s.name


def test_sp_action_is_lie_action():
    gc = GraphComplex(2, "reduced")
    rng = random.Random(3)
    basis = sp_basis(2)
    for v in sample_elements(gc, rng, 6, max_vertices=2, max_edges=2, max_decs=2):
        s, t = rng.choice(basis), rng.choice(basis)
        koz = -1 if (s.degree % 2) and (t.degree % 2) else 1
        lhs = gc.sp_action(sp_bracket(s, t), v)
        rhs = gc.sp_action(s, gc.sp_action(t, v)) \
            - gc.sp_action(t, gc.sp_action(s, v)).scale(koz)
        assert (lhs - rhs).is_zero()


def test_sp_elementary_replacement():
    gc = GraphComplex(1, "reduced")
    v = gc.single(single_vertex(1, "b1"))
    out = gc.sp_action(make_sp([(1, "a1", "b1")]), v)
    assert len(out) == 1
    (cls, coeff), = list(out)
    assert cls.raw.decorations == ((0, "a1"),)


def test_tripods_closed_and_boundary_identities():
    gc = GraphComplex(2, "reduced")
    codes = ["a1", "b1", "a2", "b2"]
    for tri in itertools.combinations(codes, 3):
        t = gc.tripod(*tri)
        assert not t.is_zero()
        assert gc.twisted_diff(t).is_zero()
    assert gc.tripod("a1", "a1", "b2").is_zero()
    zero = gc.z().scale(0)
    for j in (1, 2):
        expected = None
        for i in (1, 2):
            if i == j:
                continue
            term = gc.tripod(f"a{i}", f"b{i}", f"a{j}").scale(-1)
            expected = term if expected is None else expected + term
        assert (gc.extension_diff(sigma_alpha(j), zero) - expected).is_zero()
        expected = None
        for i in (1, 2):
            if i == j:
                continue
            term = gc.tripod(f"a{i}", f"b{i}", f"b{j}")
            expected = term if expected is None else expected + term
        assert (gc.extension_diff(sigma_beta(j), zero) - expected).is_zero()


def test_extension_diff_squares_to_zero():
    gc = GraphComplex(2, "reduced")
    zero = gc.z().scale(0)
    for s in sp_basis(2):
        first = gc.extension_diff(s, zero)
        assert gc.extension_diff(None, first).is_zero()
    rng = random.Random(9)
    for v in sample_elements(gc, rng, 6, max_vertices=2, max_edges=2, max_decs=2):
        first = gc.extension_diff(None, v)
        assert gc.extension_diff(None, first).is_zero()


def test_extension_diff_sigma_zero_is_twisted():
    gc = GraphComplex(1, "reduced")
    rng = random.Random(10)
    for v in sample_elements(gc, rng, 5, max_vertices=2, max_edges=2, max_decs=2):
        assert (gc.extension_diff(None, v) - gc.twisted_diff(v)).is_zero()


def test_enumerate_tripods():
    gc = GraphComplex(2, "reduced")
    basis = gc.enumerate_classes(Bounds(1, 0, 3), degree=0)
    tripods = [cls for cls in basis if len(cls.raw.decorations) == 3]
    # C(4,3) distinct odd triples; the remaining degree-0 classes pair one
    # odd decoration with the even top-class decoration.
    assert len(tripods) == 4
    assert all(len(cls.raw.decorations) == 2 for cls in basis
               if cls not in tripods)
    assert len(basis) == 8


def test_enumerate_empty_and_bare():
    gc = GraphComplex(1, "reduced")
    assert gc.enumerate_classes(Bounds(0, 0, 0)) == []
    basis = gc.enumerate_classes(Bounds(1, 0, 0), degree=3)
    assert len(basis) == 1
    assert basis[0].raw.vertices == 1 and not basis[0].raw.decorations


def test_truncation_overflow_modes():
    gc = GraphComplex(1, "reduced")
    v = gc.single(single_vertex(1, "a1", "b1"))
    small = Bounds(1, 0, 2)
    with pytest.raises(TruncationOverflow):
        gc.d_split(v, bounds=small, on_overflow="error")
    assert gc.d_split(v, bounds=small, on_overflow="drop").is_zero()


def test_filtration_never_decreases():
    gc = GraphComplex(2, "reduced")
    rng = random.Random(12)
    for v in sample_elements(gc, rng, 8, max_vertices=2, max_edges=2):
        base = min(filtration_weight(cls.raw) for cls, _ in v)
        image = gc.twisted_diff(v)
        if image.is_zero():
            continue
        assert min(filtration_weight(cls.raw) for cls, _ in image) >= base


def test_truncated_rank_report():
    gc = GraphComplex(1, "tadpole")
    report = gc.truncated_rank_report(0, Bounds(2, 2, 2), diff="twisted")
    assert report["dim"] >= 0
    assert report["h_trunc"] == report["dim"] - report["rank_in"] - report["rank_out"]
    assert "caveat" in report
    oracle = gc.truncated_rank_report(0, Bounds(2, 2, 2), diff="twisted",
                                      use_dense_oracle=True)
    assert (report["rank_in"], report["rank_out"]) == \
        (oracle["rank_in"], oracle["rank_out"])


def test_variant_mixing_rejected():
    with pytest.raises(ValueError):
        GraphComplex(2, "tadpole")
    gc = GraphComplex(1, "reduced")
    tad = RawGraph(1, 1, ((0, 0),), (), (("e", 0),))
    with pytest.raises(ValueError):
        gc.single(tad)
    with pytest.raises(ValueError):
        GraphComplex(1, "prime").twisted_diff(
            GraphComplex(1, "prime").single(single_vertex(1, "w")))
