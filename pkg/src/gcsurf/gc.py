"""The graph dg Lie algebras of a surface and their symplectic-type extension.

Three variants share the same combinatorics and differ in tadpole policy
and twisting:

* ``prime``   -- tadpoles kept, untwisted differential d_s + d_p
* ``reduced`` -- tadpole graphs quotiented out (any genus); carries the
                 one-vertex Maurer-Cartan element and the twist
* ``tadpole`` -- genus one only: tadpoles kept and the twist applied

Elements are connected graphs with at least one vertex; decorations live
in the reduced dual cohomology of the surface.  The degree-0/-1 Lie
algebra of pairing-preserving transformations avoiding the unit acts on
decorations, and extends the twisted complex by a semidirect sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    GraphVector,
    RawGraph,
    canonicalize,
    collect,
    dec_codes,
    dec_degree,
    degree_gc,
    is_label,
    odd_code,
    pairing,
    removal_sign,
)
from .linalg import SparseMatrix, rank as sparse_rank, dense_rank

VARIANTS = ("prime", "reduced", "tadpole")


class TruncationOverflow(Exception):
    pass


def tadpoles_allowed(variant):
    return variant in ("prime", "tadpole")


@dataclass(frozen=True)
class Bounds:
    vertices: int
    edges: int
    decorations: int

    def admits(self, raw):
        return (raw.vertices <= self.vertices and len(raw.edges) <= self.edges
                and len(raw.decorations) <= self.decorations)


@dataclass(frozen=True)
class SpPrimeElement:
    """Element of the pairing-preserving transformation algebra.

    terms: tuple of (coeff, target_code, source_code) summands, each
    mapping the source basis decoration to coeff times the target; the
    source "1" denotes the implicit unit carried by every vertex.
    """

    terms: tuple
    degree: int
    name: str = ""

    def scaled(self, c):
        c = Fraction(c)
        return SpPrimeElement(tuple((c * t[0], t[1], t[2]) for t in self.terms),
                              self.degree, self.name)


def sp_term_degree(p, q):
    dp = dec_degree(p) if p != "1" else 0
    dq = dec_degree(q) if q != "1" else 0
    return dp - dq


def make_sp(terms, name=""):
    terms = tuple((Fraction(c), p, q) for c, p, q in terms if c)
    degs = {sp_term_degree(p, q) for _, p, q in terms}
    if len(degs) > 1:
        raise ValueError("inhomogeneous transformation")
    return SpPrimeElement(terms, degs.pop() if degs else 0, name)


def sp_basis(genus):
    """The basis of the unit-avoiding pairing-preserving transformations.

    2n^2 - n - 1 elements for 2n = 2g + 2: the degree-0 symplectic part
    and the 2g degree -1 elements mixing the top class and the unit.
    """
    out = []
    g = genus
    for i in range(1, g + 1):
        out.append(make_sp([(1, f"a{i}", f"b{i}")], name=f"a{i}.d_b{i}"))
        out.append(make_sp([(1, f"b{i}", f"a{i}")], name=f"b{i}.d_a{i}"))
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            out.append(make_sp([(1, f"a{i}", f"a{j}"), (-1, f"b{j}", f"b{i}")],
                               name=f"a{i}.d_a{j}-b{j}.d_b{i}"))
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            out.append(make_sp([(1, f"a{i}", f"b{j}"), (1, f"a{j}", f"b{i}")],
                               name=f"a{i}.d_b{j}+a{j}.d_b{i}"))
            out.append(make_sp([(1, f"b{i}", f"a{j}"), (1, f"b{j}", f"a{i}")],
                               name=f"b{i}.d_a{j}+b{j}.d_a{i}"))
    for i in range(1, g + 1):
        # relative signs fixed so that the action on the Maurer-Cartan
        # element is a pure sum of tripods (the one-vertex one-decoration
        # contributions of the two summands cancel)
        out.append(make_sp([(1, "w", f"a{i}"), (-1, f"b{i}", "1")],
                           name=f"w.d_a{i}-b{i}.d_1"))
        out.append(make_sp([(1, "w", f"b{i}"), (1, f"a{i}", "1")],
                           name=f"w.d_b{i}+a{i}.d_1"))
    return out


def sigma_alpha(j):
    """w.d_b{j} + a{j}.d_1, the transformation whose boundary sweeps tripods."""
    return make_sp([(1, "w", f"b{j}"), (1, f"a{j}", "1")], name=f"sigma_a{j}")


def sigma_beta(j):
    return make_sp([(1, "w", f"a{j}"), (-1, f"b{j}", "1")], name=f"sigma_b{j}")


# Pairing induced on the dual basis (decoration codes; "1" is the unit
# slot).  The convention mirrors the surface pairing on the dual side;
# the preservation checks below pin it against the basis signs.
def pairing_dual(c1, c2):
    return pairing(c1, c2)


def sp_preserves_pairing(sigma, genus):
    """sigma preserves the dual pairing: <su,v> + (-1)^{|s||u|}<u,sv> = 0."""
    codes = ["1"] + dec_codes(genus)

    def apply(c):
        out = {}
        for coeff, p, q in sigma.terms:
            if q == c:
                out[p] = out.get(p, Fraction(0)) + coeff
        return out

    def deg(c):
        return 0 if c == "1" else dec_degree(c)

    for u in codes:
        for v in codes:
            total = Fraction(0)
            for p, coeff in apply(u).items():
                total += coeff * pairing_dual(p, v)
            sign = -1 if (sigma.degree % 2) and (deg(u) % 2) else 1
            for p, coeff in apply(v).items():
                total += sign * coeff * pairing_dual(u, p)
            if total:
                return False
    return True


def sp_bracket(sigma, tau):
    """Graded commutator of transformations, as raw (coeff, p, q) terms."""
    acc = {}

    def add(c, p, q):
        if p == q:
            # diagonal terms are fine; they just accumulate
            pass
        key = (p, q)
        acc[key] = acc.get(key, Fraction(0)) + c
    for c1, p1, q1 in sigma.terms:
        for c2, p2, q2 in tau.terms:
            if q1 == p2:
                add(c1 * c2, p1, q2)
    koszul = -1 if (sigma.degree % 2) and (tau.degree % 2) else 1
    for c2, p2, q2 in tau.terms:
        for c1, p1, q1 in sigma.terms:
            if q2 == p1:
                add(-koszul * c2 * c1, p2, q1)
    terms = tuple((v, p, q) for (p, q), v in sorted(acc.items()) if v)
    return make_sp(terms)


def sp_in_span(sigma, basis):
    """Coordinates of sigma in the span of basis elements, or None."""
    from .linalg import IncrementalEchelon
    coords = sorted({(p, q) for b in basis for _, p, q in b.terms}
                    | {(p, q) for _, p, q in sigma.terms})
    index = {pq: i for i, pq in enumerate(coords)}
    ech = IncrementalEchelon()
    rows = []
    for b in basis:
        rows.append({index[(p, q)]: c for c, p, q in b.terms})
        ech.add(rows[-1])
    target = {index[(p, q)]: c for c, p, q in sigma.terms}
    return ech.contains(target)


class GraphComplex:
    """One variant of the graph dg Lie algebra at a fixed genus."""

    def __init__(self, genus, variant):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "tadpole" and genus != 1:
            raise ValueError("the tadpole-twisted variant only exists in genus 1")
        self.genus = genus
        self.variant = variant
        self._z = None

    # -- element construction ------------------------------------------------

    def element(self, terms):
        vec = collect(terms, genus=self.genus, degree_fn=degree_gc)
        for cls in vec.terms:
            self._check_class(cls)
        return vec

    def _check_class(self, cls):
        raw = cls.raw
        if raw.genus != self.genus:
            raise ValueError("genus mismatch")
        if raw.ext:
            raise ValueError("hairy graphs do not live in this complex")
        if not raw.is_connected():
            raise ValueError("graph complex elements are connected")
        if raw.has_tadpole() and not tadpoles_allowed(self.variant):
            raise ValueError("tadpole in a tadpole-free variant")

    def single(self, raw, coeff=1):
        return self.element([(raw, coeff)])

    def _finish(self, raw_terms):
        if not tadpoles_allowed(self.variant):
            raw_terms = [(g, c) for (g, c) in raw_terms if not g.has_tadpole()]
        return collect(raw_terms, genus=self.genus, degree_fn=degree_gc)

    # -- differentials ---------------------------------------------------

    def _split_terms(self, raw):
        """Vertex splitting with the new edge leading the orientation order.

        Internal vertices only; each unordered way of distributing the
        incident objects counts once (the first incident object is pinned
        to the surviving vertex, the mirrored assignment encoding the
        same split).  External vertices, when present, ride along.
        """
        out = []
        n = raw.vertices
        for v in range(raw.internal):
            ends = []  # (kind, index, slot) slot 0/1 for the two tadpole ends
            for i, (a, b) in enumerate(raw.edges):
                if a == v:
                    ends.append(("e", i, 0))
                if b == v:
                    ends.append(("e", i, 1))
            decs = [i for i, (u, _) in enumerate(raw.decorations) if u == v]
            items = ends + [("d", i, 0) for i in decs]
            rest = len(items) - 1 if items else 0
            for tail in itertools.product((0, 1), repeat=rest):
                assign = (0,) + tail if items else ()
                new_edges = [list(e) for e in raw.edges]
                new_decs = list(raw.decorations)
                for (kind, i, slot), side in zip(items, assign):
                    if side == 0:
                        continue
                    if kind == "e":
                        new_edges[i][slot] = n
                    else:
                        new_decs[i] = (n, new_decs[i][1])
                edges = tuple(tuple(sorted(e)) for e in new_edges)
                edges = edges + ((v, n),)
                odd = (("e", len(raw.edges)),) + raw.odd_order
                # the new vertex index n sits after the external block; fix
                # by relabeling so externals stay last
                if raw.ext:
                    remap = list(range(raw.internal)) + [n] + \
                        list(range(raw.internal, n))
                    pos = {old_v: new_v for new_v, old_v in enumerate(remap)}
                    edges = tuple(tuple(sorted((pos[a], pos[b])))
                                  for (a, b) in edges)
                    new_decs = [(pos[u], c) for (u, c) in new_decs]
                out.append((RawGraph(raw.genus, n + 1, edges, tuple(new_decs),
                                     odd, raw.ext), 1))
        return out

    def _pair_terms(self, raw, cross_split=None, placement="front"):
        """Decoration pairing terms.

        With cross_split = (n1, d1) only pairs straddling the split are
        produced (vertices < n1 on one side, decoration indices < d1 on
        one side): that is the Lie bracket on a disjoint union.  The new
        edge goes to the front of the odd order for the differential and
        to the back for the bracket; together with the bracket's Koszul
        prefactor this makes the differential a graded derivation.
        """
        out = []
        decs = raw.decorations
        pos = {o: k for k, o in enumerate(raw.odd_order)}

        def straddles_dec(i, j):
            if cross_split is None:
                return True
            d1 = cross_split[1]
            return (i < d1) != (j < d1)

        def straddles_vert(i, u):
            if cross_split is None:
                return True
            d1, n1 = cross_split[1], cross_split[0]
            return (i < d1) != (u < n1)

        for i in range(len(decs)):
            if is_label(decs[i][1]):
                continue
            for j in range(i + 1, len(decs)):
                ci, cj = decs[i][1], decs[j][1]
                if is_label(cj) or not straddles_dec(i, j):
                    continue
                if odd_code(ci) and odd_code(cj):
                    first, second = (i, j) if pos[("d", i)] < pos[("d", j)] else (j, i)
                    coeff = pairing(decs[first][1], decs[second][1])
                    if not coeff:
                        continue
                    sign, remaining = removal_sign(
                        raw.odd_order, [("d", first), ("d", second)])
                    g = self._rebuild_after_pairing(raw, {i, j}, remaining,
                                                    (decs[i][0], decs[j][0]),
                                                    placement)
                    out.append((g, coeff * sign))
        # the top-class decoration pairs with the implicit unit everywhere
        for i, (u, c) in enumerate(decs):
            if c != "w":
                continue
            for w_vertex in range(raw.internal):
                if not straddles_vert(i, w_vertex):
                    continue
                sign, remaining = removal_sign(raw.odd_order, [])
                g = self._rebuild_after_pairing(raw, {i}, remaining,
                                                (u, w_vertex), placement)
                out.append((g, sign))
        return out

    @staticmethod
    def _rebuild_after_pairing(raw, removed_decs, remaining_odd, new_edge,
                               placement):
        keep = [i for i in range(len(raw.decorations)) if i not in removed_decs]
        remap = {old: new for new, old in enumerate(keep)}
        new_decs = tuple(raw.decorations[i] for i in keep)
        edges = raw.edges + (tuple(sorted(new_edge)),)
        eidx = len(raw.edges)
        odd = tuple(("d", remap[i]) if kind == "d" else (kind, i)
                    for (kind, i) in remaining_odd
                    if not (kind == "d" and i in removed_decs))
        if placement == "front":
            odd = (("e", eidx),) + odd
        else:
            odd = odd + (("e", eidx),)
        return RawGraph(raw.genus, raw.vertices, edges, new_decs, odd, raw.ext)

    def d_split(self, vec, bounds=None, on_overflow="error"):
        return self._apply(vec, self._split_terms, bounds, on_overflow)

    def d_pair(self, vec, bounds=None, on_overflow="error"):
        return self._apply(vec, self._pair_terms, bounds, on_overflow)

    def _apply(self, vec, term_fn, bounds=None, on_overflow="error"):
        raw_terms = []
        for cls, coeff in vec:
            for g, s in term_fn(cls.raw):
                raw_terms.append((g, coeff * s))
        if bounds is not None:
            kept = []
            for g, c in raw_terms:
                if bounds.admits(g):
                    kept.append((g, c))
                elif on_overflow == "error":
                    if tadpoles_allowed(self.variant) or not g.has_tadpole():
                        raise TruncationOverflow(f"{g} exceeds {bounds}")
                elif on_overflow != "drop":
                    raise ValueError("on_overflow must be 'error' or 'drop'")
            raw_terms = kept
        return self._finish(raw_terms)

    # -- Lie structure ---------------------------------------------------

    def _union(self, raw1, raw2):
        """Disjoint union; internals first, both external blocks last.

        Orientation is the concatenation raw1 then raw2.  Returns the
        union and (internal count of raw1, decoration count of raw1) for
        the cross-pairing filter.
        """
        i1, i2 = raw1.internal, raw2.internal

        def map1(v):
            return v if v < i1 else v + i2

        def map2(v):
            return v + i1 if v < i2 else v + i1 + raw1.ext

        k1 = len(raw1.edges)
        d1 = len(raw1.decorations)
        edges = tuple(tuple(sorted((map1(u), map1(v)))) for (u, v) in raw1.edges) + \
            tuple(tuple(sorted((map2(u), map2(v)))) for (u, v) in raw2.edges)
        decs = tuple((map1(v), c) for (v, c) in raw1.decorations) + \
            tuple((map2(v), c) for (v, c) in raw2.decorations)

        def shift(obj):
            kind, i = obj
            return (kind, i + (k1 if kind == "e" else d1))

        odd = raw1.odd_order + tuple(shift(o) for o in raw2.odd_order)
        union = RawGraph(raw1.genus, raw1.vertices + raw2.vertices, edges,
                         decs, odd, raw1.ext + raw2.ext)
        return union, (i1, d1)

    def bracket(self, vec1, vec2):
        """Pairing of decorations across the two arguments.

        The orientation of a product term is the concatenated order with
        the pair removed and the new edge appended; the Koszul prefactor
        (-1)^{|vec2-term|} makes the bracket graded antisymmetric (the
        count of odd objects is opposite in parity to the degree).
        """
        raw_terms = []
        for cls1, c1 in vec1:
            for cls2, c2 in vec2:
                sgn = -1 if degree_gc(cls2) % 2 else 1
                union, split = self._union(cls1.raw, cls2.raw)
                for g, s in self._pair_terms(union, cross_split=split,
                                             placement="back"):
                    raw_terms.append((g, c1 * c2 * s * sgn))
        return self._finish(raw_terms)

    def z(self):
        """The one-vertex Maurer-Cartan element.

        One vertex decorated by the dual top class, plus for each handle a
        vertex carrying the corresponding dual one-cycle pair.  In this
        package's orientation conventions the handle terms enter with the
        opposite sign; the Maurer-Cartan identity pins the transcription.
        """
        if self._z is not None:
            return self._z
        if self.variant == "prime" and self.genus != 1:
            raise ValueError("the Maurer-Cartan element needs the tadpole-free "
                             "quotient for genus >= 2")
        terms = []
        w_vertex = RawGraph(self.genus, 1, (), ((0, "w"),), ())
        terms.append((w_vertex, 1))
        for i in range(1, self.genus + 1):
            decs = ((0, f"a{i}"), (0, f"b{i}"))
            raw = RawGraph(self.genus, 1, (), decs, (("d", 0), ("d", 1)))
            terms.append((raw, -1))
        self._z = self._finish(terms)
        return self._z

    def twisted_diff(self, vec, bounds=None, on_overflow="error"):
        if self.variant == "prime":
            raise ValueError("twisting lives in the reduced or tadpole variants")
        out = self.d_split(vec, bounds, on_overflow) \
            + self.d_pair(vec, bounds, on_overflow)
        zbr = self.bracket(self.z(), vec)
        if bounds is not None:
            kept = {}
            for cls, c in zbr:
                if bounds.admits(cls.raw):
                    kept[cls] = c
                elif on_overflow == "error":
                    raise TruncationOverflow(f"{cls.raw} exceeds {bounds}")
            zbr = GraphVector(kept, zbr.degree if kept else None, self.genus)
        return out + zbr

    def full_diff(self, vec, bounds=None, on_overflow="error"):
        """d_s + d_p, the untwisted differential."""
        return self.d_split(vec, bounds, on_overflow) \
            + self.d_pair(vec, bounds, on_overflow)

    # -- transformation action -----------------------------------------------

    def sp_action(self, sigma, vec):
        """Action on decorations, one at a time, summed over all of them.

        Slot conventions: an odd-to-odd replacement keeps its orientation
        slot, an odd-to-even one pops its slot off the end, and a newly
        created odd slot (even-to-odd, or a unit-created decoration)
        appends at the end.
        """
        raw_terms = []
        for cls, coeff in vec:
            raw = cls.raw
            for tcoeff, p, q in sigma.terms:
                c = coeff * tcoeff
                if q == "1":
                    for v in range(raw.internal):
                        decs = raw.decorations + ((v, p),)
                        odd = raw.odd_order
                        if odd_code(p):
                            odd = odd + (("d", len(raw.decorations)),)
                        raw_terms.append((RawGraph(raw.genus, raw.vertices,
                                                   raw.edges, decs, odd,
                                                   raw.ext), c))
                    continue
                for i, (v, code) in enumerate(raw.decorations):
                    if code != q or raw.is_external(v):
                        continue
                    decs = list(raw.decorations)
                    decs[i] = (v, p)
                    odd = raw.odd_order
                    sign = 1
                    if odd_code(q) and not odd_code(p):
                        sign, odd = removal_sign(odd, [("d", i)])
                    elif not odd_code(q) and odd_code(p):
                        odd = odd + (("d", i),)
                    raw_terms.append((RawGraph(raw.genus, raw.vertices,
                                               raw.edges, tuple(decs),
                                               odd, raw.ext), c * sign))
        return self._finish(raw_terms)

    def extension_diff(self, sigma, vec):
        """Differential of the semidirect extension on a (sigma, graph) pair.

        The graph part of the image is the twisted differential of the
        graph part minus (-1)^{|sigma|} times the action of sigma on the
        Maurer-Cartan element; the transformation part of the image is
        always zero, so only the graph part is returned.
        """
        out = self.full_diff(vec)
        if not vec.is_zero():
            out = out + self.bracket(self.z(), vec)
        if sigma is not None and sigma.terms:
            koszul = -1 if sigma.degree % 2 else 1
            out = out + self.sp_action(sigma, self.z()).scale(-koszul)
        return out

    # -- distinguished elements ----------------------------------------------

    def tripod(self, c1, c2, c3):
        """One vertex carrying three degree -1 decorations."""
        for c in (c1, c2, c3):
            if dec_degree(c) != -1:
                raise ValueError("tripod decorations must have degree -1")
        decs = tuple((0, c) for c in (c1, c2, c3))
        raw = RawGraph(self.genus, 1, (), decs,
                       (("d", 0), ("d", 1), ("d", 2)))
        return self._finish([(raw, 1)])

    # -- truncated enumeration and reports -------------------------------

    def enumerate_classes(self, bounds, degree=None):
        """All connected classes within bounds, optionally filtered by degree."""
        found = {}
        codes = dec_codes(self.genus)
        for n in range(1, bounds.vertices + 1):
            pairs = [(u, v) for u in range(n) for v in range(u, n)
                     if u != v or tadpoles_allowed(self.variant)]
            min_edges = 0 if n == 1 else n - 1
            for k in range(min_edges, bounds.edges + 1):
                for edges in itertools.combinations_with_replacement(pairs, k):
                    skeleton = RawGraph(self.genus, n, tuple(edges), (), ())
                    if not skeleton.is_connected():
                        continue
                    slots = [(v, c) for v in range(n) for c in codes]
                    for m in range(0, bounds.decorations + 1):
                        for decs in itertools.combinations_with_replacement(slots, m):
                            if _repeated_odd(decs):
                                continue
                            blank = RawGraph(self.genus, n, tuple(edges),
                                             tuple(decs), ())
                            raw = RawGraph(self.genus, n, tuple(edges),
                                           tuple(decs),
                                           blank.canonical_odd_order())
                            cls, _ = canonicalize(raw)
                            if cls.is_zero or cls in found:
                                continue
                            if degree is not None and degree_gc(cls) != degree:
                                continue
                            found[cls] = True
        return sorted(found, key=lambda c: c.key())

    def differential_matrix(self, basis_from, basis_to, diff="full",
                            bounds=None):
        """Matrix of the chosen differential between enumerated bases.

        Returns (matrix, closed) where closed reports whether every image
        term landed inside basis_to.
        """
        apply_diff = {"split": self.d_split, "full": self.full_diff,
                      "twisted": self.twisted_diff}[diff]
        index = {cls: i for i, cls in enumerate(basis_to)}
        entries = {}
        closed = True
        for j, cls in enumerate(basis_from):
            image = apply_diff(self.single(cls.raw), bounds=None)
            for icls, coeff in image:
                i = index.get(icls)
                if i is None:
                    if bounds is None or bounds.admits(icls.raw):
                        closed = False
                    continue
                entries[(i, j)] = coeff
        return SparseMatrix(len(basis_to), len(basis_from), entries), closed

    def truncated_rank_report(self, degree, bounds, diff="full",
                              use_dense_oracle=False):
        """Rank data of the truncated three-term complex around one degree.

        The result is truncation data only; it is not the cohomology of
        the untruncated complex, and the caveat field says so.
        """
        basis_prev = self.enumerate_classes(bounds, degree - 1)
        basis_here = self.enumerate_classes(bounds, degree)
        basis_next = self.enumerate_classes(bounds, degree + 1)
        d_in, closed_in = self.differential_matrix(basis_prev, basis_here, diff)
        d_out, closed_out = self.differential_matrix(basis_here, basis_next, diff)
        closed = closed_in and closed_out
        rank_fn = (lambda m: dense_rank(m.to_dense())) if use_dense_oracle \
            else sparse_rank
        rank_in = rank_fn(d_in)
        rank_out = rank_fn(d_out)
        report = {
            "g": self.genus,
            "variant": self.variant,
            "degree": degree,
            "bounds": {"V": bounds.vertices, "E": bounds.edges,
                       "D": bounds.decorations},
            "differential": diff,
            "dim": len(basis_here),
            "rank_in": rank_in,
            "rank_out": rank_out,
            "h_trunc": len(basis_here) - rank_out - rank_in,
            "closed": closed,
            "caveat": ("truncated complex only; not the cohomology of the "
                       "full graph complex"),
        }
        return report


def _repeated_odd(decs):
    seen = set()
    for d in decs:
        if d in seen and odd_code(d[1]):
            return True
        seen.add(d)
    return False


def filtration_weight(raw):
    """2 (#edges) - total decoration degree; the differential never lowers it."""
    return 2 * len(raw.edges) - sum(dec_degree(c) for (_, c) in raw.decorations)
