"""The hairy graph complex and the comparison maps from the graph complex.

Hairy elements are internally connected graphs whose hairs are edges to
external vertices carrying labels dual to the decoration space (the
labels live in non-negative degrees).  Two zero-internal-vertex diagrams
are first-class citizens: a surface decoration sharing an external
vertex with a label (no edge at all), and a single edge between two
labelled external vertices.

The pre-Lie product attaches any nonempty subset of the external
vertices of the left factor onto matching decoration slots of the right
factor (the degree-0 label also matches the implicit unit carried by
every internal vertex): the external vertex merges into the target
vertex and the two paired slots disappear.  Merging moves no orientation
data, so all signs come from the same slot-removal convention as the
pairing differential.  The graded commutator is the Lie bracket, the
differential splits internal vertices, and the one-vertex/two-external
Maurer-Cartan elements twist it.
"""

from __future__ import annotations

import itertools

from .gc import GraphComplex, tadpoles_allowed
from .graphs import (
    GraphVector,
    RawGraph,
    collect,
    degree_hairy,
    is_label,
    odd_code,
    removal_sign,
)


def hair_code_for(dec_code):
    """Label code of the functional dual to a decoration code ('1' allowed)."""
    return "d" + dec_code if dec_code != "1" else "d1"


def dec_code_for(hair_code):
    return hair_code[1:] if hair_code != "d1" else "1"


def line_graph(genus, dec, label):
    """The edgeless diagram: one external vertex with a decoration and a label."""
    decs = ((0, dec), (0, label))
    blank = RawGraph(genus, 1, (), decs, (), ext=1)
    return RawGraph(genus, 1, (), decs, blank.canonical_odd_order(), ext=1)


def label_line_graph(genus, l1, l2):
    """A single edge between two external vertices with the given labels."""
    decs = ((0, l1), (1, l2))
    blank = RawGraph(genus, 2, ((0, 1),), decs, (), ext=2)
    return RawGraph(genus, 2, ((0, 1),), decs,
                    blank.canonical_odd_order(), ext=2)


class HairyComplex:
    """The hairy complex of a surface, tadpole-free or genus-one tadpole."""

    def __init__(self, genus, variant="reduced"):
        if variant not in ("reduced", "tadpole"):
            raise ValueError("variant must be 'reduced' or 'tadpole'")
        if variant == "tadpole" and genus != 1:
            raise ValueError("the tadpole variant only exists in genus 1")
        self.genus = genus
        self.variant = variant
        self.gc = GraphComplex(genus, variant)
        self._m1 = None
        self._m2 = None

    # -- construction ------------------------------------------------------

    def element(self, terms):
        vec = collect(terms, genus=self.genus, hairy=True,
                      degree_fn=degree_hairy)
        for cls in vec.terms:
            self._check_class(cls)
        return vec

    def single(self, raw, coeff=1):
        return self.element([(raw, coeff)])

    def _check_class(self, cls):
        raw = cls.raw
        if raw.genus != self.genus:
            raise ValueError("genus mismatch")
        if not raw.ext:
            raise ValueError("hairy elements carry at least one hair")
        if not raw.internally_connected():
            raise ValueError("hairy elements are internally connected")
        if raw.has_tadpole() and not tadpoles_allowed(self.variant):
            raise ValueError("tadpole in the tadpole-free variant")

    def _finish(self, raw_terms):
        if not tadpoles_allowed(self.variant):
            raw_terms = [(g, c) for (g, c) in raw_terms if not g.has_tadpole()]
        return collect(raw_terms, genus=self.genus, hairy=True,
                       degree_fn=degree_hairy)

    def zero(self):
        return GraphVector.zero(self.genus, hairy=True)

    # -- differential ------------------------------------------------------

    def d_split(self, vec):
        raw_terms = []
        for cls, coeff in vec:
            for g, s in self.gc._split_terms(cls.raw):
                raw_terms.append((g, coeff * s))
        return self._finish(raw_terms)

    # -- pre-Lie product -----------------------------------------------------

    def _targets(self, raw, label):
        want = dec_code_for(label)
        out = []
        for i, (v, code) in enumerate(raw.decorations):
            if code == want:
                out.append(("dec", i))
        if want == "1":
            for v in range(raw.internal):
                out.append(("unit", v))
        return out

    def prelie(self, vec1, vec2):
        """Sum over nonempty external-vertex subsets of vec1 glued into vec2.

        Generic gluings carry the Koszul prefactor (-1)^{|vec2-term| + 1},
        playing the role the pairing bracket's prefactor plays in the
        graph complex (pinned by the splitting-differential identity for
        the twist image).  Gluings involving an edgeless
        decoration-to-label line are substitution operators and carry no
        prefactor, exactly like the decoration action.
        """
        raw_terms = []
        for cls1, c1 in vec1:
            for cls2, c2 in vec2:
                if self._is_dec_line(cls1.raw) or self._is_dec_line(cls2.raw):
                    sgn = 1
                else:
                    sgn = 1 if degree_hairy(cls2) % 2 else -1
                for g, s in self._prelie_terms(cls1.raw, cls2.raw):
                    raw_terms.append((g, c1 * c2 * s * sgn))
        return self._finish(raw_terms)

    def _prelie_terms(self, raw1, raw2):
        exts = list(range(raw1.internal, raw1.vertices))
        label_of = {}
        label_slot = {}
        for i, (v, c) in enumerate(raw1.decorations):
            if raw1.is_external(v) and is_label(c):
                label_of[v] = c
                label_slot[v] = i
        out = []
        for size in range(1, len(exts) + 1):
            for subset in itertools.combinations(exts, size):
                target_lists = [self._targets(raw2, label_of[u]) for u in subset]
                for targets in itertools.product(*target_lists):
                    decs_used = [t for t in targets if t[0] == "dec"]
                    if len(set(decs_used)) != len(decs_used):
                        continue
                    term = self._glue(raw1, raw2, subset, targets,
                                      label_slot)
                    if term is not None:
                        out.append(term)
        return out

    def _glue(self, raw1, raw2, subset, targets, label_slot):
        """Merge the chosen external vertices of raw1 onto targets in raw2.

        Orientation: concatenated order raw1 then raw2; the consumed label
        and decoration slots pop off pairwise, label first, in subset
        order.  The merge itself is a vertex relabeling and costs nothing.
        Edgeless decoration-to-label lines instead act by the in-place
        substitution conventions of the decoration action, on either side.
        """
        if self._is_dec_line(raw1):
            return self._glue_line_acts(raw1, raw2, targets[0])
        if self._is_dec_line(raw2) and raw1.internal:
            return self._glue_dual_acts(raw1, raw2, subset[0], label_slot)
        tagged = [("L", o) for o in raw1.odd_order] + \
                 [("R", o) for o in raw2.odd_order]
        to_remove = []
        for u, target in zip(subset, targets):
            label = next(c for (v, c) in raw1.decorations
                         if v == u and is_label(c))
            if odd_code(label):
                to_remove.append(("L", ("d", label_slot[u])))
            if target[0] == "dec" and odd_code(raw2.decorations[target[1]][1]):
                to_remove.append(("R", ("d", target[1])))
        sign, remaining = removal_sign(tuple(tagged), to_remove)
        result = self._merge(raw1, raw2, subset, targets, label_slot, remaining)
        if result is None:
            return None
        return result, sign

    @staticmethod
    def _is_dec_line(raw):
        return raw.internal == 0 and not raw.edges and raw.ext == 1

    def _glue_line_acts(self, line, raw2, target):
        """A decoration-to-label line substitutes q -> p, in place."""
        p = next(c for (_, c) in line.decorations if not is_label(c))
        sign = 1
        odd = raw2.odd_order
        decs = list(raw2.decorations)
        if target[0] == "dec":
            i = target[1]
            q = decs[i][1]
            decs[i] = (decs[i][0], p)
            new_idx = i
            if odd_code(q) and not odd_code(p):
                s, odd = removal_sign(odd, [("d", i)])
                sign *= s
            elif not odd_code(q) and odd_code(p):
                odd = tuple(odd) + (("d", i),)
        else:
            decs.append((target[1], p))
            new_idx = len(raw2.decorations)
            if odd_code(p):
                odd = tuple(odd) + (("d", new_idx),)
        g = RawGraph(self.genus, raw2.vertices, raw2.edges, tuple(decs),
                     tuple(odd), raw2.ext)
        return g, sign

    def _glue_dual_acts(self, raw1, line, u, label_slot):
        """A hair relabels through a decoration-to-label line, in place.

        This is the adjoint of the decoration action on the label side; an
        odd operator (a parity-changing substitution) contributes the
        Koszul sign of moving it past the graph, cancelling the bracket's
        prefactor so that the combined contribution matches the action.
        """
        p = next(c for (_, c) in line.decorations if not is_label(c))
        new_label = next(c for (_, c) in line.decorations if is_label(c))
        i = label_slot[u]
        old_label = raw1.decorations[i][1]
        sign = 1
        odd = raw1.odd_order
        decs = list(raw1.decorations)
        decs[i] = (decs[i][0], new_label)
        from .graphs import hair_degree
        if (odd_code(old_label) != odd_code(new_label)) \
                and (degree_hairy(raw1) + hair_degree(old_label)) % 2:
            sign = -sign
        if odd_code(old_label) and not odd_code(new_label):
            s, odd = removal_sign(odd, [("d", i)])
            sign *= s
        elif not odd_code(old_label) and odd_code(new_label):
            odd = tuple(odd) + (("d", i),)
        g = RawGraph(self.genus, raw1.vertices, raw1.edges, tuple(decs),
                     tuple(odd), raw1.ext)
        return g, sign

    def _merge(self, raw1, raw2, subset, targets, label_slot, remaining):
        """Assemble the merged graph and rename the surviving odd slots."""
        # vertex map: internals(1), internals(2), surviving ext(1), ext(2)
        i1, i2 = raw1.internal, raw2.internal
        e1 = raw1.ext - len(subset)
        vmap1 = {}
        pos = i1 + i2
        for v in range(raw1.internal):
            vmap1[v] = v
        for v in range(raw1.internal, raw1.vertices):
            if v not in subset:
                vmap1[v] = pos
                pos += 1
        vmap2 = {}
        for v in range(i2):
            vmap2[v] = v + i1
        for v in range(i2, raw2.vertices):
            vmap2[v] = v + i1 + e1
        for u, target in zip(subset, targets):
            tv = target[1] if target[0] == "unit" else \
                raw2.decorations[target[1]][0]
            vmap1[u] = vmap2[tv]

        consumed_labels = {label_slot[u] for u in subset}
        consumed_decs = {t[1] for t in targets if t[0] == "dec"}
        edges = [tuple(sorted((vmap1[a], vmap1[b]))) for (a, b) in raw1.edges]
        k1 = len(edges)
        edges += [tuple(sorted((vmap2[a], vmap2[b]))) for (a, b) in raw2.edges]
        decs = []
        dec_map = {}
        for i, (v, c) in enumerate(raw1.decorations):
            if i in consumed_labels:
                continue
            dec_map[("L", i)] = len(decs)
            decs.append((vmap1[v], c))
        for i, (v, c) in enumerate(raw2.decorations):
            if i in consumed_decs:
                continue
            dec_map[("R", i)] = len(decs)
            decs.append((vmap2[v], c))
        odd = []
        for side, (kind, i) in remaining:
            if kind == "e":
                odd.append(("e", i if side == "L" else i + k1))
            else:
                odd.append(("d", dec_map[(side, i)]))
        ext = e1 + raw2.ext
        g = RawGraph(self.genus, i1 + i2 + ext, tuple(edges), tuple(decs),
                     tuple(odd), ext)
        return g if g.ext else None

    # -- Lie bracket and Maurer-Cartan elements ------------------------------

    def bracket(self, vec1, vec2):
        if vec1.is_zero() or vec2.is_zero():
            return self.zero()
        s = (-1) ** (vec1.degree * vec2.degree)
        return self.prelie(vec1, vec2) - self.prelie(vec2, vec1).scale(s)

    def m2(self):
        """The Maurer-Cartan element with no internal vertices.

        The top label against the unit label, minus one line per handle;
        the relative sign mirrors the surface pairing, which the Kronecker
        evaluation of the gluing cannot see on its own.
        """
        if self._m2 is not None:
            return self._m2
        terms = [(label_line_graph(self.genus, "dw", "d1"), 1)]
        for i in range(1, self.genus + 1):
            terms.append((label_line_graph(self.genus, f"da{i}", f"db{i}"), -1))
        self._m2 = self._finish(terms)
        return self._m2

    def F1(self, gc_vec):
        """Image of a graph-complex element: decorations become hairs.

        Pairing against the one-hair lines: each decoration is traded for
        the hair whose label pairs with it, and every implicit unit
        yields a top-class hair.  The new hair edge and new label slot
        append to the orientation order, clearing the splitting edge.
        """
        raw_terms = []
        pair_rule = {}
        for i in range(1, self.genus + 1):
            pair_rule[f"a{i}"] = (f"db{i}", -1)
            pair_rule[f"b{i}"] = (f"da{i}", 1)
        pair_rule["w"] = ("d1", 1)
        for cls, coeff in gc_vec:
            raw = cls.raw
            for i, (v, code) in enumerate(raw.decorations):
                if is_label(code):
                    continue
                label, pc = pair_rule[code]
                sign = 1
                odd = raw.odd_order
                if odd_code(code):
                    sign, odd = removal_sign(odd, [("d", i)])
                keep = [k for k in range(len(raw.decorations)) if k != i]
                remap = {old: new for new, old in enumerate(keep)}
                decs = tuple(raw.decorations[k] for k in keep)
                raw_terms.append(self._with_new_hair(
                    raw, v, label, decs, odd, remap, coeff * pc * sign))
            for v in range(raw.internal):
                remap = {k: k for k in range(len(raw.decorations))}
                raw_terms.append(self._with_new_hair(
                    raw, v, "dw", raw.decorations, raw.odd_order, remap, coeff))
        return self._finish(raw_terms)

    def _with_new_hair(self, raw, v, label, decs, odd, dec_remap, coeff):
        u = raw.vertices  # new external vertex, naturally last
        edges = raw.edges + ((v, u),)
        decs = decs + ((u, label),)
        new_odd = tuple(("d", dec_remap[i]) if kind == "d" else (kind, i)
                        for kind, i in odd)
        new_odd = (("e", len(raw.edges)),) + new_odd
        if odd_code(label):
            new_odd = new_odd + (("d", len(decs) - 1),)
        g = RawGraph(raw.genus, raw.vertices + 1, edges, decs, new_odd,
                     raw.ext + 1)
        return g, coeff

    def m1(self):
        """The one-vertex Maurer-Cartan element, the image of the graph one."""
        if self._m1 is None:
            self._m1 = self.F1(self.gc.z())
        return self._m1

    def m(self):
        return self.m1() + self.m2()

    def F2(self, sigma):
        """Image of a transformation: decoration-to-label lines."""
        raw_terms = []
        for coeff, p, q in sigma.terms:
            if p == "1":
                raise ValueError("the unit is never in the image")
            raw_terms.append((line_graph(self.genus, p, hair_code_for(q)),
                              coeff))
        return self._finish(raw_terms)

    def F(self, sigma, gc_vec):
        out = self.zero()
        if sigma is not None and sigma.terms:
            out = out + self.F2(sigma)
        if not gc_vec.is_zero():
            out = out + self.F1(gc_vec)
        return out

    def bracket0(self, vec1, vec2):
        """Graded commutator of the prefactor-free gluing.

        The comparison map intertwines the one-vertex twist bracket in
        this convention: the image of the twist bracket on the graph
        complex side is exactly this commutator against the one-vertex
        Maurer-Cartan element.
        """
        if vec1.is_zero() or vec2.is_zero():
            return self.zero()
        d1, d2 = vec1.degree, vec2.degree
        return self.prelie(vec1, vec2).scale((-1) ** (d2 + 1)) \
            - self.prelie(vec2, vec1).scale((-1) ** (d1 * d2 + d1 + 1))

    def twisted_diff(self, vec):
        """The differential of the twisted hairy complex.

        In this package's orientation conventions the comparison map from
        the extended graph complex anticommutes with the plain splitting
        differential, and the one-vertex twist enters through the
        unshifted commutator; the twisted differential making the
        comparison map a chain map is therefore

            d(X) = -d_split(X) + [m2, X] + [m1, X]_0 .
        """
        if vec.is_zero():
            return vec
        return self.d_split(vec).scale(-1) + self.bracket(self.m2(), vec) \
            + self.bracket0(self.m1(), vec)
