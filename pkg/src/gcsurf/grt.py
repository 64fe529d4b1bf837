"""Derivation tuples and the higher-genus Grothendieck-Teichmueller solver.

A candidate element is a tuple (U_c), one component in the two-strand
braid-type algebra for every one-cycle class c, homogeneous of tuple
weight w (each component of weight w + 1).  The defining equation system
consists of the symmetrization-membership condition (the symmetrized
component descends from one strand), the coboundary-type condition in
three strands, and four families of bracket equations; the solution
space per weight is computed as an exact nullspace.  The subspace
spanned by tuples ([v^12, x_i], [v^12, y_i]) is the trivial part, and
the quotient is the Grothendieck-Teichmueller Lie algebra of the
surface.

The genus-one algebras run on the fibration tower (fast, validated
against the generic engine); genus two runs on the generic presented
quotients.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .freelie import (
    el_add,
    el_scale,
    free_bracket,
    gen_el,
    morphism_phi,
    standard_factorization,
    t_g,
    t_nonframed,
    word_weight,
)
from .linalg import IncrementalEchelon, SparseMatrix, dense_nullspace, nullspace_basis
from .tower import GenusOneTower, TowerElement


class NotInZ(Exception):
    pass


class SubspaceViolation(Exception):
    pass


# ---------------------------------------------------------------------------
# engine adapters: a uniform element API over the generic and tower models
# ---------------------------------------------------------------------------

class _GenericArity:
    def __init__(self, algebra):
        self.L = algebra

    def zero(self):
        return {}

    def add(self, a, b, coeff=1):
        return el_add(a, b, coeff=coeff)

    def scale(self, a, c):
        return el_scale(a, c)

    def bracket(self, a, b):
        return self.L.bracket(a, b)

    def is_zero(self, a):
        return self.L.is_zero(a)

    def generator(self, name):
        return self.L.generator(name)

    def dim(self, w):
        return self.L.dim(w)

    def coords(self, a, w):
        return self.L.coords(self.L.reduce(a), w)

    def basis_elements(self, w):
        return [{word: Fraction(1)} for word in self.L.basis_words(w)]


class _TowerArity:
    def __init__(self, tower):
        self.T = tower

    def zero(self):
        return TowerElement()

    def add(self, a, b, coeff=1):
        return a + b.scale(coeff)

    def scale(self, a, c):
        return a.scale(c)

    def bracket(self, a, b):
        return self.T.bracket(a, b)

    def is_zero(self, a):
        return a.is_zero()

    def generator(self, name):
        return self.T.generator(name)

    def dim(self, w):
        return self.T.dim(w)

    def coords(self, a, w):
        return self.T.coords(a, w)

    def basis_elements(self, w):
        out = []
        for label in self.T.basis(w):
            if label[0] == "c":
                out.append(TowerElement(central={label[1]: Fraction(1)}))
            else:
                level, word = label
                out.append(TowerElement({level: {word: Fraction(1)}}))
        return out


class GrtContext:
    """Fixed genus and framing; arities one to three at matched truncations.

    max_tuple_weight w means components live in weight w + 1 and the
    three-strand equations in weight up to w + 2.
    """

    def __init__(self, genus, framed, max_tuple_weight, engine=None):
        self.genus = genus
        self.framed = framed
        self.w_max = max_tuple_weight
        if engine is None:
            engine = "tower" if genus == 1 else "generic"
        self.engine = engine
        w1 = max_tuple_weight + 1
        if engine == "tower":
            if genus != 1:
                raise ValueError("the tower engine is genus-one only")
            self.arity = {
                1: _TowerArity(GenusOneTower(1, framed, w1)),
                2: _TowerArity(GenusOneTower(2, framed, w1 + 1)),
                3: _TowerArity(GenusOneTower(3, framed, w1 + 2)),
            }
        else:
            maker = (lambda n, w: t_g(n, genus, w)) if framed else \
                (lambda n, w: t_nonframed(n, w))
            self.arity = {
                1: _GenericArity(maker(1, w1)),
                2: _GenericArity(maker(2, w1 + 1)),
                3: _GenericArity(maker(3, w1 + 2)),
            }
        self.h1 = [(kind, i) for i in range(1, genus + 1) for kind in ("a", "b")]
        self._phi_cache = {}
        self._span12 = {}

    # -- generators ----------------------------------------------------------

    def z_gen(self, arity, c, strand):
        """The one-cycle generator matching the class c on the strand."""
        kind, i = c
        letter = "x" if kind == "a" else "y"
        if self.engine == "tower":
            return self.arity[arity].generator(f"{letter}({strand})")
        return self.arity[arity].generator(f"{letter}({i},{strand})")

    # -- index maps ----------------------------------------------------------

    def apply_phi(self, el, phi, src_arity, dst_arity):
        key = (tuple(sorted(phi.items())), src_arity, dst_arity)
        # tower engine: evaluate generator images recursively
        if self.engine == "tower":
            return self._tower_phi(el, phi, src_arity, dst_arity)
        morph = self._phi_cache.get(key)
        if morph is None:
            morph = morphism_phi(self.arity[src_arity].L,
                                 self.arity[dst_arity].L, phi,
                                 check_relations=False)
            self._phi_cache[key] = morph
        return morph(el)

    def _tower_phi(self, el, phi, src_arity, dst_arity):
        src = self.arity[src_arity].T
        dst = self.arity[dst_arity].T
        preimage = {}
        for s, d in phi.items():
            preimage.setdefault(d, []).append(s)

        def gen_image(kind, data):
            if kind in ("x", "y"):
                out = TowerElement()
                for ip in preimage.get(data, []):
                    out = out + (dst.x(ip) if kind == "x" else dst.y(ip))
                return out
            if kind == "t":
                i, j = data
                out = TowerElement()
                if i != j:
                    for ip in preimage.get(i, []):
                        for jp in preimage.get(j, []):
                            out = out + dst.t(ip, jp)
                else:
                    pre = sorted(preimage.get(i, []))
                    for ip in pre:
                        out = out + dst.t(ip, ip)
                    for ip, jp in itertools.combinations(pre, 2):
                        out = out + dst.t(ip, jp)
                return out
            raise ValueError(kind)

        def letter_image(level, letter):
            k = src._kind(level, letter)
            if k[0] in ("x", "y"):
                return gen_image(k[0], level)
            return gen_image("t", (k[1], level))

        def word_image(level, word):
            if len(word) == 1:
                return letter_image(level, word[0])
            from .tower import _std_fact_cached
            w1, w2 = _std_fact_cached(word)
            return dst.bracket(word_image(level, w1), word_image(level, w2))

        out = TowerElement()
        for level, part in el.levels.items():
            for word, c in part.items():
                out = out + word_image(level, word).scale(c)
        for i, c in el.central.items():
            out = out + gen_image("t", (i, i)).scale(c)
        return out

    def promote12(self, el):
        """u -> u^{12}: one strand doubled into two."""
        return self.apply_phi(el, {1: 1, 2: 1}, 1, 2)

    def u_12_3(self, el):
        return self.apply_phi(el, {1: 1, 2: 1, 3: 2}, 2, 3)

    def u_1_23(self, el):
        return self.apply_phi(el, {1: 1, 2: 2, 3: 2}, 2, 3)

    def u_2_13(self, el):
        return self.apply_phi(el, {1: 2, 2: 1, 3: 2}, 2, 3)

    def u_3_12(self, el):
        return self.apply_phi(el, {1: 2, 2: 2, 3: 1}, 2, 3)

    def swap(self, el):
        return self.apply_phi(el, {1: 2, 2: 1}, 2, 2)

    def span12(self, weight):
        """Echelon of the strand-doubling image inside two strands."""
        ech = self._span12.get(weight)
        if ech is None:
            ech = IncrementalEchelon()
            a1, a2 = self.arity[1], self.arity[2]
            for e in a1.basis_elements(weight):
                vec = a2.coords(self.promote12(e), weight)
                if vec:
                    ech.add(vec)
            self._span12[weight] = ech
        return ech


# ---------------------------------------------------------------------------
# derivation tuples
# ---------------------------------------------------------------------------

class DerivationTuple:
    """Components U_c in the two-strand algebra, one per one-cycle class."""

    def __init__(self, ctx, components, weight):
        self.ctx = ctx
        self.weight = weight
        a2 = ctx.arity[2]
        self.components = {c: components.get(c, a2.zero()) for c in ctx.h1}

    def is_zero(self):
        a2 = self.ctx.arity[2]
        return all(a2.is_zero(v) for v in self.components.values())

    def add(self, other, coeff=1):
        a2 = self.ctx.arity[2]
        return DerivationTuple(self.ctx, {
            c: a2.add(self.components[c], other.components[c], coeff)
            for c in self.ctx.h1}, self.weight)

    def scale(self, coeff):
        a2 = self.ctx.arity[2]
        return DerivationTuple(self.ctx, {
            c: a2.scale(self.components[c], coeff)
            for c in self.ctx.h1}, self.weight)

    def coords(self):
        """Flat coordinates over (class, basis index of weight w+1)."""
        a2 = self.ctx.arity[2]
        w = self.weight + 1
        dim = a2.dim(w)
        out = {}
        for k, c in enumerate(self.ctx.h1):
            for i, val in a2.coords(self.components[c], w).items():
                out[k * dim + i] = val
        return out


def tuple_from_coords(ctx, vec, weight):
    a2 = ctx.arity[2]
    w = weight + 1
    basis = a2.basis_elements(w)
    dim = len(basis)
    comps = {}
    for k, c in enumerate(ctx.h1):
        el = a2.zero()
        for i in range(dim):
            coeff = vec.get(k * dim + i)
            if coeff:
                el = a2.add(el, basis[i], coeff)
        comps[c] = el
    return DerivationTuple(ctx, comps, weight)


# ---------------------------------------------------------------------------
# the defining equations
# ---------------------------------------------------------------------------

def zg_residuals(U):
    """All residual blocks of the defining equation system.

    Returns a list of (tag, arity, weight, element); the tuple lies in
    the solution space exactly when every element vanishes.  The
    existential condition on the symmetrization is evaluated as the
    projection onto a complement of the strand-doubling image.
    """
    ctx = U.ctx
    a2, a3 = ctx.arity[2], ctx.arity[3]
    w1 = U.weight + 1
    out = []
    span = ctx.span12(w1)
    for c in ctx.h1:
        Uc = U.components[c]
        sym = a2.add(Uc, ctx.swap(Uc))
        residual = span.reduce(a2.coords(sym, w1))
        out.append((f"sym[{c[0]}{c[1]}]", 2, w1, residual))
        coc = a3.add(a3.add(ctx.u_12_3(Uc), ctx.u_1_23(Uc), -1),
                     ctx.u_2_13(Uc), -1)
        out.append((f"cocycle[{c[0]}{c[1]}]", 3, w1, coc))
    g = ctx.genus
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            r = a3.add(
                a3.bracket(ctx.u_1_23(U.components[("a", i)]),
                           ctx.z_gen(3, ("b", j), 2)),
                a3.bracket(ctx.u_2_13(U.components[("b", j)]),
                           ctx.z_gen(3, ("a", i), 1)), -1)
            out.append((f"xy[{i},{j}]", 3, w1 + 1, r))
    for i in range(1, g + 1):
        for j in range(i, g + 1):
            r = a3.add(
                a3.bracket(ctx.u_1_23(U.components[("a", i)]),
                           ctx.z_gen(3, ("a", j), 2)),
                a3.bracket(ctx.u_2_13(U.components[("a", j)]),
                           ctx.z_gen(3, ("a", i), 1)), -1)
            out.append((f"xx[{i},{j}]", 3, w1 + 1, r))
            r = a3.add(
                a3.bracket(ctx.u_1_23(U.components[("b", i)]),
                           ctx.z_gen(3, ("b", j), 2)),
                a3.bracket(ctx.u_2_13(U.components[("b", j)]),
                           ctx.z_gen(3, ("b", i), 1)), -1)
            out.append((f"yy[{i},{j}]", 3, w1 + 1, r))
    total = a3.zero()
    for i in range(1, g + 1):
        total = a3.add(total, a3.bracket(ctx.u_1_23(U.components[("a", i)]),
                                         ctx.z_gen(3, ("b", i), 1)))
        total = a3.add(total, a3.bracket(ctx.u_1_23(U.components[("b", i)]),
                                         ctx.z_gen(3, ("a", i), 1)), -1)
    out.append(("defect", 3, w1 + 1, total))
    return out


def rell_residuals(U):
    """The six-equation genus-one non-framed form (cyclic conditions)."""
    ctx = U.ctx
    if ctx.genus != 1 or ctx.framed:
        raise ValueError("the cyclic form is the non-framed genus-one system")
    a3 = ctx.arity[3]
    w1 = U.weight + 1
    Ua, Ub = U.components[("a", 1)], U.components[("b", 1)]
    x = lambda s: ctx.z_gen(3, ("a", 1), s)
    y = lambda s: ctx.z_gen(3, ("b", 1), s)
    out = []
    for tag, Uc in (("a", Ua), ("b", Ub)):
        cyc = a3.add(a3.add(ctx.u_1_23(Uc), ctx.u_2_13(Uc)), ctx.u_3_12(Uc))
        out.append((f"cyclic[{tag}]", 3, w1, cyc))
    out.append(("xy", 3, w1 + 1,
                a3.add(a3.bracket(ctx.u_1_23(Ua), y(2)),
                       a3.bracket(ctx.u_2_13(Ub), x(1)), -1)))
    out.append(("xx", 3, w1 + 1,
                a3.add(a3.bracket(ctx.u_1_23(Ua), x(2)),
                       a3.bracket(ctx.u_2_13(Ua), x(1)), -1)))
    out.append(("yy", 3, w1 + 1,
                a3.add(a3.bracket(ctx.u_1_23(Ub), y(2)),
                       a3.bracket(ctx.u_2_13(Ub), y(1)), -1)))
    out.append(("defect", 3, w1 + 1,
                a3.add(a3.bracket(ctx.u_1_23(Ua), y(1)),
                       a3.bracket(ctx.u_1_23(Ub), x(1)), -1)))
    return out


def residuals_vanish(residuals, ctx):
    for tag, arity, w, el in residuals:
        if isinstance(el, dict) and arity == 2:
            if el:
                return False
        elif not ctx.arity[arity].is_zero(el):
            return False
    return True


def _residual_vector(residuals, ctx):
    """Stacked exact coordinates of all residual blocks."""
    out = {}
    offset = 0
    for tag, arity, w, el in residuals:
        if isinstance(el, dict) and arity == 2:
            coords = el  # already complement coordinates
            size = ctx.arity[2].dim(w)
        else:
            coords = ctx.arity[arity].coords(el, w)
            size = ctx.arity[arity].dim(w)
        for i, c in coords.items():
            out[offset + i] = c
        offset += size
    return out, offset


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

def zg_solve(ctx, weight, residual_fn=None, dense=False):
    """Basis of the solution space of the defining equations at one weight.

    Assembles the residual map on the standard tuple basis and returns
    its exact nullspace as a list of DerivationTuples.  With dense=True
    the nullspace goes through the independent dense pipeline.
    """
    if residual_fn is None:
        residual_fn = zg_residuals
    a2 = ctx.arity[2]
    dim = a2.dim(weight + 1)
    unknowns = len(ctx.h1) * dim
    if unknowns == 0:
        return []
    columns = []
    basis = a2.basis_elements(weight + 1)
    for k, c in enumerate(ctx.h1):
        for e in basis:
            U = DerivationTuple(ctx, {c: e}, weight)
            vec, total = _residual_vector(residual_fn(U), ctx)
            columns.append(vec)
    rows = {}
    for j, col in enumerate(columns):
        for i, val in col.items():
            rows.setdefault(i, {})[j] = val
    if dense:
        dense_rows = []
        for i in sorted(rows):
            row = [Fraction(0)] * unknowns
            for j, v in rows[i].items():
                row[j] = v
            dense_rows.append(row)
        kernel = [
            {j: v for j, v in enumerate(vec) if v}
            for vec in dense_nullspace(dense_rows, unknowns)
        ]
    else:
        matrix = SparseMatrix.from_rows([rows[i] for i in sorted(rows)],
                                        cols=unknowns)
        kernel = nullspace_basis(matrix)
    return [tuple_from_coords(ctx, vec, weight) for vec in kernel]


def bg_basis(ctx, weight):
    """Basis of the trivial subspace: tuples [v^{12}, one-cycle generators].

    A one-strand element of weight w produces a tuple of weight w (its
    components gain one from the bracketed generator).
    """
    a1, a2 = ctx.arity[1], ctx.arity[2]
    out = []
    ech = IncrementalEchelon()
    for v in a1.basis_elements(weight):
        v12 = ctx.promote12(v)
        comps = {}
        for c in ctx.h1:
            comps[c] = a2.bracket(v12, ctx.z_gen(2, c, 1))
        U = DerivationTuple(ctx, comps, weight)
        if U.is_zero():
            continue
        if ech.add(U.coords()):
            out.append(U)
    return out


def in_tuple_span(U, tuples):
    ech = IncrementalEchelon()
    for T in tuples:
        ech.add(T.coords())
    return ech.contains(U.coords())


def rg_dim(ctx, weight, check_subspace=True):
    """dim Z - dim B at one weight, asserting B inside Z."""
    Z = zg_solve(ctx, weight)
    B = bg_basis(ctx, weight)
    if check_subspace:
        for T in B:
            if not residuals_vanish(zg_residuals(T), ctx):
                raise SubspaceViolation("a trivial tuple fails the equations")
    return {"weight": weight, "dim_Z": len(Z), "dim_B": len(B),
            "dim_r": len(Z) - len(B)}


# ---------------------------------------------------------------------------
# the induced derivations and the bracket
# ---------------------------------------------------------------------------

def _derive_generic(ctx, U, el):
    """Apply the induced two-strand derivation to a generic element."""
    L = ctx.arity[2].L

    def image_of_letter(g):
        name = g.name
        if name.startswith("t("):
            return {}
        head = name[0]
        nums = [int(s) for s in name[name.index("(") + 1:-1].split(",")]
        layer, strand = nums
        c = ("a", layer) if head == "x" else ("b", layer)
        comp = U.components[c]
        return comp if strand == 1 else ctx.swap(comp)

    def derive_word(word):
        if len(word) == 1:
            return image_of_letter(word[0])
        w1, w2 = standard_factorization(word)
        left = derive_word(w1)
        right = derive_word(w2)
        out = L.bracket(left, {w2: Fraction(1)}) if left else {}
        if right:
            out = el_add(out, L.bracket({w1: Fraction(1)}, right))
        return out

    out = {}
    for word, c in L.reduce(el).items():
        out = el_add(out, derive_word(word), coeff=c)
    return L.reduce(out)


def _derive_tower(ctx, U, el):
    T = ctx.arity[2].T

    def image_of_letter(level, letter):
        kind = T._kind(level, letter)
        if kind[0] == "t":
            return TowerElement()
        c = ("a", 1) if kind[0] == "x" else ("b", 1)
        comp = U.components[c]
        return comp if level == 1 else ctx.swap(comp)

    from .tower import _std_fact_cached

    def derive_word(level, word):
        if len(word) == 1:
            return image_of_letter(level, word[0])
        w1, w2 = _std_fact_cached(word)
        left = derive_word(level, w1)
        right = derive_word(level, w2)
        out = T.bracket(left, TowerElement({level: {w2: Fraction(1)}}))
        out = out + T.bracket(TowerElement({level: {w1: Fraction(1)}}), right)
        return out

    out = TowerElement()
    for level, part in el.levels.items():
        for word, c in part.items():
            out = out + derive_word(level, word).scale(c)
    return out  # centrals map to zero


def apply_derivation(U, el):
    ctx = U.ctx
    if ctx.engine == "tower":
        return _derive_tower(ctx, U, el)
    return _derive_generic(ctx, U, el)


def grt_bracket(U, V, check=False):
    """{U, V}_c = U(V_c) - V(U_c), the commutator of induced derivations."""
    ctx = U.ctx
    a2 = ctx.arity[2]
    if check:
        for T in (U, V):
            if not residuals_vanish(zg_residuals(T), ctx):
                raise NotInZ("bracket arguments must solve the equations")
    comps = {}
    for c in ctx.h1:
        comps[c] = a2.add(apply_derivation(U, V.components[c]),
                          apply_derivation(V, U.components[c]), -1)
    return DerivationTuple(ctx, comps, U.weight + V.weight)


# ---------------------------------------------------------------------------
# distinguished elements
# ---------------------------------------------------------------------------

def sl2_tuples(ctx):
    """H = (x, -y), E = (0, x), F = (y, 0) in genus one."""
    if ctx.genus != 1:
        raise ValueError("the sl2 triple lives in genus one")
    x = ctx.z_gen(2, ("a", 1), 1)
    y = ctx.z_gen(2, ("b", 1), 1)
    a2 = ctx.arity[2]
    H = DerivationTuple(ctx, {("a", 1): x, ("b", 1): a2.scale(y, -1)}, 0)
    E = DerivationTuple(ctx, {("b", 1): x}, 0)
    F = DerivationTuple(ctx, {("a", 1): y}, 0)
    return H, E, F


def _pair_h1(c1, c2):
    """<.,.> on one-cycle classes: <a_i, b_i> = -1, <b_i, a_i> = +1."""
    if c1[1] != c2[1]:
        return 0
    if c1[0] == "a" and c2[0] == "b":
        return -1
    if c1[0] == "b" and c2[0] == "a":
        return 1
    return 0


def _dual_h1(c):
    return ("b" if c[0] == "a" else "a", c[1])


def tripod_tuple(ctx, alpha, beta, gamma):
    """The derivation tuple of a one-vertex three-decoration class.

    Components sit at the duals of the three classes; each value brackets
    the other two one-cycle generators and adds twice the diagonal braid
    generator weighted by their pairing.
    """
    if len({alpha, beta, gamma}) != 3:
        raise ValueError("tripod classes must be distinct")
    a2 = ctx.arity[2]

    def z1(c):
        return ctx.z_gen(2, c, 1)

    def t11():
        if ctx.engine == "tower":
            return ctx.arity[2].T.t(1, 1)
        return ctx.arity[2].generator("t(1,1)")

    def value(u, v, pair_uv):
        out = a2.bracket(z1(u), z1(v))
        if pair_uv:
            out = a2.add(out, a2.scale(t11(), 2 * pair_uv))
        return out

    comps = {}
    comps[_dual_h1(alpha)] = a2.scale(value(beta, gamma, _pair_h1(beta, gamma)),
                                      -_pair_h1(alpha, _dual_h1(alpha)))
    comps[_dual_h1(beta)] = a2.scale(value(alpha, gamma, _pair_h1(alpha, gamma)),
                                     _pair_h1(beta, _dual_h1(beta)))
    comps[_dual_h1(gamma)] = a2.scale(value(alpha, beta, _pair_h1(alpha, beta)),
                                      -_pair_h1(gamma, _dual_h1(gamma)))
    return DerivationTuple(ctx, comps, 1)


def a_j_tuple(ctx, j):
    out = None
    for i in range(1, ctx.genus + 1):
        if i == j:
            continue
        t = tripod_tuple(ctx, ("a", i), ("b", i), ("a", j))
        out = t if out is None else out.add(t)
    return out


def b_j_tuple(ctx, j):
    out = None
    for i in range(1, ctx.genus + 1):
        if i == j:
            continue
        t = tripod_tuple(ctx, ("a", i), ("b", i), ("b", j))
        out = t if out is None else out.add(t)
    return out


def sp0_image(ctx, sigma_name, i, j=None):
    """Images of the degree-zero transformations per the displayed tuples.

    sigma_name in {"a_db", "b_da", "a_da-b_db", "a_db+a_db", "b_da+b_da"};
    indices i (and j for the mixed families).
    """
    a2 = ctx.arity[2]
    x = lambda k: ctx.z_gen(2, ("a", k), 1)
    y = lambda k: ctx.z_gen(2, ("b", k), 1)
    comps = {}
    if sigma_name == "a_db":          # alpha_i d_beta_i
        comps[("b", i)] = x(i)
    elif sigma_name == "b_da":        # beta_i d_alpha_i
        comps[("a", i)] = y(i)
    elif sigma_name == "a_da-b_db":   # alpha_i d_alpha_j - beta_j d_beta_i
        comps[("a", j)] = x(i)
        comps[("b", i)] = a2.scale(y(j), -1)
    elif sigma_name == "a_db+a_db":   # alpha_i d_beta_j + alpha_j d_beta_i
        comps[("b", j)] = x(i)
        comps[("b", i)] = x(j)
    elif sigma_name == "b_da+b_da":   # beta_i d_alpha_j + beta_j d_alpha_i
        comps[("a", j)] = y(i)
        comps[("a", i)] = y(j)
    else:
        raise ValueError(sigma_name)
    return DerivationTuple(ctx, comps, 0)


def sp0_images(ctx):
    g = ctx.genus
    out = {}
    for i in range(1, g + 1):
        out[f"a{i}.d_b{i}"] = sp0_image(ctx, "a_db", i)
        out[f"b{i}.d_a{i}"] = sp0_image(ctx, "b_da", i)
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            out[f"a{i}.d_a{j}-b{j}.d_b{i}"] = sp0_image(ctx, "a_da-b_db", i, j)
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            out[f"a{i}.d_b{j}+a{j}.d_b{i}"] = sp0_image(ctx, "a_db+a_db", i, j)
            out[f"b{i}.d_a{j}+b{j}.d_a{i}"] = sp0_image(ctx, "b_da+b_da", i, j)
    return out


def delta_tuple(ctx, n):
    """The conjectural generator of even weight 2n in the non-framed case.

    Components (ad_x)^{2n+2}(y) and half the convolution of the lower
    iterates, written on the first strand.
    """
    if ctx.genus != 1 or ctx.framed:
        raise ValueError("delta generators live in the non-framed genus one")
    a2 = ctx.arity[2]
    x = ctx.z_gen(2, ("a", 1), 1)
    y = ctx.z_gen(2, ("b", 1), 1)
    ad = [y]
    for _ in range(2 * n + 2):
        ad.append(a2.bracket(x, ad[-1]))
    Ua = ad[2 * n + 2]
    # alternating convolution over p + q = 2n + 1; the halved full-range
    # alternating sum equals the ordered sum below, and the defining
    # equations pin this as the unique partner of the x-component
    Ub = a2.zero()
    for p in range(0, n + 1):
        q = 2 * n + 1 - p
        Ub = a2.add(Ub, a2.bracket(ad[p], ad[q]), coeff=(-1) ** p)
    return DerivationTuple(ctx, {("a", 1): Ua, ("b", 1): Ub}, 2 * n + 2)
