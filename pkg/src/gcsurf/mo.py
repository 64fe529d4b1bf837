"""The Bezrukavnikov-type dg commutative algebra of labelled configurations.

Generators (arity r, genus g): symmetric edge symbols w(i,j) of degree
one, one-cycle symbols a(l,i), b(l,i) of degree one, and top symbols
nu(i) of degree two.  Relations identify a(l,i)b(l,i) with nu(i), make
decorations slide along edges, and impose the three-term edge relation
on triangles.  The quotient is realized per degree by exact linear
algebra on monomials (the relation set is not confluent as a rewriting
system, so reduction goes through an echelon).

The differential vanishes on everything except the edge symbols, whose
boundary is the diagonal class; the pairing with the braid-type Lie
algebra of the surface is checked to be a Maurer-Cartan element
block by block.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .freelie import el_add, el_scale, free_bracket, gen_el, t_g
from .linalg import IncrementalEchelon


class MoAlgebra:
    """Mo_(g)(r), or its unframed genus-one quotient (no diagonal edges)."""

    def __init__(self, r, genus, framed=True, identify_ab_nu=True,
                 max_degree=4):
        self.r = r
        self.genus = genus
        self.framed = framed
        self.identify_ab_nu = identify_ab_nu
        self.max_degree = max_degree
        self.odd = []   # degree-1 generator names
        self.even = []  # degree-2 generator names
        for i in range(1, r + 1):
            for j in range(i if framed else i + 1, r + 1):
                self.odd.append(f"w({i},{j})")
        for i in range(1, r + 1):
            for l in range(1, genus + 1):
                self.odd.append(f"a({l},{i})")
                self.odd.append(f"b({l},{i})")
        for i in range(1, r + 1):
            self.even.append(f"nu({i})")
        self._odd_index = {n: k for k, n in enumerate(self.odd)}
        self._monomials = {}
        self._echelon = {}
        self._quotient = {}
        for d in range(0, max_degree + 1):
            self._monomials[d] = self._gen_monomials(d)
        self._reduce_setup()

    # -- monomials ---------------------------------------------------------
    # A monomial is (odd_tuple, even_tuple): sorted distinct odd generator
    # names, sorted (repeatable) even names.

    def _gen_monomials(self, degree):
        out = []
        for k in range(0, degree + 1):
            e = degree - k
            if e % 2:
                continue
            n_even = e // 2
            for odd_part in itertools.combinations(self.odd, k):
                for even_part in itertools.combinations_with_replacement(
                        self.even, n_even):
                    out.append((odd_part, even_part))
        return out

    def monomial(self, *names):
        """Element from generator names, normal-ordered with its sign."""
        odd = [n for n in names if not n.startswith("nu")]
        even = sorted(n for n in names if n.startswith("nu"))
        sign = _sort_sign(odd, self._odd_index)
        if sign == 0:
            return {}
        mono = (tuple(sorted(odd, key=self._odd_index.get)), tuple(even))
        return {mono: Fraction(sign)}

    def degree(self, mono):
        return len(mono[0]) + 2 * len(mono[1])

    def _mult_mono(self, m1, m2):
        odd = list(m1[0]) + list(m2[0])
        if len(set(odd)) != len(odd):
            return None, 0
        sign = _sort_sign(odd, self._odd_index)
        mono = (tuple(sorted(odd, key=self._odd_index.get)),
                tuple(sorted(m1[1] + m2[1])))
        return mono, sign

    def mult(self, u, v, reduce=True):
        out = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                mono, sign = self._mult_mono(m1, m2)
                if sign == 0:
                    continue
                s = out.get(mono, Fraction(0)) + c1 * c2 * sign
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return self.reduce(out) if reduce else out

    # -- relations ----------------------------------------------------------

    def _relations(self):
        rels = []
        strands = range(1, self.r + 1)
        layers = range(1, self.genus + 1)
        W = lambda i, j: self.monomial(f"w({min(i, j)},{max(i, j)})")
        A = lambda l, i: self.monomial(f"a({l},{i})")
        B = lambda l, i: self.monomial(f"b({l},{i})")
        NU = lambda i: self.monomial(f"nu({i})")
        if self.identify_ab_nu:
            for i in strands:
                for l in layers:
                    rels.append(_add(self.mult(A(l, i), B(l, i), reduce=False),
                                     _neg(NU(i))))
        # the one-cycle classes of one strand multiply as in the surface
        # ring: mixed-layer products vanish
        for i in strands:
            for l, k in itertools.combinations(layers, 2):
                rels.append(self.mult(A(l, i), A(k, i), reduce=False))
                rels.append(self.mult(B(l, i), B(k, i), reduce=False))
                rels.append(self.mult(A(l, i), B(k, i), reduce=False))
                rels.append(self.mult(A(k, i), B(l, i), reduce=False))
        for i, j in itertools.permutations(strands, 2):
            if i < j:
                for l in layers:
                    rels.append(_add(
                        self.mult(A(l, i), W(i, j), reduce=False),
                        _neg(self.mult(A(l, j), W(i, j), reduce=False))))
                    rels.append(_add(
                        self.mult(B(l, i), W(i, j), reduce=False),
                        _neg(self.mult(B(l, j), W(i, j), reduce=False))))
        for i, j, k in itertools.combinations(strands, 3):
            rels.append(_add(_add(
                self.mult(W(i, j), W(j, k), reduce=False),
                self.mult(W(j, k), W(k, i), reduce=False)),
                self.mult(W(k, i), W(i, j), reduce=False)))
        return [r for r in rels if r]

    def _reduce_setup(self):
        index = {d: {m: k for k, m in enumerate(self._monomials[d])}
                 for d in self._monomials}
        self._index = index
        for d in self._monomials:
            self._echelon[d] = IncrementalEchelon()
        rels = self._relations()
        for d in range(0, self.max_degree + 1):
            ech = self._echelon[d]
            for rel in rels:
                rd = self.degree(next(iter(rel)))
                if rd > d:
                    continue
                # multiply the relation into degree d by all monomials
                comp = d - rd
                for mono in self._monomials[comp]:
                    prod = self.mult(rel, {mono: Fraction(1)}, reduce=False)
                    if prod:
                        ech.add({index[d][m]: c for m, c in prod.items()})
            pivots = set(ech.pivot_cols())
            self._quotient[d] = [m for k, m in enumerate(self._monomials[d])
                                 if k not in pivots]

    def reduce(self, el):
        """Normal form modulo the relation ideal (per degree)."""
        by_degree = {}
        for m, c in el.items():
            d = self.degree(m)
            if d > self.max_degree:
                raise ValueError(f"degree {d} exceeds the realized range "
                                 f"(max_degree={self.max_degree})")
            by_degree.setdefault(d, {})[m] = c
        out = {}
        for d, part in by_degree.items():
            vec = {self._index[d][m]: c for m, c in part.items()}
            red = self._echelon[d].project(vec)
            for k, c in red.items():
                if c:
                    out[self._monomials[d][k]] = c
        return out

    def is_zero(self, el):
        return not self.reduce(el)

    def basis(self, degree):
        return list(self._quotient.get(degree, []))

    def dim(self, degree):
        return len(self._quotient.get(degree, []))

    # -- differential ------------------------------------------------------

    def diff_generator(self, name):
        if not name.startswith("w("):
            return {}
        i, j = (int(s) for s in name[2:-1].split(","))
        if i == j:
            return _scale(self.monomial(f"nu({i})"), 2 - 2 * self.genus)
        out = _add(self.monomial(f"nu({i})"), self.monomial(f"nu({j})"))
        for l in range(1, self.genus + 1):
            out = _add(out, _neg(self.mult(self.monomial(f"a({l},{i})"),
                                           self.monomial(f"b({l},{j})"),
                                           reduce=False)))
            out = _add(out, self.mult(self.monomial(f"b({l},{i})"),
                                      self.monomial(f"a({l},{j})"),
                                      reduce=False))
        return out

    def diff(self, el, reduce=True):
        """Degree +1 derivation, zero on all generators but the edges."""
        out = {}
        for mono, coeff in el.items():
            odd, even = mono
            for pos, name in enumerate(odd):
                dgen = self.diff_generator(name)
                if not dgen:
                    continue
                rest = (odd[:pos] + odd[pos + 1:], even)
                sign = (-1) ** pos  # Koszul: cross the earlier odd letters
                for m2, c2 in self.mult({rest: Fraction(1)}, dgen,
                                        reduce=False).items():
                    s = out.get(m2, Fraction(0)) + coeff * c2 * sign
                    if s:
                        out[m2] = s
                    else:
                        out.pop(m2, None)
        return self.reduce(out) if reduce else out


def _sort_sign(names, index):
    """Sign of sorting distinct odd generators; 0 on repetition."""
    if len(set(names)) != len(names):
        return 0
    sign = 1
    arr = [index[n] for n in names]
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            if arr[i] > arr[j]:
                sign = -sign
    return sign


def _add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _neg(a):
    return {k: -v for k, v in a.items()}


def _scale(a, c):
    c = Fraction(c)
    return {k: c * v for k, v in a.items()} if c else {}


# ---------------------------------------------------------------------------
# the Maurer-Cartan pairing with the braid-type Lie algebra
# ---------------------------------------------------------------------------

def mc_element(mo, lie):
    """m_r = sum w(i,j) (x) t(i,j) + sum a (x) x + sum b (x) y.

    Returns a list of (monomial-element, Lie element) summands.
    """
    r, g = mo.r, mo.genus
    terms = []
    for i in range(1, r + 1):
        for j in range(i if mo.framed else i + 1, r + 1):
            terms.append((mo.monomial(f"w({i},{j})"),
                          lie.generator(f"t({i},{j})")))
    for i in range(1, r + 1):
        for l in range(1, g + 1):
            terms.append((mo.monomial(f"a({l},{i})"),
                          lie.generator(f"x({l},{i})")))
            terms.append((mo.monomial(f"b({l},{i})"),
                          lie.generator(f"y({l},{i})")))
    return terms


def mc_residual(mo, lie):
    """d m + (1/2)[m, m] in Mo (x) t, reduced on both sides.

    The result maps Mo quotient-basis monomials to reduced Lie elements;
    an empty dict certifies the Maurer-Cartan property in the truncation.
    """
    terms = mc_element(mo, lie)
    acc = {}

    def push(mono_el, lie_el):
        if not lie_el:
            return
        for mono, c in mo.reduce(mono_el).items():
            cur = acc.get(mono, {})
            acc[mono] = el_add(cur, lie_el, coeff=c)
            if not acc[mono]:
                del acc[mono]

    for u, X in terms:
        push(mo.diff(u, reduce=False), lie.reduce(X))
    for (u, X), (v, Y) in itertools.product(terms, repeat=2):
        br = lie.bracket(X, Y)
        if not br:
            continue
        push(_scale(mo.mult(u, v, reduce=False), Fraction(1, 2)), br)
    out = {}
    for mono, lie_el in acc.items():
        red = lie.reduce(lie_el)
        if red:
            out[mono] = red
    return out


def mc_check(r, genus, max_weight=4, framed=True, identify_ab_nu=True):
    """Residual report for the Maurer-Cartan pairing.

    Returns {"r", "g", "blocks": {degree,weight: residual_dim}, "ok"}.
    """
    mo = MoAlgebra(r, genus, framed=framed, identify_ab_nu=identify_ab_nu,
                   max_degree=3)
    lie = t_g(r, genus, max_weight)
    residual = mc_residual(mo, lie)
    blocks = {}
    for mono, lie_el in residual.items():
        d = mo.degree(mono)
        for word in lie_el:
            w = sum(gen.weight for gen in word)
            key = (d, w)
            blocks[key] = blocks.get(key, 0) + 1
    return {
        "r": r,
        "g": genus,
        "blocks": {f"[{d},{w}]": n for (d, w), n in sorted(blocks.items())},
        "ok": not residual,
    }
