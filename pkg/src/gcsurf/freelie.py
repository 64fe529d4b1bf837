"""Weight-truncated free Lie algebras and presented quotients.

Free Lie algebras are realized on Lyndon-word bases over a weighted,
totally ordered alphabet of named generators.  Brackets of basis words
rewrite recursively through the standard factorization; presented
quotients are computed weight by weight, saturating the relation ideal
by bracketing with generators and reducing against an exact echelon.

The braid-type Lie algebras of a genus-g surface live here: generators
x(l,i), y(l,i) of weight one and symmetric t(i,j) of weight two, with
the defining relations of the framed model (the t(i,i) are central) and
its non-framed genus-one quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import IncrementalEchelon, dense_nullspace, dense_rank


class WeightOverflow(Exception):
    pass


class RelationNotPreserved(Exception):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    """Ordered, weighted alphabet letter; name examples x(1,2), t(1,3)."""

    order: int
    name: str
    weight: int

    def __repr__(self):
        return self.name


def xy_gens(genus, n):
    """x(l,i) and y(l,i) for 1 <= l <= genus, 1 <= i <= n, in order."""
    gens = []
    order = 0
    for i in range(1, n + 1):
        for l in range(1, genus + 1):
            gens.append(Generator(order, f"x({l},{i})", 1))
            order += 1
            gens.append(Generator(order, f"y({l},{i})", 1))
            order += 1
    return gens


def t_gens(n, diagonal=True, start_order=1000):
    gens = []
    order = start_order
    for i in range(1, n + 1):
        for j in range(i if diagonal else i + 1, n + 1):
            gens.append(Generator(order, f"t({i},{j})", 2))
            order += 1
    return gens


# ---------------------------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------------------------

def lyndon_words(alphabet, max_weight):
    """All Lyndon words over the ordered alphabet with weight <= max_weight.

    Duval's algorithm enumerates Lyndon words of bounded length in
    lexicographic order; the weighted alphabet is handled by running up
    to the maximal possible length and filtering on total weight.
    """
    alphabet = sorted(alphabet)
    k = len(alphabet)
    min_w = min(g.weight for g in alphabet)
    maxlen = max_weight // min_w
    out = []
    w = [0]
    while True:
        word = tuple(alphabet[i] for i in w)
        if sum(g.weight for g in word) <= max_weight:
            out.append(word)
        w = [w[i % len(w)] for i in range(maxlen)]
        while w and w[-1] == k - 1:
            w.pop()
        if not w:
            break
        w[-1] += 1
    return sorted(out, key=lambda word: (sum(g.weight for g in word), word))


def word_weight(word):
    return sum(g.weight for g in word)


@lru_cache(maxsize=None)
def standard_factorization(word):
    """Longest proper Lyndon suffix and its prefix."""
    assert len(word) >= 2
    for k in range(1, len(word)):
        suffix = word[k:]
        if all(suffix < suffix[j:] for j in range(1, len(suffix))):
            return word[:k], suffix
    raise ValueError(f"not a Lyndon word: {word}")


# LieElement: dict mapping Lyndon words to Fractions.

def el_add(a, b, coeff=1):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + coeff * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def el_scale(a, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


@lru_cache(maxsize=None)
def _bracket_words(u, v):
    """Bracket of two Lyndon basis words, in the Lyndon basis.

    Classic rewriting: for u < v the concatenation is Lyndon; it is the
    basis element when v does not exceed u's standard right factor,
    otherwise Jacobi pushes the bracket inside u's factorization.
    """
    if u == v:
        return {}
    if v < u:
        return {k: -c for k, c in _bracket_words(v, u).items()}
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return {u + v: Fraction(1)}
    u1, u2 = standard_factorization(u)
    # [u, v] = [[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]]
    out = {}
    for w, c in _bracket_words(u2, v).items():
        for w2, c2 in _bracket_words(u1, w).items():
            s = out.get(w2, Fraction(0)) + c * c2
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
    for w, c in _bracket_words(u1, v).items():
        for w2, c2 in _bracket_words(u2, w).items():
            s = out.get(w2, Fraction(0)) - c * c2
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
    return out


def free_bracket(a, b, max_weight=None):
    """Bilinear extension of the Lyndon-word bracket."""
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            if max_weight is not None and word_weight(u) + word_weight(v) > max_weight:
                raise WeightOverflow(
                    f"bracket weight {word_weight(u) + word_weight(v)} exceeds {max_weight}")
            for w, c in _bracket_words(u, v).items():
                s = out.get(w, Fraction(0)) + cu * cv * c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return out


def gen_el(g):
    return {(g,): Fraction(1)}


def hall_basis(alphabet, weight):
    """Lyndon words of exactly the given weight."""
    return [w for w in lyndon_words(tuple(alphabet), weight)
            if word_weight(w) == weight]


# ---------------------------------------------------------------------------
# presented quotients
# ---------------------------------------------------------------------------

class PresentedLie:
    """Weight-truncated quotient of a free Lie algebra by homogeneous relations.

    Per weight: the Lyndon basis of the free piece, an exact echelon of
    the relation ideal, and the quotient basis (non-pivot words).
    """

    def __init__(self, gens, relations, max_weight, name=""):
        self.gens = sorted(gens)
        self.max_weight = max_weight
        self.name = name
        self.relations = [dict(r) for r in relations if r]
        self._free = {}
        self._index = {}
        for w in range(1, max_weight + 1):
            words = hall_basis(self.gens, w)
            self._free[w] = words
            self._index[w] = {word: i for i, word in enumerate(words)}
        self._echelon = {w: IncrementalEchelon() for w in range(1, max_weight + 1)}
        self._saturate()
        self._quotient_words = {}
        for w in range(1, max_weight + 1):
            pivots = set(self._echelon[w].pivot_cols())
            self._quotient_words[w] = [word for i, word in enumerate(self._free[w])
                                       if i not in pivots]

    def _vec(self, el, w):
        index = self._index[w]
        return {index[word]: c for word, c in el.items() if c}

    def _saturate(self):
        by_weight = {}
        for r in self.relations:
            weights = {word_weight(word) for word in r}
            if len(weights) != 1:
                raise ValueError("relations must be weight-homogeneous")
            w = weights.pop()
            if w <= self.max_weight:
                by_weight.setdefault(w, []).append(r)
        ideal_basis = {w: [] for w in range(1, self.max_weight + 1)}
        for w in range(1, self.max_weight + 1):
            ech = self._echelon[w]
            for r in by_weight.get(w, []):
                if ech.add(self._vec(r, w)):
                    ideal_basis[w].append(r)
            for g in self.gens:
                lower = w - g.weight
                if lower < 1:
                    continue
                for b in ideal_basis[lower]:
                    br = free_bracket(gen_el(g), b)
                    if not br:
                        continue
                    if ech.add(self._vec(br, w)):
                        ideal_basis[w].append(br)

    # -- public API ------------------------------------------------------

    def free_dim(self, w):
        return len(self._free.get(w, []))

    def ideal_dim(self, w):
        return self._echelon[w].rank if w in self._echelon else 0

    def dim(self, w):
        return len(self._quotient_words.get(w, []))

    def dims(self):
        return {w: self.dim(w) for w in range(1, self.max_weight + 1)}

    def basis_words(self, w):
        return list(self._quotient_words.get(w, []))

    def reduce(self, el):
        """Normal form of a (possibly mixed-weight) element in the quotient."""
        by_weight = {}
        for word, c in el.items():
            w = word_weight(word)
            if w > self.max_weight:
                raise WeightOverflow(f"weight {w} exceeds truncation {self.max_weight}")
            by_weight.setdefault(w, {})
            idx = self._index[w][word]
            by_weight[w][idx] = by_weight[w].get(idx, Fraction(0)) + c
        out = {}
        for w, vec in by_weight.items():
            reduced = self._echelon[w].project(vec)
            for i, c in reduced.items():
                if c:
                    out[self._free[w][i]] = c
        return out

    def is_zero(self, el):
        return not self.reduce(el)

    def coords(self, el, w):
        """Coordinates of a weight-w element in the quotient basis."""
        reduced = self.reduce(el)
        pos = {word: i for i, word in enumerate(self._quotient_words[w])}
        out = {}
        for word, c in reduced.items():
            if word_weight(word) != w:
                raise ValueError("element not homogeneous of the requested weight")
            out[pos[word]] = c
        return out

    def bracket(self, a, b):
        return self.reduce(free_bracket(self.reduce(a), self.reduce(b),
                                        max_weight=self.max_weight))

    def generator(self, name):
        for g in self.gens:
            if g.name == name:
                return gen_el(g)
        raise KeyError(name)

    def structure_constants(self, w1, w2):
        """Bracket of quotient basis words, reduced; dict of dicts."""
        out = {}
        for u in self._quotient_words[w1]:
            for v in self._quotient_words[w2]:
                if w1 + w2 > self.max_weight:
                    continue
                out[(u, v)] = self.reduce(_bracket_words(u, v))
        return out


# ---------------------------------------------------------------------------
# the surface braid-type algebras
# ---------------------------------------------------------------------------

def _t_name_gen(gens, i, j):
    i, j = min(i, j), max(i, j)
    for g in gens:
        if g.name == f"t({i},{j})":
            return g
    raise KeyError((i, j))


def _xy_name_gen(gens, letter, l, i):
    for g in gens:
        if g.name == f"{letter}({l},{i})":
            return g
    raise KeyError((letter, l, i))


def surface_relations(genus, n, gens, framed=True):
    """Defining relations of the genus-g braid-type Lie algebra.

    Framed: symmetric t(i,j) with central diagonal, the cross-strand
    commutation relations, [x_k^(i), y_k^(j)] = t(i,j), and the defect
    relation sum_k [x_k^(i), y_k^(i)] = -sum_j t(i,j) - (2-2g) t(i,i).
    Non-framed drops the diagonal generators (their coefficient 2-2g
    vanishes in genus one, where the non-framed variant lives).
    """
    rels = []
    X = lambda l, i: gen_el(_xy_name_gen(gens, "x", l, i))
    Y = lambda l, i: gen_el(_xy_name_gen(gens, "y", l, i))
    T = lambda i, j: gen_el(_t_name_gen(gens, i, j))
    strands = range(1, n + 1)
    layers = range(1, genus + 1)
    # cross-strand commutation
    for i, j in itertools.combinations(strands, 2):
        for k, l in itertools.product(layers, repeat=2):
            rels.append(free_bracket(X(k, i), X(l, j)))
            rels.append(free_bracket(Y(k, i), Y(l, j)))
            if k != l:
                rels.append(free_bracket(X(k, i), Y(l, j)))
                rels.append(free_bracket(X(k, j), Y(l, i)))
    # the t generators are the same-layer cross brackets
    for i in strands:
        for j in strands:
            if i == j:
                continue
            for k in layers:
                rels.append(el_add(free_bracket(X(k, i), Y(k, j)),
                                   T(i, j), coeff=-1))
    # Drinfeld-Kohno relations among the off-diagonal t
    for i, j, k, l in itertools.permutations(strands, 4):
        if i < j and k < l and (i, j) < (k, l):
            rels.append(free_bracket(T(i, j), T(k, l)))
    for i, j, k in itertools.permutations(strands, 3):
        if i < j:
            rels.append(free_bracket(el_add(T(i, k), T(k, j)), T(i, j)))
    # a one-cycle generator commutes with the t of two other strands;
    # part of the braid-type model, and what makes
    # [x^(i)+x^(j), t(i,j)] = 0 a consequence of the others
    for i in strands:
        for j, k in itertools.combinations(strands, 2):
            if i in (j, k):
                continue
            for l in layers:
                rels.append(free_bracket(X(l, i), T(j, k)))
                rels.append(free_bracket(Y(l, i), T(j, k)))
    # defect relation per strand
    for i in strands:
        total = {}
        for k in layers:
            total = el_add(total, free_bracket(X(k, i), Y(k, i)))
        for j in strands:
            if j != i:
                total = el_add(total, T(i, j))
        if framed:
            total = el_add(total, T(i, i), coeff=(2 - 2 * genus))
        rels.append(total)
    # central diagonal
    if framed:
        for i in strands:
            for g in gens:
                if g.name != f"t({i},{i})":
                    rels.append(free_bracket(T(i, i), gen_el(g)))
    return [r for r in rels if r]


def t_g(n, genus, max_weight):
    gens = xy_gens(genus, n) + t_gens(n, diagonal=True)
    rels = surface_relations(genus, n, gens, framed=True)
    return PresentedLie(gens, rels, max_weight, name=f"t_({genus})({n})")


def t_nonframed(n, max_weight):
    gens = xy_gens(1, n) + t_gens(n, diagonal=False)
    rels = surface_relations(1, n, gens, framed=False)
    return PresentedLie(gens, rels, max_weight, name=f"t_(1)^nf({n})")


def t_bv(n, max_weight):
    """The braid Lie algebra with central diagonal, t generators only."""
    gens = t_gens(n, diagonal=True, start_order=0)
    T = lambda i, j: gen_el(_t_name_gen(gens, i, j))
    rels = []
    strands = range(1, n + 1)
    for i, j, k, l in itertools.permutations(strands, 4):
        if i < j and k < l and (i, j) < (k, l):
            rels.append(free_bracket(T(i, j), T(k, l)))
    for i, j, k in itertools.permutations(strands, 3):
        if i < j:
            rels.append(free_bracket(el_add(T(i, k), T(k, j)), T(i, j)))
    for i in strands:
        for g in gens:
            if g.name != f"t({i},{i})":
                rels.append(free_bracket(T(i, i), gen_el(g)))
    return PresentedLie(gens, [r for r in rels if r], max_weight,
                        name=f"t_bv({n})")


# ---------------------------------------------------------------------------
# morphisms induced by maps of index sets, and operadic composition
# ---------------------------------------------------------------------------

class LieMorphism:
    """Bracket-multiplicative map determined by generator images."""

    def __init__(self, source, target, images, check_relations=True):
        self.source = source
        self.target = target
        self.images = {g: dict(img) for g, img in images.items()}
        if check_relations:
            for r in source.relations:
                w = word_weight(next(iter(r)))
                if w > target.max_weight:
                    continue  # beyond the target truncation
                if not target.is_zero(self.apply_free(r)):
                    raise RelationNotPreserved(
                        f"relation {r} not sent to zero")

    def apply_free(self, el):
        out = {}
        for word, c in el.items():
            img = self._word_image(word)
            out = el_add(out, img, coeff=c)
        return out

    def _word_image(self, word):
        if len(word) == 1:
            return self.images[word[0]]
        w1, w2 = standard_factorization(word)
        return free_bracket(self._word_image(w1), self._word_image(w2))

    def __call__(self, el):
        return self.target.reduce(self.apply_free(el))


def _parse(name):
    head, rest = name.split("(", 1)
    a, b = rest.rstrip(")").split(",")
    return head, int(a), int(b)


def morphism_phi(source, target, phi, check_relations=True):
    """The map theta -> theta^phi for a set map phi: {1..m} -> {1..n}.

    source must live on n strands, target on m; generator images follow
    the displayed formulas: x/y generators spread over the preimage, an
    off-diagonal t(i,j) sums over preimage pairs, a diagonal t(i,i)
    collects the preimage diagonals plus half the off-diagonal terms.
    """
    m = max(phi.keys(), default=0)
    preimage = {}
    for src, dst in phi.items():
        preimage.setdefault(dst, []).append(src)
    images = {}
    for g in source.gens:
        head, a, b = _parse(g.name)
        if head in ("x", "y"):
            l, i = a, b
            img = {}
            for ip in preimage.get(i, []):
                img = el_add(img, gen_el(
                    _xy_name_gen(target.gens, head, l, ip)))
            images[g] = img
        else:
            i, j = a, b
            img = {}
            if i != j:
                for ip in preimage.get(i, []):
                    for jp in preimage.get(j, []):
                        img = el_add(img, gen_el(
                            _t_name_gen(target.gens, ip, jp)))
            else:
                # the half in front of the ordered off-diagonal sum gives
                # coefficient one per stored symmetric generator
                for ip in preimage.get(i, []):
                    img = el_add(img, gen_el(_t_name_gen(target.gens, ip, ip)))
                for ip, jp in itertools.combinations(sorted(preimage.get(i, [])), 2):
                    img = el_add(img, gen_el(_t_name_gen(target.gens, ip, jp)))
            images[g] = img
    return LieMorphism(source, target, images, check_relations=check_relations)


def delta_map(n, k):
    """The doubling map {1..n+1} -> {1..n} repeating the k-th index."""
    phi = {}
    for j in range(1, n + 2):
        phi[j] = j if j <= k else j - 1
    return phi


def operadic_insert(source, bv_source, target, u, u_set, w_set, u_map=None,
                    check_relations=True):
    """Composition along the braid operad: insert the set W at index u.

    u_map relabels the surviving strands of U into the target index set
    (identity by default); w_set lists the target labels of the inserted
    strands.  Returns the pair of morphisms (on the surface factor, on
    the braid factor); generator images follow the displayed case
    formulas.
    """
    u_map = dict(u_map or {})
    for s in u_set:
        if s != u:
            u_map.setdefault(s, s)
    images = {}
    for g in source.gens:
        head, a, b = _parse(g.name)
        if head in ("x", "y"):
            l, i = a, b
            if i != u:
                images[g] = gen_el(_xy_name_gen(target.gens, head, l, u_map[i]))
            else:
                img = {}
                for w in w_set:
                    img = el_add(img, gen_el(_xy_name_gen(target.gens, head, l, w)))
                images[g] = img
        else:
            i, j = a, b
            if i != j:
                if u not in (i, j):
                    images[g] = gen_el(_t_name_gen(target.gens, u_map[i], u_map[j]))
                else:
                    other = u_map[j if i == u else i]
                    img = {}
                    for w in w_set:
                        img = el_add(img, gen_el(_t_name_gen(target.gens, other, w)))
                    images[g] = img
            else:
                if i != u:
                    images[g] = gen_el(_t_name_gen(target.gens, u_map[i], u_map[i]))
                else:
                    img = {}
                    for w in w_set:
                        img = el_add(img, gen_el(_t_name_gen(target.gens, w, w)))
                    for v, w in itertools.combinations(sorted(w_set), 2):
                        img = el_add(img, gen_el(_t_name_gen(target.gens, v, w)))
                    images[g] = img
    first = LieMorphism(source, target, images, check_relations=check_relations)
    bv_images = {}
    for g in bv_source.gens:
        head, i, j = _parse(g.name)
        bv_images[g] = gen_el(_t_name_gen(target.gens, i, j))
    second = LieMorphism(bv_source, target, bv_images,
                         check_relations=check_relations)
    return first, second


# ---------------------------------------------------------------------------
# center and oracles
# ---------------------------------------------------------------------------

def center_basis(L, weight):
    """Basis of the weight piece of the center, within the truncation.

    Nullspace of the stacked adjoint maps of all generators; requires
    weight + max generator weight <= max_weight.
    """
    gen_weights = {g.weight for g in L.gens}
    if weight + max(gen_weights) > L.max_weight:
        raise WeightOverflow("centrality test would leave the truncation")
    words = L.basis_words(weight)
    if not words:
        return []
    rows = []
    for g in L.gens:
        target_w = weight + g.weight
        for j, word in enumerate(words):
            img = L.reduce(free_bracket(gen_el(g), {word: Fraction(1)}))
            coords = L.coords(img, target_w) if img else {}
            rows.append((g, j, coords))
    # assemble the stacked matrix: rows indexed by (generator, target word)
    ech_rows = []
    row_index = {}
    for g in L.gens:
        target_w = weight + g.weight
        for i in range(L.dim(target_w)):
            row_index[(g.name, i)] = len(ech_rows)
            ech_rows.append({})
    for g, j, coords in rows:
        for i, c in coords.items():
            ech_rows[row_index[(g.name, i)]][j] = c
    ech = IncrementalEchelon()
    for row in ech_rows:
        if row:
            ech.add(row)
    kernel = ech.kernel_basis(len(words))
    out = []
    for vec in kernel:
        out.append({words[j]: c for j, c in vec.items() if c})
    return out


def witt_dimension(num_gens, weight):
    """Free Lie algebra dimension via the necklace formula (weight-1 letters)."""
    from math import gcd
    def mobius(n):
        if n == 1:
            return 1
        out = 1
        p = 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                out = -out
            p += 1
        if n > 1:
            out = -out
        return out
    total = 0
    for d in range(1, weight + 1):
        if weight % d == 0:
            total += mobius(d) * num_gens ** (weight // d)
    return total // weight


def dense_quotient_dims(gens, relations, max_weight):
    """Independent dense saturation oracle: dimensions per weight."""
    gens = sorted(gens)
    free = {w: hall_basis(gens, w) for w in range(1, max_weight + 1)}
    index = {w: {word: i for i, word in enumerate(free[w])}
             for w in free}
    ideal_rows = {w: [] for w in free}
    by_weight = {}
    for r in relations:
        if not r:
            continue
        w = word_weight(next(iter(r)))
        if w <= max_weight:
            by_weight.setdefault(w, []).append(r)

    def as_dense(el, w):
        row = [Fraction(0)] * len(free[w])
        for word, c in el.items():
            row[index[w][word]] += c
        return row

    dims = {}
    reduced_els = {w: [] for w in free}
    for w in range(1, max_weight + 1):
        for r in by_weight.get(w, []):
            ideal_rows[w].append(as_dense(r, w))
            reduced_els[w].append(r)
        for g in gens:
            lower = w - g.weight
            if lower < 1:
                continue
            for el in reduced_els[lower]:
                br = free_bracket(gen_el(g), el)
                if br:
                    ideal_rows[w].append(as_dense(br, w))
                    reduced_els[w].append(br)
        rank = dense_rank(ideal_rows[w]) if ideal_rows[w] else 0
        dims[w] = len(free[w]) - rank
    return dims
