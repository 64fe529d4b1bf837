"""Decorated graphs, signed isomorphism classes, and formal linear combinations.

A graph has indistinguishable vertices, undirected edges (a pair (v, v)
is a tadpole), and decorations.  Vertices split into internal ones and,
for the hairy complex, external ones (kept at the tail of the index
range).  Decorations on internal vertices are drawn from the reduced
dual cohomology basis of a genus-g surface (codes ``a1..ag``, ``b1..bg``
of degree -1 and ``w`` of degree -2); an external vertex carries exactly
one hair label (codes ``d1`` of degree 0, ``da1..``/``db1..`` of degree
1, ``dw`` of degree 2) together with either a single incident edge (an
ordinary hair, or one end of a label-label line) or a single surface
decoration (a decoration-to-label line, the only edgeless diagram).

Orientation data is a linear order on the odd objects: every edge and
every odd decoration (hair labels included).  Reordering flips the sign
by the permutation's parity; a graph admitting an automorphism that acts
by an odd permutation on the odd objects is zero.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction


class InvalidIncidence(Exception):
    pass


class HasHairs(Exception):
    pass


class DegreeMismatch(Exception):
    pass


def dec_degree(code):
    if code == "w":
        return -2
    if code[0] in "ab":
        return -1
    raise ValueError(f"unknown decoration {code!r}")


def hair_degree(code):
    if code == "d1":
        return 0
    if code == "dw":
        return 2
    if code.startswith(("da", "db")):
        return 1
    raise ValueError(f"unknown hair label {code!r}")


def is_label(code):
    return code == "d1" or code == "dw" or code.startswith(("da", "db"))


def object_degree(code):
    return hair_degree(code) if is_label(code) else dec_degree(code)


def odd_code(code):
    return object_degree(code) % 2 == 1


def dec_codes(genus):
    out = []
    for i in range(1, genus + 1):
        out.append(f"a{i}")
        out.append(f"b{i}")
    out.append("w")
    return out


def hair_codes(genus):
    out = ["d1"]
    for i in range(1, genus + 1):
        out.append(f"da{i}")
        out.append(f"db{i}")
    out.append("dw")
    return out


# The degree -2 pairing on the surface cohomology, on codes of the dual
# basis: pairing("a1", "b1") = <a_1, b_1> = -1, etc.  "1" denotes the
# unit class, "w" the top class.
def pairing(c1, c2):
    if c1 == "w" and c2 == "1" or c1 == "1" and c2 == "w":
        return 1
    if c1[0] == "a" and c2[0] == "b" and c1[1:] == c2[1:]:
        return -1
    if c1[0] == "b" and c2[0] == "a" and c1[1:] == c2[1:]:
        return 1
    return 0


@dataclass(frozen=True)
class RawGraph:
    """A concrete decorated graph with explicit orientation data.

    edges: tuple of (u, v) with u <= v; list position identifies the edge.
    decorations: tuple of (vertex, code).
    odd_order: tuple of object ids ("e", i) / ("d", i) indexing the
        tuples above; lists every edge and every odd decoration once.
    ext: number of external vertices; they occupy the last indices.
    """

    genus: int
    vertices: int
    edges: tuple = ()
    decorations: tuple = ()
    odd_order: tuple = ()
    ext: int = 0

    @property
    def internal(self):
        return self.vertices - self.ext

    def is_external(self, v):
        return v >= self.vertices - self.ext

    def validate(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if not 0 <= self.ext <= self.vertices:
            raise InvalidIncidence("external count out of range")
        for (u, v) in self.edges:
            if not (0 <= u <= v < self.vertices):
                raise InvalidIncidence(f"edge ({u},{v}) out of range")
        for (v, code) in self.decorations:
            if not 0 <= v < self.vertices:
                raise InvalidIncidence(f"decoration vertex {v} out of range")
            if is_label(code):
                if not self.is_external(v):
                    raise InvalidIncidence("hair labels live on external vertices")
                idx = code[2:]
                if idx and not (1 <= int(idx) <= self.genus):
                    raise InvalidIncidence(f"label {code} outside genus")
            else:
                dec_degree(code)
                if code != "w" and not (1 <= int(code[1:]) <= self.genus):
                    raise InvalidIncidence(
                        f"decoration {code} outside genus {self.genus}")
        for v in range(self.internal, self.vertices):
            labels = sum(1 for (u, c) in self.decorations
                         if u == v and is_label(c))
            others = sum(1 for (u, c) in self.decorations
                         if u == v and not is_label(c))
            incident = sum((1 if a == v else 0) + (1 if b == v else 0)
                           for (a, b) in self.edges)
            if labels != 1 or others + incident != 1:
                raise InvalidIncidence(
                    "external vertices carry one label and one attachment")
        if sorted(self.odd_order) != sorted(self._odd_objects()):
            raise InvalidIncidence("odd_order must list the odd objects exactly once")

    def _odd_objects(self):
        objs = [("e", i) for i in range(len(self.edges))]
        objs += [("d", i) for i, (v, c) in enumerate(self.decorations)
                 if odd_code(c)]
        return objs

    def canonical_odd_order(self):
        """Edges in list order, then odd decorations in list order."""
        return tuple(sorted(self._odd_objects(),
                            key=lambda o: ({"e": 0, "d": 1}[o[0]], o[1])))

    def shape_key(self):
        return (self.genus, self.vertices, self.ext, self.edges,
                self.decorations)

    def has_tadpole(self):
        return any(u == v for (u, v) in self.edges)

    def hair_list(self):
        """Hairs as (attachment vertex, label) pairs for the wire format."""
        out = []
        label_of = {v: c for (v, c) in self.decorations if is_label(c)}
        for (u, v) in self.edges:
            if self.is_external(v) and not self.is_external(u):
                out.append((u, label_of[v]))
            elif self.is_external(u) and not self.is_external(v):
                out.append((v, label_of[u]))
        return sorted(out)

    def is_connected(self):
        n = self.vertices
        if n == 0:
            return False
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v) in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in range(n)}) == 1

    def internally_connected(self):
        """Connected after deleting the external vertices (if any remain)."""
        n_int = self.internal
        if n_int == 0:
            return self.is_connected()
        parent = list(range(n_int))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v) in self.edges:
            if u < n_int and v < n_int:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        return len({find(v) for v in range(n_int)}) == 1


def perm_sign(perm):
    """Sign of a permutation given as a tuple of images."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _relabel(raw, pi):
    """Relabel vertices by pi and resort all object lists stably.

    pi must preserve the internal/external split.  Returns the relabeled
    graph with canonical odd order plus the transport parity from raw's
    odd_order.
    """
    tagged_edges = []
    for i, (u, v) in enumerate(raw.edges):
        a, b = pi[u], pi[v]
        if a > b:
            a, b = b, a
        tagged_edges.append(((a, b), i))
    tagged_edges.sort()
    edge_map = {old: new for new, (_, old) in enumerate(tagged_edges)}
    new_edges = tuple(pair for pair, _ in tagged_edges)

    tagged_decs = sorted(((pi[v], c), i) for i, (v, c) in enumerate(raw.decorations))
    dec_map = {old: new for new, (_, old) in enumerate(tagged_decs)}
    new_decs = tuple(pc for pc, _ in tagged_decs)

    def transport(obj):
        kind, i = obj
        return ("e", edge_map[i]) if kind == "e" else ("d", dec_map[i])

    new_graph = RawGraph(raw.genus, raw.vertices, new_edges, new_decs,
                         odd_order=(), ext=raw.ext)
    canonical = new_graph.canonical_odd_order()
    pos = {o: k for k, o in enumerate(canonical)}
    perm = tuple(pos[transport(o)] for o in raw.odd_order)
    sign = perm_sign(perm)
    return RawGraph(raw.genus, raw.vertices, new_edges, new_decs,
                    odd_order=canonical, ext=raw.ext), sign


def _forced_zero(raw):
    """Zero by an identical-object swap of odd net parity.

    Identical parallel edges always kill a graph; so do identical odd
    decorations at one vertex.  (Two identical hairs at a vertex are two
    separate external vertices: their swap permutes an edge pair and, for
    odd labels, a decoration pair, so only even-labelled identical hairs
    die -- which the edge-pair rule detects after relabeling.)
    """
    seen = set()
    for e in raw.edges:
        if e in seen:
            return True
        seen.add(e)
    seen = set()
    for d in raw.decorations:
        if d in seen and odd_code(d[1]):
            return True
        seen.add(d)
    return False


@dataclass(frozen=True)
class GraphClass:
    """Canonical signed isomorphism class; .raw is None for the zero class."""

    raw: RawGraph | None = None

    @property
    def is_zero(self):
        return self.raw is None

    def key(self):
        return None if self.raw is None else self.raw.shape_key()

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, GraphClass) and self.key() == other.key()


ZERO_CLASS = GraphClass(None)


def _vertex_invariants(raw):
    """Cheap isomorphism-invariant data per vertex; externals flagged."""
    inv = [[0, 0, []] for _ in range(raw.vertices)]
    for (u, v) in raw.edges:
        if u == v:
            inv[u][1] += 1
        else:
            inv[u][0] += 1
            inv[v][0] += 1
    for (v, c) in raw.decorations:
        inv[v][2].append(c)
    return [(raw.is_external(v), inv[v][0], inv[v][1], tuple(sorted(inv[v][2])))
            for v in range(raw.vertices)]


def _refined_colors(raw):
    """Iterated neighborhood refinement of the vertex invariants."""
    colors = _vertex_invariants(raw)
    n = raw.vertices
    for _ in range(n):
        adj = [[] for _ in range(n)]
        for (u, v) in raw.edges:
            if u != v:
                adj[u].append(colors[v])
                adj[v].append(colors[u])
        new = [(colors[v], tuple(sorted(adj[v]))) for v in range(n)]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
    return colors


def _vertex_blocks(raw):
    """Vertices grouped by refined color, blocks in sorted color order.

    The leading external flag keeps internal vertices in the low index
    range; the minimal-key permutation must send each block onto its
    reserved positions, so only within-block bijections are searched.
    """
    keyed = {}
    for v, k in enumerate(_refined_colors(raw)):
        keyed.setdefault(k, []).append(v)
    return [vs for _, vs in sorted(keyed.items())]


def _block_permutations(blocks, n):
    starts = []
    pos = 0
    for b in blocks:
        starts.append(pos)
        pos += len(b)
    per_block = [list(itertools.permutations(range(start, start + len(b))))
                 for b, start in zip(blocks, starts)]
    for choice in itertools.product(*per_block):
        pi = [0] * n
        for block, images in zip(blocks, choice):
            for src, dst in zip(block, images):
                pi[src] = dst
        yield tuple(pi)


def _canonicalize_with(raw, perms, color_prefix):
    raw.validate()
    if _forced_zero(raw):
        return ZERO_CLASS, 1
    best_key = None
    best = None
    signs_by_key = {}
    for pi in perms:
        g, sign = _relabel(raw, pi)
        k = (tuple(_refined_colors(g)), g.shape_key()) if color_prefix else g.shape_key()
        prev = signs_by_key.get(k)
        if prev is None:
            signs_by_key[k] = sign
        elif prev != sign:
            return ZERO_CLASS, 1
        if best_key is None or k < best_key:
            best_key = k
            best = (g, sign)
    return GraphClass(best[0]), best[1]


_canon_cache = {}


def canonicalize(raw):
    """Canonical representative and relative sign; (zero, +1) for odd symmetry.

    Block-respecting permutations all share the minimal refined-color
    prefix, so within the pruned search plain shape keys decide.
    """
    hit = _canon_cache.get(raw)
    if hit is not None:
        return hit
    blocks = _vertex_blocks(raw)
    result = _canonicalize_with(
        raw, _block_permutations(blocks, raw.vertices), color_prefix=False)
    if len(_canon_cache) < 2_000_000:
        _canon_cache[raw] = result
    return result


def canonicalize_bruteforce(raw):
    """Oracle for canonicalize: all permutations preserving the
    internal/external split, ordered by (refined color vector, shape key),
    the same total order the pruned search minimizes."""
    n, e = raw.vertices, raw.ext
    perms = (tuple(p) + tuple(n - e + q for q in pe)
             for p in itertools.permutations(range(n - e))
             for pe in itertools.permutations(range(e)))
    return _canonicalize_with(raw, perms, color_prefix=True)


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------

def degree_gc(cls):
    """1 + 2N - k + sum of decoration degrees; rejects hairy graphs."""
    raw = cls.raw if isinstance(cls, GraphClass) else cls
    if raw is None:
        raise ValueError("degree of the zero class is undefined")
    if raw.ext:
        raise HasHairs("degree_gc applies to hairless graphs")
    return 1 + 2 * raw.vertices - len(raw.edges) + sum(
        dec_degree(c) for (_, c) in raw.decorations)


def degree_hairy(cls):
    """-k + 2N + all decoration degrees, N counting internal vertices only.

    Hair edges are edges and count toward k; the decoration-to-label line
    has no edge at all, so its degree is the sum of its two codes.
    """
    raw = cls.raw if isinstance(cls, GraphClass) else cls
    if raw is None:
        raise ValueError("degree of the zero class is undefined")
    return (-len(raw.edges) + 2 * raw.internal
            + sum(object_degree(c) for (_, c) in raw.decorations))


# ---------------------------------------------------------------------------
# graph vectors
# ---------------------------------------------------------------------------

class GraphVector:
    """Finite rational combination of graph classes, homogeneous in degree.

    terms: dict GraphClass -> Fraction.  The zero vector has degree None.
    """

    __slots__ = ("terms", "degree", "genus", "hairy")

    def __init__(self, terms=None, degree=None, genus=None, hairy=False):
        self.terms = dict(terms or {})
        self.degree = degree if self.terms else None
        self.genus = genus
        self.hairy = hairy

    @classmethod
    def zero(cls, genus=None, hairy=False):
        return cls({}, None, genus, hairy)

    def is_zero(self):
        return not self.terms

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")
        out = dict(self.terms)
        for cls_, coeff in other.terms.items():
            s = out.get(cls_, Fraction(0)) + coeff
            if s:
                out[cls_] = s
            else:
                out.pop(cls_, None)
        return GraphVector(out, self.degree if out else None, self.genus, self.hairy)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c or self.is_zero():
            return GraphVector.zero(self.genus, self.hairy)
        return GraphVector({k: c * v for k, v in self.terms.items()},
                           self.degree, self.genus, self.hairy)

    def __eq__(self, other):
        return isinstance(other, GraphVector) and self.terms == other.terms

    def __repr__(self):
        if self.is_zero():
            return "GraphVector(0)"
        return f"GraphVector({len(self.terms)} terms, degree {self.degree})"


def collect(terms, genus=None, hairy=False, degree_fn=None):
    """Canonicalize and combine (RawGraph, coeff) pairs into a GraphVector.

    Zero classes and cancelling coefficients are dropped; all surviving
    terms must be degree-homogeneous.
    """
    acc = {}
    for raw, coeff in terms:
        coeff = Fraction(coeff)
        if not coeff:
            continue
        cls_, sign = canonicalize(raw)
        if cls_.is_zero:
            continue
        acc[cls_] = acc.get(cls_, Fraction(0)) + sign * coeff
        if genus is None:
            genus = raw.genus
    acc = {k: v for k, v in acc.items() if v}
    if not acc:
        return GraphVector.zero(genus, hairy)
    if degree_fn is None:
        degree_fn = degree_hairy if hairy else degree_gc
    degrees = {degree_fn(k) for k in acc}
    if len(degrees) != 1:
        raise DegreeMismatch(f"inhomogeneous collection: degrees {sorted(degrees)}")
    return GraphVector(acc, degrees.pop(), genus, hairy)


def vector_add(v, w):
    return v + w


def vector_scale(v, c):
    return v.scale(c)


# ---------------------------------------------------------------------------
# JSON serialization (bit-exact, canonical key order)
# ---------------------------------------------------------------------------

def _object_index(raw):
    order = raw.canonical_odd_order()
    return {obj: i for i, obj in enumerate(order)}


def graph_to_json_obj(cls, coeff):
    """Wire format: internal-vertex counts, hairs as (vertex, label) pairs."""
    raw = cls.raw
    internal_edges = [list(e) for e in raw.edges
                      if not raw.is_external(e[0]) and not raw.is_external(e[1])]
    surface_decs = [[v, c] for (v, c) in raw.decorations
                    if not is_label(c) and not raw.is_external(v)]
    obj = {
        "genus": raw.genus,
        "vertices": raw.internal,
        "edges": internal_edges,
        "decorations": surface_decs,
        "hairs": [[v, c] for (v, c) in raw.hair_list()],
        "odd_order": [_object_index(raw)[o] for o in raw.odd_order],
        "coeff": str(Fraction(coeff)),
    }
    if raw.ext:
        obj["ext"] = [[v, c] for (v, c) in raw.decorations
                      if raw.is_external(v)]
        obj["ext_edges"] = [list(e) for e in raw.edges
                            if raw.is_external(e[0]) or raw.is_external(e[1])]
        obj["ext_count"] = raw.ext
    return obj


def vector_to_json(vec):
    items = sorted(((cls.key(), cls, coeff) for cls, coeff in vec),
                   key=lambda t: repr(t[0]))
    return json.dumps([graph_to_json_obj(cls, coeff) for _, cls, coeff in items],
                      separators=(",", ":"), sort_keys=True)


def graph_from_json_obj(obj):
    ext = obj.get("ext_count", 0)
    vertices = obj["vertices"] + ext
    edges = [tuple(e) for e in obj["edges"]] + \
        [tuple(e) for e in obj.get("ext_edges", [])]
    decs = [(v, c) for v, c in obj["decorations"]] + \
        [(v, c) for v, c in obj.get("ext", [])]
    blank = RawGraph(obj["genus"], vertices, tuple(edges), tuple(decs),
                     odd_order=(), ext=ext)
    canonical = blank.canonical_odd_order()
    by_index = {i: o for o, i in _object_index(blank).items()}
    odd = tuple(by_index[i] for i in obj["odd_order"])
    raw = RawGraph(blank.genus, vertices, blank.edges, blank.decorations,
                   odd_order=odd, ext=ext)
    return raw, Fraction(obj["coeff"])


# ---------------------------------------------------------------------------
# raw-graph surgery helpers shared by the differentials
# ---------------------------------------------------------------------------

def removal_sign(odd_order, ids_in_order):
    """Parity of popping the listed objects off the end, in order.

    Each object is moved to the end of the current order (costing one
    transposition per object it crosses) and dropped.  Returns (sign,
    remaining tuple).
    """
    order = list(odd_order)
    sign = 1
    for obj in ids_in_order:
        p = order.index(obj)
        steps = len(order) - 1 - p
        if steps % 2 == 1:
            sign = -sign
        order.pop(p)
    return sign, tuple(order)
