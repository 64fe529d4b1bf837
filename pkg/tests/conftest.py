import random

from gcsurf.graphs import RawGraph, dec_codes, hair_codes


def random_raw_graph(rng, genus=1, max_vertices=4, max_edges=4, max_decs=3,
                     hairs=False, tadpoles=True, connected=False):
    """Random decorated graph with a shuffled odd order.

    With hairs=True, up to two external vertices with random labels are
    appended, each tied to a random internal vertex.
    """
    while True:
        n = rng.randint(1, max_vertices)
        pairs = [(u, v) for u in range(n) for v in range(u if tadpoles else u + 1, n)]
        edges = sorted(rng.choice(pairs)
                       for _ in range(rng.randint(0, max_edges))) if pairs else []
        codes = dec_codes(genus)
        decs = sorted((rng.randrange(n), rng.choice(codes))
                      for _ in range(rng.randint(0, max_decs)))
        ext = 0
        if hairs:
            ext = rng.randint(1, 2)
            for k in range(ext):
                u = n + k
                edges.append((rng.randrange(n), u))
                decs.append((u, rng.choice(hair_codes(genus))))
        total = n + ext
        raw = RawGraph(genus, total, tuple(sorted(edges)), tuple(sorted(decs)),
                       (), ext)
        odd = list(raw.canonical_odd_order())
        rng.shuffle(odd)
        raw = RawGraph(genus, total, raw.edges, raw.decorations,
                       tuple(odd), ext)
        if not connected or raw.is_connected():
            return raw
