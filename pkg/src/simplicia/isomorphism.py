"""Complex isomorphism by invariant partition refinement plus backtracking."""

from __future__ import annotations

from .complex import Complex


def _vertex_colors(c: Complex):
    """Stable vertex coloring refined by incident-facet color multisets."""
    incident = {v: [] for v in range(1, c.n_vertices + 1)}
    for f in c.facets:
        for v in f:
            incident[v].append(f)
    colors = {
        v: (len(incident[v]), tuple(sorted(len(f) for f in incident[v])))
        for v in incident
    }
    while True:
        sig = {}
        for v in incident:
            neigh = tuple(
                sorted(
                    (len(f), tuple(sorted(colors[w] for w in f if w != v)))
                    for f in incident[v]
                )
            )
            sig[v] = (colors[v], neigh)
        # canonical renumbering so color values stay comparable across rounds
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in incident}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def isomorphisms(c1: Complex, c2: Complex):
    """Yield every facet-set-preserving vertex bijection c1 -> c2."""
    if c1.n_vertices != c2.n_vertices or len(c1.facets) != len(c2.facets):
        return
    if c1.f_vector() != c2.f_vector():
        return
    col1 = _vertex_colors(c1)
    col2 = _vertex_colors(c2)
    by_color1 = {}
    by_color2 = {}
    for v, col in col1.items():
        by_color1.setdefault(col, []).append(v)
    for v, col in col2.items():
        by_color2.setdefault(col, []).append(v)
    # the coloring is canonical on both sides, so class profiles must agree
    if sorted((k, len(v)) for k, v in by_color1.items()) != sorted(
        (k, len(v)) for k, v in by_color2.items()
    ):
        return

    facets2 = set(c2.facets)
    incident1 = {v: [] for v in range(1, c1.n_vertices + 1)}
    for f in c1.facets:
        for v in f:
            incident1[v].append(f)

    order = []
    placed = set()
    remaining = set(range(1, c1.n_vertices + 1))
    while remaining:
        # most-constrained next: many placed neighbours, small color class
        def score(v):
            touching = sum(
                1 for f in incident1[v] if any(w in placed for w in f)
            )
            return (-touching, len(by_color1[col1[v]]), v)

        v = min(remaining, key=score)
        order.append(v)
        placed.add(v)
        remaining.remove(v)

    mapping = {}
    used = set()

    def consistent(v):
        for f in incident1[v]:
            if all(w in mapping for w in f):
                if tuple(sorted(mapping[w] for w in f)) not in facets2:
                    return False
        return True

    def extend(i):
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        for w in by_color2[col1[v]]:
            if w in used:
                continue
            mapping[v] = w
            used.add(w)
            if consistent(v):
                yield from extend(i + 1)
            del mapping[v]
            used.remove(w)

    yield from extend(0)


def is_isomorphic(c1: Complex, c2: Complex):
    """A vertex bijection mapping facets onto facets, or None."""
    for mapping in isomorphisms(c1, c2):
        return mapping
    return None
