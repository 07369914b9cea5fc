"""Numerical and algebraic invariants of simplicial complexes.

Homology is integral simplicial homology computed from boundary operators
over the lexicographically ordered oriented simplices, reduced in degree 0
(a connected complex reports (0, []) there).  Torsion comes from the Smith
normal form of the next boundary operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .complex import Complex, SimplicialError
from .snf import invariant_factors_of_triplets, rank_mod_p


@dataclass(frozen=True)
class HomologyProfile:
    """Per-dimension (betti, torsion coefficients), degrees 0..d."""

    entries: tuple

    def __post_init__(self):
        for betti, torsion in self.entries:
            if betti < 0:
                raise ValueError("negative betti number")
            for a, b in zip(torsion, torsion[1:]):
                if b % a:
                    raise ValueError("torsion coefficients must form a divisibility chain")

    def betti(self, k):
        return self.entries[k][0] if 0 <= k < len(self.entries) else 0

    def torsion(self, k):
        return list(self.entries[k][1]) if 0 <= k < len(self.entries) else []

    def to_lists(self):
        return [[b, list(t)] for b, t in self.entries]

    @classmethod
    def from_lists(cls, lists):
        return cls(tuple((int(b), tuple(int(x) for x in t)) for b, t in lists))

    def __str__(self):
        return str(self.to_lists())


def euler_characteristic(c: Complex) -> int:
    """Alternating sum of the f-vector (0 for the empty complex)."""

    def compute():
        return sum((-1) ** k * fk for k, fk in enumerate(c.f_vector()))

    return c._cached("chi", compute)


def h_vector(c: Complex):
    """Full h-vector (h_0, ..., h_{d+1}) of a pure complex."""
    if not c.is_pure():
        raise SimplicialError("h-vector requires a pure complex")
    d = c.dim
    f = [1] + c.f_vector()  # f[-1] = 1 shifted to index 0
    h = []
    for k in range(d + 2):
        h.append(sum((-1) ** (k - i) * comb(d + 1 - i, k - i) * f[i] for i in range(k + 1)))
    return h


def g_vector(c: Complex):
    """Full g-vector (g_0, ..., g_ceil((d+1)/2)) with g_i = h_i - h_{i-1}."""
    h = h_vector(c)
    d = c.dim
    top = (d + 2) // 2
    return [1] + [h[i] - h[i - 1] for i in range(1, top + 1)]


def hg_vectors(c: Complex):
    """The (full h-vector, full g-vector) pair."""
    return h_vector(c), g_vector(c)


def hg_transcript(c: Complex):
    """Shell-report projection: H drops h_0, G drops g_0."""
    h, g = hg_vectors(c)
    return h[1:], g[1:]


def boundary_triplets(c: Complex, k):
    """Sparse triplets of the k-th boundary operator.

    Columns index the k-faces, rows the (k-1)-faces, both in lexicographic
    order; entry signs are the usual alternating omissions.  k = 0 yields the
    augmentation row (all ones), which makes degree-0 homology reduced.
    """
    kfaces = c.faces(k)
    if k == 0:
        return [(0, j, 1) for j in range(len(kfaces))], 1, len(kfaces)
    prev = {f: i for i, f in enumerate(c.faces(k - 1))}
    triplets = []
    for j, face in enumerate(kfaces):
        sign = 1
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            triplets.append((prev[sub], j, sign))
            sign = -sign
    return triplets, len(prev), len(kfaces)


def homology(c: Complex) -> HomologyProfile:
    """Reduced-in-degree-0 integral simplicial homology."""

    def compute():
        d = c.dim
        if d < 0:
            return ()
        f = c.f_vector()
        factors = {}
        ranks = {}
        for k in range(d + 2):
            if k <= d:
                trips, _, _ = boundary_triplets(c, k)
                factors[k] = invariant_factors_of_triplets(trips)
            else:
                factors[k] = ()
            ranks[k] = len(factors[k])
        entries = []
        for k in range(d + 1):
            betti = f[k] - ranks[k] - ranks[k + 1]
            torsion = tuple(x for x in factors[k + 1] if x > 1) if k + 1 <= d else ()
            entries.append((betti, torsion))
        return tuple(entries)

    cached = c._cached("homology", compute)
    return HomologyProfile(cached)


def homology_mod_p(c: Complex, p: int):
    """Ranks of reduced homology with coefficients in the field Z/p."""
    d = c.dim
    if d < 0:
        return []
    f = c.f_vector()
    ranks = {}
    for k in range(d + 2):
        if k <= d:
            trips, _, _ = boundary_triplets(c, k)
            ranks[k] = rank_mod_p(trips, p)
        else:
            ranks[k] = 0
    return [f[k] - ranks[k] - ranks[k + 1] for k in range(d + 1)]


def orientability(c: Complex):
    """(orientable, per-facet signs) for a closed strongly connected pseudomanifold.

    Signs are propagated across ridges; the two induced ridge orientations
    must be opposite.  Returns (False, None) when propagation contradicts.
    """
    if not c.is_pseudomanifold() or c.has_boundary() or not c.is_strongly_connected():
        raise SimplicialError("orientability requires a closed strongly connected pseudomanifold")

    def compute():
        index = {f: i for i, f in enumerate(c.facets)}
        signs = [0] * len(c.facets)
        signs[0] = 1
        queue = [0]
        inc = c.ridge_incidence()
        adjacency = {}
        for ridge, fs in inc.items():
            if len(fs) == 2:
                a, b = index[fs[0]], index[fs[1]]
                adjacency.setdefault(a, []).append((b, ridge))
                adjacency.setdefault(b, []).append((a, ridge))
        while queue:
            i = queue.pop()
            fi = c.facets[i]
            for j, ridge in adjacency.get(i, ()):
                fj = c.facets[j]
                vi = next(v for v in fi if v not in ridge)
                vj = next(v for v in fj if v not in ridge)
                # opposite induced orientations: sign_i * (-1)^pos_i = -sign_j * (-1)^pos_j
                rel = -1 if (fi.index(vi) + fj.index(vj)) % 2 == 0 else 1
                want = rel * signs[i]
                if signs[j] == 0:
                    signs[j] = want
                    queue.append(j)
                elif signs[j] != want:
                    return (False, None)
        return (True, tuple(signs))

    result = c._cached("orientable", compute)
    return (result[0], list(result[1]) if result[1] is not None else None)


@dataclass(frozen=True)
class GroupPresentation:
    """A finite presentation: relators are words of signed generator indices."""

    generator_count: int
    relators: tuple

    def __post_init__(self):
        for word in self.relators:
            for g in word:
                if g == 0 or abs(g) > self.generator_count:
                    raise ValueError("relator letter %d out of range" % g)


def fundamental_group_presentation(c: Complex) -> GroupPresentation:
    """Edge-path presentation of the fundamental group of a connected complex.

    Generators are the edges outside a breadth-first spanning tree rooted at
    vertex 1 (lexicographic adjacency order), one relator per triangle.
    """
    if not c.is_connected():
        raise SimplicialError("fundamental group requires a connected complex")
    edges = c.faces(1)
    adjacency = {}
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    tree = set()
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adjacency.get(u, ())):
                if v not in seen:
                    seen.add(v)
                    tree.add((min(u, v), max(u, v)))
                    nxt.append(v)
        frontier = nxt
    generators = {}
    for e in edges:
        if e not in tree:
            generators[e] = len(generators) + 1

    def letter(u, v):
        """Signed generator index of the directed edge u -> v (0 on the tree)."""
        e = (min(u, v), max(u, v))
        g = generators.get(e)
        if g is None:
            return 0
        return g if u < v else -g

    relators = []
    for u, v, w in c.faces(2):
        word = tuple(x for x in (letter(u, v), letter(v, w), letter(w, u)) if x)
        relators.append(word)
    return GroupPresentation(len(generators), tuple(relators))


def abelianization(p: GroupPresentation):
    """(rank, torsion) of the abelianized group, via SNF of the relator matrix."""
    triplets = {}
    for i, word in enumerate(p.relators):
        for g in word:
            key = (i, abs(g) - 1)
            triplets[key] = triplets.get(key, 0) + (1 if g > 0 else -1)
    factors = invariant_factors_of_triplets(
        [(r, c, v) for (r, c), v in triplets.items() if v]
    )
    rank = p.generator_count - len(factors)
    torsion = tuple(x for x in factors if x > 1)
    return rank, list(torsion)
