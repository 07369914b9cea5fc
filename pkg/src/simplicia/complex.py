"""Facet-list simplicial complexes and the basic combinatorial constructors.

A complex is stored by its maximal faces (facets) on vertices 1..n.  Vertex
indices are always compacted to a contiguous range on construction; the
original vertex names survive in ``labels``.  Complexes are immutable values;
computed properties go into a write-once cache, so concurrent readers may
race on the same computation but must agree on the result.
"""

from __future__ import annotations

import itertools
import os


class SimplicialError(ValueError):
    """Invalid construction of, or query on, a simplicial complex."""


def as_face(vertices) -> tuple:
    """Normalize an iterable of vertices to the canonical face form."""
    return tuple(sorted(set(vertices)))


class Permutation:
    """A bijection on 1..n given by its image list (1-based)."""

    __slots__ = ("image",)

    def __init__(self, image):
        image = tuple(image)
        n = len(image)
        if sorted(image) != list(range(1, n + 1)):
            raise SimplicialError("not a permutation of 1..%d: %r" % (n, image))
        self.image = image

    @property
    def degree(self):
        return len(self.image)

    def __call__(self, v):
        return self.image[v - 1]

    def apply_face(self, face):
        return tuple(sorted(self.image[v - 1] for v in face))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build a permutation on 1..n from disjoint cycles, e.g. [(1,2,3)]."""
        image = list(range(1, n + 1))
        for cyc in cycles:
            for i, v in enumerate(cyc):
                image[v - 1] = cyc[(i + 1) % len(cyc)]
        return cls(image)


class Complex:
    """An abstract simplicial complex given by its facet list.

    Facets are strictly increasing tuples of 1..n, stored lexicographically
    sorted and mutually inclusion-incomparable.  Use :func:`from_facets` /
    :func:`from_generators` instead of calling the constructor directly.
    """

    __slots__ = ("facets", "labels", "name", "_cache", "_faces_memo", "_ridge_memo")

    def __init__(self, facets, labels, name=""):
        self.facets = tuple(facets)
        self.labels = tuple(labels)
        self.name = name
        self._cache = {}
        self._faces_memo = None
        self._ridge_memo = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.facets == other.facets and self.labels == other.labels

    def __hash__(self):
        return hash((self.facets, self.labels))

    def __repr__(self):
        tag = " %r" % self.name if self.name else ""
        return "<Complex%s dim=%d f=%s>" % (tag, self.dim, self.f_vector())

    # -- basic structure --------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.labels)

    @property
    def dim(self):
        """Dimension: size of the largest facet minus one (-1 when empty)."""
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def is_empty(self):
        return not self.facets

    def vertex_label(self, v):
        return self.labels[v - 1]

    def _faces_by_dim(self):
        if self._faces_memo is None:
            by_dim = {}
            for facet in self.facets:
                m = len(facet)
                for k in range(1, m + 1):
                    bucket = by_dim.setdefault(k - 1, set())
                    for sub in itertools.combinations(facet, k):
                        bucket.add(sub)
            self._faces_memo = {k: sorted(v) for k, v in by_dim.items()}
        return self._faces_memo

    def faces(self, k):
        """All k-dimensional faces, lexicographically sorted."""
        return list(self._faces_by_dim().get(k, []))

    def has_face(self, face):
        face = tuple(sorted(face))
        if not face:
            return True
        lst = self._faces_by_dim().get(len(face) - 1)
        if lst is None:
            return False
        import bisect

        i = bisect.bisect_left(lst, face)
        return i < len(lst) and lst[i] == face

    def f_vector(self):
        """Face counts (f_0, ..., f_d)."""

        def compute():
            memo = self._faces_by_dim()
            return [len(memo.get(k, ())) for k in range(self.dim + 1)]

        return list(self._cached("f_vector", compute))

    def ridge_incidence(self):
        """Lazy map ridge -> incident facets (codimension-1 faces of facets)."""
        if self._ridge_memo is None:
            inc = {}
            for facet in self.facets:
                for i in range(len(facet)):
                    ridge = facet[:i] + facet[i + 1:]
                    inc.setdefault(ridge, []).append(facet)
            self._ridge_memo = inc
        return self._ridge_memo

    # -- property cache ----------------------------------------------------

    def _cached(self, key, compute):
        cache = self._cache
        if key in cache:
            if os.environ.get("SIMPLICIA_VALIDATE_CACHE"):
                fresh = compute()
                if fresh != cache[key]:
                    raise AssertionError(
                        "cache mismatch for %r: %r != %r" % (key, cache[key], fresh)
                    )
            return cache[key]
        value = compute()
        return self.cache_put(key, value)

    def cache_put(self, key, value):
        """Publish a cached property; a second write must reproduce the value."""
        cache = self._cache
        if key in cache:
            if cache[key] != value:
                raise AssertionError(
                    "write-once cache violated for %r: %r != %r"
                    % (key, cache[key], value)
                )
            return cache[key]
        cache[key] = value
        return value

    def cache_get(self, key, default=None):
        return self._cache.get(key, default)

    def cache_keys(self):
        return sorted(self._cache)

    # -- local structure ---------------------------------------------------

    def star(self, face):
        """Subcomplex of all facets containing ``face`` (vertices compacted)."""
        face = as_face(face)
        if face and not self.has_face(face):
            raise SimplicialError("not a face: %r" % (face,))
        fs = face and set(face)
        hits = [f for f in self.facets if not face or fs.issubset(f)]
        return _subcomplex(self, hits)

    def link(self, face):
        """Faces disjoint from ``face`` whose union with it is in the complex."""
        face = as_face(face)
        if not face:
            return self
        if not self.has_face(face):
            raise SimplicialError("not a face: %r" % (face,))
        fs = set(face)
        hits = [tuple(v for v in f if v not in fs) for f in self.facets if fs.issubset(f)]
        hits = [h for h in hits if h]
        if not hits:
            return empty_complex()
        return _subcomplex(self, hits)

    def boundary(self):
        """Complex of ridges lying in exactly one facet; empty when closed."""
        if not self.is_pure():
            raise SimplicialError("boundary requires a pure complex")
        if self.is_empty or self.dim == 0:
            return empty_complex()
        rims = [r for r, fs in self.ridge_incidence().items() if len(fs) == 1]
        if not rims:
            return empty_complex()
        return _subcomplex(self, sorted(rims))

    # -- structural flags ---------------------------------------------------

    def is_pure(self):
        if self.is_empty:
            return True
        d = self.dim
        return all(len(f) == d + 1 for f in self.facets)

    def is_connected(self):
        if self.n_vertices <= 1:
            return True
        parent = list(range(self.n_vertices + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for facet in self.facets:
            r = find(facet[0])
            for v in facet[1:]:
                parent[find(v)] = r
        roots = {find(v) for v in range(1, self.n_vertices + 1)}
        return len(roots) == 1

    def is_strongly_connected(self):
        """Connectivity of the facet graph across shared ridges (pure only)."""
        if not self.is_pure():
            return False
        if len(self.facets) <= 1:
            return True
        index = {f: i for i, f in enumerate(self.facets)}
        parent = list(range(len(self.facets)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for fs in self.ridge_incidence().values():
            r = find(index[fs[0]])
            for f in fs[1:]:
                parent[find(index[f])] = r
        return len({find(i) for i in range(len(self.facets))}) == 1

    def is_pseudomanifold(self):
        if not self.is_pure() or self.is_empty:
            return False
        return all(len(fs) <= 2 for fs in self.ridge_incidence().values())

    def has_boundary(self):
        if self.is_empty:
            return False
        return any(len(fs) == 1 for fs in self.ridge_incidence().values())

    def flags(self):
        """StructuralFlags-style dict of the five standard predicates."""

        def compute():
            return {
                "is_pure": self.is_pure(),
                "is_connected": self.is_connected(),
                "is_strongly_connected": self.is_strongly_connected(),
                "is_pseudomanifold": self.is_pseudomanifold(),
                "has_boundary": self.has_boundary(),
            }

        return dict(self._cached("flags", compute))

    # -- constructions ------------------------------------------------------

    def relabeled(self, mapping, labels=None, name=""):
        """Rebuild with vertex v replaced by mapping[v] (a bijection)."""
        new_facets = [tuple(sorted(mapping[v] for v in f)) for f in self.facets]
        if labels is None:
            inv = {}
            for v in range(1, self.n_vertices + 1):
                inv[mapping[v]] = self.labels[v - 1]
            return from_facets(new_facets, labels=None, name=name)._with_raw_labels(inv)
        return from_facets(new_facets, labels=labels, name=name)

    def _with_raw_labels(self, raw_label_map):
        # from_facets kept the raw values as labels; translate them through
        # the original display labels.
        new_labels = tuple(raw_label_map[raw] for raw in self.labels)
        out = Complex(self.facets, new_labels, self.name)
        return out

    def join(self, other, name=""):
        """Simplicial join; the empty complex acts as the identity."""
        if self.is_empty:
            return from_facets(other.facets, labels=list(other.labels), name=name or other.name)
        if other.is_empty:
            return from_facets(self.facets, labels=list(self.labels), name=name or self.name)
        n1 = self.n_vertices
        facets = [f + tuple(v + n1 for v in g) for f in self.facets for g in other.facets]
        labels = list(self.labels) + list(other.labels)
        return from_facets(facets, labels=labels, name=name)

    def cone(self, apex_label="apex", name=""):
        return self.join(_point(apex_label), name=name)

    def suspension(self, name=""):
        poles = from_facets([[1], [2]], labels=["south", "north"])
        return self.join(poles, name=name)

    def cartesian_product(self, other, name=""):
        """Staircase (shuffle) triangulation of the cartesian product."""
        if not (self.is_pure() and other.is_pure()):
            raise SimplicialError("cartesian product requires pure complexes")
        if self.is_empty or other.is_empty:
            return empty_complex()

        def pair_index(a, b):
            return (a - 1) * other.n_vertices + b

        facets = []
        for f in self.facets:
            for g in other.facets:
                p, q = len(f) - 1, len(g) - 1
                # monotone lattice paths from (0, 0) to (p, q)
                for steps in itertools.combinations(range(p + q), p):
                    path = [(0, 0)]
                    i = j = 0
                    for s in range(p + q):
                        if s in steps:
                            i += 1
                        else:
                            j += 1
                        path.append((i, j))
                    facets.append(tuple(sorted(pair_index(f[i], g[j]) for i, j in path)))
        labels = [
            "(%s,%s)" % (la, lb)
            for la in self.labels
            for lb in other.labels
        ]
        return from_facets(facets, labels=labels, name=name)

    def connected_sum(self, other, name=""):
        """Remove one facet from each summand and identify the boundaries.

        The gluing matches the removed facets' vertices in ascending order.
        For chiral manifolds the PL type of the result may depend on this
        choice; no orientation-reversing variant is provided.
        """
        d = self.dim
        if d != other.dim:
            raise SimplicialError("connected sum requires equal dimensions")
        for c in (self, other):
            if not (c.is_pure() and c.is_pseudomanifold() and not c.has_boundary()):
                raise SimplicialError("connected sum requires closed pseudomanifolds")
        f1 = self.facets[0]
        f2 = other.facets[0]
        mapping = {}
        for a, b in zip(f2, f1):
            mapping[a] = b
        nxt = self.n_vertices + 1
        for v in range(1, other.n_vertices + 1):
            if v not in mapping:
                mapping[v] = nxt
                nxt += 1
        facets = [f for f in self.facets if f != f1]
        facets += [tuple(sorted(mapping[v] for v in g)) for g in other.facets if g != f2]
        return from_facets(facets, name=name)

    def handle_addition(self, facet1, facet2, name=""):
        """Remove two facets of the same complex and glue their boundaries.

        Vertices are identified in ascending order; the two facets must be
        disjoint and no facet may meet both of them (disjoint vertex stars).
        """
        f1 = as_face(facet1)
        f2 = as_face(facet2)
        if f1 not in self.facets or f2 not in self.facets:
            raise SimplicialError("handle addition needs two facets of the complex")
        if set(f1) & set(f2):
            raise SimplicialError("handle addition facets must be disjoint")
        for f in self.facets:
            if set(f) & set(f1) and set(f) & set(f2):
                raise SimplicialError("handle addition requires disjoint vertex stars")
        mapping = {v: v for v in range(1, self.n_vertices + 1)}
        for a, b in zip(f2, f1):
            mapping[a] = b
        facets = [
            tuple(sorted(mapping[v] for v in f))
            for f in self.facets
            if f not in (f1, f2)
        ]
        return from_facets(facets, name=name)


def _point(label):
    return from_facets([[1]], labels=[label])


def _subcomplex(parent, faces):
    """Complex generated by ``faces`` of ``parent``, labels carried over."""
    raw_labels = {v: parent.labels[v - 1] for f in faces for v in f}
    out = from_facets(faces)
    return out._with_raw_labels(raw_labels)


_EMPTY = None


def empty_complex():
    """The empty complex (no facets, no vertices); identity for join."""
    global _EMPTY
    if _EMPTY is None:
        _EMPTY = Complex((), ())
    return _EMPTY


def from_facets(raw_facets, labels=None, name=""):
    """Build a complex from a raw facet list.

    Faces are deduplicated, sorted, and non-maximal entries dropped.  Vertex
    indices are compacted to 1..n preserving their order; when no explicit
    labels are given the original values become the labels.
    """
    if not raw_facets:
        raise SimplicialError("no facets")
    seen = set()
    for face in raw_facets:
        face = tuple(face)
        if not face:
            raise SimplicialError("no facets")
        for v in face:
            if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
                raise SimplicialError("bad vertex: %r" % (v,))
        seen.add(tuple(sorted(set(face))))

    # drop non-maximal faces; check each face only against larger candidates
    # sharing its first vertex
    by_vertex = {}
    maximal = []
    for face in sorted(seen, key=len, reverse=True):
        fs = set(face)
        candidates = by_vertex.get(face[0])
        if candidates and any(fs <= g for g in candidates):
            continue
        maximal.append(face)
        for v in face:
            by_vertex.setdefault(v, []).append(fs)

    used = sorted({v for f in maximal for v in f})
    compact = {v: i + 1 for i, v in enumerate(used)}
    facets = sorted(tuple(compact[v] for v in f) for f in maximal)
    if labels is None:
        final_labels = tuple(used)
    else:
        labels = list(labels)
        if len(labels) != len(used):
            raise SimplicialError(
                "expected %d labels, got %d" % (len(used), len(labels))
            )
        final_labels = tuple(labels)
    return Complex(facets, final_labels, name)


def from_generators(generator_facets, group_gens, n=None, name=""):
    """Orbit closure of generator facets under a set of permutations.

    The result's facet set is the smallest one containing the generators and
    closed under every permutation; the full group is never enumerated.
    """
    gens = []
    for g in group_gens:
        gens.append(g if isinstance(g, Permutation) else Permutation(g))
    if not generator_facets:
        raise SimplicialError("no facets")
    degree = max((g.degree for g in gens), default=0)
    top = max(max(f) for f in generator_facets)
    if n is None:
        n = max(degree, top)
    if degree and degree < top:
        raise SimplicialError("permutations act on 1..%d, facet uses %d" % (degree, top))

    frontier = [as_face(f) for f in generator_facets]
    orbit = set(frontier)
    while frontier:
        face = frontier.pop()
        for g in gens:
            image = g.apply_face(face)
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return from_facets(sorted(orbit), name=name)
