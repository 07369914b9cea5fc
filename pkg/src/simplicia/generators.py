"""Standard triangulation families generated from scratch."""

from __future__ import annotations

import itertools
import random

from .complex import Complex, SimplicialError, from_facets


def simplex(d, name=""):
    """The solid d-simplex: one facet on d+1 vertices."""
    if d < 0:
        raise SimplicialError("dimension must be non-negative")
    return from_facets([list(range(1, d + 2))], name=name or "Delta^%d" % d)


def boundary_simplex(d, name=""):
    """The boundary of the d-simplex: all d-subsets of 1..d+1 (an S^(d-1))."""
    if d < 1:
        raise SimplicialError("boundary_simplex needs d >= 1")
    verts = range(1, d + 2)
    facets = [list(c) for c in itertools.combinations(verts, d)]
    c = from_facets(facets, name=name or "Bd(Delta^%d)" % d)
    c.cache_put("topological_type", "S^%d" % (d - 1))
    return c


def cross_polytope(d, name=""):
    """Boundary complex of the d-dimensional cross polytope.

    Vertices 2i-1 and 2i are the i-th antipodal pair; the facets are all
    transversals picking one vertex per pair, so f_k = 2^(k+1) * C(d, k+1).
    """
    if d < 1:
        raise SimplicialError("cross_polytope needs d >= 1")
    facets = []
    for signs in itertools.product((0, 1), repeat=d):
        facets.append([2 * i + 1 + s for i, s in enumerate(signs)])
    c = from_facets(facets, name=name or "Bd(beta^%d)" % d)
    c.cache_put("topological_type", "S^%d" % (d - 1))
    return c


def cyclic_polytope_boundary(d, n, name=""):
    """Boundary complex of the cyclic d-polytope on n vertices.

    A d-subset F of 1..n is a facet exactly when, for every pair i < j of
    vertices outside F, the number of elements of F strictly between i and j
    is even (Gale's evenness condition).
    """
    if d < 2:
        raise SimplicialError("cyclic_polytope_boundary needs d >= 2")
    if n < d + 2:
        raise SimplicialError("cyclic_polytope_boundary needs n >= d + 2")
    facets = []
    for cand in itertools.combinations(range(1, n + 1), d):
        inside = set(cand)
        outside = [v for v in range(1, n + 1) if v not in inside]
        ok = True
        for i, j in itertools.combinations(outside, 2):
            if sum(1 for k in cand if i < k < j) % 2:
                ok = False
                break
        if ok:
            facets.append(list(cand))
    c = from_facets(facets, name=name or "Bd(C_%d(%d))" % (d, n))
    c.cache_put("topological_type", "S^%d" % (d - 1))
    return c


def stacked_sphere(d, n, seed=0, name=""):
    """A stacked d-sphere on n vertices, built by repeated facet stacking.

    Starts from the boundary of the (d+1)-simplex and n-(d+2) times replaces
    a uniformly chosen facet by the cone over its boundary with a fresh
    vertex.  Deterministic per seed.
    """
    if n < d + 2:
        raise SimplicialError("stacked_sphere needs n >= d + 2")
    rng = random.Random(seed)
    facets = sorted(itertools.combinations(range(1, d + 3), d + 1))
    vertex = d + 2
    for _ in range(n - (d + 2)):
        vertex += 1
        target = facets.pop(rng.randrange(len(facets)))
        for v in target:
            facets.append(tuple(sorted(set(target) - {v} | {vertex})))
        facets.sort()
    c = from_facets([list(f) for f in facets], name=name or "stacked S^%d (n=%d)" % (d, n))
    c.cache_put("topological_type", "S^%d" % d)
    return c
