#!/usr/bin/env python3
"""Generate the shipped fixture library under src/simplicia/library/.

Every fixture is constructed from first principles and verified against its
expected invariants before being written:

* rp2_6        antipodal quotient of the icosahedron boundary (6-vertex RP^2)
* torus_9      staircase product of two 3-cycles (9-vertex T^2)
* rp3_11       antipodal quotient of the barycentrically subdivided 4-dim
               cross-polytope boundary (40-vertex RP^3), bistellarly reduced
               to the minimal f-vector [11, 51, 80, 40]
* kummer_16    the unique 16-vertex vertex-transitive triangulation of the
               4-dimensional Kummer variety, found by exact-cover search over
               translation orbits of 5-subsets of (Z/2)^4
* block_rp3    a resolution block: 4-ball plus one 2-handle, built from three
               triangulated solid tori (boundary RP^3, second Betti number 1)
* bd_simplex_3/4, cross_3, cyclic_4_10   standard sphere fixtures

Deterministic; reruns skip fixtures that already exist (use --force).
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from simplicia import (
    ReductionOptions,
    boundary_simplex,
    cross_polytope,
    cyclic_polytope_boundary,
    euler_characteristic,
    from_facets,
    homology,
    is_isomorphic,
    isomorphisms,
    orientability,
    reduce,
)
from simplicia.blowup import RP3_HOMOLOGY, ResolutionBlock, _index_boundary
from simplicia.complex import Complex
from simplicia.store import save

LIBRARY = os.path.join(os.path.dirname(__file__), "..", "src", "simplicia", "library")


def _precache(c: Complex, topological_type=None):
    c.f_vector()
    euler_characteristic(c)
    c.flags()
    homology(c)
    if topological_type:
        c.cache_put("topological_type", topological_type)
    return c


def _write(c: Complex, fname, force):
    path = os.path.join(LIBRARY, fname)
    if os.path.exists(path) and not force:
        print("  exists, skipped: %s" % fname)
        return
    save(c, path)
    print("  wrote %s  f=%s" % (fname, c.f_vector()))


# -- icosahedron quotient ------------------------------------------------------

ICOSAHEDRON = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 7), (3, 7, 8), (3, 4, 8), (4, 8, 9), (4, 5, 9),
    (5, 9, 10), (5, 6, 10), (6, 10, 11), (2, 6, 11), (2, 7, 11),
    (12, 7, 8), (12, 8, 9), (12, 9, 10), (12, 10, 11), (12, 7, 11),
]
ANTIPODE = {1: 12, 2: 9, 3: 10, 4: 11, 5: 7, 6: 8}
ANTIPODE.update({v: k for k, v in ANTIPODE.items()})


def build_rp2_6() -> Complex:
    """RP^2 on 6 vertices: identify antipodal icosahedron vertices."""
    ico = from_facets([list(f) for f in ICOSAHEDRON])
    assert ico.f_vector() == [12, 30, 20]
    assert all(
        tuple(sorted(ANTIPODE[v] for v in f)) in set(ico.facets) for f in ico.facets
    ), "antipodal map is not an automorphism"
    rep = {v: min(v, ANTIPODE[v]) for v in range(1, 13)}
    quotient = {tuple(sorted(rep[v] for v in f)) for f in ICOSAHEDRON}
    c = from_facets(sorted(quotient), name="RP^2 (minimal 6-vertex)")
    assert c.f_vector() == [6, 15, 10]
    assert homology(c).to_lists() == [[0, []], [0, [2]], [0, []]]
    assert orientability(c)[0] is False
    return _precache(c, "RP^2")


def build_torus_9() -> Complex:
    cyc = from_facets([[1, 2], [2, 3], [1, 3]])
    c = cyc.cartesian_product(cyc, name="T^2 (9-vertex torus)")
    assert c.f_vector() == [9, 27, 18]
    assert homology(c).to_lists() == [[0, []], [2, []], [1, []]]
    return _precache(c, "T^2")


# -- RP^3 by antipodal quotient -------------------------------------------------

def barycentric_subdivision(c: Complex) -> tuple:
    """(faces, facets-of-sd) where sd vertices are the faces of c."""
    faces = sorted({s for f in c.facets for k in range(1, len(f) + 1)
                    for s in itertools.combinations(f, k)}, key=lambda s: (len(s), s))
    index = {f: i + 1 for i, f in enumerate(faces)}
    chains = []
    for facet in c.facets:
        for perm in itertools.permutations(facet):
            chain = []
            cur = ()
            for v in perm:
                cur = tuple(sorted(cur + (v,)))
                chain.append(index[cur])
            chains.append(tuple(sorted(chain)))
    return faces, sorted(set(chains))


def build_rp3_11(force_seed=None) -> Complex:
    """RP^3: antipodal quotient of sd(bd cross-polytope(4)), then reduced."""
    cross = cross_polytope(4)

    def antipode(v):
        return v + 1 if v % 2 else v - 1

    faces, sd_facets = barycentric_subdivision(cross)
    face_of = {i + 1: f for i, f in enumerate(faces)}
    index = {f: i + 1 for i, f in enumerate(faces)}

    def face_class(i):
        f = face_of[i]
        g = tuple(sorted(antipode(v) for v in f))
        return min(index[f], index[g])

    quotient = {tuple(sorted({face_class(i) for i in chain})) for chain in sd_facets}
    big = from_facets(sorted(quotient), name="RP^3 (quotient, 40 vertices)")
    assert big.f_vector()[0] == 40 and len(big.facets) == 192
    assert homology(big).to_lists() == [[0, []], [0, [2]], [0, []], [1, []]]
    assert orientability(big)[0] is True

    seeds = [force_seed] if force_seed is not None else range(20)
    for seed in seeds:
        result = reduce(big, ReductionOptions(rounds=20000, seed=seed,
                                              target=[11, 51, 80, 40]))
        if result.complex.f_vector() == [11, 51, 80, 40]:
            c = from_facets([list(f) for f in result.complex.facets],
                            name="RP^3 (minimal 11-vertex)")
            assert homology(c).to_lists() == [[0, []], [0, [2]], [0, []], [1, []]]
            assert c.flags()["is_pseudomanifold"] and not c.has_boundary()
            return _precache(c, "RP^3")
    raise RuntimeError("could not reduce the quotient RP^3 to 11 vertices")


# -- Kummer variety by orbit search --------------------------------------------

def build_kummer_16() -> Complex:
    """Exact-cover search over (Z/2)^4 translation orbits of 5-sets.

    The facet set must be a union of translation orbits (vertex transitivity)
    in which every 3-face lies in exactly two facets.  Each solution is
    checked against the full invariant set; the surviving complex is the
    Kummer variety triangulation.
    """
    group = list(range(16))

    def canon(subset):
        return min(tuple(sorted(x ^ t for x in subset)) for t in group)

    def stab_size(subset):
        s = frozenset(subset)
        return sum(1 for t in group if frozenset(x ^ t for x in s) == s)

    facet_reps = sorted({canon(s) for s in itertools.combinations(group, 5)})
    rep_index = {rep: i for i, rep in enumerate(facet_reps)}

    ridge_stab = {}
    contributions = []  # per facet rep: dict ridge-class -> coverage units
    usable = []
    for rep in facet_reps:
        contrib = {}
        ok = True
        for drop in range(5):
            ridge = rep[:drop] + rep[drop + 1:]
            key = canon(ridge)
            if key not in ridge_stab:
                ridge_stab[key] = stab_size(key)
            contrib[key] = contrib.get(key, 0) + ridge_stab[key]
        if all(v <= 2 for v in contrib.values()):
            usable.append(rep)
            contributions.append(contrib)
        else:
            contributions.append(None)

    usable_contrib = {rep: contributions[rep_index[rep]] for rep in usable}
    by_ridge = {}
    for rep in usable:
        for key in usable_contrib[rep]:
            by_ridge.setdefault(key, []).append(rep)

    solutions = []
    coverage = {}
    chosen = []

    def dfs(min_next_index):
        if len(chosen) == 12:
            if all(v == 2 for v in coverage.values() if v):
                solutions.append(list(chosen))
            return
        open_keys = [k for k, v in coverage.items() if v == 1]
        if len(open_keys) > 5 * (12 - len(chosen)):
            return
        if open_keys:
            # close the open ridge class with the fewest candidates
            def n_candidates(k):
                return sum(
                    1
                    for rep in by_ridge[k]
                    if rep not in taken and usable_contrib[rep][k] == 1
                    and _fits(rep)
                )

            key = min(open_keys, key=n_candidates)
            cands = [
                rep
                for rep in by_ridge[key]
                if rep not in taken and usable_contrib[rep][key] == 1 and _fits(rep)
            ]
        else:
            cands = [rep for rep in usable
                     if rep_index[rep] >= min_next_index and _fits(rep)]
        for rep in cands:
            _apply(rep)
            dfs(max(min_next_index, rep_index[rep] + 1) if not open_keys else min_next_index)
            _unapply(rep)
            if len(solutions) >= 64:
                return

    taken = set()

    def _fits(rep):
        for key, units in usable_contrib[rep].items():
            if coverage.get(key, 0) + units > 2:
                return False
        return True

    def _apply(rep):
        taken.add(rep)
        chosen.append(rep)
        for key, units in usable_contrib[rep].items():
            coverage[key] = coverage.get(key, 0) + units

    def _unapply(rep):
        taken.discard(rep)
        chosen.pop()
        for key, units in usable_contrib[rep].items():
            coverage[key] -= units

    # roots: the three affine classes of a 5-set {0, a, b, c, d}
    roots = [
        canon((0, 1, 2, 4, 8)),   # {a,b,c,d} independent
        canon((0, 1, 2, 3, 4)),   # one 3-term relation
        canon((0, 1, 2, 4, 7)),   # one 4-term relation
    ]
    t0 = time.time()
    for root in roots:
        if root not in usable_contrib or not _fits(root):
            continue
        _apply(root)
        dfs(0)
        _unapply(root)
    print("  orbit search: %d raw solutions in %.1fs" % (len(solutions), time.time() - t0))

    winners = []
    for sol in solutions:
        facets = sorted(
            tuple(sorted(x ^ t for x in rep)) for rep in sol for t in group
        )
        c = from_facets([[x + 1 for x in f] for f in facets])
        if c.f_vector() != [16, 120, 400, 480, 192]:
            continue
        if not (c.is_pseudomanifold() and not c.has_boundary()
                and c.is_strongly_connected()):
            continue
        if homology(c).to_lists() != [[0, []], [0, []], [6, [2, 2, 2, 2, 2]],
                                      [0, []], [1, []]]:
            continue
        links_ok = all(
            homology(c.link((v,))).entries == RP3_HOMOLOGY
            for v in range(1, 17)
        )
        if not links_ok or not orientability(c)[0]:
            continue
        if any(is_isomorphic(c, w) for w in winners):
            continue
        winners.append(c)
    if not winners:
        raise RuntimeError("Kummer orbit search found no valid complex")
    print("  %d non-isomorphic complexes pass all invariants" % len(winners))
    c = from_facets([list(f) for f in winners[0].facets],
                    name="Kummer variety K^4 (16 vertices, VT)")
    return _precache(c, "K^4 (16 nodes)")


# -- resolution block -----------------------------------------------------------

def twisted_solid_torus(m, h, s) -> Complex:
    """Disc (fan over an m-cycle) times a circle of h layers, top layer
    glued back to the bottom with a rim rotation by s."""
    def vid(layer, kind):
        return layer * (m + 1) + (1 if kind == -1 else 2 + (kind % m))

    def vertex(layer, kind):
        if layer == h:
            return vid(0, -1) if kind == -1 else vid(0, (kind + s) % m)
        return vid(layer, kind)

    disc = [(-1, i, (i + 1) % m) for i in range(m)]
    facets = []
    for layer in range(h):
        for tri in disc:
            # prism between layer and layer+1, path triangulation along the
            # fixed order of the disc triangle's corners
            order = sorted(tri, key=lambda k: (k != -1, k))
            bottom = [vertex(layer, k) for k in order]
            top = [vertex(layer + 1, k) for k in order]
            for split in range(3):
                facet = tuple(sorted(set(bottom[: split + 1] + top[split:])))
                assert len(facet) == 4, "degenerate prism tetrahedron"
                facets.append(facet)
    return from_facets(sorted(set(facets)), name="solid torus (%d,%d,%d)" % (m, h, s))


def _glue(base: Complex, base_boundary: Complex, other: Complex,
          other_boundary: Complex, iso) -> Complex:
    """Union of two complexes along an isomorphism of their boundaries.

    iso maps other_boundary vertex -> base_boundary vertex (both complexes'
    boundary subcomplexes are given with ambient-index labels).
    """
    mapping = {}
    for w, v in iso.items():
        mapping[other_boundary.labels[w - 1]] = base_boundary.labels[v - 1]
    nxt = base.n_vertices + 1
    for w in range(1, other.n_vertices + 1):
        if w not in mapping:
            mapping[w] = nxt
            nxt += 1
    facets = list(base.facets)
    facets += [tuple(sorted(mapping[w] for w in f)) for f in other.facets]
    return from_facets(sorted(set(facets)))


def build_block() -> ResolutionBlock:
    """A 4-ball with one 2-handle: cone(S^3) glued to cone(S^3) along a
    shared solid torus, chosen so the 4-complex boundary is RP^3."""
    v = twisted_solid_torus(3, 3, 0)
    bd_v = _index_boundary(v)
    fillings = []  # (complex S = V u W, name) with S an S^3, sharing V's labels
    candidates = []
    for m, h, s in [(3, 3, 0), (3, 3, 1), (3, 3, 2)]:
        candidates.append(twisted_solid_torus(m, h, s))
    for w in candidates:
        bd_w = _index_boundary(w)
        for iso in isomorphisms(bd_w, bd_v):
            glued = _glue(v, bd_v, w, bd_w, iso)
            if not (glued.is_pseudomanifold() and not glued.has_boundary()):
                continue
            h_profile = homology(glued).to_lists()
            if h_profile == [[0, []], [0, []], [0, []], [1, []]]:
                fillings.append(glued)
    print("  %d sphere fillings of the common solid torus" % len(fillings))

    apex_a = None
    for i, s1 in enumerate(fillings):
        for s2 in fillings[i:]:
            block = _cone_union(v, s1, s2)
            bd = _index_boundary(block)
            if homology(bd).entries != RP3_HOMOLOGY:
                continue
            hb = homology(block)
            if hb.betti(1) != 0 or hb.betti(2) != 1 or hb.torsion(2):
                continue
            if hb.betti(3) != 0 or euler_characteristic(block) != 2:
                continue
            if not block.is_strongly_connected():
                continue
            named = from_facets([list(f) for f in block.facets],
                                name="resolution block (4-ball plus 2-handle, boundary RP^3)")
            _precache(named)
            return ResolutionBlock(named, "RP^3",
                                   "cone over S^3 with a 2-handle across a solid torus")
    raise RuntimeError("no block candidate had an RP^3 boundary")


def _cone_union(v: Complex, s1: Complex, s2: Complex) -> Complex:
    """cone_a(s1) united with cone_b(s2) along the common subcomplex v.

    s1 and s2 both extend v on v's own vertex indices (guaranteed by _glue
    keeping the base labels fixed).
    """
    n = max(s1.n_vertices, s2.n_vertices)
    shift = n  # s2's non-v vertices move above s1's range
    v_count = v.n_vertices

    def relabel2(w):
        return w if w <= v_count else w + shift

    apex1 = 2 * n + 1
    apex2 = 2 * n + 2
    facets = [f + (apex1,) for f in s1.facets]
    facets += [tuple(sorted(tuple(relabel2(w) for w in f) + (apex2,))) for f in s2.facets]
    return from_facets(sorted(facets))


# -- driver ----------------------------------------------------------------------

def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--force", action="store_true")
    parser.add_argument("--only", nargs="*", default=None)
    args = parser.parse_args()
    os.makedirs(LIBRARY, exist_ok=True)

    def wanted(name):
        return args.only is None or name in args.only

    if wanted("spheres"):
        print("spheres:")
        _write(_precache(boundary_simplex(3)), "bd_simplex_3.json", args.force)
        _write(_precache(boundary_simplex(4)), "bd_simplex_4.json", args.force)
        _write(_precache(cross_polytope(3)), "cross_3.json", args.force)
        _write(_precache(cyclic_polytope_boundary(4, 10)), "cyclic_4_10.json", args.force)
    if wanted("rp2"):
        print("rp2_6:")
        _write(build_rp2_6(), "rp2_6.json", args.force)
    if wanted("torus"):
        print("torus_9:")
        _write(build_torus_9(), "torus_9.json", args.force)
    if wanted("rp3"):
        print("rp3_11:")
        _write(build_rp3_11(), "rp3_11.json", args.force)
    if wanted("kummer"):
        print("kummer_16:")
        _write(build_kummer_16(), "kummer_16.json", args.force)
    if wanted("block"):
        print("block_rp3:")
        block = build_block()
        _write(block.complex, "block_rp3.json", args.force)
    print("done.")


if __name__ == "__main__":
    main()
