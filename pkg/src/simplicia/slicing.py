"""Slicings of combinatorial 3-manifolds: discrete normal surfaces.

The level set separating a vertex bipartition meets each tetrahedron in a
normal triangle (3-1 vertex split), a normal quadrilateral (2-2 split) or
not at all (4-0 split).  Normal-surface vertices sit on the ambient edges
crossing the partition, one per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Complex, SimplicialError, from_facets
from .invariants import euler_characteristic, homology, orientability


@dataclass(frozen=True)
class VertexPartition:
    """Two disjoint nonempty vertex sets covering all vertices."""

    side_a: tuple
    side_b: tuple

    @classmethod
    def of(cls, c: Complex, side_a, side_b=None):
        a = frozenset(side_a)
        allv = set(range(1, c.n_vertices + 1))
        b = frozenset(side_b) if side_b is not None else frozenset(allv - a)
        if not a or not b:
            raise SimplicialError("both partition sides must be nonempty")
        if a & b:
            raise SimplicialError("partition sides overlap")
        if a | b != allv:
            raise SimplicialError("partition must cover all vertices")
        return cls(tuple(sorted(a)), tuple(sorted(b)))


@dataclass(frozen=True)
class NormalSurface:
    """Polytopal 2-complex with triangle and quadrilateral cells.

    Vertices are the crossing ambient edges (u, v), u on side A and v on
    side B, serialized as "u-v" using ambient labels.  Quadrilateral corners
    are listed in their induced cyclic order, so opposite corners lie on
    disjoint ambient edges.
    """

    vertices: tuple        # crossing ambient edges (u, v), sorted
    edges: tuple           # pairs of crossing edges, one per mixed ambient triangle
    triangles: tuple       # 3-tuples of vertex indices (1-based into .vertices)
    quads: tuple           # cyclically ordered 4-tuples of vertex indices
    labels: tuple          # display labels, "u-v" per vertex
    name: str = ""

    def f_vector(self):
        return [len(self.vertices), len(self.edges), len(self.triangles), len(self.quads)]

    def euler_characteristic(self):
        f = self.f_vector()
        return f[0] - f[1] + f[2] + f[3]


def slicing(c: Complex, partition: VertexPartition, name="") -> NormalSurface:
    """The discrete normal surface separating the two partition sides."""
    if c.dim != 3:
        raise SimplicialError("only 3-manifold slicings supported")
    if not (c.is_pure() and c.is_pseudomanifold() and not c.has_boundary()):
        raise SimplicialError("slicing requires a closed pseudomanifold")
    partition = VertexPartition.of(c, partition.side_a, partition.side_b)
    side_a = set(partition.side_a)

    def crossing(u, v):
        return (u, v) if u in side_a else (v, u)

    ns_vertices = sorted(
        crossing(u, v)
        for u, v in c.faces(1)
        if (u in side_a) != (v in side_a)
    )
    index = {e: i + 1 for i, e in enumerate(ns_vertices)}

    edges = []
    for tri in c.faces(2):
        ins = [v for v in tri if v in side_a]
        outs = [v for v in tri if v not in side_a]
        if not ins or not outs:
            continue
        lone, pair = (ins[0], outs) if len(ins) == 1 else (outs[0], ins)
        e1 = index[crossing(lone, pair[0])]
        e2 = index[crossing(lone, pair[1])]
        edges.append(tuple(sorted((e1, e2))))
    edges.sort()

    triangles = []
    quads = []
    for facet in c.facets:
        ins = sorted(v for v in facet if v in side_a)
        outs = sorted(v for v in facet if v not in side_a)
        if not ins or not outs:
            continue
        if len(ins) == 1 or len(outs) == 1:
            lone, others = (ins[0], outs) if len(ins) == 1 else (outs[0], ins)
            cell = tuple(sorted(index[crossing(lone, w)] for w in others))
            triangles.append(cell)
        else:
            x1, x2 = ins
            y1, y2 = outs
            # cyclic order: opposite corners use disjoint ambient edges
            cell = (
                index[(x1, y1)],
                index[(x1, y2)],
                index[(x2, y2)],
                index[(x2, y1)],
            )
            quads.append(cell)
    triangles.sort()
    quads.sort()

    labels = tuple(
        "%s-%s" % (c.labels[u - 1], c.labels[v - 1]) for u, v in ns_vertices
    )
    return NormalSurface(
        tuple(ns_vertices),
        tuple(edges),
        tuple(triangles),
        tuple(quads),
        labels,
        name or "slicing %s/%s of %s"
        % (list(partition.side_a), list(partition.side_b), c.name or "complex"),
    )


def ns_triangulation(ns: NormalSurface) -> Complex:
    """Simplicial version: each quad is split at its smallest-labelled corner.

    The diagonal choice is combinatorial only; any diagonal yields a
    PL-equivalent surface.
    """
    facets = [list(t) for t in ns.triangles]
    for quad in ns.quads:
        corners = list(quad)
        smallest = min(range(4), key=lambda k: ns.vertices[corners[k] - 1])
        c0 = corners[smallest]
        c1 = corners[(smallest + 1) % 4]
        c2 = corners[(smallest + 2) % 4]
        c3 = corners[(smallest + 3) % 4]
        facets.append(sorted((c0, c1, c2)))
        facets.append(sorted((c0, c2, c3)))
    out = from_facets(facets, name=ns.name and "triangulated %s" % ns.name)
    raw = {v: ns.labels[v - 1] for f in facets for v in f}
    return out._with_raw_labels(raw)


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    genus: int
    components: int
    chi: int
    descriptor: str


def surface_type(ns: NormalSurface) -> SurfaceType:
    """Classify the closed surface carried by a slicing."""
    tri = ns_triangulation(ns)
    if tri.is_empty or tri.dim != 2:
        raise SimplicialError("not a closed surface")
    for fs in tri.ridge_incidence().values():
        if len(fs) != 2:
            raise SimplicialError("not a closed surface")
    chi = ns.euler_characteristic()
    if euler_characteristic(tri) != chi:
        raise AssertionError("triangulation changed the Euler characteristic")

    # component count from facet connectivity of the triangulated surface
    components = _component_count(tri)
    if components == 1:
        orientable, _ = orientability(tri)
    else:
        orientable = all(
            orientability(comp)[0] for comp in _components(tri)
        )
    if components != 1:
        descriptor = "%d components" % components
        genus = -1
    elif orientable:
        genus = (2 - chi) // 2
        descriptor = "S^2" if genus == 0 else ("T^2" if genus == 1 else "(T^2)#%d" % genus)
    else:
        genus = 2 - chi
        descriptor = "RP^2" if genus == 1 else "(RP^2)#%d" % genus
    return SurfaceType(orientable, genus, components, chi, descriptor)


def _component_count(c: Complex):
    return len(_components(c))


def _components(c: Complex):
    index = {f: i for i, f in enumerate(c.facets)}
    parent = list(range(len(c.facets)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fs in c.ridge_incidence().values():
        r = find(index[fs[0]])
        for f in fs[1:]:
            parent[find(index[f])] = r
    groups = {}
    for f, i in index.items():
        groups.setdefault(find(i), []).append(f)
    return [from_facets(sorted(fs)) for fs in groups.values()]
