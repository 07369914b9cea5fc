"""Ordinary double points of combinatorial 4-pseudomanifolds and their blowup.

The blowup excises the star of a singular vertex and glues in a resolution
block whose boundary is a real projective 3-space.  Boundary matching only
ever modifies the block: every bistellar move on the block's boundary is
realized by gluing one 4-simplex onto it (attach a `union` b along a * bd(b)),
so the complement of the excised star is never touched and each intermediate
object is a genuine complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bistellar import (
    Move,
    MoveEngine,
    ReductionOptions,
    bistellarly_equivalent,
    co_reduce,
    is_sphere3,
    reduce,
)
from .complex import Complex, SimplicialError, from_facets
from .invariants import HomologyProfile, homology

S3_HOMOLOGY = ((0, ()), (0, ()), (0, ()), (1, ()))
RP3_HOMOLOGY = ((0, ()), (0, (2,)), (0, ()), (1, ()))


class BlowupError(SimplicialError):
    """A blowup could not be carried out."""


def _index_link(c: Complex, v: int) -> Complex:
    """link(v) with labels equal to the ambient vertex indices."""
    facets = [tuple(w for w in f if w != v) for f in c.facets if v in f]
    if not facets:
        raise SimplicialError("vertex %d has empty link" % v)
    return from_facets(sorted(facets))


def _index_boundary(c: Complex) -> Complex:
    """boundary(c) with labels equal to the ambient vertex indices."""
    rims = sorted(r for r, fs in c.ridge_incidence().items() if len(fs) == 1)
    if not rims:
        raise SimplicialError("complex is closed")
    return from_facets(rims)


@dataclass
class SingularVertex:
    """A vertex whose link could not be certified a standard sphere.

    ``certified`` is True when the link's homology (or an exact manifold
    check) obstructs; False marks a sphere-homology link whose reduction
    budget ran out ("suspect").
    """

    vertex: int
    link_homology: HomologyProfile
    certified: bool


def singular_vertices(c: Complex, opts: ReductionOptions = None):
    """Vertices of a closed 4-pseudomanifold with non-PL-sphere links."""
    if c.dim != 4:
        raise SimplicialError("singularity scan requires a 4-complex")
    if not c.is_pseudomanifold() or c.has_boundary():
        raise SimplicialError("singularity scan requires a closed pseudomanifold")
    out = []
    for v in range(1, c.n_vertices + 1):
        link = _index_link(c, v)
        h = homology(link)
        if h.entries != S3_HOMOLOGY:
            out.append(SingularVertex(v, h, True))
            continue
        verdict = is_sphere3(link, opts)
        if verdict is True:
            continue
        out.append(SingularVertex(v, h, verdict is False))
    return out


def is_ordinary_double_point(c: Complex, v: int, rp3_fixture: Complex,
                             opts: ReductionOptions = None):
    """Is link(v) bistellarly equivalent to the reference projective space?

    True is a certificate; False only means "not established" (though a
    homology mismatch is rejected outright).
    """
    link = _index_link(c, v)
    if homology(link).entries != RP3_HOMOLOGY:
        return False
    return bistellarly_equivalent(link, rp3_fixture, opts)


@dataclass
class ResolutionBlock:
    """A compact 4-complex with projective-space boundary and b_2 = 1."""

    complex: Complex
    boundary_type: str = "RP^3"
    provenance: str = ""

    def validate(self):
        c = self.complex
        if c.dim != 4 or not c.is_pure():
            raise BlowupError("resolution block must be a pure 4-complex")
        if not c.is_strongly_connected():
            raise BlowupError("resolution block must be strongly connected")
        bd = _index_boundary(c)
        if not (bd.is_pseudomanifold() and not bd.has_boundary() and bd.dim == 3):
            raise BlowupError("block boundary must be a closed 3-pseudomanifold")
        if homology(bd).entries != RP3_HOMOLOGY:
            raise BlowupError("block boundary homology is not projective-space-like")
        if homology(c).betti(2) != 1:
            raise BlowupError("block must have second Betti number 1")
        return bd


class _BlockBuilder:
    """The growing block: a 4-facet set plus its boundary move engine."""

    def __init__(self, block: Complex):
        self.facets = set(block.facets)
        self.face_count = {}
        for f in self.facets:
            self._count(f, +1)
        rims = [
            face
            for face, n in self.face_count.items()
            if len(face) == block.dim and n == 1
        ]
        # the engine works directly in the block's vertex index space
        self.bd_engine = MoveEngine.from_raw_facets(rims)
        self.next_vertex = block.n_vertices + 1

    def _count(self, facet, delta):
        import itertools

        for k in range(1, len(facet) + 1):
            for sub in itertools.combinations(facet, k):
                n = self.face_count.get(sub, 0) + delta
                if n:
                    self.face_count[sub] = n
                else:
                    self.face_count.pop(sub, None)

    def fresh(self):
        v = self.next_vertex
        self.next_vertex += 1
        return v

    def realize(self, move: Move):
        """Glue the simplex a|b along a * bd(b); the boundary does the move."""
        a, b = move.a, move.b
        if b in self.face_count:
            raise BlowupError(
                "boundary move not realizable: %r is an interior face" % (b,)
            )
        if not self.bd_engine.is_valid(move):
            raise BlowupError("boundary move not applicable: %r" % (move,))
        simplex = tuple(sorted(a + b))
        self.facets.add(simplex)
        self._count(simplex, +1)
        self.bd_engine.apply(move)
        if b[-1] >= self.next_vertex:
            self.next_vertex = b[-1] + 1


def _emit(stream, **payload):
    if stream is not None:
        stream.write(json.dumps(payload, sort_keys=True) + "\n")


def blowup(c: Complex, v: int, block: ResolutionBlock,
           opts: ReductionOptions = None, log_stream=None, retries: int = 5) -> Complex:
    """Resolve an ordinary double point of a closed 4-pseudomanifold.

    Removes star(v), walks the block's boundary through bistellar moves
    (realized by simplex gluings that leave the block's interior homotopy
    type alone) until it is isomorphic to link(v), and glues.  Raises
    BlowupError when the vertex is not an ordinary double point or the
    matching budget is exhausted.
    """
    if c.dim != 4 or not c.is_pseudomanifold() or c.has_boundary():
        raise BlowupError("blowup requires a closed 4-pseudomanifold")
    if not 1 <= v <= c.n_vertices:
        raise BlowupError("no such vertex: %r" % v)
    base_opts = opts or ReductionOptions()
    link = _index_link(c, v)

    _emit(log_stream, phase="check_singularity", vertex=v,
          link_f=link.f_vector())
    if homology(link).entries != RP3_HOMOLOGY:
        raise BlowupError("unsupported singularity type")
    bd0 = block.validate()
    if homology(bd0).entries != homology(link).entries:
        raise BlowupError("unsupported singularity type")

    last_error = None
    for attempt in range(retries):
        seed = base_opts.seed + attempt
        match_opts = ReductionOptions(
            rounds=base_opts.rounds,
            heating=base_opts.heating,
            relaxation=base_opts.relaxation,
            seed=seed,
        )
        _emit(log_stream, phase="match_boundaries", attempt=attempt, seed=seed)
        matched = co_reduce(bd0, link, match_opts)
        if matched is None:
            last_error = BlowupError("boundaries could not be mapped")
            continue
        path_bd, path_link, iso = matched
        try:
            return _assemble(c, v, block, link, bd0, path_bd, path_link, iso,
                             log_stream)
        except BlowupError as err:
            last_error = err
            _emit(log_stream, phase="retry", reason=str(err))
            continue
    raise last_error or BlowupError("boundaries could not be mapped")


def _assemble(c, v, block, link, bd0, path_bd, path_link, iso, log_stream):
    builder = _BlockBuilder(block.complex)

    # tau: boundary-reduction engine labels -> block vertex indices
    tau = {i + 1: lab for i, lab in enumerate(bd0.labels)}

    best = tuple(reversed(builder.bd_engine.counts))

    def track_improvement():
        nonlocal best
        obj = tuple(reversed(builder.bd_engine.counts))
        if obj < best:
            best = obj
            _emit(log_stream, phase="boundary_improved",
                  f=builder.bd_engine.f_vector())

    def translate(face, allow_fresh):
        out = []
        for x in face:
            if x not in tau:
                if not allow_fresh:
                    raise BlowupError("untranslatable boundary vertex %r" % x)
                tau[x] = builder.fresh()
            out.append(tau[x])
        return tuple(sorted(out))

    engine_max = max(tau)  # engine-space labels seen so far

    for m in path_bd:
        a_t = translate(m.a, allow_fresh=False)
        b_t = translate(m.b, allow_fresh=True)
        builder.realize(Move(a_t, b_t))
        track_improvement()
        engine_max = max(engine_max, m.b[-1])

    # rho: link-reduction engine labels -> boundary engine labels; walk the
    # link's reduction backwards so the boundary grows into link(v) itself.
    rho = {w: u for u, w in iso.items()}
    for m in reversed(path_link):
        b_e = []
        for x in m.b:
            if x not in rho:
                raise BlowupError("untranslatable matched vertex %r" % x)
            b_e.append(rho[x])
        a_e = []
        for x in m.a:
            if x not in rho:
                engine_max += 1
                rho[x] = engine_max
            a_e.append(rho[x])
        move = Move(tuple(sorted(b_e)), tuple(sorted(a_e)))
        a_t = translate(move.a, allow_fresh=False)
        b_t = translate(move.b, allow_fresh=True)
        builder.realize(Move(a_t, b_t))
        track_improvement()
        engine_max = max(engine_max, move.b[-1])

    # now the boundary must equal link(v) under rho/tau
    glue = {}
    for l in range(1, link.n_vertices + 1):
        if l not in rho:
            raise BlowupError("matched boundary misses a link vertex")
        glue[tau[rho[l]]] = link.labels[l - 1]  # block index -> ambient index
    image = set()
    for f in builder.bd_engine.facets:
        if any(x not in glue for x in f):
            raise BlowupError("matched boundary does not coincide with the link")
        image.add(tuple(sorted(glue[x] for x in f)))
    link_facets = {
        tuple(sorted(link.labels[w - 1] for w in f)) for f in link.facets
    }
    if image != link_facets:
        raise BlowupError("matched boundary does not coincide with the link")
    _emit(log_stream, phase="boundaries_matched", f=builder.bd_engine.f_vector())

    _emit(log_stream, phase="assemble")
    next_ambient = c.n_vertices + 1
    mapping = {}
    for w in sorted({x for f in builder.facets for x in f}):
        if w in glue:
            mapping[w] = glue[w]
        else:
            mapping[w] = next_ambient
            next_ambient += 1
    result_facets = [f for f in c.facets if v not in f]
    result_facets += [tuple(sorted(mapping[x] for x in f)) for f in builder.facets]
    out = from_facets(sorted(result_facets))
    raw_labels = {}
    for lab in out.labels:  # labels currently carry the ambient raw indices
        raw_labels[lab] = c.labels[lab - 1] if lab <= c.n_vertices else lab
    out = out._with_raw_labels(raw_labels)
    if not (out.is_pseudomanifold() and not out.has_boundary()):
        raise BlowupError("blowup result is not a closed pseudomanifold")
    _emit(log_stream, phase="done", f=out.f_vector())
    return out
