"""Bistellar (Pachner) moves: enumeration, application, reduction, equivalence.

A move is a face pair (a, b) with |a| + |b| = d + 2: the star a * bd(b) is
replaced by bd(a) * b, which preserves the PL homeomorphism type.  The move
engine below keeps a face-to-incident-facet index up to date across moves, so
repeated enumeration (the hot loop of reduction) never rescans from scratch.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .complex import Complex, SimplicialError, as_face, from_facets
from .invariants import homology
from .isomorphism import is_isomorphic


@dataclass(frozen=True)
class Move:
    """A bistellar move removing face ``a`` and introducing face ``b``."""

    a: tuple
    b: tuple

    @property
    def dim_class(self):
        return len(self.a) - 1

    def reversed(self):
        return Move(self.b, self.a)

    def to_lists(self):
        return [list(self.a), list(self.b)]

    @classmethod
    def from_lists(cls, pair):
        return cls(tuple(pair[0]), tuple(pair[1]))


def move_deltas(d, i):
    """f-vector change of a class-i move in dimension d (Pachner counts)."""

    def c(n, k):
        return comb(n, k) if 0 <= k <= n else 0

    na, nb = i + 1, d + 1 - i
    return tuple(
        c(na, (k + 1) - nb) - c(nb, (k + 1) - na) for k in range(d + 1)
    )


class MoveEngine:
    """Mutable facet set with incidence index, on stable raw vertex labels.

    Vertex labels are plain integers that never get compacted; fresh vertices
    take successive values above everything seen so far, so replayed move
    logs stay meaningful.
    """

    __slots__ = ("d", "facets", "inc", "by_size", "counts", "max_label")

    def __init__(self, c: Complex):
        if not c.is_pure() or c.is_empty:
            raise SimplicialError("move engine requires a nonempty pure complex")
        self._init_from(c.facets)

    @classmethod
    def from_raw_facets(cls, facets):
        """Engine over facet tuples in an arbitrary (uncompacted) label space."""
        engine = cls.__new__(cls)
        facets = sorted(tuple(sorted(f)) for f in facets)
        if not facets or len({len(f) for f in facets}) != 1:
            raise SimplicialError("move engine requires a nonempty pure complex")
        engine._init_from(facets)
        return engine

    def _init_from(self, facets):
        self.d = len(facets[0]) - 1
        self.facets = set()
        self.inc = {}
        self.by_size = {k: set() for k in range(1, self.d + 2)}
        self.counts = [0] * (self.d + 1)
        self.max_label = 0
        for f in facets:
            self._add_facet(f)

    # -- bookkeeping -------------------------------------------------------

    def _add_facet(self, f):
        self.facets.add(f)
        if f[-1] > self.max_label:
            self.max_label = f[-1]
        inc = self.inc
        for k in range(1, len(f) + 1):
            for sub in itertools.combinations(f, k):
                s = inc.get(sub)
                if s is None:
                    inc[sub] = {f}
                    self.by_size[k].add(sub)
                    self.counts[k - 1] += 1
                else:
                    s.add(f)

    def _remove_facet(self, f):
        self.facets.discard(f)
        inc = self.inc
        for k in range(1, len(f) + 1):
            for sub in itertools.combinations(f, k):
                s = inc[sub]
                s.discard(f)
                if not s:
                    del inc[sub]
                    self.by_size[k].discard(sub)
                    self.counts[k - 1] -= 1

    def f_vector(self):
        return list(self.counts)

    def to_complex(self, name=""):
        return from_facets(sorted(self.facets), name=name)

    def is_face(self, face):
        return face in self.inc

    def vertices(self):
        return sorted(v[0] for v in self.by_size[1])

    # -- moves -------------------------------------------------------------

    def candidate_b(self, a):
        """The complementary face of a valid move at ``a``, else None."""
        i = len(a) - 1
        if i == self.d:
            return (self.max_label + 1,) if a in self.facets else None
        stars = self.inc.get(a)
        if stars is None or len(stars) != self.d + 1 - i:
            return None
        union = set()
        for f in stars:
            union.update(f)
        union.difference_update(a)
        if len(union) != self.d + 1 - i:
            return None
        b = tuple(sorted(union))
        if b in self.inc:
            return None
        return b

    def moves_of_class(self, i):
        """All valid class-i moves, sorted by (a, b)."""
        if i == self.d:
            fresh = (self.max_label + 1,)
            return [Move(f, fresh) for f in sorted(self.facets)]
        out = []
        for a in self.by_size.get(i + 1, ()):
            b = self.candidate_b(a)
            if b is not None:
                out.append(Move(a, b))
        out.sort(key=lambda m: (m.a, m.b))
        return out

    def all_moves(self):
        out = []
        for i in range(self.d + 1):
            out.extend(self.moves_of_class(i))
        return out

    def is_valid(self, move: Move):
        i = len(move.a) - 1
        if i == self.d:
            return (
                move.a in self.facets
                and len(move.b) == 1
                and (move.b[0],) not in self.inc
            )
        return self.candidate_b(move.a) == move.b

    def apply(self, move: Move):
        """Apply a valid move in place; raises when not applicable."""
        if not self.is_valid(move):
            raise SimplicialError("move not applicable: %r" % (move,))
        a, b = move.a, move.b
        if len(a) - 1 == self.d:
            removed = [a]
        else:
            removed = list(self.inc[a])
        if len(a) == 1:
            added = [b]
        else:
            sa = set(a)
            added = [tuple(sorted((sa - {v}) | set(b))) for v in a]
        for f in removed:
            self._remove_facet(f)
        for f in added:
            self._add_facet(f)
        if b[-1] > self.max_label:
            self.max_label = b[-1]


def valid_moves(c: Complex, i=None):
    """All valid bistellar moves of ``c`` (optionally one dimension class)."""
    engine = MoveEngine(c)
    if i is not None:
        if not 0 <= i <= engine.d:
            return []
        return engine.moves_of_class(i)
    return engine.all_moves()


def _relabel_result(c: Complex, engine: MoveEngine, name=""):
    """Materialize the engine state, carrying the input's display labels."""
    raw_labels = {}
    for v in engine.vertices():
        raw_labels[v] = c.labels[v - 1] if v <= c.n_vertices else v
    out = from_facets(sorted(engine.facets), name=name)
    return out._with_raw_labels(raw_labels)


def apply_move(c: Complex, move: Move) -> Complex:
    """The complex after one bistellar move (vertices recompacted)."""
    engine = MoveEngine(c)
    engine.apply(move)
    return _relabel_result(c, engine)


def reverse_move(c_before: Complex, move: Move, c_after: Complex) -> Move:
    """The inverse move of ``move``, expressed in ``c_after``'s vertex indices.

    Vertices are matched through display labels, which survive the
    recompaction done by :func:`apply_move`.
    """
    label_to_new = {lab: v + 1 for v, lab in enumerate(c_after.labels)}

    def translate(face, fresh_ok=False):
        out = []
        for v in face:
            lab = c_before.labels[v - 1] if v <= c_before.n_vertices else v
            out.append(label_to_new[lab])
        return tuple(sorted(out))

    return Move(translate(move.b), translate(move.a))


@dataclass
class RandomizeResult:
    complex: Complex
    requested: int
    applied: int
    moves: list


def randomize(c: Complex, n_moves: int, seed=0) -> RandomizeResult:
    """Apply ``n_moves`` moves chosen uniformly from the valid set each step.

    Deterministic per seed; stops early (reporting the count) when no move
    is valid.
    """
    rng = random.Random(seed)
    engine = MoveEngine(c)
    log = []
    applied = 0
    for _ in range(n_moves):
        moves = engine.all_moves()
        if not moves:
            break
        m = moves[rng.randrange(len(moves))]
        engine.apply(m)
        log.append(m)
        applied += 1
    return RandomizeResult(_relabel_result(c, engine), n_moves, applied, log)


@dataclass
class ReductionOptions:
    """Simulated-annealing parameters for :func:`reduce`.

    ``heating`` non-improving rounds trigger a heating phase of
    ``relaxation`` random non-reducing moves.  ``target`` may be a Complex
    or an f-vector; reaching it stops the search.
    """

    rounds: int = 5000
    heating: int = 50
    relaxation: int = 15
    seed: int = 0
    target: object = None

    def __post_init__(self):
        if self.rounds <= 0:
            raise SimplicialError("rounds must be positive")


@dataclass
class ReduceResult:
    complex: Complex
    moves: list
    converged: bool
    rounds: int


class _Reducer:
    """One annealing run; shared by reduce() and the equivalence search.

    The objective is the reversed f-vector (f_d, ..., f_0) under
    lexicographic order.  Rounds with a strictly improving move apply the
    best class's lexicographically smallest move; plateau rounds heat with
    random non-reducing moves.
    """

    def __init__(self, c: Complex, opts: ReductionOptions, rng):
        self.engine = MoveEngine(c)
        self.opts = opts
        self.rng = rng
        self.log = []
        d = self.engine.d
        deltas = {i: tuple(reversed(move_deltas(d, i))) for i in range(d + 1)}
        zero = (0,) * (d + 1)
        self.reducing_classes = sorted(
            (i for i in deltas if deltas[i] < zero), key=lambda i: deltas[i]
        )
        non_reducing = [i for i in deltas if deltas[i] >= zero]
        non_reducing.sort(key=lambda i: deltas[i])
        self.heating_classes = [i for i in non_reducing if i != d] or non_reducing
        self.best_obj = self.objective()
        self.best_facets = sorted(self.engine.facets)
        self.best_len = 0
        self.non_improving = 0
        self.heating_left = 0
        self.exhausted = False

    def objective(self):
        return tuple(reversed(self.engine.counts))

    def at_minimal_sphere(self):
        e = self.engine
        return e.counts[0] == e.d + 2 and len(e.facets) == e.d + 2

    def step(self):
        """One annealing round; returns False when no further move makes sense."""
        if self.exhausted:
            return False
        if self.heating_left > 0:
            self.heating_left -= 1
            moves = []
            for i in self.heating_classes:
                moves.extend(self.engine.moves_of_class(i))
            if not moves:
                moves = self.engine.all_moves()
            if not moves:
                self.exhausted = True
                return False
            self._apply(moves[self.rng.randrange(len(moves))])
            return True
        if self.at_minimal_sphere():
            self.exhausted = True
            return False
        for i in self.reducing_classes:
            cands = self.engine.moves_of_class(i)
            if cands:
                self._apply(cands[0])
                return True
        # plateau: start a heating phase right away
        self.heating_left = self.opts.relaxation
        self.non_improving = 0
        return self.step()

    def _apply(self, move):
        self.engine.apply(move)
        self.log.append(move)
        obj = self.objective()
        if obj < self.best_obj:
            self.best_obj = obj
            self.best_facets = sorted(self.engine.facets)
            self.best_len = len(self.log)
            self.non_improving = 0
        else:
            self.non_improving += 1
            if self.non_improving >= self.opts.heating:
                self.heating_left = self.opts.relaxation
                self.non_improving = 0

    def reached(self, target):
        if target is None:
            return False
        if isinstance(target, Complex):
            if self.engine.f_vector() != target.f_vector():
                return False
            return is_isomorphic(self.engine.to_complex(), target) is not None
        return self.engine.f_vector() == list(target)


def reduce(c: Complex, opts: ReductionOptions = None) -> ReduceResult:
    """Vertex/facet-count reduction by simulated annealing; seeded and
    deterministic.  Returns the best complex found and the move sequence
    leading to it; ``converged`` reports whether the target (or the minimal
    sphere fixpoint) was reached.
    """
    opts = opts or ReductionOptions()
    rng = random.Random(opts.seed)
    red = _Reducer(c, opts, rng)
    converged = red.at_minimal_sphere() or red.reached(opts.target)
    rounds = 0
    while rounds < opts.rounds and not converged:
        if not red.step():
            converged = red.at_minimal_sphere()
            break
        rounds += 1
        if opts.target is not None and red.reached(opts.target):
            # make the target state the reported one
            red.best_obj = red.objective()
            red.best_facets = sorted(red.engine.facets)
            red.best_len = len(red.log)
            converged = True
            break
        if red.at_minimal_sphere():
            converged = True
            break
    best = from_facets(red.best_facets)
    raw_labels = {}
    for v in range(1, best.n_vertices + 1):
        raw = best.labels[v - 1]
        raw_labels[raw] = c.labels[raw - 1] if raw <= c.n_vertices else raw
    best = best._with_raw_labels(raw_labels)
    return ReduceResult(best, red.log[: red.best_len], converged, rounds)


def co_reduce(c1: Complex, c2: Complex, opts: ReductionOptions = None):
    """Reduce two complexes in lockstep until their states become isomorphic.

    Returns (moves1, moves2, iso) where the move lists lead from the inputs
    to isomorphic states and iso maps the first state's raw engine labels to
    the second's; None when the budget runs out without a match.
    """
    opts = opts or ReductionOptions()
    if c1.dim != c2.dim:
        raise SimplicialError("equivalence requires equal dimensions")
    r1 = _Reducer(c1, opts, random.Random(opts.seed))
    r2 = _Reducer(c2, opts, random.Random(opts.seed + 1))

    def cross_check():
        if r1.engine.counts != r2.engine.counts:
            return None
        k1 = r1.engine.to_complex()
        k2 = r2.engine.to_complex()
        mapping = is_isomorphic(k1, k2)
        if mapping is None:
            return None
        raw = {
            k1.labels[v - 1]: k2.labels[w - 1] for v, w in mapping.items()
        }
        return raw

    iso = cross_check()
    if iso is not None:
        return ([], [], iso)
    for _ in range(opts.rounds):
        moved1 = r1.step()
        moved2 = r2.step()
        if not moved1 and not moved2:
            break
        iso = cross_check()
        if iso is not None:
            return (list(r1.log), list(r2.log), iso)
    return None


def bistellarly_equivalent(c1: Complex, c2: Complex, opts: ReductionOptions = None):
    """Heuristic PL-equivalence: True is a certificate (a common reduction
    state was reached); False only means "not established".
    """
    if c1.dim != c2.dim:
        return False
    if homology(c1) != homology(c2):
        return False
    return co_reduce(c1, c2, opts) is not None


def _is_circle(c: Complex):
    if c.dim != 1 or not c.is_connected():
        return False
    degrees = {}
    for u, v in c.facets:
        degrees[u] = degrees.get(u, 0) + 1
        degrees[v] = degrees.get(v, 0) + 1
    return all(d == 2 for d in degrees.values())


def _is_path_or_circle(c: Complex):
    if c.dim != 1 or not c.is_connected():
        return False
    degrees = {}
    for u, v in c.facets:
        degrees[u] = degrees.get(u, 0) + 1
        degrees[v] = degrees.get(v, 0) + 1
    return all(d <= 2 for d in degrees.values())


def _is_surface(c: Complex, closed=True):
    if c.dim != 2 or not c.is_pure() or not c.is_pseudomanifold():
        return False
    if closed and c.has_boundary():
        return False
    for v in range(1, c.n_vertices + 1):
        link = c.link((v,))
        ok = _is_circle(link) if closed else _is_path_or_circle(link)
        if not ok:
            return False
    return True


def is_two_sphere(c: Complex):
    """Exact S^2 recognition: closed surface, connected, Euler characteristic 2."""
    from .invariants import euler_characteristic

    return (
        _is_surface(c, closed=True)
        and c.is_connected()
        and euler_characteristic(c) == 2
    )


def is_combinatorial_manifold(c: Complex, opts: ReductionOptions = None):
    """True / False / "unknown": do all vertex links reduce to boundary simplices?

    Exact in dimensions <= 3 (sphere and disc links are recognized
    combinatorially); in dimension 4 sphere links are certified by bistellar
    reduction, so a budget exhaustion reports "unknown".  False is only
    returned on a homological obstruction, which is a proof.
    """
    if not c.is_pure():
        raise SimplicialError("manifold check requires a pure complex")
    if not c.is_pseudomanifold():
        return False
    d = c.dim
    if d <= 0:
        return True
    if d == 1:
        degrees = {}
        for u, v in c.facets:
            degrees[u] = degrees.get(u, 0) + 1
            degrees[v] = degrees.get(v, 0) + 1
        return all(deg <= 2 for deg in degrees.values())
    if d == 2:
        return _is_surface(c, closed=not c.has_boundary())
    if d == 3:
        closed = not c.has_boundary()
        for v in range(1, c.n_vertices + 1):
            link = c.link((v,))
            if closed or not link.has_boundary():
                if not is_two_sphere(link):
                    return False
            else:
                if not _is_disc(link):
                    return False
        return True
    if d == 4:
        if c.has_boundary():
            return "unknown"
        verdict = True
        for v in range(1, c.n_vertices + 1):
            link = c.link((v,))
            sub = is_sphere3(link, opts)
            if sub is False:
                return False
            if sub == "unknown":
                verdict = "unknown"
        return verdict
    return "unknown"


def _is_disc(c: Complex):
    from .invariants import euler_characteristic

    return (
        _is_surface(c, closed=False)
        and c.is_connected()
        and c.has_boundary()
        and euler_characteristic(c) == 1
    )


def is_sphere3(c: Complex, opts: ReductionOptions = None):
    """True / False / "unknown": is the closed 3-complex a combinatorial S^3?"""
    if is_combinatorial_manifold(c) is not True:
        return False
    profile = homology(c).to_lists()
    if profile != [[0, []], [0, []], [0, []], [1, []]]:
        return False
    if len(c.facets) == c.n_vertices == 5:
        return True
    result = reduce(c, opts or ReductionOptions(target=[5, 10, 10, 5]))
    return True if result.converged and result.complex.n_vertices == 5 else "unknown"
