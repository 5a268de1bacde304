"""Assignments, l-assignments, the induced near cover and the agreement tester.

Local functions are bit tuples aligned with the sorted vertices of their
face.  The tester flips a fair coin between (1) the empty-triangle
coboundary test run against the cochain induced by matching lists across
edges and (2) sampling an edge of the representation complex and checking
that some permutation matches the two lists on the shared vertices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complex_core import SimplicialComplex
from .errors import (
    BaseMismatch,
    InvalidParams,
    NotAnEdge,
    SearchSpaceTooLarge,
)
from .group_cochains import Cochain
from .groups import SymmetricGroup
from .representation import (
    RepresentationComplex,
    all_empty_triangles,
    build_representation,
    eps_empty_triangles,
    eps_full_triangles,
)


@dataclass
class Assignment:
    """One boolean local function per k-face."""

    base: SimplicialComplex
    k: int
    values: dict  # face -> tuple of bits aligned with sorted face vertices

    def __post_init__(self):
        faces = self.base.faces(self.k)
        if set(self.values) != set(faces):
            raise InvalidParams("assignment must be total on the k-faces")
        for f, bits in self.values.items():
            if len(bits) != len(f) or any(b not in (0, 1) for b in bits):
                raise InvalidParams("bad local function on %r" % (f,))

    def local(self, face, vertex) -> int:
        face = tuple(sorted(face))
        return self.values[face][face.index(vertex)]


@dataclass
class LAssignment:
    """An ordered list of l boolean local functions per k-face."""

    base: SimplicialComplex
    k: int
    l: int
    lists: dict  # face -> tuple of l bit tuples

    def __post_init__(self):
        faces = self.base.faces(self.k)
        if set(self.lists) != set(faces):
            raise InvalidParams("l-assignment must be total on the k-faces")
        for f, fns in self.lists.items():
            if len(fns) != self.l:
                raise InvalidParams("list length != l on %r" % (f,))
            for bits in fns:
                if len(bits) != len(f) or any(b not in (0, 1) for b in bits):
                    raise InvalidParams("bad local function on %r" % (f,))

    def entry(self, face, i) -> tuple:
        return self.lists[tuple(sorted(face))][i]

    def value(self, face, i, vertex) -> int:
        face = tuple(sorted(face))
        return self.lists[face][i][face.index(vertex)]

    def slice_assignment(self, perms: dict, i: int) -> Assignment:
        """The i-th sub-assignment under per-face permutations."""
        return Assignment(
            self.base,
            self.k,
            {f: self.lists[f][perms[f][i]] for f in self.lists},
        )


def is_2_locally_differing(lass: LAssignment) -> bool:
    """Every two list entries on a face differ on at least two vertices."""
    for f, fns in lass.lists.items():
        for a, b in itertools.combinations(range(lass.l), 2):
            if sum(x != y for x, y in zip(fns[a], fns[b])) < 2:
                return False
    return True


def assignment_distance(F: Assignment, G: Assignment) -> Fraction:
    if F.base != G.base or F.k != G.k:
        raise BaseMismatch("assignments over different bases")
    diff = [f for f in F.values if F.values[f] != G.values[f]]
    return F.base.norm(diff) if diff else Fraction(0)


def l_assignment_distance(F: LAssignment, G: LAssignment) -> Fraction:
    """Positional distance: no permutation minimization here."""
    if F.base != G.base or F.k != G.k or F.l != G.l:
        raise BaseMismatch("l-assignments over different bases")
    total = Fraction(0)
    for f in F.lists:
        m = sum(1 for a, b in zip(F.lists[f], G.lists[f]) if a != b)
        if m:
            total += F.base.weight(f) * Fraction(m, F.l)
    return total


# -- the induced near cover ---------------------------------------------------


@dataclass(frozen=True)
class EdgeQuery:
    matching: tuple  # pairs (i, pi(i))
    pi: tuple
    adequate: bool
    ambiguous: bool


def _rep_edge_faces(lass: LAssignment, sigma1, sigma2):
    s1 = tuple(sorted(sigma1))
    s2 = tuple(sorted(sigma2))
    shared = tuple(sorted(set(s1) & set(s2)))
    union = tuple(sorted(set(s1) | set(s2)))
    if (
        s1 == s2
        or len(shared) != lass.k
        or s1 not in lass.base.faces(lass.k)
        or s2 not in lass.base.faces(lass.k)
        or union not in lass.base
    ):
        raise NotAnEdge("{%r, %r} is not a representation edge" % (s1, s2))
    return s1, s2, shared


def query_cover_edge(lass: LAssignment, sigma1, sigma2) -> EdgeQuery:
    """Find the permutation matching the two lists on the shared vertices.

    Returns the matching as pairs (i, pi(i)); without an agreeing
    permutation the identity matching is returned and the edge is
    inadequately covered.  With several agreeing permutations (possible
    only when the input is not 2-locally-differing) the lexicographically
    smallest is picked and the ambiguity flag set.
    """
    s1, s2, shared = _rep_edge_faces(lass, sigma1, sigma2)
    candidates = []
    for pi in itertools.permutations(range(lass.l)):
        if all(
            lass.value(s1, i, v) == lass.value(s2, pi[i], v)
            for i in range(lass.l)
            for v in shared
        ):
            candidates.append(pi)
    if candidates:
        pi = min(candidates)
        return EdgeQuery(
            tuple((i, pi[i]) for i in range(lass.l)),
            pi,
            True,
            len(candidates) > 1,
        )
    ident = tuple(range(lass.l))
    return EdgeQuery(tuple((i, i) for i in range(lass.l)), ident, False, False)


def is_adequately_covered(lass: LAssignment, sigma1, sigma2) -> bool:
    s1, s2, shared = _rep_edge_faces(lass, sigma1, sigma2)
    for pi in itertools.permutations(range(lass.l)):
        if all(
            lass.value(s1, i, v) == lass.value(s2, pi[i], v)
            for i in range(lass.l)
            for v in shared
        ):
            return True
    return False


def induced_cochain(rep: RepresentationComplex, lass: LAssignment):
    """The S_l cochain read off every representation edge, together with
    the inadequately covered edge set and an ambiguity indicator."""
    grp = SymmetricGroup(lass.l)
    vals = {}
    inadequate = set()
    ambiguous = False
    for (a, b) in rep.faces(1):
        q = query_cover_edge(
            lass, rep.vertex_kface(a), rep.vertex_kface(b)
        )
        # sheet over b is pi(sheet over a): the edge cochain maps b-sheets
        # back to a-sheets under the Y_phi convention s_a = phi(a,b) s_b.
        vals[(a, b)] = grp.inv(q.pi)
        if not q.adequate:
            inadequate.add((a, b))
        ambiguous = ambiguous or q.ambiguous
    return Cochain(rep, 1, grp, vals), frozenset(inadequate), ambiguous


# -- the tester ---------------------------------------------------------------


@dataclass
class AgreementReport:
    mode: str
    rejection: Fraction | float | None
    inadequate_norm: Fraction | None = None
    coboundary_rejection: Fraction | None = None
    eps_full: Fraction | None = None
    eps_empty: Fraction | None = None
    validated_2_differing: bool | None = None
    ambiguous_permutation: bool = False
    oracle_distance: Fraction | None = None
    trials: int | None = None
    rejections: int | None = None
    wilson_interval: tuple | None = None
    reads_entries: int | None = None
    reads_faces: int | None = None
    parameters: dict = field(default_factory=dict)


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054):
    """95% Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (
        z
        * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
        / denom
    )
    return (max(0.0, center - half), min(1.0, center + half))


class _QueryAccountant:
    """Memoizes whole-face list reads within one tester invocation."""

    def __init__(self, lass: LAssignment):
        self.lass = lass
        self.faces_read: set = set()

    def read_face(self, face):
        face = tuple(sorted(face))
        self.faces_read.add(face)
        return self.lass.lists[face]

    @property
    def reads_faces(self) -> int:
        return len(self.faces_read)

    @property
    def reads_entries(self) -> int:
        return len(self.faces_read) * self.lass.l


def _edge_query_counted(lass, acct, s1, s2):
    acct.read_face(s1)
    acct.read_face(s2)
    return query_cover_edge(lass, s1, s2)


def _single_shot(lass, rep, rng):
    """One run of the tester; returns (accepted, accountant)."""
    grp = SymmetricGroup(lass.l)
    acct = _QueryAccountant(lass)

    def phi(a, b):
        q = _edge_query_counted(
            lass, acct, rep.vertex_kface(min(a, b)), rep.vertex_kface(max(a, b))
        )
        val = grp.inv(q.pi)
        if a < b:
            return val
        return q.pi

    if rng.random() < 0.5:
        # the coboundary tester, queries answered through the edge matcher
        if rng.random() < 0.5:
            if not rep.faces(2):
                return True, acct
            tri = rep.sample_face(2, rng)
            a, b, c = tri
        else:
            if rep.k == 0:
                return True, acct
            lower = rep.lower()
            lo = lower.sample_face(2, rng)
            ku, kv, kw = (lower.vertex_kface(t) for t in lo)
            a = rep.id_of[tuple(sorted(set(ku) | set(kv)))]
            b = rep.id_of[tuple(sorted(set(kv) | set(kw)))]
            c = rep.id_of[tuple(sorted(set(kw) | set(ku)))]
        prod = grp.mul(grp.mul(phi(a, b), phi(b, c)), phi(c, a))
        return prod == grp.identity, acct
    edge = rep.sample_face(1, rng)
    acct.read_face(rep.vertex_kface(edge[0]))
    acct.read_face(rep.vertex_kface(edge[1]))
    ok = is_adequately_covered(
        lass, rep.vertex_kface(edge[0]), rep.vertex_kface(edge[1])
    )
    return ok, acct


def list_agreement_test(
    lass: LAssignment,
    mode: str = "exhaustive",
    rng=None,
    rep: RepresentationComplex | None = None,
    trials: int = 1000,
) -> AgreementReport:
    """Run the list-agreement tester.

    Exhaustive mode returns the exact rejection probability
    0.5 * (coboundary-test rejection + inadequately-covered norm); single
    and montecarlo modes take a caller-owned rng and keep the read budget
    at 3l list entries per shot.
    """
    if rep is None:
        rep = build_representation(lass.base, lass.k)
    validated = is_2_locally_differing(lass)
    if mode == "exhaustive":
        phi, inadequate, ambiguous = induced_cochain(rep, lass)
        full = eps_full_triangles(phi)
        empty = eps_empty_triangles(phi)
        cob = Fraction(1, 2) * (full + empty)
        inorm = rep.norm(inadequate) if inadequate else Fraction(0)
        return AgreementReport(
            mode="exhaustive",
            rejection=Fraction(1, 2) * (cob + inorm),
            inadequate_norm=inorm,
            coboundary_rejection=cob,
            eps_full=full,
            eps_empty=empty,
            validated_2_differing=validated,
            ambiguous_permutation=ambiguous,
        )
    if rng is None:
        raise InvalidParams("mode %r needs an rng" % mode)
    if mode == "single":
        ok, acct = _single_shot(lass, rep, rng)
        return AgreementReport(
            mode="single",
            rejection=Fraction(0) if ok else Fraction(1),
            validated_2_differing=validated,
            reads_entries=acct.reads_entries,
            reads_faces=acct.reads_faces,
        )
    if mode == "montecarlo":
        rejections = 0
        max_entries = 0
        for _ in range(trials):
            ok, acct = _single_shot(lass, rep, rng)
            rejections += 0 if ok else 1
            max_entries = max(max_entries, acct.reads_entries)
        return AgreementReport(
            mode="montecarlo",
            rejection=rejections / trials if trials else None,
            validated_2_differing=validated,
            trials=trials,
            rejections=rejections,
            wilson_interval=wilson_interval(rejections, trials),
            reads_entries=max_entries,
        )
    raise InvalidParams("unknown mode %r" % mode)


# -- oracles ------------------------------------------------------------------


def _global_restriction(bits, vertex_index, face) -> tuple:
    return tuple(bits[vertex_index[v]] for v in face)


def dist_assignment_to_agreeing_oracle(F: Assignment, max_vertices: int = 16):
    """Exact distance of a single assignment to the agreeing set."""
    verts = F.base.vertices
    if len(verts) > max_vertices:
        raise SearchSpaceTooLarge("assignment oracle gated to %d vertices" % max_vertices)
    vindex = {v: i for i, v in enumerate(verts)}
    faces = sorted(F.values)
    best = None
    best_bits = None
    for mask in range(1 << len(verts)):
        bits = tuple(mask >> i & 1 for i in range(len(verts)))
        d = Fraction(0)
        for f in faces:
            if F.values[f] != _global_restriction(bits, vindex, f):
                d += F.base.weight(f)
        if best is None or d < best:
            best, best_bits = d, bits
    return best, best_bits


def dist_to_agreeing_oracle(
    lass: LAssignment, max_vertices: int = 10, max_l: int = 3
):
    """Exact distance of an l-assignment to the agreeing l-assignments.

    Minimizes over every l-tuple of global functions and, per face, over
    all l! matchings of list entries to restrictions.  Returns
    (distance, (globals, per-face permutations)).
    """
    verts = lass.base.vertices
    if len(verts) > max_vertices or lass.l > max_l:
        raise SearchSpaceTooLarge(
            "agreeing oracle gated to %d vertices and l <= %d"
            % (max_vertices, max_l)
        )
    vindex = {v: i for i, v in enumerate(verts)}
    faces = sorted(lass.lists)
    n = len(verts)
    perms = list(itertools.permutations(range(lass.l)))
    best = None
    best_witness = None
    for combo in itertools.combinations_with_replacement(range(1 << n), lass.l):
        globs = [
            tuple(mask >> i & 1 for i in range(n)) for mask in combo
        ]
        total = Fraction(0)
        face_perms = {}
        for f in faces:
            restr = [
                _global_restriction(bits, vindex, f) for bits in globs
            ]
            entries = lass.lists[f]
            bm = None
            bp = None
            for pi in perms:
                mism = sum(1 for i in range(lass.l) if entries[pi[i]] != restr[i])
                if bm is None or mism < bm:
                    bm, bp = mism, pi
            face_perms[f] = bp
            total += lass.base.weight(f) * Fraction(bm, lass.l)
            if best is not None and total > best:
                break
        if best is None or total < best:
            best = total
            best_witness = (tuple(globs), face_perms)
    return best, best_witness


def is_agreeing(lass: LAssignment):
    """Whether l global functions and per-face permutations explain every
    list; backtracking over per-face matchings with forced globals.

    Returns (True, globals) with globals as bit dicts, or (False, None).
    Exact, and fast on desk-scale inputs where the exhaustive oracle's
    vertex gate would bite.
    """
    faces = sorted(lass.lists)
    perms = list(itertools.permutations(range(lass.l)))
    globs = [dict() for _ in range(lass.l)]

    def extend(idx):
        if idx == len(faces):
            return True
        f = faces[idx]
        entries = lass.lists[f]
        for pi in perms:
            touched = []
            ok = True
            for i in range(lass.l):
                bits = entries[pi[i]]
                for v, b in zip(f, bits):
                    cur = globs[i].get(v)
                    if cur is None:
                        globs[i][v] = b
                        touched.append((i, v))
                    elif cur != b:
                        ok = False
                        break
                if not ok:
                    break
            if ok and extend(idx + 1):
                return True
            for i, v in touched:
                del globs[i][v]
        return False

    if extend(0):
        return True, [dict(g) for g in globs]
    return False, None


def one_up_rejection(rep: RepresentationComplex, F: Assignment) -> Fraction:
    """Exact rejection probability of the 1-up agreement test on a single
    assignment: the norm of the representation edges whose two local
    functions disagree on the shared core."""
    bad = []
    for (a, b) in rep.faces(1):
        s1 = rep.vertex_kface(a)
        s2 = rep.vertex_kface(b)
        shared = set(s1) & set(s2)
        if any(F.local(s1, v) != F.local(s2, v) for v in shared):
            bad.append((a, b))
    return rep.norm(bad) if bad else Fraction(0)


# -- input builders -----------------------------------------------------------


def agreeing_l_assignment(X, k, globals_bits, perms=None, rng=None) -> LAssignment:
    """Assemble an agreeing l-assignment from globals; per-face list order
    comes from `perms` or is drawn from rng (identity if neither given)."""
    verts = X.vertices
    vindex = {v: i for i, v in enumerate(verts)}
    l = len(globals_bits)
    lists = {}
    for f in sorted(X.faces(k)):
        if perms is not None:
            pi = perms[f]
        elif rng is not None:
            pi = list(range(l))
            rng.shuffle(pi)
        else:
            pi = range(l)
        restr = [_global_restriction(b, vindex, f) for b in globals_bits]
        lists[f] = tuple(restr[i] for i in pi)
    return LAssignment(X, k, l, lists)


def random_agreeing_2diff(X, k: int, rng) -> LAssignment:
    """A random agreeing 2-locally-differing 2-assignment: a random global
    and its complement, shuffled per face (complements differ everywhere)."""
    n = len(X.vertices)
    f = tuple(rng.randrange(2) for _ in range(n))
    g = tuple(1 - b for b in f)
    return agreeing_l_assignment(X, k, (f, g), rng=rng)


def corrupt_entry(lass: LAssignment, face, slot: int, new_bits) -> LAssignment:
    face = tuple(sorted(face))
    new_bits = tuple(new_bits)
    if len(new_bits) != len(face):
        raise InvalidParams("corruption has the wrong arity")
    lists = dict(lass.lists)
    entries = list(lists[face])
    entries[slot] = new_bits
    lists[face] = tuple(entries)
    return LAssignment(lass.base, lass.k, lass.l, lists)
