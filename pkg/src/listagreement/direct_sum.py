"""Direct sums of boolean vertex functions and the parity-blind tester.

A k-direct-sum assigns to every (k-1)-face the parity of an origin
function over its vertices.  Reconstruction inverts this within a single
k-face; for even k the origin is only determined up to a global
complement, so the tester runs list agreement with l = 2 there and l = 1
for odd k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complex_core import SimplicialComplex
from .errors import (
    InvalidParams,
    NoContainingFace,
    SearchSpaceTooLarge,
)
from .list_agreement import (
    AgreementReport,
    LAssignment,
    list_agreement_test,
)
from .representation import RepresentationComplex, build_representation


@dataclass
class FaceFunction:
    """A bit per (k-1)-face."""

    base: SimplicialComplex
    k: int
    values: dict  # (k-1)-face -> bit

    def __post_init__(self):
        faces = self.base.faces(self.k - 1)
        if set(self.values) != set(faces):
            raise InvalidParams("face function must be total on the (k-1)-faces")
        if any(b not in (0, 1) for b in self.values.values()):
            raise InvalidParams("face function values must be bits")


def eval_direct_sum(X: SimplicialComplex, origin: dict, k: int) -> FaceFunction:
    """The k-direct-sum of a vertex bit function: parity over each (k-1)-face."""
    vals = {}
    for f in X.faces(k - 1):
        vals[f] = sum(origin[v] for v in f) % 2
    return FaceFunction(X, k, vals)


def _check_reconstructible(F: FaceFunction):
    if F.base.d < F.k + 1:
        raise NoContainingFace(
            "origin reconstruction needs (k+1)-faces in the complex"
        )


def reconstruct_origin(F: FaceFunction, face_choice=None):
    """Reconstruct origin candidates from local sums inside chosen k-faces.

    Odd k returns a single vertex function; even k returns the anchored
    pair (f0, f1) with f1 the complement of f0 and f0 zero on the
    lowest-labelled vertex.  `face_choice` optionally maps each vertex
    (odd) or each non-anchor vertex (even) to the k-face used.
    """
    _check_reconstructible(F)
    X, k = F.base, F.k
    verts = X.vertices
    kfaces = sorted(X.faces(k))
    if k % 2 == 1:
        f = {}
        for v in verts:
            sigma = _containing_face(kfaces, (v,), face_choice, v)
            f[v] = (
                sum(
                    F.values[tuple(sorted(a + (v,)))]
                    for a in itertools.combinations(
                        tuple(x for x in sigma if x != v), k - 1
                    )
                )
                % 2
            )
        return f
    anchor = verts[0]
    f0 = {anchor: 0}
    for v in verts[1:]:
        sigma = _containing_face(kfaces, (anchor, v), face_choice, v)
        f0[v] = (
            sum(
                F.values[tuple(sorted(a + (anchor, v)))]
                for a in itertools.combinations(
                    tuple(x for x in sigma if x not in (anchor, v)), k - 2
                )
            )
            % 2
        )
    f1 = {v: 1 - b for v, b in f0.items()}
    return f0, f1


def _containing_face(kfaces, required, face_choice, key):
    if face_choice is not None and key in face_choice:
        return face_choice[key]
    req = set(required)
    for sigma in kfaces:
        if req <= set(sigma):
            return sigma
    raise NoContainingFace("no k-face contains %r" % (required,))


def query_origin_on_face(F: FaceFunction, tau):
    """Origin values on a k-face computed from F readings inside it.

    Returns (lists, reads): one list for odd k, the anchored pair for even
    k; `reads` counts distinct F probes, at most k+1.
    """
    _check_reconstructible(F)
    k = F.k
    tau = tuple(sorted(tau))
    if tau not in F.base.faces(k):
        raise InvalidParams("%r is not a k-face" % (tau,))
    reads: set = set()

    def probe(face):
        reads.add(face)
        return F.values[face]

    if k % 2 == 1:
        bits = []
        for v in tau:
            s = 0
            for a in itertools.combinations(tuple(x for x in tau if x != v), k - 1):
                s ^= probe(tuple(sorted(a + (v,))))
            bits.append(s)
        return (tuple(bits),), len(reads)
    anchor = tau[0]
    f0 = {anchor: 0}
    for v in tau[1:]:
        s = 0
        for a in itertools.combinations(
            tuple(x for x in tau if x not in (anchor, v)), k - 2
        ):
            s ^= probe(tuple(sorted(a + (anchor, v))))
        f0[v] = s
    bits0 = tuple(f0[v] for v in tau)
    bits1 = tuple(1 - b for b in bits0)
    return (bits0, bits1), len(reads)


def induced_l_assignment(F: FaceFunction) -> LAssignment:
    """The l-assignment the direct-sum tester queries (l = 1 odd, 2 even)."""
    X, k = F.base, F.k
    l = 1 if k % 2 == 1 else 2
    lists = {}
    for tau in X.faces(k):
        entries, _ = query_origin_on_face(F, tau)
        lists[tau] = entries
    return LAssignment(X, k, l, lists)


def direct_sum_test(
    F: FaceFunction,
    mode: str = "exhaustive",
    rng=None,
    rep: RepresentationComplex | None = None,
    trials: int = 1000,
) -> AgreementReport:
    """Run the list-agreement tester against origin queries.

    Per shot the assignment reads translate to at most 3(k+1) probes of F.
    """
    lass = induced_l_assignment(F)
    if rep is None:
        rep = build_representation(F.base, F.k)
    report = list_agreement_test(lass, mode=mode, rng=rng, rep=rep, trials=trials)
    if report.reads_faces is not None:
        report.parameters["f_reads_bound"] = report.reads_faces * (F.k + 1)
    return report


def dist_to_direct_sums_oracle(F: FaceFunction, max_vertices: int = 16):
    """Exact distance to the k-direct-sums: minimum over all origin functions."""
    X, k = F.base, F.k
    verts = X.vertices
    if len(verts) > max_vertices:
        raise SearchSpaceTooLarge(
            "direct-sum oracle gated to %d vertices" % max_vertices
        )
    faces = sorted(F.values)
    best = None
    for mask in range(1 << len(verts)):
        origin = {v: mask >> i & 1 for i, v in enumerate(verts)}
        d = Fraction(0)
        for f in faces:
            if F.values[f] != sum(origin[v] for v in f) % 2:
                d += X.weight(f)
        if best is None or d < best:
            best = d
        if best == 0:
            break
    return best
