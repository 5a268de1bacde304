"""Pure simplicial complexes with exact rational weights.

A complex is built from its maximal faces (all of one cardinality, which
enforces purity) and eagerly stores every face of every dimension together
with its weight

    w(sigma) = #{maximal faces containing sigma} / (C(d+1, |sigma|) * #maximal)

so that each dimension's weights form an exact probability distribution.
The empty face is always present with weight 1.  Complexes are immutable
after construction; links and skeletons are new values.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .errors import (
    FaceNotInComplex,
    InvalidParams,
    MixedDimensions,
    TopDimensionalFace,
)

Face = tuple


def as_face(vertices) -> Face:
    """Normalize an iterable of vertex labels to a strictly sorted tuple."""
    face = tuple(sorted(vertices))
    for a, b in zip(face, face[1:]):
        if a == b:
            raise InvalidParams("face has repeated vertex: %r" % (vertices,))
    return face


class SimplicialComplex:
    """A pure weighted simplicial complex, immutable after construction."""

    def __init__(self, maximal_faces):
        maximal = frozenset(as_face(f) for f in maximal_faces)
        if not maximal:
            raise InvalidParams("a complex needs at least one maximal face")
        sizes = {len(f) for f in maximal}
        if len(sizes) != 1:
            raise MixedDimensions(
                "maximal faces of mixed sizes: %s" % sorted(sizes)
            )
        self._maximal = maximal
        self.d = sizes.pop() - 1

        counts: dict[Face, int] = {}
        for m in maximal:
            for r in range(len(m) + 1):
                for sub in itertools.combinations(m, r):
                    counts[sub] = counts.get(sub, 0) + 1
        by_dim: dict[int, set[Face]] = {i: set() for i in range(-1, self.d + 1)}
        for face in counts:
            by_dim[len(face) - 1].add(face)
        self._faces = {i: frozenset(s) for i, s in by_dim.items()}

        n_max = len(maximal)
        self._weight = {
            face: Fraction(c, comb(self.d + 1, len(face)) * n_max)
            for face, c in counts.items()
        }

    # -- basic queries -------------------------------------------------

    @property
    def maximal_faces(self) -> frozenset:
        return self._maximal

    def faces(self, i: int) -> frozenset:
        """All i-dimensional faces (i may be -1)."""
        return self._faces.get(i, frozenset())

    def all_faces(self):
        for i in range(-1, self.d + 1):
            yield from self._faces[i]

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(v for (v,) in self._faces[0]))

    def __contains__(self, face) -> bool:
        face = tuple(sorted(face))
        return face in self._weight

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self._maximal == other._maximal
        )

    def __hash__(self):
        return hash(self._maximal)

    def __repr__(self):
        return "SimplicialComplex(d=%d, vertices=%d, maximal=%d)" % (
            self.d,
            len(self._faces[0]),
            len(self._maximal),
        )

    # -- weights and norms ---------------------------------------------

    def weight(self, face) -> Fraction:
        face = tuple(sorted(face))
        try:
            return self._weight[face]
        except KeyError:
            raise FaceNotInComplex("%r is not a face" % (face,)) from None

    def norm(self, faces) -> Fraction:
        """Sum of weights of a set of same-dimension faces."""
        faces = {tuple(sorted(f)) for f in faces}
        if not faces:
            return Fraction(0)
        dims = {len(f) for f in faces}
        if len(dims) != 1:
            raise MixedDimensions("norm over faces of mixed dimensions")
        total = Fraction(0)
        for f in faces:
            total += self.weight(f)
        return total

    # -- derived complexes ----------------------------------------------

    def containment_up(self, faces, j: int) -> frozenset:
        """All j-faces containing at least one member of `faces`."""
        faces = [tuple(sorted(f)) for f in faces]
        for f in faces:
            if f not in self._weight:
                raise FaceNotInComplex("%r is not a face" % (f,))
        dims = {len(f) for f in faces}
        if len(dims) > 1:
            raise MixedDimensions("containment over mixed dimensions")
        if dims and j < dims.pop() - 1:
            raise MixedDimensions("target dimension below source dimension")
        members = set(faces)
        out = set()
        for g in self._faces.get(j, ()):  # scan is fine at desk scale
            gs = set(g)
            for f in members:
                if gs.issuperset(f):
                    out.add(g)
                    break
        return frozenset(out)

    def link(self, face) -> "SimplicialComplex":
        """The link X_sigma, a (d - dim(sigma) - 1)-dimensional complex."""
        face = tuple(sorted(face))
        if face not in self._weight:
            raise FaceNotInComplex("%r is not a face" % (face,))
        if len(face) - 1 >= self.d:
            raise TopDimensionalFace("link of a top-dimensional face")
        fs = set(face)
        return SimplicialComplex(
            tuple(v for v in m if v not in fs)
            for m in self._maximal
            if fs.issubset(m)
        )

    def skeleton(self, i: int) -> "SimplicialComplex":
        if not 0 <= i <= self.d:
            raise InvalidParams("skeleton dimension out of range")
        return SimplicialComplex(self._faces[i])

    # -- sampling ---------------------------------------------------------

    def sample_face(self, i: int, rng) -> Face:
        """Draw an i-face with probability exactly its weight.

        Draws a maximal face uniformly, then a uniform (i+1)-subset of it.
        """
        if not -1 <= i <= self.d:
            raise InvalidParams("sample dimension out of range")
        maximal = self._sorted_maximal()
        m = maximal[rng.randrange(len(maximal))]
        return tuple(sorted(rng.sample(m, i + 1)))

    def sample_distribution(self, i: int):
        """Exhaustive-mode support of sample_face: [(face, probability)]."""
        if not -1 <= i <= self.d:
            raise InvalidParams("sample dimension out of range")
        return [(f, self._weight[f]) for f in sorted(self._faces[i])]

    def _sorted_maximal(self):
        cached = getattr(self, "_maximal_sorted", None)
        if cached is None:
            cached = sorted(self._maximal)
            object.__setattr__(self, "_maximal_sorted", cached)
        return cached


def build_complex(maximal_faces) -> SimplicialComplex:
    """Build a pure complex from maximal faces (set semantics, sizes equal)."""
    return SimplicialComplex(maximal_faces)


def verify_closure_and_purity(X: SimplicialComplex) -> bool:
    """Direct scan that downward closure and purity hold."""
    for i in range(0, X.d + 1):
        for face in X.faces(i):
            for sub in itertools.combinations(face, len(face) - 1):
                if sub not in X:
                    return False
    for face in X.all_faces():
        if not any(set(face).issubset(m) for m in X.maximal_faces):
            return False
    return True


def verify_weight_normalization(X: SimplicialComplex) -> bool:
    """Each dimension's weights sum to exactly 1."""
    for i in range(-1, X.d + 1):
        if sum((X.weight(f) for f in X.faces(i)), Fraction(0)) != 1:
            return False
    return True


def verify_link_weight_law(X: SimplicialComplex, face) -> bool:
    """w_{X_sigma}(tau) = w_X(tau u sigma) / (C(i+j+2, j+1) w_X(sigma)), exactly."""
    link = X.link(face)
    i = len(face) - 1
    for tau in link.all_faces():
        j = len(tau) - 1
        expected = X.weight(tuple(sorted(set(face) | set(tau)))) / (
            comb(i + j + 2, j + 1) * X.weight(face)
        )
        if link.weight(tau) != expected:
            return False
    return True


def binomial_product_identity_holds(d: int, k: int, i: int) -> bool:
    """Corrected product identity: C(d-k+1, i+1) C(d+1, k) = C(k+i+1, k) C(d+1, k+i+1)."""
    return comb(d - k + 1, i + 1) * comb(d + 1, k) == comb(k + i + 1, k) * comb(
        d + 1, k + i + 1
    )


def binomial_product_identity_as_stated_holds(d: int, k: int, i: int) -> bool:
    """The uncorrected form with C(d-k+1, i); fails e.g. at (d,k,i) = (4,1,2)."""
    return comb(d - k + 1, i) * comb(d + 1, k) == comb(k + i + 1, k) * comb(
        d + 1, k + i + 1
    )
