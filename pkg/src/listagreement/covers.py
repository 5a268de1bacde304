"""Near covers induced by permutation-valued edge cochains.

A near cover is held intensionally as (base, sheet count, cochain); its
faces are sheet-labelled base faces whose labels agree with the cochain on
every edge, completed upwards: a higher face is present exactly when all
its edges embed with mutually consistent sheets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex_core import SimplicialComplex
from .errors import (
    InvalidParams,
    NotACoboundary,
    NotGenuine,
)
from .group_cochains import Cochain, apply_coboundary, is_cocycle
from .groups import SymmetricGroup


class NearCover:
    """The sheeted complex Y_phi over a base complex."""

    def __init__(self, base: SimplicialComplex, phi: Cochain):
        if phi.dim != 1 or phi.base != base:
            raise InvalidParams("need a 1-cochain over the base complex")
        if not isinstance(phi.group, SymmetricGroup):
            raise InvalidParams("near covers need symmetric-group sheets")
        self.base = base
        self.phi = phi
        self.l = phi.group.l
        self._faces = None
        self._genuine = None

    def covering_map(self, face) -> tuple:
        return tuple(sorted(v for (v, _) in face))

    def faces(self, i: int) -> frozenset:
        return self._materialize().get(i, frozenset())

    def all_faces(self):
        mat = self._materialize()
        for i in sorted(mat):
            yield from mat[i]

    def _materialize(self) -> dict:
        if self._faces is not None:
            return self._faces
        grp = self.phi.group
        out: dict[int, set] = {-1: {frozenset()}}
        for i in range(0, self.base.d + 1):
            level = set()
            for sigma in self.base.faces(i):
                for s0 in range(self.l):
                    sheets = {sigma[0]: s0}
                    for v in sigma[1:]:
                        sheets[v] = grp.apply(self.phi(v, sigma[0]), s0)
                    if all(
                        sheets[u] == grp.apply(self.phi(u, v), sheets[v])
                        for u, v in itertools.combinations(sigma, 2)
                    ):
                        level.add(frozenset((v, sheets[v]) for v in sigma))
            out[i] = level
        self._faces = {i: frozenset(s) for i, s in out.items()}
        return self._faces

    def is_genuine(self) -> bool:
        if self._genuine is None:
            self._genuine = _check_cover_axioms(self)
        return self._genuine


def near_cover_from_cochain(X: SimplicialComplex, phi: Cochain) -> NearCover:
    return NearCover(X, phi)


def _check_cover_axioms(Y: NearCover) -> bool:
    """Direct check of the three covering axioms: translation, local
    isomorphism on up-sets, and exact l-fold preimages (nonempty faces)."""
    base = Y.base
    cover_faces = [f for f in Y.all_faces() if f]
    by_base: dict = {}
    for f in cover_faces:
        by_base.setdefault(Y.covering_map(f), []).append(f)

    # surjectivity and l-fold preimages
    for i in range(0, base.d + 1):
        for sigma in base.faces(i):
            if len(by_base.get(sigma, ())) != Y.l:
                return False

    # translation: cardinality kept, containment preserved forward
    for f in cover_faces:
        if len(f) != len(Y.covering_map(f)):
            return False
    # local isomorphism on every nonempty face's up-set
    for f in cover_faces:
        up_cover = [g for g in cover_faces if f <= g]
        sigma = Y.covering_map(f)
        up_base = [
            tau
            for i in range(0, base.d + 1)
            for tau in base.faces(i)
            if set(sigma) <= set(tau)
        ]
        images = [Y.covering_map(g) for g in up_cover]
        if sorted(images) != sorted(up_base):
            return False
        for g1, g2 in itertools.combinations(up_cover, 2):
            fwd1, fwd2 = Y.covering_map(g1), Y.covering_map(g2)
            if (g1 <= g2) != (set(fwd1) <= set(fwd2)):
                return False
            if (g2 <= g1) != (set(fwd2) <= set(fwd1)):
                return False
    return True


def is_genuine_cover(Y: NearCover) -> bool:
    """Axiom check; agrees with is_cocycle(phi) on every instance."""
    return Y.is_genuine()


def lift_path(Y: NearCover, path, start_sheet: int):
    """The unique lift of a base walk starting on the given sheet."""
    if not Y.is_genuine():
        raise NotGenuine("lifts are defined over genuine covers")
    path = list(path)
    if not path:
        return []
    grp = Y.phi.group
    sheet = start_sheet
    out = [(path[0], sheet)]
    for prev, cur in zip(path, path[1:]):
        sheet = grp.apply(Y.phi(cur, prev), sheet)
        out.append((cur, sheet))
    return out


@dataclass
class CoverDecomposition:
    copies: list  # one frozenset of cover faces per sheet
    isomorphisms: list  # per copy, dict base face -> cover face


def decompose_cover(Y: NearCover, witness: Cochain) -> CoverDecomposition:
    """Split the cover of a coboundary into l disjoint base-isomorphic copies.

    The j-th copy collects the faces whose sheet labels are g(v) applied
    to j; the witness g with d_0 g = phi is verified first.
    """
    grp = Y.phi.group
    if witness.dim != 0 or witness.base != Y.base:
        raise InvalidParams("witness must be a 0-cochain on the base")
    if apply_coboundary(witness) != Y.phi:
        raise NotACoboundary("witness does not satisfy d_0 g = phi")
    copies = []
    isos = []
    all_faces = set(f for f in Y.all_faces() if f)
    for j in range(Y.l):
        iso = {}
        faces = set()
        for i in range(0, Y.base.d + 1):
            for sigma in Y.base.faces(i):
                lifted = frozenset(
                    (v, grp.apply(witness((v,)), j)) for v in sigma
                )
                iso[sigma] = lifted
                faces.add(lifted)
        copies.append(frozenset(faces))
        isos.append(iso)
    # verify: disjoint, exhaustive, and isomorphic to the base
    union: set = set()
    for c in copies:
        if union & c:
            raise NotGenuine("copies are not disjoint")
        union |= c
    if union != all_faces:
        raise NotGenuine("copies do not cover the near cover")
    for iso in isos:
        for s1, s2 in itertools.combinations(iso, 2):
            if (set(s1) <= set(s2)) != (iso[s1] <= iso[s2]):
                raise NotGenuine("copy is not isomorphic to the base")
    return CoverDecomposition(copies, isos)
