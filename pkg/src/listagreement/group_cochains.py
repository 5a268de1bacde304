"""Group-valued cochains in dimensions -1..1, plus the F_2 chain side.

1-cochains store one value per unordered edge under the u < v orientation;
reads with the reversed orientation synthesize the inverse, so the
antisymmetry law chi(u,v) = chi(v,u)^{-1} holds by construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .complex_core import SimplicialComplex
from .errors import (
    BaseMismatch,
    DimensionTooHigh,
    FaceNotInComplex,
    InvalidParams,
    NotACycle,
    NotARepresentationComplex,
    SearchSpaceTooLarge,
)
from .groups import BitGroup, SymmetricGroup


class Cochain:
    """A total group-valued function on the oriented i-faces of a base complex.

    dim -1 cochains are keyed by (), dim 0 by (v,), dim 1 by (u, v) with
    u < v; dim 2 cochains exist only as coboundary outputs (support reads).
    """

    def __init__(self, base, dim, group, values):
        self.base = base
        self.dim = dim
        self.group = group
        vals = {}
        for face, g in values.items():
            key = tuple(face)
            if dim == 1 and key[0] > key[1]:
                key = (key[1], key[0])
                g = group.inv(g)
            if not group.contains(g):
                raise InvalidParams("value %r not in %s" % (g, group.label))
            vals[key] = g
        expected = base.faces(dim)
        if set(vals) != set(expected):
            missing = set(expected) - set(vals)
            extra = set(vals) - set(expected)
            raise FaceNotInComplex(
                "cochain not total on dimension %d (missing %d, extra %d)"
                % (dim, len(missing), len(extra))
            )
        self.values = vals

    @classmethod
    def constant(cls, base, dim, group, g=None):
        if g is None:
            g = group.identity
        return cls(base, dim, group, {f: g for f in base.faces(dim)})

    def __call__(self, *face):
        if len(face) == 1 and isinstance(face[0], tuple):
            face = face[0]
        if self.dim == 1:
            u, v = face
            if u < v:
                return self.values[(u, v)]
            return self.group.inv(self.values[(v, u)])
        return self.values[tuple(face)]

    def support(self):
        ident = self.group.identity
        return frozenset(f for f, g in self.values.items() if g != ident)

    def norm(self) -> Fraction:
        return self.base.norm(self.support()) if self.support() else Fraction(0)

    def mul(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        grp = self.group
        return Cochain(
            self.base,
            self.dim,
            grp,
            {f: grp.mul(g, other.values[f]) for f, g in self.values.items()},
        )

    def inv(self) -> "Cochain":
        grp = self.group
        return Cochain(
            self.base, self.dim, grp, {f: grp.inv(g) for f, g in self.values.items()}
        )

    def dist(self, other: "Cochain") -> Fraction:
        """Norm of the pointwise quotient, per the cochain distance."""
        self._check_compatible(other)
        grp = self.group
        diff = {
            f for f, g in self.values.items() if g != other.values[f]
        }
        return self.base.norm(diff) if diff else Fraction(0)

    def _check_compatible(self, other):
        if other.base is not self.base and other.base != self.base:
            raise BaseMismatch("cochains over different complexes")
        if other.dim != self.dim or other.group != self.group:
            raise BaseMismatch("cochain dimension or coefficients differ")

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.dim == other.dim
            and self.group == other.group
            and self.base == other.base
            and self.values == other.values
        )

    def __repr__(self):
        return "Cochain(dim=%d, %s, support=%d)" % (
            self.dim,
            self.group.label,
            len(self.support()),
        )


def apply_coboundary(f: Cochain) -> Cochain:
    """d_{-1}, d_0 or d_1.  The dim-2 output is used only via its support."""
    grp = f.group
    base = f.base
    if f.dim == -1:
        g = f(())
        return Cochain(base, 0, grp, {v: g for v in base.faces(0)})
    if f.dim == 0:
        vals = {}
        for (u, v) in base.faces(1):
            vals[(u, v)] = grp.mul(f((u,)), grp.inv(f((v,))))
        return Cochain(base, 1, grp, vals)
    if f.dim == 1:
        vals = {}
        for (u, v, w) in base.faces(2):
            vals[(u, v, w)] = grp.mul(grp.mul(f(u, v), f(v, w)), f(w, u))
        return Cochain(base, 2, grp, vals)
    raise DimensionTooHigh(
        "coboundary only defined up to dimension 1 for group coefficients"
    )


def is_cocycle(f: Cochain) -> bool:
    """True iff d_1 f is the identity on every 2-face (vacuous without 2-faces)."""
    if f.dim != 1:
        raise InvalidParams("cocycle predicate is for 1-cochains")
    return not apply_coboundary(f).support()


def is_coboundary(f: Cochain):
    """Return a 0-cochain witness g with d_0 g = f, or None.

    Spanning-tree propagation per connected component (lowest-labelled
    vertex is the root and carries the identity), then full verification
    of every non-tree edge.
    """
    if f.dim != 1:
        raise InvalidParams("coboundary predicate is for 1-cochains")
    base, grp = f.base, f.group
    adjacency: dict = {v: [] for (v,) in base.faces(0)}
    for (u, v) in base.faces(1):
        adjacency[u].append(v)
        adjacency[v].append(u)
    g = {}
    for root in sorted(adjacency):
        if root in g:
            continue
        g[root] = grp.identity
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if v not in g:
                    # d_0 g (u,v) = g(u) g(v)^{-1} = f(u,v)
                    g[v] = grp.mul(grp.inv(f(u, v)), g[u])
                    stack.append(v)
    for (u, v) in base.faces(1):
        if grp.mul(g[u], grp.inv(g[v])) != f(u, v):
            return None
    return Cochain(base, 0, grp, {(v,): g[v] for v in g})


def witness_shift(g1: Cochain, g2: Cochain):
    """The constant sigma with g1(u) = g2(u) sigma on a connected base, or None."""
    grp = g1.group
    verts = sorted(v for (v,) in g1.base.faces(0))
    sigma = grp.mul(grp.inv(g2((verts[0],))), g1((verts[0],)))
    for v in verts:
        if g1((v,)) != grp.mul(g2((v,)), sigma):
            return None
    return sigma


def restrict_around_core(f: Cochain, core):
    """The cochain f^c: agrees with f on faces whose core is c, identity elsewhere."""
    base = f.base
    if not hasattr(base, "face_core"):
        raise NotARepresentationComplex(
            "restrict_around_core needs a representation complex base"
        )
    if f.dim < 1:
        raise InvalidParams("core restriction applies in dimensions >= 1")
    core = tuple(sorted(core))
    ident = f.group.identity
    vals = {
        face: (g if base.face_core(face) == core else ident)
        for face, g in f.values.items()
    }
    return Cochain(base, f.dim, f.group, vals)


# -- F_2 chains, boundaries and small-scale homology -----------------------


class F2Chain:
    """An F_2 chain in dimension k, identified with its indicator face set."""

    def __init__(self, base: SimplicialComplex, dim: int, faces):
        self.base = base
        self.dim = dim
        fs = frozenset(tuple(sorted(f)) for f in faces)
        for f in fs:
            if len(f) - 1 != dim:
                raise InvalidParams("chain face of wrong dimension: %r" % (f,))
            if f not in base:
                raise FaceNotInComplex("%r is not a face" % (f,))
        self.faces = fs

    def __eq__(self, other):
        return (
            isinstance(other, F2Chain)
            and self.base == other.base
            and self.dim == other.dim
            and self.faces == other.faces
        )

    def __add__(self, other):
        return F2Chain(self.base, self.dim, self.faces ^ other.faces)

    def __repr__(self):
        return "F2Chain(dim=%d, size=%d)" % (self.dim, len(self.faces))


def boundary(chain: F2Chain) -> F2Chain:
    """Mod-2 boundary: each (k-1)-face counts the k-faces of the chain above it."""
    counts: dict = {}
    for face in chain.faces:
        for sub in itertools.combinations(face, len(face) - 1):
            counts[sub] = counts.get(sub, 0) ^ 1
    return F2Chain(
        chain.base, chain.dim - 1, [f for f, c in counts.items() if c]
    )


def is_boundary_chain(chain: F2Chain) -> bool:
    """Whether the chain lies in the image of the boundary from one dimension up."""
    gens = sorted(chain.base.faces(chain.dim + 1))
    cols = sorted(chain.base.faces(chain.dim))
    index = {f: i for i, f in enumerate(cols)}
    rows = []
    for g in gens:
        bits = 0
        for sub in itertools.combinations(g, len(g) - 1):
            bits ^= 1 << index[sub]
        rows.append(bits)
    target = 0
    for f in chain.faces:
        target ^= 1 << index[f]
    return _gf2_in_span(rows, target)


def _gf2_in_span(rows, target: int) -> bool:
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            if low not in pivots:
                pivots[low] = r
                break
            r ^= pivots[low]
    while target:
        low = target & -target
        if low not in pivots:
            return False
        target ^= pivots[low]
    return True


def minimal_homology_representative(X: SimplicialComplex, max_edges: int = 20):
    """A minimum-support element of Z_1 \\ B_1 over F_2, or None if H_1 = 0.

    Exhaustive over the cycle space; gated because the general problem is hard.
    """
    edges = sorted(X.faces(1))
    if len(edges) > max_edges:
        raise SearchSpaceTooLarge("homology search gated to %d edges" % max_edges)
    verts = sorted(v for (v,) in X.faces(0))
    vindex = {v: i for i, v in enumerate(verts)}
    # cycle space = nullspace of the edge->vertex boundary matrix
    basis = _gf2_nullspace(
        [(1 << vindex[u]) | (1 << vindex[v]) for (u, v) in edges], len(verts)
    )
    best = None
    for mask in range(1, 1 << len(basis)):
        z = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                z ^= basis[i]
            m >>= 1
            i += 1
        if best is not None and z.bit_count() >= best.bit_count():
            continue
        chain = F2Chain(X, 1, [edges[i] for i in range(len(edges)) if z >> i & 1])
        if not is_boundary_chain(chain):
            best = z
    if best is None:
        return None
    return F2Chain(X, 1, [edges[i] for i in range(len(edges)) if best >> i & 1])


def _gf2_nullspace(columns, nbits):
    """Nullspace basis of the matrix whose i-th column is `columns[i]` (bitmask rows).

    Each returned bitmask tags a combination of columns summing to zero.
    """
    pivots: dict[int, tuple[int, int]] = {}
    null = []
    for i, col in enumerate(columns):
        tag = 1 << i
        cur = col
        while cur:
            low = cur & -cur
            if low not in pivots:
                break
            pcol, ptag = pivots[low]
            cur ^= pcol
            tag ^= ptag
        if cur:
            pivots[cur & -cur] = (cur, tag)
        else:
            null.append(tag)
    return null


# -- cycles in the 1-skeleton and the skipping structure --------------------


def validate_cycle(X: SimplicialComplex, cycle) -> tuple:
    cyc = tuple(cycle)
    if len(cyc) >= 2 and cyc[0] == cyc[-1]:
        cyc = cyc[:-1]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise NotACycle("not a simple closed cycle: %r" % (cycle,))
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if tuple(sorted((a, b))) not in X.faces(1):
            raise NotACycle("missing cycle edge {%r, %r}" % (a, b))
    return cyc


def cycle_distance(n: int, i: int, j: int) -> int:
    """Distance between positions i and j on an n-cycle."""
    a = abs(i - j) % n
    return min(a, n - a)


def edge_skips(n: int, i: int, j: int, k: int) -> bool:
    """Whether the edge between cycle positions i, j skips the cycle edge (k, k+1).

    Skips means some shortest cycle arc between i and j traverses that edge;
    in particular a cycle edge skips exactly itself.
    """
    d = cycle_distance(n, i, j)
    k2 = (k + 1) % n
    return (
        cycle_distance(n, i, k) + 1 + cycle_distance(n, k2, j) == d
        or cycle_distance(n, i, k2) + 1 + cycle_distance(n, k, j) == d
    )


def skipped_edges(n: int, i: int, j: int) -> int:
    """How many cycle edges the (i, j) edge skips."""
    return sum(1 for k in range(n) if edge_skips(n, i, j, k))


def is_non_skipping(X: SimplicialComplex, cycle, i: int) -> bool:
    """True iff every chord of the cycle present in X(1) skips at most i edges.

    Cycle edges themselves are not chords, so a chordless cycle is
    i-non-skipping for every i >= 0.
    """
    cyc = validate_cycle(X, cycle)
    n = len(cyc)
    pos = {v: p for p, v in enumerate(cyc)}
    for (u, v) in X.faces(1):
        if u in pos and v in pos:
            a, b = pos[u], pos[v]
            if cycle_distance(n, a, b) == 1:
                continue  # a cycle edge, not a chord
            if skipped_edges(n, a, b) > i:
                return False
    return True


# -- Cheeger constants and coboundary expansion ----------------------------


def _all_zero_cochains(base, group):
    verts = sorted(v for (v,) in base.faces(0))
    for combo in itertools.product(list(group.elements()), repeat=len(verts)):
        yield Cochain(base, 0, group, {(v,): g for v, g in zip(verts, combo)})


def coboundary_space(base, group):
    """All distinct coboundaries d_0 g (deduplicated)."""
    seen = set()
    out = []
    for g in _all_zero_cochains(base, group):
        f = apply_coboundary(g)
        key = tuple(sorted(f.values.items()))
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def cheeger_h0(base, group):
    """h_0 with both denominators: (min over dist-to-B^0, min over dist-to-Z^0).

    Returns (h0_coboundary_denominator, h0_cocycle_denominator); None entries
    mean the minimization ranged over an empty set.
    """
    consts = [Cochain.constant(base, 0, group, g) for g in group.elements()]
    # 0-cocycles: d_0 f = 1, i.e. constant on each connected component
    zs = [
        f
        for f in _all_zero_cochains(base, group)
        if not apply_coboundary(f).support()
    ]
    hb = hz = None
    for f in _all_zero_cochains(base, group):
        db = min(f.dist(c) for c in consts)
        if db == 0:
            continue
        up = apply_coboundary(f).norm()
        rb = up / db
        hb = rb if hb is None or rb < hb else hb
        dz = min(f.dist(z) for z in zs)
        if dz != 0:
            rz = up / dz
            hz = rz if hz is None or rz < hz else hz
    return hb, hz


def _all_one_cochains(base, group):
    edges = sorted(base.faces(1))
    for combo in itertools.product(list(group.elements()), repeat=len(edges)):
        yield Cochain(base, 1, group, dict(zip(edges, combo)))


def cheeger_h1(base, group, max_cochains: int = 1 << 22, force_generic: bool = False):
    """h_1 with both denominators; exhaustive, gated, with an F_2-style
    fast path when the group has order 2."""
    n_edges = len(base.faces(1))
    total = group.order**n_edges
    if total > max_cochains:
        raise SearchSpaceTooLarge(
            "h_1 enumeration of %d cochains exceeds the gate" % total
        )
    if group.order == 2 and not force_generic:
        return _cheeger_h1_order2(base, group)
    bs = coboundary_space(base, group)
    zs = [f for f in _all_one_cochains(base, group) if is_cocycle(f)]
    hb = hz = None
    for f in _all_one_cochains(base, group):
        db = min(f.dist(b) for b in bs)
        if db == 0:
            continue
        up = apply_coboundary(f).norm()
        rb = up / db
        hb = rb if hb is None or rb < hb else hb
        dz = min(f.dist(z) for z in zs)
        if dz != 0:
            rz = up / dz
            hz = rz if hz is None or rz < hz else hz
    return hb, hz


def _cheeger_h1_order2(base, group):
    """Bitmask enumeration for order-2 coefficient groups."""
    edges = sorted(base.faces(1))
    m = len(edges)
    eindex = {e: i for i, e in enumerate(edges)}
    ew = [base.weight(e) for e in edges]
    tris = sorted(base.faces(2))
    tmasks = [
        (1 << eindex[(u, v)]) | (1 << eindex[(v, w)]) | (1 << eindex[(u, w)])
        for (u, v, w) in tris
    ]
    tw = [base.weight(t) for t in tris]
    bmasks = set()
    verts = sorted(v for (v,) in base.faces(0))
    vindex = {v: i for i, v in enumerate(verts)}
    epos = [(vindex[u], vindex[v]) for (u, v) in edges]
    for bits in range(1 << len(verts)):
        mask = 0
        for idx, (pu, pv) in enumerate(epos):
            if (bits >> pu & 1) != (bits >> pv & 1):
                mask |= 1 << idx
        bmasks.add(mask)
    bmasks = sorted(bmasks)
    zmasks = [
        f
        for f in range(1 << m)
        if all(not (f & tm).bit_count() % 2 for tm in tmasks)
    ]
    uniform_e = len(set(ew)) == 1
    uniform_t = len(set(tw)) <= 1
    hb = hz = None
    for f in range(1 << m):
        if uniform_e:
            db = ew[0] * min((f ^ b).bit_count() for b in bmasks)
        else:
            db = min(_masked_norm(f ^ b, ew) for b in bmasks)
        if db == 0:
            continue
        if uniform_t:
            viol = sum(1 for tm in tmasks if (f & tm).bit_count() % 2)
            up = (tw[0] * viol) if tw else Fraction(0)
        else:
            up = sum(
                (tw[i] for i, tm in enumerate(tmasks) if (f & tm).bit_count() % 2),
                Fraction(0),
            )
        rb = up / db
        hb = rb if hb is None or rb < hb else hb
        if uniform_e:
            dz = ew[0] * min((f ^ z).bit_count() for z in zmasks)
        else:
            dz = min(_masked_norm(f ^ z, ew) for z in zmasks)
        if dz != 0:
            rz = up / dz
            hz = rz if hz is None or rz < hz else hz
    return hb, hz


def _masked_norm(mask: int, weights) -> Fraction:
    total = Fraction(0)
    i = 0
    while mask:
        if mask & 1:
            total += weights[i]
        mask >>= 1
        i += 1
    return total


def coboundary_expansion_gamma(X: SimplicialComplex, group, max_cochains: int = 1 << 22):
    """The coboundary-expansion constant: min over every face of dimension
    < d-2 (the empty face included) of h_0 and h_1 of its link.

    Returns (gamma, details) where details maps each face to its (h0, h1)
    pair under the coboundary denominator; the cocycle-denominator variants
    are recorded alongside.
    """
    gamma = None
    details = {}
    for i in range(-1, X.d - 2):
        for face in sorted(X.faces(i)):
            lk = X.link(face) if face else X
            h0b, h0z = cheeger_h0(lk, group)
            h1b, h1z = cheeger_h1(lk, group, max_cochains=max_cochains)
            details[face] = {
                "h0": h0b,
                "h1": h1b,
                "h0_cocycle_denominator": h0z,
                "h1_cocycle_denominator": h1z,
            }
            for h in (h0b, h1b):
                if h is not None and (gamma is None or h < gamma):
                    gamma = h
    return gamma, details
