"""Complex families and adversarial inputs.

Spherical-building vertices are proper nontrivial subspaces of F_p^{d+2},
canonicalized by reduced row echelon form so each subspace has one name;
faces are chains under inclusion.  Coloring candidates wrap a simple cycle
into the two 2-assignments whose agreement encodes the cycle's parity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex_core import SimplicialComplex, build_complex
from .errors import (
    InvalidParams,
    NotASimpleCycle,
    PreconditionUnsatisfiable,
    SearchSpaceTooLarge,
)
from .group_cochains import cycle_distance, edge_skips, validate_cycle
from .list_agreement import LAssignment


def complete_complex(n: int, d: int) -> SimplicialComplex:
    """All (d+1)-subsets of [n] as maximal faces."""
    if d < 0 or n < d + 1:
        raise InvalidParams("complete complex needs n >= d+1 >= 1")
    return build_complex(itertools.combinations(range(n), d + 1))


# -- spherical buildings -------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(p**0.5) + 1):
        if p % q == 0:
            return False
    return True


def _rref_subspaces(p: int, n: int, dim: int):
    """All dim-dimensional subspaces of F_p^n as canonical RREF bases."""
    for pivots in itertools.combinations(range(n), dim):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, n):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = []
            for r, pc in enumerate(pivots):
                row = [0] * n
                row[pc] = 1
                rows.append(row)
            for (r, c), val in zip(free_positions, values):
                rows[r][c] = val
            yield tuple(tuple(row) for row in rows)


def _rref(p: int, vectors):
    """Reduced row echelon form of the span of the given vectors over F_p."""
    rows = [list(v) for v in vectors]
    n = len(rows[0]) if rows else 0
    pivot_rows = []
    col = 0
    r = 0
    while r < len(rows) and col < n:
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], p - 2, p) if p > 2 else rows[r][col]
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] % p:
                c = rows[i][col] % p
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[r])]
        pivot_rows.append(r)
        r += 1
        col += 1
    return tuple(tuple(row) for row in rows[:r])


def _subspace_leq(p: int, a, b) -> bool:
    """Whether span(a) <= span(b), via rank of the stacked basis."""
    return _rref(p, list(b) + list(a)) == _rref(p, b)


@dataclass
class SphericalBuilding:
    complex: SimplicialComplex
    vertex_subspace: dict  # vertex id -> canonical basis tuple
    subspace_vertex: dict
    p: int
    d: int


def spherical_building(p: int, d: int) -> SphericalBuilding:
    """The flag complex of proper nontrivial subspaces of F_p^{d+2}."""
    if not _is_prime(p):
        raise InvalidParams("p must be prime")
    if p > 5 or d > 2:
        raise SearchSpaceTooLarge("building enumeration gated to p <= 5, d <= 2")
    n = d + 2
    by_dim = {
        dim: sorted(_rref_subspaces(p, n, dim)) for dim in range(1, n)
    }
    registry = {}
    vid = 0
    for dim in range(1, n):
        for basis in by_dim[dim]:
            registry[basis] = vid
            vid += 1
    maximal = []
    for flag in itertools.product(*(by_dim[dim] for dim in range(1, n))):
        if all(
            _subspace_leq(p, flag[i], flag[i + 1]) for i in range(len(flag) - 1)
        ):
            maximal.append(tuple(registry[s] for s in flag))
    cplx = build_complex(maximal)
    return SphericalBuilding(
        cplx,
        {v: s for s, v in registry.items()},
        registry,
        p,
        d,
    )


def building_non_skipping_cycle(p: int, d: int = 1):
    """The explicit chord-free cycle through the lines V_i, U_i and the
    planes W_{i,j} = span{u_i, v_j}; returns (building, cycle vertex ids).

    The cycle visits 2(p-1) lines and 2(p-1) planes (4(p-1) vertices).
    """
    if p < 3:
        raise InvalidParams("the explicit cycle needs p >= 3")
    sb = spherical_building(p, d)
    n = d + 2

    def vec_v(i):
        out = [0] * n
        out[0] = 1
        out[1] = i % p
        return tuple(out)

    def vec_u(i):
        out = [0] * n
        out[0] = 1
        out[2] = i % p
        return tuple(out)

    def vertex_of(vectors):
        return sb.subspace_vertex[_rref(p, vectors)]

    cycle = []
    for i in range(1, p):
        cycle.append(vertex_of([vec_v(i)]))  # V_i
        cycle.append(vertex_of([vec_u(i), vec_v(i)]))  # W_{i,i}
        cycle.append(vertex_of([vec_u(i)]))  # U_i
        j = i + 1 if i < p - 1 else 1
        cycle.append(vertex_of([vec_u(i), vec_v(j)]))  # W_{i,i+1} (wraps)
    return sb, cycle


# -- coloring candidates -------------------------------------------------------

_ANTI = ((0, 1), (1, 0))
_SAME = ((0, 0), (1, 1))
_GLUED = ((1, 1), (0, 0))
_HALF = ((1, 0), (0, 0))
_ZERO = ((0, 0), (0, 0))


@dataclass
class ColoringCandidate:
    base: SimplicialComplex
    cycle: tuple
    variant: str  # "even" or "odd"
    glued_index: int | None
    assignment: LAssignment


def _pair_entry(template, first_on_cycle: bool):
    """Orient a template pair ((a1,b1),(a2,b2)) given which endpoint is the
    cycle vertex; templates are written cycle-vertex-first."""
    if first_on_cycle:
        return template
    return tuple((b, a) for (a, b) in template)


def _glued_cycle_distance(n: int, a: int, b: int, k: int) -> int:
    """Cycle distance when the edge (k, k+1) costs nothing to traverse."""
    arc = abs(a - b) % n
    d_plain = min(arc, n - arc)
    # arc from min to max going "up" passes positions min..max
    lo, hi = min(a, b), max(a, b)
    up_has_edge = lo <= k < hi
    down_has_edge = not up_has_edge
    up_len = hi - lo
    down_len = n - up_len
    candidates = [
        up_len - (1 if up_has_edge else 0),
        down_len - (1 if down_has_edge else 0),
    ]
    return min(candidates)


def coloring_candidates(X: SimplicialComplex, cycle):
    """The even candidate and the odd candidates (one per glued edge index).

    Edges fully on the cycle get the anti/same pair by the parity of the
    cycle distance of their endpoints; one-foot edges get the half pair
    with the cycle endpoint carrying the 1; outside edges the zero pair.
    """
    cyc = validate_cycle(X, cycle)
    n = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}

    def build(dist_fn, glued_edge):
        lists = {}
        for (u, v) in sorted(X.faces(1)):
            pu, pv = pos.get(u), pos.get(v)
            if pu is not None and pv is not None:
                if glued_edge is not None and {pu, pv} == set(glued_edge):
                    lists[(u, v)] = _GLUED
                else:
                    d = dist_fn(pu, pv)
                    lists[(u, v)] = _ANTI if d % 2 else _SAME
            elif pu is not None or pv is not None:
                lists[(u, v)] = _pair_entry(_HALF, pu is not None)
            else:
                lists[(u, v)] = _ZERO
        return LAssignment(X, 1, 2, lists)

    even = ColoringCandidate(
        X,
        cyc,
        "even",
        None,
        build(lambda a, b: cycle_distance(n, a, b), None),
    )
    odds = []
    for k in range(n):
        odds.append(
            ColoringCandidate(
                X,
                cyc,
                "odd",
                k,
                build(
                    lambda a, b, k=k: _glued_cycle_distance(n, a, b, k),
                    (k, (k + 1) % n),
                ),
            )
        )
    return even, odds


def glue(candidate: ColoringCandidate, j: int) -> LAssignment:
    """Glue the j-th cycle edge of a coloring candidate: that edge becomes
    the same-color pair and every edge skipping it flips its pair type."""
    cyc = candidate.cycle
    n = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    if not 0 <= j < n:
        raise InvalidParams("glue index out of range")
    lists = dict(candidate.assignment.lists)
    for (u, v) in sorted(candidate.base.faces(1)):
        pu, pv = pos.get(u), pos.get(v)
        if pu is None or pv is None:
            continue
        if {pu, pv} == {j, (j + 1) % n}:
            lists[(u, v)] = _GLUED
            continue
        if edge_skips(n, pu, pv, j):
            cur = lists[(u, v)]
            if cur == _ANTI:
                lists[(u, v)] = _SAME
            elif cur in (_SAME, _GLUED):
                lists[(u, v)] = _ANTI
    return LAssignment(candidate.base, 1, 2, lists)


# -- the adversarial l-assignment (fooling construction) ----------------------


@dataclass
class AdversarialAssignment:
    assignment: LAssignment
    globals_bits: tuple  # l global bit tuples, slot order
    special_bits: tuple  # the planted global
    special_face: tuple
    # slots are 0-based; the planted function occupies the last slot of the
    # special face only.


def adversarial_l_assignment(
    X: SimplicialComplex, k: int, l: int, globals_bits, special_bits, sigma_hat
) -> AdversarialAssignment:
    """Plant one foreign local function inside an otherwise agreeing input.

    Requires some k-subset of the special face on which the planted
    function differs from every global at some vertex; with only l-1
    queries the plant is indistinguishable from an agreeing assignment.
    """
    if l < 2:
        raise PreconditionUnsatisfiable(
            "the fooling construction needs l >= 2 (no slot to hide in)"
        )
    if len(globals_bits) != l:
        raise InvalidParams("need exactly l globals")
    sigma_hat = tuple(sorted(sigma_hat))
    if sigma_hat not in X.faces(k):
        raise InvalidParams("%r is not a k-face" % (sigma_hat,))
    verts = X.vertices
    vindex = {v: i for i, v in enumerate(verts)}
    ok = False
    for sub in itertools.combinations(sigma_hat, k):
        if all(
            any(g[vindex[v]] != special_bits[vindex[v]] for v in sub)
            for g in globals_bits
        ):
            ok = True
            break
    if not ok:
        raise PreconditionUnsatisfiable(
            "the planted function must differ from every global on a "
            "k-subset of the special face"
        )
    lists = {}
    for f in sorted(X.faces(k)):
        entries = [
            tuple(g[vindex[v]] for v in f) for g in globals_bits
        ]
        if f == sigma_hat:
            entries[l - 1] = tuple(special_bits[vindex[v]] for v in f)
        lists[f] = tuple(entries)
    return AdversarialAssignment(
        LAssignment(X, k, l, lists),
        tuple(tuple(g) for g in globals_bits),
        tuple(special_bits),
        sigma_hat,
    )


def fooling_witness(adv: AdversarialAssignment, queries) -> LAssignment:
    """An agreeing assignment matching the adversarial input on the given
    queries (at most l-1 of them, as (face, slot) pairs).

    Pick an unqueried slot a'; the witness agrees with the globals except
    that slot a' carries the planted function, and the special face swaps
    slots a' and l-1.
    """
    lass = adv.assignment
    l = lass.l
    queried_slots = {slot for (_, slot) in queries}
    if len(queries) > l - 1 or len(queried_slots) >= l:
        raise InvalidParams("the construction needs an unqueried slot")
    a_prime = min(set(range(l)) - queried_slots)
    X = lass.base
    verts = X.vertices
    vindex = {v: i for i, v in enumerate(verts)}
    globals_bits = list(adv.globals_bits)
    globals_bits[a_prime] = adv.special_bits
    lists = {}
    for f in sorted(X.faces(lass.k)):
        entries = [
            tuple(g[vindex[v]] for v in f) for g in globals_bits
        ]
        if f == adv.special_face and a_prime != l - 1:
            entries[a_prime], entries[l - 1] = entries[l - 1], entries[a_prime]
        lists[f] = tuple(entries)
    return LAssignment(X, lass.k, l, lists)
