"""The edge matcher, adequacy, the tester, distances, and the agreeing oracle."""

import itertools
import random
from fractions import Fraction

import pytest

from listagreement.complex_core import build_complex
from listagreement.errors import BaseMismatch, NotAnEdge, SearchSpaceTooLarge
from listagreement.generators import complete_complex
from listagreement.group_cochains import is_coboundary
from listagreement.list_agreement import (
    Assignment,
    LAssignment,
    agreeing_l_assignment,
    assignment_distance,
    corrupt_entry,
    dist_assignment_to_agreeing_oracle,
    dist_to_agreeing_oracle,
    induced_cochain,
    is_2_locally_differing,
    is_adequately_covered,
    is_agreeing,
    l_assignment_distance,
    list_agreement_test,
    one_up_rejection,
    query_cover_edge,
    random_agreeing_2diff,
    wilson_interval,
)
from listagreement.representation import build_representation

K5 = complete_complex(5, 2)
K6 = complete_complex(6, 2)
REP5 = build_representation(K5, 1)
REP6 = build_representation(K6, 1)


def test_query_cover_edge_recovers_permutation_composition():
    rng = random.Random(1)
    f = tuple(rng.randrange(2) for _ in K5.vertices)
    g = tuple(1 - b for b in f)
    perms = {}
    for face in K5.faces(1):
        perms[face] = rng.choice([(0, 1), (1, 0)])
    lass = agreeing_l_assignment(K5, 1, (f, g), perms=perms)
    for (a, b) in REP5.faces(1):
        s1, s2 = REP5.vertex_kface(a), REP5.vertex_kface(b)
        q = query_cover_edge(lass, s1, s2)
        assert q.adequate and not q.ambiguous
        # slot j of face f carries global perms[f][j], so the matcher must
        # find the composite taking s1 slots to s2 slots
        p1, p2 = perms[s1], perms[s2]
        expected = tuple(p2.index(p1[i]) for i in range(2))
        assert q.pi == expected
        shared = set(s1) & set(s2)
        for i, j in q.matching:
            for v in shared:
                assert lass.value(s1, i, v) == lass.value(s2, j, v)


def test_query_cover_edge_identical_lists():
    lists = {f: ((0,) * 2, (1,) * 2) for f in K5.faces(1)}
    lass = LAssignment(K5, 1, 2, lists)
    q = query_cover_edge(lass, (0, 1), (1, 2))
    assert q.pi == (0, 1) and q.adequate


def test_query_cover_edge_inadequate_falls_back_to_identity():
    lists = {f: ((0, 0), (1, 1)) for f in K5.faces(1)}
    # both entries read 0 at the shared vertex on one side, 1 on the other
    lists[(0, 1)] = ((0, 0), (0, 1))
    lists[(0, 2)] = ((1, 0), (1, 1))
    lass = LAssignment(K5, 1, 2, lists)
    q = query_cover_edge(lass, (0, 1), (0, 2))
    assert not q.adequate
    assert q.matching == ((0, 0), (1, 1))
    assert not is_adequately_covered(lass, (0, 1), (0, 2))


def test_query_cover_edge_rejects_non_edges():
    lass = random_agreeing_2diff(K5, 1, random.Random(0))
    with pytest.raises(NotAnEdge):
        query_cover_edge(lass, (0, 1), (2, 3))  # disjoint faces
    with pytest.raises(NotAnEdge):
        query_cover_edge(lass, (0, 1), (0, 1))


def test_odd_cycle_every_edge_adequate_but_not_agreeing():
    # wheel over a 5-cycle so that adjacent edges span triangles; the
    # anti pair on every edge makes all pairs agree locally while global
    # agreement would 2-color an odd cycle
    n = 5
    center = 9
    X = build_complex([[i, (i + 1) % n, center] for i in range(n)])
    rep = build_representation(X, 1)
    lists = {f: ((1, 0), (0, 1)) for f in X.faces(1)}
    lass = LAssignment(X, 1, 2, lists)
    for (a, b) in rep.faces(1):
        assert is_adequately_covered(
            lass, rep.vertex_kface(a), rep.vertex_kface(b)
        )
    ok, _ = is_agreeing(lass)
    assert not ok
    dist, _ = dist_to_agreeing_oracle(lass)
    assert dist > 0


def test_l_equal_one_adequacy_is_restriction_equality():
    X = complete_complex(4, 2)
    lists = {f: ((0, 0),) for f in X.faces(1)}
    lists[(0, 1)] = ((1, 0),)
    lass = LAssignment(X, 1, 1, lists)
    assert not is_adequately_covered(lass, (0, 1), (0, 2))
    assert is_adequately_covered(lass, (0, 2), (0, 3))


def test_induced_cochain_of_agreeing_input_is_coboundary():
    rng = random.Random(2)
    for _ in range(5):
        lass = random_agreeing_2diff(K5, 1, rng)
        phi, inadequate, ambiguous = induced_cochain(REP5, lass)
        assert not inadequate
        assert not ambiguous
        assert is_coboundary(phi) is not None


def test_tester_completeness_exhaustive():
    rng = random.Random(3)
    for _ in range(10):
        lass = random_agreeing_2diff(K6, 1, rng)
        assert is_2_locally_differing(lass)
        res = list_agreement_test(lass, rep=REP6)
        assert res.rejection == 0
        assert res.validated_2_differing


def test_tester_rejection_decomposition():
    rng = random.Random(4)
    lass = random_agreeing_2diff(K6, 1, rng)
    face = sorted(K6.faces(1))[0]
    bad = corrupt_entry(
        lass, face, 0, tuple(1 - b for b in lass.lists[face][0])
    )
    res = list_agreement_test(bad, rep=REP6)
    assert res.rejection == Fraction(1, 2) * (
        res.coboundary_rejection + res.inadequate_norm
    )
    assert res.coboundary_rejection == Fraction(1, 2) * (
        res.eps_full + res.eps_empty
    )


def test_tester_zero_rejection_iff_zero_distance():
    rng = random.Random(5)
    lass = random_agreeing_2diff(K5, 1, rng)
    corruptions = [lass]
    face = sorted(K5.faces(1))[2]
    for slot in range(2):
        for bits in itertools.product([0, 1], repeat=2):
            corruptions.append(corrupt_entry(lass, face, slot, bits))
    for cand in corruptions:
        res = list_agreement_test(cand, rep=REP5)
        dist, _ = dist_to_agreeing_oracle(cand)
        assert (res.rejection == 0) == (dist == 0)


def test_single_shot_budget_and_montecarlo_agreement():
    rng = random.Random(6)
    lass = random_agreeing_2diff(K6, 1, rng)
    face = sorted(K6.faces(1))[4]
    bad = corrupt_entry(lass, face, 1, (0, 0))
    exact = list_agreement_test(bad, rep=REP6).rejection
    shots = 3000
    srng = random.Random(7)
    rejected = 0
    for _ in range(shots):
        one = list_agreement_test(bad, mode="single", rng=srng, rep=REP6)
        assert one.reads_entries <= 3 * bad.l
        assert one.reads_faces <= 3
        rejected += one.rejection != 0
    lo, hi = wilson_interval(rejected, shots)
    assert lo <= float(exact) <= hi


def test_no_ambiguity_under_2_differing():
    rng = random.Random(8)
    for _ in range(20):
        lass = random_agreeing_2diff(K5, 1, rng)
        _, _, ambiguous = induced_cochain(REP5, lass)
        assert not ambiguous


def test_ambiguity_flag_without_2_differing():
    # constant-zero lists everywhere: every permutation matches
    lists = {f: ((0, 0), (0, 0)) for f in K5.faces(1)}
    lass = LAssignment(K5, 1, 2, lists)
    assert not is_2_locally_differing(lass)
    q = query_cover_edge(lass, (0, 1), (0, 2))
    assert q.ambiguous and q.pi == (0, 1)  # lexicographically smallest
    res = list_agreement_test(lass, rep=REP5)
    assert res.ambiguous_permutation
    assert not res.validated_2_differing


def test_assignment_distance():
    vals = {f: (0, 0) for f in K5.faces(1)}
    F = Assignment(K5, 1, vals)
    G = Assignment(K5, 1, dict(vals))
    assert assignment_distance(F, G) == 0
    vals2 = dict(vals)
    vals2[(0, 1)] = (1, 0)
    H = Assignment(K5, 1, vals2)
    assert assignment_distance(F, H) == K5.weight((0, 1))
    with pytest.raises(BaseMismatch):
        assignment_distance(F, Assignment(K6, 1, {f: (0, 0) for f in K6.faces(1)}))


def test_l_assignment_distance_positional():
    X = build_complex([[1, 2, 3]])
    lists = {f: ((0, 0), (1, 1)) for f in X.faces(1)}
    A = LAssignment(X, 1, 2, lists)
    lists2 = dict(lists)
    lists2[(1, 2)] = ((0, 1), (1, 1))
    B = LAssignment(X, 1, 2, lists2)
    assert l_assignment_distance(A, A) == 0
    assert l_assignment_distance(A, B) == Fraction(1, 6)  # w=1/3, 1 of 2 slots
    # swapped order counts both slots: the distance is positional
    lists3 = dict(lists)
    lists3[(1, 2)] = ((1, 1), (0, 0))
    C = LAssignment(X, 1, 2, lists3)
    assert l_assignment_distance(A, C) == Fraction(1, 3)


def test_l_assignment_distance_triangle_inequality():
    rng = random.Random(9)
    X = complete_complex(4, 2)
    def rand_lass():
        return LAssignment(
            X,
            1,
            2,
            {
                f: (
                    tuple(rng.randrange(2) for _ in f),
                    tuple(rng.randrange(2) for _ in f),
                )
                for f in X.faces(1)
            },
        )
    for _ in range(20):
        a, b, c = rand_lass(), rand_lass(), rand_lass()
        assert l_assignment_distance(a, c) <= l_assignment_distance(
            a, b
        ) + l_assignment_distance(b, c)


def test_agreeing_oracle_on_agreeing_input():
    rng = random.Random(10)
    lass = random_agreeing_2diff(K5, 1, rng)
    dist, witness = dist_to_agreeing_oracle(lass)
    assert dist == 0
    globs, perms = witness
    vindex = {v: i for i, v in enumerate(K5.vertices)}
    for f in lass.lists:
        pi = perms[f]
        for i in range(2):
            assert lass.lists[f][pi[i]] == tuple(
                globs[i][vindex[v]] for v in f
            )


def test_agreeing_oracle_distance_decomposition_bound():
    # the oracle distance is at most the permutation-wise slice average,
    # for any fixed family of per-face permutations
    rng = random.Random(11)
    X = complete_complex(4, 2)
    rep = build_representation(X, 1)
    lists = {
        f: (
            tuple(rng.randrange(2) for _ in f),
            tuple(rng.randrange(2) for _ in f),
        )
        for f in X.faces(1)
    }
    lass = LAssignment(X, 1, 2, lists)
    dist, _ = dist_to_agreeing_oracle(lass)
    for _ in range(5):
        perms = {f: rng.choice([(0, 1), (1, 0)]) for f in X.faces(1)}
        sliced = Fraction(0)
        for i in range(2):
            F = lass.slice_assignment(perms, i)
            di, _ = dist_assignment_to_agreeing_oracle(F)
            sliced += di
        assert dist <= sliced / 2


def test_agreeing_oracle_guard():
    X = complete_complex(11, 2)
    lists = {f: ((0, 0), (1, 1)) for f in X.faces(1)}
    lass = LAssignment(X, 1, 2, lists)
    with pytest.raises(SearchSpaceTooLarge):
        dist_to_agreeing_oracle(lass)


def test_one_up_rejection_matches_inadequacy_for_single_assignment():
    rng = random.Random(12)
    f = tuple(rng.randrange(2) for _ in K5.vertices)
    vindex = {v: i for i, v in enumerate(K5.vertices)}
    values = {
        face: tuple(f[vindex[v]] for v in face) for face in K5.faces(1)
    }
    F = Assignment(K5, 1, values)
    assert one_up_rejection(REP5, F) == 0
    values2 = dict(values)
    values2[(0, 1)] = tuple(1 - b for b in values[(0, 1)])
    F2 = Assignment(K5, 1, values2)
    assert one_up_rejection(REP5, F2) > 0
