"""Direct-sum evaluation, reconstruction, origin queries, tester, oracle."""

import itertools
import random
from fractions import Fraction

import pytest

from listagreement.direct_sum import (
    FaceFunction,
    direct_sum_test,
    dist_to_direct_sums_oracle,
    eval_direct_sum,
    induced_l_assignment,
    query_origin_on_face,
    reconstruct_origin,
)
from listagreement.errors import NoContainingFace, SearchSpaceTooLarge
from listagreement.generators import complete_complex
from listagreement.list_agreement import dist_to_agreeing_oracle
from listagreement.representation import build_representation


def random_origin(X, rng):
    return {v: rng.randrange(2) for v in X.vertices}


def test_eval_zero_origin():
    X = complete_complex(6, 3)
    F = eval_direct_sum(X, {v: 0 for v in X.vertices}, 2)
    assert all(b == 0 for b in F.values.values())


def test_complement_symmetry_by_parity():
    X = complete_complex(6, 3)
    rng = random.Random(0)
    f = random_origin(X, rng)
    comp = {v: 1 - b for v, b in f.items()}
    even = eval_direct_sum(X, f, 2)
    assert even.values == eval_direct_sum(X, comp, 2).values
    odd = eval_direct_sum(X, f, 3)
    odd_c = eval_direct_sum(X, comp, 3)
    assert all(odd.values[k] != odd_c.values[k] for k in odd.values)


def test_reconstruct_roundtrip_odd():
    X = complete_complex(7, 4)
    rng = random.Random(1)
    for _ in range(10):
        f = random_origin(X, rng)
        F = eval_direct_sum(X, f, 3)
        assert reconstruct_origin(F) == f


def test_reconstruct_roundtrip_even():
    X = complete_complex(7, 4)
    rng = random.Random(2)
    for _ in range(10):
        f = random_origin(X, rng)
        F = eval_direct_sum(X, f, 2)
        f0, f1 = reconstruct_origin(F)
        assert f in (f0, f1)
        assert f1 == {v: 1 - b for v, b in f0.items()}
        assert f0[X.vertices[0]] == 0  # anchored


def test_reconstruct_zero_even():
    X = complete_complex(6, 3)
    F = FaceFunction(X, 2, {f: 0 for f in X.faces(1)})
    f0, f1 = reconstruct_origin(F)
    assert set(f0.values()) == {0}
    assert set(f1.values()) == {1}


def test_reconstruct_requires_k_plus_1_faces():
    X = complete_complex(4, 2)  # d = 2 < k+1 for k = 2
    F = FaceFunction(X, 2, {f: 0 for f in X.faces(1)})
    with pytest.raises(NoContainingFace):
        reconstruct_origin(F)
    with pytest.raises(NoContainingFace):
        query_origin_on_face(F, (0, 1, 2))


def test_reconstruct_choice_independence():
    # every admissible containing face yields the same value on genuine sums
    X = complete_complex(6, 3)
    rng = random.Random(3)
    f = random_origin(X, rng)
    for k in (2, 3):
        F = eval_direct_sum(X, f, k)
        kfaces = sorted(X.faces(k))
        if k % 2 == 1:
            for v in X.vertices:
                values = {
                    reconstruct_origin(F, face_choice={v: sigma})[v]
                    for sigma in kfaces
                    if v in sigma
                }
                assert values == {f[v]}
        else:
            anchor = X.vertices[0]
            for v in X.vertices[1:]:
                values = {
                    reconstruct_origin(F, face_choice={v: sigma})[0][v]
                    for sigma in kfaces
                    if v in sigma and anchor in sigma
                }
                assert len(values) == 1


def test_exactly_two_origins_even_and_one_odd():
    X = complete_complex(6, 4)
    rng = random.Random(4)
    f = random_origin(X, rng)
    for k, expected in ((2, 2), (3, 1)):
        F = eval_direct_sum(X, f, k)
        matches = []
        for bits in itertools.product([0, 1], repeat=len(X.vertices)):
            g = dict(zip(X.vertices, bits))
            if eval_direct_sum(X, g, k).values == F.values:
                matches.append(g)
        assert len(matches) == expected
        assert f in matches


def test_query_origin_reads():
    X = complete_complex(7, 4)
    rng = random.Random(5)
    f = random_origin(X, rng)
    F3 = eval_direct_sum(X, f, 3)
    tau = sorted(X.faces(3))[0]
    lists, reads = query_origin_on_face(F3, tau)
    assert reads == 4  # k+1 distinct probes for odd k
    assert lists[0] == tuple(f[v] for v in tau)
    F2 = eval_direct_sum(X, f, 2)
    tau2 = sorted(X.faces(2))[0]
    lists2, reads2 = query_origin_on_face(F2, tau2)
    assert reads2 <= 3  # within the k+1 budget
    assert tuple(f[v] for v in tau2) in lists2


def test_query_matches_global_reconstruction():
    X = complete_complex(6, 3)
    rng = random.Random(6)
    f = random_origin(X, rng)
    F = eval_direct_sum(X, f, 3)
    g = reconstruct_origin(F)
    for tau in X.faces(3):
        lists, _ = query_origin_on_face(F, tau)
        assert lists[0] == tuple(g[v] for v in tau)


def test_induced_l_assignment_is_2_differing_for_even_k():
    from listagreement.list_agreement import is_2_locally_differing

    X = complete_complex(6, 3)
    rng = random.Random(7)
    F = eval_direct_sum(X, random_origin(X, rng), 2)
    lass = induced_l_assignment(F)
    assert lass.l == 2
    assert is_2_locally_differing(lass)


def test_direct_sum_test_accepts_genuine_sums():
    rng = random.Random(8)
    for n, d, k in ((6, 3, 2), (6, 4, 3), (7, 3, 2)):
        X = complete_complex(n, d)
        F = eval_direct_sum(X, random_origin(X, rng), k)
        res = direct_sum_test(F)
        assert res.rejection == 0, (n, d, k)


def test_direct_sum_test_rejects_corruptions():
    X = complete_complex(6, 3)
    rng = random.Random(9)
    F = eval_direct_sum(X, random_origin(X, rng), 2)
    vals = dict(F.values)
    key = sorted(vals)[0]
    vals[key] ^= 1
    bad = FaceFunction(X, 2, vals)
    res = direct_sum_test(bad)
    assert res.rejection > 0
    assert dist_to_direct_sums_oracle(bad) > 0


def test_oracle_examples():
    X = complete_complex(6, 3)
    rng = random.Random(10)
    f = random_origin(X, rng)
    F = eval_direct_sum(X, f, 2)
    assert dist_to_direct_sums_oracle(F) == 0
    vals = {face: 0 for face in X.faces(1)}
    key = sorted(vals)[0]
    vals[key] = 1
    flipped = FaceFunction(X, 2, vals)
    # the all-zero origin explains every face but the flipped one, and no
    # origin does better: verified by the exhaustive minimum itself
    assert dist_to_direct_sums_oracle(flipped) == X.weight(key)


def test_oracle_complement_symmetry_even():
    X = complete_complex(6, 3)
    rng = random.Random(11)
    for _ in range(5):
        vals = {f: rng.randrange(2) for f in X.faces(1)}
        F = FaceFunction(X, 2, vals)
        d1 = dist_to_direct_sums_oracle(F)
        # evaluating at f and its complement gives the same direct sum, so
        # the minimum is attained in complement pairs: re-check via brute
        best = min(
            sum(
                (
                    X.weight(face)
                    for face in X.faces(1)
                    if F.values[face] != (sum(bits[v] for v in face) % 2)
                ),
                Fraction(0),
            )
            for bits in (
                dict(zip(X.vertices, combo))
                for combo in itertools.product([0, 1], repeat=6)
            )
        )
        assert d1 == best


def test_oracle_guard():
    X = complete_complex(17, 2)
    F = FaceFunction(X, 2, {f: 0 for f in X.faces(1)})
    with pytest.raises(SearchSpaceTooLarge):
        dist_to_direct_sums_oracle(F)


def test_distance_chain_direct_sum_vs_list_oracle():
    # dist(F, k-direct-sums) <= dist(induced l-assignment, agreeing set)
    rng = random.Random(12)
    for n, d, k in ((6, 3, 2), (6, 4, 3)):
        X = complete_complex(n, d)
        for _ in range(6):
            vals = {f: rng.randrange(2) for f in X.faces(k - 1)}
            F = FaceFunction(X, k, vals)
            lhs = dist_to_direct_sums_oracle(F)
            rhs, _ = dist_to_agreeing_oracle(induced_l_assignment(F))
            assert lhs <= rhs, (n, d, k)


def test_reads_budget_single_shots():
    X = complete_complex(6, 3)
    rng = random.Random(13)
    F = eval_direct_sum(X, random_origin(X, rng), 2)
    rep = build_representation(X, 2)
    srng = random.Random(14)
    for _ in range(200):
        one = direct_sum_test(F, mode="single", rng=srng, rep=rep)
        assert one.reads_faces <= 3
        assert one.parameters["f_reads_bound"] <= 3 * (F.k + 1)
