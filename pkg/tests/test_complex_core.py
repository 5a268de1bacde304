"""Core complex construction, weights, norms, links, skeletons, sampling."""

import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from listagreement.complex_core import (
    SimplicialComplex,
    binomial_product_identity_as_stated_holds,
    binomial_product_identity_holds,
    build_complex,
    verify_closure_and_purity,
    verify_link_weight_law,
    verify_weight_normalization,
)
from listagreement.errors import (
    FaceNotInComplex,
    InvalidParams,
    MixedDimensions,
    TopDimensionalFace,
)
from listagreement.generators import complete_complex


def brute_weight(X, face):
    """Independent recount straight from the definition."""
    containing = sum(1 for m in X.maximal_faces if set(face) <= set(m))
    return Fraction(containing, comb(X.d + 1, len(face)) * len(X.maximal_faces))


def test_build_single_triangle():
    X = build_complex([[1, 2, 3]])
    assert len(X.faces(2)) == 1
    assert len(X.faces(1)) == 3
    assert len(X.faces(0)) == 3
    assert X.faces(-1) == frozenset({()})


def test_build_all_edges_is_fine():
    X = build_complex([[1, 2], [2, 3], [1, 3], [1, 4]])
    assert X.d == 1
    assert len(X.faces(0)) == 4
    assert len(X.faces(1)) == 4


def test_build_mixed_dimensions_raises():
    with pytest.raises(MixedDimensions):
        build_complex([[1, 2, 3], [4, 5]])


def test_duplicate_maximal_faces_collapse():
    X = build_complex([[1, 2, 3], [3, 2, 1]])
    assert len(X.maximal_faces) == 1


def test_weights_elementary():
    X = build_complex([[1, 2, 3]])
    assert X.weight((1, 2)) == Fraction(1, 3)
    assert X.weight(()) == 1
    with pytest.raises(FaceNotInComplex):
        X.weight((1, 4))


def test_weights_complete_complex():
    X = complete_complex(6, 2)
    assert X.weight((0,)) == Fraction(1, 6) == brute_weight(X, (0,))
    assert X.weight((0, 1)) == Fraction(1, 15) == brute_weight(X, (0, 1))
    for i in range(-1, 3):
        for f in X.faces(i):
            assert X.weight(f) == brute_weight(X, f)
            assert X.weight(f) == Fraction(1, comb(6, i + 1))


def test_norms():
    X = build_complex([[1, 2, 3]])
    assert X.norm(X.faces(1)) == 1
    assert X.norm([]) == 0
    assert X.norm([(1, 2), (2, 3)]) == Fraction(2, 3)
    with pytest.raises(MixedDimensions):
        X.norm([(1,), (1, 2)])


def test_containment_up():
    X = build_complex([[1, 2, 3]])
    assert X.containment_up([(1,)], 1) == frozenset({(1, 2), (1, 3)})
    assert X.containment_up(X.faces(0), 2) == X.faces(2)
    K5 = complete_complex(5, 2)
    up = K5.containment_up([(0, 1)], 2)
    assert len(up) == 3  # one triangle per remaining vertex
    assert up == frozenset(
        t for t in K5.faces(2) if {0, 1} <= set(t)
    )


def test_containment_norm_bounds():
    rng = random.Random(11)
    for X in (complete_complex(5, 2), complete_complex(8, 3), build_complex([[1, 2, 3]])):
        for _ in range(20):
            i = rng.randrange(0, X.d)
            j = rng.randrange(i, X.d + 1)
            pool = sorted(X.faces(i))
            S = rng.sample(pool, rng.randrange(1, len(pool) + 1))
            up = X.containment_up(S, j)
            assert X.norm(S) <= X.norm(up) <= comb(j + 1, i + 1) * X.norm(S)


def test_link_of_empty_face_is_whole_complex():
    X = complete_complex(5, 2)
    assert X.link(()) == X


def test_link_of_vertex_in_triangle():
    X = build_complex([[1, 2, 3]])
    lk = X.link((1,))
    assert lk.maximal_faces == frozenset({(2, 3)})


def test_link_of_vertex_in_complete_complex():
    X = complete_complex(6, 2)
    lk = X.link((0,))
    k5_graph = build_complex(itertools.combinations(range(1, 6), 2))
    assert lk == k5_graph
    assert lk.d == 1 and len(lk.faces(0)) == 5 and len(lk.faces(1)) == 10


def test_link_weight_law_exact():
    for X in (complete_complex(6, 2), complete_complex(5, 3)):
        for i in range(0, X.d):
            for face in X.faces(i):
                assert verify_link_weight_law(X, face)


def test_link_errors():
    X = build_complex([[1, 2, 3]])
    with pytest.raises(FaceNotInComplex):
        X.link((9,))
    with pytest.raises(TopDimensionalFace):
        X.link((1, 2, 3))


def test_skeletons():
    X = build_complex([[1, 2, 3]])
    assert X.skeleton(2) == X
    sk = X.skeleton(1)
    assert sk.d == 1 and sk.maximal_faces == X.faces(1)
    K5 = complete_complex(5, 3)
    assert K5.skeleton(1) == complete_complex(5, 1)


def test_invariants_after_construction():
    for X in (
        build_complex([[1, 2, 3]]),
        complete_complex(6, 2),
        complete_complex(5, 3),
        build_complex([[1, 2], [2, 3], [3, 1]]),
    ):
        assert verify_closure_and_purity(X)
        assert verify_weight_normalization(X)


def test_sampler_distribution_exact():
    X = build_complex([[1, 2, 3]])
    dist = dict(X.sample_distribution(1))
    assert set(dist) == X.faces(1)
    assert all(p == Fraction(1, 3) for p in dist.values())
    assert sum(dist.values()) == 1
    K6 = complete_complex(6, 2)
    for i in range(-1, 3):
        assert sum(p for _, p in K6.sample_distribution(i)) == 1


def test_sampler_montecarlo_matches_weights():
    X = complete_complex(6, 2)
    rng = random.Random(1)
    counts = {f: 0 for f in X.faces(0)}
    n = 60000
    for _ in range(n):
        counts[X.sample_face(0, rng)] += 1
    p = 1 / 6
    sigma = (n * p * (1 - p)) ** 0.5
    for f, c in counts.items():
        assert abs(c - n * p) <= 3 * sigma, (f, c)


def test_sample_face_bad_dim():
    X = build_complex([[1, 2, 3]])
    with pytest.raises(InvalidParams):
        X.sample_face(5, random.Random(0))


def test_face_validation():
    with pytest.raises(InvalidParams):
        build_complex([[1, 1, 2]])


def test_binomial_identity_corrected_holds_up_to_12():
    for dp1 in range(1, 13):
        d = dp1 - 1
        for k in range(0, d + 2):
            for i in range(-1, d + 2):
                if 0 <= k and k + i + 1 <= d + 1 and i + 1 >= 0:
                    assert binomial_product_identity_holds(d, k, i), (d, k, i)


def test_binomial_identity_as_stated_fails_at_4_1_2():
    assert not binomial_product_identity_as_stated_holds(4, 1, 2)
