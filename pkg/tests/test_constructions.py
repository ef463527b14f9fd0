import pytest

from setpairs.constructions import (
    colex_skew_system,
    distinct_representatives,
    ekr_star,
    erdos_lovasz_pairs,
    expected_counts,
    tuza_tau_k_family,
    weakly_triple_system,
)
from setpairs.core import binomial
from setpairs.families import covering_number, is_intersecting
from setpairs.systems import PairFlavor, SetPairSystem, verify_flavor, vertex_set


@pytest.mark.parametrize("k,members,union", [(2, 2, 3), (3, 6, 7), (4, 20, 16), (5, 70, 43)])
def test_tuza_family_counts(k, members, union):
    fam = tuza_tau_k_family(k)
    assert len(fam) == members
    assert len(fam.union()) == union
    assert fam.n == union and fam.k == k
    assert is_intersecting(fam)


@pytest.mark.parametrize("k", [3, 4])
def test_tuza_family_covering_number(k):
    assert covering_number(tuza_tau_k_family(k))[0] == k


def test_tuza_family_degenerates_at_k2():
    # two distinct 2-sets that meet share one point, and that point hits both
    fam = tuza_tau_k_family(2)
    tau, trans = covering_number(fam)
    assert tau == 1
    assert all(s.intersects(trans) for s in fam)


def test_tuza_rejects_k1():
    with pytest.raises(ValueError):
        tuza_tau_k_family(1)


@pytest.mark.parametrize("k,pairs,vertices", [(2, 2, 6), (3, 6, 16), (4, 20, 46)])
def test_erdos_lovasz(k, pairs, vertices):
    sys = erdos_lovasz_pairs(k)
    assert verify_flavor(sys, PairFlavor.CROSS)
    assert len(sys.pairs) == pairs
    assert len(vertex_set(sys)) == vertices


def test_erdos_lovasz_first_coordinates_need_not_meet():
    A, _ = erdos_lovasz_pairs(2).masks()
    assert not A[0] & A[1]


def test_colex_skew_22_fresh_point_profile():
    sys = colex_skew_system(2, 2)
    y = (1 << 4) - 1
    fresh = [(b.mask & ~y).bit_count() for _, b in sys.pairs]
    assert fresh == [2, 1, 1, 0, 0, 0]
    assert [sorted(a) for a, _ in sys.pairs] == [[1, 2], [1, 3], [2, 3], [1, 4], [2, 4], [3, 4]]


@pytest.mark.parametrize("k,l", [(k, l) for k in range(1, 5) for l in range(1, 5)])
def test_colex_skew_meets_pair_bound(k, l):
    sys = colex_skew_system(k, l)
    assert verify_flavor(sys, PairFlavor.SKEW)
    assert len(sys.pairs) == binomial(k + l, k)
    assert len(vertex_set(sys)) == k + l + binomial(k + l, k + 1)
    assert all(len(b) == l for _, b in sys.pairs)


def test_colex_skew_12():
    sys = colex_skew_system(1, 2)
    assert len(sys.pairs) == 3 and len(vertex_set(sys)) == 6


@pytest.mark.parametrize("k,l,pairs,vertices", [(2, 2, 9, 12), (2, 3, 12, 16), (3, 3, 30, 35)])
def test_weakly_triple(k, l, pairs, vertices):
    sys = weakly_triple_system(k, l)
    assert verify_flavor(sys, PairFlavor.WEAKLY)
    assert len(sys.pairs) == pairs
    assert len(vertex_set(sys)) == vertices


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_weakly_triple_k1_uses_l_plus_2_points(l):
    # the lone empty A' leaves one point of Y uncovered by any B'
    sys = weakly_triple_system(1, l)
    assert verify_flavor(sys)
    assert len(sys.pairs) == 3
    assert len(vertex_set(sys)) == l + 2


def test_weakly_triple_rejects_k_above_l():
    with pytest.raises(ValueError):
        weakly_triple_system(3, 2)


@pytest.mark.parametrize("k,l", [(2, 2), (2, 4), (3, 3), (3, 4)])
@pytest.mark.parametrize("rotation", [0, 1, 5])
def test_every_representative_system_is_weakly(k, l, rotation):
    reps = distinct_representatives(k, l, rotation)
    assert len({b for _, b in reps}) == len(reps)
    assert all(not a & b for a, b in reps)
    # triples built from any matching pass, not just the one the builder picks
    base = k + l
    pairs = []
    for i, (a, b) in enumerate(reps):
        x, y, z = (1 << (base + 3 * i + t) for t in range(3))
        pairs += [(a | x, b | y), (a | y, b | z), (a | z, b | x)]
    assert verify_flavor(SetPairSystem.from_masks(k, l, pairs, PairFlavor.WEAKLY))


@pytest.mark.parametrize("n,k,e,want", [(5, 2, 1, 4), (6, 3, 2, 10)])
def test_ekr_star_sizes(n, k, e, want):
    fam = ekr_star(n, k, e)
    assert len(fam) == want
    assert all(e in s for s in fam)


def test_ekr_star_listing():
    assert [sorted(s) for s in ekr_star(4, 2, 3)] == [[1, 3], [2, 3], [3, 4]]


def test_ekr_star_bad_centre():
    with pytest.raises(ValueError):
        ekr_star(4, 2, 5)


@pytest.mark.parametrize("name", ["erdos-lovasz", "colex-skew", "weakly-triple"])
def test_expected_counts_match_builders(name):
    for k in range(2, 5):
        for l in range(k, 5):
            exp = expected_counts(name, k, l)
            sys = {"erdos-lovasz": lambda: erdos_lovasz_pairs(k),
                   "colex-skew": lambda: colex_skew_system(k, l),
                   "weakly-triple": lambda: weakly_triple_system(k, l)}[name]()
            assert len(sys.pairs) == exp["members"]
            assert len(vertex_set(sys)) == exp["vertices"]


def test_expected_counts_unknown():
    with pytest.raises(ValueError):
        expected_counts("nope", 2, 2)
