import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from setpairs.cliques import maximal_clique_families
from setpairs.constructions import ekr_star, tuza_tau_k_family
from setpairs.core import ElementSet, binomial, ksubset_masks
from setpairs.families import (
    SetFamily,
    closure_I,
    closure_masks,
    covering_number,
    doubled_pair_system,
    is_intersecting,
    is_maximal_intersecting,
    minimal_generator,
    witness_pair_system,
)
from setpairs.systems import PairFlavor, bollobas_weight, verify_flavor

TRIANGLE = SetFamily.of(5, [[1, 2], [1, 3], [2, 3]], 2)


def test_is_intersecting_examples():
    assert is_intersecting(ekr_star(5, 2, 1))
    assert not is_intersecting(SetFamily.of(4, [[1, 2], [3, 4]]))
    assert is_intersecting(tuza_tau_k_family(3))


def test_closure_examples():
    assert len(closure_I(SetFamily(4, ()), 4, 2)) == 6
    got = closure_I(SetFamily.of(5, [[1, 2]]), 5, 2)
    assert len(got) == 7 and all(s.intersects(ElementSet.of([1, 2])) for s in got)
    full = SetFamily.from_masks(3, ksubset_masks(3, 2), 2)
    assert closure_I(full, 3, 2).same_members(full)


def test_maximal_examples():
    assert is_maximal_intersecting(ekr_star(5, 2, 1), 5, 2)
    assert is_maximal_intersecting(TRIANGLE, 5, 2)
    assert not is_maximal_intersecting(ekr_star(3, 2, 1), 3, 2)
    assert not is_maximal_intersecting(SetFamily.of(4, [[1, 2], [3, 4]]), 4, 2)


def test_covering_examples():
    assert covering_number(ekr_star(6, 3, 4)) == (1, ElementSet.of([4]))
    assert covering_number(TRIANGLE)[0] == 2
    assert covering_number(tuza_tau_k_family(3))[0] == 3


def test_covering_number_of_empty_family():
    with pytest.raises(ValueError):
        covering_number(SetFamily(3, ()))


def _brute_tau(masks, n):
    for size in range(0, n + 1):
        for c in itertools.combinations(range(n), size):
            t = sum(1 << e for e in c)
            if all(m & t for m in masks):
                return size
    raise AssertionError


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 7), st.data())
def test_covering_number_matches_brute_force(n, data):
    k = data.draw(st.integers(1, n))
    pool = list(ksubset_masks(n, k))
    masks = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=12, unique=True))
    tau, trans = covering_number(masks)
    assert tau == _brute_tau(masks, n)
    assert len(trans) == tau and all(m & trans.mask for m in masks)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 6), st.data())
def test_closure_is_antitone(n, data):
    k = data.draw(st.integers(1, min(3, n)))
    pool = list(ksubset_masks(n, k))
    small = data.draw(st.lists(st.sampled_from(pool), max_size=5, unique=True))
    extra = data.draw(st.lists(st.sampled_from(pool), max_size=5, unique=True))
    big = sorted(set(small) | set(extra))
    assert set(closure_masks(big, n, k)) <= set(closure_masks(small, n, k))
    if is_intersecting(small):
        assert set(small) <= set(closure_masks(small, n, k))


def test_triangle_generator_is_itself():
    gw = minimal_generator(TRIANGLE, 5, 2)
    assert gw.generator.same_members(TRIANGLE)
    cross = witness_pair_system(gw, 2)
    assert len(cross.pairs) == 3 and verify_flavor(cross, PairFlavor.CROSS)
    assert verify_flavor(doubled_pair_system(gw, 2), PairFlavor.SKEW)
    json.dumps(gw.to_json())


def test_star_generator_size():
    gw = minimal_generator(ekr_star(5, 2, 1), 5, 2)
    assert len(gw.generator) <= 3


def test_generator_needs_maximal_input():
    with pytest.raises(ValueError):
        minimal_generator(ekr_star(3, 2, 1), 3, 2)


def test_empty_generator_for_complete_family():
    fam = SetFamily.from_masks(5, ksubset_masks(5, 3), 3)
    gw = minimal_generator(fam, 5, 3)
    assert len(gw.generator) == 0
    assert witness_pair_system(gw, 3).pairs == ()


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (5, 3), (6, 3)])
def test_generator_properties_on_every_maximal_family(n, k):
    cap = binomial(2 * k, k) // 2
    for fam in maximal_clique_families(n, k):
        gw = minimal_generator(fam, n, k)
        assert closure_I(gw.generator, n, k).same_members(fam)
        assert len(gw.generator) <= cap
        # each member of the generator is needed
        for f in gw.generator.masks():
            rest = [g for g in gw.generator.masks() if g != f]
            assert not closure_I(rest, n, k).same_members(fam)
        cross = witness_pair_system(gw, k)
        assert verify_flavor(cross, PairFlavor.CROSS)
        assert bollobas_weight(cross) <= 1
        assert verify_flavor(doubled_pair_system(gw, k), PairFlavor.SKEW)
        assert covering_number(fam)[0] <= k


def test_family_validation():
    with pytest.raises(ValueError):
        SetFamily.of(3, [[1, 2], [1, 2]])
    with pytest.raises(ValueError):
        SetFamily.of(3, [[1, 4]])
    with pytest.raises(ValueError):
        SetFamily.of(4, [[1, 2, 3]], k=2)


def test_family_json_round_trip():
    fam = ekr_star(5, 2, 1)
    data = json.loads(json.dumps(fam.to_json()))
    assert data == {"n": 5, "k": 2, "sets": [[1, 2], [1, 3], [1, 4], [1, 5]]}
    assert SetFamily.from_json(data) == fam
    with pytest.raises(ValueError):
        SetFamily.from_json({"sets": []})
