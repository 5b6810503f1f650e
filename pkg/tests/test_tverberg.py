import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multichess.tverberg import (
    HullWitness,
    PartitionCertificate,
    TverbergInstance,
    check_witness,
    feasible_point,
    hulls_intersect,
    in_general_position,
    is_prime_power,
    random_instance,
    search_partition,
    verify_certificate,
    verify_theorem,
)

from oracles import planar_hulls_meet


def test_crossing_segments():
    w = hulls_intersect([[(0, 0), (2, 2)], [(0, 2), (2, 0)]])
    assert w.point == (1, 1)


def test_point_in_triangle():
    w = hulls_intersect([[(Fraction(1, 3), Fraction(1, 3))], [(0, 0), (1, 0), (0, 1)]])
    assert w.point == (Fraction(1, 3), Fraction(1, 3))


def test_disjoint_triangles():
    assert hulls_intersect([[(0, 0), (1, 0), (0, 1)], [(5, 5), (6, 5), (5, 6)]]) is None


def test_empty_group_rejected():
    with pytest.raises(ValueError):
        hulls_intersect([[(0, 0)], []])


def test_lp_degenerate_rows():
    # redundant equality rows are fine
    x = feasible_point([[1, 1], [2, 2]], [1, 2])
    assert x is not None and sum(x) == 1
    assert feasible_point([[1, 1], [1, 1]], [1, 2]) is None
    assert feasible_point([[1, -1]], [-1]) == [0, 1]


def test_witness_check_detects_tampering():
    groups = [[(0, 0), (2, 2)], [(0, 2), (2, 0)]]
    w = hulls_intersect(groups)
    assert check_witness(groups, w)
    assert not check_witness(groups, HullWitness((Fraction(1), Fraction(0)), w.coefficients))


points = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
groups = st.lists(st.lists(points, min_size=1, max_size=6), min_size=2, max_size=3)


@given(groups)
@settings(max_examples=200, deadline=None)
def test_hulls_agree_with_planar_oracle(gs):
    w = hulls_intersect(gs)
    assert (w is not None) == planar_hulls_meet(gs)
    if w is not None:
        assert check_witness(gs, w)


def test_prime_powers():
    assert [r for r in range(1, 17) if is_prime_power(r)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_random_instance_is_reproducible():
    a = random_instance(2, 3, 2, 1, seed=11)
    b = random_instance(2, 3, 2, 1, seed=11)
    assert a.colors == b.colors
    assert all(len(c) == 3 for c in a.colors)
    assert in_general_position([p for c in a.colors for p in c], 2)
    assert a.hypothesis


def test_general_position_predicate():
    assert not in_general_position([(0, 0), (1, 1), (2, 2)], 2)
    assert not in_general_position([(0, 0), (0, 0)], 2)
    assert in_general_position([(0, 0), (1, 0), (0, 1)], 2)


def test_radon_five_points():
    inst = random_instance(2, 1, 2, 2, seed=3)
    assert len(inst.colors[0]) == 5
    res = search_partition(inst)
    assert res.found and verify_certificate(inst, res.certificate)


def test_all_points_equal():
    inst = TverbergInstance(2, 1, 2, 2, [[(1, 1)] * 5])
    res = search_partition(inst)
    assert res.found
    assert res.certificate.witness.point == (1, 1)


def test_exhausted_when_impossible():
    # two far apart points, one per group, cannot meet
    inst = TverbergInstance(1, 1, 2, 1, [[(0,), (1,)]])
    res = search_partition(inst)
    assert res.status == "exhausted"


def test_budget_truncates():
    inst = TverbergInstance(1, 1, 2, 1, [[(0,), (1,)]])
    assert search_partition(inst, budget=0).status == "truncated"


def test_maximal_enumeration_matches_full_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        pts = [[(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)] for _ in range(2)]
        inst = TverbergInstance(2, 2, 2, 1, pts)
        a = search_partition(inst, budget=None, maximal_only=True)
        b = search_partition(inst, budget=None, maximal_only=False)
        assert a.found == b.found


def test_certificate_checks_caps_and_disjointness():
    inst = TverbergInstance(2, 1, 2, 1, [[(0, 0), (0, 0), (1, 1)]])
    w = hulls_intersect([[(0, 0)], [(0, 0)]])
    good = PartitionCertificate([[(0, 0)], [(0, 1)]], w)
    assert verify_certificate(inst, good)
    assert not verify_certificate(inst, PartitionCertificate([[(0, 0)], [(0, 0)]], w))
    over = PartitionCertificate([[(0, 0), (0, 2)], [(0, 1)]], hulls_intersect([[(0, 0), (1, 1)], [(0, 0)]]))
    assert not verify_certificate(inst, over)


def test_relabelled_groups_still_certify():
    inst = random_instance(2, 3, 2, 1, seed=4)
    res = search_partition(inst)
    swapped = PartitionCertificate(res.certificate.groups[::-1], hulls_intersect(
        res.certificate.points(inst)[::-1]))
    assert verify_certificate(inst, swapped)


def test_corollary_dimension_for_one_color():
    # d = pk - 1 = 0: every point is the same point
    stats = verify_theorem(0, 1, 2, 1, trials=20, seed=1)
    assert stats.successes == 20 and stats.hypothesis


def test_three_points_on_a_line_with_single_point_groups():
    # one point per group cannot work for distinct points, and the count
    # hypothesis 2 >= 3 fails, so exhaustion is the expected answer
    stats = verify_theorem(1, 1, 2, 1, trials=5, seed=1)
    assert not stats.hypothesis
    assert stats.successes == 0 and len(stats.exhausted) == 5


def test_hypothesis_warning(caplog):
    stats = verify_theorem(1, 1, 3, 1, trials=2, seed=0)
    assert not stats.hypothesis
    assert "fails" in caplog.text


def test_three_rainbow_triangles():
    # nine planar points in three colors, three per color
    stats = verify_theorem(2, 3, 3, 1, trials=5, seed=2)
    assert stats.hypothesis and stats.successes == 5
    rng = random.Random(9)
    for _ in range(5):
        cols = [[(Fraction(rng.randint(-50, 50)), Fraction(rng.randint(-50, 50))) for _ in range(3)]
                for _ in range(3)]
        inst = TverbergInstance(2, 3, 3, 1, cols)
        if not in_general_position([p for c in cols for p in c], 2):
            continue
        assert not inst.standard_sizes
        res = search_partition(inst)
        assert res.found and verify_certificate(inst, res.certificate)
