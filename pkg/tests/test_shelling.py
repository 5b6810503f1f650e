import itertools

import pytest
from hypothesis import given, settings, strategies as st

from multichess.boards import BoardSpec, multi_chessboard
from multichess.complex import boundary_of_simplex, from_facets, simplex
from multichess.homology import top_betti
from multichess.shelling import (
    Lacuna,
    ShellingCertificate,
    ShellingError,
    Violation,
    board_facets,
    certify_board,
    compare_facets,
    facet_key,
    lacunas,
    lex_order,
    priority_sequence,
    shelling_order,
    sort_by_comparator,
    tuple_to_face,
    verify_shelling,
    wedge_summary,
)

from oracles import brute_is_shelling, standard_compare


def test_priority_sequences():
    assert priority_sequence({3}, 5) == (2, 1, 5, 4)
    assert priority_sequence({1, 4}, 5) == (3, 2, 5)
    assert priority_sequence(set(), 4) == (4, 3, 2, 1)
    assert priority_sequence({1, 2, 3}, 3) == ()


def test_lacunas_cover_complement():
    assert lacunas({3}, 5) == [Lacuna(1, 2), Lacuna(4, 2)]
    for A1 in [(1, 4), (2,), (), (1, 2, 5)]:
        cols = [c for lac in lacunas(A1, 6) for c in lac.columns]
        assert sorted(cols) == [c for c in range(1, 7) if c not in A1]


def test_first_row_antilex():
    assert compare_facets(((2,), (4,)), ((3,), (4,)), 5) == -1
    assert compare_facets(((1, 3),), ((2, 3),), 3) == -1
    assert compare_facets(((2, 3),), ((1, 3),), 3) == 1


def test_case_c_reduction_example():
    A = ((3,), (1, 4))
    B = ((3,), (1, 5))
    assert compare_facets(A, B, 5) == -1
    assert compare_facets(B, A, 5) == 1


def test_standard_predecessors_of_lex_offender():
    for m in range(3, 7):
        B = ((2,), (1,))
        for j in range(3, m + 1):
            assert compare_facets(((2,), (j,)), B, m) == -1


def test_shape_mismatch():
    with pytest.raises(ShellingError):
        compare_facets(((1,), (2,)), ((1, 2), (3,)), 4)
    with pytest.raises(ShellingError):
        compare_facets(((1,), (1,)), ((1,), (2,)), 4)


def test_order_of_triangle_edges():
    assert shelling_order((3, (2,))) == [((1, 2),), ((1, 3),), ((2, 3),)]


def test_hypothesis_enforced():
    with pytest.raises(ShellingError, match="shelling hypothesis"):
        shelling_order((4, (2, 2)))
    assert shelling_order((4, (2, 2)), exploratory=True)


def test_spec_input():
    order = shelling_order(BoardSpec.rook_caps(5, (1, 2)))
    assert len(order) == 5 * 6
    with pytest.raises(ShellingError):
        shelling_order(BoardSpec(5, 2, (1, 2), (2, 1, 1, 1, 1)))


def test_smallest_standard_board():
    order = shelling_order((3, (1, 1)))
    assert len(order) == 6
    facets = board_facets(3, (1, 1))
    assert order[0] == min(facets, key=lambda A: facet_key(A, 3))


def test_example_stratification_by_first_row():
    # on the 5x2 board with caps (1,2) the order groups facets by the first-row rook
    order = shelling_order((5, (1, 2)))
    firsts = [A[0] for A in order]
    assert firsts == sorted(firsts)


def test_key_matches_comparator_on_grid():
    for m, caps in [(5, (1, 2)), (5, (2, 1)), (6, (1, 1, 1)), (7, (2, 1, 1))]:
        facets = board_facets(m, caps)
        assert sorted(facets, key=lambda A: facet_key(A, m)) == sort_by_comparator(facets, m)


def test_certificate_on_five_by_two():
    cert = certify_board(5, (2, 2))
    assert isinstance(cert, ShellingCertificate) and cert.ok
    assert wedge_summary(cert) == 1


def test_seven_by_two_wedge_matches_homology():
    cert = certify_board(7, (2, 2))
    K = multi_chessboard(BoardSpec.rook_caps(7, (2, 2)))
    assert wedge_summary(cert) == top_betti(K)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_lex_counterexample(m):
    res = verify_shelling(None, [tuple_to_face(A, m) for A in lex_order(m, (1, 1))])
    assert isinstance(res, Violation) and not res.ok
    # B = {(2,1),(1,2)}: column 2 in row 1 is id 1, column 1 in row 2 is id m
    assert res.facet == (1, m)
    assert res.intersection == ()


def test_single_facet():
    cert = verify_shelling(None, [(0, 1, 2)])
    assert cert.restriction == [()]
    assert wedge_summary(cert) == 0


def test_boundary_of_triangle_one_sphere():
    K = boundary_of_simplex(range(3))
    cert = verify_shelling(K, list(K.facets))
    assert wedge_summary(cert) == 1


def test_cone_is_contractible():
    K = simplex(range(4))
    assert wedge_summary(verify_shelling(K, list(K.facets))) == 0
    cone = from_facets([(0, 1, 9), (1, 2, 9), (2, 3, 9)])
    assert wedge_summary(verify_shelling(cone, list(cone.facets))) == 0


def test_verifier_input_errors():
    K = from_facets([(0, 1), (1, 2)])
    with pytest.raises(ShellingError):
        verify_shelling(K, [(0, 1)])
    with pytest.raises(ShellingError):
        verify_shelling(K, [(0, 1), (0, 1)])
    with pytest.raises(ShellingError):
        verify_shelling(from_facets([(0, 1), (2,)]), [(0, 1), (2,)])


def test_wedge_needs_certificate():
    bad = verify_shelling(None, [(0, 1), (2, 3)])
    assert isinstance(bad, Violation)
    with pytest.raises(ShellingError):
        wedge_summary(bad)


pure_complexes = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 5), min_size=d + 1, max_size=d + 1, unique=True),
                       min_size=1, max_size=6))


@given(pure_complexes, st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_verifier_matches_definition(facets, rnd):
    K = from_facets(facets)
    if not K.is_pure:
        return
    order = list(K.facets)
    rnd.shuffle(order)
    res = verify_shelling(K, order)
    assert isinstance(res, ShellingCertificate) == brute_is_shelling(order)


def test_standard_boards_agree_with_rook_procedure():
    for m in range(1, 7):
        for n in range(1, 4):
            F = list(itertools.permutations(range(1, m + 1), n))
            for A, B in itertools.product(F, repeat=2):
                tA = tuple((a,) for a in A)
                tB = tuple((b,) for b in B)
                assert compare_facets(tA, tB, m) == standard_compare(A, B, m)


def test_reverse_relabelling_still_shells():
    for m, caps in [(5, (1, 2)), (6, (2, 1, 1)), (7, (2, 2, 1))]:
        cert = certify_board(m, caps, relabel="reverse")
        assert isinstance(cert, ShellingCertificate)
