import itertools
import math

import numpy as np
import pytest

from z4class.code_model import StandardGenerator, has_zero_coordinate, span
from z4class.enumeration import (
    CandidateFilterReport,
    cells,
    closed_form_count,
    closed_form_representatives,
    enumerate_A,
    enumerate_candidates,
    enumerate_standard,
    filter_report,
    in_B_family,
    in_candidate_set,
    special_params,
    special_swe,
    special_vector,
)
from z4class.equivalence import are_equivalent, partition_classes
from z4class.weights import swe
from z4class.z4_algebra import is_col_sorted, is_row_sorted

from .oracles import closure, swe_counter


@pytest.mark.parametrize("k1,k2", [(0, 0), (1, 1), (2, 1), (2, 2), (3, 2), (1, 3)])
def test_enumerate_A_counts(k1, k2):
    mats = list(enumerate_A(k1, k2))
    assert len(mats) == math.comb(2**k2 + k1 - 1, k1)
    for a in mats:
        assert a.shape == (k1, k2) and is_row_sorted(a)
    assert len({a.tobytes() for a in mats}) == len(mats)


@pytest.mark.parametrize(
    "B, ok",
    [
        ([[0, 2], [1, 1]], True),
        ([[0, 2], [1, 3]], False),
        ([[1, 2], [3, 3]], True),
        ([[3, 0]], False),
        ([[1, 3]], False),
        ([[2, 2], [2, 0]], True),
        ([[2, 0], [3, 1]], False),
    ],
)
def test_B_family_examples(B, ok):
    assert in_B_family(np.array(B)) == ok


def test_small_cell_candidates():
    gens = list(enumerate_candidates(3, 1, 1))
    assert len(gens) == 10
    assert [g.matrix.tolist()[0] for g in gens[:3]] == [[1, 0, 0], [1, 0, 1], [1, 0, 1]]
    with pytest.raises(ValueError):
        list(enumerate_candidates(3, 0, 0))


def _brute_filter_counts(n, k1, k2):
    r = CandidateFilterReport()
    for g in enumerate_standard(n, k1, k2):
        r.considered += 1
        if not is_row_sorted(g.A):
            continue
        r.row_sorted_a += 1
        if not in_B_family(g.B):
            continue
        r.b_family += 1
        if not is_col_sorted(g.stacked):
            continue
        r.col_sorted += 1
        if np.any(np.all(g.stacked == 0, axis=0)):
            continue
        r.no_zero_column += 1
    return r


@pytest.mark.parametrize("n", [2, 3, 4])
def test_filter_report_matches_brute_force(n):
    for k1, k2 in cells(n):
        report = filter_report(n, k1, k2)
        assert report == _brute_filter_counts(n, k1, k2)
        assert report.is_monotone()
        assert report.no_zero_column == sum(1 for _ in enumerate_candidates(n, k1, k2))


def test_filter_report_example():
    assert filter_report(4, 2, 1).as_dict() == {
        "considered": 128,
        "row_sorted_a": 96,
        "b_family": 60,
        "col_sorted": 60,
        "no_zero_column": 57,
    }


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_candidates_are_members_and_distinct(n):
    for k1, k2 in cells(n):
        gens = list(enumerate_candidates(n, k1, k2))
        assert all(in_candidate_set(g) for g in gens)
        assert len(set(gens)) == len(gens)
        assert not any(has_zero_coordinate(span(g)) for g in gens)


@pytest.mark.parametrize("n,k1,k2", [(3, 1, 1), (3, 2, 0), (4, 1, 1), (4, 2, 1), (4, 1, 2), (4, 0, 2)])
def test_candidates_cover_every_class(n, k1, k2):
    """Every code of the type without a zero coordinate meets some candidate class."""
    reps = [cl.representative for cl in partition_classes(span(g) for g in enumerate_candidates(n, k1, k2))]
    full = [span(g) for g in enumerate_standard(n, k1, k2)]
    full = [c for c in full if not has_zero_coordinate(c)]
    for cl in partition_classes(full):
        assert any(are_equivalent(r, cl.representative) is not None for r in reps)
    assert len(partition_classes(full)) == len(reps)


@pytest.mark.parametrize("n,k1,k2,expected", [(6, 5, 0, 20), (4, 0, 3, 3), (5, 4, 1, 5), (5, 1, 0, 5), (5, 0, 1, 1)])
def test_closed_form_examples(n, k1, k2, expected):
    assert closed_form_count(n, k1, k2) == expected


def test_closed_form_overlaps_agree():
    assert closed_form_count(2, 1, 1) == 2  # (n-1, 1) and (1, n-1)
    assert closed_form_count(2, 1, 0) == 2  # (n-1, 0) and (1, 0)
    assert closed_form_count(2, 0, 1) == 1  # (0, n-1) and (0, 1)
    assert closed_form_count(1, 1, 0) == 1
    assert closed_form_count(5, 2, 1) is None
    for n in range(1, 9):
        for k1, k2 in cells(n):
            closed_form_count(n, k1, k2)


@pytest.mark.parametrize("n", range(1, 6))
def test_closed_form_representatives(n):
    for k1, k2 in cells(n):
        reps = closed_form_representatives(n, k1, k2)
        if reps is None:
            continue
        codes = [span(g) for g in reps]
        assert len(codes) == closed_form_count(n, k1, k2)
        assert all(g.code_type.k1 == k1 and g.code_type.k2 == k2 for g in reps)
        assert not any(has_zero_coordinate(c) for c in codes)
        for a, b in itertools.combinations(codes, 2):
            assert are_equivalent(a, b) is None


def test_special_vector():
    assert special_vector(5, 1, 2).tolist() == [0, 1, 2, 2, 1]
    assert special_vector(2, 0, 1).tolist() == [2, 1]
    with pytest.raises(ValueError):
        special_vector(4, 3, 1)
    with pytest.raises(ValueError):
        special_vector(4, 1, 0)
    for n in range(2, 9):
        assert len(special_params(n)) == n * (n + 1) // 2 - 1


@pytest.mark.parametrize("n", range(2, 8))
def test_special_swe_matches_generated_code(n):
    for m0, m1 in special_params(n):
        v = special_vector(n, m0, m1)
        words = closure([v], n)
        assert len(words) == 4
        assert dict(special_swe(n, m0, m1)) == swe_counter(words)
        # the same vector with its final 1 moved to the front is in standard form
        g = StandardGenerator.build(n, 1, 0, B=v[:-1].reshape(1, -1))
        assert swe(span(g)) == special_swe(n, m0, m1)


def test_special_swe_examples():
    assert str(special_swe(3, 1, 1)) == "x^3 + x^2*z + 2*x*y*z"
    assert dict(special_swe(2, 0, 1)) == {(2, 0, 0): 1, (0, 1, 1): 2, (1, 0, 1): 1}
    with pytest.raises(ValueError):
        special_swe(3, 1, 0)  # m1 counts the final 1, so it is at least 1
