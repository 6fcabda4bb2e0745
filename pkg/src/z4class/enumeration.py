"""Candidate generator matrices and closed-form counts for special types.

The candidate set keeps, among standard-form generators G(A, B, D) of a
given type, those with

* rows of A lexicographically nondecreasing,
* B in the sign-normalized family: either B is a (0,2)-matrix, or the first
  row of B holding an odd entry has all entries in {0, 1, 2},
* columns of the stacked matrix [B; 2D] lexicographically nondecreasing,
* no zero column in [B; 2D].

Every code of the type without an identically zero coordinate is equivalent
to the span of at least one candidate: rows of A can be sorted by permuting
the first k1 coordinates together with the rows, odd entries can be
normalized by negating columns of the last block, and the last block's
columns can be sorted without disturbing either property.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Iterator, Optional

import numpy as np

from .code_model import CodeType, StandardGenerator
from .weights import WeightEnumerator
from .z4_algebra import DTYPE, all_vectors, is_col_sorted, is_row_sorted

_EVEN, _ODD, _THREE = 0, 1, 2


@dataclass
class CandidateFilterReport:
    considered: int = 0
    row_sorted_a: int = 0
    b_family: int = 0
    col_sorted: int = 0
    no_zero_column: int = 0

    def as_dict(self) -> dict:
        return asdict(self)

    def is_monotone(self) -> bool:
        chain = [self.considered, self.row_sorted_a, self.b_family, self.col_sorted, self.no_zero_column]
        return all(a >= b for a, b in zip(chain, chain[1:]))


def enumerate_A(k1: int, k2: int) -> Iterator[np.ndarray]:
    """All k1 x k2 (0,1)-matrices whose rows are lexicographically nondecreasing."""
    rows = all_vectors(k2, (0, 1))
    for idx in itertools.combinations_with_replacement(range(len(rows)), k1):
        yield rows[list(idx)].reshape(k1, k2)


def in_B_family(B) -> bool:
    B = np.asarray(B)
    for row in B:
        if np.any(row % 2):
            return not np.any(row == 3)
    return True


def _row_states(top_rows: np.ndarray) -> tuple[int, ...]:
    return tuple(_THREE if 3 in r else _ODD if 1 in r else _EVEN for r in top_rows)


def _family_ok(states: tuple[int, ...]) -> bool:
    for s in states:
        if s != _EVEN:
            return s == _ODD
    return True


def _stacked_alphabet(k1: int, k2: int) -> list[tuple[int, ...]]:
    """Possible columns of [B; 2D] in lexicographic order (zero column first)."""
    return list(itertools.product(*([(0, 1, 2, 3)] * k1 + [(0, 2)] * k2)))


def _sorted_stacked(k1: int, k2: int, ell: int, include_zero: bool) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Column sequences of [B; 2D] that are lex-sorted and satisfy the B-family rule.

    The family rule is a row condition, so each row of B carries a state
    (all even / has a 1 but no 3 / has a 3) that is updated as columns are
    appended.  A 3 in row 0 is final: row 0 is then the first odd row.
    """
    alphabet = _stacked_alphabet(k1, k2)
    if not include_zero:
        alphabet = alphabet[1:]
    updates = []
    for col in alphabet:
        updates.append(tuple(_THREE if v == 3 else _ODD if v == 1 else _EVEN for v in col[:k1]))
    chosen: list[tuple[int, ...]] = []

    def extend(start: int, states: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(chosen) == ell:
            if _family_ok(states):
                yield tuple(chosen)
            return
        for idx in range(start, len(alphabet)):
            new = tuple(max(s, u) for s, u in zip(states, updates[idx]))
            if k1 and new[0] == _THREE:
                continue
            chosen.append(alphabet[idx])
            yield from extend(idx, new)
            chosen.pop()

    yield from extend(0, (_EVEN,) * k1)


def _generator_from_columns(t: CodeType, A: np.ndarray, columns) -> StandardGenerator:
    stacked = np.array(columns, dtype=DTYPE).reshape(t.ell, t.k1 + t.k2).T
    return StandardGenerator(t, A, stacked[: t.k1], stacked[t.k1 :] // 2)


def enumerate_candidates(
    n: int, k1: int, k2: int, report: Optional[CandidateFilterReport] = None
) -> Iterator[StandardGenerator]:
    """Yield the pruned candidate generators of type 4^k1 2^k2 and length n.

    Columns of [B; 2D] are generated directly as nondecreasing sequences, so
    unsorted matrices are never built.  When ``report`` is given it is filled
    with the size of each filter stage.
    """
    t = CodeType(n, k1, k2)
    if k1 + k2 == 0:
        raise ValueError("the zero type (k1, k2) = (0, 0) has no candidates")
    ell = t.ell
    a_choices = list(enumerate_A(k1, k2))
    if report is not None:
        _fill_report(report, t, len(a_choices))
    columns = list(_sorted_stacked(k1, k2, ell, include_zero=False))
    if report is not None:
        report.no_zero_column = len(a_choices) * len(columns)
    for A in a_choices:
        for cols in columns:
            yield _generator_from_columns(t, A, cols)


def _fill_report(report: CandidateFilterReport, t: CodeType, n_a: int) -> None:
    k1, k2, ell = t.k1, t.k2, t.ell
    report.considered = 2 ** (k1 * k2) * 4 ** (k1 * ell) * 2 ** (k2 * ell)
    report.row_sorted_a = n_a * 4 ** (k1 * ell) * 2 ** (k2 * ell)
    family = 2 ** (ell * k1) + sum(
        2 ** (ell * i) * (3**ell - 2**ell) * 4 ** (ell * (k1 - i - 1)) for i in range(k1)
    )
    report.b_family = n_a * family * 2 ** (k2 * ell)
    report.col_sorted = n_a * sum(1 for _ in _sorted_stacked(k1, k2, ell, include_zero=True))


def filter_report(n: int, k1: int, k2: int) -> CandidateFilterReport:
    report = CandidateFilterReport()
    for _ in enumerate_candidates(n, k1, k2, report):
        break
    return report


def enumerate_standard(n: int, k1: int, k2: int) -> Iterator[StandardGenerator]:
    """Every standard-form generator of the type, with no filtering at all."""
    t = CodeType(n, k1, k2)
    ell = t.ell
    for a in itertools.product((0, 1), repeat=k1 * k2):
        for b in itertools.product(range(4), repeat=k1 * ell):
            for d in itertools.product((0, 1), repeat=k2 * ell):
                yield StandardGenerator(t, np.array(a, dtype=DTYPE), np.array(b, dtype=DTYPE), np.array(d, dtype=DTYPE))


def in_candidate_set(g: StandardGenerator) -> bool:
    """Membership test for the candidate set, predicate by predicate."""
    stacked = g.stacked
    return (
        is_row_sorted(g.A)
        and in_B_family(g.B)
        and is_col_sorted(stacked)
        and not np.any(np.all(stacked == 0, axis=0))
    )


def cells(n: int) -> list[tuple[int, int]]:
    """All (k1, k2) with 1 <= k1 + k2 <= n, in table order."""
    return [(k1, k2) for k1 in range(n + 1) for k2 in range(n + 1 - k1) if k1 + k2 >= 1]


# -- closed forms for special types --------------------------------------


def _closed_form_matches(n: int, k1: int, k2: int) -> list[int]:
    values = []
    if (k1, k2) in ((n, 0), (0, n), (0, 1)):
        values.append(1)
    if (k1, k2) == (n - 1, 1):
        values.append(n)
    if (k1, k2) == (1, n - 1):
        values.append(n)
    if (k1, k2) == (1, 0):
        values.append(n)
    if (k1, k2) == (0, n - 1):
        values.append(n - 1)
    if (k1, k2) == (n - 1, 0):
        values.append(n * (n + 1) // 2 - 1)
    return values


def closed_form_count(n: int, k1: int, k2: int) -> Optional[int]:
    """N'(n, k1, k2) for the seven special shapes, or None."""
    if n < 1:
        raise ValueError("n must be positive")
    if k1 + k2 == 0:
        return None
    values = _closed_form_matches(n, k1, k2)
    if not values:
        return None
    if len(set(values)) != 1:
        raise AssertionError(f"closed forms disagree at {(n, k1, k2)}: {values}")
    return values[0]


def _check_closed_form_overlaps(max_n: int = 7) -> None:
    for n in range(1, max_n + 1):
        for k1, k2 in cells(n):
            closed_form_count(n, k1, k2)


_check_closed_form_overlaps()


def _ramp(n_low: int, n_high: int, low: int, high: int) -> list[int]:
    return [low] * n_low + [high] * n_high


def closed_form_representatives(n: int, k1: int, k2: int) -> Optional[list[StandardGenerator]]:
    """Explicit pairwise inequivalent generators realizing :func:`closed_form_count`."""
    count = closed_form_count(n, k1, k2)
    if count is None:
        return None
    if (k1, k2) == (n, 0):
        reps = [StandardGenerator.build(n, n, 0)]
    elif (k1, k2) == (0, n):
        reps = [StandardGenerator.build(n, 0, n)]
    elif (k1, k2) == (0, 1):
        reps = [StandardGenerator.build(n, 0, 1, D=np.ones((1, n - 1)))]
    elif (k1, k2) == (n - 1, 1):
        # [I | a; 0 | 2] with a = 0..0 1..1
        reps = [StandardGenerator.build(n, n - 1, 1, A=np.array(_ramp(n - 1 - m, m, 0, 1)).reshape(n - 1, 1)) for m in range(n)]
    elif (k1, k2) == (1, n - 1):
        reps = [StandardGenerator.build(n, 1, n - 1, A=np.array(_ramp(n - 1 - m, m, 0, 1)).reshape(1, n - 1)) for m in range(n)]
    elif (k1, k2) == (1, 0):
        # (1 a) with a = 1..1 2..2
        reps = [StandardGenerator.build(n, 1, 0, B=np.array(_ramp(n - 1 - m, m, 1, 2)).reshape(1, n - 1)) for m in range(n)]
    elif (k1, k2) == (0, n - 1):
        reps = [StandardGenerator.build(n, 0, n - 1, D=np.array(_ramp(n - 1 - m, m, 0, 1)).reshape(n - 1, 1)) for m in range(1, n)]
    else:  # (n - 1, 0)
        reps = []
        for m0 in range(n - 1):
            for m1 in range(n - m0):
                col = [0] * m0 + [3] * m1 + [2] * (n - 1 - m0 - m1)
                reps.append(StandardGenerator.build(n, n - 1, 0, B=np.array(col).reshape(n - 1, 1)))
    assert len(reps) == count
    return reps


def special_vector(n: int, m0: int, m1: int) -> np.ndarray:
    """(0,...,0, 1,...,1, 2,...,2, 1) with m0 zeros and m1 ones in total."""
    _check_special(n, m0, m1)
    return np.array([0] * m0 + [1] * (m1 - 1) + [2] * (n - m0 - m1) + [1], dtype=DTYPE)


def _check_special(n: int, m0: int, m1: int) -> None:
    if not (n >= 2 and 0 <= m0 <= n - 2 and 1 <= m1 <= n - m0):
        raise ValueError(f"(n, m0, m1) = ({n}, {m0}, {m1}) outside 0 <= m0 <= n-2, 1 <= m1 <= n-m0")


def special_params(n: int) -> list[tuple[int, int]]:
    return [(m0, m1) for m0 in range(n - 1) for m1 in range(1, n - m0 + 1)]


def special_swe(n: int, m0: int, m1: int) -> WeightEnumerator:
    """Symmetrized enumerator x^n + 2 x^m0 y^m1 z^(n-m0-m1) + x^(n-m1) z^m1.

    This is the enumerator of the code generated by :func:`special_vector`;
    ``m1`` counts every unit entry including the final 1.
    """
    _check_special(n, m0, m1)
    terms: dict[tuple[int, int, int], int] = {}
    for key, c in (((n, 0, 0), 1), ((m0, m1, n - m0 - m1), 2), ((n - m1, 0, m1), 1)):
        terms[key] = terms.get(key, 0) + c
    return WeightEnumerator("symmetrized", terms)

