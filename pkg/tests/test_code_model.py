import itertools

import numpy as np
import pytest

from z4class.code_model import (
    BinaryCode,
    CodeType,
    StandardGenerator,
    Z4Code,
    compute_type,
    dual,
    format_generator,
    has_zero_coordinate,
    parse_generator,
    random_standard_generator,
    reduce_to_standard,
    residue,
    residue_code,
    span,
    trivial_extension,
    unpermute_columns,
)
from z4class.equivalence import Monomial, apply_monomial
from z4class.z4_algebra import inner_product

from .oracles import closure, code_tuples, orthogonal_complement


def words_of(code):
    return sorted(code_tuples(code))


def test_code_type_validation():
    assert CodeType(5, 2, 1).size == 32
    assert CodeType(5, 2, 1).dual == CodeType(5, 2, 1)
    with pytest.raises(ValueError):
        CodeType(2, 2, 1)


def test_standard_generator_layout():
    g = StandardGenerator.build(5, 2, 1, A=[[1], [0]], B=[[3, 1], [2, 0]], D=[[1, 1]])
    assert g.matrix.tolist() == [
        [1, 0, 1, 3, 1],
        [0, 1, 0, 2, 0],
        [0, 0, 2, 2, 2],
    ]
    assert StandardGenerator.from_matrix(g.matrix, 2, 1) == g
    with pytest.raises(ValueError):
        StandardGenerator.build(3, 1, 1, A=[[2]])
    with pytest.raises(ValueError):
        StandardGenerator.from_matrix([[1, 0, 1], [0, 2, 1]], 1, 1)


def test_span_examples():
    g = StandardGenerator.build(2, 1, 0, B=[[1]])
    assert words_of(span(g)) == [(0, 0), (1, 1), (2, 2), (3, 3)]
    assert words_of(span(StandardGenerator.build(1, 0, 1))) == [(0,), (2,)]
    c = span(StandardGenerator.build(2, 1, 1))
    assert len(c) == 8 and c.code_type == CodeType(2, 1, 1)
    assert code_tuples(c) == closure([(1, 0), (0, 2)], 2)
    # rows (1,1),(0,2) as written in the example
    assert code_tuples(Z4Code.from_rows([[1, 1], [0, 2]])) == closure([(1, 1), (0, 2)], 2)
    assert len(closure([(1, 1), (0, 2)], 2)) == 8


@pytest.mark.parametrize("seed", range(40))
def test_span_matches_closure(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    k1 = int(rng.integers(0, n + 1))
    k2 = int(rng.integers(0, n - k1 + 1))
    g = random_standard_generator(rng, n, k1, k2)
    code = span(g)
    assert code_tuples(code) == closure(g.matrix, n)
    assert len(code) == 4**k1 * 2**k2
    assert compute_type(g.matrix) == g.code_type


def test_compute_type_examples():
    assert compute_type([[2, 0], [0, 2], [1, 1]]) == CodeType(2, 1, 1)
    assert len(closure([(2, 0), (0, 2), (1, 1)], 2)) == 8
    assert compute_type([[0, 0]]) == CodeType(2, 0, 0)
    assert compute_type(np.eye(4, dtype=int)) == CodeType(4, 4, 0)


@pytest.mark.parametrize("seed", range(60))
def test_reduce_arbitrary_rows(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(1, 6))
    rows = rng.integers(0, 4, size=(int(rng.integers(1, 6)), n))
    words = closure(rows, n)
    std, perm = reduce_to_standard(rows, n)
    assert len(words) == std.code_type.size
    # the standard form spans the input code after the recorded column reordering
    restored = {tuple(w) for w in unpermute_columns(np.array(sorted(code_tuples(span(std)))), perm)}
    assert restored == words
    assert code_tuples(Z4Code.from_rows(rows, n)) == words


def _generators_up_to(n_max):
    for n in range(1, n_max + 1):
        for k1 in range(n + 1):
            for k2 in range(n + 1 - k1):
                yield n, k1, k2


@pytest.mark.parametrize("n,k1,k2", list(_generators_up_to(4)))
def test_dual_against_orthogonal_complement(n, k1, k2):
    rng = np.random.default_rng(n * 100 + k1 * 10 + k2)
    for _ in range(3):
        g = random_standard_generator(rng, n, k1, k2)
        d = dual(g)
        assert d.generator.code_type == CodeType(n, n - k1 - k2, k2)
        c, cd = span(g), d.code()
        assert code_tuples(cd) == orthogonal_complement(code_tuples(c), n)
        assert len(c) * len(cd) == 4**n
        for row in unpermute_columns(d.generator.matrix, d.perm):
            for grow in g.matrix:
                assert inner_product(row, grow) == 0


def test_dual_examples():
    g = StandardGenerator.build(1, 0, 1)
    assert words_of(dual(g).code()) == [(0,), (2,)]
    assert dual(StandardGenerator.build(5, 2, 1)).generator.code_type == CodeType(5, 2, 1)
    d = dual(StandardGenerator.build(3, 3, 0))
    assert len(d.code()) == 1 and d.generator.code_type == CodeType(3, 0, 0)


@pytest.mark.parametrize("seed", range(20))
def test_dual_is_an_involution(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    k1 = int(rng.integers(0, n + 1))
    k2 = int(rng.integers(0, n - k1 + 1))
    g = random_standard_generator(rng, n, k1, k2)
    once = dual(g)
    twice = dual(once.generator)
    perm = tuple(once.perm[p] for p in twice.perm)
    assert twice.generator == g
    assert perm == tuple(range(n))


def test_residue_examples():
    g = StandardGenerator.build(3, 1, 0, B=[[3, 2]])
    assert residue(g).generator.tolist() == [[1, 1, 0]]
    zero = residue(StandardGenerator.build(3, 0, 2))
    assert zero.dimension == 0 and len(zero) == 1


@pytest.mark.parametrize("seed", range(25))
def test_residue_of_equivalent_codes(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    k1 = int(rng.integers(0, n + 1))
    k2 = int(rng.integers(0, n - k1 + 1))
    g = random_standard_generator(rng, n, k1, k2)
    c = span(g)
    image = apply_monomial(c, Monomial.random(n, rng))
    assert residue(g) == residue_code(c)
    assert residue(g).dimension == k1
    assert residue_code(image).weight_distribution() == residue_code(c).weight_distribution()


def test_binary_code():
    b = BinaryCode.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 3)
    assert b.dimension == 2 and b.weight_distribution() == (1, 0, 3, 0)


def test_trivial_extension():
    c = Z4Code.from_rows([[2, 2]])
    assert words_of(trivial_extension(c)) == [(0, 0, 0), (2, 2, 0)]
    z = trivial_extension(Z4Code.zero(3))
    assert z.n == 4 and len(z) == 1
    rng = np.random.default_rng(5)
    for _ in range(20):
        c = span(random_standard_generator(rng, 4, 1, 2))
        e = trivial_extension(c)
        assert len(e) == len(c) and e.code_type.k1 == 1 and e.code_type.k2 == 2
        assert has_zero_coordinate(e)


def test_has_zero_coordinate_examples():
    assert not has_zero_coordinate(span(StandardGenerator.build(3, 3, 0)))
    g = StandardGenerator.build(4, 1, 1, A=[[1]], B=[[2, 0]], D=[[1, 0]])
    assert has_zero_coordinate(span(g))
    assert {w[3] for w in code_tuples(span(g))} == {0}


def test_zero_coordinate_test_is_exact_at_small_length():
    """Zero coordinate iff some monomial image vanishes on the last coordinate."""
    from .oracles import brute_has_trivial_extension_form

    rng = np.random.default_rng(11)
    for n in range(1, 5):
        for k1, k2 in itertools.product(range(n + 1), repeat=2):
            if k1 + k2 > n or k1 + k2 == 0:
                continue
            for _ in range(4):
                c = span(random_standard_generator(rng, n, k1, k2))
                c = apply_monomial(c, Monomial.random(n, rng))
                assert has_zero_coordinate(c) == brute_has_trivial_extension_form(c)


def test_generator_text_roundtrip():
    g = StandardGenerator.build(4, 1, 2, A=[[0, 1]], B=[[3]], D=[[1], [0]])
    text = format_generator(g, ["a comment"])
    parsed = parse_generator(text)
    assert parsed.standard == g and not parsed.raw
    assert parsed.code == span(g)


def test_raw_generator_file():
    parsed = parse_generator("3 raw\n1 3 2\n2 2 0\n0 2 2\n")
    assert parsed.raw
    assert parsed.standard.code_type == CodeType(3, 1, 1)
    assert code_tuples(parsed.code) == closure([(1, 3, 2), (2, 2, 0), (0, 2, 2)], 3)
    with pytest.raises(ValueError):
        parse_generator("3 2 0 raw\n1 3 2\n2 2 0\n")
    with pytest.raises(ValueError):
        parse_generator("3 1 1\n1 3 2\n2 2 0\n")  # not standard form
    with pytest.raises(ValueError):
        parse_generator("2 1 0\n1 5\n")
