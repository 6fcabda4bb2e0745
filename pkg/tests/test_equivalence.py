import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z4class.code_model import StandardGenerator, Z4Code, random_standard_generator, span
from z4class.enumeration import enumerate_candidates
from z4class.equivalence import (
    ClassReducer,
    Monomial,
    apply_monomial,
    are_equivalent,
    fingerprint,
    partition_classes,
)

from .oracles import brute_equivalent


def random_code(rng, n):
    k1 = int(rng.integers(0, n + 1))
    k2 = int(rng.integers(0, n - k1 + 1))
    return span(random_standard_generator(rng, n, k1, k2))


def monomials(n):
    return st.tuples(st.permutations(range(n)), st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n)).map(
        lambda t: Monomial(t[0], t[1])
    )


def test_monomial_action_convention():
    p = Monomial((2, 0, 1), (1, -1, 1))
    # y[perm[i]] = signs[i] * x[i]
    assert p.apply([1, 1, 2]).tolist() == [3, 2, 1]
    assert str(p) == "perm=3 1 2; signs=+-+"
    assert Monomial.parse(str(p)) == p
    with pytest.raises(ValueError):
        Monomial((0, 0), (1, 1))
    with pytest.raises(ValueError):
        Monomial((0, 1), (1, 2))
    with pytest.raises(ValueError):
        Monomial.parse("perm=1 2")


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(monomials(n), monomials(n), monomials(n), st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_monomial_group_laws(data):
    p, q, r, x = data
    n = len(p)
    e = Monomial.identity(n)
    assert p * e == p == e * p
    assert p * p.inverse() == e == p.inverse() * p
    assert (p * q) * r == p * (q * r)
    # p * q applies p first
    assert np.array_equal((p * q).apply(x), q.apply(p.apply(x)))


def test_examples():
    a = span(StandardGenerator.build(2, 1, 0, B=[[1]]))
    b = Z4Code.from_rows([[1, 3]])
    w = are_equivalent(a, b)
    assert w is not None and apply_monomial(b, w) == a
    assert are_equivalent(a, Z4Code.from_rows([[1, 2]])) is None
    assert are_equivalent(Z4Code.zero(3), Z4Code.zero(3)) is not None
    with pytest.raises(ValueError):
        are_equivalent(a, Z4Code.zero(3))
    # same size, different types
    assert are_equivalent(Z4Code.from_rows([[1, 0]]), Z4Code.from_rows([[2, 0], [0, 2]])) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_brute_force(n):
    rng = np.random.default_rng(n)
    for _ in range(40):
        a = random_code(rng, n)
        b = random_code(rng, n) if rng.random() < 0.5 else apply_monomial(a, Monomial.random(n, rng))
        w = are_equivalent(a, b)
        brute = brute_equivalent(a, b)
        assert (w is None) == (brute is None)
        if w is not None:
            assert apply_monomial(b, w) == a
            assert apply_monomial(b, Monomial(*brute)) == a


@pytest.mark.parametrize("seed", range(15))
def test_relation_properties(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    c = random_code(rng, n)
    c2 = apply_monomial(c, Monomial.random(n, rng))
    c3 = apply_monomial(c2, Monomial.random(n, rng))
    assert are_equivalent(c, c) is not None
    p = are_equivalent(c, c2)
    q = are_equivalent(c2, c)
    assert p is not None and q is not None
    assert apply_monomial(c, p.inverse()) == c2
    r = are_equivalent(c2, c3)
    s = are_equivalent(c, c3)
    assert s is not None and apply_monomial(c3, r * p) == c


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_fingerprint_is_invariant(seed, n):
    rng = np.random.default_rng(seed)
    c = random_code(rng, n)
    image = apply_monomial(c, Monomial.random(n, rng))
    assert fingerprint(c) == fingerprint(image)
    assert fingerprint(c, residue=True) == fingerprint(image, residue=True)
    assert sorted(c.coordinate_invariants) == sorted(image.coordinate_invariants)


def test_partition_of_small_cell():
    codes = [span(g) for g in enumerate_candidates(3, 1, 1)]
    assert len(codes) == 10
    classes = partition_classes(codes)
    assert len(classes) == 7
    assert sum(cl.size for cl in classes) == 10
    for x, y in itertools.combinations(classes, 2):
        assert are_equivalent(x.representative, y.representative) is None
    for cl in classes:
        assert cl.representative == min(cl.members, key=lambda c: c.sort_key)
        for m in cl.members:
            assert are_equivalent(cl.representative, m) is not None


def test_partition_ignores_order_and_duplicates():
    rng = np.random.default_rng(3)
    base = [span(g) for g in enumerate_candidates(4, 2, 1)]
    images = [apply_monomial(c, Monomial.random(4, rng)) for c in base[:30]]
    codes = base + images + base[:5]
    reference = partition_classes(codes)
    for _ in range(3):
        shuffled = [codes[i] for i in rng.permutation(len(codes))]
        again = partition_classes(shuffled)
        assert [cl.representative for cl in again] == [cl.representative for cl in reference]
        assert [cl.size for cl in again] == [cl.size for cl in reference]
    assert sum(cl.size for cl in reference) == len(set(codes))


def test_reducer_keeps_smallest_representative():
    c = span(StandardGenerator.build(3, 1, 0, B=[[1, 1]]))
    big = apply_monomial(c, Monomial((0, 1, 2), (-1, 1, 1)))
    assert big.sort_key > c.sort_key or big == c
    r = ClassReducer()
    assert r.add(big, "big")
    assert not r.add(c, "small")
    (cl,) = r.classes()
    assert cl.representative == c and cl.payload == "small" and cl.size == 2
    assert len(r) == 1 and r.added == 2
