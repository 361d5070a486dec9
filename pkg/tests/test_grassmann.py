import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasscycle.errors import DimensionOutOfRange, ZeroSpan
from grasscycle.grassmann import (
    Subspace,
    enumerate_grassmannian,
    gaussian_binomial,
    iter_subspaces,
    rref,
    span,
)


@lru_cache(maxsize=None)
def q_pascal(n, k, q):
    """[n,k]_q via [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return q_pascal(n - 1, k - 1, q) + q**k * q_pascal(n - 1, k, q)


def point_set(vectors, q):
    """All F_q-combinations of ``vectors``; no elimination involved."""
    n = len(vectors[0])
    pts = set()
    for coeffs in itertools.product(range(q), repeat=len(vectors)):
        pts.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % q for i in range(n)))
    return frozenset(pts)


SMALL = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)]


@pytest.mark.parametrize("q, n", SMALL)
def test_counts_match_recurrence_and_enumeration(q, n):
    for k in range(n + 1):
        expected = q_pascal(n, k, q)
        assert gaussian_binomial(n, k, q) == expected
        subs = enumerate_grassmannian((q, n), k)
        assert len(subs) == expected
        assert len(set(subs)) == expected


def test_paper_counts():
    assert gaussian_binomial(5, 2, 2) == 155
    assert gaussian_binomial(5, 3, 2) == 155
    assert gaussian_binomial(5, 2, 3) == 1210
    assert gaussian_binomial(7, 2, 2) == 2667
    assert gaussian_binomial(6, 6, 3) == 1


def test_enumeration_of_35(f35):
    subs = enumerate_grassmannian(f35, 2)
    assert len(subs) == 1210
    assert enumerate_grassmannian(f35, 0) == [Subspace(3, 5, ())]


@pytest.mark.parametrize("n, q", [(n, q) for q in (2, 3, 5) for n in range(1, 9)])
def test_duality(n, q):
    for k in range(n + 1):
        assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)


@pytest.mark.parametrize("q, n, k", [(2, 5, 2), (2, 5, 3), (3, 4, 2), (2, 4, 2)])
def test_enumeration_matches_brute_force_point_sets(q, n, k):
    vectors = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    brute = set()
    for combo in itertools.combinations(vectors, k):
        ps = point_set(combo, q)
        if len(ps) == q**k:
            brute.add(ps)
    enumerated = {point_set(s.rows, q) for s in iter_subspaces(q, n, k)}
    assert enumerated == brute


def test_enumeration_is_sorted_and_deterministic(f25):
    a = enumerate_grassmannian(f25, 2)
    assert a == sorted(a)
    assert a == enumerate_grassmannian((2, 5), 2)


@pytest.mark.parametrize("q, n, k", [(2, 5, 2), (2, 5, 3), (3, 5, 2), (3, 4, 3)])
def test_rref_shape_and_idempotence(q, n, k):
    for s in iter_subspaces(q, n, k):
        piv = s.pivots
        assert list(piv) == sorted(set(piv))
        for i, p in enumerate(piv):
            assert s.rows[i][p] == 1
            assert all(s.rows[j][p] == 0 for j in range(k) if j != i)
        assert span(s.rows, q) == s


def test_line_identification(f25, f35):
    assert len(enumerate_grassmannian(f25, 1)) == f25.gamma_order
    assert len(enumerate_grassmannian(f35, 1)) == f35.gamma_order


def test_span_examples(f25):
    e1, e2 = (1, 0, 0, 0, 0), (0, 1, 0, 0, 0)
    s = span([e1, e2], 2)
    assert s.k == 2 and s.rows == (e1, e2)
    one, a = f25.one, f25.alpha
    assert span([one, a]) == span([a, one]) == span([one, a + 1])
    assert span([f25.power_of_alpha(3), one]).k == 2


def test_span_errors():
    with pytest.raises(ZeroSpan):
        span([(0, 0, 0)], 2)
    with pytest.raises(ZeroSpan):
        span([], 2)
    with pytest.raises(DimensionOutOfRange):
        enumerate_grassmannian((2, 3), 4)


def test_contains(f25):
    s = span([(1, 0, 0, 0, 0), (0, 1, 1, 0, 0)], 2)
    assert s.contains((1, 1, 1, 0, 0))
    assert not s.contains((0, 0, 0, 1, 0))


vec3_5 = st.lists(st.integers(0, 2), min_size=5, max_size=5).map(tuple)


@settings(max_examples=200, deadline=None)
@given(st.lists(vec3_5, min_size=1, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_span_is_basis_independent(vectors, coeffs):
    """Adding a combination of the inputs and permuting them never changes the span."""
    if not any(any(v) for v in vectors):
        return
    combo = tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % 3 for i in range(5))
    a = span(vectors, 3)
    b = span(list(reversed(vectors)) + [combo], 3)
    assert a == b
    assert point_set(a.rows, 3) == point_set(vectors, 3)
    assert rref(a.rows, 3) == a.rows
