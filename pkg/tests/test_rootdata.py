"""Cartan data, positive roots, Weyl combinatorics, flag cohomology targets."""

from itertools import combinations_with_replacement, product

import pytest

from schurq import (
    build_cartan,
    flag_betti,
    flag_ring,
    kostant,
    positive_roots,
    weyl_table,
)
from schurq.rootdata import RootDataError


ALL_SERIES = [("A", 1), ("A", 2), ("A", 3), ("B", 2)]


# -- Cartan datum invariants ----------------------------------------------


@pytest.mark.parametrize("series,rank", ALL_SERIES)
def test_cartan_symmetrizability(series, rank):
    c = build_cartan(series, rank)
    for i in range(rank):
        assert c.a[i][i] == 2
        assert c.d[i] > 0
        for j in range(rank):
            if i != j:
                assert c.a[i][j] <= 0
            assert c.d[i] * c.a[i][j] == c.d[j] * c.a[j][i]


def test_cartan_b_exponent():
    c = build_cartan("B", 2)
    for i in range(2):
        for j in range(2):
            if i != j:
                assert c.b(i, j) == 1 - c.a[i][j]


def test_bad_series_rejected():
    with pytest.raises(RootDataError):
        build_cartan("Z", 2)
    with pytest.raises(RootDataError):
        build_cartan("A", 0)


# -- positive roots --------------------------------------------------------


@pytest.mark.parametrize(
    "series,rank,count", [("A", 1, 1), ("A", 2, 3), ("B", 2, 4), ("A", 3, 6)]
)
def test_positive_root_counts(series, rank, count):
    c = build_cartan(series, rank)
    roots = positive_roots(c)
    assert len(roots) == count
    # every simple root appears, all coordinates nonnegative
    for i in range(rank):
        simple = tuple(1 if j == i else 0 for j in range(rank))
        assert simple in roots.roots
    for beta in roots.roots:
        assert all(x >= 0 for x in beta) and any(x > 0 for x in beta)


def test_a2_root_heights():
    c = build_cartan("A", 2)
    assert sorted(positive_roots(c).heights) == [1, 1, 2]


# -- Weyl group ------------------------------------------------------------


@pytest.mark.parametrize(
    "series,rank,order,longest",
    [("A", 1, 2, 1), ("A", 2, 6, 3), ("B", 2, 8, 4), ("A", 3, 24, 6)],
)
def test_weyl_orders(series, rank, order, longest):
    c = build_cartan(series, rank)
    t = weyl_table(c)
    assert t.order == order
    assert t.longest_length == longest
    # longest length = number of positive roots
    assert t.longest_length == len(positive_roots(c))


@pytest.mark.parametrize("series,rank", ALL_SERIES)
def test_flag_betti_palindromic_and_sums_to_weyl_order(series, rank):
    c = build_cartan(series, rank)
    t = weyl_table(c)
    betti = flag_betti(c, t)
    assert betti == tuple(reversed(betti))
    assert sum(betti) == t.order
    assert all(betti[k] == 0 for k in range(1, len(betti), 2))


def test_flag_betti_values():
    assert flag_betti(build_cartan("A", 1)) == (1, 0, 1)
    assert flag_betti(build_cartan("A", 2)) == (1, 0, 2, 0, 2, 0, 1)
    assert flag_betti(build_cartan("B", 2)) == (1, 0, 2, 0, 2, 0, 2, 0, 1)


# -- Kostant partition function -------------------------------------------


def brute_kostant(c, beta):
    """Independent oracle: enumerate multisets of positive roots summing to beta."""
    roots = positive_roots(c).roots
    height = sum(beta)
    count = 0
    for size in range(height + 1):
        for combo in combinations_with_replacement(roots, size):
            total = [0] * c.rank
            for r in combo:
                for i, x in enumerate(r):
                    total[i] += x
            if tuple(total) == tuple(beta):
                count += 1
    return count


def test_kostant_examples():
    a2 = build_cartan("A", 2)
    assert kostant(a2, (1, 0)) == 1
    assert kostant(a2, (1, 1)) == 2
    assert kostant(a2, (0, 0)) == 1
    with pytest.raises(RootDataError):
        kostant(a2, (-1, 0))


@pytest.mark.parametrize("series,rank", [("A", 2), ("B", 2)])
def test_kostant_matches_brute_force(series, rank):
    c = build_cartan(series, rank)
    for beta in product(range(4), repeat=rank):
        if sum(beta) <= 6:
            assert kostant(c, beta) == brute_kostant(c, beta)


# -- coinvariant ring model ------------------------------------------------


@pytest.mark.parametrize("series,rank", [("A", 1), ("A", 2), ("B", 2)])
def test_flag_ring_dims_match_betti(series, rank):
    c = build_cartan(series, rank)
    ring = flag_ring(c)
    assert tuple(ring.dims) == flag_betti(c)
    assert ring.total_dim() == weyl_table(c).order


def test_a1_ring_generator_squares_to_zero():
    ring = flag_ring(build_cartan("A", 1))
    assert all(v == 0 for v in ring.product(1, 0, 1, 0))
