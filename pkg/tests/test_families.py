"""Tests for the six graph families and their closed product rules."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from nortonalg.errors import BudgetExceededError
from nortonalg.families import (
    make_family,
    qbinom,
    rank_fq,
    symmetric_difference_feasible,
)


def test_make_family_dimensions():
    assert [make_family("hamming", n=2, e=3).predicted_dimension(i) for i in range(3)] == [1, 4, 4]
    assert [make_family("halved_cube", n=4).predicted_dimension(i) for i in range(3)] == [1, 4, 3]
    assert [make_family("bilinear", q=2, d=2, e=2).predicted_dimension(i) for i in range(3)] == [1, 9, 6]


def test_predicted_eigenvalues():
    assert make_family("hamming", n=2, e=3).predicted_eigenvalue(1) == 1
    assert make_family("folded_cube", n=5).predicted_eigenvalue(0) == 5
    assert make_family("bilinear", q=2, d=2, e=2).predicted_eigenvalue(2) == -3


def test_predicted_dimensions():
    assert make_family("hamming", n=3, e=2).predicted_dimension(2) == 3
    assert make_family("hamming", n=2, e=3).predicted_dimension(2) == 4
    assert make_family("folded_half_cube", n=6).predicted_dimension(1) == 15


def test_basis_orders_and_counts():
    fam = make_family("hamming", n=2, e=3)
    assert fam.basis(1) == [(0, 1), (0, 2), (1, 0), (2, 0)]
    assert fam.basis(2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    half = make_family("halved_cube", n=4)
    assert half.basis(2) == [(1, 2), (1, 3), (1, 4)]
    fhc = make_family("folded_half_cube", n=8)
    assert all(2 in s or 1 in s for s in fhc.basis(2))
    assert len(fhc.basis(2)) == 35


def test_dimension_sums_match_vertex_count():
    fams = [make_family("hamming", n=3, e=4), make_family("hypercube", n=7),
            make_family("halved_cube", n=8), make_family("folded_cube", n=7),
            make_family("folded_half_cube", n=8), make_family("bilinear", q=3, d=2, e=2)]
    for fam in fams:
        assert sum(fam.predicted_dimension(i) for i in fam.eigenspaces()) == fam.vertex_count()
        for i in fam.eigenspaces():
            assert len(fam.basis(i)) == fam.predicted_dimension(i)


def test_closed_product_hamming_example32():
    fam = make_family("hamming", n=2, e=3)
    assert fam.closed_product(1, (0, 1), (0, 1)) == (0, 2)
    assert fam.closed_product(1, (0, 1), (1, 0)) is None
    assert fam.closed_product(2, (1, 1), (2, 2)) is None
    assert fam.closed_product(0, (0, 0), (0, 0)) == (0, 0)


def test_closed_product_hypercube_example38():
    fam = make_family("hypercube", n=3)
    assert fam.closed_product(2, (1, 3), (2, 3)) == (1, 2)
    assert fam.closed_product(2, (1, 2), (1, 2)) is None
    assert fam.closed_product(2, (2, 3), (1, 2)) == (1, 3)


def test_closed_product_halved_cube_example():
    fam = make_family("halved_cube", n=4)
    assert fam.closed_product(2, (1, 2), (1, 3)) == (1, 4)
    assert fam.closed_product(2, (1, 2), (1, 4)) == (1, 3)
    assert fam.closed_product(2, (1, 3), (1, 4)) == (1, 2)
    assert fam.closed_product(2, (1, 2), (1, 2)) is None


def test_closed_product_folded_and_folded_half():
    fold = make_family("folded_cube", n=4)
    assert fold.closed_product(1, (1, 2), (2, 3)) == (1, 3)
    assert fold.closed_product(1, (1, 2), (3, 4)) is None
    fhc = make_family("folded_half_cube", n=8)
    # |S symdiff T| = 6 = n - 2i folds back through the complement
    assert fhc.closed_product(1, (1, 2), (3, 4)) is None
    assert fhc.closed_product(1, (1, 2), (1, 3)) == (2, 3)


def test_closed_product_bilinear():
    fam = make_family("bilinear", q=2, d=2, e=2)
    e11 = (1, 0, 0, 0)
    e12 = (0, 1, 0, 0)
    assert fam.closed_product(1, e11, e11) is None
    assert fam.closed_product(1, e11, e12) == (1, 1, 0, 0)


def test_closed_product_commutative_random():
    rng = random.Random(5)
    fams = [make_family("hamming", n=3, e=3), make_family("hypercube", n=5),
            make_family("halved_cube", n=6), make_family("folded_cube", n=5),
            make_family("bilinear", q=2, d=2, e=2)]
    for fam in fams:
        for i in fam.eigenspaces():
            basis = fam.basis(i)
            for _ in range(30):
                a, b = rng.choice(basis), rng.choice(basis)
                assert fam.closed_product(i, a, b) == fam.closed_product(i, b, a)


def test_closed_product_membership_errors():
    fam = make_family("hamming", n=2, e=3)
    with pytest.raises(ValueError):
        fam.closed_product(1, (1, 1), (0, 1))
    with pytest.raises(ValueError):
        fam.closed_product(3, (1, 1), (1, 1))


def test_hamming_support_locality():
    # products inside a fixed-support block stay in the block (or vanish)
    fam = make_family("hamming", n=3, e=4)
    grp = fam.group
    for i in fam.eigenspaces():
        for a in fam.basis(i):
            for b in fam.basis(i):
                if grp.support(a) == grp.support(b):
                    c = fam.closed_product(i, a, b)
                    assert c is None or grp.support(c) == grp.support(a)


def test_hypercube_zero_product_regimes():
    # i odd or i > floor(2n/3) forces the zero product; exhaustive n <= 8
    for n in range(1, 9):
        fam = make_family("hypercube", n=n)
        for i in fam.eigenspaces():
            all_zero = all(
                fam.closed_product(i, a, b) is None
                for a in fam.basis(i) for b in fam.basis(i))
            expected_zero = (i % 2 == 1) or (i > (2 * n) // 3)
            if i == 0:
                assert not all_zero
            else:
                assert all_zero == expected_zero


def test_symmetric_difference_feasible_examples():
    assert symmetric_difference_feasible(3, 2, 2)
    assert not symmetric_difference_feasible(5, 2, 3)
    assert not symmetric_difference_feasible(6, 2, 6)


def test_symmetric_difference_feasible_brute_force():
    for n in range(0, 11):
        universe = range(1, n + 1)
        for i in range(0, n + 1):
            achieved = set()
            for s in combinations(universe, i):
                for t in combinations(universe, i):
                    achieved.add(len(set(s) ^ set(t)))
            for j in range(0, n + 1):
                assert symmetric_difference_feasible(n, i, j) == (j in achieved)


def test_halved_cube_character_collision():
    # chi_S and chi_{S^c} agree on the even-weight subgroup, and nothing else collides
    for n in range(2, 9):
        fam = make_family("halved_cube", n=n)
        xs = fam.vertices()
        tables = {}
        for mask in range(2**n):
            s = tuple(j + 1 for j in range(n) if mask >> j & 1)
            vec = fam.index_vector(s)
            table = tuple(sum(v * x[j] for j, v in enumerate(vec)) % 2 for x in xs)
            tables.setdefault(table, []).append(frozenset(s))
        assert len(tables) == 2 ** (n - 1)
        full = frozenset(range(1, n + 1))
        for sets in tables.values():
            assert len(sets) == 2 and sets[0] ^ sets[1] == full


def test_qbinom():
    assert qbinom(4, 0, 3) == 1
    assert qbinom(2, 1, 2) == 3
    assert qbinom(4, 2, 2) == 35
    with pytest.raises(ValueError):
        qbinom(2, 3, 2)


def test_rank_fq():
    assert rank_fq([[0, 0], [0, 0]], 2) == 0
    assert rank_fq([[1, 0], [0, 1]], 2) == 2
    assert rank_fq([[1, 1], [1, 1]], 2) == 1
    assert rank_fq([[1, 2], [2, 4]], 5) == 1
    assert rank_fq([[1, 2], [2, 3]], 5) == 2
    with pytest.raises(ValueError):
        rank_fq([[1]], 4)


def test_bilinear_rank_counts_match_dimensions():
    for q in (2, 3):
        fam = make_family("bilinear", q=q, d=2, e=2)
        for i in fam.eigenspaces():
            count = sum(1 for x in fam.vertices() if fam.rank(x) == i)
            assert count == fam.predicted_dimension(i)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        make_family("hamming", n=0, e=3)
    with pytest.raises(ValueError):
        make_family("hamming", n=2, e=1)
    with pytest.raises(ValueError):
        make_family("bilinear", q=4, d=2, e=2)
    with pytest.raises(ValueError):
        make_family("bilinear", q=2, d=3, e=2)
    with pytest.raises(ValueError):
        make_family("folded_half_cube", n=7)
    with pytest.raises(ValueError):
        make_family("folded_half_cube", n=4)
    with pytest.raises(ValueError):
        make_family("folded_cube", n=2)
    with pytest.raises(ValueError):
        make_family("no_such_family", n=2)


def test_vertex_budget():
    fam = make_family("hypercube", n=25)
    with pytest.raises(BudgetExceededError):
        fam.vertices(budget=4096)
    # closed-form products never enumerate vertices
    big = make_family("hamming", n=30, e=2)
    u = tuple([1] + [0] * 29)
    assert big.closed_product(1, u, u) is None


def test_connection_sets():
    assert len(make_family("hamming", n=2, e=3).connection()) == 4
    assert len(make_family("folded_cube", n=5).connection()) == 5
    assert len(make_family("folded_half_cube", n=6).connection()) == 15
    assert len(make_family("halved_cube", n=5).connection()) == 10
    assert len(make_family("bilinear", q=2, d=2, e=2).connection()) == 9


def test_label_text():
    fam = make_family("hypercube", n=3)
    assert fam.label_text((1, 3)) == "13"
    assert fam.label_text(()) == "{}"
    ham = make_family("hamming", n=2, e=3)
    assert ham.label_text((0, 2)) == "02"
    bil = make_family("bilinear", q=2, d=2, e=2)
    assert bil.label_text((1, 0, 0, 1)) == "[10;01]"
