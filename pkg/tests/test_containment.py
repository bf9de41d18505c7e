import itertools
import random

import pytest

from forbconf.config import (FactorKind, complement, from_columns, from_dense, generator,
                             permute_rows)
from forbconf.containment import (Embedding, contains, contains_naive, row_permutations,
                                  verify_embedding)
from forbconf.errors import GuardExceeded, MalformedEmbedding
from forbconf.products import extremal_sub

from _gen import random_config

I, T = FactorKind.IDENTITY, FactorKind.TOWER


def test_full_column_in_tower():
    e = contains(from_dense(["1", "1"]), generator(T, 2))
    assert e is not None and sorted(e.row_map) == [0, 1]


def test_identity_not_in_tower_by_enumeration():
    # literal check over every pair of rows and every pair of columns of T_5
    tower = ["011111", "001111", "000111", "000011", "000001"]
    found = False
    for r1, r2 in itertools.permutations(range(5), 2):
        for c1, c2 in itertools.permutations(range(6), 2):
            if (tower[r1][c1], tower[r2][c1], tower[r1][c2], tower[r2][c2]) == ("1", "0", "0", "1"):
                found = True
    assert not found
    assert contains(generator(I, 2), generator(T, 5)) is None


def test_extremal_tower_embeds_on_rows_2_and_4():
    e = contains(extremal_sub(T, 2, 5), generator(T, 5))
    assert e.row_map == (1, 3)
    assert verify_embedding(extremal_sub(T, 2, 5), generator(T, 5), e)


def test_reflexive_identity_embedding():
    A = from_dense(["00011", "01101", "01111"])
    e = contains(A, A)
    assert e.row_map == (0, 1, 2)
    assert e.witness_counts == {a: c for a, c in A.support}


def test_too_many_rows_or_columns():
    assert contains(from_columns(3, [0]), from_columns(2, [0, 1, 2])) is None
    assert contains(from_columns(1, [1, 1, 1]), from_columns(1, [1, 1])) is None
    assert not contains_naive(from_columns(1, [1, 1, 1]), from_columns(1, [1, 1]))


def test_zero_row_pattern():
    F = from_columns(0, [0])
    A = from_columns(2, [1])
    assert contains_naive(F, A)
    assert contains(F, A) is not None
    assert contains(from_columns(0, [0, 0]), A) is None


def test_naive_guard():
    with pytest.raises(GuardExceeded):
        contains_naive(from_columns(1, [1]), from_columns(8, [0]))
    with pytest.raises(GuardExceeded):
        contains_naive(from_columns(1, [1]), from_columns(2, [0] * 13))


def test_naive_agrees_on_all_small_pairs():
    cfgs = [from_columns(m, cols) for m in (1, 2) for n in range(1, 4)
            for cols in itertools.combinations_with_replacement(range(1 << m), n)]
    for F, A in itertools.product(cfgs, repeat=2):
        assert (contains(F, A) is not None) == contains_naive(F, A)


def test_permutations_deduplicated():
    orders, vecs = row_permutations(generator(I, 3))
    assert len(orders) == 1
    orders, vecs = row_permutations(from_dense(["01", "00", "11"]))
    assert len(orders) == 6 and len({v.tobytes() for v in vecs}) == 6


class TestVerifyEmbedding:
    def test_roundtrip(self):
        rng = random.Random(11)
        for _ in range(100):
            F = random_config(rng, rng.randint(1, 3), rng.randint(1, 3))
            A = random_config(rng, rng.randint(1, 5), rng.randint(1, 8))
            e = contains(F, A)
            if e is not None:
                assert verify_embedding(F, A, e)

    def test_reversed_tower_witness_rejected(self):
        F, A = extremal_sub(T, 2, 5), generator(T, 5)
        assert not verify_embedding(F, A, Embedding((3, 1)))

    def test_malformed(self):
        F, A = extremal_sub(T, 2, 5), generator(T, 5)
        with pytest.raises(MalformedEmbedding):
            verify_embedding(F, A, Embedding((1, 1)))
        with pytest.raises(MalformedEmbedding):
            verify_embedding(F, A, Embedding((1, 5)))
        with pytest.raises(MalformedEmbedding):
            verify_embedding(F, A, Embedding((1,)))

    def test_stored_counts_not_trusted(self):
        F, A = generator(I, 2), generator(T, 5)
        assert not verify_embedding(F, A, Embedding((0, 1), {1: 9, 2: 9}))


@pytest.fixture(scope="module")
def suite():
    rng = random.Random(12)
    return [random_config(rng, rng.randint(1, 4), rng.randint(1, 4)) for _ in range(70)]


class TestProperties:
    def test_reflexive(self, suite):
        assert all(contains(A, A) is not None for A in suite)

    def test_transitive(self, suite):
        rel = {(i, j): contains(suite[i], suite[j]) is not None
               for i in range(len(suite)) for j in range(len(suite))}
        n = len(suite)
        for i, j, k in itertools.product(range(n), repeat=3):
            if rel[i, j] and rel[j, k]:
                assert rel[i, k]

    def test_complement(self, suite):
        for F, A in itertools.product(suite[:40], repeat=2):
            assert (contains(F, A) is None) == (contains(complement(F), complement(A)) is None)

    def test_speedups_do_not_change_answers(self, suite):
        for F, A in itertools.product(suite[:40], repeat=2):
            assert contains(F, A) == contains(F, A, speedups=False)

    def test_invariant_under_row_permutation(self, suite):
        rng = random.Random(13)
        for F, A in itertools.product(suite[:25], repeat=2):
            p = list(range(A.rows)); rng.shuffle(p)
            assert (contains(F, A) is None) == (contains(F, permute_rows(A, p)) is None)
