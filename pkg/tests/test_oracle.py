import random

import pytest

from cycbound.cyclic import CyclicCodeSpec, enumerate_codes
from cycbound.errors import CapExceeded
from cycbound.oracle import distance_crosscheck, generator_matrix, random_codeword, rref_mod, true_distance

from expected import CODE21_DISTANCE, CODE21_S


def test_code21_distance():
    r = true_distance(CyclicCodeSpec(2, 21, CODE21_S))
    assert r.d == CODE21_DISTANCE
    assert sum(1 for x in r.argmin_word if x) == CODE21_DISTANCE


def test_known_codes():
    assert true_distance(CyclicCodeSpec(2, 7, (1, 2, 4))).d == 3           # Hamming
    assert true_distance(CyclicCodeSpec(2, 23, (1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18))).d == 7   # Golay
    assert true_distance(CyclicCodeSpec(3, 11, (1, 3, 4, 5, 9))).d == 5     # ternary Golay


def test_trivial_codes():
    assert true_distance(CyclicCodeSpec(2, 15, tuple(range(15)))).d == 16
    assert true_distance(CyclicCodeSpec(2, 15, ())).d == 1


@pytest.mark.parametrize("q,n", [(2, 15), (3, 8), (5, 8), (7, 9), (2, 17)])
def test_ordered_matches_full(q, n):
    for spec in enumerate_codes(n, q):
        if spec.k and (q ** spec.k) < 1 << 16:
            assert true_distance(spec).d == true_distance(spec, method="full").d


def test_cap():
    spec = CyclicCodeSpec(2, 31, (1, 2, 4, 8, 16))
    with pytest.raises(CapExceeded):
        true_distance(spec, cap=100)


def test_generator_matrix_rows_are_codewords():
    spec = CyclicCodeSpec(3, 13, (1, 3, 9))
    G = generator_matrix(spec)
    A, piv = rref_mod(G, 3)
    assert A.shape == (spec.k, 13) and len(piv) == spec.k
    word = random_codeword(spec, random.Random(1))
    assert len(word) == 13


def test_crosscheck():
    assert distance_crosscheck(CyclicCodeSpec(2, 21, CODE21_S), sample=30)
