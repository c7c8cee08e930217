import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cycbound.errors import CapExceeded, EmptyPattern, LengthError, PatternSyntaxError
from cycbound.usemiring import (D, N, PRODUCT_TABLE, SUM_TABLE, USym, UMatrix, UVec, Z, enumerate_A,
                                includes, instances, pattern_expand, prk, prk_bruteforce,
                                rank_mod_p, singleton_procedure, u_add, u_mul)

from expected import INCLUSION_EXAMPLES, NON_TRANSITIVE, PRODUCT, SUM

sym = st.sampled_from([Z, D, N])
uvec = st.lists(sym, min_size=1, max_size=7).map(UVec)


def test_tables_match_expected():
    for (a, b), c in SUM.items():
        assert u_add(USym.from_char(a), USym.from_char(b)).char == c
    for (a, b), c in PRODUCT.items():
        assert u_mul(USym.from_char(a), USym.from_char(b)).char == c
    assert len(SUM_TABLE) == len(PRODUCT_TABLE) == 9


@settings(max_examples=100)
@given(sym, sym, sym)
def test_commutative_and_associative(a, b, c):
    assert u_add(a, b) == u_add(b, a)
    assert u_mul(a, b) == u_mul(b, a)
    assert u_add(u_add(a, b), c) == u_add(a, u_add(b, c))
    assert u_mul(u_mul(a, b), c) == u_mul(a, u_mul(b, c))


def test_tables_are_sound_over_f3():
    # every concrete sum or product of instances is an instance of the table entry
    vals = {Z: {0}, N: {1, 2}, D: {0, 1, 2}}
    for a, b in itertools.product([Z, D, N], repeat=2):
        assert {(x + y) % 3 for x in vals[a] for y in vals[b]} <= vals[u_add(a, b)]
        assert {x * y % 3 for x in vals[a] for y in vals[b]} <= vals[u_mul(a, b)]


def test_pattern_expansion():
    assert str(pattern_expand("0^3(DN)^2")) == "000DNDN"
    assert str(pattern_expand("(0^2D)^2N")) == "00D00DN"
    with pytest.raises(PatternSyntaxError):
        pattern_expand("0^")
    with pytest.raises(PatternSyntaxError):
        pattern_expand("(0D")
    with pytest.raises(PatternSyntaxError):
        pattern_expand("0X")
    with pytest.raises(EmptyPattern):
        pattern_expand("(0)^0")


def test_uvec_basics():
    v = UVec.from_text("0DN0")
    assert v.at(1) == Z and v.at(4) == Z and v.at(5) == Z
    assert str(v.shift()) == "00DN"
    assert str(v.reflect()) == "0ND0"
    with pytest.raises(ValueError):
        UVec([3])


@pytest.mark.parametrize("u,v,expected", INCLUSION_EXAMPLES)
def test_inclusion_examples(u, v, expected):
    assert includes(u, v)[0] is expected


def test_inclusion_offset():
    assert includes("(0^2)D", "0DND0") == (True, 4)
    with pytest.raises(LengthError):
        includes("000000", "000")


def test_inclusion_not_transitive():
    a, b, c = NON_TRANSITIVE
    assert includes(a, b)[0] and includes(b, c)[0]
    assert not includes(a, c)[0]


@settings(max_examples=80)
@given(uvec)
def test_inclusion_reflexive_and_rotation_invariant(v):
    assert includes(v, v)[0]
    assert includes(v, v.shift(3))[0]


def test_singleton_procedure():
    ok, order = singleton_procedure(UMatrix([UVec.from_text("N0"), UVec.from_text("DN")]))
    assert ok and sorted(order) == [0, 1]
    assert not singleton_procedure(UMatrix([UVec.from_text("NN"), UVec.from_text("NN")]))[0]


def _concrete_rank_min(M, q=3):
    return min(rank_mod_p(rows, q) for rows in itertools.product(*(instances(r, q) for r in M)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(sym, min_size=4, max_size=4), min_size=1, max_size=4))
def test_prk_is_a_rank_lower_bound(rows):
    M = UMatrix(UVec(r) for r in rows)
    if sum(1 for r in M for s in r if s == D) > 6:
        return
    assert prk(M) <= _concrete_rank_min(M)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(sym, min_size=5, max_size=5), min_size=1, max_size=6))
def test_prk_dp_matches_bruteforce(rows):
    M = UMatrix(UVec(r) for r in rows)
    assert prk(M) == prk_bruteforce(M)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(sym, min_size=5, max_size=5), min_size=2, max_size=6), st.randoms())
def test_prk_invariant_under_permutations(rows, rnd):
    M = UMatrix(UVec(r) for r in rows)
    perm = list(range(5))
    rnd.shuffle(perm)
    rows2 = [UVec(r[i] for i in perm) for r in M]
    rnd.shuffle(rows2)
    assert prk(M) == prk(UMatrix(rows2))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(sym, min_size=5, max_size=5), min_size=2, max_size=5))
def test_greedy_singleton_agrees_with_exhaustive(rows):
    M = UMatrix(UVec(r) for r in rows)
    assert singleton_procedure(M, "greedy")[0] == singleton_procedure(M, "exhaustive")[0]


def test_enumerate_A():
    out = enumerate_A(UVec.from_text("D0D"))
    assert sorted(map(str, out)) == ["00N", "N00", "N0N"]
    assert len(enumerate_A(UVec.from_text("N0D"))) == 2
    with pytest.raises(CapExceeded):
        enumerate_A(UVec([D] * 12), cap=1 << 10)


def test_instances():
    assert instances(UVec.from_text("0ND"), 3) == [(0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 2, 0), (0, 2, 1), (0, 2, 2)]
