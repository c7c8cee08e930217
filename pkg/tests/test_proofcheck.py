from math import gcd

import pytest

from cycbound.bounds import all_bounds
from cycbound.cyclic import CyclicCodeSpec, enumerate_codes
from cycbound.errors import ParamError
from cycbound.proofcheck import (build_T, discard_bound, eta_values, is_main_case, leaves, normalize,
                                 proof_pattern, synthetic_R, target_value, verify_construction)
from cycbound.usemiring import UVec, singleton_procedure

from expected import (BOUND_I_CASES, BOUND_I_EXAMPLE, BOUND_I_N, BOUND_I_VALUE, BOUND_II_EXAMPLE,
                      BOUND_II_N, BOUND_II_SURVIVORS, BOUND_II_VECTOR, CODE21_S)


def _main_leaves(params, n):
    return [x for x in leaves(synthetic_R(params, n), params) if is_main_case(x) and x.i_secondary is not None]


def test_bound_I_worked_example():
    found = {x.i_secondary: x for x in _main_leaves(BOUND_I_EXAMPLE, BOUND_I_N)}
    assert set(found) == set(BOUND_I_CASES)
    for i2, (vec, removed) in BOUND_I_CASES.items():
        inst = found[i2]
        assert str(inst.v) == vec
        assert sorted(i + 1 for i in inst.discard) == removed
        assert inst.survivors() == BOUND_I_VALUE
        assert singleton_procedure(inst.kept())[0]
        assert eta_values(inst) == [2, 2]
        assert inst.render().count("REMOVED") == len(removed)
    assert target_value(BOUND_I_EXAMPLE, BOUND_I_N) == BOUND_I_VALUE


def test_build_T_on_text_vector():
    vec, removed = BOUND_I_CASES[17]
    inst = build_T(vec, BOUND_I_EXAMPLE)
    assert inst.survivors() == BOUND_I_VALUE
    assert {g: len(x) for g, x in inst.groups.items()} == {"T1": 2, "T2": 6, "T3": 5}


def test_groups_alone_pass():
    for inst in _main_leaves(BOUND_I_EXAMPLE, BOUND_I_N):
        for g in inst.groups:
            assert singleton_procedure(inst.group_rows(g))[0], g


def test_bound_II_worked_example():
    insts = _main_leaves(BOUND_II_EXAMPLE, BOUND_II_N)
    assert BOUND_II_VECTOR in {str(x.v) for x in insts}
    for x in insts:
        assert x.survivors() == BOUND_II_SURVIVORS
        assert len(x.discard) == BOUND_II_EXAMPLE["lam"] + 1
        assert singleton_procedure(x.kept())[0]
    rep = verify_construction(synthetic_R(BOUND_II_EXAMPLE, BOUND_II_N), BOUND_II_EXAMPLE)
    assert rep.ok and rep.min_survivors == BOUND_II_SURVIVORS == rep.target


def test_bound_II_larger_s_needs_longer_code():
    params = dict(BOUND_II_EXAMPLE, s=5)
    with pytest.raises(ParamError):
        synthetic_R(params, BOUND_II_N)
    assert verify_construction(synthetic_R(params, 29), params).ok


def test_ell_equal_m_discards_nothing():
    params = {"ell": 3, "m": 3, "r": 1, "s": 3}
    assert discard_bound(params) == 0
    rep = verify_construction(synthetic_R(params, 17), params)
    assert rep.ok and rep.max_discard == 0 and rep.target == 7


def test_param_errors():
    with pytest.raises(ParamError):
        proof_pattern({"ell": 3, "m": 2, "r": 1, "s": 0})
    with pytest.raises(ParamError):
        proof_pattern({"ell": 2, "m": 3, "r": 1, "s": 1})
    with pytest.raises(ParamError):
        proof_pattern({"lam": 2, "mu": 3, "s": 2})
    with pytest.raises(ParamError):
        normalize(UVec.from_text("D" * 10), {"ell": 3, "m": 1, "r": 1, "s": 1})


def test_unknown_mode():
    params = {"ell": 2, "m": 1, "r": 1, "s": 1}
    with pytest.raises(ValueError):
        verify_construction(synthetic_R(params, 9), params, mode="fast")


def test_real_code():
    spec = CyclicCodeSpec(2, 21, CODE21_S)
    rep = verify_construction(spec, {"ell": 4, "m": 2, "r": 2, "s": 3})
    assert rep.ok and rep.target == 6


def _grid(max_ell, max_r, max_s, extra):
    for ell in range(1, max_ell + 1):
        for m in range(1, ell + 1):
            for r in range(1, max_r + 1):
                for s in range(1, max_s + 1):
                    L = ell + r + s * (m + r)
                    for n in range(L, L + extra):
                        if gcd(m + r, n) <= m:
                            yield {"ell": ell, "m": m, "r": r, "s": s}, n


@pytest.mark.parametrize("params,n", list(_grid(5, 2, 3, 4)), ids=str)
def test_grid_cases(params, n):
    rep = verify_construction(synthetic_R(params, n), params)
    assert rep.ok, rep.failures[:3]
    assert rep.max_discard <= rep.discard_bound
    assert rep.eta_monotone


@pytest.mark.parametrize("params,n", [
    ({"ell": 2, "m": 1, "r": 1, "s": 3}, 11),
    ({"ell": 3, "m": 2, "r": 1, "s": 2}, 11),
    ({"ell": 4, "m": 1, "r": 2, "s": 2}, 13),
    ({"ell": 3, "m": 1, "r": 1, "s": 2}, 12),
    ({"lam": 1, "mu": 3, "s": 2}, 11),
    ({"lam": 1, "mu": 2, "s": 3}, 11),
], ids=str)
def test_exhaustive_agrees(params, n):
    R = synthetic_R(params, n)
    assert verify_construction(R, params, mode="exhaustive").ok


def _witness_params(spec):
    w = all_bounds(spec)["BOUND_C"].witness
    if w.get("case") not in ("I", "II"):
        return None, None
    keys = ("ell", "m", "r", "s") if w["case"] == "I" else ("lam", "mu", "s")
    R = spec.scaled(spec.n - 1) if w.get("orientation") == "mirror" else spec
    return R, {k: int(w[k]) for k in keys}


@pytest.mark.parametrize("q,n", [(q, n) for q in (2, 3) for n in range(5, 22) if gcd(n, q) == 1])
def test_witnesses_of_real_codes(q, n):
    for spec in enumerate_codes(n, q):
        R, params = _witness_params(spec)
        if params is not None:
            rep = verify_construction(R, params)
            assert rep.ok and rep.target == all_bounds(spec)["BOUND_C"].value, (spec.S, rep.failures[:2])


def test_frame_ignores_extra_zeros():
    # the same pivots on a vector with fewer D entries discard the same rows
    params = {"ell": 8, "m": 2, "r": 2, "s": 2}
    a = build_T("0N00D000D0NDD00000000", params)
    b = build_T("0N00DD00DDNDD00000000", params)
    assert a.discard == b.discard and a.survivors() == 8
    assert singleton_procedure(a.kept())[0]
