"""Defining-set lower bounds on the minimum distance of cyclic codes.

Every bound is a search for a block pattern over {0, D} inside the periodic
reading of R(n, S), the vector with 0 on S and D elsewhere.  D positions are
wildcards for these patterns, so a pattern occurs at a start i0 exactly when
its zero blocks fall on zero runs of R.  The searches below work on run
lengths instead of testing patterns one by one:

    run[i]   number of consecutive zeros of R starting at i
    back[i]  number of consecutive zeros of R ending at i
    cnt[b, t, m]
             number of consecutive slots t, t+b, t+2b, ... (mod n) whose
             run is at least m

Every value is clamped to n+1, the distance assigned to the zero code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import ParamError
from .usemiring import D, UVec, Z, includes

KINDS = ("BCH", "HT", "BS", "ROOS", "BOUND_C")


@dataclass(frozen=True)
class BoundOutcome:
    kind: str
    value: int
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "witness": dict(self.witness)}


# --- closed forms ---

def bound_I_value(ell: int, m: int, r: int, s: int, n: int) -> int:
    if not (1 <= m <= ell and r >= 1 and s >= 1 and n >= 1):
        raise ParamError(f"need 1 <= m <= ell, r >= 1, s >= 1 (got {ell}, {m}, {r}, {s})")
    b = m + r
    if gcd(b, n) <= m:
        return ell + 1 + s - r * (ell // b) - max(ell % b - m, 0)
    return ell + 1


def bound_II_value(lam: int, mu: int, s: int, n: int) -> int:
    if not (lam >= 1 and mu >= 2 and s >= lam + 1 and n >= 1):
        raise ParamError(f"need lam >= 1, mu >= 2, s >= lam+1 (got {lam}, {mu}, {s})")
    if n % mu:
        return lam * mu + mu + s - lam - 1
    return lam * mu + mu


def pattern_length(kind: str, p: dict) -> int:
    kind = kind.upper()
    if kind == "BCH":
        return p["ell"]
    if kind == "HT":
        return p["s"] * (p["m"] + p["r"])
    if kind == "BS":
        return p["lam"] * p["mu"] + (p["lam"] + 1) * p["mu"]
    if kind == "ROOS":
        return (p["m"] + p["s"] - 1) * (p["m"] + p["r"])
    if kind == "BOUND_C":
        return p["ell"] + p["r"] + p["s"] * (p["m"] + p["r"])
    raise ParamError(f"unknown kind {kind!r}")


def max_rho(kind: str, params: dict, n: int) -> int:
    """Number of copies of R needed so the pattern fits at every shift."""
    kind = kind.upper()
    p = params
    try:
        if kind == "HT":
            return p["s"] * (p["m"] + p["r"]) // n + 1
        if kind == "BS":
            lam, mu = p["lam"], p["mu"]
            return (mu * lam + 1 + mu * (lam + 1)) // n + 1
        if kind == "ROOS":
            return (p["m"] + p["s"] - 1) * (p["m"] + p["r"]) // n + 1
        if kind == "BOUND_C":
            L = pattern_length(kind, p)
            return max(1, -(-(n - 1 + L) // n))
        if kind == "BCH":
            return max(1, -(-(n - 1 + p["ell"]) // n))
    except KeyError as e:
        raise ParamError(f"missing parameter {e}") from None
    raise ParamError(f"unknown kind {kind!r}")


# --- patterns ---

def ht_pattern(m, r, s) -> UVec:
    return UVec.from_blocks([(Z, m), (D, r)] * s)


def bs_pattern(lam, mu) -> UVec:
    return UVec.from_blocks([(Z, lam * mu)] + [(D, 1), (Z, mu - 1)] * (lam + 1))


def roos_pattern(m, r, ks) -> UVec:
    ks = set(ks)
    blocks = []
    for j in range(max(ks) + 1):
        blocks += [(Z, m), (D, r)] if j in ks else [(D, m + r)]
    return UVec.from_blocks(blocks)


def bound_c_pattern(ell, m, r, s) -> UVec:
    return UVec.from_blocks([(Z, ell), (D, r)] + [(Z, m), (D, r)] * s)


def _r_of(spec_or_S, n=None) -> UVec:
    if n is None:
        n, S = spec_or_S.n, set(spec_or_S.S)
    else:
        S = set(spec_or_S)
    return UVec(Z if i in S else D for i in range(n))


# --- run-length tables ---

@lru_cache(maxsize=64)
def _orbit_index(n: int) -> np.ndarray:
    """idx[b-1, t, j] = (t + j*b) mod n for b in 1..n-1."""
    b = np.arange(1, n, dtype=np.int64)[:, None, None]
    t = np.arange(n, dtype=np.int64)[None, :, None]
    j = np.arange(n, dtype=np.int64)[None, None, :]
    return ((t + j * b) % n).astype(np.int32)


def _runs(z: np.ndarray):
    n = len(z)
    zz = np.concatenate([z, z])
    run = np.zeros(2 * n + 1, dtype=np.int64)
    for i in range(2 * n - 1, -1, -1):
        run[i] = run[i + 1] + 1 if zz[i] else 0
    back = np.zeros(2 * n + 1, dtype=np.int64)
    for i in range(2 * n):
        back[i + 1] = back[i] + 1 if zz[i] else 0
    return np.minimum(run[:n], n), np.minimum(back[n + 1:2 * n + 1], n)


class _Tables:
    def __init__(self, z: np.ndarray):
        n = len(z)
        self.n = n
        self.run, self.back = _runs(z)
        self.M = int(self.run.max()) if n else 0
        if self.M == 0 or n < 2:
            self.cnt = None
            return
        M = self.M
        pm = np.minimum.accumulate(self.run[_orbit_index(n)], axis=2)   # (n-1, n, n)
        rows = (n - 1) * n
        flat = (np.arange(rows, dtype=np.int64)[:, None] * (n + 1) + pm.reshape(rows, n)).ravel()
        hist = np.bincount(flat, minlength=rows * (n + 1)).reshape(n - 1, n, n + 1)
        cnt = np.cumsum(hist[..., ::-1], axis=-1)[..., ::-1]
        self.cnt = cnt[..., 1:M + 1]     # cnt[b-1, t, m-1]


def _best(values: np.ndarray):
    """Index of the first maximum, and the maximum."""
    i = int(np.argmax(values))
    return np.unravel_index(i, values.shape), int(values.flat[i])


def _bch(T: _Tables):
    i0 = int(np.argmax(T.run))
    ell = int(T.run[i0])
    return ell + 1, {"ell": ell, "i0": i0, "rho": max_rho("BCH", {"ell": ell}, T.n)}


def _ht(T: _Tables):
    n, M = T.n, T.M
    mm = np.arange(1, M + 1)
    g = np.gcd(np.arange(1, n), n)
    valid = (mm[None, None, :] >= g[:, None, None]) & (T.cnt >= 1)
    vals = np.where(valid, mm[None, None, :] + T.cnt, 0)
    (bi, t, mi), v = _best(vals)
    m, bres = int(mm[mi]), bi + 1
    b = bres + n if bres <= m else bres
    s = int(T.cnt[bi, t, mi])
    w = {"m": m, "r": b - m, "s": s, "i0": int(t)}
    w["rho"] = max_rho("HT", w, n)
    return v, w


def _bound_c_one(T: _Tables, ell_equals_m: bool = False):
    """Best bound-I configuration for one orientation."""
    n, M = T.n, T.M
    mm = np.arange(1, M + 1)
    bres = np.arange(1, n)
    g = np.gcd(bres, n)
    b = bres[:, None] + n * (bres[:, None] <= mm[None, :])          # (n-1, M)
    r = b - mm[None, :]
    t = np.arange(n)
    pos = (t[None, :, None] - r[:, None, :] - 1) % n                  # (n-1, n, M)
    if ell_equals_m:
        ell = np.broadcast_to(mm[None, None, :], pos.shape)
        ok = T.back[pos] >= mm[None, None, :]
    else:
        ell = T.back[pos]
        ok = ell >= mm[None, None, :]
    valid = ok & (mm[None, None, :] >= g[:, None, None]) & (T.cnt >= 1)
    bb = b[:, None, :]
    F = (ell // bb) * mm[None, None, :] + np.minimum(ell % bb, mm[None, None, :])
    vals = np.where(valid, F + 1 + T.cnt, 0)
    (bi, ti, mi), v = _best(vals)
    if v == 0:
        return 0, None
    m = int(mm[mi])
    w = {"case": "I", "ell": int(ell[bi, ti, mi]), "m": m, "r": int(r[bi, mi]),
         "s": int(T.cnt[bi, ti, mi])}
    w["i0"] = (int(ti) - w["r"] - w["ell"]) % n
    return v, w


def _bs_and_c2_one(T: _Tables):
    """Best BS and best bound-II configurations for one orientation."""
    n, M = T.n, T.M
    best_bs, best_c2 = (0, None), (0, None)
    t = np.arange(n)
    bk = T.back[(t - 2) % n]
    for mu in range(2, M + 1):
        chain = T.cnt[mu - 1, :, mu - 2]
        lam = np.minimum(bk // mu, chain - 1)
        ok = lam >= 1
        if not ok.any():
            continue
        bs_vals = np.where(ok, mu * (lam + 1), 0)
        ti = int(np.argmax(bs_vals))
        if bs_vals[ti] > best_bs[0]:
            lm = int(lam[ti])
            best_bs = (int(bs_vals[ti]), {"lam": lm, "mu": mu, "i0": (ti - 1 - lm * mu) % n})
        if n % mu:
            c2 = np.where(ok, lam * mu + mu + chain - lam - 1, 0)
        else:
            c2 = np.where(ok, lam * mu + mu, 0)
        ti = int(np.argmax(c2))
        if c2[ti] > best_c2[0]:
            lm = int(lam[ti])
            s = int(chain[ti]) if n % mu else lm + 1
            best_c2 = (int(c2[ti]), {"case": "II", "lam": lm, "mu": mu, "s": s,
                                     "ell": lm * mu, "m": mu - 1, "r": 1,
                                     "i0": (ti - 1 - lm * mu) % n})
    return best_bs, best_c2


def _roos(T: _Tables):
    n, M = T.n, T.M
    units = np.array([b for b in range(1, n) if gcd(b, n) == 1], dtype=np.int64)
    G = T.run[(np.arange(n)[None, :] * units[:, None]) % n]          # slots along each orbit
    best = (0, None)
    j2 = np.arange(2 * n)
    big = 4 * n
    for m in range(1, M + 1):
        hole = G < m
        h = hole.sum(axis=1)
        P = np.sort(np.where(np.concatenate([hole, hole], axis=1), j2, big), axis=1)
        k = np.arange(n)
        valid = k[None, :] < h[:, None]
        hi = np.minimum(k + m, 2 * n - 1)
        s = np.where(valid, P[:, hi] - P[:, k] - m, -1)
        (ui, ki), sv = _best(s)
        if sv >= 1 and m + sv > best[0]:
            bres = int(units[ui])
            b = bres + n if bres <= m else bres
            start = int(P[ui, ki]) + 1
            end = int(P[ui, ki + m])
            while G[ui, start % n] < m:
                start += 1
            ks = [j - start for j in range(start, end) if G[ui, j % n] >= m][:sv]
            w = {"m": m, "r": b - m, "s": sv, "i0": int(start * bres % n), "k": ks}
            w["rho"] = max_rho("ROOS", w, n)
            best = (m + sv, w)
    return best


def _mirror_start(i0, L, n):
    return (n - i0 - L) % n


@lru_cache(maxsize=4096)
def _analyze(n: int, S: tuple, ell_equals_m: bool = False) -> dict:
    Sset = set(S)
    z = np.array([i in Sset for i in range(n)], dtype=bool)
    if z.all():
        return {k: BoundOutcome(k, n + 1, {"zero_code": True}) for k in KINDS}
    T = _Tables(z)
    bch_v, bch_w = _bch(T)
    base = {"case": "bch", **bch_w}
    if T.cnt is None:
        return {k: BoundOutcome(k, min(bch_v, n + 1), dict(base if k != "BCH" else bch_w)) for k in KINDS}
    out = {"BCH": BoundOutcome("BCH", min(bch_v, n + 1), bch_w)}

    ht_v, ht_w = _ht(T)
    out["HT"] = BoundOutcome("HT", min(ht_v, n + 1), ht_w) if ht_v > bch_v else \
        BoundOutcome("HT", min(bch_v, n + 1), dict(base))

    rs_v, rs_w = _roos(T)
    out["ROOS"] = BoundOutcome("ROOS", min(rs_v, n + 1), rs_w) if rs_v > bch_v else \
        BoundOutcome("ROOS", min(bch_v, n + 1), dict(base))

    Tr = _Tables(z[::-1].copy())
    bs_best, bc_best = (bch_v, dict(base)), (bch_v, dict(base))
    for orient, TT in (("forward", T), ("mirror", Tr)):
        cv, cw = _bound_c_one(TT, ell_equals_m)
        (bsv, bsw), (c2v, c2w) = _bs_and_c2_one(TT)
        if ell_equals_m:
            c2v = 0
        for v, w, kind in ((bsv, bsw, "BS"), (cv, cw, "C"), (c2v, c2w, "C")):
            if w is None:
                continue
            w = dict(w, orientation=orient)
            if kind == "BS":
                L = pattern_length("BS", w)
                w["rho"] = max_rho("BS", w, n)
                if orient == "mirror":
                    w["i0"] = _mirror_start(w["i0"], L, n)
                if v > bs_best[0]:
                    bs_best = (v, w)
            else:
                L = pattern_length("BOUND_C", w)
                w["rho"] = max_rho("BOUND_C", w, n)
                if orient == "mirror":
                    w["i0"] = _mirror_start(w["i0"], L, n)
                if v > bc_best[0]:
                    bc_best = (v, w)
    out["BS"] = BoundOutcome("BS", min(bs_best[0], n + 1), bs_best[1])
    out["BOUND_C"] = BoundOutcome("BOUND_C", min(bc_best[0], n + 1), bc_best[1])
    return out


# --- public entry points ---

def unit_representatives(n: int, q: int) -> list:
    """One unit u per coset of <q> in the unit group mod n."""
    seen, reps = set(), []
    for u in range(1, max(n, 2)):
        if gcd(u, n) != 1 or u in seen:
            continue
        reps.append(u)
        x = u
        while x not in seen:
            seen.add(x)
            x = x * q % n
    return reps or [1]


def all_bounds(spec, units: bool = False) -> dict:
    """All five bounds.  With units=True each bound is maximized over the
    equivalent codes with defining sets u*S, u a unit mod n."""
    if not units:
        return dict(_analyze(spec.n, tuple(spec.S)))
    best = None
    for u in unit_representatives(spec.n, spec.q):
        S = tuple(sorted(u * j % spec.n for j in spec.S))
        res = _analyze(spec.n, S)
        if best is None:
            best = {k: (o, u) for k, o in res.items()}
        else:
            for k, o in res.items():
                if o.value > best[k][0].value:
                    best[k] = (o, u)
    return {k: BoundOutcome(k, o.value, dict(o.witness, unit=u)) for k, (o, u) in best.items()}


def bch(spec, units: bool = False) -> BoundOutcome:
    return all_bounds(spec, units)["BCH"]


def ht(spec, units: bool = False) -> BoundOutcome:
    return all_bounds(spec, units)["HT"]


def bs(spec, units: bool = False) -> BoundOutcome:
    return all_bounds(spec, units)["BS"]


def roos(spec, units: bool = False) -> BoundOutcome:
    return all_bounds(spec, units)["ROOS"]


def bound_c(spec, units: bool = False, ell_equals_m: bool = False) -> BoundOutcome:
    if ell_equals_m:
        return _analyze(spec.n, tuple(spec.S), True)["BOUND_C"]
    return all_bounds(spec, units)["BOUND_C"]


def roos_at(spec, m: int, r: int, i0: int) -> BoundOutcome:
    """Roos value for fixed (m, r) and 0-based start i0, scanning slots until
    the m-th hole."""
    n = spec.n
    b = m + r
    if m < 1 or r < 1 or gcd(b, n) != 1:
        raise ParamError("need m, r >= 1 and gcd(m+r, n) = 1")
    Sset = set(spec.S)
    z = [i in Sset for i in range(n)]

    def good(j):
        p = i0 + j * b
        return all(z[(p + x) % n] for x in range(m))

    if not good(0):
        return BoundOutcome("ROOS", 1, {"m": m, "r": r, "i0": i0, "s": 0, "k": []})
    ks, holes, j = [], 0, 0
    while j < n:
        if good(j):
            ks.append(j)
        else:
            holes += 1
            if holes == m:
                break
        j += 1
    s = len(ks)
    w = {"m": m, "r": r, "s": s, "i0": i0, "k": ks}
    w["rho"] = max_rho("ROOS", w, n)
    return BoundOutcome("ROOS", min(m + s, n + 1), w)


def outcome_pattern(kind: str, w: dict) -> UVec:
    kind = kind.upper()
    if kind == "BCH" or w.get("case") == "bch":
        return UVec.from_blocks([(Z, w["ell"])]) if w["ell"] else UVec.from_blocks([(D, 1)])
    if kind == "HT":
        p = ht_pattern(w["m"], w["r"], w["s"])
    elif kind == "BS":
        p = bs_pattern(w["lam"], w["mu"])
    elif kind == "ROOS":
        p = roos_pattern(w["m"], w["r"], w["k"])
    elif kind == "BOUND_C":
        p = bound_c_pattern(w["ell"], w["m"], w["r"], w["s"])
    else:
        raise ParamError(kind)
    return p.reflect() if w.get("orientation") == "mirror" else p


def outcome_formula(kind: str, w: dict, n: int) -> int:
    kind = kind.upper()
    if kind == "BCH" or w.get("case") == "bch":
        return w["ell"] + 1
    if kind == "HT":
        if gcd(w["m"] + w["r"], n) > w["m"]:
            raise ParamError("HT witness violates the gcd condition")
        return w["m"] + w["s"]
    if kind == "BS":
        return w["lam"] * w["mu"] + w["mu"]
    if kind == "ROOS":
        ks = w["k"]
        if gcd(w["m"] + w["r"], n) != 1 or ks[0] != 0 or ks[-1] >= w["m"] + w["s"] - 1:
            raise ParamError("Roos witness is not admissible")
        return w["m"] + len(ks)
    if w["case"] == "II":
        return bound_II_value(w["lam"], w["mu"], w["s"], n)
    return bound_I_value(w["ell"], w["m"], w["r"], w["s"], n)


def replay_witness(spec, outcome: BoundOutcome) -> bool:
    """Re-check a witness: the pattern occurs at its recorded start in
    R(n, uS)^rho, and the value formula gives back the outcome value."""
    n = spec.n
    w = outcome.witness
    if w.get("zero_code"):
        return len(spec.S) == n and outcome.value == n + 1
    u = w.get("unit", 1)
    R = _r_of([u * j % n for j in spec.S], n)
    p = outcome_pattern(outcome.kind, w)
    rho = max(w.get("rho", 1), -(-len(p) // n))
    Rr = R * rho
    if len(p) > len(Rr):
        return False
    ok, _ = includes(p, Rr)
    rotated = Rr.shift(-w.get("i0", 0)) if "i0" in w else Rr
    at_start = all(a != Z or c == Z for a, c in zip(p, rotated[:len(p)])) if len(p) <= len(rotated) else False
    return ok and at_start and min(outcome_formula(outcome.kind, w, n), n + 1) == outcome.value
