"""Machine checks of the row-selection arguments behind bounds I and II.

For a resolution v of R(n, S), the argument picks rows of the circulant
M(v) in groups, discards a few rows that would block singleton columns, and
runs s-deletions on the rest.  The chosen rows depend on v only through two
positions: the primary pivot (first N) and the secondary pivot (first N in
the slot after the blocks).  So instead of walking every resolution, the
checker walks a tree of pivot cases on a partially known vector in which
undecided entries stay D.  D blocks a singleton exactly like a nonzero
entry, and an s-deletion that works with D in place keeps working after D is
resolved to 0 or N, so one successful leaf covers every resolution in it.
The discarded rows are read off a frame: the pattern with its D positions
kept as D, plus the entries fixed by the pivot choices.  They then depend
only on the pattern and the pivots, never on extra zeros of R.

Positions are 1-based in the public API (pivots, columns), matching the way
the construction is usually written; internal lists are 0-based.  Row x of
M(v) is v rotated right x times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .bounds import bound_I_value, bound_II_value
from .errors import NoNonzero, NotFound, ParamError
from .usemiring import D, N, UMatrix, UVec, Z, as_uvec, enumerate_A, includes, prk, singleton_procedure


@dataclass
class ProofInstance:
    kind: str                      # "I", "II" or "BCH"
    v: UVec                        # normalized, possibly partially known
    params: dict
    i_primary: int                 # 1-based
    i_secondary: int | None        # 1-based, unreduced
    groups: dict                   # group name -> list of shifts
    shifts: list                   # shift of each row of T, in group order, duplicates dropped
    T: UMatrix
    discard: frozenset             # indices into T rows
    path: tuple = ()
    frame: UVec | None = None      # pattern structure plus pivot-forced entries

    def survivors(self) -> int:
        return len(self.shifts) - len(self.discard)

    def kept(self) -> UMatrix:
        return UMatrix(r for i, r in enumerate(self.T.rows) if i not in self.discard)

    def group_rows(self, name) -> UMatrix:
        return UMatrix(_row(self.v, x) for x in self.groups.get(name, []))

    def render(self) -> str:
        out = []
        i = 0
        for name, xs in self.groups.items():
            if out:
                out.append("-" * len(self.v))
            for x in xs:
                if i < len(self.shifts) and self.shifts[i] == x:
                    mark = "  REMOVED" if i in self.discard else ""
                    out.append(f"{self.T.rows[i]}  {name}{mark}")
                    i += 1
        return "\n".join(out)


@dataclass
class ConstructionReport:
    ok: bool
    target: int
    leaves: int = 0
    min_survivors: int | None = None
    max_discard: int = 0
    discard_bound: int | None = None
    eta_monotone: bool = True
    wrapped: int = 0
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _row(v, x):
    n = len(v)
    return UVec(v[(j - x) % n] for j in range(n))


def _rot(v, k):
    """Left rotation: result[i] = v[i + k]."""
    k %= len(v)
    return list(v[k:]) + list(v[:k])


# --- pivots ---

def primary_pivot(v) -> int:
    for h, x in enumerate(v, 1):
        if x == N:
            return h
    raise NoNonzero("vector has no N entry")


def secondary_pivot(v, m: int, r: int, s: int, n: int | None = None, offset: int | None = None) -> int:
    """First N at position offset + (s+k)(m+r) + t (t = 1..m, k = 0, 1, ...),
    all earlier scanned positions being 0.  The default offset r fits the
    normalized vector D^r (0^m D^r)^s ... 0^ell.  Raises NotFound when the
    scan meets an undecided D first or wraps without finding N."""
    return _secondary(v, m, r, s, n, offset)[0]


def _secondary(v, m, r, s, n=None, offset=None):
    n = n or len(v)
    offset = r if offset is None else offset
    b = m + r
    for k in range(n + 1):
        for t in range(1, m + 1):
            i = offset + (s + k) * b + t
            x = v[(i - 1) % n]
            if x == N:
                return i, k, t
            if x != Z:
                raise NotFound(f"position {i} is undecided")
    raise NotFound("no N in any slot")


# --- construction for bound I ---

def _leaf_I(v, f, ell, m, r, s, p, i2, path):
    """p: 1-based primary pivot; i2: unreduced 1-based secondary pivot or None.
    f is the frame: B is read off it rather than off v, so that it depends
    only on the pattern and the pivots."""
    n = len(v)
    b = m + r
    groups = {"T1": [(k - p) % n for k in range(1, m + 1)],
              "T2": [k % n for k in range(m, ell + 1)]}
    if i2 is not None:
        groups["T3"] = [(-r - k * b) % n for k in range(s)]
    shifts, seen = [], set()
    for xs in groups.values():
        for x in xs:
            if x not in seen:
                seen.add(x)
                shifts.append(x)
    T = UMatrix(_row(v, x) for x in shifts)
    discard = set()
    if i2 is not None:
        col = (i2 - r - 1) % n
        t2 = set(groups["T2"]) - set(groups["T1"])
        for idx, x in enumerate(shifts):
            if x in t2 and f[(col - x) % n] != Z:
                discard.add(idx)
    return ProofInstance("I", UVec(v), {"ell": ell, "m": m, "r": r, "s": s}, p, i2,
                         groups, shifts, T, frozenset(discard), path, UVec(f))


def _leaf_bch(v, L, path):
    """Rows giving L+1 s-deletions from a zero run occupying the last L positions."""
    n = len(v)
    v = list(v)
    for p0 in range(n):
        if v[p0] == N:
            yield _bch_instance(v, L, p0 + 1, path)
            return
        if v[p0] == D:
            w = v.copy()
            w[p0] = N
            yield _bch_instance(w, L, p0 + 1, path + (("p", p0 + 1),))
            v[p0] = Z
    # every entry zero: not a resolution, nothing to check


def _bch_instance(v, L, p, path):
    n = len(v)
    shifts = []
    for k in range(1, L + 2):
        x = (k - p) % n
        if x not in shifts:
            shifts.append(x)
    T = UMatrix(_row(v, x) for x in shifts)
    return ProofInstance("BCH", UVec(v), {"ell": L}, p, None, {"T1": list(shifts)}, shifts, T,
                         frozenset(), path)


def _frame_I(n, ell, m, r, s):
    f = [D] * n
    for k in range(s):
        for t in range(m):
            f[(r + k * (m + r) + t) % n] = Z
    for j in range(n - ell, n):
        f[j] = Z
    return f


def _pin(v, f, j):
    """Branch at an undecided position j: (copy with N at j), then j set to 0 in place."""
    w, g = v.copy(), f.copy()
    w[j] = g[j] = N
    v[j] = f[j] = Z
    return w, g


def _tree_I(v, ell, m, r, s, path=(), f=None):
    n = len(v)
    v = list(v)
    f = _frame_I(n, ell, m, r, s) if f is None else list(f)
    for p0 in range(r):
        if v[p0] == N:
            f[p0] = N
            yield from _secondary_I(v, f, ell, m, r, s, p0 + 1, path + (("p", p0 + 1),))
            return
        if v[p0] == D:
            w, g = _pin(v, f, p0)
            yield from _secondary_I(w, g, ell, m, r, s, p0 + 1, path + (("p", p0 + 1),))
        f[p0] = Z
    # the first r entries vanish: the zero run grows to ell + r + m
    w, g = _rot(v, r + m), _rot(f, r + m)
    path = path + (("rot", r + m), ("extend_ell", ell + r + m))
    if s == 1:
        yield from _leaf_bch(w, ell + r + m, path)
    else:
        yield from _tree_I(w, ell + r + m, m, r, s - 1, path, g)


def _secondary_I(v, f, ell, m, r, s, p, path):
    n = len(v)
    b = m + r
    if gcd(b, n) > m:
        yield _leaf_I(v, f, ell, m, r, s, p, None, path)
        return
    v, f = list(v), list(f)
    for _ in range(2 * n + 2):
        for t in range(1, m + 1):
            i2 = r + s * b + t
            j = (i2 - 1) % n
            if v[j] == N:
                f[j] = N
                yield _leaf_I(v, f, ell, m, r, s, p, i2, path + (("i2", i2),))
                return
            if v[j] == D:
                w, g = _pin(v, f, j)
                yield _leaf_I(w, g, ell, m, r, s, p, i2, path + (("i2", i2),))
            f[j] = Z
        # the whole slot vanishes: one more block
        s += 1
        path = path + (("extend_s", s),)
    raise NotFound("secondary pivot scan did not terminate")


# --- construction for bound II ---

def _leaf_II(v, f, lam, mu, s, i2, path):
    n = len(v)
    T1 = list(range(lam * mu + mu))
    groups = {"T1": [x % n for x in T1]}
    if i2 is not None:
        groups["T2"] = [(k * mu - i2) % n for k in range(1, s + 1)]
    shifts, seen = [], set()
    for xs in groups.values():
        for x in xs:
            if x not in seen:
                seen.add(x)
                shifts.append(x)
    T = UMatrix(_row(v, x) for x in shifts)
    discard = set()
    if i2 is not None:
        col = (s * mu - 1) % n
        only1 = set(groups["T1"]) - set(groups["T2"])
        for idx, x in enumerate(shifts):
            if x in only1 and f[(col - x) % n] != Z:
                discard.add(idx)
    return ProofInstance("II", UVec(v), {"lam": lam, "mu": mu, "s": s}, 1, i2,
                         groups, shifts, T, frozenset(discard), path, UVec(f))


def _frame_II(n, lam, mu, s):
    f = [D] * n
    for k in range(s):
        for t in range(mu - 1):
            f[(1 + k * mu + t) % n] = Z
    for j in range(n - lam * mu, n):
        f[j] = Z
    return f


def _tree_II(v, lam, mu, s, path=(), f=None):
    n = len(v)
    v = list(v)
    f = _frame_II(n, lam, mu, s) if f is None else list(f)
    if v[0] == D:
        w, g = _pin(v, f, 0)
        yield from _secondary_II(w, g, lam, mu, s, path + (("p", 1),))
    elif v[0] == N:
        f[0] = N
        yield from _secondary_II(v, f, lam, mu, s, path + (("p", 1),))
        return
    f[0] = Z
    # first entry zero: the zero run grows to (lam+1)*mu
    w, g = _rot(v, mu), _rot(f, mu)
    path = path + (("rot", mu),)
    if s - 1 >= lam + 2:
        yield from _tree_II(w, lam + 1, mu, s - 1, path + (("extend_lam", lam + 1),), g)
    else:
        yield from _leaf_bch(w, (lam + 1) * mu, path + (("bch", (lam + 1) * mu),))


def _secondary_II(v, f, lam, mu, s, path):
    n = len(v)
    if n % mu == 0:
        yield _leaf_II(v, f, lam, mu, s, None, path)
        return
    v, f = list(v), list(f)
    for _ in range(2 * n + 2):
        for t in range(1, mu):
            i2 = 1 + s * mu + t
            j = (i2 - 1) % n
            if v[j] == N:
                f[j] = N
                yield _leaf_II(v, f, lam, mu, s, i2, path + (("i2", i2),))
                return
            if v[j] == D:
                w, g = _pin(v, f, j)
                yield _leaf_II(w, g, lam, mu, s, i2, path + (("i2", i2),))
            f[j] = Z
        s += 1
        path = path + (("extend_s", s),)
    raise NotFound("secondary pivot scan did not terminate")


# --- public API ---

def _params(params: dict):
    if "lam" in params:
        lam, mu, s = params["lam"], params["mu"], params["s"]
        if not (lam >= 1 and mu >= 2 and s >= lam + 1):
            raise ParamError("need lam >= 1, mu >= 2, s >= lam + 1")
        return "II", (lam, mu, s)
    ell, m, r, s = params["ell"], params["m"], params["r"], params["s"]
    if not (1 <= m <= ell and r >= 1 and s >= 1):
        raise ParamError("need 1 <= m <= ell, r >= 1, s >= 1")
    return "I", (ell, m, r, s)


def proof_pattern(params: dict) -> UVec:
    kind, p = _params(params)
    if kind == "I":
        ell, m, r, s = p
        return UVec.from_blocks([(Z, ell), (D, r)] + [(Z, m), (D, r)] * s)
    lam, mu, s = p
    return UVec.from_blocks([(Z, lam * mu), (D, 1)] + [(Z, mu - 1), (D, 1)] * s)


def target_value(params: dict, n: int) -> int:
    kind, p = _params(params)
    return bound_I_value(*p, n) if kind == "I" else bound_II_value(*p, n)


def discard_bound(params: dict) -> int:
    kind, p = _params(params)
    if kind == "I":
        ell, m, r, s = p
        b = m + r
        return r * (ell // b) + max(ell % b - m, 0)
    return p[0] + 1


def normalize(R, params: dict) -> list:
    """Rotate R so the pattern's leading zero run fills the last positions."""
    R = as_uvec(R)
    pat = proof_pattern(params)
    rho = -(-len(pat) // len(R))
    ok, i0 = includes(pat, R * rho)
    if not ok:
        raise ParamError(f"pattern {pat} does not occur in {R}")
    kind, p = _params(params)
    lead = p[0] if kind == "I" else p[0] * p[1]
    return _rot(list(R), (i0 + lead) % len(R))


def _forced(f, upto, ones):
    """Frame entries before each pivot in its scan vanish; pivots are N."""
    for j in upto:
        f[j] = Z
    for j in ones:
        f[j] = N
    return f


def build_T(v, params: dict) -> ProofInstance:
    """Construction for a normalized resolution v whose pivots sit in the
    main case (primary pivot inside the leading D^r, secondary pivot in the
    slot right after the blocks)."""
    v = list(as_uvec(v))
    kind, p = _params(params)
    n = len(v)
    if kind == "I":
        ell, m, r, s = p
        i1 = primary_pivot(v)
        if i1 > r:
            raise NotFound("primary pivot outside the leading D^r run")
        f = _forced(_frame_I(n, ell, m, r, s), range(i1 - 1), [i1 - 1])
        if gcd(m + r, n) > m:
            return _leaf_I(v, f, ell, m, r, s, i1, None, ())
        i2, k, _ = _secondary(v, m, r, s, n)
        if k:
            raise NotFound("the block pattern extends past s blocks")
        slot = r + s * (m + r)
        _forced(f, [j % n for j in range(slot, i2 - 1)], [(i2 - 1) % n])
        return _leaf_I(v, f, ell, m, r, s, i1, i2, ())
    lam, mu, s = p
    if v[0] != N:
        raise NotFound("primary pivot is not the first entry")
    f = _forced(_frame_II(n, lam, mu, s), [], [0])
    if n % mu == 0:
        return _leaf_II(v, f, lam, mu, s, None, ())
    i2, k, _ = _secondary(v, mu - 1, 1, s, n, 1)
    if k:
        raise NotFound("the block pattern extends past s blocks")
    slot = 1 + s * mu
    _forced(f, [j % n for j in range(slot, i2 - 1)], [(i2 - 1) % n])
    return _leaf_II(v, f, lam, mu, s, i2, ())


def discard_set(instance: ProofInstance) -> frozenset:
    return instance.discard


def eta_values(instance: ProofInstance) -> list:
    """eta_j = number of T2 rows nonzero in column s(m+r)+j, j = 1..m (bound I)."""
    if instance.kind != "I":
        raise ParamError("eta is defined for bound I instances")
    p = instance.params
    n = len(instance.v)
    b = p["m"] + p["r"]
    rows = [_row(instance.v, x) for x in instance.groups["T2"]]
    return [sum(1 for row in rows if row[(p["s"] * b + j - 1) % n] != Z) for j in range(1, p["m"] + 1)]


def leaves(R, params: dict):
    """All pivot-case instances for the normalized R."""
    kind, p = _params(params)
    v = normalize(R, params)
    return list(_tree_I(v, *p) if kind == "I" else _tree_II(v, *p))


def _extended_length(inst):
    p = inst.params
    if inst.kind == "I":
        return p["ell"] + p["r"] + p["s"] * (p["m"] + p["r"])
    if inst.kind == "II":
        return p["lam"] * p["mu"] + 1 + p["s"] * p["mu"]
    return p["ell"] + 1


def is_main_case(inst):
    return not any(step[0].startswith("extend") or step[0] == "bch" for step in inst.path)


def _offset(inst):
    return sum(k for step, k in inst.path if step == "rot")


def _matches(case, w):
    return all(c == D or c == x for c, x in zip(case, w))


def _check_leaf(inst, rows, report):
    """rows: the rows of T for the resolution under test, or the case rows."""
    n = len(inst.v)
    report.leaves += 1
    kept = UMatrix(r for i, r in enumerate(rows) if i not in inst.discard)
    surv = len(kept)
    report.min_survivors = surv if report.min_survivors is None else min(report.min_survivors, surv)
    main = is_main_case(inst)
    inside = _extended_length(inst) <= n
    if main and inside and inst.i_secondary is not None:
        report.max_discard = max(report.max_discard, len(inst.discard))
        if len(inst.discard) > report.discard_bound:
            report.failures.append(("discard", inst.path, len(inst.discard)))
        if inst.kind == "I":
            eta = eta_values(inst)
            if any(a < b for a, b in zip(eta, eta[1:])):
                report.eta_monotone = False
                report.failures.append(("eta", inst.path, eta))
    if inside:
        if surv < report.target or not singleton_procedure(kept, "greedy")[0]:
            report.failures.append(("singleton", inst.path, surv))
        return
    # the block pattern wraps around: outside the construction, so check
    # the pseudo-rank of the selected rows directly
    report.wrapped += 1
    if _drop_certificate(rows) < report.target and prk(UMatrix(rows)) < report.target:
        report.failures.append(("wrapped", inst.path, surv))


def _drop_certificate(rows) -> int:
    """Size of a row subset on which s-deletions succeed, found greedily: when
    no singleton column is left, drop the fewest rows blocking a column that
    holds an N.  Deletions made before a drop stay valid after it, since
    dropping rows only thins columns."""
    masks = UMatrix(rows).masks()
    alive = list(range(len(masks)))
    cols = (1 << len(rows[0])) - 1 if rows else 0
    dropped = 0
    while len(alive) > 1:
        found = _singletons(masks, alive, cols)
        if found:
            h, c = found
            alive.remove(h)
            cols &= ~(1 << c)
            continue
        best = None
        for c in range(len(rows[0])):
            bit = 1 << c
            if not cols & bit:
                continue
            holders = [h for h in alive if masks[h][1] & bit]
            if not holders:
                continue
            blockers = [h for h in alive if masks[h][0] & bit and h != holders[0]]
            if best is None or len(blockers) < len(best):
                best = blockers
        if best is None:
            return 0
        dropped += len(best)
        alive = [h for h in alive if h not in best]
    if not alive or not masks[alive[0]][1] & cols:
        return 0
    return len(masks) - dropped


def _singletons(masks, alive, cols):
    once = twice = 0
    for h in alive:
        nz = masks[h][0] & cols
        twice |= once & nz
        once |= nz
    single = once & ~twice
    for h in alive:
        hit = masks[h][1] & single
        if hit:
            return h, (hit & -hit).bit_length() - 1
    return None


def verify_construction(spec_or_R, params: dict, mode: str = "cases", cap: int = 1 << 12) -> ConstructionReport:
    """Check that for every resolution v of R the selected rows, minus the
    discarded ones, pass the singleton procedure with at least the bound
    value of rows left.

    mode="cases" walks pivot cases on the partially known vector.
    mode="exhaustive" walks every resolution (at most `cap`), finds the pivot
    case it falls in and runs the s-deletions on its actual rows; the
    discarded rows are still read off the case frame.  Cases whose block
    pattern, as given or after growing, is longer than n lie outside the
    construction; for them the pseudo-rank of the selected rows is checked
    instead, and they are counted in `wrapped`."""
    if hasattr(spec_or_R, "S"):
        Sset = set(spec_or_R.S)
        R = UVec(Z if i in Sset else D for i in range(spec_or_R.n))
    else:
        R = as_uvec(spec_or_R)
    n = len(R)
    kind, p = _params(params)
    report = ConstructionReport(ok=False, target=target_value(params, n), discard_bound=discard_bound(params))
    v = normalize(R, params)
    cases = list(_tree_I(v, *p) if kind == "I" else _tree_II(v, *p))
    if mode == "cases":
        for inst in cases:
            _check_leaf(inst, inst.T.rows, report)
    elif mode == "exhaustive":
        for w in enumerate_A(UVec(v), cap):
            hits = [inst for inst in cases if _matches(inst.v, _rot(w, _offset(inst)))]
            if len(hits) != 1:
                report.failures.append(("partition", str(w), len(hits)))
                continue
            inst = hits[0]
            wr = _rot(w, _offset(inst))
            _check_leaf(inst, [_row(wr, x) for x in inst.shifts], report)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report.ok = not report.failures and report.leaves > 0
    return report


def synthetic_R(params: dict, n: int) -> UVec:
    """The pattern at position 0, D elsewhere."""
    pat = proof_pattern(params)
    if len(pat) > n:
        raise ParamError(f"pattern length {len(pat)} exceeds n={n}")
    return UVec(list(pat) + [D] * (n - len(pat)))
