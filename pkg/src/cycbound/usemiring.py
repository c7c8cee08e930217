"""The three-symbol set {0, D, N}: tables, vectors, patterns, inclusion, pseudo-rank.

D stands for "any value" and N for "known nonzero".  Text forms use the
characters 0, D and N throughout.
"""

from __future__ import annotations

import itertools
from enum import IntEnum
from math import comb

from .errors import CapExceeded, EmptyPattern, LengthError, PatternSyntaxError


class USym(IntEnum):
    ZERO = 0
    ANY = 1
    NONZERO = 2

    @property
    def char(self) -> str:
        return "0DN"[self]

    @classmethod
    def from_char(cls, c: str) -> "USym":
        try:
            return cls("0DN".index(c))
        except ValueError:
            raise PatternSyntaxError(f"unknown symbol {c!r}") from None


Z, D, N = USym.ZERO, USym.ANY, USym.NONZERO

_SYMS = {0: USym.ZERO, 1: USym.ANY, 2: USym.NONZERO}

SUM_TABLE = {
    (Z, Z): Z, (Z, D): D, (Z, N): N,
    (D, Z): D, (D, D): D, (D, N): D,
    (N, Z): N, (N, D): D, (N, N): D,
}
PRODUCT_TABLE = {
    (Z, Z): Z, (Z, D): Z, (Z, N): Z,
    (D, Z): Z, (D, D): D, (D, N): D,
    (N, Z): Z, (N, D): D, (N, N): N,
}


def u_add(a: USym, b: USym) -> USym:
    return SUM_TABLE[USym(a), USym(b)]


def u_mul(a: USym, b: USym) -> USym:
    return PRODUCT_TABLE[USym(a), USym(b)]


class UVec(tuple):
    """Immutable vector over {0, D, N}; Python indexing is 0-based."""

    def __new__(cls, symbols=()):
        if isinstance(symbols, UVec):
            return symbols
        return super().__new__(cls, (_SYMS.get(s) or USym(s) for s in symbols))

    @classmethod
    def from_text(cls, text: str) -> "UVec":
        return cls(USym.from_char(c) for c in text if not c.isspace())

    @classmethod
    def from_blocks(cls, blocks) -> "UVec":
        """Build from (symbol, count) pairs."""
        out = []
        for sym, k in blocks:
            out.extend([USym(sym)] * k)
        return cls(out)

    def __str__(self):
        return "".join(s.char for s in self)

    def __repr__(self):
        return f"UVec({str(self)!r})"

    def __add__(self, other):
        return UVec(tuple.__add__(self, other))

    def __mul__(self, k):
        return UVec(tuple.__mul__(self, k))

    def at(self, k: int) -> USym:
        """1-based cyclic access: at(n) is the last entry, at(n+1) the first."""
        return self[(k - 1) % len(self)]

    def shift(self, k: int = 1) -> "UVec":
        """Right rotation applied k times."""
        n = len(self)
        k %= n
        return UVec(tuple.__getitem__(self, slice(n - k, n)) + tuple.__getitem__(self, slice(0, n - k)))

    def reflect(self) -> "UVec":
        return UVec(reversed(self))

    @property
    def nz_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self) if s != Z)

    @property
    def dp_mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self) if s == N)


class UMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(UVec(r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("rows of unequal length")
        self.rows = rows

    @classmethod
    def circulant(cls, v) -> "UMatrix":
        v = UVec(v)
        return cls(v.shift(i) for i in range(len(v)))

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def text(self) -> str:
        return "\n".join(str(r) for r in self.rows)

    def masks(self):
        return [(r.nz_mask, r.dp_mask) for r in self.rows]


# --- block patterns ---

class Pattern:
    """Block expression: atoms, concatenations and group repetitions."""

    def expand(self) -> UVec:
        out = UVec(self._flat())
        if not out:
            raise EmptyPattern(str(self))
        return out

    def _flat(self):
        raise NotImplementedError

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        return _Parser(text).parse()


class Atom(Pattern):
    def __init__(self, sym: USym, count: int = 1):
        self.sym, self.count = USym(sym), count

    def _flat(self):
        return [self.sym] * self.count

    def __str__(self):
        return self.sym.char if self.count == 1 else f"{self.sym.char}^{self.count}"


class Seq(Pattern):
    def __init__(self, items):
        self.items = list(items)

    def _flat(self):
        out = []
        for it in self.items:
            out.extend(it._flat())
        return out

    def __str__(self):
        return "".join(str(it) for it in self.items)


class Rep(Pattern):
    def __init__(self, body: Pattern, count: int):
        self.body, self.count = body, count

    def _flat(self):
        return self.body._flat() * self.count

    def __str__(self):
        return f"({self.body})^{self.count}" if self.count != 1 else f"({self.body})"


class _Parser:
    def __init__(self, text):
        self.s = "".join(text.split())
        self.i = 0

    def parse(self):
        p = self.seq()
        if self.i != len(self.s):
            raise PatternSyntaxError(f"unexpected {self.s[self.i]!r} at {self.i}")
        return p

    def seq(self):
        items = []
        while self.i < len(self.s) and self.s[self.i] != ")":
            items.append(self.item())
        return Seq(items)

    def item(self):
        c = self.s[self.i]
        if c == "(":
            self.i += 1
            body = self.seq()
            if self.i >= len(self.s) or self.s[self.i] != ")":
                raise PatternSyntaxError("unbalanced parenthesis")
            self.i += 1
            return Rep(body, self.exponent())
        if c in "0DN":
            self.i += 1
            return Atom(USym.from_char(c), self.exponent())
        raise PatternSyntaxError(f"unexpected {c!r} at {self.i}")

    def exponent(self):
        if self.i < len(self.s) and self.s[self.i] == "^":
            j = self.i + 1
            while j < len(self.s) and self.s[j].isdigit():
                j += 1
            if j == self.i + 1:
                raise PatternSyntaxError("missing exponent")
            k = int(self.s[self.i + 1:j])
            self.i = j
            return k
        return 1


def pattern_expand(p) -> UVec:
    if isinstance(p, str):
        p = Pattern.parse(p)
    return p.expand()


def as_uvec(x) -> UVec:
    if isinstance(x, UVec):
        return x
    if isinstance(x, (str, Pattern)):
        return pattern_expand(x)
    return UVec(x)


# --- inclusion ---

def _compatible(u, window) -> bool:
    if all(w == Z for w in window):
        return True
    for a, w in zip(u, window):
        if a == Z and w != Z:
            return False
        if a == N and w != N:
            return False
    return True


def includes(u, v):
    """Is u included in v?  Returns (verdict, offset).

    The offset is the least start index i in v of a compatible cyclic window
    v[i], v[i+1], ..., v[i+m-1]; equivalently the window is the head of v
    rotated right n-i times.
    """
    u, v = as_uvec(u), as_uvec(v)
    m, n = len(u), len(v)
    if m > n:
        raise LengthError(f"pattern length {m} exceeds vector length {n}")
    vv = tuple(v) + tuple(v[: m - 1])
    for i in range(n):
        if _compatible(u, vv[i:i + m]):
            return True, i
    return False, None


# --- singleton procedure and pseudo-rank ---

def _singleton_columns(masks, alive, cols, ncols):
    """All (row, column) pairs where the column holds exactly one nonzero, an N."""
    once = twice = 0
    for h in alive:
        nz = masks[h][0] & cols
        twice |= once & nz
        once |= nz
    single = once & ~twice
    out = []
    if not single:
        return out
    for h in alive:
        hit = masks[h][1] & single
        while hit:
            low = hit & -hit
            out.append((h, low.bit_length() - 1))
            hit ^= low
    out.sort(key=lambda hc: hc[1])
    return out


def singleton_procedure(M, mode: str = "greedy"):
    """Run s-deletions.  Returns (success, elimination order of row indices).

    Success means the rows are deleted one at a time through singleton
    columns until a single row is left that still has an N.
    """
    M = M if isinstance(M, UMatrix) else UMatrix(M)
    if not len(M):
        raise ValueError("empty matrix")
    masks = M.masks()
    ncols = M.ncols
    all_cols = (1 << ncols) - 1
    if mode == "greedy":
        alive, cols, order = list(range(len(masks))), all_cols, []
        while len(alive) > 1:
            found = _singleton_columns(masks, alive, cols, ncols)
            if not found:
                return False, order
            h, c = found[0]
            alive.remove(h)
            cols &= ~(1 << c)
            order.append(h)
        last = alive[0]
        order.append(last)
        return bool(masks[last][1] & cols), order
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")

    failed = set()

    def search(alive, cols):
        if len(alive) == 1:
            return [alive[0]] if masks[alive[0]][1] & cols else None
        key = (tuple(alive), cols)
        if key in failed:
            return None
        for h, c in _singleton_columns(masks, alive, cols, ncols):
            rest = search([x for x in alive if x != h], cols & ~(1 << c))
            if rest is not None:
                return [h] + rest
        failed.add(key)
        return None

    order = search(list(range(len(masks))), all_cols)
    if order is None:
        return False, greedy_prefix(M)
    return True, order


def greedy_prefix(M):
    return singleton_procedure(M, "greedy")[1]


def prk(M, subset_cap: int = 1 << 22) -> int:
    """Exact pseudo-rank.

    A row subset passes the singleton procedure iff its rows can be listed
    g_1, ..., g_t so that each g_k has an N in a column where all earlier
    rows are 0.  The search runs over the union U of nonzero supports of the
    rows listed so far, which is all that matters for extending the list.
    `subset_cap` limits the number of distinct U states.
    """
    M = M if isinstance(M, UMatrix) else UMatrix(M)
    rows = sorted(set(m for m in M.masks() if m[1]))
    if not rows:
        return 0
    ncols = M.ncols
    full = (1 << ncols) - 1
    memo = {}

    def f(U):
        got = memo.get(U)
        if got is not None:
            return got
        if len(memo) >= subset_cap:
            raise CapExceeded(f"pseudo-rank search exceeded {subset_cap} states")
        free = full & ~U
        bound = bin(free).count("1")
        best = 0
        for nz, dp in rows:
            if dp & free:
                val = 1 + f(U | nz)
                if val > best:
                    best = val
                    if best == bound:
                        break
        memo[U] = best
        return best

    return f(0)


def prk_bruteforce(M, subset_cap: int = 1 << 16) -> int:
    """Pseudo-rank by descending subset search, exhaustive singleton mode."""
    M = M if isinstance(M, UMatrix) else UMatrix(M)
    t_rows = len(M)
    total = sum(comb(t_rows, t) for t in range(1, t_rows + 1))
    if total > subset_cap:
        raise CapExceeded(f"{total} row subsets exceed cap {subset_cap}")
    for t in range(t_rows, 0, -1):
        for sub in itertools.combinations(M.rows, t):
            if singleton_procedure(UMatrix(sub), "exhaustive")[0]:
                return t
    return 0


# --- resolutions and instances ---

def enumerate_A(v, cap: int = 1 << 20):
    """Resolutions of the D positions into {0, N}, excluding the zero vector."""
    v = as_uvec(v)
    pos = [i for i, s in enumerate(v) if s == D]
    if (1 << len(pos)) > cap:
        raise CapExceeded(f"2^{len(pos)} resolutions exceed cap {cap}")
    base = list(v)
    has_n = any(s == N for s in v)
    out = []
    for mask in range(1 << len(pos)):
        if mask == 0 and not has_n:
            continue
        w = list(base)
        for b, i in enumerate(pos):
            w[i] = N if mask >> b & 1 else Z
        out.append(UVec(w))
    return out


def instances(u, q: int, cap: int = 1 << 20):
    u = as_uvec(u)
    choices = []
    count = 1
    for s in u:
        if s == Z:
            c = (0,)
        elif s == N:
            c = tuple(range(1, q))
        else:
            c = tuple(range(q))
        choices.append(c)
        count *= len(c)
    if count > cap:
        raise CapExceeded(f"{count} instances exceed cap {cap}")
    return [tuple(w) for w in itertools.product(*choices)]


def rank_mod_p(rows, q: int) -> int:
    """Rank of an integer matrix over the prime field F_q."""
    A = [[x % q for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, q)
        A[rank] = [x * inv % q for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def schaub_lower_bound(spec, a_cap: int = 1 << 12, subset_cap: int = 1 << 22) -> int:
    """min prk(M(u)) over resolutions u of R(n, S); n+1 when there are none."""
    S = set(spec.S)
    R = UVec(Z if i in S else D for i in range(spec.n))
    best = spec.n + 1
    seen = set()
    for u in enumerate_A(R, a_cap):
        # rotations give the same circulant up to row order
        key = min(str(u.shift(k)) for k in range(len(u)))
        if key in seen:
            continue
        seen.add(key)
        val = prk(UMatrix.circulant(u), subset_cap)
        best = min(best, val)
    return best
