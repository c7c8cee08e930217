"""Exact minimum distance of small cyclic codes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

import numpy as np

from .cyclic import CyclicCodeSpec, generator_poly
from .errors import CapExceeded
from .gf import FieldContext, build_field_context

DEFAULT_CAP = 1 << 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class DistanceResult:
    d: int
    argmin_word: tuple | None
    enumerated: int


def generator_matrix(spec: CyclicCodeSpec, ctx: FieldContext | None = None) -> np.ndarray:
    """Rows x^i g(x), i < k, as a k x n integer array."""
    ctx = ctx or build_field_context(spec.q, spec.n)
    g = generator_poly(spec, ctx).coeffs
    k, n = spec.k, spec.n
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i:i + len(g)] = g
    return G


def rref_mod(G: np.ndarray, q: int):
    """Reduced row echelon form over F_q; returns (matrix, pivot columns)."""
    A = G.copy() % q
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        p = r + nz[0]
        A[[r, p]] = A[[p, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, q) % q
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % q
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _class_count(k, q):
    return (q ** k - 1) // (q - 1)


def true_distance(spec: CyclicCodeSpec, ctx: FieldContext | None = None,
                  cap: int = DEFAULT_CAP, method: str = "ordered") -> DistanceResult:
    """Minimum nonzero weight; n+1 for the zero code.

    "ordered" walks messages of a systematic generator matrix by increasing
    weight w and stops once the best weight found is <= w+1, since every
    remaining codeword carries more than w nonzeros on the information set.
    "full" examines every scalar class of messages.  Both are exact; `cap`
    bounds the number of scalar classes examined.
    """
    n, q, k = spec.n, spec.q, spec.k
    if k == 0:
        return DistanceResult(n + 1, None, 0)
    if k == n:
        return DistanceResult(1, (1,) + (0,) * (n - 1), 0)
    G = generator_matrix(spec, ctx)
    A, piv = rref_mod(G, q)
    if method == "full":
        if _class_count(k, q) > cap:
            raise CapExceeded(f"{_class_count(k, q)} message classes exceed cap {cap}")
        return _full(A, q, n)
    if method != "ordered":
        raise ValueError(f"unknown method {method!r}")
    return _ordered(A, piv, q, n, cap)


def _ordered(A, piv, q, n, cap):
    k = A.shape[0]
    rest = [c for c in range(n) if c not in piv]
    P = A[:, rest]
    best, best_word, examined = n + 1, None, 0
    for w in range(1, k + 1):
        if best <= w:
            break
        classes = comb(k, w) * (q - 1) ** (w - 1)
        if examined + classes > cap:
            raise CapExceeded(f"distance search needs more than {cap} message classes")
        examined += classes
        # value patterns with first coordinate fixed to 1
        vals = np.array([(1,) + t for t in itertools.product(range(1, q), repeat=w - 1)], dtype=np.int64)
        supports = itertools.combinations(range(k), w)
        while True:
            chunk = list(itertools.islice(supports, max(1, _CHUNK // len(vals))))
            if not chunk:
                break
            sup = np.array(chunk, dtype=np.int64)              # (c, w)
            rows = P[sup]                                      # (c, w, n-k)
            words = np.einsum("vw,cwj->cvj", vals, rows) % q   # (c, v, n-k)
            wt = w + np.count_nonzero(words, axis=2)
            i = np.unravel_index(np.argmin(wt), wt.shape)
            if wt[i] < best:
                best = int(wt[i])
                msg = np.zeros(k, dtype=np.int64)
                msg[sup[i[0]]] = vals[i[1]]
                best_word = tuple(int(x) for x in msg @ A % q)
                if best == 1:
                    return DistanceResult(best, best_word, examined)
    return DistanceResult(best, best_word, examined)


def _full(A, q, n):
    k = A.shape[0]
    best, best_word, examined = n + 1, None, 0
    # scalar classes: leading nonzero message coordinate equal to 1
    for lead in range(k):
        tail = k - lead - 1
        total = q ** tail
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            digits = (idx[:, None] // q ** np.arange(tail, dtype=np.int64)) % q
            words = (A[lead] + digits @ A[lead + 1:]) % q
            wt = np.count_nonzero(words, axis=1)
            i = int(np.argmin(wt))
            examined += len(idx)
            if wt[i] < best:
                best = int(wt[i])
                best_word = tuple(int(x) for x in words[i])
    return DistanceResult(best, best_word, examined)


def random_codeword(spec: CyclicCodeSpec, rng: random.Random, ctx: FieldContext | None = None,
                    G: np.ndarray | None = None) -> tuple:
    if spec.k == 0:
        return (0,) * spec.n
    G = generator_matrix(spec, ctx) if G is None else G
    msg = np.array([rng.randrange(spec.q) for _ in range(spec.k)], dtype=np.int64)
    return tuple(int(x) for x in msg @ G % spec.q)


def distance_crosscheck(spec: CyclicCodeSpec, ctx: FieldContext | None = None,
                        sample: int = 100, seed: int = 0) -> bool:
    """Blahut weight equals direct weight on random codewords, and no
    sampled nonzero weight falls below any implemented bound."""
    from .bounds import all_bounds
    from .transform import weight_via_blahut

    if sample <= 0 or spec.k == 0:
        return True
    ctx = ctx or build_field_context(spec.q, spec.n)
    rng = random.Random(seed)
    G = generator_matrix(spec, ctx)
    top = max(o.value for o in all_bounds(spec).values())
    for _ in range(sample):
        c = random_codeword(spec, rng, ctx, G)
        w = sum(1 for x in c if x)
        if weight_via_blahut(c, ctx) != w:
            return False
        if w and w < top:
            return False
    return True
