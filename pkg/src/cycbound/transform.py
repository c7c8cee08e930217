"""Discrete Fourier transform over the splitting field and Blahut's theorem."""

from __future__ import annotations

from .errors import LengthMismatch
from .gf import Field, FieldContext


def dft(word, ctx: FieldContext) -> list:
    """A_i = sum_j a_j alpha^(i*j), component A_0 first."""
    n = ctx.n
    if len(word) != n:
        raise LengthMismatch(f"word of length {len(word)}, expected {n}")
    F = ctx.field
    support = [(j, a % ctx.q) for j, a in enumerate(word) if a % ctx.q]
    out = []
    for i in range(n):
        acc = 0
        for j, a in support:
            acc = F.add(acc, F.scale(a, ctx.alpha_pow(i * j)))
        out.append(acc)
    return out


def circulant(v) -> list:
    """Row 0 is v; each next row is the right rotation of the previous one."""
    n = len(v)
    return [[v[(j - i) % n] for j in range(n)] for i in range(n)]


def rank(M, field: Field) -> int:
    """Row rank by Gaussian elimination over `field`."""
    A = [list(r) for r in M]
    if not A:
        return 0
    F = field
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(r + 1, rows):
            f = A[i][c]
            if f:
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def weight_via_blahut(word, ctx: FieldContext) -> int:
    return rank(circulant(dft(word, ctx)), ctx.field)


def hamming_weight(word) -> int:
    return sum(1 for x in word if x)
