"""Cyclotomic cosets, defining sets and generator polynomials of cyclic codes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import CoefficientNotInBaseField, GcdError, RangeError
from .gf import FieldContext, Poly
from .usemiring import USym, UVec


def _check_gcd(n, q):
    if gcd(n, q) != 1:
        raise GcdError(f"gcd({n}, {q}) != 1")


def cyclotomic_coset(n: int, q: int, j: int) -> tuple:
    _check_gcd(n, q)
    if not 0 <= j < n:
        raise RangeError(f"exponent {j} outside [0, {n})")
    orbit = {j}
    x = j * q % n
    while x not in orbit:
        orbit.add(x)
        x = x * q % n
    return tuple(sorted(orbit))


@dataclass(frozen=True)
class CosetPartition:
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_of(self, j: int) -> tuple:
        for c in self.classes:
            if j in c:
                return c
        raise RangeError(j)


def coset_partition(n: int, q: int) -> CosetPartition:
    _check_gcd(n, q)
    seen = set()
    classes = []
    for j in range(n):
        if j not in seen:
            c = cyclotomic_coset(n, q, j)
            seen.update(c)
            classes.append(c)
    return CosetPartition(tuple(classes))


def complete_defining_set(n: int, q: int, seed) -> tuple:
    _check_gcd(n, q)
    out = set()
    for j in seed:
        if not 0 <= j < n:
            raise RangeError(f"exponent {j} outside [0, {n})")
        if j not in out:
            out.update(cyclotomic_coset(n, q, j))
    return tuple(sorted(out))


@dataclass(frozen=True)
class CyclicCodeSpec:
    q: int
    n: int
    S: tuple

    def __post_init__(self):
        _check_gcd(self.n, self.q)
        S = tuple(sorted(set(self.S)))
        if any(not 0 <= j < self.n for j in S):
            raise RangeError("defining set exponent out of range")
        Sset = set(S)
        if any(j * self.q % self.n not in Sset for j in S):
            raise ValueError(f"defining set {S} is not a union of cyclotomic cosets")
        object.__setattr__(self, "S", S)

    @property
    def k(self) -> int:
        return self.n - len(self.S)

    def is_trivial(self) -> bool:
        return len(self.S) in (0, self.n)

    def set_text(self) -> str:
        return ",".join(map(str, self.S))

    def scaled(self, u: int) -> "CyclicCodeSpec":
        """The code with defining set u*S, u a unit mod n."""
        if gcd(u, self.n) != 1:
            raise ValueError(f"{u} is not a unit mod {self.n}")
        return CyclicCodeSpec(self.q, self.n, tuple(sorted(u * j % self.n for j in self.S)))


def enumerate_codes(n: int, q: int) -> list:
    classes = coset_partition(n, q).classes
    specs = []
    for mask in range(1 << len(classes)):
        S = []
        for i, c in enumerate(classes):
            if mask >> i & 1:
                S.extend(c)
        specs.append(CyclicCodeSpec(q, n, tuple(sorted(S))))
    return specs


def generator_poly(spec: CyclicCodeSpec, ctx: FieldContext) -> Poly:
    if (ctx.q, ctx.n) != (spec.q, spec.n):
        raise ValueError("context does not match the code")
    F = ctx.field
    g = Poly([1], F)
    for i in spec.S:
        g = g * Poly([F.neg(ctx.alpha_pow(i)), 1], F)
    if any(c >= spec.q for c in g.coeffs):
        raise CoefficientNotInBaseField(f"generator of {spec} leaves F_{spec.q}")
    return g.over(ctx.base)


def r_vector(spec: CyclicCodeSpec) -> UVec:
    S = set(spec.S)
    return UVec(USym.ZERO if i in S else USym.ANY for i in range(spec.n))


_COSET_TOKEN = re.compile(r"^[Cc](\d+)$")


def parse_defining_set(text: str, n: int, q: int) -> tuple:
    """Parse "1,2,4" or "C1+C3" style text into a complete defining set."""
    text = text.strip()
    if not text:
        return ()
    seeds = []
    for tok in re.split(r"[+,\s]+", text):
        if not tok:
            continue
        m = _COSET_TOKEN.match(tok)
        if m:
            seeds.append(int(m.group(1)))
        elif tok.isdigit():
            seeds.append(int(tok))
        else:
            raise ValueError(f"bad defining-set token {tok!r}")
    return complete_defining_set(n, q, seeds)

