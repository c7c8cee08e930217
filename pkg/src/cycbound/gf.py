"""Prime and extension field arithmetic, roots of unity and polynomials.

Field elements are plain ints: the coefficient vector (c_0, ..., c_{m-1}) of
an element in the polynomial basis is stored as sum(c_i * q**i).  Elements of
the prime field F_q are therefore the ints 0..q-1 in every extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd

import sympy

from .errors import FieldMismatch, GcdError, NotPrimeError

TABLE_LIMIT = 1 << 16


def multiplicative_order(q: int, n: int) -> int:
    """Least m >= 1 with q**m = 1 mod n."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    if gcd(n, q) != 1:
        raise GcdError(f"gcd({n}, {q}) != 1")
    if n == 1:
        return 1
    m, x = 1, q % n
    while x != 1:
        x = x * q % n
        m += 1
    return m


# --- dense polynomials over the prime field, as lists low degree first ---

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmod(a, f, q):
    a = [c % q for c in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, q)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % q
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % q
        _trim(a)
    return a


def _pmulmod(a, b, f, q):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pmod(prod, f, q)


def _ppowmod(a, e, f, q):
    result = [1]
    base = _pmod(list(a), f, q)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, q)
        base = _pmulmod(base, base, f, q)
        e >>= 1
    return result


def _pgcd(a, b, q):
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    while b:
        a, b = b, _pmod(a, b, q)
    return a


def is_irreducible(f, q: int) -> bool:
    """Ben-Or test for a polynomial over the prime field F_q."""
    f = _trim([c % q for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _ppowmod(xp, q, f, q)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % q
        if len(_pgcd(f, _trim(diff), q)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def first_irreducible(q: int, m: int) -> tuple:
    """Monic irreducible of degree m whose low coefficients have the smallest base-q encoding."""
    for code in range(q ** m):
        low = [(code // q ** i) % q for i in range(m)]
        f = low + [1]
        if is_irreducible(f, q):
            return tuple(f)
    raise ArithmeticError(f"no irreducible of degree {m} over F_{q}")


class Field:
    """F_{q^m} in the polynomial basis of a monic irreducible modulus."""

    def __init__(self, q: int, modulus):
        if not sympy.isprime(q):
            raise NotPrimeError(f"q={q} is not prime")
        self.q = q
        self.modulus = tuple(modulus)
        self.m = len(self.modulus) - 1
        self.order = q ** self.m
        self._powers = [q ** i for i in range(self.m)]
        self._exp = self._log = self._zech = None
        if q == 2:
            self._modint = sum(c << i for i, c in enumerate(self.modulus))
        if self.order <= TABLE_LIMIT and self.m > 1:
            self._build_tables()

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    def __repr__(self):
        return f"Field(q={self.q}, modulus={self.modulus})"

    # conversions
    def digits(self, a: int) -> list:
        q = self.q
        out = []
        for _ in range(self.m):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        return sum((c % self.q) * p for c, p in zip(coeffs, self._powers))

    # arithmetic
    def add(self, a: int, b: int) -> int:
        q = self.q
        if q == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % q
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            la, lb = self._log[a], self._log[b]
            z = self._zech[(lb - la) % (self.order - 1)]
            if z < 0:
                return 0
            return self._exp[(la + z) % (self.order - 1)]
        return self.element(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        q = self.q
        if q == 2 or a == 0:
            return a
        if self.m == 1:
            return (-a) % q
        return self.element(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale(self, c: int, a: int) -> int:
        """Multiply by a prime-field scalar c."""
        if self.m == 1:
            return c * a % self.q
        return self.mul(c % self.q, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.q
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_slow(a, b)

    def _mul_slow(self, a, b):
        m, q = self.m, self.q
        if q == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m & 1:
                    a ^= self._modint
            return r
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % q
            if c:
                base = k - m
                for i in range(m):
                    prod[base + i] -= c * mod[i]
        return self.element(prod[:m])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.q)
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._inv_euclid(a)

    def _inv_euclid(self, a):
        # extended Euclid over F_q[x] on (modulus, a)
        q = self.q
        r0, r1 = list(self.modulus), _trim(self.digits(a))
        s0, s1 = [], [1]
        while r1:
            # polynomial division r0 / r1
            quot = [0] * max(0, len(r0) - len(r1) + 1)
            rem = list(r0)
            inv_lead = pow(r1[-1], -1, q)
            while len(rem) >= len(r1) and rem:
                c = rem[-1] * inv_lead % q
                shift = len(rem) - len(r1)
                quot[shift] = c
                for i, x in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - c * x) % q
                _trim(rem)
            prod = [0] * (len(quot) + len(s1))
            for i, x in enumerate(quot):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            s_next = [((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % q
                      for i in range(max(len(s0), len(prod)))]
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(s_next)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, q)
        return self.element(x * c for x in s0)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # structure
    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.order - 1
        k = n
        for p, e in sympy.factorint(n).items():
            for _ in range(e):
                if self.pow(a, k // p) == 1:
                    k //= p
                else:
                    break
        return k

    def generator(self) -> int:
        """Smallest int encoding of a multiplicative generator."""
        if self._exp is not None:
            return self._exp[1] if self.order > 2 else 1
        return _first_generator(self)

    def _build_tables(self):
        g = _first_generator(self)
        n = self.order - 1
        exp = [0] * n
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        zech = [0] * n
        for k in range(n):
            s = self.add_digits(1, exp[k])
            zech[k] = -1 if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech

    def add_digits(self, a, b):
        if self.q == 2:
            return a ^ b
        return self.element(x + y for x, y in zip(self.digits(a), self.digits(b)))


def _first_generator(F: Field) -> int:
    n = F.order - 1
    if n == 1:
        return 1
    primes = list(sympy.factorint(n))
    for g in range(2, F.order):
        if all(_pow_slow(F, g, n // p) != 1 for p in primes):
            return g
    raise ArithmeticError("no generator found")


def _pow_slow(F, a, e):
    result = 1
    while e:
        if e & 1:
            result = F._mul_slow(result, a) if F.m > 1 else result * a % F.q
        a = F._mul_slow(a, a) if F.m > 1 else a * a % F.q
        e >>= 1
    return result


@lru_cache(maxsize=None)
def prime_field(q: int) -> Field:
    return Field(q, (0, 1))


@dataclass(frozen=True, eq=False)
class FieldContext:
    """F_q, its splitting field for x^n - 1 and a primitive n-th root of unity."""

    q: int
    n: int
    m_ext: int
    modulus_poly: tuple
    alpha: int
    field: Field = dc_field(repr=False)
    base: Field = dc_field(repr=False)

    def alpha_pow(self, i: int) -> int:
        return self._alpha_powers[i % self.n]

    @property
    def _alpha_powers(self):
        cached = self.__dict__.get("_ap")
        if cached is None:
            cached = [1] * self.n
            for i in range(1, self.n):
                cached[i] = self.field.mul(cached[i - 1], self.alpha)
            object.__setattr__(self, "_ap", cached)
        return cached

    def coeffs(self, e: int) -> list:
        return self.field.digits(e)

    def element(self, coeffs) -> int:
        return self.field.element(coeffs)


@lru_cache(maxsize=256)
def build_field_context(q: int, n: int) -> FieldContext:
    if not sympy.isprime(q):
        raise NotPrimeError(f"q={q} is not prime")
    m = multiplicative_order(q, n)
    modulus = first_irreducible(q, m)
    F = Field(q, modulus)
    g = F.generator()
    alpha = F.pow(g, (F.order - 1) // n)
    return FieldContext(q=q, n=n, m_ext=m, modulus_poly=modulus, alpha=alpha,
                        field=F, base=prime_field(q))


def context_with_alpha(ctx: FieldContext, alpha: int) -> FieldContext:
    """Same field, different primitive n-th root of unity."""
    F = ctx.field
    if F.pow(alpha, ctx.n) != 1 or any(F.pow(alpha, ctx.n // p) == 1 for p in sympy.factorint(ctx.n)):
        raise ValueError("alpha is not a primitive n-th root of unity")
    return FieldContext(q=ctx.q, n=ctx.n, m_ext=ctx.m_ext, modulus_poly=ctx.modulus_poly,
                        alpha=alpha, field=F, base=ctx.base)


class Poly:
    """Polynomial with coefficients in a Field, low degree first, trimmed."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: Field):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.field = field

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)], F)

    def __neg__(self):
        return Poly([self.field.neg(x) for x in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly((), F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(out, F)

    def divmod(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * max(0, len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = F.mul(rem[k], inv_lead)
            if c:
                quot[k - d] = c
                for i, y in enumerate(other.coeffs):
                    rem[k - d + i] = F.sub(rem[k - d + i], F.mul(c, y))
        return Poly(quot, F), Poly(rem[:d], F)

    def __call__(self, x: int, field: Field | None = None) -> int:
        return poly_eval(self, x, field)

    def over(self, field: Field) -> "Poly":
        """Reinterpret coefficients in another field sharing the same prime field."""
        if field.q != self.field.q:
            raise FieldMismatch("different characteristic")
        if field.m < self.field.m and any(c >= field.order for c in self.coeffs):
            raise FieldMismatch("coefficients outside the target field")
        return Poly(self.coeffs, field)


def x_n_minus_1(n: int, F: Field) -> Poly:
    return Poly([F.neg(1)] + [0] * (n - 1) + [1], F)


def poly_mul_mod(a: Poly, b: Poly, n: int) -> Poly:
    """a*b reduced mod x^n - 1."""
    a._check(b)
    F = a.field
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    k = (i + j) % n
                    out[k] = F.add(out[k], F.mul(x, y))
    return Poly(out, F)


def poly_eval(p: Poly, x: int, field: Field | None = None) -> int:
    """Horner evaluation; `field` may be an extension of p's coefficient field."""
    F = field or p.field
    if F.q != p.field.q:
        raise FieldMismatch("different characteristic")
    acc = 0
    for c in reversed(p.coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc
