"""Arithmetic in F_q (q prime) and in the extension E = F_{q^n}.

Elements of E are stored as integer *codes*: the coefficient vector
``(c_0, ..., c_{n-1})`` of ``c_0 + c_1 x + ... + c_{n-1} x^{n-1}`` packed in
base q, so ``code = sum(c_i * q**i)``.  Codes ``0..q-1`` are exactly the base
field.  Multiplicative work goes through exponent/log tables built once at
construction; this keeps everything exact and cheap for q^n up to about 2^20.

Polynomials are always written in ascending coefficient order (constant term
first), e.g. ``[1, 0, 1, 0, 0, 1]`` for ``x^5 + x^2 + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    LogOfZero,
    NonPrimeModulus,
    NotIrreducible,
    NotPrimitive,
    PrimePowerUnsupported,
    WrongDegree,
)

# tables are materialised in full; refuse anything far beyond desk scale
MAX_FIELD_SIZE = 1 << 22


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of ``m`` by trial division, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_prime_power(m: int) -> bool:
    fs = prime_factors(m)
    return len(fs) == 1


# --- dense polynomial helpers over F_q (ascending lists) ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], q: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``f``."""
    a = _trim([c % q for c in a])
    df = len(f) - 1
    while len(a) - 1 >= df:
        lead = a[-1]
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - lead * fc) % q
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % q
    return _poly_mod(prod, f, q)


def _x_power_mod(e: int, f: Sequence[int], q: int) -> list[int]:
    result: list[int] = [1]
    base = _poly_mod([0, 1], f, q)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, q)
        base = _poly_mulmod(base, base, f, q)
        e >>= 1
    return result


def _monic_polys(degree: int, q: int) -> Iterable[list[int]]:
    for m in range(q**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(m % q)
            m //= q
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = list(poly)
    n = len(f) - 1
    if n <= 0:
        return False
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(d, q):
            if not _poly_mod(f, g, q):
                return False
    return True


def normalize_poly(poly: Sequence[int], q: int) -> tuple[int, ...]:
    """Reduce coefficients mod q, drop trailing zeros and make the polynomial monic."""
    f = _trim([int(c) % q for c in poly])
    if not f:
        raise WrongDegree("modulus polynomial is zero")
    lead_inv = pow(f[-1], q - 2, q)
    return tuple(c * lead_inv % q for c in f)


# --- field context -----------------------------------------------------------

class FieldContext:
    """F_q and E = F_{q^n} = F_q[x]/(f) with f primitive.

    Immutable once built. ``exp_table[e]`` is the code of alpha^e and
    ``log_table[code]`` its discrete log (``-1`` for zero).
    """

    def __init__(self, q: int, n: int, modulus_poly: tuple[int, ...],
                 exp_table: list[int], log_table: list[int]):
        self.q = q
        self.n = n
        self.modulus_poly = modulus_poly
        self.size = q**n
        self.group_order = self.size - 1
        self.gamma_order = self.group_order // (q - 1)
        self.exp_table = exp_table
        self.log_table = log_table
        self.fstar_exponents = tuple(range(0, self.group_order, self.gamma_order))

    def __repr__(self) -> str:
        return f"FieldContext(q={self.q}, n={self.n}, poly={list(self.modulus_poly)})"

    # conversions
    def vector(self, code: int) -> tuple[int, ...]:
        q = self.q
        out = []
        for _ in range(self.n):
            out.append(code % q)
            code //= q
        return tuple(out)

    def code(self, vector: Sequence[int]) -> int:
        if len(vector) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(vector)}")
        c = 0
        for d in reversed(vector):
            c = c * self.q + (int(d) % self.q)
        return c

    def exp(self, e: int) -> int:
        return self.exp_table[e % self.group_order]

    def log(self, code: int) -> int:
        if code == 0:
            raise LogOfZero("discrete log of zero")
        return self.log_table[code]

    def in_base_field(self, code: int) -> bool:
        return code < self.q

    def is_fstar_exponent(self, e: int) -> bool:
        return e % self.gamma_order == 0

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        q = self.q
        if q == 2:
            return a ^ b
        res, place = 0, 1
        while a or b:
            res += ((a % q + b % q) % q) * place
            a //= q
            b //= q
            place *= q
        return res

    def neg(self, a: int) -> int:
        q = self.q
        if q == 2:
            return a
        res, place = 0, 1
        while a:
            res += ((-(a % q)) % q) * place
            a //= q
            place *= q
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.group_order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.exp_table[-self.log_table[a] % self.group_order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp_table[self.log_table[a] * e % self.group_order]

    def frobenius(self, a: int) -> int:
        if a == 0:
            return 0
        return self.exp_table[self.log_table[a] * self.q % self.group_order]

    # element views
    def element(self, value: int | str | Sequence[int] | FieldElement) -> FieldElement:
        """Build an element from a code, an ``a^e`` string or a coefficient list."""
        if isinstance(value, FieldElement):
            return FieldElement(self, value.code)
        if isinstance(value, str):
            return FieldElement(self, parse_element(self, value))
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise ValueError(f"code {value} outside field of size {self.size}")
            return FieldElement(self, value)
        return FieldElement(self, self.code(value))

    def power_of_alpha(self, e: int) -> FieldElement:
        return FieldElement(self, self.exp(e))

    @property
    def alpha(self) -> FieldElement:
        return FieldElement(self, self.exp(1))

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "poly": list(self.modulus_poly)}


_ELEM_RE = re.compile(r"^\s*(?:a|alpha)\s*\^\s*(-?\d+)\s*$")


def parse_element(ctx: FieldContext, text: str) -> int:
    """Parse ``a^e`` / ``alpha^e`` / ``0`` / ``1`` / ``c0,c1,...`` into a code."""
    text = text.strip()
    m = _ELEM_RE.match(text)
    if m:
        return ctx.exp(int(m.group(1)))
    if text in ("a", "alpha"):
        return ctx.exp(1)
    if "," in text or text.startswith("["):
        digits = [int(t) for t in text.strip("[]").split(",") if t.strip()]
        return ctx.code(digits)
    if text.lstrip("-").isdigit():
        return int(text) % ctx.q
    raise ValueError(f"cannot parse field element {text!r}")


def parse_poly(text: str | Sequence[int]) -> list[int]:
    if isinstance(text, str):
        return [int(t) for t in text.strip("[] ").split(",") if t.strip()]
    return [int(c) for c in text]


@dataclass(frozen=True)
class FieldElement:
    """An element of E; arithmetic operators dispatch through the context tables."""

    ctx: FieldContext
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different fields")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.q
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.vector(self.code)

    @property
    def log(self) -> int:
        return self.ctx.log(self.code)

    def in_base_field(self) -> bool:
        return self.ctx.in_base_field(self.code)

    def __repr__(self) -> str:
        if self.code == 0:
            return "0"
        return f"a^{self.log}"


def make_field(q: int, n: int, poly: Sequence[int] | str) -> FieldContext:
    """Build E = F_q[x]/(poly), verifying that ``poly`` is primitive.

    Raises NonPrimeModulus (PrimePowerUnsupported for p^m, m > 1),
    WrongDegree, NotIrreducible or NotPrimitive.
    """
    q, n = int(q), int(n)
    if not is_prime(q):
        if q > 1 and _is_prime_power(q):
            raise PrimePowerUnsupported(
                f"q={q} is a prime power; only prime base fields are supported")
        raise NonPrimeModulus(f"q={q} is not prime")
    if n < 2:
        raise WrongDegree(f"extension degree must be >= 2, got n={n}")
    if q**n > MAX_FIELD_SIZE:
        raise ValueError(f"field of size {q}^{n} exceeds the table limit {MAX_FIELD_SIZE}")
    f = normalize_poly(parse_poly(poly), q)
    if len(f) - 1 != n:
        raise WrongDegree(f"polynomial has degree {len(f) - 1}, expected {n}")
    if not is_irreducible(f, q):
        raise NotIrreducible(f"{list(f)} is reducible over F_{q}")
    order = q**n - 1
    for p in prime_factors(order):
        if _x_power_mod(order // p, f, q) == [1]:
            raise NotPrimitive(
                f"{list(f)} is irreducible but its root has order dividing {order // p} < {order}")

    size = q**n
    exp_table = [0] * order
    log_table = [-1] * size
    digits = [1] + [0] * (n - 1)
    for e in range(order):
        c = 0
        for d in reversed(digits):
            c = c * q + d
        exp_table[e] = c
        log_table[c] = e
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            for i in range(n):
                digits[i] = (digits[i] - top * f[i]) % q
    return FieldContext(q, n, f, exp_table, log_table)


# functional surface mirroring the element operators

def frobenius(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.frobenius(x.code))


def discrete_log(x: FieldElement) -> int:
    return x.ctx.log(x.code)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e
