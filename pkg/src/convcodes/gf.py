"""Finite fields GF(p^m) in polynomial representation.

Elements are stored by their canonical integer encoding ``sum(c_i * p**i)``
where ``c_0, ..., c_{m-1}`` are the coefficients of the reduced polynomial
(lowest degree first). The encoding is what every file format uses, and it
also makes elements cheap to hash and compare.

Three arithmetic back ends are selected per field:

* prime fields (m == 1): plain modular arithmetic;
* binary fields (p == 2): carry-less integer arithmetic, with log/antilog
  tables when q <= 2**16;
* odd extension fields: coefficient-list polynomials, again with tables
  when q <= 2**16.

All of them agree on semantics; the tables are only a fast path.

>>> F = field_new(11, 1)
>>> int(F(7) + F(5))
1
>>> int(F(2).inv())
6
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from sympy import factorint, isprime

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
)

TABLE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# polynomials over GF(2) packed into Python ints (bit i = coefficient of x^i)
# ---------------------------------------------------------------------------
def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _bmod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while True:
        d = a.bit_length() - 1
        if d < df:
            return a
        a ^= f << (d - df)


def _bgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bmod(a, b)
    return a


def _bmulmod(a: int, b: int, f: int) -> int:
    return _bmod(_clmul(a, b), f)


# ---------------------------------------------------------------------------
# polynomials over GF(p) as coefficient lists, lowest degree first
# ---------------------------------------------------------------------------
def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    lead_inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), f, p)
    return result


def _encode(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        v, c = divmod(v, p)
        out.append(c)
    return out


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if modulus[0] == 0:
        return False
    primes = list(factorint(m))
    if p == 2:
        f = _encode(modulus, 2)

        def frob(k: int) -> int:  # x^(2^k) mod f
            a = 2
            for _ in range(k):
                a = _bmulmod(a, a, f)
            return a

        if frob(m) != 2:
            return False
        return all(_bgcd(frob(m // r) ^ 2, f) == 1 for r in primes)

    f = list(modulus)

    def frob(k: int) -> list[int]:
        return _ppowmod([0, 1], p**k, f, p)

    if _psub(frob(m), [0, 1], p):
        return False
    return all(len(_pgcd(_psub(frob(m // r), [0, 1], p), f, p)) == 1 for r in primes)


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lowest monic irreducible of degree m, scanning integer encodings upward."""
    if m == 1:
        return (0, 1)
    for tail in range(p**m):
        coeffs = _decode(tail, p, m) + [1]
        if coeffs[0] == 0:
            continue
        if p == 2 and sum(coeffs) % 2 == 0:  # divisible by x + 1
            continue
        if is_irreducible(p, coeffs):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^m) defined by a monic irreducible ``modulus``.

    Instances are callables: ``F(v)`` builds the element with integer
    encoding ``v`` and ``F([c0, c1, ...])`` builds one from coefficients.
    """

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    order = q

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __call__(self, value: int | Sequence[int] | FieldElement) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} element given to {self}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"{value} is not an element encoding of {self}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) > self.m or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs} for {self}")
        return FieldElement(self, _encode(coeffs, self.p))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(self, v)

    @cached_property
    def byte_width(self) -> int:
        """Bytes per serialized element: smallest w with q <= 256**w."""
        w = 1
        while 256**w < self.q:
            w += 1
        return w

    @cached_property
    def _bin_modulus(self) -> int:
        return _encode(self.modulus, 2)

    @cached_property
    def _fold(self) -> int | None:
        # low part of a sparse binary modulus, used for fast reduction
        g = self._bin_modulus ^ (1 << self.m)
        return g if g.bit_length() <= self.m // 2 else None

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]] | None:
        if self.m == 1 or self.q > TABLE_LIMIT:
            return None
        g = self._primitive_value
        exp = [0] * (2 * (self.q - 1))
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        exp[self.q - 1:] = exp[: self.q - 1]
        return exp, log

    # -- integer-level kernels ----------------------------------------------
    def add_int(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        return _encode([(x + y) % p for x, y in zip(_decode(a, p, self.m), _decode(b, p, self.m))], p)

    def neg_int(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.m == 1:
            return self.p - a
        p = self.p
        return _encode([(-x) % p for x in _decode(a, p, self.m)], p)

    def sub_int(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.p
        return self.add_int(a, self.neg_int(b))

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            r = _clmul(a, b)
            g = self._fold
            if g is None:
                return _bmod(r, self._bin_modulus)
            m, mask = self.m, (1 << self.m) - 1
            while r >> m:
                r = (r & mask) ^ _clmul(r >> m, g)
            return r
        p, m = self.p, self.m
        prod = _pmul(_decode(a, p, m), _decode(b, p, m), p)
        return _encode(_pmod(prod, self.modulus, p), p)

    def mul_int(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tables
        if t is not None:
            exp, log = t
            return exp[log[a] + log[b]]
        return self._slow_mul(a, b)

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.m == 1:
            return pow(a, -1, self.p)
        t = self._tables
        if t is not None:
            exp, log = t
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        if self.p == 2:
            # extended Euclid over GF(2)[x]
            u, v = a, self._bin_modulus
            g1, g2 = 1, 0
            while u != 1:
                j = u.bit_length() - v.bit_length()
                if j < 0:
                    u, v, g1, g2 = v, u, g2, g1
                    j = -j
                u ^= v << j
                g1 ^= g2 << j
            return _bmod(g1, self._bin_modulus)
        return self.pow_int(a, self.q - 2)

    def pow_int(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_int(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.m == 1:
            return pow(a, e, self.p)
        t = self._tables
        if t is not None:
            exp, log = t
            return exp[log[a] * e % (self.q - 1)]
        return self._slow_pow(a, e)

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def div_int(self, a: int, b: int) -> int:
        return self.mul_int(a, self.inv_int(b))

    # -- primitive element ---------------------------------------------------
    @cached_property
    def _group_prime_factors(self) -> tuple[int, ...]:
        return tuple(sorted(factorint(self.q - 1)))

    @cached_property
    def _primitive_value(self) -> int:
        n = self.q - 1
        if self.m == 1:
            powf = lambda a, e: pow(a, e, self.p)  # noqa: E731
        else:
            powf = self._slow_pow
        for g in range(1, self.q):
            if all(powf(g, n // r) != 1 for r in self._group_prime_factors):
                return g
        raise AssertionError("multiplicative group has no generator")

    def multiplicative_order(self, a: FieldElement) -> int:
        """Order of a nonzero element, from the factorization of q - 1."""
        v = self(a).value
        if v == 0:
            raise DivisionByZero("zero has no multiplicative order")
        order = self.q - 1
        for r, k in factorint(self.q - 1).items():
            for _ in range(k):
                if self.pow_int(v, order // r) == 1:
                    order //= r
                else:
                    break
        return order


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validate (p, m, modulus) and build a field.

    Without a modulus the lowest irreducible polynomial of degree m is used,
    so the same (p, m) always yields the same field.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    if modulus is None:
        return FieldSpec(p, m, find_irreducible(p, m))
    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != m + 1 or coeffs[-1] != 1:
        raise DegreeMismatch(f"modulus {list(coeffs)} is not monic of degree {m}")
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError(f"modulus coefficients must lie in [0, {p})")
    if not is_irreducible(p, coeffs):
        raise NotIrreducible(f"modulus {list(coeffs)} is reducible over GF({p})")
    return FieldSpec(p, m, coeffs)


def primitive_element(field: FieldSpec) -> FieldElement:
    """Smallest (by integer encoding) generator of the multiplicative group."""
    return FieldElement(field, field._primitive_value)


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> list[int]:
        return _decode(self.value, self.field.p, self.field.m)

    def _other(self, other: FieldElement) -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine {self.field} and {other.field} elements")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add_int(self.value, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub_int(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul_int(self.value, b))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div_int(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_int(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_int(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_int(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def smallest_prime_at_least(n: int) -> int:
    n = max(n, 2)
    while not isprime(n):
        n += 1
    return n
