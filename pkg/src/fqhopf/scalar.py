"""Finite fields, binomials mod p and the structure coefficients of the word algebra.

Elements of F_q (q = p^k) are encoded as integers in ``range(q)``: the base-p
digits of the integer are the coefficients of a polynomial in the generator,
lowest degree first.  For k = 1 this is the usual residue, so an element of
F_p is represented by the same integer in every extension.

For k > 1 the field is F_p[x] / (m) where m is the lexicographically smallest
monic irreducible of degree k, coefficients compared from the constant term up.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

__all__ = [
    "MAX_INT",
    "FieldSpec",
    "Scalar",
    "field",
    "field_from_q",
    "is_prime",
    "lucas_binomial",
    "binomial_mod",
    "nabla",
    "delta_j",
    "delta_jk",
    "chen_delta",
]

MAX_INT = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


# --- polynomials over F_p as coefficient lists (low degree first) -----------

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _is_irreducible(m, p):
    # brute force: no monic factor of degree 1..deg/2
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, k: int) -> tuple:
    if k == 1:
        return (0, 1)
    # low-to-high lexicographic order: constant term is the most significant key
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if low[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("an irreducible polynomial always exists")


class FieldSpec:
    """The finite field F_q with q = p**k.

    Elements are plain ints in ``range(q)`` (see the module docstring); the
    methods below implement the field operations on that encoding.
    """

    __slots__ = ("p", "k", "q", "modulus", "_mul", "_inv")

    def __init__(self, p: int, k: int = 1):
        if not isinstance(p, int) or not isinstance(k, int):
            raise TypeError("p and k must be integers")
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if k < 1:
            raise ValueError(f"k={k} must be at least 1")
        if p**k > MAX_INT:
            raise ValueError(f"q={p}^{k} exceeds the supported integer width")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = _smallest_irreducible(p, k)
        self._mul = None
        self._inv = None
        if k > 1:
            self._build_tables()

    # equality by (p, k): the modulus is a deterministic function of both
    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k})"

    def __reduce__(self):
        return (field, (self.p, self.k))

    def describe(self) -> str:
        """One-line header: order, characteristic and modulus."""
        if self.k == 1:
            return f"F_{self.q} (p={self.p}, k=1, prime field)"
        return f"F_{self.q} (p={self.p}, k={self.k}, modulus {self.modulus_text()})"

    def modulus_text(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    # -- encoding ---------------------------------------------------------
    def to_vector(self, a: int) -> list:
        v = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            v.append(r)
        return v

    def from_vector(self, v) -> int:
        out = 0
        for c in reversed(list(v)):
            out = out * self.p + c % self.p
        return out

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of F_{self.q}")
        return a

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def generator(self) -> int:
        """The class of x in F_p[x]/(modulus) for k > 1; the unit 1 when k = 1."""
        return self.p if self.k > 1 else 1

    def elements(self):
        return range(self.q)

    def _build_tables(self):
        q, p = self.q, self.p
        vecs = [self.to_vector(a) for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.k - 1)
                for i, x in enumerate(vecs[a]):
                    if x:
                        for j, y in enumerate(vecs[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                c = self.from_vector(_poly_mod(prod, list(self.modulus), p))
                mul[a][b] = mul[b][a] = c
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self._inv = inv

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, place = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_vector([-c for c in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.k == 1:
            return pow(a, n, self.p)
        result = 1
        while n:
            if n & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            n >>= 1
        return result

    def scalar(self, a: int) -> "Scalar":
        return Scalar(self, a)


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FieldSpec:
    """Shared FieldSpec instance for (p, k)."""
    return FieldSpec(p, k)


def _prime_power(q: int):
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q={q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, k


def field_from_q(q: int) -> FieldSpec:
    return field(*_prime_power(q))


class Scalar:
    """An element of F_q bundled with its field, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, fld: FieldSpec, value: int):
        self.field = fld
        self.value = fld.check(value)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Scalar({self.value} in F_{self.field.q})"


# --- binomials and structure coefficients ------------------------------------

def lucas_binomial(a: int, b: int, p: int) -> int:
    """binom(a, b) mod p, digit by digit in base p."""
    if a < 0 or b < 0:
        raise ValueError("lucas_binomial needs nonnegative arguments")
    result = 1
    while b:
        a, ad = divmod(a, p)
        b, bd = divmod(b, p)
        if bd > ad:
            return 0
        result = result * math.comb(ad, bd) % p
    return result % p


def binomial_mod(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p for any integer n, using binom(n,k) = (-1)^k binom(k-n-1,k) when n < 0."""
    if k < 0:
        return 0
    if n >= 0:
        return lucas_binomial(n, k, p)
    c = lucas_binomial(k - n - 1, k, p)
    return c if k % 2 == 0 else (-c) % p


def nabla(j: int, r: int, p: int) -> int:
    """(-1)^r binom(j-1, r-1) mod p."""
    c = lucas_binomial(j - 1, r - 1, p) if r >= 1 and j >= 1 else 0
    return c if r % 2 == 0 else (-c) % p


def delta_j(j: int, q: int) -> int:
    """Sum of lambda^(-j) over F_q^x, as an element of F_p."""
    p = field_from_q(q).p
    return p - 1 if j % (q - 1) == 0 else 0


def delta_jk(j: int, k: int, q: int) -> int:
    """Sum of lambda^(-j) mu^(-k) over distinct lambda, mu in F_q^x (literal double sum)."""
    F = field_from_q(q)
    total = 0
    for lam in range(1, F.q):
        a = F.pow(lam, -j)
        for mu in range(1, F.q):
            if mu != lam:
                total = F.add(total, F.mul(a, F.pow(mu, -k)))
    return total


def chen_delta(a: int, b: int, i: int, q: int) -> int:
    """Chen's coefficient of S_d(a+b-i, i) in S_d(a) S_d(b), as an element of F_p."""
    p = field_from_q(q).p
    if not 0 < i < a + b or i % (q - 1):
        return 0
    c1 = lucas_binomial(i - 1, a - 1, p) if a >= 1 else 0
    c2 = lucas_binomial(i - 1, b - 1, p) if b >= 1 else 0
    if a % 2 == 0:
        c1 = -c1
    if b % 2 == 0:
        c2 = -c2
    return (c1 + c2) % p
