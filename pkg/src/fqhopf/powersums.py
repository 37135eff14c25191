"""Exact power sums over F_q(theta).

Polynomials are tuples of field elements (ints, see :mod:`fqhopf.scalar`),
lowest degree first, with no trailing zeros; the zero polynomial is ``()``.
:class:`RatFunc` keeps fractions reduced with a monic denominator, so equal
values compare equal.

Besides the power sums S_d, S_{<d} and the Carlitz-type sums Si_d, Si_{<d},
the module has the Hoffman dimension recurrence and the matching basis
enumerator, and a checker for the two-term partial fraction identity behind
Chen's product formula.
"""

from __future__ import annotations

import itertools
import json
import re
from functools import lru_cache

from .compspace import LinComb
from .scalar import FieldSpec, nabla

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "ZERO_DEGREE",
    "Poly",
    "poly_degree",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_pow",
    "poly_divmod",
    "poly_gcd",
    "poly_from_roots",
    "theta",
    "const",
    "RatFunc",
    "monic_polys",
    "power_sum_S",
    "power_sum_Slt",
    "power_sum_S_enum",
    "ell",
    "carlitz_sum_Si",
    "carlitz_sum_Silt",
    "S_lt_lincomb",
    "S_lincomb",
    "Si_lt_lincomb",
    "check_partial_fraction",
    "partial_fraction_rhs",
    "hoffman_dimension",
    "hoffman_basis",
]

Poly = tuple
ZERO_DEGREE = -1  # degree of the zero polynomial
DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, count: int, budget: int):
        super().__init__(f"{what} needs {count} polynomial evaluations, budget is {budget}")
        self.count = count
        self.budget = budget


# --- F_q[theta] ----------------------------------------------------------------

def _trim(c: list) -> Poly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly_degree(a: Poly) -> int:
    return len(a) - 1 if a else ZERO_DEGREE


def poly_add(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if F.k == 1:
        p = F.p
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
    else:
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
    return _trim(out)


def poly_neg(F: FieldSpec, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def poly_sub(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, poly_neg(F, b))


def poly_scale(F: FieldSpec, a: Poly, c: int) -> Poly:
    if not c:
        return ()
    return tuple(F.mul(c, x) for x in a)


def poly_mul(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    if F.k == 1:
        p = F.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % p for c in out])
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def poly_pow(F: FieldSpec, a: Poly, n: int) -> Poly:
    result, base = (1,), a
    while n:
        if n & 1:
            result = poly_mul(F, result, base)
        n >>= 1
        if n:
            base = poly_mul(F, base, base)
    return result


def poly_divmod(F: FieldSpec, a: Poly, b: Poly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    quo = [0] * (len(a) - db)
    prime = F.k == 1
    p = F.p
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c * inv % p if prime else F.mul(c, inv)
        quo[i - db] = c
        off = i - db
        if prime:
            for j, y in enumerate(b):
                r[off + j] = (r[off + j] - c * y) % p
        else:
            for j, y in enumerate(b):
                r[off + j] = F.sub(r[off + j], F.mul(c, y))
    return _trim(quo), _trim(r[:db])


def poly_monic(F: FieldSpec, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial when both inputs are zero)."""
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def theta(F: FieldSpec) -> Poly:
    return (0, 1)


def const(F: FieldSpec, c: int) -> Poly:
    return _trim([F.check(c)])


def poly_from_roots(F: FieldSpec, roots) -> Poly:
    out = (1,)
    for r in roots:
        out = poly_mul(F, out, _trim([F.neg(r), 1]))
    return out


_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


def poly_to_text(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else ("θ" if i == 1 else f"θ^{i}")
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts)


_MONO = re.compile(r"^(\d*)\s*\*?\s*(?:([θtT])(?:\s*\^\s*(\d+))?)?$")


def poly_from_text(F: FieldSpec, text: str) -> Poly:
    text = text.strip().translate(_SUPERSCRIPT)
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    out = {}
    for term in re.split(r"\s*\+\s*", text):
        if not term:
            raise ValueError(f"malformed polynomial {text!r}")
        m = _MONO.match(term.strip())
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"malformed polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        e = 0 if not m.group(2) else int(m.group(3) or 1)
        c = c % F.p if F.k == 1 else F.check(c)
        out[e] = F.add(out.get(e, 0), c)
    if not out:
        return ()
    return _trim([out.get(i, 0) for i in range(max(out) + 1)])


# --- F_q(theta) -------------------------------------------------------------------

class RatFunc:
    """A reduced fraction num/den over F_q[theta] with den monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, F: FieldSpec, num: Poly, den: Poly = (1,), *, reduced: bool = False):
        self.field = F
        num, den = tuple(num), tuple(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                den = (1,)
            else:
                g = poly_gcd(F, num, den)
                if g != (1,):
                    num = poly_divmod(F, num, g)[0]
                    den = poly_divmod(F, den, g)[0]
                lead = den[-1]
                if lead != 1:
                    inv = F.inv(lead)
                    num = poly_scale(F, num, inv)
                    den = poly_scale(F, den, inv)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, F):
        return cls(F, (), (1,), reduced=True)

    @classmethod
    def one(cls, F):
        return cls(F, (1,), (1,), reduced=True)

    @classmethod
    def constant(cls, F, c: int):
        return cls(F, const(F, c), (1,), reduced=True)

    @classmethod
    def poly(cls, F, a: Poly):
        return cls(F, a, (1,), reduced=True)

    def _same(self, other):
        if isinstance(other, int):
            return RatFunc.constant(self.field, self.field.from_int(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("mixed fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        F = self.field
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFunc(F, poly_add(F, self.num, other.num), self.den)
        # lcm-based addition keeps intermediate degrees low
        g = poly_gcd(F, self.den, other.den)
        d1 = poly_divmod(F, self.den, g)[0]
        d2 = poly_divmod(F, other.den, g)[0]
        num = poly_add(F, poly_mul(F, self.num, d2), poly_mul(F, other.num, d1))
        return RatFunc(F, num, poly_mul(F, self.den, d2))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, poly_neg(self.field, self.num), self.den, reduced=True)

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = RatFunc.constant(self.field, self.field.from_int(other))
        other = self._same(other)
        if other is NotImplemented:
            return other
        F = self.field
        if not self.num or not other.num:
            return RatFunc.zero(F)
        # cross-cancel first so the products stay reduced
        g1 = poly_gcd(F, self.num, other.den)
        g2 = poly_gcd(F, other.num, self.den)
        n1, d2 = poly_divmod(F, self.num, g1)[0], poly_divmod(F, other.den, g1)[0]
        n2, d1 = poly_divmod(F, other.num, g2)[0], poly_divmod(F, self.den, g2)[0]
        num = poly_mul(F, n1, n2)
        den = poly_mul(F, d1, d2)
        lead = den[-1]
        if lead != 1:
            inv = F.inv(lead)
            num, den = poly_scale(F, num, inv), poly_scale(F, den, inv)
        return RatFunc(F, num, den, reduced=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "RatFunc":
        """Multiply by a field element c (an encoded int)."""
        F = self.field
        if not c:
            return RatFunc.zero(F)
        return RatFunc(F, poly_scale(F, self.num, c), self.den, reduced=True)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        return RatFunc(F, poly_pow(F, self.num, n), poly_pow(F, self.den, n), reduced=True)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.constant(self.field, self.field.from_int(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def is_zero(self):
        return not self.num

    def __repr__(self):
        return f"RatFunc({self.to_text()!r}, F_{self.field.q})"

    def to_text(self) -> str:
        return f"{poly_to_text(self.num)} / {poly_to_text(self.den)}"

    __str__ = to_text

    @classmethod
    def from_text(cls, F: FieldSpec, text: str) -> "RatFunc":
        num, sep, den = text.partition("/")
        return cls(F, poly_from_text(F, num), poly_from_text(F, den) if sep else (1,))

    def to_json(self) -> dict:
        return {"type": "RatFunc", "version": 1, "p": self.field.p, "k": self.field.k,
                "num": list(self.num), "den": list(self.den)}

    @classmethod
    def from_json(cls, obj) -> "RatFunc":
        if isinstance(obj, str):
            obj = json.loads(obj)
        from .scalar import field as _field

        F = _field(obj["p"], obj["k"])
        return cls(F, _trim(list(obj["num"])), _trim(list(obj["den"])))


# --- monic polynomials and power sums ------------------------------------------------

def _budget_check(what, count, budget):
    if budget is not None and count > budget:
        raise BudgetExceeded(what, count, budget)


def monic_polys(F: FieldSpec, d: int, budget: int | None = DEFAULT_BUDGET) -> list:
    """All q^d monic polynomials of degree d, lower coefficients in lexicographic order."""
    if d < 0:
        return []
    _budget_check(f"monic_polys(d={d})", F.q**d, budget)
    return [tuple(reversed(hi)) + (1,) for hi in itertools.product(range(F.q), repeat=d)]


class _PowerSums:
    """Memo tables of S_d, S_{<d}, Si_d, Si_{<d} for one field."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.S = {}
        self.Slt = {}
        self.Si = {}
        self.Silt = {}
        self.ell = {}


@lru_cache(maxsize=None)
def _tables(F: FieldSpec) -> _PowerSums:
    return _PowerSums(F)


def _tuple(s) -> tuple:
    s = tuple(s)
    for x in s:
        if not isinstance(x, int) or x < 1:
            raise ValueError(f"index {x!r} is not a positive integer")
    return s


def _depth_one(F, d, k, budget):
    T = _tables(F)
    key = (d, k)
    r = T.S.get(key)
    if r is None:
        total = RatFunc.zero(F)
        for a in monic_polys(F, d, budget):
            total = total + RatFunc(F, (1,), poly_pow(F, a, k), reduced=True)
        r = T.S[key] = total
    return r


def power_sum_S(F: FieldSpec, d: int, s, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    """Sum of 1/(a_1^s_1 ... a_r^s_r) over monic a_i with d = deg a_1 > ... > deg a_r."""
    s = _tuple(s)
    if not s:
        return RatFunc.one(F) if d == 0 else RatFunc.zero(F)
    if d < len(s) - 1:
        return RatFunc.zero(F)
    T = _tables(F)
    key = (d, s)
    r = T.S.get(key)
    if r is None:
        r = _depth_one(F, d, s[0], budget)
        if len(s) > 1:
            r = r * power_sum_Slt(F, d, s[1:], budget)
        T.S[key] = r
    return r


def power_sum_Slt(F: FieldSpec, d: int, s, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    """Sum of S_i(s) over 0 <= i < d; equal to 1 for the empty tuple."""
    s = _tuple(s)
    if not s:
        return RatFunc.one(F)
    T = _tables(F)
    key = (d, s)
    r = T.Slt.get(key)
    if r is None:
        r = RatFunc.zero(F)
        for i in range(len(s) - 1, d):
            r = r + power_sum_S(F, i, s, budget)
        T.Slt[key] = r
    return r


def power_sum_S_enum(F: FieldSpec, d: int, s, budget: int | None = DEFAULT_BUDGET, below: bool = False) -> RatFunc:
    """S_d(s) (or S_{<d}(s) when ``below``) by enumerating every admissible tuple of monics."""
    s = _tuple(s)
    r = len(s)
    if r == 0:
        return RatFunc.one(F) if (below or d == 0) else RatFunc.zero(F)
    tops = range(0, d) if below else [d]
    chains = []
    for top in tops:
        if top < 0:
            continue
        for rest in itertools.combinations(range(top - 1, -1, -1), r - 1):
            chains.append((top,) + rest)
    count = sum(F.q ** sum(c) for c in chains)
    _budget_check(f"enumeration of S_{d}{s}", count, budget)
    total = RatFunc.zero(F)
    for degs in chains:
        for polys in itertools.product(*(monic_polys(F, e, None) for e in degs)):
            den = (1,)
            for a, e in zip(polys, s):
                den = poly_mul(F, den, poly_pow(F, a, e))
            total = total + RatFunc(F, (1,), den, reduced=True)
    return total


def ell(F: FieldSpec, d: int, budget: int | None = DEFAULT_BUDGET) -> Poly:
    """prod_{i=1}^d (theta - theta^(q^i)); ell(0) = 1."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    _budget_check(f"ell({d})", F.q**d, budget)
    T = _tables(F)
    r = T.ell.get(d)
    if r is None:
        r = (1,)
        for i in range(1, d + 1):
            factor = [0] * (F.q**i + 1)
            factor[1] = 1
            factor[-1] = F.neg(1)
            r = poly_mul(F, r, _trim(factor))
        T.ell[d] = r
    return r


def carlitz_sum_Si(F: FieldSpec, d: int, s, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    """Sum of 1/(ell_{d_1}^s_1 ... ell_{d_n}^s_n) over d = d_1 > ... > d_n >= 0."""
    s = _tuple(s)
    if not s:
        return RatFunc.one(F) if d == 0 else RatFunc.zero(F)
    if d < len(s) - 1:
        return RatFunc.zero(F)
    T = _tables(F)
    key = (d, s)
    r = T.Si.get(key)
    if r is None:
        r = RatFunc(F, (1,), poly_pow(F, ell(F, d, budget), s[0]))
        if len(s) > 1:
            r = r * carlitz_sum_Silt(F, d, s[1:], budget)
        T.Si[key] = r
    return r


def carlitz_sum_Silt(F: FieldSpec, d: int, s, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    s = _tuple(s)
    if not s:
        return RatFunc.one(F)
    T = _tables(F)
    key = (d, s)
    r = T.Silt.get(key)
    if r is None:
        r = RatFunc.zero(F)
        for i in range(len(s) - 1, d):
            r = r + carlitz_sum_Si(F, i, s, budget)
        T.Silt[key] = r
    return r


def _linear(fn, x: LinComb, d, budget):
    F = x.field
    total = RatFunc.zero(F)
    for w, c in x.items():
        total = total + fn(F, d, w, budget).scale(c)
    return total


def S_lincomb(x: LinComb, d: int, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    """S_d extended linearly to combinations of words."""
    return _linear(power_sum_S, x, d, budget)


def S_lt_lincomb(x: LinComb, d: int, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    return _linear(power_sum_Slt, x, d, budget)


def Si_lt_lincomb(x: LinComb, d: int, budget: int | None = DEFAULT_BUDGET) -> RatFunc:
    return _linear(carlitz_sum_Silt, x, d, budget)


# --- partial fractions ----------------------------------------------------------------

def partial_fraction_rhs(F: FieldSpec, a: Poly, b: Poly, r: int, s: int) -> RatFunc:
    """Sum over i + j = r + s (i, j >= 1) of nabla^j_s/((a-b)^j a^i) + nabla^j_r/((b-a)^j b^i)."""
    if a == b:
        raise ValueError("the identity needs a != b")
    A = RatFunc.poly(F, a)
    B = RatFunc.poly(F, b)
    diff = A - B
    total = RatFunc.zero(F)
    for j in range(1, r + s):
        i = r + s - j
        cs = F.from_int(nabla(j, s, F.p))
        cr = F.from_int(nabla(j, r, F.p))
        if cs:
            total = total + (diff ** (-j) * A ** (-i)).scale(cs)
        if cr:
            total = total + ((-diff) ** (-j) * B ** (-i)).scale(cr)
    return total


def check_partial_fraction(F: FieldSpec, a: Poly, b: Poly, r: int, s: int) -> bool:
    """True iff 1/(a^r b^s) equals the two-term expansion above."""
    if a == b:
        raise ValueError("the identity needs a != b")
    if not a or not b:
        raise ZeroDivisionError("a and b must be nonzero")
    lhs = RatFunc(F, (1,), poly_mul(F, poly_pow(F, a, r), poly_pow(F, b, s)))
    return lhs == partial_fraction_rhs(F, a, b, r, s)


# --- Hoffman enumerators -----------------------------------------------------------------

def hoffman_dimension(w: int, q: int) -> int:
    """d(0)=1, d(w)=2^(w-1) for w<q, d(q)=2^(q-1)-1, then d(w)=d(w-1)+...+d(w-q)."""
    if w < 0:
        raise ValueError("w must be nonnegative")
    vals = []
    for n in range(w + 1):
        if n == 0:
            v = 1
        elif n < q:
            v = 2 ** (n - 1)
        elif n == q:
            v = 2 ** (q - 1) - 1
        else:
            v = sum(vals[n - i] for i in range(1, q + 1))
        vals.append(v)
    return vals[w]


def hoffman_basis(w: int, q: int) -> list:
    """Tuples of weight w with s_i <= q before the last entry and s_r < q."""
    out = []

    def rec(rem, prefix):
        if rem == 0:
            if not prefix or prefix[-1] < q:
                out.append(tuple(prefix))
            return
        for s in range(1, min(q, rem) + 1):
            prefix.append(s)
            rec(rem - s, prefix)
            prefix.pop()

    rec(w, [])
    return out
