"""Coproducts, counit and antipodes for the shuffle and stuffle Hopf algebras.

``Coalgebra(q)`` holds the memo tables for one field order.  Tensors are
handled internally as ``{(left, right): residue mod p}`` dicts and wrapped
into :class:`~fqhopf.compspace.Tensor2` at the public boundary.

The shuffle coproduct of a single letter x_w is defined through the products
of lower-weight coproducts, so :meth:`Coalgebra.populate` fills the table in
ascending weight; a request for x_w triggers that fill automatically.
"""

from __future__ import annotations

import os

from .compspace import LinComb, Tensor2, Word, parse_tensor, serialize
from .products import WordAlgebra, _acc, algebra, bracket_w
from .scalar import FieldSpec, binomial_mod, chen_delta, field_from_q

__all__ = [
    "Coalgebra",
    "coalgebra",
    "coproduct_shuffle",
    "coproduct_depth_one_closed",
    "coproduct_depth_one_small",
    "coproduct_shi",
    "coproduct_stuffle",
    "counit",
    "antipode_shuffle",
    "antipode_stuffle",
    "antipode_stuffle_recursive",
    "tensor_product",
    "CoproductCache",
    "CACHE_FORMAT",
]

ONE_ONE = ((), ())


def _tensor_mul(alg: WordAlgebra, kern_left, kern_right, x: dict, y: dict) -> dict:
    """(a (x) b)(c (x) d) = (a.c) (x) (b.d), extended bilinearly."""
    p = alg.p
    out = {}
    for (a, b), c in x.items():
        for (a2, b2), c2 in y.items():
            left = kern_left(a, a2)
            if not left:
                continue
            right = kern_right(b, b2)
            cc = c * c2
            for l, cl in left.items():
                ccl = cc * cl
                for r, cr in right.items():
                    _acc(out, (l, r), ccl * cr, p)
    return out


class Coalgebra:
    """Memoized coproducts and antipodes for field order q."""

    def __init__(self, q: int):
        self.q = q
        self.alg = algebra(q)
        self.p = self.alg.p
        self._cop = {(): {ONE_ONE: 1}, (1,): {((), (1,)): 1, ((1,), ()): 1}}
        self._shi = {(): {ONE_ONE: 1}, (1,): {((), (1,)): 1, ((1,), ()): 1}}
        self._closed = {}
        self._anti = {(): {(): 1}}
        self._anti_st = {(): {(): 1}}
        self._top = 1  # every letter x_n with n <= _top has a cached coproduct

    # -- shuffle coproduct ---------------------------------------------------
    def populate(self, n: int):
        """Fill the depth-one table for x_1, ..., x_n in ascending weight."""
        while self._top < n:
            w = self._top + 1
            self._cop[(w,)] = self._letter(w, self._cop)
            self._top = w

    def _letter(self, w: int, table: dict) -> dict:
        # Delta(x_w) from the letter rule: product of Delta(x_1), Delta(x_{w-1}) minus depth-2 terms
        alg, p = self.alg, self.p
        cop = self._word if table is self._cop else self._word_shi
        sh = alg.shuffle_w
        out = _tensor_mul(alg, sh, sh, table[(1,)], table[(w - 1,)])
        for t, c in cop((1, w - 1)).items():
            _acc(out, t, -c, p)
        for t, c in cop((w - 1, 1)).items():
            _acc(out, t, -c, p)
        for j, d in alg.chen_terms(1, w - 1):
            for t, c in cop((w - j, j)).items():
                _acc(out, t, -d * c, p)
        return out

    def _word(self, u: Word) -> dict:
        r = self._cop.get(u)
        if r is not None:
            return r
        if len(u) == 1:
            self.populate(u[0])
            return self._cop[u]
        r = self._deep(u, self._cop, self._word, self.alg.triangle_w)
        self._cop[u] = r
        return r

    def _deep(self, u: Word, table, cop, left_kernel) -> dict:
        # Delta(x_u v) = 1 (x) u + sum over the non-unit left factors of Delta(x_u)
        alg, p = self.alg, self.p
        head, tail = u[:1], u[1:]
        du = cop(head)
        dv = cop(tail)
        out = {((), u): 1}
        sh = alg.shuffle_w
        for (au, bu), c1 in du.items():
            if not au:
                continue
            for (av, bv), c2 in dv.items():
                left = left_kernel(au, av)
                right = sh(bu, bv)
                c = c1 * c2
                for l, cl in left.items():
                    ccl = c * cl
                    for r, cr in right.items():
                        _acc(out, (l, r), ccl * cr, p)
        return out

    # -- Shi's variant: concatenation in place of the triangle product ---------
    def _word_shi(self, u: Word) -> dict:
        r = self._shi.get(u)
        if r is not None:
            return r
        if len(u) == 1:
            for w in range(2, u[0] + 1):
                if (w,) not in self._shi:
                    self._shi[(w,)] = self._letter(w, self._shi)
            return self._shi[u]
        r = self._deep(u, self._shi, self._word_shi, self.alg.concat_w)
        self._shi[u] = r
        return r

    # -- closed form for a single letter ------------------------------------
    def _closed_letter(self, n: int) -> dict:
        r = self._closed.get(n)
        if r is not None:
            return r
        p, alg = self.p, self.alg
        out = {((), (n,)): 1}
        for r_ in range(1, n + 1):
            m = n - r_
            if m == 0:
                # empty word: binom(r-2, 0) = 1 and [1] = 1
                _acc(out, ((r_,), ()), binomial_mod(r_ - 2, 0, p), p)
                continue
            # only letters with a nonzero Chen factor can survive in the bracket
            parts = [i for i in range(1, m + 1) if chen_delta(1, m + 1, i, self.q)]
            for ms in _multisets(m, parts):
                dep = sum(ms.values())
                coeff = binomial_mod(r_ + dep - 2, dep, p)
                if not coeff:
                    continue
                coeff = coeff * _multinomial_mod(list(ms.values()), p) % p
                if not coeff:
                    continue
                letters = [i for i, k in sorted(ms.items()) for _ in range(k)]
                for word, c in bracket_w(alg, tuple(letters)).items():
                    _acc(out, ((r_,), word), coeff * c, p)
        self._closed[n] = out
        return out

    # -- antipodes -------------------------------------------------------------
    def _antipode(self, u: Word) -> dict:
        r = self._anti.get(u)
        if r is not None:
            return r
        p, sh = self.p, self.alg.shuffle_w
        out = {u: p - 1}
        for (a, b), c in self._word(u).items():
            if not a or not b:
                continue
            for w, e in self.alg.combine(sh, self._antipode(a), {b: 1}).items():
                _acc(out, w, -c * e, p)
        self._anti[u] = out
        return out

    def _antipode_stuffle_rec(self, u: Word) -> dict:
        r = self._anti_st.get(u)
        if r is not None:
            return r
        p, st = self.p, self.alg.stuffle_w
        out = {u: p - 1}
        for i in range(1, len(u)):
            for w, e in self.alg.combine(st, self._antipode_stuffle_rec(u[:i]), {u[i:]: 1}).items():
                _acc(out, w, -e, p)
        self._anti_st[u] = out
        return out

    def _antipode_hoffman(self, u: Word) -> dict:
        # sum over compositions of len(u): (-1)^k times the stuffle of consecutive blocks
        p, alg = self.p, self.alg
        n = len(u)
        out = {}
        if n == 0:
            return {(): 1}
        for cuts in _subsets(n - 1):
            bounds = [0] + [c + 1 for c in cuts] + [n]
            acc = {(): 1}
            for s, e in zip(bounds, bounds[1:]):
                acc = alg.combine(alg.stuffle_w, acc, {u[s:e]: 1})
            sign = -1 if (len(bounds) - 1) % 2 else 1
            for w, c in acc.items():
                _acc(out, w, sign * c, p)
        return out

    # public dict-level entry points (results are shared; do not mutate)
    def delta(self, u: Word) -> dict:
        return self._word(tuple(u))

    def delta_shi(self, u: Word) -> dict:
        return self._word_shi(tuple(u))

    def delta_closed(self, n: int) -> dict:
        return self._closed_letter(n)

    def antipode(self, u: Word) -> dict:
        return self._antipode(tuple(u))

    def antipode_stuffle(self, u: Word) -> dict:
        return self._antipode_hoffman(tuple(u))

    def antipode_stuffle_rec(self, u: Word) -> dict:
        return self._antipode_stuffle_rec(tuple(u))

    @staticmethod
    def delta_stuffle(u: Word) -> dict:
        u = tuple(u)
        return {(u[:i], u[i:]): 1 for i in range(len(u) + 1)}

    def cache_size(self) -> int:
        return len(self._cop)


def _subsets(m: int):
    for mask in range(1 << m):
        yield [i for i in range(m) if mask >> i & 1]


def _multisets(total: int, parts: list, start: int = 0):
    """Multisets of elements of ``parts`` summing to total, as {part: multiplicity}."""
    if total == 0:
        yield {}
        return
    for idx in range(start, len(parts)):
        part = parts[idx]
        if part > total:
            break
        for rest in _multisets(total - part, parts, idx):
            d = dict(rest)
            d[part] = d.get(part, 0) + 1
            yield d


def _multinomial_mod(ks: list, p: int) -> int:
    # product of Lucas binomials: binom(k1+k2, k2) binom(k1+k2+k3, k3) ...
    c, total = 1, 0
    for k in ks:
        total += k
        c = c * binomial_mod(total, k, p) % p
        if not c:
            return 0
    return c


_COALGEBRAS: dict = {}


def coalgebra(q: int) -> Coalgebra:
    co = _COALGEBRAS.get(q)
    if co is None:
        co = _COALGEBRAS[q] = Coalgebra(q)
    return co


def _t2(F: FieldSpec, d: dict) -> Tensor2:
    return Tensor2(F, dict(d), _trusted=True)


def _fld(q_or_field) -> FieldSpec:
    return q_or_field if isinstance(q_or_field, FieldSpec) else field_from_q(q_or_field)


def coproduct_shuffle(F, u: Word) -> Tensor2:
    """The coproduct compatible with the shuffle product."""
    F = _fld(F)
    return _t2(F, coalgebra(F.q)._word(tuple(u)))


def coproduct_shi(F, u: Word) -> Tensor2:
    """Variant recursion with concatenation in the deep-word step."""
    F = _fld(F)
    return _t2(F, coalgebra(F.q)._word_shi(tuple(u)))


def coproduct_depth_one_closed(F, n: int) -> Tensor2:
    """Sum over r >= 1 and words a of weight n - r of binom(r + dep(a) - 2, dep(a)) x_r (x) [a], plus 1 (x) x_n."""
    F = _fld(F)
    if n < 1:
        raise ValueError("n must be positive")
    return _t2(F, coalgebra(F.q)._closed_letter(n))


def coproduct_depth_one_small(F, n: int) -> Tensor2:
    """Explicit formula for Delta(x_n), valid for 1 <= n <= q^2."""
    F = _fld(F)
    q, p = F.q, F.p
    if not 1 <= n <= q * q:
        raise ValueError(f"the explicit formula covers 1 <= n <= q^2 = {q * q}")
    out = {((), (n,)): 1, ((n,), ()): 1}
    if n > q:
        k = (n - 1) // q
        for i in range(1, k + 1):
            c = binomial_mod(n - 1 + i, i, p)
            if i % 2:
                c = -c
            _acc(out, ((n - i * (q - 1),), (i * (q - 1),)), c, p)
    return _t2(F, out)


def coproduct_stuffle(F, u: Word) -> Tensor2:
    """Deconcatenation: the sum of prefix (x) suffix over all splittings of u."""
    F = _fld(F)
    u = tuple(u)
    return Tensor2(F, {(u[:i], u[i:]): 1 for i in range(len(u) + 1)}, _trusted=True)


def counit(x: LinComb) -> int:
    """Coefficient of the empty word."""
    return x.coefficient(())


def antipode_shuffle(F, u: Word) -> LinComb:
    F = _fld(F)
    return LinComb(F, dict(coalgebra(F.q)._antipode(tuple(u))), _trusted=True)


def antipode_stuffle(F, u: Word) -> LinComb:
    """Antipode of the stuffle Hopf algebra by the explicit sum over compositions."""
    F = _fld(F)
    return LinComb(F, coalgebra(F.q)._antipode_hoffman(tuple(u)), _trusted=True)


def antipode_stuffle_recursive(F, u: Word) -> LinComb:
    """Same antipode through the graded recursion with deconcatenation."""
    F = _fld(F)
    return LinComb(F, dict(coalgebra(F.q)._antipode_stuffle_rec(tuple(u))), _trusted=True)


def tensor_product(x: Tensor2, y: Tensor2, op: str = "shuffle") -> Tensor2:
    """Componentwise product of two tensors under op ('shuffle' or 'stuffle')."""
    F = x.field
    if y.field != F:
        raise ValueError("mixed fields")
    alg = algebra(F.q)
    kern = alg.kernel(op)
    out = {}
    for (a, b), c in x._terms.items():
        for (a2, b2), c2 in y._terms.items():
            cc = F.mul(c, c2)
            left = kern(a, a2)
            right = kern(b, b2)
            for l, cl in left.items():
                for r, cr in right.items():
                    s = F.add(out.get((l, r), 0), F.mul(cc, F.mul(cl, cr)))
                    if s:
                        out[(l, r)] = s
                    else:
                        out.pop((l, r), None)
    return Tensor2(F, out, _trusted=True)


# --- on-disk cache -------------------------------------------------------------

CACHE_FORMAT = "fqhopf-coproduct-cache 1"


class CoproductCache:
    """Line-oriented store of Delta(x_n), one record ``(p,k,n)<TAB>tensor`` per line.

    The first line names the format version and the field; a file whose header
    does not match is ignored and rewritten.
    """

    def __init__(self, path: str, F: FieldSpec):
        self.path = path
        self.field = F
        self.header = f"# {CACHE_FORMAT} p={F.p} k={F.k} modulus={F.modulus_text()}"
        self.entries = {}
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines or lines[0] != self.header:
            return
        for line in lines[1:]:
            if not line.strip():
                continue
            key, _, text = line.partition("\t")
            p, k, n = (int(s) for s in key.strip("()").split(","))
            if (p, k) != (self.field.p, self.field.k):
                continue
            self.entries[n] = parse_tensor(text, self.field)

    def get(self, n: int):
        return self.entries.get(n)

    def fill(self, upto: int, force: bool = False) -> int:
        """Compute Delta(x_n) for n <= upto, merge into the store; returns the number computed."""
        new = 0
        for n in range(1, upto + 1):
            if force or n not in self.entries:
                self.entries[n] = coproduct_shuffle(self.field, (n,))
                new += 1
        return new

    def warm(self):
        """Seed the in-memory coproduct table from the cached letters."""
        co = coalgebra(self.field.q)
        n = 1
        while n + 1 in self.entries:
            n += 1
            co._cop[(n,)] = dict(self.entries[n]._terms)
        co._top = max(co._top, n)

    def save(self):
        os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
        tmp = self.path + ".tmp"
        F = self.field
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(self.header + "\n")
            for n in sorted(self.entries):
                fh.write(f"({F.p},{F.k},{n})\t{serialize(self.entries[n])}\n")
        os.replace(tmp, self.path)
