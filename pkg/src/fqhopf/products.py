"""Diamond, shuffle, triangle and stuffle products, the letter scaling by q, and the bracket.

All structure constants lie in F_p, so the word-level recursions run on plain
``{word: int mod p}`` dicts inside a per-q :class:`WordAlgebra` that memoizes
word-by-word products.  The public functions extend these bilinearly to
:class:`~fqhopf.compspace.LinComb` values over any F_q of characteristic p.

Cached dicts are shared; callers of the ``_w`` methods must not mutate them.
"""

from __future__ import annotations

from .compspace import LinComb, Tensor2, Tensor3, Word, _FormalSum
from .scalar import chen_delta, field_from_q

__all__ = [
    "WordAlgebra",
    "algebra",
    "diamond",
    "shuffle",
    "triangle",
    "stuffle",
    "star_q",
    "bracket",
    "shuffle_letters",
    "clear_caches",
]


def _acc(out: dict, w, c: int, p: int):
    v = (out.get(w, 0) + c) % p
    if v:
        out[w] = v
    else:
        out.pop(w, None)


def _prepend(a: int, d: dict) -> dict:
    return {(a,) + w: c for w, c in d.items()}


class WordAlgebra:
    """Memoized products of words for a fixed field order q.

    Results are dicts from words to nonzero residues mod p.
    """

    def __init__(self, q: int):
        F = field_from_q(q)
        self.q = q
        self.p = F.p
        self._chen = {}
        self._sh = {}
        self._dia = {}
        self._st = {}

    def chen_terms(self, a: int, b: int):
        """Nonzero Chen coefficients (j, Delta^j_{a,b}); j runs over multiples of q-1 below a+b."""
        key = (a, b)
        t = self._chen.get(key)
        if t is None:
            step = self.q - 1
            t = tuple(
                (j, c)
                for j in range(step, a + b, step)
                if (c := chen_delta(a, b, j, self.q))
            )
            self._chen[key] = t
        return t

    # -- word-level kernels ------------------------------------------------
    def shuffle_w(self, u: Word, v: Word) -> dict:
        if not u:
            return {v: 1}
        if not v:
            return {u: 1}
        key = (u, v)
        r = self._sh.get(key)
        if r is not None:
            return r
        p = self.p
        out = _prepend(u[0], self.shuffle_w(u[1:], v))
        for w, c in self.shuffle_w(u, v[1:]).items():
            _acc(out, (v[0],) + w, c, p)
        for w, c in self.diamond_w(u, v).items():
            _acc(out, w, c, p)
        self._sh[key] = out
        return out

    def diamond_w(self, u: Word, v: Word) -> dict:
        if not u:
            return {v: 1}
        if not v:
            return {u: 1}
        key = (u, v)
        r = self._dia.get(key)
        if r is not None:
            return r
        p = self.p
        a, b = u[0], v[0]
        rest = self.shuffle_w(u[1:], v[1:])
        out = _prepend(a + b, rest)
        for j, d in self.chen_terms(a, b):
            i = a + b - j
            for w, c in rest.items():
                for t, e in self.shuffle_w((j,), w).items():
                    _acc(out, (i,) + t, d * c * e, p)
        self._dia[key] = out
        return out

    def triangle_w(self, u: Word, v: Word) -> dict:
        if not u:
            return {v: 1}
        if not v:
            return {u: 1}
        return _prepend(u[0], self.shuffle_w(u[1:], v))

    def stuffle_w(self, u: Word, v: Word) -> dict:
        if not u:
            return {v: 1}
        if not v:
            return {u: 1}
        key = (u, v)
        r = self._st.get(key)
        if r is not None:
            return r
        p = self.p
        out = _prepend(u[0], self.stuffle_w(u[1:], v))
        for w, c in self.stuffle_w(u, v[1:]).items():
            _acc(out, (v[0],) + w, c, p)
        for w, c in self.stuffle_w(u[1:], v[1:]).items():
            _acc(out, (u[0] + v[0],) + w, c, p)
        self._st[key] = out
        return out

    def concat_w(self, u: Word, v: Word) -> dict:
        return {u + v: 1}

    def kernel(self, name: str):
        return {
            "shuffle": self.shuffle_w,
            "diamond": self.diamond_w,
            "triangle": self.triangle_w,
            "stuffle": self.stuffle_w,
            "concat": self.concat_w,
        }[name]

    # -- linear combinations of words (dicts mod p) --------------------------
    def combine(self, kernel, x: dict, y: dict) -> dict:
        p = self.p
        out = {}
        for u, c in x.items():
            for v, d in y.items():
                cd = c * d
                for w, e in kernel(u, v).items():
                    _acc(out, w, cd * e, p)
        return out

    def shuffle_many(self, letters) -> dict:
        """x_{i1} shuffle ... shuffle x_{ir}; the empty product is 1."""
        out = {(): 1}
        for i in letters:
            out = self.combine(self.shuffle_w, out, {(i,): 1})
        return out

    def cache_sizes(self) -> dict:
        return {"shuffle": len(self._sh), "diamond": len(self._dia), "stuffle": len(self._st)}

    def clear(self):
        self._sh.clear()
        self._dia.clear()
        self._st.clear()


_ALGEBRAS: dict = {}


def algebra(q: int) -> WordAlgebra:
    """The shared memoizing kernel for field order q."""
    alg = _ALGEBRAS.get(q)
    if alg is None:
        alg = _ALGEBRAS[q] = WordAlgebra(q)
    return alg


def clear_caches():
    """Drop all memoized products (they are recomputed on demand)."""
    for alg in _ALGEBRAS.values():
        alg.clear()


# --- bilinear extension to LinComb -------------------------------------------

def _bilinear(name: str, a: LinComb, b: LinComb) -> LinComb:
    if not isinstance(a, LinComb) or not isinstance(b, LinComb):
        raise TypeError("products take LinComb arguments")
    F = a.field
    if b.field != F:
        raise ValueError(f"mixed fields F_{F.q} and F_{b.field.q}")
    kern = algebra(F.q).kernel(name)
    out = {}
    for u, c in a._terms.items():
        for v, d in b._terms.items():
            cd = F.mul(c, d)
            for w, e in kern(u, v).items():
                s = F.add(out.get(w, 0), F.mul(cd, e))
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return LinComb(F, out, _trusted=True)


def diamond(a: LinComb, b: LinComb) -> LinComb:
    return _bilinear("diamond", a, b)


def shuffle(a: LinComb, b: LinComb) -> LinComb:
    return _bilinear("shuffle", a, b)


def triangle(a: LinComb, b: LinComb) -> LinComb:
    """a |> b = x_a (a_- shuffle b) on words, with 1 as two-sided unit."""
    return _bilinear("triangle", a, b)


def stuffle(a: LinComb, b: LinComb) -> LinComb:
    return _bilinear("stuffle", a, b)


def star_q(x: _FormalSum, q: int | None = None):
    """Multiply every letter index by q (default: the order of x's field)."""
    q = x.field.q if q is None else q
    if isinstance(x, LinComb):
        return x.map_keys(lambda w: tuple(q * s for s in w))
    if isinstance(x, (Tensor2, Tensor3)):
        return x.map_keys(lambda t: tuple(tuple(q * s for s in w) for w in t))
    raise TypeError(f"star_q does not apply to {type(x).__name__}")


def shuffle_letters(fld, letters) -> LinComb:
    return LinComb(fld, algebra(fld.q).shuffle_many(letters), _trusted=True)


def bracket_w(alg: WordAlgebra, w: Word) -> dict:
    """The bracket of a word as a dict mod p."""
    if not w:
        return {(): 1}
    n = sum(w) + 1
    c = -1 if len(w) % 2 else 1
    for i in w:
        c *= chen_delta(1, n, i, alg.q)
        if not c % alg.p:
            return {}
    c %= alg.p
    return {k: v * c % alg.p for k, v in alg.shuffle_many(w).items()}


def bracket(fld, w: Word) -> LinComb:
    """(-1)^r prod_k Delta^{i_k}_{1, w+1} times x_{i1} shuffle ... shuffle x_{ir}."""
    return LinComb(fld, bracket_w(algebra(fld.q), tuple(w)), _trusted=True)
