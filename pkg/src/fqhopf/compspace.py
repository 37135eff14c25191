"""The composition space: words in the letters x_1, x_2, ... and their F_q-linear combinations.

A word is a tuple of positive ints, ``(5, 1, 2)`` standing for x5 x1 x2; the
empty tuple is the unit 1.  ``LinComb`` holds a combination of words and
``Tensor2``/``Tensor3`` hold combinations of pairs/triples of words.  All three
are immutable maps from keys to nonzero field elements (ints in the encoding
of :mod:`fqhopf.scalar`).

Terms are listed by weight and then lexicographically on letters, so for
homogeneous input the order is plain lexicographic: ``x1x2 + x2x1 + x3``.
"""

from __future__ import annotations

import json
import re
from typing import Callable, Iterable

from .scalar import MAX_INT, FieldSpec, Scalar

__all__ = [
    "Word",
    "make_word",
    "weight",
    "depth",
    "concat",
    "words_of_weight",
    "words_up_to_weight",
    "word_key",
    "LinComb",
    "Tensor2",
    "Tensor3",
    "weight_of",
    "is_homogeneous",
    "apply_linear",
    "serialize",
    "to_latex",
    "parse_word",
    "parse_lincomb",
    "parse_tensor",
    "ParseError",
    "to_json",
    "from_json",
]

Word = tuple
EMPTY: Word = ()


class ParseError(ValueError):
    pass


def make_word(letters: Iterable[int]) -> Word:
    w = tuple(letters)
    total = 0
    for s in w:
        if not isinstance(s, int) or s < 1:
            raise ValueError(f"letter index {s!r} is not a positive integer")
        total += s
        if total > MAX_INT:
            raise ValueError("word weight exceeds 2^31-1")
    return w


def weight(w: Word) -> int:
    return sum(w)


def depth(w: Word) -> int:
    return len(w)


def concat(u: Word, v: Word) -> Word:
    return u + v


def words_of_weight(n: int):
    """All words of weight n (compositions of n), in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in words_of_weight(n - first):
            yield (first,) + rest


def words_up_to_weight(n: int, include_empty: bool = False):
    if include_empty:
        yield ()
    for w in range(1, n + 1):
        yield from words_of_weight(w)


def word_key(w: Word):
    return (sum(w), w)


def _pair_key(t):
    return tuple(word_key(w) for w in t)


def _fmt_word(w: Word) -> str:
    return "".join(f"x{s}" for s in w) if w else "1"


def _fmt_word_latex(w: Word) -> str:
    return "".join(f"x_{{{s}}}" for s in w) if w else "1"


class _FormalSum:
    """Shared machinery for finite maps key -> nonzero field element."""

    __slots__ = ("field", "_terms")
    arity = 1

    def __init__(self, fld: FieldSpec, terms=None, *, _trusted: bool = False):
        if not isinstance(fld, FieldSpec):
            raise TypeError("first argument must be a FieldSpec")
        self.field = fld
        if _trusted:
            d = terms
        else:
            d = {}
            for key, c in (terms.items() if isinstance(terms, dict) else terms or ()):
                key = self._check_key(key)
                c = _coeff(fld, c)
                if c:
                    prev = d.get(key)
                    c = c if prev is None else fld.add(prev, c)
                    if c:
                        d[key] = c
                    else:
                        del d[key]
        if __debug__:
            assert all(d.values()), "zero coefficient stored"
        self._terms = d

    @classmethod
    def _check_key(cls, key):
        return make_word(key)

    @staticmethod
    def _sort_key(key):
        return word_key(key)

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(key, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def keys(self):
        return [k for k, _ in self.items()]

    def coefficient(self, key) -> int:
        return self._terms.get(key, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, self.field, frozenset(self._terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}({serialize(self)!r}, F_{self.field.q})"

    def __str__(self):
        return serialize(self)

    # -- module operations ----------------------------------------------------
    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"mixed fields F_{self.field.q} and F_{other.field.q}")

    def __add__(self, other):
        self._same(other)
        F = self.field
        d = dict(self._terms)
        for key, c in other._terms.items():
            v = F.add(d.get(key, 0), c)
            if v:
                d[key] = v
            else:
                d.pop(key, None)
        return type(self)(F, d, _trusted=True)

    def __neg__(self):
        F = self.field
        return type(self)(F, {k: F.neg(c) for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_FormalSum":
        F = self.field
        c = _coeff(F, c)
        if not c:
            return type(self)(F, {}, _trusted=True)
        return type(self)(F, {k: F.mul(c, v) for k, v in self._terms.items()}, _trusted=True)

    def __rmul__(self, c):
        if isinstance(c, (int, Scalar)):
            return self.scale(c)
        return NotImplemented

    def map_keys(self, f: Callable) -> "_FormalSum":
        """Apply an injective-or-not key map, adding coefficients that collide."""
        F = self.field
        d = {}
        for k, c in self._terms.items():
            nk = f(k)
            v = F.add(d.get(nk, 0), c)
            if v:
                d[nk] = v
            else:
                d.pop(nk, None)
        return type(self)(F, d, _trusted=True)

    @classmethod
    def zero(cls, fld: FieldSpec):
        return cls(fld, {}, _trusted=True)


def _coeff(F: FieldSpec, c) -> int:
    if isinstance(c, Scalar):
        if c.field != F:
            raise ValueError(f"scalar from F_{c.field.q} used in F_{F.q}")
        return c.value
    if isinstance(c, bool) or not isinstance(c, int):
        raise TypeError(f"coefficient {c!r} is not a field element")
    if F.k == 1:
        return c % F.p
    return F.check(c)


class LinComb(_FormalSum):
    """A finite F_q-linear combination of words."""

    __slots__ = ()

    @classmethod
    def word(cls, fld: FieldSpec, w, c=1) -> "LinComb":
        return cls(fld, {make_word(w): c})

    @classmethod
    def one(cls, fld: FieldSpec) -> "LinComb":
        return cls(fld, {(): 1}, _trusted=True)


class _Tensor(_FormalSum):
    __slots__ = ()

    @classmethod
    def _check_key(cls, key):
        key = tuple(key)
        if len(key) != cls.arity:
            raise ValueError(f"expected a {cls.arity}-tuple of words, got {key!r}")
        return tuple(make_word(w) for w in key)

    @staticmethod
    def _sort_key(key):
        return _pair_key(key)


class Tensor2(_Tensor):
    """A finite F_q-linear combination of pairs of words (an element of C (x) C)."""

    __slots__ = ()
    arity = 2


class Tensor3(_Tensor):
    """A finite F_q-linear combination of triples of words."""

    __slots__ = ()
    arity = 3


# --- grading -----------------------------------------------------------------

def _total_weight(key, arity):
    return sum(key) if arity == 1 else sum(sum(w) for w in key)


def weight_of(x: _FormalSum):
    """The common weight of all terms, or None if x is zero or not homogeneous."""
    weights = {_total_weight(k, x.arity) for k in x._terms}
    return weights.pop() if len(weights) == 1 else None


def is_homogeneous(x: _FormalSum) -> bool:
    return len({_total_weight(k, x.arity) for k in x._terms}) <= 1


def apply_linear(f: Callable[[Word], _FormalSum], x: LinComb, result_type=None):
    """Linear extension of a map on words: sum of c * f(w) over the terms c*w of x.

    ``result_type`` (LinComb by default) fixes the type of the zero result.
    """
    F = x.field
    acc = {}
    cls = result_type
    for w, c in x._terms.items():
        y = f(w)
        if y.field != F:
            raise ValueError("linear map returned a value over a different field")
        cls = cls or type(y)
        for k, v in y._terms.items():
            s = F.add(acc.get(k, 0), F.mul(c, v))
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    return (cls or LinComb)(F, acc, _trusted=True)


# --- text forms ----------------------------------------------------------------

TENSOR = "⊗"


def _serialize_terms(x: _FormalSum, fmt_word, sep, coeff_fmt) -> str:
    if not x._terms:
        return "0"
    parts = []
    for key, c in x.items():
        body = fmt_word(key) if x.arity == 1 else sep.join(fmt_word(w) for w in key)
        parts.append(coeff_fmt(c, body))
    return " + ".join(parts)


def serialize(x: _FormalSum, ascii: bool = False) -> str:
    """Canonical text, e.g. ``1⊗x3 + 2*x1⊗x2 + x3⊗1``.

    Coefficients are written as their integer encoding, omitted when equal to 1.
    """
    sep = "(x)" if ascii else TENSOR
    return _serialize_terms(x, _fmt_word, sep, lambda c, b: b if c == 1 else f"{c}*{b}")


def to_latex(x: _FormalSum) -> str:
    """LaTeX in the style ``1\\otimes x_{10}+2x_{4}\\otimes x_{6}``."""
    def coeff(c, b):
        if c == 1:
            return b
        # "21" would read back as an integer; separate a coefficient from a leading unit
        return f"{c}\\cdot {b}" if b.startswith("1") else f"{c}{b}"

    s = _serialize_terms(x, _fmt_word_latex, "\\otimes ", coeff)
    return s.replace(" + ", "+")


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<plus>\+)|(?P<minus>-)|(?P<star>\*|\\cdot)|
        (?P<tensor>⊗|\(x\)|\\otimes)|
        (?P<letter>x_?(?:\{\s*(?P<bidx>\d+)\s*\}|(?P<idx>\d+)))|
        (?P<int>\d+)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    text = text.replace("&", " ").replace("\\\\", " ").replace("\\,", " ")
    pos, toks = 0, []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        if m.group("letter"):
            idx = m.group("bidx") or m.group("idx")
            toks.append(("letter", int(idx)))
        elif m.group("int"):
            toks.append(("int", int(m.group("int"))))
        else:
            kind = next(k for k in ("plus", "minus", "star", "tensor") if m.group(k))
            toks.append((kind, None))
        pos = m.end()
    return toks


def _parse_factor(toks, i):
    """A word, or the unit '1'.  Returns (word, next index)."""
    if i < len(toks) and toks[i] == ("int", 1) and not (i + 1 < len(toks) and toks[i + 1][0] == "letter"):
        return (), i + 1
    letters = []
    while i < len(toks) and toks[i][0] == "letter":
        letters.append(toks[i][1])
        i += 1
    if not letters:
        got = toks[i] if i < len(toks) else "end of input"
        raise ParseError(f"expected a word, got {got}")
    try:
        return make_word(letters), i
    except ValueError as e:
        raise ParseError(str(e)) from None


def _parse_sum(text: str, fld: FieldSpec, arity: int):
    toks = _tokenize(text)
    if toks == [("int", 0)]:
        return {}
    out = []
    i, sign = 0, 1
    if not toks:
        raise ParseError("empty input")
    while i < len(toks):
        if toks[i][0] in ("plus", "minus"):
            sign = -1 if toks[i][0] == "minus" else 1
            i += 1
        elif out:
            raise ParseError(f"expected '+' or '-' before term {len(out) + 1}")
        coeff = 1
        # coefficient: INT '*'  |  INT directly followed by a letter (LaTeX style)
        if i < len(toks) and toks[i][0] == "int":
            nxt = toks[i + 1][0] if i + 1 < len(toks) else None
            if nxt == "star":
                coeff = toks[i][1]
                i += 2
            elif nxt == "letter":
                coeff = toks[i][1]
                i += 1
        key = []
        w, i = _parse_factor(toks, i)
        key.append(w)
        while i < len(toks) and toks[i][0] == "tensor":
            w, i = _parse_factor(toks, i + 1)
            key.append(w)
        if len(key) != arity:
            raise ParseError(f"term has {len(key)} tensor factors, expected {arity}")
        if fld.k > 1:
            c = fld.check(coeff) if coeff < fld.q else None
            if c is None:
                raise ParseError(f"coefficient {coeff} is not an element of F_{fld.q}")
            c = c if sign > 0 else fld.neg(c)
        else:
            c = sign * coeff
        out.append((key[0] if arity == 1 else tuple(key), c))
        sign = 1
    return out


def parse_lincomb(text: str, fld: FieldSpec) -> LinComb:
    """Parse ``"2*x1x2 - x3 + 1"``-style text (LaTeX input is also accepted)."""
    return LinComb(fld, _parse_sum(text, fld, 1))


def parse_tensor(text: str, fld: FieldSpec, arity: int = 2):
    cls = {2: Tensor2, 3: Tensor3}[arity]
    return cls(fld, _parse_sum(text, fld, arity))


def parse_word(text: str) -> Word:
    """Parse a single word; letters may be concatenated ("x5x1x2") or spaced ("x5 x1 x2")."""
    toks = _tokenize(text)
    w, i = _parse_factor(toks, 0)
    if i != len(toks):
        raise ParseError(f"trailing input after word in {text!r}")
    return w


# --- JSON ----------------------------------------------------------------------

JSON_VERSION = 1
_FACTOR_NAMES = {1: ("word",), 2: ("left", "right"), 3: ("first", "second", "third")}


def to_json(x: _FormalSum) -> dict:
    """JSON-ready dict; terms in canonical order, coefficients as field encodings."""
    names = _FACTOR_NAMES[x.arity]
    terms = []
    for key, c in x.items():
        parts = (key,) if x.arity == 1 else key
        entry = {n: list(w) for n, w in zip(names, parts)}
        entry["coeff"] = c
        terms.append(entry)
    return {"type": type(x).__name__, "version": JSON_VERSION, "p": x.field.p, "k": x.field.k,
            "terms": terms}


def from_json(obj):
    from .scalar import field

    if isinstance(obj, str):
        obj = json.loads(obj)
    cls = {"LinComb": LinComb, "Tensor2": Tensor2, "Tensor3": Tensor3}[obj["type"]]
    F = field(obj["p"], obj["k"])
    names = _FACTOR_NAMES[cls.arity]
    items = []
    for t in obj["terms"]:
        parts = tuple(tuple(t[n]) for n in names)
        items.append((parts[0] if cls.arity == 1 else parts, t["coeff"]))
    return cls(F, items)
