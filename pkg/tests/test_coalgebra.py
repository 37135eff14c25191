import math
import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fqhopf.coalgebra import (
    CoproductCache,
    antipode_shuffle,
    antipode_stuffle,
    antipode_stuffle_recursive,
    coalgebra,
    coproduct_depth_one_closed,
    coproduct_depth_one_small,
    coproduct_shi,
    coproduct_shuffle,
    coproduct_stuffle,
    counit,
    tensor_product,
)
from fqhopf.compspace import LinComb, Tensor2, parse_lincomb, parse_tensor, weight_of
from fqhopf.products import algebra, diamond, shuffle, star_q, stuffle, triangle
from fqhopf.scalar import chen_delta, field
from strategies import fld, words_of_weight_at_most

F3 = field(3)


def T(F, text):
    return parse_tensor(text, F)


def W(F, *letters):
    return LinComb.word(F, letters)


# --- an uncached oracle written straight from the recursive definition ------------------

class NaiveDelta:
    def __init__(self, q):
        self.q, self.alg = q, algebra(q)
        self.p = self.alg.p
        self.memo = {}

    def _add(self, out, key, c):
        out[key] = (out.get(key, 0) + c) % self.p
        if not out[key]:
            del out[key]

    def tensor_shuffle(self, x, y):
        out = {}
        for (a, b), c in x.items():
            for (a2, b2), c2 in y.items():
                for l, cl in self.alg.shuffle_w(a, a2).items():
                    for r, cr in self.alg.shuffle_w(b, b2).items():
                        self._add(out, (l, r), c * c2 * cl * cr)
        return out

    def __call__(self, u):
        if u in self.memo:
            return self.memo[u]
        if not u:
            r = {((), ()): 1}
        elif u == (1,):
            r = {((), (1,)): 1, ((1,), ()): 1}
        elif len(u) == 1:
            w = u[0]
            r = self.tensor_shuffle(self((1,)), self((w - 1,)))
            for t, c in self((1, w - 1)).items():
                self._add(r, t, -c)
            for t, c in self((w - 1, 1)).items():
                self._add(r, t, -c)
            for j in range(1, w):
                d = chen_delta(1, w - 1, j, self.q)
                for t, c in self((w - j, j)).items():
                    self._add(r, t, -d * c)
        else:
            r = {((), u): 1}
            for (au, bu), c1 in self(u[:1]).items():
                if not au:
                    continue
                for (av, bv), c2 in self(u[1:]).items():
                    for l, cl in self.alg.triangle_w(au, av).items():
                        for rr, cr in self.alg.shuffle_w(bu, bv).items():
                            self._add(r, (l, rr), c1 * c2 * cl * cr)
        self.memo[u] = r
        return r


def _comps(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _comps(n - first):
            yield (first,) + rest


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_coproduct_matches_naive_oracle(q):
    F = fld(q)
    oracle = NaiveDelta(q)
    for n in range(0, 10):
        for u in _comps(n):
            assert dict(coproduct_shuffle(F, u).terms) == oracle(u), u


# --- examples ------------------------------------------------------------------------

@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9))
def test_small_letters_are_primitive(q):
    F = fld(q)
    for n in range(1, q + 1):
        assert coproduct_shuffle(F, (n,)) == Tensor2(F, {((), (n,)): 1, ((n,), ()): 1})


def test_x10_for_q3():
    expect = T(F3, "1⊗x10 + x2⊗x2x6 + 2*x4⊗x6 + x6⊗x4 + 2*x8⊗x2 + x10⊗1")
    assert coproduct_shuffle(F3, (10,)) == expect
    assert coproduct_depth_one_closed(F3, 10) == expect


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7))
def test_q_squared_minus_one(q):
    F = fld(q)
    n = q * q - 1
    expect = Tensor2(F, {((), (n,)): 1, ((n,), ()): 1, ((q * (q - 1),), (q - 1,)): 1})
    assert coproduct_shuffle(F, (n,)) == expect


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7))
def test_multiples_of_q_minus_one(q):
    F = fld(q)
    for k in range(2, q + 1):
        n = k * (q - 1)
        expect = {((), (n,)): 1, ((n,), ()): 1}
        for i in range(1, k):
            c = math.comb(k, i) % F.p
            if c:
                expect[((i * (q - 1),), ((k - i) * (q - 1),))] = c
        assert coproduct_shuffle(F, (n,)) == Tensor2(F, expect)


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7))
def test_explicit_formula_up_to_q_squared(q):
    F = fld(q)
    for n in range(1, q * q + 1):
        assert coproduct_depth_one_small(F, n) == coproduct_shuffle(F, (n,))
    with pytest.raises(ValueError):
        coproduct_depth_one_small(F, q * q + 1)


def test_closed_form_base_case():
    for q in (2, 3, 5):
        F = fld(q)
        assert coproduct_depth_one_closed(F, 1) == Tensor2(F, {((), (1,)): 1, ((1,), ()): 1})
    with pytest.raises(ValueError):
        coproduct_depth_one_closed(F3, 0)


@pytest.mark.parametrize("q", (2, 3, 5))
def test_closed_form_equals_recursion(q):
    F = fld(q)
    for n in range(1, 21):
        assert coproduct_depth_one_closed(F, n) == coproduct_shuffle(F, (n,))


def test_shi_examples():
    assert coproduct_shi(F3, (1,)) == Tensor2(F3, {((), (1,)): 1, ((1,), ()): 1})
    assert coproduct_shi(F3, ()) == Tensor2(F3, {((), ()): 1})
    for n in range(0, 8):
        for u in _comps(n):
            assert coproduct_shi(F3, u) == coproduct_shuffle(F3, u)


def test_deconcatenation():
    F = field(5)
    assert coproduct_stuffle(F, (5,)) == T(F, "1⊗x5 + x5⊗1")
    assert coproduct_stuffle(F, (2, 3)) == T(F, "1⊗x2x3 + x2⊗x3 + x2x3⊗1")
    assert coproduct_stuffle(F, ()) == T(F, "1⊗1")


def test_counit():
    F = field(5)
    assert counit(LinComb.one(F)) == 1
    assert counit(W(F, 7)) == 0
    assert counit(parse_lincomb("3*1 + 2*x1x2", F)) == 3


# --- antipodes -----------------------------------------------------------------------

def test_antipode_examples():
    assert antipode_shuffle(F3, ()) == LinComb.one(F3)
    for n in range(1, 4):
        assert antipode_shuffle(F3, (n,)) == W(F3, n).scale(-1)
    F = field(5)
    assert antipode_stuffle(F, (4,)) == W(F, 4).scale(-1)
    assert antipode_stuffle(F, (2, 3)) == W(F, 3, 2) + W(F, 5)


def _convolve(F, delta, anti, mult, side):
    out = LinComb.zero(F)
    for (a, b), c in delta.items():
        left = anti(a) if side == "left" else LinComb.word(F, a)
        right = LinComb.word(F, b) if side == "left" else anti(b)
        out = out + mult(left, right).scale(c)
    return out


def test_shuffle_convolution_on_x10():
    d = coproduct_shuffle(F3, (10,))
    anti = lambda w: antipode_shuffle(F3, w)  # noqa: E731
    assert _convolve(F3, d, anti, shuffle, "left").is_zero()
    assert _convolve(F3, d, anti, shuffle, "right").is_zero()


def test_stuffle_convolution_on_x2x3():
    F = field(5)
    d = coproduct_stuffle(F, (2, 3))
    anti = lambda w: antipode_stuffle(F, w)  # noqa: E731
    assert _convolve(F, d, anti, stuffle, "left").is_zero()


@pytest.mark.parametrize("q", (2, 3, 5))
def test_stuffle_antipode_two_routes(q):
    F = fld(q)
    for n in range(0, 8):
        for u in _comps(n):
            assert antipode_stuffle(F, u) == antipode_stuffle_recursive(F, u)


@pytest.mark.parametrize("q", (2, 3, 5))
def test_antipodes_are_involutions(q):
    # both Hopf algebras are commutative, so S o S = id
    F = fld(q)
    for n in range(1, 6):
        for u in _comps(n):
            for anti in (antipode_shuffle, antipode_stuffle):
                x = anti(F, u)
                back = LinComb.zero(F)
                for w, c in x.items():
                    back = back + anti(F, w).scale(c)
                assert back == W(F, *u)


# --- structural properties -------------------------------------------------------------

@pytest.mark.parametrize("q", (2, 3, 4, 5))
@given(data=st.data())
def test_shape_of_coproduct(q, data):
    F = fld(q)
    u = data.draw(words_of_weight_at_most(9))
    d = coproduct_shuffle(F, u)
    assert weight_of(d) == sum(u)
    assert d.coefficient(((), u)) == 1
    assert d.coefficient((u, ())) == 1
    for a, b in d.keys():
        if (a, b) != ((), u):
            assert a  # the only term with left factor 1 is 1 (x) u


@pytest.mark.parametrize("q", (2, 3, 5))
@given(data=st.data())
def test_compatibility_both_algebras(q, data):
    F = fld(q)
    u, v = (data.draw(words_of_weight_at_most(5)) for _ in range(2))
    lhs = LinComb.zero(F)
    for name, op, cop in (("shuffle", shuffle, coproduct_shuffle), ("stuffle", stuffle, coproduct_stuffle)):
        prod = op(W(F, *u), W(F, *v))
        lhs = Tensor2.zero(F)
        for w, c in prod.items():
            lhs = lhs + cop(F, w).scale(c)
        assert lhs == tensor_product(cop(F, u), cop(F, v), name)


@pytest.mark.parametrize("q", (2, 3, 5))
@given(data=st.data())
def test_delta_diamond(q, data):
    F = fld(q)
    u, v = (data.draw(words_of_weight_at_most(5)) for _ in range(2))
    dm = diamond(W(F, *u), W(F, *v))
    lhs = Tensor2.zero(F)
    for w, c in dm.items():
        lhs = lhs + coproduct_shuffle(F, w).scale(c)
    rhs = Tensor2(F, {((), w): c for w, c in dm.items()})
    alg = algebra(q)
    for (a1, b1), c1 in coproduct_shuffle(F, u).items():
        if not a1:
            continue
        for (a2, b2), c2 in coproduct_shuffle(F, v).items():
            if not a2:
                continue
            left = LinComb(F, alg.diamond_w(a1, a2))
            right = LinComb(F, alg.shuffle_w(b1, b2))
            rhs = rhs + _outer(F, left, right).scale(F.mul(c1, c2))
    assert lhs == rhs


def _outer(F, x, y):
    return Tensor2(F, {(a, b): F.mul(c, d) for a, c in x.items() for b, d in y.items()})


@pytest.mark.parametrize("q", (2, 3, 5))
@given(data=st.data())
def test_delta_without_factor_one(q, data):
    F = fld(q)
    u, v = (data.draw(words_of_weight_at_most(5)) for _ in range(2))
    alg = algebra(q)
    du = coproduct_shuffle(F, u) - Tensor2(F, {((), u): 1})
    lhs = Tensor2.zero(F)
    for (a, b), c in du.items():
        for (a2, b2), c2 in coproduct_shuffle(F, v).items():
            left = LinComb(F, alg.triangle_w(a, a2))
            right = LinComb(F, alg.shuffle_w(b, b2))
            lhs = lhs + _outer(F, left, right).scale(F.mul(c, c2))
    tri = triangle(W(F, *u), W(F, *v))
    rhs = Tensor2.zero(F)
    for w, c in tri.items():
        rhs = rhs + (coproduct_shuffle(F, w) - Tensor2(F, {((), w): 1})).scale(c)
    assert lhs == rhs


@pytest.mark.parametrize("q", (3, 5))
def test_frobenius_lift(q):
    F = fld(q)
    for n in range(1, 40 // q + 1):
        assert coproduct_shuffle(F, (q * n,)) == star_q(coproduct_shuffle(F, (n,)))


@pytest.mark.parametrize("h", range(1, 31))
def test_combinatorial_identity(h):
    for k in range(1, 31):
        for l in range(1, 31):
            lhs = sum(math.comb(h + i, i) * math.comb(k + l - i, l - i) for i in range(l + 1))
            assert lhs == math.comb(h + k + l + 1, l)


# --- cache ---------------------------------------------------------------------------

def test_cache_round_trip(tmp_path):
    F = field(3)
    path = os.path.join(tmp_path, "c", "cop.txt")
    cache = CoproductCache(path, F)
    assert cache.fill(25) == 25
    cache.save()
    again = CoproductCache(path, F)
    assert set(again.entries) == set(range(1, 26))
    for n in range(1, 26):
        assert again.get(n) == coproduct_shuffle(F, (n,))
    assert again.fill(25) == 0
    assert again.fill(25, force=True) == 25


def test_cache_hits_match_recomputation(tmp_path):
    F = field(5)
    path = os.path.join(tmp_path, "cop.txt")
    cache = CoproductCache(path, F)
    cache.fill(30)
    cache.save()
    reference = {n: coproduct_shuffle(F, (n,)) for n in range(1, 31)}
    # throw away the in-memory tables, then serve from disk
    from fqhopf import coalgebra as mod
    mod._COALGEBRAS.pop(F.q, None)
    warm = CoproductCache(path, F)
    warm.warm()
    assert coalgebra(F.q)._top == 30
    for n in range(1, 31):
        assert coproduct_shuffle(F, (n,)) == reference[n]
    assert coproduct_shuffle(F, (2, 29)) == Tensor2(F, NaiveDelta(5)((2, 29)))


def test_cache_with_foreign_header_is_ignored(tmp_path):
    path = os.path.join(tmp_path, "cop.txt")
    c3 = CoproductCache(path, field(3))
    c3.fill(5)
    c3.save()
    assert CoproductCache(path, field(5)).entries == {}
    assert CoproductCache(path, field(3, 2)).entries == {}
