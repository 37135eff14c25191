import itertools
import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fqhopf.scalar import (
    FieldSpec,
    Scalar,
    binomial_mod,
    chen_delta,
    delta_j,
    delta_jk,
    field,
    field_from_q,
    is_prime,
    lucas_binomial,
    nabla,
)
from strategies import SMALL_Q, fld

PRIMES = (2, 3, 5, 7, 11, 13)


def naive_binom_mod(a, b, p):
    return math.comb(a, b) % p


# --- primes and fields ------------------------------------------------------------

def test_is_prime_matches_sympy():
    assert [n for n in range(-5, 3000) if is_prime(n)] == list(sympy.primerange(0, 3000))


def test_composite_characteristic_rejected():
    with pytest.raises(ValueError, match="not prime"):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(3, 0)


def test_prime_power_lookup():
    assert field_from_q(9) == field(3, 2)
    assert field_from_q(7).k == 1
    with pytest.raises(ValueError):
        field_from_q(12)


@pytest.mark.parametrize("p,k,coeffs", [
    (2, 2, (1, 1, 1)),
    (2, 3, (1, 0, 1, 1)),
    (3, 2, (1, 0, 1)),
    (5, 2, (1, 1, 1)),
    (3, 3, (1, 0, 2, 1)),
])
def test_modulus_is_first_irreducible(p, k, coeffs):
    F = field(p, k)
    assert tuple(F.modulus) == coeffs
    x = sympy.Symbol("x")
    # candidates ordered by (c_0, c_1, ..., c_{k-1}) lexicographically
    cands = sorted(itertools.product(range(p), repeat=k))
    first = next(c for c in cands
                 if sympy.Poly([1, *reversed(c)], x, modulus=p).is_irreducible)
    assert first + (1,) == coeffs


def test_f9_generator_squared():
    F = field(3, 2)  # modulus x^2 + 1
    x = F.from_vector([0, 1])
    assert F.mul(x, x) == F.from_vector([2, 0]) == 2


def test_f5_inverse_of_two():
    assert field(5).inv(2) == 3


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field(3, 2).inv(0)


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplication_table_against_polynomial_oracle(q):
    F = fld(q)
    x = sympy.Symbol("x")
    mod = sympy.Poly(list(reversed(F.modulus)), x, modulus=F.p)
    for a in range(q):
        pa = sympy.Poly(list(reversed(F.to_vector(a))), x, modulus=F.p)
        for b in range(q):
            pb = sympy.Poly(list(reversed(F.to_vector(b))), x, modulus=F.p)
            r = (pa * pb).rem(mod)
            coeffs = [int(c) % F.p for c in reversed(r.all_coeffs())]
            coeffs += [0] * (F.k - len(coeffs))
            assert F.mul(a, b) == F.from_vector(coeffs)


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplicative_group_is_cyclic(q):
    F = fld(q)
    orders = {len({F.pow(g, i) for i in range(q - 1)}) for g in range(1, q)}
    assert q - 1 in orders
    if F.k > 1:
        g = F.generator()
        assert F.to_vector(g) == [0, 1] + [0] * (F.k - 2)


@pytest.mark.parametrize("q", SMALL_Q)
@given(data=st.data())
def test_field_axioms(q, data):
    F = fld(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, F.neg(a)) == 0
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1
        assert F.pow(a, -1) == F.inv(a)


def test_scalar_wrapper():
    F = field(3, 2)
    a = Scalar(F, 3)
    assert a * a == Scalar(F, 2)
    assert a + 0 == a
    assert (a / a) == 1
    assert -a + a == 0
    assert a ** 8 == 1
    with pytest.raises(ValueError):
        Scalar(F, 1) + Scalar(field(3), 1)


# --- binomials -----------------------------------------------------------------

def test_lucas_examples():
    assert lucas_binomial(7, 3, 2) == 1
    assert lucas_binomial(5, 0, 3) == 1
    assert lucas_binomial(6, 2, 3) == 0
    assert lucas_binomial(3, 5, 7) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_lucas_exhaustive_small(p):
    for a in range(120):
        for b in range(a + 3):
            assert lucas_binomial(a, b, p) == naive_binom_mod(a, b, p)


@given(a=st.integers(0, 2000), b=st.integers(0, 2000), p=st.sampled_from(PRIMES))
def test_lucas_matches_naive_up_to_2000(a, b, p):
    assert lucas_binomial(a, b, p) == naive_binom_mod(a, b, p)


@pytest.mark.parametrize("p", (2, 3, 5))
def test_lucas_full_rows_up_to_2000(p):
    # every b for a handful of large rows, including rows with many zero digits
    for a in (1999, 2000, p**4, p**4 - 1, 2 * p**3 + 1):
        row = [naive_binom_mod(a, b, p) for b in range(a + 1)]
        assert [lucas_binomial(a, b, p) for b in range(a + 1)] == row


@given(n=st.integers(-60, 60), k=st.integers(-2, 40), p=st.sampled_from(PRIMES))
def test_binomial_mod_general_n(n, k, p):
    expect = int(sympy.binomial(n, k)) % p if k >= 0 else 0
    assert binomial_mod(n, k, p) == expect


# --- structure coefficients -------------------------------------------------------

def test_nabla_examples():
    assert nabla(1, 1, 5) == 4
    assert nabla(3, 2, 3) == 2
    assert nabla(2, 5, 2) == 0


def test_delta_j_examples():
    assert delta_j(4, 5) == 4
    assert delta_j(3, 5) == 0
    for q in SMALL_Q:
        assert delta_j(q - 1, q) == fld(q).p - 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_delta_j_is_power_sum_over_units(q):
    F = fld(q)
    for j in range(1, 3 * q):
        total = 0
        for lam in range(1, q):
            total = F.add(total, F.pow(lam, -j))
        assert total == delta_j(j, q)


@pytest.mark.parametrize("q", SMALL_Q)
def test_delta_sign_and_product_identities(q):
    p = fld(q).p
    for j in range(1, 2 * q + 2):
        assert delta_j(j, q) == (delta_j(j, q) * (-1) ** j) % p
        for k in range(1, 2 * q + 2):
            lhs = delta_j(j, q) * delta_j(k, q) % p
            assert lhs == (delta_j(j + k, q) + delta_jk(j, k, q)) % p


def test_chen_examples():
    for q in SMALL_Q:
        assert chen_delta(1, q - 1, q - 1, q) == 0
        n = 3 * (q - 1) + 1
        for j in range(q - 1, n, q - 1):
            assert chen_delta(1, n, j, q) == 1
        assert chen_delta(1, n, n, q) == 0


@pytest.mark.parametrize("q", SMALL_Q)
def test_chen_properties(q):
    p = fld(q).p
    for a in range(1, 13):
        for b in range(1, 13):
            for i in range(-1, a + b + 2):
                c = chen_delta(a, b, i, q)
                assert c == chen_delta(b, a, i, q)
                if not 0 < i < a + b or i % (q - 1):
                    assert c == 0
                else:
                    expect = delta_j(i, q) * (nabla(i, a, p) + nabla(i, b, p)) % p
                    assert c == expect
                if a % q == 0 and b % q == 0 and i % q:
                    assert c == 0
                if 0 < i < a + b:
                    assert chen_delta(p * a, p * b, p * i, q) == c
