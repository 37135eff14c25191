"""Property sweeps over words and power sums, and the golden-table comparison.

Every sweep returns a :class:`Report`.  Failures are collected, never raised,
so a single run shows the whole failure set.  Check items are independent and
can be spread over worker processes with ``jobs``; the report is sorted before
it is emitted, so its content does not depend on the worker count.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import random
import time
from math import comb
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .coalgebra import coalgebra, coproduct_depth_one_small
from .compspace import LinComb, Tensor2, Tensor3, parse_tensor, serialize, words_of_weight, words_up_to_weight
from .powersums import (
    RatFunc,
    S_lincomb,
    S_lt_lincomb,
    Si_lt_lincomb,
    carlitz_sum_Si,
    check_partial_fraction,
    hoffman_basis,
    hoffman_dimension,
    power_sum_S,
    power_sum_S_enum,
    power_sum_Slt,
    poly_to_text,
)
from .products import _acc, algebra
from .scalar import chen_delta, field_from_q

__all__ = [
    "Check",
    "Report",
    "MissingFixture",
    "FixtureChecksumError",
    "load_fixture",
    "golden_tables",
    "sweep_associativity_words",
    "sweep_associativity_powersums",
    "sweep_commutativity",
    "sweep_coassociativity",
    "sweep_compatibility",
    "sweep_hopf_axioms",
    "sweep_closed_form",
    "sweep_special_cases",
    "sweep_shi",
    "sweep_frobenius",
    "sweep_chen",
    "sweep_product_maps",
    "sweep_partial_fractions",
    "sweep_hoffman",
    "sweep_depth_q_agreement",
    "SUITES",
    "run_suite",
]

REPORT_VERSION = 1


@dataclass(frozen=True)
class Check:
    item: str
    passed: bool
    lhs: str | None = None
    rhs: str | None = None


@dataclass
class Report:
    name: str
    params: dict
    checks: list = dc_field(default_factory=list)
    missing: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> str:
        n, f = len(self.checks), len(self.failures)
        per = 1000 * self.wall_time / n if n else 0.0
        status = "PASS" if not f else "FAIL"
        extra = f", {len(self.missing)} missing" if self.missing else ""
        return (f"{status} {self.name} {self._params_text()}: {n - f}/{n} checks passed{extra} "
                f"in {self.wall_time:.2f}s ({per:.2f}s per 1000 checks)")

    def _params_text(self) -> str:
        return " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "type": "Report",
            "version": REPORT_VERSION,
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failures": len(self.failures),
            "failures": [c.__dict__ for c in self.failures],
            "missing": list(self.missing),
            "items": [c.item for c in self.checks],
        }
        if timing:
            n = len(self.checks)
            d["timing"] = {"wall_seconds": self.wall_time,
                           "seconds_per_1000_checks": 1000 * self.wall_time / n if n else 0.0}
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self, verbose: bool = False) -> str:
        lines = [self.summary()]
        for m in self.missing:
            lines.append(f"  missing: {m}")
        for c in self.checks if verbose else self.failures:
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.item}")
            if not c.passed:
                lines.append(f"       lhs: {c.lhs}")
                lines.append(f"       rhs: {c.rhs}")
        return "\n".join(lines)


def _check(item, lhs, rhs, render=str) -> Check:
    if lhs == rhs:
        return Check(item, True)
    return Check(item, False, render(lhs), render(rhs))


def _run(name: str, params: dict, func, items: list, jobs: int = 1) -> Report:
    """Apply func to every item (in worker processes when jobs > 1) and sort the results."""
    t0 = time.perf_counter()
    if jobs > 1 and len(items) > 1:
        chunk = max(1, len(items) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(func, items, chunksize=chunk))
    else:
        results = [func(it) for it in items]
    checks = [c for r in results for c in (r if isinstance(r, list) else [r])]
    checks.sort(key=lambda c: c.item)
    return Report(name, params, checks, wall_time=time.perf_counter() - t0)


def _fmt_dict(q, d: dict, arity: int) -> str:
    F = field_from_q(q)
    cls = {1: LinComb, 2: Tensor2, 3: Tensor3}[arity]
    return serialize(cls(F, dict(d), _trusted=True))


def _w(w) -> str:
    return "".join(f"x{s}" for s in w) if w else "1"


# --- products -------------------------------------------------------------------------

def _assoc_item(args):
    q, op, u, v, w = args
    alg = algebra(q)
    k = alg.kernel(op)
    left = alg.combine(k, k(u, v), {w: 1})
    right = alg.combine(k, {u: 1}, k(v, w))
    return _check(f"{op} ({_w(u)},{_w(v)},{_w(w)})", left, right, lambda d: _fmt_dict(q, d, 1))


def _triples(max_total: int, depth_one: bool):
    for total in range(3, max_total + 1):
        for a in range(1, total - 1):
            for b in range(1, total - a):
                c = total - a - b
                if depth_one:
                    yield (a,), (b,), (c,)
                else:
                    for u in words_of_weight(a):
                        for v in words_of_weight(b):
                            for w in words_of_weight(c):
                                yield u, v, w


def sweep_associativity_words(q: int, max_total_weight: int, ops=("shuffle", "diamond", "stuffle"),
                              depth_one_only: bool = False, jobs: int = 1) -> Report:
    """(u.v).w = u.(v.w) for every triple of nonempty words with total weight <= max_total_weight."""
    items = [(q, op, u, v, w) for op in ops for u, v, w in _triples(max_total_weight, depth_one_only)]
    params = {"q": q, "max_total_weight": max_total_weight, "ops": ",".join(ops),
              "depth_one_only": depth_one_only}
    return _run("associativity_words", params, _assoc_item, items, jobs)


def _comm_item(args):
    q, op, u, v = args
    k = algebra(q).kernel(op)
    return _check(f"{op} ({_w(u)},{_w(v)})", k(u, v), k(v, u), lambda d: _fmt_dict(q, d, 1))


def _pairs(max_total: int):
    for total in range(2, max_total + 1):
        for a in range(1, total):
            for u in words_of_weight(a):
                for v in words_of_weight(total - a):
                    yield u, v


def sweep_commutativity(q: int, max_total_weight: int, ops=("shuffle", "diamond", "stuffle"), jobs: int = 1) -> Report:
    items = [(q, op, u, v) for op in ops for u, v in _pairs(max_total_weight)]
    return _run("commutativity", {"q": q, "max_total_weight": max_total_weight}, _comm_item, items, jobs)


def _assoc_ps_item(args):
    q, r, s, t, d = args
    F = field_from_q(q)
    alg = algebra(q)
    dia = alg.diamond_w
    left = alg.combine(dia, dia((r,), (s,)), {(t,): 1})
    right = alg.combine(dia, {(r,): 1}, dia((s,), (t,)))
    vl = S_lincomb(LinComb(F, left, _trusted=True), d)
    vr = S_lincomb(LinComb(F, right, _trusted=True), d)
    direct = power_sum_S(F, d, (r,)) * power_sum_S(F, d, (s,)) * power_sum_S(F, d, (t,))
    item = f"S_{d} ({r},{s},{t})"
    if vl == vr == direct:
        return Check(item, True)
    return Check(item, False, vl.to_text(), f"{vr.to_text()} ; direct {direct.to_text()}")


def sweep_associativity_powersums(q: int, max_total_weight: int, max_d: int = 2, jobs: int = 1) -> Report:
    """Both expansions of S_d(r)S_d(s)S_d(t) in power sums evaluate to the same RatFunc."""
    items = [(q, u[0], v[0], w[0], d) for u, v, w in _triples(max_total_weight, True) for d in range(max_d + 1)]
    params = {"q": q, "max_total_weight": max_total_weight, "max_d": max_d}
    return _run("associativity_powersums", params, _assoc_ps_item, items, jobs)


# --- coproducts -------------------------------------------------------------------------

def _delta_fn(co, which):
    return co.delta if which == "shuffle" else co.delta_stuffle


def _coassoc_item(args):
    q, which, u = args
    co = coalgebra(q)
    p = co.p
    delta = _delta_fn(co, which)
    d = delta(u)
    left, right = {}, {}
    for (a, b), c in d.items():
        for (b1, b2), e in delta(b).items():
            _acc(left, (a, b1, b2), c * e, p)
        for (a1, a2), e in delta(a).items():
            _acc(right, (a1, a2, b), c * e, p)
    return _check(f"{which} {_w(u)}", left, right, lambda x: _fmt_dict(q, x, 3))


def sweep_coassociativity(q: int, depth_one_bound: int, all_words_weight_bound: int,
                          which: str = "shuffle", jobs: int = 1) -> Report:
    """(Id(x)D)D = (D(x)Id)D on x_n for n < depth_one_bound and on all words of weight < all_words_weight_bound."""
    co = coalgebra(q)
    if which == "shuffle":
        co.populate(max(depth_one_bound, all_words_weight_bound))
    words = {(n,) for n in range(1, depth_one_bound)}
    words.update(words_up_to_weight(all_words_weight_bound - 1))
    items = [(q, which, u) for u in sorted(words, key=lambda w: (sum(w), w))]
    params = {"q": q, "depth_one_bound": depth_one_bound, "all_words_weight_bound": all_words_weight_bound,
              "which": which}
    return _run("coassociativity", params, _coassoc_item, items, jobs)


def _compat_item(args):
    q, which, u, v = args
    co = coalgebra(q)
    alg, p = co.alg, co.p
    op = alg.shuffle_w if which == "shuffle" else alg.stuffle_w
    delta = _delta_fn(co, which)
    left = {}
    for w, c in op(u, v).items():
        for t, e in delta(w).items():
            _acc(left, t, c * e, p)
    right = {}
    for (a, b), c in delta(u).items():
        for (a2, b2), c2 in delta(v).items():
            lft = op(a, a2)
            rgt = op(b, b2)
            for l, cl in lft.items():
                for r, cr in rgt.items():
                    _acc(right, (l, r), c * c2 * cl * cr, p)
    return _check(f"{which} ({_w(u)},{_w(v)})", left, right, lambda x: _fmt_dict(q, x, 2))


def sweep_compatibility(q: int, max_total_weight: int, which: str = "shuffle", jobs: int = 1) -> Report:
    """D(u.v) = D(u).D(v) for all nonempty word pairs with w(u) + w(v) <= max_total_weight."""
    if which == "shuffle":
        coalgebra(q).populate(max_total_weight)
    items = [(q, which, u, v) for u, v in _pairs(max_total_weight)]
    params = {"q": q, "max_total_weight": max_total_weight, "which": which}
    return _run("compatibility", params, _compat_item, items, jobs)


def _hopf_item(args):
    q, which, u = args
    co = coalgebra(q)
    alg, p = co.alg, co.p
    mult = alg.shuffle_w if which == "shuffle" else alg.stuffle_w
    delta = _delta_fn(co, which)
    anti = co.antipode if which == "shuffle" else co.antipode_stuffle
    d = delta(u)
    tag = f"{which} {_w(u)}"
    out = []
    # counit on either side
    left = {b: c for (a, b), c in d.items() if not a}
    right = {a: c for (a, b), c in d.items() if not b}
    out.append(_check(f"{tag} counit-left", left, {u: 1}, lambda x: _fmt_dict(q, x, 1)))
    out.append(_check(f"{tag} counit-right", right, {u: 1}, lambda x: _fmt_dict(q, x, 1)))
    # connected grading: besides 1(x)u and u(x)1 only positive-weight pairs occur
    bad = {t: c for t, c in d.items() if (not t[0] or not t[1]) and t not in (((), u), (u, ()))}
    out.append(_check(f"{tag} connected", bad, {}, lambda x: _fmt_dict(q, x, 2)))
    # antipode convolutions
    unit = {(): 1} if not u else {}
    conv_l, conv_r = {}, {}
    for (a, b), c in d.items():
        for w, e in alg.combine(mult, anti(a), {b: 1}).items():
            _acc(conv_l, w, c * e, p)
        for w, e in alg.combine(mult, {a: 1}, anti(b)).items():
            _acc(conv_r, w, c * e, p)
    out.append(_check(f"{tag} antipode-left", conv_l, unit, lambda x: _fmt_dict(q, x, 1)))
    out.append(_check(f"{tag} antipode-right", conv_r, unit, lambda x: _fmt_dict(q, x, 1)))
    if which == "stuffle":
        out.append(_check(f"{tag} antipode-formula-vs-recursion", co.antipode_stuffle(u),
                          co.antipode_stuffle_rec(u), lambda x: _fmt_dict(q, x, 1)))
    return out


def sweep_hopf_axioms(q: int, max_weight: int, which: str = "shuffle", jobs: int = 1) -> Report:
    """Counit, grading, bialgebra compatibility, coassociativity and antipode identities up to max_weight."""
    if which not in ("shuffle", "stuffle"):
        raise ValueError("which must be 'shuffle' or 'stuffle'")
    t0 = time.perf_counter()
    if which == "shuffle":
        coalgebra(q).populate(max_weight)
    words = list(words_up_to_weight(max_weight, include_empty=True))
    rep = _run("hopf_axioms", {"q": q, "max_weight": max_weight, "which": which}, _hopf_item,
               [(q, which, u) for u in words], jobs)
    compat = sweep_compatibility(q, max_weight, which, jobs)
    coassoc = sweep_coassociativity(q, 1, max_weight + 1, which, jobs)
    rep.checks.extend(Check("bialgebra " + c.item, c.passed, c.lhs, c.rhs) for c in compat.checks)
    rep.checks.extend(Check("coassociativity " + c.item, c.passed, c.lhs, c.rhs) for c in coassoc.checks)
    rep.checks.sort(key=lambda c: c.item)
    rep.wall_time = time.perf_counter() - t0
    return rep


def _closed_item(args):
    q, n = args
    co = coalgebra(q)
    return _check(f"closed x{n}", co.delta_closed(n), co.delta((n,)), lambda x: _fmt_dict(q, x, 2))


def sweep_closed_form(q: int, max_n: int, jobs: int = 1) -> Report:
    """The closed-form single-letter coproduct agrees with the recursion for 1 <= n <= max_n."""
    coalgebra(q).populate(max_n)
    return _run("closed_form", {"q": q, "max_n": max_n}, _closed_item, [(q, n) for n in range(1, max_n + 1)], jobs)


def sweep_special_cases(q: int) -> Report:
    """Explicit small-n formulas: primitive letters, the q < n <= q^2 formula, multiples of q-1, x_{q^2-1}."""
    t0 = time.perf_counter()
    F = field_from_q(q)
    co = coalgebra(q)
    co.populate(q * q)
    fmt = lambda x: _fmt_dict(q, x, 2)
    checks = []
    for n in range(1, q * q + 1):
        checks.append(_check(f"small-formula x{n}", dict(coproduct_depth_one_small(F, n)._terms),
                             co.delta((n,)), fmt))
    for n in range(1, q + 1):
        checks.append(_check(f"primitive x{n}", co.delta((n,)), {((), (n,)): 1, ((n,), ()): 1}, fmt))
    for k in range(2, q + 1):
        n = k * (q - 1)
        expect = {((), (n,)): 1, ((n,), ()): 1}
        for i in range(1, k):
            _acc(expect, ((i * (q - 1),), ((k - i) * (q - 1),)), comb(k, i), F.p)
        checks.append(_check(f"multiple-of-q-1 x{n}", co.delta((n,)), expect, fmt))
    n = q * q - 1
    expect = {((), (n,)): 1, ((n,), ()): 1}
    _acc(expect, ((q * (q - 1),), (q - 1,)), 1, F.p)
    checks.append(_check(f"q^2-1 x{n}", co.delta((n,)), expect, fmt))
    checks.sort(key=lambda c: c.item)
    return Report("special_cases", {"q": q}, checks, wall_time=time.perf_counter() - t0)


def _shi_item(args):
    q, u = args
    co = coalgebra(q)
    return _check(f"shi {_w(u)}", co.delta_shi(u), co.delta(u), lambda x: _fmt_dict(q, x, 2))


def sweep_shi(q: int, max_weight: int, jobs: int = 1) -> Report:
    """Shi's concatenation-based coproduct equals the triangle-based one on every word up to max_weight."""
    coalgebra(q).populate(max_weight)
    items = [(q, u) for u in words_up_to_weight(max_weight, include_empty=True)]
    return _run("shi_equivalence", {"q": q, "max_weight": max_weight}, _shi_item, items, jobs)


def sweep_frobenius(q: int, max_qn: int) -> Report:
    """D(x_{qn}) equals D(x_n) with every letter multiplied by q, for qn <= max_qn."""
    t0 = time.perf_counter()
    co = coalgebra(q)
    co.populate(max_qn)
    checks = []
    for n in range(1, max_qn // q + 1):
        lifted = {tuple(tuple(q * s for s in w) for w in t): c for t, c in co.delta((n,)).items()}
        checks.append(_check(f"frobenius x{n}", co.delta((q * n,)), lifted, lambda x: _fmt_dict(q, x, 2)))
    return Report("frobenius_lift", {"q": q, "max_qn": max_qn}, checks, wall_time=time.perf_counter() - t0)


# --- power sums ----------------------------------------------------------------------------

def _chen_item(args):
    q, r, s, d = args
    F = field_from_q(q)
    out = []
    lhs = power_sum_S(F, d, (r,)) * power_sum_S(F, d, (s,))
    rhs = power_sum_S(F, d, (r + s,))
    for j in range(1, r + s):
        c = chen_delta(r, s, j, q)
        if c:
            rhs = rhs + power_sum_S(F, d, (r + s - j, j)).scale(c)
    out.append(_check(f"S_{d} ({r},{s})", lhs, rhs, RatFunc.to_text))
    lhs = power_sum_Slt(F, d, (r,)) * power_sum_Slt(F, d, (s,))
    rhs = power_sum_Slt(F, d, (r + s,)) + power_sum_Slt(F, d, (r, s)) + power_sum_Slt(F, d, (s, r))
    for j in range(1, r + s):
        c = chen_delta(r, s, j, q)
        if c:
            rhs = rhs + power_sum_Slt(F, d, (r + s - j, j)).scale(c)
    out.append(_check(f"S_<{d} ({r},{s})", lhs, rhs, RatFunc.to_text))
    # brute-force enumeration against the recursive evaluator
    for tup in ((r,), (r, s)):
        out.append(_check(f"enum S_{d} {tup}", power_sum_S_enum(F, d, tup), power_sum_S(F, d, tup),
                          RatFunc.to_text))
    return out


def sweep_chen(q: int, max_r: int, max_s: int, max_d: int, jobs: int = 1) -> Report:
    """Chen's depth-one product formula for S_d and S_{<d}, plus the enumeration oracle."""
    items = [(q, r, s, d) for r in range(1, max_r + 1) for s in range(1, max_s + 1) for d in range(max_d + 1)]
    params = {"q": q, "max_r": max_r, "max_s": max_s, "max_d": max_d}
    return _run("chen_formula", params, _chen_item, items, jobs)


def _maps_item(args):
    q, u, v, d = args
    F = field_from_q(q)
    alg = algebra(q)
    U, V = LinComb(F, {u: 1}, _trusted=True), LinComb(F, {v: 1}, _trusted=True)
    sh = LinComb(F, alg.shuffle_w(u, v), _trusted=True)
    st = LinComb(F, alg.stuffle_w(u, v), _trusted=True)
    dia = LinComb(F, alg.diamond_w(u, v), _trusted=True)
    tag = f"({_w(u)},{_w(v)}) d={d}"
    return [
        _check(f"shuffle-map {tag}", S_lt_lincomb(sh, d), S_lt_lincomb(U, d) * S_lt_lincomb(V, d), RatFunc.to_text),
        _check(f"stuffle-map {tag}", Si_lt_lincomb(st, d), Si_lt_lincomb(U, d) * Si_lt_lincomb(V, d), RatFunc.to_text),
        _check(f"diamond-map {tag}", S_lincomb(dia, d), S_lincomb(U, d) * S_lincomb(V, d), RatFunc.to_text),
    ]


def sweep_product_maps(q: int, max_total_weight: int, max_d: int, jobs: int = 1) -> Report:
    """S_{<d} turns shuffle into products, Si_{<d} does the same for stuffle, S_d for diamond."""
    items = [(q, u, v, d) for u, v in _pairs(max_total_weight) for d in range(max_d + 1)]
    params = {"q": q, "max_total_weight": max_total_weight, "max_d": max_d}
    return _run("product_maps", params, _maps_item, items, jobs)


def _random_poly(rng, F, max_deg):
    deg = rng.randint(0, max_deg)
    return tuple([rng.randrange(F.q) for _ in range(deg)] + [rng.randrange(1, F.q)])


def sweep_partial_fractions(q: int, count: int = 50, max_deg: int = 3, max_exp: int = 4, seed: int = 0) -> Report:
    """1/(a^r b^s) against its two-term expansion for random a != b."""
    t0 = time.perf_counter()
    F = field_from_q(q)
    rng = random.Random(seed * 1000 + q)
    checks = []
    for idx in range(count):
        a = _random_poly(rng, F, max_deg)
        b = a
        while b == a:
            b = _random_poly(rng, F, max_deg)
        r, s = rng.randint(1, max_exp), rng.randint(1, max_exp)
        ok = check_partial_fraction(F, a, b, r, s)
        item = f"#{idx:03d} a={poly_to_text(a)} b={poly_to_text(b)} r={r} s={s}"
        checks.append(Check(item, ok, None if ok else "1/(a^r b^s)", None if ok else "expansion"))
    params = {"q": q, "count": count, "max_deg": max_deg, "max_exp": max_exp, "seed": seed}
    return Report("partial_fractions", params, checks, wall_time=time.perf_counter() - t0)


def sweep_hoffman(q: int, max_w: int) -> Report:
    t0 = time.perf_counter()
    checks = [_check(f"w={w}", len(hoffman_basis(w, q)), hoffman_dimension(w, q)) for w in range(max_w + 1)]
    return Report("hoffman", {"q": q, "max_w": max_w}, checks, wall_time=time.perf_counter() - t0)


def sweep_depth_q_agreement(q: int, max_d: int = 3, max_depth: int = 2) -> Report:
    """S_d(s) = Si_d(s) whenever every s_i <= q."""
    t0 = time.perf_counter()
    F = field_from_q(q)
    checks = []
    for r in range(1, max_depth + 1):
        for s in itertools.product(range(1, q + 1), repeat=r):
            for d in range(max_d + 1):
                checks.append(_check(f"S_{d}{s}", power_sum_S(F, d, s), carlitz_sum_Si(F, d, s), RatFunc.to_text))
    return Report("depth_q_agreement", {"q": q, "max_d": max_d, "max_depth": max_depth}, checks,
                  wall_time=time.perf_counter() - t0)


# --- golden tables -------------------------------------------------------------------------

class MissingFixture(KeyError):
    pass


class FixtureChecksumError(RuntimeError):
    pass


def _data_file(name: str) -> str:
    return str(resources.files("fqhopf") / "data" / name)


def _pinned_checksums() -> dict:
    out = {}
    with open(_data_file("SHA256SUMS"), encoding="utf-8") as fh:
        for line in fh:
            digest, name = line.split()
            out[name] = digest
    return out


def load_fixture(q: int) -> dict:
    """{n: LaTeX text of D(x_n)} for the shipped table of field order q, checksum-verified."""
    name = f"golden_q{q}.txt"
    path = _data_file(name)
    if not os.path.exists(path):
        raise MissingFixture(f"no golden table for q={q}")
    with open(path, "rb") as fh:
        raw = fh.read()
    pinned = _pinned_checksums().get(name)
    if pinned != hashlib.sha256(raw).hexdigest():
        raise FixtureChecksumError(f"{name} does not match its pinned SHA-256")
    table = {}
    for line in raw.decode("utf-8").splitlines():
        n, _, body = line.partition("\t")
        table[int(n)] = body
    return table


def golden_tables(q: int, n_range, skip_missing: bool = False) -> Report:
    """Compare D(x_n) with the shipped table term for term.

    A weight absent from the table raises :class:`MissingFixture` naming it,
    unless ``skip_missing`` is set; then it is listed in ``Report.missing``.
    """
    t0 = time.perf_counter()
    F = field_from_q(q)
    table = load_fixture(q)
    co = coalgebra(q)
    ns = list(n_range)
    missing = [n for n in ns if n not in table]
    if missing and not skip_missing:
        raise MissingFixture(f"golden table for q={q} has no entry for n={missing[0]}")
    if ns:
        co.populate(max(ns))
    checks = []
    for n in ns:
        if n in missing:
            continue
        expect = parse_tensor(table[n], F)
        got = Tensor2(F, dict(co.delta((n,))), _trusted=True)
        checks.append(_check(f"x{n:04d}", got, expect))
    rep = Report("golden_tables", {"q": q, "n_min": min(ns, default=0), "n_max": max(ns, default=0)},
                 checks, missing=[f"x{n}" for n in missing], wall_time=time.perf_counter() - t0)
    return rep


# --- named suites for the command line -----------------------------------------------------

def _suite_defaults(q, W):
    return {
        "associativity": lambda jobs: sweep_associativity_words(q, W or 8, jobs=jobs),
        "commutativity": lambda jobs: sweep_commutativity(q, W or 8, jobs=jobs),
        "associativity-powersums": lambda jobs: sweep_associativity_powersums(q, W or 6, jobs=jobs),
        "coassociativity": lambda jobs: sweep_coassociativity(q, (W or 12) + 1, (W or 12) + 1, jobs=jobs),
        "compatibility": lambda jobs: sweep_compatibility(q, W or 12, jobs=jobs),
        "hopf-shuffle": lambda jobs: sweep_hopf_axioms(q, W or 8, "shuffle", jobs=jobs),
        "hopf-stuffle": lambda jobs: sweep_hopf_axioms(q, W or 8, "stuffle", jobs=jobs),
        "closed-form": lambda jobs: sweep_closed_form(q, W or 40, jobs=jobs),
        "special-cases": lambda jobs: sweep_special_cases(q),
        "shi": lambda jobs: sweep_shi(q, W or 10, jobs=jobs),
        "frobenius": lambda jobs: sweep_frobenius(q, W or 40),
        "chen": lambda jobs: sweep_chen(q, 5, 5, 3, jobs=jobs),
        "product-maps": lambda jobs: sweep_product_maps(q, W or 6, 3, jobs=jobs),
        "partial-fractions": lambda jobs: sweep_partial_fractions(q),
        "hoffman": lambda jobs: sweep_hoffman(q, W or 2 * q),
        "golden": lambda jobs: golden_tables(q, sorted(load_fixture(q))),
    }


SUITES = sorted(_suite_defaults(3, None))


def run_suite(name: str, q: int, max_weight: int | None = None, jobs: int = 1) -> Report:
    table = _suite_defaults(q, max_weight)
    if name not in table:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return table[name](jobs)
