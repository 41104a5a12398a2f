"""Formal algebra of the independence bound.

The bound assigns every edge uv the factor f(a,b) = (2^a + 2^b - 1)^(1/ab)
with a = d(u), b = d(v), and every isolated vertex the factor 2.  A
FactorProduct is a finite product of such factors, stored as a map from
prime bases to exact rational exponents (inserted bases are factorized, so
two products are equal as real numbers iff their maps are equal).

Comparisons are certified, never floating point:
  * pure products compare exactly by clearing denominators into big integers;
  * sums (A versus B + C) first divide out the common factor and compare
    exact integers when the reduced exponents are integral, otherwise use
    directed-rounding interval arithmetic at escalating precision;
  * Equal is only ever declared by an exact integer identity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from . import intervals
from .graphs import Graph
from .intervals import Interval

PRECISION_START = 128
PRECISION_CAP = 8192

_ZERO = Fraction(0)


class DegreeBoundError(ValueError):
    """Graph exceeds the degree bound the algebra is configured for."""


class Outcome(enum.Enum):
    STRICTLY_GREATER = "strictly_greater"
    EQUAL = "equal"
    STRICTLY_LESS = "strictly_less"
    UNDECIDED = "undecided"

    def is_good(self) -> bool:
        """A >= B + C holds (the certified outcome is >= )."""
        return self in (Outcome.STRICTLY_GREATER, Outcome.EQUAL)


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    method: str  # "exact" | "interval"
    precision_bits: int | None
    lhs: "FactorProduct | int"
    rhs: tuple["FactorProduct", ...]
    detail: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        def plain(v):
            if isinstance(v, bool):
                return v
            if isinstance(v, int):
                return str(v)  # certificate integers can be hundreds of digits
            if isinstance(v, (list, tuple)):
                return [plain(x) for x in v]
            return v

        out = {
            "outcome": self.outcome.value,
            "method": self.method,
            "precision_bits": self.precision_bits,
            "lhs": str(self.lhs),
            "rhs_terms": [str(t) for t in self.rhs],
        }
        for k, v in self.detail.items():
            out[k] = plain(v)
        return out


_factor_cache: dict[int, tuple[tuple[int, int], ...]] = {}


def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m >= 1 as ((p, multiplicity), ...)."""
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    cached = _factor_cache.get(m)
    if cached is not None:
        return cached
    out = []
    rem = m
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            k = 0
            while rem % p == 0:
                rem //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if rem > 1:
        out.append((rem, 1))
    result = tuple(out)
    _factor_cache[m] = result
    return result


@dataclass(frozen=True)
class Factor:
    """One edge factor: base 2^a + 2^b - 1 with exponent 1/(a*b)."""

    a: int
    b: int
    base: int
    exponent: Fraction


def factor(a: int, b: int) -> Factor:
    if a < 1 or b < 1:
        raise ValueError(f"factor degrees must be positive, got ({a}, {b})")
    return Factor(a, b, (1 << a) + (1 << b) - 1, Fraction(1, a * b))


class FactorProduct:
    """Product of integer bases raised to exact rational exponents."""

    __slots__ = ("_exp",)

    def __init__(self, _exp: dict[int, Fraction] | None = None):
        # internal: callers use one()/from_factor()/from_f_counts()
        self._exp = _exp if _exp is not None else {}

    @classmethod
    def one(cls) -> "FactorProduct":
        return cls()

    @classmethod
    def from_factor(cls, base: int, exponent: Fraction | int) -> "FactorProduct":
        return cls().times(base, exponent)

    @classmethod
    def from_f_counts(cls, counts: Mapping[tuple[int, int], int], two_exp: int = 0) -> "FactorProduct":
        """Product of f(a,b)^m over a multiplicity map, times 2^two_exp."""
        exp: dict[int, Fraction] = {}
        if two_exp:
            exp[2] = Fraction(two_exp)
        for (a, b), m in counts.items():
            if m == 0:
                continue
            base = (1 << a) + (1 << b) - 1
            ab = a * b
            for p, k in factorize(base):
                e = exp.get(p, _ZERO) + Fraction(m * k, ab)
                if e:
                    exp[p] = e
                elif p in exp:
                    del exp[p]
        return cls(exp)

    def times(self, base: int, exponent: Fraction | int) -> "FactorProduct":
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        exponent = Fraction(exponent)
        new = dict(self._exp)
        for p, k in factorize(base):
            e = new.get(p, _ZERO) + k * exponent
            if e:
                new[p] = e
            elif p in new:
                del new[p]
        return FactorProduct(new)

    def times_f(self, a: int, b: int, mult: int = 1) -> "FactorProduct":
        f = factor(a, b)
        return self.times(f.base, f.exponent * mult)

    def __mul__(self, other: "FactorProduct") -> "FactorProduct":
        new = dict(self._exp)
        for p, e in other._exp.items():
            s = new.get(p, _ZERO) + e
            if s:
                new[p] = s
            elif p in new:
                del new[p]
        return FactorProduct(new)

    def __pow__(self, k: int) -> "FactorProduct":
        if k == 0:
            return FactorProduct()
        return FactorProduct({p: e * k for p, e in self._exp.items()})

    def exponents(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple(sorted(self._exp.items()))

    def is_one(self) -> bool:
        return not self._exp

    def is_integral(self) -> bool:
        return all(e.denominator == 1 and e >= 0 for e in self._exp.values())

    def as_integer(self) -> int:
        if not self.is_integral():
            raise ValueError(f"{self} is not an integer product")
        out = 1
        for p, e in self._exp.items():
            out *= p ** int(e)
        return out

    def value_interval(self, precision_bits: int = PRECISION_START) -> Interval:
        """Directed-rounding interval containing the exact value."""
        work = precision_bits + intervals.GUARD_BITS
        pos = intervals.exact(1)
        neg = intervals.exact(1)
        for p, e in self._exp.items():
            iv = intervals.prime_power_interval(p, abs(e.numerator), e.denominator, work)
            if e > 0:
                pos = intervals.mul(pos, iv, work)
            else:
                neg = intervals.mul(neg, iv, work)
        out = pos if neg == intervals.exact(1) else intervals.div(pos, neg, work)
        return intervals.round_to(out, precision_bits)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FactorProduct) and self._exp == other._exp

    def __hash__(self) -> int:
        return hash(self.exponents())

    def __str__(self) -> str:
        if not self._exp:
            return "1"
        parts = []
        for p, e in sorted(self._exp.items()):
            if e.denominator == 1:
                parts.append(f"{p}^{e.numerator}" if e != 1 else str(p))
            else:
                parts.append(f"{p}^({e.numerator}/{e.denominator})")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"FactorProduct({self})"


def pi_product(g: Graph, max_degree: int = 5) -> FactorProduct:
    """The bound product: 2^iso(G) * prod over edges of f(d(u), d(v))."""
    degs = g.degrees()
    worst = max(degs, default=0)
    if worst > max_degree:
        raise DegreeBoundError(f"graph has degree {worst}, bound configured for <= {max_degree}")
    counts: dict[tuple[int, int], int] = {}
    for u, v in g.edges():
        a, b = degs[u], degs[v]
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + 1
    return FactorProduct.from_f_counts(counts, two_exp=g.iso_count())


def _cleared_sides(diff: dict[int, Fraction]) -> tuple[int, int, int]:
    """Clear denominators of an exponent difference; returns (L, lhs, rhs)
    with lhs/rhs integers such that the original ratio compares as lhs vs rhs."""
    denominators = [e.denominator for e in diff.values()]
    L = lcm(*denominators) if denominators else 1
    pos = 1
    neg = 1
    for p, e in diff.items():
        k = int(e * L)
        if k > 0:
            pos *= p**k
        elif k < 0:
            neg *= p**-k
    return L, pos, neg


def compare_pure_products(p: FactorProduct, q: FactorProduct) -> Verdict:
    """Exact ordering of two products; never Undecided."""
    diff: dict[int, Fraction] = dict(p._exp)
    for prime, e in q._exp.items():
        d = diff.get(prime, _ZERO) - e
        if d:
            diff[prime] = d
        elif prime in diff:
            del diff[prime]
    L, lhs, rhs = _cleared_sides(diff)
    if lhs > rhs:
        outcome = Outcome.STRICTLY_GREATER
    elif lhs < rhs:
        outcome = Outcome.STRICTLY_LESS
    else:
        outcome = Outcome.EQUAL
    return Verdict(
        outcome,
        "exact",
        None,
        p,
        (q,),
        {"clearing_exponent": L, "cleared_lhs": lhs, "cleared_rhs": rhs},
    )


def _reduce_common(terms: list[dict[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Divide all terms by the per-prime minimum exponent (valid for any
    inequality among them, the common factor being positive)."""
    common: dict[int, Fraction] = {}
    primes = set()
    for t in terms:
        primes.update(t)
    for p in primes:
        m = min(t.get(p, _ZERO) for t in terms)
        if m:
            common[p] = m
    if not common:
        return [dict(t) for t in terms]
    out = []
    for t in terms:
        r = {}
        for p in primes:
            e = t.get(p, _ZERO) - common.get(p, _ZERO)
            if e:
                r[p] = e
        out.append(r)
    return out


def _all_integral(exp: dict[int, Fraction]) -> bool:
    return all(e.denominator == 1 and e >= 0 for e in exp.values())


def _as_int(exp: dict[int, Fraction]) -> int:
    out = 1
    for p, e in exp.items():
        out *= p ** int(e)
    return out


def _precision_schedule(start: int, cap: int):
    prec = start
    while True:
        yield prec
        if prec >= cap:
            return
        prec = min(prec * 2, cap)


def certify_sum_inequality(
    a: FactorProduct,
    b: FactorProduct,
    c: FactorProduct,
    equality_expected: bool = False,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> Verdict:
    """Certified comparison of a against b + c.

    The three terms are first divided by their common factor.  When the
    reduced exponents are integral the comparison is an exact big-integer
    identity (the only route that may return Equal); otherwise each reduced
    term is evaluated as a directed-rounding interval, doubling precision up
    to the cap.  Hitting the cap returns Undecided, never a silent pass.
    """
    ra, rb, rc = _reduce_common([a._exp, b._exp, c._exp])
    if _all_integral(ra) and _all_integral(rb) and _all_integral(rc):
        ia, ib, ic = _as_int(ra), _as_int(rb), _as_int(rc)
        if ia > ib + ic:
            outcome = Outcome.STRICTLY_GREATER
        elif ia == ib + ic:
            outcome = Outcome.EQUAL
        else:
            outcome = Outcome.STRICTLY_LESS
        return Verdict(
            outcome,
            "exact",
            None,
            a,
            (b, c),
            {"reduced_lhs": ia, "reduced_rhs": [ib, ic], "equality_expected": equality_expected},
        )
    fa, fb, fc = FactorProduct(ra), FactorProduct(rb), FactorProduct(rc)
    last = None
    for prec in _precision_schedule(precision_start, precision_cap):
        iva = fa.value_interval(prec)
        ivb = fb.value_interval(prec)
        ivc = fc.value_interval(prec)
        ivsum = intervals.add(ivb, ivc)
        if intervals.strictly_above(iva, ivsum):
            outcome = Outcome.STRICTLY_GREATER
        elif intervals.strictly_above(ivsum, iva):
            outcome = Outcome.STRICTLY_LESS
        else:
            last = (iva, ivsum)
            continue
        return Verdict(
            outcome,
            "interval",
            prec,
            a,
            (b, c),
            {
                "lhs_interval": _interval_strings(iva),
                "rhs_sum_interval": _interval_strings(ivsum),
                "equality_expected": equality_expected,
            },
        )
    iva, ivsum = last
    return Verdict(
        Outcome.UNDECIDED,
        "interval",
        precision_cap,
        a,
        (b, c),
        {
            "lhs_interval": _interval_strings(iva),
            "rhs_sum_interval": _interval_strings(ivsum),
            "equality_expected": equality_expected,
        },
    )


def compare_count_to_product(
    count: int,
    product: FactorProduct,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> Verdict:
    """Certified comparison of an exact integer against a product."""
    if product.is_integral():
        value = product.as_integer()
        if count > value:
            outcome = Outcome.STRICTLY_GREATER
        elif count == value:
            outcome = Outcome.EQUAL
        else:
            outcome = Outcome.STRICTLY_LESS
        return Verdict(outcome, "exact", None, count, (product,),
                       {"count": count, "product_value": value})
    equality_checked = False
    last = None
    for prec in _precision_schedule(precision_start, precision_cap):
        iv = product.value_interval(prec)
        if intervals.dyadic_cmp(count, 0, iv.hi_m, iv.hi_e) > 0:
            return Verdict(Outcome.STRICTLY_GREATER, "interval", prec, count,
                           (product,), {"count": count, "product_interval": _interval_strings(iv)})
        if intervals.dyadic_cmp(count, 0, iv.lo_m, iv.lo_e) < 0:
            return Verdict(Outcome.STRICTLY_LESS, "interval", prec, count,
                           (product,), {"count": count, "product_interval": _interval_strings(iv)})
        if not equality_checked:
            equality_checked = True
            denominators = [e.denominator for _, e in product.exponents()]
            L = lcm(*denominators) if denominators else 1
            cleared = 1
            for p, e in product.exponents():
                cleared *= p ** int(e * L)
            if count**L == cleared:
                return Verdict(Outcome.EQUAL, "exact", None, count, (product,),
                               {"count": count, "clearing_exponent": L})
        last = iv
    return Verdict(Outcome.UNDECIDED, "interval", precision_cap, count, (product,),
                   {"count": count, "product_interval": _interval_strings(last)})


def _interval_strings(iv: Interval) -> list[str]:
    return [
        intervals.to_decimal_str(iv.lo_m, iv.lo_e),
        intervals.to_decimal_str(iv.hi_m, iv.hi_e),
    ]


# ---------------------------------------------------------------------------
# fast path for the exhaustive searches
#
# Search products are always of the form 2^k * prod f(a,b)^m with a,b <= 5,
# so every prime exponent is an integer multiple of 1/3600 (3600 = lcm of all
# a*b).  Representing exponents as integer numerators over the fixed
# denominator 3600 avoids Fraction arithmetic in the hot loop.  The logic
# mirrors certify_sum_inequality exactly: reduce by the common factor, exact
# integers when integral, directed intervals otherwise.

_SEARCH_DEN = 3600


def _prime_vec(a: int, b: int) -> tuple[tuple[int, int], ...]:
    base = (1 << a) + (1 << b) - 1
    step = _SEARCH_DEN // (a * b)
    return tuple((p, k * step) for p, k in factorize(base))


_prime_vec_cache: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}


def _accumulate(counts: Mapping[tuple[int, int], int], two_exp: int) -> dict[int, int]:
    acc: dict[int, int] = {}
    if two_exp:
        acc[2] = two_exp * _SEARCH_DEN
    for key, m in counts.items():
        if m == 0:
            continue
        vec = _prime_vec_cache.get(key)
        if vec is None:
            a, b = key
            if a * b > 25:
                raise ValueError(f"fast path requires degrees <= 5, got f{key}")
            vec = _prime_vec(a, b)
            _prime_vec_cache[key] = vec
        for p, num in vec:
            acc[p] = acc.get(p, 0) + m * num
    return acc


def _int_value(acc: dict[int, int]) -> int:
    out = 1
    for p, num in acc.items():
        out *= p ** (num // _SEARCH_DEN)
    return out


def _interval_value(acc: dict[int, int], prec: int) -> Interval:
    work = prec + intervals.GUARD_BITS
    out = intervals.exact(1)
    for p, num in acc.items():
        out = intervals.mul(
            out, intervals.prime_power_interval(p, num, _SEARCH_DEN, work), work
        )
    return intervals.round_to(out, prec)


def certify_sum_outcome(
    ca: Mapping[tuple[int, int], int],
    iso_a: int,
    cb: Mapping[tuple[int, int], int],
    iso_b: int,
    cc: Mapping[tuple[int, int], int],
    iso_c: int,
    precision_start: int = PRECISION_START,
    precision_cap: int = PRECISION_CAP,
) -> tuple[Outcome, str, int | None]:
    """Outcome of A >= B + C for products given as f-factor multiplicity maps
    plus powers of two; same decision procedure as certify_sum_inequality but
    without building report objects.  Returns (outcome, method, precision)."""
    ea = _accumulate(ca, iso_a)
    eb = _accumulate(cb, iso_b)
    ec = _accumulate(cc, iso_c)
    for p in set(ea) | set(eb) | set(ec):
        m = min(ea.get(p, 0), eb.get(p, 0), ec.get(p, 0))
        if m:
            for acc in (ea, eb, ec):
                r = acc.get(p, 0) - m
                if r:
                    acc[p] = r
                elif p in acc:
                    del acc[p]
    if all(
        num % _SEARCH_DEN == 0 for acc in (ea, eb, ec) for num in acc.values()
    ):
        ia, ib, ic = _int_value(ea), _int_value(eb), _int_value(ec)
        if ia > ib + ic:
            return Outcome.STRICTLY_GREATER, "exact", None
        if ia == ib + ic:
            return Outcome.EQUAL, "exact", None
        return Outcome.STRICTLY_LESS, "exact", None
    for prec in _precision_schedule(precision_start, precision_cap):
        iva = _interval_value(ea, prec)
        ivsum = intervals.add(_interval_value(eb, prec), _interval_value(ec, prec))
        if intervals.strictly_above(iva, ivsum):
            return Outcome.STRICTLY_GREATER, "interval", prec
        if intervals.strictly_above(ivsum, iva):
            return Outcome.STRICTLY_LESS, "interval", prec
    return Outcome.UNDECIDED, "interval", precision_cap


@dataclass(frozen=True)
class FFactReport:
    """Exact check of the factor exchange inequality
    f(a-a', b) * f(a, b-b') >= f(a-a', b-b') * f(a, b)
    over 0 < a' < a <= delta, 0 < b' < b <= delta."""

    delta: int
    cases: tuple[tuple[tuple[int, int, int, int], Outcome], ...]
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "cases": len(self.cases),
            "failures": self.failures,
            "verdict": "PASS" if self.passed else "FAIL",
            "detail": [
                {"a": a, "a_prime": ap, "b": b, "b_prime": bp, "outcome": o.value}
                for (a, ap, b, bp), o in self.cases
            ],
        }


def check_f_fact(delta: int, allow_beyond_five: bool = False) -> FFactReport:
    if delta < 2 or (delta > 5 and not allow_beyond_five):
        raise ValueError("delta must be in 2..5 (pass allow_beyond_five for the sweep)")
    cases = []
    failures = 0
    for a in range(2, delta + 1):
        for ap in range(1, a):
            for b in range(2, delta + 1):
                for bp in range(1, b):
                    lhs = FactorProduct.one().times_f(a - ap, b).times_f(a, b - bp)
                    rhs = FactorProduct.one().times_f(a - ap, b - bp).times_f(a, b)
                    verdict = compare_pure_products(lhs, rhs)
                    if not verdict.outcome.is_good():
                        failures += 1
                    cases.append(((a, ap, b, bp), verdict.outcome))
    return FFactReport(delta, tuple(cases), failures)
