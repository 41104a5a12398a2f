import random
from fractions import Fraction

import pytest

from conftest import cycle, path
from indbound import intervals
from indbound.graphs import Graph, complete_bipartite, from_edges
from indbound.products import (
    DegreeBoundError,
    FactorProduct,
    Outcome,
    certify_sum_inequality,
    certify_sum_outcome,
    check_f_fact,
    compare_count_to_product,
    compare_pure_products,
    factor,
    factorize,
    pi_product,
)


def test_factor_fields():
    f = factor(2, 3)
    assert f.base == 11 and f.exponent == Fraction(1, 6)
    g = factor(3, 2)
    assert g.base == f.base and g.exponent == f.exponent
    assert factor(1, 1).base == 3 and factor(1, 1).exponent == 1
    with pytest.raises(ValueError):
        factor(0, 1)


def test_factorize():
    assert factorize(63) == ((3, 2), (7, 1))
    assert factorize(2) == ((2, 1),)
    assert factorize(1) == ()


def test_product_merging_and_identity():
    p = FactorProduct.one().times_f(1, 3, 3)  # 9^(3/3) = 9 = 3^2
    assert p.is_integral() and p.as_integer() == 9
    assert p == FactorProduct.from_factor(3, 2)
    q = FactorProduct.one().times_f(1, 1).times(3, -1)
    assert q.is_one()


def test_pi_product_examples():
    for a in range(1, 6):
        for b in range(1, 6):
            p = pi_product(complete_bipartite(a, b))
            assert p.is_integral() and p.as_integer() == 2**a + 2**b - 1
    assert pi_product(Graph(1, ((),))).as_integer() == 2
    assert pi_product(path(3)).as_integer() == 5
    assert pi_product(Graph(0, ())).is_one()


def test_pi_product_degree_guard():
    star6 = from_edges(7, [(0, i) for i in range(1, 7)])
    with pytest.raises(DegreeBoundError):
        pi_product(star6)
    assert pi_product(star6, max_degree=6).exponents()


def test_pi_multiplicative_over_unions():
    rng = random.Random(21)
    from indbound.selftest import random_graph_max_degree

    for _ in range(50):
        n1, n2 = rng.randint(0, 6), rng.randint(0, 6)
        g1 = random_graph_max_degree(rng, n1, 0.5, 4)
        g2 = random_graph_max_degree(rng, n2, 0.5, 4)
        union = from_edges(
            n1 + n2, list(g1.edges()) + [(u + n1, v + n1) for u, v in g2.edges()]
        )
        assert pi_product(union) == pi_product(g1) * pi_product(g2)


def test_compare_pure_products_examples():
    v = compare_pure_products(
        FactorProduct.one().times_f(1, 2, 2), FactorProduct.one().times_f(1, 1)
    )
    assert v.outcome == Outcome.STRICTLY_GREATER
    v = compare_pure_products(
        FactorProduct.one().times_f(2, 2, 4), FactorProduct.one().times_f(1, 3, 3)
    )
    assert v.outcome == Outcome.STRICTLY_LESS  # 7 vs 9
    p = FactorProduct.one().times_f(2, 2).times_f(1, 2)
    assert compare_pure_products(p, p).outcome == Outcome.EQUAL


def test_check_f_fact():
    report = check_f_fact(5)
    assert report.passed and len(report.cases) == 100 and report.failures == 0
    outcomes = dict(report.cases)
    assert outcomes[(2, 1, 2, 1)] == Outcome.STRICTLY_GREATER
    # the cleared comparison behind (2,1,2,1): 5^4 = 625 vs 3^4 * 7 = 567
    lhs = FactorProduct.one().times_f(1, 2).times_f(2, 1)
    rhs = FactorProduct.one().times_f(1, 1).times_f(2, 2)
    v = compare_pure_products(lhs, rhs)
    assert v.detail["cleared_lhs"] == 625 and v.detail["cleared_rhs"] == 567
    for delta in (2, 3, 4):
        assert check_f_fact(delta).passed
    with pytest.raises(ValueError):
        check_f_fact(6)
    with pytest.raises(ValueError):
        check_f_fact(1)
    assert check_f_fact(6, allow_beyond_five=True).passed


def test_certify_sum_integer_identities():
    three = FactorProduct.from_factor(3, 1)
    two = FactorProduct.from_factor(2, 1)
    one = FactorProduct.one()
    assert certify_sum_inequality(three, two, one).outcome == Outcome.EQUAL
    seven = FactorProduct.from_factor(7, 1)
    five = FactorProduct.from_factor(5, 1)
    assert certify_sum_inequality(seven, five, two).outcome == Outcome.EQUAL
    v = certify_sum_inequality(seven, two, two)
    assert v.outcome == Outcome.STRICTLY_GREATER and v.method == "exact"


def _fig1_products():
    a = FactorProduct.one().times_f(1, 2).times_f(2, 2).times_f(2, 4).times_f(1, 4, 3)
    b = FactorProduct.one().times_f(1, 2).times_f(2, 4).times_f(1, 4, 3)
    c = FactorProduct.one().times_f(1, 4, 4)
    return a, b, c


def test_certify_sum_interval_case():
    a, b, c = _fig1_products()
    v = certify_sum_inequality(a, b, c)
    assert v.outcome == Outcome.STRICTLY_LESS and v.method == "interval"
    # the whole-graph values: A about 43.9988, B + C about 27.045 + 17
    iv = a.value_interval(128)
    lo = intervals.to_decimal_str(iv.lo_m, iv.lo_e)
    assert lo.startswith("43.99")
    assert c.is_integral() and c.as_integer() == 17


def test_certify_sum_undecided_at_tiny_precision():
    a, b, c = _fig1_products()
    v = certify_sum_inequality(a, b, c, precision_start=8, precision_cap=8)
    assert v.outcome == Outcome.UNDECIDED and v.precision_bits == 8


def test_certify_cleared_equality_with_shared_irrational_factor():
    # K_{2,2} equality 7 = 5 + 2 multiplied through by the P4 product
    shared = pi_product(path(4))
    a = FactorProduct.from_factor(7, 1) * shared
    b = FactorProduct.from_factor(5, 1) * shared
    c = FactorProduct.from_factor(2, 1) * shared
    v = certify_sum_inequality(a, b, c, equality_expected=True)
    assert v.outcome == Outcome.EQUAL and v.method == "exact"


def test_fast_outcome_matches_full():
    rng = random.Random(22)
    for _ in range(300):
        counts = [{}, {}, {}]
        isos = [rng.randint(0, 2) for _ in range(3)]
        for c in counts:
            for _ in range(rng.randint(0, 5)):
                a = rng.randint(1, 5)
                b = rng.randint(1, 5)
                key = (min(a, b), max(a, b))
                c[key] = c.get(key, 0) + rng.randint(1, 3)
        full = certify_sum_inequality(
            FactorProduct.from_f_counts(counts[0], isos[0]),
            FactorProduct.from_f_counts(counts[1], isos[1]),
            FactorProduct.from_f_counts(counts[2], isos[2]),
        )
        fast = certify_sum_outcome(
            counts[0], isos[0], counts[1], isos[1], counts[2], isos[2]
        )
        assert fast[0] == full.outcome


def test_compare_count_to_product():
    k2_k22 = from_edges(6, [(0, 1), (2, 4), (2, 5), (3, 4), (3, 5)])
    v = compare_count_to_product(21, pi_product(k2_k22))
    assert v.outcome == Outcome.EQUAL
    v = compare_count_to_product(8, pi_product(path(4)))
    assert v.outcome == Outcome.STRICTLY_LESS
    v = compare_count_to_product(4, pi_product(cycle(3)))
    assert v.outcome == Outcome.STRICTLY_LESS
    v = compare_count_to_product(9, pi_product(path(4)))
    assert v.outcome == Outcome.STRICTLY_GREATER  # 9 > 5 * 7^(1/4)


def test_interval_soundness_brackets_integers():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(2, 40)
        k = rng.randint(1, 6)
        p = FactorProduct.from_factor(n, k)
        iv = p.value_interval(256)
        assert intervals.contains_int(iv, n**k)


def test_interval_width_monotone():
    rng = random.Random(24)
    for _ in range(60):
        p = FactorProduct.one()
        for _ in range(rng.randint(1, 6)):
            p = p.times_f(rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 4))
        widths = []
        for prec in (64, 128, 256):
            iv = p.value_interval(prec)
            lo = Fraction(iv.lo_m) * Fraction(2) ** iv.lo_e
            hi = Fraction(iv.hi_m) * Fraction(2) ** iv.hi_e
            assert hi >= lo > 0
            widths.append((hi - lo) / lo)
        assert widths[0] >= widths[1] >= widths[2]


def test_merged_product_interval_consistent_with_parts():
    # evaluating p * q overlaps the interval product of separate evaluations
    rng = random.Random(26)
    for _ in range(50):
        p = FactorProduct.one()
        q = FactorProduct.one()
        for _ in range(rng.randint(1, 4)):
            p = p.times_f(rng.randint(1, 5), rng.randint(1, 5))
            q = q.times_f(rng.randint(1, 5), rng.randint(1, 5))
        merged = (p * q).value_interval(128)
        ip = p.value_interval(128)
        iq = q.value_interval(128)
        combined = intervals.mul(ip, iq, 192)
        assert not intervals.strictly_above(merged, combined)
        assert not intervals.strictly_above(combined, merged)


def test_compare_pure_agrees_with_intervals_at_512():
    rng = random.Random(25)
    for _ in range(100):
        p = FactorProduct.one()
        q = FactorProduct.one()
        for _ in range(rng.randint(0, 4)):
            p = p.times_f(rng.randint(1, 5), rng.randint(1, 5))
        for _ in range(rng.randint(0, 4)):
            q = q.times_f(rng.randint(1, 5), rng.randint(1, 5))
        verdict = compare_pure_products(p, q)
        ip = p.value_interval(512)
        iq = q.value_interval(512)
        if intervals.strictly_above(ip, iq):
            assert verdict.outcome == Outcome.STRICTLY_GREATER
        elif intervals.strictly_above(iq, ip):
            assert verdict.outcome == Outcome.STRICTLY_LESS
        else:
            assert verdict.outcome == Outcome.EQUAL


def test_verdict_serialization():
    a, b, c = _fig1_products()
    j = certify_sum_inequality(a, b, c).to_json()
    assert j["outcome"] == "strictly_less"
    assert j["method"] == "interval"
    assert isinstance(j["lhs"], str) and len(j["rhs_terms"]) == 2
