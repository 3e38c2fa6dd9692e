"""Cusp-class table, refined threshold arithmetic, and the observed parity orders."""

from fractions import Fraction

import pytest

from pparity.arith import primes_between
from pparity.congruence import delta_of, hecke_default_prec, verify_theorem_bound
from pparity.cusps import (
    EXACT,
    LOWER_BOUND,
    cusp_classes,
    index_gamma0,
    nonidentity_order_sum,
    ord2_observed,
    order_bounds,
    sturm_report,
    sturm_rhs,
)
from pparity.errors import DomainError
from pparity.eta import PARITY_KERNEL_QUOTIENT, eta_quotient_expand
from pparity.series import GF2


def test_index_gamma0_values():
    assert index_gamma0(1) == 1
    assert index_gamma0(10) == 18          # 3 * (5 + 1)
    assert index_gamma0(18) == 36          # 18 * (3/2) * (4/3)
    assert index_gamma0(2) == 3
    for ell in primes_between(5, 50):
        assert index_gamma0(2 * ell) == 3 * (ell + 1)
    with pytest.raises(DomainError):
        index_gamma0(0)


def test_cusp_classes_for_5():
    classes = {c.gcd_class: c for c in cusp_classes(5)}
    assert classes[1].order == Fraction(1, 30) and classes[1].order_kind == EXACT
    assert classes[2].order == Fraction(-5, 3) and classes[2].order_kind == EXACT
    assert classes[5].order == Fraction(1, 6) and classes[5].order_kind == LOWER_BOUND
    assert classes[10].order == Fraction(1, 3) and classes[10].order_kind == LOWER_BOUND
    assert [classes[g].multiplicity for g in (1, 2, 5, 10)] == [10, 5, 2, 1]
    assert sum(c.multiplicity for c in classes.values()) == index_gamma0(10) == 18


def test_cusp_classes_for_7_and_representatives():
    classes = cusp_classes(7)
    assert [c.multiplicity for c in classes] == [14, 7, 2, 1]
    assert sum(c.multiplicity for c in classes) == 24 == 3 * 8
    by_gcd = {c.gcd_class: c.representative for c in classes}
    assert by_gcd[1] == ((0, -1), (1, 0))
    assert by_gcd[2] == ((1, 0), (6, 1))
    assert by_gcd[7] == ((1, 0), (21, 1))
    assert by_gcd[14] == ((1, 0), (0, 1))
    # the lower-left entries realize the gcd classes of 2*ell
    for c in classes:
        from math import gcd
        assert gcd(c.representative[1][0], 14) == c.gcd_class


def test_multiplicities_sum_to_index_up_to_199():
    for ell in primes_between(5, 199):
        assert sum(c.multiplicity for c in cusp_classes(ell)) == index_gamma0(2 * ell)


def test_cusp_classes_rejects_bad_input():
    for ell in (2, 3, 6, 9):
        with pytest.raises(DomainError):
            cusp_classes(ell)


def test_sturm_rhs_weight0_closed_form():
    ev = sturm_rhs(0, index_gamma0(10), nonidentity_order_sum(5))
    assert ev.rhs == Fraction(23, 3)
    assert ev.cusp_order_sum == 10 * Fraction(1, 30) + 5 * Fraction(-5, 3) + 2 * Fraction(1, 6)
    for ell in (5, 7, 11, 13):
        ev = sturm_rhs(0, index_gamma0(2 * ell), nonidentity_order_sum(ell))
        assert ev.rhs == Fraction(ell * ell - 2, 3)


def test_sturm_rhs_general_inputs():
    ev = sturm_rhs(0, 100, 0)
    assert ev.rhs == 0
    ev = sturm_rhs(Fraction(1, 2), 24, Fraction(1, 4))
    assert ev.rhs == Fraction(1, 2) / 12 * 24 - Fraction(1, 4) == Fraction(3, 4)
    with pytest.raises(DomainError):
        sturm_rhs(Fraction(1, 3), 12, 0)


def test_sturm_closed_form_up_to_199():
    for ell in primes_between(5, 199):
        ev = sturm_rhs(0, index_gamma0(2 * ell), nonidentity_order_sum(ell))
        assert ev.rhs == Fraction(ell * ell - 2, 3), ell


def test_order_bounds_examples():
    b5 = order_bounds(5)
    assert b5.ord2_bound == Fraction(23, 3)
    assert b5.m_bound == Fraction(1, 6)
    assert order_bounds(7).ord2_bound == Fraction(47, 3)
    for ell in primes_between(5, 199):
        b = order_bounds(ell)
        assert b.m_bound < Fraction(ell * ell - 1, 24), ell


def test_ord2_observed_examples(mega_parity):
    stream, _ = mega_parity
    assert ord2_observed(5, stream) == Fraction(19, 3)
    assert ord2_observed(7, stream) == Fraction(17, 3)
    assert ord2_observed(47, stream) == Fraction(24 * 49 - 1, 3 * 47) == Fraction(25, 3)


def test_ord2_observed_below_bound_up_to_199(mega_parity):
    stream, _ = mega_parity
    for ell in primes_between(5, 199):
        assert ord2_observed(ell, stream) <= order_bounds(ell).ord2_bound, ell


def test_series_route_matches_stream_route_up_to_50(mega_parity):
    # decimating the level-2 expansion mod 2 finds the same first odd exponent
    stream, _ = mega_parity
    for ell in primes_between(5, 50):
        prec = hecke_default_prec(ell) // 3 + 1
        g = eta_quotient_expand(PARITY_KERNEL_QUOTIENT, GF2, prec=prec)
        assert g.denom == 3
        assert g.decimate(ell).ord_q() == ord2_observed(ell, stream), ell


def test_sturm_report_shape(mega_parity):
    stream, _ = mega_parity
    report = sturm_report(11, stream)
    assert report["ell"] == 11 and report["index"] == 36
    assert report["sturm_rhs"] == str(Fraction(119, 3))
    assert report["ord2_observed"] == str(Fraction(13, 3))
    assert report["ok"] is True
    assert [c["gcd"] for c in report["classes"]] == [1, 2, 11, 22]
    assert all(set(c) == {"gcd", "order", "kind", "multiplicity"} for c in report["classes"])


def test_report_consistent_with_bound_report(mega_parity):
    stream, _ = mega_parity
    for ell in (5, 13, 47):
        bound = verify_theorem_bound(ell, stream)
        observed = ord2_observed(ell, stream)
        m = bound.m_min
        assert observed == Fraction(24 * (ell * m + delta_of(ell)) - 1, 3 * ell)
