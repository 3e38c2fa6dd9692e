"""Cusp-class bookkeeping for Gamma_0(2*ell) and the refined Sturm threshold.

The four cusp classes of Gamma_0(2*ell) are indexed by gcd(c, 2*ell) of a
representative's lower-left entry.  Orders at the three classes away from
the identity are encoded as data (exact at gcd 1 and 2, lower bounds at
gcd ell and 2*ell) and consumed pessimistically, so the resulting
threshold is a sound upper bound.  Everything is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import distinct_prime_factors, is_prime
from .congruence import delta_of, smallest_odd_m, theorem_bound, ceiling_below
from .errors import DomainError
from .partitions import ResidueStream

EXACT = "EXACT"
LOWER_BOUND = "LOWER-BOUND"


@dataclass(frozen=True)
class CuspClassReport:
    """Order datum and coset multiplicity for one cusp class of Gamma_0(2*ell)."""

    gcd_class: int
    representative: tuple[tuple[int, int], tuple[int, int]]
    order: Fraction
    order_kind: str
    multiplicity: int

    def to_json_dict(self) -> dict:
        return {
            "gcd": self.gcd_class,
            "order": str(self.order),
            "kind": self.order_kind,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class SturmEvaluation:
    """Exact right-hand side of the refined congruence criterion."""

    weight: Fraction
    index: int
    cusp_order_sum: Fraction
    rhs: Fraction


def index_gamma0(n: int) -> int:
    """[SL2(Z) : Gamma_0(n)] = n * prod_{p | n} (1 + 1/p)."""
    if n < 1:
        raise DomainError("level must be a positive integer")
    idx = Fraction(n)
    for p in distinct_prime_factors(n):
        idx *= 1 + Fraction(1, p)
    return int(idx)


def cusp_classes(ell: int) -> list[CuspClassReport]:
    """The four cusp classes of Gamma_0(2*ell) for prime ell >= 5, by ascending gcd.

    Multiplicity of a class is 2*ell / gcd; the orders of the decimated
    level-2 parity quotient are 1/(6*ell) and -ell/3 exactly at gcd 1 and 2,
    and at least 1/6 and 1/3 at gcd ell and 2*ell.
    """
    if ell < 5 or not is_prime(ell):
        raise DomainError(f"cusp table needs a prime >= 5, got {ell}")
    return [
        CuspClassReport(1, ((0, -1), (1, 0)), Fraction(1, 6 * ell), EXACT, 2 * ell),
        CuspClassReport(2, ((1, 0), (6, 1)), Fraction(-ell, 3), EXACT, ell),
        CuspClassReport(ell, ((1, 0), (3 * ell, 1)), Fraction(1, 6), LOWER_BOUND, 2),
        CuspClassReport(2 * ell, ((1, 0), (0, 1)), Fraction(1, 3), LOWER_BOUND, 1),
    ]


def sturm_rhs(weight, index: int, cusp_order_sum) -> SturmEvaluation:
    """rhs = weight/12 * index - cusp_order_sum, all exact.

    The caller supplies the order sum over the non-identity coset classes;
    classes known only by a lower bound must contribute that stated minimum,
    which makes rhs an upper bound for the true threshold.
    """
    k = Fraction(weight)
    if (2 * k).denominator != 1:
        raise DomainError(f"weight must be a half-integer, got {weight}")
    s = Fraction(cusp_order_sum)
    return SturmEvaluation(k, index, s, k / 12 * index - s)


def nonidentity_order_sum(ell: int) -> Fraction:
    """Sum of order * multiplicity over the classes away from the identity coset."""
    total = Fraction(0)
    for c in cusp_classes(ell):
        if c.gcd_class != 2 * ell:
            total += c.order * c.multiplicity
    return total


@dataclass(frozen=True)
class OrderBounds:
    """Certified bounds: parity order of the decimated series, and the progression index."""

    ord2_bound: Fraction
    m_bound: Fraction


def order_bounds(ell: int) -> OrderBounds:
    """ord2_bound = ell^2/3 - 2/3 and the induced m-bound, both exact.

    The m-bound (ell^2 - 2 - (24*delta - 1)/ell)/24 is strictly below
    (ell^2 - 1)/24; that inequality is re-checked here.
    """
    bound = theorem_bound(ell)  # validates ell
    delta = delta_of(ell)
    ord2 = Fraction(ell * ell - 2, 3)
    m_bound = Fraction(ell * ell - 2 - (24 * delta - 1) // ell, 24)
    if not m_bound < bound:
        raise DomainError(f"bound arithmetic violated at {ell}: {m_bound} >= {bound}")
    return OrderBounds(ord2, m_bound)


def ord2_observed(ell: int, stream: ResidueStream) -> Fraction:
    """(24*M - 1)/(3*ell) for the smallest M with ell | 24M-1 and p(M) odd.

    The qualifying M are exactly ell*m + delta, so the search reuses
    smallest_odd_m; the stream must cover the guaranteed window.
    """
    delta = delta_of(ell)
    ceiling = ceiling_below(theorem_bound(ell))
    m_min = smallest_odd_m(ell, stream, ceiling)
    if m_min is None:
        raise DomainError(
            f"no odd value found below the bound for {ell}; cannot report an order")
    return Fraction(24 * (ell * m_min + delta) - 1, 3 * ell)


def sturm_report(ell: int, stream: ResidueStream) -> dict:
    """Per-prime JSON record tying the cusp table, the threshold, and the observed order."""
    classes = cusp_classes(ell)
    index = index_gamma0(2 * ell)
    ev = sturm_rhs(0, index, nonidentity_order_sum(ell))
    observed = ord2_observed(ell, stream)
    ok = (sum(c.multiplicity for c in classes) == index
          and ev.rhs == Fraction(ell * ell - 2, 3)
          and observed <= ev.rhs)
    return {
        "ell": ell,
        "index": index,
        "classes": [c.to_json_dict() for c in classes],
        "sturm_rhs": str(ev.rhs),
        "ord2_observed": str(observed),
        "ok": ok,
    }
