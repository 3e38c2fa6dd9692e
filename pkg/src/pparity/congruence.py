"""Parity of p(n) in arithmetic progressions: searches and bound certificates.

For a modulus t coprime to 6, the progression of interest is t*m + delta
with 24*delta = 1 (mod t).  This module locates the smallest m whose
partition number is odd, certifies it against the (t^2-1)/24-style bound
(primes) and the (t/24)*rad(t) bound (general t), evaluates the much
larger legacy bound for comparison, spot-checks the classical mod-5/7/11
congruences, and confirms that decimating the parity eta-quotient by ell
leaves a nonzero series whose first odd exponent matches the
parity-stream derivation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import distinct_prime_factors, is_prime
from .errors import DomainError, PrecisionExhaustedError, StreamTooShortError
from .eta import PARTITION_PARITY_QUOTIENT, eta_quotient_expand
from .partitions import ResidueStream, residue_stream
from .series import GF2


def delta_of(t: int) -> int:
    """The unique 0 < delta < t with 24*delta = 1 (mod t)."""
    if t <= 1 or gcd(t, 6) != 1:
        raise DomainError(f"modulus {t} must exceed 1 and be coprime to 6")
    return pow(24, -1, t)


def smallest_odd_m(t: int, stream: ResidueStream, ceiling: int) -> int | None:
    """Least m <= ceiling with p(t*m + delta_t) odd, or None if none exists there."""
    if stream.modulus != 2:
        raise DomainError("smallest_odd_m needs a parity (mod 2) stream")
    delta = delta_of(t)
    needed = t * ceiling + delta + 1
    if stream.length < needed:
        raise StreamTooShortError(
            f"stream of length {stream.length} too short; "
            f"searching m <= {ceiling} in progression {t}m+{delta} needs {needed} values",
            required=needed)
    for m in range(ceiling + 1):
        if stream[t * m + delta]:
            return m
    return None


@dataclass(frozen=True)
class BoundReport:
    """Verification record for one progression modulus."""

    modulus: int
    delta: int
    m_min: int | None
    theorem_bound: Fraction
    legacy_bound: int
    verdict: bool
    search_ceiling: int

    def to_json_dict(self) -> dict:
        return {
            "t": self.modulus,
            "delta": self.delta,
            "m_min": self.m_min,
            "theorem_bound": str(self.theorem_bound),
            "legacy_bound": str(self.legacy_bound),
            "verdict": self.verdict,
            "search_ceiling": self.search_ceiling,
        }


def ceiling_below(bound: Fraction) -> int:
    """Largest integer strictly below a positive rational bound."""
    return bound.numerator // bound.denominator - (1 if bound.denominator == 1 else 0)


def theorem_bound(ell: int) -> Fraction:
    """(ell^2 - 1)/24, an exact integer for every prime ell >= 5."""
    if ell < 5 or not is_prime(ell):
        raise DomainError(f"theorem bound needs a prime >= 5, got {ell}")
    return Fraction(ell * ell - 1, 24)


def remark_bound(t: int) -> Fraction:
    """(t/24) * product of the distinct primes dividing t."""
    if t <= 1 or gcd(t, 6) != 1:
        raise DomainError(f"modulus {t} must exceed 1 and be coprime to 6")
    rad = 1
    for p in distinct_prime_factors(t):
        rad *= p
    return Fraction(t, 24) * rad


def required_stream_length(t: int, bound: Fraction | None = None) -> int:
    """Parity-stream length that covers the whole search window for t."""
    if bound is None:
        bound = theorem_bound(t) if is_prime(t) else remark_bound(t)
    return t * ceiling_below(bound) + delta_of(t) + 1


def _verify(t: int, bound: Fraction, stream: ResidueStream) -> BoundReport:
    ceiling = ceiling_below(bound)
    m_min = smallest_odd_m(t, stream, ceiling)
    return BoundReport(
        modulus=t,
        delta=delta_of(t),
        m_min=m_min,
        theorem_bound=bound,
        legacy_bound=legacy_bound(t, delta_of(t)),
        verdict=m_min is not None,  # found inside the window iff m_min < bound
        search_ceiling=ceiling,
    )


def verify_theorem_bound(ell: int, stream: ResidueStream) -> BoundReport:
    """Search m < (ell^2-1)/24 only; an empty search is a falsifying verdict."""
    return _verify(ell, theorem_bound(ell), stream)


def verify_remark2(t: int, stream: ResidueStream) -> BoundReport:
    """Same check with the (t/24)*rad(t) bound; t may be composite."""
    return _verify(t, remark_bound(t), stream)


def legacy_parameters(t: int, r: int) -> tuple[int, int]:
    """(d, j) entering the legacy bound: d = gcd(24r-1, t), least j with 2^j > t/24.

    The smallest admissible j minimizes the bound; the source only requires
    *some* such integer.
    """
    if not 0 <= r < t:
        raise DomainError(f"residue r={r} must satisfy 0 <= r < t={t}")
    if gcd(t, 6) != 1:
        raise DomainError(f"modulus {t} must be coprime to 6")
    d = gcd(24 * r - 1, t)
    j = 0
    while 24 * (1 << j) <= t:
        j += 1
    return d, j


def legacy_bound_exact(t: int, r: int) -> Fraction:
    """The pre-existing upper bound for the first odd value in r (mod t), exact."""
    d, j = legacy_parameters(t, r)
    value = Fraction(2 ** (23 + j) * 3 ** 7 * t ** 6, d * d)
    for p in distinct_prime_factors(6 * t):
        value *= 1 - Fraction(1, p * p)
    return value - (1 << j)


def legacy_bound(t: int, r: int) -> int:
    """Floor of the exact legacy bound (it need not be integral)."""
    return math.floor(legacy_bound_exact(t, r))


def verify_ramanujan(ell: int, n_count: int) -> tuple[bool, int | None]:
    """Check p(ell*n + delta) = 0 (mod ell) for all n < n_count.

    Returns (True, None) or (False, first failing n).
    """
    if ell not in (5, 7, 11):
        raise DomainError(f"the classical congruences hold for ell in {{5,7,11}}, got {ell}")
    if n_count < 1:
        raise DomainError("n_count must be >= 1")
    delta = delta_of(ell)
    stream = residue_stream(ell * n_count + delta + 1, ell)
    for n in range(n_count):
        if stream[ell * n + delta] != 0:
            return False, n
    return True, None


@dataclass(frozen=True)
class HeckeReport:
    """Nonvanishing certificate for the decimated parity series."""

    ell: int
    nonvanishing: bool
    first_odd_exponent: Fraction | None
    expected_exponent: Fraction | None
    consistent: bool

    @property
    def ok(self) -> bool:
        return self.nonvanishing and self.consistent

    def to_json_dict(self) -> dict:
        return {
            "ell": self.ell,
            "nonvanishing": self.nonvanishing,
            "first_odd_exponent":
                None if self.first_odd_exponent is None else str(self.first_odd_exponent),
            "expected_exponent":
                None if self.expected_exponent is None else str(self.expected_exponent),
            "consistent": self.consistent,
            "ok": self.ok,
        }


def hecke_default_prec(ell: int) -> int:
    """Exponent bound that contains the guaranteed first odd coefficient."""
    ceiling = ceiling_below(theorem_bound(ell))
    return 24 * (ell * ceiling + delta_of(ell))


def nonvanishing_check(ell: int, prec: int | None = None,
                       stream: ResidueStream | None = None) -> HeckeReport:
    """Decimate the parity eta-quotient by ell and certify a surviving odd term.

    Expands eta(3t)^8/eta(6t)^8 over GF(2) (exponents 24n-1 carry p(n) mod 2),
    applies the index-ell decimation, and reports whether the window contains
    a nonzero coefficient.  The first odd exponent must equal
    (24*(ell*m_min + delta) - 1)/ell from the parity-stream search.
    """
    min_prec = hecke_default_prec(ell)  # also validates ell
    if prec is None:
        prec = min_prec
    if prec < min_prec:
        raise PrecisionExhaustedError(
            f"precision {prec} cannot certify nonvanishing for {ell}; need >= {min_prec}")
    delta = delta_of(ell)
    ceiling = ceiling_below(theorem_bound(ell))
    series = eta_quotient_expand(PARTITION_PARITY_QUOTIENT, GF2, prec)
    first = series.decimate(ell).ord_q()
    nonvanishing = first is not math.inf
    if stream is None:
        stream = residue_stream(ell * ceiling + delta + 1, 2)
    m_min = smallest_odd_m(ell, stream, ceiling)
    if m_min is None:
        expected = None
        consistent = False
    else:
        expected = Fraction(24 * (ell * m_min + delta) - 1, ell)
        consistent = nonvanishing and first == expected
    return HeckeReport(ell, nonvanishing, None if not nonvanishing else first,
                       expected, consistent)
