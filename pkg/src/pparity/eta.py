"""Eta-quotient symbols and their formal q-expansions.

An eta quotient is a finite product of eta(delta*tau)^r factors.  Each
factor expands as q^(r*delta/24) times the r-th power of the sparse
pentagonal-number series for prod(1 - q^(delta*n)); powers go through
binary powering and negative exponents through series inversion.  All
exponents are kept as integer numerators over an explicit denominator
(24 per factor, reduced where the factor's lattice allows it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .errors import DomainError
from .series import FracPowerSeries, INT, Ring


@dataclass(frozen=True)
class EtaQuotient:
    """Formal product over (delta -> exponent) factors; level divisible by every delta."""

    factors: dict[int, int]
    level: int = field(default=0)

    def __post_init__(self):
        for d, r in self.factors.items():
            if d < 1:
                raise DomainError(f"eta argument multiplier {d} must be positive")
            if r == 0:
                raise DomainError(f"eta factor at {d} has zero exponent")
        natural = 1
        for d in self.factors:
            natural = lcm(natural, d)
        if self.level == 0:
            object.__setattr__(self, "level", natural)
        elif self.level % natural:
            raise DomainError(f"level {self.level} not divisible by every factor argument")

    def exponent_shift_24(self) -> int:
        """Numerator (over 24) of the leading exponent: sum of r*delta."""
        return sum(d * r for d, r in self.factors.items())


# eta(3t)^8 / eta(6t)^8: weight-0 on level 18; mod 2 its expansion is the
# partition parity series at exponents 24n - 1
PARTITION_PARITY_QUOTIENT = EtaQuotient({3: 8, 6: -8})

# eta(t)^8 / eta(2t)^8: the level-2 form whose argument-tripled dilation is
# the quotient above; exponents lie in Z - 1/3
PARITY_KERNEL_QUOTIENT = EtaQuotient({1: 8, 2: -8})


def _pentagonal_numbers(limit: int):
    """Generalized pentagonal numbers k(3k-1)/2 below limit with sign (-1)^k, ascending."""
    out = []
    k = 1
    while True:
        p1 = k * (3 * k - 1) // 2
        if p1 >= limit:
            break
        sign = -1 if k & 1 else 1
        out.append((p1, sign))
        p2 = k * (3 * k + 1) // 2
        if p2 < limit:
            out.append((p2, sign))
        k += 1
    return out


def _euler_product(delta: int, ring: Ring, denom: int, n_rel: int) -> FracPowerSeries:
    """prod(1 - q^(delta*n)) over `ring` with exponent denominator `denom`,
    tracked for numerators in [0, n_rel)."""
    step = delta * denom  # numerator of q^delta
    terms = {0: 1}
    for p, sign in _pentagonal_numbers(-(-n_rel // step)):
        n = step * p
        if n < n_rel:
            terms[n] = sign
    return FracPowerSeries.from_terms(ring, denom, terms, n_rel, lo=0)


def _eta_factor(delta: int, r: int, ring: Ring, denom: int, n_rel: int) -> FracPowerSeries:
    """eta(delta*tau)^r at exponent denominator `denom` (which must absorb
    the r*delta/24 leading shift), with relative precision n_rel numerators."""
    shift, rem = divmod(r * delta * denom, 24)
    if rem:
        raise DomainError(f"denominator {denom} cannot carry exponent {r * delta}/24")
    base = _euler_product(delta, ring, denom, n_rel)
    return (base ** r).shift(shift)


def eta_power(delta: int, r: int, prec: int, ring: Ring = INT) -> FracPowerSeries:
    """Expansion of eta(delta*tau)^r with denominator 24, exact for exponents below prec."""
    if prec <= 0:
        raise DomainError("precision bound must be positive")
    n_rel = 24 * prec - r * delta
    if n_rel <= 0:
        raise DomainError(f"precision bound {prec} lies below the leading exponent")
    return _eta_factor(delta, r, ring, 24, n_rel)


def eta_quotient_expand(eq: EtaQuotient, ring: Ring = INT, prec: int = 8,
                        normalize: bool = True) -> FracPowerSeries:
    """Expand an eta quotient as a q-series, exact for exponents below prec.

    Each factor is built on the smallest denominator its exponent lattice
    allows (24 / gcd(24, r*delta)); the product unifies denominators as
    needed.  With normalize=True the result's denominator is reduced by the
    gcd of all occurring exponent numerators.
    """
    if prec <= 0:
        raise DomainError("precision bound must be positive")
    if not eq.factors:
        return FracPowerSeries.one(ring, prec)
    lo24 = eq.exponent_shift_24()
    span24 = 24 * prec - lo24
    if span24 <= 0:
        raise DomainError(f"precision bound {prec} lies below the leading exponent")
    product = None
    for delta in sorted(eq.factors):
        r = eq.factors[delta]
        denom = 24 // gcd(24, r * delta)
        n_rel = -(-span24 * denom // 24) + 1
        factor = _eta_factor(delta, r, ring, denom, n_rel)
        product = factor if product is None else product * factor
    product = product.truncate(product.denom * prec)
    return product.normalize() if normalize else product
