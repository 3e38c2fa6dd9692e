"""Truncated formal q-series with fractional exponents.

A series is a finite coefficient window over an explicit exponent
denominator: the coefficient of q^(n/denom) is stored for numerators
lo <= n < prec, is exactly zero for n < lo, and is *unknown* at or above
prec.  Arithmetic tracks the tightest window it can certify and raises
rather than report coefficients beyond it.  All exponent bookkeeping is
integer; no floating point anywhere.

Coefficients live in one of three rings: arbitrary-precision integers,
GF(2) (bit-packed into a single int, see gf2.py), or residues mod m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import gf2
from .arith import is_prime
from .errors import (
    DomainError,
    NonUnitError,
    PrecisionExhaustedError,
    RingMismatchError,
)


# ----------------------------------------------------------------------
# coefficient rings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: "int", "gf2", or "mod" with a modulus.

    GF(2) is semantically the same as mod 2 but uses a packed bit
    representation; the two tags are distinct and do not mix.
    """

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("int", "gf2", "mod"):
            raise DomainError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod":
            if self.modulus is None or self.modulus < 2:
                raise DomainError("modulus must be an integer >= 2")
        elif self.modulus is not None:
            raise DomainError(f"ring kind {self.kind!r} takes no modulus")

    def __str__(self):
        return f"Z/{self.modulus}" if self.kind == "mod" else ("GF(2)" if self.kind == "gf2" else "Z")


INT = Ring("int")
GF2 = Ring("gf2")


def mod_ring(m: int) -> Ring:
    return Ring("mod", m)


# ----------------------------------------------------------------------
# series
# ----------------------------------------------------------------------

class FracPowerSeries:
    """Formal series sum_{n >= lo} c(n) q^(n/denom), exact below prec/denom."""

    __slots__ = ("ring", "denom", "lo", "prec", "data")

    def __init__(self, ring: Ring, denom: int, lo: int, prec: int, data):
        if denom < 1:
            raise DomainError("denominator must be a positive integer")
        if lo >= prec:
            raise PrecisionExhaustedError("precision exhausted: empty coefficient window")
        n = prec - lo
        if ring.kind == "gf2":
            if not isinstance(data, int):
                data = gf2.bits_from_list(data)
            data &= gf2.mask(n)
        else:
            data = list(data)
            if len(data) != n:
                raise DomainError(f"coefficient array has length {len(data)}, window needs {n}")
            if ring.kind == "mod":
                m = ring.modulus
                data = tuple(c % m for c in data)
            else:
                data = tuple(int(c) for c in data)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("FracPowerSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_terms(cls, ring: Ring, denom: int, terms: dict[int, int], prec: int,
                   lo: int | None = None) -> "FracPowerSeries":
        """Series with given numerator -> coefficient map; window [lo, prec)."""
        if lo is None:
            lo = min(terms) if terms else 0
        if terms and (min(terms) < lo or max(terms) >= prec):
            raise DomainError("term numerator outside the coefficient window")
        if ring.kind == "gf2":
            bits = 0
            for n, c in terms.items():
                if c & 1:
                    bits |= 1 << (n - lo)
            return cls(ring, denom, lo, prec, bits)
        data = [0] * (prec - lo)
        for n, c in terms.items():
            data[n - lo] = c
        return cls(ring, denom, lo, prec, data)

    @classmethod
    def constant(cls, ring: Ring, value: int, prec: int, denom: int = 1) -> "FracPowerSeries":
        return cls.from_terms(ring, denom, {0: value}, prec, lo=0)

    @classmethod
    def one(cls, ring: Ring, prec: int, denom: int = 1) -> "FracPowerSeries":
        return cls.constant(ring, 1, prec, denom)

    # -- basic accessors -------------------------------------------------

    @property
    def window(self) -> int:
        """Number of tracked numerators."""
        return self.prec - self.lo

    def coeff(self, n: int) -> int:
        """Coefficient of q^(n/denom); raises beyond the tracked window."""
        if n >= self.prec:
            raise PrecisionExhaustedError(
                f"coefficient at numerator {n} is beyond tracked precision {self.prec}")
        if n < self.lo:
            return 0
        if self.ring.kind == "gf2":
            return (self.data >> (n - self.lo)) & 1
        return self.data[n - self.lo]

    def coeff_exp(self, e) -> int:
        """Coefficient of q^e for an exact exponent (int or Fraction)."""
        e = Fraction(e)
        n = e * self.denom
        if n.denominator != 1:
            if e * self.denom >= self.prec:
                raise PrecisionExhaustedError(f"exponent {e} is beyond tracked precision")
            return 0
        return self.coeff(int(n))

    def terms(self):
        """Yield (numerator, coefficient) for nonzero coefficients, ascending."""
        if self.ring.kind == "gf2":
            bits = self.data
            while bits:
                low = bits & -bits
                i = low.bit_length() - 1
                yield self.lo + i, 1
                bits ^= low
        else:
            for i, c in enumerate(self.data):
                if c:
                    yield self.lo + i, c

    def is_zero(self) -> bool:
        if self.ring.kind == "gf2":
            return self.data == 0
        return all(c == 0 for c in self.data)

    def ord_q(self):
        """Least stored exponent with nonzero coefficient (exact Fraction).

        Returns math.inf when every stored coefficient vanishes; callers must
        read that as "zero to the tracked precision", not as a global claim.
        """
        for n, _ in self.terms():
            return Fraction(n, self.denom)
        return math.inf

    # -- window and denominator management --------------------------------

    def shift(self, s: int) -> "FracPowerSeries":
        """Multiply by q^(s/denom): translate the window by s numerators."""
        return FracPowerSeries(self.ring, self.denom, self.lo + s, self.prec + s, self.data)

    def truncate(self, new_prec: int) -> "FracPowerSeries":
        """Restrict the window to numerators below new_prec."""
        if new_prec > self.prec:
            raise PrecisionExhaustedError(
                f"cannot extend precision from {self.prec} to {new_prec}")
        if new_prec <= self.lo:
            raise PrecisionExhaustedError("precision exhausted: empty coefficient window")
        n = new_prec - self.lo
        if self.ring.kind == "gf2":
            return FracPowerSeries(self.ring, self.denom, self.lo, new_prec, self.data & gf2.mask(n))
        return FracPowerSeries(self.ring, self.denom, self.lo, new_prec, self.data[:n])

    def _stride(self, f: int, new_denom: int, new_lo: int, new_prec: int) -> "FracPowerSeries":
        n_out = new_prec - new_lo  # always window * f, so the strided slice fits exactly
        if self.ring.kind == "gf2":
            data = gf2.dilate_bits(self.data, self.window, f, n_out)
        else:
            data = [0] * n_out
            data[:: f] = list(self.data)
        return FracPowerSeries(self.ring, new_denom, new_lo, new_prec, data)

    def rescale(self, new_denom: int) -> "FracPowerSeries":
        """Rewrite over a larger denominator (exponents unchanged)."""
        if new_denom == self.denom:
            return self
        if new_denom % self.denom:
            raise DomainError(f"cannot rescale denominator {self.denom} to {new_denom}")
        f = new_denom // self.denom
        return self._stride(f, new_denom, self.lo * f, self.prec * f)

    def normalize(self) -> "FracPowerSeries":
        """Divide out the gcd of the denominator and all occurring numerators."""
        g = self.denom
        for n, _ in self.terms():
            g = gcd(g, n)
            if g == 1:
                return self
        ceil = lambda x: -(-x // g)
        lo, prec = ceil(self.lo), ceil(self.prec)
        if prec <= lo:
            prec = lo + 1
        if self.ring.kind == "gf2":
            start = lo * g - self.lo
            data = gf2.decimate_bits(self.data, self.window, start, g)
        else:
            data = list(self.data[lo * g - self.lo:: g])
            data += [0] * (prec - lo - len(data))
        return FracPowerSeries(self.ring, self.denom // g, lo, prec, data)

    # -- ring plumbing ----------------------------------------------------

    def _require_same_ring(self, other: "FracPowerSeries"):
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot combine series over {self.ring} and {other.ring}")

    def reduce_to(self, ring: Ring) -> "FracPowerSeries":
        """Reduce coefficients into another ring (INT -> GF2/mod m, mod m -> mod d | m)."""
        if ring == self.ring:
            return self
        if self.ring.kind == "mod":
            if ring.kind == "gf2" and self.ring.modulus % 2 == 0:
                pass
            elif ring.kind == "mod" and self.ring.modulus % ring.modulus == 0:
                pass
            else:
                raise DomainError(f"cannot reduce {self.ring} series into {ring}")
        elif self.ring.kind != "int":
            raise DomainError(f"cannot reduce {self.ring} series into {ring}")
        if ring.kind == "gf2":
            return FracPowerSeries(ring, self.denom, self.lo, self.prec,
                                   gf2.bits_from_list(self.data))
        return FracPowerSeries(ring, self.denom, self.lo, self.prec, self.data)

    # -- arithmetic --------------------------------------------------------

    def _unified(self, other: "FracPowerSeries"):
        d = lcm(self.denom, other.denom)
        return self.rescale(d), other.rescale(d)

    def __neg__(self) -> "FracPowerSeries":
        if self.ring.kind == "gf2":
            return self
        if self.ring.kind == "mod":
            m = self.ring.modulus
            return FracPowerSeries(self.ring, self.denom, self.lo, self.prec,
                                   [(-c) % m for c in self.data])
        return FracPowerSeries(self.ring, self.denom, self.lo, self.prec,
                               [-c for c in self.data])

    def __add__(self, other: "FracPowerSeries") -> "FracPowerSeries":
        self._require_same_ring(other)
        a, b = self._unified(other)
        lo = min(a.lo, b.lo)
        prec = min(a.prec, b.prec)
        if lo >= prec:
            raise PrecisionExhaustedError("precision exhausted in addition")
        n = prec - lo
        if self.ring.kind == "gf2":
            data = ((a.data << (a.lo - lo)) ^ (b.data << (b.lo - lo))) & gf2.mask(n)
        else:
            data = [0] * n
            for src in (a, b):
                off = src.lo - lo
                for i, c in enumerate(src.data):
                    if off + i < n:
                        data[off + i] += c
        return FracPowerSeries(self.ring, a.denom, lo, prec, data)

    def __sub__(self, other: "FracPowerSeries") -> "FracPowerSeries":
        return self + (-other)

    def __mul__(self, other: "FracPowerSeries") -> "FracPowerSeries":
        self._require_same_ring(other)
        a, b = self._unified(other)
        lo = a.lo + b.lo
        prec = min(a.prec + b.lo, b.prec + a.lo)
        if lo >= prec:
            raise PrecisionExhaustedError("precision exhausted in multiplication")
        n_out = prec - lo
        if self.ring.kind == "gf2":
            if a is b:
                data = gf2.square_bits(a.data, n_out)
            else:
                data = gf2.mul_bits(a.data, b.data, a.window, b.window, n_out)
        else:
            data = _convolve(a.data, b.data, n_out)
        return FracPowerSeries(self.ring, a.denom, lo, prec, data)

    def inverse(self) -> "FracPowerSeries":
        """Multiplicative inverse up to the window's relative precision.

        The leading (first nonzero) coefficient must be a unit; the result's
        lowest exponent is the negation of that leading exponent.
        """
        v = None
        for n, _ in self.terms():
            v = n
            break
        if v is None:
            raise NonUnitError("zero series has no inverse")
        lead = self.coeff(v)
        n_rel = self.prec - v
        if self.ring.kind == "gf2":
            data = gf2.inv_bits(self.data >> (v - self.lo), n_rel)
            return FracPowerSeries(self.ring, self.denom, -v, -v + n_rel, data)
        if self.ring.kind == "int":
            if lead not in (1, -1):
                raise NonUnitError(f"leading coefficient {lead} is not a unit over Z")
            lead_inv = lead
        else:
            m = self.ring.modulus
            try:
                lead_inv = pow(lead, -1, m)
            except ValueError:
                raise NonUnitError(f"leading coefficient {lead} is not a unit mod {m}") from None
        a = [self.coeff(v + j) for j in range(n_rel)]
        b = [0] * n_rel
        b[0] = lead_inv
        for k in range(1, n_rel):
            acc = 0
            for j in range(1, k + 1):
                if a[j]:
                    acc += a[j] * b[k - j]
            b[k] = -lead_inv * acc
            if self.ring.kind == "mod":
                b[k] %= self.ring.modulus
        return FracPowerSeries(self.ring, self.denom, -v, -v + n_rel, b)

    def __pow__(self, e: int) -> "FracPowerSeries":
        if not isinstance(e, int):
            raise DomainError("series exponent must be an integer")
        if e == 0:
            return FracPowerSeries.one(self.ring, self.window, self.denom)
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = None
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    # -- q-expansion operators ---------------------------------------------

    def decimate(self, ell: int) -> "FracPowerSeries":
        """U_ell: keep exponent numerators divisible by ell and divide them by ell."""
        if ell < 1:
            raise DomainError("decimation index must be a positive integer")
        if gcd(ell, self.denom) != 1:
            raise DomainError(
                f"decimation by {ell} needs gcd({ell}, denom={self.denom}) = 1")
        if ell == 1:
            return self
        ceil = lambda x: -(-x // ell)
        lo, prec = ceil(self.lo), ceil(self.prec)
        if lo >= prec:
            # every kept numerator below prec sits under self.lo: exact zeros
            lo = prec - 1
            data = 0 if self.ring.kind == "gf2" else [0]
            return FracPowerSeries(self.ring, self.denom, lo, prec, data)
        start = lo * ell - self.lo
        if self.ring.kind == "gf2":
            data = gf2.decimate_bits(self.data, self.window, start, ell)
        else:
            data = list(self.data[start:: ell])
        return FracPowerSeries(self.ring, self.denom, lo, prec, data)

    def dilate(self, ell: int) -> "FracPowerSeries":
        """V_ell: multiply all exponent numerators by ell."""
        if ell < 1:
            raise DomainError("dilation index must be a positive integer")
        if ell == 1:
            return self
        return self._stride(ell, self.denom, self.lo * ell, self.prec * ell)

    def support_in_multiples(self, c: int, p: int) -> bool:
        """True iff, mod p, every surviving exponent numerator is divisible by c.

        The denominator is normalized first, so the test is about the
        canonical exponents.
        """
        if c < 2:
            raise DomainError("multiple base c must be >= 2")
        s = self.normalize()
        for n, coef in s.terms():
            if _nonzero_mod(s.ring, coef, p) and n % c:
                return False
        return True

    # -- rendering -----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical rendering: nonzero terms by ascending exponent."""
        parts = []
        for n, c in self.terms():
            e = Fraction(n, self.denom)
            neg = self.ring.kind == "int" and c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"q^({e})"
            else:
                body = f"{mag}*q^({e})"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        if self.ring.kind == "gf2":
            coeffs = [int(b) for b in gf2.bits_to_array(self.data, self.window)]
        else:
            coeffs = list(self.data)
        return {"denom": self.denom, "lo": self.lo, "prec": self.prec, "coeffs": coeffs}

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FracPowerSeries):
            return NotImplemented
        return (self.ring == other.ring and self.denom == other.denom
                and self.lo == other.lo and self.prec == other.prec
                and self.data == other.data)

    def __hash__(self):
        return hash((self.ring, self.denom, self.lo, self.prec,
                     self.data if isinstance(self.data, int) else tuple(self.data)))

    def __repr__(self):
        head = self.to_text() if self.window <= 64 else f"{self.window} terms"
        return (f"FracPowerSeries({self.ring}, denom={self.denom}, "
                f"window=[{self.lo},{self.prec}): {head})")


def _convolve(a, b, n_out: int):
    """Schoolbook truncated convolution of coefficient tuples."""
    out = [0] * n_out
    for i, ai in enumerate(a):
        if i >= n_out:
            break
        if not ai:
            continue
        jmax = min(len(b), n_out - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _nonzero_mod(ring: Ring, coef: int, p: int) -> bool:
    if ring.kind == "int":
        return coef % p != 0
    if ring.kind == "gf2":
        if p != 2:
            raise DomainError("GF(2) series can only be tested mod 2")
        return coef != 0
    if ring.modulus % p:
        raise DomainError(f"mod-{ring.modulus} series is not reducible mod {p}")
    return coef % p != 0


def hecke_mod2(a: FracPowerSeries, ell: int) -> FracPowerSeries:
    """Weight-0 Hecke action mod 2: decimation plus dilation by a prime ell >= 5.

    The 1/ell scalar of the weight-0 Hecke operator drops out over GF(2)
    because ell is odd.
    """
    if a.ring != GF2:
        raise RingMismatchError("hecke_mod2 is defined for GF(2) series only")
    if ell < 5 or not is_prime(ell):
        raise DomainError("hecke_mod2 needs a prime index >= 5")
    return a.decimate(ell) + a.dilate(ell)
