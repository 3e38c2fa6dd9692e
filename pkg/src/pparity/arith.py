"""Small integer helpers: primality, factorization, prime enumeration.

Everything here runs at desk scale (arguments in the thousands), so trial
division is plenty.
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def distinct_prime_factors(n: int) -> list[int]:
    """Distinct primes dividing n, ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_between(a: int, b: int) -> list[int]:
    """Primes p with a <= p <= b."""
    return [p for p in range(max(a, 2), b + 1) if is_prime(p)]
