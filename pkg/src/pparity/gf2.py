"""Bit-packed GF(2) polynomial kernels.

A GF(2) coefficient vector is stored in a Python int: bit i is the
coefficient of x^i (little-endian bit order, matching the cache layout
used elsewhere in the package).  Dense multiplication is carryless and
goes through Kronecker substitution: each bit is widened to a 32-bit
field, the two packed integers are multiplied exactly by GMP, and the
product fields are reduced mod 2.  Field sums equal convolution
coefficients, so this is exact as long as operands stay below 2^32 bits.
"""

from __future__ import annotations

import gmpy2
import numpy as np

# below this popcount the shift-xor product is cheaper than Kronecker
_SPARSE_CUTOFF = 64


def mask(n: int) -> int:
    return (1 << n) - 1


def bits_from_list(values) -> int:
    """Pack an iterable of 0/1 (or any ints, reduced mod 2) into an int."""
    acc = 0
    for i, v in enumerate(values):
        if v & 1:
            acc |= 1 << i
    return acc


def bits_to_array(a: int, n: int) -> np.ndarray:
    """Unpack the low n bits of a into a uint8 array."""
    if n <= 0:
        return np.zeros(0, dtype=np.uint8)
    raw = (a & mask(n)).to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little", count=n)


def bits_from_array(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def _spread32(a: int, n: int) -> gmpy2.mpz:
    # bit i -> bit 32*i: unpack to one byte per bit, widen to 4 bytes
    return gmpy2.mpz(int.from_bytes(bits_to_array(a, n).astype("<u4").tobytes(), "little"))


def _unspread32(c, n_out: int) -> int:
    nbytes = 4 * n_out
    raw = int(c).to_bytes(max((int(c).bit_length() + 7) // 8, 1), "little")
    if len(raw) < nbytes:
        raw = raw + b"\x00" * (nbytes - len(raw))
    fields = np.frombuffer(raw[:nbytes], dtype="<u4")
    return bits_from_array((fields & 1).astype(np.uint8))


def clmul(a: int, b: int, na: int, nb: int, n_out: int) -> int:
    """Carryless product of the low na bits of a and nb bits of b, truncated to n_out bits."""
    if a == 0 or b == 0 or n_out <= 0:
        return 0
    na = min(na, n_out)
    nb = min(nb, n_out)
    prod = _spread32(a, na) * _spread32(b, nb)
    return _unspread32(prod, min(na + nb - 1, n_out))


def mul_bits(a: int, b: int, na: int, nb: int, n_out: int) -> int:
    """GF(2) polynomial product truncated to n_out bits; picks shift-xor for sparse operands."""
    if a == 0 or b == 0 or n_out <= 0:
        return 0
    a &= mask(min(na, n_out))
    b &= mask(min(nb, n_out))
    pa = a.bit_count()
    pb = b.bit_count()
    if min(pa, pb) > _SPARSE_CUTOFF:
        return clmul(a, b, na, nb, n_out)
    sparse, dense = (a, b) if pa <= pb else (b, a)
    acc = 0
    while sparse:
        low = sparse & -sparse
        acc ^= dense << (low.bit_length() - 1)
        sparse ^= low
    return acc & mask(n_out)


def square_bits(a: int, n_out: int) -> int:
    """GF(2) square: bit i of a becomes bit 2i, truncated to n_out bits."""
    if a == 0 or n_out <= 0:
        return 0
    n_in = (n_out + 1) // 2
    arr = bits_to_array(a, n_in)
    out = np.zeros(n_out, dtype=np.uint8)
    out[:: 2] = arr[: (n_out + 1) // 2]
    return bits_from_array(out)


def inv_bits(a: int, n: int) -> int:
    """Inverse of a mod x^n over GF(2) by Newton doubling; requires bit 0 of a set."""
    if not a & 1:
        raise ValueError("constant term is zero, series not invertible over GF(2)")
    b = 1
    k = 1
    while k < n:
        k = min(2 * k, n)
        t = mul_bits(a, b, k, k, k)  # 1 ^ e with e divisible by x^(k/2)
        e = t ^ 1
        if e:
            b ^= mul_bits(b, e, k, k, k)
    return b & mask(n)


def dilate_bits(a: int, n: int, step: int, n_out: int) -> int:
    """Move bit i to bit step*i (zeros in between), truncated to n_out bits."""
    if step == 1:
        return a & mask(n_out)
    if a == 0 or n_out <= 0:
        return 0
    n_in = min(n, (n_out + step - 1) // step)
    arr = bits_to_array(a, n_in)
    out = np.zeros(n_out, dtype=np.uint8)
    out[:: step][: n_in] = arr
    return bits_from_array(out)


def decimate_bits(a: int, n: int, start: int, step: int) -> int:
    """Keep bits start, start+step, ... < n; bit start+j*step becomes bit j."""
    if step == 1 and start == 0:
        return a & mask(n)
    if a == 0 or start >= n:
        return 0
    arr = bits_to_array(a, n)
    return bits_from_array(arr[start::step])
