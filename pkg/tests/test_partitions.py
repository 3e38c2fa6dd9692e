"""Partition engine: streams, exact values, proportion strings, and the cache."""

import pytest

from pparity.errors import (
    CacheFormatError,
    DomainError,
    ResourceLimitError,
    StreamTooShortError,
)
from pparity.eta import _pentagonal_numbers
from pparity.partitions import (
    even_count,
    load_cache,
    partition_exact,
    proportion_even,
    residue_stream,
    save_cache,
)
from pparity.series import GF2, FracPowerSeries


def test_first_values_mod_1000():
    assert residue_stream(7, 1000).values_list() == [1, 1, 2, 3, 5, 7, 11]


def test_parities_against_brute_force(small_partitions):
    stream = residue_stream(10, 2)
    assert stream.values_list() == [p % 2 for p in small_partitions[:10]]
    assert stream.values_list() == [1, 1, 0, 1, 1, 1, 1, 1, 0, 0]


def test_single_value_stream():
    for m in (2, 3, 97, 10**12):
        assert residue_stream(1, m).values_list() == [1]


def test_stream_matches_brute_force_for_many_moduli(small_partitions):
    for m in (2, 5, 7, 11, 255, 1000):
        stream = residue_stream(61, m)
        assert stream.values_list() == [p % m for p in small_partitions], m


def test_oversized_modulus_falls_back_to_exact_path(small_partitions):
    m = (1 << 40) + 7
    stream = residue_stream(61, m)
    assert stream.values_list() == [p % m for p in small_partitions]


def test_parity_blocked_generator_crosses_block_boundaries():
    # window straddles several 8192-bit blocks; compare against the mod-m path
    n = 3 * 8192 + 17
    fast = residue_stream(n, 2)
    bymod4 = residue_stream(n, 4)
    assert fast.values_list() == [v % 2 for v in bymod4.values_list()]


def test_monotone_prefix_extension():
    for m in (2, 7):
        short = residue_stream(500, m)
        long = residue_stream(1200, m)
        assert long.values_list()[:500] == short.values_list()


def test_stream_validation_errors():
    with pytest.raises(DomainError):
        residue_stream(0, 2)
    with pytest.raises(DomainError):
        residue_stream(5, 1)
    with pytest.raises(ResourceLimitError) as info:
        residue_stream(1000, 2, limit=100)
    assert info.value.attempted == 1000


def test_exact_values(small_partitions):
    assert partition_exact(0) == 1
    assert partition_exact(4) == 5
    assert partition_exact(49) == 173525
    for n, p in enumerate(small_partitions):
        assert partition_exact(n) == p
    with pytest.raises(ResourceLimitError):
        partition_exact(10**6)
    with pytest.raises(DomainError):
        partition_exact(-1)


def test_exact_residue_consistency():
    n_max = 10_000
    streams = {m: residue_stream(n_max + 1, m) for m in (2, 5, 7, 11, 13)}
    for n in range(n_max + 1):
        p = partition_exact(n)
        for m, stream in streams.items():
            assert stream[n] == p % m, (n, m)


def test_oracle_equivalence_with_series_inversion():
    n = 2000
    stream = residue_stream(n, 2)
    euler = FracPowerSeries.from_terms(
        GF2, 1, {p: 1 for p, _ in _pentagonal_numbers(n)} | {0: 1}, n, lo=0)
    inv = euler.inverse()
    assert stream.parity_int() == inv.data


def test_proportion_strings():
    stream = residue_stream(100, 2)
    assert proportion_even(1, stream) == "0.0000"   # p(0) = 1 is odd
    assert proportion_even(3, stream) == "0.3333"   # evens among 1, 1, 2
    assert proportion_even(10, stream) == "0.3000"
    assert proportion_even(10, stream, places=6) == "0.300000"
    with pytest.raises(DomainError):
        proportion_even(10, stream, places=2)
    with pytest.raises(StreamTooShortError):
        proportion_even(101, stream)
    with pytest.raises(DomainError):
        proportion_even(5, residue_stream(10, 7))


def test_even_count_small(small_partitions):
    stream = residue_stream(61, 2)
    assert even_count(61, stream) == sum(1 for p in small_partitions if p % 2 == 0)


def test_cache_roundtrip(tmp_path):
    for m, n in ((2, 10), (2, 8192 + 3), (7, 100), (255, 50)):
        stream = residue_stream(n, m)
        path = tmp_path / f"cache_{m}_{n}.bin"
        save_cache(stream, path)
        loaded = load_cache(path)
        assert loaded == stream
        assert loaded.modulus == m and loaded.length == n
    # parity payload is bit-exact
    stream = residue_stream(1000, 2)
    path = tmp_path / "parity.bin"
    save_cache(stream, path)
    assert load_cache(path).packed_bytes() == stream.packed_bytes()


def test_cache_layout_is_fixed(tmp_path):
    stream = residue_stream(9, 2)
    path = tmp_path / "layout.bin"
    save_cache(stream, path)
    raw = path.read_bytes()
    assert raw[:4] == b"PPAR"
    assert raw[4] == 1
    assert int.from_bytes(raw[5:13], "little") == 2
    assert int.from_bytes(raw[13:21], "little") == 9
    assert len(raw) == 21 + 2
    # bit n of the payload at byte n>>3, position n&7: parities 1,1,0,1,1,1,1,1 -> 0xfb
    assert raw[21] == 0b11111011
    assert raw[22] == 0b0  # p(8) = 22 even


def test_cache_errors(tmp_path):
    stream = residue_stream(64, 2)
    good = tmp_path / "good.bin"
    save_cache(stream, good)
    raw = bytearray(good.read_bytes())

    bad_magic = tmp_path / "magic.bin"
    bad_magic.write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(CacheFormatError) as info:
        load_cache(bad_magic)
    assert info.value.field == "magic" and "bad magic" in str(info.value)

    bad_version = tmp_path / "version.bin"
    bad_version.write_bytes(raw[:4] + b"\x09" + raw[5:])
    with pytest.raises(CacheFormatError) as info:
        load_cache(bad_version)
    assert info.value.field == "version"

    truncated = tmp_path / "short.bin"
    long_decl = bytearray(raw)
    long_decl[13:21] = (10**6).to_bytes(8, "little")
    truncated.write_bytes(long_decl)
    with pytest.raises(CacheFormatError) as info:
        load_cache(truncated)
    assert info.value.field == "payload" and "truncated payload" in str(info.value)

    with pytest.raises(DomainError):
        save_cache(residue_stream(5, 1000), tmp_path / "toolarge.bin")
