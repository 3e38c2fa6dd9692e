import time

import pytest

from pparity.partitions import residue_stream


def brute_force_partitions(n_max: int) -> list[int]:
    """p(0..n_max) by the classic count-with-max-part DP; independent of any recurrence."""
    table = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    for k in range(n_max + 1):
        table[0][k] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n_max + 1):
            table[n][k] = table[n][k - 1] + (table[n - k][min(n - k, k)] if k <= n else 0)
    return [table[n][n] for n in range(n_max + 1)]


@pytest.fixture(scope="session")
def small_partitions():
    return brute_force_partitions(60)


@pytest.fixture(scope="session")
def mega_parity():
    """Parity stream to 10^6 with its build time; shared across the suite."""
    start = time.perf_counter()
    stream = residue_stream(1_000_000, 2)
    elapsed = time.perf_counter() - start
    return stream, elapsed
