"""Deterministic primality, prime-power recognition and integer roots.

Everything here is exact integer arithmetic.  The Miller-Rabin test uses the
fixed witness set that is known to be deterministic for all n < 2^64; larger
inputs are rejected rather than answered probabilistically.
"""

from __future__ import annotations

from typing import Iterator

# Deterministic for every n < 2^64 (Sinclair's witness set).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_MR_LIMIT = 2**64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for all n < 2^64."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise ValueError(f"primality test is only deterministic below 2^64, got {n}")
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_nth_root(m: int, k: int) -> int:
    """floor(m^(1/k)) for m >= 0, k >= 1, by Newton iteration on integers."""
    if m < 0 or k < 1:
        raise ValueError("integer_nth_root needs m >= 0 and k >= 1")
    if m == 0:
        return 0
    if k == 1:
        return m
    x = 1 << (-(-m.bit_length() // k))  # upper start: 2^ceil(bits/k) >= m^(1/k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x


def prime_power_decomposition(m: int) -> tuple[int, int] | None:
    """Return (p, e) with m = p^e and p prime, or None if m is not a prime power."""
    if m < 2:
        return None
    for e in range(m.bit_length(), 0, -1):
        root = integer_nth_root(m, e)
        if root**e == m and is_prime(root):
            return root, e
    return None


def is_prime_power(m: int) -> bool:
    return prime_power_decomposition(m) is not None


def prime_powers_from(start: int) -> Iterator[int]:
    """Yield every prime power >= start in increasing order."""
    if start < 2:
        start = 2
    m = start
    while True:
        if is_prime_power(m):
            yield m
        m += 1


def floor_div(a: int, b: int) -> int:
    """Floor of a/b for non-negative integers; the bracket [a/b]."""
    if a < 0 or b <= 0:
        raise ValueError("floor_div expects a >= 0, b > 0")
    return a // b


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for non-negative integers."""
    if a < 0 or b <= 0:
        raise ValueError("ceil_div expects a >= 0, b > 0")
    return (a + b - 1) // b
