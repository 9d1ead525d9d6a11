"""Small number-theory helpers for group orders."""

from __future__ import annotations

import math


def is_prime(n: int) -> bool:
    if n <= 1:
        return False
    if n <= 3:
        return True
    if n % 2 == 0:
        return False
    for i in range(3, math.isqrt(n) + 1, 2):
        if n % i == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors in ascending order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    part = 1
    while n % p == 0:
        part *= p
        n //= p
    return part


def is_prime_power(n: int) -> bool:
    """True for 1 and for p^k with k >= 1; the identity counts as a prime-power element."""
    if n == 1:
        return True
    factors = prime_factors(n)
    return len(factors) == 1
