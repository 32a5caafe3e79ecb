"""Counting functions for level-n covers of the modular curve."""

from __future__ import annotations

from fractions import Fraction

GROUP_KINDS = ("SL2", "G", "H", "SP_stab")


def prime_divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def cusp_count(n: int) -> Fraction:
    """t(n) = n^2/2 * prod over primes p | n of (1 - 1/p^2).

    Integral for n >= 3; for n = 1, 2 the formula is evaluated as written.
    """
    value = Fraction(n * n, 2)
    for p in prime_divisors(n):
        value *= 1 - Fraction(1, p * p)
    return value


def group_order(kind: str, n: int) -> Fraction:
    t = cusp_count(n)
    if kind == "SL2":
        return 2 * n * t
    if kind == "G":
        return 2 * n**3 * t
    if kind == "H":
        return 2 * n**5 * t
    if kind == "SP_stab":
        return 16 * n * n * t
    raise ValueError(f"unknown group kind {kind!r}; expected one of {', '.join(GROUP_KINDS)}")


def section_self_intersection(n: int) -> Fraction:
    """Self-intersection -(n/12) t(n) of one section on the level-n elliptic surface."""
    return -Fraction(n, 12) * cusp_count(n)


def zero_section_square(n: int) -> Fraction:
    """Z^2 on the universal curve: the n^2 sections, each of self-intersection
    -(n/12)t(n) and pairwise disjoint, divided by the deck group order 2n^3 t(n)."""
    return n * n * section_self_intersection(n) / group_order("G", n)
