"""Small exact integer routines: primality, factoring, divisors, power tests."""

from __future__ import annotations

from math import gcd, isqrt

from .errors import PrimalityCutoffError

# Deterministic for n < 3.3e24; we only promise n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
PRIMALITY_CUTOFF = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for ``n < 2**64``.

    Raises :class:`PrimalityCutoffError` above the cutoff rather than
    answering probabilistically.
    """
    if n < 2:
        return False
    if n >= PRIMALITY_CUTOFF:
        raise PrimalityCutoffError(f"primality of {n} is beyond the 2**64 cutoff")
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
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


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Intended for n up to ~1e12."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(abs(n))) if n not in (0, 1, -1) else []


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def exact_log(n: int, base: int) -> int | None:
    """Return e with base**e == n, or None."""
    if n < 1:
        return None
    e = 0
    while n % base == 0:
        n //= base
        e += 1
    return e if n == 1 else None


def is_smooth(n: int, primes) -> bool:
    """True iff n >= 1 and every prime factor of n lies in ``primes``."""
    if n < 1:
        return False
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def multiplicative_closure(gens, m: int, limit: int | None = None) -> frozenset[int] | None:
    """Residues reachable from 1 by multiplying by ``gens`` mod m (fixpoint).

    Returns None as soon as the closure grows past ``limit``.
    """
    gens = sorted({g % m for g in gens})
    seen = {1 % m}
    frontier = [1 % m]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                s = r * g % m
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        if limit is not None and len(seen) > limit:
            return None
        frontier = nxt
    return frozenset(seen)


def lcm_upto(t: int) -> int:
    out = 1
    for k in range(2, t + 1):
        out = out * k // gcd(out, k)
    return out


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if sieve[i]]
