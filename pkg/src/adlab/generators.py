"""Infinite generating sets of the integers.

Two families are supported: the smooth set over a finite prime set
(all positive integers whose prime factors lie in it) and the union of
the power sets ``{b**j : j >= 0}`` of finitely many bases. Both contain
1, so both generate Z. Negative generators are never stored; signs live
on :class:`adlab.engine.Term`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .errors import NonCoprimeError
from .numtheory import exact_log, is_prime, is_smooth, multiplicative_closure, prime_factors

SMOOTH = "SMOOTH"
POWER_UNION = "POWER_UNION"


@dataclass(frozen=True)
class GeneratorSet:
    kind: str
    numbers: tuple[int, ...]

    def __post_init__(self):
        nums = tuple(self.numbers)
        object.__setattr__(self, "numbers", nums)
        if self.kind not in (SMOOTH, POWER_UNION):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not nums:
            raise ValueError("generator set needs at least one prime/base")
        if any(b >= a for a, b in zip(nums[1:], nums)):
            raise ValueError("primes/bases must be strictly increasing")
        if self.kind == SMOOTH and not all(is_prime(p) for p in nums):
            raise ValueError(f"SMOOTH needs primes, got {nums}")
        if self.kind == POWER_UNION and nums[0] < 2:
            raise ValueError("POWER_UNION bases must be >= 2")

    @classmethod
    def smooth(cls, primes) -> GeneratorSet:
        return cls(SMOOTH, tuple(sorted(set(primes))))

    @classmethod
    def power_union(cls, bases) -> GeneratorSet:
        return cls(POWER_UNION, tuple(sorted(set(bases))))

    @property
    def primes(self) -> tuple[int, ...]:
        """Every prime dividing some element of the set."""
        if self.kind == SMOOTH:
            return self.numbers
        return tuple(sorted({p for b in self.numbers for p in prime_factors(b)}))

    def smooth_hull(self) -> GeneratorSet:
        """The smooth set over :attr:`primes`; contains this set."""
        return GeneratorSet.smooth(self.primes)

    def describe(self) -> str:
        flag = "primes" if self.kind == SMOOTH else "bases"
        return f"{flag}={','.join(map(str, self.numbers))}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "numbers": [str(x) for x in self.numbers]}

    @classmethod
    def from_json(cls, obj: dict) -> GeneratorSet:
        return cls(obj["kind"], tuple(int(x) for x in obj["numbers"]))


def enumerate_up_to(g: GeneratorSet, bound: int) -> list[int]:
    """Sorted list of elements of ``g`` in ``[1, bound]``.

    Smooth numbers come out of a heap merge: each popped value x is
    multiplied only by primes at least as large as its largest prime
    factor, so every value is pushed exactly once.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if g.kind == POWER_UNION:
        out = {1}
        for b in g.numbers:
            x = b
            while x <= bound:
                out.add(x)
                x *= b
        return sorted(out)
    primes = g.numbers
    out = []
    heap = [(1, 0)]
    while heap:
        x, i = heapq.heappop(heap)
        out.append(x)
        for j in range(i, len(primes)):
            y = x * primes[j]
            if y > bound:
                break
            heapq.heappush(heap, (y, j))
    return out


def contains(g: GeneratorSet, n: int, symmetric: bool = False) -> bool:
    """Membership of n in the set (of |n| in it when ``symmetric``)."""
    if symmetric:
        n = abs(n)
    if n < 1:
        return False
    if g.kind == SMOOTH:
        return is_smooth(n, g.numbers)
    return n == 1 or any(exact_log(n, b) is not None for b in g.numbers)


def power_form(g: GeneratorSet, a: int) -> tuple[int, int] | None:
    """(base, exponent) for a POWER_UNION element, smallest base first."""
    if g.kind != POWER_UNION or a < 1:
        return None
    for b in g.numbers:
        e = exact_log(a, b)
        if e is not None:
            return b, e
    return None


def generator_residues(g: GeneratorSet, m: int) -> list[int]:
    for p in g.primes:
        if gcd(p, m) > 1:
            raise NonCoprimeError(p, m)
    return [x % m for x in g.numbers]


def residue_closure(g: GeneratorSet, m: int, limit: int | None = None) -> frozenset[int] | None:
    """The image of the set in Z/mZ: the multiplicative closure of the
    generator residues, computed as a fixpoint from 1.

    With ``limit``, gives up (None) once the closure exceeds it.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return multiplicative_closure(generator_residues(g, m), m, limit)


def parse_generator_args(primes: str | None, bases: str | None) -> GeneratorSet:
    if primes and bases:
        raise ValueError("give exactly one of --primes / --bases")
    if bases:
        return GeneratorSet.power_union(int(x) for x in bases.split(","))
    return GeneratorSet.smooth(int(x) for x in (primes or "2,3").split(","))
