"""Word lengths in (Z, d_A): witnesses, meet-in-the-middle search, balls.

Everything here produces *upper* bounds backed by explicit witnesses.
A length reported by a search is exact only relative to the
:class:`SearchCaps` it ran under; lower bounds that do not depend on caps
come from :mod:`adlab.sieve` and :mod:`adlab.twoterm`.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, log

import numpy as np

from .errors import CapsError, EmptyUniverseError, SearchBudgetError, WindowExceedsCapsError
from .generators import POWER_UNION, SMOOTH, GeneratorSet, contains, enumerate_up_to, power_form

DEFAULT_OVERSHOOT = 4
MAX_SEARCH_WORK = 3 * 10**7


@dataclass(frozen=True)
class Term:
    sign: int
    magnitude: int
    base: int | None = None
    exponent: int | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.magnitude < 1:
            raise ValueError("term magnitude must be a positive generator")

    @property
    def value(self) -> int:
        return self.sign * self.magnitude

    def to_json(self) -> dict:
        out = {"sign": str(self.sign), "value": str(self.magnitude)}
        if self.base is not None:
            out["base"] = str(self.base)
            out["exponent"] = str(self.exponent)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Term:
        base = obj.get("base")
        exp = obj.get("exponent")
        return cls(
            int(obj["sign"]),
            int(obj["value"]),
            None if base is None else int(base),
            None if exp is None else int(exp),
        )


def make_term(g: GeneratorSet, value: int) -> Term:
    sign = 1 if value > 0 else -1
    pf = power_form(g, abs(value))
    if pf is None:
        return Term(sign, abs(value))
    return Term(sign, abs(value), pf[0], pf[1])


def canonical_order(values) -> tuple[int, ...]:
    """Values sorted by descending absolute value, positive first on ties."""
    return tuple(sorted(values, key=lambda v: (-abs(v), -v)))


@dataclass(frozen=True)
class Representation:
    target: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if sum(t.value for t in self.terms) != self.target:
            raise ValueError(f"terms do not sum to {self.target}")
        vals = {t.value for t in self.terms}
        if any(-v in vals for v in vals):
            raise ValueError("representation contains a cancelling pair")

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(t.value for t in self.terms)

    @classmethod
    def from_values(cls, g: GeneratorSet, target: int, values) -> Representation:
        return cls(target, tuple(make_term(g, v) for v in canonical_order(values)))

    def __str__(self):
        if not self.terms:
            return f"{self.target} = 0"
        body = " ".join(f"{'+' if t.sign > 0 else '-'} {t.magnitude}" for t in self.terms)
        return f"{self.target} = {body.lstrip('+ ')}"


@dataclass(frozen=True)
class SearchCaps:
    """Exponent caps per prime/base plus a bound on |term value|.

    ``magnitude_cap=None`` means unbounded; then every prime/base of the
    generator set needs an exponent cap.
    """

    exponent_cap: tuple[tuple[int, int], ...] = ()
    magnitude_cap: int | None = None

    def __post_init__(self):
        caps = self.exponent_cap
        if isinstance(caps, dict):
            caps = caps.items()
        caps = tuple(sorted((int(b), int(e)) for b, e in caps))
        object.__setattr__(self, "exponent_cap", caps)
        if any(e < 0 for _, e in caps):
            raise ValueError("exponent caps must be >= 0")
        if self.magnitude_cap is not None and self.magnitude_cap < 1:
            raise ValueError("magnitude cap must be >= 1")

    @classmethod
    def make(cls, exponents: dict | None = None, magnitude: int | None = None) -> SearchCaps:
        exps = dict(exponents or {})
        if magnitude is None and exps:
            magnitude = max(b**e for b, e in exps.items())
        return cls(tuple(exps.items()), magnitude)

    def cap_for(self, base: int) -> int | None:
        return dict(self.exponent_cap).get(base)

    def limited(self, magnitude: int) -> SearchCaps:
        m = magnitude if self.magnitude_cap is None else min(magnitude, self.magnitude_cap)
        return SearchCaps(self.exponent_cap, m)

    def admits(self, g: GeneratorSet, a: int) -> bool:
        """Whether the generator a (assumed in g) is inside these caps."""
        if self.magnitude_cap is not None and a > self.magnitude_cap:
            return False
        bases = g.numbers if g.kind == SMOOTH else None
        if bases is not None:
            for p in bases:
                cap = self.cap_for(p)
                if cap is not None:
                    e = 0
                    x = a
                    while x % p == 0:
                        x //= p
                        e += 1
                    if e > cap:
                        return False
            return True
        if a == 1:
            return True
        for b in g.numbers:
            cap = self.cap_for(b)
            x, e = a, 0
            while x % b == 0:
                x //= b
                e += 1
            if x == 1 and (cap is None or e <= cap):
                return True
        return False

    def to_json(self) -> dict:
        return {
            "exponent_cap": {str(b): str(e) for b, e in self.exponent_cap},
            "magnitude_cap": None if self.magnitude_cap is None else str(self.magnitude_cap),
        }

    @classmethod
    def from_json(cls, obj: dict) -> SearchCaps:
        mag = obj.get("magnitude_cap")
        return cls(
            tuple((int(b), int(e)) for b, e in obj["exponent_cap"].items()),
            None if mag is None else int(mag),
        )

    def __str__(self):
        exps = ",".join(f"{b}^{e}" for b, e in self.exponent_cap) or "-"
        mag = "inf" if self.magnitude_cap is None else f"~2^{self.magnitude_cap.bit_length() - 1}"
        return f"caps(exp={exps}, W={mag})"


DIOPHANTINE_CAPS = SearchCaps.make({2: 512, 3: 324})
DEEP_CAPS = SearchCaps.make({2: 40, 3: 25}, 1 << 40)


def _generator_magnitudes(g: GeneratorSet, caps: SearchCaps) -> list[int]:
    mag = caps.magnitude_cap
    if g.kind == POWER_UNION:
        out = {1}
        for b in g.numbers:
            cap = caps.cap_for(b)
            if cap is None and mag is None:
                raise CapsError(f"base {b} has neither exponent nor magnitude cap")
            x, e = b, 1
            while (cap is None or e <= cap) and (mag is None or x <= mag):
                out.add(x)
                x *= b
                e += 1
        return sorted(out)
    primes = g.numbers
    for p in primes:
        if caps.cap_for(p) is None and mag is None:
            raise CapsError(f"prime {p} has neither exponent nor magnitude cap")
    out = []

    def rec(i: int, x: int):
        if i == len(primes):
            out.append(x)
            return
        p = primes[i]
        cap = caps.cap_for(p)
        e = 0
        while True:
            rec(i + 1, x)
            e += 1
            x *= p
            if (cap is not None and e > cap) or (mag is not None and x > mag):
                break

    rec(0, 1)
    return sorted(out)


@lru_cache(maxsize=32)
def _universe(g: GeneratorSet, caps: SearchCaps) -> tuple[int, ...]:
    mags = _generator_magnitudes(g, caps)
    if not mags:
        raise EmptyUniverseError(f"{caps} exclude every generator of {g.describe()}")
    return tuple([-a for a in reversed(mags)] + mags)


def term_universe(g: GeneratorSet, caps: SearchCaps) -> list[int]:
    """All signed generator values admitted by ``caps``, ascending."""
    return list(_universe(g, caps))


def _has_cancel(values) -> bool:
    s = set(values)
    return any(-v in s for v in s)


class LengthSearch:
    """Meet-in-the-middle search for exact-h signed representations.

    Sums of ``h // 2`` terms are tabulated (value -> canonical tuple); sums
    of the other ``h - h // 2`` terms are scanned for the complement. Every
    scan tuple is visited, so the reported witness is the canonical minimum
    over all scan tuples paired with their canonical table entry; with
    ``h <= 2`` that is the global canonical minimum.
    """

    def __init__(self, g: GeneratorSet, caps: SearchCaps):
        self.g = g
        self.caps = caps
        self.universe = _universe(g, caps)
        self.uset = frozenset(self.universe)
        self._tables: dict[int, dict[int, tuple[int, ...]]] = {}

    def cost(self, h: int) -> int:
        """Tuples visited by :meth:`representable` for exact length h."""
        if h <= 1:
            return 1
        k1, k2 = h // 2, h - h // 2
        u = len(self.universe)
        return comb(u + k2 - 1, k2) + (comb(u + k1 - 1, k1) if k1 >= 2 else 0)

    def feasible(self, h: int) -> bool:
        return all(self.cost(k) <= MAX_SEARCH_WORK for k in range(h + 1))

    def _table(self, k: int) -> dict[int, tuple[int, ...]]:
        if k not in self._tables:
            table: dict[int, tuple[int, ...]] = {}
            for combo in combinations_with_replacement(self.universe, k):
                if _has_cancel(combo):
                    continue
                key = canonical_order(combo)
                v = sum(combo)
                old = table.get(v)
                if old is None or key < old:
                    table[v] = key
            self._tables[k] = table
        return self._tables[k]

    def _tuples_summing(self, r: int, k: int, lo: int = 0):
        """Nondecreasing k-tuples from the universe summing to r."""
        if k == 1:
            if r in self.uset and bisect_left(self.universe, r) >= lo:
                yield (r,)
            return
        for i in range(lo, len(self.universe)):
            u = self.universe[i]
            for rest in self._tuples_summing(r - u, k - 1, i):
                yield (u,) + rest

    def representable(self, n: int, h: int) -> Representation | None:
        if h < 0:
            raise ValueError("h must be >= 0")
        mag = self.caps.magnitude_cap
        if mag is not None and abs(n) > h * mag:
            return None
        if h == 0:
            return Representation(n, ()) if n == 0 else None
        if h == 1:
            return Representation.from_values(self.g, n, (n,)) if n in self.uset else None
        if self.cost(h) > MAX_SEARCH_WORK:
            raise SearchBudgetError(f"{h}-term search over {len(self.universe)} terms exceeds the work budget")
        k1 = h // 2
        k2 = h - k1
        table = {u: (u,) for u in self.universe} if k1 == 1 else self._table(k1)
        best: tuple[int, ...] | None = None
        for s in combinations_with_replacement(self.universe, k2):
            t = table.get(n - sum(s))
            if t is None or (k2 > 1 and _has_cancel(s)):
                continue
            cand = canonical_order(s + t)
            if _has_cancel(cand):
                cand = None
                for alt in self._tuples_summing(n - sum(s), k1):
                    c = canonical_order(s + alt)
                    if not _has_cancel(c) and (cand is None or c < cand):
                        cand = c
                if cand is None:
                    continue
            if best is None or cand < best:
                best = cand
        if best is None:
            return None
        return Representation.from_values(self.g, n, best)

    def length_upper(self, n: int, h_max: int) -> tuple[int, Representation] | None:
        """Smallest h <= h_max with a witness; SearchBudgetError when a
        level before the answer is too expensive to search."""
        for h in range(h_max + 1):
            rep = self.representable(n, h)
            if rep is not None:
                return h, rep
        return None


@lru_cache(maxsize=16)
def searcher(g: GeneratorSet, caps: SearchCaps) -> LengthSearch:
    return LengthSearch(g, caps)


def _check_target(n: int, caps: SearchCaps):
    if caps.magnitude_cap is not None and abs(n) > caps.magnitude_cap:
        raise CapsError(f"|{n}| exceeds magnitude cap of {caps}")


def is_representable(n: int, h: int, g: GeneratorSet, caps: SearchCaps) -> Representation | None:
    """A representation of n by exactly h signed generators within caps, or None."""
    _check_target(n, caps)
    return searcher(g, caps).representable(n, h)


def length_upper(n: int, h_max: int, g: GeneratorSet, caps: SearchCaps) -> tuple[int, Representation] | None:
    """Smallest h <= h_max with an h-term witness for n, or None."""
    if h_max < 0:
        raise ValueError("h_max must be >= 0")
    _check_target(n, caps)
    return searcher(g, caps).length_upper(n, h_max)


@dataclass
class Ball:
    """Layered BFS over [-W, W] in the Cayley graph of (Z, term universe).

    ``dist[i]`` is the layer at which ``i - W`` first appeared (-1 when not
    reached within ``h`` layers); ``parent[i]`` indexes the term used.
    """

    g: GeneratorSet
    caps: SearchCaps
    h: int
    window: int
    working_magnitude: int
    terms: np.ndarray
    dist: np.ndarray = field(repr=False)
    parent: np.ndarray = field(repr=False)

    def _idx(self, n: int) -> int:
        if abs(n) > self.window:
            raise ValueError(f"{n} is outside the window [-{self.window}, {self.window}]")
        return n + self.working_magnitude

    def length(self, n: int) -> int | None:
        d = int(self.dist[self._idx(n)])
        return None if d < 0 else d

    def witness(self, n: int) -> Representation | None:
        i = self._idx(n)
        if self.dist[i] < 0:
            return None
        vals = []
        while self.dist[i] > 0:
            t = int(self.terms[self.parent[i]])
            vals.append(t)
            i -= t
        return Representation.from_values(self.g, n, vals)

    def window_lengths(self) -> np.ndarray:
        """Lengths for n = -window..window (-1 where absent)."""
        W, M = self.working_magnitude, self.window
        return self.dist[W - M : W + M + 1]

    def entries(self):
        d = self.window_lengths()
        for k in np.flatnonzero(d >= 0):
            yield int(k) - self.window, int(d[k])

    def sphere(self, k: int) -> list[int]:
        d = self.window_lengths()
        return [int(i) - self.window for i in np.flatnonzero(d == k)]

    def counts(self) -> dict[int, int]:
        d = self.window_lengths()
        values, counts = np.unique(d[d >= 0], return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def working_magnitude(g: GeneratorSet, window: int, overshoot: int = DEFAULT_OVERSHOOT) -> int:
    return overshoot * (window + enumerate_up_to(g, window)[-1])


def ball(
    h: int,
    window: int,
    g: GeneratorSet,
    caps: SearchCaps,
    overshoot: int = DEFAULT_OVERSHOOT,
) -> Ball:
    """Radius-h ball restricted to [-window, window].

    Partial sums are kept within the working magnitude
    ``overshoot * (window + largest generator <= window)``, so reported
    lengths are upper bounds that are exact relative to that truncation.
    """
    if h < 0 or window < 1:
        raise ValueError("need h >= 0 and window >= 1")
    if caps.magnitude_cap is not None and window > caps.magnitude_cap:
        raise WindowExceedsCapsError(f"window {window} exceeds {caps}")
    W = working_magnitude(g, window, overshoot)
    terms = np.array(term_universe(g, caps.limited(2 * W)), dtype=np.int64)
    size = 2 * W + 1
    dist = np.full(size, -1, dtype=np.int8)
    parent = np.full(size, -1, dtype=np.int32)
    unseen = np.ones(size, dtype=bool)
    dist[W] = 0
    unseen[W] = False
    frontier = np.zeros(size, dtype=bool)
    frontier[W] = True
    lo = hi = W
    for layer in range(h):
        reached = np.zeros(size, dtype=bool)
        for k, t in enumerate(terms):
            t = int(t)
            d0, d1 = max(lo + t, 0), min(hi + t, size - 1)
            if d0 > d1:
                continue
            src = frontier[d0 - t : d1 - t + 1]
            fresh = src & unseen[d0 : d1 + 1]
            if fresh.any():
                parent[d0 : d1 + 1][fresh] = k
                unseen[d0 : d1 + 1][fresh] = False
                reached[d0 : d1 + 1] |= fresh
        if not reached.any():
            break
        dist[reached] = layer + 1
        frontier = reached
        nz = np.flatnonzero(reached)
        lo, hi = int(nz[0]), int(nz[-1])
    return Ball(g, caps, h, window, W, terms, dist, parent)


def sphere(h: int, window: int, g: GeneratorSet, caps: SearchCaps, overshoot: int = DEFAULT_OVERSHOOT) -> list[int]:
    return ball(h, window, g, caps, overshoot).sphere(h)


def exponent_caps_for(g: GeneratorSet, magnitude: int) -> SearchCaps:
    """Caps admitting every generator up to ``magnitude``."""
    return SearchCaps.make({b: int(log(magnitude, b)) + 1 for b in g.numbers}, magnitude)


__all__ = [
    "Term",
    "Representation",
    "SearchCaps",
    "DIOPHANTINE_CAPS",
    "DEEP_CAPS",
    "term_universe",
    "is_representable",
    "length_upper",
    "Ball",
    "ball",
    "sphere",
    "contains",
]
