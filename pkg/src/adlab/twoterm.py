"""Unconditional proofs that an integer is not a sum or difference of
two generators (hence has length >= 3).

Positive N with a two-term representation satisfies N = a + b (both
below N, a finite check) or N = a - b. For the difference the
unbounded part reduces to exponential equations ``u**x - v**y = c`` with
coprime u, v, which are refuted by an exponent sieve:

* if ``y >= Y0`` then ``u**x = c (mod q**(f*Y0))`` pins x to a residue
  class mod ``ord(u)`` (or is impossible), and symmetrically for x;
* with both exponents large, an auxiliary prime r for which the allowed
  values of ``u**x`` and ``v**y`` mod r never differ by c kills the case;
* the remaining small exponents are checked directly.

Smooth sets reduce to that form after dividing out ``gcd(a, b)`` provided
no side of the coprime split carries two or more primes; other shapes
are reported as unprovable (None), never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, log2

from .generators import POWER_UNION, GeneratorSet, contains, enumerate_up_to
from .numtheory import exact_log, factorize, is_smooth, primes_upto, valuation

MAX_SIEVE_MODULUS = 1 << 20
MAX_AUX_PRIME = 3000


@dataclass(frozen=True)
class ExpDiffRefutation:
    """No x, y >= 0 satisfy ``u**x - v**y = c``.

    ``x_class`` is the class of x forced by ``y >= y_threshold`` (None when
    that is impossible) and ``y_class`` the class of y forced by
    ``x >= x_threshold``. ``killer`` is the auxiliary prime refuting the
    case where both thresholds are met (None if one class is impossible).
    """

    u: int
    v: int
    c: int
    x_threshold: int
    y_threshold: int
    x_class: tuple[int, int] | None
    y_class: tuple[int, int] | None
    killer: int | None

    def to_json(self) -> dict:
        return {
            "u": str(self.u),
            "v": str(self.v),
            "c": str(self.c),
            "x_threshold": str(self.x_threshold),
            "y_threshold": str(self.y_threshold),
            "x_class": None if self.x_class is None else [str(t) for t in self.x_class],
            "y_class": None if self.y_class is None else [str(t) for t in self.y_class],
            "killer": None if self.killer is None else str(self.killer),
        }

    @classmethod
    def from_json(cls, obj: dict) -> ExpDiffRefutation:
        def pair(x):
            return None if x is None else (int(x[0]), int(x[1]))

        return cls(
            int(obj["u"]),
            int(obj["v"]),
            int(obj["c"]),
            int(obj["x_threshold"]),
            int(obj["y_threshold"]),
            pair(obj["x_class"]),
            pair(obj["y_class"]),
            None if obj["killer"] is None else int(obj["killer"]),
        )


def _dlog_class(base: int, target: int, m: int) -> tuple[int, int] | None:
    """(j0, ord) with base**j = target mod m iff j = j0 mod ord; None if never."""
    target %= m
    x, j, j0 = 1 % m, 0, None
    while True:
        if x == target and j0 is None:
            j0 = j
        x = x * base % m
        j += 1
        if x == 1 % m:
            break
        if j > m:
            raise ArithmeticError("base is not a unit modulo m")
    return None if j0 is None else (j0, j)


@lru_cache(maxsize=None)
def _power_table(a: int, r: int) -> tuple[int, ...]:
    """a**0, a**1, ... mod r up to (excluding) the return to 1."""
    out = [1]
    x = a % r
    while x != 1:
        out.append(x)
        x = x * a % r
    return tuple(out)


def _kills(u: int, v: int, c: int, x_class, y_class, r: int) -> bool:
    x0, X = x_class
    y0, Y = y_class
    pu, pv = _power_table(u, r), _power_table(v, r)
    gu, gv = gcd(X, len(pu)), gcd(Y, len(pv))
    vs = set(pv[y0 % gv :: gv])
    return all((s - c) % r not in vs for s in pu[x0 % gu :: gu])


def _small_solution(u: int, v: int, c: int, x_thr: int, y_thr: int) -> tuple[int, int] | None:
    for x in range(x_thr):
        y = exact_log(u**x - c, v)
        if y is not None:
            return x, y
    for y in range(y_thr):
        x = exact_log(c + v**y, u)
        if x is not None:
            return x, y
    return None


def refute_exp_diff(u: int, v: int, c: int) -> ExpDiffRefutation | tuple[int, int] | None:
    """Refute ``u**x - v**y = c`` over x, y >= 0.

    Returns a refutation, an explicit solution ``(x, y)``, or None when the
    sieve gives up.
    """
    if u < 2 or v < 2 or gcd(u, v) != 1 or c == 0:
        raise ValueError("need coprime u, v >= 2 and c != 0")
    p = min(factorize(u))
    q = min(factorize(v))
    e, f = valuation(u, p), valuation(v, q)
    aux = [r for r in primes_upto(MAX_AUX_PRIME) if (u * v) % r]
    tried = set()
    for bits in range(2, MAX_SIEVE_MODULUS.bit_length()):
        x_thr = max(1, int(bits / (e * log2(p))))
        y_thr = max(1, int(bits / (f * log2(q))))
        if (x_thr, y_thr) in tried:
            continue
        tried.add((x_thr, y_thr))
        sol = _small_solution(u, v, c, x_thr, y_thr)
        if sol is not None:
            return sol
        # y >= y_thr  =>  u**x = c  (mod q**(f*y_thr))
        x_class = _dlog_class(u, c, q ** (f * y_thr))
        # x >= x_thr  =>  v**y = -c  (mod p**(e*x_thr))
        y_class = _dlog_class(v, -c, p ** (e * x_thr))
        if x_class is None or y_class is None:
            return ExpDiffRefutation(u, v, c, x_thr, y_thr, x_class, y_class, None)
        for r in aux:
            if _kills(u, v, c, x_class, y_class, r):
                return ExpDiffRefutation(u, v, c, x_thr, y_thr, x_class, y_class, r)
    return None


@dataclass(frozen=True)
class TwoTermProof:
    """Evidence that n is neither in +-A nor in +-A +- A.

    ``refutations`` holds one entry per exponential equation the producer
    had to rule out; the verifier rebuilds the list of required equations
    independently and checks that each is covered.
    """

    generator_set: GeneratorSet
    n: int
    refutations: tuple[ExpDiffRefutation, ...]

    def to_json(self) -> dict:
        return {
            "generator_set": self.generator_set.to_json(),
            "n": str(self.n),
            "refutations": [r.to_json() for r in self.refutations],
        }

    @classmethod
    def from_json(cls, obj: dict) -> TwoTermProof:
        return cls(
            GeneratorSet.from_json(obj["generator_set"]),
            int(obj["n"]),
            tuple(ExpDiffRefutation.from_json(r) for r in obj["refutations"]),
        )


def difference_equations(g: GeneratorSet, n: int):
    """Reduce ``n = a - b`` (a, b in g) to finitely many side conditions.

    Yields ``("eq", u, v, c)`` for an exponential equation that must be
    refuted, ``("direct", value)`` when some explicit value must not lie
    in the set (the value is a two-term witness if it does) and
    ``("unsupported", detail)`` for shapes the sieve does not handle.
    """
    n = abs(n)
    if g.kind == POWER_UNION:
        bases = (1,) + g.numbers
        for u in bases:
            for v in bases:
                if u == 1:
                    continue  # a = 1 forces b = 1 - n < 1
                if v == 1:
                    yield ("direct_power", u, n + 1)
                elif u == v:
                    # u**y * (u**(x-y) - 1) = n, so u**y | n
                    y = 0
                    while n % u**y == 0:
                        yield ("direct_power", u, n // u**y + 1)
                        y += 1
                elif gcd(u, v) == 1:
                    yield ("eq", u, v, n)
                else:
                    yield ("unsupported", f"bases {u}, {v} are not coprime")
        return
    primes = g.numbers
    smooth_part = 1
    for p in primes:
        smooth_part *= p ** valuation(n, p)
    for d in sorted(x for x in enumerate_up_to(g, smooth_part) if smooth_part % x == 0):
        m = n // d
        # coprime a' - b' = m with a' over side1, b' over side2
        for mask in range(1, 1 << len(primes)):
            side1 = [p for i, p in enumerate(primes) if mask >> i & 1]
            side2 = [p for p in primes if p not in side1]
            if not side2:
                yield ("direct_smooth", tuple(side1), m + 1)
            elif len(side1) == 1 and len(side2) == 1:
                yield ("eq", side1[0], side2[0], m)
            else:
                yield ("unsupported", f"split {side1} / {side2} has a multi-prime side")


def prove_length_at_least_three(g: GeneratorSet, n: int) -> TwoTermProof | None:
    """Unconditional proof that ``n`` has word length >= 3, or None."""
    m = abs(n)
    if m == 0 or contains(g, m):
        return None
    if any(contains(g, m - a) for a in enumerate_up_to(g, m) if a < m):
        return None
    refutations = []
    for item in difference_equations(g, m):
        kind = item[0]
        if kind == "unsupported":
            return None
        if kind == "direct_power":
            if exact_log(item[2], item[1]) is not None:
                return None
        elif kind == "direct_smooth":
            if is_smooth(item[2], item[1]):
                return None
        else:
            _, u, v, c = item
            res = refute_exp_diff(u, v, c)
            if not isinstance(res, ExpDiffRefutation):
                return None
            refutations.append(res)
    return TwoTermProof(g, n, tuple(refutations))
