"""Modular obstructions to small balls.

For primes q outside the generator primes with (q - 1) | n, every
generator a satisfies a**n = 1 mod q, so the image of the infinite set in
Z/QZ (Q the product of such q) is a small multiplicative closure. When
the radius-h signed sumset of that closure misses a residue, every
integer in the missing class needs at least h + 1 terms.
"""

from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, log

import numpy as np

from .errors import InvalidCertificateError
from .generators import GeneratorSet, residue_closure
from .numtheory import divisors, is_prime, primes_upto

log_ = logging.getLogger(__name__)

MISSING_LIST_LIMIT = 10**6
DENSE_MODULUS_LIMIT = 1 << 30
SAMPLE_SIZE = 1000


@dataclass(frozen=True)
class DeltaReport:
    n: int
    primes: tuple[int, ...]

    @property
    def delta(self) -> int:
        return len(self.primes)


def delta(n: int) -> DeltaReport:
    """Primes p with (p - 1) | n: test d + 1 for every divisor d."""
    if n < 1:
        raise ValueError("delta needs n >= 1")
    return DeltaReport(n, tuple(d + 1 for d in divisors(n) if is_prime(d + 1)))


def coverage_bound(closure_size: int, h: int) -> int:
    """A priori bound (2|S| + 1)**h on the size of a radius-h signed ball."""
    if closure_size < 1 or h < 0:
        raise ValueError("need closure_size >= 1 and h >= 0")
    return (2 * closure_size + 1) ** h


def sumset_binomial_bound(size: int, h: int) -> int:
    """Bound C(2|A| + h - 1, h) on |h^{+-}A| for a finite A."""
    return comb(2 * size + h - 1, h)


def ball_mask(S, h: int, m: int) -> np.ndarray:
    """Dense boolean mask of the radius-h signed sumset of S (with 0) mod m."""
    if m > DENSE_MODULUS_LIMIT:
        raise ValueError(f"modulus {m} exceeds the dense bit-vector limit")
    steps = np.array(sorted({s % m for s in S} | {-s % m for s in S}), dtype=np.int64)
    mask = np.zeros(m, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    chunk = max(1, 2_000_000 // max(1, len(steps)))
    for _ in range(h):
        if frontier.size == 0 or steps.size == 0:
            break
        fresh = []
        for i in range(0, frontier.size, chunk):
            cand = ((frontier[i : i + chunk, None] + steps[None, :]) % m).ravel()
            cand = np.unique(cand[~mask[cand]])
            mask[cand] = True
            fresh.append(cand)
        frontier = np.concatenate(fresh)
    return mask


def signed_ball_mod(S, h: int, m: int) -> frozenset[int]:
    """h^{+-}(S u {0}) mod m, i.e. all sums of at most h signed residues."""
    return frozenset(int(x) for x in np.flatnonzero(ball_mask(S, h, m)))


def mask_digest(mask: np.ndarray) -> str:
    return hashlib.sha256(np.packbits(mask.astype(bool)).tobytes()).hexdigest()


@dataclass(frozen=True)
class ObstructionCertificate:
    """Everything integers N with ``N mod Q in missing`` need h + 1 terms for.

    ``ball_mod`` is None and ``missing`` only a sample when the lists are
    too large to store; ``ball_digest`` always pins the exact ball.
    """

    generator_set: GeneratorSet
    n: int
    q_list: tuple[int, ...]
    Q: int
    closure: tuple[int, ...]
    h: int
    ball_mod: tuple[int, ...] | None
    missing: tuple[int, ...]
    missing_count: int
    ball_digest: str
    missing_complete: bool = True

    def to_json(self) -> dict:
        def ints(xs):
            return None if xs is None else [str(x) for x in xs]

        return {
            "generator_set": self.generator_set.to_json(),
            "n": str(self.n),
            "q_list": ints(self.q_list),
            "Q": str(self.Q),
            "closure": ints(self.closure),
            "h": str(self.h),
            "ball_mod": ints(self.ball_mod),
            "missing": ints(self.missing),
            "missing_count": str(self.missing_count),
            "ball_digest": self.ball_digest,
            "missing_complete": self.missing_complete,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ObstructionCertificate:
        def ints(xs):
            return None if xs is None else tuple(int(x) for x in xs)

        return cls(
            GeneratorSet.from_json(obj["generator_set"]),
            int(obj["n"]),
            ints(obj["q_list"]),
            int(obj["Q"]),
            ints(obj["closure"]),
            int(obj["h"]),
            ints(obj["ball_mod"]),
            ints(obj["missing"]),
            int(obj["missing_count"]),
            obj["ball_digest"],
            bool(obj["missing_complete"]),
        )


def build_certificate(g: GeneratorSet, n: int, q_list, h: int) -> ObstructionCertificate | None:
    """Certificate for an explicit (n, q_list, h); None when the ball covers Z/Q."""
    q_list = tuple(sorted(q_list))
    Q = 1
    for q in q_list:
        Q *= q
    closure = residue_closure(g, Q)
    mask = ball_mask(closure, h, Q)
    missing = np.flatnonzero(~mask)
    if missing.size == 0:
        return None
    full = missing.size <= MISSING_LIST_LIMIT
    ball_list = np.flatnonzero(mask)
    return ObstructionCertificate(
        generator_set=g,
        n=n,
        q_list=q_list,
        Q=Q,
        closure=tuple(sorted(closure)),
        h=h,
        ball_mod=tuple(int(x) for x in ball_list) if ball_list.size <= MISSING_LIST_LIMIT else None,
        missing=tuple(int(x) for x in (missing if full else missing[:SAMPLE_SIZE])),
        missing_count=int(missing.size),
        ball_digest=mask_digest(mask),
        missing_complete=full,
    )


def check_certificate(cert: ObstructionCertificate) -> list[str]:
    """Producer-side re-verification; returns the failed invariants."""
    problems = []
    primes = set(cert.generator_set.primes)
    Q = 1
    for q in cert.q_list:
        Q *= q
        if not is_prime(q):
            problems.append(f"{q} is not prime")
        if q in primes:
            problems.append(f"{q} is a generator prime")
        if cert.n % (q - 1):
            problems.append(f"{q} - 1 does not divide n")
    if not cert.q_list or Q != cert.Q:
        problems.append("Q is not the product of q_list")
        return problems
    if tuple(sorted(residue_closure(cert.generator_set, Q))) != cert.closure:
        problems.append("closure mismatch")
        return problems
    mask = ball_mask(cert.closure, cert.h, Q)
    if mask_digest(mask) != cert.ball_digest:
        problems.append("ball digest mismatch")
    if cert.ball_mod is not None and tuple(np.flatnonzero(mask).tolist()) != cert.ball_mod:
        problems.append("ball_mod mismatch")
    missing = np.flatnonzero(~mask)
    if missing.size == 0 or missing.size != cert.missing_count:
        problems.append("missing count mismatch")
    if any(r < 0 or r >= Q or mask[r] for r in cert.missing):
        problems.append("a missing residue lies in ball_mod")
    if cert.missing_complete and tuple(missing.tolist()) != cert.missing:
        problems.append("missing list is not the full complement")
    return problems


@lru_cache(maxsize=64)
def _checked(cert: ObstructionCertificate) -> bool:
    return not check_certificate(cert)


def certify_lower(n: int, cert: ObstructionCertificate) -> int | None:
    """Unconditional lower bound h + 1 on the length of n, or None."""
    if not _checked(cert):
        raise InvalidCertificateError("; ".join(check_certificate(cert)))
    r = n % cert.Q
    if cert.missing_complete:
        hit = r in set(cert.missing)
    else:
        hit = not ball_mask(cert.closure, cert.h, cert.Q)[r]
    return cert.h + 1 if hit else None


def hardy_ramanujan_upto(max_n: int) -> list[int]:
    """Integers whose exponents are nonincreasing along 2, 3, 5, ...

    These are exactly the products of primorials and include every
    lcm(1..t).
    """
    primes = primes_upto(64)
    out = []

    def rec(i: int, x: int, cap: int):
        out.append(x)
        if i == len(primes):
            return
        p = primes[i]
        y = x
        for e in range(1, cap + 1):
            y *= p
            if y > max_n:
                break
            rec(i + 1, y, e)

    rec(0, 1, max_n.bit_length())
    return sorted(out)


def candidate_ns(max_n: int) -> list[int]:
    """Candidates for n, ordered by increasing delta(n), then n."""
    return sorted(hardy_ramanujan_upto(max_n), key=lambda n: (delta(n).delta, n))


def delta_search(max_n: int) -> list[tuple[int, int, float]]:
    """(n, delta(n), delta(n)/log n) over candidates, best ratio first."""
    rows = []
    for n in hardy_ramanujan_upto(max_n):
        d = delta(n).delta
        rows.append((n, d, d / log(n) if n > 1 else float(d)))
    return sorted(rows, key=lambda r: (-r[2], r[0]))


@dataclass(frozen=True)
class ObstructionBudget:
    max_n: int = 10**5
    max_q_count: int = 8
    max_modulus: int = 1 << 24
    max_closure: int = 20_000
    max_seconds: float | None = 120.0
    max_ball_work: int = 2 * 10**9


@dataclass
class SearchDiagnostics:
    candidates_tried: int = 0
    largest_Q: int = 0
    best_coverage: float = 1.0
    notes: list[str] = field(default_factory=list)


def search_obstruction(
    g: GeneratorSet, h: int, budget: ObstructionBudget = ObstructionBudget()
) -> tuple[ObstructionCertificate | None, SearchDiagnostics]:
    if h < 0:
        raise ValueError("h must be >= 0")
    diag = SearchDiagnostics()
    gp = set(g.primes)
    limit = min(budget.max_modulus, DENSE_MODULUS_LIMIT)
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    for n in candidate_ns(budget.max_n):
        if deadline is not None and time.monotonic() > deadline:
            diag.notes.append("time budget exhausted")
            break
        qs = [q for q in delta(n).primes if q not in gp][: budget.max_q_count]
        if not qs:
            continue
        diag.candidates_tried += 1
        Q = 1
        used = []
        for q in qs:
            if Q * q > limit or (deadline is not None and time.monotonic() > deadline):
                break
            Q *= q
            used.append(q)
            closure = residue_closure(g, Q, budget.max_closure)
            if closure is None:
                break  # closures only grow as q's are added
            diag.largest_Q = max(diag.largest_Q, Q)
            # bound < Q already guarantees a deficit; the sumset is still
            # needed for the missing list.
            if 2 * len(closure) * Q * h > budget.max_ball_work:
                diag.notes.append(f"ball mod {Q} skipped: too much work")
                break
            if coverage_bound(len(closure), h) >= Q:
                covered = int(ball_mask(closure, h, Q).sum()) / Q
                diag.best_coverage = min(diag.best_coverage, covered)
                if covered == 1.0:
                    continue
            cert = build_certificate(g, n, used, h)
            if cert is not None and not check_certificate(cert):
                return cert, diag
    diag.notes.append("budget exhausted")
    log_.info("no obstruction for %s, h=%d: %s", g.describe(), h, diag)
    return None, diag


def find_obstruction(
    g: GeneratorSet, h: int, budget: ObstructionBudget = ObstructionBudget()
) -> ObstructionCertificate | None:
    return search_obstruction(g, h, budget)[0]


def order_chain_holds(n: int, g: GeneratorSet) -> bool:
    """Q_n >= 2**(delta(n) - k0), with Q_n over all admissible primes."""
    gp = set(g.primes)
    qs = [q for q in delta(n).primes if q not in gp]
    Qn = 1
    for q in qs:
        Qn *= q
    return Qn >= 2 ** (delta(n).delta - len(g.primes))
