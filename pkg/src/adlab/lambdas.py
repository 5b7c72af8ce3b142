"""Smallest positive integers of a given length.

``compute_lambda`` scans N = 1, 2, ... . An N is excluded from being the
answer by an explicit witness with fewer than h terms (unconditional) or
by a cap-free proof that its length exceeds h. The first N with an
h-term witness and a lower bound of h is the answer; the result is
PROVEN only when every piece of evidence is cap-free.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .bounds import (
    CAP_CONDITIONAL,
    EXHAUSTIVE,
    PROVEN,
    LengthBound,
    LowerProof,
    unconditional_lower,
)
from .engine import DEEP_CAPS, DIOPHANTINE_CAPS, Representation, SearchCaps, ball, searcher
from .generators import GeneratorSet
from .sieve import ObstructionBudget, find_obstruction

log = logging.getLogger(__name__)

DEFAULT_NMAX = 10**6


def default_caps(h: int) -> SearchCaps:
    """Caps for searches of fewer than h terms: wide for two-term
    questions, shallower once three-term searches are needed."""
    return DIOPHANTINE_CAPS if h <= 3 else DEEP_CAPS


@dataclass(frozen=True)
class LambdaResult:
    generator_set: GeneratorSet
    h: int
    value: int | None
    lower_bound: int
    status: str
    caps: SearchCaps
    evidence: tuple[LengthBound, ...]

    @property
    def resolved(self) -> bool:
        return self.value is not None

    def describe(self) -> str:
        what = str(self.value) if self.resolved else f">= {self.lower_bound}"
        return f"lambda_{{{self.generator_set.describe()}}}({self.h}) {what} [{self.status}]"

    def to_json(self) -> dict:
        return {
            "generator_set": self.generator_set.to_json(),
            "h": str(self.h),
            "value": None if self.value is None else str(self.value),
            "lower_bound": str(self.lower_bound),
            "status": self.status,
            "caps": self.caps.to_json(),
            "evidence": [e.to_json() for e in self.evidence],
        }

    @classmethod
    def from_json(cls, obj: dict) -> LambdaResult:
        return cls(
            GeneratorSet.from_json(obj["generator_set"]),
            int(obj["h"]),
            None if obj["value"] is None else int(obj["value"]),
            int(obj["lower_bound"]),
            obj["status"],
            SearchCaps.from_json(obj["caps"]),
            tuple(LengthBound.from_json(e) for e in obj["evidence"]),
        )


def excludes(bound: LengthBound, h: int) -> bool:
    """Whether the bound rules out length exactly h."""
    return (bound.upper is not None and bound.upper < h) or bound.lower > h


def exclusion_is_unconditional(bound: LengthBound, h: int) -> bool:
    if bound.upper is not None and bound.upper < h:
        return True
    return bound.lower > h and bound.lower_proof.unconditional


class _Prover:
    """Lower bounds with obstruction certificates fetched on demand."""

    def __init__(self, g: GeneratorSet, budget: ObstructionBudget):
        self.g = g
        self.budget = budget
        self._certs: dict[int, tuple] = {}

    def certificates(self, radius: int) -> tuple:
        if radius not in self._certs:
            cert = find_obstruction(self.g, radius, self.budget) if radius >= 1 else None
            self._certs[radius] = () if cert is None else (cert,)
        return self._certs[radius]

    def lower(self, n: int, need: int) -> tuple[int, LowerProof]:
        lb = unconditional_lower(n, self.g, at_least=need)
        if lb[0] < need and need >= 2:
            lb = max(lb, unconditional_lower(n, self.g, self.certificates(need - 1), at_least=need), key=lambda t: t[0])
        return lb


def _cheap_lower(n: int, g: GeneratorSet) -> tuple[int, LowerProof]:
    return unconditional_lower(n, g)


def _witness_bound(n: int, g: GeneratorSet, rep: Representation) -> LengthBound:
    lower, proof = _cheap_lower(n, g)
    return LengthBound(n, min(lower, rep.length), proof, rep.length, rep)


class _Scanner:
    def __init__(self, g, h, caps, budget, overshoot):
        self.g, self.h, self.caps = g, h, caps
        self.search = searcher(g, caps)
        self.prover = _Prover(g, budget)
        self.overshoot = overshoot
        self.window = 0
        self.ball = None
        self.can_search_below = self.search.feasible(h - 1)
        self.can_search_at = self.search.feasible(h)

    def ball_for(self, n: int, limit: int):
        if n > self.window:
            w = min(limit, max(1024, 2 * self.window))
            if self.caps.magnitude_cap is not None:
                w = min(w, self.caps.magnitude_cap)
            self.window = max(w, n)
            self.ball = ball(self.h, self.window, self.g, self.caps, self.overshoot)
        return self.ball

    def entry(self, n: int, limit: int) -> tuple[LengthBound | None, Representation | None]:
        """(bound, None) when n is settled, else (None, h-term witness or None)."""
        h = self.h
        bl = self.ball_for(n, limit)
        bl_len = bl.length(n)
        if bl_len is not None and bl_len < h:
            return _witness_bound(n, self.g, bl.witness(n)), None
        if self.can_search_below:
            found = self.search.length_upper(n, h - 1)
            if found is not None:
                return _witness_bound(n, self.g, found[1]), None
        if bl_len == h:
            return None, bl.witness(n)
        if self.can_search_at:
            return None, self.search.representable(n, h)
        return None, None


def compute_lambda(
    g: GeneratorSet,
    h: int,
    caps: SearchCaps | None = None,
    budget: ObstructionBudget = ObstructionBudget(),
    n_max: int = DEFAULT_NMAX,
    overshoot: int = 4,
) -> LambdaResult:
    """Smallest positive integer of length exactly h, with evidence."""
    if h < 1:
        raise ValueError("h must be >= 1")
    caps = caps or default_caps(h)
    sc = _Scanner(g, h, caps, budget, overshoot)
    evidence: list[LengthBound] = []

    def result(value, frontier, last=None):
        ev = tuple(evidence) + ((last,) if last is not None else ())
        ok = all(exclusion_is_unconditional(e, h) for e in evidence)
        if last is not None:
            ok = ok and last.lower_proof.unconditional
        return LambdaResult(g, h, value, frontier, PROVEN if ok else CAP_CONDITIONAL, caps, ev)

    for n in range(1, n_max + 1):
        settled, wit = sc.entry(n, n_max)
        if settled is not None:
            evidence.append(settled)
            continue
        lower, proof = sc.prover.lower(n, h)
        if lower < h and sc.can_search_below:
            lower, proof = h, LowerProof(EXHAUSTIVE, caps=caps)
        if wit is not None:
            if lower < h:
                log.info("no usable lower bound for %d; stopping", n)
                return result(None, n)
            return result(n, n, LengthBound(n, h, proof, h, wit))
        lower, proof = sc.prover.lower(n, h + 1)
        if lower > h:
            evidence.append(LengthBound(n, lower, proof))
            continue
        log.info("%d has no witness with <= %d terms under %s", n, h, caps)
        return result(None, n)
    return result(None, n_max + 1)


def exclusion_table(
    g: GeneratorSet,
    h: int,
    range_max: int,
    caps: SearchCaps | None = None,
    budget: ObstructionBudget = ObstructionBudget(),
    threads: int = 1,
    cache=None,
    overshoot: int = 4,
) -> list[LengthBound]:
    """LengthBound for N = 1..range_max: witnesses of at most h terms where
    they exist, with the lower-bound logic of :func:`compute_lambda`."""
    caps = caps or default_caps(h)
    key = None
    if cache is not None:
        key = cache.key(
            op="exclusion_table", generator_set=g.to_json(), h=h, range_max=range_max, caps=caps.to_json(), overshoot=overshoot
        )
        hit = cache.get_json(key)
        if hit is not None:
            return [LengthBound.from_json(e) for e in hit]
    sc = _Scanner(g, h, caps, budget, overshoot)
    sc.ball_for(range_max, range_max)

    def one(n: int) -> LengthBound:
        settled, wit = sc.entry(n, range_max)
        if settled is not None:
            return settled
        lower, proof = sc.prover.lower(n, h)
        if lower < h and sc.can_search_below:
            lower, proof = h, LowerProof(EXHAUSTIVE, caps=caps)
        if wit is not None:
            return LengthBound(n, min(lower, h), proof, h, wit)
        lower, proof = sc.prover.lower(n, h + 1)
        return LengthBound(n, lower, proof)

    # certificates are fetched lazily; warm them before fanning out
    if h >= 2 and threads > 1:
        sc.prover.certificates(h - 1)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        table = list(pool.map(one, range(1, range_max + 1)))
    if cache is not None:
        cache.put_json(key, [e.to_json() for e in table])
    return table


__all__ = ["LambdaResult", "compute_lambda", "exclusion_table", "default_caps", "excludes", "__version__"]
