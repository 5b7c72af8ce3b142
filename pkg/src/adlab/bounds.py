"""Per-integer length bounds and the exhaustive two-power scan.

A :class:`LengthBound` pairs an upper bound (always an explicit,
unconditional witness) with a lower bound whose strength is recorded in
its proof kind. Only cap-free proofs can make a bound PROVEN.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Representation, SearchCaps, Term, _check_target, ball, searcher
from .errors import SearchBudgetError
from .generators import GeneratorSet, contains
from .sieve import ObstructionCertificate, certify_lower
from .twoterm import TwoTermProof, prove_length_at_least_three

TRIVIAL = "TRIVIAL"  # n != 0  =>  length >= 1
NON_MEMBER = "NON_MEMBER"  # |n| not a generator  =>  length >= 2
TWO_TERM_SIEVE = "TWO_TERM_SIEVE"  # exponent sieve  =>  length >= 3
MODULAR = "MODULAR"  # obstruction certificate  =>  length >= h + 1
EXHAUSTIVE = "EXHAUSTIVE"  # bounded search, valid only under caps

UNCONDITIONAL = frozenset({TRIVIAL, NON_MEMBER, TWO_TERM_SIEVE, MODULAR})

PROVEN = "PROVEN"
CAP_CONDITIONAL = "CAP_CONDITIONAL"


@dataclass(frozen=True)
class LowerProof:
    kind: str
    certificate: ObstructionCertificate | None = None
    two_term: TwoTermProof | None = None
    caps: SearchCaps | None = None

    @property
    def unconditional(self) -> bool:
        return self.kind in UNCONDITIONAL

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.two_term is not None:
            out["two_term"] = self.two_term.to_json()
        if self.caps is not None:
            out["caps"] = self.caps.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> LowerProof:
        return cls(
            obj["kind"],
            ObstructionCertificate.from_json(obj["certificate"]) if "certificate" in obj else None,
            TwoTermProof.from_json(obj["two_term"]) if "two_term" in obj else None,
            SearchCaps.from_json(obj["caps"]) if "caps" in obj else None,
        )


@dataclass(frozen=True)
class LengthBound:
    n: int
    lower: int
    lower_proof: LowerProof
    upper: int | None = None
    witness: Representation | None = None

    def __post_init__(self):
        if (self.upper is None) != (self.witness is None):
            raise ValueError("witness present iff upper present")
        if self.witness is not None and self.witness.length != self.upper:
            raise ValueError("witness length must equal upper")
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} > upper {self.upper} for {self.n}")

    @property
    def status(self) -> str:
        if self.upper is not None and self.lower == self.upper and self.lower_proof.unconditional:
            return PROVEN
        return CAP_CONDITIONAL

    @property
    def exact(self) -> int | None:
        return self.upper if self.upper == self.lower else None

    def to_json(self) -> dict:
        return {
            "n": str(self.n),
            "lower": str(self.lower),
            "lower_proof": self.lower_proof.to_json(),
            "upper": None if self.upper is None else str(self.upper),
            "witness": None if self.witness is None else [t.to_json() for t in self.witness.terms],
            "status": self.status,
        }

    @classmethod
    def from_json(cls, obj: dict) -> LengthBound:
        n = int(obj["n"])
        witness = None
        if obj["witness"] is not None:
            witness = Representation(n, tuple(Term.from_json(t) for t in obj["witness"]))
        return cls(
            n,
            int(obj["lower"]),
            LowerProof.from_json(obj["lower_proof"]),
            None if obj["upper"] is None else int(obj["upper"]),
            witness,
        )


def unconditional_lower(
    n: int,
    g: GeneratorSet,
    certificates=(),
    at_least: int | None = None,
) -> tuple[int, LowerProof]:
    """Best cap-free lower bound we can certify for n.

    The two-term sieve only runs when ``at_least`` asks for 3 or more.
    """
    if n == 0:
        return 0, LowerProof(TRIVIAL)
    best = (1, LowerProof(TRIVIAL))
    if not contains(g, n, symmetric=True):
        best = (2, LowerProof(NON_MEMBER))
        if at_least is not None and at_least >= 3:
            proof = prove_length_at_least_three(g, n)
            if proof is not None:
                best = (3, LowerProof(TWO_TERM_SIEVE, two_term=proof))
    for cert in certificates:
        if cert.generator_set != g:
            continue
        lb = certify_lower(n, cert)
        if lb is not None and lb > best[0]:
            best = (lb, LowerProof(MODULAR, certificate=cert))
    return best


BALL_FALLBACK_LIMIT = 10**6


def length_bound(
    n: int,
    g: GeneratorSet,
    h_max: int,
    caps: SearchCaps,
    certificates=(),
) -> LengthBound:
    """Upper bound by search within caps, lower bound by the strongest proof.

    Levels too expensive for the meet-in-the-middle search are skipped; a
    truncated ball then supplies a witness for small |n|, and the lower
    bound only claims EXHAUSTIVE over the levels actually searched.
    """
    if n == 0:
        return LengthBound(0, 0, LowerProof(TRIVIAL), 0, Representation(0, ()))
    _check_target(n, caps)
    search = searcher(g, caps)
    found, searched = None, -1
    for h in range(h_max + 1):
        try:
            rep = search.representable(n, h)
        except SearchBudgetError:
            break
        searched = h
        if rep is not None:
            found = (h, rep)
            break
    if found is None and searched < h_max and abs(n) <= BALL_FALLBACK_LIMIT:
        bl = ball(h_max, abs(n), g, SearchCaps())
        if bl.length(n) is not None:
            found = (bl.length(n), bl.witness(n))
    upper = None if found is None else found[0]
    lower, proof = unconditional_lower(n, g, certificates, at_least=upper or h_max + 1)
    floor = searched + 1  # no witness with <= searched terms under caps
    if upper is not None:
        if lower < upper and floor >= upper:
            lower, proof = upper, LowerProof(EXHAUSTIVE, caps=caps)
        return LengthBound(n, lower, proof, upper, found[1])
    if lower < floor:
        lower, proof = floor, LowerProof(EXHAUSTIVE, caps=caps)
    return LengthBound(n, lower, proof)


def metric_distance(
    x: int, y: int, g: GeneratorSet, h_max: int, caps: SearchCaps, certificates=()
) -> LengthBound:
    """Word distance d(x, y) = length of y - x."""
    return length_bound(y - x, g, h_max, caps, certificates)


@dataclass(frozen=True)
class ExhaustiveRecord:
    """Result of scanning all ``|u**x +- v**y|`` with x, y under caps."""

    generator_set: GeneratorSet
    targets: tuple[int, ...]
    u: int
    v: int
    caps: SearchCaps
    solutions: tuple[tuple[int, int, int, str], ...]
    cases_checked: int
    status: str = CAP_CONDITIONAL

    def to_json(self) -> dict:
        return {
            "generator_set": self.generator_set.to_json(),
            "targets": [str(t) for t in self.targets],
            "u": str(self.u),
            "v": str(self.v),
            "caps": self.caps.to_json(),
            "solutions": [[str(t), str(x), str(y), s] for t, x, y, s in self.solutions],
            "cases_checked": str(self.cases_checked),
            "status": self.status,
        }

    @classmethod
    def from_json(cls, obj: dict) -> ExhaustiveRecord:
        return cls(
            GeneratorSet.from_json(obj["generator_set"]),
            tuple(int(t) for t in obj["targets"]),
            int(obj["u"]),
            int(obj["v"]),
            SearchCaps.from_json(obj["caps"]),
            tuple((int(t), int(x), int(y), s) for t, x, y, s in obj["solutions"]),
            int(obj["cases_checked"]),
            obj["status"],
        )


def two_power_scan(targets, u: int, v: int, caps: SearchCaps, g: GeneratorSet | None = None) -> ExhaustiveRecord:
    """Every solution of ``t = |u**x + s*v**y|`` (s = +-1) with x, y capped."""
    xu, yv = caps.cap_for(u), caps.cap_for(v)
    if xu is None or yv is None:
        raise ValueError(f"{caps} must cap both {u} and {v}")
    want = set(targets)
    sols = []
    pv = [v**y for y in range(yv + 1)]
    a = 1
    for x in range(xu + 1):
        for y, b in enumerate(pv):
            if a + b in want:
                sols.append((a + b, x, y, "+"))
            if abs(a - b) in want:
                sols.append((abs(a - b), x, y, "-"))
        a *= u
    return ExhaustiveRecord(
        g or GeneratorSet.power_union([u, v]),
        tuple(sorted(want)),
        u,
        v,
        caps,
        tuple(sorted(sols)),
        (xu + 1) * (yv + 1),
    )
