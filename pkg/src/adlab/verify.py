"""Independent certificate verification.

Nothing here calls the producer modules: membership, closures, sumsets,
discrete logs and primality are recomputed with separate routines (and
sympy for primality and discrete logarithms), so agreement between
producer and verifier is a real check rather than a tautology.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np
from sympy import isprime
from sympy.ntheory.residue_ntheory import discrete_log, n_order

from . import certio
from .certio import (
    BOUNDED_SEARCH,
    LAMBDA_BUNDLE,
    LOWER_EXHAUSTIVE,
    LOWER_MODULAR,
    TWO_POWER_SCAN,
    UPPER_WITNESS,
    CertificateFile,
)

CONDITIONAL = "CAP_CONDITIONAL"
PROVEN = "PROVEN"
UNCONDITIONAL_KINDS = {"TRIVIAL", "NON_MEMBER", "TWO_TERM_SIEVE", "MODULAR"}
LIST_LIMIT = 10**6
REPLAY_UNIVERSE_LIMIT = 2 * 10**6
REPLAY_PAIR_LIMIT = 10**7


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Verdict:
    checks: list[Check] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merge(self, other: Verdict, prefix: str) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}{c.name}", c.passed, c.detail))


class _Bad(Exception):
    """Malformed field inside a payload that passed the schema check."""


def _int(x, what: str) -> int:
    if not isinstance(x, str):
        raise _Bad(f"{what} is not a decimal string")
    try:
        return int(x)
    except ValueError:
        raise _Bad(f"{what} is not an integer: {x!r}") from None


# -- generator sets, recomputed ------------------------------------------


@dataclass(frozen=True)
class _Gens:
    kind: str
    numbers: tuple[int, ...]

    def member(self, a: int) -> bool:
        if a < 1:
            return False
        if self.kind == "SMOOTH":
            for p in self.numbers:
                while a % p == 0:
                    a //= p
            return a == 1
        return a == 1 or any(_log_exact(a, b) is not None for b in self.numbers)

    def primes(self) -> set[int]:
        if self.kind == "SMOOTH":
            return set(self.numbers)
        out = set()
        for b in self.numbers:
            d, x = 2, b
            while d * d <= x:
                while x % d == 0:
                    out.add(d)
                    x //= d
                d += 1
            if x > 1:
                out.add(x)
        return out


def _gens(obj) -> _Gens:
    if not isinstance(obj, dict) or set(obj) != {"kind", "numbers"}:
        raise _Bad("malformed generator_set")
    kind = obj["kind"]
    nums = tuple(_int(x, "generator number") for x in obj["numbers"])
    if kind not in ("SMOOTH", "POWER_UNION") or not nums:
        raise _Bad(f"bad generator kind or empty set: {kind!r}")
    if list(nums) != sorted(set(nums)):
        raise _Bad("generator numbers must be strictly increasing")
    if kind == "SMOOTH" and not all(isprime(p) for p in nums):
        raise _Bad("SMOOTH numbers must be primes")
    if kind == "POWER_UNION" and nums[0] < 2:
        raise _Bad("bases must be >= 2")
    return _Gens(kind, nums)


def _log_exact(a: int, b: int) -> int | None:
    """k with b**k == a, else None."""
    if a < 1:
        return None
    k, x = 0, 1
    while x < a:
        x *= b
        k += 1
    return k if x == a else None


def _caps(obj, g: _Gens) -> tuple[dict[int, int], int | None]:
    if not isinstance(obj, dict) or set(obj) != {"exponent_cap", "magnitude_cap"}:
        raise _Bad("malformed caps")
    exps = {_int(b, "cap base"): _int(e, "cap exponent") for b, e in obj["exponent_cap"].items()}
    mag = None if obj["magnitude_cap"] is None else _int(obj["magnitude_cap"], "magnitude cap")
    return exps, mag


def _caps_consistent(v: Verdict, exps, mag, g: _Gens) -> bool:
    ok = v.check("caps exponents nonnegative", all(e >= 0 for e in exps.values()))
    ok &= v.check("caps magnitude positive", mag is None or mag >= 1)
    extra = set(exps) - set(g.numbers)
    ok &= v.check("caps name generator numbers", not extra, f"unknown {sorted(extra)}" if extra else "")
    bounded = mag is not None or set(g.numbers) <= set(exps)
    ok &= v.check("caps bound the search", bounded)
    return ok


def _universe(g: _Gens, exps: dict[int, int], mag: int | None) -> set[int]:
    """Generators admitted by the caps, recomputed from scratch."""
    out = {1}
    if g.kind == "POWER_UNION":
        for b in g.numbers:
            x, e = 1, 0
            while (b not in exps or e < exps[b]) and (mag is None or x * b <= mag):
                x *= b
                e += 1
                out.add(x)
        return out
    for p in g.numbers:
        grown = set()
        for a in out:
            x, e = a, 0
            while (p not in exps or e < exps[p]) and (mag is None or x * p <= mag):
                x *= p
                e += 1
                grown.add(x)
            if len(grown) > REPLAY_UNIVERSE_LIMIT:
                raise _Bad("caps too wide to replay")
        out |= grown
    return out


# -- upper witnesses ------------------------------------------------------


def _verify_witness(v: Verdict, p: dict) -> None:
    g = _gens(p["generator_set"])
    target = _int(p["target"], "target")
    length = _int(p["length"], "length")
    values = []
    for i, t in enumerate(p["terms"]):
        if not isinstance(t, dict) or not {"sign", "value"} <= set(t) <= {"sign", "value", "base", "exponent"}:
            raise _Bad(f"malformed term {i}")
        sign, mag = _int(t["sign"], "sign"), _int(t["value"], "term value")
        v.check(f"term {i} sign", sign in (1, -1), str(sign))
        v.check(f"term {i} membership", g.member(mag), f"{mag} not in the generating set")
        if "base" in t or "exponent" in t:
            if "base" not in t or "exponent" not in t:
                raise _Bad(f"term {i} has half a power form")
            b, e = _int(t["base"], "base"), _int(t["exponent"], "exponent")
            v.check(f"term {i} power form", b >= 2 and e >= 0 and b**e == mag, f"{b}^{e} != {mag}")
        values.append(sign * mag)
    total = sum(values)
    v.check("sum mismatch" if total != target else "sum", total == target, f"terms sum to {total}, target {target}")
    v.check("length", length == len(values), f"claimed {length}, {len(values)} terms")
    vs = set(values)
    v.check("no cancelling pair", not any(-x in vs for x in vs))
    v.check("caps irrelevant", True, "explicit witnesses hold without caps")


# -- modular certificates -------------------------------------------------


def _closure(gens: list[int], Q: int) -> set[int]:
    seen, stack = {1 % Q}, [1 % Q]
    while stack:
        x = stack.pop()
        for a in gens:
            y = x * a % Q
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _ball(S, h: int, Q: int) -> np.ndarray:
    """Radius-h signed ball by repeated dilation: cyclic shifts of the
    whole mask when that is cheaper, else shifts of its support."""
    steps = np.array(sorted({s % Q for s in S} | {-s % Q for s in S}), dtype=np.int64)
    mask = np.zeros(Q, dtype=bool)
    mask[0] = True
    for _ in range(h):
        support = np.flatnonzero(mask)
        grown = mask.copy()
        if support.size * 8 >= Q:
            for s in steps:
                grown |= np.roll(mask, int(s))
        else:
            for s in steps:
                grown[(support + s) % Q] = True
        mask = grown
    return mask


def _verify_modular(v: Verdict, p: dict) -> None:
    c = p["certificate"]
    keys = {"generator_set", "n", "q_list", "Q", "closure", "h", "ball_mod", "missing", "missing_count", "ball_digest", "missing_complete"}
    if not isinstance(c, dict) or set(c) != keys:
        raise _Bad("malformed certificate")
    g = _gens(c["generator_set"])
    n, Q, h = _int(c["n"], "n"), _int(c["Q"], "Q"), _int(c["h"], "h")
    qs = [_int(q, "q") for q in c["q_list"]]
    closure = [_int(x, "closure") for x in c["closure"]]
    ball_mod = None if c["ball_mod"] is None else [_int(x, "ball_mod") for x in c["ball_mod"]]
    missing = [_int(x, "missing") for x in c["missing"]]
    count = _int(c["missing_count"], "missing_count")
    complete = c["missing_complete"]
    if not isinstance(complete, bool):
        raise _Bad("missing_complete must be boolean")
    targets = [_int(t, "target") for t in p["targets"]]
    lower = _int(p["lower"], "lower")

    gp = g.primes()
    v.check("n positive", n >= 1)
    v.check("h nonnegative", h >= 0)
    v.check("q_list nonempty and sorted", bool(qs) and qs == sorted(set(qs)))
    for q in qs:
        v.check(f"{q} prime", isprime(q))
        v.check(f"{q} outside generator primes", q not in gp)
        v.check(f"{q}-1 divides n", q >= 2 and n % (q - 1) == 0)
    if not v.check("Q is the product of q_list", Q == prod(qs) and Q >= 2):
        return
    if Q > 1 << 30:
        v.check("Q within the dense limit", False)
        return
    gens = sorted({a % Q for a in g.numbers})
    good = _closure(gens, Q)
    v.check("closure fixpoint", sorted(good) == closure, f"{len(good)} recomputed vs {len(closure)} claimed")
    mask = _ball(good, h, Q)
    ball = np.flatnonzero(mask)
    v.check("ball digest", hashlib.sha256(np.packbits(mask).tobytes()).hexdigest() == c["ball_digest"])
    if ball_mod is None:
        v.check("ball_mod omitted only when large", ball.size > LIST_LIMIT)
    else:
        v.check("ball_mod recomputed", ball.size == len(ball_mod) and ball.tolist() == ball_mod)
    comp = Q - int(ball.size)
    v.check("missing_count", comp == count and count >= 1, f"{comp} recomputed vs {count} claimed")
    for r in missing:
        if not (0 <= r < Q) or mask[r]:
            v.check(f"missing residue {r} is in ball_mod", False)
    v.check("missing residues distinct", len(set(missing)) == len(missing))
    if complete:
        v.check("missing list complete", len(missing) == comp)
    else:
        v.check("missing list sampled only when large", comp > LIST_LIMIT and len(missing) <= comp)
    v.check("lower = h + 1", lower == h + 1, f"claimed {lower}")
    v.check("targets sorted and distinct", targets == sorted(set(targets)))
    for t in targets:
        v.check(f"target {t} in a missing class", not mask[t % Q])


# -- exhaustive records ---------------------------------------------------


def _verify_exhaustive(v: Verdict, p: dict) -> None:
    g = _gens(p["generator_set"])
    exps, mag = _caps(p["caps"], g)
    v.check("marked conditional", p["status"] == CONDITIONAL, p["status"])
    _caps_consistent(v, exps, mag, g)
    if p["record_type"] == TWO_POWER_SCAN:
        u, w = _int(p["u"], "u"), _int(p["v"], "v")
        targets = [_int(t, "target") for t in p["targets"]]
        v.check("targets sorted and distinct", targets == sorted(set(targets)))
        v.check("targets nonempty and positive", bool(targets) and min(targets) >= 1)
        v.check("u, v are generator numbers", {u, w} <= set(g.numbers) and u != w)
        if not v.check("u and v capped", u in exps and w in exps):
            return
        cu, cw = exps[u], exps[w]
        v.check("cases_checked", _int(p["cases_checked"], "cases_checked") == (cu + 1) * (cw + 1))
        want = set(targets)
        found = set()
        powers = [w**y for y in range(cw + 1)]
        for x in range(cu + 1):
            a = u**x
            for y, b in enumerate(powers):
                if a + b in want:
                    found.add((a + b, x, y, "+"))
                if abs(a - b) in want:
                    found.add((abs(a - b), x, y, "-"))
        claimed = set()
        for s in p["solutions"]:
            if not isinstance(s, list) or len(s) != 4:
                raise _Bad("malformed solution")
            claimed.add((_int(s[0], "t"), _int(s[1], "x"), _int(s[2], "y"), s[3]))
        v.check("rescan solutions", found == claimed, f"{len(found)} recomputed vs {len(claimed)} claimed")
        return
    n, lower = _int(p["n"], "n"), _int(p["lower"], "lower")
    v.check("n nonzero", n != 0)
    v.check("lower positive", lower >= 1)
    m = abs(n)
    if lower == 2:
        v.check("replay: not a generator", not g.member(m))
        return
    if lower > 4:
        v.check("replay", True, "not replayed (deep bounded search)")
        return
    if lower <= 1:
        return
    try:
        U = _universe(g, exps, mag)
    except _Bad as exc:
        v.check("replay", True, f"not replayed: {exc}")
        return
    signed = U | {-a for a in U}
    if lower == 3:
        hit = m in U or any(m - a in signed for a in signed)
        v.check("replay: no two-term sum under caps", not hit)
    elif len(signed) ** 2 <= REPLAY_PAIR_LIMIT:
        hit = m in U or any(m - a in signed for a in signed)
        ordered = sorted(signed)
        hit = hit or any(m - a - b in signed for i, a in enumerate(ordered) for b in ordered[i:])
        v.check("replay: no three-term sum under caps", not hit)
    else:
        v.check("replay", True, "not replayed (universe too large for pairs)")


# -- two-term sieve proofs ------------------------------------------------


def _dlog_class(base: int, target: int, M: int) -> tuple[int, int] | None:
    if M == 1:
        return (0, 1)
    order = n_order(base, M)
    try:
        j = discrete_log(M, target % M, base)
    except ValueError:
        return None
    return (j % order, order)


def _required_equations(g: _Gens, m: int):
    """Everything a two-term difference a - b = m (a, b in A) forces.

    ("eq", u, v, c) must have no solution u**x - v**y = c; ("value",
    primes_or_base, x) must not be a generator of the stated shape.
    """
    if g.kind == "POWER_UNION":
        for u in g.numbers:
            yield ("not_power", u, m + 1)  # b = 1
            vu = 0
            while m % u**vu == 0:  # same base
                yield ("not_power", u, m // u**vu + 1)
                vu += 1
            for w in g.numbers:
                if w == u:
                    continue
                if gcd(u, w) != 1:
                    yield ("unsupported", f"{u}, {w}")
                else:
                    yield ("eq", u, w, m)
        return
    ps = g.numbers
    sm = 1
    for p in ps:
        x = m
        while x % p == 0:
            sm *= p
            x //= p
    divs = [d for d in range(1, sm + 1) if sm % d == 0]
    for d in divs:
        c = m // d
        for mask in range(1, 1 << len(ps)):
            s1 = [p for i, p in enumerate(ps) if mask >> i & 1]
            s2 = [p for i, p in enumerate(ps) if not mask >> i & 1]
            if not s2:
                yield ("not_smooth", tuple(s1), c + 1)
            elif len(s1) == 1 and len(s2) == 1:
                yield ("eq", s1[0], s2[0], c)
            else:
                yield ("unsupported", f"{s1} / {s2}")


def _smooth_over(x: int, ps) -> bool:
    for p in ps:
        while x % p == 0:
            x //= p
    return x == 1


def _check_refutation(v: Verdict, r: dict, tag: str) -> bool:
    u, w, c = _int(r["u"], "u"), _int(r["v"], "v"), _int(r["c"], "c")
    xt, yt = _int(r["x_threshold"], "x_threshold"), _int(r["y_threshold"], "y_threshold")
    ok = v.check(f"{tag} thresholds", xt >= 1 and yt >= 1 and xt <= 4096 and yt <= 4096)
    if not ok:
        return False
    for x in range(xt):
        if _log_exact(u**x - c, w) is not None:
            return v.check(f"{tag} small x", False, f"x={x} solves it")
    for y in range(yt):
        if _log_exact(c + w**y, u) is not None:
            return v.check(f"{tag} small y", False, f"y={y} solves it")
    q = min(_prime_factors(w))
    f = _valuation(w, q)
    p = min(_prime_factors(u))
    e = _valuation(u, p)
    xc = _dlog_class(u, c, q ** (f * yt))
    yc = _dlog_class(w, -c, p ** (e * xt))
    claim_x = None if r["x_class"] is None else tuple(_int(t, "x_class") for t in r["x_class"])
    claim_y = None if r["y_class"] is None else tuple(_int(t, "y_class") for t in r["y_class"])
    ok &= v.check(f"{tag} x class", xc == claim_x, f"recomputed {xc}")
    ok &= v.check(f"{tag} y class", yc == claim_y, f"recomputed {yc}")
    if xc is None or yc is None:
        ok &= v.check(f"{tag} no killer needed", r["killer"] is None)
        return ok
    if r["killer"] is None:
        return v.check(f"{tag} killer present", False)
    k = _int(r["killer"], "killer")
    if not v.check(f"{tag} killer prime", isprime(k) and (u * w) % k != 0):
        return False
    us = {pow(u, xc[0] + i * xc[1], k) for i in range(n_order(u, k))}
    ws = {pow(w, yc[0] + i * yc[1], k) for i in range(n_order(w, k))}
    return v.check(f"{tag} killer {k}", all((a - c) % k not in ws for a in us))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _valuation(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def verify_two_term(v: Verdict, proof: dict, g: _Gens, n: int) -> bool:
    """Replay a TWO_TERM_SIEVE proof that n has length >= 3."""
    if not isinstance(proof, dict) or set(proof) != {"generator_set", "n", "refutations"}:
        raise _Bad("malformed two-term proof")
    before = len(v.failures())
    v.check("sieve generator set", _gens(proof["generator_set"]) == g)
    v.check("sieve target", _int(proof["n"], "n") == n)
    m = abs(n)
    v.check("sieve: not a generator", m >= 1 and not g.member(m))
    small = [a for a in range(1, m) if g.member(a)]
    v.check("sieve: not a sum of two generators", not any(g.member(m - a) for a in small))
    refs = {}
    for i, r in enumerate(proof["refutations"]):
        if not isinstance(r, dict):
            raise _Bad("malformed refutation")
        key = (_int(r["u"], "u"), _int(r["v"], "v"), _int(r["c"], "c"))
        refs.setdefault(key, r)
    needed = set()
    for item in _required_equations(g, m):
        if item[0] == "unsupported":
            v.check("sieve: shape supported", False, item[1])
        elif item[0] == "not_power":
            v.check(f"sieve: {item[2]} not a power of {item[1]}", _log_exact(item[2], item[1]) is None)
        elif item[0] == "not_smooth":
            v.check(f"sieve: {item[2]} not smooth", not _smooth_over(item[2], item[1]))
        else:
            needed.add(item[1:])
    for key in sorted(needed):
        if key not in refs:
            v.check(f"sieve: equation {key} refuted", False, "no refutation supplied")
        else:
            _check_refutation(v, refs[key], f"sieve {key[0]}^x-{key[1]}^y={key[2]}")
    return len(v.failures()) == before


# -- lambda bundles -------------------------------------------------------


def _verify_bundle(v: Verdict, p: dict) -> None:
    g = _gens(p["generator_set"])
    h = _int(p["h"], "h")
    value = None if p["value"] is None else _int(p["value"], "value")
    lb = _int(p["lower_bound"], "lower_bound")
    status = p["status"]
    v.check("h positive", h >= 1)
    v.check("status known", status in (PROVEN, CONDITIONAL), status)
    _caps_consistent(v, *_caps(p["caps"], g), g)
    if value is not None:
        v.check("lower_bound equals value", lb == value)
    subs: dict[str, CertificateFile] = {}
    for cid, raw in p["certificates"].items():
        cf = certio.from_json(raw)
        v.check(f"certificate {cid} id", cf.cert_id == cid)
        sub = verify(cf)
        v.check(f"certificate {cid} verifies", sub.valid, "; ".join(f"{c.name}: {c.detail}" for c in sub.failures()))
        subs[cid] = cf
    used = set()

    def ref(cid, kind: str) -> dict | None:
        if cid not in subs:
            v.check(f"reference {cid} resolves", False)
            return None
        used.add(cid)
        cf = subs[cid]
        if not v.check(f"reference {cid} kind", cf.kind == kind, cf.kind):
            return None
        if not v.check(f"reference {cid} generator set", _gens(cf.payload["generator_set"] if kind != LOWER_MODULAR else cf.payload["certificate"]["generator_set"]) == g):
            return None
        return cf.payload

    ns = []
    all_unconditional = True
    candidate = None
    for e in p["entries"]:
        if not isinstance(e, dict) or set(e) != {"n", "lower", "lower_kind", "lower_ref", "two_term", "upper", "upper_ref"}:
            raise _Bad("malformed entry")
        n, lower = _int(e["n"], "n"), _int(e["lower"], "lower")
        upper = None if e["upper"] is None else _int(e["upper"], "upper")
        ns.append(n)
        tag = f"entry {n}"
        if upper is not None:
            w = ref(e["upper_ref"], UPPER_WITNESS)
            if w is not None:
                v.check(f"{tag} witness target", _int(w["target"], "target") == n)
                v.check(f"{tag} witness length", _int(w["length"], "length") == upper)
            v.check(f"{tag} lower <= upper", lower <= upper)
        else:
            v.check(f"{tag} no dangling witness", e["upper_ref"] is None)
        kind = e["lower_kind"]
        if kind == "TRIVIAL":
            v.check(f"{tag} trivial lower", n != 0 and lower <= 1)
        elif kind == "NON_MEMBER":
            v.check(f"{tag} non-member lower", lower <= 2 and not g.member(abs(n)))
        elif kind == "TWO_TERM_SIEVE":
            v.check(f"{tag} sieve lower", lower <= 3 and e["two_term"] is not None)
            if e["two_term"] is not None:
                verify_two_term(v, e["two_term"], g, n)
        elif kind == "MODULAR":
            mp = ref(e["lower_ref"], LOWER_MODULAR)
            if mp is not None:
                v.check(f"{tag} listed as a target", str(n) in mp["targets"])
                v.check(f"{tag} modular lower", lower <= _int(mp["lower"], "lower"))
        elif kind == "EXHAUSTIVE":
            ep = ref(e["lower_ref"], LOWER_EXHAUSTIVE)
            if ep is not None:
                v.check(f"{tag} bounded search record", ep.get("record_type") == BOUNDED_SEARCH)
                v.check(f"{tag} record target", ep.get("n") == str(n) and ep.get("lower") == str(lower))
                v.check(f"{tag} record caps", ep.get("caps") == p["caps"])
        else:
            v.check(f"{tag} lower kind", False, kind)
        if kind not in ("MODULAR", "EXHAUSTIVE"):
            v.check(f"{tag} no stray lower ref", e["lower_ref"] is None)
        if kind != "TWO_TERM_SIEVE":
            v.check(f"{tag} no stray sieve proof", e["two_term"] is None)
        if value is not None and n == value:
            candidate = (lower, upper, kind)
            continue
        excluded_by_upper = upper is not None and upper < h
        excluded_by_lower = lower > h
        v.check(f"{tag} excludes length {h}", excluded_by_upper or excluded_by_lower)
        if not excluded_by_upper and kind not in UNCONDITIONAL_KINDS:
            all_unconditional = False
    last = value if value is not None else lb - 1
    v.check("evidence complete", ns == list(range(1, last + 1)), f"{len(ns)} entries for 1..{last}")
    if value is not None:
        ok = candidate is not None and candidate[0] == h and candidate[1] == h
        v.check("candidate has length exactly h", ok, str(candidate))
        if candidate is not None and candidate[2] not in UNCONDITIONAL_KINDS:
            all_unconditional = False
    v.check("status matches evidence", status == (PROVEN if all_unconditional else CONDITIONAL), f"claimed {status}")
    unused = set(subs) - used
    v.check("no unreferenced certificates", not unused, ", ".join(sorted(unused)))


# -- entry points ----------------------------------------------------------


def verify(cf: CertificateFile) -> Verdict:
    v = Verdict()
    v.check("schema_version", cf.schema_version == certio.SCHEMA_VERSION)
    v.check("digest", cf.digest_ok)
    v.check("tool_version format", bool(cf.tool_version) and all(part.isdigit() for part in cf.tool_version.split(".")))
    v.check("created format", _iso(cf.created))
    try:
        if cf.kind == UPPER_WITNESS:
            _verify_witness(v, cf.payload)
        elif cf.kind == LOWER_MODULAR:
            _verify_modular(v, cf.payload)
        elif cf.kind == LOWER_EXHAUSTIVE:
            _verify_exhaustive(v, cf.payload)
        elif cf.kind == LAMBDA_BUNDLE:
            _verify_bundle(v, cf.payload)
        else:
            v.check("known kind", False, cf.kind)
    except _Bad as exc:
        v.check("well-formed payload", False, str(exc))
    except certio.ParseError as exc:
        v.check("well-formed sub-certificate", False, str(exc))
    return v


def _iso(s: str) -> bool:
    from datetime import datetime

    try:
        datetime.fromisoformat(s)
    except ValueError:
        return False
    return True


def verify_bytes(data: bytes | str) -> Verdict:
    """Parse then verify; parse problems raise ParseError/SchemaMismatchError."""
    return verify(certio.loads(data))


def verify_path(path) -> Verdict:
    return verify(certio.read(path))
