"""Command line interface: ``adlab <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 budget exhausted (a search stopped before settling the question).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

from . import __version__, certio
from .bounds import CAP_CONDITIONAL, PROVEN, LengthBound, length_bound, two_power_scan
from .cache import Cache
from .engine import SearchCaps, ball
from .errors import AdlabError, ParseError
from .generators import parse_generator_args
from .lambdas import compute_lambda, default_caps
from .sieve import ObstructionBudget, delta, delta_search, search_obstruction
from .twoterm import prove_length_at_least_three
from .verify import verify

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
ROW_COLUMNS = ("n", "lower", "upper", "status", "witness")

log = logging.getLogger("adlab")


class UsageError(Exception):
    pass


def _parse_caps(args, fallback: SearchCaps) -> SearchCaps:
    exps: dict[int, int] = {}
    magnitude = None
    if args.caps:
        for item in args.caps.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise UsageError(f"bad --caps item {item!r}; expected BASE=EXP or mag=N")
            if key == "mag":
                magnitude = int(val)
            else:
                exps[int(key)] = int(val)
    if args.cap2 is not None:
        exps[2] = args.cap2
    if args.cap3 is not None:
        exps[3] = args.cap3
    if not exps and magnitude is None:
        return fallback
    return SearchCaps.make(exps, magnitude)


def bound_row(b: LengthBound) -> dict:
    return {
        "n": str(b.n),
        "lower": str(b.lower),
        "upper": "" if b.upper is None else str(b.upper),
        "status": b.status,
        "witness": "" if b.witness is None else str(b.witness),
    }


def _emit(args, obj, rows=None, columns=ROW_COLUMNS) -> None:
    """The JSON object by default; with --csv only the rows."""
    if args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows if rows is not None else [obj]:
            w.writerow({k: r.get(k, "") for k in columns})
    else:
        json.dump(obj, sys.stdout, sort_keys=True, indent=1)
        sys.stdout.write("\n")


def _cache(args) -> Cache | None:
    return Cache(args.cache_dir) if args.cache_dir else None


# -- commands --------------------------------------------------------------


def cmd_length(args, g) -> int:
    hmax = args.hmax if args.hmax is not None else 3
    caps = _parse_caps(args, default_caps(hmax))
    b = length_bound(args.N, g, hmax, caps)
    row = bound_row(b)
    _emit(args, {**row, "generator_set": g.describe(), "caps": caps.to_json(), "lower_proof": b.lower_proof.kind}, [row])
    return EXIT_OK if b.upper is not None else EXIT_BUDGET


def _ball_rows(args, g, only: int | None) -> list[dict]:
    """Rows for the ball (or one sphere) over the window.

    Lengths 0, 1 and 2 are exact: membership in +-A below the window is
    decided by the first layer. Longer lengths are upper bounds exact only
    relative to the working-magnitude truncation, so their lower bound is 2
    unless the two-term sieve (``--prove``) certifies 3.
    """
    caps = _parse_caps(args, SearchCaps())
    cache = _cache(args)
    key = None
    if cache is not None:
        key = cache.key(
            op="ball", generator_set=g.to_json(), h=args.h, window=args.window, caps=caps.to_json(),
            only=only, prove=args.prove, witnesses=not args.no_witness,
        )
        hit = cache.get_json(key)
        if hit is not None:
            return hit
    bl = ball(args.h, args.window, g, caps)
    rows = []
    for n, d in bl.entries():
        if only is not None and d != only:
            continue
        lower = min(d, 2)
        if d >= 3 and args.prove and prove_length_at_least_three(g, n) is not None:
            lower = 3
        rows.append(
            {
                "n": str(n),
                "lower": str(lower),
                "upper": str(d),
                "status": PROVEN if lower == d else CAP_CONDITIONAL,
                "witness": "" if args.no_witness else str(bl.witness(n)),
            }
        )
    if cache is not None:
        cache.put_json(key, rows)
    return rows


def cmd_ball(args, g) -> int:
    rows = _ball_rows(args, g, None)
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["upper"]] = counts.get(r["upper"], 0) + 1
    _emit(args, {"generator_set": g.describe(), "h": args.h, "window": args.window, "counts": counts, "rows": rows}, rows)
    return EXIT_OK


def cmd_sphere(args, g) -> int:
    rows = _ball_rows(args, g, args.h)
    _emit(args, {"generator_set": g.describe(), "h": args.h, "window": args.window, "count": len(rows), "rows": rows}, rows)
    return EXIT_OK


def _budget(args) -> ObstructionBudget:
    kw = {}
    if getattr(args, "max_n", None) is not None:
        kw["max_n"] = args.max_n
    if getattr(args, "max_seconds", None) is not None:
        kw["max_seconds"] = args.max_seconds
    return ObstructionBudget(**kw)


def cmd_lambda(args, g) -> int:
    caps = _parse_caps(args, default_caps(args.h))
    res = compute_lambda(g, args.h, caps, _budget(args), n_max=args.nmax)
    rows = [bound_row(e) for e in res.evidence]
    obj = {
        "generator_set": g.describe(),
        "h": args.h,
        "value": res.value,
        "lower_bound": res.lower_bound,
        "status": res.status,
        "caps": caps.to_json(),
        "evidence_count": len(rows),
    }
    if args.emit_evidence:
        index = certio.emit_evidence(certio.lambda_bundle(res), args.emit_evidence)
        obj["evidence_index"] = str(index)
    _emit(args, obj, rows)
    return EXIT_OK if res.resolved else EXIT_BUDGET


def cmd_delta(args, g) -> int:
    rep = delta(args.N)
    row = {"n": str(rep.n), "delta": str(rep.delta), "primes": " ".join(map(str, rep.primes))}
    _emit(args, {"n": rep.n, "delta": rep.delta, "primes": list(rep.primes)}, [row], ("n", "delta", "primes"))
    return EXIT_OK


def cmd_delta_search(args, g) -> int:
    table = delta_search(args.max_n)[: args.top]
    rows = [{"n": str(n), "delta": str(d), "ratio": f"{r:.6f}"} for n, d, r in table]
    _emit(args, {"max_n": args.max_n, "rows": rows}, rows, ("n", "delta", "ratio"))
    return EXIT_OK


def cmd_obstruct(args, g) -> int:
    cert, diag = search_obstruction(g, args.h, _budget(args))
    if cert is None:
        _emit(args, {"certificate": None, "candidates_tried": diag.candidates_tried, "notes": diag.notes})
        return EXIT_BUDGET
    cf = certio.modular_file(cert)
    if args.out:
        certio.write(cf, args.out)
    summary = {
        "n": str(cert.n),
        "q_list": " ".join(map(str, cert.q_list)),
        "Q": str(cert.Q),
        "closure_size": str(len(cert.closure)),
        "missing_count": str(cert.missing_count),
    }
    if args.csv:
        _emit(args, summary, [summary], tuple(summary))
    else:
        _emit(args, cf.to_json() if not args.out else {**summary, "file": args.out})
    return EXIT_OK


def cmd_two_power_scan(args, g) -> int:
    caps = _parse_caps(args, default_caps(3))
    rec = two_power_scan([int(t) for t in args.targets.split(",")], args.u, args.v, caps, g)
    cf = certio.scan_file(rec)
    if args.out:
        certio.write(cf, args.out)
    _emit(args, cf.to_json())
    return EXIT_OK


def cmd_verify(args, g) -> int:
    rc = EXIT_OK
    results = []
    for path in args.files:
        try:
            v = verify(certio.read(path))
        except ParseError as exc:
            results.append({"file": path, "valid": False, "error": str(exc)})
            rc = EXIT_INVALID
            continue
        fails = [f"{c.name}: {c.detail}" if c.detail else c.name for c in v.failures()]
        results.append({"file": path, "valid": v.valid, "checks": len(v.checks), "failures": fails})
        if not v.valid:
            rc = EXIT_INVALID
    rows = [{"file": r["file"], "valid": str(r["valid"]).lower(), "failures": "; ".join(r.get("failures", [r.get("error", "")]))} for r in results]
    _emit(args, {"results": results}, rows, ("file", "valid", "failures"))
    return rc


def cmd_cache(args, g) -> int:
    removed = Cache(args.cache_dir).gc()
    _emit(args, {"removed": [str(p) for p in removed]}, [{"removed": str(len(removed))}], ("removed",))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    gen = common.add_mutually_exclusive_group()
    gen.add_argument("--primes", help="smooth set over these primes, e.g. 2,3 (default)")
    gen.add_argument("--bases", help="union of the power sets of these bases, e.g. 2,3")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--cache-dir", help="local result cache directory")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="reserved; affects nothing")
    common.add_argument("--cap2", type=int, help="exponent cap for 2")
    common.add_argument("--cap3", type=int, help="exponent cap for 3")
    common.add_argument("--caps", help="caps as BASE=EXP,...[,mag=N]")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="adlab", description="Word lengths over smooth numbers and power unions.")
    p.add_argument("--version", action="version", version=f"adlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("length", parents=[common], help="bounds on the word length of N")
    s.add_argument("N", type=int)
    s.add_argument("--hmax", type=int)
    s.set_defaults(func=cmd_length)

    for name, func, doc in (("ball", cmd_ball, "radius-h ball in a window"), ("sphere", cmd_sphere, "the sphere of radius h in a window")):
        s = sub.add_parser(name, parents=[common], help=doc)
        s.add_argument("--h", type=int, required=True)
        s.add_argument("--window", type=int, required=True)
        s.add_argument("--prove", action="store_true", help="run the two-term sieve on length-3 entries")
        s.add_argument("--no-witness", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("lambda", parents=[common], help="smallest positive integer of length h")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--nmax", type=int, default=10**6)
    s.add_argument("--emit-evidence", metavar="DIR")
    s.add_argument("--max-n", type=int, help="obstruction candidate bound")
    s.add_argument("--max-seconds", type=float, help="obstruction search time budget")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("delta", parents=[common], help="primes p with (p-1) | N")
    s.add_argument("N", type=int)
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("delta-search", parents=[common], help="rank n by delta(n)/log n")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--top", type=int, default=20)
    s.set_defaults(func=cmd_delta_search)

    s = sub.add_parser("obstruct", parents=[common], help="search a modular obstruction certificate")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--max-n", type=int)
    s.add_argument("--max-seconds", type=float)
    s.add_argument("--out", help="write the certificate file here")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("two-power-scan", parents=[common], help="all |u^x +- v^y| hitting targets under caps")
    s.add_argument("--targets", required=True)
    s.add_argument("--u", type=int, default=2)
    s.add_argument("--v", type=int, default=3)
    s.add_argument("--out")
    s.set_defaults(func=cmd_two_power_scan)

    s = sub.add_parser("verify", parents=[common], help="verify certificate files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cache", parents=[common], help="cache maintenance")
    s.add_argument("action", choices=["gc"])
    s.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        g = parse_generator_args(args.primes, args.bases)
        return args.func(args, g)
    except (UsageError, AdlabError, ValueError) as exc:
        print(f"adlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
