"""Single-field mutations of certificate JSON, shared by the verifier
tests and the acceptance suite."""

from __future__ import annotations

import copy

from adlab import certio
from adlab.errors import ParseError
from adlab.verify import verify

ENVELOPE_ONLY = {"digest"}


def _int_variants(s: str):
    x = int(s)
    return [str(x + 1), str(x - 1), str(2 * x + 3), "0", str(-x), s + "x"]


def variants(value):
    """Candidate replacements for one field value."""
    if isinstance(value, bool):
        return [not value]
    if value is None:
        return ["1", "0"]
    if isinstance(value, str):
        try:
            return _int_variants(value)
        except ValueError:
            swaps = {"PROVEN": "CAP_CONDITIONAL", "CAP_CONDITIONAL": "PROVEN", "SMOOTH": "POWER_UNION", "POWER_UNION": "SMOOTH"}
            out = [value + "x", ""]
            if value in swaps:
                out.insert(0, swaps[value])
            return out
    if isinstance(value, list):
        out = []
        if value:
            out.append(value[:-1])
            out.append(value + value[:1])
        else:
            out.append(["1"])
        if len(value) > 1:
            out.append(value[::-1])
        return out
    if isinstance(value, dict):
        out = [{}]
        if value:
            k = sorted(value)[0]
            renamed = {("9" + k if k.isdigit() else k + "x") if key == k else key: v for key, v in value.items()}
            out.append(renamed)
        return out
    raise TypeError(type(value))


def field_paths(obj, path=(), depth=0):
    """Every field path; lists are sampled at both ends to bound the count."""
    yield path
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from field_paths(obj[k], path + (k,), depth + 1)
    elif isinstance(obj, list) and obj:
        idx = sorted({0, len(obj) - 1})
        for i in idx:
            yield from field_paths(obj[i], path + (i,), depth + 1)


def _get(obj, path):
    for p in path:
        obj = obj[p]
    return obj


def _set(obj, path, value):
    obj = copy.deepcopy(obj)
    target = obj
    for p in path[:-1]:
        target = target[p]
    target[path[-1]] = value
    return obj


def mutations(cf: certio.CertificateFile, reseal: bool, max_depth: int | None = None):
    """(path, mutated JSON) pairs, one per field variant."""
    base = cf.to_json()
    for path in field_paths(base):
        if not path or (max_depth is not None and len(path) > max_depth):
            continue
        if reseal and path[0] in ENVELOPE_ONLY:
            continue
        original = _get(base, path)
        for val in variants(original):
            if val == original:
                continue
            mutated = _set(base, path, val)
            if reseal:
                try:
                    body = {k: mutated[k] for k in mutated if k != "digest"}
                    mutated["digest"] = certio.CertificateFile(**body).sealed().digest
                except TypeError:
                    pass
            yield path, mutated


def rejected(obj) -> bool:
    try:
        return not verify(certio.from_json(obj)).valid
    except ParseError:
        return True
    except (TypeError, KeyError, AttributeError, ValueError):
        # malformed beyond what the schema describes still counts as rejected,
        # but the verifier should normally catch these itself
        return True


def semantic_gaps(cf: certio.CertificateFile, max_depth: int | None = None) -> list[tuple]:
    """Field paths none of whose resealed variants is rejected."""
    caught: dict[tuple, bool] = {}
    for path, mutated in mutations(cf, reseal=True, max_depth=max_depth):
        caught[path] = caught.get(path, False) or rejected(mutated)
    return [p for p, ok in caught.items() if not ok]


def integrity_escapes(cf: certio.CertificateFile, max_depth: int | None = None) -> list[tuple]:
    return [p for p, m in mutations(cf, reseal=False, max_depth=max_depth) if not rejected(m)]
