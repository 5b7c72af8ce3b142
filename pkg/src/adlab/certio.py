"""Certificate files: a versioned envelope around the domain records.

Every file is canonical JSON (sorted keys, compact separators, integers
as decimal strings) and carries a sha256 ``digest`` of its other fields,
so any byte-level tampering with envelope metadata is detectable.
Payload semantics are checked separately by :mod:`adlab.verify`.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import ParseError, SchemaMismatchError

SCHEMA_VERSION = "1"

UPPER_WITNESS = "UPPER_WITNESS"
LOWER_MODULAR = "LOWER_MODULAR"
LOWER_EXHAUSTIVE = "LOWER_EXHAUSTIVE"
LAMBDA_BUNDLE = "LAMBDA_BUNDLE"
KINDS = (UPPER_WITNESS, LOWER_MODULAR, LOWER_EXHAUSTIVE, LAMBDA_BUNDLE)

# LOWER_EXHAUSTIVE payload flavours
TWO_POWER_SCAN = "two_power_scan"
BOUNDED_SEARCH = "bounded_search"

ENVELOPE_KEYS = ("schema_version", "kind", "payload", "created", "tool_version", "digest")

# required payload keys per kind (types checked loosely: str/list/dict/None)
_PAYLOAD_KEYS = {
    UPPER_WITNESS: {"generator_set": dict, "target": str, "terms": list, "length": str},
    LOWER_MODULAR: {"certificate": dict, "targets": list, "lower": str},
    LAMBDA_BUNDLE: {
        "generator_set": dict,
        "h": str,
        "value": (str, type(None)),
        "lower_bound": str,
        "status": str,
        "caps": dict,
        "entries": list,
        "certificates": dict,
    },
}
_EXHAUSTIVE_KEYS = {
    TWO_POWER_SCAN: {
        "record_type": str,
        "generator_set": dict,
        "targets": list,
        "u": str,
        "v": str,
        "caps": dict,
        "solutions": list,
        "cases_checked": str,
        "status": str,
    },
    BOUNDED_SEARCH: {
        "record_type": str,
        "generator_set": dict,
        "n": str,
        "lower": str,
        "caps": dict,
        "status": str,
    },
}


def canonical_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def _digest(body: dict) -> str:
    return hashlib.sha256(canonical_bytes(body)).hexdigest()


@dataclass(frozen=True)
class CertificateFile:
    schema_version: str
    kind: str
    payload: dict
    created: str
    tool_version: str
    digest: str = ""

    def body(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "payload": self.payload,
            "created": self.created,
            "tool_version": self.tool_version,
        }

    def sealed(self) -> CertificateFile:
        """Copy with ``digest`` recomputed from the other fields."""
        return replace(self, digest=_digest(self.body()))

    @property
    def digest_ok(self) -> bool:
        return self.digest == _digest(self.body())

    @property
    def cert_id(self) -> str:
        return hashlib.sha256(dumps(self)).hexdigest()[:16]

    def to_json(self) -> dict:
        """A fresh JSON tree; callers may mutate it freely."""
        return copy.deepcopy({**self.body(), "digest": self.digest})


def make_file(kind: str, payload: dict, created: str | None = None) -> CertificateFile:
    if kind not in KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    if created is None:
        created = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    return CertificateFile(SCHEMA_VERSION, kind, payload, created, __version__).sealed()


def dumps(cf: CertificateFile) -> bytes:
    return canonical_bytes(cf.to_json())


def _check_keys(obj, spec: dict, path: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaMismatchError("expected an object", path)
    for key, typ in spec.items():
        if key not in obj:
            raise SchemaMismatchError(f"missing key {key!r}", path)
        if not isinstance(obj[key], typ):
            raise SchemaMismatchError(f"wrong type for {key!r}", f"{path}.{key}")
    extra = set(obj) - set(spec)
    if extra:
        raise SchemaMismatchError(f"unexpected keys {sorted(extra)}", path)


def from_json(obj, path: str = "$") -> CertificateFile:
    if not isinstance(obj, dict):
        raise SchemaMismatchError("certificate must be a JSON object", path)
    missing = [k for k in ENVELOPE_KEYS if k not in obj]
    if missing:
        raise SchemaMismatchError(f"missing envelope keys {missing}", path)
    extra = set(obj) - set(ENVELOPE_KEYS)
    if extra:
        raise SchemaMismatchError(f"unexpected keys {sorted(extra)}", path)
    if obj["schema_version"] != SCHEMA_VERSION:
        raise SchemaMismatchError(f"unsupported schema_version {obj['schema_version']!r}", f"{path}.schema_version")
    kind = obj["kind"]
    if kind not in KINDS:
        raise SchemaMismatchError(f"unknown kind {kind!r}", f"{path}.kind")
    for key in ("created", "tool_version", "digest"):
        if not isinstance(obj[key], str):
            raise SchemaMismatchError("expected a string", f"{path}.{key}")
    payload = obj["payload"]
    ppath = f"{path}.payload"
    if kind == LOWER_EXHAUSTIVE:
        if not isinstance(payload, dict) or payload.get("record_type") not in _EXHAUSTIVE_KEYS:
            raise SchemaMismatchError("unknown record_type", f"{ppath}.record_type")
        _check_keys(payload, _EXHAUSTIVE_KEYS[payload["record_type"]], ppath)
    else:
        _check_keys(payload, _PAYLOAD_KEYS[kind], ppath)
    if kind == LAMBDA_BUNDLE:
        for cid, sub in payload["certificates"].items():
            from_json(sub, f"{ppath}.certificates.{cid}")
    return CertificateFile(obj["schema_version"], kind, payload, obj["created"], obj["tool_version"], obj["digest"])


def loads(data: bytes | str) -> CertificateFile:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno} (char {exc.pos})") from None
    return from_json(obj)


def write(cf: CertificateFile, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(dumps(cf))
    tmp.replace(path)
    return path


def read(path) -> CertificateFile:
    return loads(Path(path).read_bytes())


# -- builders ------------------------------------------------------------


def witness_file(g, rep, created: str | None = None) -> CertificateFile:
    payload = {
        "generator_set": g.to_json(),
        "target": str(rep.target),
        "terms": [t.to_json() for t in rep.terms],
        "length": str(rep.length),
    }
    return make_file(UPPER_WITNESS, payload, created)


def modular_file(cert, targets=(), created: str | None = None) -> CertificateFile:
    payload = {
        "certificate": cert.to_json(),
        "targets": [str(t) for t in sorted(set(targets))],
        "lower": str(cert.h + 1),
    }
    return make_file(LOWER_MODULAR, payload, created)


def scan_file(record, created: str | None = None) -> CertificateFile:
    return make_file(LOWER_EXHAUSTIVE, {"record_type": TWO_POWER_SCAN, **record.to_json()}, created)


def bounded_search_file(g, n: int, lower: int, caps, created: str | None = None) -> CertificateFile:
    from .bounds import CAP_CONDITIONAL

    payload = {
        "record_type": BOUNDED_SEARCH,
        "generator_set": g.to_json(),
        "n": str(n),
        "lower": str(lower),
        "caps": caps.to_json(),
        "status": CAP_CONDITIONAL,
    }
    return make_file(LOWER_EXHAUSTIVE, payload, created)


def lambda_bundle(result, created: str | None = None) -> CertificateFile:
    """Self-contained bundle: the result index plus every sub-certificate,
    keyed by content id."""
    from .bounds import EXHAUSTIVE, MODULAR, TWO_TERM_SIEVE

    g = result.generator_set
    subs: dict[str, dict] = {}
    modular: dict = {}

    def add(cf: CertificateFile) -> str:
        cid = cf.cert_id
        subs[cid] = cf.to_json()
        return cid

    # one LOWER_MODULAR file per certificate, listing all targets it serves
    for e in result.evidence:
        if e.lower_proof.kind == MODULAR:
            modular.setdefault(e.lower_proof.certificate, []).append(e.n)
    modular_ids = {c: add(modular_file(c, ns, created)) for c, ns in modular.items()}

    entries = []
    for e in result.evidence:
        kind = e.lower_proof.kind
        entry = {
            "n": str(e.n),
            "lower": str(e.lower),
            "lower_kind": kind,
            "lower_ref": None,
            "two_term": None,
            "upper": None if e.upper is None else str(e.upper),
            "upper_ref": None if e.witness is None else add(witness_file(g, e.witness, created)),
        }
        if kind == MODULAR:
            entry["lower_ref"] = modular_ids[e.lower_proof.certificate]
        elif kind == EXHAUSTIVE:
            entry["lower_ref"] = add(bounded_search_file(g, e.n, e.lower, e.lower_proof.caps, created))
        elif kind == TWO_TERM_SIEVE:
            entry["two_term"] = e.lower_proof.two_term.to_json()
        entries.append(entry)
    payload = {
        "generator_set": g.to_json(),
        "h": str(result.h),
        "value": None if result.value is None else str(result.value),
        "lower_bound": str(result.lower_bound),
        "status": result.status,
        "caps": result.caps.to_json(),
        "entries": entries,
        "certificates": subs,
    }
    return make_file(LAMBDA_BUNDLE, payload, created)


def emit_evidence(bundle: CertificateFile, directory) -> Path:
    """Write each sub-certificate as ``<id>.json`` and the bundle as
    ``index.json``; returns the index path."""
    directory = Path(directory)
    for cid, sub in bundle.payload["certificates"].items():
        write(from_json(sub), directory / f"{cid}.json")
    return write(bundle, directory / "index.json")
