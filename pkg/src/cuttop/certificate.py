"""Witness certificates and their independent re-verification.

A certificate names a base complex by its facets and hash, a number of
barycentric subdivisions giving the working complex, a facet set of the
working complex, the claimed cut verdicts, and optionally an integer
cocycle on the base together with a loop it winds around.  The verifier
rebuilds all of it from the JSON alone.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .complex import SimplicialComplex, build_complex, subdivide
from .domains import CutReport, Domain, cut_report
from .errors import CuttopError
from .homology import IntegerCochain, chain_boundary, is_coboundary, is_cocycle

FORMAT = "cuttop.certificate/1"


class CertificateFormatError(CuttopError):
    """The input is not a well-formed certificate document."""


@dataclass
class WitnessCertificate:
    base: SimplicialComplex
    domain: Domain
    cut: CutReport
    cocycle: IntegerCochain | None = None
    loop: list[int] | None = None
    pairing_value: int | None = None
    construction_log: list[dict] = field(default_factory=list)

    @property
    def working_complex(self) -> SimplicialComplex:
        return self.domain.complex

    @property
    def subdivisions(self) -> int:
        return self.working_complex.depth - self.base.depth

    def to_json(self) -> dict:
        body = {
            "format": FORMAT,
            "base_complex": {
                "dim": self.base.dim,
                "vertices": self.base.n,
                "facets": [list(f) for f in self.base.facets],
                "hash": self.base.digest(),
            },
            "subdivisions": self.subdivisions,
            "working_complex_hash": self.working_complex.digest(),
            "domain": list(self.domain.facets),
            "verdicts": {
                "domain_connected": self.cut.domain_connected,
                "complement_connected": self.cut.complement_connected,
                "cuts": self.cut.cuts,
            },
            "boundary_components": self.cut.boundary.component_count,
            "cocycle": None if self.cocycle is None else {
                "edges": [list(e) for e in self.base.edges],
                "values": list(self.cocycle.values),
            },
            "loop": None if self.loop is None else list(self.loop),
            "pairing_value": self.pairing_value,
            "construction_log": list(self.construction_log),
        }
        body["digest"] = _digest(body)
        return body

    def dumps(self) -> str:
        return dumps(self.to_json())


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _digest(body: dict) -> str:
    payload = {k: v for k, v in body.items() if k != "digest"}
    return hashlib.sha256(json.dumps(payload, sort_keys=True, separators=(",", ":"))
                          .encode()).hexdigest()


_REQUIRED = {
    "format": str, "base_complex": dict, "subdivisions": int, "working_complex_hash": str,
    "domain": list, "verdicts": dict, "boundary_components": int, "digest": str,
}


def load_certificate(text: str) -> dict:
    """Parse certificate JSON, checking shape only (not truth)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    for key, typ in _REQUIRED.items():
        if not isinstance(doc.get(key), typ) or isinstance(doc.get(key), bool) and typ is int:
            raise CertificateFormatError(f"missing or mistyped field {key!r}")
    if doc["format"] != FORMAT:
        raise CertificateFormatError(f"unknown format {doc['format']!r}")
    base = doc["base_complex"]
    if not isinstance(base.get("facets"), list) or not isinstance(base.get("hash"), str):
        raise CertificateFormatError("base_complex needs 'facets' and 'hash'")
    for key in ("domain_connected", "complement_connected", "cuts"):
        if not isinstance(doc["verdicts"].get(key), bool):
            raise CertificateFormatError(f"verdict {key!r} missing")
    return doc


def verify_certificate(cert: WitnessCertificate | dict | str) -> bool:
    """Re-derive every claim of a certificate from scratch."""
    if isinstance(cert, WitnessCertificate):
        doc = cert.to_json()
    elif isinstance(cert, str):
        doc = load_certificate(cert)
    else:
        doc = cert
    try:
        return _verify(doc)
    except (CuttopError, ValueError, TypeError, KeyError, IndexError):
        return False


def _verify(doc: dict) -> bool:
    if doc.get("digest") != _digest(doc):
        return False
    base_doc = doc["base_complex"]
    base = build_complex([tuple(f) for f in base_doc["facets"]])
    if base.digest() != base_doc["hash"] or base.dim != base_doc.get("dim") \
            or base.n != base_doc.get("vertices"):
        return False
    s = doc["subdivisions"]
    if not 0 <= s <= 8:
        return False
    working = subdivide(base, s)
    if working.digest() != doc["working_complex_hash"]:
        return False
    F = doc["domain"]
    if F != sorted(set(F)) or not all(isinstance(i, int) and not isinstance(i, bool) for i in F):
        return False
    rep = cut_report(Domain(working, tuple(F)))
    claimed = doc["verdicts"]
    if (rep.domain_connected, rep.complement_connected, rep.cuts) != (
            claimed["domain_connected"], claimed["complement_connected"], claimed["cuts"]):
        return False
    if rep.boundary.component_count != doc["boundary_components"]:
        return False
    if not rep.is_witness:
        return False

    coc = doc.get("cocycle")
    if coc is None:
        return doc.get("loop") is None and doc.get("pairing_value") is None
    if [tuple(e) for e in coc["edges"]] != list(base.edges):
        return False
    values = coc["values"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        return False
    z = IntegerCochain(base, 1, tuple(values))
    if not is_cocycle(base, z) or is_coboundary(base, z):
        return False
    loop, claimed_pairing = doc.get("loop"), doc.get("pairing_value")
    if loop is None or not isinstance(claimed_pairing, int) or claimed_pairing == 0:
        return False
    if len(loop) != len(values) or any(chain_boundary(base, loop)):
        return False
    return sum(a * b for a, b in zip(values, loop)) == claimed_pairing
