"""Non-cutting witnesses from nontrivial cocycles.

A 1-cocycle that is odd on some edges selects, in the barycentric
subdivision, the codimension-one flags starting at those edges: a mod-2
cycle dual to the cocycle.  The closed star of one of its components,
taken in the next subdivision, is a band whose complement stays connected
when the component does not separate.  Such bands are the candidates; each
is certified by :func:`cut_report`.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .certificate import WitnessCertificate
from .complex import Simplex, SimplicialComplex, barycentric_subdivision, connected_components
from .domains import Domain, cut_report, enumerate_candidates
from .errors import (EmptySurface, NotACocycle, PreconditionViolated, SearchExhausted,
                     TrivialClass)
from .homology import IntegerCochain, cocycle_basis, homology_summary, is_coboundary, is_cocycle


@dataclass
class DualHypersurface:
    ambient: SimplicialComplex = field(repr=False)
    cells: list[Simplex]
    source_cocycle: IntegerCochain = field(repr=False)

    def components(self) -> list[list[Simplex]]:
        return connected_components(self.ambient, self.cells, "vertex")


def dual_hypersurface(K: SimplicialComplex, z: IntegerCochain) -> DualHypersurface:
    if not is_cocycle(K, z):
        raise NotACocycle("δz is nonzero")
    if is_coboundary(K, z):
        raise TrivialClass("cocycle is a coboundary")
    odd = {e for e, v in zip(K.edges, z.values) if v % 2}
    if not odd:
        raise EmptySurface("cocycle is even on every edge")
    sd = barycentric_subdivision(K)
    d = K.dim
    cells = [s for s in sd.faces[d - 1]
             if len(sd.carrier[s[0]]) == 2 and sd.carrier[s[0]] in odd]
    if d >= 2:
        incidence = Counter(r for s in cells for r in itertools.combinations(s, d - 1))
        if any(c % 2 for c in incidence.values()):
            raise RuntimeError("dual hypersurface is not a mod-2 cycle")
    return DualHypersurface(sd, cells, z)


def star_domain(K: SimplicialComplex, cells) -> Domain:
    """Facets of ``Sd(K)`` meeting the subdivided copy of the subcomplex generated by ``cells``."""
    closure = {t for s in cells for k in range(1, len(s) + 1)
               for t in itertools.combinations(s, k)}
    sd = barycentric_subdivision(K)
    core = {v for v, c in enumerate(sd.carrier) if c in closure}
    return Domain(sd, tuple(i for i, f in enumerate(sd.facets) if core.intersection(f)))


def collar(H: DualHypersurface, component: int = 0) -> Domain:
    """Band around one component of ``H`` (default: the smallest) in ``Sd²(K)``."""
    comps = H.components()
    return star_domain(H.ambient, comps[component])


def _outer_band(D: Domain) -> Domain | None:
    """Facets outside ``D`` touching its boundary: a band around the band's edge."""
    K = D.complex
    inside = set(D.facets)
    rep_vertices = {v for s in cut_report(D).boundary.boundary_simplices for v in s}
    F = [i for i, f in enumerate(K.facets) if i not in inside and rep_vertices.intersection(f)]
    if not F or len(F) == len(K.facets):
        return None
    return Domain(K, tuple(F))


def _log_entry(kind: str, D: Domain, rep, **extra) -> dict:
    entry = {"kind": kind, **extra, "facets": len(D.facets),
             **rep.verdicts(), "accepted": rep.is_witness}
    if rep.is_witness:
        entry["reason"] = "accepted"
    elif not rep.domain_connected:
        entry["reason"] = "domain disconnected"
    elif rep.boundary.component_count < 2:
        entry["reason"] = "boundary connected"
    else:
        entry["reason"] = "domain cuts"
    return entry


def construct_witness(K: SimplicialComplex, full_pipeline: bool = False,
                      max_facets: int | None = None, retries: int = 8) -> WitnessCertificate:
    """Find and certify a connected non-cutting domain with disconnected boundary.

    Candidates, in order: the band around each component of the dual
    hypersurface of each basis cocycle; for a one-sided band (connected
    boundary) the band around its edge, once; then facet-set enumeration on
    ``K`` with doubling budgets up to ``max_facets``.  With
    ``full_pipeline`` the circle map is built over the witness and its
    winding cocycle attached.
    """
    if homology_summary(K).h1_trivial:
        raise PreconditionViolated("H^1 is trivial; no witness exists")
    log: list[dict] = []
    found = None
    for i, z in enumerate(cocycle_basis(K)):
        try:
            H = dual_hypersurface(K, z)
        except EmptySurface:
            log.append({"kind": "dual", "cocycle": i, "accepted": False,
                        "reason": "cocycle even everywhere"})
            continue
        for j in range(len(H.components())):
            D = collar(H, j)
            rep = cut_report(D)
            log.append(_log_entry("collar", D, rep, cocycle=i, component=j))
            if rep.is_witness:
                found = (D, rep)
                break
            if rep.domain_connected and rep.boundary.component_count == 1:
                R = _outer_band(D)
                if R is not None:
                    rrep = cut_report(R)
                    log.append(_log_entry("repair", R, rrep, cocycle=i, component=j))
                    if rrep.is_witness:
                        found = (R, rrep)
                        break
        if found:
            break

    if found is None:
        m = len(K.facets)
        limit = min(max_facets or m, m - 1)
        budget, seen = 1, 0
        while found is None and seen < limit:
            budget = min(2 * budget, limit)
            for D in enumerate_candidates(K, budget):
                if len(D.facets) <= seen:
                    continue
                rep = cut_report(D)
                if not rep.cuts:
                    log.append(_log_entry("enumeration", D, rep, budget=budget))
                    found = (D, rep)
                    break
            else:
                log.append({"kind": "enumeration", "budget": budget, "accepted": False,
                            "reason": "no non-cutting candidate"})
            seen = budget
    if found is None:
        raise SearchExhausted("no witness within budget", log)

    D, rep = found
    if not full_pipeline:
        return WitnessCertificate(K.root, D, rep, construction_log=log)
    from .circle_map import build_circle_map, certify_nontrivial, thicken
    R = build_circle_map(thicken(D.complex, D, retries=retries), retries=retries)
    return certify_nontrivial(R, log=log)
