"""Facet-union domains, their boundaries, and the cutting predicate.

A domain is a proper non-empty set ``F`` of facets.  With ``K_F`` and
``K_C`` the subcomplexes generated by ``F`` and by the remaining facets,
the open set is ``U = |K| \\ |K_C|``, its closed complement is ``|K_C|``
and its topological boundary is ``|K_F ∩ K_C|``.  ``U`` is a union of open
simplices, so its path components are the classes of ``K_F \\ K_C`` under
face incidence; the two closed sets are compared by shared vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .complex import Simplex, SimplicialComplex, UnionFind, simplex_key, validate
from .errors import BudgetExceeded, PreconditionViolated


@dataclass(frozen=True)
class Domain:
    complex: SimplicialComplex = field(repr=False)
    facets: tuple[int, ...]

    def __post_init__(self):
        F = tuple(sorted(set(self.facets)))
        object.__setattr__(self, "facets", F)
        m = len(self.complex.facets)
        if not F or len(F) >= m:
            raise ValueError("a domain needs a non-empty proper subset of facets")
        if F[0] < 0 or F[-1] >= m:
            raise ValueError("facet index out of range")

    def complement(self) -> Domain:
        chosen = set(self.facets)
        return Domain(self.complex, tuple(i for i in range(len(self.complex.facets))
                                          if i not in chosen))


@dataclass
class BoundaryReport:
    boundary_simplices: list[Simplex]
    component_count: int
    components: list[list[Simplex]]


@dataclass
class CutReport:
    domain_connected: bool
    boundary: BoundaryReport
    complement_connected: bool
    cuts: bool

    @property
    def is_witness(self) -> bool:
        """Connected, boundary disconnected, and not cutting."""
        return self.domain_connected and self.boundary.component_count >= 2 and not self.cuts

    def verdicts(self) -> dict:
        return {"domain_connected": self.domain_connected,
                "boundary_components": self.boundary.component_count,
                "complement_connected": self.complement_connected,
                "cuts": self.cuts}


class _Tables:
    """Per-complex lookup tables shared by every domain over that complex."""

    def __init__(self, K: SimplicialComplex):
        offs = K.offsets()
        self.simplices = K.simplices()
        self.closure = []
        for f in K.facets:
            ids = []
            for k in range(1, len(f) + 1):
                idx = K.index[k - 1]
                ids.extend(offs[k - 1] + idx[s] for s in itertools.combinations(f, k))
            self.closure.append(ids)
        self.sub_faces = []
        for s in self.simplices:
            k = len(s) - 1
            if k == 0:
                self.sub_faces.append(())
            else:
                idx = K.index[k - 1]
                self.sub_faces.append(tuple(offs[k - 1] + idx[s[:i] + s[i + 1:]]
                                            for i in range(len(s))))


def _tables(K: SimplicialComplex) -> _Tables:
    if "cut_tables" not in K._cache:
        K._cache["cut_tables"] = _Tables(K)
    return K._cache["cut_tables"]


def _closure(T: _Tables, facets) -> set[int]:
    out: set[int] = set()
    for f in facets:
        out.update(T.closure[f])
    return out


def _split(D: Domain):
    K = D.complex
    T = _tables(K)
    chosen = set(D.facets)
    rest = [i for i in range(len(K.facets)) if i not in chosen]
    return T, _closure(T, D.facets), _closure(T, rest), rest


def _boundary(T: _Tables, common: set[int]) -> BoundaryReport:
    uf = UnionFind()
    for i in common:
        s = T.simplices[i]
        uf.add(s[0])
        for v in s[1:]:
            uf.add(v)
            uf.union(s[0], v)
    groups: dict[int, list[Simplex]] = {}
    for i in common:
        s = T.simplices[i]
        groups.setdefault(uf.find(s[0]), []).append(s)
    comps = [sorted(g, key=simplex_key) for g in groups.values()]
    comps.sort(key=lambda c: simplex_key(c[0]))
    bsimp = sorted((T.simplices[i] for i in common), key=simplex_key)
    return BoundaryReport(bsimp, len(comps), comps)


def boundary_report(D: Domain) -> BoundaryReport:
    T, kf, kc, _ = _split(D)
    return _boundary(T, kf & kc)


def cut_report(D: Domain) -> CutReport:
    T, kf, kc, rest = _split(D)
    K = D.complex

    # open set: K_F minus K_C, joined through codimension-one faces (the
    # intermediate faces of any incident pair stay inside an open set)
    opened = kf - kc
    uf = UnionFind(opened)
    for i in opened:
        for j in T.sub_faces[i]:
            if j in opened:
                uf.union(i, j)
    domain_connected = len({uf.find(i) for i in opened}) == 1

    boundary = _boundary(T, kf & kc)

    # closed complement: facets of C sharing vertices
    vf = UnionFind()
    for f in rest:
        verts = K.facets[f]
        for v in verts:
            vf.add(v)
            vf.union(verts[0], v)
    complement_connected = len({vf.find(v) for v in vf.parent}) == 1
    return CutReport(domain_connected, boundary, complement_connected, not complement_connected)


def is_cutting(D: Domain) -> bool:
    return cut_report(D).cuts


# -- enumeration -------------------------------------------------------

def facet_adjacency(K: SimplicialComplex) -> tuple[list[list[int]], str]:
    """Facet adjacency used to grow candidate domains.

    Ridge adjacency when every simplex star is ridge-connected (then a
    connected open set always comes from a ridge-connected facet set);
    otherwise the coarser vertex-sharing adjacency.
    """
    if "facet_adjacency" in K._cache:
        return K._cache["facet_adjacency"]
    m = len(K.facets)
    by_ridge: dict[Simplex, list[int]] = {}
    by_vertex: dict[int, list[int]] = {}
    for i, f in enumerate(K.facets):
        for r in itertools.combinations(f, K.dim):
            by_ridge.setdefault(r, []).append(i)
        for v in f:
            by_vertex.setdefault(v, []).append(i)
    kind = "ridge" if K.dim >= 1 and _stars_ridge_connected(K, by_ridge) else "vertex"
    groups = by_ridge.values() if kind == "ridge" else by_vertex.values()
    adj = [set() for _ in range(m)]
    for g in groups:
        for a in g:
            adj[a].update(g)
    out = [sorted(a - {i}) for i, a in enumerate(adj)]
    K._cache["facet_adjacency"] = (out, kind)
    return out, kind


def _stars_ridge_connected(K: SimplicialComplex, by_ridge) -> bool:
    star: dict[Simplex, list[int]] = {}
    for i, f in enumerate(K.facets):
        for k in range(1, K.dim):
            for s in itertools.combinations(f, k):
                star.setdefault(s, []).append(i)
    for s, fs in star.items():
        uf = UnionFind(fs)
        for i in fs:
            f = K.facets[i]
            for r in itertools.combinations(f, K.dim):
                if set(s) <= set(r):
                    for j in by_ridge[r]:
                        if j in uf.parent:
                            uf.union(i, j)
        if len(uf.groups()) > 1:
            return False
    return True


def connected_facet_sets(K: SimplicialComplex, max_size: int) -> list[tuple[int, ...]]:
    """Every adjacency-connected facet set of size ``1..max_size``, each once, sorted.

    Sets are grown from their smallest member with an extension set that
    only ever admits larger facets not already adjacent to the current set
    (each set is reached along exactly one branch).
    """
    adj, _ = facet_adjacency(K)
    out: list[tuple[int, ...]] = []

    def extend(sub: list[int], closed: set[int], ext: list[int], root: int):
        out.append(tuple(sorted(sub)))
        if len(sub) == max_size:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [u for u in adj[w] if u > root and u not in closed]
            sub.append(w)
            extend(sub, closed | set(fresh) | {w}, ext + fresh, root)
            sub.pop()

    for v in range(len(K.facets)):
        nb = [u for u in adj[v] if u > v]
        extend([v], {v, *adj[v]}, nb, v)
    out.sort()
    return out


def _candidate_sets(K: SimplicialComplex, max_facets: int) -> tuple[Iterator[tuple[int, ...]], bool]:
    m = len(K.facets)
    if max_facets >= m:
        subsets = (c for k in range(1, m) for c in itertools.combinations(range(m), k))
        return iter(sorted(subsets)), True
    return iter(connected_facet_sets(K, max_facets)), False


def enumerate_candidates(K: SimplicialComplex, max_facets: int) -> Iterator[Domain]:
    """Domains with at most ``max_facets`` facets, connected, with disconnected boundary.

    Yielded in lexicographic order of the facet tuple.
    """
    if max_facets < 1:
        raise ValueError("max_facets must be positive")
    limit = min(max_facets, len(K.facets) - 1)
    for F in connected_facet_sets(K, limit):
        D = Domain(K, F)
        rep = cut_report(D)
        if rep.domain_connected and rep.boundary.component_count >= 2:
            yield D


@dataclass
class TheoremReport:
    complex_hash: str
    betti: list[int]
    h1_trivial: bool
    max_facets: int
    exhaustive: bool
    candidates_tested: int = 0
    connected_domains: int = 0
    disconnected_boundary_domains: int = 0
    cutting_domains: int = 0
    remark_exceptions: int = 0
    non_cutting_witnesses: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not (self.h1_trivial and self.non_cutting_witnesses)

    def to_json(self) -> dict:
        return {
            "complex_hash": self.complex_hash,
            "betti": list(self.betti),
            "h1_trivial": self.h1_trivial,
            "max_facets": self.max_facets,
            "exhaustive": self.exhaustive,
            "candidates_tested": self.candidates_tested,
            "connected_domains": self.connected_domains,
            "disconnected_boundary_domains": self.disconnected_boundary_domains,
            "cutting_domains": self.cutting_domains,
            "remark_exceptions": self.remark_exceptions,
            "consistent": self.consistent,
            "non_cutting_witnesses": [w.to_json() for w in self.non_cutting_witnesses],
        }


def require_closed_manifold(K: SimplicialComplex) -> None:
    rep = validate(K)
    if not (rep.is_pseudomanifold and rep.is_connected and rep.is_closed):
        raise PreconditionViolated("expected a connected closed pseudomanifold")


def theorem_check(K: SimplicialComplex, max_facets: int,
                  max_candidates: int | None = None) -> TheoremReport:
    """Test every candidate domain up to ``max_facets`` facets against the theorem.

    When ``max_facets`` covers all facets every proper subset is examined;
    otherwise only adjacency-connected facet sets are (no other set can
    give a connected open set).  A connected domain with disconnected
    boundary that does not cut is recorded as a witness of nontrivial H^1.
    """
    from .certificate import WitnessCertificate
    from .homology import homology_summary

    require_closed_manifold(K)
    if max_facets < 1:
        raise ValueError("max_facets must be positive")
    h = homology_summary(K)
    sets, exhaustive = _candidate_sets(K, max_facets)
    report = TheoremReport(K.digest(), h.betti, h.h1_trivial, max_facets, exhaustive)
    for F in sets:
        if max_candidates is not None and report.candidates_tested >= max_candidates:
            raise BudgetExceeded(f"stopped after {max_candidates} candidates", partial=report)
        report.candidates_tested += 1
        D = Domain(K, F)
        rep = cut_report(D)
        if not rep.domain_connected:
            continue
        report.connected_domains += 1
        split = rep.boundary.component_count >= 2
        report.disconnected_boundary_domains += split
        if rep.cuts:
            report.cutting_domains += 1
            report.remark_exceptions += not split
        elif split:
            report.non_cutting_witnesses.append(WitnessCertificate(K.root, D, rep))
    return report


def split_boundary(rep: BoundaryReport) -> tuple[list[Simplex], list[Simplex]]:
    """``A`` is the component holding the smallest simplex; ``B`` is everything else."""
    if rep.component_count < 2:
        raise PreconditionViolated("boundary is connected")
    A = list(rep.components[0])
    B = sorted((s for c in rep.components[1:] for s in c), key=simplex_key)
    return A, B


def domain_from_facets(K: SimplicialComplex, facets: Sequence[Simplex]) -> Domain:
    idx = K.index[K.dim]
    return Domain(K, tuple(idx[tuple(f)] for f in facets))
