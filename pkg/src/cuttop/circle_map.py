"""Circle-valued maps from non-cutting domains.

Given a connected domain ``U`` whose boundary splits as ``A ⊔ B`` and whose
complement is connected, the map sends a neighbourhood of ``A`` to the north
pole 0, a neighbourhood of ``B`` to the south pole 1/2, runs through the
left arc (0, 1/2) across ``U`` and through the right arc (1/2, 1) across the
complement.  Distances are hop counts in the 1-skeleton, measured inside
each side separately.  The circle is ``[0, 1)`` and every value is an exact
rational.

The integer winding cocycle of the map is carried back to the root complex
through the subdivision chain maps, and a loop through both sides is pushed
down through simplicial approximations of the identity.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import WitnessCertificate
from .complex import Simplex, SimplicialComplex, barycenter_id, barycentric_subdivision
from .domains import Domain, cut_report, split_boundary
from .errors import (CannotSeparate, CoboundaryContradiction, DisconnectedSide, NoWrapFixpoint,
                     NotACocycle, PreconditionViolated)
from .homology import IntegerCochain, is_coboundary, is_cocycle, pairing, walk_chain

HALF = Fraction(1, 2)
MAX_RETRIES = 8

# facet classes in the ambient complex
A_HAT, B_HAT, U_SIDE, V_SIDE = "A", "B", "U", "V"


@dataclass
class Thickening:
    domain: Domain = field(repr=False)
    ambient: SimplicialComplex = field(repr=False)
    A: list[Simplex]
    B: list[Simplex]
    A_hat: tuple[int, ...]
    B_hat: tuple[int, ...]
    U_side: tuple[int, ...]
    V_side: tuple[int, ...]

    def facet_classes(self) -> list[str]:
        cls = [""] * len(self.ambient.facets)
        for name, group in ((A_HAT, self.A_hat), (B_HAT, self.B_hat),
                            (U_SIDE, self.U_side), (V_SIDE, self.V_side)):
            for i in group:
                cls[i] = name
        return cls


@dataclass
class CircleMapResult:
    thickening: Thickening = field(repr=False)
    ambient: SimplicialComplex = field(repr=False)
    facet_classes: list[str] = field(repr=False)
    vertex_values: tuple[Fraction, ...] = field(repr=False)
    lift_cochain: IntegerCochain = field(repr=False)
    ambient_winding: IntegerCochain = field(repr=False)
    winding_cocycle: IntegerCochain = field(repr=False)
    subdivisions_used: int
    walk: list[int] = field(repr=False)
    loop: list[int] = field(repr=False)
    loop_on_base: list[int] = field(repr=False)
    pairing_value: int
    crossing_count: int

    def to_json(self) -> dict:
        return {
            "subdivisions_used": self.subdivisions_used,
            "ambient_hash": self.ambient.digest(),
            "vertex_values": [_q(v) for v in self.vertex_values],
            "lift_cochain": [_q(v) for v in self.lift_cochain.values],
            "winding_cocycle": {"edges": [list(e) for e in self.winding_cocycle.complex.edges],
                                "values": list(self.winding_cocycle.values)},
            "walk": list(self.walk),
            "loop_on_base": list(self.loop_on_base),
            "pairing_value": self.pairing_value,
            "crossing_count": self.crossing_count,
        }


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def thicken(K: SimplicialComplex, D: Domain, retries: int = MAX_RETRIES) -> Thickening:
    """Split ``Sd²(K)`` into neighbourhoods of ``A`` and ``B`` and the two sides.

    If the neighbourhoods touch, subdivide once more (at most ``retries``
    extra times).
    """
    if D.complex != K:
        raise PreconditionViolated("domain does not live on K")
    rep = cut_report(D)
    if not rep.is_witness:
        raise PreconditionViolated(f"domain is not a non-cutting witness: {rep.verdicts()}")
    A, B = split_boundary(rep.boundary)
    in_A, in_B = set(A), set(B)
    inside = set(D.facets)
    kfacet = K.index[K.dim]

    ambient = barycentric_subdivision(K)
    for _ in range(min(retries, MAX_RETRIES) + 1):
        ambient = barycentric_subdivision(ambient)
        carrier = _carriers_to(ambient, K)
        core_a = {v for v, c in enumerate(carrier) if c in in_A}
        core_b = {v for v, c in enumerate(carrier) if c in in_B}
        a_hat, b_hat, u_side, v_side = [], [], [], []
        va, vb = set(), set()
        for i, f in enumerate(ambient.facets):
            if core_a.intersection(f):
                a_hat.append(i)
                va.update(f)
            if core_b.intersection(f):
                b_hat.append(i)
                vb.update(f)
        touching = any(u in va and v in vb or u in vb and v in va for u, v in ambient.edges)
        if va.isdisjoint(vb) and not touching:
            hats = set(a_hat) | set(b_hat)
            for i, f in enumerate(ambient.facets):
                if i in hats:
                    continue
                owner = tuple(sorted(set().union(*(carrier[v] for v in f))))
                (u_side if kfacet[owner] in inside else v_side).append(i)
            return Thickening(D, ambient, A, B, tuple(a_hat), tuple(b_hat),
                              tuple(u_side), tuple(v_side))
    raise CannotSeparate(f"neighbourhoods of A and B still touch after {retries} extra subdivisions")


def _carriers_to(L: SimplicialComplex, K: SimplicialComplex) -> list[Simplex]:
    """Carrier in ``K`` of each vertex of ``L``, an iterated subdivision of ``K``."""
    chain = []
    while L is not K:
        chain.append(L)
        L = L.parent
        if L is None:
            raise ValueError("not a subdivision of K")
    carrier = [(v,) for v in range(K.n)]
    for level in reversed(chain):
        carrier = [tuple(sorted(set().union(*(carrier[v] for v in c)))) for c in level.carrier]
    return carrier


def _graph(K: SimplicialComplex, facets) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for i in facets:
        f = K.facets[i]
        for u, v in itertools.combinations(f, 2):
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    return adj


def _bfs(adj, sources) -> dict[int, int]:
    dist = {s: 0 for s in sources if s in adj}
    queue = deque(sorted(dist))
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _vertex_sets(K: SimplicialComplex, classes: list[str]):
    sets = {A_HAT: set(), B_HAT: set(), U_SIDE: set(), V_SIDE: set()}
    for f, c in zip(K.facets, classes):
        sets[c].update(f)
    va, vb = sets[A_HAT], sets[B_HAT]
    vu = sets[U_SIDE] - va - vb
    vv = sets[V_SIDE] - va - vb
    if vu & vv or va & vb:
        raise CannotSeparate("sides meet outside the neighbourhoods")
    return va, vb, vu, vv


def _initial_values(T: Thickening) -> list[Fraction]:
    K = T.ambient
    classes = T.facet_classes()
    va, vb, vu, vv = _vertex_sets(K, classes)
    values: list[Fraction | None] = [None] * K.n
    for v in va:
        values[v] = Fraction(0)
    for v in vb:
        values[v] = HALF
    for side, verts, offset in ((T.U_side, vu, Fraction(0)), (T.V_side, vv, HALF)):
        adj = _graph(K, side + T.A_hat + T.B_hat)
        da, db = _bfs(adj, va), _bfs(adj, vb)
        for x in verts:
            if x not in da or x not in db:
                raise DisconnectedSide(f"vertex {x} cannot reach both neighbourhoods")
            values[x] = offset + Fraction(da[x], 2 * (da[x] + db[x]))
    return values


def _lift(d: Fraction) -> Fraction:
    """Representative of ``d`` modulo 1 in (-1/2, 1/2]."""
    r = d - (d.numerator // d.denominator)
    return r - 1 if r > HALF else r


def _lifts(K: SimplicialComplex, values) -> list[Fraction]:
    return [_lift(values[v] - values[u]) for u, v in K.edges]


def _wrapping(K: SimplicialComplex, lifts) -> list[Simplex]:
    if K.dim < 2:
        return []
    eidx = K.index[1]
    return [t for t in K.faces[2]
            if lifts[eidx[(t[1], t[2])]] - lifts[eidx[(t[0], t[2])]] + lifts[eidx[(t[0], t[1])]]]


def _refine(K: SimplicialComplex, values, classes):
    """Subdivide once; barycenters get the average of the lifted vertex values."""
    sd = barycentric_subdivision(K)
    new_values = []
    for s in sd.carrier:
        base = values[s[0]]
        offsets = [_lift(values[v] - base) for v in s]
        avg = base + sum(offsets, Fraction(0)) / len(s)
        new_values.append(avg - (avg.numerator // avg.denominator))
    # top vertex of each flag is the barycenter of the old facet
    fidx = K.index[K.dim]
    new_classes = [classes[fidx[sd.carrier[f[-1]]]] for f in sd.facets]
    return sd, new_values, new_classes


def _find_path(adj, starts, allowed, targets):
    """Shortest path from some start to some target whose interior stays in ``allowed``."""
    prev = {s: None for s in starts}
    queue = deque(sorted(starts))
    while queue:
        u = queue.popleft()
        for v in sorted(adj.get(u, ())):
            if v in prev:
                continue
            if v in targets:
                path = [v, u]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            if v in allowed:
                prev[v] = u
                queue.append(v)
    return None


def _loop(K: SimplicialComplex, va, vb, vu, vv) -> list[int]:
    """Closed walk: A-hat, across U, B-hat, back across the complement, home in A-hat."""
    adj = _graph(K, range(len(K.facets)))
    out = _find_path(adj, va, vu, vb)
    if out is None:
        raise DisconnectedSide("no path from A to B through the domain")
    back = _find_path(adj, {out[-1]}, vv | vb, va)
    if back is None:
        raise DisconnectedSide("no path from B to A through the complement")
    home = _find_path(adj, {back[-1]}, va, {out[0]}) if back[-1] != out[0] else [out[0]]
    if home is None:
        raise DisconnectedSide("neighbourhood of A is disconnected")
    return out + back[1:] + home[1:]


def _pull_back(L: SimplicialComplex, w: list) -> list:
    """Cochain on ``L`` evaluating ``w`` (on ``Sd L``) over subdivided edges."""
    sd = barycentric_subdivision(L)
    eidx = sd.index[1]
    out = []
    for e in L.edges:
        be = barycenter_id(L, e)
        bu, bv = barycenter_id(L, e[:1]), barycenter_id(L, e[1:])
        out.append(w[eidx[(bu, be)]] - w[eidx[(bv, be)]])
    return out


def _push_down(sd: SimplicialComplex, c: list) -> list:
    """Image of a 1-chain on ``sd`` under the vertex map barycenter(σ) -> min(σ)."""
    L = sd.parent
    eidx = L.index[1]
    out = [0] * L.count(1)
    for (x, y), a in zip(sd.edges, c):
        if not a:
            continue
        u, v = sd.carrier[x][0], sd.carrier[y][0]
        if u < v:
            out[eidx[(u, v)]] += a
        elif v < u:
            out[eidx[(v, u)]] -= a
    return out


def build_circle_map(T: Thickening, retries: int = MAX_RETRIES) -> CircleMapResult:
    K = T.ambient
    classes = T.facet_classes()
    values = _initial_values(T)
    lifts = _lifts(K, values)
    extra = 0
    while _wrapping(K, lifts):
        if extra >= min(retries, MAX_RETRIES):
            raise NoWrapFixpoint(f"lifted map still wraps after {extra} subdivisions")
        K, values, classes = _refine(K, values, classes)
        lifts = _lifts(K, values)
        extra += 1

    winding = [lam - (values[v] - values[u]) for lam, (u, v) in zip(lifts, K.edges)]
    assert all(w.denominator == 1 for w in winding)
    winding = [int(w) for w in winding]

    va, vb, vu, vv = _vertex_sets(K, classes)
    walk = _loop(K, va, vb, vu, vv)
    loop = walk_chain(K, walk)
    crossing = sum((a in va and b in vu) - (a in vu and b in va) for a, b in zip(walk, walk[1:]))

    z, c, level = winding, loop, K
    while level.parent is not None:
        z = _pull_back(level.parent, z)
        c = _push_down(level, c)
        level = level.parent
    z_root = IntegerCochain(level, 1, tuple(z))
    value = pairing(z_root, c)
    ambient_value = sum(a * b for a, b in zip(winding, loop))
    if not value == ambient_value == crossing:
        raise RuntimeError(f"pairing mismatch: base {value}, ambient {ambient_value}, "
                           f"crossings {crossing}")
    return CircleMapResult(
        thickening=T,
        ambient=K,
        facet_classes=classes,
        vertex_values=tuple(values),
        lift_cochain=IntegerCochain(K, 1, tuple(lifts)),
        ambient_winding=IntegerCochain(K, 1, tuple(winding)),
        winding_cocycle=z_root,
        subdivisions_used=K.depth - T.domain.complex.depth,
        walk=walk,
        loop=loop,
        loop_on_base=c,
        pairing_value=value,
        crossing_count=crossing,
    )


def certify_nontrivial(R: CircleMapResult, log: list[dict] | None = None) -> WitnessCertificate:
    """Bundle a circle map into a certificate; a null-homotopic map is a hard error."""
    z = R.winding_cocycle
    base = z.complex
    if not is_cocycle(base, z):
        raise NotACocycle("winding cochain is not a cocycle")
    if is_coboundary(base, z):
        raise CoboundaryContradiction("winding cocycle is a coboundary")
    if pairing(z, R.loop_on_base) != R.pairing_value or R.pairing_value == 0:
        raise CoboundaryContradiction(f"loop pairing {R.pairing_value} does not certify winding")
    D = R.thickening.domain
    return WitnessCertificate(base, D, cut_report(D), cocycle=z, loop=list(R.loop_on_base),
                              pairing_value=R.pairing_value, construction_log=list(log or []))
