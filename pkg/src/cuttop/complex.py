"""Finite pure simplicial complexes.

A complex is given by its facets.  Vertices are dense integers ``0..n-1``,
simplices are ascending tuples, and every face list is sorted
lexicographically so that indices (and therefore matrices, cochains and
certificates) are reproducible.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DegenerateSimplex, EmptyComplex, MixedDimension, ParseError

Simplex = tuple[int, ...]


def simplex_key(s: Simplex) -> tuple[int, Simplex]:
    """Canonical order on simplices of mixed dimension: by size, then lexicographic."""
    return (len(s), s)


class SimplicialComplex:
    """Immutable pure simplicial complex.

    Use :func:`build_complex` to construct one from arbitrary input.  The
    constructor itself expects facets that are already sorted tuples over a
    dense vertex range.

    ``parent`` and ``carrier`` are set on barycentric subdivisions: vertex
    ``v`` of the subdivision is the barycenter of ``carrier[v]``, a simplex of
    ``parent``.
    """

    def __init__(self, facets: Iterable[Simplex], n: int,
                 parent: SimplicialComplex | None = None,
                 carrier: Sequence[Simplex] | None = None):
        facets = sorted(set(facets))
        self.dim = len(facets[0]) - 1
        self.n = n
        levels = [set() for _ in range(self.dim + 1)]
        for f in facets:
            for k in range(self.dim):
                levels[k].update(itertools.combinations(f, k + 1))
        levels[self.dim] = set(facets)
        self.faces: tuple[tuple[Simplex, ...], ...] = tuple(tuple(sorted(lv)) for lv in levels)
        self.index: tuple[dict[Simplex, int], ...] = tuple(
            {s: i for i, s in enumerate(lv)} for lv in self.faces)
        self.facets = self.faces[self.dim]
        self.parent = parent
        self.carrier = tuple(carrier) if carrier is not None else None
        self._cache: dict = {}

    # -- basic queries -------------------------------------------------
    def count(self, k: int) -> int:
        if 0 <= k <= self.dim:
            return len(self.faces[k])
        return 0

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return self.faces[1] if self.dim >= 1 else ()

    @property
    def depth(self) -> int:
        """Number of barycentric subdivisions separating this complex from its root."""
        d, k = 0, self
        while k.parent is not None:
            d, k = d + 1, k.parent
        return d

    @property
    def root(self) -> SimplicialComplex:
        k = self
        while k.parent is not None:
            k = k.parent
        return k

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for lv in self.faces:
            out.append(acc)
            acc += len(lv)
        return out

    def simplices(self) -> list[Simplex]:
        """All simplices in canonical order (dimension, then lexicographic)."""
        return [s for lv in self.faces for s in lv]

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        counts = ", ".join(str(len(lv)) for lv in self.faces)
        return f"SimplicialComplex(dim={self.dim}, f=({counts}))"

    # -- serialization -------------------------------------------------
    def to_sc(self) -> str:
        lines = [f"dim {self.dim}", f"vertices {self.n}"]
        lines.extend(" ".join(map(str, f)) for f in self.facets)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        if "digest" not in self._cache:
            self._cache["digest"] = hashlib.sha256(self.to_sc().encode()).hexdigest()
        return self._cache["digest"]


@dataclass
class ValidationReport:
    is_pseudomanifold: bool
    is_connected: bool
    bad_ridges: list[Simplex] = field(default_factory=list)
    boundary_ridges: list[Simplex] = field(default_factory=list)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_ridges


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def build_complex(facet_list: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Build a complex from facets.

    Vertex labels that already form the range ``0..n-1`` are kept; any other
    labelling is compressed to a dense range in order of first appearance.

    >>> build_complex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]).count(1)
    6
    """
    raw = [tuple(f) for f in facet_list]
    if not raw:
        raise EmptyComplex("no facets given")
    arity = len(raw[0])
    if arity == 0:
        raise EmptyComplex("empty facet")
    for f in raw:
        if len(f) != arity:
            raise MixedDimension(f"facet {f} has {len(f)} vertices, expected {arity}")
        if len(set(f)) != len(f):
            raise DegenerateSimplex(f"repeated vertex in {f}")
        for v in f:
            if not isinstance(v, int) or v < 0:
                raise ParseError(f"bad vertex label {v!r} in {f}")
    labels = set(itertools.chain.from_iterable(raw))
    if labels == set(range(len(labels))):
        relabel = {v: v for v in labels}
    else:
        relabel = {}
        for f in raw:
            for v in f:
                relabel.setdefault(v, len(relabel))
    facets = {tuple(sorted(relabel[v] for v in f)) for f in raw}
    return SimplicialComplex(facets, len(relabel))


def validate(K: SimplicialComplex) -> ValidationReport:
    ridge_count: dict[Simplex, int] = {}
    if K.dim >= 1:
        for f in K.facets:
            for r in itertools.combinations(f, K.dim):
                ridge_count[r] = ridge_count.get(r, 0) + 1
    bad = sorted(r for r, c in ridge_count.items() if c not in (1, 2))
    boundary = sorted(r for r, c in ridge_count.items() if c == 1)
    uf = UnionFind(range(K.n))
    for f in K.facets:
        for v in f[1:]:
            uf.union(f[0], v)
    connected = len(uf.groups()) <= 1
    return ValidationReport(not bad, connected, bad, boundary)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * len(lv) for k, lv in enumerate(K.faces))


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Barycentric subdivision, memoized on ``K``.

    New vertex ids follow the canonical simplex order of ``K``, so the id of
    the barycenter of a ``k``-simplex is ``K.offsets()[k] + K.index[k][s]``
    and every maximal flag is already an ascending tuple.
    """
    if "sd" in K._cache:
        return K._cache["sd"]
    offs = K.offsets()
    carrier = K.simplices()

    def vid(s: Simplex) -> int:
        return offs[len(s) - 1] + K.index[len(s) - 1][s]

    facets = set()
    for f in K.facets:
        for perm in itertools.permutations(f):
            facets.add(tuple(vid(tuple(sorted(perm[:i + 1]))) for i in range(len(perm))))
    sd = SimplicialComplex(facets, len(carrier), parent=K, carrier=carrier)
    K._cache["sd"] = sd
    return sd


def subdivide(K: SimplicialComplex, times: int) -> SimplicialComplex:
    for _ in range(times):
        K = barycentric_subdivision(K)
    return K


def barycenter_id(K: SimplicialComplex, s: Simplex) -> int:
    """Vertex id in ``barycentric_subdivision(K)`` of the barycenter of ``s``."""
    return K.offsets()[len(s) - 1] + K.index[len(s) - 1][s]


def connected_components(K: SimplicialComplex, S: Iterable[Simplex],
                         relation: str = "vertex") -> list[list[Simplex]]:
    """Partition the simplex set ``S``.

    ``relation="vertex"``: simplices sharing a vertex are related.
    ``relation="face"``: ``s`` and ``t`` are related when one is a face of
    the other.  Classes are sorted internally and ordered by smallest member.
    """
    S = set(S)
    if relation not in ("vertex", "face"):
        raise ValueError(f"unknown relation {relation!r}")
    uf = UnionFind(S)
    if relation == "vertex":
        first: dict[int, Simplex] = {}
        for s in S:
            for v in s:
                if v in first:
                    uf.union(first[v], s)
                else:
                    first[v] = s
    else:
        for s in S:
            for k in range(1, len(s)):
                for t in itertools.combinations(s, k):
                    if t in S:
                        uf.union(s, t)
    classes = [sorted(g, key=simplex_key) for g in uf.groups().values()]
    classes.sort(key=lambda c: simplex_key(c[0]))
    return classes


def parse_sc(text: str) -> SimplicialComplex:
    """Parse the ``.sc`` text format (``dim d``, ``vertices n``, one facet per line)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise ParseError("missing header")
    try:
        key, val = lines[0].split()
        if key != "dim":
            raise ValueError
        d = int(val)
        key, val = lines[1].split()
        if key != "vertices":
            raise ValueError
        n = int(val)
    except ValueError:
        raise ParseError("header must be 'dim d' then 'vertices n'") from None
    facets = []
    for ln in lines[2:]:
        try:
            f = tuple(int(t) for t in ln.split())
        except ValueError:
            raise ParseError(f"non-integer vertex in line {ln!r}") from None
        if len(f) != d + 1:
            raise MixedDimension(f"facet {f} has {len(f)} vertices, dim {d} needs {d + 1}")
        if any(v < 0 or v >= n for v in f):
            raise ParseError(f"facet {f} has a vertex outside [0,{n})")
        facets.append(f)
    if not facets:
        raise EmptyComplex("no facets")
    used = set(itertools.chain.from_iterable(facets))
    if len(used) != n:
        raise ParseError(f"header declares {n} vertices but {len(used)} are used")
    return build_complex(facets)


def read_sc(path: str | Path) -> SimplicialComplex:
    return parse_sc(Path(path).read_text())


def write_sc(K: SimplicialComplex, path: str | Path) -> None:
    Path(path).write_text(K.to_sc())
