"""Deterministic triangulations of standard closed manifolds."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex import SimplicialComplex, build_complex
from .errors import BadSpec

NAMES = ("sphere", "torus2", "rp2", "klein", "genus", "torus3")

# 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
TORUS2 = [t for i in range(7) for t in (((i, (i + 1) % 7, (i + 3) % 7)),
                                         ((i, (i + 2) % 7, (i + 3) % 7)))]

# 6-vertex real projective plane (hemi-icosahedron).
RP2 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    param: int | None = None

    def __post_init__(self):
        if self.name not in NAMES:
            raise BadSpec(f"unknown generator {self.name!r}")
        if self.name == "sphere" and self.param not in (1, 2, 3):
            raise BadSpec("sphere dimension must be 1, 2 or 3")
        if self.name == "genus" and (self.param is None or self.param < 2):
            raise BadSpec("genus must be at least 2")
        if self.name not in ("sphere", "genus") and self.param is not None:
            raise BadSpec(f"{self.name} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> GeneratorSpec:
        """Parse ``NAME`` or ``NAME:PARAM`` (``sphere:2``, ``genus:3``, ``torus2``)."""
        name, _, param = text.partition(":")
        if param:
            try:
                return cls(name, int(param))
            except ValueError:
                raise BadSpec(f"bad parameter in {text!r}") from None
        return cls(name)

    def __str__(self):
        return self.name if self.param is None else f"{self.name}:{self.param}"


def sphere(d: int) -> SimplicialComplex:
    return build_complex(itertools.combinations(range(d + 2), d + 1))


def klein_bottle() -> SimplicialComplex:
    """Klein bottle from a 3x3 grid of squares, each cut into four triangles.

    Columns wrap plainly; crossing the top edge reflects the column index.
    A centre vertex per square keeps the triangulation invariant under the
    reflection.
    """
    n = 3

    def corner(i, j):
        if j == n:
            i, j = (-i) % n, 0
        return ("c", i % n, j)

    def centre(i, j):
        return ("m", i % n, j)

    tris = []
    for i in range(n):
        for j in range(n):
            m = centre(i, j)
            a, b = corner(i, j), corner(i + 1, j)
            c, d = corner(i + 1, j + 1), corner(i, j + 1)
            tris += [(a, b, m), (b, c, m), (c, d, m), (d, a, m)]
    return _from_labels(tris)


def torus_connected_sum(g: int) -> SimplicialComplex:
    """Orientable closed surface of genus ``g`` as a chain of 7-vertex tori.

    Copy ``k`` loses triangle (0,1,3) and, for ``k`` < g-1, the
    vertex-disjoint triangle (2,4,5); consecutive copies are glued along
    those holes.
    """
    tris = []
    for k in range(g):
        labels = {v: (k, v) for v in range(7)}
        if k > 0:
            labels[0], labels[1], labels[3] = (k - 1, 2), (k - 1, 4), (k - 1, 5)
        for t in TORUS2:
            st = tuple(sorted(t))
            if k > 0 and st == (0, 1, 3):
                continue
            if k < g - 1 and st == (2, 4, 5):
                continue
            tris.append(tuple(labels[v] for v in t))
    return _from_labels(tris)


def torus3(n: int = 3) -> SimplicialComplex:
    """3-torus: n^3 cube grid with periodic identification, six tetrahedra per cube."""
    def vid(x, y, z):
        return (x % n) * n * n + (y % n) * n + (z % n)

    tets = []
    for x, y, z in itertools.product(range(n), repeat=3):
        for perm in itertools.permutations(range(3)):
            p = [x, y, z]
            path = [vid(*p)]
            for axis in perm:
                p[axis] += 1
                path.append(vid(*p))
            tets.append(tuple(path))
    return build_complex(tets)


def _from_labels(facets) -> SimplicialComplex:
    order = sorted(set(itertools.chain.from_iterable(facets)))
    ids = {v: i for i, v in enumerate(order)}
    return build_complex([tuple(ids[v] for v in f) for f in facets])


def generate(spec: GeneratorSpec | str) -> SimplicialComplex:
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    if spec.name == "sphere":
        return sphere(spec.param)
    if spec.name == "torus2":
        return build_complex(TORUS2)
    if spec.name == "rp2":
        return build_complex(RP2)
    if spec.name == "klein":
        return klein_bottle()
    if spec.name == "genus":
        return torus_connected_sum(spec.param)
    return torus3()


# The eight generators used throughout the test suite.
BUNDLED = ("sphere:1", "sphere:2", "sphere:3", "torus2", "rp2", "klein", "genus:2", "torus3")
