import itertools
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import pytest

from cuttop.complex import simplex_key
from cuttop.domains import Domain
from cuttop.homology import IntegerMatrix
from cuttop.manifolds import BUNDLED, generate


@lru_cache(maxsize=None)
def gen(name):
    return generate(name)


@pytest.fixture(params=BUNDLED)
def bundled(request):
    return request.param, gen(request.param)


def det(M: IntegerMatrix) -> Fraction:
    """Determinant by rational elimination."""
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in M.entries]
    sign, acc = 1, Fraction(1)
    n = M.rows
    for c in range(n):
        piv = next((i for i in range(c, n) if c in rows[i]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        pr = rows[c]
        acc *= pr[c]
        for i in range(c + 1, n):
            if c in rows[i]:
                f = rows[i][c] / pr[c]
                for j, v in pr.items():
                    nv = rows[i].get(j, 0) - f * v
                    if nv:
                        rows[i][j] = nv
                    else:
                        rows[i].pop(j, None)
    return sign * acc


def check_snf(A, r):
    """Every SNF result in the suite goes through here."""
    assert r.U @ A @ r.V == r.D
    assert det(r.U) in (1, -1)
    assert det(r.V) in (1, -1)
    for i in range(r.D.rows):
        for j in range(r.D.cols):
            if i != j:
                assert r.D[i, j] == 0
    f = r.invariant_factors
    assert all(x > 0 for x in f)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


def closure(facets):
    return {t for f in facets for k in range(1, len(f) + 1) for t in itertools.combinations(f, k)}


def oracle_cut(D: Domain) -> dict:
    """Cut verdicts straight from the point-set definitions, via networkx."""
    K = D.complex
    F = [K.facets[i] for i in D.facets]
    C = [K.facets[i] for i in range(len(K.facets)) if i not in set(D.facets)]
    kf, kc = closure(F), closure(C)

    opened = kf - kc
    g = nx.Graph()
    g.add_nodes_from(opened)
    for s in opened:
        for t in opened:
            if len(s) < len(t) and set(s) <= set(t):
                g.add_edge(s, t)

    def vertex_components(S):
        h = nx.Graph()
        for s in S:
            h.add_node(("s", s))
            for v in s:
                h.add_edge(("s", s), ("v", v))
        return nx.number_connected_components(h) if S else 0

    return {
        "domain_connected": nx.number_connected_components(g) == 1,
        "boundary_components": vertex_components(kf & kc),
        "complement_connected": vertex_components(kc) == 1,
        "cuts": vertex_components(kc) != 1,
        "boundary": sorted(kf & kc, key=simplex_key),
    }
