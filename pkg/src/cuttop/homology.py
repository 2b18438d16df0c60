"""Exact integer (co)homology of simplicial complexes.

Everything here is exact: Python integers and :class:`fractions.Fraction`.
Edges are oriented by ascending vertex order, so ``(u, v)`` with ``u < v``
runs from ``u`` to ``v``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complex import SimplicialComplex
from .errors import BadDegree, DimensionMismatch, NotACocycle, NotACycle


@dataclass
class IntegerMatrix:
    rows: int
    cols: int
    entries: list[list[int]]

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size: int) -> IntegerMatrix:
        m = cls.zeros(size, size)
        for i in range(size):
            m.entries[i][i] = 1
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for row in self.entries:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntegerMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows,
                             [list(c) for c in zip(*self.entries)] if self.rows else
                             [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)


@dataclass
class SNFResult:
    D: IntegerMatrix
    U: IntegerMatrix | None
    V: IntegerMatrix | None
    rank: int
    invariant_factors: list[int]


@dataclass(frozen=True)
class IntegerCochain:
    """A cochain on the canonical ``degree``-simplices of ``complex``.

    Values are normally ints; rational values are tolerated so the same
    type can carry lifted circle-map increments.
    """
    complex: SimplicialComplex = field(repr=False, compare=False)
    degree: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.complex.count(self.degree):
            raise DimensionMismatch(
                f"cochain has {len(self.values)} values, complex has "
                f"{self.complex.count(self.degree)} {self.degree}-simplices")

    def __add__(self, other: IntegerCochain) -> IntegerCochain:
        _same_support(self, other)
        return IntegerCochain(self.complex, self.degree,
                              tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: IntegerCochain) -> IntegerCochain:
        _same_support(self, other)
        return IntegerCochain(self.complex, self.degree,
                              tuple(a - b for a, b in zip(self.values, other.values)))

    def __rmul__(self, c: int) -> IntegerCochain:
        return IntegerCochain(self.complex, self.degree, tuple(c * a for a in self.values))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "simplices": [list(s) for s in self.complex.faces[self.degree]],
            "values": [_json_number(v) for v in self.values],
        }


@dataclass
class CohomologyResult:
    betti: list[int]
    h1_torsion: list[int]
    h1_trivial: bool

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "h1_torsion": list(self.h1_torsion),
                "h1_trivial": self.h1_trivial}


def _same_support(a: IntegerCochain, b: IntegerCochain) -> None:
    if a.degree != b.degree or a.complex != b.complex:
        raise DimensionMismatch("cochains live on different complexes or degrees")


def _json_number(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


# -- boundary operators ------------------------------------------------

def boundary_columns(K: SimplicialComplex, k: int) -> list[dict[int, int]]:
    """Sparse columns of the k-th boundary map: one ``{row: sign}`` per k-simplex."""
    if not 1 <= k <= K.dim:
        raise BadDegree(f"boundary degree {k} outside [1, {K.dim}]")
    idx = K.index[k - 1]
    cols = []
    for s in K.faces[k]:
        col = {}
        for i in range(len(s)):
            col[idx[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """Dense matrix of the k-th boundary map in the canonical bases."""
    cols = boundary_columns(K, k)
    m = IntegerMatrix.zeros(K.count(k - 1), K.count(k))
    for j, col in enumerate(cols):
        for i, v in col.items():
            m.entries[i][j] = v
    return m


def coboundary0(K: SimplicialComplex, g: Sequence) -> IntegerCochain:
    """The 1-cochain ``e = (u, v) -> g[v] - g[u]``."""
    if len(g) != K.n:
        raise DimensionMismatch("vertex potential has wrong length")
    return IntegerCochain(K, 1, tuple(g[v] - g[u] for u, v in K.edges))


def coboundary1(K: SimplicialComplex, z: IntegerCochain | Sequence) -> list:
    """Values of ``δz`` on the triangles of ``K``."""
    vals = _values(K, z, 1)
    if K.dim < 2:
        return []
    eidx = K.index[1]
    return [vals[eidx[(b, c)]] - vals[eidx[(a, c)]] + vals[eidx[(a, b)]]
            for a, b, c in K.faces[2]]


def is_cocycle(K: SimplicialComplex, z: IntegerCochain | Sequence) -> bool:
    return not any(coboundary1(K, z))


def _values(K: SimplicialComplex, z, degree: int) -> Sequence:
    if isinstance(z, IntegerCochain):
        if z.complex != K or z.degree != degree:
            raise DimensionMismatch("cochain belongs to another complex or degree")
        return z.values
    if len(z) != K.count(degree):
        raise DimensionMismatch(f"expected {K.count(degree)} values, got {len(z)}")
    return z


# -- Smith normal form -------------------------------------------------

def smith_normal_form(A: IntegerMatrix, transforms: bool = True) -> SNFResult:
    """Smith normal form ``U @ A @ V == D`` with unimodular ``U`` and ``V``.

    The pivot is always the entry of smallest absolute value in the active
    block (ties: lowest row, then lowest column).  Entries that remain after
    a round of Euclidean division become the next pivot.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    Vt = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def add_row(dst, src, q):
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if Vt is not None:
            vs, vd = Vt[src], Vt[dst]
            for k in range(n):
                if vs[k]:
                    vd[k] += q * vs[k]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if Vt is not None:
            Vt[i], Vt[j] = Vt[j], Vt[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                cand = [(abs(D[i][t]), 0, i) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), 1, j) for j in range(t + 1, n) if D[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    factors = [D[i][i] for i in range(min(m, n)) if D[i][i]]
    return SNFResult(
        D=IntegerMatrix(m, n, D),
        U=IntegerMatrix(m, m, U) if transforms else None,
        V=IntegerMatrix(n, n, [list(c) for c in zip(*Vt)] if n else []) if transforms else None,
        rank=len(factors),
        invariant_factors=factors,
    )


def sparse_invariant_factors(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by rows.

    Unit pivots are eliminated sparsely (a unit pivot needs no column work
    once its column is cleared); whatever has no unit entry left goes
    through :func:`smith_normal_form`.
    """
    rows = [dict(r) for r in rows]
    colrows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            colrows.setdefault(c, set()).add(i)
    alive = {i for i, r in enumerate(rows) if r}
    rank = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda i: (len(rows[i]), i)):
            if i not in alive:
                continue
            r = rows[i]
            units = [c for c, v in r.items() if v == 1 or v == -1]
            if not units:
                continue
            c = min(units, key=lambda c: (len(colrows[c]), c))
            p = r[c]
            for k in sorted(colrows[c]):
                if k == i:
                    continue
                rk = rows[k]
                mult = rk[c] * p
                for cc, v in r.items():
                    nv = rk.get(cc, 0) - mult * v
                    if nv:
                        if cc not in rk:
                            colrows[cc].add(k)
                        rk[cc] = nv
                    elif cc in rk:
                        del rk[cc]
                        colrows[cc].discard(k)
                if not rk:
                    alive.discard(k)
            for cc in r:
                colrows[cc].discard(i)
            alive.discard(i)
            rank += 1
            progress = True
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    factors = [1] * rank
    if rest:
        cols = sorted({c for r in rest for c in r})
        pos = {c: j for j, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in rest]
        for i, r in enumerate(rest):
            for c, v in r.items():
                dense[i][pos[c]] = v
        factors += smith_normal_form(IntegerMatrix(len(rest), len(cols), dense),
                                     transforms=False).invariant_factors
    return sorted(factors)


def rational_rank(A: IntegerMatrix | Sequence[Sequence]) -> int:
    """Rank over the rationals by plain Gaussian elimination.

    Independent of the integer machinery above; used as a cross-check.
    """
    entries = A.entries if isinstance(A, IntegerMatrix) else A
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in entries]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        col = min(pivot_row)
        pv = pivot_row[col]
        nxt = []
        for r in rows:
            if col in r:
                f = r[col] / pv
                for j, v in pivot_row.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        rows = nxt
        rank += 1
    return rank


# -- homology ----------------------------------------------------------

def homology_summary(K: SimplicialComplex) -> CohomologyResult:
    """Betti numbers and the torsion of H_1, memoized on ``K``."""
    if "homology" in K._cache:
        return K._cache["homology"]
    d = K.dim
    factors = {k: sparse_invariant_factors(boundary_columns(K, k)) for k in range(1, d + 1)}
    ranks = [0] + [len(factors[k]) for k in range(1, d + 1)] + [0]
    betti = [K.count(k) - ranks[k] - ranks[k + 1] for k in range(d + 1)]
    torsion = [f for f in factors.get(2, []) if f > 1]
    b1 = betti[1] if d >= 1 else 0
    result = CohomologyResult(betti, torsion, b1 == 0)
    K._cache["homology"] = result
    return result


def spanning_forest(K: SimplicialComplex) -> list[int]:
    """Indices of the edges of a BFS spanning forest (roots are minimal vertices)."""
    adj = _adjacency(K)
    seen = [False] * K.n
    tree = []
    eidx = K.index[1] if K.dim >= 1 else {}
    for root in range(K.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tree.append(eidx[(min(u, v), max(u, v))])
                    queue.append(v)
    return sorted(tree)


def _adjacency(K: SimplicialComplex) -> list[list[int]]:
    if "adjacency" not in K._cache:
        adj = [[] for _ in range(K.n)]
        for u, v in K.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        K._cache["adjacency"] = adj
    return K._cache["adjacency"]


def integrate(K: SimplicialComplex, z: IntegerCochain | Sequence) -> list:
    """A vertex potential ``g`` with ``δg = z`` on a spanning forest (``g = 0`` at roots)."""
    vals = _values(K, z, 1)
    adj = _adjacency(K)
    eidx = K.index[1] if K.dim >= 1 else {}
    g: list = [None] * K.n
    for root in range(K.n):
        if g[root] is not None:
            continue
        g[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if g[v] is None:
                    g[v] = g[u] + (vals[eidx[(u, v)]] if u < v else -vals[eidx[(v, u)]])
                    queue.append(v)
    return g


def is_coboundary(K: SimplicialComplex, z: IntegerCochain | Sequence) -> bool:
    """Decide whether the cocycle ``z`` equals ``δg`` for some vertex potential ``g``.

    The system ``δg = z`` is solved exactly: integrating along a spanning
    forest determines ``g`` up to one constant per component, and ``z`` is a
    coboundary iff that ``g`` reproduces ``z`` on every edge.
    """
    if not is_cocycle(K, z):
        raise NotACocycle("δz is nonzero")
    vals = _values(K, z, 1)
    g = integrate(K, vals)
    return all(vals[i] == g[v] - g[u] for i, (u, v) in enumerate(K.edges))


def cocycle_basis(K: SimplicialComplex) -> list[IntegerCochain]:
    """Integer 1-cocycles whose classes form a basis of H^1(K; Z).

    Every class has a unique representative vanishing on a fixed spanning
    forest, so H^1 is the integer kernel of the cocycle condition restricted
    to the non-forest edges; its lattice basis comes from the column
    transform of a Smith normal form.
    """
    if K.dim < 1:
        return []
    tree = set(spanning_forest(K))
    free = [i for i in range(K.count(1)) if i not in tree]
    if not free:
        return []
    pos = {e: j for j, e in enumerate(free)}
    if K.dim >= 2:
        rows = []
        for col in boundary_columns(K, 2):
            row = [0] * len(free)
            for e, s in col.items():
                if e in pos:
                    row[pos[e]] = s
            rows.append(row)
        M = IntegerMatrix(len(rows), len(free), rows)
    else:
        M = IntegerMatrix(0, len(free), [])
    snf = smith_normal_form(M)
    basis = []
    for j in range(snf.rank, len(free)):
        vals = [0] * K.count(1)
        for r, e in enumerate(free):
            vals[e] = snf.V.entries[r][j]
        basis.append(IntegerCochain(K, 1, tuple(vals)))
    return basis


def chain_boundary(K: SimplicialComplex, c: Sequence[int]) -> list[int]:
    """``∂c`` for a 1-chain given by its edge coefficients."""
    out = [0] * K.n
    for (u, v), a in zip(K.edges, c):
        if a:
            out[v] += a
            out[u] -= a
    return out


def pairing(z: IntegerCochain, c: Sequence[int]) -> int:
    """Evaluate the 1-cocycle ``z`` on the 1-cycle ``c``."""
    K = z.complex
    if isinstance(c, IntegerCochain):
        if c.complex != K or c.degree != 1:
            raise DimensionMismatch("cycle lives on another complex")
        c = c.values
    if len(c) != len(z.values):
        raise DimensionMismatch(f"cochain has {len(z.values)} edges, cycle has {len(c)}")
    if any(chain_boundary(K, c)):
        raise NotACycle("∂c is nonzero")
    return sum(a * b for a, b in zip(z.values, c))


def walk_chain(K: SimplicialComplex, walk: Sequence[int]) -> list[int]:
    """The 1-chain traced by a closed vertex walk (consecutive vertices adjacent)."""
    c = [0] * K.count(1)
    eidx = K.index[1]
    for u, v in zip(walk, walk[1:]):
        if u < v:
            c[eidx[(u, v)]] += 1
        else:
            c[eidx[(v, u)]] -= 1
    return c


def fundamental_cycles(K: SimplicialComplex) -> list[list[int]]:
    """One cycle per non-forest edge: the edge closed up by the forest path."""
    tree = set(spanning_forest(K))
    tree_edges = [K.edges[i] for i in sorted(tree)]
    parent: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for u, v in tree_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    depth = {}
    for root in range(K.n):
        if root in depth:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adj.get(u, [])):
                if v not in depth:
                    depth[v], parent[v] = depth[u] + 1, u
                    queue.append(v)

    def path_to(a, b):
        left, right = [a], [b]
        while left[-1] != right[-1]:
            if depth[left[-1]] >= depth[right[-1]]:
                left.append(parent[left[-1]])
            else:
                right.append(parent[right[-1]])
        return left + right[-2::-1]

    cycles = []
    for i, (u, v) in enumerate(K.edges):
        if i in tree:
            continue
        cycles.append(walk_chain(K, [u] + path_to(v, u)))
    return cycles
