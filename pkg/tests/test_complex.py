import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import closure, gen
from cuttop.complex import (barycentric_subdivision, build_complex, connected_components,
                            euler_characteristic, parse_sc, validate)
from cuttop.errors import DegenerateSimplex, EmptyComplex, MixedDimension, ParseError
from cuttop.manifolds import BUNDLED

TETRA = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_boundary_of_tetrahedron():
    K = build_complex(TETRA)
    assert (K.dim, K.n, len(K.facets), K.count(1)) == (2, 4, 4, 6)
    assert K.faces[1] == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_single_edge():
    K = build_complex([(0, 1)])
    assert K.dim == 1 and len(K.facets) == 1
    assert validate(K).boundary_ridges == [(0,), (1,)]


@pytest.mark.parametrize("facets, err", [
    ([(0, 0, 1)], DegenerateSimplex),
    ([(0, 1, 2), (1, 2)], MixedDimension),
    ([], EmptyComplex),
])
def test_build_errors(facets, err):
    with pytest.raises(err):
        build_complex(facets)


def test_relabels_by_first_appearance():
    K = build_complex([(10, 7, 3), (7, 3, 42)])
    # 10 -> 0, 7 -> 1, 3 -> 2, 42 -> 3
    assert K.facets == ((0, 1, 2), (1, 2, 3))
    assert K.n == 4


def test_dense_labels_kept():
    K = build_complex([(2, 1, 0), (3, 2, 1)])
    assert K.facets == ((0, 1, 2), (1, 2, 3))


def test_rebuild_is_identity(bundled):
    _, K = bundled
    again = build_complex(K.facets)
    assert again == K
    assert again.faces == K.faces
    assert again.to_sc() == K.to_sc()


def test_validate_examples():
    rep = validate(build_complex(TETRA))
    assert rep.is_pseudomanifold and rep.is_connected and rep.is_closed

    rep = validate(build_complex([(0, 1, 2), (3, 4, 5)]))
    assert rep.is_pseudomanifold
    assert not rep.is_connected
    assert rep.boundary_ridges == [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]

    rep = validate(build_complex([(0, 1, 2), (0, 1, 3), (0, 1, 4)]))
    assert not rep.is_pseudomanifold
    assert (0, 1) in rep.bad_ridges


def test_euler_characteristic_examples():
    assert euler_characteristic(build_complex(TETRA)) == 2
    assert euler_characteristic(gen("torus2")) == 0
    assert euler_characteristic(gen("rp2")) == 1


def test_subdivision_counts():
    S = barycentric_subdivision(build_complex(TETRA))
    assert S.n == 14 and len(S.facets) == 24

    E = barycentric_subdivision(build_complex([(0, 1)]))
    assert len(E.facets) == 2
    mid = [v for v, c in enumerate(E.carrier) if c == (0, 1)]
    assert len(mid) == 1
    assert all(mid[0] in f for f in E.facets)


def test_subdivision_multiplies_facets(bundled):
    _, K = bundled
    S = barycentric_subdivision(K)
    assert len(S.facets) == len(K.facets) * len(list(itertools.permutations(range(K.dim + 1))))
    assert S.n == len(K.simplices())


def test_subdivision_preserves_euler_and_validity(bundled):
    _, K = bundled
    S = barycentric_subdivision(K)
    assert euler_characteristic(S) == euler_characteristic(K)
    a, b = validate(K), validate(S)
    assert (a.is_pseudomanifold, a.is_closed, a.is_connected) == \
           (b.is_pseudomanifold, b.is_closed, b.is_connected)


def test_subdivision_carriers_are_faces():
    K = gen("torus2")
    S = barycentric_subdivision(K)
    for f in S.facets:
        chain = [S.carrier[v] for v in f]
        assert [len(c) for c in chain] == [1, 2, 3]
        assert all(set(a) < set(b) for a, b in zip(chain, chain[1:]))


def test_components_examples():
    K = build_complex(TETRA)
    assert len(connected_components(K, K.simplices(), "vertex")) == 1
    D = build_complex([(0, 1, 2), (3, 4, 5)])
    assert connected_components(D, D.facets) == [[(0, 1, 2)], [(3, 4, 5)]]
    assert connected_components(K, []) == []


def test_components_face_relation_on_open_star():
    K = build_complex(TETRA)
    # two edges meeting only at a vertex that is not in the set
    assert len(connected_components(K, [(0, 1), (1, 2)], "face")) == 2
    assert len(connected_components(K, [(0, 1), (1, 2)], "vertex")) == 1
    assert len(connected_components(K, [(0, 1), (1, 2), (1,)], "face")) == 1


@settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(BUNDLED[:7]), seed=st.integers(0, 10**6))
def test_relations_agree_on_subcomplexes(name, seed):
    K = gen(name)
    rng = random.Random(seed)
    picked = [f for f in K.facets if rng.random() < 0.3] or [K.facets[0]]
    S = closure(picked)
    by_vertex = connected_components(K, S, "vertex")
    by_face = connected_components(K, S, "face")
    assert by_vertex == by_face


def test_sc_round_trip(bundled):
    _, K = bundled
    assert parse_sc(K.to_sc()) == K


def test_sc_comments_and_errors():
    K = parse_sc("# tetra\ndim 2\nvertices 4\n0 1 2\n0 1 3\n# x\n0 2 3\n1 2 3\n")
    assert K == build_complex(TETRA)
    with pytest.raises(MixedDimension):
        parse_sc("dim 2\nvertices 4\n0 1 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_sc("dim 2\nvertices 3\n0 1 2\n0 1 5\n")
    with pytest.raises(ParseError):
        parse_sc("vertices 3\ndim 2\n0 1 2\n")
    with pytest.raises(DegenerateSimplex):
        parse_sc("dim 2\nvertices 3\n0 1 1\n0 1 2\n")


def test_generators_are_byte_deterministic(bundled):
    name, K = bundled
    from cuttop.manifolds import generate
    assert generate(name).to_sc() == K.to_sc()
