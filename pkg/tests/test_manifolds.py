import pytest

from conftest import gen
from cuttop.complex import build_complex, connected_components, euler_characteristic, validate
from cuttop.errors import BadSpec
from cuttop.homology import homology_summary
from cuttop.manifolds import BUNDLED, GeneratorSpec, generate

EULER = {"sphere:1": 0, "sphere:2": 2, "sphere:3": 0, "torus2": 0, "rp2": 1,
         "klein": 0, "genus:2": -2, "torus3": 0}
SIZES = {  # vertices, facets
    "sphere:1": (3, 3), "sphere:2": (4, 4), "sphere:3": (5, 5), "torus2": (7, 14),
    "rp2": (6, 10), "klein": (18, 36), "genus:2": (11, 26), "torus3": (27, 162),
}


def link(K, v):
    return [tuple(u for u in f if u != v) for f in K.facets if v in f]


def test_all_bundled_closed_connected(bundled):
    _, K = bundled
    rep = validate(K)
    assert rep.is_pseudomanifold and rep.is_connected and rep.is_closed


def test_euler_and_sizes(bundled):
    name, K = bundled
    assert euler_characteristic(K) == EULER[name]
    assert (K.n, len(K.facets)) == SIZES[name]


@pytest.mark.parametrize("g", [2, 3, 4])
def test_genus_closed_form(g):
    K = generate(f"genus:{g}")
    assert euler_characteristic(K) == 2 - 2 * g
    h = homology_summary(K)
    assert h.betti == [1, 2 * g, 1] and h.h1_torsion == []


@pytest.mark.parametrize("name", ["torus2", "rp2", "klein", "genus:2", "sphere:2"])
def test_vertex_links_are_circles(name):
    K = gen(name)
    for v in range(K.n):
        L = link(K, v)
        degree = {}
        for e in L:
            for u in e:
                degree[u] = degree.get(u, 0) + 1
        assert set(degree.values()) == {2}
        assert len(connected_components(K, L)) == 1


def test_torus3_links_are_spheres():
    K = gen("torus3")
    for v in range(K.n):
        L = build_complex(link(K, v))
        rep = validate(L)
        assert rep.is_closed and rep.is_connected and euler_characteristic(L) == 2


def test_spec_parse_and_str():
    assert GeneratorSpec.parse("sphere:2") == GeneratorSpec("sphere", 2)
    assert str(GeneratorSpec.parse("genus:3")) == "genus:3"
    assert str(GeneratorSpec.parse("torus2")) == "torus2"


@pytest.mark.parametrize("text", ["cube", "sphere:7", "sphere", "genus:1", "genus",
                                  "torus2:3", "sphere:x"])
def test_bad_specs(text):
    with pytest.raises(BadSpec):
        generate(text)


def test_generation_is_deterministic():
    for name in BUNDLED:
        assert generate(name).to_sc() == generate(GeneratorSpec.parse(name)).to_sc()
        assert generate(name).digest() == gen(name).digest()
