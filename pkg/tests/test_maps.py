from itertools import product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import SQUARE, badexl, interval
from digicover import (
    DigitalImage,
    DigitalMap,
    MapError,
    NotInImageError,
    continuity_by_connectedness,
    is_continuous,
    is_isomorphism,
    restrict,
    subimages_isomorphic,
)
from digicover.maps import continuity_by_neighborhoods
from digicover.search import EnumBounds, enumerate_images, enumerate_maps


def test_badexl_continuity(badexl44, badexl48):
    v = is_continuous(badexl44)
    assert not v and v.witness == ((0, 0), (0, 1))
    assert is_continuous(badexl48)


def test_identity_is_continuous_isomorphism(scc8):
    X, _ = scc8
    ident = DigitalMap.identity(X)
    assert is_continuous(ident)
    assert is_isomorphism(ident)


def test_badexl48_is_not_isomorphism(badexl48):
    assert not is_isomorphism(badexl48)
    # exhaustive check of the inverse: some 8-adjacent target pair has non-4-adjacent preimages
    inv = {y: x for x, y in badexl48.table.items()}
    assert any(
        oracles.adj(2, a, b) and not oracles.adj(1, inv[a], inv[b]) for a in SQUARE for b in SQUARE
    )


def test_isomorphism_needs_bijection():
    f = DigitalMap(interval(0, 2), interval(0, 1), {(0,): (0,), (1,): (1,), (2,): (1,)})
    assert is_isomorphism(f).witness == "not injective"
    assert not is_isomorphism(DigitalMap.inclusion(interval(0, 1), interval(0, 2)))


def test_map_validation():
    X, Y = interval(0, 1), interval(0, 2)
    with pytest.raises(MapError):
        DigitalMap(X, Y, {(0,): (0,)})
    with pytest.raises(NotInImageError):
        DigitalMap(X, Y, {(0,): (0,), (1,): (7,)})
    with pytest.raises(NotInImageError):
        DigitalMap(X, Y, {(0,): (0,), (1,): (1,), (5,): (1,)})


def test_restrict():
    p = badexl("4", "8")
    r = restrict(p, [(0, 0), (1, 0), (0, 1)])
    assert r.table == {(0, 0): (0, 0), (1, 0): (1, 0), (0, 1): (1, 1)}
    # c0, c1, c3 go to d0, d1, d3
    assert set(r.table.values()) == {(0, 0), (1, 0), (1, 1)}
    ident = DigitalMap.identity(p.source)
    sub = restrict(ident, [(0, 0), (1, 0)])
    assert sub.table == {(0, 0): (0, 0), (1, 0): (1, 0)}
    assert restrict(p, []).table == {}
    c = restrict(p, [(0, 0)], corestrict=[(0, 0)])
    assert c.target.points == {(0, 0)}
    with pytest.raises(NotInImageError):
        restrict(p, [(9, 9)])


def test_subimages_isomorphic_examples():
    A = DigitalImage.of([(0,), (1,)], 2)
    B = DigitalImage.of([(5,), (6,)], 2)
    assert subimages_isomorphic(A, B)
    assert not subimages_isomorphic(A, interval(0, 2))
    L = DigitalImage.of([(0, 0), (1, 0), (1, 1)], 4)
    v = subimages_isomorphic(interval(0, 2), L)
    assert v
    f = v.witness
    assert oracles.is_iso_on(f, list(f), 1, L.points, 1)


def _small_images(max_points=5, box=(3, 3)):
    b = EnumBounds(box, max_points, ("c1", "c2"), require_connected=False)
    return list(enumerate_images(b))


def test_subimage_isomorphism_is_an_equivalence():
    images = _small_images()
    n = len(images)
    rel = [[bool(subimages_isomorphic(a, b)) for b in images] for a in images]
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
    # transitive iff each component of the relation graph is a clique
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if rel[i][j])
    for comp in nx.connected_components(g):
        comp = sorted(comp)
        assert all(rel[i][j] for i in comp for j in comp)
    # and the classes agree with networkx isomorphism
    graphs = [oracles.graph(X.points, X.adjacency.u) for X in images]
    for i in range(0, n, 7):
        for j in range(n):
            assert rel[i][j] == nx.is_isomorphic(graphs[i], graphs[j])


def test_subimage_isomorphism_against_all_bijections():
    images = [X for X in _small_images(4)]
    for a in images[::5]:
        for b in images[::3]:
            assert bool(subimages_isomorphic(a, b)) == oracles.all_bijection_isomorphic(
                a.points, a.adjacency.u, b.points, b.adjacency.u
            )


def _all_functions(X, Y):
    xs = X.sorted_points
    for vals in product(Y.sorted_points, repeat=len(xs)):
        yield DigitalMap(X, Y, dict(zip(xs, vals)))


def test_continuity_criteria_agree_on_all_small_functions():
    images = _small_images(3, box=(2, 3))
    checked = 0
    for X in images:
        for Y in images:
            for f in _all_functions(X, Y):
                adj = bool(is_continuous(f))
                assert adj == bool(continuity_by_connectedness(f))
                assert adj == bool(continuity_by_neighborhoods(f))
                assert adj == oracles.continuous(f.table, X.points, X.adjacency.u, Y.points, Y.adjacency.u)
                checked += 1
    assert checked > 5_000


def test_composition_of_continuous_maps_is_continuous():
    images = _small_images(3, box=(2, 3))
    for X in images[::3]:
        for Y in images[::4]:
            fs = list(enumerate_maps(X, Y, continuous=True, surjective=False))
            for Z in images[::7]:
                gs = list(enumerate_maps(Y, Z, continuous=True, surjective=False))
                for f in fs:
                    for g in gs:
                        assert is_continuous(f.then(g))


def test_isomorphism_inverse_is_isomorphism():
    images = _small_images(4)
    for X in images[::4]:
        for Y in images:
            if len(X) != len(Y):
                continue
            for f in enumerate_maps(X, Y, continuous=True, surjective=True):
                if is_isomorphism(f):
                    assert is_continuous(f)
                    assert is_isomorphism(f.inverse())


@st.composite
def random_map(draw):
    pts = st.tuples(st.integers(0, 2), st.integers(0, 2))
    X = DigitalImage.of(draw(st.sets(pts, min_size=1, max_size=5)), draw(st.sampled_from(["4", "8"])))
    Y = DigitalImage.of(draw(st.sets(pts, min_size=1, max_size=5)), draw(st.sampled_from(["4", "8"])))
    ys = Y.sorted_points
    table = {x: draw(st.sampled_from(ys)) for x in X.sorted_points}
    return DigitalMap(X, Y, table)


@settings(max_examples=300, deadline=None)
@given(random_map())
def test_continuity_formulations_agree(f):
    v = is_continuous(f)
    assert bool(v) == bool(continuity_by_neighborhoods(f)) == bool(continuity_by_connectedness(f))
    if not v:
        x, x2 = v.witness
        assert oracles.adj(f.source.adjacency.u, x, x2)
        assert not (f(x) == f(x2) or oracles.adj(f.target.adjacency.u, f(x), f(x2)))
