import pytest

import oracles
from digicover import DigitalMap, DigitalTopologyError, NotApplicable, OverflowCap, is_covering, lift_paths, upl_bounded, upl_onestep
from digicover.search import EnumBounds, enumerate_images, enumerate_maps


def test_wrap_lifts_uniquely(wrap, scc4, scc8):
    _, t = scc4
    _, s = scc8
    assert lift_paths(wrap, [t[0], t[1], t[2]], s[0]) == [(s[0], s[1], s[2])]
    # the other sheet
    assert lift_paths(wrap, [t[0], t[3]], s[4]) == [(s[4], s[3])]


def test_pathwrap_has_no_lift_around_the_corner(pathwrap, scc4):
    _, t = scc4
    assert lift_paths(pathwrap, [t[0], t[3]], (0,)) == []


def test_constant_path_lifts_to_start(wrap, scc4, scc8):
    assert lift_paths(wrap, [scc4[1][2]], scc8[1][2]) == [(scc8[1][2],)]


def test_stationary_step_enumerates_moving_lifts(fold):
    # fold sends 0 and 2 to 0; a stationary base step at 0 from 1 is impossible, but from 0 it is
    lifts = lift_paths(fold, [(1,), (0,)], (1,))
    assert lifts == [((1,), (0,)), ((1,), (2,))]
    assert lift_paths(fold, [(0,), (0,)], (0,)) == [((0,), (0,))]


def test_lift_preconditions(pathwrap, badexl44, scc4):
    _, t = scc4
    with pytest.raises(DigitalTopologyError):
        lift_paths(pathwrap, [t[0], t[2]], (0,))  # not a path
    with pytest.raises(DigitalTopologyError):
        lift_paths(pathwrap, [t[1]], (0,))  # start not over base point
    with pytest.raises(DigitalTopologyError):
        lift_paths(pathwrap, [], (0,))
    with pytest.raises(NotApplicable):
        lift_paths(badexl44, [(0, 0)], (0, 0))


def test_lift_cap(fold):
    path = [(1,), (0,), (1,), (0,), (1,), (0,)]
    assert len(lift_paths(fold, path, (1,))) == 8
    with pytest.raises(OverflowCap):
        lift_paths(fold, path, (1,), cap=5)


def test_lifts_satisfy_definition(wrap, scc4):
    S4, t = scc4
    for path in oracles.base_paths(S4.points, 1, t[0], 4):
        for e in wrap.fiber(t[0]):
            for lift in lift_paths(wrap, path, e):
                assert [wrap(x) for x in lift] == list(path)
                assert all(a == b or oracles.adj(1, a, b) for a, b in zip(lift, lift[1:]))


def test_upl_verdicts(wrap, pathwrap, fold, scc4):
    assert upl_bounded(wrap, 3)
    assert upl_onestep(wrap)
    v = upl_bounded(pathwrap, 1)
    assert not v and v.witness == ((0,), (0, 1), 0)
    assert upl_onestep(pathwrap).witness == ((0,), (0, 1), 0)
    assert upl_onestep(fold).witness == ((1,), (0,), 2)
    ident = DigitalMap.identity(scc4[0])
    for L in (1, 2, 5):
        assert upl_bounded(ident, L)
    with pytest.raises(DigitalTopologyError):
        upl_bounded(wrap, 0)


def test_bounded_oracle_modes_and_brute_force_agree():
    images = list(enumerate_images(EnumBounds((3, 3), 3, ("c1", "c2"))))
    checked = 0
    for X in images:
        for Y in images:
            if len(Y) > len(X):
                continue
            for p in enumerate_maps(X, Y):
                one = upl_onestep(p)
                lit = upl_bounded(p, 3, memo=False)
                assert upl_bounded(p, 3).holds == lit.holds == one.holds
                assert lit.holds == oracles.upl(p.table, X.points, X.adjacency.u, Y.points, Y.adjacency.u, 3)
                checked += 1
    assert checked > 100


def test_covering_implies_upl_on_small_corpus():
    images = list(enumerate_images(EnumBounds((3, 3), 4, ("c1", "c2"))))
    for X in images:
        for Y in images:
            if len(Y) > len(X):
                continue
            for p in enumerate_maps(X, Y):
                if is_covering(p):
                    assert upl_onestep(p)
                    assert upl_bounded(p, len(X) + 1)
