import pytest
from hypothesis import given
from hypothesis import strategies as st

from logiwasawa.errors import InvalidConfig, NotIsolated
from logiwasawa.extensions import (
    ExtensionPoint,
    PrimeData,
    TowerConfig,
    cyclotomic_isolation,
    greenberg_ball,
    intersection_level,
    invariant_map,
    kleine_neighborhood,
    neighborhood,
    primitive_classes,
    ramified_primes,
    splits_finitely,
)
from logiwasawa.series import LambdaDSeries
from logiwasawa.structure import ModulePresentation2


def P(*coords, ell=2, N=4):
    return ExtensionPoint(ell, coords, N)


def cfg(*primes, d=2, N=4, cyc=(1, 0), gk=True):
    return TowerConfig(2, d, N, tuple(primes), cyc, gk)


LOG = PrimeData("l", ((1, 0), (0, 1)), ((0, 1),))


def test_canonical_form():
    assert P(3, 6).coords == (1, 2)
    assert P(2, 3).coords == (6, 1)
    assert P(3, 6) == P(1, 2)
    with pytest.raises(ValueError):
        P(2, 4)


def test_intersection_level_examples():
    assert intersection_level(P(1, 3), P(1, 3)) == 4
    assert intersection_level(P(1, 0), P(0, 1)) == 0
    assert intersection_level(P(1, 0), P(1, 2)) == 1


def test_greenberg_examples():
    c = P(1, 0)
    assert len(greenberg_ball(c, 0).enumerate(4)) == 24
    for n in range(5):
        assert c in greenberg_ball(c, n)
    ball = greenberg_ball(c, 1)
    assert P(1, 2) in ball and P(0, 1) not in ball
    with pytest.raises(ValueError):
        greenberg_ball(c, 5)


def test_ramified_primes_examples():
    c = cfg(LOG)
    assert ramified_primes(P(1, 0), c, logarithmic=True) == frozenset()
    assert ramified_primes(P(1, 1), c, logarithmic=True) == {"l"}
    assert ramified_primes(P(1, 0), c) == {"l"}
    assert ramified_primes(P(1, 1), cfg(gk=False)) == frozenset()


def test_kleine_examples():
    c = cfg(LOG)
    center = P(1, 0)
    hood = kleine_neighborhood(center, 1, c, logarithmic=True)
    assert P(1, 2) not in hood and center in hood
    # no inertia at all: Kleine ball is the Greenberg ball
    trivial = cfg(PrimeData("q", (), ()), gk=False)
    for n in range(3):
        assert kleine_neighborhood(center, n, trivial).enumerate(4) == greenberg_ball(center, n).enumerate(4)
    with pytest.raises(ValueError):
        neighborhood(center, 1, "kleine")
    with pytest.raises(ValueError):
        neighborhood(center, 1, "zariski", c)


def test_enumeration_precision_default():
    ball = greenberg_ball(P(1, 0, N=8), 1)
    pts = ball.enumerate()
    assert all(p.precision == 3 for p in pts)
    assert pts == sorted(pts, key=lambda p: p.sort_key())


def test_isolation_examples():
    c = cfg(LOG)
    assert cyclotomic_isolation(c, 4) == 1
    with pytest.raises(NotIsolated) as err:
        cyclotomic_isolation(c, 0)
    assert err.value.n_max == 0
    # a second log-unramified direction never leaves the neighborhood
    c3 = TowerConfig(2, 3, 3, (PrimeData("l", (), ((0, 1, 0),)),), (1, 0, 0), True)
    with pytest.raises(NotIsolated):
        cyclotomic_isolation(c3, 3)
    with pytest.raises(ValueError):
        cyclotomic_isolation(cfg(PrimeData("l", (), ((1, 1),))), 3)


def test_config_validation():
    assert cfg(LOG).validate()
    with pytest.raises(InvalidConfig, match="no log-ramified prime above ell = 2"):
        cfg(PrimeData("l", ((1, 0),), ())).validate()
    assert cfg(PrimeData("l", ((1, 0),), ()), gk=False).validate()
    with pytest.raises(InvalidConfig):
        cfg(PrimeData("l", ((1, 0, 0),), ((0, 1),))).validate()
    with pytest.raises(InvalidConfig):
        cfg(LOG, LOG).validate()
    assert TowerConfig.from_json(cfg(LOG).to_json()) == cfg(LOG)


def test_splits_finitely():
    c = cfg(PrimeData("l", (), ((0, 1),), ((1, 0),)))
    assert splits_finitely(P(1, 0), c) is True
    assert splits_finitely(P(0, 1), c) is False
    assert splits_finitely(P(0, 1), cfg(LOG)) is None


T1 = LambdaDSeries.variable(2, 2, 0)
T2 = LambdaDSeries.variable(2, 2, 1)


def test_invariant_map_constant_relations():
    three = ModulePresentation2.cyclic(LambdaDSeries.constant(2, 2, 4))
    res = invariant_map(three, P(1, 0), 1, 3)
    assert res.rows and all((r.mu, r.lam, r.status) == (2, 0, "ok") for r in res.rows)
    one = ModulePresentation2.cyclic(LambdaDSeries.constant(2, 2, 1))
    res = invariant_map(one, P(1, 0), 1, 3)
    assert all((r.mu, r.lam) == (0, 0) for r in res.rows)
    assert res.summary().startswith("max mu = 0, max lambda = 0 over 4 points")


def test_invariant_map_spec_center():
    # the (1,0) ball never meets the symmetric class; (1+T) - (1+T)^b has T-coefficient 1 - b, odd
    res = invariant_map(ModulePresentation2.cyclic(T1 - T2), P(1, 0), 1, 3)
    assert [r.point.coords for r in res.rows] == [(1, 0), (1, 2), (1, 4), (1, 6)]
    assert [r.lam for r in res.rows] == [1, 1, 1, 1]
    assert res.max_mu == 0


def test_invariant_map_finite_splitting_filter():
    # decomposition image generated by (1,1): the point (1,7) kills it mod 8
    c = cfg(PrimeData("l", (), ((0, 1),), ((1, 1),)))
    M = ModulePresentation2.cyclic(T1 - T2)
    res = invariant_map(M, P(1, 1), 1, 3, cfg=c, finite_splitting_only=True)
    assert all(splits_finitely(r.point, c) for r in res.rows)
    assert len(res.rows) < len(invariant_map(M, P(1, 1), 1, 3, cfg=c).rows)


def test_invariant_map_errors():
    M = ModulePresentation2.cyclic(T1 - T2)
    with pytest.raises(ValueError):
        invariant_map(M, P(1, 0, 0), 1, 3)
    with pytest.raises(ValueError):
        invariant_map(M, P(1, 0), 3, 2)


vectors = st.tuples(st.integers(0, 15), st.integers(0, 15)).filter(lambda v: any(x % 2 for x in v))
units = st.integers(0, 15).filter(lambda u: u % 2)
gens = st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=2)


@given(vectors, vectors)
def test_level_symmetric(a, b):
    A, B = P(*a), P(*b)
    assert intersection_level(A, B) == intersection_level(B, A)
    assert intersection_level(A, A) == 4


@given(vectors, units, gens, gens)
def test_ramified_primes_unit_invariant(a, u, inertia, log_inertia):
    c = cfg(PrimeData("l", tuple(inertia), tuple(log_inertia)), gk=False)
    A = P(*a)
    B = ExtensionPoint(2, [u * x for x in a], 4)
    for lg in (False, True):
        assert ramified_primes(A, c, lg) == ramified_primes(B, c, lg)


@given(vectors, st.integers(0, 3), gens, gens)
def test_nesting_and_refinement(a, n, inertia, log_inertia):
    c = cfg(PrimeData("l", tuple(inertia), tuple(log_inertia)), gk=False)
    A = P(*a)
    big = set(greenberg_ball(A, n).enumerate(4))
    assert set(greenberg_ball(A, n + 1).enumerate(4)) <= big
    for lg in (False, True):
        assert set(kleine_neighborhood(A, n, c, lg).enumerate(4)) <= big


def test_primitive_class_count():
    for ell, d, N in [(2, 2, 1), (2, 2, 4), (3, 2, 2), (2, 3, 2)]:
        pts = primitive_classes(ell, d, N)
        expected = (ell**(N * d) - ell**((N - 1) * d)) // (ell**N - ell**(N - 1))
        assert len(pts) == len(set(pts)) == expected
