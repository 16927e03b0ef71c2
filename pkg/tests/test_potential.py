import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lamptree.boundary import simulate_records
from lamptree.potential import (
    BoundaryFunction,
    approach_sequence,
    dirichlet_boundary_convergence,
    dirichlet_estimate,
    estimate_green,
    estimate_green_many,
    green_decay_profile,
    mean_value_residual,
)
from lamptree.tree import ROOT, EndPrefix, FreeProductSignature, TreeVertex
from lamptree.walk import basic_walk, lazy_tree_walk, point_mass, project_measure
from lamptree.wreath import BoundaryPoint, Configuration, GroupElement, LamplighterGroup

from conftest import boundary_points, cylinder_chain_oracle, elements, hitting_oracle


def test_green_at_start_vertex(sig2):
    mt = lazy_tree_walk(sig2, 1)
    x = sig2.vertex((0, 1), (1, 1))
    e = estimate_green(mt, x, x, N=500, horizon=500, seed=1)
    assert e.F_hat == 1.0 and e.F_se == 0.0
    assert e.G_hat >= 1.0


def test_srw_hitting_probabilities(sig2):
    mt = lazy_tree_walk(sig2, 1)
    ys = [sig2.ray_vertex(d) for d in range(5)]
    ests = estimate_green_many(mt, ROOT, ys, N=20000, horizon=2000, seed=3)
    for d, e in enumerate(ests):
        assert 0 <= e.F_hat <= 1 and e.G_hat >= e.F_hat
        assert abs(e.F_hat - hitting_oracle(2, d)) <= 3 * e.F_se + 1e-12
        assert abs(e.F_hat - 2.0 ** -d) <= 3 * e.F_se + 1e-12
        assert not e.truncation_suspect


def test_hitting_oracle_q3():
    assert hitting_oracle(3, 2) == pytest.approx(1 / 9)


def test_green_ratio_consistency():
    sig = FreeProductSignature(1, 1)
    mt = project_measure(basic_walk(sig, 2, 0.5))
    rnd = np.random.default_rng(4)
    for i in range(3):
        x = sig.ray_vertex(int(rnd.integers(0, 3)), first=int(rnd.integers(0, 3)))
        y = sig.mul(x, sig.ray_vertex(int(rnd.integers(1, 5)), first=int(rnd.integers(0, 3))))
        a = estimate_green(mt, x, y, N=8000, horizon=3000, seed=10 + i)
        b = estimate_green(mt, y, y, N=8000, horizon=3000, seed=20 + i)
        ratio = a.G_hat / b.G_hat
        se_ratio = ratio * math.hypot(a.G_se / a.G_hat, b.G_se / b.G_hat)
        assert abs(a.F_hat - ratio) <= 3 * math.hypot(a.F_se, se_ratio)


def test_short_horizon_warns(sig2):
    with pytest.warns(UserWarning):
        estimate_green(lazy_tree_walk(sig2, 1), ROOT, sig2.ray_vertex(4), N=10, horizon=20, seed=0)


def test_decay_profile(sig2):
    prof = green_decay_profile(lazy_tree_walk(sig2, 1), [0, 1, 2, 3], N=4000, horizon=1000, seed=5)
    assert prof[0].F_hat == 1.0
    Fs = [prof[d].F_hat for d in range(4)]
    assert all(b <= a for a, b in zip(Fs, Fs[1:]))
    for d in (2, 3):
        r = Fs[d] / Fs[d - 1]
        se = r * math.hypot(prof[d].F_se / Fs[d], prof[d - 1].F_se / Fs[d - 1])
        assert abs(r - 0.5) <= 3 * se


def test_worker_count_invariance(sig2):
    mt = lazy_tree_walk(sig2, 1)
    ys = [sig2.ray_vertex(2)]
    a = estimate_green_many(mt, ROOT, ys, 60, 300, 9, workers=1)[0]
    b = estimate_green_many(mt, ROOT, ys, 60, 300, 9, workers=2)[0]
    assert (a.G_hat, a.F_hat, a.G_half) == (b.G_hat, b.F_hat, b.G_half)


# --- boundary functions -------------------------------------------------------

def test_boundary_function_roundtrip(tmp_path, sig2):
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1), (1, 1)), {ROOT: 1, sig2.vertex((2, 1)): 0})
    d = f.to_dict()
    assert BoundaryFunction.from_dict(json.loads(json.dumps(d)), sig2) == f
    p = tmp_path / "f.json"
    p.write_text(json.dumps(d))
    assert BoundaryFunction.load(p, sig2) == f
    with pytest.raises(ValueError):
        BoundaryFunction(2, (), {(sig2.vertex((0, 1)), ()): 1.0})


def test_boundary_function_values(sig2):
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1)), {ROOT: 1})
    lit = Configuration.delta(2)
    assert f(sig2.vertex((0, 1), (2, 1)), lit) == 1.0
    assert f(sig2.vertex((0, 1), (2, 1)), Configuration(2)) == 0.0
    assert f(sig2.vertex((1, 1)), lit) == 0.0
    assert f.at(BoundaryPoint(lit, EndPrefix(sig2.vertex((0, 1), (1, 1))))) == 1.0
    assert BoundaryFunction.constant(2.5).values() == [2.5]


@settings(max_examples=60)
@given(st.data())
def test_pullback_exact(data):
    G = LamplighterGroup(FreeProductSignature(1, 1), 2)
    sig = G.sig
    f = BoundaryFunction.cylinder(sig.vertex((1, 1), (0, 1)), {ROOT: 1, sig.vertex((1, -1)): 1})
    g = data.draw(elements(G, radius=2))
    beta = data.draw(boundary_points(G, depth=8, radius=3))
    assert f.pullback(G, g).at(beta) == f.at(G.act(g, beta))


# --- Dirichlet problem ------------------------------------------------------

def test_constant_function(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    est = dirichlet_estimate(mu, BoundaryFunction.constant(1.0), mu.group.identity, 200, 100, seed=0)
    assert est.h_hat == 1.0 and est.std_err == 0.0


def test_first_letter_from_identity(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    f = BoundaryFunction.cylinder(sig2.vertex((1, 1)))
    est = dirichlet_estimate(mu, f, mu.group.identity, 3000, 400, seed=1)
    assert abs(est.h_hat - 1 / 3) <= 3 * est.std_err


def test_depth5_inside_cylinder_matches_birth_death(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1)))
    x = sig2.vertex((0, 1), (1, 1), (0, 1), (1, 1), (0, 1))
    est = dirichlet_estimate(mu, f, GroupElement(mu.group.zero, x), 4000, 300, seed=2)
    exact = 1 - 2 ** (1 - 5) / 3
    assert abs(est.h_hat - exact) <= 3 * est.std_err


def test_partition_sums(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    g = GroupElement(mu.group.zero, sig2.vertex((2, 1)))
    recs = simulate_records(mu, 60, 500, seed=3, depth=2, g0=g)
    total = 0
    indet = None
    for v in sig2.sphere(2):
        e = dirichlet_estimate(mu, BoundaryFunction.cylinder(v), g, 500, 60, 3, records=recs)
        indet = e.indeterminate if indet is None else indet
        assert e.indeterminate == indet
        total += round(e.h_hat * (e.N - e.indeterminate))
    assert indet > 0
    assert total == 500 - indet


def test_indeterminate_bounds(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1)), {ROOT: 1})
    e = dirichlet_estimate(mu, f, mu.group.identity, 400, 12, seed=4)
    assert e.indeterminate > 0
    ok = e.N - e.indeterminate
    assert e.lower == pytest.approx(e.h_hat * ok / e.N)
    assert e.upper == pytest.approx((e.h_hat * ok + e.indeterminate) / e.N)
    assert e.lower <= e.h_hat <= e.upper


def test_sequence_constant_and_increasing(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    u = sig2.vertex((0, 1), (1, 1), (2, 1), (0, 1), (1, 1), (2, 1))
    beta = BoundaryPoint(Configuration.delta(2), EndPrefix(u))
    pts = dirichlet_boundary_convergence(mu, BoundaryFunction.constant(0.25), beta, [1, 3], 50, 60, seed=0)
    assert [p.estimate.h_hat for p in pts] == [0.25, 0.25]
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1)), {ROOT: 1})
    pts = dirichlet_boundary_convergence(mu, f, beta, [1, 3, 6], 2000, 200, seed=1)
    V = cylinder_chain_oracle(2, 0.5)
    for p in pts:
        assert p.target == 1.0
        assert p.g.eta == Configuration.delta(2) and p.g.x.length == p.k
        assert abs(p.estimate.h_hat - V[p.k, 1, 1]) <= 3 * p.estimate.std_err
        # leaving the cylinder or touching the lamp needs a return to o: at most F(x_k, o) = q^-k
        assert 1 - p.estimate.h_hat <= 2.0 ** -p.k + 3 * p.estimate.std_err
    hs = [p.estimate.h_hat for p in pts]
    assert hs[0] < hs[1] < hs[2] or hs[2] == 1.0
    with pytest.raises(ValueError):
        approach_sequence(beta, [7])


def test_residual_trivial_cases():
    G = LamplighterGroup(FreeProductSignature(1, 1), 2)
    sig = G.sig
    mu = basic_walk(sig, 2, 0.5)
    res = mean_value_residual(mu, BoundaryFunction.constant(1.0), G.identity, 100, 50, seed=0)
    assert res.residual == 0.0
    ray = point_mass(G, GroupElement(G.zero, TreeVertex(((1, 1),))))
    f = BoundaryFunction.cylinder(sig.vertex((1, 1)))
    res = mean_value_residual(ray, f, G.identity, 20, 40, seed=0)
    assert res.residual == 0.0 and res.h_g.h_hat == 1.0


def test_residual_basic_walk(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1)), {ROOT: 1})
    res = mean_value_residual(mu, f, mu.group.identity, 2000, 200, seed=5)
    assert res.residual <= 3 * res.combined_std_err


def test_left_invariance_transport(sig2):
    mu = basic_walk(sig2, 2, 0.5)
    G = mu.group
    f = BoundaryFunction.cylinder(sig2.vertex((0, 1), (1, 1)), {ROOT: 1})
    g = G.element({sig2.vertex((0, 1)): 1}, sig2.vertex((0, 1)))
    a = dirichlet_estimate(mu, f, g, 3000, 300, seed=6)
    b = dirichlet_estimate(mu, f.pullback(G, g), G.identity, 3000, 300, seed=7)
    assert abs(a.h_hat - b.h_hat) <= 3 * math.hypot(a.std_err, b.std_err)
