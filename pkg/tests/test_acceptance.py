"""Exit criteria for the tracker, one test per criterion."""

import time

import numpy as np
import pytest

from acceptance_log import report
from cbetrack.cli import main
from cbetrack.consensus import ConsensusConfig, consensus_round, run_consensus
from cbetrack.dynamics import build_ncv, propagate
from cbetrack.graph import generate_erdos_renyi
from cbetrack.sensing import box_anchors, build_sensors, sphere_anchors
from cbetrack.simulation import ScenarioConfig, build_network, resolve_anchors, run
from conftest import random_connected
from oracles import laplacian_power_oracle

SEEDS = range(10)


def test_1_trend_reproduction():
    start = time.perf_counter()
    passed_seeds = []
    for seed in SEEDS:
        cfg = ScenarioConfig(seed=seed, n=6, xi=1.0, L=10, K=500)
        m = run(cfg).metrics
        msee = np.array(m.msee)
        ok = m.msee_avg[499] < 0.5 * m.msee_avg[49] and bool((msee[499] < 0.5 * msee[49]).all())
        passed_seeds.append(ok)
    elapsed = time.perf_counter() - start
    count = sum(passed_seeds)
    ok = count >= 9 and elapsed < 5.0
    report("1 trend e_avg(500) < 0.5 e_avg(50), all agents", ok, f"{count}/10 seeds, {elapsed:.2f}s")
    assert count >= 9
    assert elapsed < 5.0


def test_2_noise_free_exactness():
    x0 = [3.0, -1.0, 2.0, 0.4, -0.3, 0.1]
    res = run(ScenarioConfig(sigma_w=0.0, sigma_v=0.0, x0=x0, xhat0=x0, K=1000))
    err = np.linalg.norm(res.estimates_array() - res.truth_array()[:, None, :], axis=2).max()
    report("2 noise-free exactness over k <= 1000", err < 1e-9, f"max error {err:.2e}")
    assert err < 1e-9


def test_3_saturation():
    worst = -np.inf
    wins = 0
    fault = {"probability": 0.2, "magnitude": 100.0}
    for seed in SEEDS:
        runs = [run(ScenarioConfig(seed=seed)), run(ScenarioConfig(seed=seed, fault=fault, K=500))]
        for res in runs:
            excess = np.array(res.gains) * np.array(res.metrics.innovation) - res.config_echo.xi
            worst = max(worst, excess.max())
        baseline = run(ScenarioConfig(seed=seed, fault=fault, K=500, saturate=False))
        wins += runs[1].metrics.msee_avg[-1] < baseline.metrics.msee_avg[-1]
    ok = worst <= 1e-12 and wins >= 9
    report("3 saturation bound and fault mitigation", ok,
           f"max g*|innov| - xi = {worst:.2e}, saturated better in {wins}/10 seeds")
    assert worst <= 1e-12
    assert wins >= 9


def test_4_consensus_oracle():
    rng = np.random.default_rng(4)
    worst_match = worst_sum = 0.0
    monotone = True
    for _ in range(100):
        n = int(rng.integers(2, 9))
        net = random_connected(rng, n, p=float(rng.uniform(0.1, 0.9)))
        eps = float(rng.uniform(0.05, 1.0)) / max(net.degrees)
        rounds = int(rng.integers(1, 16))
        X = rng.normal(scale=5.0, size=(n, 6))
        expected = np.array(laplacian_power_oracle(net.adjacency, eps, rounds)) @ X
        got = np.array(run_consensus(net, X.tolist(), ConsensusConfig(eps, rounds)))
        worst_match = max(worst_match, np.abs(got - expected).max())

        current = X.tolist()
        mean = X.mean(axis=0)
        spread = np.linalg.norm(X - mean, axis=1).max()
        for _ in range(rounds):
            nxt = consensus_round(net, current, eps)
            worst_sum = max(worst_sum, np.abs(np.sum(nxt, axis=0) - np.sum(current, axis=0)).max())
            new_spread = np.linalg.norm(np.array(nxt) - mean, axis=1).max()
            monotone &= new_spread <= spread + 1e-12
            current, spread = nxt, new_spread
    ok = worst_match <= 1e-10 and worst_sum <= 1e-10 and monotone
    report("4 consensus equals (I - eps Lap)^L", ok,
           f"match {worst_match:.1e}, sum drift {worst_sum:.1e}, non-increasing={monotone}")
    assert worst_match <= 1e-10
    assert worst_sum <= 1e-10
    assert monotone


def test_5_ncv_closed_form():
    cfg = ScenarioConfig()
    delta = cfg.delta
    model = build_ncv(delta)
    x = tuple(cfg.x0)
    p0, v0 = np.array(x[:3]), np.array(x[3:])
    worst = 0.0
    for k in range(1, 10_001):
        x = propagate(model, x, (0.0, 0.0, 0.0))
        worst = max(worst, np.abs(np.array(x[:3]) - (p0 + k * delta * v0)).max(), np.abs(np.array(x[3:]) - v0).max())
    rng = np.random.default_rng(5)
    semi = 0.0
    for d1, d2 in rng.uniform(1e-3, 5.0, size=(200, 2)):
        prod = np.array(build_ncv(d1).A) @ np.array(build_ncv(d2).A)
        semi = max(semi, np.abs(prod - np.array(build_ncv(d1 + d2).A)).max())
    ok = worst < 1e-10 and semi <= 1e-12
    report("5 NCV closed form and semigroup", ok, f"drift {worst:.1e}, semigroup {semi:.1e}")
    assert worst < 1e-10
    assert semi <= 1e-12


def test_6_observation_structure():
    rng = np.random.default_rng(6)
    worst = 0.0
    count = 0
    structure_ok = True
    for seed in range(30):
        n = int(rng.integers(2, 10))
        net = generate_erdos_renyi(n, float(rng.uniform(0.3, 1.0)), seed)
        for anchors in (sphere_anchors(n, 0.5), box_anchors(n, -10.0, 10.0, rng)):
            for s in build_sensors(anchors, net.neighbor_sets, 0.0):
                H = np.array(s.H)
                structure_ok &= H.shape == (len(net.neighbor_sets[s.id]), 6) and not H[:, 3:].any()
                diffs = np.array([np.subtract(anchors[j], anchors[s.id]) for j in net.neighbor_sets[s.id]])
                worst = max(worst, np.abs(H[:, :3] - diffs).max())
                count += 1
    for seed in range(10):
        cfg = ScenarioConfig(seed=seed)
        net, anchors = build_network(cfg), resolve_anchors(cfg)
        for s in build_sensors(anchors, net.neighbor_sets, 0.0):
            structure_ok &= len(s.H) == len(net.neighbor_sets[s.id])
            count += 1
    ok = structure_ok and worst <= 1e-14
    report("6 observation-matrix structure", ok, f"{count} matrices, max deviation {worst:.1e}")
    assert structure_ok
    assert worst <= 1e-14


def test_7_cli_determinism(tmp_path):
    outs = [tmp_path / "a", tmp_path / "b"]
    codes = [main(["simulate", "--out", str(o), "--set", "seed=17"]) for o in outs]
    names = ["truth.csv", "estimates.csv", "innovation.csv", "msee.csv", "msee_avg.csv"]
    same = all((outs[0] / f).read_bytes() == (outs[1] / f).read_bytes() for f in names)
    ok = codes == [0, 0] and same
    report("7 byte-identical CSVs across two CLI runs", ok)
    assert codes == [0, 0]
    assert same


def test_8_more_rounds_tighter_agreement():
    results = []
    for seed in range(5):
        fine = run(ScenarioConfig(seed=seed, L=10))
        coarse = run(ScenarioConfig(seed=seed, L=1))
        assert fine.truth == coarse.truth
        results.append(all(a <= b for a, b in zip(fine.spread_after, coarse.spread_after)))
    ok = all(results)
    report("8 spread(L=10) <= spread(L=1) at every k", ok, f"{sum(results)}/5 seeds")
    assert ok
