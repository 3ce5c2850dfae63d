import math

import pytest

import prefpy


def test_graph_construction():
    g = prefpy.Graph(4, [(0, 1), (1, 2), (2, 0), (2, 2), (0, 1)])
    assert g.num_nodes == 4
    assert g.num_edges == 3
    assert g.neighbors(2) == [0, 1]
    assert g.has_edge(1, 2)
    with pytest.raises(IndexError):
        prefpy.Graph(2, [(0, 5)])


def test_generators_and_profile():
    g = prefpy.erdos_renyi(1000, 3500, seed=3)
    assert g.num_edges == 3500
    order = prefpy.hub_sequence(g)
    assert sorted(order) == list(range(1000))
    profile = prefpy.removal_profile(g, order)
    assert len(profile) == 1001
    assert profile[-1] == 0
    assert all(a >= b for a, b in zip(profile, profile[1:]))
    fit = prefpy.evaluate_sequence(g, order)
    assert 0 < fit["F"] < 1
    assert 0 < fit["q_c"] <= 1
    sf = prefpy.scale_free(2000, mean_degree=4.0, seed=2)
    assert abs(2 * sf.num_edges / 2000 - 4.0) < 0.4


def test_optimize_beats_hubs_on_small_graph():
    g = prefpy.erdos_renyi(300, 450, seed=5)
    hubs = prefpy.evaluate_sequence(g, prefpy.hub_sequence(g))
    best = prefpy.optimize(g, seed=1, epochs=200)
    assert sorted(best["order"]) == list(range(300))
    assert best["q_c"] <= hubs["q_c"]


def test_thresholds():
    assert prefpy.random_removal_threshold(7.0, 56.0) == pytest.approx(1 - 1 / 7)
    root = prefpy.hub_removal_threshold(2.5, 2)
    assert root is not None and 0 < root < 1


def test_simulate_and_localize_contains_source():
    g = prefpy.erdos_renyi(2000, 7000, seed=11)
    order = prefpy.hub_sequence(g)
    observers = order[:500]
    for seed in range(20):
        sample = prefpy.simulate(g, observers, directional=observers[:250], epsilon=0.1, seed=seed)
        assert sum(t is not None for t in sample["times"]) >= 200
        report = prefpy.localize(g, observers, sample["readout"], samples=2000, seed=seed)
        assert sample["source"] in report["primary"]
        assert set(report["candidates"]) <= set(report["primary"])
        assert report["phi"] == pytest.approx(len(report["candidates"]) / 2000)


def test_jordan_center_of_path():
    g = prefpy.path(7)
    assert prefpy.jordan_center(g, list(range(7)))[0] == 3


def test_evaluate_is_sound():
    g = prefpy.erdos_renyi(800, 2400, seed=2)
    rows = prefpy.evaluate(g, strategy="hubs", q=[0.25], rd=[0.0, 1.0], trials=20, samples=1000, jordan="rank")
    assert len(rows) == 2
    for row in rows:
        assert row["soundness"] == 1.0
        assert 0 < row["mean_phi"] <= 1
        assert math.isfinite(row["mean_phi_jordan"])
    assert rows[1]["mean_primary"] <= rows[0]["mean_primary"]


def test_invalid_arguments_raise_value_error():
    g = prefpy.path(5)
    with pytest.raises(ValueError):
        prefpy.simulate(g, [1], beta=1.5)
    with pytest.raises(ValueError):
        prefpy.evaluate_sequence(g, [0, 0, 1, 2, 3])
