"""Topology source tests: the two random generators and GraphML loading."""

import warnings
from pathlib import Path

import numpy as np
import pytest

from netresil import generate_ba, generate_ba_classic, generate_er, load_graphml
from netresil.graph import connected_components

DATA = Path(__file__).parent / "data"


# ----------------------------------------------------------------- ER model


def test_er_extreme_probabilities():
    empty = generate_er(10, 0.0, seed=1)
    assert empty.m == 0
    full = generate_er(10, 1.0, seed=1)
    assert full.m == 45


def test_er_is_seed_deterministic():
    assert generate_er(30, 0.3, seed=7) == generate_er(30, 0.3, seed=7)
    assert generate_er(30, 0.3, seed=7) != generate_er(30, 0.3, seed=8)


def test_er_mean_edge_count():
    # 435 candidate pairs at p = 0.2: mean 87, std of the mean over
    # 100 seeds is about 0.83, so 3 is a generous three-sigma band
    counts = [generate_er(30, 0.2, seed=s).m for s in range(100)]
    assert abs(float(np.mean(counts)) - 87.0) < 3.0


def test_er_rejects_bad_arguments():
    with pytest.raises(ValueError):
        generate_er(1, 0.5)
    with pytest.raises(ValueError):
        generate_er(10, 1.5)


# ----------------------------------------------------------------- BA model


def test_ba_edge_count_formula():
    # seed clique plus m edges per later arrival
    assert generate_ba(10, 3, seed=0).m == 6 + 6 * 3
    assert generate_ba(100, 5, seed=0).m == 15 + 94 * 5
    assert generate_ba(4, 3, seed=0).m == 6  # degenerate: just the clique


def test_ba_is_connected_and_deterministic():
    topo = generate_ba(60, 4, seed=3)
    assert connected_components(topo).largest_size == 60
    assert topo == generate_ba(60, 4, seed=3)
    assert topo != generate_ba(60, 4, seed=4)


def test_ba_minimum_degree_is_m():
    topo = generate_ba(50, 3, seed=9)
    assert min(topo.degrees().values()) == 3


def test_ba_grows_heavy_hubs():
    for seed in range(20):
        degrees = sorted(generate_ba(100, 5, seed=seed).degrees().values())
        median = degrees[50]
        assert degrees[-1] >= 5 * median


def test_ba_rejects_bad_arguments():
    with pytest.raises(ValueError):
        generate_ba(5, 0)
    with pytest.raises(ValueError):
        generate_ba(5, 5)
    with pytest.raises(ValueError):
        generate_ba_classic(5, 5)


def test_ba_classic_variant():
    topo = generate_ba_classic(100, 5, seed=1)
    assert topo.n == 100
    assert topo.m == 95 * 5
    assert connected_components(topo).largest_size == 100
    assert topo == generate_ba_classic(100, 5, seed=1)


# ------------------------------------------------------------------ GraphML


def test_load_reference_topology_cleanly():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        topo = load_graphml(DATA / "Geant2012.graphml")
    assert topo.n == 40
    assert topo.m == 61
    assert connected_components(topo).largest_size == 40
    assert sum(topo.degrees().values()) == 122


def test_load_messy_file_warns_and_cleans():
    with pytest.warns(UserWarning, match="self-loop"):
        with pytest.warns(UserWarning, match="parallel"):
            topo = load_graphml(DATA / "messy.graphml")
    assert topo.nodes == (0, 1, 2, 3)
    assert topo.sorted_edges() == [(0, 1), (1, 2), (2, 3)]


def test_load_missing_file_raises():
    with pytest.raises(FileNotFoundError):
        load_graphml(DATA / "no_such_file.graphml")


def test_load_malformed_file_raises(tmp_path):
    bad = tmp_path / "broken.graphml"
    bad.write_text("<graphml><graph><node id=")
    with pytest.raises(ValueError, match="cannot parse"):
        load_graphml(bad)
