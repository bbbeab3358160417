from pathlib import Path

import pytest

from netmatch.densify import BUDGET_REACHED, EXHAUSTED, best_pair, densify
from netmatch.generators import GeneratorParams, generate_hk
from netmatch.graph import build_graph, clustering
from netmatch.io import load_edge_list
from netmatch.matching import dulmage_mendelsohn, unmatched_count
from oracles import brute_max_matching_size

STAR3 = [(0, 1), (0, 2), (0, 3)]
KARATE = Path(__file__).parent / "data" / "karate.txt"


def test_star_single_link(backend):
    g = build_graph(STAR3, 4)
    assert 4 - brute_max_matching_size(4, STAR3) == 2
    res = densify(g, 1)
    (step,) = res.steps
    assert step.added_edge == (1, 2)
    assert step.common_neighbor == 0
    assert (step.unmatched_before, step.unmatched_after) == (2, 0)
    assert 4 - brute_max_matching_size(4, STAR3 + [(1, 2)]) == 0
    assert res.status == BUDGET_REACHED


def test_triangle_is_exhausted():
    res = densify(build_graph([(0, 1), (1, 2), (0, 2)], 3), 5)
    assert res.links_added == 0 and res.status == EXHAUSTED


def test_zero_budget_is_noop():
    g = build_graph(STAR3, 4)
    res = densify(g, 0)
    assert res.graph == g and res.links_added == 0
    assert [c.links_added for c in res.checkpoints] == [0]


def test_best_pair_ranking():
    # 1 and 2 share neighbors 0 and 3; 1 and 4 share only 0
    adj = [{1, 2, 4}, {0, 3}, {0, 3}, {1, 2}, {0}]
    assert best_pair(adj, [1, 2, 4]) == (1, 2, 0, 2)
    assert best_pair(adj, [1]) is None
    # adjacent pairs are skipped
    assert best_pair([{1, 2}, {0, 2}, {0, 1}], [0, 1, 2]) is None


def check_run(g, res, budget):
    adjacency = [set(r) for r in g.adjacency]
    edges = g.edges()
    current = g
    prev_tri = clustering(g).triangle_count
    for step in res.steps:
        a, b = step.added_edge
        d = dulmage_mendelsohn(current)
        assert any(a in c and b in c for c in d.classes)
        assert b not in adjacency[a]
        w = step.common_neighbor
        assert w in adjacency[a] and w in adjacency[b]
        adjacency[a].add(b)
        adjacency[b].add(a)
        edges.append((a, b))
        current = build_graph(edges, g.n)
        report = clustering(current)
        assert report.triangle_count >= prev_tri + 1
        assert report.triangle_count == prev_tri + step.common_count
        prev_tri = report.triangle_count
        assert step.unmatched_after <= step.unmatched_before
        assert step.unmatched_after == unmatched_count(current)
        assert step.transitivity_after == pytest.approx(report.global_transitivity, abs=1e-15)
    assert res.graph == current
    assert res.graph.edge_count - g.edge_count == res.links_added <= budget


@pytest.mark.parametrize("seed", range(4))
def test_properties_on_sparse_hk(backend, seed):
    g = generate_hk(GeneratorParams(300, 2, p=0.5, seed=seed))
    res = densify(g, 15, checkpoint_every=5)
    check_run(g, res, 15)
    assert res.checkpoints[-1].unmatched < res.checkpoints[0].unmatched
    assert [c.links_added for c in res.checkpoints] == [0, 5, 10, 15]
    unmatched = [c.unmatched for c in res.checkpoints]
    assert unmatched == sorted(unmatched, reverse=True)


def test_repair_matches_full_recompute():
    g = generate_hk(GeneratorParams(400, 2, p=0.5, seed=7))
    a = densify(g, 20)
    b = densify(g, 20, full_recompute=True)
    assert a.steps == b.steps


def test_karate_trend():
    loaded = load_edge_list(KARATE)
    g = loaded.graph
    res = densify(g, 10)
    check_run(g, res, 10)
    first, last = res.checkpoints[0], res.checkpoints[-1]
    assert first.unmatched == 7
    assert last.unmatched < first.unmatched
    assert last.transitivity > first.transitivity


def test_final_checkpoint_added_when_off_grid():
    g = generate_hk(GeneratorParams(200, 2, p=0.5, seed=1))
    res = densify(g, 7, checkpoint_every=5)
    assert [c.links_added for c in res.checkpoints] == [0, 5, 7]


def test_invalid_arguments():
    g = build_graph(STAR3, 4)
    with pytest.raises(ValueError):
        densify(g, -1)
    with pytest.raises(ValueError):
        densify(g, 1, checkpoint_every=0)
