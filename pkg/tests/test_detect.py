from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consensus_fdi.detect import (
    Status,
    cor2_check,
    cor3_check,
    detect_report,
    exact_detectable,
    greedy_observation_set,
    node_failure_detectable,
    prop1_check,
    prop2_check,
)
from consensus_fdi.digraph import Digraph, from_edge_list, in_cut, out_cut
from consensus_fdi.errors import MissingEdge
from consensus_fdi.paths import INF, distances_to, shortest_paths_subgraph

from conftest import bicycle, cycle, digraphs, star_into


@st.composite
def failure_instances(draw, max_n=8):
    g = draw(digraphs(min_n=2, max_n=max_n))
    edges = sorted(g.edges)
    fs = draw(st.lists(st.sampled_from(edges), unique=True, max_size=3)) if edges else []
    i = draw(st.integers(1, g.n))
    return g, fs, i


def test_example3_exact(ex3):
    assert exact_detectable(ex3, [(1, 2)], 1).distinguishable
    assert not exact_detectable(ex3, [(2, 4)], 1).distinguishable
    assert not exact_detectable(ex3, [], 1).distinguishable


def test_prop1_examples(ex3):
    assert prop1_check(ex3, [(1, 2)], 1).status is Status.NEGATIVE
    r = prop1_check(ex3, [(3, 1)], 1)
    assert r.positive and r.witness == (3, 1)
    assert prop1_check(ex3, [], 1).status is Status.NEGATIVE
    with pytest.raises(MissingEdge):
        prop1_check(ex3, [(4, 1)], 1)


@given(digraphs(min_n=2))
def test_prop1_in_edges_of_observer_always_positive(g):
    for i in g.vertices:
        for e in in_cut(g, {i}):
            assert prop1_check(g, [e], i).positive


def test_prop2_examples(ex3):
    r = prop2_check(ex3, [(1, 2)], 1)
    assert r.positive and r.witness[0] == 2
    assert prop2_check(ex3, [(2, 4)], 1).status is Status.NEGATIVE
    # whole in-cut of vertex 2 removed: nothing outside 2 stays a root
    assert prop2_check(ex3, in_cut(ex3, {2}), 1).status is Status.NEGATIVE
    mixed = prop2_check(ex3, [(1, 2), (1, 3)], 1)
    assert mixed.status is Status.NOT_APPLICABLE


def test_prop2_after_removal_witness_is_root(ex3):
    from consensus_fdi.paths import out_branching_roots, reachable_from
    from consensus_fdi.digraph import remove_edges

    k, o = prop2_check(ex3, [(1, 2)], 1).witness
    damaged = remove_edges(ex3, [(1, 2)])
    assert o in out_branching_roots(damaged) and o != k
    assert o in reachable_from(damaged, k)
    assert 3 in out_branching_roots(damaged)


def test_cor2_examples(ex3):
    assert cor2_check(bicycle(3))
    assert not cor2_check(cycle(3))
    assert not cor2_check(ex3)


def test_cor3_examples(ex3):
    g = bicycle(4)
    assert cor3_check(g, [(2, 1)], 1).positive
    r = cor3_check(ex3, [(1, 2)], 4)
    assert r.positive and r.witness == (1, 2)
    assert cor3_check(ex3, [(2, 3)], 4).status is Status.NEGATIVE
    assert cor3_check(ex3, [(1, 2)], 1).status is Status.NOT_APPLICABLE
    assert cor3_check(ex3, [(3, 1)], 1, strict=False).positive


def test_node_failure(ex2):
    r = node_failure_detectable(ex2[0], 4, 1)
    assert r.failure_set == {(2, 4), (3, 4)}
    assert not r.detectable
    assert node_failure_detectable(cycle(3), 2, 1).detectable
    lonely = from_edge_list(3, [(1, 2)])
    r = node_failure_detectable(lonely, 3, 1)
    assert r.failure_set == set() and not r.detectable
    with pytest.raises(ValueError):
        node_failure_detectable(ex2[0], 1, 1)


def test_detect_report_document(ex3):
    doc = detect_report(ex3, [(1, 2)], 1).to_dict()
    assert doc["detectable"] is True
    assert doc["prop2"]["status"] == "positive"
    assert doc["failure_set"] == [[1, 2]]


@settings(max_examples=300, deadline=None)
@given(failure_instances())
def test_sufficient_conditions_are_sound(inst):
    g, fs, i = inst
    report = detect_report(g, fs, i)
    for r in (report.prop1, report.prop2, report.cor3):
        if r.positive:
            assert report.detectable
    if cor3_check(g, fs, i, strict=False).positive:
        assert report.detectable


@settings(max_examples=200, deadline=None)
@given(failure_instances())
def test_cor3_restates_prop1(inst):
    g, fs, i = inst
    fs = [e for e in fs if e not in out_cut(g, {i})]
    c3 = cor3_check(g, fs, i)
    if c3.status is Status.NOT_APPLICABLE:
        return
    assert c3.positive == prop1_check(g, fs, i).positive


@settings(max_examples=60, deadline=None)
@given(digraphs(min_n=2, max_n=6))
def test_cor2_implies_every_single_edge_detectable(g):
    if not cor2_check(g):
        return
    for e in g.edges:
        for i in g.vertices:
            assert exact_detectable(g, [e], i).distinguishable


def test_greedy_star():
    plan = greedy_observation_set(star_into(6, 3))
    assert plan.observers == (3,) and plan.residual == set()


def test_greedy_edgeless():
    plan = greedy_observation_set(Digraph(4))
    assert plan.observers == () and plan.residual == set() and plan.iterations == 0


def _min_cover_size(g):
    cover = {v: shortest_paths_subgraph(g, v, strict=False).kept_edges for v in g.vertices}
    for size in range(0, g.n + 1):
        for combo in combinations(g.vertices, size):
            if set().union(*(cover[v] for v in combo)) == g.edges:
                return size
    return None


def test_greedy_example3_matches_brute_force(ex3):
    plan = greedy_observation_set(ex3)
    assert plan.observers == (4, 1, 2)
    assert set().union(*plan.covered) == ex3.edges
    assert len(plan.observers) == _min_cover_size(ex3) == 3
    literal = greedy_observation_set(ex3, literal=True)
    assert literal.residual == set() and literal.iterations <= ex3.n


@settings(max_examples=150, deadline=None)
@given(digraphs(min_n=1, max_n=8))
def test_greedy_plans_cover_and_terminate(g):
    for literal in (False, True):
        plan = greedy_observation_set(g, literal=literal)
        assert plan.iterations <= g.n
        assert len(set(plan.observers)) == len(plan.observers)
        covered = set().union(*plan.covered) if plan.covered else set()
        assert covered | plan.residual == g.edges
        assert not covered & plan.residual
        assert plan.residual == set()
    plan = greedy_observation_set(g)
    for o, edges in zip(plan.observers, plan.covered):
        for e in edges:
            assert cor3_check(g, [e], o, strict=False).positive


@settings(max_examples=100, deadline=None)
@given(digraphs(min_n=1, max_n=8))
def test_greedy_picks_descending_marginal_gain(g):
    plan = greedy_observation_set(g)
    gains = [len(c) for c in plan.covered]
    assert gains == sorted(gains, reverse=True)


def test_every_edge_in_its_heads_subgraph(ex3):
    for e in ex3.edges:
        d = distances_to(ex3, e.head)
        assert d[e.tail] == 1 and d[e.head] == 0
        assert e in shortest_paths_subgraph(ex3, e.head, strict=False).kept_edges
    assert INF not in (0, 1)
