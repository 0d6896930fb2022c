"""Property tests over random connected bipartite graphs."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bipspec.characterize import DRG_CHECKS, FAIL, PASS, GraphAnalysis, classify
from bipspec.graph_core import Graph, distance_matrices
from bipspec.invariants import invariant_violations
from bipspec.oracle import IntersectionArray, intersection_numbers


@st.composite
def connected_bipartite(draw, max_part=6):
    n1 = draw(st.integers(1, max_part))
    n2 = draw(st.integers(1, max_part))
    # random spanning tree alternating between the parts, then extra edges
    order = draw(st.permutations(range(n1 + n2)))
    left = [v for v in order if v < n1]
    right = [v for v in order if v >= n1]
    edges = {(left[0], right[0])}
    seen_l, seen_r = [left[0]], [right[0]]
    for v in left[1:]:
        edges.add((v, seen_r[draw(st.integers(0, len(seen_r) - 1))]))
        seen_l.append(v)
    for v in right[1:]:
        edges.add((seen_l[draw(st.integers(0, len(seen_l) - 1))], v))
        seen_r.append(v)
    extra = draw(st.lists(st.tuples(st.integers(0, n1 - 1), st.integers(n1, n1 + n2 - 1)), max_size=n1 * n2))
    edges.update(extra)
    return Graph.from_edges(n1 + n2, sorted(edges))


@settings(max_examples=60, deadline=None)
@given(connected_bipartite())
def test_invariants_hold(g):
    an = GraphAnalysis(g)
    assert list(invariant_violations(an, intersection_numbers(g))) == []


@settings(max_examples=60, deadline=None)
@given(connected_bipartite())
def test_drg_checks_agree_with_oracle(g):
    rep = classify(g)
    drg = isinstance(intersection_numbers(g), IntersectionArray)
    assert rep.distance_regular is drg
    for c in DRG_CHECKS:
        v = rep.checks[c].verdict
        assert v != (FAIL if drg else PASS), c


@settings(max_examples=40, deadline=None)
@given(connected_bipartite())
def test_distance_matrices_partition(g):
    dm = distance_matrices(g)
    total = sum(dm.matrices)
    assert np.array_equal(total, np.ones((g.n, g.n), dtype=total.dtype))
    # Hadamard products of distinct distance matrices vanish
    for i in range(len(dm.matrices)):
        for j in range(i):
            assert not (dm.matrices[i] * dm.matrices[j]).any()
    assert np.array_equal(dm.matrices[1], g.adjacency)
