import math

import numpy as np
import pytest

from bipspec.characterize import (
    CHECK_IDS,
    DRG_CHECKS,
    FAIL,
    NA,
    PASS,
    GraphAnalysis,
    average_distance_counts,
    average_excess,
    check_Ad_in_adjacency_algebra,
    check_biregular_hoffman,
    check_biregular_polynomial_P,
    check_biregular_spectral,
    check_condition_c,
    check_drg_bipartite,
    check_E_in_distance_algebra,
    check_regular,
    check_walk_regular,
    classify,
    common_neighbor_constant,
    int_matrix_power,
    spectral_excess_check,
    spectral_excess_check_bipartite,
)
from bipspec.errors import EmptyDistanceClass
from bipspec.graph_core import Graph, catalog, distance_matrices, parse_graph6

from conftest import DRG_ARRAYS, REGULAR_NON_DRG_G6, WITNESS_D_EQUALS_d

ALPHA_K23 = 5 / (2 * math.sqrt(6))


def an(g):
    return GraphAnalysis(g)


class TestRegularity:
    def test_c6(self):
        r = check_regular(catalog("cycle", [6]))
        assert r.verdict == PASS and r.lhs == pytest.approx(2) and r.rhs == pytest.approx(2)
        assert r.values["hoffman_matches_J"]

    def test_p4(self, p4):
        r = check_regular(p4)
        assert r.verdict == FAIL and r.lhs == 1.5
        assert r.rhs == pytest.approx((1 + math.sqrt(5)) / 2)
        assert not r.values["hoffman_matches_J"] and r.witness is not None

    def test_nonbipartite_regular(self):
        assert check_regular(catalog("petersen")).passed


class TestBiregularity:
    def test_prop31_k23(self, k23):
        r = check_biregular_spectral(k23)
        assert r.passed and r.rhs == pytest.approx(math.sqrt(6))
        assert sorted(r.values["degrees"]) == [2, 3]

    def test_prop31_p4(self, p4):
        r = check_biregular_spectral(p4)
        assert r.verdict == FAIL and r.lhs == pytest.approx(1.5)

    def test_thm32_alpha(self, k23):
        r = check_biregular_hoffman(k23)
        assert r.passed
        assert abs(r.values["alpha"] - ALPHA_K23) < 1e-9
        assert r.values["alpha_from_degrees"] == pytest.approx(ALPHA_K23, abs=1e-12)

    def test_thm32_p4_witness(self, p4):
        r = check_biregular_hoffman(p4)
        assert r.verdict == FAIL and r.witness["block"] in ("top", "bottom", "cross")

    def test_thm33(self, k23, c4, p4):
        r = check_biregular_polynomial_P(k23)
        assert r.passed and r.lhs == pytest.approx(math.sqrt(6))
        r = check_biregular_polynomial_P(c4)
        assert r.passed and r.lhs == pytest.approx(2.0)
        assert np.allclose(r.values["P_coeffs"], [0, 1])
        assert check_biregular_polynomial_P(p4).verdict == FAIL

    def test_not_bipartite(self):
        g = catalog("cycle", [5])
        for fn in (check_biregular_spectral, check_biregular_hoffman, check_biregular_polynomial_P):
            assert fn(g).verdict == NA


class TestDistanceAlgebra:
    def test_c4_e1_constants(self, c4):
        a = an(c4)
        r = check_E_in_distance_algebra(a.idem[1], a.dm)
        assert r.passed and np.allclose(r.values["q"], [0.5, 0.0, -0.5])

    def test_c4_e0(self, c4):
        a = an(c4)
        r = check_E_in_distance_algebra(a.idem[0], a.dm)
        assert r.passed and np.allclose(r.values["q"], 0.25)

    def test_corpus_non_drg_e1_fails(self):
        a = an(parse_graph6(REGULAR_NON_DRG_G6[WITNESS_D_EQUALS_d]))
        r = check_E_in_distance_algebra(a.idem[1], a.dm)
        assert r.verdict == FAIL and {"u", "v", "distance"} <= set(r.witness)

    @pytest.mark.parametrize("name,params", [("cycle", [6]), ("hypercube", [3])])
    def test_ad_in_algebra(self, name, params):
        a = an(catalog(name, params))
        r = check_Ad_in_adjacency_algebra(a.dm, a.idem, a.spectrum, a.ps, a.a)
        assert r.passed and r.values["A_d_in_algebra"] and r.values["A_d_equals_p_d"]

    def test_ad_fails_on_witness(self):
        a = an(parse_graph6(REGULAR_NON_DRG_G6[WITNESS_D_EQUALS_d]))
        r = check_Ad_in_adjacency_algebra(a.dm, a.idem, a.spectrum, a.ps, a.a)
        assert r.verdict == FAIL

    def test_ad_needs_d_equals_D(self):
        a = an(parse_graph6(REGULAR_NON_DRG_G6["K55-C10"]))
        assert check_Ad_in_adjacency_algebra(a.dm, a.idem, a.spectrum, a.ps, a.a).verdict == NA

    def test_condition_c(self, c4, k23):
        dm = distance_matrices(c4)
        r = check_condition_c(c4, dm, 2, 2)
        assert r.passed and r.values["a"] == 2
        assert check_condition_c(c4, dm, 0, 0).values["a"] == 1
        dm = distance_matrices(k23)
        for i in range(3):
            r = check_condition_c(k23, dm, i, i + 1)
            assert r.passed and r.values["a"] == 0

    def test_condition_c_fails_nonregular(self, k23):
        r = check_condition_c(k23, distance_matrices(k23), 0, 2)
        assert r.verdict == FAIL and r.witness["walks"] != r.witness["reference_walks"]


class TestBipartiteDRG:
    @pytest.mark.parametrize("name,params", [("hypercube", [3]), ("cycle", [8]), ("hypercube", [4])])
    def test_drg_pass(self, name, params):
        assert [r.verdict for r in check_drg_bipartite(an(catalog(name, params)))] == [PASS] * 3

    def test_witness_fails_all(self):
        rs = check_drg_bipartite(an(parse_graph6(REGULAR_NON_DRG_G6[WITNESS_D_EQUALS_d])))
        assert [r.verdict for r in rs] == [FAIL] * 3

    def test_hypotheses(self, p4):
        assert [r.verdict for r in check_drg_bipartite(an(p4))] == [NA] * 3
        assert [r.verdict for r in check_drg_bipartite(an(catalog("petersen")))] == [NA] * 3


class TestExcess:
    def test_averages(self, c4):
        assert average_excess(distance_matrices(c4)) == 1
        q3 = catalog("hypercube", [3])
        dm = distance_matrices(q3)
        assert average_excess(dm) == 1
        assert average_distance_counts(dm, 3, adjacency=q3.adjacency) == (1, 6)
        k2 = catalog("path", [2])
        assert average_distance_counts(distance_matrices(k2), 1, adjacency=k2.adjacency) == (1, 1)

    def test_empty_class(self, c4):
        with pytest.raises(EmptyDistanceClass):
            average_distance_counts(distance_matrices(c4), 3, adjacency=c4.adjacency)

    @pytest.mark.parametrize("name,params", [("cycle", [4]), ("hypercube", [3])])
    def test_set_pass(self, name, params):
        r = spectral_excess_check(an(catalog(name, params)))
        assert r.passed and r.values["avg_excess"] == pytest.approx(1) and r.values["spectral_excess"] == pytest.approx(1)

    def test_set_fails_below(self):
        r = spectral_excess_check(an(parse_graph6(REGULAR_NON_DRG_G6[WITNESS_D_EQUALS_d])))
        assert r.verdict == FAIL and r.witness["relation"] == "<"

    def test_set_d_greater_than_D(self):
        # tiny spectral excess with no vertex at distance d must not pass
        a = an(parse_graph6("M???AcsKdOGob?q??"))
        assert a.D < a.d
        r = spectral_excess_check(a)
        assert r.values["spectral_excess"] < 1e-6 and r.verdict == FAIL

    def test_set_na(self, p4):
        assert spectral_excess_check(an(p4)).verdict == NA

    def test_set_bipartite_c6(self):
        r = spectral_excess_check_bipartite(an(catalog("cycle", [6])))
        assert r.passed
        assert r.values["avg_walks"] == pytest.approx(1) and r.values["inv_omega"] == pytest.approx(1)
        assert r.values["avg_count"] == pytest.approx(2) and r.values["p_at_theta0"] == pytest.approx(2)

    def test_set_bipartite_q4(self):
        assert spectral_excess_check_bipartite(an(catalog("hypercube", [4]))).passed

    def test_set_bipartite_witness(self):
        r = spectral_excess_check_bipartite(an(parse_graph6(REGULAR_NON_DRG_G6[WITNESS_D_EQUALS_d])))
        assert r.verdict == FAIL


class TestWalkRegular:
    def test_transitive(self):
        assert check_walk_regular(an(catalog("cycle", [6]))).passed
        assert check_walk_regular(an(catalog("hypercube", [3]))).passed

    def test_p4(self, p4):
        assert check_walk_regular(an(p4)).verdict == FAIL

    def test_common_neighbors(self):
        g = catalog("hypercube", [4])
        assert common_neighbor_constant(g, distance_matrices(g)) == 2
        p = catalog("path", [5])
        assert common_neighbor_constant(p, distance_matrices(p)) == 1


class TestClassify:
    @pytest.mark.parametrize("key", sorted(DRG_ARRAYS))
    def test_drg(self, key):
        name, params, arr = DRG_ARRAYS[key]
        rep = classify(catalog(name, params))
        assert rep.distance_regular and rep.intersection_array == arr
        assert all(rep.checks[c].verdict in (PASS, NA) for c in CHECK_IDS)
        assert not rep.discrepancies

    def test_p4(self, p4):
        rep = classify(p4)
        assert rep.connected and rep.bipartite and not rep.regular and not rep.biregular
        assert rep.distance_regular is False and rep.oracle_distance_regular is False

    def test_k33_d_equals_D(self):
        rep = classify(catalog("complete_bipartite", [3, 3]))
        assert rep.distance_regular and rep.d == rep.diameter == 2

    @pytest.mark.parametrize("key", sorted(REGULAR_NON_DRG_G6))
    def test_regular_non_drg(self, key):
        rep = classify(parse_graph6(REGULAR_NON_DRG_G6[key]))
        assert rep.regular and rep.distance_regular is False and not rep.discrepancies
        assert all(rep.checks[c].verdict in (FAIL, NA) for c in DRG_CHECKS)

    def test_disconnected(self):
        rep = classify(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert not rep.connected and all(r.verdict == NA for r in rep.checks.values())

    def test_to_dict(self, c4):
        d = classify(c4).to_dict()
        assert "analysis" not in d and set(d["checks"]) == set(CHECK_IDS)


def test_int_matrix_power_overflow():
    g = catalog("complete", [40])
    p = int_matrix_power(g.adjacency, 14)
    assert p.dtype == object and p[0, 0] == (39 ** 14 + 39 * (-1) ** 14) // 40
