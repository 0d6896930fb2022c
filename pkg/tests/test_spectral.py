import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bipspec.errors import AmbiguousGrouping, BadPartition, NotSymmetric, SizeMismatch, ZeroVector
from bipspec.graph_core import Graph, bipartition, catalog
from bipspec.spectral import (
    EigenDecomposition,
    analyze_spectrum,
    check_interlacing,
    crossed_multiplicities,
    distinct_spectrum,
    eigen_symmetric,
    idempotents,
    quotient_matrix,
    rayleigh_quotient,
    snap_int,
    walk_count_spectral,
)

from conftest import lagrange_idempotents

S6 = math.sqrt(6)


def spectrum_of(g):
    e = eigen_symmetric(g.adjacency)
    return e, distinct_spectrum(e)


class TestEigenSolver:
    def test_c4(self, c4):
        e = eigen_symmetric(c4.adjacency)
        assert np.allclose(e.eigenvalues, [2, 0, 0, -2], atol=1e-12)

    def test_p4_cosines(self, p4):
        e = eigen_symmetric(p4.adjacency)
        expected = [2 * math.cos(k * math.pi / 5) for k in range(1, 5)]
        assert np.allclose(e.eigenvalues, expected, atol=1e-12)

    def test_cycle_circulant(self):
        n = 9
        e = eigen_symmetric(catalog("cycle", [n]).adjacency)
        expected = sorted((2 * math.cos(2 * math.pi * k / n) for k in range(n)), reverse=True)
        assert np.allclose(e.eigenvalues, expected, atol=1e-11)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            eigen_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_not_square(self):
        with pytest.raises(NotSymmetric):
            eigen_symmetric(np.zeros((2, 3)))

    def test_large_path_uses_indexed_updates(self):
        g = catalog("path", [60])
        e = eigen_symmetric(g.adjacency)
        expected = [2 * math.cos(k * math.pi / 61) for k in range(1, 61)]
        assert np.allclose(e.eigenvalues, expected, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(arrays(np.float64, (7, 7), elements=st.floats(-5, 5, allow_nan=False)))
    def test_decomposition_property(self, m):
        m = (m + m.T) / 2
        e = eigen_symmetric(m)
        v, lam = e.eigenvectors, e.eigenvalues
        scale = max(1.0, float(np.abs(m).max()))
        assert np.all(np.diff(lam) <= 1e-12)
        assert np.abs(v.T @ v - np.eye(7)).max() < 1e-10
        assert np.abs(v @ np.diag(lam) @ v.T - m).max() < 1e-9 * scale
        # trusted library only as a test oracle
        assert np.allclose(lam, np.linalg.eigvalsh(m)[::-1], atol=1e-9 * scale)


class TestDistinctSpectrum:
    def test_c4(self, c4):
        _, s = spectrum_of(c4)
        assert np.allclose(s.thetas, [2, 0, -2], atol=1e-12)
        assert s.mults == (1, 2, 1)

    def test_k23(self, k23):
        _, s = spectrum_of(k23)
        assert np.allclose(s.thetas, [S6, 0, -S6], atol=1e-12)
        assert s.mults == (1, 3, 1)
        assert s.is_symmetric(1e-9)

    def test_ambiguous(self):
        tol = 1e-7
        lam = np.array([1.0, 1.0 - tol, 1.0 - 2 * tol, 0.0])
        e = EigenDecomposition(lam, np.eye(4))
        with pytest.raises(AmbiguousGrouping):
            distinct_spectrum(e)

    def test_well_separated_cluster_merges(self):
        lam = np.array([1.0, 1.0 - 1e-12, 0.0, -1.0])
        s = distinct_spectrum(EigenDecomposition(lam, np.eye(4)))
        assert s.mults == (2, 1, 1)


class TestIdempotents:
    def test_c4_crossed(self, c4):
        e, s = spectrum_of(c4)
        idem = idempotents(e, s)
        # cycle order 0-1-2-3-0: 0,1 adjacent and 0,2 antipodal
        assert np.allclose(crossed_multiplicities(idem, 0, 0), [0.25, 0.5, 0.25], atol=1e-12)
        assert np.allclose(crossed_multiplicities(idem, 0, 1), [0.25, 0.0, -0.25], atol=1e-12)
        assert np.allclose(crossed_multiplicities(idem, 0, 2), [0.25, -0.5, 0.25], atol=1e-12)

    def test_c4_walks(self, c4):
        e, s = spectrum_of(c4)
        cm = crossed_multiplicities(idempotents(e, s), 0, 0)
        assert walk_count_spectral(s, cm, 2) == pytest.approx(2.0, abs=1e-12)
        with pytest.raises(ValueError):
            walk_count_spectral(s, cm, -1)

    @pytest.mark.parametrize("name,params", [("cycle", [6]), ("hypercube", [3]), ("heawood", []),
                                             ("complete_bipartite", [2, 3]), ("path", [5]), ("petersen", [])])
    def test_matches_lagrange_route(self, name, params):
        g = catalog(name, params)
        e, s = spectrum_of(g)
        idem = idempotents(e, s)
        ref = lagrange_idempotents(g.adjacency.astype(float), s.thetas)
        assert np.abs(idem.matrices - ref).max() < 1e-9

    def test_local_multiplicities_sum(self):
        sd = analyze_spectrum(catalog("path", [5]))
        lm = sd.idempotents.local_multiplicities()
        assert np.allclose(lm.sum(axis=0), 1.0)
        assert np.allclose(lm.sum(axis=1), sd.spectrum.mults)


class TestQuotientAndInterlacing:
    def test_k23_quotient(self, k23):
        b = bipartition(k23)
        big = b.part1 if b.n1 == 3 else b.part2
        small = b.part2 if b.n1 == 3 else b.part1
        q = quotient_matrix(k23, [small, big]).as_array()
        assert q.tolist() == [[0, 3], [2, 0]]
        assert np.allclose(sorted(np.linalg.eigvals(q).real), [-S6, S6])

    def test_k23_tight(self, k23):
        lam = eigen_symmetric(k23.adjacency).eigenvalues
        rep = check_interlacing(lam, [S6, -S6])
        assert rep.interlaces and rep.tight

    def test_p4_not_tight(self, p4):
        lam = eigen_symmetric(p4.adjacency).eigenvalues
        rep = check_interlacing(lam, [1.5, -1.5])
        assert rep.interlaces and not rep.tight

    def test_violation(self, p4):
        lam = eigen_symmetric(p4.adjacency).eigenvalues
        rep = check_interlacing(lam, [1.7, -1.5])
        assert not rep.interlaces and rep.violations[0][0] == 0

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            check_interlacing([1, 0], [1, 0])

    @pytest.mark.parametrize("cells", [[[0, 1], [2]], [[0, 1, 2, 3, 4], []], [[0, 0, 1, 2, 3, 4]]])
    def test_bad_partition(self, k23, cells):
        with pytest.raises(BadPartition):
            quotient_matrix(k23, cells)

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_interlacing_random_partitions(self, data):
        g = catalog("heawood")
        labels = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
        cells = [[v for v in range(g.n) if labels[v] == c] for c in range(4)]
        cells = [c for c in cells if c]
        if len(cells) < 2:
            return
        lam = eigen_symmetric(g.adjacency).eigenvalues
        mu = np.sort(np.linalg.eigvals(quotient_matrix(g, cells).as_array()).real)[::-1]
        assert check_interlacing(lam, mu).interlaces


class TestRayleigh:
    def test_k23_biregular_vector(self, k23):
        b = bipartition(k23)
        d1 = k23.degrees[b.part1[0]]
        d2 = k23.degrees[b.part2[0]]
        x = np.zeros(5)
        x[list(b.part1)] = math.sqrt(d1)
        x[list(b.part2)] = math.sqrt(d2)
        assert rayleigh_quotient(k23, x) == pytest.approx(S6, abs=1e-12)

    def test_zero_vector(self, k23):
        with pytest.raises(ZeroVector):
            rayleigh_quotient(k23, np.zeros(5))


def test_snap_int():
    assert snap_int(2.0000000001) == 2 and isinstance(snap_int(2.0000000001), int)
    assert snap_int(2.1) == 2.1
    assert snap_int(-3 + 1e-9) == -3


def test_empty_graph_spectrum():
    sd = analyze_spectrum(Graph.from_edges(3, []))
    assert sd.spectrum.mults == (3,)
