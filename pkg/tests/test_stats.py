"""Vertex metrics, correlation helpers, and scaffold comparison."""

import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

from netscaffold.graph import make_graph
from netscaffold.scaffold import Scaffold
from netscaffold.stats import (
    KS_INCONCLUSIVE_P,
    VERTEX_METRICS,
    ComparisonReport,
    aggregate_comparisons,
    compare_scaffolds,
    graph_metrics,
    ks_two_sample,
    pearson,
    spearman,
)


def scaffold_from(edge_weights, n):
    return Scaffold(
        provenance="minimal",
        n_vertices=n,
        edge_weights=tuple(sorted(edge_weights)),
        beta1_profile=(),
    )


class TestBetweennessCloseness:
    def test_path_graph(self):
        g = make_graph(3, [(0, 1, 1), (1, 2, 1)])
        m = graph_metrics(g)
        assert m.betweenness.tolist() == [0.0, 1.0, 0.0]
        assert m.closeness == pytest.approx([2 / 3, 1.0, 2 / 3])

    def test_four_cycle_splits_pairs(self):
        g = make_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
        m = graph_metrics(g)
        assert m.betweenness.tolist() == [0.5, 0.5, 0.5, 0.5]
        assert m.closeness == pytest.approx([3 / 4] * 4)

    def test_direct_lengths_route_around_heavy_edge(self):
        g = make_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
        m = graph_metrics(g, length_mode="direct")
        assert m.betweenness.tolist() == [0.0, 1.0, 0.0]

    def test_inverse_lengths_prefer_heavy_edge(self):
        g = make_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
        m = graph_metrics(g, length_mode="inverse")
        assert m.betweenness.tolist() == [0.0, 0.0, 0.0]

    def test_scaffold_defaults_to_inverse(self):
        s = scaffold_from([(0, 1, Fraction(1)), (1, 2, Fraction(1)), (0, 2, Fraction(3))], 3)
        assert graph_metrics(s).betweenness.tolist() == [0.0, 0.0, 0.0]

    def test_isolated_vertex_gets_zero_closeness(self):
        g = make_graph(3, [(0, 1, 1)])
        m = graph_metrics(g)
        assert m.closeness[2] == 0.0

    def test_zero_weight_edge_rejected(self):
        g = make_graph(2, [(0, 1, 0)])
        with pytest.raises(ValueError, match="strictly positive"):
            graph_metrics(g, length_mode="direct")
        with pytest.raises(ValueError, match="strictly positive"):
            graph_metrics(g, length_mode="inverse")

    def test_unknown_length_mode_rejected(self):
        g = make_graph(2, [(0, 1, 1)])
        with pytest.raises(ValueError, match="length mode"):
            graph_metrics(g, length_mode="sideways")


class TestDegreeStrength:
    def test_counts_and_sums(self):
        g = make_graph(3, [(0, 1, Fraction(1, 2)), (0, 2, Fraction(3, 2))])
        m = graph_metrics(g)
        assert m.degree.tolist() == [2.0, 1.0, 1.0]
        assert m.strength.tolist() == [2.0, 0.5, 1.5]


class TestEigenvector:
    def test_matches_dense_eigensolver(self):
        rng = random.Random(5)
        edges = []
        for u in range(8):
            for v in range(u + 1, 8):
                if rng.random() < 0.5:
                    edges.append((u, v, Fraction(rng.randint(1, 5))))
        g = make_graph(8, edges)
        m = graph_metrics(g)
        a = np.zeros((8, 8))
        for u, v, w in g.edges:
            a[u, v] = a[v, u] = float(w)
        vals, vecs = np.linalg.eigh(a)
        lead = np.abs(vecs[:, int(np.argmax(vals))])
        assert m.eigenvector == pytest.approx(lead, abs=1e-8)

    def test_triangle_is_uniform(self):
        g = make_graph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
        m = graph_metrics(g)
        assert m.eigenvector == pytest.approx([1 / np.sqrt(3)] * 3)

    def test_empty_graph_is_zero(self):
        m = graph_metrics(make_graph(3, []))
        assert m.eigenvector.tolist() == [0.0, 0.0, 0.0]


class TestClustering:
    def test_unit_triangle(self):
        g = make_graph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
        assert graph_metrics(g).clustering.tolist() == [1.0, 1.0, 1.0]

    def test_weighted_triangle_geometric_mean(self):
        g = make_graph(3, [(0, 1, 4), (0, 2, 2), (1, 2, 1)])
        m = graph_metrics(g)
        assert m.clustering == pytest.approx([0.5, 0.5, 0.5])

    def test_path_has_no_triangles(self):
        g = make_graph(3, [(0, 1, 1), (1, 2, 1)])
        assert graph_metrics(g).clustering.tolist() == [0.0, 0.0, 0.0]


class TestCorrelations:
    @pytest.mark.parametrize("seed", range(5))
    def test_pearson_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        x, y = rng.normal(size=30), rng.normal(size=30)
        assert pearson(x, y) == pytest.approx(scipy.stats.pearsonr(x, y)[0])

    @pytest.mark.parametrize("seed", range(5))
    def test_spearman_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        x, y = rng.normal(size=30), rng.normal(size=30)
        assert spearman(x, y) == pytest.approx(scipy.stats.spearmanr(x, y)[0])

    def test_spearman_handles_ties_like_scipy(self):
        x = [1, 2, 2, 3, 3, 3]
        y = [5, 4, 4, 2, 2, 1]
        assert spearman(x, y) == pytest.approx(scipy.stats.spearmanr(x, y)[0])

    def test_undefined_cases_return_none(self):
        assert pearson([1.0], [2.0]) is None
        assert pearson([1, 1, 1], [1, 2, 3]) is None
        assert pearson([1, 2, 3], [5, 5, 5]) is None
        assert spearman([1.0], [2.0]) is None
        assert spearman([2, 2, 2], [1, 2, 3]) is None

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError):
            pearson([1, 2], [1, 2, 3])
        with pytest.raises(ValueError):
            spearman([1, 2], [1, 2, 3])


class TestKolmogorovSmirnov:
    @pytest.mark.parametrize("seed", range(5))
    def test_statistic_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=40)
        y = rng.normal(loc=0.5, size=35)
        d, p = ks_two_sample(x, y)
        ref = scipy.stats.ks_2samp(x, y)
        assert d == pytest.approx(ref.statistic, abs=1e-12)
        assert 0.0 <= p <= 1.0

    def test_p_matches_kolmogorov_series(self):
        # classical limit Q(lam) = 2 sum (-1)^(k-1) exp(-2 k^2 lam^2)
        rng = np.random.default_rng(1)
        x = rng.normal(size=200)
        y = rng.normal(loc=0.2, size=180)
        d, p = ks_two_sample(x, y)
        lam = np.sqrt(200 * 180 / 380) * d
        q = 2.0 * sum(
            (-1) ** (k - 1) * np.exp(-2.0 * k * k * lam * lam)
            for k in range(1, 101)
        )
        assert p == pytest.approx(q, abs=1e-10)
        # scipy's finite-n asymp refinement should land nearby
        ref = scipy.stats.ks_2samp(x, y, method="asymp")
        assert p == pytest.approx(ref.pvalue, abs=0.05)

    def test_identical_samples(self):
        x = [1.0, 2.0, 3.0, 4.0]
        d, p = ks_two_sample(x, x)
        assert d == 0.0
        assert p == 1.0

    def test_disjoint_samples(self):
        d, p = ks_two_sample([1, 2, 3, 4, 5] * 4, [10, 11, 12, 13, 14] * 4)
        assert d == 1.0
        assert p < KS_INCONCLUSIVE_P

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            ks_two_sample([], [1.0])


class TestCompareScaffolds:
    def make_pair(self):
        a = scaffold_from(
            [(0, 1, Fraction(2)), (1, 2, Fraction(1)), (2, 3, Fraction(1)),
             (0, 3, Fraction(1)), (0, 2, Fraction(3))],
            4,
        )
        b = scaffold_from(
            [(0, 1, Fraction(1)), (1, 2, Fraction(2)), (2, 3, Fraction(1)),
             (0, 3, Fraction(2))],
            4,
        )
        return a, b

    def test_report_structure(self):
        a, b = self.make_pair()
        rep = compare_scaffolds(a, b)
        for name in VERTEX_METRICS:
            stats = rep.metrics[name]["main"]
            assert set(stats) == {
                "pearson", "spearman", "ks_stat", "ks_p", "ks_inconclusive",
            }
            assert "a_vs_null_b" not in rep.metrics[name]
        assert rep.metrics["edge_weight"]["main"]["intersection"] is not None

    def test_nulls_add_crossed_baselines(self):
        a, b = self.make_pair()
        na = scaffold_from([(0, 1, Fraction(1)), (2, 3, Fraction(1))], 4)
        nb = scaffold_from([(0, 2, Fraction(1)), (1, 3, Fraction(1))], 4)
        rep = compare_scaffolds(a, b, nulls=(na, nb))
        for name in VERTEX_METRICS:
            assert set(rep.metrics[name]) == {"main", "a_vs_null_b", "b_vs_null_a"}

    def test_vertex_count_mismatch_rejected(self):
        a, _ = self.make_pair()
        c = scaffold_from([(0, 1, Fraction(1))], 2)
        with pytest.raises(ValueError, match="vertex set"):
            compare_scaffolds(a, c)
        with pytest.raises(ValueError, match="vertex set"):
            compare_scaffolds(a, a, nulls=(c, c))

    def test_tiny_edge_overlap_gives_none(self):
        a = scaffold_from([(0, 1, Fraction(1))], 4)
        b = scaffold_from([(2, 3, Fraction(1))], 4)
        rep = compare_scaffolds(a, b)
        assert rep.metrics["edge_weight"]["main"]["intersection"] is None
        assert rep.metrics["edge_weight"]["main"]["union_with_zeros"] is not None

    def test_json_serializable(self):
        import json

        a, b = self.make_pair()
        rep = compare_scaffolds(a, b)
        parsed = json.loads(rep.to_json())
        assert set(VERTEX_METRICS) <= set(parsed)


class TestAggregate:
    def test_means_and_fractions(self):
        a, b = TestCompareScaffolds().make_pair()
        reports = [compare_scaffolds(a, b), compare_scaffolds(b, a)]
        agg = aggregate_comparisons(reports)
        for name in VERTEX_METRICS:
            row = agg[name]["main"]
            assert row["n"] == 2
            assert 0.0 <= row["ks_inconclusive_fraction"] <= 1.0
            if row["mean_pearson"] is not None:
                assert -1.0 <= row["mean_pearson"] <= 1.0

    def test_none_metrics_are_skipped_not_averaged(self):
        # two 4-cycles: constant degree vectors, pearson undefined
        a = scaffold_from(
            [(0, 1, Fraction(1)), (1, 2, Fraction(2)), (2, 3, Fraction(1)),
             (0, 3, Fraction(2))],
            4,
        )
        agg = aggregate_comparisons([compare_scaffolds(a, a)])
        assert agg["degree"]["main"]["mean_pearson"] is None
        assert agg["degree"]["main"]["n"] == 1

    def test_empty_input_gives_empty_slots(self):
        agg = aggregate_comparisons([])
        assert all(agg[name] == {} for name in VERTEX_METRICS)
