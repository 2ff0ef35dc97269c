"""Node and edge statistics of scaffolds, and scaffold comparison.

Shortest-path metrics run on exact rational lengths so equal-length
paths are recognized exactly; only the final summaries become floats.
Correlations return None instead of NaN when an input vector is
constant, and those pairs are excluded from aggregate means.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import distributions, rankdata

from .graph import WeightedGraph
from .scaffold import Scaffold

__all__ = [
    "MetricReport",
    "graph_metrics",
    "pearson",
    "spearman",
    "ks_two_sample",
    "ComparisonReport",
    "compare_scaffolds",
    "aggregate_comparisons",
]

VERTEX_METRICS = (
    "degree",
    "strength",
    "betweenness",
    "closeness",
    "eigenvector",
    "clustering",
)

KS_INCONCLUSIVE_P = 0.05


@dataclass(frozen=True)
class MetricReport:
    n_vertices: int
    degree: np.ndarray
    strength: np.ndarray
    betweenness: np.ndarray
    closeness: np.ndarray
    eigenvector: np.ndarray
    clustering: np.ndarray
    edge_weights: dict

    def vector(self, name: str) -> np.ndarray:
        if name not in VERTEX_METRICS:
            raise KeyError(name)
        return getattr(self, name)


def _edge_view(obj: Scaffold | WeightedGraph) -> tuple[int, list[tuple[int, int, Fraction]]]:
    if isinstance(obj, Scaffold):
        return obj.n_vertices, list(obj.edge_weights)
    if isinstance(obj, WeightedGraph):
        return obj.n_vertices, list(obj.edges)
    raise TypeError(f"expected Scaffold or WeightedGraph, got {type(obj).__name__}")


def _lengths(
    edges: list[tuple[int, int, Fraction]], mode: str
) -> list[tuple[int, int, Fraction]]:
    if mode not in ("direct", "inverse"):
        raise ValueError(f"unknown length mode {mode!r}")
    out = []
    for u, v, w in edges:
        if w == 0:
            # zero-length edges make shortest-path counts ill-defined
            raise ValueError("path metrics need strictly positive weights")
        out.append((u, v, w if mode == "direct" else Fraction(1) / w))
    return out


def _sssp(
    adj: list[list[tuple[int, Fraction]]], n: int, s: int
) -> tuple[list[Fraction | None], list[int], list[list[int]], list[int]]:
    """Dijkstra with path counting; exact lengths make ties exact."""
    dist: list[Fraction | None] = [None] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[s] = Fraction(0)
    sigma[s] = 1
    settled = [False] * n
    order: list[int] = []
    heap: list[tuple[Fraction, int]] = [(Fraction(0), s)]
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        settled[u] = True
        order.append(u)
        for v, w in adj[u]:
            nd = d + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and not settled[v]:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return dist, sigma, preds, order


def _betweenness_closeness(
    n: int, edges: list[tuple[int, int, Fraction]]
) -> tuple[np.ndarray, np.ndarray]:
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    bet = [Fraction(0)] * n
    clo = np.zeros(n)
    for s in range(n):
        dist, sigma, preds, order = _sssp(adj, n, s)
        total = Fraction(0)
        reached = 0
        for v in order:
            if v != s:
                total += dist[v]  # type: ignore[operator]
                reached += 1
        if reached > 0 and total > 0:
            clo[s] = float(Fraction(n - 1) / total)
        delta = [Fraction(0)] * n
        for v in reversed(order):
            for u in preds[v]:
                delta[u] += Fraction(sigma[u], sigma[v]) * (1 + delta[v])
            if v != s:
                bet[v] += delta[v]
        # undirected: every pair is counted from both endpoints
    return np.array([float(b / 2) for b in bet]), clo


def _eigenvector(n: int, edges: list[tuple[int, int, Fraction]]) -> np.ndarray:
    if not edges:
        return np.zeros(n)
    a = np.zeros((n, n))
    for u, v, w in edges:
        a[u, v] = a[v, u] = float(w)
    # shift keeps the leading eigenvector but kills sign oscillation
    m = a + np.eye(n) * float(np.max(np.abs(a)))
    x = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(10000):
        y = m @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return np.zeros(n)
        y /= norm
        if float(np.max(np.abs(y - x))) < 1e-10:
            x = y
            break
        x = y
    if x[int(np.argmax(np.abs(x)))] < 0:
        x = -x
    return np.clip(x, 0.0, None)


def _clustering(n: int, edges: list[tuple[int, int, Fraction]]) -> np.ndarray:
    if not edges:
        return np.zeros(n)
    w_max = max(w for _, _, w in edges)
    nbrs: list[dict[int, float]] = [{} for _ in range(n)]
    for u, v, w in edges:
        hat = float(w / w_max)
        nbrs[u][v] = hat
        nbrs[v][u] = hat
    out = np.zeros(n)
    for u in range(n):
        ns = sorted(nbrs[u])
        k = len(ns)
        if k < 2:
            continue
        acc = 0.0
        for i in range(k):
            for j in range(i + 1, k):
                v, t = ns[i], ns[j]
                w_vt = nbrs[v].get(t)
                if w_vt is not None:
                    acc += (nbrs[u][v] * nbrs[u][t] * w_vt) ** (1.0 / 3.0)
        out[u] = 2.0 * acc / (k * (k - 1))
    return out


def graph_metrics(
    obj: Scaffold | WeightedGraph, length_mode: str | None = None
) -> MetricReport:
    """Standard node metrics plus the edge-weight map.

    length_mode controls how weights become path lengths for
    betweenness and closeness: "inverse" (1/w, scaffold weights are
    affinities; the default for scaffolds) or "direct" (weights are
    lengths; the default for plain graphs). Degree, strength,
    eigenvector and clustering always use the weights as affinities.
    """
    n, edges = _edge_view(obj)
    if length_mode is None:
        length_mode = "inverse" if isinstance(obj, Scaffold) else "direct"
    degree = np.zeros(n)
    strength = np.zeros(n)
    for u, v, w in edges:
        degree[u] += 1
        degree[v] += 1
        strength[u] += float(w)
        strength[v] += float(w)
    bet, clo = _betweenness_closeness(n, _lengths(edges, length_mode))
    return MetricReport(
        n_vertices=n,
        degree=degree,
        strength=strength,
        betweenness=bet,
        closeness=clo,
        eigenvector=_eigenvector(n, edges),
        clustering=_clustering(n, edges),
        edge_weights={(u, v): float(w) for u, v, w in edges},
    )


def pearson(x, y) -> float | None:
    """Pearson r, or None when undefined (short or constant input)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("length mismatch")
    if x.size < 2 or float(np.std(x)) == 0.0 or float(np.std(y)) == 0.0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def spearman(x, y) -> float | None:
    """Rank correlation via Pearson on midranks; None when undefined."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("length mismatch")
    if x.size < 2:
        return None
    return pearson(rankdata(x), rankdata(y))


def ks_two_sample(x, y) -> tuple[float, float]:
    """Two-sample KS statistic and asymptotic p-value.

    D is the exact sup-distance of the empirical CDFs; the p-value uses
    the Kolmogorov limiting distribution at sqrt(nx*ny/(nx+ny)) * D.
    """
    x = np.sort(np.asarray(x, dtype=float))
    y = np.sort(np.asarray(y, dtype=float))
    nx, ny = x.size, y.size
    if nx == 0 or ny == 0:
        raise ValueError("KS needs nonempty samples")
    grid = np.concatenate([x, y])
    cdf_x = np.searchsorted(x, grid, side="right") / nx
    cdf_y = np.searchsorted(y, grid, side="right") / ny
    d = float(np.max(np.abs(cdf_x - cdf_y)))
    n_eff = nx * ny / (nx + ny)
    p = float(distributions.kstwobign.sf(math.sqrt(n_eff) * d))
    return d, min(max(p, 0.0), 1.0)


def _pair_stats(x, y) -> dict:
    d, p = ks_two_sample(x, y)
    return {
        "pearson": pearson(x, y),
        "spearman": spearman(x, y),
        "ks_stat": d,
        "ks_p": p,
        "ks_inconclusive": p > KS_INCONCLUSIVE_P,
    }


@dataclass(frozen=True)
class ComparisonReport:
    """Per-metric agreement between two scaffolds, with optional
    crossed-null baselines."""

    metrics: dict

    def to_json(self) -> str:
        return json.dumps(self.metrics, indent=2, default=_json_default)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def compare_scaffolds(
    a: Scaffold,
    b: Scaffold,
    nulls: tuple[Scaffold, Scaffold] | None = None,
    length_mode: str = "inverse",
) -> ComparisonReport:
    """Metric-by-metric agreement between scaffolds a and b.

    nulls, when given, are null-model counterparts (null_a built like
    a, null_b built like b); baselines cross them: a against null_b and
    b against null_a, so each real scaffold is measured against the
    other's structureless twin. Edge weights are compared on the common
    support, with a union-with-zeros variant as a secondary view.
    """
    if a.n_vertices != b.n_vertices:
        raise ValueError("scaffolds live on different vertex sets")
    ma = graph_metrics(a, length_mode)
    mb = graph_metrics(b, length_mode)
    mnulls = None
    if nulls is not None:
        if any(x.n_vertices != a.n_vertices for x in nulls):
            raise ValueError("nulls live on a different vertex set")
        mnulls = (graph_metrics(nulls[0], length_mode), graph_metrics(nulls[1], length_mode))

    out: dict = {}
    for name in VERTEX_METRICS:
        entry = {"main": _pair_stats(ma.vector(name), mb.vector(name))}
        if mnulls is not None:
            entry["a_vs_null_b"] = _pair_stats(ma.vector(name), mnulls[1].vector(name))
            entry["b_vs_null_a"] = _pair_stats(mb.vector(name), mnulls[0].vector(name))
        out[name] = entry

    def edge_entry(wa: dict, wb: dict) -> dict:
        common = sorted(set(wa) & set(wb))
        union = sorted(set(wa) | set(wb))
        entry: dict = {}
        if len(common) >= 2:
            xa = [wa[e] for e in common]
            xb = [wb[e] for e in common]
            entry["intersection"] = _pair_stats(xa, xb)
        else:
            entry["intersection"] = None
        if len(union) >= 2:
            xa = [wa.get(e, 0.0) for e in union]
            xb = [wb.get(e, 0.0) for e in union]
            entry["union_with_zeros"] = _pair_stats(xa, xb)
        else:
            entry["union_with_zeros"] = None
        return entry

    out["edge_weight"] = {"main": edge_entry(ma.edge_weights, mb.edge_weights)}
    if mnulls is not None:
        out["edge_weight"]["a_vs_null_b"] = edge_entry(
            ma.edge_weights, mnulls[1].edge_weights
        )
        out["edge_weight"]["b_vs_null_a"] = edge_entry(
            mb.edge_weights, mnulls[0].edge_weights
        )
    return ComparisonReport(metrics=out)


def aggregate_comparisons(reports: list[ComparisonReport]) -> dict:
    """Means over reports per metric and slot, skipping undefined values.

    For each vertex metric and each of main / a_vs_null_b / b_vs_null_a:
    mean pearson, mean spearman (None-aware) and the fraction of runs
    whose KS test was inconclusive.
    """
    out: dict = {}
    slots = ("main", "a_vs_null_b", "b_vs_null_a")
    for name in VERTEX_METRICS:
        out[name] = {}
        for slot in slots:
            rows = [
                r.metrics[name][slot]
                for r in reports
                if slot in r.metrics.get(name, {})
            ]
            if not rows:
                continue
            pear = [r["pearson"] for r in rows if r["pearson"] is not None]
            spear = [r["spearman"] for r in rows if r["spearman"] is not None]
            out[name][slot] = {
                "mean_pearson": sum(pear) / len(pear) if pear else None,
                "mean_spearman": sum(spear) / len(spear) if spear else None,
                "ks_inconclusive_fraction": sum(
                    1 for r in rows if r["ks_inconclusive"]
                )
                / len(rows),
                "n": len(rows),
            }
    return out
