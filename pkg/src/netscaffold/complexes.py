"""Vietoris-Rips flag complexes of weighted graphs, truncated at dimension 2.

Only vertices, edges and triangles are ever built: homology in degree 1
needs nothing above the 2-skeleton. A triangle enters the filtration at
the largest of its three edge weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Filtration, WeightedGraph

__all__ = ["Simplex", "FlagComplex2", "flag_complex_at", "complexes_along"]


@dataclass(frozen=True)
class Simplex:
    """Vertex tuple (ascending) plus the threshold at which it appears."""

    vertices: tuple[int, ...]
    filtration_value: Fraction

    def __post_init__(self) -> None:
        if list(self.vertices) != sorted(set(self.vertices)):
            raise ValueError(f"vertices not strictly ascending: {self.vertices}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class FlagComplex2:
    """2-skeleton of the flag complex of ``graph`` at threshold ``epsilon``.

    ``edge_ids`` index into ``graph.edges`` and are ordered by
    (weight, vertex pair); ``triangles`` are vertex triples ordered by
    (appearance value, vertex triple). All vertices of the graph are
    present regardless of epsilon.
    """

    epsilon: Fraction
    graph: WeightedGraph
    edge_ids: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    # pair -> position in edge_ids; filled in __post_init__
    _edge_pos: dict[tuple[int, int], int] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        for pos, eid in enumerate(self.edge_ids):
            u, v, _ = self.graph.edges[eid]
            self._edge_pos[(u, v)] = pos

    @property
    def n_vertices(self) -> int:
        return self.graph.n_vertices

    @property
    def n_edges(self) -> int:
        return len(self.edge_ids)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def edge_vertices(self, pos: int) -> tuple[int, int]:
        u, v, _ = self.graph.edges[self.edge_ids[pos]]
        return (u, v)

    def edge_weight(self, pos: int) -> Fraction:
        return self.graph.edges[self.edge_ids[pos]][2]

    def edge_position(self, u: int, v: int) -> int:
        """Position of edge {u,v} in this complex; KeyError if absent."""
        if u > v:
            u, v = v, u
        return self._edge_pos[(u, v)]

    def triangle_value(self, tri: tuple[int, int, int]) -> Fraction:
        u, v, w = tri
        return max(
            self.edge_weight(self.edge_position(u, v)),
            self.edge_weight(self.edge_position(u, w)),
            self.edge_weight(self.edge_position(v, w)),
        )

    def edge_simplices(self) -> tuple[Simplex, ...]:
        return tuple(
            Simplex(self.edge_vertices(p), self.edge_weight(p))
            for p in range(self.n_edges)
        )

    def triangle_simplices(self) -> tuple[Simplex, ...]:
        return tuple(Simplex(t, self.triangle_value(t)) for t in self.triangles)


def flag_complex_at(g: WeightedGraph, epsilon: Fraction) -> FlagComplex2:
    """2-truncated flag complex at threshold epsilon (edges with w <= epsilon)."""
    kept = [i for i, (_, _, w) in enumerate(g.edges) if w <= epsilon]
    # order: (weight, vertex pair)
    kept.sort(key=lambda i: (g.edges[i][2], g.edges[i][0], g.edges[i][1]))

    adj: list[set[int]] = [set() for _ in range(g.n_vertices)]
    wmap: dict[tuple[int, int], Fraction] = {}
    for i in kept:
        u, v, w = g.edges[i]
        adj[u].add(v)
        adj[v].add(u)
        wmap[(u, v)] = w

    tris: list[tuple[Fraction, tuple[int, int, int]]] = []
    for (u, v), w_uv in wmap.items():
        # common neighbors above v: each triangle found exactly once, u<v<t
        for t in sorted(adj[u] & adj[v]):
            if t <= v:
                continue
            fval = max(w_uv, wmap[(u, t)], wmap[(v, t)])
            tris.append((fval, (u, v, t)))
    tris.sort()

    return FlagComplex2(
        epsilon=epsilon,
        graph=g,
        edge_ids=tuple(kept),
        triangles=tuple(t for _, t in tris),
    )


def complexes_along(f: Filtration) -> list[FlagComplex2]:
    """One complex per filtration step, in step order."""
    return [flag_complex_at(f.source, eps) for eps in f.steps]
