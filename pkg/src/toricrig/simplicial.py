"""Finite simplicial complexes given by their facets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices are ``0..vertex_count-1``; faces are the downward closure of ``facets``."""

    vertex_count: int
    facets: tuple = field(default=())

    def __post_init__(self):
        fs = sorted({tuple(sorted(set(int(v) for v in f))) for f in self.facets}, key=lambda t: (len(t), t))
        # drop non-maximal sets so the facet list is canonical
        maximal = [f for f in fs if not any(set(f) < set(g) for g in fs)]
        object.__setattr__(self, "facets", tuple(sorted(maximal)))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], vertex_count: int | None = None) -> "SimplicialComplex":
        facets = [tuple(f) for f in facets]
        if vertex_count is None:
            vertex_count = 1 + max((v for f in facets for v in f), default=-1)
        return cls(vertex_count, tuple(facets))

    @cached_property
    def faces(self) -> frozenset:
        out = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return frozenset(out)

    def is_face(self, s: Iterable[int]) -> bool:
        return tuple(sorted(set(s))) in self.faces

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def f_vector(self) -> tuple[int, ...]:
        """``(f_0, ..., f_{d})`` where ``f_i`` counts ``i``-simplices."""
        d = self.dimension
        counts = [0] * (d + 1)
        for s in self.faces:
            if s:
                counts[len(s) - 1] += 1
        return tuple(counts)

    def h_vector(self) -> tuple[int, ...]:
        d = self.dimension + 1
        f = (1,) + self.f_vector()
        return tuple(
            sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
        )

    def minimal_nonfaces(self) -> list[tuple[int, ...]]:
        faces = self.faces
        top = self.dimension + 2
        out = []
        for k in range(1, top + 1):
            for s in combinations(range(self.vertex_count), k):
                if s in faces:
                    continue
                if all(t in faces for t in combinations(s, k - 1)):
                    out.append(s)
        return out

    def vertex_degree(self, v: int) -> int:
        return sum(1 for f in self.facets if v in f)

    def neighbours(self, v: int) -> set[int]:
        return {w for f in self.facets if v in f for w in f if w != v}

    def link(self, s: Iterable[int]) -> "SimplicialComplex":
        s = set(s)
        fs = [tuple(v for v in f if v not in s) for f in self.facets if s <= set(f)]
        return SimplicialComplex(self.vertex_count, tuple(fs))

    def relabel(self, perm: dict[int, int] | list[int]) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, tuple(tuple(perm[v] for v in f) for f in self.facets))

    def to_dict(self) -> dict:
        return {"vertex_count": self.vertex_count, "facets": [[v + 1 for v in f] for f in self.facets]}

    @classmethod
    def from_dict(cls, d: dict) -> "SimplicialComplex":
        return cls(int(d["vertex_count"]), tuple(tuple(int(v) - 1 for v in f) for f in d["facets"]))


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the ``k``-simplex on ``k+1`` vertices."""
    return SimplicialComplex(k + 1, tuple(combinations(range(k + 1), k)))


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    off = a.vertex_count
    facets = tuple(fa + tuple(v + off for v in fb) for fa in a.facets for fb in b.facets)
    return SimplicialComplex(a.vertex_count + b.vertex_count, facets)


def polygon(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, tuple((i, (i + 1) % m) for i in range(m)))
