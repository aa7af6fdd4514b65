"""Equivalence deciders: fans, simplicial complexes and cohomology rings.

Fan and complex isomorphism are decided exactly. Ring isomorphism is a
bounded search: every degree-two matrix with entries in ``[-bound, bound]``
is a candidate, so an empty answer only means "none found up to bound".

The ring search prunes with top-degree integrals. The cohomology ring of a
toric manifold is generated in degree two and satisfies Poincare duality, so
a unimodular degree-two map ``phi`` extends to a ring isomorphism iff
``int phi(x_{i_1}) ... phi(x_{i_n}) = eps * int x_{i_1} ... x_{i_n}`` for a
fixed sign ``eps``. Survivors are still re-verified against every relation
of the source ring, degree by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import numpy as np

from .cohomology import CohClass, GradedRing, ordinary_cohomology, total_chern, total_pontrjagin
from .fan import Fan, underlying_complex
from .simplicial import SimplicialComplex
from .zlattice import (
    IntMatrix,
    determinant,
    elementary_divisors,
    integer_kernel,
    integer_section,
    rational_inverse,
)


# ---------------------------------------------------------------------------
# fans

def fan_isomorphisms(f: Fan, g: Fan):
    """Yield every unimodular matrix carrying the cones of ``f`` onto those of ``g``."""
    if f.dim != g.dim or f.nrays != g.nrays or len(f.max_cones) != len(g.max_cones):
        return
    n = f.dim
    if n == 0:
        yield IntMatrix.identity(0)
        return
    sigma = f.max_cones[0]
    Bf = [[f.rays[i][r] for i in sigma] for r in range(n)]
    inv = rational_inverse(Bf)
    if inv is None:
        return
    g_rays = {r: i for i, r in enumerate(g.rays)}
    g_cones = set(g.max_cones)
    seen = set()
    for tau in g.max_cones:
        for perm in permutations(tau):
            Bg = [[g.rays[i][r] for i in perm] for r in range(n)]
            phi = [[sum(Bg[r][k] * inv[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
            if any(isinstance(x, Fraction) and x.denominator != 1 for row in phi for x in row):
                continue
            phi = [[int(x) for x in row] for row in phi]
            if determinant(phi) not in (1, -1):
                continue
            key = tuple(map(tuple, phi))
            if key in seen:
                continue
            seen.add(key)
            pi = _ray_map(phi, f, g_rays)
            if pi is None:
                continue
            if {tuple(sorted(pi[i] for i in c)) for c in f.max_cones} != g_cones:
                continue
            yield IntMatrix.from_rows(phi, n)


def _ray_map(phi, f: Fan, g_rays: dict) -> list[int] | None:
    out = []
    for v in f.rays:
        w = tuple(sum(a * b for a, b in zip(row, v)) for row in phi)
        j = g_rays.get(w)
        if j is None:
            return None
        out.append(j)
    return out


def fans_isomorphic(f: Fan, g: Fan) -> IntMatrix | None:
    return next(fan_isomorphisms(f, g), None)


# ---------------------------------------------------------------------------
# simplicial complexes

def _vertex_invariant(s: SimplicialComplex, v: int):
    sizes = sorted(len(f) for f in s.facets if v in f)
    return (len(sizes), tuple(sizes), len(s.neighbours(v)))


def complex_isomorphisms(s: SimplicialComplex, t: SimplicialComplex):
    """Yield vertex bijections (as lists ``perm[v_s] = v_t``) mapping facets onto facets."""
    if s.vertex_count != t.vertex_count or len(s.facets) != len(t.facets):
        return
    if sorted(map(len, s.facets)) != sorted(map(len, t.facets)):
        return
    m = s.vertex_count
    inv_s = [_vertex_invariant(s, v) for v in range(m)]
    inv_t = [_vertex_invariant(t, v) for v in range(m)]
    if sorted(inv_s) != sorted(inv_t):
        return
    t_facets = set(t.facets)
    # order: connected growth from the most constrained vertex
    order: list[int] = []
    remaining = set(range(m))
    while remaining:
        frontier = [v for v in remaining if any(w in order for w in s.neighbours(v))]
        pool = frontier or list(remaining)
        v = min(pool, key=lambda v: (-inv_s[v][0], v))
        order.append(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple]] = [[] for _ in range(m)]
    for f in s.facets:
        if f:
            closing[max(pos[v] for v in f)].append(f)
    s_nb = [s.neighbours(v) for v in range(m)]
    t_nb = [t.neighbours(v) for v in range(m)]
    perm = [-1] * m
    used = [False] * m

    def extend(i):
        if i == m:
            yield list(perm)
            return
        v = order[i]
        for w in range(m):
            if used[w] or inv_t[w] != inv_s[v]:
                continue
            ok = True
            for u in s_nb[v]:
                if perm[u] >= 0 and perm[u] not in t_nb[w]:
                    ok = False
                    break
            if not ok:
                continue
            perm[v] = w
            used[w] = True
            if all(tuple(sorted(perm[x] for x in f)) in t_facets for f in closing[i]):
                yield from extend(i + 1)
            perm[v] = -1
            used[w] = False

    yield from extend(0)


def complexes_isomorphic(s: SimplicialComplex, t: SimplicialComplex) -> list[int] | None:
    return next(complex_isomorphisms(s, t), None)


def complex_automorphisms(s: SimplicialComplex) -> list[list[int]]:
    return list(complex_isomorphisms(s, s))


# ---------------------------------------------------------------------------
# rings

@dataclass(frozen=True)
class RingMap:
    """Degree-two part of a graded ring map; column ``j`` is the image of ``x_j``."""

    matrix: IntMatrix

    def to_list(self) -> list[list[int]]:
        return self.matrix.tolist()


class _SymData:
    """Sym^k of the degree-two basis mapped into a ring, for every k."""

    def __init__(self, R: GradedRing):
        self.b = R.rank(1)
        self.monos = [list(combinations_with_replacement(range(self.b), k)) for k in range(R.n + 1)]
        basis = R.basis(2)
        self.classes: list[list[CohClass]] = [[R.one()]]
        for k in range(1, R.n + 1):
            prev = {mo: c for mo, c in zip(self.monos[k - 1], self.classes[k - 1])}
            self.classes.append([R.cup(prev[mo[:-1]], basis[mo[-1]]) for mo in self.monos[k]])
        self.E = [[[c.coords[r] for c in cls] for r in range(R.rank(k))] for k, cls in enumerate(self.classes)]
        self.kernel = [integer_kernel(E, len(self.monos[k])) for k, E in enumerate(self.E)]
        try:
            self.section = [integer_section(E, len(self.monos[k])) for k, E in enumerate(self.E)]
        except ValueError:
            raise ValueError("ring is not generated in degree two") from None


def _sym(R: GradedRing) -> _SymData:
    data = R.__dict__.get("_sym_data")
    if data is None:
        data = _SymData(R)
        R.__dict__["_sym_data"] = data
    return data


def _image_classes(M: IntMatrix, R: GradedRing, S: GradedRing) -> list[list[CohClass]]:
    """Images of the Sym^k monomials of R under the degree-two map ``M``."""
    sym = _sym(R)
    gens = [CohClass(2, M.column(j)) for j in range(sym.b)]
    out = [[S.one()]]
    for k in range(1, R.n + 1):
        prev = {mo: c for mo, c in zip(sym.monos[k - 1], out[k - 1])}
        out.append([S.cup(prev[mo[:-1]], gens[mo[-1]]) for mo in sym.monos[k]])
    return out


def verify_ring_map(M: IntMatrix, R: GradedRing, S: GradedRing) -> bool:
    """True iff ``M`` extends to a graded ring isomorphism ``R -> S``."""
    if R.n != S.n or R.ranks != S.ranks:
        return False
    b = R.rank(1)
    if M.shape != (b, b) or determinant(M.rows) not in (1, -1):
        return False
    sym = _sym(R)
    images = _image_classes(M, R, S)
    for k in range(2, R.n + 1):
        for rel in sym.kernel[k]:
            acc = [0] * S.rank(k)
            for c, img in zip(rel, images[k]):
                if c:
                    acc = [a + c * x for a, x in zip(acc, img.coords)]
            if any(acc):
                return False
    return True


def apply_ring_map(M: IntMatrix, R: GradedRing, S: GradedRing, cls: CohClass) -> CohClass:
    k = cls.degree // 2
    sym = _sym(R)
    images = _image_classes(M, R, S)
    # preimage in Sym^k, then push forward
    z = [sum(cls.coords[t] * sym.section[k][t][j] for t in range(len(cls.coords))) for j in range(len(sym.monos[k]))]
    acc = [0] * S.rank(k)
    for c, img in zip(z, images[k]):
        if c:
            acc = [a + c * x for a, x in zip(acc, img.coords)]
    return CohClass(cls.degree, tuple(acc))


def _pairing_divisors(R: GradedRing) -> list[list[int]]:
    out = []
    for k in range(R.n + 1):
        A = [[R.integrate(R.cup(a, b)) for b in R.basis(2 * (R.n - k))] for a in R.basis(2 * k)]
        out.append(elementary_divisors(A) if A and A[0] else [])
    return out


def _dense_form(R: GradedRing, dtype) -> np.ndarray:
    b, n = R.rank(1), R.n
    T = np.zeros((b,) * n, dtype=dtype)
    for idx, val in R.top_form.items():
        for p in set(permutations(idx)):
            T[p] = val
    return T


def _eval_form(T: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Evaluate the symmetric form ``T`` on each row ``w`` of ``W``: ``T(w, ..., w)``."""
    K, b = W.shape
    d = T.ndim
    if d == 0:
        return np.full(K, T[()], dtype=T.dtype)
    R = W @ T.reshape(b, -1)
    for _ in range(d - 1):
        R = np.einsum("kij,ki->kj", R.reshape(K, b, -1), W)
    return R.reshape(K)


def _contract(T: np.ndarray, vecs) -> np.ndarray:
    for v in vecs:
        T = np.tensordot(v, T, axes=([0], [0]))
    return T


def ring_isomorphisms(R: GradedRing, S: GradedRing, bound: int = 3) -> list[RingMap]:
    """All ring isomorphisms ``R -> S`` whose degree-two matrix has entries in ``[-bound, bound]``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if R.n != S.n or R.ranks != S.ranks:
        return []
    n, b = R.n, R.rank(1)
    if n == 0 or b == 0:
        return [RingMap(IntMatrix.identity(b))]
    if _pairing_divisors(R) != _pairing_divisors(S):
        return []
    FX = R.top_form
    big = max([abs(v) for v in S.top_form.values()] + [1])
    dtype = np.int64 if (bound ** n) * big * (b ** n) < 2 ** 60 else object
    TY = _dense_form(S, dtype)
    box = np.array(list(itertools.product(range(-bound, bound + 1), repeat=b)), dtype=dtype)
    box = box[np.any(box != 0, axis=1)]
    if len(box) == 0:
        return []
    pure = _eval_form(TY, box)
    found = []
    for eps in (1, -1):
        cols: list[np.ndarray] = []

        def search(j):
            if j == b:
                M = IntMatrix.from_columns([tuple(int(x) for x in c) for c in cols], b)
                if determinant(M.rows) in (1, -1) and verify_ring_map(M, R, S):
                    found.append(M)
                return
            cand = box[pure == eps * FX[(j,) * n]]
            for d in range(n - 1, 0, -1):
                if len(cand) == 0:
                    break
                for others in combinations_with_replacement(range(j), n - d):
                    key = tuple(sorted(others + (j,) * d))
                    T = _contract(TY, [cols[i] for i in others])
                    vals = _eval_form(T, cand)
                    cand = cand[vals == eps * FX[key]]
                    if len(cand) == 0:
                        break
            for w in cand:
                cols.append(w)
                search(j + 1)
                cols.pop()

        search(0)
    found = sorted(set(found), key=lambda M: M.rows)
    return [RingMap(M) for M in found]


def induced_ring_map(f: Fan, g: Fan, phi: IntMatrix, R: GradedRing | None = None, S: GradedRing | None = None) -> RingMap:
    """Ring map ``H*(f) -> H*(g)`` sending ``mu_i`` to ``mu_{pi(i)}`` where ``phi v_i = w_{pi(i)}``."""
    if R is None:
        R = ordinary_cohomology(f)
    if S is None:
        S = ordinary_cohomology(g)
    pi = _ray_map(phi.rows, f, {r: i for i, r in enumerate(g.rays)})
    if pi is None or len(set(pi)) != len(pi):
        raise ValueError("matrix does not induce a ray bijection")
    cols = []
    for x in R.basis(2):
        lift = R.lift(x)  # polynomial in mu's of degree one
        img = S.zero(2)
        for mono, c in lift.items():
            img = img + S.mu(pi[mono[0]]).scale(c)
        cols.append(img.coords)
    M = IntMatrix.from_columns(cols, S.rank(1))
    if not verify_ring_map(M, R, S):
        raise RuntimeError("induced map failed verification")
    return RingMap(M)


def preserves_pontrjagin(rmap: RingMap, R: GradedRing, S: GradedRing) -> bool:
    src = total_pontrjagin(R.fan, R)
    dst = total_pontrjagin(S.fan, S)
    return all(apply_ring_map(rmap.matrix, R, S, p) == q for p, q in zip(src, dst))


def preserves_chern(rmap: RingMap, R: GradedRing, S: GradedRing) -> bool:
    src = total_chern(R.fan, R)
    dst = total_chern(S.fan, S)
    return all(apply_ring_map(rmap.matrix, R, S, c) == d for c, d in zip(src, dst))


# ---------------------------------------------------------------------------
# family classification

@dataclass
class ClassificationReport:
    members: list
    fan_iso_classes: list
    complex_iso_classes: list
    ring_iso_classes: list
    pairs: list
    pontrjagin_flags: dict
    rigidity_witnesses: list
    search_bound: int
    exhaustive: dict = field(default_factory=lambda: {"fan": True, "complex": True, "ring": False})
    fan_refines_ring: bool = True

    def to_dict(self) -> dict:
        return {
            "members": self.members,
            "fan_iso_classes": self.fan_iso_classes,
            "complex_iso_classes": self.complex_iso_classes,
            "ring_iso_classes": self.ring_iso_classes,
            "pairs": self.pairs,
            "pontrjagin_flags": self.pontrjagin_flags,
            "rigidity_witnesses": self.rigidity_witnesses,
            "search_bound": self.search_bound,
            "exhaustive": self.exhaustive,
            "fan_refines_ring": self.fan_refines_ring,
            "rigidity_verdict": self.rigidity_verdict,
        }

    @property
    def rigidity_verdict(self) -> str:
        if self.rigidity_witnesses:
            return "rigidity counterexample found"
        return "no counterexample found in corpus"


def _partition(ids: list, related) -> list[list]:
    parent = list(range(len(ids)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in related:
        ri, rj = root(i), root(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list] = {}
    for i in range(len(ids)):
        groups.setdefault(root(i), []).append(ids[i])
    return [groups[k] for k in sorted(groups)]


def _status(flags: list[bool]) -> str:
    if not flags:
        return "no isomorphism found"
    if all(flags):
        return "all preserve"
    if any(flags):
        return "some preserve"
    return "none found preserve"


MAX_WITNESSES = 20


def classify_family(fans: list[Fan], bound: int = 3, ids: list[str] | None = None) -> ClassificationReport:
    """Pairwise fan, complex and bounded ring classification of a family."""
    if ids is None:
        ids = [f"fan{i + 1}" for i in range(len(fans))]
    rings = [ordinary_cohomology(f) for f in fans]
    complexes = [underlying_complex(f) for f in fans]
    fan_rel, cx_rel, ring_rel = [], [], []
    pairs, flags, witnesses = [], {}, []
    refines = True
    for i, j in itertools.combinations(range(len(fans)), 2):
        phi = fans_isomorphic(fans[i], fans[j])
        cx = complexes_isomorphic(complexes[i], complexes[j])
        maps = ring_isomorphisms(rings[i], rings[j], bound)
        entry = {
            "a": ids[i],
            "b": ids[j],
            "fan_isomorphic": phi is not None,
            "fan_isomorphism": phi.tolist() if phi is not None else None,
            "complex_isomorphic": cx is not None,
        }
        if phi is not None:
            fan_rel.append((i, j))
            induced = induced_ring_map(fans[i], fans[j], phi, rings[i], rings[j])
            entry["induced_map"] = induced.to_list()
            entry["induced_preserves_p"] = preserves_pontrjagin(induced, rings[i], rings[j])
            entry["induced_preserves_c"] = preserves_chern(induced, rings[i], rings[j])
            within = max(abs(x) for row in induced.to_list() for x in row) <= bound
            if within and induced not in maps:
                refines = False
        if cx is not None:
            cx_rel.append((i, j))
        p_flags = [preserves_pontrjagin(m, rings[i], rings[j]) for m in maps]
        c_flags = [preserves_chern(m, rings[i], rings[j]) for m in maps]
        entry.update(
            {
                "ring_isomorphic": bool(maps) or phi is not None,
                "ring_isomorphisms_found": len(maps),
                "witnesses": [m.to_list() for m in maps[:MAX_WITNESSES]],
                "pontrjagin": _status(p_flags),
                "chern": _status(c_flags),
            }
        )
        if maps or phi is not None:
            ring_rel.append((i, j))
            flags[f"{ids[i]}|{ids[j]}"] = {
                "some_preserve_p": any(p_flags) or bool(entry.get("induced_preserves_p")),
                "all_found_preserve_p": all(p_flags),
                "some_preserve_c": any(c_flags) or bool(entry.get("induced_preserves_c")),
                "all_found_preserve_c": all(c_flags),
            }
            if cx is None:
                witnesses.append([ids[i], ids[j]])
        pairs.append(entry)
    return ClassificationReport(
        members=list(ids),
        fan_iso_classes=_partition(ids, fan_rel),
        complex_iso_classes=_partition(ids, cx_rel),
        ring_iso_classes=_partition(ids, ring_rel),
        pairs=pairs,
        pontrjagin_flags=flags,
        rigidity_witnesses=witnesses,
        search_bound=bound,
        fan_refines_ring=refines,
    )
