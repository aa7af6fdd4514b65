"""Complete non-singular fans, the data model for toric manifolds.

A fan is stored as its primitive ray generators and its maximal cones, each
maximal cone being a set of ``dim`` ray indices. Indices are 0-based in
Python; the JSON interchange format uses 1-based indices.

Completeness
------------
``is_complete`` does not compute the support of the fan. For a fan whose
cones meet properly and are simplicial and full-dimensional, the support is
all of ``R^n`` iff every wall (codimension-one face of a maximal cone) lies
in exactly two maximal cones sitting on opposite sides of the wall's
hyperplane and the maximal cones are connected through walls. Sketch: if the
support ``|F|`` were a proper closed subset, its topological boundary would
be a union of walls, and a generic boundary point lies in the relative
interior of a wall with a neighbourhood half outside ``|F|``, so that wall
belongs to one maximal cone only. Conversely if every wall is two-sided, the
union of the open maximal cones together with open walls is an open and
closed subset of ``R^n`` minus a codimension-two set, which is connected for
``n >= 2``; connectivity of the adjacency graph handles ``n = 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import gcd
from typing import Iterable, Sequence

from .simplicial import SimplicialComplex
from .zlattice import determinant, is_primitive, primitive_part, rational_inverse


class FanError(ValueError):
    pass


class FanParseError(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone: Sequence[int]) -> list[list[int]]:
        """Rows are the ray vectors of ``cone`` in the given order."""
        return [list(self.rays[i]) for i in cone]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [[i + 1 for i in c] for c in self.max_cones],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "Fan":
        if not isinstance(d, dict):
            raise FanParseError("fan must be a JSON object")
        for key in ("dim", "rays", "max_cones"):
            if key not in d:
                raise FanParseError(f"missing key {key!r}")
        dim = d["dim"]
        if not _is_int(dim) or dim < 0:
            raise FanParseError("'dim' must be a nonnegative integer")
        rays = d["rays"]
        if not isinstance(rays, list) or not all(isinstance(r, list) and all(_is_int(x) for x in r) for r in rays):
            raise FanParseError("'rays' must be a list of integer lists")
        for k, r in enumerate(rays):
            if len(r) != dim:
                raise FanParseError(f"ray {k + 1} has length {len(r)}, expected {dim}")
        cones = d["max_cones"]
        if not isinstance(cones, list) or not all(isinstance(c, list) and all(_is_int(x) for x in c) for c in cones):
            raise FanParseError("'max_cones' must be a list of integer lists")
        return cls(dim, tuple(map(tuple, rays)), tuple(tuple(i - 1 for i in c) for c in cones))

    @classmethod
    def from_json(cls, text: str) -> "Fan":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise FanParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
        return cls.from_dict(d)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass
class FanReport:
    valid: bool
    complete: bool
    smooth: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.valid and self.complete and self.smooth

    def to_dict(self) -> dict:
        return {"valid": self.valid, "complete": self.complete, "smooth": self.smooth, "violations": list(self.violations)}


# ---------------------------------------------------------------------------
# validity

def _fm_feasible(ineqs: list[tuple[list[Fraction], Fraction]], nvars: int) -> bool:
    """Fourier-Motzkin: is ``{x : a.x >= r for (a, r) in ineqs}`` nonempty?"""
    rows = _dedupe(ineqs)
    for k in range(nvars):
        pos = [(a, r) for a, r in rows if a[k] > 0]
        neg = [(a, r) for a, r in rows if a[k] < 0]
        new = [(a, r) for a, r in rows if a[k] == 0]
        for ap, rp in pos:
            for an, rn in neg:
                s, t = -an[k], ap[k]
                new.append(([s * x + t * y for x, y in zip(ap, an)], s * rp + t * rn))
        rows = _dedupe(new)
    return all(r <= 0 for _, r in rows)


def _dedupe(rows):
    seen = {}
    for a, r in rows:
        den = 1
        for x in a + [r]:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in a]
        ri = int(r * den)
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g == 0:
            # constant inequality 0 >= r; keep only violated ones
            if ri > 0:
                return [([Fraction(0)] * len(a), Fraction(1))]
            continue
        key = tuple(x // g for x in ints)
        rhs = Fraction(ri, g)
        if key not in seen or rhs > seen[key]:
            seen[key] = rhs
    return [([Fraction(x) for x in k], r) for k, r in seen.items()]


def cones_meet_properly(f: Fan, s: Sequence[int], t: Sequence[int]) -> bool:
    """Decide ``cone(s) & cone(t) == cone(s & t)`` for two full-dimensional simplicial cones."""
    shared = set(s) & set(t)
    outside = [i for i in s if i not in shared]
    if not outside:
        return True
    inv = rational_inverse([[f.rays[i][r] for i in s] for r in range(f.dim)])
    if inv is None:
        raise FanError("cone is not full-dimensional")
    # coordinates of x = sum b_j w_j in the basis of s: a = inv @ W @ b
    W = [[f.rays[j][r] for j in t] for r in range(f.dim)]
    M = [[sum(inv[i][r] * W[r][j] for r in range(f.dim)) for j in range(len(t))] for i in range(len(s))]
    nv = len(t)
    ineqs = [([Fraction(int(i == j)) for i in range(nv)], Fraction(0)) for j in range(nv)]
    ineqs += [(list(M[i]), Fraction(0)) for i in range(len(s))]
    g = [sum(M[i][j] for i in range(len(s)) if s[i] not in shared) for j in range(nv)]
    ineqs.append((g, Fraction(1)))
    return not _fm_feasible(ineqs, nv)


def validate_fan(f: Fan) -> FanReport:
    """Check the fan axioms, completeness and smoothness; never raises on bad data."""
    v = []
    n, m = f.dim, f.nrays
    for k, r in enumerate(f.rays):
        if len(r) != n:
            v.append(f"ray {k + 1}: length {len(r)} != dim {n}")
        elif not is_primitive(r):
            v.append(f"ray {k + 1}: {list(r)} is not primitive")
    seen = {}
    for k, r in enumerate(f.rays):
        if r in seen:
            v.append(f"rays {seen[r] + 1} and {k + 1} coincide")
        else:
            seen[r] = k
    good_cones = []
    for c, cone in enumerate(f.max_cones):
        bad = False
        if any(i < 0 or i >= m for i in cone):
            v.append(f"cone {c + 1}: ray index out of range")
            bad = True
        elif len(set(cone)) != len(cone):
            v.append(f"cone {c + 1}: repeated ray index")
            bad = True
        elif len(cone) != n:
            v.append(f"cone {c + 1}: has {len(cone)} rays, expected {n}")
            bad = True
        elif any(len(f.rays[i]) != n for i in cone):
            bad = True
        elif determinant(f.cone_matrix(cone)) == 0:
            v.append(f"cone {c + 1}: rays are linearly dependent")
            bad = True
        if not bad:
            good_cones.append(cone)
    dup = {}
    for c, cone in enumerate(f.max_cones):
        if cone in dup:
            v.append(f"cones {dup[cone] + 1} and {c + 1} coincide")
        else:
            dup[cone] = c
    used = {i for cone in f.max_cones for i in cone}
    for k in range(m):
        if k not in used:
            v.append(f"ray {k + 1}: not in any maximal cone")
    if not f.max_cones:
        v.append("fan has no maximal cones")
    idx = {cone: c for c, cone in enumerate(f.max_cones)}
    for s, t in combinations(sorted(set(good_cones), key=lambda c: idx[c]), 2):
        if not cones_meet_properly(f, s, t):
            v.append(f"cones {idx[s] + 1} and {idx[t] + 1} overlap improperly")
    valid = not v
    complete = smooth = False
    if valid:
        wall_problems = _wall_violations(f)
        complete = not wall_problems
        v.extend(wall_problems)
        bad = [c for c, cone in enumerate(f.max_cones) if determinant(f.cone_matrix(cone)) not in (1, -1)]
        smooth = not bad
        for c in bad:
            d = determinant(f.cone_matrix(f.max_cones[c]))
            v.append(f"cone {c + 1}: not smooth (|det| = {abs(d)})")
    return FanReport(valid, complete, smooth, v)


def _wall_violations(f: Fan) -> list[str]:
    n = f.dim
    if n == 0:
        return [] if len(f.max_cones) == 1 else ["point fan must have exactly one cone"]
    walls: dict[tuple, list[tuple[int, int]]] = {}
    for c, cone in enumerate(f.max_cones):
        for i in cone:
            wall = tuple(j for j in cone if j != i)
            walls.setdefault(wall, []).append((c, i))
    out = []
    adj = {c: set() for c in range(len(f.max_cones))}
    for wall, members in walls.items():
        label = "{" + ",".join(str(j + 1) for j in wall) + "}"
        if len(members) != 2:
            out.append(f"wall {label}: in {len(members)} maximal cone(s), expected 2")
            continue
        (c1, i1), (c2, i2) = members
        s1 = determinant(f.cone_matrix(wall + (i1,)))
        s2 = determinant(f.cone_matrix(wall + (i2,)))
        if (s1 > 0) == (s2 > 0):
            out.append(f"wall {label}: cones {c1 + 1} and {c2 + 1} lie on the same side")
        adj[c1].add(c2)
        adj[c2].add(c1)
    if f.max_cones:
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for d in adj[c] - seen:
                seen.add(d)
                stack.append(d)
        if len(seen) != len(f.max_cones):
            out.append("maximal cones are not connected through walls")
    return out


def is_complete(f: Fan) -> bool:
    return not _wall_violations(f)


def is_smooth(f: Fan) -> bool:
    return all(determinant(f.cone_matrix(c)) in (1, -1) for c in f.max_cones)


def underlying_complex(f: Fan) -> SimplicialComplex:
    return SimplicialComplex(f.nrays, f.max_cones)


# ---------------------------------------------------------------------------
# constructions

def product(f: Fan, g: Fan) -> Fan:
    n = f.dim + g.dim
    rays = [tuple(r) + (0,) * g.dim for r in f.rays] + [(0,) * f.dim + tuple(r) for r in g.rays]
    off = f.nrays
    cones = [a + tuple(j + off for j in b) for a in f.max_cones for b in g.max_cones]
    return Fan(n, tuple(rays), tuple(cones))


def point_fan() -> Fan:
    return Fan(0, (), ((),))


def stellar_subdivide(f: Fan, cone: Iterable[int]) -> Fan:
    """Insert the ray through the sum of ``cone``'s generators (0-based indices).

    For a smooth maximal cone this is the equivariant blow-up at the
    corresponding fixed point.
    """
    s = tuple(sorted(set(cone)))
    if not s:
        raise FanError("cannot subdivide the zero cone")
    if not any(set(s) <= set(c) for c in f.max_cones):
        raise FanError(f"{[i + 1 for i in s]} is not a face of the fan")
    total = [sum(f.rays[i][k] for i in s) for k in range(f.dim)]
    new = primitive_part(total)
    if new in f.rays:
        raise FanError("new ray coincides with an existing ray")
    m = f.nrays
    cones = []
    for c in f.max_cones:
        if set(s) <= set(c):
            for i in s:
                cones.append(tuple(j for j in c if j != i) + (m,))
        else:
            cones.append(c)
    return Fan(f.dim, f.rays + (new,), tuple(cones))


def projective_space(n: int) -> Fan:
    if n < 1:
        raise FanError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    return Fan(n, tuple(rays), tuple(combinations(range(n + 1), n)))


@dataclass(frozen=True)
class BottTowerData:
    """Stage fibre dimensions and twists of a generalized Bott tower.

    ``twists[j-1]`` belongs to stage ``j >= 1`` (0-based) and holds one
    integer vector of length ``j`` per fibre coordinate of that stage: the
    first Chern class of the corresponding line bundle in terms of the
    degree-two generators of stages ``0..j-1``.
    """

    stage_dims: tuple
    twists: tuple = ()

    def __post_init__(self):
        dims = tuple(int(d) for d in self.stage_dims)
        if not dims or any(d < 1 for d in dims):
            raise FanError("stage dimensions must be positive")
        tw = tuple(tuple(tuple(int(x) for x in vec) for vec in stage) for stage in self.twists)
        if not tw and len(dims) > 1:
            tw = tuple(tuple((0,) * j for _ in range(dims[j])) for j in range(1, len(dims)))
        if len(tw) != len(dims) - 1:
            raise FanError("need one twist block per stage after the first")
        for j, stage in enumerate(tw, start=1):
            if len(stage) != dims[j]:
                raise FanError(f"stage {j + 1}: expected {dims[j]} twist vectors")
            if any(len(vec) != j for vec in stage):
                raise FanError(f"stage {j + 1}: twist vectors must have length {j}")
        object.__setattr__(self, "stage_dims", dims)
        object.__setattr__(self, "twists", tw)


def bott_tower(data: BottTowerData) -> Fan:
    """Fan of a generalized Bott tower.

    Rays are ``e_1..e_N`` followed by one extra ray ``u_j`` per stage,
    ``u_j = -sum(stage j basis) + sum over later stages k of t^(k)_{i,j} e_{k,i}``.
    A maximal cone omits exactly one ray of every stage.
    """
    dims = data.stage_dims
    h = len(dims)
    N = sum(dims)
    starts = [sum(dims[:j]) for j in range(h)]
    rays = [tuple(int(i == k) for k in range(N)) for i in range(N)]
    for j in range(h):
        u = [0] * N
        for i in range(dims[j]):
            u[starts[j] + i] = -1
        for k in range(j + 1, h):
            for i in range(dims[k]):
                u[starts[k] + i] = data.twists[k - 1][i][j]
        rays.append(tuple(u))
    stage_rays = [list(range(starts[j], starts[j] + dims[j])) + [N + j] for j in range(h)]
    cones = []
    for drop in iproduct(*[range(len(r)) for r in stage_rays]):
        cone = []
        for j, d in enumerate(drop):
            cone.extend(r for k, r in enumerate(stage_rays[j]) if k != d)
        cones.append(tuple(sorted(cone)))
    return Fan(N, tuple(rays), tuple(sorted(cones)))


def hirzebruch(a: int) -> Fan:
    return bott_tower(BottTowerData((1, 1), (((a,),),)))


def cp2_times_cp1() -> Fan:
    return product(projective_space(2), projective_space(1))


def example_4_3_stage_one() -> Fan:
    """``CP^2 x CP^1`` blown up at the fixed point of its first maximal cone."""
    base = cp2_times_cp1()
    return stellar_subdivide(base, base.max_cones[0])


def example_4_3_triple() -> tuple[Fan, Fan, Fan]:
    """Double blow-ups of ``CP^2 x CP^1``, one per underlying-complex class."""
    from .isosearch import complexes_isomorphic

    y = example_4_3_stage_one()
    reps: list[Fan] = []
    for cone in y.max_cones:
        x = stellar_subdivide(y, cone)
        cx = underlying_complex(x)
        if not any(complexes_isomorphic(cx, underlying_complex(r)) is not None for r in reps):
            reps.append(x)
    if len(reps) != 3:
        raise FanError(f"expected three classes of double blow-ups, found {len(reps)}")
    return tuple(reps)
