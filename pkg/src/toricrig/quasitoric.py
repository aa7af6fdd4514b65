"""Characteristic functions on simple polytopes.

A simple polytope ``P`` is represented by its dual simplicial sphere: vertex
``i`` of the complex is facet ``P_i`` and each facet of the complex is a vertex
of ``P``. Values ``lambda(P_i)`` are kept with their signs; functions that
differ by ``v_i -> -v_i`` are counted separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fan import Fan, underlying_complex, validate_fan
from .isosearch import complex_automorphisms
from .simplicial import SimplicialComplex
from .zlattice import determinant, is_primitive, unimodular_inverse


@dataclass(frozen=True)
class CharacteristicFunction:
    complex: SimplicialComplex
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(tuple(int(x) for x in v) for v in self.values))

    @property
    def dim(self) -> int:
        return len(self.values[0]) if self.values else 0

    def to_dict(self) -> dict:
        return {"complex": self.complex.to_dict(), "values": [list(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict) -> "CharacteristicFunction":
        return cls(SimplicialComplex.from_dict(d["complex"]), tuple(tuple(v) for v in d["values"]))


def is_characteristic(c: CharacteristicFunction) -> bool:
    """Primitive values, and a lattice basis at every vertex of the polytope."""
    n = c.dim
    if len(c.values) != c.complex.vertex_count:
        raise ValueError("need one value per facet of the polytope")
    if any(len(v) != n for v in c.values):
        raise ValueError("values have inconsistent dimension")
    if not all(is_primitive(v) for v in c.values):
        return False
    for face in c.complex.facets:
        if len(face) != n:
            raise ValueError(f"vertex {face} of the polytope has {len(face)} facets, expected {n}")
        if determinant([c.values[i] for i in face]) not in (1, -1):
            return False
    return True


def from_fan(f: Fan) -> CharacteristicFunction:
    return CharacteristicFunction(underlying_complex(f), f.rays)


def assemble_fan(c: CharacteristicFunction) -> Fan:
    return Fan(c.dim, c.values, c.complex.facets)


def is_toric_realizable(c: CharacteristicFunction) -> bool:
    """Do the cones spanned by the values over each face form a complete smooth fan?"""
    if len(set(c.values)) != len(c.values):
        return False
    rep = validate_fan(assemble_fan(c))
    return rep.valid and rep.complete and rep.smooth


@dataclass
class OrbitReport:
    total_valid: int
    orbits_under_gl: int
    orbits_under_gl_and_aut: int
    bound: int
    representatives: list = field(default_factory=list)
    gl_representatives: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_valid": self.total_valid,
            "orbits_under_gl": self.orbits_under_gl,
            "orbits_under_gl_and_aut": self.orbits_under_gl_and_aut,
            "bound": self.bound,
            "sign_changes_quotiented": False,
            "representatives": [r.to_dict() for r in self.representatives],
        }


def gl_normal_form(complex_: SimplicialComplex, values) -> tuple:
    """Transform ``values`` so the first facet's vertices carry the standard basis."""
    base = complex_.facets[0]
    B = [[values[i][r] for i in base] for r in range(len(base))]  # columns = values
    g = unimodular_inverse(B)
    return tuple(tuple(sum(g[r][k] * v[k] for k in range(len(v))) for r in range(len(g))) for v in values)


def _valid_assignments(s: SimplicialComplex, n: int, bound: int):
    box = [v for v in itertools.product(range(-bound, bound + 1), repeat=n) if is_primitive(v)]
    m = s.vertex_count
    closing = [[] for _ in range(m)]
    for f in s.facets:
        closing[max(f)].append(f)
    vals: list = [None] * m

    def extend(i):
        if i == m:
            yield tuple(vals)
            return
        for v in box:
            vals[i] = v
            if all(determinant([vals[j] for j in f]) in (1, -1) for f in closing[i]):
                yield from extend(i + 1)
        vals[i] = None

    yield from extend(0)


def enumerate_characteristic(s: SimplicialComplex, n: int, bound: int) -> OrbitReport:
    """Count characteristic functions with entries in ``[-bound, bound]`` and their orbits.

    Orbits are taken under simultaneous ``GL(n, Z)`` action and then under the
    automorphisms of the complex; both counts are restricted to the box.
    """
    if not s.is_pure() or s.dimension != n - 1:
        raise ValueError(f"complex must be pure of dimension {n - 1}")
    autos = complex_automorphisms(s)
    total = 0
    gl_forms: dict[tuple, tuple] = {}
    for vals in _valid_assignments(s, n, bound):
        total += 1
        nf = gl_normal_form(s, vals)
        gl_forms.setdefault(nf, vals)
    orbit_reps: dict[tuple, tuple] = {}
    for nf, vals in sorted(gl_forms.items()):
        # lambda o alpha^{-1}: facet alpha(i) receives lambda(i)
        key = min(gl_normal_form(s, _permute(vals, a)) for a in autos)
        orbit_reps.setdefault(key, vals)
    reps = [CharacteristicFunction(s, v) for _, v in sorted(orbit_reps.items())]
    return OrbitReport(
        total_valid=total,
        orbits_under_gl=len(gl_forms),
        orbits_under_gl_and_aut=len(orbit_reps),
        bound=bound,
        representatives=reps,
        gl_representatives=[CharacteristicFunction(s, v) for _, v in sorted(gl_forms.items())],
    )


def _permute(vals, perm):
    out = [None] * len(vals)
    for i, v in enumerate(vals):
        out[perm[i]] = v
    return tuple(out)
