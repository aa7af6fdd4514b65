"""Equivariant and ordinary cohomology of toric manifolds.

The ordinary ring is computed degree by degree inside the face ring: the
degree-``k`` piece (cohomological degree ``2k``) is the free module on
monomials supported on faces of the underlying complex, modulo the image of
``(degree k-1 monomials) x (linear forms sum_i <u, v_i> mu_i)``. The quotient
is taken exactly: unit pivots are eliminated sparsely, whatever is left goes
through Smith normal form, and any torsion is a hard error.

Each graded piece gets a canonical basis: the projection onto the quotient is
replaced by its Hermite normal form, which depends only on the relation
lattice and not on elimination order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .fan import Fan, underlying_complex, validate_fan
from .zlattice import (
    hnf_rows,
    integer_section,
    smith_normal_form,
    unimodular_inverse,
)


class CohomologyError(RuntimeError):
    """Internal inconsistency: torsion, bad top degree or orientation mismatch."""


@dataclass(frozen=True)
class EquivariantPresentation:
    m: int
    sr_nonfaces: tuple
    ray_vectors: tuple

    def linear_forms(self) -> list[list[int]]:
        """Coefficients of ``pi*(e_u) = sum_i <e_u, v_i> tau_i`` for each basis vector ``e_u``."""
        n = len(self.ray_vectors[0]) if self.ray_vectors else 0
        return [[v[u] for v in self.ray_vectors] for u in range(n)]

    def text(self) -> str:
        gens = ",".join(f"t{i + 1}" for i in range(self.m))
        rels = ", ".join("*".join(f"t{i + 1}" for i in s) for s in self.sr_nonfaces)
        return f"Z[{gens}]/({rels})"


def equivariant_presentation(f: Fan) -> EquivariantPresentation:
    cx = underlying_complex(f)
    return EquivariantPresentation(f.nrays, tuple(cx.minimal_nonfaces()), f.rays)


@dataclass(frozen=True)
class CohClass:
    degree: int
    coords: tuple

    def __add__(self, other: "CohClass") -> "CohClass":
        if other.degree != self.degree:
            raise ValueError("adding classes of different degrees")
        return CohClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CohClass(self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "CohClass":
        return CohClass(self.degree, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def _face_monomials(cx, k: int) -> list[tuple[int, ...]]:
    faces = cx.faces
    return [mono for mono in combinations_with_replacement(range(cx.vertex_count), k) if tuple(sorted(set(mono))) in faces]


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def _quotient_projection(ncols: int, relations: list[dict[int, int]]) -> list[list[int]]:
    """Projection ``Z^ncols -> Z^b`` whose kernel is the span of ``relations``.

    Raises ``CohomologyError`` if the quotient has torsion.
    """
    pivots: dict[int, dict[int, int]] = {}  # column -> expression in free columns
    hard: list[dict[int, int]] = []

    def reduce(row):
        out: dict[int, int] = {}
        for c, a in row.items():
            if c in pivots:
                for d, b in pivots[c].items():
                    out[d] = out.get(d, 0) + a * b
            else:
                out[c] = out.get(c, 0) + a
        return {c: a for c, a in out.items() if a}

    work = list(relations)
    while True:
        progress = False
        for row in work:
            row = reduce(row)
            if not row:
                continue
            units = [c for c, a in row.items() if a in (1, -1)]
            if not units:
                hard.append(row)
                continue
            c = max(units)
            s = row[c]
            # e_c == -s * (rest of the row) modulo the relation
            expr = {d: -s * a for d, a in row.items() if d != c}
            for p, e in pivots.items():
                if c in e:
                    k = e.pop(c)
                    for d, b in expr.items():
                        e[d] = e.get(d, 0) + k * b
                    pivots[p] = {d: b for d, b in e.items() if b}
            pivots[c] = expr
            progress = True
        if not progress or not hard:
            break
        work, hard = hard, []
    free = [c for c in range(ncols) if c not in pivots]
    pos = {c: i for i, c in enumerate(free)}
    # reduction map Z^ncols -> Z^free
    red = [[0] * ncols for _ in free]
    for c in range(ncols):
        if c in pivots:
            for d, b in pivots[c].items():
                red[pos[d]][c] += b
        else:
            red[pos[c]][c] = 1
    rest = [reduce(r) for r in hard]
    rest = [r for r in rest if r]
    if not rest:
        return red
    A = [[r.get(c, 0) for r in rest] for c in free]  # relations as columns
    snf = smith_normal_form(A)
    diag = snf.diagonal
    if any(d > 1 for d in diag):
        raise CohomologyError(f"torsion {[d for d in diag if d > 1]} in cohomology")
    r = sum(1 for d in diag if d)
    U = snf.U.tolist()
    Q = U[r:]
    return [[sum(q[i] * red[i][c] for i in range(len(free))) for c in range(ncols)] for q in Q]


class GradedRing:
    """Integral cohomology ring of a toric manifold, presented degree-wise.

    Degrees are indexed by ``k = 0..n``; the graded piece ``k`` lives in
    cohomological degree ``2k``. Classes are coordinate vectors in a canonical
    basis of each piece.
    """

    def __init__(self, f: Fan):
        self.fan = f
        self.n = f.dim
        cx = underlying_complex(f)
        self.complex = cx
        self.monomials: list[list[tuple]] = []
        self.index: list[dict[tuple, int]] = []
        self.projection: list[list[list[int]]] = []
        self.lifts: list[list[dict[int, int]]] = []
        for k in range(self.n + 1):
            monos = _face_monomials(cx, k)
            idx = {mo: i for i, mo in enumerate(monos)}
            self.monomials.append(monos)
            self.index.append(idx)
            rels = []
            if k >= 1:
                for beta in self.monomials[k - 1]:
                    for u in range(self.n):
                        row: dict[int, int] = {}
                        for i, v in enumerate(f.rays):
                            if v[u]:
                                j = idx.get(_merge(beta, (i,)))
                                if j is not None:
                                    row[j] = row.get(j, 0) + v[u]
                        row = {c: a for c, a in row.items() if a}
                        if row:
                            rels.append(row)
            P = _quotient_projection(len(monos), rels)
            H = hnf_rows(P, len(monos)) if P else []
            if len(H) != len(P):
                raise CohomologyError("projection lost rank")
            self.projection.append(H)
            self.lifts.append(self._sparse_section(H, len(monos)))
        self.ranks = tuple(len(H) for H in self.projection)
        if self.ranks[0] != 1 or self.ranks[-1] != 1:
            raise CohomologyError(f"bad end ranks {self.ranks}")
        self.mult: dict[tuple[int, int], list[list[tuple]]] = {}
        for k in range(1, self.n + 1):
            for l in range(k, self.n + 1 - k):
                tab = [[self._class_of_product(k, s, l, t) for t in range(self.ranks[l])] for s in range(self.ranks[k])]
                self.mult[(k, l)] = tab
        self.generator_images = tuple(self.monomial_class((i,)).coords for i in range(f.nrays))
        self._orientation = self._compute_orientation()

    # construction helpers -------------------------------------------------

    @staticmethod
    def _sparse_section(H: list[list[int]], ncols: int) -> list[dict[int, int]]:
        if not H:
            return []
        # restrict to a set of columns on which H is already surjective
        cols = []
        for c in range(ncols):
            cols.append(c)
            sub = [[row[j] for j in cols] for row in H]
            try:
                S = integer_section(sub, len(cols))
            except ValueError:
                continue
            return [{cols[j]: x for j, x in enumerate(s) if x} for s in S]
        raise CohomologyError("projection is not surjective")

    def _project(self, k: int, vec: dict[int, int]) -> tuple:
        H = self.projection[k]
        return tuple(sum(row[c] * a for c, a in vec.items()) for row in H)

    def _class_of_product(self, k, s, l, t) -> tuple:
        out: dict[int, int] = {}
        idx = self.index[k + l]
        for c1, a1 in self.lifts[k][s].items():
            m1 = self.monomials[k][c1]
            for c2, a2 in self.lifts[l][t].items():
                j = idx.get(_merge(m1, self.monomials[l][c2]))
                if j is not None:
                    out[j] = out.get(j, 0) + a1 * a2
        return self._project(k + l, out)

    def _compute_orientation(self) -> int:
        signs = set()
        for cone in self.fan.max_cones:
            c = self.monomial_class(cone).coords
            if c not in ((1,), (-1,)):
                raise CohomologyError(f"fixed-point class {c} is not a generator")
            signs.add(c[0])
        if len(signs) != 1:
            raise CohomologyError("fixed-point classes disagree in sign")
        return signs.pop()

    # public API -----------------------------------------------------------

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k <= self.n else 0

    def zero(self, degree: int) -> CohClass:
        return CohClass(degree, (0,) * self.rank(degree // 2))

    def one(self) -> CohClass:
        return CohClass(0, (1,))

    def basis(self, degree: int) -> list[CohClass]:
        r = self.rank(degree // 2)
        return [CohClass(degree, tuple(int(i == j) for j in range(r))) for i in range(r)]

    def monomial_class(self, mono: Sequence[int]) -> CohClass:
        """Class of ``prod mu_i`` over the multiset ``mono`` (0-based ray indices)."""
        mono = tuple(sorted(mono))
        k = len(mono)
        if k > self.n:
            raise ValueError("degree exceeds top degree")
        j = self.index[k].get(mono)
        if j is None:
            return self.zero(2 * k)
        return CohClass(2 * k, tuple(row[j] for row in self.projection[k]))

    def polynomial_class(self, k: int, poly: dict[tuple, int]) -> CohClass:
        """Class of ``sum c * mu^mono`` for a homogeneous polynomial of degree ``k``."""
        out = [0] * self.rank(k)
        for mono, c in poly.items():
            cls = self.monomial_class(mono)
            out = [a + c * b for a, b in zip(out, cls.coords)]
        return CohClass(2 * k, tuple(out))

    def mu(self, i: int) -> CohClass:
        return CohClass(2, self.generator_images[i])

    def lift(self, cls: CohClass) -> dict[tuple, int]:
        """A face-ring polynomial representing ``cls``."""
        k = cls.degree // 2
        out: dict[tuple, int] = {}
        for s, a in enumerate(cls.coords):
            if a:
                for c, b in self.lifts[k][s].items():
                    mono = self.monomials[k][c]
                    out[mono] = out.get(mono, 0) + a * b
        return {m: c for m, c in out.items() if c}

    def cup(self, a: CohClass, b: CohClass) -> CohClass:
        ka, kb = a.degree // 2, b.degree // 2
        if a.degree % 2 or b.degree % 2 or a.degree < 0 or b.degree < 0:
            raise ValueError("classes live in even degrees")
        if ka + kb > self.n:
            raise ValueError(f"degree {a.degree + b.degree} exceeds top degree {2 * self.n}")
        if ka == 0:
            return b.scale(a.coords[0])
        if kb == 0:
            return a.scale(b.coords[0])
        if ka > kb:
            a, b, ka, kb = b, a, kb, ka
        tab = self.mult[(ka, kb)]
        out = [0] * self.rank(ka + kb)
        for s, x in enumerate(a.coords):
            if not x:
                continue
            for t, y in enumerate(b.coords):
                if not y:
                    continue
                out = [o + x * y * z for o, z in zip(out, tab[s][t])]
        return CohClass(2 * (ka + kb), tuple(out))

    def integrate(self, top: CohClass) -> int:
        if top.degree != 2 * self.n:
            raise ValueError("integration needs a top-degree class")
        return self._orientation * top.coords[0]

    def betti(self) -> tuple[int, ...]:
        return self.ranks

    @cached_property
    def top_form(self) -> dict[tuple, int]:
        """``int x_{i_1} ... x_{i_n}`` over sorted index multisets of the degree-2 basis."""
        b = self.ranks[1] if self.n >= 1 else 0
        basis = self.basis(2)
        out = {}
        for idx in combinations_with_replacement(range(b), self.n):
            c = self.one()
            for i in idx:
                c = self.cup(c, basis[i])
            out[idx] = self.integrate(c)
        return out


def ordinary_cohomology(f: Fan, check: bool = True) -> GradedRing:
    if check:
        rep = validate_fan(f)
        if not rep.ok:
            raise ValueError("fan is not valid, complete and smooth: " + "; ".join(rep.violations))
    return GradedRing(f)


def betti_numbers(R: GradedRing) -> tuple[int, ...]:
    return R.betti()


def f_from_betti(betti: Sequence[int], n: int) -> tuple[int, ...]:
    """``f_i`` = coefficient of ``s^(n-i-1)`` in ``sum_k b_k (s+1)^(n-k)``."""
    if len(betti) != n + 1:
        raise ValueError("need n+1 Betti numbers")
    coeff = [0] * (n + 1)  # coefficient of s^j
    for k, b in enumerate(betti):
        for j in range(n - k + 1):
            coeff[j] += b * comb(n - k, j)
    return tuple(coeff[n - i - 1] for i in range(n))


def cup(R: GradedRing, a: CohClass, b: CohClass) -> CohClass:
    return R.cup(a, b)


def integrate(R: GradedRing, top: CohClass) -> int:
    return R.integrate(top)


def _total_product(R: GradedRing, step: int) -> list[CohClass]:
    """Graded pieces of ``prod_i (1 + mu_i^step)`` in degrees ``0..2n``."""
    total = [R.one()] + [R.zero(2 * k) for k in range(1, R.n + 1)]
    for i in range(R.fan.nrays):
        term = R.mu(i)
        for _ in range(step - 1):
            term = R.cup(term, R.mu(i))
        new = list(total)
        for k in range(R.n + 1 - step):
            new[k + step] = new[k + step] + R.cup(total[k], term)
        total = new
    return total


def total_chern(f: Fan, R: GradedRing) -> list[CohClass]:
    """``[c_1, ..., c_n]`` from ``prod (1 + mu_i)``."""
    return _total_product(R, 1)[1:]


def total_pontrjagin(f: Fan, R: GradedRing) -> list[CohClass]:
    """``[p_1, ..., p_{n//2}]`` from ``prod (1 + mu_i^2)``."""
    if R.n < 2:
        return []
    total = _total_product(R, 2)
    return [total[2 * k] for k in range(1, R.n // 2 + 1)]


def _partitions(n: int, largest: int | None = None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def pontrjagin_numbers(f: Fan, R: GradedRing) -> dict[str, int]:
    """Integrals of the top-degree Pontrjagin monomials, keyed like ``"p1^2"``."""
    if R.n % 2:
        return {}
    ps = total_pontrjagin(f, R)
    out = {}
    for part in _partitions(R.n // 2):
        c = R.one()
        for p in part:
            c = R.cup(c, ps[p - 1])
        key = "*".join(f"p{p}" for p in part)
        out[key] = R.integrate(c)
    return out


# ---------------------------------------------------------------------------
# printing

def _var_names(k: int) -> list[str]:
    if k <= 4:
        return ["x", "y", "z", "w"][:k]
    return [f"x{i + 1}" for i in range(k)]


def _poly_text(poly: dict[tuple, int], names: list[str]) -> str:
    terms = sorted(poly.items(), key=lambda t: tuple(reversed(t[0])), reverse=True)
    out = []
    for exps, c in terms:
        body = "".join(
            names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
        )
        mag = abs(c)
        piece = (str(mag) if mag != 1 or not body else "") + body
        sign = "-" if c < 0 else "+"
        out.append((sign, piece))
    text = "".join(s + p for s, p in out)
    return text[1:] if text.startswith("+") else text


def distinguished_cone(f: Fan) -> tuple[int, ...]:
    """Maximal cone whose complement is lexicographically smallest."""
    m = f.nrays
    return min(f.max_cones, key=lambda c: tuple(i for i in range(m) if i not in c))


def presentation_polynomials(f: Fan) -> tuple[list[int], list[dict[tuple, int]]]:
    """Kept generator indices and the monomial relations after linear elimination.

    The ``mu_i`` of the distinguished cone are solved for using the linear
    relations (possible because that cone is unimodular).
    """
    m, n = f.nrays, f.dim
    sigma = distinguished_cone(f)
    keep = [i for i in range(m) if i not in sigma]
    # sum_i <e_u, v_i> mu_i = 0  =>  A_sigma mu_sigma = -A_keep mu_keep
    A_sigma = [[f.rays[i][u] for i in sigma] for u in range(n)]
    inv = unimodular_inverse(A_sigma)
    A_keep = [[f.rays[i][u] for i in keep] for u in range(n)]
    subst = {}
    for r, i in enumerate(sigma):
        subst[i] = [-sum(inv[r][u] * A_keep[u][j] for u in range(n)) for j in range(len(keep))]
    for j, i in enumerate(keep):
        subst[i] = [int(j == t) for t in range(len(keep))]
    rels = []
    for nf in underlying_complex(f).minimal_nonfaces():
        poly = {(0,) * len(keep): 1}
        for i in nf:
            lin = subst[i]
            new: dict[tuple, int] = {}
            for exps, c in poly.items():
                for t, a in enumerate(lin):
                    if a:
                        e = list(exps)
                        e[t] += 1
                        e = tuple(e)
                        new[e] = new.get(e, 0) + c * a
            poly = {e: c for e, c in new.items() if c}
        if not poly:
            continue
        lead = sorted(poly.items(), key=lambda t: tuple(reversed(t[0])), reverse=True)[0][1]
        if lead < 0:
            poly = {e: -c for e, c in poly.items()}
        if poly not in rels:
            rels.append(poly)
    return keep, rels


def presentation_text(f: Fan) -> str:
    keep, rels = presentation_polynomials(f)
    names = _var_names(len(keep))
    return f"Z[{','.join(names)}]/({', '.join(_poly_text(p, names) for p in rels)})"


def cohomology_summary(f: Fan, R: GradedRing | None = None) -> dict:
    if R is None:
        R = ordinary_cohomology(f)
    cx = underlying_complex(f)
    c = total_chern(f, R)
    return {
        "presentation": presentation_text(f),
        "equivariant": equivariant_presentation(f).text(),
        "betti": list(betti_numbers(R)),
        "f_vector": list(cx.f_vector()),
        "f_from_betti": list(f_from_betti(betti_numbers(R), R.n)),
        "euler_characteristic": R.integrate(c[-1]) if c else 1,
        "chern_numbers": chern_numbers(f, R),
        "pontrjagin_numbers": pontrjagin_numbers(f, R),
    }


def chern_numbers(f: Fan, R: GradedRing) -> dict[str, int]:
    cs = total_chern(f, R)
    out = {}
    for part in _partitions(R.n):
        c = R.one()
        for p in part:
            c = R.cup(c, cs[p - 1])
        out["*".join(f"c{p}" for p in part)] = R.integrate(c)
    return out


def sym_monomials(b: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(b), k))


__all__ = [
    "CohClass",
    "CohomologyError",
    "EquivariantPresentation",
    "GradedRing",
    "betti_numbers",
    "chern_numbers",
    "cohomology_summary",
    "cup",
    "equivariant_presentation",
    "f_from_betti",
    "integrate",
    "ordinary_cohomology",
    "pontrjagin_numbers",
    "presentation_text",
    "total_chern",
    "total_pontrjagin",
]
