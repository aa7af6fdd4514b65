"""Independent reference implementations used to cross-check the library.

Nothing here imports the algorithms under test; only plain data types.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd


def det_laplace(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * det_laplace(minor)
    return total


def determinantal_divisors(A):
    """``d_k`` = gcd of all ``k x k`` minors, for ``k = 1..min(m, n)``."""
    m, n = len(A), len(A[0]) if A else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, det_laplace([[A[r][c] for c in cols] for r in rows]))
        out.append(g)
    return out


def invariant_factors(A):
    """Nonzero elementary divisors via ``s_k = d_k / d_{k-1}``."""
    out, prev = [], 1
    for d in determinantal_divisors(A):
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def rational_rank(rows, ncols):
    M = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                q = M[i][c] / M[r][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def nullspace(rows, ncols):
    """Basis over Q of ``{y : rows[i] . y = 0 for all i}``."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                q = M[i][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        y = [Fraction(0)] * ncols
        y[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            y[pc] = -M[i][fcol]
        basis.append(y)
    return basis


def solve_rational(B, x):
    """Solve ``B lam = x`` for square ``B`` (columns are generators); ``None`` if singular."""
    n = len(B)
    M = [[Fraction(B[r][c]) for c in range(n)] + [Fraction(x[r])] for r in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for i in range(n):
            if i != c and M[i][c] != 0:
                q = M[i][c] / M[c][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def is_z_basis(vectors):
    """True iff the ``n`` vectors generate ``Z^n``: every unit vector is an integral combination."""
    n = len(vectors)
    if any(len(v) != n for v in vectors):
        return False
    B = [[vectors[c][r] for c in range(n)] for r in range(n)]
    for k in range(n):
        e = [int(i == k) for i in range(n)]
        lam = solve_rational(B, e)
        if lam is None or any(x.denominator != 1 for x in lam):
            return False
    return True


# ---------------------------------------------------------------------------
# fans given as (rays, cones) with 0-based cones

def sampled_complete(rays, cones, n, trials=1000, seed=0, spread=50):
    """Monte-Carlo completeness: every sampled direction lies in some maximal cone."""
    rng = random.Random(seed)
    full = [c for c in cones if len(c) == n]
    for _ in range(trials):
        x = [rng.randint(-spread, spread) for _ in range(n)]
        if not any(x):
            continue
        hit = False
        for c in full:
            B = [[rays[i][r] for i in c] for r in range(n)]
            lam = solve_rational(B, x)
            if lam is not None and all(t >= 0 for t in lam):
                hit = True
                break
        if not hit:
            return False
    return True


def stellar_complex(facets, s, new_vertex):
    """Facets of the stellar subdivision of a complex at face ``s``."""
    s = set(s)
    out = set()
    for f in facets:
        if s <= set(f):
            for v in s:
                out.add(tuple(sorted((set(f) - {v}) | {new_vertex})))
        else:
            out.add(tuple(sorted(f)))
    return sorted(out)


def complexes_iso_bruteforce(facets_a, facets_b, m):
    A = {frozenset(f) for f in facets_a}
    B = {frozenset(f) for f in facets_b}
    if len(A) != len(B):
        return False
    for perm in itertools.permutations(range(m)):
        if {frozenset(perm[v] for v in f) for f in A} == B:
            return True
    return False


# ---------------------------------------------------------------------------
# naive quotient of the full polynomial ring

def all_monomials(m, k):
    return list(itertools.combinations_with_replacement(range(m), k))


def top_functional(rays, cones, n):
    """Linear functional on degree-``n`` monomials of ``Z[t_1..t_m]`` vanishing on the
    Stanley-Reisner ideal plus the linear relations, normalized to ``1`` on the first
    maximal cone. Returns ``(functional dict, ranks)``; ranks are rational dimensions of the
    quotient in each degree.
    """
    m = len(rays)
    faces = set()
    for c in cones:
        for k in range(len(c) + 1):
            faces.update(itertools.combinations(sorted(c), k))

    def is_face_mono(mono):
        return tuple(sorted(set(mono))) in faces

    ranks = []
    functional = None
    for k in range(n + 1):
        monos = all_monomials(m, k)
        idx = {mo: i for i, mo in enumerate(monos)}
        rels = []
        for mo in monos:
            if not is_face_mono(mo):
                rels.append([int(i == idx[mo]) for i in range(len(monos))])
        if k >= 1:
            for beta in all_monomials(m, k - 1):
                for u in range(n):
                    row = [0] * len(monos)
                    for i in range(m):
                        row[idx[tuple(sorted(beta + (i,)))]] += rays[i][u]
                    if any(row):
                        rels.append(row)
        r = rational_rank(rels, len(monos)) if rels else 0
        ranks.append(len(monos) - r)
        if k == n:
            ker = nullspace(rels, len(monos))
            assert len(ker) == 1
            y = ker[0]
            first = idx[tuple(sorted(cones[0]))]
            scale = y[first]
            functional = {mo: y[i] / scale for mo, i in idx.items()}
    return functional, ranks


# ---------------------------------------------------------------------------
# characteristic functions

def gl_orbits_bruteforce(facets, values_list, normalizer):
    """GL(n,Z)-orbit keys obtained by sending the vectors at facet ``normalizer`` to the standard basis."""
    out = {}
    for vals in values_list:
        base = facets[normalizer]
        n = len(base)
        B = [[vals[i][r] for i in base] for r in range(n)]
        cols = []
        for v in vals:
            lam = solve_rational(B, v)
            cols.append(tuple(int(x) for x in lam))
        out.setdefault(tuple(cols), vals)
    return out
