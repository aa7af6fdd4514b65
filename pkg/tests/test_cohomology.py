import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_monomials, det_laplace, top_functional
from toricrig.cohomology import (
    CohomologyError,
    GradedRing,
    betti_numbers,
    cohomology_summary,
    equivariant_presentation,
    f_from_betti,
    ordinary_cohomology,
    pontrjagin_numbers,
    presentation_polynomials,
    presentation_text,
    total_chern,
    total_pontrjagin,
)
from toricrig.corpus import build_corpus, random_bott_data
from toricrig.fan import Fan, bott_tower, cp2_times_cp1, hirzebruch, projective_space, stellar_subdivide, underlying_complex

GOLDEN = Path(__file__).parent / "golden" / "presentations.json"


def small_fans():
    """Every fan in the family below has at most five rays and dimension at most two."""
    out = [("cp1", projective_space(1)), ("cp2", projective_space(2))]
    for c in projective_space(2).max_cones:
        out.append((f"cp2_blowup_{c}", stellar_subdivide(projective_space(2), c)))
    for a in range(-3, 4):
        f = hirzebruch(a)
        out.append((f"hirzebruch_{a}", f))
        for c in f.max_cones:
            out.append((f"hirzebruch_{a}_blowup_{c}", stellar_subdivide(f, c)))
    return out


def _monomial_by_cups(R, mono):
    c = R.one()
    for i in mono:
        c = R.cup(c, R.mu(i))
    return c


@pytest.mark.parametrize("name,f", small_fans(), ids=[n for n, _ in small_fans()])
def test_multiplication_matches_naive_quotient(name, f):
    assert f.nrays <= 5 and f.dim <= 2
    R = ordinary_cohomology(f)
    functional, ranks = top_functional(f.rays, f.max_cones, f.dim)
    assert list(R.ranks) == ranks
    for mono in all_monomials(f.nrays, f.dim):
        assert R.integrate(_monomial_by_cups(R, mono)) == functional[mono]
        assert R.integrate(R.monomial_class(mono)) == functional[mono]


def test_known_presentations():
    assert presentation_text(projective_space(1)) == "Z[x]/(x^2)"
    assert presentation_text(projective_space(2)) == "Z[x]/(x^3)"
    assert presentation_text(projective_space(3)) == "Z[x]/(x^4)"
    assert presentation_text(hirzebruch(1)) == "Z[x,y]/(x^2, y^2+xy)"
    assert presentation_text(hirzebruch(-2)) == "Z[x,y]/(x^2, y^2-2xy)"
    assert presentation_text(cp2_times_cp1()) == "Z[x,y]/(y^2, x^3)"


def test_golden_presentations():
    expected = json.loads(GOLDEN.read_text())
    got = {e.id: presentation_text(e.fan) for e in build_corpus()}
    assert got == expected


def test_equivariant_presentation():
    p = equivariant_presentation(hirzebruch(1))
    assert p.text() == "Z[t1,t2,t3,t4]/(t1*t3, t2*t4)"
    assert p.linear_forms() == [[1, 0, -1, 0], [0, 1, 1, -1]]


def test_hirzebruch_products():
    R = ordinary_cohomology(hirzebruch(1))
    x, y = R.basis(2)
    assert R.integrate(R.cup(y, y)) == -1
    assert R.integrate(R.cup(x, y)) == 1
    assert R.integrate(R.cup(x, x)) == 0


def test_characteristic_classes_of_projective_spaces():
    R = ordinary_cohomology(projective_space(2))
    (x,) = R.basis(2)
    c = total_chern(R.fan, R)
    assert c[0] == x.scale(3)
    assert c[1] == R.cup(x, x).scale(3)
    assert pontrjagin_numbers(R.fan, R) == {"p1": 3}
    R3 = ordinary_cohomology(projective_space(3))
    (x3,) = R3.basis(2)
    (p1,) = total_pontrjagin(R3.fan, R3)
    assert p1 == R3.cup(x3, x3).scale(4)
    assert R3.integrate(R3.cup(p1, x3)) == 4


def test_torsion_is_an_error():
    f = Fan(2, ((1, 1), (-1, 1), (-1, -1), (1, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
    with pytest.raises(CohomologyError, match="torsion"):
        GradedRing(f)
    with pytest.raises(ValueError):
        ordinary_cohomology(f)


def test_cup_rejects_overflow():
    R = ordinary_cohomology(projective_space(1))
    with pytest.raises(ValueError):
        R.cup(R.mu(0), R.mu(0))
    with pytest.raises(ValueError):
        R.integrate(R.one())


def test_f_from_betti_examples():
    assert f_from_betti((1, 1, 1), 2) == (3, 3)
    assert f_from_betti((1, 3, 3, 1), 3) == (6, 12, 8)
    with pytest.raises(ValueError):
        f_from_betti((1, 1), 2)


def test_summary_keys():
    s = cohomology_summary(hirzebruch(3))
    assert s["betti"] == [1, 2, 1]
    assert s["f_vector"] == s["f_from_betti"] == [4, 4]
    assert s["euler_characteristic"] == 4
    assert s["pontrjagin_numbers"] == {"p1": 0}


bott_data = st.integers(0, 10 ** 6).map(lambda s: random_bott_data(random.Random(s), max_total=4))


@settings(max_examples=25, deadline=None)
@given(bott_data)
def test_bott_cohomology_properties(data):
    f = bott_tower(data)
    R = ordinary_cohomology(f)
    n = f.dim
    b = betti_numbers(R)
    assert b == underlying_complex(f).h_vector()
    assert all(b[k] == b[n - k] for k in range(n + 1))
    assert f_from_betti(b, n) == underlying_complex(f).f_vector()
    # Poincare duality: the pairing H^2k x H^2(n-k) -> Z is unimodular
    for k in range(n + 1):
        A = [[R.integrate(R.cup(u, v)) for v in R.basis(2 * (n - k))] for u in R.basis(2 * k)]
        assert abs(det_laplace(A)) == 1
    assert R.integrate(total_chern(f, R)[-1]) == len(f.max_cones)


def test_cup_is_commutative_and_associative():
    f = build_corpus()[-1].fan
    R = ordinary_cohomology(f)
    B = R.basis(2)
    for a, b, c in itertools.product(B, repeat=3):
        assert R.cup(a, b) == R.cup(b, a)
        assert R.cup(R.cup(a, b), c) == R.cup(a, R.cup(b, c))


@pytest.mark.parametrize("a", range(-3, 4))
def test_hirzebruch_pins(a):
    f = hirzebruch(a)
    assert set(f.rays) == {(1, 0), (-1, a), (0, 1), (0, -1)}
    R = ordinary_cohomology(f)
    assert pontrjagin_numbers(f, R) == {"p1": 0}
    # canonical generators satisfy x^2 = 0 and y^2 + a xy = 0
    _, rels = presentation_polynomials(f)
    assert rels[0] == {(2, 0): 1}
    assert rels[1] == {k: v for k, v in {(0, 2): 1, (1, 1): a}.items() if v}
