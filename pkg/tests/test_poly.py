from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from graph_ideals.errors import FieldMismatch, MapUnavailable
from graph_ideals.poly import (
    ETA,
    ETA_INV,
    PSI,
    PSI_INV,
    QQ,
    FieldSpec,
    Polynomial,
    PolyRing,
    RingMap,
    apply_map,
    combine,
    edge_generator,
    expected_sqrt_flag,
    inverse_map,
    is_prime,
)

RING = PolyRing(3)
F5 = FieldSpec.of(5)
F101 = FieldSpec.of(101)
F2 = FieldSpec.of(2)
F3 = FieldSpec.of(3)


def polys(field=QQ, ring=RING, max_terms=5, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * ring.nvars)
    coeffs = st.integers(-6, 6)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: Polynomial(ring, field, d)
    )


def to_sympy(p: Polynomial):
    syms = sympy.symbols(p.ring.names)
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, k in zip(syms, exp):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


# --- fields ------------------------------------------------------------------------

def test_primality_and_sqrt_flag():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 61 - 1)
    assert expected_sqrt_flag(0) is False
    assert expected_sqrt_flag(2) and expected_sqrt_flag(5) and not expected_sqrt_flag(3)


def test_fieldspec_validation():
    with pytest.raises(ValueError):
        FieldSpec(4, False)
    with pytest.raises(ValueError):
        FieldSpec(5, False)
    with pytest.raises(ValueError):
        FieldSpec(0, True)
    assert FieldSpec.of(13).sqrt_minus_one ** 2 % 13 == 12
    with pytest.raises(MapUnavailable):
        F3.sqrt_minus_one


# --- arithmetic against sympy -----------------------------------------------------

@given(polys(), polys())
def test_arithmetic_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys(F5), polys(F5))
def test_finite_field_reduction_commutes(a, b):
    lift = lambda p: p.with_field(QQ)
    assert (lift(a) * lift(b)).with_field(F5) == a * b


def test_power_and_degree():
    x1 = Polynomial.var(RING, QQ, RING.x(1))
    y1 = Polynomial.var(RING, QQ, RING.y(1))
    p = (x1 + y1) ** 3
    assert p.degree() == 3 and p.is_homogeneous()
    assert to_sympy(p) == sympy.expand((sympy.Symbol("x1") + sympy.Symbol("y1")) ** 3)


def test_canonical_rendering():
    assert str(edge_generator("f", (1, 2), QQ)) == "-x2*y1 + x1*y2"
    assert str(edge_generator("g", (1, 2), QQ)) == "x1*x2 + y1*y2"
    assert str(edge_generator("h", 3, QQ)) == "x3^2 + y3^2"
    # symmetric residues in F_p
    assert str(edge_generator("gbar", (1, 2), F5)) == "x1*x2 - y1*y2"
    assert str(Polynomial.zero(RING, QQ)) == "0"


def test_generator_examples():
    assert edge_generator("gbar", (1, 2), F2) == edge_generator("g", (1, 2), F2)
    assert edge_generator("perm", (1, 2), QQ) == edge_generator("perm", (2, 1), QQ)
    assert edge_generator("f", (1, 2), QQ) == -edge_generator("f", (2, 1), QQ)
    with pytest.raises(ValueError):
        edge_generator("g", (2, 2), QQ)


def test_combine_examples():
    r4 = PolyRing(4)
    f = lambda i, j: edge_generator("f", (i, j), QQ, r4)
    g = lambda i, j: edge_generator("g", (i, j), QQ, r4)
    assert combine([(g(2, 3), g(1, 2)), (-g(1, 2), g(2, 3))]).is_zero()
    assert combine([(f(3, 4), g(1, 2)), (-f(2, 4), g(1, 3)), (f(2, 3), g(1, 4))]).is_zero()
    assert combine([(1, f(1, 2) * f(3, 4)), (-1, f(1, 3) * f(2, 4)), (1, f(1, 4) * f(2, 3))]).is_zero()


def test_combine_field_mismatch():
    a = edge_generator("g", (1, 2), QQ)
    b = edge_generator("g", (1, 2), F5)
    with pytest.raises(FieldMismatch):
        combine([(a, b)])
    with pytest.raises(FieldMismatch):
        a + b


# --- ring maps ---------------------------------------------------------------------

def test_ring_map_examples():
    r = PolyRing(2)
    f12 = edge_generator("f", (1, 2), QQ, r)
    g12 = edge_generator("g", (1, 2), QQ, r)
    assert apply_map(RingMap.phi1(((1,), (2,))), f12) == -g12
    gb = edge_generator("gbar", (1, 2), QQ, r)
    assert apply_map(ETA, gb) == edge_generator("perm", (1, 2), QQ, r).scale(2)
    perm5 = edge_generator("perm", (1, 2), F5, r)
    assert apply_map(PSI, perm5) == edge_generator("g", (1, 2), F5, r).scale(2)


def test_maps_unavailable():
    gb = edge_generator("gbar", (1, 2), F2)
    with pytest.raises(MapUnavailable):
        apply_map(ETA, gb)
    with pytest.raises(MapUnavailable):
        apply_map(PSI, edge_generator("perm", (1, 2), F3))
    with pytest.raises(MapUnavailable):
        apply_map(PSI, edge_generator("perm", (1, 2), QQ))


MAPS = [RingMap.phi1(((1, 3), (2,))), RingMap.phi2(((1,), (2, 3))), ETA]


@pytest.mark.parametrize("m", MAPS + [ETA_INV], ids=lambda m: m.tag)
@given(a=polys(), b=polys())
def test_maps_are_ring_homomorphisms(m, a, b):
    assert apply_map(m, a * b) == apply_map(m, a) * apply_map(m, b)
    assert apply_map(m, a + b) == apply_map(m, a) + apply_map(m, b)


@pytest.mark.parametrize("m", MAPS + [PSI], ids=lambda m: m.tag)
@given(a=polys(F5))
def test_maps_invert(m, a):
    assert apply_map(inverse_map(m), apply_map(m, a)) == a
    assert apply_map(m, apply_map(inverse_map(m), a)) == a


@pytest.mark.parametrize("field", [QQ, F3, F101])
def test_family_transport_on_bipartite_edges(field):
    # V1 = {1, 3}, V2 = {2, 4}; every edge of C4 crosses the bipartition
    r = PolyRing(4)
    parts = ((1, 3), (2, 4))
    for i, j in [(1, 2), (2, 3), (3, 4), (1, 4)]:
        f = edge_generator("f", (i, j), field, r)
        g = edge_generator("g", (i, j), field, r)
        gb = edge_generator("gbar", (i, j), field, r)
        img1 = apply_map(RingMap.phi1(parts), f)
        img2 = apply_map(RingMap.phi2(parts), f)
        assert img1 in (g, -g)
        assert img2 in (gb, -gb)
        perm = edge_generator("perm", (i, j), field, r)
        assert apply_map(ETA, gb) == perm.scale(2)


def test_eta_inverse_round_trip_on_generators():
    for kind in ("g", "gbar", "perm", "f"):
        p = edge_generator(kind, (1, 2), F101)
        assert apply_map(ETA_INV, apply_map(ETA, p)) == p


def test_lift_and_multidegree():
    p = edge_generator("g", (1, 2), QQ)
    big = PolyRing(2, ((1, 2),))
    q = p.lift(big)
    assert str(q) == str(p)
    assert big.names[-1] == "T1_2"
    (exp, _), *_ = q.sorted_terms()
    assert q.vertex_multidegree(exp) == (1, 1)
    with pytest.raises(FieldMismatch):
        p.lift(PolyRing(3))
