"""Acceptance checks, one group per criterion (see the summary printed by conftest)."""

from __future__ import annotations

from itertools import combinations
from math import gcd

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import CORPUS_KEYS, corpus_discovery
from quasigalois.corpus import build_curve, klein_constants
from quasigalois.errors import RootsMissingError
from quasigalois.exactnum import make_context, zeta
from quasigalois.groupkit import closure, homology_decomposition, preserves_curve
from quasigalois.plane import (
    ProjPoint,
    ProjTransform,
    context_flexes,
    flex_contribution,
    intersection_multiplicity,
    normalize_center,
    on_curve,
    tangent_line,
)
from quasigalois.polyring import (
    TriForm,
    field_roots,
    restrict_to_line,
    substitute_linear,
    x_slices,
)
from quasigalois.qgal import (
    census,
    diagonalizing_transform,
    discover,
    dual_certificate,
    fixed_locus_intersection,
    galois_closure_bounds,
    is_gpair,
    predicted_galois_group,
    quasi_galois_order,
    solve_homology,
    verify_certificate,
)

PROPS = settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _pt(ctx, *xs):
    return ProjPoint(xs, ctx)


# -- 1, 2: Fermat censuses ------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("d", [4, 6, 8])
def test_fermat_even_census(d):
    C, certs = corpus_discovery("fermat", {"d": d})
    rep = census(C.form, certs)
    assert rep.outer == {d: 3, 2: 3 * d}
    assert rep.inner == {}
    assert rep.delta_ge(2) == 0
    assert all(verify_certificate(C.form, c) for c in certs)


@pytest.mark.criterion(2)
@pytest.mark.parametrize("d", [5, 7])
def test_fermat_odd_census(d):
    C, certs = corpus_discovery("fermat", {"d": d})
    rep = census(C.form, certs)
    assert rep.outer == {d: 3}
    assert rep.inner == {2: 3 * d}
    galois = [c for c in certs if c.galois]
    assert len(galois) == 3 and not any(c.on_curve for c in galois)
    assert all(verify_certificate(C.form, c) for c in certs)


# -- 3: Hessian sextic --------------------------------------------------------------


@pytest.mark.criterion(3)
def test_hessian_sextic():
    C, certs = corpus_discovery("hessian_sextic")
    assert len(certs) == 12
    assert all(not c.on_curve and c.order == 3 for c in certs)
    G = closure([c.generator for c in certs])
    assert G.order == 216
    assert preserves_curve(G, C.form)
    ctx = C.context
    swaps = [ProjTransform.permutation(ctx, p) for p in [(1, 0, 2), (2, 1, 0), (0, 2, 1)]]
    G2 = closure([c.generator for c in certs] + swaps)
    assert set(G2.elements) == set(G.elements)


# -- 4: Klein model ---------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_klein_identities():
    a, w, lam = klein_constants()
    assert a * a + a * 3 + 18 == 0
    assert lam * lam == a * 4 / (6 - a)
    assert w == a * 4 / (6 - a)


@pytest.mark.criterion(4)
def test_klein_model():
    C, certs = corpus_discovery("klein_model")
    assert len(certs) == 21
    assert all(not c.on_curve and c.order == 2 and not c.galois for c in certs)
    G = closure([c.generator for c in certs])
    assert G.order == 168
    invs = G.involutions()
    assert len(invs) == 21
    centers = {c.point for c in certs}
    for g in invs:
        info = homology_decomposition(g)
        assert info.kind == "homology"
        assert info.center in centers


# -- 5: half-degree family ------------------------------------------------------------


@pytest.mark.criterion(5)
def test_halfdeg_n7():
    C = build_curve("halfdeg_family", {"n": 7, "a": 1, "b": 1, "c": 1})
    assert C.degree == 14
    certs = [quasi_galois_order(C.form, P) for P in C.seeds]
    assert [c.order for c in certs] == [7, 7, 7]
    assert all(not c.on_curve and verify_certificate(C.form, c) for c in certs)
    for c1, c2 in combinations(certs, 2):
        w = is_gpair(c1, c2)
        assert w.first_fixes_second and w.second_fixes_first


# -- 6: quartic family ------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_quartic_family_a1():
    C = build_curve("quartic_family", {"a": 1, "b": 0, "c": 0})
    ctx = C.context
    i = zeta(ctx, 4)
    o, z = ctx.one(), ctx.zero()
    center = quasi_galois_order(C.form, _pt(ctx, 0, 0, 1))
    assert center.order == 4 and center.galois and not center.on_curve
    six = [_pt(ctx, 1, 0, 0), _pt(ctx, 0, 1, 0), _pt(ctx, 1, 1, 0), _pt(ctx, 1, -1, 0),
           ProjPoint((i, o, z)), ProjPoint((-i, o, z))]
    for P in six:
        assert quasi_galois_order(C.form, P).order == 2
    certs = discover(C.form, six)
    assert len(certs) == 6
    assert {c.point for c in certs} == set(six)
    assert census(C.form, certs).outer == {2: 6}


# -- 7: mixed orders -----------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_mixed_order_example():
    C = build_curve("coprime_example")
    ctx = C.context
    P1, P2 = _pt(ctx, 1, 0, 0), _pt(ctx, 0, 1, 0)
    c1, c2 = quasi_galois_order(C.form, P1), quasi_galois_order(C.form, P2)
    assert {c1.order, c2.order} == {2, 3}
    assert c1.on_curve and c2.on_curve
    assert verify_certificate(C.form, c1) and verify_certificate(C.form, c2)
    assert set(fixed_locus_intersection(c1, c2, C.form)) == {P1, P2}


# -- 8: property suites -------------------------------------------------------------------


def _corpus_certs():
    return [corpus_discovery(name, params) for name, params in CORPUS_KEYS]


_CTX12 = make_context(12)
_small = st.integers(-3, 3)


@st.composite
def standard_forms(draw):
    """sum_i G_(d - n i)(Y, Z) X^(n i) with a nonzero middle slice, then a shear
    X -> X + aY + bZ so the X^(r-1) slice is generally present."""
    ctx = _CTX12
    n, rp = draw(st.sampled_from([(2, 2), (2, 3), (3, 2)]))
    d = n * rp
    Y, Z = TriForm.variable(ctx, 1), TriForm.variable(ctx, 2)
    X = TriForm.variable(ctx, 0)
    F = X**d
    for i in range(rp):
        e = d - n * i
        coeffs = draw(st.lists(_small, min_size=e + 1, max_size=e + 1))
        if 0 < i and not any(coeffs):
            coeffs[0] = 1
        G = TriForm.zero(ctx, e)
        for k, c in enumerate(coeffs):
            if c:
                G = G + (Y**k * Z ** (e - k)).scale(c)
        if not G.is_zero():
            F = F + G * X ** (n * i) if i else F + G
    a, b = draw(_small), draw(_small)
    o, zz = ctx.one(), ctx.zero()
    shear = ((o, ctx.rational(a), ctx.rational(b)), (zz, o, zz), (zz, zz, o))
    return n, substitute_linear(F, shear)


@pytest.mark.criterion(8)
@PROPS
@given(standard_forms())
def test_standard_form_roundtrip(case):
    n, F = case
    ctx = F.ctx
    cert = quasi_galois_order(F, _pt(ctx, 1, 0, 0))
    assert cert.order % n == 0
    assert verify_certificate(F, cert)
    B = diagonalizing_transform(cert)
    G = substitute_linear(F, B.inverse())
    assert all(e[0] % cert.order == 0 for e, _ in G.sorted_terms())


def _divisors(r):
    return [m for m in range(2, r + 1) if r % m == 0]


@pytest.mark.criterion(8)
def test_divisor_consistency():
    checked = 0
    for C, certs in _corpus_certs():
        for c in certs:
            _, Fp = normalize_center(C.form, c.point)
            r = max(x_slices(Fp))
            for m in _divisors(r):
                try:
                    z = zeta(C.context, m)
                except RootsMissingError:
                    continue
                ok = solve_homology(Fp, r, z) is not None
                assert ok == (c.order % m == 0), (C.name, str(c.point), m)
                checked += 1
    assert checked >= 50


@pytest.mark.criterion(8)
def test_lemma_subgroup_divisibility():
    total = 0
    for _, certs in _corpus_certs():
        for c in certs:
            assert c.projection_degree % c.order == 0
            total += 1
    assert total >= 50


def _cyclic(g, n):
    return {g**k for k in range(n)}


@pytest.mark.criterion(8)
def test_two_groups_trivial_intersection():
    pairs = 0
    for _, certs in _corpus_certs():
        groups = [(c.point, _cyclic(c.generator, c.order)) for c in certs]
        for (p1, g1), (p2, g2) in combinations(groups, 2):
            assert p1 != p2
            common = g1 & g2
            assert len(common) == 1 and next(iter(common)).is_identity()
            pairs += 1
    assert pairs >= 50


def _curve_points_on_line(C, line):
    A, B = line.points()
    g = restrict_to_line(C, A, B)
    roots, _ = field_roots(g)
    pts = {ProjPoint(tuple(a + t * b for a, b in zip(A.coords, B.coords))) for t in roots}
    if g.degree < C.degree:
        pts.add(B)
    return [P for P in pts if on_curve(C, P)]


@pytest.mark.criterion(8)
def test_ramification_congruences():
    checked = covered = 0
    split = [corpus_discovery("fermat", {"d": d, "conductor": 2 * d}) for d in (4, 6)]
    for C, certs in _corpus_certs() + split:
        for c in certs:
            covered += 1
            n = c.order
            if c.on_curve:
                T = tangent_line(C.form, c.point)
                assert intersection_multiplicity(C.form, T, c.point) % n == 1 % n
                checked += 1
            for Q in _curve_points_on_line(C.form, c.axis):
                T = tangent_line(C.form, Q)
                assert intersection_multiplicity(C.form, T, Q) % n == 0
                assert T.contains(c.point)
                checked += 1
    assert covered >= 50 and checked >= 50


@pytest.mark.criterion(8)
def test_lemma_pair_one_outer():
    pairs = 0
    for _, certs in _corpus_certs():
        outer = [c for c in certs if not c.on_curve]
        for c1, c2 in combinations(outer, 2):
            w = is_gpair(c1, c2)
            assert w.first_fixes_second == w.second_fixes_first
            pairs += 1
    assert pairs >= 50


@pytest.mark.criterion(8)
def test_dual_involution():
    total = 0
    for _, certs in _corpus_certs():
        for c in certs:
            dc = dual_certificate(c)
            assert dual_certificate(dc) == c
            assert dc.order == c.order
            assert dc.generator.order(c.order) == c.order
            assert dc.generator.apply(dc.point) == dc.point
            assert all(dc.generator.apply(Q) == Q for Q in dc.axis.points())
            total += 1
    assert total >= 50


@pytest.mark.criterion(8)
def test_census_bounds_on_corpus():
    for C, certs in _corpus_certs():
        rep = census(C.form, certs)
        bad = [str(b) for b in rep.checks if not b.holds]
        assert not bad, (C.name, bad)


@pytest.mark.criterion(8)
@PROPS
@given(st.sampled_from(["fermat:4", "fermat:5", "hessian_sextic", "quartic_family"]),
       st.data())
def test_census_bounds_under_partial_discovery(name, data):
    base, _, d = name.partition(":")
    params = {"d": int(d)} if d else ({"a": 1} if base == "quartic_family" else {})
    C, full = corpus_discovery(base, params)
    seeds = data.draw(st.lists(st.sampled_from(C.seeds), min_size=1, unique=True))
    certs = discover(C.form, seeds)
    rep, ref = census(C.form, certs), census(C.form, full)
    assert rep.bounds_hold
    for n, v in rep.outer.items():
        assert v <= ref.delta_outer(n)
    for n, v in rep.inner.items():
        assert v <= ref.delta(n)


# -- 9: flex formula ------------------------------------------------------------------------


@pytest.mark.criterion(9)
@pytest.mark.parametrize("d", [4, 6])
def test_flex_formula(d):
    C = build_curve("fermat", {"d": d, "conductor": 2 * d})
    flexes, complete = context_flexes(C.form)
    assert complete
    assert sum(flex_contribution(C.form, Q) for Q in flexes) == 3 * d * (d - 2)


# -- 10: Galois closure bookkeeping -----------------------------------------------------


@pytest.mark.criterion(10)
def test_closure_bounds():
    b = galois_closure_bounds(2, 4)
    assert (b.lower, b.upper_generic) == (4, 8)
    assert b.lower <= 8 <= b.upper_generic  # dihedral group of order 8
    assert gcd(8, b.upper_generic) == 8


@pytest.mark.criterion(10)
def test_predicted_group():
    p = predicted_galois_group(3, 6)
    assert p.order == 18
    assert p.label == "(Z/3Z) x D_6"
