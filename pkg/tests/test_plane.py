from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quasigalois.corpus import build_curve
from quasigalois.errors import (
    EqualPointsError,
    LineInCurveError,
    NotIncidentError,
    NotOnCurveError,
    ParseError,
    ProjectionDegenerateError,
    SingularPointError,
)
from quasigalois.exactnum import make_context, zeta
from quasigalois.plane import (
    ProjLine,
    ProjPoint,
    ProjTransform,
    context_flexes,
    flex_contribution,
    intersection_multiplicity,
    is_smooth,
    is_smooth_point,
    line_through,
    mat_vec,
    normalize_center,
    on_curve,
    projection_degree,
    ramification_index,
    tangent_line,
)
from quasigalois.polyring import (
    TriForm,
    field_roots,
    hessian_form,
    restrict_to_line,
    substitute_linear,
)

Q = make_context(1)
K8 = make_context(8)
ints = st.integers(-4, 4)


def xyz(ctx):
    return [TriForm.variable(ctx, i) for i in range(3)]


def fermat4():
    X, Y, Z = xyz(K8)
    return X**4 + Y**4 + Z**4


ETA = zeta(K8, 8)  # eta^4 = -1


def pt(ctx, *xs):
    return ProjPoint(xs, ctx)


def line(ctx, *xs):
    return ProjLine(xs, ctx)


# -- points, lines, transforms -----------------------------------------------------


def test_point_normalization():
    P = pt(Q, 0, 2, 4)
    assert P.coords == (0, 1, 2)
    assert P == pt(Q, 0, -1, -2)
    assert str(P) == "(0:1:2)"


def test_point_parse():
    ctx = make_context(4)
    assert ProjPoint.parse(ctx, "z : 1 : 0") == ProjPoint((zeta(ctx, 4), ctx.one(), ctx.zero()))
    for bad in ["1:0:", "1:0", "0:0:0", "1:0:0:1", "1:x:0"]:
        with pytest.raises(ParseError):
            ProjPoint.parse(ctx, bad)


def test_line_through_examples():
    assert line_through(pt(Q, 1, 0, 0), pt(Q, 0, 1, 0)) == line(Q, 0, 0, 1)
    assert line_through(pt(Q, 1, 1, 1), pt(Q, 1, 0, 0)) == line(Q, 0, 1, -1)
    with pytest.raises(EqualPointsError):
        line_through(pt(Q, 1, 1, 1), pt(Q, 2, 2, 2))


@st.composite
def transforms(draw, ctx=Q):
    """Invertible by construction: a row permutation of L U, unit diagonals."""
    l1, l2, l3, u1, u2, u3 = (draw(ints) for _ in range(6))
    L = [[1, 0, 0], [l1, 1, 0], [l2, l3, 1]]
    U = [[1, u1, u2], [0, 1, u3], [0, 0, 1]]
    A = [[sum(L[i][k] * U[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    perm = draw(st.permutations([0, 1, 2]))
    return ProjTransform([[ctx.rational(x) for x in A[p]] for p in perm])


nonzero_triples = st.tuples(st.integers(1, 4), ints, ints).flatmap(
    lambda t: st.permutations(list(t)))


@settings(max_examples=80, deadline=None)
@given(transforms(), nonzero_triples, nonzero_triples, st.booleans())
def test_incidence_after_transform(A, q, m, force):
    P = pt(Q, *q)
    L = line(Q, *m)
    if force:
        other = pt(Q, *m)
        assume(other != P)
        L = line_through(P, other)
    moved = ProjLine(mat_vec(A.inverse_transpose().matrix, L.coords))
    assert L.contains(P) == moved.contains(A.apply(P))
    assert A.apply_line(L).contains(A.apply(P)) == L.contains(P)


@settings(max_examples=50, deadline=None)
@given(transforms(), transforms())
def test_transform_group_laws(A, B):
    assert (A @ A.inverse()).is_identity()
    assert (A @ B).inverse() == B.inverse() @ A.inverse()
    P = pt(Q, 1, 2, 3)
    assert (A @ B).apply(P) == A.apply(B.apply(P))


def test_transform_normalization_and_order():
    ctx = make_context(3)
    g = ProjTransform.diagonal(ctx, [zeta(ctx, 3), 1, 1])
    assert g.order() == 3
    assert ProjTransform.diagonal(ctx, [2, 2, 2]).is_identity()
    perm = ProjTransform.permutation(ctx, (1, 2, 0))
    assert perm.apply(pt(ctx, 1, 0, 0)) == pt(ctx, 0, 1, 0)
    assert perm.order() == 3


# -- tangent lines, multiplicities, ramification ------------------------------------


def test_tangent_examples():
    F = fermat4()
    Qe = pt(K8, 0, ETA, 1)
    assert tangent_line(F, Qe) == line(K8, 0, ETA**3, 1)
    X, Y, Z = xyz(Q)
    assert tangent_line(X**2 + Y**2 - Z**2, pt(Q, 1, 0, 1)) == line(Q, 1, 0, -1)
    with pytest.raises(SingularPointError):
        tangent_line(Y**2 * Z - X**3, pt(Q, 0, 0, 1))
    with pytest.raises(NotOnCurveError):
        tangent_line(F, pt(K8, 1, 0, 0))


def test_intersection_multiplicity_examples():
    F = fermat4()
    Qe = pt(K8, 0, ETA, 1)
    assert intersection_multiplicity(F, tangent_line(F, Qe), Qe) == 4
    Qz = pt(K8, ETA, 1, 0)
    assert intersection_multiplicity(F, line(K8, 0, 0, 1), Qz) == 1
    assert intersection_multiplicity(F, (Qz, pt(K8, 1, 0, 0)), Qz) == 1
    with pytest.raises(NotIncidentError):
        intersection_multiplicity(F, line(K8, 1, 0, 0), Qz)


def test_projection_degree_examples():
    F = fermat4()
    assert projection_degree(F, pt(K8, 1, 0, 0)) == 4
    assert projection_degree(F, pt(K8, 0, ETA, 1)) == 3
    M = build_curve("miura_example", {"n": 2})
    assert projection_degree(M.form, pt(M.context, 0, 0, 1)) == 4
    X, Y, Z = xyz(Q)
    with pytest.raises(ProjectionDegenerateError):
        projection_degree(X * Y**3 + Z**4, pt(Q, 1, 0, 0))


def test_ramification_examples():
    F = fermat4()
    Qe = pt(K8, 0, ETA, 1)
    assert ramification_index(F, Qe, Qe) == 3
    assert ramification_index(F, pt(K8, 1, 0, 0), Qe) == 4
    assert ramification_index(F, pt(K8, 1, 0, 0), pt(K8, ETA, 1, 0)) == 1


def test_flex_contribution_examples():
    F = fermat4()
    assert flex_contribution(F, pt(K8, 0, ETA, 1)) == 2
    K12 = make_context(12)
    X, Y, Z = xyz(K12)
    eta6 = zeta(K12, 12)
    assert eta6**6 == -1
    assert flex_contribution(X**6 + Y**6 + Z**6, pt(K12, 0, eta6, 1)) == 4


def test_normalize_center():
    ctx = make_context(3)
    F = build_curve("hessian_sextic").form
    M, Fp = normalize_center(F, pt(ctx, 1, 0, 0))
    assert M.is_identity() and Fp == F
    for P in [pt(ctx, 0, 1, 0), pt(ctx, 0, 0, 1), pt(ctx, 2, -1, zeta(ctx, 3))]:
        M, Fp = normalize_center(F, P)
        assert M.apply(P) == pt(ctx, 1, 0, 0)
        assert substitute_linear(Fp, M.matrix) == F


# -- Hessian cross-check and Bezout ----------------------------------------------------


@st.composite
def curves_through_a_point(draw):
    """A random quartic over Q forced through (a:b:1)."""
    a, b = draw(ints), draw(ints)
    terms = {}
    for i in range(5):
        for j in range(5 - i):
            c = draw(ints)
            if c:
                terms[(i, j, 4 - i - j)] = c
    G = TriForm(Q, 4, terms)
    P = pt(Q, a, b, 1)
    X, Y, Z = xyz(Q)
    F = G - (Z**4).scale(G.evaluate(P.coords))
    return F, P


@settings(max_examples=80, deadline=None)
@given(curves_through_a_point())
def test_hessian_detects_flexes(case):
    F, P = case
    assume(not F.is_zero() and is_smooth_point(F, P))
    try:
        fc = flex_contribution(F, P)
    except LineInCurveError:
        return
    assert (hessian_form(F).evaluate(P.coords) == 0) == (fc >= 1)


def test_hessian_detects_fermat_flexes():
    F = fermat4()
    H = hessian_form(F)
    for P in [pt(K8, 0, ETA, 1), pt(K8, ETA, 0, 1), pt(K8, ETA, 1, 0)]:
        assert H.evaluate(P.coords) == 0 and flex_contribution(F, P) == 2


def test_multiplicities_sum_to_degree():
    # every line through two of the 12 hyperflexes or the vertices; keep the
    # lines whose restriction splits over the field
    F = fermat4()
    o, z = K8.one(), K8.zero()
    special = [pt(K8, 1, 0, 0), pt(K8, 0, 1, 0), pt(K8, 0, 0, 1)]
    for k in (1, 3, 5, 7):
        e = ETA**k
        special += [ProjPoint((z, e, o)), ProjPoint((e, z, o)), ProjPoint((e, o, z))]
    lines = {line_through(P, R) for i, P in enumerate(special) for R in special[i + 1:]}
    split = 0
    for L in lines:
        A, B = L.points()
        g = restrict_to_line(F, A, B)
        roots, complete = field_roots(g)
        if not complete:
            continue
        pts = [ProjPoint(tuple(x + t * y for x, y in zip(A.coords, B.coords))) for t in roots]
        if g.degree < F.degree:
            pts.append(B)
        assert sum(intersection_multiplicity(F, L, R) for R in pts) == F.degree
        split += 1
    assert split >= 10


# -- smoothness and flexes ---------------------------------------------------------------


@pytest.mark.parametrize("name,params", [
    ("fermat", {"d": 4}), ("fermat", {"d": 5}), ("fermat", {"d": 6}), ("fermat", {"d": 7}),
    ("fermat", {"d": 8}), ("hessian_sextic", {}), ("klein_model", {}),
    ("quartic_family", {"a": 1}), ("quartic_family", {"a": 3, "b": 1, "c": -1}),
    ("halfdeg_family", {"n": 3}), ("halfdeg_family", {"n": 7}),
])
def test_corpus_curves_are_smooth(name, params):
    assert str(is_smooth(build_curve(name, params).form)) == "Smooth"


def test_singular_quartic():
    ctx = make_context(4)
    X, Y, Z = xyz(ctx)
    res = is_smooth(X**4 + Y**4 + Z**4 + (X**2 * Y**2).scale(2))
    assert res.status == "singular"
    i = zeta(ctx, 4)
    assert res.witness in {ProjPoint((ctx.one(), i, ctx.zero())),
                           ProjPoint((ctx.one(), -i, ctx.zero()))}


def test_singular_witness_is_certified():
    X, Y, Z = xyz(Q)
    res = is_smooth(Y**2 * Z - X**3 - X**2 * Z)  # nodal cubic
    assert res.status == "singular"
    assert res.witness == pt(Q, 0, 0, 1)
    assert on_curve(Y**2 * Z - X**3 - X**2 * Z, res.witness)


def test_context_flexes_fermat_quartic():
    C = build_curve("fermat", {"d": 4, "conductor": 8})
    flexes, complete = context_flexes(C.form)
    assert complete and len(flexes) == 12
    assert all(flex_contribution(C.form, P) == 2 for P in flexes)
    assert flexes == sorted(flexes)
