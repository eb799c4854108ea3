"""Named curves with their fields, seed points and known censuses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadParamsError, NoExpectationError, UnknownNameError
from .exactnum import FieldContext, FieldElement, embed, make_context, parse_expr, zeta
from .groupkit import homology_decomposition
from .plane import ProjPoint, ProjTransform, preserves
from .polyring import TriForm
from .qgal import CensusReport, bound_checks


@dataclass(frozen=True)
class NamedCurve:
    name: str
    context: FieldContext
    form: TriForm
    seeds: tuple = ()
    params: dict = field(default_factory=dict)
    expected: CensusReport | None = None
    expected_group_order: int | None = None
    provenance: str = ""

    @property
    def degree(self) -> int:
        return self.form.degree


def _vars(ctx):
    return [TriForm.variable(ctx, i) for i in range(3)]


def _scalar(ctx, value, name) -> FieldElement:
    if isinstance(value, FieldElement):
        return embed(value, ctx) if value.ctx != ctx else value
    if isinstance(value, str):
        return parse_expr(ctx, value)
    if isinstance(value, (int, Fraction)):
        return ctx.rational(value)
    raise BadParamsError(f"parameter {name} has unsupported type {type(value).__name__}")


def _int_param(params, key, default=None, minimum=1) -> int:
    val = params.get(key, default)
    if val is None:
        raise BadParamsError(f"missing parameter {key}")
    if isinstance(val, int) and not isinstance(val, bool):
        ival = val
    elif isinstance(val, str) and val.strip().lstrip("-").isdigit():
        ival = int(val)
    else:
        raise BadParamsError(f"parameter {key} must be an integer, got {val!r}")
    if ival < minimum:
        raise BadParamsError(f"parameter {key} must be at least {minimum}")
    return ival


def _pt(ctx, *coords) -> ProjPoint:
    return ProjPoint(coords, ctx)


def _census(d, inner, outer) -> CensusReport:
    return CensusReport(d, dict(sorted(inner.items())), dict(sorted(outer.items())),
                        bound_checks(d, inner, outer))


def _vertices(ctx):
    return [_pt(ctx, 1, 0, 0), _pt(ctx, 0, 1, 0), _pt(ctx, 0, 0, 1)]


# ---------------------------------------------------------------------------


def _fermat(params) -> NamedCurve:
    d = _int_param(params, "d", minimum=4)
    default = d if d % 2 == 0 else 2 * d
    N = _int_param(params, "conductor", default)
    if N % default:
        raise BadParamsError(f"conductor must be a multiple of {default}")
    ctx = make_context(N)
    X, Y, Z = _vars(ctx)
    F = X**d + Y**d + Z**d
    if d % 2 == 0:
        c = zeta(ctx, d)
        vals = [c**k for k in range(d)]
        expected = _census(d, {}, {d: 3, 2: 3 * d})
    else:
        e = zeta(ctx, 2 * d)
        vals = [e ** (2 * k + 1) for k in range(d)]
        expected = _census(d, {2: 3 * d}, {d: 3})
    o, z = ctx.one(), ctx.zero()
    seeds = _vertices(ctx)
    for v in vals:
        seeds += [_pt(ctx, v, z, o), _pt(ctx, z, v, o), _pt(ctx, v, o, z)]
    return NamedCurve(
        f"fermat:{d}", ctx, F, tuple(seeds), {"d": d, "conductor": N}, expected, 6 * d * d,
        "Fermat curve census: 3 outer Galois points, plus 3d outer involution centers "
        "(even d) or 3d inner ones (odd d)",
    )


def _hessian(params) -> NamedCurve:
    ctx = make_context(3)
    X, Y, Z = _vars(ctx)
    F = X**6 + Y**6 + Z**6 - (X**3 * Y**3 + Y**3 * Z**3 + Z**3 * X**3).scale(10)
    seeds = _vertices(ctx) + [_pt(ctx, 1, 1, 1)]
    return NamedCurve(
        "hessian_sextic", ctx, F, tuple(seeds), {}, _census(6, {}, {3: 12}), 216,
        "sextic with twelve outer points of order 3; automorphism group is the Hessian group",
    )


def gauss_sum_7(ctx: FieldContext) -> FieldElement:
    """sum of chi(k) zeta_7^k over k = 1..6 with chi the quadratic character."""
    z7 = zeta(ctx, 7)
    chi = {1: 1, 2: 1, 4: 1, 3: -1, 5: -1, 6: -1}
    g = ctx.zero()
    for k, s in chi.items():
        g = g + z7**k * s
    return g


def klein_constants():
    """(a, w, lam) in Q(zeta_28) with a^2 + 3a + 18 = 0, w = 4a/(6 - a), lam^2 = w.

    a = (-3 + 3g)/2 with g the Gauss sum (g^2 = -7); then w = (-3 + g)/2 is
    the square of (1 + g)/2, so lam lies in the cyclotomic field itself.
    """
    ctx = make_context(28)
    g = gauss_sum_7(ctx)
    a = (g * 3 - 3) / 2
    w = a * 4 / (6 - a)
    lam = (g + 1) / 2
    if a * a + a * 3 + 18 != 0 or lam * lam != w:
        raise AssertionError("Klein model constants fail their defining identities")
    return a, w, lam


def klein_tau(lam: FieldElement) -> ProjTransform:
    ctx = lam.ctx
    two = ctx.rational(2)
    z, o = ctx.zero(), ctx.one()
    return ProjTransform(((z, two / lam, -two / lam), (lam, o, o), (-lam, o, o)))


def _klein(params) -> NamedCurve:
    a, w, lam = klein_constants()
    ctx = a.ctx
    X, Y, Z = _vars(ctx)
    F = X**4 + Y**4 + Z**4 + (X**2 * Y**2 + Y**2 * Z**2 + Z**2 * X**2).scale(a)
    tau = klein_tau(lam)
    if preserves(tau, F) is None:
        raise AssertionError("tau does not preserve the Klein model")
    info = homology_decomposition(tau)
    seeds = _vertices(ctx) + [
        _pt(ctx, 0, 1, 1), _pt(ctx, 0, -1, 1),
        _pt(ctx, 1, 0, 1), _pt(ctx, -1, 0, 1),
        _pt(ctx, 1, 1, 0), _pt(ctx, -1, 1, 0),
        info.center,
    ]
    return NamedCurve(
        "klein_model", ctx, F, tuple(seeds), {}, _census(4, {}, {2: 21}), 168,
        "quartic with the maximal number 21 of outer involution centers",
    )


def _quartic_family(params) -> NamedCurve:
    N = _int_param(params, "conductor", 4)
    if N % 4:
        raise BadParamsError("conductor must be a multiple of 4")
    ctx = make_context(N)
    a, b, c = (_scalar(ctx, params.get(k, 0), k) for k in "abc")
    X, Y, Z = _vars(ctx)
    F = X**4 + Y**4 + Z**4 + (X**2 * Y**2).scale(a) + (Y**2 * Z**2).scale(b) \
        + (Z**2 * X**2).scale(c)
    i = zeta(ctx, 4)
    seeds = _vertices(ctx) + [
        _pt(ctx, 1, 1, 0), _pt(ctx, -1, 1, 0), ProjPoint((i, ctx.one(), ctx.zero())),
        ProjPoint((-i, ctx.one(), ctx.zero())),
    ]
    expected = None
    if b == 0 and c == 0 and all(a != v for v in (0, 6, -6, 2, -2)):
        expected = _census(4, {}, {4: 1, 2: 6})
    return NamedCurve(
        "quartic_family", ctx, F, tuple(seeds), {"a": str(a), "b": str(b), "c": str(c)},
        expected, None,
        "quartic X^4+Y^4+Z^4+aX^2Y^2+bY^2Z^2+cZ^2X^2; for b=c=0 and non-Fermat a, "
        "(0:0:1) is outer Galois and exactly six outer involution centers lie on Z=0",
    )


def _halfdeg(params) -> NamedCurve:
    n = _int_param(params, "n", minimum=2)
    N = _int_param(params, "conductor", 2 * n)
    if N % (2 * n):
        raise BadParamsError(f"conductor must be a multiple of {2 * n}")
    ctx = make_context(N)
    a, b, c = (_scalar(ctx, params.get(k, 1), k) for k in "abc")
    X, Y, Z = _vars(ctx)
    F = X ** (2 * n) + Y ** (2 * n) + Z ** (2 * n) + (X**n * Y**n).scale(a) \
        + (Y**n * Z**n).scale(b) + (Z**n * X**n).scale(c)
    return NamedCurve(
        f"halfdeg:{n}", ctx, F, tuple(_vertices(ctx)),
        {"n": n, "a": str(a), "b": str(b), "c": str(c)}, None, None,
        "degree 2n curve whose coordinate vertices are outer points of order n "
        "forming pairwise G-pairs; for d >= 14 there are exactly three such points",
    )


def _coprime(params) -> NamedCurve:
    ctx = make_context(_int_param(params, "conductor", 3))
    X, Y, Z = _vars(ctx)
    F = X**6 * Z + X**3 * Y**4 + Y**6 * Z + Z**7
    return NamedCurve(
        "coprime_example", ctx, F, (_pt(ctx, 1, 0, 0), _pt(ctx, 0, 1, 0)), {}, None, None,
        "degree 7 curve with inner points of coprime orders 3 and 2 whose fixed loci "
        "meet C only at the two points",
    )


def _miura(params) -> NamedCurve:
    n = _int_param(params, "n", minimum=1)
    ctx = make_context(_int_param(params, "conductor", n))
    X, Y, Z = _vars(ctx)
    F = Y * (X**2 + Y**2) ** n + X ** (n + 1) * Z**n + Y ** (n + 1) * Z**n + Y * Z ** (2 * n)
    return NamedCurve(
        f"miura:{n}", ctx, F, (_pt(ctx, 0, 0, 1),), {"n": n}, None, None,
        "degree 2n+1 curve with a singular point used to compare G[P] with G0[P]",
    )


_BUILDERS = {
    "fermat": _fermat,
    "hessian_sextic": _hessian,
    "klein_model": _klein,
    "quartic_family": _quartic_family,
    "halfdeg_family": _halfdeg,
    "coprime_example": _coprime,
    "miura_example": _miura,
}

ALIASES = {
    "hessian": "hessian_sextic",
    "klein": "klein_model",
    "halfdeg": "halfdeg_family",
    "quartic-family": "quartic_family",
    "coprime": "coprime_example",
    "miura": "miura_example",
}

NAMES = tuple(_BUILDERS)


def build_curve(name: str, params: dict | None = None) -> NamedCurve:
    key = ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise UnknownNameError(f"unknown curve {name!r}; known: {', '.join(NAMES)}")
    return _BUILDERS[key](dict(params or {}))


def expected_census(name: str, params: dict | None = None) -> CensusReport:
    curve = build_curve(name, params)
    if curve.expected is None:
        raise NoExpectationError(f"no proven complete census for {curve.name}")
    return curve.expected


def seed_points(name: str, params: dict | None = None) -> list[ProjPoint]:
    return list(build_curve(name, params).seeds)


__all__ = [
    "NamedCurve",
    "build_curve",
    "expected_census",
    "seed_points",
    "klein_constants",
    "klein_tau",
    "gauss_sum_7",
    "NAMES",
    "ALIASES",
]
