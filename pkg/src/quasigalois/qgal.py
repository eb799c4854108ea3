"""Quasi-Galois points: certificates, discovery, censuses and bound checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from math import factorial, gcd
from typing import NamedTuple

from .errors import (
    BadParamsError,
    CapExceededError,
    EqualPointsError,
    NotApplicableError,
    NotAutomorphismError,
    NotDivisibleError,
    NotHomologyError,
    NotQuasiGaloisError,
    ProjectionDegenerateError,
)
from .exactnum import FieldElement, zeta
from .groupkit import homology_decomposition
from .plane import (
    ProjLine,
    ProjPoint,
    ProjTransform,
    kernel,
    mat_mul,
    normalize_center,
    on_curve,
    preserves,
)
from .polyring import (
    TriForm,
    divide_binary,
    field_roots,
    restrict_to_line,
    substitute_linear,
    x_slices,
)

DEFAULT_DISCOVERY_CAP = 512


@dataclass(frozen=True)
class QGCertificate:
    """Order n = |G0[P]| of the group of homologies with center P preserving C.

    For n >= 2 the generator is a homology of order n with center P and the
    given axis.  A dual certificate (``dual=True``) lives in the dual plane:
    its point and axis are the primal axis and point read as dual
    coordinates; on_curve and projection_degree are carried over.
    """

    point: ProjPoint
    on_curve: bool
    projection_degree: int
    order: int
    generator: ProjTransform | None = None
    axis: ProjLine | None = None
    dual: bool = False

    @property
    def galois(self) -> bool:
        return self.order == self.projection_degree

    @property
    def quasi_galois(self) -> bool:
        return self.order >= 2

    def sort_key(self):
        return self.point.sort_key()

    def to_record(self) -> dict:
        return {
            "point": str(self.point),
            "on_curve": self.on_curve,
            "projection_degree": self.projection_degree,
            "order": self.order,
            "galois": self.galois,
            "generator": self.generator.rows_str() if self.generator else None,
            "axis": self.axis.equation() if self.axis else None,
            "dual": self.dual,
        }


# ---------------------------------------------------------------------------


def solve_homology(Fp: TriForm, r: int, z: FieldElement):
    """(a, b) with F'(zX + aY + bZ, Y, Z) = z^r F'(X, Y, Z), or None.

    Comparing X^(r-1) coefficients forces (aY + bZ) a_r = ((z - 1)/r) a_(r-1),
    so the candidate is unique; it is then checked by full expansion.
    """
    ctx = Fp.ctx
    slices = x_slices(Fp)
    if r not in slices or max(slices) != r:
        raise ValueError(f"form does not have X-degree {r}")
    if r - 1 in slices:
        w = divide_binary(slices[r - 1].scale((z - 1) / r), slices[r])
        if w is None:
            return None
        a, b = w.coefficient((0, 1, 0)), w.coefficient((0, 0, 1))
    else:
        a, b = ctx.zero(), ctx.zero()
    o, zero = ctx.one(), ctx.zero()
    A = ((z, a, b), (zero, o, zero), (zero, zero, o))
    if substitute_linear(Fp, A) != Fp.scale(z**r):
        return None
    return a, b


def _shifted_order(Fp: TriForm, r: int) -> int:
    """Largest n such that a homology of order n centered at (1:0:0) exists.

    Shifting X by a_(r-1)/(r a_r) clears the X^(r-1) slice; in the shifted
    coordinates the homologies centered at (1:0:0) are diagonal, so n is the
    gcd of r and the X-exponents present.
    """
    slices = x_slices(Fp)
    if r - 1 in slices:
        mu = divide_binary(slices[r - 1], slices[r].scale(r))
        if mu is None:
            return 1
        ctx = Fp.ctx
        o, z = ctx.one(), ctx.zero()
        cy, cz = mu.coefficient((0, 1, 0)), mu.coefficient((0, 0, 1))
        shift = ((o, -cy, -cz), (z, o, z), (z, z, o))
        slices = x_slices(substitute_linear(Fp, shift))
    n = r
    for i in slices:
        n = gcd(n, r - i)
    return n


def quasi_galois_order(C: TriForm, P: ProjPoint) -> QGCertificate:
    M, Fp = normalize_center(C, P)
    r = max(x_slices(Fp), default=0)
    if r <= 1:
        raise ProjectionDegenerateError(f"projection from {P} has degree {r}")
    inside = on_curve(C, P)
    n = _shifted_order(Fp, r)
    if n < 2:
        return QGCertificate(P, inside, r, 1)
    z = zeta(C.ctx, n)
    sol = solve_homology(Fp, r, z)
    if sol is None:  # cannot happen: the shifted diagonal homology pulls back
        raise AssertionError("homology candidate failed verification")
    a, b = sol
    ctx = C.ctx
    o, zero = ctx.one(), ctx.zero()
    A = ((z, a, b), (zero, o, zero), (zero, zero, o))
    Minv = M.inverse()
    gen = ProjTransform._trusted(mat_mul(mat_mul(Minv.matrix, A), M.matrix))
    axis_row = (z - 1, a, b)
    axis = ProjLine(tuple(sum((M.matrix[k][i] * axis_row[k] for k in range(3)), zero)
                          for i in range(3)))
    return QGCertificate(P, inside, r, n, gen, axis)


def verify_certificate(C: TriForm, cert: QGCertificate) -> bool:
    """Independent check of a certificate's stored data."""
    if cert.order < 2:
        return quasi_galois_order(C, cert.point).order == 1
    g = cert.generator
    return (
        preserves(g, C) is not None
        and g.order(cert.order) == cert.order
        and g.apply(cert.point) == cert.point
        and not cert.axis.contains(cert.point)
        and all(g.apply(Q) == Q for Q in cert.axis.points())
        and cert.projection_degree % cert.order == 0
    )


def fixed_locus(sigma: ProjTransform) -> tuple[ProjPoint, ProjLine]:
    info = homology_decomposition(sigma)
    if info.kind != "homology":
        raise NotHomologyError(f"transform is not a homology ({info.kind})")
    return info.center, info.axis


@dataclass(frozen=True)
class GPairWitness:
    first: QGCertificate
    second: QGCertificate
    first_fixes_second: bool
    second_fixes_first: bool

    @property
    def is_gpair(self) -> bool:
        return self.first_fixes_second and self.second_fixes_first

    def __bool__(self):
        return self.is_gpair


def is_gpair(c1: QGCertificate, c2: QGCertificate) -> GPairWitness:
    if c1.order < 2 or c2.order < 2:
        raise NotQuasiGaloisError("both points must be quasi-Galois")
    return GPairWitness(
        c1,
        c2,
        c1.generator.apply(c2.point) == c2.point,
        c2.generator.apply(c1.point) == c1.point,
    )


def conjugate_certificate(c: QGCertificate, tau: ProjTransform, C: TriForm) -> QGCertificate:
    if preserves(tau, C) is None:
        raise NotAutomorphismError("transform does not preserve the curve")
    if c.order < 2:
        return replace(c, point=tau.apply(c.point))
    gen = tau @ c.generator @ tau.inverse()
    out = QGCertificate(
        tau.apply(c.point), c.on_curve, c.projection_degree, c.order, gen, tau.apply_line(c.axis)
    )
    if not verify_certificate(C, out):
        raise AssertionError("conjugated certificate failed verification")
    return out


def discover(C: TriForm, seeds, cap: int = DEFAULT_DISCOVERY_CAP) -> list[QGCertificate]:
    """Quasi-Galois points reachable from the seeds under the known generators.

    Every seed is certified; then each generator power is applied to every
    known point until nothing new appears.  The result is a verified lower
    bound for the set of quasi-Galois points, sorted by point.
    """
    if cap < 1:
        raise BadParamsError("cap must be positive")
    certs: dict[ProjPoint, QGCertificate] = {}
    rejected: set[ProjPoint] = set()

    def consider(P):
        if P in certs or P in rejected:
            return False
        try:
            cert = quasi_galois_order(C, P)
        except ProjectionDegenerateError:
            rejected.add(P)
            return False
        if cert.order < 2:
            rejected.add(P)
            return False
        certs[P] = cert
        if len(certs) > cap:
            raise CapExceededError(
                f"discovery exceeded {cap} points", partial=sorted(certs.values(), key=_key)
            )
        return True

    for P in sorted(set(seeds)):
        consider(P)
    done: set[tuple] = set()
    changed = True
    while changed:
        changed = False
        known = sorted(certs)
        for gp in known:
            cert = certs[gp]
            powers = [cert.generator ** k for k in range(1, cert.order)]
            for Q in known:
                if (gp, Q) in done:
                    continue
                done.add((gp, Q))
                for g in powers:
                    if consider(g.apply(Q)):
                        changed = True
    return sorted(certs.values(), key=_key)


def _key(c: QGCertificate):
    return c.sort_key()


# ---------------------------------------------------------------------------


class BoundCheck(NamedTuple):
    name: str
    lhs: int
    rhs: int
    holds: bool

    def __str__(self):
        rel = "<=" if self.holds else ">"
        return f"{self.name}: {self.lhs} {rel} {self.rhs}"


@dataclass(frozen=True)
class CensusReport:
    degree: int
    inner: dict = field(default_factory=dict)  # n -> delta[n]
    outer: dict = field(default_factory=dict)  # n -> delta'[n]
    checks: tuple = ()

    def delta(self, n: int) -> int:
        return self.inner.get(n, 0)

    def delta_outer(self, n: int) -> int:
        return self.outer.get(n, 0)

    def delta_ge(self, n: int) -> int:
        return sum(v for k, v in self.inner.items() if k >= n)

    def delta_outer_ge(self, n: int) -> int:
        return sum(v for k, v in self.outer.items() if k >= n)

    @property
    def bounds_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def tallies(self) -> dict:
        return {
            "inner": {str(k): v for k, v in sorted(self.inner.items())},
            "outer": {str(k): v for k, v in sorted(self.outer.items())},
        }

    def to_record(self) -> dict:
        rec = {"degree": self.degree, **self.tallies()}
        rec["bounds"] = [
            {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds} for c in self.checks
        ]
        return rec


def bound_checks(d: int, inner: dict, outer: dict) -> tuple[BoundCheck, ...]:
    """Every census inequality that applies at degree d."""
    checks = []
    top = max([d, *inner, *outer])
    flexes = 3 * d * (d - 2)

    def weight(n):
        return n - 1 + d * (n - 2)

    for m in range(2, top + 1):
        orders = sorted(n for n in inner if n % m == 0)
        lhs = sum(inner[n] * weight(n) for n in orders)
        checks.append(BoundCheck(f"inner flex sum, orders divisible by {m}", lhs, flexes, lhs <= flexes))
        for n in range(m, top + 1, m):
            count = sum(inner[k] for k in orders if k >= n)
            if (n + 1) * weight(n) > flexes:
                checks.append(BoundCheck(f"inner single point, m={m}, n>={n}", count, 1, count <= 1))
            elif (n * n + n + 1) * weight(n) > flexes:
                checks.append(BoundCheck(f"inner collinear, m={m}, n>={n}", count, d, count <= d))
    lhs = sum(v * (n - 2) for n, v in outer.items() if n >= 3)
    checks.append(BoundCheck("outer flex sum", lhs, 3 * (d - 2), lhs <= 3 * (d - 2)))
    for n in range(3, top + 1):
        if (n + 1) * (n - 2) > 3 * (d - 2):
            count = sum(v for k, v in outer.items() if k >= n)
            checks.append(BoundCheck(f"outer at most three, n>={n}", count, 3, count <= 3))
    if d == 4:
        v = outer.get(2, 0)
        checks.append(BoundCheck("quartic outer involutions", v, 21, v <= 21))
    if d == 6:
        v = outer.get(3, 0)
        checks.append(BoundCheck("sextic outer order three", v, 12, v <= 12))
    if d >= 6 and d % 2 == 0:
        n = d // 2
        v = sum(c for k, c in outer.items() if k >= n)
        checks.append(BoundCheck(f"half degree outer, n>={n}", v, 12, v <= 12))
        if d >= 14:
            checks.append(BoundCheck(f"half degree outer in {{0,1,3}}, n>={n}", v, 3, v in (0, 1, 3)))
    if d >= 7 and d % 2 == 1:
        n = (d - 1) // 2
        v = sum(c for k, c in inner.items() if k >= n)
        cap = 1 if d >= 15 else d
        checks.append(BoundCheck(f"half degree inner, n>={n}", v, cap, v <= cap))
    return tuple(checks)


def census(C: TriForm, certs) -> CensusReport:
    inner: Counter = Counter()
    outer: Counter = Counter()
    for c in certs:
        if c.order < 2:
            continue
        (inner if c.on_curve else outer)[c.order] += 1
    inner_d, outer_d = dict(sorted(inner.items())), dict(sorted(outer.items()))
    return CensusReport(C.degree, inner_d, outer_d, bound_checks(C.degree, inner_d, outer_d))


def fixed_locus_intersection(c1: QGCertificate, c2: QGCertificate, C: TriForm) -> list[ProjPoint]:
    """C meet F[P1] meet F[P2], where F[P] is the center together with the axis."""
    if c1.order < 2 or c2.order < 2:
        raise NotQuasiGaloisError("both points must be quasi-Galois")
    if c1.point == c2.point:
        raise EqualPointsError("the two certificates share their point")
    cand: set[ProjPoint] = set()
    if c1.axis == c2.axis:
        A, B = c1.axis.points()
        g = restrict_to_line(C, A, B)
        roots, _ = field_roots(g)
        cand.update(ProjPoint(tuple(a + t * b for a, b in zip(A.coords, B.coords)))
                    for t in roots)
        if g.degree < C.degree:
            cand.add(B)
    else:
        cand.add(ProjPoint(kernel([list(c1.axis.coords), list(c2.axis.coords)])[0]))
    if c2.axis.contains(c1.point):
        cand.add(c1.point)
    if c1.axis.contains(c2.point):
        cand.add(c2.point)
    return sorted(P for P in cand if on_curve(C, P))


class ClosureBounds(NamedTuple):
    lower: int
    upper: str
    upper_generic: int


def galois_closure_bounds(n: int, degree: int) -> ClosureBounds:
    """n r' <= |G_P| <= R n^r' and the generic ceiling r'! n^r', with r' = degree / n."""
    if n < 2 or degree < 1:
        raise BadParamsError("need n >= 2 and a positive degree")
    if degree % n:
        raise NotDivisibleError(f"{n} does not divide {degree}")
    rp = degree // n
    return ClosureBounds(n * rp, f"R * {n}^{rp}", factorial(rp) * n**rp)


class GroupPrediction(NamedTuple):
    order: int
    label: str


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def predicted_galois_group(n: int, degree: int) -> GroupPrediction:
    if n < 2:
        raise BadParamsError("need n >= 2")
    if degree != 2 * n:
        raise NotApplicableError(f"degree {degree} is not 2n = {2 * n}")
    order = 2 * n * n
    if n % 2 == 1 and _is_prime(n):
        return GroupPrediction(order, f"(Z/{n}Z) x D_{2 * n}")
    return GroupPrediction(order, f"order only ({order})")


def dual_certificate(c: QGCertificate) -> QGCertificate:
    """The certificate in the dual plane: inverse-transpose generator, with
    point and axis exchanged."""
    if c.order < 2:
        raise NotQuasiGaloisError("only quasi-Galois certificates have duals")
    return QGCertificate(
        ProjPoint(c.axis.coords),
        c.on_curve,
        c.projection_degree,
        c.order,
        c.generator.inverse_transpose(),
        ProjLine(c.point.coords),
        not c.dual,
    )


def diagonalizing_transform(c: QGCertificate) -> ProjTransform:
    """B with B P = (1:0:0) and B(axis) = {X = 0}; B g B^-1 is diagonal."""
    if c.order < 2:
        raise NotQuasiGaloisError("only quasi-Galois certificates have an axis")
    k1, k2 = kernel([list(c.point.coords)])
    return ProjTransform((c.axis.coords, k1, k2))


__all__ = [
    "QGCertificate",
    "CensusReport",
    "BoundCheck",
    "GPairWitness",
    "ClosureBounds",
    "GroupPrediction",
    "normalize_center",
    "solve_homology",
    "quasi_galois_order",
    "verify_certificate",
    "fixed_locus",
    "is_gpair",
    "conjugate_certificate",
    "discover",
    "census",
    "bound_checks",
    "fixed_locus_intersection",
    "galois_closure_bounds",
    "predicted_galois_group",
    "dual_certificate",
    "diagonalizing_transform",
    "DEFAULT_DISCOVERY_CAP",
]
