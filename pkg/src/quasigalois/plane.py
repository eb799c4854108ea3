"""Projective points, lines and transforms, plus local geometry of a plane
curve: tangents, intersection multiplicities, projections, flexes and a
smoothness test."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EqualPointsError,
    NotIncidentError,
    NotOnCurveError,
    ParseError,
    ProjectionDegenerateError,
    SingularMatrixError,
    SingularPointError,
)
from .exactnum import FieldContext, FieldElement, parse_expr
from .polyring import (
    TriForm,
    UniPoly,
    det3,
    field_roots,
    hessian_form,
    interpolate,
    normalize_triple,
    poly_gcd,
    restrict_to_line,
    resultant,
    substitute_linear,
    vanishing_order,
    x_degree,
)


def _coerce_triple(ctx, coords):
    out = []
    for c in coords:
        if isinstance(c, FieldElement):
            out.append(c)
        elif isinstance(c, str):
            out.append(parse_expr(ctx, c))
        else:
            out.append(ctx.rational(c))
    return tuple(out)


class _Triple:
    __slots__ = ("coords",)

    def __init__(self, coords, ctx: FieldContext | None = None):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("expected three coordinates")
        if ctx is None:
            ctx = next((c.ctx for c in coords if isinstance(c, FieldElement)), None)
            if ctx is None:
                raise ValueError("cannot infer the field context")
        coords = _coerce_triple(ctx, coords)
        if not any(coords):
            raise ValueError("all coordinates are zero")
        self.coords = normalize_triple(coords)

    @property
    def ctx(self) -> FieldContext:
        return self.coords[0].ctx

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def sort_key(self):
        return tuple(c.key() for c in self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def dot(self, other) -> FieldElement:
        a, b = self.coords, getattr(other, "coords", other)
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class ProjPoint(_Triple):
    """A point (x:y:z), first nonzero coordinate scaled to 1."""

    __slots__ = ()

    @classmethod
    def parse(cls, ctx: FieldContext, text: str) -> ProjPoint:
        parts = text.strip().strip("()").split(":")
        if len(parts) != 3 or any(not p.strip() for p in parts):
            raise ParseError(f"malformed point literal {text!r}; expected 'x:y:z'")
        coords = tuple(parse_expr(ctx, p) for p in parts)
        if not any(coords):
            raise ParseError(f"point literal {text!r} has all coordinates zero")
        return cls(coords)

    def on(self, line: ProjLine) -> bool:
        return line.dot(self).is_zero()

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


class ProjLine(_Triple):
    """The line aX + bY + cZ = 0, stored as (a:b:c)."""

    __slots__ = ()

    def contains(self, P: ProjPoint) -> bool:
        return self.dot(P).is_zero()

    def points(self) -> tuple[ProjPoint, ProjPoint]:
        """Two distinct points spanning the line."""
        basis = kernel([list(self.coords)])
        return ProjPoint(basis[0]), ProjPoint(basis[1])

    def equation(self) -> str:
        return f"{TriForm.linear(self.ctx, self.coords)} = 0"

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"ProjLine({self.equation()})"


# ---------------------------------------------------------------------------
# 3x3 linear algebra


def mat_mul(A, B):
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] + A[i][2] * B[2][j] for j in range(3))
        for i in range(3)
    )


def mat_vec(A, v):
    return tuple(A[i][0] * v[0] + A[i][1] * v[1] + A[i][2] * v[2] for i in range(3))


def transpose(A):
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def adjugate(A):
    def minor(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        return (
            A[rows[0]][cols[0]] * A[rows[1]][cols[1]]
            - A[rows[0]][cols[1]] * A[rows[1]][cols[0]]
        )

    return tuple(
        tuple(minor(j, i) if (i + j) % 2 == 0 else -minor(j, i) for j in range(3))
        for i in range(3)
    )


def _row_reduce(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(A) -> int:
    return len(_row_reduce(A)[1])


def kernel(A) -> list[tuple]:
    """Basis of {v : A v = 0} for a matrix with three columns."""
    rows, pivots = _row_reduce(A)
    ctx = next(x for row in A for x in row).ctx
    basis = []
    for free in range(3):
        if free in pivots:
            continue
        v = [ctx.zero()] * 3
        v[free] = ctx.one()
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


class ProjTransform:
    """Invertible 3x3 matrix modulo scalars, acting on columns v -> A v."""

    __slots__ = ("matrix", "_hash")

    def __init__(self, matrix, ctx: FieldContext | None = None):
        rows = [tuple(r) for r in matrix]
        if ctx is None:
            ctx = next((x.ctx for r in rows for x in r if isinstance(x, FieldElement)), None)
            if ctx is None:
                raise ValueError("cannot infer the field context")
        rows = [_coerce_triple(ctx, r) for r in rows]
        if len(rows) != 3 or not det3(rows):
            raise SingularMatrixError("transform matrix is singular")
        pivot = next(x for r in rows for x in r if x)
        inv = pivot.inverse()
        self.matrix = tuple(tuple(x * inv for x in r) for r in rows)
        self._hash = hash(self.matrix)

    @classmethod
    def _trusted(cls, matrix) -> ProjTransform:
        obj = object.__new__(cls)
        pivot = next(x for r in matrix for x in r if x)
        inv = pivot.inverse()
        obj.matrix = tuple(tuple(x * inv for x in r) for r in matrix)
        obj._hash = hash(obj.matrix)
        return obj

    @classmethod
    def identity(cls, ctx: FieldContext) -> ProjTransform:
        o, z = ctx.one(), ctx.zero()
        return cls(((o, z, z), (z, o, z), (z, z, o)))

    @classmethod
    def diagonal(cls, ctx: FieldContext, entries) -> ProjTransform:
        e = _coerce_triple(ctx, entries)
        z = ctx.zero()
        return cls(((e[0], z, z), (z, e[1], z), (z, z, e[2])))

    @classmethod
    def permutation(cls, ctx: FieldContext, perm) -> ProjTransform:
        """Matrix sending basis vector e_j to e_perm[j]."""
        rows = [[ctx.zero()] * 3 for _ in range(3)]
        for j, i in enumerate(perm):
            rows[i][j] = ctx.one()
        return cls(rows)

    @property
    def ctx(self) -> FieldContext:
        return self.matrix[0][0].ctx

    def __eq__(self, other):
        if not isinstance(other, ProjTransform):
            return NotImplemented
        return self._hash == other._hash and self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return tuple(x.key() for r in self.matrix for x in r)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __matmul__(self, other: ProjTransform) -> ProjTransform:
        return ProjTransform._trusted(mat_mul(self.matrix, other.matrix))

    __mul__ = __matmul__

    def inverse(self) -> ProjTransform:
        return ProjTransform._trusted(adjugate(self.matrix))

    def transpose(self) -> ProjTransform:
        return ProjTransform._trusted(transpose(self.matrix))

    def inverse_transpose(self) -> ProjTransform:
        return ProjTransform._trusted(transpose(adjugate(self.matrix)))

    def __pow__(self, k: int) -> ProjTransform:
        if k < 0:
            return self.inverse() ** (-k)
        result = ProjTransform.identity(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_identity(self) -> bool:
        return self == ProjTransform.identity(self.ctx)

    def order(self, limit: int = 10_000) -> int | None:
        """Projective order, or None if it exceeds ``limit``."""
        cur = self
        for k in range(1, limit + 1):
            if cur.is_identity():
                return k
            cur = cur @ self
        return None

    def apply(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint(mat_vec(self.matrix, P.coords))

    def apply_line(self, line: ProjLine) -> ProjLine:
        """Image of a line: its coordinates transform by the inverse transpose."""
        return ProjLine(mat_vec(transpose(adjugate(self.matrix)), line.coords))

    def __call__(self, obj):
        if isinstance(obj, ProjLine):
            return self.apply_line(obj)
        return self.apply(obj)

    def rows_str(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.matrix]

    def __repr__(self):
        return f"ProjTransform({self.rows_str()})"


def preserves(A: ProjTransform, F: TriForm) -> FieldElement | None:
    """The scalar c with F(A v) = c F(v), or None if A does not preserve F."""
    return F.proportionality(substitute_linear(F, A))


# ---------------------------------------------------------------------------
# curve-local geometry


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P == Q:
        raise EqualPointsError("a line needs two distinct points")
    a, b = P.coords, Q.coords
    return ProjLine(
        (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    )


def on_curve(C: TriForm, P: ProjPoint) -> bool:
    return C.evaluate(P.coords).is_zero()


def tangent_line(C: TriForm, Q: ProjPoint) -> ProjLine:
    if not on_curve(C, Q):
        raise NotOnCurveError(f"{Q} is not on the curve")
    grad = tuple(g.evaluate(Q.coords) for g in C.gradient())
    if not any(grad):
        raise SingularPointError(f"{Q} is a singular point")
    return ProjLine(grad)


def is_smooth_point(C: TriForm, Q: ProjPoint) -> bool:
    return on_curve(C, Q) and any(g.evaluate(Q.coords) for g in C.gradient())


def intersection_multiplicity(C: TriForm, line, Q: ProjPoint) -> int:
    """I_Q(C, line).

    ``line`` is a ProjLine or a pair of points spanning it.  The curve is
    restricted to Q + t*P1 for a second point P1 of the line and the order
    of vanishing at t = 0 is returned.
    """
    if not isinstance(line, ProjLine):
        P0, P1 = line
        line = line_through(P0, P1)
    if not line.contains(Q):
        raise NotIncidentError(f"{Q} does not lie on {line.equation()}")
    if not on_curve(C, Q):
        raise NotOnCurveError(f"{Q} is not on the curve")
    P1 = next(P for P in line.points() if P != Q)
    return vanishing_order(restrict_to_line(C, Q, P1), C.ctx.zero())


def normalize_center(C: TriForm, P: ProjPoint) -> tuple[ProjTransform, TriForm]:
    """M with M P = (1:0:0), and F' = C o M^-1 so that F'(M v) = C(v)."""
    ctx = C.ctx
    p = next(i for i, c in enumerate(P.coords) if c)
    perm = [0, 1, 2]
    perm[0], perm[p] = perm[p], perm[0]
    Pi = ProjTransform.permutation(ctx, perm)
    moved = mat_vec(Pi.matrix, P.coords)
    o, z = ctx.one(), ctx.zero()
    S = ((o, z, z), (-moved[1], o, z), (-moved[2], z, o))
    M = ProjTransform._trusted(mat_mul(S, Pi.matrix))
    return M, substitute_linear(C, M.inverse())


def projection_degree(C: TriForm, P: ProjPoint) -> int:
    """Degree of the projection from P: d minus the multiplicity of C at P."""
    r = x_degree(normalize_center(C, P)[1])
    if r <= 1:
        raise ProjectionDegenerateError(f"projection from {P} has degree {max(r, 0)}")
    return r


def ramification_index(C: TriForm, P: ProjPoint, Q: ProjPoint) -> int:
    """Ramification index at a smooth point Q of the projection from P."""
    if P == Q:
        return intersection_multiplicity(C, tangent_line(C, Q), Q) - 1
    tangent_line(C, Q)  # raises for singular or off-curve Q
    return intersection_multiplicity(C, line_through(P, Q), Q)


def flex_contribution(C: TriForm, Q: ProjPoint) -> int:
    return intersection_multiplicity(C, tangent_line(C, Q), Q) - 2


# ---------------------------------------------------------------------------
# common zeros of forms, chart by chart


def _bivar_tdeg(p) -> int:
    return max(a + b for a, b in p)


def _specialize(ctx, p, w: int, w0) -> UniPoly:
    """Substitute value w0 for variable index w of a bivariate dict."""
    v = 1 - w
    coeffs: dict[int, FieldElement] = {}
    cache: dict[int, FieldElement] = {}
    for e, c in p.items():
        k = e[w]
        if k not in cache:
            cache[k] = w0**k
        term = c * cache[k]
        coeffs[e[v]] = coeffs[e[v]] + term if e[v] in coeffs else term
    deg = max(coeffs, default=-1)
    return UniPoly(ctx, [coeffs.get(i, ctx.zero()) for i in range(deg + 1)])


def _resultant_bivar(ctx, f, g, v: int) -> UniPoly:
    """Res_v(f, g) as a polynomial in the other variable, by interpolation.

    f must have a nonzero constant leading coefficient in v, so the
    specialization formula Res(f, g)(w0) = lc(f)^(n - n') Res(f(w0), g(w0))
    holds at every node.
    """
    w = 1 - v
    n = max(e[v] for e in g)
    bound = _bivar_tdeg(f) * _bivar_tdeg(g)
    xs, ys = [], []
    for node in range(bound + 1):
        x = ctx.rational(node)
        f0 = _specialize(ctx, f, w, x)
        g0 = _specialize(ctx, g, w, x)
        if g0.is_zero():
            val = ctx.zero()
        else:
            val = resultant(f0, g0) * f0.lc ** (n - g0.degree)
        xs.append(x)
        ys.append(val)
    return interpolate(ctx, xs, ys)


def _affine_common_zeros(ctx, polys) -> tuple[list[tuple], bool]:
    """Common zeros (y, z) of bivariate polynomials given as exponent dicts."""
    polys = [p for p in polys if p]
    if not polys:
        return [], False
    if any(set(p) == {(0, 0)} for p in polys):
        return [], True
    choice = None
    for v in (1, 0):
        w = 1 - v
        for idx, p in enumerate(polys):
            dv = max(e[v] for e in p)
            top = [e for e in p if e[v] == dv]
            if dv >= 1 and len(top) == 1 and top[0][w] == 0:
                if choice is None or dv < choice[2]:
                    choice = (v, idx, dv)
        if choice is not None:
            break
    if choice is None or len(polys) < 2:
        return [], False
    v, idx, _ = choice
    w = 1 - v
    f = polys[idx]
    G = None
    for j, p in enumerate(polys):
        if j == idx:
            continue
        if max(e[v] for e in p) == 0:
            R = _specialize_to_w(ctx, p, w)
        else:
            R = _resultant_bivar(ctx, f, p, v)
        G = R if G is None else poly_gcd(G, R)
    if G.is_zero():
        return [], False
    if G.degree <= 0:
        return [], True
    roots, complete = field_roots(G)
    found = []
    for w0 in roots:
        g = UniPoly(ctx)
        for p in polys:
            g = poly_gcd(g, _specialize(ctx, p, w, w0))
        if g.degree <= 0:
            continue
        vroots, ok = field_roots(g)
        complete = complete and ok
        for v0 in vroots:
            pair = [None, None]
            pair[w], pair[v] = w0, v0
            found.append(tuple(pair))
    return found, complete


def _specialize_to_w(ctx, p, w: int) -> UniPoly:
    deg = max(e[w] for e in p)
    cs = [ctx.zero()] * (deg + 1)
    for e, c in p.items():
        cs[e[w]] = c
    return UniPoly(ctx, cs)


def common_zeros(forms) -> tuple[list[ProjPoint], bool]:
    """Common projective zeros of forms that lie in the context field.

    The flag is True when the returned list is provably all of them (over
    the algebraic closure); False when elimination degenerated or some
    zeros lie outside the field.
    """
    forms = [F for F in forms if not F.is_zero()]
    if not forms:
        return [], False
    ctx = forms[0].ctx
    o, z = ctx.one(), ctx.zero()
    found: set[ProjPoint] = set()
    # chart X = 1
    polys = [{(j, k): c for (i, j, k), c in F.terms.items()} for F in forms]
    pts, complete = _affine_common_zeros(ctx, polys)
    for y, zz in pts:
        found.add(ProjPoint((o, y, zz)))
    # line X = 0, chart Y = 1
    g = UniPoly(ctx)
    for F in forms:
        cs = [z] * (F.degree + 1)
        for (i, j, k), c in F.terms.items():
            if i == 0:
                cs[k] = c
        g = poly_gcd(g, UniPoly(ctx, cs))
    if g.is_zero():
        complete = False
    elif g.degree >= 1:
        roots, ok = field_roots(g)
        complete = complete and ok
        for r in roots:
            found.add(ProjPoint((z, o, r)))
    # the point (0:0:1)
    if all(F.evaluate((z, z, o)).is_zero() for F in forms):
        found.add(ProjPoint((z, z, o)))
    verified = [P for P in found if all(F.evaluate(P.coords).is_zero() for F in forms)]
    return sorted(verified), complete


@dataclass(frozen=True)
class Smoothness:
    status: str  # "smooth", "singular" or "unknown"
    witness: ProjPoint | None = None

    def __bool__(self):
        return self.status == "smooth"

    def __str__(self):
        if self.status == "singular":
            return f"Singular({self.witness})"
        return self.status.capitalize()


def is_smooth(C: TriForm) -> Smoothness:
    """Smooth, Singular(witness) or Unknown.

    Singular points are the common zeros of the three partials (Euler's
    relation puts them on the curve).  A verdict other than Unknown is
    always certified.
    """
    if C.degree <= 1:
        return Smoothness("smooth")
    zeros, complete = common_zeros(list(C.gradient()))
    if zeros:
        return Smoothness("singular", zeros[0])
    return Smoothness("smooth" if complete else "unknown")


def context_flexes(C: TriForm) -> tuple[list[ProjPoint], bool]:
    """Smooth flexes of C with coordinates in the context field."""
    zeros, complete = common_zeros([C, hessian_form(C)])
    return [P for P in zeros if is_smooth_point(C, P)], complete


__all__ = [
    "ProjPoint",
    "ProjLine",
    "ProjTransform",
    "Smoothness",
    "line_through",
    "tangent_line",
    "intersection_multiplicity",
    "projection_degree",
    "ramification_index",
    "flex_contribution",
    "is_smooth",
    "is_smooth_point",
    "common_zeros",
    "context_flexes",
    "normalize_center",
    "preserves",
    "on_curve",
    "mat_mul",
    "mat_vec",
    "adjugate",
    "transpose",
    "rank",
    "kernel",
]
