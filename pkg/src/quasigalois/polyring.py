"""Sparse homogeneous forms in X, Y, Z and univariate polynomials over a
FieldContext."""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ContextMismatch,
    DegenerateLineError,
    LineInCurveError,
    SingularMatrixError,
    ZeroPolyError,
)
from .exactnum import FieldContext, FieldElement, roots_of_unity_order, zeta

VARS = "XYZ"


def _monomial_str(exps) -> str:
    parts = []
    for name, e in zip(VARS, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class TriForm:
    """A homogeneous polynomial of fixed degree in X, Y, Z."""

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx: FieldContext, degree: int, terms=None):
        self.ctx = ctx
        self.degree = degree
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if sum(exps) != degree or len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"exponent {exps} does not match degree {degree}")
            if not isinstance(c, FieldElement):
                c = ctx.rational(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, degree, terms):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def variable(cls, ctx: FieldContext, index: int) -> TriForm:
        exps = [0, 0, 0]
        exps[index] = 1
        return cls._raw(ctx, 1, {tuple(exps): ctx.one()})

    @classmethod
    def constant(cls, ctx: FieldContext, c) -> TriForm:
        return cls(ctx, 0, {(0, 0, 0): c})

    @classmethod
    def linear(cls, ctx: FieldContext, coeffs) -> TriForm:
        return cls(ctx, 1, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    @classmethod
    def zero(cls, ctx: FieldContext, degree: int) -> TriForm:
        return cls._raw(ctx, degree, {})

    # -- basics ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], FieldElement]]:
        """Terms in descending lexicographic exponent order (X^d first)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient(self, exps) -> FieldElement:
        return self.terms.get(tuple(exps), self.ctx.zero())

    def deg_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, TriForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def _check(self, other: TriForm):
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch("forms over different fields")

    def __add__(self, other: TriForm) -> TriForm:
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("adding forms of different degree")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return TriForm._raw(self.ctx, self.degree, terms)

    def __neg__(self) -> TriForm:
        return TriForm._raw(self.ctx, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: TriForm) -> TriForm:
        return self + (-other)

    def scale(self, c) -> TriForm:
        if not isinstance(c, FieldElement):
            c = self.ctx.rational(c)
        if not c:
            return TriForm.zero(self.ctx, self.degree)
        return TriForm._raw(self.ctx, self.degree, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TriForm):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                p = x * y
                if e in acc:
                    acc[e] = acc[e] + p
                else:
                    acc[e] = p
        return TriForm._raw(
            self.ctx, self.degree + other.degree, {e: c for e, c in acc.items() if c}
        )

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> TriForm:
        result = TriForm.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, coords) -> FieldElement:
        return self.evaluate(coords)

    def evaluate(self, coords) -> FieldElement:
        coords = getattr(coords, "coords", coords)
        d = self.degree
        powers = []
        for x in coords:
            if not isinstance(x, FieldElement):
                x = self.ctx.rational(x)
            row = [self.ctx.one()]
            for _ in range(d):
                row.append(row[-1] * x)
            powers.append(row)
        total = self.ctx.zero()
        for (i, j, k), c in self.terms.items():
            total = total + c * powers[0][i] * powers[1][j] * powers[2][k]
        return total

    def partial(self, var: int) -> TriForm:
        terms = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                terms[tuple(ne)] = c * e[var]
        return TriForm._raw(self.ctx, max(self.degree - 1, 0), terms)

    def gradient(self) -> tuple[TriForm, TriForm, TriForm]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def proportionality(self, other: TriForm) -> FieldElement | None:
        """c with other = c * self, or None."""
        if self.degree != other.degree or set(self.terms) != set(other.terms):
            return None
        if not self.terms:
            return self.ctx.one()
        e0 = max(self.terms)
        c = other.terms[e0] / self.terms[e0]
        for e, v in self.terms.items():
            if v * c != other.terms[e]:
                return None
        return c

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = _monomial_str(e)
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c})*{mono}")
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"TriForm(deg={self.degree}: {self})"


# ---------------------------------------------------------------------------
# 3x3 matrices as nested tuples of FieldElement


def det3(A) -> FieldElement:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def _as_matrix(A):
    return getattr(A, "matrix", A)


def substitute_linear(F: TriForm, A) -> TriForm:
    """The pullback F(A v): X, Y, Z replaced by the rows of A applied to (X, Y, Z)."""
    A = _as_matrix(A)
    ctx = F.ctx
    A = [[a if isinstance(a, FieldElement) else ctx.rational(a) for a in row] for row in A]
    if not det3(A):
        raise SingularMatrixError("substitution matrix is singular")
    if F.is_zero():
        return F
    lin = [TriForm.linear(ctx, row) for row in A]
    d = F.degree
    pows = []
    for L in lin:
        row = [TriForm.constant(ctx, 1)]
        need = max((e[len(pows)] for e in F.terms), default=0)
        for _ in range(need):
            row.append(row[-1] * L)
        pows.append(row)
    # group terms by X exponent so each L1^j L2^k product is built once
    by_i: dict[int, list] = {}
    for (i, j, k), c in F.terms.items():
        by_i.setdefault(i, []).append((j, k, c))
    yz_cache: dict = {}
    result = TriForm.zero(ctx, d)
    for i, rest in by_i.items():
        inner = TriForm.zero(ctx, d - i)
        for j, k, c in rest:
            key = (j, k)
            if key not in yz_cache:
                yz_cache[key] = pows[1][j] * pows[2][k]
            inner = inner + yz_cache[key].scale(c)
        result = result + pows[0][i] * inner
    return result


def x_slices(F: TriForm) -> dict[int, TriForm]:
    """F = sum_i a_i(Y, Z) X^i; returns {i: a_i} with a_i nonzero."""
    out: dict[int, dict] = {}
    for (i, j, k), c in F.terms.items():
        out.setdefault(i, {})[(0, j, k)] = c
    return {i: TriForm._raw(F.ctx, F.degree - i, t) for i, t in sorted(out.items())}


def x_degree(F: TriForm) -> int:
    return F.deg_in(0)


def binary_to_uni(B: TriForm) -> UniPoly:
    """A form in Y, Z as a polynomial in y = Y/Z."""
    coeffs = [B.ctx.zero()] * (B.degree + 1)
    for (i, j, k), c in B.terms.items():
        if i:
            raise ValueError("form involves X")
        coeffs[j] = c
    return UniPoly(B.ctx, coeffs)


def uni_to_binary(p: UniPoly, degree: int) -> TriForm:
    if p.degree > degree:
        raise ValueError("polynomial degree exceeds form degree")
    return TriForm._raw(
        p.ctx, degree, {(0, j, degree - j): c for j, c in enumerate(p.coeffs) if c}
    )


def divide_binary(A: TriForm, B: TriForm) -> TriForm | None:
    """Exact quotient A / B of binary forms in Y, Z, or None."""
    if B.is_zero():
        raise ZeroPolyError("division by the zero form")
    if A.is_zero():
        return TriForm.zero(A.ctx, A.degree - B.degree)
    if A.degree < B.degree:
        return None
    q, r = divmod(binary_to_uni(A), binary_to_uni(B))
    if not r.is_zero() or q.degree > A.degree - B.degree:
        return None
    return uni_to_binary(q, A.degree - B.degree)


def hessian_form(F: TriForm) -> TriForm:
    """Determinant of the matrix of second partial derivatives."""
    if F.degree < 2:
        raise ValueError("hessian needs degree >= 2")
    g = F.gradient()
    H = [[g[a].partial(b) for b in range(3)] for a in range(3)]
    return (
        H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
        - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
        + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0])
    )


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Polynomial in one variable t, coefficients lowest degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs=()):
        cs = [c if isinstance(c, FieldElement) else ctx.rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, ctx: FieldContext) -> UniPoly:
        return cls(ctx, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.ctx.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ctx.zero()

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self) -> UniPoly:
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def scale(self, c) -> UniPoly:
        return UniPoly(self.ctx, [x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return UniPoly(self.ctx, out)

    __rmul__ = scale

    def __pow__(self, k: int) -> UniPoly:
        result = UniPoly(self.ctx, [1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: UniPoly):
        if other.is_zero():
            raise ZeroPolyError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return UniPoly(self.ctx), self
        inv = other.lc.inverse()
        q = [self.ctx.zero()] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = c * inv
                q[k - db] = c
                for i, y in enumerate(other.coeffs):
                    if y:
                        rem[k - db + i] = rem[k - db + i] - c * y
        return UniPoly(self.ctx, q), UniPoly(self.ctx, rem[:db])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(self.ctx, [c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self.scale(self.lc.inverse())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: UniPoly) -> UniPoly:
    if f.degree <= 0:
        return f.monic()
    return (f // poly_gcd(f, f.derivative())).monic()


def _prem(A: UniPoly, B: UniPoly) -> UniPoly:
    delta = A.degree - B.degree
    return (A % B).scale(B.lc ** (delta + 1))


def resultant(f: UniPoly, g: UniPoly) -> FieldElement:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f,
    computed with the subresultant polynomial remainder sequence."""
    ctx = f.ctx
    if f.is_zero() or g.is_zero():
        return ctx.zero()
    A, B = f, g
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return B.lc ** A.degree * s
    gg = ctx.one()
    h = ctx.one()
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = _prem(A, B)
        A = B
        B = R.scale((gg * h**delta).inverse())
        gg = A.lc
        h = h ** (1 - delta) * gg**delta
        if B.degree <= 0:
            break
    if B.is_zero():
        return ctx.zero()
    h = B.lc ** A.degree * h ** (1 - A.degree)
    return h * s


def vanishing_order(f: UniPoly, t0) -> int:
    """Largest m such that (t - t0)^m divides f."""
    if f.is_zero():
        raise ZeroPolyError("vanishing order of the zero polynomial")
    lin = UniPoly(f.ctx, [-t0, 1])
    m = 0
    while f(t0).is_zero():
        f = f // lin
        m += 1
    return m


def interpolate(ctx: FieldContext, xs, ys) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i])."""
    xs = [x if isinstance(x, FieldElement) else ctx.rational(x) for x in xs]
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly(ctx, [coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly(ctx, [-xs[i], 1]) + UniPoly(ctx, [coef[i]])
    return poly


# ---------------------------------------------------------------------------
# roots in the context field


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ"
    )
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def _q_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    from .exactnum import _qdivmod, _qtrim

    a, b = _qtrim(a), _qtrim(b)
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return a


def field_roots(f: UniPoly) -> tuple[list[FieldElement], bool]:
    """Distinct roots of f lying in the context field.

    Roots are searched in the form q * omega, with omega a root of unity of
    the field and q rational, plus whatever linear factor remains at the end.
    Returns (roots, complete) where complete means every root of f over the
    algebraic closure was found.
    """
    if f.is_zero():
        raise ZeroPolyError("roots of the zero polynomial")
    ctx = f.ctx
    g = squarefree_part(f)
    roots: list[FieldElement] = []

    def take(r):
        nonlocal g
        roots.append(r)
        g = g // UniPoly(ctx, [-r, 1])

    if g.degree >= 1 and g.coeff(0).is_zero():
        take(ctx.zero())
    M = roots_of_unity_order(ctx)
    base = zeta(ctx, M)
    omega = ctx.one()
    for _ in range(M):
        if g.degree <= 1:
            break
        # g(omega * t) split into rational coordinate polynomials
        coords = []
        w = ctx.one()
        for c in g.coeffs:
            coords.append(c * w)
            w = w * omega
        dim = 2 * ctx.phi
        rows = [[] for _ in range(dim)]
        for c in coords:
            vec = c.u + c.v
            for b in range(dim):
                rows[b].append(vec[b])
        common: list[Fraction] = []
        for row in rows:
            if any(row):
                common = _q_gcd(common, row) if common else [Fraction(x) for x in row]
                while common and common[-1] == 0:
                    common.pop()
        if len(common) >= 2:
            for q in _rational_roots(common):
                if q != 0:
                    take(omega * q)
        omega = omega * base
    if g.degree == 1:
        take(-g.coeff(0) / g.coeff(1))
    return roots, g.degree <= 0


# ---------------------------------------------------------------------------


def normalize_triple(coords):
    """Scale so the first nonzero coordinate equals 1."""
    coords = tuple(coords)
    for c in coords:
        if c:
            inv = c.inverse()
            return tuple(x * inv for x in coords)
    raise ValueError("all coordinates are zero")


def restrict_to_line(F: TriForm, P0, P1) -> UniPoly:
    """g(t) = F(P0 + t P1) after normalizing both points; t = 0 is P0."""
    ctx = F.ctx
    p0 = normalize_triple(getattr(P0, "coords", P0))
    p1 = normalize_triple(getattr(P1, "coords", P1))
    if p0 == p1:
        raise DegenerateLineError("the two points coincide")
    lines = [UniPoly(ctx, [a, b]) for a, b in zip(p0, p1)]
    pows = []
    for L in lines:
        row = [UniPoly(ctx, [1])]
        for _ in range(F.degree):
            row.append(row[-1] * L)
        pows.append(row)
    g = UniPoly(ctx)
    for (i, j, k), c in F.terms.items():
        g = g + (pows[0][i] * pows[1][j] * pows[2][k]).scale(c)
    if g.is_zero():
        raise LineInCurveError("the line is a component of the curve")
    return g


__all__ = [
    "TriForm",
    "UniPoly",
    "substitute_linear",
    "x_slices",
    "x_degree",
    "restrict_to_line",
    "resultant",
    "vanishing_order",
    "hessian_form",
    "divide_binary",
    "poly_gcd",
    "squarefree_part",
    "interpolate",
    "field_roots",
    "det3",
    "normalize_triple",
]
