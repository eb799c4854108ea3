"""Exact arithmetic in cyclotomic fields Q(zeta_N), optionally with a formal
square root ``s`` of an element w (so s^2 = w).

Elements of Q(zeta_N) are stored as a tuple of integer numerators over a
single positive denominator, in the power basis 1, z, ..., z^(phi(N)-1).
Because the cyclotomic polynomial is monic with integer coefficients,
reduction never introduces new denominators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import (
    ContextMismatch,
    FieldDivisionByZero,
    ParseError,
    RootsMissingError,
    ZeroAdjunctError,
    ZeroDivisorError,
)

Rational = Fraction

__all__ = [
    "Rational",
    "FieldContext",
    "FieldElement",
    "make_context",
    "zeta",
    "invert",
    "embed",
    "minimal_conductor",
    "roots_of_unity_order",
    "cyclotomic_polynomial",
    "euler_phi",
    "parse_expr",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers (lowest degree first)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _int_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide integer polynomials; ``den`` monic, division must be exact."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for i, b in enumerate(den):
                num[k - dd + i] -= c * b
    if any(num):
        raise ArithmeticError("inexact division")
    return q


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d != n:
            poly = _int_exact_div(poly, _cyclotomic_int(d))
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> list[Fraction]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return [Fraction(c) for c in _cyclotomic_int(n)]


# ---------------------------------------------------------------------------
# base-field arithmetic on (numerators, denominator) pairs


def _normalize(nums, den: int):
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = gcd(den, *nums)
    if g != 1:
        nums = [x // g for x in nums]
        den //= g
    return (tuple(nums), den)


def _is_zero(a) -> bool:
    return not any(a[0])


def _badd(a, b):
    an, ad = a
    bn, bd = b
    if ad == bd:
        return _normalize([x + y for x, y in zip(an, bn)], ad)
    return _normalize([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)


def _bneg(a):
    return (tuple(-x for x in a[0]), a[1])


def _bsub(a, b):
    return _badd(a, _bneg(b))


def _bscale(a, num: int, den: int = 1):
    return _normalize([x * num for x in a[0]], a[1] * den)


class FieldContext:
    """The field Q(zeta_N), optionally extended by a formal square root of w."""

    __slots__ = ("N", "phi", "_mod", "_red", "_w", "_key")

    def __init__(self, N: int, w=None):
        if N < 1:
            raise ValueError("conductor must be positive")
        self.N = N
        self._mod = _cyclotomic_int(N)
        self.phi = len(self._mod) - 1
        phi = self.phi
        # x^k mod Phi_N for k = phi .. 2*phi - 2
        red = []
        cur = [-c for c in self._mod[:phi]]
        for _ in range(max(phi - 1, 0)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, self._mod[:phi])]
        self._red = red
        self._w = w
        self._key = (N, w)

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self._w is None:
            return f"FieldContext(N={self.N})"
        return f"FieldContext(N={self.N}, w={_base_str(self._w)})"

    @property
    def conductor(self) -> int:
        return self.N

    @property
    def modulus(self) -> list[Fraction]:
        return cyclotomic_polynomial(self.N)

    @property
    def has_adjunct(self) -> bool:
        return self._w is not None

    @property
    def adjunct(self) -> FieldElement | None:
        """w as an element of this context (the square of ``s``)."""
        if self._w is None:
            return None
        return FieldElement._make(self, self._w, None)

    @property
    def base(self) -> FieldContext:
        return self if self._w is None else FieldContext(self.N)

    # -- element constructors ---------------------------------------------
    def _zero_base(self):
        return ((0,) * self.phi, 1)

    def zero(self) -> FieldElement:
        return FieldElement._make(self, self._zero_base(), None)

    def one(self) -> FieldElement:
        return self.rational(1)

    def rational(self, q) -> FieldElement:
        q = Fraction(q)
        nums = [0] * self.phi
        nums[0] = q.numerator
        return FieldElement._make(self, (tuple(nums), q.denominator), None)

    def z(self, k: int = 1) -> FieldElement:
        """zeta_N ** k."""
        return FieldElement._make(self, (self._monomial(k), 1), None)

    def sqrt_adjunct(self) -> FieldElement:
        if self._w is None:
            raise ParseError("context has no adjunct")
        return FieldElement._make(self, self._zero_base(), ((1,) + (0,) * (self.phi - 1), 1))

    def from_coefficients(self, u, v=None) -> FieldElement:
        """Build from rational coefficient lists in the power basis."""
        u = self._base_from_rationals(u)
        vv = None
        if v is not None:
            if self._w is None:
                raise ParseError("context has no adjunct")
            vv = self._base_from_rationals(v)
            if _is_zero(vv):
                vv = None
        return FieldElement._make(self, u, vv)

    def _base_from_rationals(self, coeffs):
        # reduce an arbitrary-length coefficient list modulo Phi_N
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in coeffs]
        return _normalize(self._reduce(nums), den)

    def _reduce(self, nums: list[int]) -> list[int]:
        phi = self.phi
        nums = list(nums)
        if len(nums) > 2 * phi - 1:
            mod = self._mod
            for k in range(len(nums) - 1, 2 * phi - 2, -1):
                c = nums[k]
                if c:
                    nums[k] = 0
                    for i in range(phi):
                        nums[k - phi + i] -= c * mod[i]
            nums = nums[: 2 * phi - 1]
        out = nums[:phi] + [0] * max(0, phi - len(nums))
        for k in range(phi, len(nums)):
            c = nums[k]
            if c:
                for i, r in enumerate(self._red[k - phi]):
                    if r:
                        out[i] += c * r
        return out

    def _monomial(self, k: int) -> tuple[int, ...]:
        k %= self.N
        nums = [0] * (k + 1)
        nums[k] = 1
        return tuple(self._reduce(nums))

    def _bmul(self, a, b):
        an, ad = a
        bn, bd = b
        phi = self.phi
        # rational fast paths
        if not any(an[1:]):
            return _normalize([x * an[0] for x in bn], ad * bd)
        if not any(bn[1:]):
            return _normalize([x * bn[0] for x in an], ad * bd)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        red = self._red
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(red[k - phi]):
                    if r:
                        out[i] += c * r
        return _normalize(out, ad * bd)

    def _binv(self, a):
        """Inverse in Q(zeta_N) by the extended Euclidean algorithm."""
        if _is_zero(a):
            raise FieldDivisionByZero("division by zero")
        an, ad = a
        if not any(an[1:]):
            return _normalize([ad] + [0] * (self.phi - 1), an[0])
        r0 = _qtrim([Fraction(c) for c in self._mod])
        r1 = _qtrim([Fraction(c, ad) for c in an])
        s0: list[Fraction] = []
        s1 = [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        return self._base_from_rationals(inv)

    def parse(self, text: str) -> FieldElement:
        return parse_expr(self, text)


# -- Fraction polynomial helpers for the Euclidean inverse ----------------


def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _qtrim(out)


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lc
        if c:
            q[k - db] = c
            for i, y in enumerate(b):
                a[k - db + i] -= c * y
    return _qtrim(q), _qtrim(a[:db])


# ---------------------------------------------------------------------------


def _base_str(a) -> str:
    nums, den = a
    parts = []
    for k, n in enumerate(nums):
        if not n:
            continue
        c = Fraction(n, den)
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if k == 0:
            t = str(c)
        elif c == 1:
            t = mono
        elif c == -1:
            t = "-" + mono
        else:
            t = f"{c}*{mono}"
        parts.append(t)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class FieldElement:
    """u + v*s with u, v in Q(zeta_N); immutable."""

    __slots__ = ("ctx", "_u", "_v")

    def __init__(self, ctx: FieldContext, value=0):
        el = ctx.rational(value)
        self.ctx = ctx
        self._u = el._u
        self._v = None

    @classmethod
    def _make(cls, ctx, u, v):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj._u = u
        obj._v = v
        return obj

    # -- coercion ------------------------------------------------------------
    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        return NotImplemented

    # -- accessors -------------------------------------------------------------
    @property
    def u(self) -> list[Fraction]:
        nums, den = self._u
        return [Fraction(n, den) for n in nums]

    @property
    def v(self) -> list[Fraction]:
        if self._v is None:
            return [Fraction(0)] * self.ctx.phi
        nums, den = self._v
        return [Fraction(n, den) for n in nums]

    def is_zero(self) -> bool:
        return self._v is None and not any(self._u[0])

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self._v is None and not any(self._u[0][1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._u[0][0], self._u[1])

    def key(self) -> tuple:
        """Total order used for deterministic sorting."""
        v = self._v if self._v is not None else ((0,) * self.ctx.phi, 1)
        return tuple(Fraction(n, self._u[1]) for n in self._u[0]) + tuple(
            Fraction(n, v[1]) for n in v[0]
        )

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        u = _badd(self._u, other._u)
        if self._v is None:
            v = other._v
        elif other._v is None:
            v = self._v
        else:
            v = _badd(self._v, other._v)
            if _is_zero(v):
                v = None
        return FieldElement._make(self.ctx, u, v)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(
            self.ctx, _bneg(self._u), None if self._v is None else _bneg(self._v)
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if self._v is None and other._v is None:
            return FieldElement._make(ctx, ctx._bmul(self._u, other._u), None)
        a, b = self._u, self._v
        c, d = other._u, other._v
        u = ctx._bmul(a, c)
        if b is not None and d is not None:
            u = _badd(u, ctx._bmul(ctx._bmul(b, d), ctx._w))
        v = None
        if d is not None:
            v = ctx._bmul(a, d)
        if b is not None:
            t = ctx._bmul(b, c)
            v = t if v is None else _badd(v, t)
        if v is not None and _is_zero(v):
            v = None
        return FieldElement._make(ctx, u, v)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        ctx = self.ctx
        if self.is_zero():
            raise FieldDivisionByZero("division by zero")
        if self._v is None:
            return FieldElement._make(ctx, ctx._binv(self._u), None)
        # (u + v s)^-1 = (u - v s) / (u^2 - v^2 w)
        u, v = self._u, self._v
        norm = _bsub(ctx._bmul(u, u), ctx._bmul(ctx._bmul(v, v), ctx._w))
        if _is_zero(norm):
            raise ZeroDivisorError(f"{self} is a zero divisor: the adjunct is a square")
        ninv = ctx._binv(norm)
        nu = ctx._bmul(u, ninv)
        nv = _bneg(ctx._bmul(v, ninv))
        return FieldElement._make(ctx, nu, nv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate_adjunct(self) -> FieldElement:
        """u - v s."""
        if self._v is None:
            return self
        return FieldElement._make(self.ctx, self._u, _bneg(self._v))

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self._u == other._u and self._v == other._v

    def __hash__(self):
        return hash((self._u, self._v))

    # -- text ------------------------------------------------------------------
    def __str__(self):
        us = _base_str(self._u)
        if self._v is None:
            return us
        vs = f"({_base_str(self._v)})*s"
        return vs if _is_zero(self._u) else f"{us} + {vs}"

    def __repr__(self):
        return f"FieldElement({self})"


# ---------------------------------------------------------------------------


def make_context(N: int, w=None) -> FieldContext:
    """Create Q(zeta_N), adjoining a formal square root of ``w`` if given.

    ``w`` may be a coefficient expression, a rational, or an element of
    Q(zeta_N) built in another context with the same conductor.
    """
    if N < 1:
        raise ValueError("conductor must be positive")
    if w is None:
        return FieldContext(N)
    base = FieldContext(N)
    if isinstance(w, str):
        wel = parse_expr(base, w)
    elif isinstance(w, FieldElement):
        if w.ctx.N != N or w._v is not None:
            raise ParseError("adjunct must lie in Q(zeta_N)")
        wel = w
    else:
        wel = base.rational(w)
    if wel.is_zero():
        raise ZeroAdjunctError("adjunct w must be nonzero")
    return FieldContext(N, wel._u)


def minimal_conductor(N: int, n: int) -> int:
    m = N * n // gcd(N, n)
    return m // 2 if m % 4 == 2 else m


def roots_of_unity_order(ctx: FieldContext) -> int:
    """Order of the group of roots of unity in Q(zeta_N)."""
    return ctx.N if ctx.N % 2 == 0 else 2 * ctx.N


def zeta(ctx: FieldContext, n: int) -> FieldElement:
    """A primitive n-th root of unity: zeta_N^(N/n).

    For odd N the field also contains the 2N-th roots of unity; these are
    returned as -zeta_N^((N+1)/2) raised to the appropriate power.
    """
    if n < 1:
        raise ValueError("order must be positive")
    N = ctx.N
    if N % n == 0:
        return ctx.z(N // n)
    if N % 2 == 1 and (2 * N) % n == 0:
        prim = -ctx.z((N + 1) // 2)
        return prim ** ((2 * N) // n)
    raise RootsMissingError(n, N, minimal_conductor(N, n))


def invert(x: FieldElement) -> FieldElement:
    return x.inverse()


def embed(x: FieldElement, ctx: FieldContext) -> FieldElement:
    """Move an element of Q(zeta_N) into another context with the same N."""
    if x.ctx.N != ctx.N:
        raise ContextMismatch("conductors differ")
    if x._v is not None and x.ctx != ctx:
        raise ContextMismatch("adjunct part cannot be transferred")
    return FieldElement._make(ctx, x._u, x._v)


# ---------------------------------------------------------------------------
# coefficient-expression grammar
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := rational | 'z' ('^' integer)? | 's' | '(' expr ')' | '-' factor

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2)
        if tok is None or tok.isspace():
            pos = m.end()
            continue
        if m.group(2) is not None and tok not in "+-*/^()zs":
            raise ParseError(f"unexpected character {tok!r} in {text!r}")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, ctx: FieldContext, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> FieldElement:
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing token {self.peek()!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() == "*":
            self.take()
            val = val * self.factor()
        return val

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected integer, got {tok!r} in {self.text!r}")
        return sign * int(tok)

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        if tok.isdigit():
            self.take()
            num = int(tok)
            if self.peek() == "/":
                self.take()
                d = self.take()
                if not d.isdigit() or int(d) == 0:
                    raise ParseError(f"bad denominator {d!r} in {self.text!r}")
                return self.ctx.rational(Fraction(num, int(d)))
            return self.ctx.rational(num)
        if tok == "z":
            self.take()
            k = 1
            if self.peek() == "^":
                self.take()
                k = self.integer()
            return self.ctx.z(k)
        if tok == "s":
            self.take()
            if not self.ctx.has_adjunct:
                raise ParseError(f"'s' used without an adjunct in {self.text!r}")
            return self.ctx.sqrt_adjunct()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "-":
            self.take()
            return -self.factor()
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_expr(ctx: FieldContext, text: str) -> FieldElement:
    return _Parser(ctx, str(text)).parse()
