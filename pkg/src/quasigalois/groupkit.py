"""Finite groups of projective transforms: closure, curve preservation,
classification of central collineations, normality."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import CapExceededError, IrrationalEigenvalueError, NotSubgroupError
from .exactnum import FieldElement
from .plane import ProjLine, ProjPoint, ProjTransform, kernel, preserves, rank
from .polyring import TriForm, UniPoly, det3, poly_gcd

DEFAULT_CAP = 2048


@dataclass(frozen=True)
class MatrixGroup:
    """A finite group of normalized transforms, elements in BFS order."""

    elements: tuple[ProjTransform, ...]
    generators: tuple[ProjTransform, ...] = ()
    _members: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        if not self._members:
            object.__setattr__(self, "_members", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._members

    def __iter__(self):
        return iter(self.elements)

    def issubset(self, other: MatrixGroup) -> bool:
        return self._members <= other._members

    def involutions(self) -> list[ProjTransform]:
        return [g for g in self.elements if not g.is_identity() and (g @ g).is_identity()]

    def order_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(g.order() for g in self.elements).items()))


def _bfs(gens, ctx, cap):
    ident = ProjTransform.identity(ctx)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) > cap:
                    raise CapExceededError(
                        f"group closure exceeded {cap} elements",
                        partial=MatrixGroup(tuple(order), tuple(gens)),
                    )
    return order


def closure(generators, cap: int = DEFAULT_CAP) -> MatrixGroup:
    """Group generated by the transforms, by breadth-first products.

    Generators already in the partial closure are skipped, so the final
    breadth-first pass only multiplies by an irredundant subset.
    """
    generators = tuple(generators)
    if not generators:
        raise ValueError("closure needs at least one generator (pass the identity)")
    ctx = generators[0].ctx
    used: list[ProjTransform] = []
    elements = [ProjTransform.identity(ctx)]
    members = set(elements)
    for g in generators:
        if g in members:
            continue
        used.append(g)
        elements = _bfs(used, ctx, cap)
        members = set(elements)
    return MatrixGroup(tuple(elements), generators)


def preserves_curve(G: MatrixGroup, C: TriForm) -> bool:
    """True iff every element maps C to itself (F o A = c F).

    Checking the generators suffices: the elements are their products."""
    gens = G.generators or G.elements
    return all(preserves(g, C) is not None for g in gens)


def is_normal_subgroup(H: MatrixGroup, G: MatrixGroup) -> bool:
    if not H.issubset(G):
        raise NotSubgroupError("H is not contained in G")
    gens = G.generators or G.elements
    for g in gens:
        gi = g.inverse()
        for h in H.elements:
            if g @ h @ gi not in H:
                return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Collineation:
    """Classification of a transform: identity, homology, elation or other."""

    kind: str  # "identity", "homology", "elation", "not_central"
    center: ProjPoint | None = None
    axis: ProjLine | None = None
    ratio: FieldElement | None = None

    def __str__(self):
        if self.kind == "homology":
            return f"Homology({self.center}, {self.axis.equation()}, {self.ratio})"
        if self.kind == "elation":
            return f"Elation({self.center}, {self.axis.equation()})"
        return {"identity": "Identity", "not_central": "NotCentral"}[self.kind]


def charpoly(A) -> UniPoly:
    """det(t I - A)."""
    ctx = A[0][0].ctx
    tr = A[0][0] + A[1][1] + A[2][2]
    c2 = (
        A[0][0] * A[1][1] - A[0][1] * A[1][0]
        + A[0][0] * A[2][2] - A[0][2] * A[2][0]
        + A[1][1] * A[2][2] - A[1][2] * A[2][1]
    )
    return UniPoly(ctx, [-det3(A), c2, -tr, ctx.one()])


def _shift(A, mu):
    return [[A[i][j] - mu if i == j else A[i][j] for j in range(3)] for i in range(3)]


def _nonzero_row(B):
    return next(r for r in B if any(r))


def homology_decomposition(g: ProjTransform) -> Collineation:
    """Classify g through the repeated root of its characteristic polynomial.

    The repeated root is read off gcd(p, p'); a linear gcd gives a double
    eigenvalue, a quadratic one a triple eigenvalue (trace / 3).
    """
    A = g.matrix
    p = charpoly(A)
    h = poly_gcd(p, p.derivative())
    if h.degree == 0:
        return Collineation("not_central")
    tr = A[0][0] + A[1][1] + A[2][2]
    if h.degree == 2:
        mu = tr / 3
        if h != UniPoly(h.ctx, [mu * mu, -mu * 2, 1]):
            raise IrrationalEigenvalueError("repeated eigenvalue outside the field")
        B = _shift(A, mu)
        rk = rank(B)
        if rk == 0:
            return Collineation("identity")
        if rk == 1:
            center = next(c for c in zip(*B) if any(c))
            return Collineation("elation", ProjPoint(center), ProjLine(_nonzero_row(B)))
        return Collineation("not_central")
    mu = -h.coeff(0)
    nu = tr - mu * 2
    B = _shift(A, mu)
    if rank(B) != 1:
        return Collineation("not_central")
    center = kernel(_shift(A, nu))[0]
    return Collineation("homology", ProjPoint(center), ProjLine(_nonzero_row(B)), nu / mu)


def group_report(G: MatrixGroup) -> dict:
    centers = set()
    for g in G.elements:
        info = homology_decomposition(g)
        if info.kind == "homology":
            centers.add(info.center)
    hist = G.order_histogram()
    return {
        "order": G.order,
        "generator_count": len(G.generators),
        "element_orders": {str(k): v for k, v in hist.items()},
        "involutions": hist.get(2, 0),
        "homology_centers": [str(P) for P in sorted(centers)],
    }


__all__ = [
    "MatrixGroup",
    "Collineation",
    "closure",
    "preserves_curve",
    "is_normal_subgroup",
    "homology_decomposition",
    "charpoly",
    "group_report",
    "DEFAULT_CAP",
]
