from __future__ import annotations

import pytest

from conftest import corpus_discovery
from quasigalois.errors import CapExceededError, NotSubgroupError
from quasigalois.exactnum import make_context, zeta
from quasigalois.groupkit import (
    MatrixGroup,
    charpoly,
    closure,
    group_report,
    homology_decomposition,
    is_normal_subgroup,
    preserves_curve,
)
from quasigalois.plane import ProjLine, ProjPoint, ProjTransform

K3 = make_context(3)
W = zeta(K3, 3)


def diag(*xs):
    return ProjTransform.diagonal(K3, xs)


def test_closure_direct_product():
    G = closure([diag(W, 1, 1), diag(1, W, 1)])
    assert G.order == 9
    assert G.elements[0].is_identity()
    assert all(g.inverse() in G for g in G)
    assert all(a @ b in G for a in G for b in G)
    assert G.order_histogram() == {1: 1, 3: 8}


def test_closure_is_deterministic():
    gens = [diag(W, 1, 1), ProjTransform.permutation(K3, (1, 2, 0))]
    assert closure(gens).elements == closure(gens).elements


def test_closure_cap():
    shear = ProjTransform([[1, 1, 0], [0, 1, 0], [0, 0, 1]], K3)
    with pytest.raises(CapExceededError) as info:
        closure([shear], cap=50)
    assert info.value.partial.order > 50


def test_hessian_group_from_proof_generators():
    C, certs = corpus_discovery("hessian_sextic")
    by_point = {c.point: c for c in certs}
    s1 = by_point[ProjPoint((1, 0, 0), K3)].generator
    s2 = by_point[ProjPoint((0, 1, 0), K3)].generator
    tau = by_point[ProjPoint((1, 1, 1), K3)].generator
    swaps = [ProjTransform.permutation(K3, (1, 0, 2)), ProjTransform.permutation(K3, (2, 1, 0))]
    G = closure([s1, s2, tau] + swaps)
    assert G.order == 216
    assert preserves_curve(G, C.form)


def test_klein_group():
    C, certs = corpus_discovery("klein_model")
    G = closure([c.generator for c in certs])
    assert G.order == 168
    assert len(G.involutions()) == 21
    rep = group_report(G)
    assert rep["order"] == 168 and rep["involutions"] == 21
    assert len(rep["homology_centers"]) == 21
    assert rep["element_orders"] == {"1": 1, "2": 21, "3": 56, "4": 42, "7": 48}


def test_fermat_quartic_groups():
    C, certs = corpus_discovery("fermat", {"d": 4})
    G = closure([c.generator for c in certs])
    D = closure([c.generator for c in certs if c.order == 4])
    assert G.order == 96 and D.order == 16
    assert preserves_curve(G, C.form)
    assert G.order % D.order == 0
    assert is_normal_subgroup(D, G)
    assert is_normal_subgroup(G, G)


def test_not_normal_in_hessian_group():
    C, certs = corpus_discovery("hessian_sextic")
    G = closure([c.generator for c in certs])
    H = closure([diag(W, 1, 1)])
    assert H.issubset(G)
    assert G.order % H.order == 0
    assert not is_normal_subgroup(H, G)


def test_normal_requires_subgroup():
    G = closure([diag(W, 1, 1)])
    H = closure([diag(1, W, 1)])
    with pytest.raises(NotSubgroupError):
        is_normal_subgroup(H, G)


def test_preserves_curve_examples():
    C, _ = corpus_discovery("fermat", {"d": 4})
    ctx = C.context
    assert preserves_curve(closure([ProjTransform.identity(ctx)]), C.form)
    shear = ProjTransform([[1, 0, 0], [0, 1, 0], [1, 0, 1]], ctx)
    # the shear has infinite order, so wrap it without closing
    G = MatrixGroup((ProjTransform.identity(ctx), shear), (shear,))
    assert not preserves_curve(G, C.form)


def test_homology_decomposition_examples():
    h = homology_decomposition(diag(W, 1, 1))
    assert h.kind == "homology"
    assert h.center == ProjPoint((1, 0, 0), K3)
    assert h.axis == ProjLine((1, 0, 0), K3)
    assert h.ratio == W
    o = K3.one()
    tau = ProjTransform([[W if i == j else o for j in range(3)] for i in range(3)])
    h = homology_decomposition(tau)
    assert h.kind == "homology"
    assert h.center == ProjPoint((1, 1, 1), K3)
    assert h.axis == ProjLine((1, 1, 1), K3)
    assert h.ratio == W**2
    assert homology_decomposition(ProjTransform.identity(K3)).kind == "identity"


def test_elation_and_not_central():
    e = ProjTransform([[1, 1, 0], [0, 1, 0], [0, 0, 1]], K3)
    h = homology_decomposition(e)
    assert h.kind == "elation"
    assert h.center == ProjPoint((1, 0, 0), K3)
    assert h.axis == ProjLine((0, 1, 0), K3)
    assert homology_decomposition(diag(W, W * W, 1)).kind == "not_central"
    assert homology_decomposition(ProjTransform.permutation(K3, (1, 2, 0))).kind == "not_central"


def test_charpoly():
    o, z = K3.one(), K3.zero()
    p = charpoly([[W, z, z], [z, o, z], [z, z, o]])
    assert p(W) == 0 and p(K3.one()) == 0
    assert p.derivative()(K3.one()) == 0
