from fractions import Fraction

import pytest

from electrical_lie.cartan import builtin_gcm
from electrical_lie.core.generators import (
    MalformedKind,
    edge_generators,
    iterated_u,
    symbolic_vertex_params,
    vertex_generators,
)
from electrical_lie.core.relations import top_component_check
from electrical_lie.kacmoody.engine import KMModel
from electrical_lie.matrices import affine_chevalley, chevalley, sl_model


def _vertex(model):
    ring, a = symbolic_vertex_params(model.gcm)
    return vertex_generators(model, a, ring), ring


def test_sl2_vertex_matrix():
    fam, ring = _vertex(sl_model(2).model)
    a = ring.gen("a1")
    assert fam.u[1].rows() == [[a, 1], [-a * a, -a]]


def test_vertex_zero_parameters_give_e():
    fam, _ = _vertex(chevalley("C", 3).model)
    zero = fam.specialize({n: 0 for n in fam.parameter_names()})
    for i in fam.labels:
        assert zero.u[i] == fam.model.e(i)


def test_km_vertex_components():
    km = KMModel(builtin_gcm("A", 2), 4)
    fam, ring = _vertex(km)
    a1 = ring.gen("a1")
    assert fam.u[1].terms == {((-1, 0), 0): -a1 * a1, ((0, 0), 0): a1, ((1, 0), 0): 1}


def test_vertex_relation_parameters():
    fam, ring = _vertex(chevalley("B", 2).model)
    a1, a2 = ring.gen("a1"), ring.gen("a2")
    # a_12 = -1 is the only simple direction; b_12 = a_21 a_1 a_2
    assert fam.relation_params == {(1, 2): -2 * a1 * a2}


def test_chain_rooted_at_last_label():
    m = sl_model(4).model
    fam = edge_generators("TYPE_A_ROOT", m, k=3)
    b = {1: fam.params[(1, 2)], 2: fam.params[(2, 3)]}
    assert fam.u[1] == m.e(1)
    for i in (2, 3):
        assert fam.u[i] == m.e(i) + m.f(i - 1) * b[i - 1]


def test_chain_rooted_at_first_label_mirrors():
    m = sl_model(4).model
    fam = edge_generators("TYPE_A_ROOT", m, k=1)
    b1, b2 = fam.params[(1, 2)], fam.params[(2, 3)]
    assert fam.u[3] == m.e(3)
    assert fam.u[2] == m.e(2) + m.f(3) * b2
    assert fam.u[1] == m.e(1) + m.f(2) * b1


def test_interior_root_has_cubic_term():
    m = sl_model(5).model
    fam = edge_generators("TYPE_A_ROOT", m, k=2)
    b1, b2 = fam.params[(1, 2)], fam.params[(2, 3)]
    cubic = m.bracket(m.f(1), m.bracket(m.f(3), m.f(2)))
    assert fam.u[2] == m.e(2) + m.f(1) * b1 + m.f(3) * b2 - cubic * (b1 * b2)


def test_c_chain_rank_two():
    m = chevalley("C", 2).model
    fam = edge_generators("C_CHAIN", m)
    b = fam.params[(1, 2)]
    corr = m.bracket(m.f(1), m.bracket(m.f(1), m.f(2)))
    assert fam.u[2] == m.e(2) + m.f(1) * b - corr * (b * b * Fraction(1, 2))
    # the opposite-direction relation parameter is rescaled by a_12/a_21
    assert fam.relation_params[(2, 1)] == 2 * b


KIND_MODELS = [
    ("TYPE_A_ROOT", lambda: sl_model(4).model, {"k": 2}),
    ("B_CHAIN", lambda: chevalley("B", 3).model, {}),
    ("C_CHAIN", lambda: chevalley("C", 3).model, {}),
    ("RANK2", lambda: KMModel(builtin_gcm("RANK2", p=1, q=2), 6), {}),
    ("D_BRANCH", lambda: chevalley("D", 4).model, {}),
    ("AFFINE_A", lambda: affine_chevalley(3).model, {}),
    ("MIN_CARTAN", lambda: KMModel(builtin_gcm("A", 3), 6), {"r": 3}),
    ("CONICAL", lambda: KMModel(builtin_gcm("D", 4), 8), {"root": 2}),
    ("STAR", lambda: KMModel(builtin_gcm("D", 4), 8), {"root": 2}),
    ("PEACOCK", lambda: KMModel(builtin_gcm("C", 3), 8), {"root": 2, "J_plus": (3,)}),
]


@pytest.mark.parametrize("kind,mk,opts", KIND_MODELS, ids=[k[0] for k in KIND_MODELS])
def test_zero_parameters_give_e_for_every_kind(kind, mk, opts):
    model = mk()
    fam = edge_generators(kind, model, **opts)
    zero = fam.specialize({n: 0 for n in fam.parameter_names()})
    for i in fam.labels:
        assert zero.u[i] == model.e(i)


@pytest.mark.parametrize("kind,mk,opts", KIND_MODELS, ids=[k[0] for k in KIND_MODELS])
def test_top_component_is_e(kind, mk, opts):
    assert top_component_check(edge_generators(kind, mk(), **opts)).ok


def test_malformed_kinds():
    with pytest.raises(MalformedKind):
        edge_generators("NOPE", sl_model(3).model)
    with pytest.raises(MalformedKind):
        edge_generators("B_CHAIN", chevalley("D", 4).model)
    with pytest.raises(MalformedKind):
        edge_generators("RANK2", sl_model(4).model)
    with pytest.raises(MalformedKind):
        edge_generators("TYPE_A_ROOT", sl_model(4).model, k=7)
    with pytest.raises(ValueError):
        # D_5 rooted at a leaf is not conical
        edge_generators("CONICAL", KMModel(builtin_gcm("D", 5), 4), root=1)


def test_iterated_u_first_step():
    km = KMModel(builtin_gcm("A", 2), 5)
    fam, ring = _vertex(km)
    a1, a2 = ring.gen("a1"), ring.gen("a2")
    u12 = iterated_u(fam, 1, 1, 2)
    e1, f1 = km.e(1), km.f(1)
    # [u_i,u_j] = u_ij - a_j a_ji (e_i + a_i^2 f_i)
    assert km.bracket(fam.u[1], fam.u[2]) == u12 - (e1 + f1 * (a1 * a1)) * (a2 * -1)
    assert iterated_u(fam, 1, 2, 2).is_zero()
    zero = fam.specialize({"a1": 0, "a2": 0})
    assert iterated_u(zero, 1, 1, 2) == km.bracket(km.e(1), km.e(2))
