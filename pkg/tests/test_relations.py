import pytest

from electrical_lie.cartan import GCM, builtin_gcm
from electrical_lie.core.generators import MalformedKind, edge_generators, symbolic_vertex_params, vertex_generators
from electrical_lie.core.relations import (
    HypothesisViolation,
    local_relations_check,
    min_cartan_check,
    relation_lhs,
    verify_edge_relations,
    verify_iterated_recursion,
    verify_vertex_serre,
)
from electrical_lie.core.reports import FAIL, GENERIC_PASS
from electrical_lie.kacmoody.engine import KMModel
from electrical_lie.matrices import chevalley, sl_model


def _vertex(model):
    ring, a = symbolic_vertex_params(model.gcm)
    return vertex_generators(model, a, ring)


def test_a2_vertex_identity():
    fam = _vertex(sl_model(3).model)
    m = fam.model
    a1, a2 = fam.ring.gen("a1"), fam.ring.gen("a2")
    assert m.ad_pow(fam.u[1], 2, fam.u[2]) - fam.u[1] * (2 * a1 * a2) == m.zero()
    r = verify_vertex_serre(fam)
    assert r.ok and len(r.checks) == 2


def test_commuting_pair():
    gcm = GCM.from_rows([[2, 0], [0, 2]])
    fam = _vertex(KMModel(gcm, 4))
    assert fam.model.bracket(fam.u[1], fam.u[2]).is_zero()
    assert verify_vertex_serre(fam).ok


def test_g2_long_pair_needs_fourth_power():
    fam = _vertex(KMModel(builtin_gcm("G", 2), 8))
    assert fam.gcm.a(2, 1) == -3
    assert fam.model.ad_pow(fam.u[2], 4, fam.u[1]).is_zero()
    assert relation_lhs(fam, 2, 1).is_zero()


def test_generic_mode_agrees_and_marks_generic():
    fam = _vertex(KMModel(builtin_gcm("B", 2), 8))
    r = verify_vertex_serre(fam, mode="generic", seed=5)
    assert r.ok and all(c.status == GENERIC_PASS for c in r.checks)


def test_corrupted_relation_fails_with_witness():
    fam = _vertex(sl_model(3).model)
    fam.relation_params = {k: v * 2 for k, v in fam.relation_params.items()}
    r = verify_vertex_serre(fam)
    assert not r.ok
    bad = r.failures()[0]
    assert bad.status == FAIL and "component" in bad.witness


def test_edge_chain_relations_rank3():
    fam = edge_generators("TYPE_A_ROOT", sl_model(3).model, k=2)
    m = fam.model
    b1 = fam.params[(1, 2)]
    assert m.ad_pow(fam.u[1], 2, fam.u[2]) + fam.u[1] * (2 * b1) == m.zero()
    assert m.ad_pow(fam.u[2], 2, fam.u[1]) + fam.u[2] * (2 * b1) == m.zero()


def test_rank2_edge_relations():
    km = KMModel(builtin_gcm("RANK2", p=1, q=2), 6)
    fam = edge_generators("RANK2", km)
    b = fam.params[(1, 2)]
    # (ad e_1)^2 (b f_1) = -2 b e_1
    assert km.ad_pow(km.e(1), 2, km.f(1) * b) == km.e(1) * (-2 * b)
    assert km.ad_pow(fam.u[2], 3, fam.u[1]).is_zero()
    assert verify_edge_relations(fam).ok


# -- findings: the displayed variants fail --------------------------------


def test_b_chain_needs_short_root_last():
    assert verify_edge_relations(edge_generators("B_CHAIN", chevalley("B", 3).model)).ok
    short_first = GCM.from_rows([[2, -2, 0], [-1, 2, -1], [0, -1, 2]], name="B3 short alpha_1")
    r = verify_edge_relations(edge_generators("B_CHAIN", KMModel(short_first, 8)))
    assert not r.ok
    assert "serre(2,3)" in [c.name for c in r.failures()]


def test_type_a_root_with_displayed_plus_sign_fails():
    m = sl_model(5).model
    assert verify_edge_relations(edge_generators("TYPE_A_ROOT", m, k=2)).ok
    r = verify_edge_relations(edge_generators("TYPE_A_ROOT", m, k=2, root_sign=1))
    assert {c.name for c in r.failures()} == {"serre(2,1)", "serre(2,3)"}


def test_c_chain_with_squared_relation_parameter_fails():
    m = chevalley("C", 3).model
    fam = edge_generators("C_CHAIN", m)
    assert verify_edge_relations(fam).ok
    b = fam.params[(2, 3)]
    corr = m.bracket(m.f(2), m.bracket(m.f(2), m.f(3)))
    # squared coefficient read as b_{n,n-1} = 2 b_{n-1,n}
    fam.u[3] = m.e(3) + m.f(2) * b - corr * (2 * b * b)
    assert not verify_edge_relations(fam).ok


# -- recursion, local relations, min rule ------------------------------------


@pytest.mark.parametrize("family", ["A", "B", "G"])
def test_iterated_recursion(family):
    r = verify_iterated_recursion(_vertex(KMModel(builtin_gcm(family, 2), 10)))
    assert r.ok and r.checks


def test_local_relations_a3_and_a4():
    for n in (3, 4):
        r = local_relations_check(builtin_gcm("A", n))
        assert r.ok and r.checks
    r = local_relations_check(builtin_gcm("A", 4))
    assert any(c.name.startswith("(c)") for c in r.checks)


def test_local_relations_need_a_chain():
    with pytest.raises(MalformedKind):
        local_relations_check(builtin_gcm("D", 4))


def test_local_relations_c3_displayed_scalar_differs():
    r = local_relations_check(builtin_gcm("C", 3))
    assert r.ok
    assert any(d.get("agrees") is False for d in r.diagnostics)


def test_min_rule_examples():
    r = min_cartan_check(builtin_gcm("RANK2", p=1, q=2), 2)
    assert r.ok and r.budgets["effective_gcm"] == [[2, -1], [-2, 2]]
    assert min_cartan_check(builtin_gcm("A", 3), 3).budgets["effective_gcm"] == builtin_gcm("A", 3).rows()
    fan = GCM.from_rows([[2, -1, -1], [-1, 2, 0], [-1, 0, 2]])
    km = KMModel(fan, 6)
    fam = edge_generators("MIN_CARTAN", km, r=1)
    assert km.bracket(fam.u[2], fam.u[3]).is_zero()
    assert min_cartan_check(fan, 1).ok


def test_min_rule_hypothesis_violation_names_bullet():
    bad = GCM.from_rows([[2, -1, 0], [-2, 2, -1], [0, -1, 2]])
    with pytest.raises(HypothesisViolation, match="bullet 2"):
        min_cartan_check(bad, 3)
