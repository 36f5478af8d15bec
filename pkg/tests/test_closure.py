from fractions import Fraction
import itertools

import pytest

from electrical_lie.arith.linalg import NonGenericSpecialization
from electrical_lie.arith.poly import PolyRing
from electrical_lie.cartan import ParamFamily, builtin_gcm
from electrical_lie.core import closure
from electrical_lie.core.closure import flatness_check, ideal_closure, subalgebra_closure
from electrical_lie.core.generators import GeneratorFamily, edge_generators, symbolic_vertex_params, vertex_generators
from electrical_lie.core.reports import FAIL, GENERIC_PASS, PASS
from electrical_lie.matrices import affine_chevalley, chevalley, sl_model


def _vertex(model):
    ring, a = symbolic_vertex_params(model.gcm)
    return vertex_generators(model, a, ring)


def test_sl2_vertex_is_one_dimensional():
    assert subalgebra_closure(_vertex(sl_model(2).model)).dims == [1]


def test_a3_vertex_dims():
    r = flatness_check(_vertex(sl_model(4).model))
    assert r.ok and r.checks[0].detail["dims"] == [3, 2, 1]


def test_sl4_chain_total_at_fixed_point():
    fam = edge_generators("TYPE_A_ROOT", sl_model(4).model, k=3)
    fam = fam.specialize({"b1": 2, "b2": 3})
    assert subalgebra_closure(fam).total == 6


def test_sp4_chain_and_d4_branch_totals():
    assert subalgebra_closure(edge_generators("C_CHAIN", chevalley("C", 2).model)).total == 4
    r = flatness_check(edge_generators("D_BRANCH", chevalley("D", 4).model))
    assert r.ok and sum(r.checks[0].detail["dims"]) == 12


def test_zero_parameters_pass_exactly():
    fam = _vertex(sl_model(3).model).specialize({"a1": 0, "a2": 0})
    r = flatness_check(fam)
    assert r.checks[0].status == PASS


def test_affine_is_truncated_per_degree():
    r = flatness_check(edge_generators("AFFINE_A", affine_chevalley(3).model))
    c = r.checks[0]
    assert c.status == GENERIC_PASS and c.detail["stabilized"] is False
    assert c.detail["dims"] == [3, 3, 2, 3, 3, 2]


def test_non_flat_family_fails_with_degree_witness():
    m = sl_model(3).model
    ring = PolyRing(["x"])
    x = ring.gen("x")
    # generic span {e_1 + x f_1, e_1} brackets to h_1; at x = 0 it is just e_1
    fam = GeneratorFamily(m, {1: m.e(1) + m.f(1) * x, 2: m.e(1)}, ParamFamily("vertex", {1: x}), "test", builtin_gcm("A", 2), ring)
    r = flatness_check(fam)
    c = r.checks[0]
    assert c.status == FAIL and c.witness == {"degree": 1, "generic": 2, "zero": 1}


def test_disagreeing_points_abort(monkeypatch):
    m = sl_model(3).model
    ring = PolyRing(["x"])
    x = ring.gen("x")
    fam = GeneratorFamily(m, {1: m.e(1), 2: m.e(2) * x + m.e(1)}, ParamFamily("vertex", {1: x}), "test", builtin_gcm("A", 2), ring)
    values = itertools.cycle([Fraction(0), Fraction(1)])
    monkeypatch.setattr(closure, "random_assignment", lambda names, rng: {n: next(values) for n in names})
    with pytest.raises(NonGenericSpecialization):
        subalgebra_closure(fam)
    assert flatness_check(fam).has_error


def test_ideal_closure_in_sl3():
    m = sl_model(3).model
    # the ideal of n_+ generated by e_2 is span{e_2, [e_1,e_2]}
    assert len(ideal_closure(m, [m.e(2)], [m.e(1), m.e(2)])) == 2
