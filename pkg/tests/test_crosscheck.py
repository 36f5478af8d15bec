from electrical_lie.cartan import builtin_gcm
from electrical_lie.core.crosscheck import KMToMatrix, bracket_agreement, km_basis_keys, suite_agreement
from electrical_lie.kacmoody.engine import KMModel
from electrical_lie.matrices import sl_model


def test_basis_map_on_generators():
    km = KMModel(builtin_gcm("A", 3), 5)
    mat = sl_model(4).model
    phi = KMToMatrix(km, mat)
    for i in (1, 2, 3):
        assert phi(km.e(i)) == mat.e(i)
        assert phi(km.f(i)) == mat.f(i)
    assert len(km_basis_keys(km)) == 15


def test_bracket_agreement():
    r = bracket_agreement(3, 100, seed=0)
    assert r.ok and r.budgets["pairs"] == 100


def test_suite_agreement():
    r = suite_agreement(3)
    assert r.ok and len(r.checks) >= 5
