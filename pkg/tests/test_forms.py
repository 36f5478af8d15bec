from fractions import Fraction

import pytest

from electrical_lie.core.forms import (
    chain_ring,
    form_invariance_check,
    omega_form,
    sp_identification_check,
    v_one,
)
from electrical_lie.suites import omega6_display_check


def test_small_forms():
    assert omega_form(2).rows() == [[0, 1], [-1, 0]]
    assert omega_form(3, {1: 1}).rows() == [[0, -1, 0], [1, 0, 1], [0, -1, 0]]


def test_omega6_matches_display():
    r = omega6_display_check()
    assert r.ok
    ring = chain_ring(6)
    o = omega_form(6, ring=ring)
    assert str(o.entry(0, 1)) == str(ring.gen("b1") * ring.gen("b2") * ring.gen("b3") * ring.gen("b4"))
    assert o.entry(4, 5) == 1


def test_v_one():
    ring = chain_ring(6)
    b1, b3 = ring.gen("b1"), ring.gen("b3")
    assert v_one(4, ring=chain_ring(4))[:3] == [1, 0, -chain_ring(4).gen("b1")]
    assert v_one(6, ring=ring) == [1, 0, -b1, 0, b1 * b3, 0]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_invariance(n):
    r = form_invariance_check(n)
    assert r.ok
    if n % 2:
        assert any(c.name == "dim ker Omega" for c in r.checks)


def test_invariance_at_rational_point():
    assert form_invariance_check(5, {1: Fraction(1, 2), 2: -3, 3: 7}).ok


@pytest.mark.parametrize("n,dim", [(2, 1), (4, 6), (6, 15)])
def test_sp_identification(n, dim):
    r = sp_identification_check(n)
    assert r.ok
    assert sum(r.checks[0].detail["dims"]) == dim


def test_sp_identification_refuses_odd_and_zero():
    with pytest.raises(ValueError):
        sp_identification_check(5)
    with pytest.raises(ValueError):
        sp_identification_check(4, {1: 0, 2: 1})
