from fractions import Fraction

import pytest

from electrical_lie.arith.poly import PolyRing
from electrical_lie.core.decomposition import (
    DegenerateParameters,
    b_prime,
    sp6_example_check,
    sp_decomposition_check,
)


def test_b_prime_values():
    ring = PolyRing(["b1", "b2"])
    b1, b2 = ring.gen("b1"), ring.gen("b2")
    bp = b_prime(3, {1: b1, 2: b2})
    assert bp[1] == -32 * b1 * b1 * b2 * b2
    assert bp[2] == -8 * b2 * b2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_splitting(n):
    r = sp_decomposition_check(n)
    assert r.ok
    dims = {c.name: c.detail.get("got") for c in r.checks if c.name.startswith("dim")}
    assert dims["dim J"] == n * (n + 1) // 2
    assert dims["dim sl_n part"] == n * (n - 1) // 2


def test_sp6_example_symbolic():
    r = sp6_example_check()
    assert r.ok
    names = {c.name for c in r.checks}
    assert {"[v_1, w_3]", "[v_2, w_1]", "b'_1", "b'_2"} <= names


def test_sp6_example_at_rational_point():
    assert sp6_example_check({1: Fraction(2, 3), 2: -5}).ok
    assert sp_decomposition_check(3, {"b1": 3, "b2": Fraction(-1, 2)}).ok


def test_degenerate_parameters_refused():
    with pytest.raises(DegenerateParameters, match="b_i != 0"):
        sp_decomposition_check(3, {1: 1, 2: 0})
