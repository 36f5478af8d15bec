from fractions import Fraction
import random

import pytest

from electrical_lie.cartan import builtin_gcm
from electrical_lie.core.closure import _close
from electrical_lie.kacmoody.engine import HeightBudgetError, KMModel
from electrical_lie.matrices import affine_chevalley


def weyl_positive_roots(gcm):
    """Positive roots of a finite root system as the Weyl orbit of the simple roots."""
    n = gcm.rank
    A = gcm.entries
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(A[i][j] * beta[j] for j in range(n))
                img = tuple(beta[k] - (pair if k == i else 0) for k in range(n))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return {r for r in seen if all(x >= 0 for x in r)}


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("B", 2)])
def test_finite_root_spaces_match_weyl_orbit(family, rank):
    gcm = builtin_gcm(family, rank)
    km = KMModel(gcm, 12)
    roots = km.positive_roots()
    assert set(roots) == weyl_positive_roots(gcm)
    assert all(m == 1 for m in roots.values())
    assert km.top_height is not None


def test_affine_imaginary_root_against_loop_model():
    gcm = builtin_gcm("AFFINE_A", 3)
    km = KMModel(gcm, 6)
    assert km.top_height is None
    assert km.root_space_dim((1, 1, 1)) == 2
    assert km.root_space_dim((2, 2, 2)) == 2
    assert km.root_space_dim((1, 1, 0)) == 1
    # loop-model oracle: the n_+ closure of e_0, e_1, e_2 by bracket length
    loop = affine_chevalley(3).model
    dims, _, _ = _close(loop, [loop.e(i) for i in gcm.labels], 6, truncate=True)
    by_height = {}
    for root, mult in km.positive_roots().items():
        by_height[sum(root)] = by_height.get(sum(root), 0) + mult
    assert dims == [by_height[h] for h in range(1, 7)] == [3, 3, 2, 3, 3, 2]


def test_height_budget_is_never_silent():
    km = KMModel(builtin_gcm("AFFINE_A", 3), 4)
    x = km.e_word([0, 1, 2])
    with pytest.raises(HeightBudgetError):
        km.bracket(km.e(0), km.bracket(km.e(1), x))


def test_defining_relations_in_engine():
    km = KMModel(builtin_gcm("G", 2), 8)
    A = km.gcm
    for i in A.labels:
        for j in A.labels:
            assert km.bracket(km.h(i), km.e(j)) == km.e(j) * A.a(i, j)
            if i != j:
                assert km.bracket(km.e(i), km.f(j)).is_zero()
                assert km.ad_pow(km.e(i), 1 - A.a(i, j), km.e(j)).is_zero()
                assert km.ad_pow(km.f(i), 1 - A.a(i, j), km.f(j)).is_zero()
    # the engine example in the decisions: [f_1, [e_1, e_2]] = e_2 in A_2
    a2 = KMModel(builtin_gcm("A", 2), 4)
    assert a2.bracket(a2.f(1), a2.bracket(a2.e(1), a2.e(2))) == a2.e(2)


@pytest.mark.parametrize("family,rank,H", [("B", 3, 8), ("G", 2, 8), ("AFFINE_A", 3, 7)])
def test_jacobi_and_antisymmetry(family, rank, H):
    km = KMModel(builtin_gcm(family, rank), H)
    rng = random.Random(3)
    keys = [(km.zero_root, p) for p in range(km.gcm.rank)]
    for root, mult in km.positive_roots(max_height=2).items():
        for idx in range(mult):
            keys += [(root, idx), (tuple(-x for x in root), idx)]

    def elt():
        return km.element({k: Fraction(rng.randint(-4, 4) or 1) for k in rng.sample(keys, 3)})

    for _ in range(15):
        x, y, z = elt(), elt(), elt()
        assert (km.bracket(x, y) + km.bracket(y, x)).is_zero()
        jac = km.bracket(x, km.bracket(y, z)) + km.bracket(y, km.bracket(z, x)) + km.bracket(z, km.bracket(x, y))
        assert jac.is_zero()
