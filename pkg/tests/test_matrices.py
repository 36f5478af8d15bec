import pytest

from electrical_lie.matrices import affine_chevalley, chevalley, loop_to_matrix_rows, sl_model, std_rep_action


CASES = [("A", n) for n in range(1, 7)] + [("B", n) for n in (2, 3, 4)] + [("C", n) for n in (2, 3, 4)] + [("D", n) for n in (3, 4, 5)]


@pytest.mark.parametrize("family,rank", CASES)
def test_chevalley_identities(family, rank):
    ch = chevalley(family, rank)
    assert ch.invariant_failures() == []
    m = ch.model
    if m.form is not None:
        for i in ch.gcm.labels:
            assert m.preserves_form(ch.e[i]) and m.preserves_form(ch.f[i])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_affine_loop_identities(n):
    ch = affine_chevalley(n)
    assert ch.invariant_failures() == []
    m = ch.model
    # the central term appears exactly in degree-zero pairings
    c = m.bracket(m.e(0), m.f(0))
    assert not c.is_zero()


def test_sl2_generators_and_action():
    m = sl_model(2).model
    assert m.e(1).rows() == [[0, 1], [0, 0]]
    assert m.f(1).rows() == [[0, 0], [1, 0]]
    assert std_rep_action(m.e(1), [0, 1]) == [1, 0]


def test_b_short_root_rescaling():
    ch = chevalley("B", 2)
    m = ch.model
    assert m.bracket(m.bracket(ch.e[2], ch.f[2]), ch.e[2]) == ch.e[2] * 2


def test_loop_rows():
    m = affine_chevalley(3).model
    rows = loop_to_matrix_rows(m.e(0), 1)
    assert rows[2][0] == 1 and sum(x != 0 for r in rows for x in r) == 1
