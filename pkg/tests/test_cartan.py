import pytest

from electrical_lie.cartan import (
    GCM,
    InvalidCartanMatrix,
    NotATree,
    builtin_gcm,
    graph_of,
    read_gcm_file,
    root_tree,
    write_gcm_file,
)


def test_labeling_conventions():
    b3 = builtin_gcm("B", 3)
    assert b3.a(3, 2) == -2 and b3.a(2, 3) == -1
    c3 = builtin_gcm("C", 3)
    assert c3.a(2, 3) == -2 and c3.a(3, 2) == -1
    d5 = builtin_gcm("D", 5)
    assert d5.a(3, 4) == d5.a(3, 5) == -1 and d5.a(4, 5) == 0
    aff = builtin_gcm("AFFINE_A", 4)
    assert aff.labels == (0, 1, 2, 3) and aff.a(3, 0) == -1


def test_rank2_and_affine_d4():
    g = builtin_gcm("RANK2", p=1, q=3)
    assert g.rows() == [[2, -1], [-3, 2]]
    d = builtin_gcm("AFFINE_D4")
    assert d.rank == 5 and sum(1 for j in d.labels if d.a(2, j) == -1) == 4


@pytest.mark.parametrize(
    "rows",
    [
        [[2, -1], [0, 2]],  # a_ij = 0 but a_ji != 0
        [[2, 1], [1, 2]],  # positive off-diagonal
        [[3, -1], [-1, 2]],  # diagonal not 2
    ],
)
def test_invalid_matrices_are_rejected(rows):
    with pytest.raises(InvalidCartanMatrix):
        GCM.from_rows(rows)


def test_file_round_trip(tmp_path):
    g = builtin_gcm("G", 2)
    p = tmp_path / "g2.txt"
    write_gcm_file(g, p)
    assert read_gcm_file(p).rows() == g.rows()
    bad = tmp_path / "bad.txt"
    bad.write_text("3\n2 -1 0\n-1 2 -1\n")
    with pytest.raises(InvalidCartanMatrix):
        read_gcm_file(bad)


def test_rooted_trees():
    d4 = graph_of(builtin_gcm("D", 4))
    t = root_tree(d4, 2)
    assert t.conical and sorted(t.leaves()) == [1, 3, 4]
    assert all(t.parent[v] == 2 for v in (1, 3, 4))
    a4 = root_tree(graph_of(builtin_gcm("A", 4)), 2)
    assert a4.conical and a4.only_child(3) == 4 and a4.precedes(2, 4)
    # D_5 rooted at a leaf has its branch away from the root
    assert not root_tree(graph_of(builtin_gcm("D", 5)), 1).conical
    with pytest.raises(NotATree):
        root_tree(graph_of(builtin_gcm("AFFINE_A", 3)), 0)
