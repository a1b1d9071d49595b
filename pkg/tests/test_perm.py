import pytest

from fqsym_scf.perm import (
    CoveringInversion,
    InvTable,
    Permutation,
    all_permutations,
    code,
    covering_inversions,
    covering_positions,
    dual_inversion_table,
    format_permutation,
    from_inversion_table,
    identity,
    inverse,
    inversion_table,
    length,
    parse_permutation,
    remove_covering_inversions,
    rothe_diagram,
    standardize,
)
from util import p


def cinv(*pairs):
    return {CoveringInversion(*c) for c in pairs}


def test_parse_and_format():
    w = parse_permutation("3,1,4,6,2,5")
    assert w.word == (3, 1, 4, 6, 2, 5)
    assert format_permutation(w) == "3,1,4,6,2,5"
    assert parse_permutation("") == Permutation(())
    assert parse_permutation(" 2, 1 ") == p("21")
    assert w(4) == 6
    assert len(w) == w.degree == 6


@pytest.mark.parametrize("text", ["1,1", "0,1", "1,3", "a,b", "2,3"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_permutation(text)


def test_encodings_example():
    w = p("314625")
    assert inversion_table(w).entries == (1, 3, 0, 0, 1, 0)
    assert code(w).entries == (2, 0, 1, 2, 0, 0)
    assert dual_inversion_table(w).entries == (4, 1, 3, 2, 0, 0)
    assert length(w) == 5
    assert inversion_table(w)[2] == 3


def test_inversion_table_bijection():
    for n in range(6):
        tables = set()
        for w in all_permutations(n):
            table = inversion_table(w)
            tables.add(table.entries)
            assert from_inversion_table(table.entries) == w
            assert code(w) == inversion_table(inverse(w))
        assert len(tables) == len(all_permutations(n))


def test_from_inversion_table_rejects():
    with pytest.raises(ValueError):
        from_inversion_table((2, 0))
    with pytest.raises(ValueError):
        InvTable((0, -1))


def test_rothe_diagram_counts():
    for w in all_permutations(5):
        rothe = rothe_diagram(w)
        assert rothe.column_counts() == inversion_table(w).entries
        assert rothe.row_counts() == code(w).entries
        assert len(rothe.cells) == length(w)


def test_standardize():
    assert standardize([3, 1, 9, 8, 2]) == p("31542")
    assert standardize([]) == Permutation(())
    with pytest.raises(ValueError):
        standardize([2, 2])


def test_identity_and_inverse():
    assert identity(3) == p("123")
    assert inverse(p("231")) == p("312")
    assert inversion_table(identity(4)).entries == (0, 0, 0, 0)
    assert sum(inversion_table(p("4321"))) == 6


def test_covering_inversions_examples():
    assert covering_inversions(p("314625")) == cinv((3, 1), (6, 2), (6, 5))
    assert covering_inversions(p("917426358")) == cinv(
        (9, 1), (9, 7), (7, 4), (4, 2), (7, 6), (6, 3), (6, 5), (9, 8)
    )
    assert covering_inversions(p("971458326")) == cinv(
        (9, 7), (7, 1), (7, 4), (7, 5), (9, 8), (8, 3), (3, 2), (8, 6)
    )
    assert covering_positions(p("314625")) == {(1, 2), (4, 5), (4, 6)}


def test_covering_inversions_lower_one_entry():
    for w in all_permutations(5):
        table = inversion_table(w).entries
        cover = covering_inversions(w)
        assert len(cover) == sum(1 for t in table if t)
        for c in cover:
            lowered = inversion_table(remove_covering_inversions(w, [c])).entries
            assert lowered == tuple(t - (k == c.low) for k, t in enumerate(table, start=1))


def test_remove_all_covering_inversions():
    w = p("314625")
    removed = remove_covering_inversions(w, covering_inversions(w))
    assert inversion_table(removed).entries == (0, 2, 0, 0, 0, 0)
    assert remove_covering_inversions(w, []) == w


def test_remove_covering_inversions_rejects():
    with pytest.raises(ValueError):
        remove_covering_inversions(p("314625"), [(4, 2)])
