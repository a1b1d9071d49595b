import itertools
import pytest

from fqsym_scf.perm import all_permutations, dual_inversion_table, inverse, inversion_table
from fqsym_scf.perm import parse_permutation
from fqsym_scf.shuffle import (
    PositionSet,
    a_shuffle,
    all_position_sets,
    bowtie,
    bowtie_image_condition,
    deconcatenate,
    restrict,
    shuffle_set,
)
from util import p


def test_position_set():
    a = PositionSet(8, (8, 1, 5, 4))
    assert a.positions == (1, 4, 5, 8)
    assert str(a) == "{1,4,5,8}"
    assert 4 in a and 3 not in a
    assert a.count_below(5) == 2
    assert a.complement().positions == (2, 3, 6, 7)
    with pytest.raises(ValueError):
        PositionSet(3, (1, 1))
    with pytest.raises(ValueError):
        PositionSet(3, (4,))


def test_all_position_sets():
    sets = all_position_sets(4, 2)
    assert len(sets) == 6
    assert sets[0].positions == (1, 2)
    assert sets[-1].positions == (3, 4)


def test_a_shuffle_example():
    a = PositionSet(9, (1, 4, 5, 8))
    assert a_shuffle(p("31542"), p("3124"), a) == p("831675492")


def test_a_shuffle_rejects():
    with pytest.raises(ValueError):
        a_shuffle(p("12"), p("1"), PositionSet(3, (1, 2)))


def test_shuffle_set():
    assert shuffle_set(p("12"), p("1")) == {p("123"), p("132"), p("312")}
    assert len(shuffle_set(p("21"), p("12"))) == 6


def test_deconcatenate():
    assert deconcatenate(p("319825647"), 5) == (p("31542"), p("2314"))
    assert deconcatenate(p("319826547"), 5) == (p("31542"), p("3214"))
    assert deconcatenate(p("21"), 0) == (p(""), p("21"))
    assert deconcatenate(p("21"), 2) == (p("21"), p(""))
    with pytest.raises(ValueError):
        deconcatenate(p("21"), 3)


def test_restrict():
    assert restrict(p("319825647"), {3, 1, 9, 8, 2}) == p("31542")
    assert restrict(p("319825647"), {1, 2, 3, 4, 5}) == p("31254")
    assert restrict(p("971458326"), {6, 7, 8, 9}) == p("4231")
    assert restrict(p("4132"), {1, 2}) == p("12")
    assert restrict(p("4132"), set()) == p("")


def test_bowtie_example():
    a = PositionSet(10, (1, 4, 5, 8))
    expected = parse_permutation("6,2,7,10,3,9,4,8,1,5")
    assert bowtie(p("314625"), p("2413"), a) == expected
    assert inverse(expected) == parse_permutation("9,2,5,7,10,1,3,8,6,4")


def test_bowtie_tables():
    for m, n in [(1, 2), (2, 2), (3, 1), (2, 3)]:
        for w, v in itertools.product(all_permutations(m), all_permutations(n)):
            for a in all_position_sets(m + n, n):
                x = bowtie(w, v, a)
                for j in range(1, m + n + 1):
                    if j in a:
                        k = j - sum(1 for i in range(1, j) if i not in a)
                        assert dual_inversion_table(x)[j] == dual_inversion_table(v)[k]
                    else:
                        assert inversion_table(x)[j] == inversion_table(w)[j - a.count_below(j)]


def test_bowtie_inverts_shuffle():
    for m, n in [(0, 2), (2, 0), (1, 1), (2, 2), (3, 2), (1, 4)]:
        for w, v in itertools.product(all_permutations(m), all_permutations(n)):
            for a in all_position_sets(m + n, n):
                shuffled = a_shuffle(inverse(w), inverse(v), a)
                assert inverse(bowtie(w, v, a)) == shuffled


def test_bowtie_image():
    for n in range(5):
        for k in range(n + 1):
            for a in all_position_sets(n, k):
                image = {
                    bowtie(w, v, a)
                    for w in all_permutations(n - k)
                    for v in all_permutations(k)
                }
                for x in all_permutations(n):
                    assert bowtie_image_condition(x, a) == (x in image)
