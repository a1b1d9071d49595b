import pytest

from fractions import Fraction
from fqsym_scf.hopf import coproduct, pch, product, sch, to_sch, zero
from fqsym_scf.oracle import (
    ClassFunction,
    GroupSizeError,
    Kind,
    UtMatrix,
    adjointness_check,
    basis_function,
    check_group_size,
    class_function_coproduct,
    class_function_product,
    decompose,
    degree,
    degree_identity_holds,
    delapsing,
    dual_basis,
    dual_coproduct,
    dual_map,
    dual_map_tensor,
    dual_product,
    enumerate_group,
    exflation,
    going_down_failures,
    going_up_failures,
    inner_product,
    is_superclass_function,
    rank,
    realize,
    realize_tensor,
    star_function,
    subgroup_coordinates,
    subgroup_lattice_failures,
    subgroup_shape,
    superclass_label,
    superclass_representative,
    superclass_size,
    supercharacter,
    supercharacter_table,
    tensor,
)
from fqsym_scf.lattice import join, meet
from fqsym_scf.perm import all_permutations, inverse
from fqsym_scf.shuffle import PositionSet, all_position_sets
from util import p


def test_group_enumeration():
    assert len(enumerate_group(2, 2)) == 2
    assert len(enumerate_group(3, 3)) == 27
    for k, x in enumerate(enumerate_group(3, 2)):
        assert x.code == k
    x = UtMatrix.from_entries(3, 3, {(1, 3): 2, (2, 3): 4})
    assert x[(1, 3)] == 2 and x[(2, 3)] == 1 and x[(1, 2)] == 0
    assert x.support() == {(1, 3): 2, (2, 3): 1}
    with pytest.raises(ValueError):
        UtMatrix.from_entries(3, 2, {(2, 1): 1})


def test_group_size_guard():
    with pytest.raises(GroupSizeError):
        check_group_size(3, 4)
    with pytest.raises(GroupSizeError):
        check_group_size(2, 7)
    check_group_size(2, 5)
    with pytest.raises(GroupSizeError):
        check_group_size(6, 2)
    with pytest.raises(ValueError):
        enumerate_group(5, 5)


def test_superclasses():
    assert superclass_size(p("312"), 3) == 4
    assert superclass_size(p("231"), 3) == 6
    assert subgroup_coordinates(p("312")) == {(1, 2), (2, 3)}
    assert subgroup_coordinates(p("231")) == {(1, 2), (1, 3)}
    for q in (2, 3):
        group = enumerate_group(3, q)
        for w in all_permutations(3):
            assert sum(1 for x in group if superclass_label(x) == w) == superclass_size(w, q)
            assert superclass_label(superclass_representative(w, q)) == w


def test_supercharacter_table():
    perms, values = supercharacter_table(2, 2)
    assert perms == [p("12"), p("21")]
    assert values == [[1, -1], [1, 1]]
    perms, values = supercharacter_table(3, 2)
    assert len(perms) == 6
    assert values[0][0] == 2


@pytest.mark.parametrize("n,q", [(2, 5), (3, 3), (4, 2)])
def test_orthogonality(n, q):
    for w in all_permutations(n):
        for v in all_permutations(n):
            expected = degree(supercharacter(w, q)) if v == w else 0
            assert inner_product(supercharacter(w, q), supercharacter(v, q)) == expected


def test_degrees():
    assert degree(supercharacter(p("12"), 3)) == 2
    assert degree(supercharacter(p("123"), 2)) == 2
    for w in all_permutations(4):
        assert degree(supercharacter(w, 2)) == degree(supercharacter(inverse(w), 2))


def test_rank_and_decompose():
    assert rank([supercharacter(w, 2) for w in all_permutations(3)]) == 6
    chi = supercharacter(p("12"), 3)
    assert rank([chi, chi * 2]) == 1
    assert rank([]) == 0
    f = supercharacter(p("132"), 2) * 3 - supercharacter(p("321"), 2)
    assert decompose(f) == {p("132"): 3, p("321"): -1}


def test_dual_bases():
    for q in (2, 3):
        for w in all_permutations(3):
            for v in all_permutations(3):
                expected = 1 if v == w else 0
                chi = basis_function(Kind.CHI, w, 3, q)
                assert inner_product(chi, dual_basis(Kind.CHI, v, 3, q)) == expected
                delta = basis_function(Kind.DELTA, w, 3, q)
                assert inner_product(delta, dual_basis(Kind.DELTA, v, 3, q)) == expected
    with pytest.raises(ValueError):
        dual_basis(Kind.CHI_BAR, p("12"), 2, 2)


@pytest.mark.parametrize("n,q", [(3, 3), (4, 2)])
def test_permutation_characters(n, q):
    group = len(enumerate_group(n, q))
    for w in all_permutations(n):
        chi_bar = basis_function(Kind.CHI_BAR, w, n, q)
        assert realize(pch(w), q) == chi_bar
        assert realize(to_sch(pch(w)), q) == chi_bar
        delta_bar = basis_function(Kind.DELTA_BAR, w, n, q)
        assert delta_bar * Fraction(group, sum(delta_bar.values)) == chi_bar


def test_realize():
    assert realize(zero(), 2, n=2).is_zero()
    with pytest.raises(ValueError):
        realize(zero(), 2)
    with pytest.raises(ValueError):
        realize(sch("1") + sch("1,2"), 2)
    assert realize(sch("2,1"), 3) == supercharacter(p("21"), 3)


def test_star_function():
    for w in all_permutations(3):
        assert star_function(supercharacter(w, 2)) == supercharacter(inverse(w), 2)


def test_subgroup_shape():
    shape = subgroup_shape(4, [2, 4])
    assert shape.m == 2 and shape.k == 2
    assert shape.corner(1) == 2
    assert shape.corner(3) == 3
    assert shape.boundary_rows() == [1, 3]
    assert shape.upper == {(2, 4)}
    cells = shape.upper | shape.lower | shape.upper_dual | shape.right
    assert len(cells) == 6
    assert shape.tau((2, 4)) == (1, 2)
    with pytest.raises(ValueError):
        subgroup_shape(3, PositionSet(4, (1,)))


def test_exflation_boundary_correction():
    shape = subgroup_shape(2, [2])
    one = supercharacter(p("1"), 2)
    literal = exflation(one, one, shape, boundary_correction=False)
    assert literal == supercharacter(p("12"), 2) + supercharacter(p("21"), 2)
    assert exflation(one, one, shape) == supercharacter(p("12"), 2)
    with pytest.raises(ValueError):
        exflation(one, supercharacter(p("12"), 2), shape)


def test_delapsing_examples():
    shape = subgroup_shape(2, [2])
    one = supercharacter(p("1"), 2)
    assert delapsing(supercharacter(p("12"), 2), shape) == tensor(one, one)
    assert delapsing(supercharacter(p("21"), 2), shape).is_zero()


@pytest.mark.parametrize("n,q", [(2, 3), (3, 3), (3, 2), (4, 2)])
def test_going_up(n, q):
    assert going_up_failures(n, q) == []


@pytest.mark.parametrize("n,q", [(2, 3), (3, 3), (3, 2), (4, 2)])
def test_going_down(n, q):
    assert going_down_failures(n, q) == []


def test_adjointness_flags_full_boundary_rows():
    report = adjointness_check(subgroup_shape(2, [2]), 2)
    assert report.violations == []
    assert report.literal_violations
    report = adjointness_check(subgroup_shape(2, []), 3)
    assert report.violations == []
    assert report.literal_violations == []


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3)])
def test_adjointness(n, q):
    for k in range(n + 1):
        for a in all_position_sets(n, k):
            shape = subgroup_shape(n, a)
            assert adjointness_check(shape, q).violations == []
            for y in all_permutations(shape.m):
                for z in all_permutations(shape.k):
                    assert degree_identity_holds(y, z, shape, q)


def test_class_function_guards():
    f = ClassFunction.zero(2, 2)
    with pytest.raises(ValueError):
        f + ClassFunction.zero(2, 3)
    with pytest.raises(ValueError):
        basis_function(Kind.CHI, p("12"), 3, 2)


def supercharacter_pairs(n):
    for k in range(n + 1):
        for w in all_permutations(n - k):
            for v in all_permutations(k):
                yield w, v


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_subgroup_lattice(n):
    assert subgroup_lattice_failures(n) == []


def test_subgroup_meet_and_join():
    u, v = p("132"), p("213")
    assert subgroup_coordinates(u) == {(2, 3)}
    assert subgroup_coordinates(v) == {(1, 2)}
    assert subgroup_coordinates(meet(u, v)) == frozenset()
    assert subgroup_coordinates(join(u, v)) == {(1, 2), (2, 3)}
    assert join(u, v) == p("312")


@pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 5) for q in (2, 3)])
def test_basis_families(n, q):
    perms = all_permutations(n)
    for kind in Kind:
        functions = [basis_function(kind, w, n, q) for w in perms]
        assert all(is_superclass_function(f) for f in functions)
        assert rank(functions) == len(perms)


def test_is_superclass_function():
    assert not is_superclass_function(ClassFunction.from_callable(2, 3, lambda x: x[(1, 2)]))
    assert is_superclass_function(ClassFunction.zero(3, 2))
    one = supercharacter(p("1"), 2)
    with pytest.raises(ValueError):
        inner_product(supercharacter(p("12"), 2), tensor(one, one))


def test_class_function_product_example():
    chi = supercharacter(p("1"), 2)
    assert class_function_product(chi, chi) == realize(sch("1,2") + sch("2,1"), 2)
    with pytest.raises(ValueError):
        class_function_product(chi, supercharacter(p("1"), 3))


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_class_function_hopf(n, q):
    for w, v in supercharacter_pairs(n):
        actual = class_function_product(supercharacter(w, q), supercharacter(v, q))
        assert actual == realize(product(sch(w), sch(v)), q)
    for w in all_permutations(n):
        actual = class_function_coproduct(supercharacter(w, q))
        assert actual == realize_tensor(coproduct(sch(w)), q)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3])
def test_class_function_hopf_degree_four(q):
    for w, v in supercharacter_pairs(4):
        actual = class_function_product(supercharacter(w, q), supercharacter(v, q))
        assert actual == realize(product(sch(w), sch(v)), q)


def test_dual_map():
    for w in all_permutations(3):
        chi = supercharacter(w, 2)
        assert dual_map(chi) == dual_basis(Kind.CHI, inverse(w), 3, 2)
        assert dual_map(chi * 3 - chi) == dual_basis(Kind.CHI, inverse(w), 3, 2) * 2


def test_dual_structure_example():
    chi = supercharacter(p("1"), 2)
    assert dual_product(chi, chi) == realize(sch("1,2") + sch("2,1"), 2)
    literal = realize(sch("2,1") + sch("1,2") * Fraction(1, 2), 2)
    assert dual_product(chi, chi, literal=True) == literal

    chi_12 = supercharacter(p("12"), 2)
    exact = realize_tensor(coproduct(sch("1,2")), 2)
    assert dual_coproduct(chi_12) == exact
    expected = dict(exact)
    expected[(1, 1)] = exact[(1, 1)] * 2
    assert dual_coproduct(chi_12, literal=True) == expected


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_dual_map_is_hopf_isomorphism(n, q):
    for w, v in supercharacter_pairs(n):
        chi_w, chi_v = supercharacter(w, q), supercharacter(v, q)
        expected = dual_map(class_function_product(chi_w, chi_v))
        assert dual_product(dual_map(chi_w), dual_map(chi_v)) == expected
    for w in all_permutations(n):
        chi = supercharacter(w, q)
        expected = dual_map_tensor(class_function_coproduct(chi))
        assert dual_coproduct(dual_map(chi)) == expected


@pytest.mark.slow
def test_full_size_group():
    assert going_up_failures(4, 3) == []
    assert going_down_failures(4, 3) == []
    for k in range(5):
        for a in all_position_sets(4, k):
            assert adjointness_check(subgroup_shape(4, a), 3).violations == []
