import itertools

from functools import lru_cache
from typing import List, Set

from .perm import (
    Permutation,
    covering_inversions,
    from_inversion_table,
    identity,
    inversion_table,
    remove_covering_inversions,
)


def _check_degrees(u: Permutation, v: Permutation):
    if len(u) != len(v):
        raise ValueError(f"Cannot compare permutations of degree {len(u)} and {len(v)}")


def leq(u: Permutation, v: Permutation) -> bool:
    """Return True if ι(u) <= ι(v) in every entry.

    :param u: permutation
    :param v: permutation of the same degree
    :return: True when u <= v in the inversion table order
    """
    _check_degrees(u, v)
    return all(a <= b for a, b in zip(inversion_table(u), inversion_table(v)))


def meet(u: Permutation, v: Permutation) -> Permutation:
    _check_degrees(u, v)
    return from_inversion_table(
        tuple(min(a, b) for a, b in zip(inversion_table(u), inversion_table(v)))
    )


def join(u: Permutation, v: Permutation) -> Permutation:
    _check_degrees(u, v)
    return from_inversion_table(
        tuple(max(a, b) for a, b in zip(inversion_table(u), inversion_table(v)))
    )


def bottom(n: int) -> Permutation:
    return identity(n)


def top(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def rank(w: Permutation) -> int:
    return sum(inversion_table(w))


def covers(z: Permutation) -> Set[Permutation]:
    """Return the elements covered by z: one for each covering inversion of z."""
    return {remove_covering_inversions(z, [c]) for c in covering_inversions(z)}


def mobius(y: Permutation, z: Permutation) -> int:
    """Möbius function of the lattice. The lattice is a product of chains, so μ(y, z) is
    (-1)^(rank z - rank y) when ι(z) - ι(y) is a 0/1 vector and 0 otherwise.

    :param y: lower permutation
    :param z: upper permutation of the same degree
    :return: -1, 0 or 1
    """
    _check_degrees(y, z)
    diff = [b - a for a, b in zip(inversion_table(y), inversion_table(z))]
    if any(d not in (0, 1) for d in diff):
        return 0
    return -1 if sum(diff) % 2 else 1


def mobius_recursive(y: Permutation, z: Permutation) -> int:
    """Möbius function from its recursive definition on the explicit poset:
    μ(y, y) = 1 and μ(y, z) = -Σ_{y <= x < z} μ(y, x)."""
    _check_degrees(y, z)
    return _mobius_recursive(y, z)


@lru_cache(maxsize=None)
def _mobius_recursive(y: Permutation, z: Permutation) -> int:
    if y == z:
        return 1
    if not leq(y, z):
        return 0
    return -sum(_mobius_recursive(y, x) for x in interval(y, z) if x != z)


def interval(y: Permutation, z: Permutation) -> List[Permutation]:
    """Return every x with y <= x <= z, ordered by inversion table."""
    _check_degrees(y, z)
    low = inversion_table(y)
    high = inversion_table(z)
    if not leq(y, z):
        return []
    ranges = [range(a, b + 1) for a, b in zip(low, high)]
    return [from_inversion_table(t) for t in itertools.product(*ranges)]


def upper_set(w: Permutation) -> List[Permutation]:
    """Return every x >= w, ordered by inversion table."""
    n = len(w)
    return interval(w, top(n))


def lower_set(w: Permutation) -> List[Permutation]:
    return interval(bottom(len(w)), w)


def boolean_sublattice(z: Permutation) -> Set[Permutation]:
    """Return {z^rm(C) | C ⊆ CInv(z)}, the Boolean sublattice generated by the elements z covers.

    :param z: permutation
    :return: set of 2^|CInv(z)| permutations
    """
    cinv = sorted(covering_inversions(z))
    result = set()
    for size in range(len(cinv) + 1):
        for cover in itertools.combinations(cinv, size):
            result.add(remove_covering_inversions(z, cover))
    return result
