import itertools
import logging

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple
from .lattice import leq
from .perm import (
    CoveringInversion,
    Permutation,
    all_permutations,
    covering_inversions,
    format_permutation,
    inverse,
    remove_covering_inversions,
)
from .shuffle import restrict

Cover = FrozenSet[CoveringInversion]


class CoreStatus(Enum):
    ZERO = "zero"
    SIGNED = "signed"


@dataclass(frozen=True)
class CoreResult:
    """Outcome of the core computation. ZERO means z does not appear in the product; SIGNED
    carries the size of the smallest core set and the coefficient (-1)^size."""

    status: CoreStatus
    size: Optional[int] = None

    @property
    def sign(self) -> int:
        if self.status is CoreStatus.ZERO:
            return 0
        return -1 if self.size % 2 else 1


@dataclass(frozen=True)
class CInvSubsetFamily:
    """The subsets C of CInv(z) for which z^rm(C) lies in dSh_{v,w}."""

    z: Permutation
    v: Permutation
    w: Permutation
    subsets: FrozenSet[Cover]

    def __contains__(self, cover) -> bool:
        return frozenset(cover) in self.subsets

    def __iter__(self) -> Iterator[Cover]:
        return iter(sorted(self.subsets, key=cover_key))

    def __len__(self) -> int:
        return len(self.subsets)

    @property
    def covering(self) -> FrozenSet[CoveringInversion]:
        return covering_inversions(self.z)


@dataclass(frozen=True)
class RemovalPartition:
    blocks: Tuple[FrozenSet[Cover], ...]
    remaining: FrozenSet[Cover]


def cover_key(cover: Iterable[CoveringInversion]) -> Tuple:
    """Sort key for covering-inversion sets: size, then the sorted pairs."""
    cover = sorted(tuple(c) for c in cover)
    return len(cover), cover


def _check_degrees(v: Permutation, w: Permutation, z: Permutation):
    if len(z) != len(v) + len(w):
        raise ValueError(
            f"Degree of {format_permutation(z)} is not {len(v)} + {len(w)}"
        )


def in_dsh(y: Permutation, v: Permutation, w: Permutation) -> bool:
    """Return True if y_{1..m} >= v and y_{m+1..m+n} >= w.

    :param y: permutation of degree m+n
    :param v: permutation of degree m
    :param w: permutation of degree n
    :return: membership of y in dSh_{v,w}
    """
    _check_degrees(v, w, y)
    m = len(v)
    return leq(v, restrict(y, range(1, m + 1))) and leq(w, restrict(y, range(m + 1, len(y) + 1)))


@lru_cache(maxsize=None)
def cinvs(z: Permutation, v: Permutation, w: Permutation) -> CInvSubsetFamily:
    """Enumerate CInvS^z_{v,w} over all subsets of CInv(z).

    :param z: permutation of degree m+n
    :param v: permutation of degree m
    :param w: permutation of degree n
    :return: CInvSubsetFamily
    """
    _check_degrees(v, w, z)
    cinv = sorted(covering_inversions(z))
    subsets = set()
    for size in range(len(cinv) + 1):
        for cover in itertools.combinations(cinv, size):
            if in_dsh(remove_covering_inversions(z, cover), v, w):
                subsets.add(frozenset(cover))
    return CInvSubsetFamily(z=z, v=v, w=w, subsets=frozenset(subsets))


def coefficient_bruteforce(v: Permutation, w: Permutation, z: Permutation) -> int:
    """Coefficient of χ̄^z in χ̄^v·χ̄^w as the alternating sum over CInvS^z_{v,w}."""
    return sum(-1 if len(cover) % 2 else 1 for cover in cinvs(z, v, w).subsets)


def is_free(
    c: CoveringInversion,
    v: Permutation,
    w: Permutation,
    z: Permutation,
    family: Optional[CInvSubsetFamily] = None,
) -> bool:
    """Return True if adding or removing c never changes membership in CInvS^z_{v,w}.

    :param c: covering inversion of z
    :param v: permutation of degree m
    :param w: permutation of degree n
    :param z: permutation of degree m+n
    :param family: precomputed CInvS^z_{v,w}
    :return: True when c is free
    """
    family = family or cinvs(z, v, w)
    c = CoveringInversion(*c)
    if c not in family.covering:
        raise ValueError(f"{tuple(c)} is not a covering inversion of {format_permutation(z)}")
    others = sorted(family.covering - {c})
    for size in range(len(others) + 1):
        for cover in itertools.combinations(others, size):
            cover = frozenset(cover)
            if (cover in family.subsets) != ((cover | {c}) in family.subsets):
                return False
    return True


def free_inversions(v: Permutation, w: Permutation, z: Permutation) -> Set[CoveringInversion]:
    family = cinvs(z, v, w)
    return {c for c in family.covering if is_free(c, v, w, z, family=family)}


def nests(b: CoveringInversion, cover: Iterable[CoveringInversion], z: Permutation) -> bool:
    """Return True if the arc of b, at positions j < k, sits under an arc of C at positions
    i <= j < k < l."""
    z_inv = inverse(z)
    j, k = z_inv(b[0]), z_inv(b[1])
    for c in cover:
        i, l = z_inv(c[0]), z_inv(c[1])
        if i <= j and k < l:
            return True
    return False


def is_addable(b: CoveringInversion, cover: Cover, family: CInvSubsetFamily) -> bool:
    return b not in cover and nests(b, cover, family.z) and (cover | {b}) in family.subsets


def is_removable(b: CoveringInversion, cover: Cover, family: CInvSubsetFamily) -> bool:
    return b in cover and nests(b, cover, family.z) and (cover - {b}) in family.subsets


def remaining(family: CInvSubsetFamily, bset: Iterable[CoveringInversion]) -> FrozenSet[Cover]:
    """Return R(B): the members of the family in which no inversion of B is addable or
    removable."""
    bset = [CoveringInversion(*b) for b in bset]
    return frozenset(
        cover
        for cover in family.subsets
        if not any(is_addable(b, cover, family) or is_removable(b, cover, family) for b in bset)
    )


def core_set(v: Permutation, w: Permutation, z: Permutation) -> FrozenSet[Cover]:
    """Return crSt^z_{v,w}, the members of CInvS^z_{v,w} with no addable and no removable
    covering inversion."""
    family = cinvs(z, v, w)
    return remaining(family, family.covering)


def core(v: Permutation, w: Permutation, z: Permutation) -> CoreResult:
    """Compute the sign of χ̄^z in χ̄^v·χ̄^w from the core sets.

    :param v: permutation of degree m
    :param w: permutation of degree n
    :param z: permutation of degree m+n
    :return: ZERO when a free covering inversion exists or crSt has even size, otherwise
             SIGNED with the smallest size of a core set
    """
    family = cinvs(z, v, w)
    if any(is_free(c, v, w, z, family=family) for c in family.covering):
        return CoreResult(CoreStatus.ZERO)
    core_sets = core_set(v, w, z)
    if len(core_sets) % 2 == 0:
        return CoreResult(CoreStatus.ZERO)
    return CoreResult(CoreStatus.SIGNED, min(len(cover) for cover in core_sets))


def removal_sequence_partition(
    v: Permutation,
    w: Permutation,
    z: Permutation,
    bset: Iterable[CoveringInversion],
    eta: Sequence[CoveringInversion],
) -> RemovalPartition:
    """Split CInvS^z_{v,w} into the blocks K_1..K_k of a removal sequence and the remainder R(B).
    Block K_j holds the members left after R of the first j-1 inversions of eta but lost when
    eta(j) is added.

    :param v: permutation of degree m
    :param w: permutation of degree n
    :param z: permutation of degree m+n
    :param bset: set B of removable covering inversions
    :param eta: the inversions of B in removal order
    :return: RemovalPartition
    """
    family = cinvs(z, v, w)
    bset = {CoveringInversion(*b) for b in bset}
    eta = [CoveringInversion(*b) for b in eta]
    if set(eta) != bset or len(eta) != len(bset):
        raise ValueError("A removal sequence must list every inversion of B exactly once")
    for b in bset:
        if not any(is_removable(b, cover, family) for cover in family.subsets):
            raise ValueError(f"{tuple(b)} is not removable in CInvS")
    blocks = []
    current = remaining(family, [])
    for j, b in enumerate(eta):
        if not any(is_removable(b, cover, family) for cover in current):
            raise ValueError(f"{tuple(b)} is not removable after the first {j} inversions")
        following = remaining(family, eta[: j + 1])
        blocks.append(current - following)
        current = following
    return RemovalPartition(blocks=tuple(blocks), remaining=current)


def block_involution(cover: Cover, b: CoveringInversion) -> Cover:
    """Toggle b in C; within a block K_j this is a sign-reversing involution for b = eta(j)."""
    return cover - {b} if b in cover else cover | {b}


def connected_components(cover: Iterable[CoveringInversion], z: Permutation) -> List[Cover]:
    """Split C into the connected components of its arc diagram, sorted by smallest position."""
    z_inv = inverse(z)
    components: List[Tuple[Set[int], Set[CoveringInversion]]] = []
    for c in sorted(cover, key=lambda c: z_inv(c[0])):
        ends = {z_inv(c[0]), z_inv(c[1])}
        touching = [comp for comp in components if comp[0] & ends]
        merged = (set(ends), {CoveringInversion(*c)})
        for comp in touching:
            merged[0].update(comp[0])
            merged[1].update(comp[1])
            components.remove(comp)
        components.append(merged)
    components.sort(key=lambda comp: min(comp[0]))
    return [frozenset(comp[1]) for comp in components]


def component_chains(v: Permutation, w: Permutation, z: Permutation) -> Dict[int, List[Cover]]:
    """For each position i with z(i) > m >= z(i+1), the components starting at i among the
    core sets (the empty set when a core set has none there), ordered by size.

    :param v: permutation of degree m
    :param w: permutation of degree n
    :param z: permutation of degree m+n
    :return: dict from start position to its sorted family of components
    """
    m = len(v)
    z_inv = inverse(z)
    starts = [i for i in range(1, len(z)) if z(i) > m and z(i + 1) <= m]
    chains: Dict[int, Set[Cover]] = {i: set() for i in starts}
    for cover in core_set(v, w, z):
        by_start = {
            min(z_inv(c[0]) for c in comp): comp for comp in connected_components(cover, z)
        }
        for i in starts:
            chains[i].add(by_start.get(i, frozenset()))
    return {i: sorted(family, key=cover_key) for i, family in chains.items()}


def is_unit_chain(family: List[Cover]) -> bool:
    """Return True if the family is a chain under containment growing by one arc at a time."""
    return all(
        small <= large and len(large) - len(small) == 1 for small, large in zip(family, family[1:])
    )


def discrepancies(m: int, n: int) -> List[Tuple[Permutation, Permutation, Permutation, int, int]]:
    """Return every (v, w, z, core sign, brute-force coefficient) of degrees m, n where the core
    computation disagrees with the alternating sum."""
    result = []
    for v in all_permutations(m):
        for w in all_permutations(n):
            for z in all_permutations(m + n):
                expected = coefficient_bruteforce(v, w, z)
                actual = core(v, w, z).sign
                if actual != expected:
                    logging.warning(
                        "core disagrees with the alternating sum for v=%s w=%s z=%s: %d != %d",
                        format_permutation(v),
                        format_permutation(w),
                        format_permutation(z),
                        actual,
                        expected,
                    )
                    result.append((v, w, z, actual, expected))
    return result
