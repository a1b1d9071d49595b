import itertools

from dataclasses import dataclass
from typing import Iterable, List, Set, Tuple
from .perm import Permutation, inverse, standardize


@dataclass(frozen=True)
class PositionSet:
    """A subset A of {1..n}, stored sorted."""

    n: int
    positions: Tuple[int, ...]

    def __post_init__(self):
        positions = tuple(sorted(self.positions))
        object.__setattr__(self, "positions", positions)
        if len(set(positions)) != len(positions):
            raise ValueError(f"Repeated positions in {positions}")
        if positions and (positions[0] < 1 or positions[-1] > self.n):
            raise ValueError(f"Positions {positions} are not within 1..{self.n}")

    def __contains__(self, i: int) -> bool:
        return i in self.positions

    def __iter__(self):
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __str__(self) -> str:
        return "{" + ",".join(str(a) for a in self.positions) + "}"

    def complement(self) -> "PositionSet":
        return PositionSet(self.n, tuple(i for i in range(1, self.n + 1) if i not in self))

    def count_below(self, i: int) -> int:
        """Number of positions a in the set with a < i."""
        return sum(1 for a in self.positions if a < i)


def all_position_sets(n: int, k: int) -> List[PositionSet]:
    """Return every k-element subset of {1..n} in lexicographic order."""
    return [PositionSet(n, c) for c in itertools.combinations(range(1, n + 1), k)]


def a_shuffle(v: Permutation, w: Permutation, a: PositionSet) -> Permutation:
    """Return the A-shuffle of v and w: the values of w, shifted up by deg v, sit at the
    positions of A, and v fills the remaining positions.

    :param v: permutation of degree m
    :param w: permutation of degree n
    :param a: PositionSet of size n in {1..m+n}
    :return: Permutation of degree m+n
    """
    m = len(v)
    if len(a) != len(w) or a.n != m + len(w):
        raise ValueError(
            f"A-shuffle of degrees {m} and {len(w)} needs {len(w)} positions in 1..{m + len(w)},"
            f" not {a}"
        )
    word = []
    for i in range(1, a.n + 1):
        below = a.count_below(i)
        if i in a:
            word.append(w(below + 1) + m)
        else:
            word.append(v(i - below))
    return Permutation(tuple(word))


def shuffle_set(v: Permutation, w: Permutation) -> Set[Permutation]:
    """Return the shifted shuffles of v and w, one for each position set A."""
    n = len(v) + len(w)
    return {a_shuffle(v, w, a) for a in all_position_sets(n, len(w))}


def deconcatenate(w: Permutation, m: int) -> Tuple[Permutation, Permutation]:
    """Return the m-standardized deconcatenation (w_{<=m}, w_{>m}) of w.

    :param w: permutation
    :param m: split point, 0 <= m <= deg w
    :return: pair of standardized prefix and suffix
    """
    if m < 0 or m > len(w):
        raise ValueError(f"Cannot split a permutation of degree {len(w)} at {m}")
    return standardize(w.word[:m]), standardize(w.word[m:])


def restrict(w: Permutation, values: Iterable[int]) -> Permutation:
    """Return w_B: the values of w lying in B, read from left to right, standardized.

    :param w: permutation
    :param values: a set B of values in {1..n}
    :return: Permutation of degree |B|
    """
    values = set(values)
    return standardize([x for x in w.word if x in values])


def bowtie(w: Permutation, v: Permutation, a: PositionSet) -> Permutation:
    """Return w ⋈_A v, the permutation whose inversion table takes w's entries at the positions
    outside A and whose dual inversion table takes v's entries at the positions of A. It is
    built through its inverse: positions j outside A read w^-1, positions in A read v^-1
    shifted by deg w.

    :param w: permutation of degree m
    :param v: permutation of degree n
    :param a: PositionSet of size n in {1..m+n}
    :return: Permutation of degree m+n
    """
    m = len(w)
    if len(a) != len(v) or a.n != m + len(v):
        raise ValueError(
            f"Bowtie of degrees {m} and {len(v)} needs {len(v)} positions in 1..{m + len(v)},"
            f" not {a}"
        )
    w_inv = inverse(w)
    v_inv = inverse(v)
    inv_word = []
    for j in range(1, a.n + 1):
        below = a.count_below(j)
        if j in a:
            inv_word.append(v_inv(below + 1) + m)
        else:
            inv_word.append(w_inv(j - below))
    return inverse(Permutation(tuple(inv_word)))


def bowtie_image_condition(w: Permutation, a: PositionSet) -> bool:
    """Return True if w^-1(A) = {m+1..n} with m = n - |A|, i.e. w is some y ⋈_A z."""
    m = a.n - len(a)
    w_inv = inverse(w)
    return sorted(w_inv(i) for i in a) == list(range(m + 1, a.n + 1))
