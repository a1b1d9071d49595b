import itertools

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Sequence, Set, Tuple


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation. The empty word is the permutation of degree
    zero."""

    word: Tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(word)}: {word}")

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_permutation(self)

    @property
    def degree(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class InvTable:
    """Inversion table (or code) of a permutation: 0 <= entries[k-1] <= n-k."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        for k, e in enumerate(entries, start=1):
            if e < 0 or e > n - k:
                raise ValueError(f"Entry {k} of {entries} is outside 0..{n - k}")

    def __getitem__(self, k: int) -> int:
        return self.entries[k - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class DualInvTable(InvTable):
    """Dual inversion table, entry k is n - k - ι_k(w); same bounds as an inversion table."""


@dataclass(frozen=True)
class RotheDiagram:
    n: int
    cells: FrozenSet[Tuple[int, int]]

    def column_counts(self) -> Tuple[int, ...]:
        return tuple(sum(1 for (_, j) in self.cells if j == k) for k in range(1, self.n + 1))

    def row_counts(self) -> Tuple[int, ...]:
        return tuple(sum(1 for (i, _) in self.cells if i == k) for k in range(1, self.n + 1))


class CoveringInversion(NamedTuple):
    """A covering inversion (w(i), w(j)), stored as the pair of values."""

    high: int
    low: int


def parse_permutation(text: str) -> Permutation:
    """Parse a comma-separated one-line word, e.g. "3,1,4,6,2,5". An empty string is the empty
    permutation.

    :param text: permutation text
    :return: Permutation
    """
    text = text.strip()
    if not text:
        return Permutation(())
    try:
        word = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"Permutations must be comma-separated integers, not '{text}'")
    return Permutation(word)


def format_permutation(w: Permutation) -> str:
    return ",".join(str(x) for x in w.word)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def all_permutations(n: int) -> List[Permutation]:
    """Return every permutation of degree n in lexicographic order."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def standardize(values: Sequence[int]) -> Permutation:
    """Replace a sequence of distinct integers by the permutation with the same relative order.

    :param values: distinct integers
    :return: Permutation of degree len(values)
    """
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    if len(ranks) != len(values):
        raise ValueError(f"Cannot standardize a sequence with repeated values: {values}")
    return Permutation(tuple(ranks[v] for v in values))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w)
    for i, x in enumerate(w.word, start=1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


@lru_cache(maxsize=None)
def inversion_table(w: Permutation) -> InvTable:
    """Return ι(w), where entry k counts the values larger than k to the left of k in w.

    :param w: permutation
    :return: InvTable
    """
    entries = []
    positions = inverse(w).word
    for k in range(1, len(w) + 1):
        entries.append(sum(1 for x in w.word[: positions[k - 1] - 1] if x > k))
    return InvTable(tuple(entries))


def code(w: Permutation) -> InvTable:
    """Return κ(w), where entry k counts the values smaller than w(k) to the right of position k.
    This is the inversion table of the inverse of w."""
    word = w.word
    return InvTable(
        tuple(sum(1 for y in word[k + 1 :] if y < word[k]) for k in range(len(word)))
    )


def from_inversion_table(t: Iterable[int]) -> Permutation:
    """Rebuild the permutation with the given inversion table. Values are inserted from n down
    to 1; all values already in the word are larger, so k goes in at index ι_k.

    :param t: InvTable or sequence of integers
    :return: Permutation
    """
    table = t if isinstance(t, InvTable) else InvTable(tuple(t))
    return _from_entries(table.entries)


@lru_cache(maxsize=None)
def _from_entries(entries: Tuple[int, ...]) -> Permutation:
    word: List[int] = []
    for k in range(len(entries), 0, -1):
        word.insert(entries[k - 1], k)
    return Permutation(tuple(word))


def dual_inversion_table(w: Permutation) -> DualInvTable:
    n = len(w)
    return DualInvTable(tuple(n - k - e for k, e in enumerate(inversion_table(w), start=1)))


def length(w: Permutation) -> int:
    """Number of inversions of w, i.e. the sum of its inversion table."""
    return sum(inversion_table(w))


def rothe_diagram(w: Permutation) -> RotheDiagram:
    """Return R_w = {(i, j) | w(i) > j and w^-1(j) > i}."""
    n = len(w)
    inv = inverse(w)
    cells = frozenset(
        (i, j) for i in range(1, n + 1) for j in range(1, n + 1) if w(i) > j and inv(j) > i
    )
    return RotheDiagram(n=n, cells=cells)


@lru_cache(maxsize=None)
def covering_inversions(w: Permutation) -> FrozenSet[CoveringInversion]:
    """Return CInv(w): for each position j, the pair (w(i), w(j)) where i < j is the largest
    position left of j holding a value larger than w(j), when there is one.

    :param w: permutation
    :return: set of covering inversions, one per value with a nonzero inversion table entry
    """
    result = set()
    word = w.word
    for j in range(len(word)):
        for i in range(j - 1, -1, -1):
            if word[i] > word[j]:
                result.add(CoveringInversion(word[i], word[j]))
                break
    return frozenset(result)


def remove_covering_inversions(w: Permutation, cover: Iterable[Tuple[int, int]]) -> Permutation:
    """Return w^rm(C): swap the two values of every covering inversion in C. Inversions are
    removed in increasing order of their smaller value; each swap keeps the remaining ones
    covering.

    :param w: permutation
    :param cover: subset of covering_inversions(w)
    :return: Permutation whose inversion table drops by one at each smaller value of C
    """
    cover = {CoveringInversion(*c) for c in cover}
    extra = cover - covering_inversions(w)
    if extra:
        raise ValueError(
            f"Not covering inversions of {format_permutation(w)}: {sorted(tuple(c) for c in extra)}"
        )
    word = list(w.word)
    for c in sorted(cover, key=lambda c: c.low):
        i = word.index(c.high)
        j = word.index(c.low)
        word[i], word[j] = word[j], word[i]
    return Permutation(tuple(word))


def covering_positions(w: Permutation) -> Set[Tuple[int, int]]:
    """Return the covering inversions of w as position pairs (i, j)."""
    inv = inverse(w)
    return {(inv(c.high), inv(c.low)) for c in covering_inversions(w)}
