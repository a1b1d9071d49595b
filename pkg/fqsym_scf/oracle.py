import itertools
import logging

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple
from .hopf import Basis, ScfElement, TensorScfElement
from .lattice import join, leq, meet
from .perm import (
    Permutation,
    all_permutations,
    format_permutation,
    from_inversion_table,
    inverse,
    inversion_table,
)
from .shuffle import PositionSet, a_shuffle, all_position_sets, bowtie, deconcatenate
from .shuffle import bowtie_image_condition

ALLOWED_PRIMES = (2, 3, 5)
MAX_DEGREE = 5
MAX_GROUP_SIZE = 2 ** 20

Coordinate = Tuple[int, int]


class GroupSizeError(ValueError):
    """Raised when a group is too large to enumerate."""


class Kind(Enum):
    DELTA = "delta"
    DELTA_BAR = "delta_bar"
    CHI = "chi"
    CHI_BAR = "chi_bar"


@lru_cache(maxsize=None)
def coordinates(n: int) -> Tuple[Coordinate, ...]:
    """Return the positions (i, j), 1 <= i < j <= n, row by row."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def coordinate_index(n: int) -> Dict[Coordinate, int]:
    return {ij: k for k, ij in enumerate(coordinates(n))}


def check_group_size(n: int, q: int):
    """Raise GroupSizeError unless the group of n×n strictly upper triangular matrices over F_q
    can be enumerated."""
    if q not in ALLOWED_PRIMES:
        raise GroupSizeError(f"q must be one of {ALLOWED_PRIMES}, not {q}")
    if n < 0 or n > MAX_DEGREE:
        raise GroupSizeError(f"n must be between 0 and {MAX_DEGREE}, not {n}")
    if q ** len(coordinates(n)) > MAX_GROUP_SIZE:
        raise GroupSizeError(
            f"The group for n={n}, q={q} has {q ** len(coordinates(n))} elements"
            f" (at most {MAX_GROUP_SIZE} are enumerated)"
        )


@dataclass(frozen=True)
class UtMatrix:
    """A strictly upper triangular matrix over F_q; entries follow coordinates(n)."""

    n: int
    q: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(e % self.q for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != len(coordinates(self.n)):
            raise ValueError(
                f"A {self.n}×{self.n} matrix has {len(coordinates(self.n))} entries,"
                f" not {len(entries)}"
            )

    def __getitem__(self, ij: Coordinate) -> int:
        return self.entries[coordinate_index(self.n)[ij]]

    def __add__(self, other: "UtMatrix") -> "UtMatrix":
        return UtMatrix(self.n, self.q, tuple(a + b for a, b in zip(self.entries, other.entries)))

    @property
    def code(self) -> int:
        """Base-q packing of the entries; for q = 2 this is a bitmask."""
        return sum(e * self.q ** k for k, e in enumerate(self.entries))

    def support(self) -> Dict[Coordinate, int]:
        return {ij: e for ij, e in zip(coordinates(self.n), self.entries) if e}

    @classmethod
    def from_entries(cls, n: int, q: int, entries: Mapping[Coordinate, int]) -> "UtMatrix":
        index = coordinate_index(n)
        values = [0] * len(index)
        for ij, e in entries.items():
            if ij not in index:
                raise ValueError(f"{ij} is not above the diagonal of a {n}×{n} matrix")
            values[index[ij]] = e
        return cls(n, q, tuple(values))


@lru_cache(maxsize=None)
def enumerate_group(n: int, q: int) -> Tuple[UtMatrix, ...]:
    """Return every element of the group, ordered by code.

    :param n: matrix size
    :param q: prime field size
    :return: tuple of q^(n(n-1)/2) matrices; element k has code k
    """
    check_group_size(n, q)
    size = len(coordinates(n))
    logging.debug(f"Enumerating {q ** size} matrices for n={n}, q={q}")
    return tuple(
        UtMatrix(n, q, tuple(reversed(p))) for p in itertools.product(range(q), repeat=size)
    )


@dataclass(frozen=True)
class ClassFunction:
    """A rational-valued function on the group; values are indexed by matrix code."""

    n: int
    q: int
    values: Tuple[Fraction, ...]

    def __call__(self, x: UtMatrix) -> Fraction:
        return self.values[x.code]

    def _check(self, other: "ClassFunction"):
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError(
                f"Functions on groups (n={self.n}, q={self.q}) and (n={other.n}, q={other.q})"
                " cannot be combined"
            )

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        values = tuple(a + b for a, b in zip(self.values, other.values))
        return ClassFunction(self.n, self.q, values)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-1) * other

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._check(other)
            values = tuple(a * b for a, b in zip(self.values, other.values))
        else:
            values = tuple(a * other for a in self.values)
        return ClassFunction(self.n, self.q, values)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)

    @classmethod
    def from_callable(cls, n: int, q: int, fn: Callable[[UtMatrix], object]) -> "ClassFunction":
        return cls(n, q, tuple(Fraction(fn(x)) for x in enumerate_group(n, q)))

    @classmethod
    def zero(cls, n: int, q: int) -> "ClassFunction":
        return cls(n, q, tuple(Fraction(0) for _ in enumerate_group(n, q)))


@dataclass(frozen=True)
class TensorClassFunction:
    """A function on the product of the groups for left_n and right_n; the value of (x, y) sits
    at x.code + |left group| * y.code."""

    left_n: int
    right_n: int
    q: int
    values: Tuple[Fraction, ...]

    def __call__(self, x: UtMatrix, y: UtMatrix) -> Fraction:
        return self.values[x.code + len(enumerate_group(self.left_n, self.q)) * y.code]

    def _check(self, other: "TensorClassFunction"):
        if (self.left_n, self.right_n, self.q) != (other.left_n, other.right_n, other.q):
            raise ValueError("Tensor functions live on different groups")

    def __add__(self, other: "TensorClassFunction") -> "TensorClassFunction":
        self._check(other)
        values = tuple(a + b for a, b in zip(self.values, other.values))
        return TensorClassFunction(self.left_n, self.right_n, self.q, values)

    def __mul__(self, c) -> "TensorClassFunction":
        values = tuple(a * c for a in self.values)
        return TensorClassFunction(self.left_n, self.right_n, self.q, values)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)

    @classmethod
    def zero(cls, left_n: int, right_n: int, q: int) -> "TensorClassFunction":
        size = len(enumerate_group(left_n, q)) * len(enumerate_group(right_n, q))
        return cls(left_n, right_n, q, tuple(Fraction(0) for _ in range(size)))


# Degree-n coproducts: one tensor function per (n - k, k)
GradedTensor = Dict[Tuple[int, int], TensorClassFunction]


def graded_zero(n: int, q: int) -> GradedTensor:
    return {(n - k, k): TensorClassFunction.zero(n - k, k, q) for k in range(n + 1)}


def tensor(f: ClassFunction, g: ClassFunction) -> TensorClassFunction:
    if f.q != g.q:
        raise ValueError(f"Cannot tensor functions over F_{f.q} and F_{g.q}")
    values = tuple(a * b for b in g.values for a in f.values)
    return TensorClassFunction(f.n, g.n, f.q, values)


def inner_product(f, g) -> Fraction:
    """⟨f, g⟩ = (1/|G|) Σ f(u) g(u). Values are rational, so no conjugation is needed.

    :param f: ClassFunction or TensorClassFunction
    :param g: function on the same group
    :return: Fraction
    """
    if type(f) is not type(g):
        raise ValueError("Cannot pair a class function with a tensor function")
    f._check(g)
    return sum((a * b for a, b in zip(f.values, g.values)), Fraction(0)) / len(f.values)


def superclass_label(x: UtMatrix) -> Permutation:
    """Return the w with x in Cl_w: ι_i(w) is the largest j - i with x_ij != 0."""
    offsets = [0] * x.n
    for (i, j), e in zip(coordinates(x.n), x.entries):
        if e:
            offsets[i - 1] = max(offsets[i - 1], j - i)
    return from_inversion_table(offsets)


def subgroup_coordinates(w: Permutation) -> FrozenSet[Coordinate]:
    """Return the positions (i, j) with j - i <= ι_i(w); these span the subgroup ut_w."""
    table = inversion_table(w)
    return frozenset((i, j) for (i, j) in coordinates(len(w)) if j - i <= table[i])


def superclass_size(w: Permutation, q: int) -> int:
    size = 1
    for t in inversion_table(w):
        if t:
            size *= (q - 1) * q ** (t - 1)
    return size


def superclass_representative(w: Permutation, q: int) -> UtMatrix:
    table = inversion_table(w)
    entries = {(i, i + t): 1 for i, t in enumerate(table, start=1) if t}
    return UtMatrix.from_entries(len(w), q, entries)


def supercharacter_value(v: Permutation, x: UtMatrix) -> int:
    """Evaluate χ^v at x as a product over positions: 1 up to offset ι_i(v), (reg - 1) at the
    next offset and reg beyond it.

    :param v: permutation of degree n
    :param x: matrix of size n
    :return: integer value
    """
    if len(v) != x.n:
        raise ValueError(f"χ^{format_permutation(v)} is not a function on {x.n}×{x.n} matrices")
    table = inversion_table(v)
    value = 1
    for (i, j), e in zip(coordinates(x.n), x.entries):
        offset = j - i
        if offset <= table[i]:
            continue
        if offset == table[i] + 1:
            value *= x.q - 1 if e == 0 else -1
        elif e == 0:
            value *= x.q
        else:
            return 0
    return value


@lru_cache(maxsize=None)
def basis_function(kind: Kind, w: Permutation, n: int, q: int) -> ClassFunction:
    """Return δ_w, δ̄_w, χ^w or χ̄^w as a table on the group.

    :param kind: Kind
    :param w: permutation of degree n
    :param n: matrix size
    :param q: field size
    :return: ClassFunction
    """
    if len(w) != n:
        raise ValueError(f"{format_permutation(w)} does not index a basis of degree {n}")
    check_group_size(n, q)
    if kind is Kind.DELTA:
        return ClassFunction.from_callable(n, q, lambda x: int(superclass_label(x) == w))
    if kind is Kind.DELTA_BAR:
        return ClassFunction.from_callable(n, q, lambda x: int(leq(superclass_label(x), w)))
    if kind is Kind.CHI:
        return ClassFunction.from_callable(n, q, lambda x: supercharacter_value(w, x))
    index = q ** (len(coordinates(n)) - sum(inversion_table(w)))
    return ClassFunction.from_callable(n, q, lambda x: index * leq(superclass_label(x), w))


def supercharacter(w: Permutation, q: int) -> ClassFunction:
    return basis_function(Kind.CHI, w, len(w), q)


def degree(f: ClassFunction) -> Fraction:
    """Value at the zero matrix."""
    return f.values[0]


def dual_basis(kind: Kind, w: Permutation, n: int, q: int) -> ClassFunction:
    """Return (χ^w)* = χ^w / χ^w(1) or (δ_w)* = δ_w·|G| / |Cl_w|."""
    if kind is Kind.CHI:
        chi = basis_function(Kind.CHI, w, n, q)
        return chi * Fraction(1, degree(chi))
    if kind is Kind.DELTA:
        group = len(enumerate_group(n, q))
        return basis_function(Kind.DELTA, w, n, q) * Fraction(group, superclass_size(w, q))
    raise ValueError(f"No dual basis formula for {kind.value}")


def supercharacter_table(n: int, q: int) -> Tuple[List[Permutation], List[List[int]]]:
    """Return the permutations ordered by inversion table and the matrix of values χ^w(x_v),
    with x_v the chosen representative of Cl_v."""
    perms = sorted(all_permutations(n), key=lambda w: inversion_table(w).entries)
    reps = [superclass_representative(v, q) for v in perms]
    return perms, [[supercharacter_value(w, x) for x in reps] for w in perms]


def is_superclass_function(f: ClassFunction) -> bool:
    """True if f takes one value on every superclass."""
    seen: Dict[Permutation, Fraction] = {}
    for x, value in zip(enumerate_group(f.n, f.q), f.values):
        if seen.setdefault(superclass_label(x), value) != value:
            return False
    return True


def rank(functions: Sequence[ClassFunction]) -> int:
    """Rank over QQ of the given superclass functions, from the matrix of their values at
    superclass representatives."""
    if not functions:
        return 0
    n, q = functions[0].n, functions[0].q
    reps = [superclass_representative(v, q) for v in all_permutations(n)]
    rows = [[QQ(f(x).numerator, f(x).denominator) for x in reps] for f in functions]
    return DomainMatrix(rows, (len(rows), len(reps)), QQ).rank()


def decompose(f: ClassFunction) -> Dict[Permutation, Fraction]:
    """Coefficients of f in the supercharacter basis, c_w = ⟨f, χ^w⟩ / χ^w(1)."""
    result = {}
    for w in all_permutations(f.n):
        chi = supercharacter(w, f.q)
        c = inner_product(f, chi) / degree(chi)
        if c:
            result[w] = c
    return result


def star_function(f: ClassFunction) -> ClassFunction:
    """⋆ on a superclass function: Σ c_w χ^w -> Σ c_w χ^{w^-1}."""
    result = ClassFunction.zero(f.n, f.q)
    for w, c in decompose(f).items():
        result = result + c * supercharacter(inverse(w), f.q)
    return result


def realize(x: ScfElement, q: int, n: Optional[int] = None) -> ClassFunction:
    """Return the class function of a homogeneous element of either basis.

    :param x: ScfElement whose terms all have degree n
    :param q: field size
    :param n: degree, needed only for the zero element
    :return: ClassFunction
    """
    degrees = {len(w) for w in x.terms}
    if len(degrees) > 1:
        raise ValueError(f"Cannot realize an element with terms of degrees {sorted(degrees)}")
    if degrees:
        n = degrees.pop()
    if n is None:
        raise ValueError("The degree of the zero element must be given")
    kind = Kind.CHI if x.basis is Basis.SCH else Kind.CHI_BAR
    result = ClassFunction.zero(n, q)
    for w, c in x.terms.items():
        result = result + c * basis_function(kind, w, n, q)
    return result


def realize_tensor(x: TensorScfElement, q: int, n: Optional[int] = None) -> GradedTensor:
    """Return the tensor functions of a tensor whose terms all have total degree n, one entry
    per split (n - k, k), zero where x has no terms."""
    degrees = {len(left) + len(right) for left, right in x.terms}
    if len(degrees) > 1:
        raise ValueError(f"Cannot realize a tensor with terms of degrees {sorted(degrees)}")
    if degrees:
        n = degrees.pop()
    if n is None:
        raise ValueError("The degree of the zero tensor must be given")
    kind = Kind.CHI if x.basis is Basis.SCH else Kind.CHI_BAR
    result = graded_zero(n, q)
    for (left, right), c in x.terms.items():
        key = (len(left), len(right))
        piece = tensor(
            basis_function(kind, left, len(left), q), basis_function(kind, right, len(right), q)
        )
        result[key] = result[key] + c * piece
    return result


def decompose_tensor(t: TensorClassFunction) -> Dict[Tuple[Permutation, Permutation], Fraction]:
    """Coefficients of t in the basis χ^y ⊗ χ^z."""
    result = {}
    for y in all_permutations(t.left_n):
        for z in all_permutations(t.right_n):
            chi_y, chi_z = supercharacter(y, t.q), supercharacter(z, t.q)
            c = inner_product(t, tensor(chi_y, chi_z)) / (degree(chi_y) * degree(chi_z))
            if c:
                result[(y, z)] = c
    return result


def star_tensor(t: TensorClassFunction) -> TensorClassFunction:
    """⋆ ⊗ ⋆."""
    result = TensorClassFunction.zero(t.left_n, t.right_n, t.q)
    for (y, z), c in decompose_tensor(t).items():
        pair = tensor(supercharacter(inverse(y), t.q), supercharacter(inverse(z), t.q))
        result = result + c * pair
    return result


def subgroup_lattice_failures(n: int) -> List[Tuple[Permutation, Permutation]]:
    """Return every (u, v) where the subgroups ut_u and ut_v disagree with the lattice: the
    order must be inclusion, the meet the intersection and the join the sum."""
    perms = all_permutations(n)
    cells = {w: subgroup_coordinates(w) for w in perms}
    failures = []
    for u in perms:
        for v in perms:
            ok = (
                (cells[u] <= cells[v]) == leq(u, v)
                and cells[meet(u, v)] == cells[u] & cells[v]
                and cells[join(u, v)] == cells[u] | cells[v]
            )
            if not ok:
                failures.append((u, v))
    return failures


@dataclass(frozen=True)
class SubgroupShape:
    """The partition of the positions above the diagonal for a set A of rows: U_A (rows in A,
    right of the corner), L_A (rows in A, left of it), the dual upper part (rows outside A,
    left of the corner) and R_A (rows outside A, right of it). The corner of row i is
    n - #{a in A | a > i}."""

    n: int
    a: PositionSet
    upper: FrozenSet[Coordinate]
    lower: FrozenSet[Coordinate]
    upper_dual: FrozenSet[Coordinate]
    right: FrozenSet[Coordinate]

    @property
    def m(self) -> int:
        return self.n - len(self.a)

    @property
    def k(self) -> int:
        return len(self.a)

    def corner(self, i: int) -> int:
        return self.n - sum(1 for a in self.a if a > i)

    def tau(self, ij: Coordinate) -> Coordinate:
        """Map a position of U_A to the matching position of the k×k group."""
        i, j = ij
        i_new = i - sum(1 for b in range(1, i) if b not in self.a)
        return i_new, j - self.m

    def tau_prime(self, ij: Coordinate) -> Coordinate:
        """Map a position of the dual upper part to the matching position of the m×m group."""
        i, j = ij
        shift = self.a.count_below(i)
        return i - shift, j - shift

    def boundary_rows(self) -> List[int]:
        """Rows outside A with a nonempty R_A part."""
        return [i for i in range(1, self.n + 1) if i not in self.a and self.corner(i) < self.n]


def subgroup_shape(n: int, a: Iterable[int]) -> SubgroupShape:
    """Split the positions above the diagonal according to A ⊆ {1..n}.

    :param n: matrix size
    :param a: PositionSet or iterable of rows
    :return: SubgroupShape
    """
    a = a if isinstance(a, PositionSet) else PositionSet(n, tuple(a))
    if a.n != n:
        raise ValueError(f"{a} is a subset of 1..{a.n}, not of 1..{n}")
    parts: Dict[str, set] = {"upper": set(), "lower": set(), "upper_dual": set(), "right": set()}
    for i, j in coordinates(n):
        corner = n - sum(1 for b in a if b > i)
        if i in a:
            parts["upper" if j > corner else "lower"].add((i, j))
        else:
            parts["right" if j > corner else "upper_dual"].add((i, j))
    return SubgroupShape(n=n, a=a, **{name: frozenset(cells) for name, cells in parts.items()})


def _split(x: UtMatrix, shape: SubgroupShape) -> Tuple[UtMatrix, UtMatrix]:
    """Project x to the m×m and k×k groups through the dual upper part and U_A."""
    left = {shape.tau_prime(ij): x[ij] for ij in shape.upper_dual}
    right = {shape.tau(ij): x[ij] for ij in shape.upper}
    return (
        UtMatrix.from_entries(shape.m, x.q, left),
        UtMatrix.from_entries(shape.k, x.q, right),
    )


def average_rows(f: ClassFunction, rows: Iterable[int]) -> ClassFunction:
    """Average f over all values of the positions in the given rows."""
    rows = set(rows)
    index = coordinate_index(f.n)
    places = [index[ij] for ij in coordinates(f.n) if ij[0] in rows]
    if not places:
        return f
    values = []
    for x in enumerate_group(f.n, f.q):
        base = x.code - sum(x.entries[k] * f.q ** k for k in places)
        total = Fraction(0)
        for choice in itertools.product(range(f.q), repeat=len(places)):
            total += f.values[base + sum(e * f.q ** k for k, e in zip(places, choice))]
        values.append(total / f.q ** len(places))
    return ClassFunction(f.n, f.q, tuple(values))


def exflation(
    f: ClassFunction, g: ClassFunction, shape: SubgroupShape, boundary_correction: bool = True
) -> ClassFunction:
    """Inflate f ⊗ g through L_A and extend across R_A to a function on the n×n group.

    Without boundary correction the extension is the regular character of R_A, i.e. |R_A|·[r = 0].
    With it, every row j outside A with a nonempty R_A part uses
    reg(row j of R_A) - 1(first position)·reg(rest)·P_j, where P_j averages f over the matching
    row of the m×m group. This makes Exfl(χ^y ⊗ χ^z) = χ^{y ⋈_A z}.

    :param f: ClassFunction on the m×m group
    :param g: ClassFunction on the k×k group
    :param shape: SubgroupShape with m = n - |A| and k = |A|
    :param boundary_correction: apply the boundary-row correction
    :return: ClassFunction on the n×n group
    """
    if f.n != shape.m or g.n != shape.k or f.q != g.q:
        raise ValueError(
            f"Exflation for A={shape.a} needs functions of degrees {shape.m} and {shape.k}"
            f" over one field, not {f.n} and {g.n}"
        )
    q = f.q
    rows = shape.boundary_rows() if boundary_correction else []
    firsts = {i: (i, shape.corner(i) + 1) for i in rows}
    averaged = {}
    for size in range(len(rows) + 1):
        for subset in itertools.combinations(rows, size):
            averaged[subset] = average_rows(f, [i - shape.a.count_below(i) for i in subset])
    values = []
    for x in enumerate_group(shape.n, q):
        u_dual, u = _split(x, shape)
        free = [ij for ij in shape.right if x[ij] and not any(ij == b for b in firsts.values())]
        if free:
            values.append(Fraction(0))
            continue
        if not boundary_correction:
            values.append(q ** len(shape.right) * f(u_dual) * g(u))
            continue
        total = Fraction(0)
        for subset, avg in averaged.items():
            weight = Fraction(1)
            for i in shape.boundary_rows():
                width = sum(1 for (r, _) in shape.right if r == i)
                if i in subset:
                    weight *= -(q ** (width - 1))
                elif x[firsts[i]]:
                    weight = Fraction(0)
                    break
                else:
                    weight *= q ** width
            if weight:
                total += weight * avg(u_dual)
        values.append(total * g(u))
    return ClassFunction(shape.n, q, tuple(values))


def delapsing(f: ClassFunction, shape: SubgroupShape) -> TensorClassFunction:
    """Collapse f over L_A and R_A and deflate to the m×m and k×k groups. An L_A position of
    value t weighs 1/q; an R_A position weighs 1/q at t = 0 and -1/(q(q-1)) at t != 0.

    :param f: ClassFunction on the n×n group
    :param shape: SubgroupShape
    :return: TensorClassFunction on the m×m and k×k groups
    """
    if f.n != shape.n:
        raise ValueError(f"Delapsing for n={shape.n} cannot take a function of degree {f.n}")
    q = f.q
    left_size = len(enumerate_group(shape.m, q))
    values = [Fraction(0)] * (left_size * len(enumerate_group(shape.k, q)))
    lower_weight = Fraction(1, q ** len(shape.lower))
    nonzero_weight = Fraction(-1, q * (q - 1))
    for x, value in zip(enumerate_group(shape.n, q), f.values):
        if not value:
            continue
        weight = lower_weight
        for ij in shape.right:
            weight *= nonzero_weight if x[ij] else Fraction(1, q)
        u_dual, u = _split(x, shape)
        values[u_dual.code + left_size * u.code] += weight * value
    return TensorClassFunction(shape.m, shape.k, q, tuple(values))


def full_boundary_rows(y: Permutation, shape: SubgroupShape) -> int:
    """Number of boundary rows j whose matching row of y is full, ι_{j'}(y) = m - j'."""
    table = inversion_table(y)
    count = 0
    for i in shape.boundary_rows():
        row = i - shape.a.count_below(i)
        if row <= shape.m and table[row] == shape.m - row:
            count += 1
    return count


@dataclass(frozen=True)
class AdjointnessCase:
    w: Permutation
    y: Permutation
    z: Permutation
    exflation_side: Fraction
    delapsing_side: Fraction
    literal_holds: bool
    holds: bool


@dataclass(frozen=True)
class AdjointnessReport:
    shape: SubgroupShape
    q: int
    cases: Tuple[AdjointnessCase, ...]

    @property
    def violations(self) -> List[AdjointnessCase]:
        return [c for c in self.cases if not c.holds]

    @property
    def literal_violations(self) -> List[AdjointnessCase]:
        return [c for c in self.cases if not c.literal_holds]


def adjointness_check(shape: SubgroupShape, q: int) -> AdjointnessReport:
    """Compare ⟨χ^w, Exfl(χ^y ⊗ χ^z)⟩ with ⟨Dela χ^w, χ^y ⊗ χ^z⟩ for all supercharacter triples.

    The literal relation multiplies the right side by |R_A|. The exact relation is
    χ^y(1)χ^z(1)·⟨χ^w, Exfl(χ^y ⊗ χ^z)⟩ = χ^{y ⋈_A z}(1)·⟨Dela χ^w, χ^y ⊗ χ^z⟩; the two agree
    unless a boundary row of y is full.

    :param shape: SubgroupShape
    :param q: field size
    :return: AdjointnessReport
    """
    right_size = q ** len(shape.right)
    delapsed = {
        w: delapsing(supercharacter(w, q), shape) for w in all_permutations(shape.n)
    }
    cases = []
    for y in all_permutations(shape.m):
        for z in all_permutations(shape.k):
            chi_y, chi_z = supercharacter(y, q), supercharacter(z, q)
            exflated = exflation(chi_y, chi_z, shape)
            pair = tensor(chi_y, chi_z)
            target = degree(supercharacter(bowtie(y, z, shape.a), q))
            for w in all_permutations(shape.n):
                lhs = inner_product(supercharacter(w, q), exflated)
                rhs = inner_product(delapsed[w], pair)
                cases.append(
                    AdjointnessCase(
                        w=w,
                        y=y,
                        z=z,
                        exflation_side=lhs,
                        delapsing_side=rhs,
                        literal_holds=lhs == right_size * rhs,
                        holds=degree(chi_y) * degree(chi_z) * lhs == target * rhs,
                    )
                )
    report = AdjointnessReport(shape=shape, q=q, cases=tuple(cases))
    if report.literal_violations:
        logging.warning(
            f"{len(report.literal_violations)} supercharacter triples for A={shape.a}, q={q}"
            " differ from |R_A|·⟨Dela γ, φ⊗θ⟩"
        )
    return report


def degree_identity_holds(y: Permutation, z: Permutation, shape: SubgroupShape, q: int) -> bool:
    """Check χ^{y⋈z}(1) = |R_A|·χ^y(1)·χ^z(1)·((q-1)/q)^β, β the number of full boundary rows."""
    lhs = degree(supercharacter(bowtie(y, z, shape.a), q))
    beta = full_boundary_rows(y, shape)
    rhs = (
        q ** len(shape.right)
        * degree(supercharacter(y, q))
        * degree(supercharacter(z, q))
        * Fraction(q - 1, q) ** beta
    )
    return lhs == rhs


def going_up_failures(n: int, q: int) -> List[Tuple[PositionSet, Permutation, Permutation]]:
    """Return every (A, w, v) where ⋆Exfl(⋆χ^w ⊗ ⋆χ^v) differs from χ^{w ⧢_A v}."""
    failures = []
    for k in range(n + 1):
        for a in all_position_sets(n, k):
            shape = subgroup_shape(n, a)
            for w in all_permutations(n - k):
                for v in all_permutations(k):
                    actual = star_function(
                        exflation(
                            star_function(supercharacter(w, q)),
                            star_function(supercharacter(v, q)),
                            shape,
                        )
                    )
                    if actual != supercharacter(a_shuffle(w, v, a), q):
                        failures.append((a, w, v))
    return failures


def going_down_failures(n: int, q: int) -> List[Tuple[PositionSet, Permutation]]:
    """Return every (A, w) where Dela(χ^w) is not χ^{w<=m} ⊗ χ^{w>m} when w^-1(A) = {m+1..n}, or
    not zero otherwise."""
    failures = []
    for k in range(n + 1):
        for a in all_position_sets(n, k):
            shape = subgroup_shape(n, a)
            for w in all_permutations(n):
                actual = delapsing(supercharacter(w, q), shape)
                if bowtie_image_condition(w, a):
                    left, right = deconcatenate(w, shape.m)
                    ok = actual == tensor(supercharacter(left, q), supercharacter(right, q))
                else:
                    ok = actual.is_zero()
                if not ok:
                    failures.append((a, w))
    return failures


# Hopf structure on class functions


@lru_cache(maxsize=None)
def _delapsed(w: Permutation, shape: SubgroupShape, q: int) -> TensorClassFunction:
    return delapsing(supercharacter(w, q), shape)


@lru_cache(maxsize=None)
def _raised(y: Permutation, z: Permutation, shape: SubgroupShape, q: int) -> ClassFunction:
    """⋆Exfl(⋆χ^y ⊗ ⋆χ^z)."""
    chi_y, chi_z = supercharacter(y, q), supercharacter(z, q)
    return star_function(exflation(star_function(chi_y), star_function(chi_z), shape))


def class_function_product(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    """Σ_A ⋆Exfl(⋆f ⊗ ⋆g) over A ⊆ {1..m+n} with |A| = n, for f of degree m and g of degree n.

    :param f: ClassFunction on the m×m group
    :param g: ClassFunction on the n×n group over the same field
    :return: ClassFunction on the (m+n)×(m+n) group
    """
    if f.q != g.q:
        raise ValueError(f"Cannot multiply functions over F_{f.q} and F_{g.q}")
    n = f.n + g.n
    f_star, g_star = star_function(f), star_function(g)
    result = ClassFunction.zero(n, f.q)
    for a in all_position_sets(n, g.n):
        result = result + star_function(exflation(f_star, g_star, subgroup_shape(n, a)))
    return result


def class_function_coproduct(f: ClassFunction) -> GradedTensor:
    """Σ_A Dela(f) over every A ⊆ {1..n}, collected by (n - |A|, |A|)."""
    result = graded_zero(f.n, f.q)
    for k in range(f.n + 1):
        for a in all_position_sets(f.n, k):
            key = (f.n - k, k)
            result[key] = result[key] + delapsing(f, subgroup_shape(f.n, a))
    return result


def dual_map(f: ClassFunction) -> ClassFunction:
    """Σ c_w χ^w -> Σ c_w (χ^{w^-1})*, the isomorphism onto the dual structure."""
    result = ClassFunction.zero(f.n, f.q)
    for w, c in decompose(f).items():
        result = result + c * dual_basis(Kind.CHI, inverse(w), f.n, f.q)
    return result


def dual_map_tensor(t: GradedTensor) -> GradedTensor:
    result = {}
    for key, piece in t.items():
        mapped = TensorClassFunction.zero(piece.left_n, piece.right_n, piece.q)
        for (y, z), c in decompose_tensor(piece).items():
            left = dual_basis(Kind.CHI, inverse(y), piece.left_n, piece.q)
            right = dual_basis(Kind.CHI, inverse(z), piece.right_n, piece.q)
            mapped = mapped + c * tensor(left, right)
        result[key] = mapped
    return result


def dual_product(f: ClassFunction, g: ClassFunction, literal: bool = False) -> ClassFunction:
    """Product of the dual Hopf structure, the adjoint of class_function_coproduct.

    Each A with |A| = deg g contributes Dela_A^†(f ⊗ g) = Σ_w ⟨Dela_A χ^w, f ⊗ g⟩·χ^w / χ^w(1).
    With literal=True it contributes Exfl_A(f ⊗ g) / |R_A| instead; the two agree unless a
    boundary row is full.

    :param f: ClassFunction on the m×m group
    :param g: ClassFunction on the n×n group
    :param literal: use the |R_A| normalization
    :return: ClassFunction on the (m+n)×(m+n) group
    """
    q, n = f.q, f.n + g.n
    pair = tensor(f, g)
    result = ClassFunction.zero(n, q)
    for a in all_position_sets(n, g.n):
        shape = subgroup_shape(n, a)
        if literal:
            result = result + exflation(f, g, shape) * Fraction(1, q ** len(shape.right))
            continue
        for w in all_permutations(n):
            c = inner_product(_delapsed(w, shape, q), pair)
            if c:
                chi = supercharacter(w, q)
                result = result + (c / degree(chi)) * chi
    return result


def dual_coproduct(f: ClassFunction, literal: bool = False) -> GradedTensor:
    """Coproduct of the dual Hopf structure, the adjoint of class_function_product.

    Each A contributes Σ_{y,z} ⟨f, ⋆Exfl_A(⋆χ^y ⊗ ⋆χ^z)⟩·χ^y ⊗ χ^z / (χ^y(1)χ^z(1)). With
    literal=True it contributes |R_A|·⋆Dela_A(⋆f) instead.

    :param f: ClassFunction on the n×n group
    :param literal: use the |R_A| normalization
    :return: GradedTensor
    """
    q, n = f.q, f.n
    result = graded_zero(n, q)
    f_star = star_function(f) if literal else None
    for k in range(n + 1):
        for a in all_position_sets(n, k):
            shape = subgroup_shape(n, a)
            key = (n - k, k)
            if literal:
                term = star_tensor(delapsing(f_star, shape)) * q ** len(shape.right)
                result[key] = result[key] + term
                continue
            for y in all_permutations(n - k):
                for z in all_permutations(k):
                    c = inner_product(f, _raised(y, z, shape, q))
                    if c:
                        chi_y, chi_z = supercharacter(y, q), supercharacter(z, q)
                        scale = c / (degree(chi_y) * degree(chi_z))
                        result[key] = result[key] + scale * tensor(chi_y, chi_z)
    return result
