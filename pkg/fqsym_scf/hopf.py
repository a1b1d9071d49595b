import itertools

from collections import defaultdict
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union
from .lattice import boolean_sublattice, upper_set
from .pcbasis import coefficient_bruteforce
from .perm import (
    Permutation,
    all_permutations,
    code,
    dual_inversion_table,
    format_permutation,
    from_inversion_table,
    inverse,
    inversion_table,
    parse_permutation,
)
from .shuffle import all_position_sets, bowtie, deconcatenate, shuffle_set

Coefficient = Union[int, Fraction]
EMPTY = Permutation(())


class Basis(Enum):
    SCH = "sch"
    PCH = "pch"


class BasisError(ValueError):
    """Raised when an operation mixes bases or needs a basis it was not given."""


def sort_key(w: Permutation) -> Tuple[int, Tuple[int, ...]]:
    """Degree first, then the one-line word."""
    return len(w), w.word


def _as_permutation(w: Union[Permutation, str]) -> Permutation:
    return w if isinstance(w, Permutation) else parse_permutation(w)


class ScfElement:
    """A finite linear combination of basis elements χ^w (SCH) or χ̄^w (PCH) with exact rational
    coefficients. Zero coefficients are never stored."""

    def __init__(self, basis: Basis, terms: Optional[Mapping[Permutation, Rational]] = None):
        self.basis = basis
        self.terms: Dict[Permutation, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[w] = c

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScfElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        terms = ", ".join(f"{format_permutation(w) or '∅'}: {c}" for w, c in self.items())
        return f"ScfElement({self.basis.value}, {{{terms}}})"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.terms, key=sort_key))

    def items(self) -> List[Tuple[Permutation, Fraction]]:
        return [(w, self.terms[w]) for w in self]

    def coefficient(self, w: Union[Permutation, str]) -> Fraction:
        return self.terms.get(_as_permutation(w), Fraction(0))

    def _same_basis(self, other: "ScfElement"):
        if self.basis != other.basis:
            raise BasisError(
                f"Cannot combine {self.basis.value} and {other.basis.value} elements;"
                " convert one of them first"
            )

    def __add__(self, other: "ScfElement") -> "ScfElement":
        self._same_basis(other)
        terms = defaultdict(Fraction, self.terms)
        for w, c in other.terms.items():
            terms[w] += c
        return ScfElement(self.basis, terms)

    def __neg__(self) -> "ScfElement":
        return ScfElement(self.basis, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "ScfElement") -> "ScfElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ScfElement):
            return product(self, other)
        return ScfElement(self.basis, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, scalar) -> "ScfElement":
        return ScfElement(self.basis, {w: scalar * c for w, c in self.terms.items()})


class TensorScfElement:
    """A finite linear combination of tensors of two basis elements of the same basis."""

    def __init__(
        self,
        basis: Basis,
        terms: Optional[Mapping[Tuple[Permutation, Permutation], Rational]] = None,
    ):
        self.basis = basis
        self.terms: Dict[Tuple[Permutation, Permutation], Fraction] = {}
        for pair, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[pair] = c

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorScfElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{format_permutation(a) or '∅'} ⊗ {format_permutation(b) or '∅'}: {c}"
            for (a, b), c in self.items()
        )
        return f"TensorScfElement({self.basis.value}, {{{terms}}})"

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Permutation, Permutation]]:
        return iter(sorted(self.terms, key=lambda pair: (sort_key(pair[0]), sort_key(pair[1]))))

    def items(self) -> List[Tuple[Tuple[Permutation, Permutation], Fraction]]:
        return [(pair, self.terms[pair]) for pair in self]

    def coefficient(
        self, left: Union[Permutation, str], right: Union[Permutation, str]
    ) -> Fraction:
        return self.terms.get((_as_permutation(left), _as_permutation(right)), Fraction(0))

    def __add__(self, other: "TensorScfElement") -> "TensorScfElement":
        if self.basis != other.basis:
            raise BasisError(f"Cannot combine {self.basis.value} and {other.basis.value} tensors")
        terms = defaultdict(Fraction, self.terms)
        for pair, c in other.terms.items():
            terms[pair] += c
        return TensorScfElement(self.basis, terms)

    def __rmul__(self, scalar) -> "TensorScfElement":
        return TensorScfElement(self.basis, {p: scalar * c for p, c in self.terms.items()})


def sch(w: Union[Permutation, str], coefficient: Coefficient = 1) -> ScfElement:
    """Return coefficient·χ^w."""
    return ScfElement(Basis.SCH, {_as_permutation(w): coefficient})


def pch(w: Union[Permutation, str], coefficient: Coefficient = 1) -> ScfElement:
    """Return coefficient·χ̄^w."""
    return ScfElement(Basis.PCH, {_as_permutation(w): coefficient})


def unit(c: Coefficient = 1, basis: Basis = Basis.SCH) -> ScfElement:
    return ScfElement(basis, {EMPTY: c})


def zero(basis: Basis = Basis.SCH) -> ScfElement:
    return ScfElement(basis)


def basis_elements(n: int, basis: Basis = Basis.SCH) -> List[ScfElement]:
    """Return the n! basis elements of degree n."""
    return [ScfElement(basis, {w: 1}) for w in all_permutations(n)]


def _collect(basis: Basis, pieces) -> ScfElement:
    terms = defaultdict(Fraction)
    for w, c in pieces:
        terms[w] += c
    return ScfElement(basis, terms)


def _collect_tensor(basis: Basis, pieces) -> TensorScfElement:
    terms = defaultdict(Fraction)
    for pair, c in pieces:
        terms[pair] += c
    return TensorScfElement(basis, terms)


def to_sch(x: ScfElement) -> ScfElement:
    """Rewrite x in the supercharacter basis, using χ̄^w = Σ_{y >= w} χ^y."""
    if x.basis is Basis.SCH:
        return x
    return _collect(Basis.SCH, ((y, c) for w, c in x.terms.items() for y in upper_set(w)))


def _mobius_upper(w: Permutation) -> List[Tuple[Permutation, int]]:
    """The z >= w with μ(w, z) != 0: the inversion tables ι(w) + e_S."""
    n = len(w)
    table = inversion_table(w).entries
    choices = [(0, 1) if table[k] < n - k - 1 else (0,) for k in range(n)]
    result = []
    for step in itertools.product(*choices):
        z = from_inversion_table(tuple(t + s for t, s in zip(table, step)))
        result.append((z, -1 if sum(step) % 2 else 1))
    return result


def to_pch(x: ScfElement) -> ScfElement:
    """Rewrite x in the permutation-character basis, using χ^w = Σ_{z >= w} μ(w, z) χ̄^z."""
    if x.basis is Basis.PCH:
        return x
    return _collect(
        Basis.PCH, ((z, c * mu) for w, c in x.terms.items() for z, mu in _mobius_upper(w))
    )


def product(x: ScfElement, y: ScfElement) -> ScfElement:
    """Product of two elements of the same basis. Supercharacters multiply by shifted shuffle;
    permutation characters use the alternating covering-inversion sums.

    :param x: ScfElement
    :param y: ScfElement in the same basis
    :return: ScfElement in that basis
    """
    x._same_basis(y)
    if x.basis is Basis.SCH:
        pieces = (
            (z, c * d)
            for v, c in x.terms.items()
            for w, d in y.terms.items()
            for z in shuffle_set(v, w)
        )
        return _collect(Basis.SCH, pieces)
    pieces = (
        (z, c * d * e)
        for v, c in x.terms.items()
        for w, d in y.terms.items()
        for z, e in product_pch(v, w).terms.items()
    )
    return _collect(Basis.PCH, pieces)


def coproduct(x: ScfElement) -> TensorScfElement:
    """Coproduct: standardized deconcatenation on supercharacters, the splitting formula on
    permutation characters."""
    if x.basis is Basis.SCH:
        pieces = (
            (deconcatenate(w, m), c) for w, c in x.terms.items() for m in range(len(w) + 1)
        )
        return _collect_tensor(Basis.SCH, pieces)
    pieces = (
        (pair, c * d) for w, c in x.terms.items() for pair, d in coproduct_pch(w).terms.items()
    )
    return _collect_tensor(Basis.PCH, pieces)


def star(x: ScfElement) -> ScfElement:
    """The ⋆-involution χ^w -> χ^{w^-1}. On permutation characters the closed form of star_pch
    is used."""
    if x.basis is Basis.SCH:
        return ScfElement(Basis.SCH, {inverse(w): c for w, c in x.terms.items()})
    pieces = ((z, c * d) for w, c in x.terms.items() for z, d in star_pch(w).terms.items())
    return _collect(Basis.PCH, pieces)


@lru_cache(maxsize=None)
def star_pch(w: Permutation) -> ScfElement:
    """⋆(χ̄^w) in the permutation-character basis. χ̄^z appears with sign
    (-1)^(rank z - rank y) exactly when y is the only x in the Boolean sublattice below z with
    κ(x) >= κ(w^-1).

    :param w: permutation
    :return: ScfElement in the PCH basis
    """
    target = code(inverse(w)).entries
    terms = {}
    for z in all_permutations(len(w)):
        found = [
            x
            for x in boolean_sublattice(z)
            if all(a >= b for a, b in zip(code(x).entries, target))
        ]
        if len(found) == 1:
            diff = sum(inversion_table(z)) - sum(inversion_table(found[0]))
            terms[z] = -1 if diff % 2 else 1
    return ScfElement(Basis.PCH, terms)


@lru_cache(maxsize=None)
def product_pch(v: Permutation, w: Permutation) -> ScfElement:
    """χ̄^v·χ̄^w, each coefficient being the alternating sum over CInvS^z_{v,w}."""
    terms = {z: coefficient_bruteforce(v, w, z) for z in all_permutations(len(v) + len(w))}
    return ScfElement(Basis.PCH, terms)


@lru_cache(maxsize=None)
def coproduct_pch(w: Permutation) -> TensorScfElement:
    """Δ(χ̄^w) as a sum over splittings A ⊔ B of the positions 1..n. A splitting contributes
    when ι(w) restricted to B is an inversion table; its right factor has dual inversion table
    min(ι∨(w)_A, (|A|-1, ..., 0)).

    :param w: permutation
    :return: TensorScfElement in the PCH basis
    """
    n = len(w)
    table = inversion_table(w).entries
    dual = dual_inversion_table(w).entries
    pieces = []
    for size in range(n + 1):
        for bset in itertools.combinations(range(n), size):
            left_table = [table[b] for b in bset]
            if any(t > size - 1 - k for k, t in enumerate(left_table)):
                continue
            aset = [a for a in range(n) if a not in bset]
            ell = len(aset)
            right_dual = [min(dual[a], ell - 1 - k) for k, a in enumerate(aset)]
            right_table = [ell - 1 - k - d for k, d in enumerate(right_dual)]
            pair = (from_inversion_table(left_table), from_inversion_table(right_table))
            pieces.append((pair, 1))
    return _collect_tensor(Basis.PCH, pieces)


def counit(x: Union[ScfElement, TensorScfElement]) -> Fraction:
    """Degree-zero coefficient."""
    if isinstance(x, TensorScfElement):
        return x.terms.get((EMPTY, EMPTY), Fraction(0))
    return x.terms.get(EMPTY, Fraction(0))


@lru_cache(maxsize=None)
def _antipode_basis(w: Permutation) -> ScfElement:
    if not len(w):
        return unit()
    result = -sch(w)
    for m in range(1, len(w)):
        left, right = deconcatenate(w, m)
        result = result - product(_antipode_basis(left), sch(right))
    return result


def antipode(x: ScfElement) -> ScfElement:
    """Antipode from the recursion S(x) = -x - Σ S(x')x'' over the reduced coproduct.

    :param x: ScfElement in the SCH basis
    :return: ScfElement in the SCH basis
    """
    if x.basis is not Basis.SCH:
        raise BasisError("The antipode is computed on supercharacters; convert with to_sch first")
    pieces = ((y, c * d) for w, c in x.terms.items() for y, d in _antipode_basis(w).terms.items())
    return _collect(Basis.SCH, pieces)


def antipode_convolution(x: ScfElement) -> ScfElement:
    """Return m∘(S⊗id)∘Δ(x), which equals counit(x)·1."""
    result = zero(Basis.SCH)
    for (left, right), c in coproduct(x).items():
        result = result + c * product(antipode(sch(left)), sch(right))
    return result


def tensor_multiply(x: TensorScfElement, y: TensorScfElement) -> TensorScfElement:
    """Product in the tensor square: (a⊗b)(c⊗d) = ac⊗bd."""
    if x.basis != y.basis:
        raise BasisError(f"Cannot multiply {x.basis.value} and {y.basis.value} tensors")
    pieces = []
    for (a, b), c in x.terms.items():
        for (e, f), d in y.terms.items():
            left = product(ScfElement(x.basis, {a: 1}), ScfElement(x.basis, {e: 1}))
            right = product(ScfElement(x.basis, {b: 1}), ScfElement(x.basis, {f: 1}))
            for s, cs in left.terms.items():
                for t, ct in right.terms.items():
                    pieces.append(((s, t), c * d * cs * ct))
    return _collect_tensor(x.basis, pieces)


def exflation_product(x: ScfElement, y: ScfElement) -> ScfElement:
    """Supercharacter product through ⋆ and ⋈: χ^w·χ^v = Σ_A ⋆(χ^{w^-1 ⋈_A v^-1})."""
    if x.basis is not Basis.SCH or y.basis is not Basis.SCH:
        raise BasisError("exflation_product works on supercharacters")
    pieces = []
    for w, c in x.terms.items():
        for v, d in y.terms.items():
            for a in all_position_sets(len(w) + len(v), len(v)):
                pieces.append((inverse(bowtie(inverse(w), inverse(v), a)), c * d))
    return _collect(Basis.SCH, pieces)
