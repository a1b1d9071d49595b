import pytest

from fqsym_scf.hopf import ScfElement, TensorScfElement
from fqsym_scf.perm import Permutation, format_permutation, parse_permutation
from fqsym_scf.render import arc_diagram
from tabulate import tabulate
from typing import Iterable, Union


def p(text: str) -> Permutation:
    """Permutation from compact one-line text, e.g. p("312"); only for degrees below 10."""
    return parse_permutation(",".join(text))


def _label(key) -> str:
    if isinstance(key, tuple):
        return " ⊗ ".join(format_permutation(w) or "()" for w in key)
    return format_permutation(key) or "()"


def compare_terms(
    actual: Union[ScfElement, TensorScfElement], expected: Union[ScfElement, TensorScfElement]
):
    """Fail with a table of the differing coefficients when two linear combinations differ."""
    if actual.basis != expected.basis:
        pytest.fail(f"basis {actual.basis.value} differs from {expected.basis.value}")
    keys = set(actual.terms) | set(expected.terms)
    rows = []
    for key in keys:
        a = actual.terms.get(key, 0)
        e = expected.terms.get(key, 0)
        if a != e:
            rows.append([_label(key), str(e), str(a)])
    if rows:
        print(f"\n{len(rows)} coefficients differ:\n")
        print(tabulate(sorted(rows), headers=["term", "expected", "actual"]))
        print()
        pytest.fail("test output differs from expected output")


def compare_lines(actual_lines: Iterable[str], expected_lines: Iterable[str]):
    actual_lines = list(actual_lines)
    expected_lines = list(expected_lines)
    removed = [f"---\t{x}" for x in expected_lines if x not in actual_lines and x != ""]
    added = [f"+++\t{x}" for x in actual_lines if x not in expected_lines and x != ""]
    diff = removed + added
    if diff:
        print("The actual and expected outputs differ:\n")
        for line in diff:
            print(line)
        pytest.fail()


def compare_covers(z: Permutation, actual, expected):
    """Compare two families of covering-inversion sets, printing the arc diagrams of the
    differing members."""
    actual = {frozenset(c) for c in actual}
    expected = {frozenset(c) for c in expected}
    missing = expected - actual
    extra = actual - expected
    if missing or extra:
        for cover in missing:
            print("---\t" + arc_diagram(z, cover))
        for cover in extra:
            print("+++\t" + arc_diagram(z, cover))
        pytest.fail("covering inversion sets differ")
