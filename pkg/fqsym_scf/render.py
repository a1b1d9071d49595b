import csv
import json

from fractions import Fraction
from io import StringIO
from tabulate import tabulate
from typing import Iterable, List, Union
from .hopf import Basis, ScfElement, TensorScfElement
from .oracle import ClassFunction, coordinates, enumerate_group, supercharacter_table
from .perm import CoveringInversion, Permutation, format_permutation, inverse


def element2dict(x: Union[ScfElement, TensorScfElement]) -> dict:
    """Convert an element or tensor to its JSON-ready form:
    {"basis": "sch", "terms": [{"perm": [3, 1, 2], "num": 1, "den": 1}]}, with "left"/"right"
    in place of "perm" for tensors. Terms follow degree, then one-line word.

    :param x: ScfElement or TensorScfElement
    :return: dict
    """
    terms = []
    if isinstance(x, TensorScfElement):
        for (left, right), c in x.items():
            terms.append(
                {
                    "left": list(left.word),
                    "right": list(right.word),
                    "num": c.numerator,
                    "den": c.denominator,
                }
            )
    else:
        for w, c in x.items():
            terms.append({"perm": list(w.word), "num": c.numerator, "den": c.denominator})
    return {"basis": x.basis.value, "terms": terms}


def dict2element(data: dict) -> Union[ScfElement, TensorScfElement]:
    """Inverse of element2dict."""
    basis = Basis(data["basis"])
    terms = data.get("terms", [])
    if any("left" in t for t in terms):
        return TensorScfElement(
            basis,
            {
                (Permutation(tuple(t["left"])), Permutation(tuple(t["right"]))): Fraction(
                    t["num"], t.get("den", 1)
                )
                for t in terms
            },
        )
    return ScfElement(
        basis, {Permutation(tuple(t["perm"])): Fraction(t["num"], t.get("den", 1)) for t in terms}
    )


def element2json(x: Union[ScfElement, TensorScfElement]) -> str:
    return json.dumps(element2dict(x)) + "\n"


def element2plain(x: Union[ScfElement, TensorScfElement]) -> str:
    """Render coefficients as a plain table."""
    if isinstance(x, TensorScfElement):
        rows = [
            [format_permutation(left) or "()", format_permutation(right) or "()", str(c)]
            for (left, right), c in x.items()
        ]
        headers = ["left", "right", "coefficient"]
    else:
        rows = [[format_permutation(w) or "()", str(c)] for w, c in x.items()]
        headers = ["perm", "coefficient"]
    return tabulate(rows, headers=headers) + "\n"


def dicts2csv(rows: List[dict], headers: List[str], delimiter: str = ",") -> str:
    """Write a list of dicts as a CSV (or TSV) table.

    :param rows: list of dicts to write to DictWriter
    :param headers: list of headers for output
    :param delimiter: character to separate cells (default ',' for CSV)
    :return: string table output
    """
    output = StringIO()
    writer = csv.DictWriter(output, delimiter=delimiter, fieldnames=headers, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return output.getvalue()


def supercharacter_table2csv(n: int, q: int) -> str:
    """Supercharacter table as CSV: one row per w, one column per superclass representative,
    both ordered by inversion table."""
    perms, values = supercharacter_table(n, q)
    headers = ["w"] + [format_permutation(v) or "()" for v in perms]
    rows = []
    for w, row in zip(perms, values):
        itm = {"w": format_permutation(w) or "()"}
        itm.update({h: value for h, value in zip(headers[1:], row)})
        rows.append(itm)
    return dicts2csv(rows, headers)


def function2csv(f: ClassFunction) -> str:
    """Literal table of a class function: one column per matrix position, then the value."""
    cells = [f"x{i}{j}" if f.n < 10 else f"x{i}_{j}" for (i, j) in coordinates(f.n)]
    headers = cells + ["value"]
    rows = []
    for x in enumerate_group(f.n, f.q):
        itm = dict(zip(cells, x.entries))
        itm["value"] = str(f(x))
        rows.append(itm)
    return dicts2csv(rows, headers)


def arc_diagram(z: Permutation, cover: Iterable[CoveringInversion]) -> str:
    """Render the arcs of C over the one-line word of z, e.g. "9 1 7 4 2 | (9,7) (7,4)".

    :param z: permutation
    :param cover: covering inversions of z
    :return: one-line ASCII rendering
    """
    z_inv = inverse(z)
    arcs = sorted(cover, key=lambda c: (z_inv(c[0]), z_inv(c[1])))
    word = " ".join(str(x) for x in z.word)
    return word + " | " + " ".join(f"({c[0]},{c[1]})" for c in arcs)
