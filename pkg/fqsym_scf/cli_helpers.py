import os
import re

from typing import List, Optional
from .perm import Permutation, parse_permutation

MAX_DEGREE = int(os.environ.get("FQSYM_SCF_MAX_DEGREE") or 7)


def check_degree(n: int, name: str = "degree"):
    """Raise ValueError unless 0 <= n <= MAX_DEGREE.

    :param n: requested degree bound
    :param name: how the bound is called in the error message
    """
    if n < 0:
        raise ValueError(f"{name} must not be negative, not {n}")
    if n > MAX_DEGREE:
        raise ValueError(
            f"{name} {n} exceeds the cap of {MAX_DEGREE} (set FQSYM_SCF_MAX_DEGREE to raise it)"
        )


def get_permutations(perm_list: Optional[list], perms_file: Optional[str]) -> List[Permutation]:
    """Get a list of permutations from a list and/or a file from args.

    :param perm_list: list of input permutations such as "3,1,2"
    :param perms_file: path to file containing one permutation per line
    :return: list of permutations
    """
    texts = list(perm_list or [])
    if perms_file:
        with open(perms_file, "r") as f:
            for line in f:
                if line.startswith("#"):
                    continue
                if not line.strip():
                    continue
                m = re.match(r"(.+)\s#.+", line)
                if m:
                    texts.append(m.group(1).strip())
                else:
                    texts.append(line.strip())
    perms = [parse_permutation(t) for t in texts]
    for w in perms:
        check_degree(len(w))
    return perms
