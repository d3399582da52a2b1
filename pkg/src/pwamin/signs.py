"""Sign relaxation of the condition 0 in conv X.

A sign set is a ``frozenset`` of equal-length tuples over {-1, 0, 1}. The
consistency closure ``cons S`` is the greatest subset of S that is consistent
in every coordinate; it is computed by repeatedly deleting, at an inconsistent
coordinate j, every element with a nonzero j-th entry.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional

from .core import sign


def sign_of(a: Iterable) -> tuple:
    return tuple(sign(v) for v in a)


def sign_set(vectors: Iterable[Iterable]) -> frozenset:
    """Build a deduplicated sign set, validating entries and dimension."""
    out = set()
    n = None
    for s in vectors:
        s = tuple(int(v) for v in s)
        if any(v not in (-1, 0, 1) for v in s):
            raise ValueError(f"sign vector entries must be in {{-1, 0, 1}}: {s}")
        if n is None:
            n = len(s)
        elif len(s) != n:
            raise ValueError("sign vectors of unequal length")
        out.add(s)
    return frozenset(out)


def _dim(S) -> int:
    for s in S:
        return len(s)
    return 0


def is_consistent_in_coordinate(S: Iterable[tuple], j: int) -> bool:
    has_neg = has_pos = False
    for s in S:
        if s[j] < 0:
            has_neg = True
        elif s[j] > 0:
            has_pos = True
    return has_neg == has_pos


def inconsistent_coordinates(S: Iterable[tuple]) -> list:
    S = list(S)
    return [j for j in range(_dim(S)) if not is_consistent_in_coordinate(S, j)]


def is_consistent(S: Iterable[tuple]) -> bool:
    S = list(S)
    return all(is_consistent_in_coordinate(S, j) for j in range(_dim(S)))


def enforce_consistency(S: Iterable[tuple], rng: Optional[random.Random] = None):
    """Run the enforcement algorithm and return ``(closure, removals)``.

    Without ``rng`` coordinates are scanned cyclically from 0, enforcing at the
    first inconsistent one met; with ``rng`` an inconsistent coordinate is
    drawn at random each step. ``removals`` lists ``(j, removed_elements)``
    per step. The closure does not depend on the order.
    """
    current = set(sign_set(S))
    n = _dim(current)
    removals = []
    if n == 0:
        return frozenset(current), removals
    j = 0
    clean_run = 0  # consecutive consistent coordinates seen in the cyclic scan
    while current:
        if rng is not None:
            bad = [k for k in range(n) if not is_consistent_in_coordinate(current, k)]
            if not bad:
                break
            j = rng.choice(bad)
        elif is_consistent_in_coordinate(current, j):
            clean_run += 1
            if clean_run >= n:
                break
            j = (j + 1) % n
            continue
        dropped = frozenset(s for s in current if s[j] != 0)
        current -= dropped
        removals.append((j, dropped))
        clean_run = 0
        if rng is None:
            j = (j + 1) % n
    return frozenset(current), removals


def consistency_closure(S: Iterable[tuple], rng: Optional[random.Random] = None) -> frozenset:
    return enforce_consistency(S, rng)[0]


def closure_of_rows(row_signs, rows: Iterable[int]) -> frozenset:
    """cons {sgn a_i | i in rows}."""
    return consistency_closure(row_signs[i] for i in rows)


def sign_condition_holds(X: Iterable[Iterable]) -> bool:
    """Necessary condition for 0 in conv X: cons {sgn a | a in X} is nonempty."""
    return bool(consistency_closure(sign_of(a) for a in X))
