"""Piecewise-affine objectives f(x) = max(Ax + b) and their active index sets.

Scalars are either ``fractions.Fraction`` (``numeric="exact"``) or ``float``
(``numeric="float"``). A function carries its numeric mode and every vector
handed to it is coerced to the same mode, so a run never mixes the two.

Index sets are sorted tuples of 0-based row indices.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
NUMERIC_MODES = (EXACT, FLOAT)


class DimensionError(ValueError):
    pass


def default_numeric() -> str:
    """Numeric mode from ``PWAMIN_NUMERIC``, falling back to exact."""
    mode = os.environ.get("PWAMIN_NUMERIC", EXACT).strip().lower()
    if mode not in NUMERIC_MODES:
        raise ValueError(f"PWAMIN_NUMERIC must be one of {NUMERIC_MODES}, got {mode!r}")
    return mode


def to_scalar(value, numeric: str = EXACT) -> Scalar:
    """Coerce ``value`` (int, float, Fraction or a ``"p/q"`` string) to a scalar.

    Floats convert to the Fraction they represent exactly, so exact mode never
    loses information.
    """
    if numeric == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float) and not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    if numeric == FLOAT:
        if isinstance(value, str):
            value = Fraction(value)
        out = float(value)
        if not math.isfinite(out):
            raise ValueError(f"non-finite value {value!r}")
        return out
    raise ValueError(f"unknown numeric mode {numeric!r}")


def to_vector(values: Iterable, numeric: str = EXACT) -> tuple:
    return tuple(to_scalar(v, numeric) for v in values)


def format_scalar(value: Scalar) -> str:
    """``p/q`` for fractions (``p`` when integral), shortest round-trip repr for floats."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def sign(value) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class PwaFunction:
    """f(x) = max_i (a_i^T x + b_i) with rows a_i of ``A``."""

    A: tuple
    b: tuple
    numeric: str = EXACT

    def __init__(self, A: Sequence[Sequence], b: Sequence, numeric: str = EXACT):
        rows = tuple(to_vector(row, numeric) for row in A)
        bb = to_vector(b, numeric)
        if len(rows) < 1:
            raise DimensionError("need at least one affine piece (m >= 1)")
        n = len(rows[0])
        if n < 1:
            raise DimensionError("need at least one variable (n >= 1)")
        if any(len(row) != n for row in rows):
            raise DimensionError("rows of A have unequal lengths")
        if len(bb) != len(rows):
            raise DimensionError(f"A has {len(rows)} rows but b has {len(bb)} entries")
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", bb)
        object.__setattr__(self, "numeric", numeric)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.A)

    @cached_property
    def columns(self) -> tuple:
        return tuple(zip(*self.A))

    @cached_property
    def row_signs(self) -> tuple:
        """Sign vector of every row, in row order."""
        return tuple(tuple(sign(v) for v in row) for row in self.A)

    @cached_property
    def column_support(self) -> tuple:
        """Per column: (rows with negative entry, rows with positive entry)."""
        out = []
        for col in self.columns:
            neg = tuple(i for i, v in enumerate(col) if v < 0)
            pos = tuple(i for i, v in enumerate(col) if v > 0)
            out.append((neg, pos))
        return tuple(out)

    def with_numeric(self, numeric: str) -> "PwaFunction":
        if numeric == self.numeric:
            return self
        return PwaFunction(self.A, self.b, numeric)

    def point(self, x: Iterable) -> tuple:
        x = to_vector(x, self.numeric)
        if len(x) != self.n:
            raise DimensionError(f"point has length {len(x)}, function has n={self.n}")
        return x

    def __call__(self, x) -> Scalar:
        return evaluate(self, x)


def values(f: PwaFunction, x: Iterable) -> tuple:
    """y = Ax + b."""
    x = f.point(x)
    return tuple(sum((a * xi for a, xi in zip(row, x)), bi) for row, bi in zip(f.A, f.b))


def evaluate(f: PwaFunction, x: Iterable) -> Scalar:
    return max(values(f, x))


def argmax_set(y: Sequence) -> tuple:
    if len(y) == 0:
        raise DimensionError("argmax of an empty vector")
    top = max(y)
    return tuple(i for i, v in enumerate(y) if v == top)


def eps_argmax_set(y: Sequence, eps) -> tuple:
    """Indices i with y_i + eps >= max y."""
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    top = max(y)
    return tuple(i for i, v in enumerate(y) if v + eps >= top)


def level_set_indices(y: Sequence, z) -> tuple:
    """I(y, z): indices with y_i >= z."""
    return tuple(i for i, v in enumerate(y) if v >= z)


def inf_norm_diff(y: Sequence, z: Sequence):
    return max((abs(a - c) for a, c in zip(y, z)), default=0)
