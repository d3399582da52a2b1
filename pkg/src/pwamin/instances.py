"""Instance files, seeded generators and the worked-example corpus.

File format (``.pwa.json``), one JSON document::

    {"kind": "pwa", "n": 3, "A": [["0", "1", "-1"], ...], "b": ["0", ...], "x0": [...]}
    {"kind": "summax", "n": 1, "groups": [[{"a": ["1"], "b": "0"}, ...], ...]}

Numbers may be JSON numbers or strings ``"p/q"``. The canonical form writes
every number as a lowest-terms ``"p/q"`` string (``"p"`` when integral),
sorts keys, indents by two spaces and ends with a newline.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .core import PwaFunction
from .summax import SumMaxFunction

GENERATOR_ID = "pcg64-v1"
PROFILES = ("rint", "sign", "unrestricted")

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$|^\s*[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\s*$")


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f" (line {line}, column {col})" if line else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Instance:
    function: Union[PwaFunction, SumMaxFunction]
    x0: Optional[tuple] = None

    @property
    def kind(self) -> str:
        return "summax" if isinstance(self.function, SumMaxFunction) else "pwa"


def _locate(text: str, token: str):
    pos = text.find(token)
    if pos < 0:
        return 0, 0
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _number(value, path: str, text: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
        raise InstanceFormatError(f"{path}: expected a number, got {value!r}", *_locate(text, json.dumps(value)))
    if isinstance(value, str):
        if not _RATIONAL.match(value):
            raise InstanceFormatError(f"{path}: malformed number {value!r}", *_locate(text, json.dumps(value)))
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InstanceFormatError(f"{path}: zero denominator in {value!r}", *_locate(text, json.dumps(value))) from None
    return Fraction(value)


def _vector(values, path, text):
    if not isinstance(values, list):
        raise InstanceFormatError(f"{path}: expected a list", *_locate(text, path.rsplit(".", 1)[-1]))
    return [_number(v, f"{path}[{k}]", text) for k, v in enumerate(values)]


def parse_instance(text: str) -> Instance:
    try:
        # parse_float keeps decimal literals exact
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be a JSON object", 1, 1)
    kind = doc.get("kind")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceFormatError(f"'n' must be a positive integer, got {n!r}", *_locate(text, '"n"'))
    if kind == "pwa":
        A = doc.get("A")
        if not isinstance(A, list) or not A:
            raise InstanceFormatError("'A' must be a nonempty list of rows", *_locate(text, '"A"'))
        rows = [_vector(row, f"A[{i}]", text) for i, row in enumerate(A)]
        b = _vector(doc.get("b"), "b", text)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InstanceFormatError(f"A[{i}] has {len(row)} entries, expected n={n}", *_locate(text, '"A"'))
        if len(b) != len(rows):
            raise InstanceFormatError(f"'b' has {len(b)} entries but A has {len(rows)} rows", *_locate(text, '"b"'))
        func = PwaFunction(rows, b)
    elif kind == "summax":
        groups = doc.get("groups")
        if not isinstance(groups, list) or not groups:
            raise InstanceFormatError("'groups' must be a nonempty list", *_locate(text, '"groups"'))
        parsed = []
        for i, group in enumerate(groups):
            if not isinstance(group, list) or not group:
                raise InstanceFormatError(f"groups[{i}] must be a nonempty list", *_locate(text, '"groups"'))
            terms = []
            for k, term in enumerate(group):
                if not isinstance(term, dict) or "a" not in term or "b" not in term:
                    raise InstanceFormatError(f"groups[{i}][{k}] needs keys 'a' and 'b'", *_locate(text, '"groups"'))
                a = _vector(term["a"], f"groups[{i}][{k}].a", text)
                if len(a) != n:
                    raise InstanceFormatError(f"groups[{i}][{k}].a has {len(a)} entries, expected n={n}", *_locate(text, '"groups"'))
                terms.append((a, _number(term["b"], f"groups[{i}][{k}].b", text)))
            parsed.append(terms)
        func = SumMaxFunction(parsed)
    else:
        raise InstanceFormatError(f"'kind' must be 'pwa' or 'summax', got {kind!r}", *_locate(text, '"kind"'))
    x0 = None
    if doc.get("x0") is not None:
        x0 = tuple(_vector(doc["x0"], "x0", text))
        if len(x0) != n:
            raise InstanceFormatError(f"'x0' has {len(x0)} entries, expected n={n}", *_locate(text, '"x0"'))
    return Instance(func, x0)


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def _canon(v) -> str:
    return str(Fraction(v))


def dump_instance(func, x0=None, extra: Optional[dict] = None) -> str:
    """Canonical text of an instance."""
    if isinstance(func, Instance):
        func, x0 = func.function, func.x0 if x0 is None else x0
    if isinstance(func, SumMaxFunction):
        doc = {
            "kind": "summax",
            "n": func.n,
            "groups": [
                [{"a": [_canon(v) for v in a], "b": _canon(b)} for a, b in group] for group in func.groups
            ],
        }
    else:
        doc = {
            "kind": "pwa",
            "n": func.n,
            "A": [[_canon(v) for v in row] for row in func.A],
            "b": [_canon(v) for v in func.b],
        }
    if x0 is not None:
        doc["x0"] = [_canon(v) for v in x0]
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_instance(func, path, x0=None, extra: Optional[dict] = None) -> None:
    Path(path).write_text(dump_instance(func, x0, extra))


def generate_random(n: int, m: int, seed: int, profile: str = "unrestricted", magnitude: int = 3) -> PwaFunction:
    """Seeded random instance with small integer data.

    Profiles:
      ``rint``          0 lies in the relative interior of conv of the rows
                        (last row is minus a strictly positive combination of
                        the others, then rows are shuffled);
      ``sign``          the row-sign set is consistent;
      ``unrestricted``  no structure.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}")
    rng = np.random.Generator(np.random.PCG64(seed))
    A = rng.integers(-magnitude, magnitude + 1, size=(m, n))
    b = rng.integers(-magnitude, magnitude + 1, size=m)
    if profile == "rint":
        if m == 1:
            A[:] = 0
        else:
            weights = rng.integers(1, 4, size=m - 1)
            A[-1] = -(weights[:, None] * A[:-1]).sum(axis=0)
            A = A[rng.permutation(m)]
    elif profile == "sign":
        for j in range(n):
            col = A[:, j]
            if (col > 0).any() == (col < 0).any():
                continue
            if m == 1:
                col[:] = 0
                continue
            positive = bool((col > 0).any())
            others = np.flatnonzero(col <= 0) if positive else np.flatnonzero(col >= 0)
            pool = others if len(others) else np.arange(m)
            i = int(rng.choice(pool))
            size = int(rng.integers(1, magnitude + 1))
            col[i] = -size if positive else size
    return PwaFunction(A.tolist(), b.tolist())


# worked examples -------------------------------------------------------------

def example1() -> Instance:
    """max{x2 - x3, x3 - x1, x1 - x2} from (2, 1, 0), a proximal-rule fixed point."""
    return Instance(PwaFunction([[0, 1, -1], [-1, 0, 1], [1, -1, 0]], [0, 0, 0]), (2, 1, 0))


def example2() -> Instance:
    """max{x1 - 2 x2, x2 - 2 x1}: unbounded, yet every x1 = x2 is fixed."""
    return Instance(PwaFunction([[1, -2], [-2, 1]], [0, 0]), (3, -1))


def example3() -> Instance:
    """The function of ``example1`` under the unique rule, which averages pairs of y.

    From x0 = (0, 1, 1), y = (0, 1, -1) and the first update already makes all
    three values equal, so an exact run stops at a fixed point. Other starts
    converge to the mean only in the limit.
    """
    return Instance(example1().function, (0, 1, 1))


def example4() -> Instance:
    """max{x1 - x2 - x3, x1 + 4, x1 + x2 + x3, -x1 + x2 + 2}: no fixed point."""
    A = [[1, -1, -1], [1, 0, 0], [1, 1, 1], [-1, 1, 0]]
    return Instance(PwaFunction(A, [0, 4, 0, 2]), (0, 0, 0))


def example5() -> Instance:
    """``example4`` plus the constant zero piece."""
    A = [[1, -1, -1], [1, 0, 0], [1, 1, 1], [-1, 1, 0], [0, 0, 0]]
    return Instance(PwaFunction(A, [0, 4, 0, 2, 0]), (0, 0, 0))


def example1_doubled() -> Instance:
    """Two copies of ``example1`` as a sum of maxima; minimum 0 at x1 = x2 = x3."""
    f = example1().function
    group = [(a, b) for a, b in zip(f.A, f.b)]
    return Instance(SumMaxFunction([group, group]), (2, 1, 0))


def abs_pair() -> Instance:
    """max{x, -x} + max{x - 1, 1 - x} = |x| + |x - 1|; minimum 1 on [0, 1]."""
    return Instance(SumMaxFunction([[([1], 0), ([-1], 0)], [([1], -1), ([-1], 1)]]), (3,))


CORPUS = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "example4": example4,
    "example5": example5,
    "example1_doubled": example1_doubled,
    "abs_pair": abs_pair,
}


def write_corpus(directory) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, build in CORPUS.items():
        path = directory / f"{name}.pwa.json"
        save_instance(build(), path)
        paths.append(path)
    return paths

