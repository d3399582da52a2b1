"""Exact LP decision procedures for optimality and boundedness of max(Ax + b).

Every oracle converts its input to Fractions (floats convert exactly) and
re-verifies the certificate it returns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import core
from .core import PwaFunction
from .lp import INFEASIBLE, OPTIMAL, solve_standard


class EmptyFeasibleSet(ValueError):
    """{x | Ax <= b} is empty."""


class CertificateError(AssertionError):
    pass


class Flavor(str, enum.Enum):
    FEASIBLE = "Feasible"
    STRICTLY_FEASIBLE = "StrictlyFeasible"


@dataclass(frozen=True)
class DualCertificate:
    """Convex weights ``lam`` with sum(lam_i * a_i) = 0."""

    lam: tuple
    flavor: Flavor

    def check(self, X) -> bool:
        lam = self.lam
        if len(lam) != len(X):
            return False
        if self.flavor is Flavor.STRICTLY_FEASIBLE:
            positive = all(v > 0 for v in lam)
        else:
            positive = all(v >= 0 for v in lam)
        n = len(X[0])
        combo = all(sum(l * Fraction(a[j]) for l, a in zip(lam, X)) == 0 for j in range(n))
        return positive and sum(lam) == 1 and combo


def _rows(X) -> list:
    X = [tuple(Fraction(v) for v in a) for a in X]
    if not X:
        raise ValueError("need a nonempty set of vectors")
    if any(len(a) != len(X[0]) for a in X):
        raise ValueError("vectors of unequal length")
    return X


def _verified(cert: DualCertificate, X) -> DualCertificate:
    if not cert.check(X):
        raise CertificateError(f"certificate failed verification: {cert}")
    return cert


def contains_origin_conv(X: Sequence[Sequence]):
    """Decide 0 in conv X; returns ``(verdict, certificate or None)``."""
    X = _rows(X)
    k, n = len(X), len(X[0])
    E = [[a[j] for a in X] for j in range(n)] + [[1] * k]
    d = [0] * n + [1]
    res = solve_standard([0] * k, E, d)
    if res.status == INFEASIBLE:
        return False, None
    return True, _verified(DualCertificate(res.x, Flavor.FEASIBLE), X)


def contains_origin_rint_conv(X: Sequence[Sequence]):
    """Decide 0 in rint conv X by maximizing the smallest weight t.

    With lam = t*1 + s, s >= 0, the LP ``max t`` over sum(lam) = 1 and
    sum(lam_i a_i) = 0 has a positive optimum exactly when a strictly
    positive certificate exists.
    """
    X = _rows(X)
    ok, _ = contains_origin_conv(X)
    if not ok:
        return False, None
    k, n = len(X), len(X[0])
    # variables: t, s_1..s_k
    E = [[sum(a[j] for a in X)] + [a[j] for a in X] for j in range(n)]
    E.append([k] + [1] * k)
    d = [0] * n + [1]
    res = solve_standard([-1] + [0] * k, E, d)
    if res.status != OPTIMAL:
        raise CertificateError(f"max-min-weight LP returned {res.status}")
    t = res.x[0]
    if t <= 0:
        return False, None
    lam = tuple(t + s for s in res.x[1:])
    return True, _verified(DualCertificate(lam, Flavor.STRICTLY_FEASIBLE), X)


def is_bounded_below(f: PwaFunction) -> bool:
    return contains_origin_conv(f.A)[0]


def is_global_minimizer(f: PwaFunction, x) -> bool:
    y = core.values(f.with_numeric(core.EXACT), x)
    active = core.argmax_set(y)
    return contains_origin_conv([f.A[i] for i in active])[0]


@dataclass(frozen=True)
class MinLpResult:
    status: str  # "optimal" or "unbounded"
    x: Optional[tuple] = None
    value: Optional[Fraction] = None
    lam: Optional[tuple] = None


def solve_min_lp(f: PwaFunction) -> MinLpResult:
    """Minimize f exactly through its dual max{b^T lam | lam >= 0, 1^T lam = 1, A^T lam = 0}.

    Infeasible dual means f is unbounded below. Otherwise the simplex
    multipliers of the A^T lam = 0 rows are a primal minimizer x, and the
    returned pair is checked for strong duality and complementary slackness.
    """
    fe = f.with_numeric(core.EXACT)
    m, n = fe.m, fe.n
    E = [[fe.A[i][j] for i in range(m)] for j in range(n)] + [[1] * m]
    d = [0] * n + [1]
    res = solve_standard([-v for v in fe.b], E, d)
    if res.status == INFEASIBLE:
        return MinLpResult("unbounded")
    if res.status != OPTIMAL:
        raise CertificateError(f"dual LP of a max-affine function cannot be {res.status}")
    lam = res.x
    x = tuple(res.duals[:n])
    value = sum(bi * li for bi, li in zip(fe.b, lam))
    y = core.values(fe, x)
    if max(y) != value:
        raise CertificateError("strong duality check failed")
    top = max(y)
    if any(li > 0 and yi != top for li, yi in zip(lam, y)):
        raise CertificateError("complementary slackness check failed")
    return MinLpResult("optimal", x, value, lam)


def polyhedron_nonempty(f: PwaFunction) -> bool:
    """Feasibility of {x | Ax <= b} with x split as x+ - x- and slacks."""
    fe = f.with_numeric(core.EXACT)
    m, n = fe.m, fe.n
    E = [list(row) + [-v for v in row] + [1 if k == i else 0 for k in range(m)] for i, row in enumerate(fe.A)]
    res = solve_standard([0] * (2 * n + m), E, list(fe.b))
    return res.status != INFEASIBLE


def y_set_is_bounded(f: PwaFunction) -> bool:
    """Whether {Ax | Ax <= b} is bounded; needs that set to be nonempty."""
    if not polyhedron_nonempty(f):
        raise EmptyFeasibleSet("{x | Ax <= b} is empty")
    return contains_origin_rint_conv(f.A)[0]
