from fractions import Fraction

from hypothesis import strategies as st

from pwamin.core import PwaFunction

ints = st.integers(-3, 3)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def make_consistent(A):
    """Make every column all-zero or two-signed, so the row-sign set is consistent."""
    m, n = len(A), len(A[0])
    for j in range(n):
        col = [A[i][j] for i in range(m)]
        pos, neg = any(v > 0 for v in col), any(v < 0 for v in col)
        if pos == neg:
            continue
        if m == 1:
            A[0][j] = 0
            continue
        # flip the sign of the first nonzero entry's neighbour
        i = next(i for i, v in enumerate(col) if v != 0)
        k = (i + 1) % m
        A[k][j] = -(abs(A[k][j]) or 1) if pos else (abs(A[k][j]) or 1)
    return A


@st.composite
def matrices(draw, max_n=6, max_m=6, consistent=False):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    A = [[draw(ints) for _ in range(n)] for _ in range(m)]
    if consistent:
        A = make_consistent(A)
    return A


@st.composite
def functions(draw, max_n=6, max_m=6, consistent=False):
    A = draw(matrices(max_n, max_m, consistent))
    b = [draw(fractions) for _ in A]
    return PwaFunction(A, b)


@st.composite
def function_and_y(draw, max_n=6, max_m=6, consistent=True):
    f = draw(functions(max_n, max_m, consistent))
    y = tuple(draw(fractions) for _ in range(f.m))
    return f, y


def as_fraction_tuple(v):
    return tuple(Fraction(a) for a in v)
