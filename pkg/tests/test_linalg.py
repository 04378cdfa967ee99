import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qgforms import linalg

frac = st.builds(Fraction, st.integers(-8, 8), st.integers(1, 5))


def random_matrix(rng, rows, cols):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 3))
             for _ in range(cols)] for _ in range(rows)]


def test_rref_canonical_and_idempotent():
    rng = random.Random(7)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        red, pivots = linalg.rref(m)
        for row, pc in zip(red, pivots):
            assert row[pc] == 1
            for other in red:
                if other is not row:
                    assert other[pc] == 0
        again, pivots2 = linalg.rref(red)
        assert again == red and pivots2 == pivots


def test_rank_and_nullspace_dimensions():
    rng = random.Random(11)
    for _ in range(25):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        r = linalg.rank(m)
        kernel = linalg.nullspace(m, cols)
        assert r + len(kernel) == cols
        for v in kernel:
            assert all(sum(row[j] * v[j] for j in range(cols)) == 0
                       for row in m)


def test_solve_exact_and_inconsistent():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert linalg.solve(a, [Fraction(1), Fraction(2)]) is not None
    assert linalg.solve(a, [Fraction(1), Fraction(3)]) is None
    x = linalg.solve([[Fraction(0), Fraction(1)]], [Fraction(5)])
    # canonical solution: free variables pinned to zero
    assert x == (Fraction(0), Fraction(5))


def test_mat_inv_round_trip():
    rng = random.Random(13)
    hits = 0
    while hits < 10:
        m = random_matrix(rng, 3, 3)
        inv = linalg.mat_inv(m)
        if inv is None:
            continue
        hits += 1
        assert linalg.mat_mul(m, inv) == linalg.identity(3)
        assert linalg.mat_mul(inv, m) == linalg.identity(3)
    assert linalg.mat_inv([[Fraction(1), Fraction(2)],
                           [Fraction(2), Fraction(4)]]) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(frac, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_row_space_invariance(rows):
    red, _ = linalg.rref(rows)
    doubled = [[2 * x for x in r] for r in rows]
    red2, _ = linalg.rref(list(rows) + doubled)
    assert red == red2


def test_is_scalar_matrix():
    two = Fraction(2)
    assert linalg.is_scalar_matrix([[two, 0], [0, two]]) == 2
    assert linalg.is_scalar_matrix([[two, 0], [0, 1]]) is None
