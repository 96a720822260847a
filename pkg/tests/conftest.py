import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lgr.lag_grassmann import SymMatrix
from lgr.linalg import Matrix

settings.register_profile(
    "lgr", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lgr")


def rationals(bound=6, den=4):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, den))


def sym_matrices(n, bound=5):
    return st.lists(rationals(bound), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda vals: SymMatrix(n, vals)
    )


def matrices(n, m=None, bound=5):
    m = n if m is None else m
    return st.lists(
        st.lists(rationals(bound), min_size=m, max_size=m), min_size=n, max_size=n
    ).map(lambda rows: Matrix(rows, m))


def rand_q(rng: random.Random, bound=5, den=3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def rand_sym(rng: random.Random, n: int, bound=5) -> SymMatrix:
    return SymMatrix(n, [rand_q(rng, bound) for _ in range(n * (n + 1) // 2)])


def rand_matrix(rng: random.Random, n: int, bound=5) -> Matrix:
    return Matrix([[rand_q(rng, bound) for _ in range(n)] for _ in range(n)], n)


@pytest.fixture
def rng():
    return random.Random(20261014)
