import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hormander_lab.src.utils.summation import stable_dot, stable_norm2, stable_sum


def test_stable_sum_recovers_cancelled_terms():
    assert stable_sum(np.array([1e16, 1.0, -1e16])) == 1.0


def test_stable_sum_empty_is_zero():
    assert stable_sum(np.array([])) == 0.0


def test_stable_sum_complex():
    total = stable_sum(np.array([1e16 + 1j, 1.0 - 1e16j, -1e16 + 1e16j]))
    assert total == complex(1.0, 1.0)


def test_stable_sum_does_not_depend_on_order(rng):
    values = rng.standard_normal(10_000) * 10.0 ** rng.integers(-8, 8, 10_000)
    assert stable_sum(values) == stable_sum(values[::-1])
    assert stable_sum(values) == stable_sum(rng.permutation(values))


def test_stable_dot_does_not_conjugate():
    a = np.array([1j, 2.0])
    assert stable_dot(a, a) == complex(3.0, 0.0)


def test_stable_norm2():
    assert stable_norm2(np.array([3.0, 4j])) == 25.0


@given(st.lists(st.floats(min_value=-1e12, max_value=1e12, allow_subnormal=False)))
def test_stable_sum_is_correctly_rounded(values):
    arr = np.array(values, dtype=np.float64)
    assert stable_sum(arr) == math.fsum(values)
    assert stable_sum(arr) == stable_sum(arr[::-1])
