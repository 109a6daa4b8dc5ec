import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cmreg import _kernels
from oracles import rank_mod_p as oracle_rank

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba not importable")

PRIMES = [2, 3, 32003, 2**31 - 1]


def matrices(p):
    shape = st.tuples(st.integers(0, 7), st.integers(0, 7))
    return shape.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_matches_oracle_numpy(pa):
    p, a = pa
    assert _kernels.rank_mod_p(a, p, use_numba=False) == oracle_rank(a.tolist(), p)


@needs_numba
@given(st.sampled_from(PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_numba_and_numpy_agree(pa):
    p, a = pa
    r1, piv1 = _kernels.rref_mod_p(a, p, use_numba=False)
    r2, piv2 = _kernels.rref_mod_p(a, p, use_numba=True)
    assert np.array_equal(r1, r2)
    assert np.array_equal(piv1, piv2)
    assert _kernels.rank_mod_p(a, p, use_numba=True) == _kernels.rank_mod_p(a, p, use_numba=False)


@given(st.sampled_from([3, 32003]).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_nullspace(pa):
    p, a = pa
    if a.size == 0:
        return
    N = _kernels.nullspace_mod_p(a, p)
    assert N.shape[0] == a.shape[1] - oracle_rank(a.tolist(), p)
    if N.size:
        assert not np.any(a @ N.T % p)
        assert oracle_rank(N.tolist(), p) == N.shape[0]


@given(
    arrays(np.int64, st.tuples(st.integers(0, 12), st.just(3)), elements=st.integers(0, 3)),
    arrays(np.int64, st.tuples(st.integers(0, 4), st.just(3)), elements=st.integers(0, 3)),
)
def test_count_divisible_paths_agree(monos, leads):
    brute = sum(any(all(m >= l) for l in leads) for m in monos)
    assert _kernels.count_divisible(monos, leads, use_numba=False) == brute
    if _kernels.HAS_NUMBA:
        assert _kernels.count_divisible(monos, leads, use_numba=True) == brute


def test_large_prime_no_overflow():
    p = 2**31 - 1
    a = np.array([[p - 1, p - 2], [p - 3, p - 1]], dtype=np.int64)
    assert _kernels.rank_mod_p(a, p) == oracle_rank(a.tolist(), p)
