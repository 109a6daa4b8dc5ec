"""Hot numeric kernels: row reduction over GF(p) and monomial divisibility counts.

Each kernel has a numba implementation and a pure-numpy fallback.  The numba
path is used when numba imports cleanly and ``CMREG_DISABLE_NUMBA`` is unset
(or set to ``0``).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("CMREG_DISABLE_NUMBA", "0") in ("", "0")

# products of two residues must fit in int64
MAX_PRIME = 2**31 - 1


# ---------------------------------------------------------------- numpy path


def _inv_mod_py(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def rref_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of ``a`` over GF(p); returns (R, pivot columns)."""
    r_mat = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = r_mat.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(r_mat[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            r_mat[[r, piv]] = r_mat[[piv, r]]
        r_mat[r] = r_mat[r] * _inv_mod_py(r_mat[r, c], p) % p
        col = r_mat[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            r_mat[hit] = (r_mat[hit] - np.outer(col[hit], r_mat[r])) % p
        pivots.append(c)
        r += 1
    return r_mat, np.array(pivots, dtype=np.int64)


def rank_numpy(a: np.ndarray, p: int) -> int:
    m = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * _inv_mod_py(m[r, c], p) % p
        below = m[r + 1 :, c]
        hit = np.flatnonzero(below)
        if hit.size:
            idx = hit + r + 1
            m[idx] = (m[idx] - np.outer(m[idx, c], m[r])) % p
        r += 1
    return r


def count_divisible_numpy(monos: np.ndarray, leads: np.ndarray) -> int:
    """Number of rows of ``monos`` divisible by at least one row of ``leads``."""
    if monos.shape[0] == 0 or leads.shape[0] == 0:
        return 0
    hit = np.zeros(monos.shape[0], dtype=bool)
    for lead in leads:
        hit |= np.all(monos >= lead, axis=1)
    return int(hit.sum())


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        t, new_t = 0, 1
        r, new_r = p, a % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_nb(a, p):
        rows, cols = a.shape
        m = np.empty((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                m[i, j] = a[i, j] % p
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            inv = _inv_mod_nb(m[r, c], p)
            for j in range(c, cols):
                m[r, j] = m[r, j] * inv % p
            for i in range(rows):
                if i == r:
                    continue
                f = m[i, c]
                if f != 0:
                    for j in range(c, cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
            pivots[r] = c
            r += 1
        return m, pivots[:r]

    @njit(cache=True)
    def _rank_nb(a, p):
        rows, cols = a.shape
        m = np.empty((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                m[i, j] = a[i, j] % p
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            inv = _inv_mod_nb(m[r, c], p)
            for j in range(c, cols):
                m[r, j] = m[r, j] * inv % p
            for i in range(r + 1, rows):
                f = m[i, c]
                if f != 0:
                    for j in range(c, cols):
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
            r += 1
        return r

    @njit(cache=True)
    def _count_divisible_nb(monos, leads):
        count = 0
        nv = monos.shape[1]
        for i in range(monos.shape[0]):
            for k in range(leads.shape[0]):
                ok = True
                for v in range(nv):
                    if monos[i, v] < leads[k, v]:
                        ok = False
                        break
                if ok:
                    count += 1
                    break
        return count


# ---------------------------------------------------------------- dispatch


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return a


def rref_mod_p(a, p: int, use_numba: bool | None = None) -> tuple[np.ndarray, np.ndarray]:
    a = _as_matrix(a)
    if use_numba is None:
        use_numba = USE_NUMBA
    if a.size == 0:
        return a.copy() % p, np.zeros(0, dtype=np.int64)
    if use_numba:
        return _rref_nb(a, np.int64(p))
    return rref_numpy(a, p)


def rank_mod_p(a, p: int, use_numba: bool | None = None) -> int:
    a = _as_matrix(a)
    if a.size == 0:
        return 0
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return int(_rank_nb(a, np.int64(p)))
    return rank_numpy(a, p)


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Basis of {v : a v = 0} over GF(p), one basis vector per row."""
    a = _as_matrix(a)
    cols = a.shape[1]
    r_mat, pivots = rref_mod_p(a, p)
    pivot_set = set(int(c) for c in pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, c in enumerate(pivots):
            basis[k, c] = (-r_mat[row, f]) % p
    return basis


def count_divisible(monos, leads, use_numba: bool | None = None) -> int:
    monos = np.asarray(monos, dtype=np.int64)
    leads = np.asarray(leads, dtype=np.int64)
    if monos.shape[0] == 0 or leads.size == 0:
        return 0
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return int(_count_divisible_nb(monos, leads.reshape(-1, monos.shape[1])))
    return count_divisible_numpy(monos, leads.reshape(-1, monos.shape[1]))
