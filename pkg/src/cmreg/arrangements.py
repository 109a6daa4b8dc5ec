"""Linear subspaces of P^n, their unions, cones, and finite point sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from . import _kernels
from .ideal import Ideal, intersect, krull_dim
from .ring import DEFAULT_PRIME, ContextMismatch, Polynomial, RingContext, is_homogeneous

MAX_RETRIES = 100


class DependentForms(ValueError):
    pass


class RandomDrawFailure(RuntimeError):
    pass


def coefficient_matrix(forms: Sequence[Polynomial]) -> np.ndarray:
    """Rows are the coefficient vectors of the linear forms."""
    if not forms:
        return np.zeros((0, 0), dtype=np.int64)
    nv = forms[0].ctx.num_vars
    A = np.zeros((len(forms), nv), dtype=np.int64)
    for r, f in enumerate(forms):
        for m, c in f._d.items():
            A[r, m.index(1)] = c
    return A


def forms_from_matrix(A: np.ndarray, ctx: RingContext) -> tuple[Polynomial, ...]:
    out = []
    nv = ctx.num_vars
    for row in A:
        terms = {}
        for i, c in enumerate(row):
            if c % ctx.char_p:
                e = [0] * nv
                e[i] = 1
                terms[tuple(e)] = int(c)
        out.append(Polynomial(ctx, terms))
    return tuple(out)


@dataclass(frozen=True)
class LinearSubspace:
    """The projective subspace cut out by independent linear forms."""

    ctx: RingContext
    forms: tuple[Polynomial, ...]

    @property
    def ambient_n(self) -> int:
        return self.ctx.ambient_n

    @property
    def dim(self) -> int:
        return self.ambient_n - len(self.forms)

    @property
    def codim(self) -> int:
        return len(self.forms)

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.forms, saturated=True)

    def spanning_points(self) -> np.ndarray:
        """dim + 1 coordinate vectors spanning the subspace."""
        A = coefficient_matrix(self.forms)
        if A.size == 0:
            return np.eye(self.ctx.num_vars, dtype=np.int64)
        return _kernels.nullspace_mod_p(A, self.ctx.char_p)

    def contains_point(self, v) -> bool:
        A = coefficient_matrix(self.forms)
        return not np.any(A @ np.asarray(v, dtype=np.int64) % self.ctx.char_p)

    def __str__(self):
        return "; ".join(str(f) for f in self.forms)


def linear_subspace(forms: Sequence[Polynomial], ctx: RingContext | None = None) -> LinearSubspace:
    if ctx is None:
        if not forms:
            raise ValueError("cannot infer a ring from an empty list of forms")
        ctx = forms[0].ctx
    for f in forms:
        if f.ctx != ctx:
            raise ContextMismatch("forms live in different rings")
        h = is_homogeneous(f)
        if not f or not h or h.degree != 1:
            raise ValueError(f"{f} is not a linear form")
    A = coefficient_matrix(list(forms))
    if A.size and _kernels.rank_mod_p(A, ctx.char_p) != len(forms):
        raise DependentForms("linear forms are dependent")
    return LinearSubspace(ctx, tuple(forms))


def subspace_through(points, ctx: RingContext) -> LinearSubspace:
    """Smallest subspace containing the given coordinate vectors."""
    P = np.asarray(points, dtype=np.int64).reshape(-1, ctx.num_vars) % ctx.char_p
    if _kernels.rank_mod_p(P, ctx.char_p) != P.shape[0]:
        raise DependentForms("points are not in general position")
    N = _kernels.nullspace_mod_p(P, ctx.char_p)
    return LinearSubspace(ctx, forms_from_matrix(N, ctx))


def random_point(ctx: RingContext, rng) -> np.ndarray:
    rng = np.random.default_rng(rng)
    while True:
        v = rng.integers(0, ctx.char_p, size=ctx.num_vars, dtype=np.int64)
        if v.any():
            return v


def random_point_on(L: LinearSubspace, rng) -> np.ndarray:
    rng = np.random.default_rng(rng)
    B = L.spanning_points()
    while True:
        c = rng.integers(0, L.ctx.char_p, size=B.shape[0], dtype=np.int64)
        v = c @ B % L.ctx.char_p
        if v.any():
            return v


def random_subspace(ambient_n: int, dim: int, rng_seed, char_p: int = DEFAULT_PRIME) -> LinearSubspace:
    """ambient_n - dim random linear forms, redrawn until independent."""
    if not 0 <= dim < ambient_n:
        raise ValueError(f"need 0 <= dim < {ambient_n}")
    ctx = RingContext(ambient_n + 1, char_p)
    rng = np.random.default_rng(rng_seed)
    codim = ambient_n - dim
    for _ in range(MAX_RETRIES):
        A = rng.integers(0, char_p, size=(codim, ctx.num_vars), dtype=np.int64)
        if _kernels.rank_mod_p(A, char_p) == codim:
            return LinearSubspace(ctx, forms_from_matrix(A, ctx))
    raise RandomDrawFailure("could not draw independent linear forms")


def _common_ring(items) -> RingContext:
    ctxs = {x.ctx for x in items}
    if len(ctxs) != 1:
        raise ContextMismatch("subspaces live in different ambient spaces")
    return ctxs.pop()


def arrangement_ideal(subspaces: Sequence[LinearSubspace]) -> Ideal:
    """Ideal of the union: the intersection of the subspace ideals."""
    if not subspaces:
        raise ValueError("empty arrangement")
    _common_ring(subspaces)
    out = reduce(intersect, [L.ideal for L in subspaces])
    out.saturated = True
    return out


@dataclass(frozen=True)
class Arrangement:
    subspaces: tuple[LinearSubspace, ...]

    @cached_property
    def ideal(self) -> Ideal:
        return arrangement_ideal(self.subspaces)

    @property
    def ctx(self) -> RingContext:
        return self.subspaces[0].ctx

    def intersection_dims(self) -> list[list[int]]:
        return pairwise_intersection_dims(self.subspaces)


def pairwise_intersection_dims(subspaces: Sequence[LinearSubspace]) -> list[list[int]]:
    """Projective dimension of each X_i ∩ X_j (-1 for empty); the diagonal holds dim X_i."""
    _common_ring(subspaces)
    d = len(subspaces)
    out = [[0] * d for _ in range(d)]
    for i in range(d):
        out[i][i] = subspaces[i].dim
        for j in range(i + 1, d):
            k = krull_dim(subspaces[i].ideal + subspaces[j].ideal)
            out[i][j] = out[j][i] = max(k - 1, -1)
    return out


def cone_ideal(I: Ideal, extra_vars: int) -> Ideal:
    """The same generators in a ring with ``extra_vars`` more variables."""
    if extra_vars < 1:
        raise ValueError("extra_vars must be positive")
    big = I.ctx.extended(extra_vars)
    pad = (0,) * extra_vars
    gens = [Polynomial._from_clean(big, {m + pad: c for m, c in g._d.items()}) for g in I.generators]
    return Ideal(big, gens, saturated=I.saturated)


def point_ideal(v, ctx: RingContext) -> Ideal:
    """Ideal of the single point [v]."""
    v = np.asarray(v, dtype=np.int64).reshape(1, -1) % ctx.char_p
    if v.shape[1] != ctx.num_vars:
        raise ValueError(f"point needs {ctx.num_vars} coordinates")
    if not v.any():
        raise ValueError("the zero vector is not a projective point")
    N = _kernels.nullspace_mod_p(v, ctx.char_p)
    return Ideal(ctx, forms_from_matrix(N, ctx), saturated=True)


def points_ideal(points, ctx: RingContext) -> Ideal:
    """Ideal of a finite set of distinct projective points."""
    pts = [np.asarray(v, dtype=np.int64) % ctx.char_p for v in points]
    if not pts:
        raise ValueError("no points given")
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if _kernels.rank_mod_p(np.vstack([pts[a], pts[b]]), ctx.char_p) < 2:
                raise ValueError(f"points {a} and {b} coincide in P^{ctx.ambient_n}")
    out = reduce(intersect, [point_ideal(v, ctx) for v in pts])
    out.saturated = True
    return out
