"""Homogeneous ideals and the operations the regularity campaigns are built from."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .groebner import GroebnerBasis, NonHomogeneousError, buchberger, groebner_dicts, normal_form
from .ring import (
    ContextMismatch,
    Polynomial,
    RingContext,
    elimination,
    is_homogeneous,
    mono_div,
    mono_divides,
    monomial_array,
)


class Ideal:
    """A homogeneous ideal given by generators.

    The reduced Groebner basis is computed on first use and cached.  Two ideals
    compare equal iff they have the same reduced Groebner basis, i.e. iff they
    are the same ideal.
    """

    def __init__(self, ctx: RingContext, generators: Iterable[Polynomial] = (), *, saturated: bool | None = None):
        gens = []
        seen = set()
        for g in generators:
            if g.ctx != ctx:
                raise ContextMismatch(f"generator {g} lives in a different ring")
            if not g:
                continue
            if not is_homogeneous(g):
                raise NonHomogeneousError(f"generator {g} is not homogeneous")
            mg = g.monic()
            if mg in seen:
                continue
            seen.add(mg)
            gens.append(g)
        self.ctx = ctx
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.saturated = saturated
        self._memo: dict = {}

    @classmethod
    def from_strings(cls, ctx: RingContext, texts: Iterable[str]) -> "Ideal":
        return cls(ctx, [ctx.parse(t) for t in texts])

    @classmethod
    def unit(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, [ctx.one()])

    @classmethod
    def zero(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, [])

    @classmethod
    def irrelevant(cls, ctx: RingContext) -> "Ideal":
        return cls(ctx, ctx.gens(), saturated=False)

    @cached_property
    def gb(self) -> GroebnerBasis:
        if not self.generators:
            return GroebnerBasis(self.ctx, ())
        return buchberger(self.generators, self.ctx)

    def memo(self, key, compute):
        """Per-ideal cache used by downstream modules (resolution, cohomology)."""
        try:
            return self._memo[key]
        except KeyError:
            val = self._memo[key] = compute()
            return val

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Polynomial) -> bool:
        if f.ctx != self.ctx:
            raise ContextMismatch("polynomial lives in a different ring")
        if not f:
            return True
        if self.is_zero():
            return False
        return normal_form(f, self.gb).is_zero()

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ctx == other.ctx and self.gb.elements == other.gb.elements

    def __hash__(self):
        return hash((self.ctx, self.gb.elements))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return product(self, other)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({gens})"

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=-1)


def _same_ring(I: Ideal, J: Ideal):
    if I.ctx != J.ctx:
        raise ContextMismatch("ideals live in different rings")


def product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ctx, [f * g for f in I.generators for g in J.generators])


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ctx, I.generators + J.generators)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1 - t)*J."""
    _same_ring(I, J)
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ctx)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = RingContext(ctx.num_vars + 1, ctx.char_p, elimination(1))
    p = ctx.char_p
    polys = []
    for f in I.gb.elements:
        polys.append({(1,) + m: c for m, c in f._d.items()})
    for g in J.gb.elements:
        d = {}
        for m, c in g._d.items():
            d[(0,) + m] = c
            d[(1,) + m] = (p - c) % p
        polys.append(d)
    G = groebner_dicts(polys, big)
    gens = []
    for g in G:
        if all(m[0] == 0 for m in g):
            gens.append(Polynomial._from_clean(ctx, {m[1:]: c for m, c in g.items()}))
    sat = True if (I.saturated and J.saturated) else None
    return Ideal(ctx, gens, saturated=sat)


def _divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, raising if f does not divide g."""
    ctx = g.ctx
    p = ctx.char_p
    key = ctx.order.key
    lf = f.lead_monomial
    inv = pow(f.lead_coefficient, -1, p)
    rem = dict(g._d)
    quot: dict = {}
    while rem:
        m = max(rem, key=key)
        if not mono_divides(lf, m):
            raise ArithmeticError(f"{f} does not divide {g}")
        q = mono_div(m, lf)
        s = rem[m] * inv % p
        quot[q] = s
        for fm, fc in f._d.items():
            t = tuple(a + b for a, b in zip(q, fm))
            v = (rem.get(t, 0) - s * fc) % p
            if v:
                rem[t] = v
            else:
                del rem[t]
    return Polynomial._from_clean(ctx, quot)


def _colon_poly(I: Ideal, f: Polynomial) -> Ideal:
    if not f:
        return Ideal.unit(I.ctx)
    K = intersect(I, Ideal(I.ctx, [f]))
    return Ideal(I.ctx, [_divide_exact(g, f) for g in K.generators])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J = {f : f*J ⊆ I}, as the intersection of the colons by each generator of J."""
    _same_ring(I, J)
    if J.is_zero():
        return Ideal.unit(I.ctx)
    out = None
    for g in J.gb.elements:
        K = _colon_poly(I, g)
        out = K if out is None else intersect(out, K)
    return out


def saturate(I: Ideal) -> Ideal:
    """I : (x0, ..., xn)^∞ by iterated colon with the irrelevant ideal."""

    def compute():
        if I.saturated:
            return I
        m = Ideal.irrelevant(I.ctx)
        cur = I
        while True:
            nxt = colon(cur, m)
            if nxt.issubset(cur):
                break
            cur = nxt
        return Ideal(I.ctx, cur.gb.elements, saturated=True)

    return I.memo("saturation", compute)


def is_saturated(I: Ideal) -> bool:
    if I.saturated is None:
        I.saturated = colon(I, Ideal.irrelevant(I.ctx)).issubset(I)
    return I.saturated


def krull_dim(I: Ideal) -> int:
    """dim S/I: the largest set of variables containing the support of no lead monomial.

    The unit ideal gives -1.
    """
    nv = I.ctx.num_vars
    if I.is_zero():
        return nv
    if I.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in I.gb.lead_monomials]
    for size in range(nv, -1, -1):
        for subset in itertools.combinations(range(nv), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0  # pragma: no cover - the empty set is always independent here


def projective_dim(I: Ideal) -> int:
    """Dimension of the zero scheme of I in P^n; -1 for the empty scheme."""
    return max(krull_dim(I) - 1, -1)


def meets_in_finitely_many_points(I: Ideal, J: Ideal) -> bool:
    return krull_dim(ideal_sum(I, J)) <= 1


def hilbert_function(I: Ideal, d: int) -> int:
    """dim_k I_d, counted as the degree-d monomials of the initial ideal."""
    if d < 0 or I.is_zero():
        return 0
    monos = monomial_array(I.ctx.num_vars, d)
    leads = I.memo("lead_array", lambda: _lead_array(I))
    return _kernels.count_divisible(monos, leads)


def _lead_array(I: Ideal) -> np.ndarray:
    return np.array(I.gb.lead_monomials, dtype=np.int64).reshape(-1, I.ctx.num_vars)


def generators_in(I: Ideal, others: Sequence[Ideal]) -> bool:
    """True iff every generator of I lies in every ideal of ``others``."""
    return all(J.contains(g) for J in others for g in I.generators)
