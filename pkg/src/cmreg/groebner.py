"""Groebner bases of homogeneous ideals and Schreyer syzygies.

Polynomials are handled internally as ``{monomial: coeff}`` dicts and module
elements as ``{(component, monomial): coeff}`` dicts; the public functions
wrap them in :class:`~cmreg.ring.Polynomial` and :class:`FreeModuleElement`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .ring import (
    ContextMismatch,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingContext,
    is_homogeneous,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class NonHomogeneousError(ValueError):
    pass


class NotAGroebnerBasis(ValueError):
    pass


@dataclass(frozen=True)
class FreeModuleElement:
    """Element of the graded free module S(-twists[0]) + ... + S(-twists[r-1])."""

    components: tuple[Polynomial, ...]
    twists: tuple[int, ...]

    def __post_init__(self):
        if len(self.components) != len(self.twists):
            raise ValueError("components and twists differ in length")
        ctxs = {c.ctx for c in self.components}
        if len(ctxs) > 1:
            raise ContextMismatch("components live in different rings")

    @property
    def ctx(self) -> RingContext:
        return self.components[0].ctx

    @property
    def degree(self) -> int | None:
        """Common value of deg(component) + twist, None for the zero element."""
        degs = set()
        for c, t in zip(self.components, self.twists):
            h = is_homogeneous(c)
            if not h:
                raise NonHomogeneousError("module element has an inhomogeneous component")
            if h.degree is not None:
                degs.add(h.degree + t)
        if len(degs) > 1:
            raise NonHomogeneousError("module element is not homogeneous")
        return degs.pop() if degs else None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def to_dict(self) -> dict:
        return {(i, m): c for i, comp in enumerate(self.components) for m, c in comp._d.items()}

    @classmethod
    def from_dict(cls, d: dict, ctx: RingContext, twists: Sequence[int]) -> "FreeModuleElement":
        comps: list[dict] = [{} for _ in twists]
        for (i, m), c in d.items():
            comps[i][m] = c
        return cls(tuple(Polynomial(ctx, c) for c in comps), tuple(twists))

    def apply(self, images: Sequence[Polynomial]) -> Polynomial:
        """Image under the map sending basis vector i to ``images[i]``."""
        out = self.ctx.zero()
        for comp, g in zip(self.components, images):
            if comp:
                out = out + comp * g
        return out


class SchreyerOrder:
    """Module order on a free module whose basis vectors carry lead data.

    Basis vector i is compared through ``totals[i]`` (the product of lead
    monomials down to the ring) and ``paths[i]`` (negated indices, so a smaller
    index wins ties).  With a single basis vector of total 1 and empty path this
    is just the ring order.
    """

    def __init__(self, base: MonomialOrder, totals: Sequence[Monomial], paths: Sequence[tuple]):
        self.base = base
        self.totals = list(totals)
        self.paths = list(paths)
        self._memo: dict = {}

    @classmethod
    def ring(cls, ctx: RingContext) -> "SchreyerOrder":
        return cls(ctx.order, [(0,) * ctx.num_vars], [()])

    def key(self, term):
        k = self._memo.get(term)
        if k is None:
            i, m = term
            k = (self.base.key(mono_mul(m, self.totals[i])), self.paths[i])
            self._memo[term] = k
        return k

    def induced(self, leads: Sequence[tuple[int, Monomial]]) -> "SchreyerOrder":
        """Order on the free module with one basis vector per element of ``leads``."""
        totals = [mono_mul(self.totals[c], m) for c, m in leads]
        paths = [self.paths[c] + (-i,) for i, (c, _) in enumerate(leads)]
        return SchreyerOrder(self.base, totals, paths)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; polynomial elements unless ``module_order`` is set."""

    ctx: RingContext
    elements: tuple = ()
    module_order: SchreyerOrder | None = field(default=None, compare=False)

    @property
    def is_module(self) -> bool:
        return self.module_order is not None

    @property
    def lead_monomials(self) -> list[Monomial]:
        return [g.lead_monomial for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.elements)


# ------------------------------------------------------------ polynomial engine


def _lead(f: dict, key) -> Monomial:
    return max(f, key=key)


def reduce_dict(f: dict, basis: Sequence[tuple[Monomial, int, dict]], key, p: int) -> dict:
    """Full reduction of ``f`` by ``basis`` entries (lead, inverse lead coeff, poly)."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, inv, g in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                s = c * inv % p
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(q, gm))
                    v = (f.get(t, 0) - s * gc) % p
                    if v:
                        f[t] = v
                    else:
                        del f[t]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(f: dict, key, p: int) -> dict:
    lm = max(f, key=key)
    inv = pow(f[lm], -1, p)
    return {m: c * inv % p for m, c in f.items()}


def _spoly(f: dict, g: dict, lf: Monomial, lg: Monomial, p: int) -> dict:
    # both f and g are monic
    lcm = mono_lcm(lf, lg)
    qf = mono_div(lcm, lf)
    qg = mono_div(lcm, lg)
    out: dict = {}
    for m, c in f.items():
        out[mono_mul(qf, m)] = c
    for m, c in g.items():
        t = mono_mul(qg, m)
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def groebner_dicts(polys: Sequence[dict], ctx: RingContext) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by decreasing lead) of raw dicts.

    Homogeneity is not required; the intersection routine relies on that.
    """
    key = ctx.order.key
    p = ctx.char_p
    zero_mono = (0,) * ctx.num_vars
    G: list[dict] = []
    leads: list[Monomial] = []
    pending: set[tuple[int, int]] = set()
    heap: list = []

    def push(i, j):
        lcm = mono_lcm(leads[i], leads[j])
        pending.add((i, j))
        heapq.heappush(heap, (sum(lcm), key(lcm), i, j))

    def add(f):
        f = _monic(f, key, p)
        G.append(f)
        leads.append(_lead(f, key))
        j = len(G) - 1
        for i in range(j):
            push(i, j)

    for f in polys:
        if f:
            add(dict(f))
    if any(lm == zero_mono for lm in leads):
        return [{zero_mono: 1}]

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = mono_lcm(li, lj)
        if _chain_criterion(i, j, lcm, leads, pending):
            continue
        s = _spoly(G[i], G[j], li, lj, p)
        basis = [(leads[k], 1, G[k]) for k in range(len(G))]
        r = reduce_dict(s, basis, key, p)
        if r:
            add(r)
            if leads[-1] == zero_mono:
                return [{zero_mono: 1}]
    return _interreduce(G, leads, key, p)


def _chain_criterion(i, j, lcm, leads, pending) -> bool:
    for k in range(len(leads)):
        if k == i or k == j:
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        if mono_divides(leads[k], lcm):
            return True
    return False


def _interreduce(G: list[dict], leads: list[Monomial], key, p: int) -> list[dict]:
    keep = []
    for i, li in enumerate(leads):
        redundant = False
        for j, lj in enumerate(leads):
            if j == i:
                continue
            if mono_divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        basis = [(leads[k], 1, G[k]) for k in keep if k != i]
        tail = {m: c for m, c in G[i].items() if m != leads[i]}
        r = reduce_dict(tail, basis, key, p)
        r[leads[i]] = 1
        out.append(r)
    out.sort(key=lambda f: key(_lead(f, key)), reverse=True)
    return out


# ------------------------------------------------------------ public polynomial API


def _check_ctx(polys: Sequence[Polynomial], ctx: RingContext | None = None) -> RingContext:
    ctxs = {f.ctx for f in polys}
    if ctx is not None:
        ctxs.add(ctx)
    if len(ctxs) > 1:
        raise ContextMismatch("inputs live in different rings")
    if not ctxs:
        raise ValueError("cannot infer a ring from an empty input")
    return ctxs.pop()


def buchberger(gens: Sequence[Polynomial], ctx: RingContext | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by homogeneous ``gens``.

    Pairs are processed lowest lcm degree first, pruned by the coprime-lead and
    chain criteria, and the result is inter-reduced and monic.
    """
    ctx = _check_ctx(gens, ctx)
    for g in gens:
        if not is_homogeneous(g):
            raise NonHomogeneousError(f"generator {g} is not homogeneous")
    G = groebner_dicts([g._d for g in gens], ctx)
    return GroebnerBasis(ctx, tuple(Polynomial._from_clean(ctx, g) for g in G))


def normal_form(f, G: GroebnerBasis):
    """Remainder of ``f`` on division by ``G``; no remaining term is divisible by a lead term."""
    if isinstance(f, FreeModuleElement):
        return _module_normal_form(f, G)
    if f.ctx != G.ctx:
        raise ContextMismatch("polynomial and basis live in different rings")
    if G.is_module:
        raise TypeError("polynomial reduced against a module basis")
    key = G.ctx.order.key
    p = G.ctx.char_p
    basis = [(g.lead_monomial, pow(g.lead_coefficient, -1, p), g._d) for g in G.elements]
    return Polynomial._from_clean(G.ctx, reduce_dict(f._d, basis, key, p))


def _module_normal_form(f: FreeModuleElement, G: GroebnerBasis) -> FreeModuleElement:
    if not G.is_module:
        raise TypeError("module element reduced against a polynomial basis")
    if f.ctx != G.ctx:
        raise ContextMismatch("element and basis live in different rings")
    order = G.module_order
    p = G.ctx.char_p
    basis = module_basis([g.to_dict() for g in G.elements], order, p)
    _, rem = module_divide(f.to_dict(), basis, order, p)
    return FreeModuleElement.from_dict(rem, G.ctx, f.twists)


# ------------------------------------------------------------ module engine


def module_basis(elements: Sequence[dict], order: SchreyerOrder, p: int):
    out = []
    for g in elements:
        lt = max(g, key=order.key)
        out.append((lt[0], lt[1], pow(g[lt], -1, p), g))
    return out


def module_divide(f: dict, basis, order: SchreyerOrder, p: int) -> tuple[dict, dict]:
    """Divide module element ``f``; returns (quotients {(index, mono): c}, remainder)."""
    f = dict(f)
    quot: dict = {}
    rem: dict = {}
    key = order.key
    while f:
        t = max(f, key=key)
        c = f[t]
        comp, m = t
        for idx, (lc, lm, inv, g) in enumerate(basis):
            if lc == comp and mono_divides(lm, m):
                q = mono_div(m, lm)
                s = c * inv % p
                for (gc, gm), gv in g.items():
                    u = (gc, tuple(a + b for a, b in zip(q, gm)))
                    v = (f.get(u, 0) - s * gv) % p
                    if v:
                        f[u] = v
                    else:
                        del f[u]
                qk = (idx, q)
                quot[qk] = (quot.get(qk, 0) + s) % p
                break
        else:
            rem[t] = c
            del f[t]
    return {k: v for k, v in quot.items() if v}, rem


def schreyer_syzygies(elements: Sequence[dict], order: SchreyerOrder, p: int) -> list[dict]:
    """Syzygies of a module Groebner basis, forming a Groebner basis under the induced order.

    ``elements`` live in a free module ordered by ``order``.  The returned
    syzygies are dicts over the free module with one basis vector per element.
    For each i only the pairs (i, j), j > i, whose lcm quotient is a minimal
    generator of the quotient ideal are kept; these still form a Groebner basis
    of the syzygy module.
    """
    basis = module_basis(elements, order, p)
    out = []
    for i, (ci, li, invi, gi) in enumerate(basis):
        cands: list[tuple[Monomial, int]] = []
        for j in range(i + 1, len(basis)):
            cj, lj, _, _ = basis[j]
            if cj != ci:
                continue
            cands.append((mono_div(mono_lcm(li, lj), li), j))
        for mi, j in _minimal_quotients(cands):
            cj, lj, invj, gj = basis[j]
            lcm = mono_mul(mi, li)
            mj = mono_div(lcm, lj)
            # S-vector: mi/lc_i * g_i - mj/lc_j * g_j
            sv: dict = {}
            for (c, m), v in gi.items():
                sv[(c, mono_mul(mi, m))] = v * invi % p
            for (c, m), v in gj.items():
                u = (c, mono_mul(mj, m))
                w = (sv.get(u, 0) - v * invj) % p
                if w:
                    sv[u] = w
                else:
                    sv.pop(u, None)
            quot, rem = module_divide(sv, basis, order, p)
            if rem:
                raise NotAGroebnerBasis("an S-vector has a nonzero remainder")
            syz = {(i, mi): invi, (j, mj): (-invj) % p}
            for (k, q), v in quot.items():
                u = (k, q)
                w = (syz.get(u, 0) - v) % p
                if w:
                    syz[u] = w
                else:
                    syz.pop(u, None)
            out.append(syz)
    return out


def _minimal_quotients(cands: list[tuple[Monomial, int]]) -> list[tuple[Monomial, int]]:
    keep = []
    for a, (m, j) in enumerate(cands):
        ok = True
        for b, (m2, _) in enumerate(cands):
            if b == a:
                continue
            if mono_divides(m2, m) and (m2 != m or b < a):
                ok = False
                break
        if ok:
            keep.append((m, j))
    return keep


def syzygy_basis(G: GroebnerBasis) -> list[FreeModuleElement]:
    """Generators of the kernel of S(-d_1) + ... + S(-d_m) -> ideal, e_i -> g_i.

    Uses Schreyer's construction; the result is a Groebner basis of the syzygy
    module under the order induced by ``G``.
    """
    ctx = G.ctx
    order = SchreyerOrder.ring(ctx)
    elems = [{(0, m): c for m, c in g._d.items()} for g in G.elements]
    syz = schreyer_syzygies(elems, order, ctx.char_p)
    twists = tuple(g.degree for g in G.elements)
    return [FreeModuleElement.from_dict(s, ctx, twists) for s in syz]


def syzygy_groebner_basis(G: GroebnerBasis) -> GroebnerBasis:
    """Syzygies of ``G`` packaged as a module Groebner basis in the Schreyer order."""
    ctx = G.ctx
    order = SchreyerOrder.ring(ctx)
    leads = [(0, g.lead_monomial) for g in G.elements]
    return GroebnerBasis(ctx, tuple(syzygy_basis(G)), order.induced(leads))


def is_groebner_basis(G: GroebnerBasis) -> bool:
    """True iff every S-polynomial of ``G`` reduces to zero."""
    ctx = G.ctx
    key = ctx.order.key
    p = ctx.char_p
    els = [g.monic()._d for g in G.elements if g]
    leads = [_lead(g, key) for g in els]
    basis = [(leads[k], 1, els[k]) for k in range(len(els))]
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            s = _spoly(els[i], els[j], leads[i], leads[j], p)
            if reduce_dict(s, basis, key, p):
                return False
    return True
