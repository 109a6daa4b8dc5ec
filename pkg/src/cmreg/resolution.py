"""Minimal graded free resolutions of ideals, Betti tables and regularity.

A resolution is built from a Schreyer frame (iterated syzygies of Groebner
bases, each level already a Groebner basis in the induced order) and then
pruned: every unit entry of a differential cancels one free summand from each
of two adjacent modules.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .groebner import SchreyerOrder, schreyer_syzygies
from .ideal import Ideal, hilbert_function
from .ring import Polynomial, RingContext, dict_mul, poly_add_scaled

MINUS_INFINITY = float("-inf")

# Every resolution built is checked for d^2 = 0, minimality and the
# Hilbert-series identity while this is set.
VERIFY_RESOLUTIONS = os.environ.get("CMREG_SKIP_CHECKS", "0") in ("", "0")
STATS: Counter = Counter()


class ResolutionInvariantError(AssertionError):
    """A resolution violated an identity that holds for every correct resolution."""


class NonMinimalResolution(ValueError):
    pass


@dataclass(frozen=True)
class GradedMap:
    """Homogeneous map F_source -> F_target; column c is the image of source basis vector c.

    Entry (r, c) is zero or homogeneous of degree source_twists[c] - target_twists[r].
    """

    ctx: RingContext
    source_twists: tuple[int, ...]
    target_twists: tuple[int, ...]
    entries: Mapping[tuple[int, int], Polynomial] = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_twists), len(self.source_twists)

    def entry(self, r: int, c: int) -> Polynomial:
        return self.entries.get((r, c)) or self.ctx.zero()

    def column(self, c: int) -> list[Polynomial]:
        return [self.entry(r, c) for r in range(len(self.target_twists))]

    def rows(self) -> list[list[Polynomial]]:
        return [[self.entry(r, c) for c in range(len(self.source_twists))] for r in range(len(self.target_twists))]

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other, where other maps into this map's source."""
        if other.target_twists != self.source_twists:
            raise ValueError("maps are not composable")
        p = self.ctx.char_p
        acc: dict = {}
        by_row: dict[int, list] = {}
        for (k, c), g in other.entries.items():
            by_row.setdefault(k, []).append((c, g))
        for (r, k), f in self.entries.items():
            for c, g in by_row.get(k, ()):
                acc[(r, c)] = poly_add_scaled(acc.get((r, c), {}), dict_mul(f._d, g._d, p), 1, p)
        ents = {rc: Polynomial._from_clean(self.ctx, d) for rc, d in acc.items() if d}
        return GradedMap(self.ctx, other.source_twists, self.target_twists, ents)

    def is_zero(self) -> bool:
        return all(not f for f in self.entries.values())

    def unit_entries(self) -> list[tuple[int, int]]:
        return [rc for rc, f in self.entries.items() if f and f.is_constant()]

    def is_homogeneous(self) -> bool:
        for (r, c), f in self.entries.items():
            deg = self.source_twists[c] - self.target_twists[r]
            if f and any(sum(m) != deg for m in f._d):
                return False
        return True


@dataclass(frozen=True)
class Resolution:
    """0 <- I <- F_0 <- F_1 <- ... <- F_L, with ``maps[k-1]`` the differential F_k -> F_{k-1}."""

    ctx: RingContext
    augmentation: tuple[Polynomial, ...]
    modules: tuple[tuple[int, ...], ...]
    maps: tuple[GradedMap, ...]

    @property
    def length(self) -> int:
        return len(self.maps)

    def free_rank(self, i: int) -> int:
        return len(self.modules[i]) if i < len(self.modules) else 0


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers: (homological index i, internal degree j) -> rank."""

    entries: Mapping[tuple[int, int], int]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def regularity(self):
        if not self.entries:
            return MINUS_INFINITY
        return max(j - i for i, j in self.entries)

    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def hilbert_function(self, num_vars: int, d: int) -> int:
        """Alternating sum of the free modules' Hilbert functions in degree d."""
        total = 0
        for (i, j), b in self.entries.items():
            if d - j >= 0:
                total += (-1) ** i * b * comb(num_vars - 1 + d - j, num_vars - 1)
        return total

    def render(self) -> str:
        return render_betti(self)


# ------------------------------------------------------------ construction


def _schreyer_frame(I: Ideal):
    """Levels of a (usually non-minimal) resolution: [(twists F_k, columns of d_k)]."""
    ctx = I.ctx
    nv, p = ctx.num_vars, ctx.char_p
    order = SchreyerOrder.ring(ctx)
    elements = [{(0, m): c for m, c in g._d.items()} for g in I.gb.elements]
    prev_twists = [0]
    levels = []
    level = 0
    while elements:
        if level > nv:
            raise ResolutionInvariantError("Schreyer frame longer than the number of variables")
        var = nv - 1 - (level % nv)
        leads = [max(e, key=order.key) for e in elements]
        perm = sorted(range(len(elements)), key=lambda i: (leads[i][0], -leads[i][1][var]))
        elements = [elements[i] for i in perm]
        leads = [leads[i] for i in perm]
        twists = [prev_twists[c] + sum(m) for c, m in leads]
        levels.append((twists, elements))
        syz = schreyer_syzygies(elements, order, p)
        order = order.induced(leads)
        prev_twists = twists
        elements = syz
        level += 1
    return levels


def _prune(levels, p: int):
    """Cancel unit entries; returns (augmentation dicts, twists per level, column maps)."""
    twists = [dict(enumerate(t)) for t, _ in levels]
    aug = {c: {m: v for (_, m), v in col.items()} for c, col in enumerate(levels[0][1])} if levels else {}
    # maps[k] for k >= 1: column c -> {row r: polydict}
    maps: list[dict] = [None]
    for _, cols in levels[1:]:
        mk = {}
        for c, col in enumerate(cols):
            ent: dict = {}
            for (r, m), v in col.items():
                ent.setdefault(r, {})[m] = v
            mk[c] = ent
        maps.append(mk)

    def row_index(mk):
        idx: dict = {}
        for c, ent in mk.items():
            for r in ent:
                idx.setdefault(r, set()).add(c)
        return idx

    rows = [None] + [row_index(mk) for mk in maps[1:]]

    for k in range(1, len(maps)):
        mk, rk = maps[k], rows[k]
        while True:
            unit = _find_unit(mk, twists[k], twists[k - 1])
            if unit is None:
                break
            r, c = unit
            col_c = mk[c]
            u = next(iter(col_c[r].values()))
            inv = pow(u, -1, p)
            for c2 in sorted(rk.get(r, ())):
                if c2 == c:
                    continue
                a = mk[c2][r]
                for r2, b in col_c.items():
                    if r2 == r:
                        continue
                    upd = poly_add_scaled(mk[c2].get(r2, {}), dict_mul(b, a, p), p - inv, p)
                    if upd:
                        if r2 not in mk[c2]:
                            rk.setdefault(r2, set()).add(c2)
                        mk[c2][r2] = upd
                    elif r2 in mk[c2]:
                        del mk[c2][r2]
                        rk[r2].discard(c2)
            # drop column c and row r of d_k
            for r2 in col_c:
                rk[r2].discard(c)
            del mk[c]
            for c2 in rk.pop(r, ()):
                mk[c2].pop(r, None)
            del twists[k][c]
            del twists[k - 1][r]
            # drop column r of d_{k-1} and row c of d_{k+1}
            if k == 1:
                del aug[r]
            else:
                for r2 in maps[k - 1].pop(r):
                    rows[k - 1][r2].discard(r)
            if k + 1 < len(maps):
                for c2 in rows[k + 1].pop(c, ()):
                    maps[k + 1][c2].pop(c, None)
    return aug, twists, maps


def _find_unit(mk: dict, src: dict, tgt: dict):
    for c in sorted(mk):
        ent = mk[c]
        for r in sorted(ent):
            if src[c] == tgt[r] and ent[r]:
                return r, c
    return None


def minimal_free_resolution(I: Ideal) -> Resolution:
    """Minimal graded free resolution of the ideal I (as an S-module); cached on I."""
    return I.memo("resolution", lambda: _compute_resolution(I))


def _compute_resolution(I: Ideal) -> Resolution:
    ctx = I.ctx
    if I.is_zero():
        return Resolution(ctx, (), (), ())
    levels = _schreyer_frame(I)
    aug, twists, maps = _prune(levels, ctx.char_p)
    # renumber surviving basis vectors level by level
    order = [sorted(t) for t in twists]
    pos = [{old: new for new, old in enumerate(o)} for o in order]
    modules = [tuple(twists[k][old] for old in order[k]) for k in range(len(order))]
    augmentation = tuple(Polynomial._from_clean(ctx, aug[old]) for old in order[0])
    graded = []
    for k in range(1, len(maps)):
        ents = {}
        for c_old, col in maps[k].items():
            for r_old, d in col.items():
                if d:
                    ents[(pos[k - 1][r_old], pos[k][c_old])] = Polynomial._from_clean(ctx, d)
        graded.append(GradedMap(ctx, modules[k], modules[k - 1], ents))
    while modules and not modules[-1]:
        modules.pop()
        if graded:
            graded.pop()
    res = Resolution(ctx, augmentation, tuple(modules), tuple(graded))
    STATS["resolutions"] += 1
    if VERIFY_RESOLUTIONS:
        verify_resolution(I, res)
    return res


# ------------------------------------------------------------ invariants


def verify_resolution(I: Ideal, res: Resolution) -> None:
    """Raise ResolutionInvariantError unless res is a minimal resolution of I."""
    ctx = I.ctx
    if res.length > ctx.num_vars:
        raise ResolutionInvariantError(f"resolution length {res.length} exceeds {ctx.num_vars}")
    for k, d in enumerate(res.maps, start=1):
        if not d.is_homogeneous():
            raise ResolutionInvariantError(f"differential d_{k} is not homogeneous")
        if d.unit_entries():
            raise ResolutionInvariantError(f"differential d_{k} has a unit entry")
    if res.augmentation:
        if any(not I.contains(g) for g in res.augmentation):
            raise ResolutionInvariantError("augmentation image is not inside the ideal")
        aug = GradedMap(ctx, res.modules[0], (0,), {(0, c): g for c, g in enumerate(res.augmentation)})
        chain = [aug] + list(res.maps)
        for k in range(len(chain) - 1):
            if not chain[k].compose(chain[k + 1]).is_zero():
                raise ResolutionInvariantError(f"d_{k} ∘ d_{k + 1} is nonzero")
        if any(g.is_constant() for g in res.augmentation) and len(res.augmentation) > 1:
            raise ResolutionInvariantError("unit ideal with redundant generators")
    table = _betti_from_modules(res)
    reg = table.regularity()
    top = 0 if reg == MINUS_INFINITY else int(reg) + ctx.num_vars + 2
    for d in range(top + 1):
        lhs = hilbert_function(I, d)
        rhs = table.hilbert_function(ctx.num_vars, d)
        if lhs != rhs:
            raise ResolutionInvariantError(
                f"Hilbert function mismatch in degree {d}: ideal has {lhs}, Betti table gives {rhs}"
            )
    STATS["verified"] += 1


def _betti_from_modules(res: Resolution) -> BettiTable:
    counts: Counter = Counter()
    for i, twists in enumerate(res.modules):
        for j in twists:
            counts[(i, j)] += 1
    return BettiTable(dict(sorted(counts.items())))


def betti_table(res: Resolution) -> BettiTable:
    for k, d in enumerate(res.maps, start=1):
        if d.unit_entries():
            raise NonMinimalResolution(f"d_{k} has a unit entry")
    return _betti_from_modules(res)


def regularity(I: Ideal):
    """max{j - i : β_ij ≠ 0}; MINUS_INFINITY for the zero ideal, 0 for the unit ideal."""
    if I.is_zero():
        return MINUS_INFINITY
    return betti_table(minimal_free_resolution(I)).regularity()


def render_betti(table: BettiTable) -> str:
    """Macaulay-style grid: columns are homological indices, rows are j - i."""
    if not table.entries:
        return "(zero)"
    top_i = max(i for i, _ in table.entries)
    shifts = [j - i for i, j in table.entries]
    lo, hi = min(shifts), max(shifts)
    labels = [f"{r}:" for r in range(lo, hi + 1)]
    lw = max(len(s) for s in labels)
    widths = []
    for i in range(top_i + 1):
        cells = [str(table[(i, r + i)]) for r in range(lo, hi + 1)]
        widths.append(max([len(str(i))] + [len(c) for c in cells]))
    lines = [" " * lw + " " + " ".join(str(i).rjust(w) for i, w in enumerate(widths))]
    for r, label in zip(range(lo, hi + 1), labels):
        cells = []
        for i, w in enumerate(widths):
            b = table[(i, r + i)]
            cells.append((str(b) if b else ".").rjust(w))
        lines.append(label.rjust(lw) + " " + " ".join(cells))
    return "\n".join(lines)
