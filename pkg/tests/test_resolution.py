from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmreg.ideal import Ideal
from cmreg.resolution import (
    MINUS_INFINITY,
    STATS,
    BettiTable,
    GradedMap,
    NonMinimalResolution,
    Resolution,
    betti_table,
    minimal_free_resolution,
    regularity,
    render_betti,
    verify_resolution,
)
from cmreg.ring import Polynomial, RingContext, monomials_of_degree
from oracles import degree_monomials, ideal_degree_piece_dim, koszul_betti, rank_mod_p
from strategies import contexts, homogeneous_generators


def ideal(ctx, *texts):
    return Ideal.from_strings(ctx, texts)


def betti(I):
    return dict(betti_table(minimal_free_resolution(I)).entries)


def test_principal():
    ctx = RingContext(2)
    assert betti(ideal(ctx, "x0")) == {(0, 1): 1}
    assert betti(ideal(RingContext(3), "x0^3 + x1*x2^2")) == {(0, 3): 1}


@pytest.mark.parametrize("nv", [2, 3, 4, 5])
def test_koszul_maximal_ideal(nv):
    ctx = RingContext(nv)
    I = Ideal(ctx, ctx.gens())
    assert betti(I) == {(i, i + 1): comb(nv, i + 1) for i in range(nv)}
    assert regularity(I) == 1


def test_regular_sequence_z_xy(P2):
    I = ideal(P2, "x2", "x0*x1")
    res = minimal_free_resolution(I)
    assert sorted(res.modules[0]) == [1, 2]
    assert res.modules[1] == (3,)
    assert res.length == 1
    assert regularity(I) == 2


def test_twisted_cubic(P3):
    I = ideal(P3, "x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")
    assert betti(I) == {(0, 2): 3, (1, 3): 2}
    assert regularity(I) == 2


def test_regularity_examples(P2):
    assert regularity(ideal(P2, "x0^2")) == 2
    assert regularity(Ideal.zero(P2)) == MINUS_INFINITY
    assert regularity(Ideal.unit(P2)) == 0
    # two coordinate points [1:0:0], [0:1:0]
    assert regularity(ideal(P2, "x2", "x0*x1")) == 2


def test_non_saturated_example(P2):
    I = ideal(P2, "x0^2", "x0*x1", "x0*x2")
    assert betti(I) == {(0, 2): 3, (1, 3): 3, (2, 4): 1}


def test_render_golden(P2):
    text = render_betti(betti_table(minimal_free_resolution(ideal(P2, "x2", "x0*x1"))))
    assert text == "   0 1\n1: 1 .\n2: 1 1"
    assert render_betti(BettiTable({})) == "(zero)"


def test_unit_entry_rejected(P2):
    x0 = P2.var(0)
    bad = GradedMap(P2, (1,), (1,), {(0, 0): P2.one()})
    res = Resolution(P2, (x0,), ((1,), (1,)), (bad,))
    with pytest.raises(NonMinimalResolution):
        betti_table(res)
    with pytest.raises(AssertionError):
        verify_resolution(Ideal(P2, [x0]), res)


def test_stats_count_verifications(P3):
    before = STATS["verified"]
    minimal_free_resolution(ideal(P3, "x0^2", "x1^2", "x2*x3"))
    assert STATS["verified"] == before + 1


# ---------------------------------------------------------------- exactness oracle


def _piece(d: GradedMap, e: int, nv: int, p: int):
    """Degree-e matrix of d, built from scratch on monomial bases."""
    tgt_off, src_off = [0], [0]
    for t in d.target_twists:
        tgt_off.append(tgt_off[-1] + len(degree_monomials(nv, e - t)) if e >= t else tgt_off[-1])
    for s in d.source_twists:
        src_off.append(src_off[-1] + len(degree_monomials(nv, e - s)) if e >= s else src_off[-1])
    rows = [[0] * src_off[-1] for _ in range(tgt_off[-1])]
    for c, s in enumerate(d.source_twists):
        if e < s:
            continue
        for ci, u in enumerate(degree_monomials(nv, e - s)):
            for r, t in enumerate(d.target_twists):
                f = d.entry(r, c)
                if not f:
                    continue
                idx = {m: k for k, m in enumerate(degree_monomials(nv, e - t))}
                for m, coef in f.as_dict().items():
                    row = tgt_off[r] + idx[tuple(a + b for a, b in zip(m, u))]
                    rows[row][src_off[c] + ci] = (rows[row][src_off[c] + ci] + coef) % p
    return rows


def assert_exact(I: Ideal, res: Resolution, degrees):
    ctx = I.ctx
    nv, p = ctx.num_vars, ctx.char_p
    aug = GradedMap(ctx, res.modules[0], (0,), {(0, c): g for c, g in enumerate(res.augmentation)})
    chain = [aug] + list(res.maps)
    for e in degrees:
        ranks = [rank_mod_p(_piece(d, e, nv, p), p) if d.source_twists else 0 for d in chain] + [0]
        # image of the augmentation is I_e
        assert ranks[0] == ideal_degree_piece_dim(list(I.generators), e, p)
        for k, twists in enumerate(res.modules):
            dim = sum(len(degree_monomials(nv, e - t)) for t in twists if e >= t)
            assert dim == ranks[k] + ranks[k + 1], f"not exact at F_{k} in degree {e}"


@settings(max_examples=20)
@given(st.data())
def test_random_resolutions_exact(data):
    ctx = data.draw(contexts(min_vars=2, max_vars=4))
    I = Ideal(ctx, data.draw(homogeneous_generators(ctx, max_gens=4, max_deg=2)))
    if I.is_zero():
        return
    res = minimal_free_resolution(I)
    assert res.length <= ctx.num_vars
    r = int(regularity(I))
    assert_exact(I, res, range(0, r + 2))


def test_random_regular_sequences_dense():
    rng = np.random.default_rng(7)
    for nv in (3, 4):
        ctx = RingContext(nv)
        for c in range(1, 4):
            degs = [int(x) for x in rng.integers(1, 4, size=c)]
            gens = []
            for d in degs:
                ms = monomials_of_degree(nv, d)
                gens.append(Polynomial(ctx, {m: int(v) for m, v in zip(ms, rng.integers(1, 32003, len(ms)))}))
            I = Ideal(ctx, gens)
            assert betti(I) == koszul_betti(degs)
            assert regularity(I) == sum(degs) - c + 1
