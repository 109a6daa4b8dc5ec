import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmreg.groebner import (
    FreeModuleElement,
    GroebnerBasis,
    NonHomogeneousError,
    buchberger,
    is_groebner_basis,
    normal_form,
    syzygy_basis,
    syzygy_groebner_basis,
)
from cmreg.ring import LEX, RingContext
from oracles import sympy_groebner
from strategies import contexts, homogeneous_generators, polynomials

TWISTED_CUBIC = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


def gb(ctx, texts):
    return buchberger([ctx.parse(t) for t in texts], ctx)


def test_normal_form_membership(P2):
    G = gb(P2, ["x0"])
    assert normal_form(P2.parse("x0^2"), G).is_zero()
    assert normal_form(P2.parse("x1^2"), G) == P2.parse("x1^2")


def test_normal_form_one_step(P2):
    # x0*x2 leads only under lex; grevlex puts x1^2 first
    lex = P2.with_order(LEX)
    G = gb(lex, ["x0*x2 - x1^2"])
    assert normal_form(lex.parse("x0*x2"), G) == lex.parse("x1^2")
    G = gb(P2, ["x0*x2 - x1^2"])
    assert normal_form(P2.parse("x1^2"), G) == P2.parse("x0*x2")


def test_monomial_ideal_is_its_own_basis(P2):
    G = gb(P2, ["x0", "x1"])
    assert set(G.elements) == {P2.var(0), P2.var(1)}


def test_twisted_cubic_basis_is_input(P3):
    G = gb(P3, TWISTED_CUBIC)
    assert {g.monic() for g in G.elements} == {P3.parse(t).monic() for t in TWISTED_CUBIC}
    assert sorted(G.lead_monomials) == sorted([(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)])


def test_chain_produces_cubic():
    ctx = RingContext(2)
    G = gb(ctx, ["x0^2", "x0*x1 + x1^2"])
    assert ctx.parse("x1^3") in G.elements


def test_unit_and_inhomogeneous(P2):
    assert gb(P2, ["x0", "1"]).is_unit()
    with pytest.raises(NonHomogeneousError):
        gb(P2, ["x0 + x1^2"])


def test_output_sorted_and_monic(P3):
    G = gb(P3, TWISTED_CUBIC + ["x0^3"])
    keys = [P3.order.key(m) for m in G.lead_monomials]
    assert keys == sorted(keys, reverse=True)
    assert all(g.lead_coefficient == 1 for g in G.elements)


# ---------------------------------------------------------------- syzygies


def test_koszul_syzygy(P2):
    syz = syzygy_basis(gb(P2, ["x0", "x1"]))
    assert len(syz) == 1
    s = syz[0].components
    assert s[0] * P2.var(0) + s[1] * P2.var(1) == P2.zero()
    assert {s[0].monic(), s[1].monic()} == {P2.var(0), P2.var(1)}


def test_principal_has_no_syzygies(P2):
    assert syzygy_basis(gb(P2, ["x0"])) == []


def test_regular_sequence_single_syzygy(P2):
    G = gb(P2, ["x2", "x0*x1"])
    syz = syzygy_basis(G)
    assert len(syz) == 1
    images = list(G.elements)
    assert syz[0].apply(images).is_zero()
    assert syz[0].degree == 3


def test_module_normal_form(P2):
    G = gb(P2, ["x0", "x1", "x2"])
    S = syzygy_groebner_basis(G)
    for s in S.elements:
        assert normal_form(s, S).is_zero()
    z = FreeModuleElement(tuple(P2.zero() for _ in range(3)), (1, 1, 1))
    assert normal_form(z, S).is_zero()


# ---------------------------------------------------------------- properties


@given(st.data())
def test_random_bases_match_sympy(data):
    ctx = data.draw(contexts(min_vars=2, max_vars=4, primes=(7, 32003)))
    gens = data.draw(homogeneous_generators(ctx, max_gens=3, max_deg=3))
    G = buchberger(gens, ctx)
    ours = {frozenset(g.as_dict().items()) for g in G.elements}
    assert ours == sympy_groebner(gens, ctx.num_vars, ctx.char_p)


@given(st.data())
def test_spairs_reduce_and_generators_vanish(data):
    ctx = data.draw(contexts(min_vars=2, max_vars=5))
    gens = data.draw(homogeneous_generators(ctx))
    G = buchberger(gens, ctx)
    assert is_groebner_basis(G)
    for g in gens:
        assert normal_form(g, G).is_zero()


@given(st.data())
def test_normal_form_idempotent(data):
    ctx = data.draw(contexts(min_vars=2, max_vars=4))
    G = buchberger(data.draw(homogeneous_generators(ctx)), ctx)
    f = data.draw(polynomials(ctx))
    r = normal_form(f, G)
    assert normal_form(r, G) == r
    leads = G.lead_monomials
    assert not any(all(a >= b for a, b in zip(m, l)) for m in r.monomials() for l in leads)


@given(st.data())
def test_syzygy_soundness(data):
    ctx = data.draw(contexts(min_vars=2, max_vars=4))
    G = buchberger(data.draw(homogeneous_generators(ctx, max_gens=3)), ctx)
    for s in syzygy_basis(G):
        assert s.apply(list(G.elements)).is_zero()
        assert s.degree is not None


def test_non_basis_detected(P2):
    fake = GroebnerBasis(P2, (P2.parse("x0^2"), P2.parse("x0*x1 + x1^2")))
    assert not is_groebner_basis(fake)
