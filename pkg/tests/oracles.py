"""Reference computations that share no code with the package under test."""

from __future__ import annotations

import itertools
from math import comb

import numpy as np
import sympy as sp


def line_bundle_h(n: int, i: int, d: int) -> int:
    """h^i(P^n, O(d)) by the closed formulas."""
    if i == 0:
        return comb(n + d, n) if d >= 0 else 0
    if i == n:
        return comb(-d - 1, n) if d <= -n - 1 else 0
    return 0


def sympy_groebner(gens, num_vars: int, p: int):
    """Reduced grevlex basis as a set of frozen {exponent: coeff mod p} maps."""
    xs = sp.symbols(f"x0:{num_vars}")
    exprs = [sum(c * sp.prod([x**e for x, e in zip(xs, m)]) for m, c in g.as_dict().items()) for g in gens]
    G = sp.groebner(exprs, *xs, modulus=p, order="grevlex")
    out = set()
    for g in G.exprs:
        poly = sp.Poly(g, *xs, modulus=p)
        terms = {m: int(c) % p for m, c in poly.terms()}
        lead = max(terms, key=lambda m: (sum(m), tuple(-e for e in reversed(m))))
        inv = pow(terms[lead], -1, p)
        out.add(frozenset((m, c * inv % p) for m, c in terms.items()))
    return out


def rank_mod_p(rows, p: int) -> int:
    """Plain Gaussian elimination on Python ints."""
    A = [[int(x) % p for x in r] for r in rows]
    if not A:
        return 0
    rank, cols = 0, len(A[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def degree_monomials(nv: int, d: int):
    return [m for m in itertools.product(range(d + 1), repeat=nv) if sum(m) == d]


def points_hilbert_function(points, d: int, p: int) -> int:
    """dim I_d for the ideal of the points: forms of degree d vanishing on all of them."""
    nv = len(points[0])
    monos = degree_monomials(nv, d)
    ev = [[int(np.prod([pow(int(v[k]), m[k], p) for k in range(nv)])) % p for m in monos] for v in points]
    return len(monos) - rank_mod_p(ev, p)


def ideal_degree_piece_dim(gens, d: int, p: int) -> int:
    """dim I_d as the span of monomial multiples of the generators, by rank."""
    nv = gens[0].ctx.num_vars
    monos = degree_monomials(nv, d)
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        dg = g.degree
        if dg > d:
            continue
        for u in degree_monomials(nv, d - dg):
            row = [0] * len(monos)
            for m, c in g.as_dict().items():
                row[index[tuple(a + b for a, b in zip(m, u))]] = c
            rows.append(row)
    return rank_mod_p(rows, p)


def koszul_betti(degrees):
    """Graded Betti numbers of an ideal generated by a regular sequence."""
    out = {}
    c = len(degrees)
    for k in range(1, c + 1):
        for sub in itertools.combinations(degrees, k):
            key = (k - 1, sum(sub))
            out[key] = out.get(key, 0) + 1
    return out
