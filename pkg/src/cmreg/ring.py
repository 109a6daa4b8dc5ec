"""Homogeneous polynomials over a prime field with dense exponent vectors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from ._kernels import MAX_PRIME

DEFAULT_PRIME = 32003

Monomial = tuple[int, ...]


class ContextMismatch(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.  ``key(m)`` is larger for larger monomials.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``; the elimination order
    compares the first ``block`` exponents by grevlex and breaks ties by
    grevlex on the remaining ones.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs block >= 1")

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        return (_grevlex_key(m[: self.block]), _grevlex_key(m[self.block :]))

    def __str__(self):
        return f"elimination({self.block})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


def elimination(block: int) -> MonomialOrder:
    return MonomialOrder("elim", block)


@dataclass(frozen=True)
class RingContext:
    """The ring GF(p)[x0, ..., x_{num_vars-1}] together with a monomial order."""

    num_vars: int
    char_p: int = DEFAULT_PRIME
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be at least 1")
        if not is_prime(self.char_p):
            raise ValueError(f"{self.char_p} is not prime")
        if self.char_p > MAX_PRIME:
            raise ValueError(f"characteristic must be below {MAX_PRIME + 1}")

    @property
    def ambient_n(self) -> int:
        """n for the projective space P^n with this coordinate ring."""
        return self.num_vars - 1

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: c})

    def var(self, i: int) -> "Polynomial":
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable x{i} out of range for {self.num_vars} variables")
        e = [0] * self.num_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.num_vars)]

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.num_vars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps}")
        return Polynomial(self, {exps: coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_order(self, order: MonomialOrder) -> "RingContext":
        return RingContext(self.num_vars, self.char_p, order)

    def extended(self, extra: int) -> "RingContext":
        return RingContext(self.num_vars + extra, self.char_p, self.order)


class Polynomial:
    """Immutable polynomial; terms are kept as a monomial -> coefficient map.

    Coefficients are residues in ``[0, p)``.  Iteration order of ``terms`` is
    the canonical one: strictly decreasing in the context's monomial order.
    """

    __slots__ = ("ctx", "_d", "_terms")

    def __init__(self, ctx: RingContext, terms: Mapping[Monomial, int]):
        p = ctx.char_p
        d = {}
        for m, c in terms.items():
            if len(m) != ctx.num_vars:
                raise ValueError(f"monomial {m} does not have {ctx.num_vars} exponents")
            c %= p
            if c:
                d[tuple(m)] = c
        self.ctx = ctx
        self._d = d
        self._terms = None

    @classmethod
    def _from_clean(cls, ctx: RingContext, d: dict) -> "Polynomial":
        # d must already be reduced mod p with no zero coefficients
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._d = d
        obj._terms = None
        return obj

    # -- views

    @property
    def terms(self) -> list[tuple[int, Monomial]]:
        if self._terms is None:
            key = self.ctx.order.key
            self._terms = [(self._d[m], m) for m in sorted(self._d, key=key, reverse=True)]
        return self._terms

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self._d)

    def monomials(self) -> list[Monomial]:
        return [m for _, m in self.terms]

    def coefficient(self, m: Monomial) -> int:
        return self._d.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    @property
    def lead_monomial(self) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no lead term")
        return self.terms[0][1]

    @property
    def lead_coefficient(self) -> int:
        if not self._d:
            raise ValueError("zero polynomial has no lead term")
        return self.terms[0][0]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._d), default=-1)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._d)

    def is_homogeneous(self) -> "Homogeneity":
        return is_homogeneous(self)

    # -- arithmetic

    def _check(self, other: "Polynomial"):
        if other.ctx != self.ctx:
            raise ContextMismatch("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return Polynomial._from_clean(self.ctx, poly_add(self._d, other._d, self.ctx.char_p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.char_p
        return Polynomial._from_clean(self.ctx, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return Polynomial._from_clean(
            self.ctx, poly_add_scaled(self._d, other._d, self.ctx.char_p - 1, self.ctx.char_p)
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.ctx.char_p
            c = other % p
            if not c:
                return self.ctx.zero()
            return Polynomial._from_clean(self.ctx, {m: v * c % p for m, v in self._d.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ctx.one()
        for _ in range(k):
            out = out * self
        return out

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self * pow(self.lead_coefficient, -1, self.ctx.char_p)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._d == other._d

    def __hash__(self):
        return hash((self.ctx, frozenset(self._d.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# -- raw dict helpers shared with the Groebner engine


def poly_add(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_add_scaled(a: dict, b: dict, s: int, p: int) -> dict:
    """a + s*b."""
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + s * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def dict_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (out.get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ctx != g.ctx:
        raise ContextMismatch("polynomials live in different rings")
    return Polynomial._from_clean(f.ctx, dict_mul(f._d, g._d, f.ctx.char_p))


@dataclass(frozen=True)
class Homogeneity:
    """Result of a homogeneity test; truthy iff homogeneous.

    ``degree`` is None for the zero polynomial, which is homogeneous of every
    degree.
    """

    homogeneous: bool
    degree: int | None

    def __bool__(self):
        return self.homogeneous


def is_homogeneous(f: Polynomial) -> Homogeneity:
    degs = {sum(m) for m in f._d}
    if not degs:
        return Homogeneity(True, None)
    if len(degs) == 1:
        return Homogeneity(True, degs.pop())
    return Homogeneity(False, None)


# -- text format


def _format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    p = f.ctx.char_p
    out = []
    for c, m in f.terms:
        neg = c > p // 2
        mag = p - c if neg else c
        mono = _format_monomial(m)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def parse_polynomial(text: str, ctx: RingContext) -> Polynomial:
    """Parse ``text`` in the grammar ``term (('+'|'-') term)*``.

    A term is an optional integer followed by variables ``x<i>`` or
    ``x<i>^<e>``, optionally joined by ``*``.  Whitespace is ignored.
    """
    s = text
    n = len(s)
    pos = 0
    p = ctx.char_p
    out: dict = {}

    def skip():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        return int(s[start:pos])

    def read_term() -> tuple[int, list[int]]:
        nonlocal pos
        skip()
        coeff = 1
        exps = [0] * ctx.num_vars
        seen_any = False
        if pos < n and s[pos].isdigit():
            coeff = read_int()
            seen_any = True
            skip()
        while True:
            skip()
            if pos < n and s[pos] == "*":
                if not seen_any:
                    raise PolynomialSyntaxError("unexpected '*'", pos)
                pos += 1
                skip()
                if pos >= n or s[pos] != "x":
                    raise PolynomialSyntaxError("expected variable after '*'", pos)
            if pos < n and s[pos] == "x":
                vstart = pos
                pos += 1
                if pos >= n or not s[pos].isdigit():
                    raise PolynomialSyntaxError("expected variable index", pos)
                idx = read_int()
                if idx >= ctx.num_vars:
                    raise PolynomialSyntaxError(
                        f"variable x{idx} out of range for {ctx.num_vars} variables", vstart
                    )
                e = 1
                skip()
                if pos < n and s[pos] == "^":
                    pos += 1
                    skip()
                    if pos >= n or not s[pos].isdigit():
                        raise PolynomialSyntaxError("expected exponent", pos)
                    e = read_int()
                exps[idx] += e
                seen_any = True
                continue
            break
        if not seen_any:
            raise PolynomialSyntaxError("expected term", pos)
        return coeff, exps

    skip()
    if pos >= n:
        raise PolynomialSyntaxError("empty polynomial", pos)
    sign = 1
    if s[pos] in "+-":
        sign = -1 if s[pos] == "-" else 1
        pos += 1
    while True:
        coeff, exps = read_term()
        m = tuple(exps)
        out[m] = (out.get(m, 0) + sign * coeff) % p
        skip()
        if pos >= n:
            break
        if s[pos] not in "+-":
            raise PolynomialSyntaxError(f"unexpected character {s[pos]!r}", pos)
        sign = -1 if s[pos] == "-" else 1
        pos += 1
    return Polynomial(ctx, out)


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, d: int) -> tuple[Monomial, ...]:
    """All exponent vectors of total degree ``d``, in decreasing lex order."""
    if d < 0:
        return ()
    if num_vars == 1:
        return ((d,),)
    out = []
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, d - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(num_vars, d))}


@lru_cache(maxsize=64)
def monomial_array(num_vars: int, d: int) -> np.ndarray:
    return np.array(monomials_of_degree(num_vars, d), dtype=np.int64).reshape(-1, num_vars)
