"""Ordinals below omega^(omega^omega) in Cantor normal form.

An :class:`Ordinal` is a most-significant-first tuple of ``(exponent,
coefficient)`` terms, the exponents being ordinals themselves.  Python's
comparison and ``+``/``*`` operators follow ordinal arithmetic.

The module also carries the Hausdorff-rank bound combinators used to bound
ranks of sums, generalized sums, products, geometric sums and unions of
scattered orderings.  Only bounds are provided; no exact rank is computed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import InputError, ParseError


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((e, int(c)) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        prev = None
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise InputError(f"exponent {e!r} is not an Ordinal")
            if c < 1:
                raise InputError(f"coefficient {c} must be positive")
            if prev is not None and cnf_compare(prev, e) <= 0:
                raise InputError("exponents must be strictly decreasing")
            prev = e

    # -- constructors --------------------------------------------------
    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise InputError("ordinals are nonnegative")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_to(cls, exponent, coefficient: int = 1) -> "Ordinal":
        return cls(((to_ordinal(exponent), coefficient),))

    # -- queries -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    @property
    def finite_part(self) -> int:
        if self.terms and not self.terms[-1][0]:
            return self.terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise InputError("zero has no leading exponent")
        return self.terms[0][0]

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.finite_part == 0

    def __int__(self):
        if not self.is_finite:
            raise InputError(f"{self} is infinite")
        return self.finite_part

    def nesting_depth(self) -> int:
        if not self.terms:
            return 0
        return 1 + max(e.nesting_depth() for e, _ in self.terms)

    # -- operators -----------------------------------------------------
    def __lt__(self, other):
        other = to_ordinal(other)
        return cnf_compare(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        return cnf_add(self, to_ordinal(other))

    def __radd__(self, other):
        return cnf_add(to_ordinal(other), self)

    def __mul__(self, other):
        return cnf_mul(self, to_ordinal(other))

    def __rmul__(self, other):
        return cnf_mul(to_ordinal(other), self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("only finite exponents are supported")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def to_ordinal(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise InputError(f"cannot interpret {x!r} as an ordinal")


def cnf_compare(a: Ordinal, b: Ordinal) -> int:
    """Return -1, 0 or 1 as ``a`` is below, equal to or above ``b``."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cnf_compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def cnf_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead, lead_c = b.terms[0]
    kept = []
    for e, c in a.terms:
        cmp = cnf_compare(e, lead)
        if cmp > 0:
            kept.append((e, c))
        elif cmp == 0:
            lead_c += c
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead, lead_c),) + b.terms[1:])


def cnf_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    a_lead, a_c = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.terms:
            piece = Ordinal(((cnf_add(a_lead, e), c),))
        else:
            piece = Ordinal(((a_lead, a_c * c),) + a.terms[1:])
        out = cnf_add(out, piece)
    return out


def omega_pow(a: Ordinal) -> Ordinal:
    """``a ** omega``, i.e. the order type of the geometric sum of ``a``.

    ``omega_pow(0)`` is 1 by convention (the geometric sum starts at a^0).
    """
    if not a.terms or a == ONE:
        return ONE
    if a.is_finite:
        return OMEGA
    return Ordinal.omega_to(cnf_mul(a.leading_exponent, OMEGA))


def tower(n: int) -> Ordinal:
    """omega^(omega^n)."""
    return Ordinal.omega_to(Ordinal.omega_to(n))


def is_below_tower(a: Ordinal, n: int) -> bool:
    if n < 1:
        raise InputError("tower height must be at least 1")
    return a < tower(n)


def is_below_omega_omega_omega(a: Ordinal) -> bool:
    """True iff ``a`` < omega^(omega^omega): every exponent of every exponent
    is finite."""
    return all(all(ee.is_finite for ee, _ in e.terms) for e, _ in a.terms)


# -- Hausdorff-rank bounds ------------------------------------------------

def m_alpha(a: Ordinal) -> int:
    """1 for zero and limits; otherwise one more than the trailing finite part."""
    return a.finite_part + 1


def rank_of_omega_power(exponent: Ordinal) -> Ordinal:
    """The rank of omega^exponent is the exponent itself."""
    return exponent


def rank_sum_bound(ranks: Sequence[Ordinal]) -> tuple[Ordinal, Ordinal]:
    """Bounds ``(max, max + 1)`` on the rank of a finite sum."""
    ranks = [to_ordinal(r) for r in ranks]
    if not ranks:
        raise InputError("rank_sum_bound needs at least one summand")
    top = max(ranks)
    return top, top + 1


def rank_gensum_bound(inner: Ordinal, outer: Ordinal) -> Ordinal:
    """Summands of rank <= inner indexed by an ordering of rank outer."""
    return cnf_add(inner, outer)


def rank_product_bound(q: Ordinal, p: Ordinal) -> Ordinal:
    """Rank bound for the product Q x P (P copies of Q)."""
    return cnf_add(q, p)


def rank_geometric_bound(a: Ordinal) -> Ordinal:
    if not a.terms:
        raise InputError("the geometric-sum bound needs a positive rank")
    return cnf_mul(a, OMEGA)


def rank_union_bound(a: Ordinal, b: Ordinal) -> Ordinal:
    left = a + b + m_alpha(b)
    right = b + a + m_alpha(a)
    return min(left, right)


# -- literal syntax ---------------------------------------------------------

def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        else:
            exp = format_ordinal(e)
            base = f"w^({exp})" if ("+" in exp or "*" in exp) else f"w^{exp}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([wω])|(\S))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        out.append(m.group(1) or ("w" if m.group(2) else m.group(3)))
        pos = m.end()
    return out


def parse_ordinal(text: str) -> Ordinal:
    """Parse literals such as ``w^(w*2+1)*3 + w^2 + 5``.

    ``^`` binds tighter than ``*``, which binds tighter than ``+``.  Powers
    need base ``w`` or a finite exponent.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty ordinal literal")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a term'} in {text!r}, got {tok!r}")
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() == "+":
            take("+")
            val = val + term()
        return val

    def term():
        val = factor()
        while peek() in ("*", "·"):
            take()
            val = val * factor()
        return val

    def factor():
        base_is_w = peek() == "w"
        val = atom()
        if peek() == "^":
            take("^")
            exp = factor()
            if base_is_w:
                return Ordinal.omega_to(exp)
            if exp.is_finite:
                return val ** int(exp)
            raise ParseError(f"only w may be raised to an infinite power in {text!r}")
        return val

    def atom():
        tok = take()
        if tok == "w":
            return OMEGA
        if tok.isdigit():
            return Ordinal.of(int(tok))
        if tok == "(":
            val = expr()
            take(")")
            return val
        raise ParseError(f"unexpected {tok!r} in {text!r}")

    val = expr()
    if peek() is not None:
        raise ParseError(f"trailing input {toks[pos:]} in {text!r}")
    return val


def ordinals(values: Iterable) -> list[Ordinal]:
    return [to_ordinal(v) for v in values]
