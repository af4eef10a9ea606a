"""Sum, product and geometric sum of schemes, and schemes for ordinals.

Every construction renames function variables apart with ``_k`` suffixes so
the output is deterministic and still parses as scheme text.  The
synthesizer also returns a :class:`Layout`, a description of how the frontier
is assembled, which decodes leaf addresses back to ordinals.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, OutOfRangeError
from .ordinal import (
    ONE,
    ZERO,
    Ordinal,
    cnf_add,
    cnf_mul,
    format_ordinal,
    is_below_omega_omega_omega,
    to_ordinal,
)
from .scheme import (
    DELTA,
    Call,
    Equation,
    Param,
    RecursionScheme,
    Sym,
    map_terms,
)


def _fresh(base: str, used: set) -> str:
    name, k = base, 1
    while name in used:
        name = f"{base}_{k}"
        k += 1
    used.add(name)
    return name


def _rename_apart(s: RecursionScheme, used: set) -> list[Equation]:
    mapping = {eq.name: _fresh(eq.name, used) for eq in s.equations}

    def ren(t):
        return Call(mapping[t.name], t.args) if isinstance(t, Call) else t

    return [Equation(mapping[eq.name], eq.arity, map_terms(eq.body, ren)) for eq in s.equations]


def _reserved(*schemes) -> set:
    used = set()
    for s in schemes:
        used.update(s.alphabet.symbols)
    return used


def scheme_sum(s1: RecursionScheme, s2: RecursionScheme) -> RecursionScheme:
    """Principal ``S = +(P1, P2)``; the frontier is Fr(s1) + Fr(s2)."""
    alphabet = DELTA.union(s1.alphabet).union(s2.alphabet)
    used = _reserved(s1, s2)
    principal = _fresh("S", used)
    left = _rename_apart(s1, used)
    right = _rename_apart(s2, used)
    head = Equation(principal, 0, Sym("+", (Call(left[0].name), Call(right[0].name))))
    return RecursionScheme(tuple([head] + left + right), alphabet)


def scheme_product(s1: RecursionScheme, s2: RecursionScheme) -> RecursionScheme:
    """Every leaf ``1`` of s1 becomes a copy of s2; the frontier is
    Fr(s2) x Fr(s1), i.e. ordinal ``Fr(s2) * Fr(s1)``."""
    alphabet = DELTA.union(s1.alphabet).union(s2.alphabet)
    used = _reserved(s1, s2)
    outer = _rename_apart(s1, used)
    inner = _rename_apart(s2, used)
    target = Call(inner[0].name)

    def plug(t):
        return target if isinstance(t, Sym) and t.name == "1" else t

    outer = [Equation(eq.name, eq.arity, map_terms(eq.body, plug)) for eq in outer]
    return RecursionScheme(tuple(outer + inner), alphabet)


def scheme_geometric(s: RecursionScheme) -> RecursionScheme:
    """Scheme for the geometric sum of Fr(s) over all powers.

    Each function variable gains a trailing parameter that replaces every
    ``1``; then ``G(x) = +(x, G(H(x)))`` and ``F0 = G(1)`` where ``H`` is the
    transformed principal.
    """
    alphabet = DELTA.union(s.alphabet)
    used = _reserved(s)
    body_eqs = _rename_apart(s, used)
    f0 = _fresh("F0", used)
    g = _fresh("G", used)
    out = []
    for eq in body_eqs:
        star = Param(eq.arity)

        def thread(t, star=star):
            if isinstance(t, Sym) and t.name == "1":
                return star
            if isinstance(t, Call):
                return Call(t.name, t.args + (star,))
            return t

        out.append(Equation(eq.name, eq.arity + 1, map_terms(eq.body, thread)))
    h = body_eqs[0].name
    x = Param(0)
    geq = Equation(g, 1, Sym("+", (x, Call(g, (Call(h, (x,)),)))))
    feq = Equation(f0, 0, Call(g, (Sym("1"),)))
    return RecursionScheme(tuple([feq, geq] + out), alphabet)


# -- canonical layouts ----------------------------------------------------------

class Layout:
    """How a synthesized frontier is assembled; ``value`` is its order type."""

    value: Ordinal

    def decode(self, word) -> Ordinal:
        """Position (as an ordinal) of the leaf at address ``word``."""
        word = tuple(str(c) for c in word)
        d, pos = self._parse(word, 0)
        if pos != len(word):
            raise InputError(f"{''.join(word)!r} is not a leaf address")
        return d

    def _parse(self, w, pos):  # pragma: no cover - abstract
        raise NotImplementedError

    def scheme(self) -> RecursionScheme:  # pragma: no cover - abstract
        raise NotImplementedError


def _need(w, pos, letter):
    if pos >= len(w) or w[pos] != letter:
        raise InputError("not a leaf address")
    return pos + 1


@dataclass(frozen=True)
class ZeroLayout(Layout):
    value: Ordinal = ZERO

    def _parse(self, w, pos):
        raise InputError("the empty ordering has no leaves")

    def scheme(self):
        return RecursionScheme((Equation("Z", 0, Call("Z")),))


@dataclass(frozen=True)
class FiniteLayout(Layout):
    n: int

    @property
    def value(self):
        return Ordinal.of(self.n)

    def _parse(self, w, pos):
        i = 0
        while i < self.n - 1 and pos < len(w) and w[pos] == "1":
            i += 1
            pos += 1
        if i < self.n - 1:
            pos = _need(w, pos, "0")
        return Ordinal.of(i), pos

    def scheme(self):
        t = Sym("1")
        for _ in range(self.n - 1):
            t = Sym("+", (Sym("1"), t))
        return RecursionScheme((Equation("N", 0, t),))


@dataclass(frozen=True)
class OmegaLayout(Layout):
    value: Ordinal = Ordinal.omega_to(ONE)

    def _parse(self, w, pos):
        i = 0
        while pos < len(w) and w[pos] == "1":
            i += 1
            pos += 1
        return Ordinal.of(i), _need(w, pos, "0")

    def scheme(self):
        return RecursionScheme((Equation("X", 0, Sym("+", (Sym("1"), Call("X")))),))


@dataclass(frozen=True)
class SumLayout(Layout):
    left: Layout
    right: Layout

    @property
    def value(self):
        return cnf_add(self.left.value, self.right.value)

    def _parse(self, w, pos):
        if pos < len(w) and w[pos] == "0":
            return self.left._parse(w, pos + 1)
        d, pos = self.right._parse(w, _need(w, pos, "1"))
        return cnf_add(self.left.value, d), pos

    def scheme(self):
        return scheme_sum(self.left.scheme(), self.right.scheme())


@dataclass(frozen=True)
class ProductLayout(Layout):
    """Copies of ``inner`` indexed by ``outer``; order type inner * outer."""

    outer: Layout
    inner: Layout

    @property
    def value(self):
        return cnf_mul(self.inner.value, self.outer.value)

    def _parse(self, w, pos):
        d_out, pos = self.outer._parse(w, pos)
        d_in, pos = self.inner._parse(w, pos)
        return cnf_add(cnf_mul(self.inner.value, d_out), d_in), pos

    def scheme(self):
        return scheme_product(self.outer.scheme(), self.inner.scheme())


@dataclass(frozen=True)
class GeometricLayout(Layout):
    """The sum of ``base`` to the n over all n, each power read most
    significant factor first."""

    base: Layout

    @property
    def value(self):
        from .ordinal import omega_pow
        return omega_pow(self.base.value)

    def _parse(self, w, pos):
        n = 0
        while pos < len(w) and w[pos] == "1":
            n += 1
            pos += 1
        pos = _need(w, pos, "0")
        p = self.base.value
        total = ZERO
        power = ONE
        powers = [ONE]
        for _ in range(n):
            power = cnf_mul(power, p)
            powers.append(power)
        for m in range(n):
            total = cnf_add(total, powers[m])
        for i in range(n):
            d, pos = self.base._parse(w, pos)
            total = cnf_add(total, cnf_mul(powers[n - 1 - i], d))
        return total, pos

    def scheme(self):
        return scheme_geometric(self.base.scheme())


def _repeat_sum(block: Layout, c: int) -> Layout:
    out = block
    for _ in range(c - 1):
        out = SumLayout(out, block)
    return out


def _power_layout(e: Ordinal) -> Layout:
    """Layout for omega^e, e >= 1 with finite exponents in its CNF."""
    factors = []
    for k, c in e.terms:
        block = OmegaLayout()
        for _ in range(int(k)):
            block = GeometricLayout(block)
        factors.extend([block] * c)
    out = factors[0]
    for f in factors[1:]:
        out = ProductLayout(outer=f, inner=out)
    return out


def ordinal_layout(a) -> Layout:
    """Canonical layout: CNF terms most significant first, sums and products
    associated to the left."""
    a = to_ordinal(a)
    if not is_below_omega_omega_omega(a):
        raise OutOfRangeError(f"{format_ordinal(a)} is not below w^w^w")
    if not a.terms:
        return ZeroLayout()
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(FiniteLayout(c))
        else:
            parts.append(_repeat_sum(_power_layout(e), c))
    out = parts[0]
    for p in parts[1:]:
        out = SumLayout(out, p)
    return out


def scheme_for_ordinal(a) -> RecursionScheme:
    """A scheme whose frontier has order type ``a`` (``a`` below w^w^w)."""
    return ordinal_layout(a).scheme()
