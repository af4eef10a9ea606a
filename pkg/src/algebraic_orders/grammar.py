"""Context-free grammars over ordered terminal alphabets.

Covers the file format, normalization (empty-word, chain and useless-symbol
removal), bounded enumeration in lexicographic order, and the two
order-level closures: restriction to a lexicographic interval and reversal.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian

from .errors import InputError, ParseError, UndefinedSymbolError
from .words import BINARY, OrderedAlphabet, as_word

EPSILON = "ε"


@dataclass(frozen=True)
class Grammar:
    """``productions`` is a tuple of ``(lhs, rhs)`` with ``rhs`` a tuple of
    symbols; order is kept for stable output.  ``leaf_terminals`` marks the
    terminals that stand for tree leaves in translated grammars."""

    nonterminals: tuple
    terminals: OrderedAlphabet
    productions: tuple
    start: str
    leaf_terminals: frozenset = frozenset()

    def __post_init__(self):
        nts = tuple(dict.fromkeys(self.nonterminals))
        prods = tuple(dict.fromkeys((lhs, tuple(rhs)) for lhs, rhs in self.productions))
        object.__setattr__(self, "nonterminals", nts)
        object.__setattr__(self, "productions", prods)
        object.__setattr__(self, "leaf_terminals", frozenset(self.leaf_terminals))
        nset, tset = set(nts), set(self.terminals.symbols)
        if nset & tset:
            raise InputError(f"symbols used as both terminal and nonterminal: {sorted(nset & tset)}")
        if self.start not in nset:
            raise InputError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, rhs in prods:
            if lhs not in nset:
                raise UndefinedSymbolError(f"undeclared nonterminal {lhs!r}")
            for sym in rhs:
                if sym not in nset and sym not in tset:
                    raise UndefinedSymbolError(f"undeclared symbol {sym!r} in {lhs} -> {' '.join(rhs)}")
        if not self.leaf_terminals <= tset:
            raise InputError("leaf terminals must be terminals")

    def is_terminal(self, sym) -> bool:
        return sym in self._terminal_set

    @cached_property
    def _terminal_set(self) -> frozenset:
        return frozenset(self.terminals.symbols)

    @cached_property
    def rules(self) -> dict:
        out = {x: [] for x in self.nonterminals}
        for lhs, rhs in self.productions:
            out[lhs].append(rhs)
        return out

    @property
    def is_epsilon_free(self) -> bool:
        return all(rhs for _, rhs in self.productions)

    def with_productions(self, productions, nonterminals=None, start=None) -> "Grammar":
        prods = tuple(productions)
        if nonterminals is None:
            nonterminals = self.nonterminals
        return Grammar(tuple(nonterminals), self.terminals, prods,
                       self.start if start is None else start, self.leaf_terminals)

    def __str__(self):
        return format_grammar(self)


def empty_grammar(terminals: OrderedAlphabet = BINARY, start: str = "S") -> Grammar:
    return Grammar((start,), terminals, (), start)


def format_grammar(g: Grammar) -> str:
    lines = [f"terminals: {' < '.join(g.terminals.symbols)}", f"start: {g.start}"]
    silent = [x for x in g.nonterminals if not g.rules[x] and x != g.start]
    if silent:
        lines.append(f"nonterminals: {' '.join(silent)}")
    for x in g.nonterminals:
        alts = g.rules[x]
        if alts:
            lines.append(f"{x} -> " + " | ".join(" ".join(rhs) if rhs else EPSILON for rhs in alts))
    return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar:
    """Parse ``Name -> alt | alt`` lines with optional ``terminals: a < b``,
    ``start: S`` and ``nonterminals: A B`` headers; ``#`` starts a comment."""
    terminals = None
    start = None
    extra = []
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("terminals:"):
            syms = [s.strip() for s in line[len("terminals:"):].split("<")]
            if any(not s or " " in s for s in syms):
                raise ParseError(f"line {lineno}: expected 'terminals: a < b < ...'")
            terminals = OrderedAlphabet(tuple(syms))
            continue
        if line.startswith("start:"):
            start = line[len("start:"):].strip()
            if not start or " " in start:
                raise ParseError(f"line {lineno}: bad start declaration")
            continue
        if line.startswith("nonterminals:"):
            extra.extend(line[len("nonterminals:"):].split())
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'Name -> alternatives'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs or " " in lhs:
            raise ParseError(f"line {lineno}: bad left-hand side {lhs!r}")
        alts = []
        for alt in rhs.split("|"):
            toks = alt.split()
            if not toks:
                raise ParseError(f"line {lineno}: empty alternative (write {EPSILON} for the empty word)")
            if toks == [EPSILON]:
                toks = []
            elif EPSILON in toks:
                raise ParseError(f"line {lineno}: {EPSILON} must stand alone")
            alts.append(tuple(toks))
        rows.append((lhs, alts))
    if terminals is None:
        terminals = BINARY
    nts = [lhs for lhs, _ in rows] + extra
    if start is not None:
        nts.append(start)
    elif nts:
        start = nts[0]
    else:
        raise ParseError("grammar has no productions and no start symbol")
    prods = [(lhs, rhs) for lhs, alts in rows for rhs in alts]
    return Grammar(tuple(nts), terminals, tuple(prods), start)


# -- normalization ---------------------------------------------------------------

@dataclass(frozen=True)
class NormalizeReport:
    contains_empty: bool
    dropped: tuple
    empty_language: bool


def _nullable(g: Grammar) -> set:
    nullable = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


def _generating(g: Grammar, productions) -> set:
    gen = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in productions:
            if lhs not in gen and all(g.is_terminal(s) or s in gen for s in rhs):
                gen.add(lhs)
                changed = True
    return gen


def _reachable(start, productions, is_terminal) -> set:
    rules = defaultdict(list)
    for lhs, rhs in productions:
        rules[lhs].append(rhs)
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for rhs in rules[x]:
            for s in rhs:
                if not is_terminal(s) and s not in seen:
                    seen.add(s)
                    stack.append(s)
    return seen


def normalize(g: Grammar) -> tuple[Grammar, NormalizeReport]:
    """Return an equivalent grammar without empty productions, chain
    productions or useless nonterminals, and a report.

    The empty word, if derivable, cannot survive; ``report.contains_empty``
    says it was lost.  An empty language yields the canonical grammar with
    the start symbol and no productions.
    """
    nullable = _nullable(g)
    prods = []
    for lhs, rhs in g.productions:
        for choice in cartesian(*[((s,),) if s not in nullable else ((s,), ()) for s in rhs]):
            new = tuple(sym for part in choice for sym in part)
            if new:
                prods.append((lhs, new))
    prods = list(dict.fromkeys(prods))

    # unit pairs (X, Y): X =>* Y by chain productions
    unit = {x: {x} for x in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if len(rhs) == 1 and not g.is_terminal(rhs[0]):
                for x in g.nonterminals:
                    if lhs in unit[x] and rhs[0] not in unit[x]:
                        unit[x].add(rhs[0])
                        changed = True
    by_lhs = defaultdict(list)
    for lhs, rhs in prods:
        if not (len(rhs) == 1 and not g.is_terminal(rhs[0])):
            by_lhs[lhs].append(rhs)
    prods = []
    for x in g.nonterminals:
        for y in g.nonterminals:
            if y in unit[x]:
                prods.extend((x, rhs) for rhs in by_lhs[y])
    prods = list(dict.fromkeys(prods))

    gen = _generating(g, prods)
    prods = [(l, r) for l, r in prods if l in gen and all(g.is_terminal(s) or s in gen for s in r)]
    contains_empty = g.start in nullable
    if g.start not in gen:
        dropped = tuple(x for x in g.nonterminals if x != g.start)
        out = Grammar((g.start,), g.terminals, (), g.start, g.leaf_terminals)
        return out, NormalizeReport(contains_empty, dropped, True)
    reach = _reachable(g.start, prods, g.is_terminal)
    keep = [x for x in g.nonterminals if x in reach]
    prods = [(l, r) for l, r in prods if l in reach]
    dropped = tuple(x for x in g.nonterminals if x not in reach)
    out = Grammar(tuple(keep), g.terminals, tuple(prods), g.start, g.leaf_terminals)
    return out, NormalizeReport(contains_empty, dropped, False)


def normalized(g: Grammar) -> Grammar:
    return normalize(g)[0]


# -- enumeration --------------------------------------------------------------------

def language_table(g: Grammar, max_len: int) -> dict:
    """``{X: set of words of L(X) with length <= max_len}``, bottom-up by
    length.  Requires an epsilon-free grammar."""
    if not g.is_epsilon_free:
        raise InputError("enumeration needs an epsilon-free grammar; normalize first")
    by_len = {x: [set() for _ in range(max_len + 1)] for x in g.nonterminals}
    has_units = any(len(r) == 1 and not g.is_terminal(r[0]) for _, r in g.productions)

    def spell(rhs, i, remaining):
        """Words of length exactly ``remaining`` for rhs[i:]."""
        if i == len(rhs):
            if remaining == 0:
                yield ()
            return
        rest_min = len(rhs) - i - 1
        sym = rhs[i]
        if g.is_terminal(sym):
            if remaining >= 1:
                for tail in spell(rhs, i + 1, remaining - 1):
                    yield (sym,) + tail
            return
        for k in range(1, remaining - rest_min + 1):
            words = by_len[sym][k]
            if not words:
                continue
            tails = list(spell(rhs, i + 1, remaining - k))
            for w in words:
                for tail in tails:
                    yield w + tail

    for n in range(1, max_len + 1):
        while True:
            grew = False
            for lhs, rhs in g.productions:
                if len(rhs) > n:
                    continue
                bucket = by_len[lhs][n]
                for w in spell(rhs, 0, n):
                    if w not in bucket:
                        bucket.add(w)
                        grew = True
            if not (grew and has_units):
                break
    return {x: set().union(*rows) for x, rows in by_len.items()}


def enumerate_words(g: Grammar, max_len: int, nonterminal: str | None = None) -> list:
    """Words of L(g) (or of L(nonterminal)) up to ``max_len``, in lex order."""
    table = language_table(g, max_len)
    x = g.start if nonterminal is None else nonterminal
    return sorted(table[x], key=g.terminals.key)


# -- intersection with regular sets ---------------------------------------------

@dataclass(frozen=True)
class _Dfa:
    states: tuple
    start: object
    finals: frozenset
    delta: dict  # (state, terminal) -> state; missing means reject


_ABOVE, _BELOW = "above", "below"


def _half_line(word, alphabet: OrderedAlphabet, side: str, strict: bool) -> _Dfa:
    """Recognizer of ``{u : u >= word}`` (side ``lower``) or ``u <= word``
    (side ``upper``), strict when asked.  States: matched-positions
    ``0..len(word)`` plus two decided sinks."""
    word = as_word(word)
    for a in word:
        alphabet.index(a)
    n = len(word)
    delta = {}
    for i in range(n + 1):
        for a in alphabet.symbols:
            if i == n:
                delta[(i, a)] = _ABOVE  # proper extension
            elif a == word[i]:
                delta[(i, a)] = i + 1
            elif alphabet.index(a) < alphabet.index(word[i]):
                delta[(i, a)] = _BELOW
            else:
                delta[(i, a)] = _ABOVE
    for a in alphabet.symbols:
        delta[(_ABOVE, a)] = _ABOVE
        delta[(_BELOW, a)] = _BELOW
    if side == "lower":
        finals = {_ABOVE} | (set() if strict else {n})
    else:
        # a proper prefix of word is below it
        finals = {_BELOW} | set(range(n)) | (set() if strict else {n})
    return _Dfa(tuple(range(n + 1)) + (_ABOVE, _BELOW), 0, frozenset(finals), delta)


def intersect_regular(g: Grammar, dfa: _Dfa) -> Grammar:
    """Grammar for L(g) intersected with L(dfa), by the triple construction,
    normalized."""
    g = normalized(g)
    gen = defaultdict(set)  # (p, X) -> {q}

    def ends(p, rhs):
        cur = {p}
        for sym in rhs:
            nxt = set()
            for r in cur:
                if g.is_terminal(sym):
                    q = dfa.delta.get((r, sym))
                    if q is not None:
                        nxt.add(q)
                else:
                    nxt |= gen[(r, sym)]
            cur = nxt
            if not cur:
                break
        return cur

    changed = True
    while changed:
        changed = False
        for p in dfa.states:
            for lhs, rhs in g.productions:
                for q in ends(p, rhs):
                    if q not in gen[(p, lhs)]:
                        gen[(p, lhs)].add(q)
                        changed = True

    def name(p, x, q):
        return f"<{p},{x},{q}>"

    def paths(p, rhs, q):
        """All symbol sequences for rhs from p to q."""
        if not rhs:
            if p == q:
                yield ()
            return
        sym, rest = rhs[0], rhs[1:]
        if g.is_terminal(sym):
            r = dfa.delta.get((p, sym))
            if r is not None:
                for tail in paths(r, rest, q):
                    yield (sym,) + tail
            return
        for r in sorted(gen[(p, sym)], key=str):
            for tail in paths(r, rest, q):
                yield (name(p, sym, r),) + tail

    start = g.start + "'"
    while start in g.nonterminals or g.is_terminal(start):
        start += "'"
    nts = [start]
    prods = []
    for f in sorted(dfa.finals & gen[(dfa.start, g.start)], key=str):
        prods.append((start, (name(dfa.start, g.start, f),)))
    for (p, x), qs in sorted(gen.items(), key=lambda kv: (str(kv[0][0]), kv[0][1])):
        for q in sorted(qs, key=str):
            nts.append(name(p, x, q))
            for rhs in g.rules[x]:
                for path in paths(p, rhs, q):
                    prods.append((name(p, x, q), path))
    out = Grammar(tuple(nts), g.terminals, tuple(prods), start, g.leaf_terminals)
    return normalized(out)


def intersect_lex_interval(g: Grammar, lower=None, upper=None) -> Grammar:
    """Restrict L(g) to a lexicographic interval.

    ``lower`` and ``upper`` are ``(word, strict)`` pairs or None; a bare
    word means a non-strict bound.
    """
    out = normalized(g)
    for side, bound in (("lower", lower), ("upper", upper)):
        if bound is None:
            continue
        if isinstance(bound, tuple) and len(bound) == 2 and isinstance(bound[1], bool):
            word, strict = bound
        else:
            word, strict = bound, False
        out = intersect_regular(out, _half_line(word, g.terminals, side, strict))
    return out


def reverse_order(g: Grammar, endmarker: str | None = None) -> tuple[Grammar, OrderedAlphabet]:
    """Relabel terminals by the order-reversing bijection a_i -> a_(n-1-i).

    Lex order on the relabeled words is the reverse of the original order
    only when L(g) is prefix-free.  For other languages pass an
    ``endmarker``: a fresh terminal, least in the order, appended to every
    word before relabeling, which makes the language prefix-free without
    changing its lex order.
    """
    g = normalized(g)
    terminals = g.terminals
    prods = g.productions
    nts = g.nonterminals
    start = g.start
    if endmarker is not None:
        if endmarker in terminals.symbols or endmarker in nts:
            raise InputError(f"end marker {endmarker!r} is already a symbol")
        terminals = OrderedAlphabet((endmarker,) + terminals.symbols)
        start = g.start + "$"
        while start in nts:
            start += "$"
        nts = (start,) + nts
        prods = ((start, (g.start, endmarker)),) + prods
    syms = terminals.symbols
    h = {a: syms[len(syms) - 1 - i] for i, a in enumerate(syms)}
    new = tuple((lhs, tuple(h.get(s, s) for s in rhs)) for lhs, rhs in prods)
    leaves = frozenset(h[a] for a in g.leaf_terminals)
    out = Grammar(nts, terminals, new, start, leaves)
    if not out.rules[start]:
        out = Grammar((start,), terminals, (), start, leaves)
    return out, terminals


def relabel_reversed(word, alphabet: OrderedAlphabet) -> tuple:
    syms = alphabet.symbols
    return tuple(syms[len(syms) - 1 - alphabet.index(a)] for a in word)
