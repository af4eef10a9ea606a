"""From a recursion scheme to a prefix grammar for its labeled frontier.

Each equation ``F(x0..xk-1) = t`` contributes, for every node ``u`` of ``t``,
a production ``(F, j) -> û`` when ``t(u) = x_j`` and ``F -> û t(u)`` when
``t(u)`` is a leaf symbol or a function variable.  Inside ``û`` the steps
through alphabet symbols are terminals and the steps through calls are the
nonterminals ``(G, j)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .grammar import Grammar, enumerate_words, normalize
from .scheme import (
    Call,
    Param,
    RecursionScheme,
    Sym,
    branch_words,
    leaf_token,
    pair_token,
    resolve_path,
    unfold,
)
from .words import OrderedAlphabet


def arg_nonterminal(name: str, j: int) -> str:
    return f"({name},{j})"


def terminal_alphabet(s: RecursionScheme) -> OrderedAlphabet:
    """Pair terminals ordered by child index, then by declaration order of
    the symbol; leaf terminals last.  For the binary alphabet: 0 < 1 < 𝟏."""
    entries = s.alphabet.entries
    pairs = sorted((j, i) for i, (_, k) in enumerate(entries) for j in range(k))
    toks = [pair_token(entries[i][0], j) for j, i in pairs]
    toks += [leaf_token(sym) for sym, k in entries if k == 0]
    return OrderedAlphabet(tuple(toks))


def scheme_to_prefix_grammar(s: RecursionScheme) -> Grammar:
    terminals = terminal_alphabet(s)
    nts = []
    for eq in s.equations:
        nts.extend(arg_nonterminal(eq.name, j) for j in range(eq.arity))
        nts.append(eq.name)
    clash = set(nts) & set(terminals.symbols)
    if clash:
        raise InputError(f"names collide with terminals: {sorted(clash)}")
    prods = []
    for eq in s.equations:
        stack = [(eq.body, ())]
        while stack:
            t, hat = stack.pop()
            if isinstance(t, Param):
                prods.append((arg_nonterminal(eq.name, t.index), hat))
            elif isinstance(t, Call):
                prods.append((eq.name, hat + (t.name,)))
                for j in reversed(range(len(t.args))):
                    stack.append((t.args[j], hat + (arg_nonterminal(t.name, j),)))
            elif not t.args:
                prods.append((eq.name, hat + (leaf_token(t.name),)))
            else:
                for j in reversed(range(len(t.args))):
                    stack.append((t.args[j], hat + (pair_token(t.name, j),)))
    leaves = frozenset(leaf_token(sym) for sym, k in s.alphabet.entries if k == 0)
    return Grammar(tuple(nts), terminals, tuple(prods), s.equations[0].name, leaves)


def frontier_grammar(g: Grammar) -> Grammar:
    """Drop the trailing leaf terminal of every production: the right
    quotient by the leaf symbols, giving leaf addresses over child steps.

    A one-leaf tree yields the language {ε} through an empty production,
    which :func:`normalize` reports.
    """
    if not g.leaf_terminals:
        raise InputError("grammar carries no leaf terminals; not a translated grammar")
    prods = []
    for lhs, rhs in g.productions:
        inner = rhs[:-1] if rhs and rhs[-1] in g.leaf_terminals else rhs
        if any(s in g.leaf_terminals for s in inner):
            raise InputError(f"leaf terminal inside {lhs} -> {' '.join(rhs)}")
        prods.append((lhs, inner))
    kept = OrderedAlphabet(tuple(a for a in g.terminals.symbols if a not in g.leaf_terminals))
    return Grammar(g.nonterminals, kept, tuple(prods), g.start)


# -- the claim oracle ---------------------------------------------------------------

@dataclass(frozen=True)
class ClaimMismatch:
    """``kind`` is one of ``missing`` (a tree word absent from the grammar),
    ``spurious`` (a grammar word naming no node of the tree),
    ``missing-call`` and ``spurious-call`` (the same for call markers)."""

    kind: str
    word: tuple
    address: tuple


@dataclass(frozen=True)
class ClaimVerdict:
    mismatches: tuple
    tree_words: int
    grammar_words: int

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _marker(name: str) -> str:
    return f"⟨{name}⟩"


def _step_table(s: RecursionScheme) -> dict:
    return {pair_token(sym, j): (sym, j) for sym, k in s.alphabet.entries for j in range(k)}


def _split(word, steps: dict):
    """Address, the labels along it and the final token of a branch word."""
    path, labels = [], []
    for tok in word[:-1]:
        if tok not in steps:
            return None
        sym, j = steps[tok]
        labels.append(sym)
        path.append(j)
    return tuple(path), labels, word[-1]


def check_claim(s: RecursionScheme, g: Grammar, depth: int, max_len: int) -> ClaimVerdict:
    """Compare the grammar with the scheme's least solution.

    Tree to grammar: every labeled-frontier word of the ``depth``-th
    approximant, and every outstanding call as a marked word, up to
    ``max_len``, must be generated.  Grammar to tree: every generated word up
    to ``max_len`` must name a real leaf (or a call occupying that node),
    checked by expanding the scheme along the word's address.
    """
    steps = _step_table(s)
    leaf_of = {leaf_token(sym): sym for sym, k in s.alphabet.entries if k == 0}
    markers = {_marker(eq.name): eq.name for eq in s.equations}
    if set(markers) & set(g.terminals.symbols):
        raise InputError("grammar terminals collide with call markers")
    marked = Grammar(
        g.nonterminals,
        OrderedAlphabet(g.terminals.symbols + tuple(markers)),
        g.productions + tuple((name, (m,)) for m, name in markers.items() if name in g.nonterminals),
        g.start,
        g.leaf_terminals,
    )
    words = set(enumerate_words(normalize(marked)[0], max_len))
    plain = {w for w in words if w[-1] not in markers}

    tree = unfold(s, depth)
    mismatches = []
    a_words = {w for w in branch_words(tree, "Lfr") if len(w) <= max_len}
    for w in sorted(a_words, key=lambda w: (len(w), w)):
        if w not in plain:
            mismatches.append(ClaimMismatch("missing", w, _split(w, steps)[0]))
    for addr, label in sorted(tree.pending().items()):
        hat = tuple(pair_token(tree.nodes[addr[:k]], addr[k]) for k in range(len(addr)))
        w = hat + (_marker(label.name),)
        if len(w) <= max_len and w not in words:
            mismatches.append(ClaimMismatch("missing-call", w, addr))

    for w in sorted(words, key=lambda w: (len(w), w)):
        split = _split(w, steps)
        is_call = w[-1] in markers
        kind = "spurious-call" if is_call else "spurious"
        if split is None:
            mismatches.append(ClaimMismatch(kind, w, ()))
            continue
        addr, labels, last = split
        found, heads = resolve_path(s, addr)
        if found[: len(labels)] != labels:
            mismatches.append(ClaimMismatch(kind, w, addr))
        elif is_call:
            if markers[last] not in heads:
                mismatches.append(ClaimMismatch(kind, w, addr))
        elif last not in leaf_of or found[len(labels)] != leaf_of[last]:
            mismatches.append(ClaimMismatch(kind, w, addr))
    return ClaimVerdict(tuple(mismatches), len(a_words), len(plain))
