import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebraic_orders.errors import InputError, ParseError, UndefinedSymbolError
from algebraic_orders.grammar import (
    Grammar,
    empty_grammar,
    enumerate_words,
    format_grammar,
    intersect_lex_interval,
    normalize,
    normalized,
    parse_grammar,
    relabel_reversed,
    reverse_order,
)
from algebraic_orders.words import BINARY, OrderedAlphabet, in_rationals, lex_compare

import corpus


def words(g, n):
    return ["".join(w) for w in enumerate_words(g, n)]


def naive_language(g, max_len):
    """All terminal words up to max_len by exhaustive leftmost derivation
    (for epsilon-free grammars, where sentential forms never shrink)."""
    out, seen = set(), set()
    stack = [(g.start,)]
    while stack:
        form = stack.pop()
        if form in seen or len(form) > max_len:
            continue
        seen.add(form)
        i = next((k for k, s in enumerate(form) if not g.is_terminal(s)), None)
        if i is None:
            out.add(form)
            continue
        for rhs in g.rules[form[i]]:
            stack.append(form[:i] + rhs + form[i + 1:])
    return out


@st.composite
def small_grammars(draw, epsilon=False):
    nts = ["A", "B", "C"]
    symbols = ["0", "1"] + nts
    prods = []
    for x in nts:
        for _ in range(draw(st.integers(0 if x != "A" else 1, 3))):
            rhs = tuple(draw(st.lists(st.sampled_from(symbols), min_size=0 if epsilon else 1, max_size=3)))
            prods.append((x, rhs))
    return Grammar(tuple(nts), BINARY, tuple(prods), "A")


# -- parsing ------------------------------------------------------------------------------

def test_parse_examples():
    g = parse_grammar(corpus.XY_GRAMMAR)
    assert g.nonterminals == ("X", "Y") and g.start == "X" and len(g.productions) == 4
    r = parse_grammar(corpus.RATIONALS_GRAMMAR)
    assert r.rules["S"] == [("0", "1"), ("0", "S"), ("1", "1", "S")]


@pytest.mark.parametrize("text, error", [
    ("S -> T", UndefinedSymbolError),
    ("S -> 0 2", UndefinedSymbolError),
    ("S 0 1", ParseError),
    ("S -> 0 |", ParseError),
    ("terminals: 0 <\nS -> 0", ParseError),
    ("", ParseError),
    ("terminals: a < S\nS -> a", InputError),
])
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_grammar(text)


def test_headers_and_roundtrip():
    g = parse_grammar("terminals: a < b < c\nstart: T\nS -> a S | b\nT -> S c | ε\nnonterminals: U")
    assert g.terminals.symbols == ("a", "b", "c") and g.start == "T"
    assert ("T", ()) in g.productions and "U" in g.nonterminals
    assert parse_grammar(format_grammar(g)) == g


# -- normalization -------------------------------------------------------------------------

def test_normalize_drops_useless_from_translated_grammar():
    text = ("terminals: 0 < 1 < 𝟏\nF0 -> G | (G,0) 𝟏\n(G,0) -> 0 | 1 (G,0) (F,0)\n"
            "G -> 1 G | 1 (G,0) F\n(F,0) -> 0 | 1 (F,0)\nF -> 1 F")
    g, report = normalize(parse_grammar(text))
    assert g.nonterminals == ("F0", "(G,0)", "(F,0)")
    assert set(report.dropped) == {"G", "F"}
    assert g.rules["F0"] == [("(G,0)", "𝟏")]


def test_normalize_clean_grammar_unchanged():
    g = parse_grammar(corpus.XY_GRAMMAR)
    out, report = normalize(g)
    assert out == g and report.dropped == () and not report.contains_empty


def test_normalize_chain():
    g = normalized(parse_grammar("S -> T\nT -> 0"))
    assert g.productions == (("S", ("0",)),)


def test_normalize_epsilon():
    g, report = normalize(parse_grammar("S -> A 1 A\nA -> 0 | ε"))
    assert not report.contains_empty
    assert words(g, 3) == ["01", "010", "1", "10"]
    g, report = normalize(parse_grammar("S -> 0 S | ε"))
    assert report.contains_empty and words(g, 3) == ["0", "00", "000"]


def test_normalize_empty_language():
    g, report = normalize(parse_grammar("S -> 0 S"))
    assert g == empty_grammar() and report.empty_language
    assert enumerate_words(g, 5) == []


@settings(max_examples=150, deadline=None)
@given(small_grammars())
def test_enumeration_matches_naive_derivations(g):
    ng = normalized(g)
    expected = sorted(naive_language(g, 6), key=BINARY.key)
    assert enumerate_words(ng, 6) == expected


@settings(max_examples=60, deadline=None)
@given(small_grammars(epsilon=True))
def test_normalize_preserves_language_except_empty_word(g):
    ng, report = normalize(g)
    got = set(enumerate_words(ng, 4))
    # oracle: expand with every nullable choice, bounded by word length
    expected = set()
    for n in range(1, 5):
        for w in itertools.product("01", repeat=n):
            if _derives(g, g.start, w):
                expected.add(w)
    assert got == expected
    assert report.contains_empty == _derives(g, g.start, ())


def _derives(g, x, w, memo=None):
    """CYK-style membership test straight from the productions, allowing
    empty right-hand sides."""
    memo = {} if memo is None else memo
    return _span(g, (x,), tuple(w), memo, frozenset())


def _span(g, form, w, memo, active):
    key = (form, w)
    if key in memo:
        return memo[key]
    if key in active:
        return False
    active = active | {key}
    if not form:
        res = not w
    elif len(form) > 1:
        head, rest = form[0], form[1:]
        res = any(_span(g, (head,), w[:k], memo, active) and _span(g, rest, w[k:], memo, active)
                  for k in range(len(w) + 1))
    else:
        s = form[0]
        if g.is_terminal(s):
            res = w == (s,)
        else:
            res = any(_span(g, rhs, w, memo, active) for rhs in g.rules[s])
    if res or not active - {key}:
        memo[key] = res
    return res


# -- enumeration -----------------------------------------------------------------------------

def test_enumerate_examples():
    assert words(parse_grammar(corpus.OMEGA_GRAMMAR), 4) == ["0", "10", "110", "1110"]
    assert words(parse_grammar(corpus.RATIONALS_GRAMMAR), 4) == ["0001", "001", "01", "1101"]
    assert enumerate_words(empty_grammar(), 6) == []


def test_enumerate_rationals_brute_force():
    g = parse_grammar(corpus.RATIONALS_GRAMMAR)
    brute = sorted(("".join(w) for n in range(9) for w in itertools.product("01", repeat=n)
                    if in_rationals(w)))
    assert words(g, 8) == brute


def test_enumerate_requires_epsilon_free():
    with pytest.raises(InputError):
        enumerate_words(parse_grammar("S -> 0 S | ε"), 3)


def test_enumeration_strictly_increasing():
    for text in (corpus.OMEGA_GRAMMAR, corpus.RATIONALS_GRAMMAR, corpus.XY_GRAMMAR):
        ws = enumerate_words(parse_grammar(text), 9)
        assert all(lex_compare(u, v).is_less for u, v in zip(ws, ws[1:]))


# -- interval and reverse ----------------------------------------------------------------------

def test_interval_examples():
    g = parse_grammar(corpus.OMEGA_GRAMMAR)
    assert words(intersect_lex_interval(g, ("110", False)), 6) == ["110", "1110", "11110", "111110"]
    assert words(intersect_lex_interval(g), 6) == words(g, 6)
    assert words(intersect_lex_interval(g, ("110", False), ("10", False)), 8) == []


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([corpus.OMEGA_GRAMMAR, corpus.RATIONALS_GRAMMAR, corpus.XY_GRAMMAR]),
       st.one_of(st.none(), st.tuples(st.text("01", max_size=5), st.booleans())),
       st.one_of(st.none(), st.tuples(st.text("01", max_size=5), st.booleans())))
def test_interval_matches_filter(text, lower, upper):
    g = parse_grammar(text)

    def keep(w):
        s = "".join(w)
        if lower is not None and not (s > lower[0] or (s == lower[0] and not lower[1])):
            return False
        if upper is not None and not (s < upper[0] or (s == upper[0] and not upper[1])):
            return False
        return True

    expected = [w for w in enumerate_words(g, 9) if keep(w)]
    assert enumerate_words(intersect_lex_interval(g, lower, upper), 9) == expected


def test_reverse_examples():
    g = parse_grammar(corpus.OMEGA_GRAMMAR)
    rg, alpha = reverse_order(g)
    assert alpha == BINARY
    assert rg.rules["X"] == [("1",), ("0", "X")]
    original = enumerate_words(g, 6)
    assert enumerate_words(rg, 6) == [relabel_reversed(w, BINARY) for w in reversed(original)]
    assert enumerate_words(reverse_order(empty_grammar())[0], 5) == []
    single, _ = reverse_order(parse_grammar("S -> 0 1 1"))
    assert words(single, 5) == ["100"]


def test_reverse_with_endmarker_handles_non_prefix_languages():
    g = parse_grammar(corpus.RATIONALS_GRAMMAR)
    rg, alpha = reverse_order(g, endmarker="$")
    assert alpha.symbols == ("$", "0", "1")
    original = enumerate_words(g, 8)
    got = enumerate_words(rg, 9)
    assert got == [relabel_reversed(w + ("$",), alpha) for w in reversed(original)]
    with pytest.raises(InputError):
        reverse_order(g, endmarker="0")


def test_reverse_general_alphabet():
    g = parse_grammar("terminals: a < b < c\nS -> a S | c | b b")
    rg, alpha = reverse_order(g)
    ws = enumerate_words(g, 5)
    assert enumerate_words(rg, 5) == [relabel_reversed(w, alpha) for w in reversed(ws)]
