import pytest

from algebraic_orders.analysis import check_prefix_property
from algebraic_orders.errors import InputError
from algebraic_orders.grammar import enumerate_words, format_grammar, normalize, normalized, parse_grammar
from algebraic_orders.scheme import ONE_TOKEN, branch_words, frontier, iter_positions, parse_scheme, unfold
from algebraic_orders.translate import check_claim, frontier_grammar, scheme_to_prefix_grammar
from algebraic_orders.words import lex_compare

import corpus


def rules(g):
    return {x: sorted(" ".join(r) for r in alts) for x, alts in g.rules.items()}


def test_translate_omega():
    g = scheme_to_prefix_grammar(parse_scheme(corpus.OMEGA))
    assert g.terminals.symbols == ("0", "1", ONE_TOKEN)
    assert rules(g) == {"X": ["0 𝟏", "1 X"]}


def test_translate_omega_omega_table():
    g = scheme_to_prefix_grammar(parse_scheme(corpus.OMEGA_OMEGA))
    assert rules(g) == {
        "F0": ["(G,0) 𝟏", "G"],
        "(G,0)": ["0", "1 (G,0) (F,0)"],
        "G": ["1 (G,0) F", "1 G"],
        "(F,0)": ["0", "1 (F,0)"],
        "F": ["1 F"],
    }
    ng, report = normalize(g)
    assert ng.nonterminals == ("F0", "(G,0)", "(F,0)") and set(report.dropped) == {"G", "F"}


def test_translate_single_leaf():
    g = scheme_to_prefix_grammar(parse_scheme("F1 = 1"))
    assert rules(g) == {"F1": ["𝟏"]}


def test_translate_general_alphabet():
    g = scheme_to_prefix_grammar(parse_scheme(corpus.SIGMA))
    assert g.terminals.symbols == ("s3.0", "s1.0", "s3.1", "s3.2", "a", "b")
    assert rules(g)["F1"] == ["s3.0 a", "s3.1 b", "s3.2 (F2,0) a", "s3.2 F2"]
    assert rules(g)["(F3,1)"] == ["s3.1 (F3,1) (F3,1)", "s3.2"]


def test_frontier_grammar_examples():
    g = frontier_grammar(scheme_to_prefix_grammar(parse_scheme(corpus.OMEGA)))
    assert rules(g) == {"X": ["0", "1 X"]}
    g = normalized(frontier_grammar(scheme_to_prefix_grammar(parse_scheme(corpus.RATIONALS))))
    assert rules(g) == {"X": ["0 X", "1 0", "1 1 X"]}
    assert ["".join(w) for w in enumerate_words(g, 4)] == ["0010", "010", "10", "1110"]
    g, report = normalize(frontier_grammar(scheme_to_prefix_grammar(parse_scheme("F1 = 1"))))
    assert report.contains_empty and enumerate_words(g, 3) == []


def test_frontier_grammar_rejects_untranslated_input():
    with pytest.raises(InputError):
        frontier_grammar(parse_grammar(corpus.OMEGA_GRAMMAR))


def test_translation_size_bound():
    for _, s in corpus.corpus():
        g = scheme_to_prefix_grammar(s)
        assert len(g.productions) <= sum(len(list(iter_positions(eq.body))) for eq in s.equations)


def test_translated_grammars_are_prefix():
    for label, s in corpus.corpus():
        g = normalized(scheme_to_prefix_grammar(s))
        assert check_prefix_property(g, 12).prefix, label


def test_terminal_order_matches_address_order():
    for name in ["omega", "omega^omega", "rationals", "sigma-delta"]:
        s = parse_scheme(corpus.NAMED[name])
        t = unfold(s, 8)
        g = scheme_to_prefix_grammar(s)
        lfr = sorted(branch_words(t, "Lfr"), key=g.terminals.key)
        addresses = [w for w, _ in frontier(t)]
        assert [w[:-1] for w in lfr] == addresses


def test_claim_examples():
    s = parse_scheme(corpus.OMEGA)
    v = check_claim(s, scheme_to_prefix_grammar(s), 8, 8)
    assert v.ok and v.tree_words == 7
    s = parse_scheme(corpus.OMEGA_OMEGA)
    assert check_claim(s, scheme_to_prefix_grammar(s), 10, 10).ok


def test_claim_detects_dropped_production():
    s = parse_scheme(corpus.OMEGA)
    g = scheme_to_prefix_grammar(s)
    broken = g.with_productions(g.productions[1:])
    v = check_claim(s, broken, 8, 8)
    assert not v.ok and v.mismatches[0].kind in ("missing", "missing-call")


def test_claim_detects_extra_production():
    s = parse_scheme(corpus.OMEGA)
    g = scheme_to_prefix_grammar(s)
    v = check_claim(s, g.with_productions(g.productions + (("X", ("1", "1", ONE_TOKEN)),)), 8, 8)
    assert {m.kind for m in v.mismatches} == {"spurious"}
    assert v.mismatches[0].word == ("1", "1", ONE_TOKEN) and v.mismatches[0].address == (1, 1)


def test_claim_on_corpus():
    for label, s in corpus.corpus():
        v = check_claim(s, scheme_to_prefix_grammar(s), 12, 12)
        assert v.ok, (label, v.mismatches[:3])


def test_grammar_text_roundtrip():
    g = scheme_to_prefix_grammar(parse_scheme(corpus.OMEGA_OMEGA))
    back = parse_grammar(format_grammar(g))
    assert set(back.productions) == set(g.productions) and back.terminals == g.terminals
