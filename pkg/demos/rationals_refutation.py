"""The scheme X = X + 1 + X is dense, and the analysis says so.

Its frontier language is (0+11)*10.  The nonterminal pumps both 0 and 11,
which are prefix-incomparable, so u u < u v < v u gives a dense triple.
"""
from algebraic_orders import (
    enumerate_words,
    frontier_grammar,
    normalized,
    parse_scheme,
    refute_scattered,
    scheme_to_prefix_grammar,
)

scheme = parse_scheme("X = +(X, +(1, X))")
fg = normalized(frontier_grammar(scheme_to_prefix_grammar(scheme)))
print("Words up to length 5:", ["".join(w) for w in enumerate_words(fg, 5)])

verdict = refute_scattered(fg, 3)
print("Verdict:", verdict.kind)
print("Witness words:", ["".join(w) for w in verdict.words()])
