"""From the scheme X = 1 + X to the order type omega.

The scheme's infinite tree is a right comb whose leaves, read left to right,
form an omega-sequence.  Translating it gives a prefix grammar; dropping the
leaf marker gives the frontier grammar, whose lex order is omega again.
"""
from algebraic_orders import (
    analyze,
    enumerate_words,
    format_grammar,
    frontier,
    frontier_grammar,
    normalized,
    parse_scheme,
    scheme_to_prefix_grammar,
    unfold,
)

scheme = parse_scheme("X = +(1, X)")

print("Approximant at depth 5:")
print(unfold(scheme, 5).render())
print("Leaf addresses:", ["".join(addr) for addr, _ in frontier(unfold(scheme, 5))])

g = scheme_to_prefix_grammar(scheme)
print("\nTranslated grammar:")
print(format_grammar(g))

fg = normalized(frontier_grammar(g))
print("Frontier grammar:")
print(format_grammar(fg))
print("First words:", ["".join(w) for w in enumerate_words(fg, 6)])

report = analyze(fg, depth=8)
print("\nHeight of X:", report.nonterminals["X"].height)
print("Rank bound:", report.overall_rank_bound)
print("Scatteredness:", report.scattered)
