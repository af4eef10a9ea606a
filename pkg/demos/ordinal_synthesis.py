"""Build a scheme for an ordinal, then read ordinals back off its words.

scheme_for_ordinal composes sums, products and geometric sums of small
schemes.  The layout that drove the construction can decode any frontier
word into the ordinal it stands for, and decoding respects the lex order.
"""
from algebraic_orders import (
    enumerate_words,
    format_scheme,
    frontier_grammar,
    normalized,
    ordinal_layout,
    parse_ordinal,
    scheme_to_prefix_grammar,
)

for literal in ["w*2+1", "w^2", "w^w"]:
    a = parse_ordinal(literal)
    layout = ordinal_layout(a)
    print(f"== {a}")
    print(format_scheme(layout.scheme()))
    g = normalized(frontier_grammar(scheme_to_prefix_grammar(layout.scheme())))
    for w in enumerate_words(g, 7)[:8]:
        print(f"  {''.join(w):>8} -> {layout.decode(w)}")
    print()
