"""A three-equation scheme whose frontier has order type omega^omega.

The grammar analysis sees three strongly connected components stacked on top
of each other, so the height is 2 and the Hausdorff rank is at most
omega^2 + 1, comfortably below omega^omega.
"""
from algebraic_orders import (
    analyze,
    format_grammar,
    normalize,
    parse_scheme,
    scheme_to_prefix_grammar,
)

scheme = parse_scheme(
    """
    F0 = G(1)
    G(x0) = +(x0, G(F(x0)))
    F(x0) = +(x0, F(x0))
    """
)
g = scheme_to_prefix_grammar(scheme)
print(format_grammar(g))

ng, report = normalize(g)
print("After normalization:", sorted(ng.nonterminals), "| dropped:", sorted(report.dropped))

analysis = analyze(ng)
for x, a in sorted(analysis.nonterminals.items(), key=lambda kv: kv[1].height):
    root = "".join(a.primitive_root) if a.primitive_root else "-"
    print(f"{x:>6}: height {a.height}, primitive root {root}, rank bound {a.rank_bound}")
print("Overall rank bound:", analysis.overall_rank_bound)
