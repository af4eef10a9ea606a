"""Any finite order embeds greedily into the words of (0+11)*01.

Shuffle the presentation order and the words change, but the lex order of
the assigned words always matches the order of the keys.
"""
import random

from algebraic_orders import embed_into_rationals

keys = list("abcdefgh")
rng = random.Random(1)
for _ in range(3):
    shown = keys[:]
    rng.shuffle(shown)
    h = embed_into_rationals(shown, lambda p, q: p < q)
    print("presented", "".join(shown), "->", ", ".join(f"{k}:{''.join(h[k])}" for k in keys))
