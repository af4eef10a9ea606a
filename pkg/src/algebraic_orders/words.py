"""Words over ordered alphabets and the three orders on them.

A word is a tuple of tokens.  Plain strings are accepted wherever a word is
expected and are split into one-character tokens, so ``"0101"`` and
``("0", "1", "0", "1")`` denote the same word.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InputError

Word = tuple


def as_word(w) -> Word:
    return tuple(w)


@dataclass(frozen=True)
class OrderedAlphabet:
    """A finite alphabet; position in ``symbols`` fixes the order."""

    symbols: tuple

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        if not syms:
            raise InputError("alphabet must contain at least one symbol")
        if len(set(syms)) != len(syms):
            raise InputError(f"duplicate symbols in alphabet {syms!r}")
        object.__setattr__(self, "_rank", {s: i for i, s in enumerate(syms)})

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, sym):
        return sym in self._rank

    def index(self, sym) -> int:
        try:
            return self._rank[sym]
        except KeyError:
            raise InputError(f"token {sym!r} is not in alphabet {self.symbols!r}") from None

    def key(self, w) -> tuple:
        """Sort key under which Python tuple order is the lexicographic order."""
        return tuple(self.index(t) for t in w)

    def reversed(self) -> "OrderedAlphabet":
        return OrderedAlphabet(self.symbols[::-1])

    def render(self, w) -> str:
        if all(isinstance(s, str) and len(s) == 1 for s in self.symbols):
            return "".join(w)
        return ".".join(str(t) for t in w)


BINARY = OrderedAlphabet(("0", "1"))


class LexOrder(enum.Enum):
    LESS_PREFIX = "LessPrefix"
    LESS_STRICT = "LessStrict"
    EQUAL = "Equal"
    GREATER_PREFIX = "GreaterPrefix"
    GREATER_STRICT = "GreaterStrict"

    @property
    def is_less(self):
        return self in (LexOrder.LESS_PREFIX, LexOrder.LESS_STRICT)

    @property
    def is_greater(self):
        return self in (LexOrder.GREATER_PREFIX, LexOrder.GREATER_STRICT)


class PrefixRelation(enum.Enum):
    PROPER_PREFIX = "ProperPrefix"
    EQUAL = "Equal"
    EXTENDS = "Extends"
    INCOMPARABLE = "Incomparable"


def lex_compare(u, v, alphabet: OrderedAlphabet = BINARY) -> LexOrder:
    u, v = as_word(u), as_word(v)
    for a, b in zip(u, v):
        ia, ib = alphabet.index(a), alphabet.index(b)
        if ia != ib:
            return LexOrder.LESS_STRICT if ia < ib else LexOrder.GREATER_STRICT
    # validate the unmatched tail too
    for t in u[len(v):] + v[len(u):]:
        alphabet.index(t)
    if len(u) == len(v):
        return LexOrder.EQUAL
    return LexOrder.LESS_PREFIX if len(u) < len(v) else LexOrder.GREATER_PREFIX


def lex_less(u, v, alphabet: OrderedAlphabet = BINARY) -> bool:
    return lex_compare(u, v, alphabet).is_less


def strict_less(u, v, alphabet: OrderedAlphabet = BINARY) -> bool:
    """The branching order: u and v diverge and u carries the smaller letter."""
    return lex_compare(u, v, alphabet) is LexOrder.LESS_STRICT


def prefix_compare(u, v) -> PrefixRelation:
    u, v = as_word(u), as_word(v)
    n = min(len(u), len(v))
    if u[:n] != v[:n]:
        return PrefixRelation.INCOMPARABLE
    if len(u) == len(v):
        return PrefixRelation.EQUAL
    return PrefixRelation.PROPER_PREFIX if len(u) < len(v) else PrefixRelation.EXTENDS


def is_prefix(u, v) -> bool:
    """u is a (not necessarily proper) prefix of v."""
    u, v = as_word(u), as_word(v)
    return v[: len(u)] == u


def primitive_root(u) -> tuple[Word, int]:
    """Return ``(root, k)`` with ``root**k == u`` and ``root`` primitive."""
    u = as_word(u)
    n = len(u)
    if n == 0:
        raise InputError("the empty word has no primitive root")
    for d in range(1, n + 1):
        if n % d == 0 and u[:d] * (n // d) == u:
            return u[:d], n // d
    raise AssertionError("unreachable")


def is_prefix_free(words: Iterable, alphabet: OrderedAlphabet | None = None):
    """Return ``None`` if no word is a proper prefix of another, else the
    lexicographically least violating pair ``(u, uv)``."""
    ws = {as_word(w) for w in words}
    if alphabet is None:
        tokens = sorted({t for w in ws for t in w}, key=str)
        alphabet = OrderedAlphabet(tokens) if tokens else BINARY
    ordered = sorted(ws, key=alphabet.key)
    # In lex order each word is immediately followed by its extensions, so the
    # least violating pair involves adjacent words.
    best = None
    for u, v in zip(ordered, ordered[1:]):
        if is_prefix(u, v):
            cand = (alphabet.key(u), alphabet.key(v))
            if best is None or cand < best[0]:
                best = (cand, (u, v))
    return None if best is None else best[1]


# -- the rationals language (0+11)*01 -------------------------------------

_RATIONALS_RE = re.compile(r"(?:0|11)*01")


def in_rationals(w) -> bool:
    """Direct membership test for (0+11)*01 over the binary alphabet."""
    w = as_word(w)
    if any(t not in ("0", "1") for t in w):
        return False
    return _RATIONALS_RE.fullmatch("".join(w)) is not None


# Deterministic automaton for (0+11)*01.  State 0: between blocks; 1: read a
# 0 that may be a block or the final 0; 2: read the first 1 of a block;
# 3: accepting (just read 01); also the first 1 of a possible block.
_DEAD = -1
_R_DELTA = {
    (0, "0"): 1, (0, "1"): 2,
    (1, "0"): 1, (1, "1"): 3,
    (2, "0"): _DEAD, (2, "1"): 0,
    (3, "0"): _DEAD, (3, "1"): 0,
}
_R_ACCEPT = frozenset({3})


@lru_cache(maxsize=None)
def _r_can_finish(state: int, remaining: int) -> bool:
    if state == _DEAD:
        return False
    if remaining == 0:
        return state in _R_ACCEPT
    return any(_r_can_finish(_R_DELTA[state, a], remaining - 1) for a in "01")


def _first_between(lo: Word | None, hi: Word | None, length: int) -> Word | None:
    """Lexicographically first word of R with exactly ``length`` letters lying
    strictly between ``lo`` and ``hi`` (either may be ``None``)."""
    out: list[str] = []

    # lo_tight / hi_tight: the prefix built so far equals the bound's prefix
    def go(state, lo_tight, hi_tight):
        pos = len(out)
        if pos == length:
            if state not in _R_ACCEPT:
                return False
            if lo_tight and len(lo) >= length:  # equal to or a prefix of lo
                return False
            if hi_tight and len(hi) == length:  # equal to hi
                return False
            return True
        for a in "01":
            nlo, nhi = lo_tight, hi_tight
            if lo_tight:
                if pos >= len(lo):
                    nlo = False  # extends lo, hence above it
                elif a < lo[pos]:
                    continue
                elif a > lo[pos]:
                    nlo = False
            if hi_tight:
                if pos >= len(hi):
                    continue  # extends hi, hence above it
                elif a > hi[pos]:
                    continue
                elif a < hi[pos]:
                    nhi = False
            nxt = _R_DELTA[state, a]
            if not _r_can_finish(nxt, length - pos - 1):
                continue
            out.append(a)
            if go(nxt, nlo, nhi):
                return True
            out.pop()
        return False

    return tuple(out) if go(0, lo is not None, hi is not None) else None


def embed_into_rationals(items: Sequence[Hashable], less: Callable[[object, object], bool]) -> dict:
    """Greedy order embedding of ``items`` into (0+11)*01 under lex order.

    Each item in turn receives the lexicographically first among the shortest
    unused words of the language that sit on the correct side of every word
    already assigned.  ``less`` must be a strict total order on the items.
    """
    placed: list[tuple[tuple, Word, object]] = []  # (sort key, word, item)
    out: dict = {}
    for p in items:
        if p in out:
            raise InputError(f"item {p!r} presented twice")
        below, above = [], []
        for k, w, q in placed:
            lt, gt = bool(less(q, p)), bool(less(p, q))
            if lt and gt:
                raise InputError(f"comparison oracle reports both {q!r} < {p!r} and {p!r} < {q!r}")
            if not (lt or gt):
                raise InputError(f"comparison oracle does not order {p!r} and {q!r}")
            (below if lt else above).append((k, w))
        lo = max(below)[1] if below else None
        hi = min(above)[1] if above else None
        if lo is not None and hi is not None and not lex_less(lo, hi):
            raise InputError(f"comparison oracle is not transitive around {p!r}")
        length = 2
        while True:
            w = _first_between(lo, hi, length)
            if w is not None:
                break
            length += 1
        out[p] = w
        placed.append((BINARY.key(w), w, p))
    return out
