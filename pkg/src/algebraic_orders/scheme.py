"""First-order recursion schemes and their finite unfoldings.

A scheme is a list of equations ``F(x0, ..., xk-1) = t`` whose bodies are
terms over a ranked alphabet plus the scheme's own function variables.  The
least solution is approached through Kleene approximants: every round
replaces each outstanding call by the body of its equation.  No infinite
tree is ever built; everything downstream works on finite prefixes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ArityError, InputError, ParseError, UndefinedSymbolError
from .words import OrderedAlphabet

ONE_TOKEN = "\U0001D7CF"  # the constant 1 as a grammar terminal, never the digit
OMEGA_SYMBOL = "Ω"


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Sym:
    """An alphabet symbol applied to arguments."""

    name: str
    args: tuple = ()

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Call:
    """A function-variable call; in an approximant, an unexpanded node."""

    name: str
    args: tuple = ()

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Param:
    index: int

    def __str__(self):
        return f"x{self.index}"


class _Bottom:
    """A call whose root can never be determined."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


def format_term(t) -> str:
    if isinstance(t, Param):
        return f"x{t.index}"
    if t is BOTTOM:
        return "⊥"
    if not t.args:
        return t.name
    return f"{t.name}({', '.join(format_term(a) for a in t.args)})"


def term_size(t) -> int:
    if isinstance(t, (Sym, Call)):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def iter_positions(t, address=()) -> Iterator[tuple[tuple, object]]:
    """Yield ``(address, node)`` for every node of a finite term, in
    lexicographic order of addresses."""
    yield address, t
    if isinstance(t, (Sym, Call)):
        for i, a in enumerate(t.args):
            yield from iter_positions(a, address + (i,))


def substitute(t, args: tuple):
    """Replace parameters ``x_j`` of ``t`` by ``args[j]``."""
    if isinstance(t, Param):
        return args[t.index]
    if isinstance(t, (Sym, Call)) and t.args:
        return type(t)(t.name, tuple(substitute(a, args) for a in t.args))
    return t


def map_terms(t, fn):
    """Bottom-up rebuild of ``t``; ``fn`` sees each node after its children."""
    if isinstance(t, (Sym, Call)) and t.args:
        t = type(t)(t.name, tuple(map_terms(a, fn) for a in t.args))
    return fn(t)


# -- alphabets and schemes ----------------------------------------------------

@dataclass(frozen=True)
class RankedAlphabet:
    entries: tuple  # ((symbol, arity), ...) in declaration order

    def __post_init__(self):
        entries = tuple((str(s), int(k)) for s, k in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InputError("ranked alphabet must be nonempty")
        names = [s for s, _ in entries]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate symbols in ranked alphabet {names}")
        if any(k < 0 for _, k in entries):
            raise InputError("arities are nonnegative")

    @cached_property
    def arity(self) -> dict:
        return dict(self.entries)

    def __contains__(self, sym):
        return sym in self.arity

    @property
    def symbols(self) -> list:
        return [s for s, _ in self.entries]

    @property
    def max_rank(self) -> int:
        return max(k for _, k in self.entries)

    def with_symbol(self, sym, arity) -> "RankedAlphabet":
        if sym in self:
            return self
        return RankedAlphabet(self.entries + ((sym, arity),))

    def union(self, other: "RankedAlphabet") -> "RankedAlphabet":
        out = self
        for s, k in other.entries:
            if s in out and out.arity[s] != k:
                raise ArityError(f"symbol {s!r} has arities {out.arity[s]} and {k}")
            out = out.with_symbol(s, k)
        return out


DELTA = RankedAlphabet((("+", 2), ("1", 0)))


@dataclass(frozen=True)
class Equation:
    name: str
    arity: int
    body: object

    def __str__(self):
        params = f"({', '.join(f'x{j}' for j in range(self.arity))})" if self.arity else ""
        return f"{self.name}{params} = {format_term(self.body)}"


@dataclass(frozen=True)
class RecursionScheme:
    """Equations in declaration order; the first one is principal."""

    equations: tuple
    alphabet: RankedAlphabet = DELTA

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        validate(self)

    @property
    def principal(self) -> str:
        return self.equations[0].name

    @cached_property
    def by_name(self) -> dict:
        return {eq.name: eq for eq in self.equations}

    @property
    def names(self) -> list:
        return [eq.name for eq in self.equations]

    def __str__(self):
        return format_scheme(self)

    @cached_property
    def _heads(self) -> dict:
        """For each function variable, where the root of a call comes from:
        ``"det"`` (a symbol of the body), an int ``j`` (the root of argument
        ``j``) or ``None`` (never determined)."""
        heads: dict = {eq.name: None for eq in self.equations}

        def head_of(t):
            while True:
                if isinstance(t, Sym):
                    return "det"
                if isinstance(t, Param):
                    return t.index
                h = heads[t.name]
                if h is None or h == "det":
                    return h
                t = t.args[h]

        changed = True
        while changed:
            changed = False
            for eq in self.equations:
                if heads[eq.name] is None:
                    h = head_of(eq.body)
                    if h is not None:
                        heads[eq.name] = h
                        changed = True
        return heads

    def diverges(self, t) -> bool:
        """True if the root of the closed term ``t`` is never determined."""
        while True:
            if isinstance(t, Sym):
                return False
            if t is BOTTOM:
                return True
            h = self._heads[t.name]
            if h is None:
                return True
            if h == "det":
                return False
            t = t.args[h]

    def expand(self, call: Call):
        return substitute(self.by_name[call.name].body, call.args)


def validate(s: RecursionScheme) -> None:
    """Raise unless arities, definedness and the principal's arity are sound."""
    if not s.equations:
        raise InputError("a scheme needs at least one equation")
    arities = {}
    for eq in s.equations:
        if eq.name in arities:
            raise InputError(f"function variable {eq.name!r} defined twice")
        if eq.name in s.alphabet:
            raise InputError(f"function variable {eq.name!r} clashes with an alphabet symbol")
        arities[eq.name] = eq.arity
    if s.equations[0].arity != 0:
        raise ArityError(f"principal {s.equations[0].name!r} must have no parameters")

    def check(t, eq):
        if isinstance(t, Param):
            if not 0 <= t.index < eq.arity:
                raise ArityError(f"parameter x{t.index} out of range in {eq.name!r}")
            return
        if isinstance(t, Sym):
            if t.name not in s.alphabet:
                raise UndefinedSymbolError(f"unknown symbol {t.name!r} in {eq.name!r}")
            want = s.alphabet.arity[t.name]
        elif isinstance(t, Call):
            if t.name not in arities:
                raise UndefinedSymbolError(f"undefined function variable {t.name!r} in {eq.name!r}")
            want = arities[t.name]
        else:
            raise InputError(f"malformed term {t!r}")
        if len(t.args) != want:
            raise ArityError(f"{t.name!r} takes {want} arguments, got {len(t.args)} in {eq.name!r}")
        for a in t.args:
            check(a, eq)

    for eq in s.equations:
        check(eq.body, eq)


def is_regular(s: RecursionScheme) -> bool:
    return all(eq.arity == 0 for eq in s.equations)


# -- text format ----------------------------------------------------------------

_TOK = re.compile(r"\s*(?:([A-Za-z_][\w']*|\d+)|([(),=])|([^\s(),=]+))")


def _tokens(text: str, lineno: int) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"line {lineno}: cannot tokenize {text[pos:]!r}")
            break
        out.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return out


def _parse_alphabet(spec: str) -> RankedAlphabet:
    entries = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        sym, sep, k = item.rpartition("/")
        if not sep or not sym or not k.strip().isdigit():
            raise ParseError(f"bad alphabet entry {item!r}; expected sym/arity")
        entries.append((sym.strip(), int(k)))
    return RankedAlphabet(tuple(entries))


def parse_scheme(text: str) -> RecursionScheme:
    """Parse the line-oriented scheme format.

    ``Name(x0, x1) = term`` or ``Name = term``, one equation per line, ``#``
    comments, optional header ``alphabet: +/2, 1/0``.
    """
    alphabet = DELTA
    heads = []  # (lineno, name, params, body tokens)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = _parse_alphabet(line[len("alphabet:"):])
            continue
        toks = _tokens(line, lineno)
        if "=" not in toks:
            raise ParseError(f"line {lineno}: expected 'Name = term'")
        eqpos = toks.index("=")
        lhs, rhs = toks[:eqpos], toks[eqpos + 1:]
        if not lhs or not re.fullmatch(r"[A-Za-z_][\w']*", lhs[0]):
            raise ParseError(f"line {lineno}: bad left-hand side {' '.join(lhs)!r}")
        params = []
        if len(lhs) > 1:
            if lhs[1] != "(" or lhs[-1] != ")":
                raise ParseError(f"line {lineno}: bad parameter list")
            inner = lhs[2:-1]
            params = [p for p in inner if p != ","]
            if inner and (inner[::2] != params or any(p == "," for p in inner[::2])):
                raise ParseError(f"line {lineno}: bad parameter list")
            if len(set(params)) != len(params):
                raise ParseError(f"line {lineno}: repeated parameter")
        if not rhs:
            raise ParseError(f"line {lineno}: empty right-hand side")
        heads.append((lineno, lhs[0], params, rhs))
    if not heads:
        raise ParseError("no equations found")
    arities = {}
    for lineno, name, params, _ in heads:
        if name in arities:
            raise InputError(f"line {lineno}: {name!r} defined twice")
        arities[name] = len(params)

    def parse_body(lineno, name, params, toks):
        pos = 0

        def term():
            nonlocal pos
            if pos >= len(toks):
                raise ParseError(f"line {lineno}: unexpected end of term")
            head = toks[pos]
            pos += 1
            if head in "(),=":
                raise ParseError(f"line {lineno}: unexpected {head!r}")
            args = []
            if pos < len(toks) and toks[pos] == "(":
                pos += 1
                # check the head's arity before descending
                nargs = _count_args(toks, pos)
                want = arities.get(head, alphabet.arity.get(head))
                if want is not None and nargs != want:
                    raise ArityError(f"line {lineno}: {head!r} takes {want} arguments, got {nargs}")
                while True:
                    args.append(term())
                    if pos < len(toks) and toks[pos] == ",":
                        pos += 1
                        continue
                    if pos < len(toks) and toks[pos] == ")":
                        pos += 1
                        break
                    raise ParseError(f"line {lineno}: expected ',' or ')'")
            if head in params:
                if args:
                    raise ArityError(f"line {lineno}: parameter {head!r} applied to arguments")
                return Param(params.index(head))
            if head in arities:
                return Call(head, tuple(args))
            if head in alphabet:
                return Sym(head, tuple(args))
            m = re.fullmatch(r"x(\d+)", head)
            if m:
                raise ArityError(f"line {lineno}: parameter {head!r} out of range for {name!r}")
            raise UndefinedSymbolError(f"line {lineno}: undefined symbol {head!r}")

        t = term()
        if pos != len(toks):
            raise ParseError(f"line {lineno}: trailing input {' '.join(toks[pos:])!r}")
        return t

    eqs = [Equation(name, len(params), parse_body(lineno, name, params, rhs))
           for lineno, name, params, rhs in heads]
    return RecursionScheme(tuple(eqs), alphabet)


def _count_args(toks, pos) -> int:
    depth, n = 0, 1
    if pos < len(toks) and toks[pos] == ")":
        return 0
    while pos < len(toks):
        t = toks[pos]
        if t == "(":
            depth += 1
        elif t == ")":
            if depth == 0:
                return n
            depth -= 1
        elif t == "," and depth == 0:
            n += 1
        pos += 1
    return n


def format_scheme(s: RecursionScheme) -> str:
    lines = []
    if s.alphabet != DELTA:
        lines.append("alphabet: " + ", ".join(f"{sym}/{k}" for sym, k in s.alphabet.entries))
    lines.extend(str(eq) for eq in s.equations)
    return "\n".join(lines) + "\n"


# -- approximants -------------------------------------------------------------

@dataclass(frozen=True)
class Pending:
    """Label of an unexpanded call node in an approximant."""

    name: str
    args: tuple = ()

    def __str__(self):
        inner = ", ".join(format_term(a) for a in self.args)
        return f"PENDING({self.name}{', ' + inner if inner else ''})"


@dataclass
class PartialTree:
    """A finite tree given as a map from addresses (tuples of child indices)
    to labels: alphabet symbols or :class:`Pending` markers."""

    nodes: dict
    alphabet: RankedAlphabet = DELTA

    def __getitem__(self, address):
        return self.nodes[tuple(address)]

    def get(self, address, default=None):
        return self.nodes.get(tuple(address), default)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, address):
        return tuple(address) in self.nodes

    def determined(self) -> dict:
        return {a: l for a, l in self.nodes.items() if not isinstance(l, Pending)}

    def pending(self) -> dict:
        return {a: l for a, l in self.nodes.items() if isinstance(l, Pending)}

    def render(self) -> dict:
        """``{"10": "1", ...}`` with addresses as digit strings."""
        return {"".join(map(str, a)): str(l) for a, l in sorted(self.nodes.items())}


def _round(t, s: RecursionScheme, memo: dict):
    key = id(t)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(t, Call):
        out = BOTTOM if s.diverges(t) else s.expand(t)
    elif isinstance(t, Sym) and t.args:
        new = tuple(_round(a, s, memo) for a in t.args)
        out = t if all(x is y for x, y in zip(new, t.args)) else Sym(t.name, new)
    else:
        out = t
    memo[key] = (t, out)  # keep t alive so its id stays unique
    return out


def approximant_term(s: RecursionScheme, depth: int):
    """The closed term reached after ``depth`` rounds of expansion."""
    if depth < 0:
        raise InputError("depth must be nonnegative")
    t = Call(s.principal)
    for _ in range(depth):
        t = _round(t, s, {})
    return t


def tree_of_term(t, alphabet: RankedAlphabet = DELTA) -> PartialTree:
    nodes = {}
    stack = [((), t)]
    while stack:
        addr, u = stack.pop()
        if isinstance(u, Sym):
            nodes[addr] = u.name
            for i, a in enumerate(u.args):
                stack.append((addr + (i,), a))
        elif isinstance(u, Call):
            nodes[addr] = Pending(u.name, u.args)
    return PartialTree(nodes, alphabet)


def unfold(s: RecursionScheme, depth: int) -> PartialTree:
    """The ``depth``-th Kleene approximant of the principal component.

    Calls whose root can never be determined (``F = F`` and the like) are
    dropped as undefined instead of being expanded forever.
    """
    return tree_of_term(approximant_term(s, depth), s.alphabet)


def resolve_path(s: RecursionScheme, address, max_steps: int = 10_000):
    """Follow ``address`` from the root of the least solution, expanding only
    the calls met on the way.

    Returns ``(labels, heads)``: the alphabet symbols found along the path
    (``None`` where the path leaves the tree) and, at the final node, the
    function variables that occupied it as outstanding calls.
    """
    t = Call(s.principal)
    labels = []
    address = tuple(address)
    for depth in range(len(address) + 1):
        heads = []
        steps = 0
        while isinstance(t, Call):
            if t.name not in heads:
                heads.append(t.name)
            if s.diverges(t):
                # walk the divergent chain long enough to see every head
                seen = set()
                u = t
                while isinstance(u, Call) and steps < max_steps:
                    if u.name not in heads:
                        heads.append(u.name)
                    key = format_term(u) if term_size(u) < 200 else None
                    if key is not None and key in seen:
                        break
                    if key is not None:
                        seen.add(key)
                    u = s.expand(u)
                    steps += 1
                t = BOTTOM
                break
            t = s.expand(t)
            steps += 1
        if not isinstance(t, Sym):
            labels.append(None)
            return labels, heads
        labels.append(t.name)
        if depth == len(address):
            return labels, heads
        i = address[depth]
        if i >= len(t.args):
            labels.append(None)
            return labels, []
        t = t.args[i]
    raise AssertionError("unreachable")


# -- frontiers and branch languages -------------------------------------------

def pair_token(sym: str, j: int) -> str:
    """Terminal for the step "child j of a node labeled sym"."""
    return str(j) if sym == "+" else f"{sym}.{j}"


def leaf_token(sym: str) -> str:
    return ONE_TOKEN if sym == "1" else sym


def frontier(t: PartialTree) -> list[tuple[tuple, str]]:
    """Determined leaves in lexicographic order of their addresses, each as
    ``(address word, symbol)`` with the address spelled in digit tokens."""
    leaves = [(a, l) for a, l in t.nodes.items()
              if not isinstance(l, Pending) and t.alphabet.arity.get(l, 0) == 0]
    leaves.sort(key=lambda item: item[0])
    return [(tuple(str(i) for i in a), l) for a, l in leaves]


def hat(t: PartialTree, address) -> tuple:
    """The label-and-direction history of the path to ``address``."""
    address = tuple(address)
    return tuple(pair_token(t.nodes[address[:k]], address[k]) for k in range(len(address)))


def branch_words(t: PartialTree, kind: str = "Lfr") -> set:
    """``Lfr``: one word per determined leaf; ``Pbr``: one per determined node."""
    if kind not in ("Lfr", "Pbr"):
        raise InputError(f"unknown branch language {kind!r}")
    out = set()
    for a, l in t.nodes.items():
        if isinstance(l, Pending):
            continue
        if kind == "Lfr" and t.alphabet.arity.get(l, 0) != 0:
            continue
        out.add(hat(t, a) + (leaf_token(l),))
    return out


def complete_omega(t: PartialTree) -> PartialTree:
    """Fill every missing child slot (and a missing root) with a fresh
    nullary symbol; outstanding calls count as missing."""
    alphabet = t.alphabet.with_symbol(OMEGA_SYMBOL, 0)
    nodes = {a: l for a, l in t.nodes.items() if not isinstance(l, Pending)}
    for a, l in list(nodes.items()):
        for i in range(alphabet.arity[l]):
            nodes.setdefault(a + (i,), OMEGA_SYMBOL)
    if () not in nodes:
        nodes[()] = OMEGA_SYMBOL
    return PartialTree(nodes, alphabet)


def tree_from_labels(labels: dict, alphabet: RankedAlphabet = DELTA) -> PartialTree:
    """Build a tree from ``{"10": "1", ...}``-style string addresses."""
    return PartialTree({tuple(int(c) for c in a): l for a, l in labels.items()}, alphabet)
