"""Analysis of grammars whose lexicographic ordering may be scattered.

The criteria here are one-directional.  A dense triple or an incomparable
pair of pumping prefixes refutes scatteredness; finding nothing within the
search bound proves nothing, and the verdicts say so.  Rank bounds
``w^h + 1`` come from the height of each nonterminal in the reachability
order of its strongly connected components.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import InconclusiveError, InputError
from .grammar import Grammar, NormalizeReport, language_table, normalize
from .ordinal import ONE, Ordinal, cnf_add, format_ordinal, is_below_tower
from .words import PrefixRelation, is_prefix_free, prefix_compare, primitive_root, strict_less


@dataclass
class NonterminalAnalysis:
    scc: int
    height: int
    recursive: bool
    left_recursive: bool = False
    pumping_prefixes: frozenset = frozenset()
    primitive_root: tuple | None = None
    root_violation: tuple | None = None
    rank_bound: Ordinal | None = None


# -- verdicts ---------------------------------------------------------------------

@dataclass(frozen=True)
class RefutedIncomparable:
    """Two pumping prefixes of one nonterminal, neither a prefix of the
    other; refutes scatteredness of a prefix grammar."""

    nonterminal: str
    u: tuple
    v: tuple
    kind = "RefutedIncomparable"

    def words(self):
        return (self.u, self.v)


@dataclass(frozen=True)
class RefutedDenseTriple:
    """Pumping prefixes ``u0 <_s u1 <_s u2``; refutes scatteredness outright."""

    nonterminal: str
    u0: tuple
    u1: tuple
    u2: tuple
    kind = "RefutedDenseTriple"

    def words(self):
        return (self.u0, self.u1, self.u2)


@dataclass(frozen=True)
class NoWitnessWithinBound:
    bound: int
    kind = "NoWitnessWithinBound"

    def words(self):
        return ()


@dataclass(frozen=True)
class PrefixVerdict:
    """``prefix`` is True when no violation was found up to ``bound``."""

    prefix: bool
    bound: int
    nonterminal: str | None = None
    witness: tuple | None = None


@dataclass(frozen=True)
class RootCheck:
    root: tuple | None
    violation: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


# -- structure -----------------------------------------------------------------------

def _edges(g: Grammar) -> dict:
    out = {x: [] for x in g.nonterminals}
    for lhs, rhs in g.productions:
        for s in rhs:
            if not g.is_terminal(s) and s not in out[lhs]:
                out[lhs].append(s)
    return out


def _tarjan(nodes, edges) -> list[list]:
    """Strongly connected components, sinks first."""
    index, low, on_stack = {}, {}, set()
    stack, comps, counter = [], [], 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def sccs_and_heights(g: Grammar) -> dict:
    """Map each nonterminal to its SCC id, height and recursiveness.

    The height is the number of distinct SCCs strictly below the
    nonterminal's own SCC in the derives-reachability order.
    """
    edges = _edges(g)
    comps = _tarjan(g.nonterminals, edges)
    comp_of = {x: i for i, c in enumerate(comps) for x in c}
    below = []
    for i, comp in enumerate(comps):  # sinks first, so successors are done
        acc = set()
        for x in comp:
            for y in edges[x]:
                j = comp_of[y]
                if j != i:
                    acc.add(j)
                    acc |= below[j]
        below.append(acc)
    out = {}
    for x in g.nonterminals:
        i = comp_of[x]
        recursive = len(comps[i]) > 1 or x in edges[x]
        out[x] = NonterminalAnalysis(scc=i, height=len(below[i]), recursive=recursive)
    return out


def detect_left_recursion(g: Grammar) -> set:
    """Nonterminals X with X =>+ X q, for epsilon-free grammars."""
    lead = {x: [] for x in g.nonterminals}
    for lhs, rhs in g.productions:
        if rhs and not g.is_terminal(rhs[0]) and rhs[0] not in lead[lhs]:
            lead[lhs].append(rhs[0])
    out = set()
    for comp in _tarjan(g.nonterminals, lead):
        if len(comp) > 1 or comp[0] in lead[comp[0]]:
            out.update(comp)
    return out


def default_depth(g: Grammar) -> int:
    return 2 * len(g.nonterminals) + 2


def pumping_prefixes(g: Grammar, x: str, depth: int | None = None) -> set:
    """Terminal words u with X =>+ u X p using at most ``depth`` leftmost
    production applications.  The empty word appears iff X is left recursive
    within the bound."""
    info = sccs_and_heights(g)
    if x not in info:
        raise InputError(f"unknown nonterminal {x!r}")
    if not info[x].recursive:
        raise InputError(f"{x!r} is not recursive")
    depth = default_depth(g) if depth is None else depth
    if depth < 1:
        raise InputError("depth must be positive")
    cap = depth * max((len(r) for _, r in g.productions), default=1)
    layer = {((), (x,))}
    found = set()
    for step in range(depth):
        keep = depth - step - 1  # rest symbols that later steps can still touch
        nxt = set()
        for prefix, rest in layer:
            for rhs in g.rules[rest[0]]:
                form = rhs + rest[1:]
                i = 0
                while i < len(form) and g.is_terminal(form[i]):
                    i += 1
                p = prefix + form[:i]
                r = form[i:]
                if len(p) > cap or not r:
                    continue
                if r[0] == x:
                    found.add(p)
                if keep:
                    nxt.add((p, r[: keep]))
        layer = nxt
    return found


def _shortlex(g: Grammar):
    return lambda w: (len(w), g.terminals.key(w))


def primitive_root_of(g: Grammar, x: str, depth: int | None = None) -> RootCheck:
    """Primitive root of the shortest nonempty pumping prefix of X, checked
    against every other pumping prefix found.  A failure is returned as
    ``violation = (shortest, offender)``."""
    pumps = sorted((p for p in pumping_prefixes(g, x, depth) if p), key=_shortlex(g))
    if not pumps:
        raise InconclusiveError(f"no nonempty pumping prefix of {x!r} within the bound")
    root, _ = primitive_root(pumps[0])
    for p in pumps[1:]:
        if len(p) % len(root) or root * (len(p) // len(root)) != p:
            return RootCheck(root, (pumps[0], p))
    return RootCheck(root)


def refute_scattered(g: Grammar, depth: int | None = None):
    """Look for a dense triple, then for an incomparable pair, among the
    pumping prefixes of every recursive nonterminal."""
    depth = default_depth(g) if depth is None else depth
    info = sccs_and_heights(g)
    key = _shortlex(g)
    pair = None
    for x in g.nonterminals:
        if not info[x].recursive:
            continue
        found = pumping_prefixes(g, x, depth)
        pumps = sorted((p for p in found if p), key=key)
        for j, v in enumerate(pumps):
            hit = None
            for u in pumps[:j]:
                if prefix_compare(u, v) is PrefixRelation.INCOMPARABLE:
                    hit = (u, v) if strict_less(u, v, g.terminals) else (v, u)
                    break
            if hit is None:
                continue
            u, v = hit
            triple = (u + u, u + v, v + u)
            if all(t in found for t in triple):
                assert strict_less(triple[0], triple[1], g.terminals)
                assert strict_less(triple[1], triple[2], g.terminals)
                return RefutedDenseTriple(x, *triple)
            if pair is None:
                pair = RefutedIncomparable(x, u, v)
            break
    return pair if pair is not None else NoWitnessWithinBound(depth)


def double_self_embedding(g: Grammar, x: str) -> bool:
    """True iff X =>* p X q X r for some p, q, r (exact, on a grammar
    without useless symbols)."""
    reaches = {y for y in g.nonterminals if _reaches(g, y, x)}
    twice = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs in twice:
                continue
            hits = [s for s in rhs if s in reaches]
            if len(hits) >= 2 or any(s in twice for s in rhs):
                twice.add(lhs)
                changed = True
    return x in twice


def _reaches(g: Grammar, y: str, x: str) -> bool:
    edges = _edges(g)
    seen, stack = {y}, [y]
    while stack:
        z = stack.pop()
        if z == x:
            return True
        for w in edges[z]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def check_prefix_property(g: Grammar, max_len: int) -> PrefixVerdict:
    """Enumerate each L(X) up to ``max_len`` and look for a word that is a
    proper prefix of another."""
    table = language_table(g, max_len)
    for x in g.nonterminals:
        witness = is_prefix_free(table[x], g.terminals)
        if witness is not None:
            return PrefixVerdict(False, max_len, x, witness)
    return PrefixVerdict(True, max_len)


def rank_bound_report(g: Grammar, info: dict | None = None) -> tuple[dict, Ordinal]:
    """``w^height + 1`` per nonterminal, and the bound for the start symbol."""
    info = sccs_and_heights(g) if info is None else info
    bounds = {x: cnf_add(Ordinal.omega_to(Ordinal.of(a.height)), ONE) for x, a in info.items()}
    overall = bounds[g.start]
    assert is_below_tower(overall, 1)
    return bounds, overall


# -- L/R decomposition ------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionBucket:
    """Words ``u0^n w`` that leave ``u0`` at ``pivot``: for kind ``L`` with a
    smaller letter than ``pivot``'s last, for ``R`` with a larger one."""

    kind: str
    n: int
    pivot: tuple
    words: tuple


@dataclass(frozen=True)
class Decomposition:
    root: tuple
    buckets: tuple
    overflow: tuple
    unclassified: tuple

    def side(self, kind: str, n: int | None = None) -> list:
        return [w for b in self.buckets if b.kind == kind and (n is None or b.n == n) for w in b.words]


def decompose_LR(g: Grammar, x: str, n_max: int, max_len: int,
                 depth: int | None = None) -> Decomposition:
    """Split the enumerated words of L(X) into the buckets L(X, n, u1) and
    R(X, n, u0) around the primitive root u0 of X's pumping prefixes.

    Words that need more than ``n_max`` copies of u0 go to ``overflow``;
    words that are prefixes of a power of u0 fit no bucket and go to
    ``unclassified``.
    """
    try:
        check = primitive_root_of(g, x, depth)
    except InconclusiveError as exc:
        raise InputError(f"no primitive root for {x!r}: {exc}") from None
    if not check.ok:
        raise InputError(f"{x!r} has pumping prefixes {check.violation} with no common root")
    u0 = check.root
    alpha = g.terminals
    groups: dict = {}
    overflow, unclassified = [], []
    for w in sorted(language_table(g, max_len)[x], key=alpha.key):
        n, pos = 0, 0
        while w[pos:pos + len(u0)] == u0:
            n += 1
            pos += len(u0)
        rest = w[pos:]
        k = 0
        while k < len(rest) and rest[k] == u0[k]:
            k += 1
        if k == len(rest):
            unclassified.append(w)
            continue
        if n > n_max:
            overflow.append(w)
            continue
        kind = "L" if alpha.index(rest[k]) < alpha.index(u0[k]) else "R"
        groups.setdefault((kind, n, u0[: k + 1]), []).append(w)
    order = sorted(groups, key=lambda b: (b[0], b[1], alpha.key(b[2])))
    buckets = tuple(DecompositionBucket(k, n, p, tuple(groups[(k, n, p)])) for k, n, p in order)
    return Decomposition(u0, buckets, tuple(overflow), tuple(unclassified))


def decomposition_violations(d: Decomposition, g: Grammar) -> list[str]:
    """Check the bucket order on the sample: L ascends with n, R descends,
    and every L word is strictly below every R word."""
    a = g.terminals
    out = []

    def all_below(xs, ys, what):
        if xs and ys:
            hi = max(xs, key=a.key)
            lo = min(ys, key=a.key)
            if not all(strict_less(u, v, a) for u in xs for v in ys) or not strict_less(hi, lo, a):
                out.append(what)

    ns = sorted({b.n for b in d.buckets})
    for i, n in enumerate(ns):
        for m in ns[i + 1:]:
            all_below(d.side("L", n), d.side("L", m), f"L({n}) not below L({m})")
            all_below(d.side("R", m), d.side("R", n), f"R({m}) not below R({n})")
    all_below(d.side("L"), d.side("R"), "L not below R")
    return out


# -- whole-grammar report -----------------------------------------------------------

def singleton_words(g: Grammar) -> dict:
    """Nonterminals whose language is exactly one word, with that word."""
    info = sccs_and_heights(g)
    edges = _edges(g)
    finite = {}

    def is_finite(x, seen=()):
        if x in finite:
            return finite[x]
        if info[x].recursive:
            finite[x] = False
            return False
        finite[x] = all(is_finite(y) for y in edges[x])
        return finite[x]

    memo = {}

    def word(x):
        if x in memo:
            return memo[x]
        result = None
        ok = True
        for rhs in g.rules[x]:
            parts = []
            for s in rhs:
                w = (s,) if g.is_terminal(s) else word(s)
                if w is None:
                    ok = False
                    break
                parts.append(w)
            if not ok:
                break
            w = tuple(t for p in parts for t in p)
            if result is None:
                result = w
            elif result != w:
                ok = False
                break
        memo[x] = result if ok else None
        return memo[x]

    return {x: word(x) for x in g.nonterminals if is_finite(x) and word(x) is not None}


def inline_singletons(g: Grammar) -> tuple[Grammar, tuple]:
    """Substitute nonterminals (other than the start) whose language is a
    single word, then renormalize."""
    inlined = []
    while True:
        singles = {x: w for x, w in singleton_words(g).items() if x != g.start}
        if not singles:
            return g, tuple(inlined)
        inlined.extend(singles)
        prods = [(lhs, tuple(t for s in rhs for t in (singles[s] if s in singles else (s,))))
                 for lhs, rhs in g.productions if lhs not in singles]
        keep = [x for x in g.nonterminals if x not in singles]
        g = normalize(g.with_productions(prods, keep))[0]


@dataclass
class AnalysisReport:
    grammar: Grammar
    normalization: NormalizeReport
    inlined: tuple
    nonterminals: dict
    left_recursive: set
    scattered: object
    prefix: PrefixVerdict
    overall_rank_bound: Ordinal
    depth: int
    max_len: int
    diagnostics: list = field(default_factory=list)

    @property
    def status(self) -> int:
        """0 when nothing was refuted or violated, else 1."""
        if not isinstance(self.scattered, NoWitnessWithinBound):
            return 1
        if not self.prefix.prefix or self.left_recursive:
            return 1
        if any(a.root_violation for a in self.nonterminals.values()):
            return 1
        if self.normalization.contains_empty and not self.normalization.empty_language:
            return 1
        return 0

    def to_dict(self) -> dict:
        r = self.grammar.terminals.render
        per = {}
        for x, a in self.nonterminals.items():
            per[x] = {
                "scc": a.scc,
                "height": a.height,
                "recursive": a.recursive,
                "leftRecursive": a.left_recursive,
                "pumpingPrefixes": [r(p) for p in sorted(a.pumping_prefixes, key=_shortlex(self.grammar))],
                "primitiveRoot": None if a.primitive_root is None else r(a.primitive_root),
                "rankBound": format_ordinal(a.rank_bound),
            }
            if a.root_violation:
                per[x]["rootViolation"] = [r(w) for w in a.root_violation]
        sv = self.scattered
        verdict = {"kind": sv.kind}
        if isinstance(sv, NoWitnessWithinBound):
            verdict["bound"] = sv.bound
        else:
            verdict["nonterminal"] = sv.nonterminal
            verdict["witness"] = [r(w) for w in sv.words()]
        pv = self.prefix
        prefix = {"prefix": pv.prefix, "bound": pv.bound}
        if pv.witness is not None:
            prefix["nonterminal"] = pv.nonterminal
            prefix["witness"] = [r(w) for w in pv.witness]
        return {
            "start": self.grammar.start,
            "nonterminals": per,
            "scatteredVerdict": verdict,
            "prefixVerdict": prefix,
            "overallRankBound": format_ordinal(self.overall_rank_bound),
            "normalization": {
                "containsEmpty": self.normalization.contains_empty,
                "emptyLanguage": self.normalization.empty_language,
                "dropped": list(self.normalization.dropped),
                "inlined": list(self.inlined),
            },
            "depth": self.depth,
            "maxLen": self.max_len,
            "diagnostics": list(self.diagnostics),
            "status": self.status,
        }

    def to_json(self) -> str:
        return dump_json(self.to_dict())


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def analyze(g: Grammar, depth: int | None = None, max_len: int = 12) -> AnalysisReport:
    """Normalize, inline singleton nonterminals, then run every analysis."""
    ng, nrep = normalize(g)
    diagnostics = []
    if nrep.contains_empty:
        diagnostics.append("the empty word is in the language and was removed")
    ng, inlined = inline_singletons(ng)
    depth = default_depth(ng) if depth is None else depth
    info = sccs_and_heights(ng)
    left = detect_left_recursion(ng)
    for x, a in info.items():
        a.left_recursive = x in left
        if not a.recursive:
            continue
        a.pumping_prefixes = frozenset(pumping_prefixes(ng, x, depth))
        try:
            check = primitive_root_of(ng, x, depth)
        except InconclusiveError:
            diagnostics.append(f"no nonempty pumping prefix of {x} within depth {depth}")
            continue
        a.primitive_root = check.root
        a.root_violation = check.violation
    bounds, overall = rank_bound_report(ng, info)
    for x, b in bounds.items():
        info[x].rank_bound = b
    return AnalysisReport(
        grammar=ng,
        normalization=nrep,
        inlined=inlined,
        nonterminals=info,
        left_recursive=left,
        scattered=refute_scattered(ng, depth),
        prefix=check_prefix_property(ng, max_len),
        overall_rank_bound=overall,
        depth=depth,
        max_len=max_len,
        diagnostics=diagnostics,
    )
