"""Command-line entry point: ``algebraic-orders <command> ...``.

Exit status 0 means nothing was refuted or violated, 1 a refutation or a
failed check, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .analysis import analyze, dump_json
from .closure import scheme_for_ordinal
from .errors import InputError
from .grammar import enumerate_words, format_grammar, normalize, parse_grammar
from .ordinal import cnf_add, cnf_compare, cnf_mul, format_ordinal, is_below_tower, omega_pow, parse_ordinal
from .scheme import branch_words, format_scheme, frontier, parse_scheme, unfold
from .translate import check_claim, frontier_grammar, scheme_to_prefix_grammar
from .words import embed_into_rationals


@dataclass
class RunReport:
    command: list
    stages: dict = field(default_factory=dict)
    status: int = 0
    text: str = ""

    def to_dict(self) -> dict:
        return {"command": self.command, "stages": self.stages, "status": self.status}


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _summary(report) -> str:
    d = report.to_dict()
    lines = [f"start {d['start']}"]
    for x, a in d["nonterminals"].items():
        root = a["primitiveRoot"] or "-"
        if "rootViolation" in a:
            root += " (violated by {} vs {})".format(*a["rootViolation"])
        flags = "recursive" if a["recursive"] else "finite"
        lines.append(f"  {x}: scc {a['scc']} height {a['height']} {flags} root {root} bound {a['rankBound']}")
    sv = d["scatteredVerdict"]
    lines.append(f"scattered: {sv['kind']} {' '.join(sv.get('witness', [])) or sv.get('bound', '')}".rstrip())
    pv = d["prefixVerdict"]
    lines.append(f"prefix up to {pv['bound']}: {'yes' if pv['prefix'] else 'no ' + ' '.join(pv['witness'])}")
    lines.append(f"rank bound: {d['overallRankBound']}")
    for msg in d["diagnostics"]:
        lines.append(f"note: {msg}")
    return "\n".join(lines) + "\n"


def cmd_analyze(path: str, depth=None, max_len: int = 12, as_json: bool = False) -> RunReport:
    g = parse_grammar(_read(path))
    report = analyze(g, depth, max_len)
    run = RunReport(["analyze", path], {"analysis": report.to_dict()}, report.status)
    run.text = report.to_json() if as_json else _summary(report)
    return run


def cmd_pipeline(literal: str, depth=None, max_len: int = 12, as_json: bool = False) -> RunReport:
    a = parse_ordinal(literal)
    s = scheme_for_ordinal(a)
    g = scheme_to_prefix_grammar(s)
    fg = frontier_grammar(g)
    report = analyze(fg, depth, max_len)
    claim = check_claim(s, g, max_len, max_len)
    checks = {
        "noScatterednessWitness": report.scattered.kind == "NoWitnessWithinBound",
        "prefixUpToBound": report.prefix.prefix,
        "rankBelowOmegaOmega": is_below_tower(report.overall_rank_bound, 1),
        "claimHolds": claim.ok,
    }
    stages = {
        "ordinal": format_ordinal(a),
        "scheme": format_scheme(s),
        "grammar": format_grammar(g),
        "frontierGrammar": format_grammar(report.grammar),
        "analysis": report.to_dict(),
        "claimMismatches": len(claim.mismatches),
        "checks": checks,
    }
    status = 0 if all(checks.values()) and report.status == 0 else 1
    run = RunReport(["pipeline", literal], stages, status)
    if as_json:
        run.text = dump_json(run.to_dict())
    else:
        checks_txt = "".join(f"{k}: {'ok' if v else 'FAILED'}\n" for k, v in checks.items())
        run.text = (f"ordinal {stages['ordinal']}\n\n{stages['scheme']}\n{stages['frontierGrammar']}\n"
                    + _summary(report) + checks_txt)
    return run


def cmd_scheme(path: str, depth: int = 6, as_json: bool = False) -> RunReport:
    s = parse_scheme(_read(path))
    t = unfold(s, depth)
    leaves = ["".join(w) for w, _ in frontier(t)]
    stages = {
        "scheme": format_scheme(s),
        "tree": t.render(),
        "frontier": leaves,
        "lfr": sorted(" ".join(w) for w in branch_words(t, "Lfr")),
    }
    run = RunReport(["scheme", path], stages)
    if as_json:
        run.text = dump_json(run.to_dict())
    else:
        nodes = "".join(f"  {a or 'ε'}: {l}\n" for a, l in stages["tree"].items())
        run.text = f"{stages['scheme']}\nunfolding at depth {depth}:\n{nodes}frontier: {' '.join(leaves)}\n"
    return run


def cmd_translate(path: str, leaves_only: bool = False) -> RunReport:
    s = parse_scheme(_read(path))
    g = scheme_to_prefix_grammar(s)
    if leaves_only:
        g = frontier_grammar(g)
    text = format_grammar(g)
    return RunReport(["translate", path], {"grammar": text}, 0, text)


def cmd_enum(path: str, max_len: int = 12, as_json: bool = False) -> RunReport:
    g, _ = normalize(parse_grammar(_read(path)))
    words = [g.terminals.render(w) for w in enumerate_words(g, max_len)]
    run = RunReport(["enum", path], {"words": words})
    run.text = dump_json(run.to_dict()) if as_json else "".join(w + "\n" for w in words)
    return run


def parse_comparisons(text: str) -> tuple[list, set]:
    keys, pairs = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("<")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise InputError(f"line {lineno}: expected 'key1 < key2'")
        a, b = parts[0].strip(), parts[1].strip()
        if a == b:
            raise InputError(f"line {lineno}: {a} < {a} is not a strict order")
        for k in (a, b):
            if k not in keys:
                keys.append(k)
        pairs.add((a, b))
    return keys, pairs


def cmd_embed(path: str = "-", as_json: bool = False) -> RunReport:
    """Keys are placed in sorted order (so the result does not depend on how
    the comparisons were listed) and printed in first-appearance order."""
    keys, pairs = parse_comparisons(_read(path))
    above = {k: set() for k in keys}
    for a, b in pairs:
        above[a].add(b)
    changed = True
    while changed:  # transitive closure
        changed = False
        for k in keys:
            extra = set().union(*(above[j] for j in above[k])) - above[k] if above[k] else set()
            if extra:
                above[k] |= extra
                changed = True
    for k in keys:
        if k in above[k]:
            raise InputError(f"comparisons contain a cycle through {k}")
    words = embed_into_rationals(sorted(keys), lambda p, q: q in above[p])
    out = {k: "".join(words[k]) for k in keys}
    run = RunReport(["embed", path], {"embedding": out})
    run.text = dump_json(run.to_dict()) if as_json else "".join(f"{k}: {w}\n" for k, w in out.items())
    return run


def cmd_ordinal(op: str, operands: list) -> RunReport:
    want = 1 if op == "pow" else 2
    if len(operands) != want:
        raise InputError(f"ordinal {op} takes {want} operand(s)")
    xs = [parse_ordinal(o) for o in operands]
    if op == "add":
        res = format_ordinal(cnf_add(*xs))
    elif op == "mul":
        res = format_ordinal(cnf_mul(*xs))
    elif op == "pow":
        res = format_ordinal(omega_pow(xs[0]))
    else:
        res = "<=>"[cnf_compare(*xs) + 1]
    return RunReport(["ordinal", op, *operands], {"result": res}, 0, res + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algebraic-orders", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, depth=True, maxlen=True):
        if depth:
            sp.add_argument("--depth", type=int, default=None, help="search depth (default 2|N|+2)")
        if maxlen:
            sp.add_argument("--maxlen", type=int, default=12, help="enumeration length bound")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("-o", "--output", help="write output to a file")

    sp = sub.add_parser("analyze", help="analyze a grammar file")
    sp.add_argument("grammar")
    common(sp)
    sp = sub.add_parser("pipeline", help="ordinal -> scheme -> grammar -> analysis")
    sp.add_argument("ordinal")
    common(sp)
    sp = sub.add_parser("scheme", help="unfold a scheme file and print its frontier")
    sp.add_argument("scheme")
    sp.add_argument("--depth", type=int, default=6)
    common(sp, depth=False, maxlen=False)
    sp = sub.add_parser("translate", help="translate a scheme file to a grammar")
    sp.add_argument("scheme")
    sp.add_argument("--frontier", action="store_true", help="drop leaf symbols (leaf-address grammar)")
    sp.add_argument("-o", "--output")
    sp = sub.add_parser("enum", help="list the words of a grammar up to a length")
    sp.add_argument("grammar")
    common(sp, depth=False)
    sp = sub.add_parser("embed", help="embed 'a < b' comparisons into (0+11)*01")
    sp.add_argument("input", nargs="?", default="-")
    common(sp, depth=False, maxlen=False)
    sp = sub.add_parser("ordinal", help="ordinal arithmetic on literals such as w^2+1")
    sp.add_argument("op", choices=["add", "mul", "pow", "cmp"])
    sp.add_argument("operands", nargs="+")
    return p


def run(args) -> RunReport:
    c = args.command
    if c == "analyze":
        return cmd_analyze(args.grammar, args.depth, args.maxlen, args.json)
    if c == "pipeline":
        return cmd_pipeline(args.ordinal, args.depth, args.maxlen, args.json)
    if c == "scheme":
        return cmd_scheme(args.scheme, args.depth, args.json)
    if c == "translate":
        return cmd_translate(args.scheme, args.frontier)
    if c == "enum":
        return cmd_enum(args.grammar, args.maxlen, args.json)
    if c == "embed":
        return cmd_embed(args.input, args.json)
    return cmd_ordinal(args.op, args.operands)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(report.text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(report.text)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
