"""Command-line front end.

Exit codes: 0 answered (YES or NO), 1 other errors, 2 malformed input,
3 size limits, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .core import CompletionYes, is_yes, undetermined_pairs
from .crosscheck import report_json, run_crosscheck
from .errors import BudgetExceeded, OverlapError, ParseError, SandwichError, SizeError
from .finite_csp import BUILTIN_TEMPLATES, has_siggers, hom_search, is_siggers_table
from .oracle import DEFAULT_BUDGET, ORACLE_CAP, oracle_solve, partition_solve, search_solve, validate
from .poly import POLY_SOLVERS
from .pp import BUILTIN_CONSTRUCTIONS, emit_ppc, gadget_reduce, gadget_to_sandwich, parse_ppc, pp_power
from .recognizers import CliquePartition, PqSplit, Split, parse_class
from .reductions import (
    colouring_to_sandwich,
    complement_instance,
    ham_path_to_cycle_family,
    line_bip_to_a,
    pendant_padding,
    pq_padding,
    universal_vertex_padding,
)

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_SIZE, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(SandwichError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_class(text: str):
    return parse_class(text, graph_loader=lambda f: formats.parse_graph(_read(f)))


def _certificate_lines(cert: CompletionYes) -> list[str]:
    return [f"e {u + 1} {v + 1}" for u, v in sorted(cert.edges)]


# -- commands ---------------------------------------------------------------------

def cmd_solve(args) -> int:
    inst = formats.parse_instance(_read(args.input))
    cls = _load_class(args.cls)
    method = args.method
    if method == "poly" and cls.text not in POLY_SOLVERS:
        raise UsageError(f"class {cls.text} has no polynomial solver")
    if method == "partition" and not isinstance(cls, (PqSplit, CliquePartition, Split)):
        raise UsageError(f"class {cls.text} has no partition solver")
    if method == "auto":
        if cls.text in POLY_SOLVERS:
            method = "poly"
        elif isinstance(cls, (PqSplit, CliquePartition)):
            method = "partition"
        else:
            method = "search"
    try:
        if method == "poly":
            cert = POLY_SOLVERS[cls.text](inst)
        elif method == "partition":
            cert = partition_solve(inst, cls)
        elif method == "oracle":
            cert = oracle_solve(inst, cls)
        else:
            try:
                cert = search_solve(inst, cls, budget=args.budget)
            except BudgetExceeded:
                if args.method == "auto" and len(undetermined_pairs(inst)) <= ORACLE_CAP:
                    cert = oracle_solve(inst, cls)
                else:
                    raise
    except BudgetExceeded:
        _write("UNKNOWN budget\n", args.output)
        return EXIT_BUDGET
    if is_yes(cert):
        if not validate(inst, cert, cls):
            raise AssertionError("solver returned an invalid certificate")
        _write("\n".join(["YES"] + _certificate_lines(cert)) + "\n", args.output)
    else:
        _write("NO\n", args.output)
    return EXIT_OK


def cmd_recognize(args) -> int:
    g = formats.parse_graph(_read(args.input))
    cls = _load_class(args.cls)
    _write("YES\n" if cls.contains(g) else "NO\n", args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    name, _, param = args.reduction.partition(":")
    text = _read(args.input)
    if name == "colouring":
        out = formats.emit_instance(colouring_to_sandwich(formats.parse_graph(text)))
    elif name == "complement":
        out = formats.emit_instance(complement_instance(formats.parse_instance(text)))
    elif name == "pq-pad":
        out = formats.emit_instance(pq_padding(formats.parse_instance(text), int(param)))
    elif name == "universal-pad":
        out = formats.emit_instance(universal_vertex_padding(formats.parse_instance(text)))
    elif name == "pendant-pad":
        out = formats.emit_instance(pendant_padding(formats.parse_instance(text)))
    elif name == "linebip-to-A":
        out = formats.emit_structure_instance(
            line_bip_to_a(formats.parse_instance(text)),
            signature=[("U_N", 1), ("U_E", 1), ("T", 3)])
    elif name == "ham-to-kt":
        try:
            s, t = (int(x) - 1 for x in param.split(","))
        except ValueError:
            raise UsageError("ham-to-kt needs <s>,<t>") from None
        out = formats.emit_graph(ham_path_to_cycle_family(formats.parse_graph(text), s, t))
    else:
        raise UsageError(f"unknown reduction {args.reduction!r}")
    _write(out, args.output)
    return EXIT_OK


def _construction(args):
    if args.builtin:
        if args.builtin not in BUILTIN_CONSTRUCTIONS:
            raise UsageError(f"unknown builtin {args.builtin!r}; "
                             f"choose from {', '.join(sorted(BUILTIN_CONSTRUCTIONS))}")
        return BUILTIN_CONSTRUCTIONS[args.builtin]()
    if args.ppc:
        return parse_ppc(_read(args.ppc))
    raise UsageError("give --builtin or --ppc")


def _structure(path: str):
    if path in BUILTIN_TEMPLATES:
        return BUILTIN_TEMPLATES[path]()
    return formats.parse_structure(_read(path))


def cmd_ppower(args) -> int:
    if args.emit_ppc:
        _write(emit_ppc(_construction(args)), args.output)
        return EXIT_OK
    if not args.structure:
        raise UsageError("ppower needs --structure")
    power, _ = pp_power(_structure(args.structure), _construction(args))
    _write(formats.emit_structure(power), args.output)
    return EXIT_OK


def cmd_gadget(args) -> int:
    con = _construction(args)
    inst = formats.parse_structure_instance(_read(args.input))
    if args.sandwich:
        _write(formats.emit_instance(gadget_to_sandwich(con, inst)), args.output)
    else:
        out = gadget_reduce(con, inst)
        sig = list(con.source)
        if any(s == "NEQ" for s, _ in out.constraints):
            sig.append(("NEQ", 2))
        _write(formats.emit_structure_instance(out, sig), args.output)
    return EXIT_OK


def cmd_hom(args) -> int:
    tmpl = _structure(args.template)
    inst = formats.parse_structure_instance(_read(args.input))
    try:
        cert = hom_search(inst, tmpl, budget=args.budget)
    except BudgetExceeded:
        _write("UNKNOWN budget\n", args.output)
        return EXIT_BUDGET
    if is_yes(cert):
        _write("YES\n" + " ".join(map(str, cert.mapping)) + "\n", args.output)
    else:
        _write("NO\n", args.output)
    return EXIT_OK


def cmd_polymorphism(args) -> int:
    tmpl = _structure(args.siggers)
    try:
        table = has_siggers(tmpl, budget=args.budget)
    except BudgetExceeded:
        _write("UNKNOWN budget\n", args.output)
        return EXIT_BUDGET
    if table is None:
        _write("NONE\n", args.output)
    else:
        if not is_siggers_table(tmpl, table):
            raise AssertionError("search returned a table the validator rejects")
        _write(" ".join(map(str, table)) + "\n", args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = formats.random_instance(args.n, args.p_forced, args.p_forbidden, args.seed)
    _write(formats.emit_instance(inst), args.output)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    cls = _load_class(args.cls)
    report = run_crosscheck(cls, seed=args.seed, random_count=args.random,
                            sizes=tuple(args.sizes), workers=args.workers)
    _write(report_json(report), args.output)
    return EXIT_OK if report["total_discrepancies"] == 0 and \
        report["total_invalid_certificates"] == 0 else EXIT_ERROR


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sandwich-csp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="input file, '-' for stdin")
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    sp = sub.add_parser("solve", help="decide a sandwich instance")
    common(sp)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--method", choices=["auto", "poly", "search", "oracle", "partition"],
                    default="auto")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search nodes, 0 = unlimited")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("recognize", help="test class membership of a graph")
    common(sp)
    sp.add_argument("--class", dest="cls", required=True)
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("reduce", help="apply an instance reduction")
    common(sp)
    sp.add_argument("--reduction", "-r", required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("ppower", help="pp-power of a finite structure")
    common(sp, needs_input=False)
    sp.add_argument("--builtin")
    sp.add_argument("--ppc")
    sp.add_argument("--structure", help=".fst file or builtin template name")
    sp.add_argument("--emit-ppc", action="store_true", help="print the construction itself")
    sp.set_defaults(func=cmd_ppower)

    sp = sub.add_parser("gadget", help="gadget reduction of a CSP instance")
    common(sp)
    sp.add_argument("--builtin")
    sp.add_argument("--ppc")
    sp.add_argument("--sandwich", action="store_true", help="emit a sandwich instance")
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("hom", help="homomorphism search of a CSP instance into a template")
    common(sp)
    sp.add_argument("--template", required=True, help=".fst file or builtin template name")
    sp.add_argument("--budget", type=int, default=0)
    sp.set_defaults(func=cmd_hom)

    sp = sub.add_parser("polymorphism", help="search for a 4-ary Siggers polymorphism")
    common(sp, needs_input=False)
    sp.add_argument("--siggers", required=True, help=".fst file or builtin template name")
    sp.add_argument("--budget", type=int, default=0)
    sp.set_defaults(func=cmd_polymorphism)

    sp = sub.add_parser("gen", help="random sandwich instance")
    common(sp, needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p-forced", type=float, default=0.3)
    sp.add_argument("--p-forbidden", type=float, default=0.3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("crosscheck", help="fast solver against the oracle")
    common(sp, needs_input=False)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random", type=int, default=500, help="random instances per size")
    sp.add_argument("--sizes", type=int, nargs="+", default=[5, 6, 7])
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OverlapError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SandwichError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
