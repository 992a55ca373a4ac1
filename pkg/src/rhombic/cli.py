"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors
and malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import parse_rational
from .asep import verify_stationarity
from .assemblees import (Assemblee, GreenPointChoice, TruncatedSubexceedant, enumerate_assemblees,
                         insert, rho, statistics)
from .bijections import Label, LabeledTableau, fusion_exchange, label_passing_trace
from .errors import RhombicError
from .rat import (Tableau, closed_form_partition, enumerate_fillings, partition_function,
                  state_weight, tableau_weight)
from .render import (assemblee_ascii, assemblee_svg, tableau_ascii, tableau_svg, trace_ascii,
                     trace_svg)
from .shapes import Tiling, canonical_tiling, parse_word
from .verify import run_all


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(path: str | None):
    if path is None:
        raise UsageError("--in is required")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _need(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _trace_json(lt: LabeledTableau) -> dict:
    return {"tableau": lt.tableau.to_json(), "assemblee": lt.assemblee.to_json(), "edges": lt.dump()}


# --------------------------------------------------------------------------
# subcommands; each returns (exit code, text)
# --------------------------------------------------------------------------


def cmd_enumerate_rat(args) -> tuple[int, str]:
    if args.input is not None:
        tiling = Tiling.from_json(_read_json(args.input))
    else:
        _need(args, "word")
        tiling = canonical_tiling(parse_word(args.word))
    tableaux = enumerate_fillings(tiling)
    if args.format == "ascii":
        return 0, "\n".join(tableau_ascii(t) for t in tableaux)
    return 0, _dump([t.to_json() for t in tableaux])


def cmd_weight(args) -> tuple[int, str]:
    if args.input is not None:
        poly = tableau_weight(Tableau.from_json(_read_json(args.input)))
    else:
        _need(args, "word")
        poly = state_weight(parse_word(args.word))
    return 0, (str(poly) + "\n" if args.format == "ascii" else _dump(poly.to_json()))


def cmd_partition(args) -> tuple[int, str]:
    _need(args, "n", "r")
    poly = partition_function(args.n, args.r, jobs=args.jobs)
    return 0, (str(poly) + "\n" if args.format == "ascii" else _dump(poly.to_json()))


def cmd_verify_partition(args) -> tuple[int, str]:
    _need(args, "n", "r")
    enumerated = partition_function(args.n, args.r, jobs=args.jobs).specialize(q=1)
    closed = closed_form_partition(args.n, args.r)
    ok = enumerated == closed
    text = (f"enumerated:  {json.dumps(enumerated.to_json())}\n"
            f"closed form: {json.dumps(closed.to_json())}\n"
            f"{'PASS' if ok else 'FAIL'}\n")
    return (0 if ok else 1), text


def cmd_biject(args) -> tuple[int, str]:
    data = _read_json(args.input)
    if args.direction == "a2t":
        lt = fusion_exchange(Assemblee.from_json(data))
        return 0, _dump(_trace_json(lt) if args.trace else lt.tableau.to_json())
    t = Tableau.from_json(data)
    a, labels = label_passing_trace(t)
    if args.trace:
        return 0, _dump(_trace_json(LabeledTableau(t, labels, a)))
    return 0, json.dumps(a.to_json()) + "\n"


def cmd_enumerate_assemblees(args) -> tuple[int, str]:
    _need(args, "n", "r")
    items = enumerate_assemblees(args.n + 1, args.r + 1)
    if args.format == "ascii":
        return 0, "".join(assemblee_ascii(a) for a in items)
    out = []
    for a in items:
        st = statistics(a)
        out.append({"blocks": a.to_json(), "lrs": list(st.lrs), "rls": list(st.rls)})
    return 0, _dump(out)


def cmd_insert(args) -> tuple[int, str]:
    _need(args, "r", "f", "g")
    f = TruncatedSubexceedant(args.r, tuple(args.f))
    ins = insert(f, GreenPointChoice(tuple(args.g)))
    image = rho(ins.assemblee)
    if args.format == "ascii":
        return 0, f"insert: {ins.assemblee}\nrho:    {image}\nweight: {ins.weight}\n"
    return 0, _dump({"inserted": ins.assemblee.to_json(), "rho": image.to_json(),
                     "weight": ins.weight.to_json()})


def cmd_verify_asep(args) -> tuple[int, str]:
    _need(args, "n", "r", "alpha", "beta", "q")
    report = verify_stationarity(args.n, args.r, args.alpha, args.beta, args.q)
    return (0 if report.passed else 1), _dump(report.to_json())


def cmd_verify_all(args) -> tuple[int, str]:
    max_n = 7 if args.max_n is None else args.max_n
    results = run_all(max_n, jobs=args.jobs)
    lines = [f"verify-all --max-n {max_n}"] + [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    return (0 if not failed else 1), "\n".join(lines) + "\n"


def cmd_render(args) -> tuple[int, str]:
    data = _read_json(args.input)
    ascii_mode = args.format == "ascii"
    if isinstance(data, list):
        a = Assemblee.from_json(data)
        return 0, assemblee_ascii(a) if ascii_mode else assemblee_svg(a)
    if not isinstance(data, dict):
        raise UsageError("render expects a tableau, an assemblee or a labelled trace")
    if "edges" in data and "tableau" in data:
        t = Tableau.from_json(data["tableau"])
        labels = _labels_from_json(data["edges"])
        return 0, trace_ascii(t, labels) if ascii_mode else trace_svg(t, labels)
    t = Tableau.from_json(data)
    return 0, tableau_ascii(t) if ascii_mode else tableau_svg(t)


def _labels_from_json(records) -> dict:
    out = {}
    try:
        for rec in records:
            (x1, y1), (x2, y2) = rec["edge"]
            lab = rec["label"]
            out[((int(x1), int(y1)), (int(x2), int(y2)))] = None if lab is None else Label(*lab)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed edge record: {exc}") from exc
    return out


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rhombic", description="Rhombic alternative tableaux, "
                                     "assemblées and the two-species ASEP.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, *opts, formats=("json", "ascii")):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        flags = {
            "word": lambda: p.add_argument("--word", help="state word over D, A, E"),
            "n": lambda: p.add_argument("--n", type=int, help="word length"),
            "r": lambda: p.add_argument("--r", type=int, help="number of light particles"),
            "in": lambda: p.add_argument("--in", dest="input", metavar="FILE",
                                         help="input JSON file ('-' for stdin)"),
            "jobs": lambda: p.add_argument("--jobs", type=int, default=1,
                                           help="worker processes for enumeration"),
        }
        for opt in opts:
            flags[opt]()
        p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        p.add_argument("--format", choices=formats, default=formats[0])
        return p

    add("enumerate-rat", cmd_enumerate_rat, "all tableaux on a canonical (or given) tiling",
        "word", "in")
    add("weight", cmd_weight, "weight polynomial of a state or a tableau", "word", "in")
    add("partition", cmd_partition, "partition function Z_{n,r}", "n", "r", "jobs")
    add("verify-partition", cmd_verify_partition, "compare Z_{n,r} at q=1 with the product formula",
        "n", "r", "jobs", formats=("text",))

    p = add("biject", cmd_biject, "fusion-exchange (a2t) or label-passing (t2a)", "in",
            formats=("json",))
    p.add_argument("direction", choices=("a2t", "t2a"))
    p.add_argument("--trace", action="store_true", help="include every edge label")

    add("enumerate-assemblees", cmd_enumerate_assemblees,
        "assemblees of size n+1 with r+1 blocks", "n", "r")

    p = add("insert", cmd_insert, "run the insertion algorithm, then rho", "r")
    p.add_argument("--f", type=_int_list, help="subexceedant values, e.g. 1,3,2")
    p.add_argument("--g", type=_int_list, help="green point positions, top to bottom")

    p = add("verify-asep", cmd_verify_asep, "exact stationary distribution versus tableau weights",
            "n", "r", formats=("json",))
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--q", type=_rational)

    p = add("verify-all", cmd_verify_all, "run every identity check", "jobs", formats=("text",))
    p.add_argument("--max-n", type=int, help="cap on every size bound (default 7)")

    add("render", cmd_render, "draw a tableau, assemblee or labelled trace", "in",
        formats=("svg", "ascii"))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except (UsageError, RhombicError, ValueError) as exc:
        parser.exit(2, f"rhombic {args.command}: error: {exc}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
