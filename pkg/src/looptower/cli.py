"""Command-line interface.

Subcommands: adem, akmember, module (check|phi|tensor-phi|suspend), e1, e2,
chart, nonreal, ledger, case.  Exit codes: 0 success, 1 when a `nonreal`
verdict is Excluded (so shell sweeps can branch on it), 2 on input errors.

`--module` arguments name either a file path or a bundled fixture (see
`looptower/data/`).  Chart-producing commands print the TSV block and the
ASCII grid; with `--out-prefix P` they instead write P.tsv, P.txt and a
matplotlib rendering P.png.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from typing import List, Optional

from . import charts, moduleio, nonreal, steenrod, tower, unstable


class InputError(Exception):
    pass


def _load_module(spec: str) -> unstable.ModulePresentation:
    if os.path.exists(spec):
        try:
            return moduleio.parse_module_file(spec)
        except moduleio.ModuleFileError as exc:
            raise InputError(f"{spec}:\n{exc}") from exc
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {spec}: {exc}") from exc
    try:
        data = resources.files("looptower.data").joinpath(f"{spec}.mod").read_text()
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise InputError(f"no such file or bundled module: {spec}") from exc
    try:
        return moduleio.parse_module(data, spec)
    except moduleio.ModuleFileError as exc:
        raise InputError(f"bundled {spec}:\n{exc}") from exc


def _emit_chart(page, e2report, out_prefix: Optional[str], title: str, out) -> None:
    doc = charts.chart_document(page, e2report)
    if out_prefix:
        with open(out_prefix + ".tsv", "w") as fh:
            fh.write(charts.chart_tsv(charts.chart_rows(page, e2report)))
        with open(out_prefix + ".txt", "w") as fh:
            fh.write(charts.chart_ascii(charts.chart_rows(page, e2report), page.max_weight))
        charts.render_chart_figure(page, out_prefix + ".png", e2report, title)
        print(f"wrote {out_prefix}.tsv, {out_prefix}.txt, {out_prefix}.png", file=out)
    else:
        out.write(doc)


def _build_page(args) -> tower.SpectralPage:
    source = _load_module(args.module)
    try:
        page = tower.build_e1(args.n, source, args.maxweight, args.maxdeg)
    except (tower.NotDesuspendable, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return page


def run(argv: List[str], out=None) -> int:
    out = out or sys.stdout
    parser = argparse.ArgumentParser(
        prog="looptower",
        description="Steenrod algebra, unstable modules, loopspace-tower charts "
        "and nonrealization verdicts over F2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adem", help="admissible normal form of Sq^{i1}...Sq^{im}")
    p.add_argument("word", nargs="+", type=int)

    p = sub.add_parser("akmember", help="Sq^{2^k}Sq^{2^k} through A(k-1)")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("module", help="module file operations")
    msub = p.add_subparsers(dest="module_command", required=True)
    mp = msub.add_parser("check", help="validate a module file")
    mp.add_argument("file")
    mp = msub.add_parser("phi", help="emit the module on t^{2^k}..t^{2^l}")
    mp.add_argument("k", type=int)
    mp.add_argument("l", type=int)
    mp = msub.add_parser("tensor-phi", help="tensor a module file with phi(k, k+width)")
    mp.add_argument("file")
    mp.add_argument("--k", type=int, required=True)
    mp.add_argument("--width", type=int, default=2)
    mp = msub.add_parser("suspend", help="shift a module file by n")
    mp.add_argument("file")
    mp.add_argument("--n", type=int, required=True)

    for name, help_text in (
        ("e1", "first-page chart of the loopspace tower"),
        ("e2", "second-page chart (homology of d1)"),
        ("chart", "chart of the selected page"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--module", required=True)
        p.add_argument("--maxdeg", type=int, default=16)
        p.add_argument("--maxweight", type=int, default=4)
        p.add_argument("--out-prefix")
        if name == "chart":
            p.add_argument("--page", choices=("e1", "e2"), default="e1")

    p = sub.add_parser("nonreal", help="nonrealization verdict for M (x) phi(k,k+2)")
    p.add_argument("--module", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("ledger", help="interval/gap ledger for part (b)")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("case", help="bundled case studies")
    p.add_argument("which", choices=("sigma2phi13",))
    p.add_argument("--out-prefix")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        return _dispatch(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, out) -> int:
    if args.command == "adem":
        if any(i < 0 for i in args.word):
            raise InputError("square exponents must be >= 0")
        print(steenrod.adem_normal_form(tuple(args.word)), file=out)
        return 0

    if args.command == "akmember":
        if args.k < 1:
            raise InputError("--k must be >= 1")
        witness = steenrod.schwartz_membership(args.k)
        if not witness.verify():
            raise InputError("witness failed re-verification")  # pragma: no cover
        print(witness, file=out)
        return 0

    if args.command == "module":
        return _dispatch_module(args, out)

    if args.command in ("e1", "e2", "chart"):
        page = _build_page(args)
        wants_e2 = args.command == "e2" or (
            args.command == "chart" and args.page == "e2"
        )
        e2report = tower.e2_page(tower.d1_page(page)) if wants_e2 else None
        title = f"{'E2' if wants_e2 else 'E1'} page, n={args.n}, {args.module}"
        _emit_chart(page, e2report, args.out_prefix, title, out)
        return 0

    if args.command == "nonreal":
        m = _load_module(args.module)
        if args.n < 0 or args.k < 0:
            raise InputError("--n and --k must be >= 0")
        try:
            v = nonreal.verdict(m, args.n, args.k)
        except unstable.ModuleValidationError as exc:
            raise InputError(str(exc)) from exc
        print(v.render(), file=out)
        return 1 if v.excluded else 0

    if args.command == "ledger":
        try:
            ledger, contradiction, ineqs = nonreal.part_b_ledger(
                args.c, args.e, args.d, args.n, args.k
            )
        except nonreal.HypothesisNotMet as exc:
            raise InputError(str(exc)) from exc
        for row in ledger.rows():
            print(row, file=out)
        for ineq in ineqs:
            print(str(ineq), file=out)
        print(f"contradiction: {'yes' if contradiction else 'no'}", file=out)
        return 0

    if args.command == "case":
        report = nonreal.case_sigma2phi13()
        out.write(charts.chart_document(report.page_trivial))
        print("", file=out)
        print(report.render(), file=out)
        if args.out_prefix:
            _emit_chart(
                report.page_trivial, None, args.out_prefix, "E1 page, n=2, sigma2phi13", out
            )
        return 0

    raise InputError(f"unknown command {args.command}")  # pragma: no cover


def _dispatch_module(args, out) -> int:
    cmd = args.module_command
    if cmd == "check":
        m = _load_module(args.file)
        print(f"ok: {m.name} with {len(m.basis)} classes validates", file=out)
        return 0
    if cmd == "phi":
        try:
            m = unstable.phi(args.k, args.l)
        except unstable.ModuleError as exc:
            raise InputError(str(exc)) from exc
        out.write(moduleio.serialize_module(m))
        return 0
    if cmd == "tensor-phi":
        m = _load_module(args.file)
        try:
            t = unstable.tensor_phi(m, args.k, args.width)
        except unstable.ModuleError as exc:
            raise InputError(str(exc)) from exc
        out.write(moduleio.serialize_module(t))
        return 0
    if cmd == "suspend":
        m = _load_module(args.file)
        try:
            s = unstable.suspend(m, args.n)
        except unstable.ModuleError as exc:
            raise InputError(str(exc)) from exc
        out.write(moduleio.serialize_module(s))
        return 0
    raise InputError(f"unknown module command {cmd}")  # pragma: no cover


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
