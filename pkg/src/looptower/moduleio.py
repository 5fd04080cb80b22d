"""The module file format: name / basis / sq / cup sections, line-oriented.

    name phi_1_3_susp2
    basis
    a 4
    b 6
    c 10
    sq
    2 a b
    4 b c
    cup

Tokens are whitespace-separated.  An `sq` line is `s source target...`
(the target sum), a `cup` line is `x y target...`.  A present-but-empty
`cup` section declares all cup products zero; an absent one makes no claim.
Blank lines and `#` comments are ignored on input; serialization is
canonical (sorted entries) and round-trips byte-identically on canonical
files.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import unstable
from .unstable import ModulePresentation


@dataclass
class Diagnostic:
    line: int  # 0 when no single line is responsible
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line else ""
        return f"{where}{self.message}"


class ModuleFileError(Exception):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


def parse_module(text: str, filename: str = "<module>") -> ModulePresentation:
    """Parse and fully validate a module file; every error is reported."""
    diags: List[Diagnostic] = []
    name: Optional[str] = None
    basis: List[Tuple[str, int]] = []
    action: Dict[Tuple[int, str], FrozenSet[str]] = {}
    cup: Optional[Dict[Tuple[str, str], FrozenSet[str]]] = None
    action_lines: Dict[Tuple[int, str], int] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head == "name":
            if len(toks) != 2:
                diags.append(Diagnostic(lineno, "name takes exactly one token"))
            else:
                name = toks[1]
            section = None
            continue
        if head in ("basis", "sq", "cup") and len(toks) == 1:
            section = head
            if head == "cup" and cup is None:
                cup = {}
            continue
        if section == "basis":
            if len(toks) != 2:
                diags.append(Diagnostic(lineno, "basis line must be `element degree`"))
                continue
            try:
                degree = int(toks[1])
            except ValueError:
                diags.append(Diagnostic(lineno, f"bad degree {toks[1]!r}"))
                continue
            if any(n == toks[0] for n, _ in basis):
                diags.append(Diagnostic(lineno, f"duplicate basis element {toks[0]!r}"))
                continue
            basis.append((toks[0], degree))
        elif section == "sq":
            if len(toks) < 3:
                diags.append(Diagnostic(lineno, "sq line must be `s source target...`"))
                continue
            try:
                s = int(toks[0])
            except ValueError:
                diags.append(Diagnostic(lineno, f"bad square exponent {toks[0]!r}"))
                continue
            key = (s, toks[1])
            if key in action:
                diags.append(Diagnostic(lineno, f"duplicate sq entry for Sq^{s} {toks[1]}"))
                continue
            action[key] = frozenset(toks[2:])
            action_lines[key] = lineno
        elif section == "cup":
            if len(toks) < 3:
                diags.append(Diagnostic(lineno, "cup line must be `x y target...`"))
                continue
            key2 = (toks[0], toks[1])
            if key2 in cup:
                diags.append(Diagnostic(lineno, f"duplicate cup entry {key2}"))
                continue
            cup[key2] = frozenset(toks[2:])
        else:
            diags.append(Diagnostic(lineno, f"unexpected line outside any section: {line!r}"))
    if name is None:
        diags.append(Diagnostic(0, "missing `name`"))
    if diags:
        raise ModuleFileError(diags)
    try:
        module = ModulePresentation(name, tuple(basis), action, cup)
    except unstable.ModuleError as exc:
        raise ModuleFileError([Diagnostic(0, str(exc))]) from exc
    violations = unstable.validate(module)
    if violations:
        out = []
        for v in violations:
            line = 0
            if v.kind in ("instability",) and len(v.subject) == 2:
                line = action_lines.get(tuple(v.subject), 0)
            out.append(Diagnostic(line, str(v)))
        raise ModuleFileError(out)
    return module


def parse_module_file(path) -> ModulePresentation:
    with open(path, "r", encoding="ascii") as fh:
        return parse_module(fh.read(), str(path))


def serialize_module(m: ModulePresentation) -> str:
    """Canonical text: basis in stored order, tables sorted, targets sorted."""
    order = {n: i for i, (n, _) in enumerate(m.basis)}

    def elem_sort(names) -> List[str]:
        return sorted(names, key=lambda x: order.get(x, len(order)))

    lines = [f"name {m.name}", "basis"]
    for n, d in m.basis:
        lines.append(f"{n} {d}")
    if m.action:
        lines.append("sq")
        for (s, x), targets in sorted(
            m.action.items(), key=lambda kv: (kv[0][0], order.get(kv[0][1], 0))
        ):
            lines.append(f"{s} {x} " + " ".join(elem_sort(targets)))
    if m.cup is not None:
        lines.append("cup")
        for (x, y), targets in sorted(
            m.cup.items(), key=lambda kv: (order.get(kv[0][0], 0), order.get(kv[0][1], 0))
        ):
            lines.append(f"{x} {y} " + " ".join(elem_sort(targets)))
    return "\n".join(lines) + "\n"
