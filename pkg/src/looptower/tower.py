"""Assembly of the loopspace-tower spectral page for a suspended input module.

The input X is the reduced cohomology of the would-be space, declared as an
n-fold suspension; internally it is desuspended to V and the weight-j
column at internal degree q is placed at bidegree (s, t) = (-j, q+j), so
total degree t+s is the internal degree.

d1 is determined on weight-2 generators (cup products for L, the top-square
formula for Q-generators) and extended to *-monomials as a derivation with
weight-1 classes mapping to zero.  Weight-3/4 generators whose d1 the
formulas do not cover are marked indeterminate unless their target cell
vanishes.  Higher differentials are never computed, only excluded by the
sparsity of potential source cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import extpow, f2linalg, unstable
from .extpow import (
    INF,
    ColumnBasis,
    E1Class,
    Generator,
    Monomial,
    UNIT_MONOMIAL,
    monomial_str,
)
from .unstable import ModulePresentation


class WindowExceeded(Exception):
    pass


class NotDesuspendable(Exception):
    pass


DET = "determined"
INDET = "indeterminate"


@dataclass
class D1Entry:
    status: str  # DET | INDET
    value: Optional[E1Class]  # reduced class in the target cell when determined
    reason: str = ""


@dataclass
class PageCell:
    s: int
    t: int
    classes: Tuple[Monomial, ...]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(monomial_str(m) for m in self.classes)


@dataclass
class SpectralPage:
    n: object
    source: ModulePresentation  # X, the n-fold suspended input
    module: ModulePresentation  # V, the desuspension (letters of the columns)
    max_weight: int
    max_q: int  # chart window bound on the internal (total) degree
    columns: Dict[int, ColumnBasis] = field(default_factory=dict)
    _d1: Dict[Tuple[int, int], List[D1Entry]] = field(default_factory=dict)

    # -- cells -------------------------------------------------------------

    def column(self, j: int) -> ColumnBasis:
        col = self.columns.get(j)
        if col is None:
            col = ColumnBasis(self.n, self.module, j, {})
            self.columns[j] = col
        return col

    def cell_reps(self, j: int, q: int) -> Tuple[Monomial, ...]:
        if j == 0:
            return (UNIT_MONOMIAL,) if q == 0 else ()
        if j < 0 or j > self.max_weight:
            return ()
        if q < 0 and self.n != INF:
            return ()
        return self.column(j).cell(q).reps

    def cell_dim(self, j: int, q: int) -> int:
        return len(self.cell_reps(j, q))

    def cells(self) -> List[PageCell]:
        """Nonempty chart cells within the window, (t desc, s asc)."""
        out = []
        for q in range(0, self.max_q + 1):
            for j in range(0, self.max_weight + 1):
                reps = self.cell_reps(j, q)
                if reps:
                    out.append(PageCell(-j, q + j, reps))
        out.sort(key=lambda c: (-c.t, c.s))
        return out

    # -- d1 ------------------------------------------------------------

    def _d1_generator(self, g: Generator) -> Optional[E1Class]:
        """Formal d1 of a single generator; None when the formulas do not apply.

        L-generators need the cup table: with no table declared their d1 is
        unknown, not zero.
        """
        w = g.weight
        if w == 1:
            return E1Class.zero()
        if w == 2:
            if g.qs:
                r, x = g.qs[0], g.word[0]
                s = r + self.module.degree(x) + 1
                return extpow.class_from_letters(self.module.sq(s, x))
            if self.source.cup is None:
                return None
            x, y = g.word
            return extpow.class_from_letters(self.source.cup_get(x, y))
        return None

    def d1_entries(self, j: int, q: int) -> List[D1Entry]:
        """d1 on the cell basis of (-j, q+j), one entry per representative."""
        key = (j, q)
        got = self._d1.get(key)
        if got is not None:
            return got
        out: List[D1Entry] = []
        target = self.column(j - 1) if j >= 2 else None
        for m in self.cell_reps(j, q):
            entry = self._d1_monomial(m, target)
            out.append(entry)
        self._d1[key] = out
        return out

    def _d1_monomial(self, m: Monomial, target: Optional[ColumnBasis]) -> D1Entry:
        if target is None:
            return D1Entry(DET, E1Class.zero())
        gens = sorted(m)
        blockers = []
        for g in gens:
            if g.weight >= 3 or (g.weight == 2 and self._d1_generator(g) is None):
                # undetermined factor: harmless only if its own target vanishes
                gq = extpow.gen_degree(g, self.module, self.n)
                tcell = self.column(g.weight - 1).cell(gq + 1)
                if tcell.dim:
                    blockers.append(g)
        if blockers:
            return D1Entry(
                INDET,
                None,
                "no formula for " + ", ".join(extpow.gen_str(g) for g in blockers),
            )
        acc = E1Class.zero()
        for g in gens:
            dg = self._d1_generator(g)
            if dg is None or dg.is_zero():
                continue
            rest = E1Class.of(m - {g})
            acc = acc + dg * rest
        return D1Entry(DET, target.reduce(acc))

    def cell_determined(self, j: int, q: int) -> bool:
        return all(e.status == DET for e in self.d1_entries(j, q))

    def d1_matrix(self, j: int, q: int) -> Optional[List[int]]:
        """Rows = d1 coordinates of each source rep over the target reps.

        None when some source entry is indeterminate.
        """
        entries = self.d1_entries(j, q)
        if any(e.status != DET for e in entries):
            return None
        if j < 2:
            return [0 for _ in entries]
        tcell = self.column(j - 1).cell(q + 1)
        return [tcell.coords(e.value) for e in entries]

    # -- Steenrod action ------------------------------------------------

    def sq(self, s: int, j: int, q: int, cls: E1Class) -> E1Class:
        """Sq^s on a column class, reduced in the same column at degree q+s."""
        if q + s > self.max_q:
            raise WindowExceeded(f"Sq^{s} leaves the q<={self.max_q} window at q={q}")
        if j == 0:
            return cls if s == 0 else E1Class.zero()
        out = extpow.nishida_sq(s, cls, self.module, self.n)
        return self.column(j).reduce(out) if not out.is_zero() else out

    # -- sparsity ---------------------------------------------------------

    def survives_by_sparsity(self, s: int, t: int) -> Tuple[bool, List[Tuple[int, int, int]]]:
        """True iff every potential d_r source cell (r >= 2) is zero.

        Returns the verdict and a report of the checked sources as
        (r, source_s, dim) triples, dim > 0 entries being the blockers.
        Sources whose weight exceeds the computed maximum are appended with
        their formal monomial count (an upper bound on the cell dimension);
        they inform the report but not the verdict.
        """
        report = []
        ok = True
        qs = t + s - 1
        for r in range(2, self.max_weight - abs(s) + 1):
            dim = self.cell_dim(abs(s) + r, qs)
            report.append((r, s - r, dim))
            if dim:
                ok = False
        for r in range(self.max_weight - abs(s) + 1, 2 * extpow.MAX_WEIGHT - abs(s) + 1):
            if r < 2:
                continue
            count = len(extpow.monomials_of(self.n, self.module, abs(s) + r, qs, qs))
            report.append((r, s - r, count))
        return ok, report

    def higher_sources_formally_empty(self, s: int, t: int) -> bool:
        """No formal monomials in any d_r source up to weight 8 (r >= 2)."""
        qs = t + s - 1
        for r in range(2, 2 * extpow.MAX_WEIGHT - abs(s) + 1):
            j = abs(s) + r
            if j <= self.max_weight:
                if self.cell_dim(j, qs):
                    return False
            elif extpow.monomials_of(self.n, self.module, j, qs, qs):
                return False
        return True


def build_e1(
    n,
    source: ModulePresentation,
    max_weight: int = 4,
    max_total_degree: int = 16,
    lazy: bool = False,
) -> SpectralPage:
    """Place the extended-power columns of the desuspended input on the page.

    With lazy=True cells are computed on first access, which keeps targeted
    queries (a sparsity check at one bidegree, say) cheap on wide windows.
    """
    if max_weight < 1 or max_weight > extpow.MAX_WEIGHT:
        raise extpow.WeightError(f"max weight must be 1..{extpow.MAX_WEIGHT}")
    if n == INF:
        module = source
    else:
        if n < 1:
            raise ValueError("n must be >= 1 (n = 0 has no tower)")
        low = source.low
        if low is not None and low < n:
            raise NotDesuspendable(
                f"class in degree {low} < n = {n}: not an n-fold suspension"
            )
        module = unstable.desuspend_graded(source, n)
    page = SpectralPage(n, source, module, max_weight, max_total_degree)
    if not lazy:
        for j in range(1, max_weight + 1):
            col = page.column(j)
            for q in range(0, max_total_degree + 1):
                col.cell(q)
    return page


def d1_page(page: SpectralPage) -> SpectralPage:
    """Compute d1 on every chart cell (targets one degree past the window)."""
    for q in range(0, page.max_q + 1):
        for j in range(1, page.max_weight + 1):
            if page.cell_reps(j, q):
                page.d1_entries(j, q)
    return page


# ---------------------------------------------------------------------------
# The E2 page
# ---------------------------------------------------------------------------

@dataclass
class E2Cell:
    s: int
    t: int
    dim_e1: int
    dim_e2: Optional[int]  # None when indeterminate
    basis: Tuple[str, ...]  # names of surviving representatives
    flag: str  # DET | INDET
    note: str = ""


@dataclass
class E2Report:
    page: SpectralPage
    cells: Dict[Tuple[int, int], E2Cell]
    corollary_applied: bool

    def cell(self, s: int, t: int) -> Optional[E2Cell]:
        return self.cells.get((s, t))

    def dims(self) -> Dict[Tuple[int, int], Optional[int]]:
        return {k: c.dim_e2 for k, c in self.cells.items()}


def _cup_trivial(source: ModulePresentation) -> bool:
    # an absent table makes no claim; the corollary needs known-trivial cups
    if source.cup is None:
        return False
    return all(not v for v in source.cup.values())


def _unstable_desuspension(page: SpectralPage) -> bool:
    if page.n == INF:
        return True
    bad = [
        v
        for v in unstable._structure_violations(page.module)
        if v.kind == "instability"
    ]
    return not bad


def e2_page(page: SpectralPage) -> E2Report:
    """Cellwise homology of (E1, d1) where both differentials are determined.

    When the input has trivial cup products and its desuspension is
    unstable, the first-differential corollary applies: E2 = E1 on columns
    -1 and -2, with indeterminate incoming entries resolved to zero under
    that hypothesis (flagged, and cross-checked against all determined
    data).
    """
    corollary = _cup_trivial(page.source) and _unstable_desuspension(page)
    cells: Dict[Tuple[int, int], E2Cell] = {}
    for q in range(0, page.max_q + 1):
        for j in range(0, page.max_weight + 1):
            reps = page.cell_reps(j, q)
            if not reps:
                continue
            s, t = -j, q + j
            dim_e1 = len(reps)
            # outgoing
            out_rows = page.d1_matrix(j, q) if j >= 1 else [0]
            out_ok = out_rows is not None
            # incoming
            in_ok = True
            in_rows: List[int] = []
            if j + 1 <= page.max_weight and q >= 1:
                src_entries = page.d1_entries(j + 1, q - 1)
                tcell = page.column(j).cell(q)
                for e in src_entries:
                    if e.status == DET:
                        in_rows.append(tcell.coords(e.value))
                    else:
                        in_ok = False
            note = ""
            if corollary and j in (1, 2) and not in_ok:
                in_ok = True
                note = "incoming d1 = 0 by the trivial-cup corollary"
            if corollary and j in (1, 2):
                if any(in_rows) or (out_ok and any(out_rows)):
                    raise AssertionError(
                        f"trivial-cup corollary contradicted at (s,t)=({s},{t})"
                    )
            if not (out_ok and in_ok):
                cells[(s, t)] = E2Cell(
                    s, t, dim_e1, None, (), INDET,
                    "outgoing d1 indeterminate" if not out_ok else "incoming d1 indeterminate",
                )
                continue
            # kernel of outgoing, modulo image of incoming
            ncols_t = page.cell_dim(j - 1, q + 1) if j >= 1 else 0
            if j >= 1 and ncols_t:
                mat = f2linalg.BitMatrix(
                    ncols_t,
                    dim_e1,
                    tuple(_column_bits(out_rows, c) for c in range(ncols_t)),
                )
                kernel = f2linalg.kernel_basis(mat)
            else:
                kernel = [1 << i for i in range(dim_e1)]
            image_rref, image_pivots = f2linalg._echelon([r for r in in_rows if r], dim_e1)
            survivors: List[int] = []
            basis_names: List[str] = []
            span = list(image_rref)
            for v in kernel:
                w = v
                for row, p in zip(image_rref, image_pivots):
                    if (w >> p) & 1:
                        w ^= row
                if w and f2linalg.span_rank(span + [w], dim_e1) > len(span):
                    span.append(w)
                    survivors.append(w)
                    basis_names.append(_combo_name(w, reps))
            cells[(s, t)] = E2Cell(
                s, t, dim_e1, len(survivors), tuple(basis_names), DET, note
            )
    return E2Report(page, cells, corollary)


def _column_bits(rows: List[int], col: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        out |= ((r >> col) & 1) << i
    return out


def _combo_name(mask: int, reps: Sequence[Monomial]) -> str:
    parts = [monomial_str(reps[i]) for i in range(len(reps)) if (mask >> i) & 1]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Filtration report
# ---------------------------------------------------------------------------

def filtration_report(
    report: E2Report, up_to_weight: Optional[int] = None, rename: Optional[Dict[str, str]] = None
) -> str:
    """Text table of surviving class names per total degree and filtration."""
    page = report.page
    w = up_to_weight or page.max_weight
    rename = rename or {}
    lines = [f"filtration report (n={page.n}, window q<={page.max_q}, weights<={w})"]
    for q in range(0, page.max_q + 1):
        entries = []
        for j in range(0, w + 1):
            cell = report.cell(-j, q + j)
            if cell is None:
                continue
            if cell.flag == INDET:
                entries.append(f"F^{-j}: indeterminate ({cell.note})")
            elif cell.dim_e2:
                names = [rename.get(b, b) for b in cell.basis]
                entries.append(f"F^{-j}: " + ", ".join(names))
        if entries:
            lines.append(f"deg {q}: " + " | ".join(entries))
    return "\n".join(lines)
