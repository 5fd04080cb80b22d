"""Acceptance suite: one test per criterion, exact checks, timed.

Each test prints a single PASS line with its elapsed time (run pytest with
-s to see them) and asserts the stated runtime budget.
"""

import io
import time
from pathlib import Path

from looptower import cli, extpow as ep, nonreal, steenrod as sq, tower, unstable as un
from looptower.extpow import E1Class, Generator, INF, letter
from looptower.steenrod import binom_mod2

GOLDEN = Path(__file__).parent / "golden"


class timer:
    def __init__(self, label, budget):
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, *rest):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            print(f"ACCEPTANCE {self.label}: PASS ({elapsed:.2f}s, budget {self.budget}s)")
            assert elapsed < self.budget, f"{self.label} exceeded {self.budget}s"
        else:
            print(f"ACCEPTANCE {self.label}: FAIL ({elapsed:.2f}s)")
        return False


def words_of_degree(d):
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in words_of_degree(d - first):
            yield (first,) + rest


def test_criterion_1_chart_reproduction():
    with timer("1 sigma^2 phi(1,3) chart", 1.0):
        buf = io.StringIO()
        code = cli.run(
            ["e1", "--n", "2", "--module", "phi_1_3_susp2", "--maxdeg", "8"], buf
        )
        assert code == 0
        got = buf.getvalue()
        assert got == (GOLDEN / "s2phi13_e1.chart").read_text()
        data_rows = [
            line for line in got.split("\n\n")[0].splitlines()[1:] if line.strip()
        ]
        assert len(data_rows) == 13


def test_criterion_2_case_study():
    with timer("2 sigma^2 phi(1,3) case study", 1.0):
        buf = io.StringIO()
        code = cli.run(["case", "sigma2phi13"], buf)
        assert code == 0
        out = buf.getvalue()
        assert "a cup b = c must hold" in out
        report = nonreal.case_sigma2phi13()
        assert report.established
        texts = [s.text for s in report.steps]
        assert any("only possible differential" in t for t in texts)
        assert any("Sq^1 Q0(a) = 0" in t for t in texts)
        assert any("Sq^1 Sq^2 Sq^1" in t for t in texts)


def test_criterion_3_verdict_table():
    with timer("3 exclusion verdict table", 1.0):
        z2 = un.ModulePresentation("Z2", (("x", 0),))
        for k in range(0, 7):
            assert nonreal.verdict(z2, 0, k).excluded
        assert not nonreal.verdict(z2, 1, 0).excluded
        for k in range(1, 7):
            assert nonreal.verdict(z2, 1, k).excluded
        for k in (0, 1):
            assert not nonreal.verdict(z2, 2, k).excluded
        for k in range(2, 7):
            assert nonreal.verdict(z2, 2, k).excluded


def test_criterion_4_ledger_grid():
    with timer("4 interval ledger grid", 5.0):
        for e in range(0, 7):
            for d in range(0, e // 2 + 1):
                for c in range(0, d + 1):
                    for n in range(1, 5):
                        for k in range(1, 7):
                            ledger, fired, _ = nonreal.part_b_ledger(c, e, d, n, k)
                            assert ledger.gap1 == 2 ** k + d + c - 2 * e - n + 1
                            assert ledger.gap2 == 2 ** k + c - 2 * e - n + 1
                            assert fired == (2 ** (k - 1) > 2 * e - c + n - 1)


def test_criterion_5_schwartz_witnesses():
    with timer("5 Sq^{2^k}Sq^{2^k} decompositions k=1..4", 60.0):
        w1 = sq.schwartz_membership(1)
        assert w1.verify() and str(w1) == "Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1"
        for k in (2, 3, 4):
            w = sq.schwartz_membership(k)
            assert w.verify() and w.pairs


def test_criterion_6_steenrod_kernel_soundness():
    with timer("6 normal-form idempotence and action oracle", 30.0):
        # idempotence on every word of degree <= 20
        renorm = {}
        count = 0
        for d in range(0, 21):
            for w in words_of_degree(d):
                e = sq.adem_normal_form(w)
                count += 1
                for mono in e.monomials:
                    again = renorm.get(mono)
                    if again is None:
                        again = sq.adem_normal_form(mono)
                        renorm[mono] = again
                    assert again.monomials == frozenset({mono})
        assert count == 1 << 20
        # oracle agreement on Z/2[t1,t2,t3] for every word of degree <= 12
        seeds = [
            frozenset({(1, 1, 1)}),
            frozenset({(2, 1, 0)}),
            frozenset({(1, 0, 0), (0, 1, 1)}),
        ]
        cases = 0
        for d in range(1, 13):
            for w in words_of_degree(d):
                e = sq.adem_normal_form(w)
                for p in seeds:
                    assert sq.steenrod_act_poly(w, p) == sq.steenrod_act_poly(e, p)
                    cases += 1
        assert cases >= 10 ** 4


def test_criterion_7_nishida_oracle():
    with timer("7 stable Nishida oracle on Z/2[t,1/t]", 5.0):
        for c in range(0, 4):
            V = un.ModulePresentation("S", (("i", -c),))
            for r in range(0, 7):
                for s in range(0, 13):
                    out = ep.nishida_sq(
                        s, E1Class.gen(Generator((r,), ("i",))), V, INF
                    )
                    expect = (
                        E1Class.gen(Generator((r + s,), ("i",)))
                        if binom_mod2(r - c, s)
                        else E1Class.zero()
                    )
                    assert out == expect


def test_criterion_8_spectral_page_properties():
    with timer("8 spectral page properties", 60.0):
        # d1 o d1 = 0 and Sq-d1 commutation over the suspension corpus
        for n in (1, 2, 3):
            for k in (0, 1, 2):
                X = un.with_cup(un.suspend(un.phi(k, k + 2), n), {})
                page = tower.d1_page(tower.build_e1(n, X, 4, 16))
                V = page.module
                for q in range(0, 17):
                    for j in range(2, 5):
                        m1 = page.d1_matrix(j, q)
                        m2 = page.d1_matrix(j - 1, q + 1) if q + 1 <= 16 else None
                        if m1 is None or m2 is None:
                            continue
                        for row in m1:
                            acc = 0
                            for i in range(len(m2)):
                                if (row >> i) & 1:
                                    acc ^= m2[i]
                            assert acc == 0
                for q in range(0, 17):
                    for m, entry in zip(page.cell_reps(2, q), page.d1_entries(2, q)):
                        if entry.status != tower.DET:
                            continue
                        xi = E1Class.of(m)
                        for s in range(1, 17 - q):
                            lhs_letters = set()
                            for t in entry.value.terms:
                                for g in t:
                                    lhs_letters ^= {g.word[0]}
                            lhs = V.sq_sum(s, lhs_letters)
                            rhs = set()
                            for t in page.sq(s, 2, q, xi).terms:
                                sub = page._d1_monomial(t, page.column(1))
                                assert sub.status == tower.DET
                                for t2 in sub.value.terms:
                                    for g in t2:
                                        rhs ^= {g.word[0]}
                            assert lhs == frozenset(rhs)
        # n = 1 columns have tensor-power dimensions
        for k in (0, 1):
            X = un.with_cup(un.suspend(un.phi(k, k + 2), 1), {})
            page = tower.build_e1(1, X, 4, 16)
            for j in range(1, 5):
                oracle = {
                    d: len(ws)
                    for d, ws in ep.tensor_specialize(page.module, j).items()
                    if 0 <= d <= 16
                }
                assert page.column(j).dims(0, 16) == oracle
        # weight-2 single-generator columns for n <= 5
        for n in range(2, 6):
            for d in (1, 2):
                W = un.ModulePresentation("W", (("y", d),))
                dims = ep.column_basis(n, W, 2, 0, 2 * d + n + 2).dims(0, 2 * d + n + 2)
                assert dims == {q: 1 for q in range(2 * d, 2 * d + n)}
        # weight-2 pairing matrices invertible for dim V <= 3
        from looptower import f2linalg

        for n in (2, 3):
            for basis in [
                (("x", 1),),
                (("x", 1), ("y", 2)),
                (("x", 1), ("y", 2), ("z", 3)),
            ]:
                W = un.ModulePresentation("W", basis)
                col = ep.column_basis(n, W, 2, 0, 12)
                for q in range(0, 13):
                    reps = col.cell(q).reps
                    hws = ep.homology_basis(n, W, q)
                    assert len(reps) == len(hws)
                    if reps:
                        rows = [
                            sum(
                                ep.pairing(E1Class.of(r), h) << i
                                for i, h in enumerate(hws)
                            )
                            for r in reps
                        ]
                        assert f2linalg.span_rank(rows, len(hws)) == len(hws)
