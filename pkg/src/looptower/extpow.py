"""Columns of the extended-power bigraded object for a formal graded input.

For a finite graded module V (the letters), weight j and cube dimension n,
the column is presented by formal *-monomials in generators

    Q{r1}(...Q{rl}(L(x1,...,xk))...)

subject to: vanishing of Q-indices >= n, the shuffle kernel of L, the
Q-Adem relations, and the top-operation identity Q{n-1}L(w) = L(ww).
Relations are imposed as a linear system per degree and bases come from
rank computation; there is no oriented rewriting.  Weights are capped
at 4.

Conventions:
  * weight of Q{r1}..Q{rl}L(x1..xk) is 2^l * k;
  * deg L(x1..xk) = sum |xi| + (k-1)(n-1), and Q{r} sends d to 2d+r;
  * monomials are squarefree sets of generators (x*x = 0);
  * n = 1 columns collapse onto the tensor algebra (L is the identity
    inclusion, * the shuffle product), which adds expansion relations;
  * n = inf allows unbounded Q-indices and no multi-letter L.

Representatives of the relation quotient prefer pure Q-words, then
L-words, then *-products, lexicographically, so printed names are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from . import f2linalg
from .steenrod import binom_mod2
from .unstable import ModulePresentation

INF = float("inf")

MAX_WEIGHT = 4


class WeightError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    """One generator Q{qs[0]}(..Q{qs[-1]}(L(word))..) over the letters of V."""

    qs: Tuple[int, ...]
    word: Tuple[str, ...]

    def __post_init__(self):
        if not self.word:
            raise ValueError("empty tensor word")

    @property
    def weight(self) -> int:
        return (1 << len(self.qs)) * len(self.word)


Monomial = FrozenSet[Generator]

UNIT_MONOMIAL: Monomial = frozenset()


def letter(x: str) -> Generator:
    return Generator((), (x,))


def gen_degree(g: Generator, module: ModulePresentation, n) -> int:
    if len(g.word) == 1:
        d = module.degree(g.word[0])
    else:
        if n == INF:
            raise ValueError("multi-letter L does not exist at n = inf")
        d = sum(module.degree(x) for x in g.word) + (len(g.word) - 1) * (n - 1)
    for r in reversed(g.qs):
        d = 2 * d + r
    return d


def monomial_weight(m: Monomial) -> int:
    return sum(g.weight for g in m)


def monomial_degree(m: Monomial, module: ModulePresentation, n) -> int:
    return sum(gen_degree(g, module, n) for g in m)


def gen_str(g: Generator) -> str:
    base = g.word[0] if len(g.word) == 1 else "L(" + ",".join(g.word) + ")"
    for r in reversed(g.qs):
        base = f"Q{r}({base})"
    return base


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    factors = sorted(m, key=lambda g: (g.weight, g))
    return "*".join(gen_str(g) for g in factors)


def pref_key(m: Monomial):
    """Representative preference: pure Q-words, then L-words, then products.

    Within products the same preference applies factorwise.
    """
    gens = sorted(m)
    if len(gens) > 1:
        cat = 2
    elif gens and gens[0].qs:
        cat = 0
    else:
        cat = 1
    return (cat, tuple(sorted((0 if g.qs else 1, g.qs, g.word) for g in gens)))


@dataclass(frozen=True)
class E1Class:
    """Mod-2 sum of *-monomials, all of one (weight, degree)."""

    terms: FrozenSet[Monomial]

    @classmethod
    def zero(cls) -> "E1Class":
        return cls(frozenset())

    @classmethod
    def of(cls, *monomials: Monomial) -> "E1Class":
        acc: Set[Monomial] = set()
        for m in monomials:
            acc ^= {m}
        return cls(frozenset(acc))

    @classmethod
    def gen(cls, g: Generator) -> "E1Class":
        return cls(frozenset({frozenset({g})}))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "E1Class") -> "E1Class":
        return E1Class(self.terms ^ other.terms)

    def __mul__(self, other: "E1Class") -> "E1Class":
        acc: Set[Monomial] = set()
        for m1 in self.terms:
            for m2 in other.terms:
                if m1 & m2:
                    continue  # repeated generator: x*x = 0
                acc ^= {m1 | m2}
        return E1Class(frozenset(acc))

    def weight(self) -> Optional[int]:
        for m in self.terms:
            return monomial_weight(m)
        return None

    def degree(self, module: ModulePresentation, n) -> Optional[int]:
        for m in self.terms:
            return monomial_degree(m, module, n)
        return None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(monomial_str(m) for m in sorted(self.terms, key=pref_key))


def class_from_letters(names: Iterable[str]) -> E1Class:
    acc: Set[Monomial] = set()
    for x in names:
        acc ^= {frozenset({letter(x)})}
    return E1Class(frozenset(acc))


# ---------------------------------------------------------------------------
# Generator and monomial enumeration
# ---------------------------------------------------------------------------

def generators_of_weight(n, module: ModulePresentation, w: int, hi: int) -> List[Generator]:
    """All weight-w generators of degree <= hi (Q-indices are bounded by hi)."""
    names = [x for x, _ in module.basis]
    out: Set[Generator] = set()

    if w == 1:
        for x, d in module.basis:
            if d <= hi:
                out.add(letter(x))
    elif w == 2:
        for x, d in module.basis:
            for r in range(0, hi - 2 * d + 1):
                out.add(Generator((r,), (x,)))
        if n != INF:
            for x, y in itertools.product(names, repeat=2):
                g = Generator((), (x, y))
                if gen_degree(g, module, n) <= hi:
                    out.add(g)
    elif w == 3:
        if n != INF:
            for word in itertools.product(names, repeat=3):
                g = Generator((), word)
                if gen_degree(g, module, n) <= hi:
                    out.add(g)
    elif w == 4:
        for x, d in module.basis:
            for s in range(0, (hi - 4 * d) // 2 + 1 if hi >= 4 * d else 0):
                for r in range(0, hi - 4 * d - 2 * s + 1):
                    out.add(Generator((r, s), (x,)))
        if n != INF:
            for x, y in itertools.product(names, repeat=2):
                base = module.degree(x) + module.degree(y) + (n - 1)
                for r in range(0, hi - 2 * base + 1):
                    out.add(Generator((r,), (x, y)))
            for word in itertools.product(names, repeat=4):
                g = Generator((), word)
                if gen_degree(g, module, n) <= hi:
                    out.add(g)
    else:
        raise WeightError(f"unsupported generator weight {w}")
    return sorted(out)


def monomials_of(n, module: ModulePresentation, j: int, lo: int, hi: int) -> List[Monomial]:
    """All squarefree *-monomials of total weight j with degree in [lo, hi].

    Weights above MAX_WEIGHT (up to 8) are allowed for formal counting only;
    the relation machinery itself stays capped at MAX_WEIGHT.
    """
    if j < 0 or j > 2 * MAX_WEIGHT:
        raise WeightError(f"weight {j} outside 0..{2 * MAX_WEIGHT}")
    if j == 0:
        return [UNIT_MONOMIAL] if lo <= 0 <= hi else []
    if not module.basis:
        return []
    dmin = min(d for _, d in module.basis)

    def floor_deg(wleft: int) -> int:
        return wleft * dmin

    pool: List[Tuple[Generator, int, int]] = []
    for w in range(1, min(j, MAX_WEIGHT) + 1):
        for g in generators_of_weight(n, module, w, hi - floor_deg(j - w)):
            pool.append((g, w, gen_degree(g, module, n)))
    pool.sort(key=lambda t: t[0])

    out: List[Monomial] = []

    def rec(i: int, wleft: int, dsum: int, chosen: Tuple[Generator, ...]):
        if wleft == 0:
            if lo <= dsum <= hi:
                out.append(frozenset(chosen))
            return
        for idx in range(i, len(pool)):
            g, w, d = pool[idx]
            if w > wleft:
                continue
            if dsum + d + floor_deg(wleft - w) > hi:
                continue
            rec(idx + 1, wleft - w, dsum + d, chosen + (g,))

    rec(0, j, 0, ())
    return sorted(set(out), key=pref_key)


def generator_enumerate(n, module: ModulePresentation, j: int, lo: int, hi: int) -> List[Monomial]:
    """Formal monomial list for the weight-j column over a degree window."""
    if j not in (1, 2, 3, 4):
        raise WeightError(f"unsupported weight {j}")
    out = monomials_of(n, module, j, lo, hi)
    return sorted(out, key=lambda m: (monomial_degree(m, module, n), pref_key(m)))


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

def _shuffle_mod2(u: Tuple[str, ...], v: Tuple[str, ...]) -> FrozenSet[Tuple[str, ...]]:
    """Words of the shuffle product u o v with odd multiplicity."""
    counts: Dict[Tuple[str, ...], int] = {}

    def rec(a: Tuple[str, ...], b: Tuple[str, ...], prefix: Tuple[str, ...]):
        if not a or not b:
            w = prefix + a + b
            counts[w] = counts.get(w, 0) + 1
            return
        rec(a[1:], b, prefix + (a[0],))
        rec(a, b[1:], prefix + (b[0],))

    rec(u, v, ())
    return frozenset(w for w, c in counts.items() if c & 1)


def _terms(*gens_or_monos) -> FrozenSet[Monomial]:
    acc: Set[Monomial] = set()
    for t in gens_or_monos:
        m = frozenset({t}) if isinstance(t, Generator) else t
        acc ^= {m}
    return frozenset(acc)




def generator_relations(n, module: ModulePresentation, w: int, degree: int) -> List[FrozenSet[Monomial]]:
    """Generator-level relation rows of one weight at one degree.

    Substitution of relations into Q-arguments is included explicitly,
    with the product correction term when the outer index is 0.
    """
    rows: List[FrozenSet[Monomial]] = []
    names = [x for x, _ in module.basis]

    def add(terms: FrozenSet[Monomial]):
        if terms:
            rows.append(terms)

    def q_push(inner: List[Generator], r: int):
        """Image under Q{r} of a sum of generators known to vanish."""
        terms = _terms(*(Generator((r,) + g.qs, g.word) for g in inner))
        if r == 0:
            for g1, g2 in itertools.combinations(inner, 2):
                if g1 != g2:
                    terms ^= {frozenset({g1, g2})}
        add(terms)

    if w == 2:
        for x in names:
            dx = module.degree(x)
            r = degree - 2 * dx
            if n != INF and r >= n:
                add(_terms(Generator((r,), (x,))))
            if n != INF and r == n - 1:
                # top identity, k = 1 (reads Q0(x) = L(x,x) at n = 1)
                add(_terms(Generator((n - 1,), (x,)), Generator((), (x, x))))
        if n != INF and n >= 2:
            for x, y in itertools.combinations(names, 2):
                if module.degree(x) + module.degree(y) + (n - 1) == degree:
                    add(_terms(Generator((), (x, y)), Generator((), (y, x))))

    elif w == 3:
        if n != INF and n >= 2:
            seen = set()
            for u_len in (1, 2):
                for u in itertools.product(names, repeat=u_len):
                    for v in itertools.product(names, repeat=3 - u_len):
                        if sum(module.degree(c) for c in u + v) + 2 * (n - 1) != degree:
                            continue
                        terms = _terms(*(Generator((), word) for word in _shuffle_mod2(u, v)))
                        if terms and terms not in seen:
                            seen.add(terms)
                            add(terms)

    elif w == 4:
        if n != INF:
            for g in generators_of_weight(n, module, 4, degree):
                if g.qs and any(r >= n for r in g.qs) and gen_degree(g, module, n) == degree:
                    add(_terms(g))
        # Q-Adem instances Q{r}Q{s}(x) = sum_j C(j-r, 2j-r-s) Q{r+2s-2j}Q{j}(x).
        # The power-series binomial reproduces the transposed homology Adem
        # coefficients (C(j-r, b) = C(r-j+b-1, b) mod 2 for j < r); at finite
        # n an instance is an identity only when both left indices name
        # existing operations, so out-of-range instances are not imposed.
        for x in names:
            dx = module.degree(x)
            rem = degree - 4 * dx
            for s in range(0, rem // 2 + 1 if rem >= 0 else 0):
                r = rem - 2 * s
                if n != INF and (r >= n or s >= n):
                    continue
                terms = _terms(Generator((r, s), (x,)))
                for jj in range(0, (r + 2 * s) // 2 + 1):
                    if binom_mod2(jj - r, 2 * jj - r - s):
                        terms ^= {frozenset({Generator((r + 2 * s - 2 * jj, jj), (x,))})}
                add(terms)
        if n != INF:
            for x, y in itertools.product(names, repeat=2):
                base = module.degree(x) + module.degree(y) + (n - 1)
                if 2 * base + (n - 1) == degree:
                    # top identity, k = 2
                    add(_terms(Generator((n - 1,), (x, y)), Generator((), (x, y, x, y))))
            for x in names:
                dx = module.degree(x)
                r = degree - 2 * (2 * dx + (n - 1))
                if r >= 0:
                    q_push([Generator((n - 1,), (x,)), Generator((), (x, x))], r)
            if n >= 2:
                for x, y in itertools.combinations(names, 2):
                    base = module.degree(x) + module.degree(y) + (n - 1)
                    r = degree - 2 * base
                    if r >= 0:
                        q_push([Generator((), (x, y)), Generator((), (y, x))], r)

    if n == 1 and w in (2, 3, 4):
        # star-expansion: * is the shuffle product on tensor words
        for u_len in range(1, w):
            v_len = w - u_len
            if u_len > v_len:
                continue
            for u in itertools.product(names, repeat=u_len):
                for v in itertools.product(names, repeat=v_len):
                    if u_len == v_len and u > v:
                        continue
                    if sum(module.degree(c) for c in u + v) != degree:
                        continue
                    gu, gv = Generator((), u), Generator((), v)
                    terms = _terms(frozenset({gu, gv})) if gu != gv else frozenset()
                    for word in _shuffle_mod2(u, v):
                        terms ^= {frozenset({Generator((), word)})}
                    add(terms)

    seen: Set[FrozenSet[Monomial]] = set()
    unique = []
    for row in rows:
        if row not in seen:
            seen.add(row)
            unique.append(row)
    return unique


def relation_set(n, module: ModulePresentation, j: int, degree: int) -> List[FrozenSet[Monomial]]:
    """All relation rows among the weight-j monomials of one degree.

    Generator-level rows plus the ideal rows obtained by *-multiplying
    lower-weight relations by complementary monomials.
    """
    if j not in (1, 2, 3, 4):
        raise WeightError(f"unsupported weight {j}")
    rows = list(generator_relations(n, module, j, degree))
    if module.basis:
        dmin = min(d for _, d in module.basis)
        for wr in range(2, j):
            wm = j - wr
            for m in monomials_of(n, module, wm, wm * dmin, degree - wr * dmin):
                dm = monomial_degree(m, module, n)
                for row in generator_relations(n, module, wr, degree - dm):
                    prod: Set[Monomial] = set()
                    for t in row:
                        if t & m:
                            continue
                        prod ^= {t | m}
                    if prod:
                        rows.append(frozenset(prod))
    seen: Set[FrozenSet[Monomial]] = set()
    unique = []
    for row in rows:
        if row not in seen:
            seen.add(row)
            unique.append(row)
    return unique


# ---------------------------------------------------------------------------
# Column bases (the relation quotient, echelonized per degree)
# ---------------------------------------------------------------------------

@dataclass
class Cell:
    """Weight-j monomials of one degree with the relation span echelonized."""

    monomials: Tuple[Monomial, ...]  # elimination order: least preferred first
    index: Dict[Monomial, int]
    rref: Tuple[int, ...]
    pivots: Tuple[int, ...]
    reps: Tuple[Monomial, ...]  # quotient basis, preference order

    @property
    def dim(self) -> int:
        return len(self.reps)

    def reduce_terms(self, terms: Iterable[Monomial]) -> FrozenSet[Monomial]:
        mask = 0
        for m in terms:
            i = self.index.get(m)
            if i is None:
                raise KeyError(f"monomial {monomial_str(m)} outside the cell")
            mask ^= 1 << i
        for row, p in zip(self.rref, self.pivots):
            if (mask >> p) & 1:
                mask ^= row
        out = set()
        i = 0
        while mask:
            if mask & 1:
                out.add(self.monomials[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def reduce(self, cls: E1Class) -> E1Class:
        return E1Class(self.reduce_terms(cls.terms))

    def coords(self, cls: E1Class) -> int:
        """Coordinates of a class over `reps`, packed as an int."""
        reduced = self.reduce_terms(cls.terms)
        pos = {m: i for i, m in enumerate(self.reps)}
        mask = 0
        for m in reduced:
            mask ^= 1 << pos[m]
        return mask


def build_cell(n, module: ModulePresentation, j: int, degree: int) -> Cell:
    monos = monomials_of(n, module, j, degree, degree)
    monos.sort(key=pref_key, reverse=True)  # pivots eat the least preferred
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for row in relation_set(n, module, j, degree):
        mask = 0
        for t in row:
            mask ^= 1 << index[t]
        if mask:
            rows.append(mask)
    rref, pivots = f2linalg._echelon(rows, len(monos))
    pivot_set = set(pivots)
    reps = tuple(
        sorted((m for i, m in enumerate(monos) if i not in pivot_set), key=pref_key)
    )
    return Cell(tuple(monos), index, tuple(rref), tuple(pivots), reps)


@dataclass
class ColumnBasis:
    """Per-degree quotient bases of one weight-j column."""

    n: object
    module: ModulePresentation
    j: int
    cells: Dict[int, Cell]

    def cell(self, degree: int) -> Cell:
        got = self.cells.get(degree)
        if got is None:
            got = build_cell(self.n, self.module, self.j, degree)
            self.cells[degree] = got
        return got

    def dim(self, degree: int) -> int:
        return self.cell(degree).dim

    def dims(self, lo: int, hi: int) -> Dict[int, int]:
        return {d: self.cell(d).dim for d in range(lo, hi + 1) if self.cell(d).dim}

    def reduce(self, cls: E1Class) -> E1Class:
        if cls.is_zero():
            return cls
        d = cls.degree(self.module, self.n)
        return self.cell(d).reduce(cls)


def column_basis(n, module: ModulePresentation, j: int, lo: int, hi: int) -> ColumnBasis:
    col = ColumnBasis(n, module, j, {})
    for d in range(lo, hi + 1):
        col.cell(d)
    return col


def tensor_specialize(module: ModulePresentation, j: int) -> Dict[int, List[Tuple[str, ...]]]:
    """The n = 1 oracle: plain j-fold tensor power of V, words listed per degree."""
    out: Dict[int, List[Tuple[str, ...]]] = {}
    if j == 0:
        return {0: [()]}
    for word in itertools.product([x for x, _ in module.basis], repeat=j):
        d = sum(module.degree(x) for x in word)
        out.setdefault(d, []).append(word)
    return out


# ---------------------------------------------------------------------------
# The Steenrod action (columnwise)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> Tuple[Tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(0, total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _q_hat_apply(r: int, cls: E1Class) -> E1Class:
    """Q{r} of a sum of single generators; Q0 takes the product correction."""
    gens: List[Generator] = []
    for m in cls.terms:
        if len(m) != 1:
            raise ValueError("Q applied to a non-generator monomial")
        gens.append(next(iter(m)))
    acc = E1Class.of(*(frozenset({Generator((r,) + g.qs, g.word)}) for g in gens))
    if r == 0:
        for g1, g2 in itertools.combinations(gens, 2):
            acc = acc + E1Class.of(frozenset({g1, g2}))
    return acc


def _sq_generator(s: int, g: Generator, module: ModulePresentation, n) -> E1Class:
    if s == 0:
        return E1Class.gen(g)
    if g.qs:
        r = g.qs[0]
        inner = Generator(g.qs[1:], g.word)
        d = gen_degree(inner, module, n)
        acc = E1Class.zero()
        for t in range(0, s // 2 + 1):
            if not binom_mod2(d + r - t, s - 2 * t):
                continue
            inner_img = _sq_generator(t, inner, module, n)
            if inner_img.is_zero():
                continue
            acc = acc + _q_hat_apply(r + s - 2 * t, inner_img)
        if r == 0:
            for t in range(0, (s + 1) // 2):
                left = _sq_generator(t, inner, module, n)
                right = _sq_generator(s - t, inner, module, n)
                acc = acc + left * right
        return acc
    if len(g.word) == 1:
        return class_from_letters(module.sq(s, g.word[0]))
    # Cartan across the tensor factors inside L
    acc = E1Class.zero()
    for split in _compositions(s, len(g.word)):
        pieces = [module.sq(t, x) for t, x in zip(split, g.word)]
        if any(not p for p in pieces):
            continue
        for combo in itertools.product(*pieces):
            acc = acc + E1Class.gen(Generator((), tuple(combo)))
    return acc


def nishida_sq(s: int, cls: E1Class, module: ModulePresentation, n) -> E1Class:
    """Sq^s on a column class, as a formal class.

    Nishida formulas on Q-generators (iterated outside-in on nested Q-words),
    Cartan over *-factors and across the tensor slots inside L.  Reduce the
    output against a column cell to express it in the quotient basis.
    """
    if s < 0:
        raise ValueError("negative square")
    acc = E1Class.zero()
    for m in cls.terms:
        gens = sorted(m)
        if not gens:
            if s == 0:
                acc = acc + E1Class.of(UNIT_MONOMIAL)
            continue
        for split in _compositions(s, len(gens)):
            piece = E1Class.of(UNIT_MONOMIAL)
            for t, g in zip(split, gens):
                piece = piece * _sq_generator(t, g, module, n)
                if piece.is_zero():
                    break
            acc = acc + piece
    return acc


# ---------------------------------------------------------------------------
# Suspension comparison map and the Hopf structure
# ---------------------------------------------------------------------------

def epsilon_star(cls: E1Class, n) -> E1Class:
    """The comparison map from the (n, SV)-column to the (n+1, V)-column.

    Kills *-decomposables, bumps every Q-index, and sends L over suspended
    letters to L over the letters; names are preserved, degrees drop by one
    per letter in the caller's desuspended module.
    """
    acc: Set[Monomial] = set()
    for m in cls.terms:
        if len(m) > 1:
            continue
        if not m:
            acc ^= {m}
            continue
        g = next(iter(m))
        acc ^= {frozenset({Generator(tuple(r + 1 for r in g.qs), g.word)})}
    return E1Class(frozenset(acc))


def coproduct(cls: E1Class) -> FrozenSet[Tuple[Monomial, Monomial]]:
    """Coproduct components as (left, right) monomial pairs mod 2.

    Q{r} generators are primitive for r >= 1, Q0 adds the diagonal middle
    term, L-generators are primitive, and the coproduct is multiplicative
    over *.
    """
    out: Set[Tuple[Monomial, Monomial]] = set()
    for m in cls.terms:
        pairs: Set[Tuple[Monomial, Monomial]] = {(UNIT_MONOMIAL, UNIT_MONOMIAL)}
        for g in sorted(m):
            comps: List[Tuple[Monomial, Monomial]] = [
                (frozenset({g}), UNIT_MONOMIAL),
                (UNIT_MONOMIAL, frozenset({g})),
            ]
            if g.qs and g.qs[0] == 0:
                half = frozenset({Generator(g.qs[1:], g.word)})
                comps.append((half, half))
            nxt: Set[Tuple[Monomial, Monomial]] = set()
            for (l0, r0) in pairs:
                for (l1, r1) in comps:
                    if (l0 & l1) or (r0 & r1):
                        continue
                    nxt ^= {(l0 | l1, r0 | r1)}
            pairs = nxt
        out ^= pairs
    return frozenset(out)


# ---------------------------------------------------------------------------
# The weight-2 cohomology/homology pairing
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class HWord:
    """Formal homology word: Q_s(y), y*z, or lambda(y, z)."""

    kind: str  # "Q" | "star" | "lambda"
    s: int
    args: Tuple[str, ...]

    def degree(self, module: ModulePresentation, n) -> int:
        if self.kind == "Q":
            return 2 * module.degree(self.args[0]) + self.s
        base = module.degree(self.args[0]) + module.degree(self.args[1])
        if self.kind == "lambda":
            return base + (n - 1)
        return base

    def __str__(self) -> str:
        if self.kind == "Q":
            return f"Q_{self.s}({self.args[0]})"
        if self.kind == "star":
            return f"{self.args[0]}*{self.args[1]}"
        return f"lambda({self.args[0]},{self.args[1]})"


def hq(s: int, y: str) -> HWord:
    return HWord("Q", s, (y,))


def hstar(y: str, z: str) -> HWord:
    return HWord("star", 0, (y, z))


def hlambda(y: str, z: str) -> HWord:
    return HWord("lambda", 0, (y, z))


def _pair_monomial(m: Monomial, h: HWord) -> int:
    gens = sorted(m)
    if sum(g.weight for g in gens) != 2:
        raise WeightError("pairing is defined on weight-2 classes")
    if len(gens) == 1:
        g = gens[0]
        if g.qs:  # Q{r}(x)
            r, x = g.qs[0], g.word[0]
            if h.kind == "Q":
                return 1 if (h.s == r and h.args[0] == x) else 0
            if h.kind == "star":
                y, z = h.args
                return 1 if (r == 0 and y == x and z == x) else 0
            return 0
        w, x = g.word  # L(w, x)
        if h.kind == "lambda":
            y, z = h.args
            return int((w == y) and (x == z)) ^ int((w == z) and (x == y))
        return 0
    (g1, g2) = gens  # product of two letters
    w, x = g1.word[0], g2.word[0]
    if h.kind == "Q":
        y = h.args[0]
        return 1 if (h.s == 0 and w == y and x == y) else 0
    if h.kind == "star":
        y, z = h.args
        return int((w == y) and (x == z)) ^ int((w == z) and (x == y))
    return 0


def pairing(cls: E1Class, h: HWord) -> int:
    """Bilinear extension of the weight-2 pairing table."""
    out = 0
    for m in cls.terms:
        out ^= _pair_monomial(m, h)
    return out


def homology_basis(n, module: ModulePresentation, degree: int) -> List[HWord]:
    """Weight-2 homology basis words of one degree: Q_r(y), y*z, lambda(y,z)."""
    names = [x for x, _ in module.basis]
    out: List[HWord] = []
    for y in names:
        r = degree - 2 * module.degree(y)
        if r >= 0 and (n == INF or r <= n - 1):
            out.append(hq(r, y))
    for y, z in itertools.combinations(names, 2):
        if module.degree(y) + module.degree(z) == degree:
            out.append(hstar(y, z))
    if n != INF:
        for y, z in itertools.combinations(names, 2):
            if module.degree(y) + module.degree(z) + (n - 1) == degree:
                out.append(hlambda(y, z))
    return out
