"""The mod-2 Steenrod algebra on the admissible basis.

Words Sq^{i1}...Sq^{im} are exponent tuples; a word is admissible when
i_j >= 2*i_{j+1} throughout, and the admissible monomials of each degree
form a basis.  The classical Adem relation

    Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c      (a < 2b)

is the rewrite rule; normal forms are computed by eliminating the leftmost
inadmissible pair and recursing, with heavy memoization.  All elements are
mod-2 sums of admissible words of one degree.

The action on polynomial rings F2[t1..tm] (total square Sq(t) = t + t^2,
extended multiplicatively) is implemented independently of the rewriting
and serves as the faithfulness oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import f2linalg

Word = Tuple[int, ...]
Poly = FrozenSet[Tuple[int, ...]]  # F2 polynomial: set of exponent tuples

ZERO_POLY: Poly = frozenset()


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2; for a < 0 this is the coefficient of t^b in (1+t)^a over F2.

    Both cases are Lucas' rule on binary digits: Python ints already carry
    the infinite two's-complement expansion needed for negative a.
    """
    if b < 0:
        return 0
    return 1 if (a & b) == b else 0


def is_admissible(word: Word) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


def word_degree(word: Word) -> int:
    return sum(word)


@lru_cache(maxsize=None)
def algebra_basis(degree: int) -> Tuple[Word, ...]:
    """All admissible words of the given degree, in lexicographic order."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree == 0:
        return ((),)
    out = []
    for first in range(1, degree + 1):
        for rest in algebra_basis(degree - first):
            if not rest or first >= 2 * rest[0]:
                out.append((first,) + rest)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _basis_index(degree: int) -> Dict[Word, int]:
    return {w: i for i, w in enumerate(algebra_basis(degree))}


_nf_cache: Dict[Word, FrozenSet[Word]] = {(): frozenset({()})}


def _nf_word(word: Word) -> FrozenSet[Word]:
    """Normal form of a single word as a set of admissible words."""
    cached = _nf_cache.get(word)
    if cached is not None:
        return cached
    # locate leftmost inadmissible pair
    spot = None
    for j in range(len(word) - 1):
        if word[j] < 2 * word[j + 1]:
            spot = j
            break
    if spot is None:
        result = frozenset({word})
    else:
        a, b = word[spot], word[spot + 1]
        head, tail = word[:spot], word[spot + 2:]
        acc: set = set()
        for c in range(0, a // 2 + 1):
            if binom_mod2(b - c - 1, a - 2 * c):
                mid = (a + b - c, c) if c else (a + b - c,)
                acc ^= _nf_word(head + mid + tail)
        result = frozenset(acc)
    _nf_cache[word] = result
    return result


@lru_cache(maxsize=None)
def _leftmul_table(i: int, degree: int) -> Tuple[int, ...]:
    """Masks of Sq^i * m over the degree (degree+i) basis, per basis word m."""
    target = _basis_index(degree + i)
    out = []
    for mono in algebra_basis(degree):
        mask = 0
        for w in _nf_word((i,) + mono):
            mask ^= 1 << target[w]
        out.append(mask)
    return tuple(out)


_step_cache: Dict[Tuple[int, int, int], int] = {}


def _leftmul_mask(i: int, degree: int, mask: int) -> int:
    """Left-multiply a degree-homogeneous element (basis mask) by Sq^i."""
    key = (i, degree, mask)
    hit = _step_cache.get(key)
    if hit is not None:
        return hit
    table = _leftmul_table(i, degree)
    out = 0
    m = mask
    while m:
        low = m & -m
        out ^= table[low.bit_length() - 1]
        m ^= low
    _step_cache[key] = out
    return out


@dataclass(frozen=True)
class SteenrodElement:
    """Mod-2 sum of admissible words, all of one degree (empty set = 0)."""

    monomials: FrozenSet[Word]

    def __post_init__(self):
        degs = {word_degree(w) for w in self.monomials}
        if len(degs) > 1:
            raise ValueError("mixed degrees in Steenrod element")

    @classmethod
    def zero(cls) -> "SteenrodElement":
        return cls(frozenset())

    @classmethod
    def unit(cls) -> "SteenrodElement":
        return cls(frozenset({()}))

    @classmethod
    def sq(cls, i: int) -> "SteenrodElement":
        if i < 0:
            raise ValueError("negative square")
        return cls(frozenset({(i,)})) if i else cls.unit()

    @property
    def degree(self) -> Optional[int]:
        for w in self.monomials:
            return word_degree(w)
        return None

    def is_zero(self) -> bool:
        return not self.monomials

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        return SteenrodElement(self.monomials ^ other.monomials)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        acc: set = set()
        for w1 in self.monomials:
            for w2 in other.monomials:
                acc ^= adem_normal_form(w1 + w2).monomials
        return SteenrodElement(frozenset(acc))

    def sorted_words(self) -> List[Word]:
        return sorted(self.monomials)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for w in self.sorted_words():
            parts.append(" ".join(f"Sq^{i}" for i in w) if w else "1")
        return " + ".join(parts)


def adem_normal_form(word: Sequence[int]) -> SteenrodElement:
    """Admissible normal form of Sq^{i1}...Sq^{im}; zero exponents are dropped."""
    letters = []
    for i in word:
        if i < 0:
            raise ValueError("negative square exponent")
        if i:
            letters.append(i)
    degree = 0
    mask = 1  # the unit word in degree 0
    for i in reversed(letters):
        mask = _leftmul_mask(i, degree, mask)
        degree += i
        if not mask:
            return SteenrodElement.zero()
    basis = algebra_basis(degree)
    monos = set()
    m = mask
    while m:
        low = m & -m
        monos.add(basis[low.bit_length() - 1])
        m ^= low
    return SteenrodElement(frozenset(monos))


def element_mask(e: SteenrodElement, degree: int) -> int:
    idx = _basis_index(degree)
    mask = 0
    for w in e.monomials:
        mask ^= 1 << idx[w]
    return mask


def element_from_mask(mask: int, degree: int) -> SteenrodElement:
    basis = algebra_basis(degree)
    monos = set()
    while mask:
        low = mask & -mask
        monos.add(basis[low.bit_length() - 1])
        mask ^= low
    return SteenrodElement(frozenset(monos))


# ---------------------------------------------------------------------------
# Action on polynomial algebras F2[t1..tm]
# ---------------------------------------------------------------------------

def poly_from_monomials(monos: Iterable[Sequence[int]]) -> Poly:
    acc: set = set()
    for m in monos:
        acc ^= {tuple(m)}
    return frozenset(acc)


@lru_cache(maxsize=None)
def _sq_on_monomial(k: int, expts: Tuple[int, ...]) -> Poly:
    """Sq^k(t1^e1...tm^em) via Cartan: distribute k over the variables."""
    if k == 0:
        return frozenset({expts})
    if not expts:
        return ZERO_POLY
    head, tail = expts[0], expts[1:]
    acc: set = set()
    for k1 in range(0, min(k, head) + 1):
        if not binom_mod2(head, k1):
            continue
        for rest in _sq_on_monomial(k - k1, tail):
            acc ^= {(head + k1,) + rest}
    return frozenset(acc)


def sq_on_poly(k: int, p: Poly) -> Poly:
    acc: set = set()
    for m in p:
        acc ^= _sq_on_monomial(k, m)
    return frozenset(acc)


def steenrod_act_poly(op, p: Poly) -> Poly:
    """Act on a polynomial by a word (sequence of exponents) or an element."""
    if isinstance(op, SteenrodElement):
        acc: set = set()
        for w in op.monomials:
            acc ^= steenrod_act_poly(w, p)
        return frozenset(acc)
    out = p
    for k in reversed(tuple(op)):
        out = sq_on_poly(k, out)
        if not out:
            break
    return out


# ---------------------------------------------------------------------------
# The subalgebras A(k) = <Sq^1, ..., Sq^{2^k}>
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _ak_degree_masks(k: int, degree: int) -> Tuple[int, ...]:
    """Echelonized basis masks of the degree-d part of A(k).

    Every product of generators of degree d is some Sq^{2^i} times a shorter
    product, so closing under left multiplication degree by degree spans the
    whole subalgebra slice.
    """
    if degree == 0:
        return (1,)
    if degree < 0:
        return ()
    rows = []
    for i in range(k + 1):
        g = 1 << i
        if g > degree:
            break
        for mask in _ak_degree_masks(k, degree - g):
            img = _leftmul_mask(g, degree - g, mask)
            if img:
                rows.append(img)
    reduced, _ = f2linalg._echelon(rows, len(algebra_basis(degree)))
    return tuple(reduced)


@dataclass(frozen=True)
class SubalgebraBasis:
    """Degree slice of A(k) in admissible coordinates."""

    k: int
    degree: int
    elements: Tuple[SteenrodElement, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)


def ak_basis(k: int, degree: int) -> SubalgebraBasis:
    if k < 0 or degree < 0:
        raise ValueError("k and degree must be >= 0")
    masks = _ak_degree_masks(k, degree)
    return SubalgebraBasis(
        k, degree, tuple(element_from_mask(m, degree) for m in masks)
    )


def ak_contains(k: int, e: SteenrodElement) -> bool:
    if e.is_zero():
        return True
    d = e.degree
    masks = _ak_degree_masks(k, d)
    target = element_mask(e, d)
    return f2linalg.membership(target, masks, len(algebra_basis(d))) is not None


# ---------------------------------------------------------------------------
# The Sq^{2^k}Sq^{2^k} decomposition through A(k-1)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchwartzWitness:
    """Sq^{2^k}Sq^{2^k} as a sum of products alpha * Sq^{2^k} * beta.

    alpha and beta run over A(k-1) basis elements with degrees summing
    to 2^k; `pairs` lists the terms with coefficient 1.
    """

    k: int
    pairs: Tuple[Tuple[SteenrodElement, SteenrodElement], ...]

    def target(self) -> SteenrodElement:
        return adem_normal_form((1 << self.k, 1 << self.k))

    def verify(self) -> bool:
        sq = SteenrodElement.sq(1 << self.k)
        acc = SteenrodElement.zero()
        for alpha, beta in self.pairs:
            acc = acc + alpha * sq * beta
        return acc == self.target()

    def __str__(self) -> str:
        g = f"Sq^{1 << self.k}"
        parts = []
        for alpha, beta in self.pairs:
            bits = [s for s in (str(alpha), g, str(beta)) if s != "1"]
            parts.append(" ".join(bits))
        lhs = f"{g} {g}"
        return f"{lhs} = " + (" + ".join(parts) if parts else "0")


class SchwartzFailure(Exception):
    """No A(k-1)·Sq^{2^k}·A(k-1) decomposition exists (contradicts the theory)."""


def schwartz_membership(k: int) -> SchwartzWitness:
    """Express Sq^{2^k}Sq^{2^k} in A(k-1)·Sq^{2^k}·A(k-1), with explicit terms.

    Candidate products are enumerated deterministically (degree split
    ascending, then basis order) so the returned witness is stable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    g = 1 << k
    sq = SteenrodElement.sq(g)
    target_degree = 2 * g
    ncols = len(algebra_basis(target_degree))
    candidates: List[Tuple[SteenrodElement, SteenrodElement]] = []
    vectors: List[int] = []
    for da in range(0, g + 1):
        db = g - da
        left = ak_basis(k - 1, da).elements
        right = ak_basis(k - 1, db).elements
        for alpha in left:
            alpha_sq = alpha * sq
            for beta in right:
                prod = alpha_sq * beta
                if prod.is_zero():
                    continue
                candidates.append((alpha, beta))
                vectors.append(element_mask(prod, target_degree))
    target = element_mask(adem_normal_form((g, g)), target_degree)
    coeffs = f2linalg.membership(target, vectors, ncols)
    if coeffs is None:
        raise SchwartzFailure(f"no decomposition found for k={k}")
    pairs = tuple(
        candidates[i] for i in range(len(candidates)) if (coeffs >> i) & 1
    )
    return SchwartzWitness(k, pairs)
