import math

import pytest
from hypothesis import given, settings, strategies as st

from looptower import steenrod as sq


def words_of_degree(d):
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in words_of_degree(d - first):
            yield (first,) + rest


# -- binomials mod 2 ---------------------------------------------------------

def test_binom_examples():
    assert sq.binom_mod2(0, 0) == 1
    assert sq.binom_mod2(4, 2) == 0
    assert sq.binom_mod2(-1, 7) == 1


@given(st.integers(0, 200), st.integers(-5, 200))
def test_binom_matches_comb(a, b):
    expect = math.comb(a, b) % 2 if 0 <= b <= a else (0 if b >= 0 else 0)
    if b < 0 or b > a:
        expect = 0
    assert sq.binom_mod2(a, b) == expect


@given(st.integers(-8, -1), st.integers(0, 40))
def test_binom_negative_series(a, b):
    # coefficient of t^b in (1+t)^a over F2, by multiplying out the series
    series = [1] + [0] * b  # (1+t)^0
    for _ in range(-a):
        # divide by (1+t): s_new[i] = s[i] - s_new[i-1]
        new = [0] * (b + 1)
        new[0] = series[0]
        for i in range(1, b + 1):
            new[i] = (series[i] ^ new[i - 1]) & 1
        series = new
    assert sq.binom_mod2(a, b) == series[b]


# -- normal forms ------------------------------------------------------------

def test_adem_sq2sq2():
    assert sq.adem_normal_form((2, 2)).monomials == {(3, 1)}


def test_adem_sq1sq1():
    assert sq.adem_normal_form((1, 1)).is_zero()


def test_adem_admissible_fixed():
    assert sq.adem_normal_form((4, 1)).monomials == {(4, 1)}


def test_adem_drops_zero_exponents():
    assert sq.adem_normal_form((0, 3, 0)).monomials == {(3,)}


def test_str_formatting():
    assert str(sq.adem_normal_form((2, 2))) == "Sq^3 Sq^1"
    assert str(sq.SteenrodElement.zero()) == "0"
    assert str(sq.SteenrodElement.unit()) == "1"


def test_algebra_basis_small():
    assert sq.algebra_basis(0) == ((),)
    assert sq.algebra_basis(1) == ((1,),)
    assert set(sq.algebra_basis(3)) == {(3,), (2, 1)}


def test_algebra_basis_all_admissible():
    for d in range(0, 15):
        for w in sq.algebra_basis(d):
            assert sq.is_admissible(w)
            assert sum(w) == d
        # every admissible composition appears
        admissible = {w for w in words_of_degree(d) if sq.is_admissible(w)}
        assert set(sq.algebra_basis(d)) == admissible


def test_idempotent_small_degrees():
    for d in range(0, 11):
        for w in words_of_degree(d):
            e = sq.adem_normal_form(w)
            for mono in e.monomials:
                assert sq.is_admissible(mono)
                assert sq.adem_normal_form(mono).monomials == {mono}


# -- the polynomial action oracle -------------------------------------------

T = frozenset({(1,)})


def test_act_poly_examples():
    assert sq.steenrod_act_poly((1,), T) == {(2,)}
    assert sq.steenrod_act_poly((2,), frozenset({(2,)})) == {(4,)}
    assert sq.steenrod_act_poly((1,), frozenset({(1, 1)})) == {(2, 1), (1, 2)}


def test_unstability_boundary():
    # Sq^s(t^d) = C(d, s) t^{d+s}, zero above the degree
    for d in range(0, 9):
        for s in range(0, 12):
            got = sq.sq_on_poly(s, frozenset({(d,)}))
            if sq.binom_mod2(d, s):
                assert got == {(d + s,)}
            else:
                assert got == frozenset()
            if s > d:
                assert got == frozenset()


def test_oracle_agreement_degree_8():
    seeds = [frozenset({(1, 1, 1)}), frozenset({(2, 1, 0)}), frozenset({(1, 0, 0)})]
    for d in range(1, 9):
        for w in words_of_degree(d):
            e = sq.adem_normal_form(w)
            for p in seeds:
                assert sq.steenrod_act_poly(w, p) == sq.steenrod_act_poly(e, p)


def test_zero_detection_small():
    # nf(w) = 0 iff w kills Z/2[t1,t2,t3] through degree deg(w) + 12
    monos = [
        frozenset({(a, b, c)})
        for a in range(0, 13)
        for b in range(0, 13 - a)
        for c in range(0, 13 - a - b)
        if a + b + c
    ]
    for d in range(1, 7):
        for w in words_of_degree(d):
            zero_nf = sq.adem_normal_form(w).is_zero()
            acts_zero = all(not sq.steenrod_act_poly(w, p) for p in monos)
            assert zero_nf == acts_zero


# -- multiplication ----------------------------------------------------------

def test_multiplication_matches_concatenation():
    e1 = sq.adem_normal_form((2, 2))
    e2 = sq.adem_normal_form((3,))
    prod = e1 * e2
    assert prod == sq.adem_normal_form((2, 2, 3))


@settings(max_examples=60)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=3),
       st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_multiplication_associates_with_oracle(w1, w2):
    lhs = sq.adem_normal_form(tuple(w1)) * sq.adem_normal_form(tuple(w2))
    rhs = sq.adem_normal_form(tuple(w1) + tuple(w2))
    assert lhs == rhs


# -- A(k) --------------------------------------------------------------------

def test_ak_basis_a0():
    assert sq.ak_basis(0, 1).dim == 1
    assert sq.ak_basis(0, 2).dim == 0


def test_ak_basis_a1_degree3():
    basis = sq.ak_basis(1, 3)
    assert basis.dim == 2
    assert sq.ak_contains(1, sq.adem_normal_form((1, 2)))
    assert sq.ak_contains(1, sq.adem_normal_form((2, 1)))


def test_ak_total_dimensions():
    # dim A(k) = 2^{(k+1)(k+2)/2}
    for k in (0, 1):
        top = {0: 3, 1: 23}[k] + 1
        total = sum(sq.ak_basis(k, d).dim for d in range(0, top + 40))
        assert total == 1 << ((k + 1) * (k + 2) // 2)


def test_ak_not_all_of_a():
    # Sq^4 is not in A(1)
    assert not sq.ak_contains(1, sq.SteenrodElement.sq(4))
    assert sq.ak_contains(2, sq.SteenrodElement.sq(4))


def test_ak_closed_under_multiplication():
    for k in (0, 1):
        gens = [sq.SteenrodElement.sq(1 << i) for i in range(k + 1)]
        for d in range(0, 9):
            for e in sq.ak_basis(k, d).elements:
                for g in gens:
                    assert sq.ak_contains(k, g * e)
                    assert sq.ak_contains(k, e * g)


# -- the Sq^{2^k}Sq^{2^k} decomposition --------------------------------------

def test_schwartz_k1_exact():
    w = sq.schwartz_membership(1)
    assert w.verify()
    assert len(w.pairs) == 1
    alpha, beta = w.pairs[0]
    assert str(alpha) == "Sq^1" and str(beta) == "Sq^1"
    assert str(w) == "Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1"


@pytest.mark.parametrize("k", [2, 3])
def test_schwartz_exists(k):
    w = sq.schwartz_membership(k)
    assert w.verify()
    assert w.pairs
    for alpha, beta in w.pairs:
        assert sq.ak_contains(k - 1, alpha)
        assert sq.ak_contains(k - 1, beta)


def test_schwartz_rejects_k0():
    with pytest.raises(ValueError):
        sq.schwartz_membership(0)
