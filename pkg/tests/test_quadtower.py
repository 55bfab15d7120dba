import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercong.exactnum import binom_exact
from supercong.quadtower import (
    InvalidParameter,
    coefficient_extraction_check,
    lemma21_check,
    lemma21_sides,
    tower_make,
    tower_pow,
)
from supercong.sequences import LucasParams, lucas_u, lucas_v

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elems(tower):
    return st.tuples(fractions, fractions, fractions, fractions).map(lambda c: tower.elem(*c))


T = tower_make(-7, Fraction(5, 3))


@settings(max_examples=200)
@given(elems(T), elems(T), elems(T))
def test_algebra_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + b - b == a


def test_defining_relations():
    t = tower_make(12, 3)
    assert t.sqrt_delta * t.sqrt_delta == t.elem(12)
    assert tower_pow(t.sqrt_d, 2) == t.elem(3)
    assert tower_pow(t.elem(1, 2, 3, 4), 0) == t.one


def test_make_contexts():
    assert tower_make(4, 1).d == 1
    assert tower_make(12, 3).Delta == 12
    assert tower_make(8, 2).Delta == 8
    with pytest.raises(InvalidParameter):
        tower_make(0, 1)


def test_alpha_squared():
    t = tower_make(-3, 1)
    alpha, _ = t.roots(1)
    assert tower_pow(alpha, 2) == t.elem(Fraction(-1, 2), Fraction(1, 2))


def test_tower_pow_matches_repeated_product():
    t = tower_make(5, Fraction(-2, 7))
    x = t.elem(1, Fraction(1, 3), -2, Fraction(1, 5))
    acc = t.one
    for n in range(12):
        assert tower_pow(x, n) == acc
        acc = acc * x


def test_contexts_do_not_mix():
    with pytest.raises(ValueError):
        tower_make(5, 1).one + tower_make(6, 1).one


def test_root_identities():
    rng = random.Random(3)
    for _ in range(50):
        A, B = rng.randint(-30, 30), rng.randint(-30, 30)
        if A * A == 4 * B:
            continue
        t = tower_make(A * A - 4 * B, 1)
        alpha, beta = t.roots(A)
        assert alpha + beta == t.elem(A)
        assert alpha * beta == t.elem(B)
        assert (alpha - beta) * (alpha - beta) == t.elem(A * A - 4 * B)
        # alpha^n - beta^n = (alpha - beta) u_n and alpha^n + beta^n = v_n
        for n in range(8):
            an, bn = tower_pow(alpha, n), tower_pow(beta, n)
            assert an - bn == t.sqrt_delta * lucas_u(LucasParams(A, B), n)
            assert an + bn == t.elem(lucas_v(LucasParams(A, B), n))


@pytest.mark.parametrize(
    "A, B, sign, power",
    [(1, 1, 1, 3), (2, 2, -1, 2), (3, 3, -1, 3)],
)
def test_special_root_relations(A, B, sign, power):
    t = tower_make(A * A - 4 * B, 1)
    alpha, beta = t.roots(A)
    assert tower_pow(alpha, power) == tower_pow(beta, power) * sign


@pytest.mark.parametrize("A, B, m, n", [(4, 1, -1, 6), (1, 1, -4, 0), (2, 2, -4, 7)])
def test_coefficient_extraction_examples(A, B, m, n):
    assert coefficient_extraction_check(A, B, m, n)


def expand_coefficient(r, m, n):
    """[x^n] ((1 + r x)^2 + m x)^n by explicit polynomial multiplication in the tower."""
    t = r.ctx
    base = [t.one, r * 2 + m, r * r]
    poly = [t.one]
    for _ in range(n):
        nxt = [t.elem(0)] * (len(poly) + 2)
        for i, c in enumerate(poly):
            for j, b in enumerate(base):
                nxt[i + j] = nxt[i + j] + c * b
        poly = nxt
    return poly[n]


def test_extraction_against_polynomial_expansion():
    for A, m in [(4, -1), (2, -4), (3, 4), (6, -2)]:
        B = Fraction(-m * A, 4)
        t = tower_make(A * A - 4 * B, 4 + Fraction(4 * m, A))
        for r in t.roots(A):
            for n in range(9):
                lhs = sum(
                    (tower_pow(r, k) * (binom_exact(n, k) * binom_exact(2 * k, k) * Fraction(m) ** (n - k))
                     for k in range(n + 1)),
                    t.elem(0),
                )
                assert lhs == expand_coefficient(r, m, n)


def test_coefficient_extraction_grid():
    for A in range(-12, 13):
        for m in range(-12, 13):
            if A == 0 or m == 0 or (m * A) % 4 or A * (A + m) == 0:
                continue
            for n in range(41):
                assert coefficient_extraction_check(A, -m * A // 4, m, n), (A, m, n)


def test_lemma21_examples():
    assert lemma21_sides(1, 1, -4, 6, "u") == (0, 0)
    assert lemma21_sides(2, 2, -4, 2, "v") == (0, 0)
    lhs, rhs = lemma21_sides(4, 3, -3, 4, "u")
    assert lhs == rhs == Fraction(760, 81)


def test_lemma21_odd_n_uses_branch():
    # n odd: the formal right side carries sqrt(Delta) sqrt(d) until the branch is fixed
    lhs, rhs = lemma21_sides(4, 1, -1, 5, "u")
    assert lhs == rhs == -35838


def test_lemma21_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        lemma21_check(-4, 1, 1, 3, "u")
    with pytest.raises(InvalidParameter):
        lemma21_check(4, 2, -1, 3, "u")
    with pytest.raises(InvalidParameter):
        lemma21_check(4, 4, -4, 3, "u")
    with pytest.raises(InvalidParameter):
        lemma21_check(4, 1, -1, 3, "w")


def test_lemma21_detects_wrong_lhs(monkeypatch):
    import supercong.quadtower as qt

    monkeypatch.setattr(qt, "lucas_u", lambda params, k: lucas_u(params, k) + (k == 2))
    assert not qt.lemma21_check(4, 1, -1, 4, "u")
