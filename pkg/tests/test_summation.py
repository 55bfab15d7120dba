from fractions import Fraction

import pytest

from supercong.exactnum import NotInvertible, primes_between, residue_of
from supercong.sequences import LucasParams, lucas_u
from supercong.summation import (
    SUMS,
    exact_residue,
    identity_sum,
    sum_bbm,
    sum_bm,
    sum_harmonic_check,
    sum_lemma22,
    sum_pbm,
    sum_theorem,
)


# Frozen from a standalone exact-rational evaluation (math.comb + Fraction).
@pytest.mark.parametrize(
    "fn, p, aux, expected",
    [
        (sum_bm, 5, 1, 24),
        (sum_bm, 5, 2, 1),  # 83/8
        (sum_bm, 7, 1, 1),  # 1275 = 26*49 + 1
        (sum_pbm, 5, 4, 20),
        (sum_pbm, 5, 1, 19),  # 1 - 8 + 36 - 80 + 70
        (sum_bbm, 5, 1, 9),
        (sum_bbm, 7, 2, 6),
        (sum_bbm, 5, -1, 5),
        (sum_lemma22, 5, 1, 19),
        (sum_lemma22, 5, 2, 21),  # 17/2
        (sum_lemma22, 5, 3, 14),
        (sum_harmonic_check, 5, 1, 5),
        (sum_harmonic_check, 5, 2, 10),
        (sum_harmonic_check, 7, 3, 0),
    ],
)
def test_sum_examples(fn, p, aux, expected):
    assert fn(p, aux).value == expected


def test_lemma22_exact_value():
    assert SUMS["lemma22"].exact(5, 2) == Fraction(17, 2)


def test_bm_hand_value():
    assert SUMS["bm"].exact(5, 1) == 99


@pytest.mark.parametrize("which, p, expected, e", [("1.1a", 5, 19, 2), ("1.1b", 5, 45, 3), ("1.2", 13, 637, 3), ("1.3", 17, 2363, 3)])
def test_theorem_sums(which, p, expected, e):
    r = sum_theorem(p, which)
    assert (r.value, r.e) == (expected, e)


def test_thm11b_p5_against_closed_form():
    # (5/3)(3^4 - 1) = -80 = 45 (mod 125)
    assert sum_theorem(5, "1.1b").value == -80 % 125


def test_sum_preconditions():
    with pytest.raises(NotInvertible):
        sum_bm(5, 10)
    with pytest.raises(NotInvertible):
        sum_lemma22(7, 14)
    with pytest.raises(ValueError):
        sum_bm(9, 1)
    with pytest.raises(ValueError):
        sum_theorem(3, "1.1a")
    with pytest.raises(ValueError):
        sum_theorem(5, "2.0")


@pytest.mark.parametrize("name", ["bm", "pbm", "bbm", "lemma22", "hsum"])
def test_oracle_equivalence_parameterised(name):
    spec = SUMS[name]
    for p in primes_between(5, 120):
        for aux in (-7, -3, -1, 1, 2, 3, 5, 6, 12, 1000003):
            if aux % p == 0:
                continue
            for e in (1, 2, 3):
                if name == "hsum" and e != 2:
                    continue
                got = spec.modular(p, aux) if name == "hsum" else spec.modular(p, aux, e)
                assert got == exact_residue(spec, p, aux, e=e), (name, p, aux, e)


@pytest.mark.parametrize("name", ["1.1a", "1.1b", "1.2", "1.3"])
def test_oracle_equivalence_theorems(name):
    spec = SUMS[name]
    for p in primes_between(5, 120):
        assert spec.modular(p) == exact_residue(spec, p), (name, p)


def test_lemma22_extended_bound_changes_nothing():
    for p in primes_between(5, 150):
        for d in (1, 2, 3, -5):
            if d % p:
                assert sum_lemma22(p, d, upper=p - 1) == sum_lemma22(p, d)


def test_identity_examples():
    assert identity_sum(6, "1.4a") == 0
    assert identity_sum(0, "1.5a") == 0
    assert identity_sum(3, "1.6") == 0


def test_identity_1_6_n3_by_hand():
    # u_k(3,3) = 0, 1, 3, 6
    terms = [Fraction(c * b * u, (-4) ** k) for k, (c, b, u) in enumerate(zip((1, 3, 3, 1), (1, 2, 6, 20), (0, 1, 3, 6)))]
    assert [lucas_u(LucasParams(3, 3), k) for k in range(4)] == [0, 1, 3, 6]
    assert sum(terms) == 0 == identity_sum(3, "1.6")


CONDITIONS = {"1.4a": (6, 0), "1.4b": (6, 3), "1.5a": (4, 0), "1.5b": (4, 2), "1.6": (3, 0)}


@pytest.mark.parametrize("which", sorted(CONDITIONS))
def test_identities_vanish_on_condition(which):
    mod, res = CONDITIONS[which]
    for n in range(res, 121, mod):
        assert identity_sum(n, which) == 0, n


@pytest.mark.parametrize("which", sorted(CONDITIONS))
def test_identities_nonzero_off_condition(which):
    mod, res = CONDITIONS[which]
    off = [n for n in range(1, 80) if n % mod != res]
    assert all(identity_sum(n, which) != 0 for n in off)


def test_identity_unknown():
    with pytest.raises(ValueError):
        identity_sum(3, "1.7")


def test_mod_and_exact_use_same_reduction():
    assert residue_of(SUMS["bbm"].exact(7, 2), 7, 2) == sum_bbm(7, 2)
