"""Finite sums, evaluated either in Z/p^e Z (fast path) or exactly over Q (oracle).

The modular evaluators keep plain ints mod p^e inside their loops and only wrap
the final value in a Residue.  Applicability filters (6 | n, p = +-1 mod 12,
...) are not applied here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exactnum import (
    NotInvertible,
    Residue,
    binom_exact,
    central_binoms_mod,
    harmonic,
    is_prime,
    residue_of,
)
from .sequences import LucasParams, TrinomialCache, lucas_u, trinomial, trinomial_sum, weights


def _require_prime(p: int) -> None:
    if p <= 3 or not is_prime(p):
        raise ValueError(f"expected a prime p > 3, got {p}")


def _inv(x: int, p: int, M: int) -> int:
    if x % p == 0:
        raise NotInvertible(x, p)
    return pow(x, -1, M)


def _binom_pm1(p: int, M: int):
    """C(p-1, k) mod M for k = 0..p-1."""
    c = 1
    yield c
    for k in range(1, p):
        c = c * (p - k) * pow(k, -1, M) % M
        yield c


def _sum_central(p: int, M: int, e: int, kmax: int, ratio: int, with_pm1: bool) -> int:
    """sum_{k<=kmax} [C(p-1,k)] C(2k,k) ratio^k mod M."""
    total, r = 0, 1
    pm1 = _binom_pm1(p, M) if with_pm1 else None
    for c in central_binoms_mod(kmax, p, e):
        if pm1 is not None:
            c = c * next(pm1)
        total += c * r
        r = r * ratio % M
    return total % M


def sum_bm(p: int, m: int, e: int = 2) -> Residue:
    """sum_{k=0}^{p-1} C(2k,k) / m^k."""
    _require_prime(p)
    M = p ** e
    return Residue(_sum_central(p, M, e, p - 1, _inv(m, p, M), False), p, e)


def sum_pbm(p: int, m: int, e: int = 2) -> Residue:
    """sum_{k=0}^{p-1} C(p-1,k) C(2k,k) / (-m)^k."""
    _require_prime(p)
    M = p ** e
    return Residue(_sum_central(p, M, e, p - 1, _inv(-m, p, M), True), p, e)


def sum_bbm(p: int, m: int, e: int = 2) -> Residue:
    """sum_{k=0}^{(p-1)/2} C(2k,k) / m^k."""
    _require_prime(p)
    M = p ** e
    return Residue(_sum_central(p, M, e, (p - 1) // 2, _inv(m, p, M), False), p, e)


def sum_lemma22(p: int, d: int, e: int = 2, upper: int | None = None) -> Residue:
    """sum_{k=0}^{(p-1)/2} C(p-1,k) C(p-1-k,k) d^-k.

    ``upper`` may push the bound past (p-1)/2; the extra terms vanish.
    """
    _require_prime(p)
    M = p ** e
    dinv = _inv(d, p, M)
    upper = (p - 1) // 2 if upper is None else upper
    n = p - 1
    # t_k = n! / (k! k! (n-2k)!) d^-k
    t, total = 1, 1
    for k in range(upper):
        if n - 2 * k - 1 <= 0:
            break
        t = t * (n - 2 * k) * (n - 2 * k - 1) * pow((k + 1) * (k + 1), -1, M) * dinv % M
        total += t
    return Residue(total % M, p, e)


def sum_harmonic_check(p: int, d: int) -> Residue:
    """p * sum_{k=0}^{(p-1)/2} H_k C(2k,k) d^-k mod p^2."""
    _require_prime(p)
    e, M = 2, p * p
    dinv = _inv(d, p, M)
    h, r, total = 0, 1, 0
    for k, c in enumerate(central_binoms_mod((p - 1) // 2, p, e)):
        if k:
            h = (h + pow(k, -1, M)) % M
        total += h * c * r
        r = r * dinv % M
    return Residue(p * total % M, p, e)


THEOREM_SUMS = ("1.1a", "1.1b", "1.2", "1.3")
_DEFAULT_E = {"1.1a": 2, "1.1b": 3, "1.2": 3, "1.3": 3}


def sum_theorem(p: int, which: str, e: int | None = None, cache: TrinomialCache | None = None) -> Residue:
    """Left-hand side of the named theorem in Z/p^e Z."""
    _require_prime(p)
    if which not in _DEFAULT_E:
        raise ValueError(f"unknown theorem sum {which!r}")
    e = _DEFAULT_E[which] if e is None else e
    M = p ** e
    if which == "1.1a":
        cache = cache if cache is not None else TrinomialCache()
        return Residue(trinomial(cache, p - 1) % M, p, e)

    pm1 = _binom_pm1(p, M)
    total = 0
    for c, w in zip(central_binoms_mod(p - 1, p, e), _theorem_weights(which, p, M)):
        total += c * next(pm1) * w
    return Residue(total % M, p, e)


def _theorem_weights(which: str, p: int, M: int):
    """The summand weight mod M for k = 0..p-1."""
    if which == "1.1b":
        # (-1)^k - (-3)^-k
        sign, g, ginv = 1, 1, pow(-3, -1, M)
        for _ in range(p):
            yield sign - g
            sign, g = -sign, g * ginv % M
        return
    # 1.2: (-1)^k u_k(4,1);  1.3: u_k(4,2) (-2)^-k
    B, ratio = (1, M - 1) if which == "1.2" else (2, pow(-2, -1, M))
    u0, u1, r = 0, 1, 1
    for _ in range(p):
        yield u0 * r
        u0, u1 = u1, (4 * u1 - B * u0) % M
        r = r * ratio % M


# identity id -> (weight kind, geometric base)
IDENTITY_SUMS = {
    "1.4a": ("legendre3", 4),
    "1.4b": ("bracket3", 4),
    "1.5a": ("u22", -4),
    "1.5b": ("v22", -4),
    "1.6": ("u33", -4),
}


def identity_sum(n: int, which: str) -> Fraction:
    """sum_{k=0}^n C(n,k) C(2k,k) w_k / base^k, exactly."""
    try:
        kind, base = IDENTITY_SUMS[which]
    except KeyError:
        raise ValueError(f"unknown identity {which!r}") from None
    ws = weights(kind, n)
    total = Fraction(0)
    for k in range(n + 1):
        total += Fraction(binom_exact(n, k) * binom_exact(2 * k, k) * ws[k], base ** k)
    return total


# Exact oracles.  These only use binom_exact, Fraction and the plain recurrences.

def bm_exact(p: int, m: int) -> Fraction:
    return sum((Fraction(binom_exact(2 * k, k), m ** k) for k in range(p)), Fraction(0))


def pbm_exact(p: int, m: int) -> Fraction:
    return sum(
        (Fraction(binom_exact(p - 1, k) * binom_exact(2 * k, k), (-m) ** k) for k in range(p)),
        Fraction(0),
    )


def bbm_exact(p: int, m: int) -> Fraction:
    return sum((Fraction(binom_exact(2 * k, k), m ** k) for k in range((p + 1) // 2)), Fraction(0))


def lemma22_exact(p: int, d: int) -> Fraction:
    return sum(
        (Fraction(binom_exact(p - 1, k) * binom_exact(p - 1 - k, k), d ** k) for k in range((p + 1) // 2)),
        Fraction(0),
    )


def harmonic_check_exact(p: int, d: int) -> Fraction:
    return p * sum(
        (harmonic(k) * Fraction(binom_exact(2 * k, k), d ** k) for k in range((p + 1) // 2)),
        Fraction(0),
    )


def theorem_exact(p: int, which: str) -> Fraction:
    if which == "1.1a":
        return Fraction(trinomial_sum(p - 1))
    terms = []
    for k in range(p):
        c = binom_exact(p - 1, k) * binom_exact(2 * k, k)
        if which == "1.1b":
            terms.append(c * ((-1) ** k - Fraction(1, (-3) ** k)))
        elif which == "1.2":
            terms.append(Fraction(c * (-1) ** k * lucas_u(LucasParams(4, 1), k)))
        elif which == "1.3":
            terms.append(Fraction(c * lucas_u(LucasParams(4, 2), k), (-2) ** k))
        else:
            raise ValueError(f"unknown theorem sum {which!r}")
    return sum(terms, Fraction(0))


@dataclass(frozen=True)
class SumSpec:
    """One finite sum: its bound, summand recipe, and both evaluation routes."""

    kind: str
    upper: str
    term: str
    modular: Callable[..., Residue]
    exact: Callable[..., Fraction]
    e: int = 2


SUMS: dict[str, SumSpec] = {
    "bm": SumSpec("bm", "p-1", "C(2k,k) m^-k", sum_bm, bm_exact),
    "pbm": SumSpec("pbm", "p-1", "C(p-1,k) C(2k,k) (-m)^-k", sum_pbm, pbm_exact),
    "bbm": SumSpec("bbm", "(p-1)/2", "C(2k,k) m^-k", sum_bbm, bbm_exact),
    "lemma22": SumSpec("lemma22", "(p-1)/2", "C(p-1,k) C(p-1-k,k) d^-k", sum_lemma22, lemma22_exact),
    "hsum": SumSpec("hsum", "(p-1)/2", "p H_k C(2k,k) d^-k", sum_harmonic_check, harmonic_check_exact),
    "1.1a": SumSpec("1.1a", "p-1", "C(p-1,j) C(p-1-j,j)",
                    lambda p, e=2: sum_theorem(p, "1.1a", e), lambda p: theorem_exact(p, "1.1a")),
    "1.1b": SumSpec("1.1b", "p-1", "C(p-1,k) C(2k,k) ((-1)^k - (-3)^-k)",
                    lambda p, e=3: sum_theorem(p, "1.1b", e), lambda p: theorem_exact(p, "1.1b"), 3),
    "1.2": SumSpec("1.2", "p-1", "C(p-1,k) C(2k,k) (-1)^k u_k(4,1)",
                   lambda p, e=3: sum_theorem(p, "1.2", e), lambda p: theorem_exact(p, "1.2"), 3),
    "1.3": SumSpec("1.3", "p-1", "C(p-1,k) C(2k,k) u_k(4,2) (-2)^-k",
                   lambda p, e=3: sum_theorem(p, "1.3", e), lambda p: theorem_exact(p, "1.3"), 3),
}


def exact_residue(spec: SumSpec, p: int, *aux: int, e: int | None = None) -> Residue:
    """The oracle value of ``spec`` reduced mod p^e."""
    return residue_of(spec.exact(p, *aux), p, spec.e if e is None else e)
