"""Claim checkers and prime/index sweeps.

Every claim is a function of keyword parameters returning a CheckReport.  A
parameter outside a claim's hypotheses yields ``not-applicable``; only a real
disagreement between the two sides yields ``fail``.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .exactnum import Residue, is_prime, jacobi, primes_between, residue_of
from .quadtower import lemma21_sides
from .sequences import LucasParams, TrinomialCache, lucas_pair_fast
from .summation import (
    identity_sum,
    sum_bbm,
    sum_bm,
    sum_harmonic_check,
    sum_lemma22,
    sum_pbm,
    sum_theorem,
)

log = logging.getLogger(__name__)

PASS, FAIL, NA = "pass", "fail", "not-applicable"

PRIME_CLAIMS = ("thm1.1a", "thm1.1b", "thm1.2", "thm1.3", "cor2.3d1", "cor2.3d2", "cor2.3d3")
M_CLAIMS = ("eq1.1", "eq1.2", "eq1.3")
D_CLAIMS = ("lem2.2", "updd", "hsum")
IDENTITY_CLAIMS = ("thm1.4a", "thm1.4b", "thm1.5a", "thm1.5b", "thm1.6")
LEMMA21_CLAIMS = ("lem2.1u", "lem2.1v")
CLAIM_IDS = (
    "thm1.1a", "thm1.1b", "thm1.2", "thm1.3",
    "thm1.4a", "thm1.4b", "thm1.5a", "thm1.5b", "thm1.6",
    "lem2.1u", "lem2.1v", "lem2.2",
    "cor2.3d1", "cor2.3d2", "cor2.3d3",
    "eq1.1", "eq1.2", "eq1.3",
    "updd", "hsum",
)
SELFTEST = "selftest-fail"
_ORDER = {c: i for i, c in enumerate(CLAIM_IDS + (SELFTEST,))}

# identity claim -> (sum id, modulus, residue n must have)
_IDENTITY_CONDITIONS = {
    "thm1.4a": ("1.4a", 6, 0),
    "thm1.4b": ("1.4b", 6, 3),
    "thm1.5a": ("1.5a", 4, 0),
    "thm1.5b": ("1.5b", 4, 2),
    "thm1.6": ("1.6", 3, 0),
}
LEMMA21_NMAX = 40


@dataclass(frozen=True)
class CheckReport:
    claim: str
    parameter: tuple[tuple[str, int], ...]
    status: str
    lhs: str = ""
    rhs: str = ""
    reason: str = ""
    elapsed: float = field(default=0.0, compare=False)

    @property
    def parameter_str(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.parameter)

    def sort_key(self):
        return (_ORDER.get(self.claim, len(_ORDER)), tuple(v for _, v in self.parameter))

    def to_record(self) -> dict:
        return {
            "claim": self.claim,
            "parameter": self.parameter_str,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


def _render(x) -> str:
    if isinstance(x, Residue):
        return str(x.value)
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _compare(lhs, rhs) -> tuple[str, str, str]:
    return (PASS if lhs == rhs else FAIL), _render(lhs), _render(rhs)


def _u_mod(A: int, B: int, n: int, p: int, e: int) -> Residue:
    return lucas_pair_fast(LucasParams(A, B), n, p, e)[0]


def _pow(base: int, n: int, p: int, e: int) -> Residue:
    return residue_of(base, p, e) ** n


class NotApplicable(Exception):
    """Raised inside a checker when the parameter is outside the claim's hypotheses."""


_trinomials = TrinomialCache()


def _thm11a(p):
    lhs = sum_theorem(p, "1.1a", cache=_trinomials)
    return lhs, jacobi(p, 3) * _pow(3, p - 1, p, 2)


def _thm11b(p):
    return sum_theorem(p, "1.1b"), jacobi(p, 3) * (_pow(3, p - 1, p, 3) - 1)


def _thm12_13(p, which, A, B, modulus):
    lhs = sum_theorem(p, which)
    rhs = (-1) ** ((p - 1) // 2) * _u_mod(A, B, p - 1, p, 3)
    if p % modulus not in (1, modulus - 1):
        mod_p2 = lhs.value % (p * p) == rhs.value % (p * p)
        log.debug("thm%s off-condition p=%d: congruence mod p^2 %s", which, p, "holds" if mod_p2 else "fails")
        raise NotApplicable(
            f"p = {p % modulus} (mod {modulus}), not +-1; mod p^2 {'holds' if mod_p2 else 'fails'}",
            lhs, rhs,
        )
    return lhs, rhs


def _cor(p, d):
    lhs = sum_lemma22(p, d)
    if d == 1:
        rhs = jacobi(p, 3) * _pow(3, p - 1, p, 2)
    elif d == 2:
        rhs = jacobi(-1, p) * (_pow(2, p - 1, p, 2) + 1) * Fraction(1, 2)
    else:
        rhs = jacobi(p, 3) * (3 - _pow(3, p - 1, p, 2)) * Fraction(1, 2)
    return lhs, rhs


def _discriminant_symbol(delta: int, p: int, what: str) -> int:
    s = jacobi(delta, p)
    if s == 0:
        raise NotApplicable(f"p | {what} = {delta}")
    return s


def _require_unit(x: int, p: int, name: str) -> None:
    if x % p == 0:
        raise NotApplicable(f"p | {name} = {x}")


def _eq11(p, m):
    _require_unit(m, p, "m")
    s = _discriminant_symbol(m * m - 4 * m, p, "m^2-4m")
    return sum_bm(p, m), s + _u_mod(m - 2, 1, p - s, p, 2)


def _eq12(p, m):
    _require_unit(m, p, "m")
    s = _discriminant_symbol(m * m - 4 * m, p, "m^2-4m")
    rhs = s * _pow(m - 4, p - 1, p, 2) + (1 - Fraction(m, 2)) * _u_mod(m - 2, 1, p - s, p, 2)
    return sum_pbm(p, m), rhs


def _eq13(p, m):
    _require_unit(m, p, "m")
    s = _discriminant_symbol(m * m - 4 * m, p, "m^2-4m")
    t = jacobi(4 - m, p)
    # t = 0 would need m = 4 (mod p), already excluded with p | Delta
    mbar = 2 if t == 1 else Fraction(2, 1) / residue_of(m, p, 2)
    rhs = s + jacobi(-m, p) * (mbar * _u_mod(4, m, p - t, p, 2))
    return sum_bbm(p, m), rhs


def _lem22(p, d):
    _require_unit(d, p, "d")
    s = _discriminant_symbol(d * (d - 4), p, "d(d-4)")
    dp = _pow(d, p - 1, p, 2)
    rhs = s * ((1 - dp) * Fraction(1, 2) + _pow(d - 4, p - 1, p, 2)) - Fraction(d, 4) * _u_mod(d - 2, 1, p - s, p, 2)
    return sum_lemma22(p, d), rhs


def _updd(p, d):
    _require_unit(d, p, "d")
    s = _discriminant_symbol(d * (d - 4), p, "d(d-4)")
    lhs = _u_mod(d, d, p, p, 2)
    rhs = s * (_pow(d, p - 1, p, 2) + 1) * Fraction(1, 2) + Fraction(d, 4) * _u_mod(d - 2, 1, p - s, p, 2)
    return lhs, rhs


def _hsum(p, d):
    _require_unit(d, p, "d")
    s = _discriminant_symbol(d * (d - 4), p, "d(d-4)")
    rhs = s * (1 - _pow(d - 4, p - 1, p, 2)) + Fraction(d, 2) * _u_mod(d - 2, 1, p - s, p, 2)
    return sum_harmonic_check(p, d), rhs


def _identity(claim, n):
    which, mod, res = _IDENTITY_CONDITIONS[claim]
    if n % mod != res:
        raise NotApplicable(f"n = {n % mod} (mod {mod}), need {res}")
    return identity_sum(n, which), Fraction(0)


def _lemma21(claim, A, m, n):
    if A <= 0:
        raise NotApplicable("A must be positive")
    if m == 0:
        raise NotApplicable("m = 0")
    if (m * A) % 4:
        raise NotApplicable("4 does not divide mA, so B = -mA/4 is not an integer")
    if A + m == 0:
        raise NotApplicable("Delta = A(A+m) = 0 and d = 0")
    return lemma21_sides(A, -m * A // 4, m, n, claim[-1])


_CHECKERS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "thm1.1a": (("p",), _thm11a),
    "thm1.1b": (("p",), _thm11b),
    "thm1.2": (("p",), lambda p: _thm12_13(p, "1.2", 4, 1, 12)),
    "thm1.3": (("p",), lambda p: _thm12_13(p, "1.3", 4, 2, 8)),
    "cor2.3d1": (("p",), lambda p: _cor(p, 1)),
    "cor2.3d2": (("p",), lambda p: _cor(p, 2)),
    "cor2.3d3": (("p",), lambda p: _cor(p, 3)),
    "eq1.1": (("p", "m"), _eq11),
    "eq1.2": (("p", "m"), _eq12),
    "eq1.3": (("p", "m"), _eq13),
    "lem2.2": (("p", "d"), _lem22),
    "updd": (("p", "d"), _updd),
    "hsum": (("p", "d"), _hsum),
    SELFTEST: (("p",), lambda p: (Fraction(0), Fraction(1))),
}
for _c in IDENTITY_CLAIMS:
    _CHECKERS[_c] = (("n",), lambda n, _c=_c: _identity(_c, n))
for _c in LEMMA21_CLAIMS:
    _CHECKERS[_c] = (("A", "m", "n"), lambda A, m, n, _c=_c: _lemma21(_c, A, m, n))


def check(claim: str, **params: int) -> CheckReport:
    """Evaluate one claim at one parameter point."""
    try:
        names, fn = _CHECKERS[claim]
    except KeyError:
        raise ValueError(f"unknown claim {claim!r}") from None
    if set(params) != set(names):
        raise ValueError(f"{claim} takes parameters {names}, got {tuple(params)}")
    if "p" in params and claim != SELFTEST and (params["p"] <= 3 or not is_prime(params["p"])):
        raise ValueError(f"{claim} needs a prime p > 3, got {params['p']}")
    parameter = tuple((k, int(params[k])) for k in names)
    start = time.perf_counter()
    try:
        lhs, rhs = fn(**params)
    except NotApplicable as exc:
        reason, *witness = exc.args
        lhs_s, rhs_s = (_render(w) for w in witness) if witness else ("", "")
        return CheckReport(claim, parameter, NA, lhs_s, rhs_s, reason, time.perf_counter() - start)
    status, lhs_s, rhs_s = _compare(lhs, rhs)
    return CheckReport(claim, parameter, status, lhs_s, rhs_s, "", time.perf_counter() - start)


FIXED_M = (-3, -2, -1, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12)
FIXED_D = (1, 2, 3)
RANDOM_RANGE = 10 ** 6


@dataclass(frozen=True)
class AuxSampler:
    """Supplies m and d values per prime: a fixed set plus seeded random draws.

    Random draws depend only on (seed, p), never on evaluation order.
    """

    seed: int = 0
    n_random: int = 8

    def _draw(self, p: int, salt: int, ok: Callable[[int], bool], exclude: list[int]) -> list[int]:
        rng = random.Random((self.seed * 1_000_003 + p) * 4 + salt)
        out: list[int] = []
        while len(out) < self.n_random:
            x = rng.randint(-RANDOM_RANGE, RANDOM_RANGE)
            if x and ok(x) and x not in out and x not in exclude:
                out.append(x)
        return out

    def m_values(self, p: int) -> list[int]:
        ok = lambda m: m % p != 0 and (m * m - 4 * m) % p != 0
        fixed = [m for m in FIXED_M if ok(m)]
        return fixed + self._draw(p, 1, ok, fixed)

    def d_values(self, p: int) -> list[int]:
        ok = lambda d: d % p != 0 and (d * (d - 4)) % p != 0
        fixed = [d for d in FIXED_D if ok(d)]
        return fixed + self._draw(p, 2, ok, fixed)


def lemma21_grid(n_max: int = LEMMA21_NMAX) -> list[tuple[int, int, int]]:
    """(A, m, n) with 1 <= A <= 12, -12 <= m <= 12, m != 0, 4 | mA, A + m != 0."""
    return [
        (A, m, n)
        for A in range(1, 13)
        for m in range(-12, 13)
        if m != 0 and (m * A) % 4 == 0 and A + m != 0
        for n in range(n_max + 1)
    ]


def tasks_for(
    claims: Iterable[str],
    p_range: tuple[int, int] = (5, 100),
    n_max: int = 600,
    sampler: AuxSampler | None = None,
) -> list[tuple[str, dict]]:
    sampler = sampler or AuxSampler()
    primes = primes_between(max(p_range[0], 5), p_range[1])
    tasks: list[tuple[str, dict]] = []
    for claim in claims:
        if claim in PRIME_CLAIMS or claim == SELFTEST:
            tasks += [(claim, {"p": p}) for p in primes]
        elif claim in M_CLAIMS:
            tasks += [(claim, {"p": p, "m": m}) for p in primes for m in sampler.m_values(p)]
        elif claim in D_CLAIMS:
            tasks += [(claim, {"p": p, "d": d}) for p in primes for d in sampler.d_values(p)]
        elif claim in IDENTITY_CLAIMS:
            tasks += [(claim, {"n": n}) for n in range(n_max + 1)]
        elif claim in LEMMA21_CLAIMS:
            grid = lemma21_grid(min(n_max, LEMMA21_NMAX))
            tasks += [(claim, {"A": A, "m": m, "n": n}) for A, m, n in grid]
        else:
            raise ValueError(f"unknown claim {claim!r}")
    return tasks


def _run(task: tuple[str, dict]) -> CheckReport:
    claim, params = task
    return check(claim, **params)


def sweep(
    claims: Iterable[str],
    p_range: tuple[int, int] = (5, 100),
    n_max: int = 600,
    sampler: AuxSampler | None = None,
    workers: int = 1,
) -> list[CheckReport]:
    """Check every (claim, parameter) pair; the result is sorted by (claim, parameter)."""
    tasks = tasks_for(claims, p_range, n_max, sampler)
    if workers <= 1 or len(tasks) < 2:
        reports = [_run(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 16))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run, tasks, chunksize=chunk))
    return sorted(reports, key=CheckReport.sort_key)


def summarize(reports: Iterable[CheckReport]) -> dict[str, dict[str, int]]:
    counts: dict[str, dict[str, int]] = {}
    for r in reports:
        c = counts.setdefault(r.claim, {PASS: 0, FAIL: 0, NA: 0})
        c[r.status] += 1
    return counts
