"""Lucas sequences, central trinomial coefficients and the per-theorem weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import Residue, binom_exact


class ArithmeticFault(RuntimeError):
    """Two evaluation routes that must agree did not."""


@dataclass(frozen=True)
class LucasParams:
    A: int
    B: int

    @property
    def Delta(self) -> int:
        return self.A * self.A - 4 * self.B


def lucas_u(params: LucasParams, n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, params.A * b - params.B * a
    return a


def lucas_v(params: LucasParams, n: int) -> int:
    a, b = 2, params.A
    for _ in range(n):
        a, b = b, params.A * b - params.B * a
    return a


def lucas_pair_mod(A: int, B: int, n: int, m: int) -> tuple[int, int]:
    """(u_n, v_n) mod m by fast doubling; m must be odd."""
    A %= m
    B %= m
    delta = (A * A - 4 * B) % m
    half = pow(2, -1, m)
    u, v, q = 0, 2 % m, 1  # u_k, v_k, B^k with k = 0
    for bit in bin(n)[2:]:
        u, v, q = u * v % m, (v * v - 2 * q) % m, q * q % m
        if bit == "1":
            u, v = (A * u + v) * half % m, (delta * u + A * v) * half % m
            q = q * B % m
    return u, v


def lucas_pair_fast(params: LucasParams, n: int, p: int, e: int) -> tuple[Residue, Residue]:
    u, v = lucas_pair_mod(params.A, params.B, n, p ** e)
    return Residue(u, p, e), Residue(v, p, e)


def lucas_u_binomial(params: LucasParams, n: int) -> int:
    """u_{n+1} as sum_{k <= n/2} C(n-k, k) A^(n-2k) (-B)^k."""
    return sum(
        binom_exact(n - k, k) * params.A ** (n - 2 * k) * (-params.B) ** k
        for k in range(n // 2 + 1)
    )


def trinomial_sum(n: int) -> int:
    """T_n from the double-binomial sum, the reference route.

    Consecutive terms C(n,j) C(n-j,j) = n!/(j! j! (n-2j)!) are related by the
    exact ratio (n-2j)(n-2j-1)/(j+1)^2.
    """
    term, total = 1, 1
    for j in range(n // 2):
        term = term * (n - 2 * j) * (n - 2 * j - 1) // ((j + 1) * (j + 1))
        total += term
    return total


@dataclass
class TrinomialCache:
    """Central trinomial coefficients built by the three-term recurrence.

    Entries up to ``check_upto`` are cross-checked against the double sum as
    they are produced.
    """

    check_upto: int = 200
    values: list[int] = field(default_factory=lambda: [1, 1])

    def extend(self, n: int) -> None:
        vals = self.values
        for i in range(len(vals), n + 1):
            t, r = divmod((2 * i - 1) * vals[i - 1] + 3 * (i - 1) * vals[i - 2], i)
            if r:
                raise ArithmeticFault(f"trinomial recurrence left remainder {r} at n={i}")
            if i <= self.check_upto and t != trinomial_sum(i):
                raise ArithmeticFault(f"trinomial recurrence disagrees with double sum at n={i}")
            vals.append(t)


def trinomial(cache: TrinomialCache, n: int) -> int:
    cache.extend(n)
    return cache.values[n]


def legendre3(k: int) -> int:
    """(k/3) extended by 0 on multiples of 3."""
    return (0, 1, -1)[k % 3]


_PARAMS = {
    "u22": (LucasParams(2, 2), lucas_u),
    "v22": (LucasParams(2, 2), lucas_v),
    "u33": (LucasParams(3, 3), lucas_u),
    "u41": (LucasParams(4, 1), lucas_u),
    "u42": (LucasParams(4, 2), lucas_u),
}
WEIGHT_KINDS = ("thm11", "legendre3", "bracket3", "u22", "v22", "u33", "u41", "u42")


def weight(kind: str, k: int) -> int | Fraction:
    if kind == "thm11":
        return (-1) ** k - Fraction(1, (-3) ** k)
    if kind == "legendre3":
        return legendre3(k)
    if kind == "bracket3":
        return 3 * (k % 3 == 0) - 1
    if kind in _PARAMS:
        params, seq = _PARAMS[kind]
        return seq(params, k)
    raise ValueError(f"unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}")


def _lucas_terms(params: LucasParams, first: int, n: int) -> list[int]:
    out = []
    a, b = first, params.A if first == 2 else 1
    for _ in range(n + 1):
        out.append(a)
        a, b = b, params.A * b - params.B * a
    return out


def weights(kind: str, n: int) -> list[int | Fraction]:
    """weight(kind, k) for k = 0..n, with Lucas terms generated in one pass."""
    if kind in _PARAMS:
        params, seq = _PARAMS[kind]
        return _lucas_terms(params, 2 if seq is lucas_v else 0, n)
    return [weight(kind, k) for k in range(n + 1)]
