"""Exact arithmetic in Q[x, y]/(x^2 - Delta, y^2 - d).

x plays the role of sqrt(Delta) and y of sqrt(d).  The algebra is formal: when
Delta or d is a square it has zero divisors, and equality is coefficient-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import binom_exact
from .sequences import ArithmeticFault, LucasParams, lucas_u, lucas_v


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class Tower:
    """Context for elements c00 + c10*x + c01*y + c11*x*y."""

    Delta: int
    d: Fraction

    def __post_init__(self):
        if self.Delta == 0:
            raise InvalidParameter("Delta = 0: the two roots coincide")
        object.__setattr__(self, "d", Fraction(self.d))

    def elem(self, c00=0, c10=0, c01=0, c11=0) -> TowerElem:
        return TowerElem(self, Fraction(c00), Fraction(c10), Fraction(c01), Fraction(c11))

    @property
    def one(self) -> TowerElem:
        return self.elem(1)

    @property
    def sqrt_delta(self) -> TowerElem:
        return self.elem(0, 1)

    @property
    def sqrt_d(self) -> TowerElem:
        return self.elem(0, 0, 1)

    def roots(self, A: int) -> tuple[TowerElem, TowerElem]:
        """alpha = (A + sqrt(Delta))/2 and beta = (A - sqrt(Delta))/2."""
        half = Fraction(1, 2)
        return self.elem(A * half, half), self.elem(A * half, -half)


def tower_make(Delta: int, d) -> Tower:
    return Tower(Delta, Fraction(d))


@dataclass(frozen=True)
class TowerElem:
    ctx: Tower
    c00: Fraction
    c10: Fraction
    c01: Fraction
    c11: Fraction

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c00, self.c10, self.c01, self.c11)

    def _lift(self, other) -> TowerElem:
        if isinstance(other, TowerElem):
            if other.ctx != self.ctx:
                raise ValueError(f"tower contexts differ: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return TowerElem(self.ctx, *(a + b for a, b in zip(self.coeffs(), o.coeffs())))

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(self.ctx, -self.c00, -self.c10, -self.c01, -self.c11)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TowerElem(self.ctx, *(c * other for c in self.coeffs()))
        o = self._lift(other)
        if o is NotImplemented:
            return o
        D, d = self.ctx.Delta, self.ctx.d
        a0, a1, a2, a3 = self.coeffs()
        b0, b1, b2, b3 = o.coeffs()
        if not (a2 or a3 or b2 or b3):
            zero = Fraction(0)
            return TowerElem(self.ctx, a0 * b0 + D * a1 * b1, a0 * b1 + a1 * b0, zero, zero)
        # x^2 = D, y^2 = d, (xy)^2 = D d
        return TowerElem(
            self.ctx,
            a0 * b0 + D * a1 * b1 + d * a2 * b2 + D * d * a3 * b3,
            a0 * b1 + a1 * b0 + d * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + D * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def conjugate(self) -> TowerElem:
        """sqrt(Delta) -> -sqrt(Delta)."""
        return TowerElem(self.ctx, self.c00, -self.c10, self.c01, -self.c11)

    def is_rational(self) -> bool:
        return self.c10 == 0 and self.c01 == 0 and self.c11 == 0

    def substitute_sqrt_d(self, root: TowerElem) -> TowerElem:
        """Replace y by ``root``, which must square to d and be free of y."""
        if root.c01 or root.c11:
            raise ValueError("replacement for sqrt(d) must not involve sqrt(d)")
        if root * root != self.ctx.elem(self.ctx.d):
            raise ValueError("replacement does not square to d")
        x = self.ctx.sqrt_delta
        return self.ctx.elem(self.c00, self.c10) + (self.ctx.elem(self.c01) + x * self.c11) * root


def tower_pow(x: TowerElem, n: int) -> TowerElem:
    if n < 0:
        raise ValueError("tower_pow needs n >= 0")
    result = x.ctx.one
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def _check_lemma_params(A: int, B, m: int, require_positive_A: bool):
    if m == 0:
        raise InvalidParameter("m must be nonzero")
    if A == 0 or (require_positive_A and A <= 0):
        raise InvalidParameter(f"A must be {'positive' if require_positive_A else 'nonzero'}, got {A}")
    if m * A + 4 * B != 0:
        raise InvalidParameter(f"need mA + 4B = 0, got A={A}, B={B}, m={m}")
    if A * A - 4 * B == 0:
        raise InvalidParameter("Delta = A^2 - 4B must be nonzero")


def _extraction_sides(tower: Tower, root: TowerElem, B, m: int, n: int):
    """Both sides of m^n sum C(n,k)C(2k,k) r^k/m^k = r^n sum C(n,k)C(n-k,k)(2+m/r)^(n-2k)."""
    lhs = tower.elem(0)
    rk = tower.one
    for k in range(n + 1):
        lhs = lhs + rk * (binom_exact(n, k) * binom_exact(2 * k, k) * Fraction(m) ** (n - k))
        rk = rk * root
    # alpha * beta = B, so 1/alpha = beta/B and vice versa
    w = root.conjugate() / B * m + 2
    w_pows = [tower.one]
    for _ in range(n):
        w_pows.append(w_pows[-1] * w)
    rhs = tower.elem(0)
    for k in range(n // 2 + 1):
        rhs = rhs + w_pows[n - 2 * k] * (binom_exact(n, k) * binom_exact(n - k, k))
    rhs = tower_pow(root, n) * rhs
    return lhs, rhs


def coefficient_extraction_check(A: int, B, m: int, n: int) -> bool:
    """Coefficient extraction identity for alpha and for beta, exactly in the tower."""
    _check_lemma_params(A, B, m, require_positive_A=False)
    tower = tower_make(A * A - 4 * B, 4 + Fraction(4 * m, A))
    for root in tower.roots(A):
        lhs, rhs = _extraction_sides(tower, root, B, m, n)
        if lhs != rhs:
            return False
    return True


def lemma21_sides(A: int, B, m: int, n: int, which: str) -> tuple[Fraction, Fraction]:
    """Return (lhs, rhs) of the closed form for sum C(n,k)C(2k,k) w_k(A,B)/m^k.

    The right side is built in the tower with d^(n/2) = sqrt(d)^n and the
    division by alpha - beta = sqrt(Delta) done as multiplication by
    sqrt(Delta)/Delta.  The branch sqrt(d) = 2 + m/alpha is then substituted.
    """
    if which not in ("u", "v"):
        raise InvalidParameter(f"which must be 'u' or 'v', got {which!r}")
    _check_lemma_params(A, B, m, require_positive_A=True)
    if B != int(B):
        raise InvalidParameter(f"B must be an integer, got {B}")
    B = int(B)
    d = 4 + Fraction(4 * m, A)
    if d == 0:
        raise InvalidParameter("d = 4 + 4m/A must be nonzero")
    params = LucasParams(A, B)
    seq = lucas_u if which == "u" else lucas_v

    lhs = sum(
        (Fraction(binom_exact(n, k) * binom_exact(2 * k, k) * seq(params, k), m ** k) for k in range(n + 1)),
        Fraction(0),
    )

    tower = tower_make(params.Delta, d)
    alpha, beta = tower.roots(A)
    s = sum(
        (Fraction(binom_exact(n, k) * binom_exact(n - k, k)) / d ** k for k in range(n // 2 + 1)),
        Fraction(0),
    )
    sign = -1 if n % 2 else 1
    a_n, b_n = tower_pow(alpha, n), tower_pow(beta, n) * sign
    core = a_n - b_n if which == "u" else a_n + b_n
    if which == "u":
        core = core * tower.sqrt_delta * Fraction(1, params.Delta)
    rhs = tower_pow(tower.sqrt_d, n) * core * (s / Fraction(m) ** n)

    if n % 2 == 0 and not rhs.is_rational():
        raise ArithmeticFault(f"even-n right side did not collapse to a rational: {rhs}")
    branch = alpha.conjugate() / B * m + 2
    rhs = rhs.substitute_sqrt_d(branch)
    if not rhs.is_rational():
        raise ArithmeticFault(f"right side did not collapse to a rational: {rhs}")
    return lhs, rhs.c00


def lemma21_check(A: int, B, m: int, n: int, which: str) -> bool:
    lhs, rhs = lemma21_sides(A, B, m, n, which)
    return lhs == rhs
