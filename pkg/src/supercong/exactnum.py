"""Exact integers and rationals, residue rings mod p^e, and small number-theory helpers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

Rational = Fraction


class NotInvertible(ArithmeticError):
    """Raised when a value divisible by p has to be inverted mod p^e."""

    def __init__(self, value, p: int):
        self.value = value
        self.p = p
        super().__init__(f"{value} is not invertible mod powers of {p} (divisible by {p})")


class ModulusMismatch(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Residue:
    """An element of Z/p^e Z that remembers its (p, e)."""

    value: int
    p: int
    e: int

    def __post_init__(self):
        if not 0 <= self.value < self.p ** self.e:
            raise ValueError(f"value {self.value} out of range for modulus {self.p}^{self.e}")

    @property
    def modulus(self) -> int:
        return self.p ** self.e

    def _coerce(self, other) -> int | None:
        if isinstance(other, Residue):
            if other.p != self.p or other.e != self.e:
                raise ModulusMismatch(
                    f"cannot combine residues mod {self.p}^{self.e} and {other.p}^{other.e}"
                )
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return residue_of(other, self.p, self.e).value
        return None

    def _make(self, v: int) -> Residue:
        return Residue(v % self.modulus, self.p, self.e)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * inverse(self._make(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._make(o) * inverse(self)

    def __pow__(self, n: int):
        if n < 0:
            return inverse(self) ** (-n)
        return self._make(pow(self.value, n, self.modulus))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return (self.value, self.p, self.e) == (other.value, other.p, other.e)
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == residue_of(other, self.p, self.e).value
            except NotInvertible:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p, self.e))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.p}^{self.e})"


@dataclass(frozen=True, slots=True)
class PadicUnit:
    """unit * p**valuation with the unit kept invertible mod p^e.

    Lets products and quotients pass through multiples of p without losing
    information, as long as the net valuation ends up nonnegative.
    """

    unit: int
    valuation: int
    p: int
    e: int

    @classmethod
    def one(cls, p: int, e: int) -> PadicUnit:
        return cls(1, 0, p, e)

    def _split(self, n: int) -> tuple[int, int]:
        if n == 0:
            raise NotInvertible(0, self.p)
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        return n, v

    def mul(self, n: int) -> PadicUnit:
        u, v = self._split(n)
        m = self.p ** self.e
        return PadicUnit(self.unit * u % m, self.valuation + v, self.p, self.e)

    def div(self, n: int) -> PadicUnit:
        u, v = self._split(n)
        m = self.p ** self.e
        return PadicUnit(self.unit * pow(u, -1, m) % m, self.valuation - v, self.p, self.e)

    def to_residue(self) -> Residue:
        if self.valuation < 0:
            raise NotInvertible(f"p^{self.valuation}", self.p)
        m = self.p ** self.e
        if self.valuation >= self.e:
            return Residue(0, self.p, self.e)
        return Residue(self.unit * self.p ** self.valuation % m, self.p, self.e)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; 0 when gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def residue_of(x: int | Fraction, p: int, e: int) -> Residue:
    m = p ** e
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise NotInvertible(x.denominator, p)
        return Residue(x.numerator * pow(x.denominator, -1, m) % m, p, e)
    return Residue(int(x) % m, p, e)


def inverse(r: Residue) -> Residue:
    if r.value % r.p == 0:
        raise NotInvertible(r.value, r.p)
    return Residue(pow(r.value, -1, r.modulus), r.p, r.e)


def binom_exact(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def central_binoms_mod(kmax: int, p: int, e: int):
    """Yield C(2k, k) mod p^e as ints for k = 0..kmax.

    Each step multiplies by (2k+1)(2k+2)/(k+1)^2 = 2(2k+1)/(k+1), tracking
    the p-part separately so the division never hits a multiple of p.
    """
    m = p ** e
    acc = PadicUnit.one(p, e)
    yield 1
    for k in range(kmax):
        acc = acc.mul(2 * (2 * k + 1)).div(k + 1)
        if acc.valuation >= e:
            yield 0
        else:
            yield acc.unit * p ** acc.valuation % m


def central_binom_mod(k: int, p: int, e: int) -> Residue:
    if not 0 <= k <= p - 1:
        raise ValueError(f"central_binom_mod needs 0 <= k <= p-1, got k={k}, p={p}")
    for value in central_binoms_mod(k, p, e):
        pass
    return Residue(value, p, e)


def harmonic(n: int) -> Fraction:
    h = Fraction(0)
    for k in range(1, n + 1):
        h += Fraction(1, k)
    return h


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] by a plain sieve of Eratosthenes."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(hi ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
