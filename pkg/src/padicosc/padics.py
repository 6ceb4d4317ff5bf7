"""Capped-precision exact arithmetic in Q_p.

A nonzero value is stored as unit * p**valuation with the unit known
modulo p**precision, so the value itself is determined modulo
p**(valuation + precision) and the absolute value |x|_p = p**(-valuation)
is exact.  Zero is a distinguished marker: known_to=None means the exact
zero, otherwise the value is only known to vanish modulo p**known_to, and
operations that must distinguish it from a small nonzero number raise
PrecisionExhaustedError instead of guessing.

Also provided: Hensel digit expansions, the Teichmuller character and the
angle projection x/omega(x), and powers of principal units via the
binomial series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError, PadicError, PrecisionExhaustedError

DEFAULT_PRECISION = 32

ExactScalar = Union[int, Fraction]


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def vp_factorial(n: int, p: int) -> int:
    """v_p(n!) = (n - digit_sum_p(n)) / (p - 1), exactly."""
    return (n - digit_sum(n, p)) // (p - 1)


def prime_factors(n: int) -> list:
    """Distinct prime divisors of n >= 1, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    """Trial division; all primes used here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class HenselDigits:
    """Little-endian base-p digits; empty tuple represents 0."""

    prime: int
    digits: tuple

    def to_int(self) -> int:
        n = 0
        for d in reversed(self.digits):
            n = n * self.prime + d
        return n


def hensel_digits(n: int, p: int) -> HenselDigits:
    if n < 0:
        raise DomainError("hensel_digits needs n >= 0")
    ds = []
    while n:
        ds.append(n % p)
        n //= p
    return HenselDigits(prime=p, digits=tuple(ds))


def n_minus(n: int, p: int) -> int:
    """Strip the leading (highest-index) base-p digit of n >= 1."""
    if n < 1:
        raise DomainError("n_minus needs n >= 1")
    ds = hensel_digits(n, p).digits
    s = len(ds) - 1
    return n - ds[s] * p**s


@dataclass(frozen=True)
class PadicNumber:
    """Element of Q_p known to finite precision.

    Nonzero: unit in [1, p**precision) coprime to p, value known modulo
    p**(valuation + precision).  Zero marker: unit = 0, precision = 0,
    valuation = 0; known_to is the exponent up to which the value is
    known to vanish (None for the exact zero).
    """

    prime: int
    valuation: int
    unit: int
    precision: int
    known_to: Optional[int] = None

    # -- construction ------------------------------------------------

    @classmethod
    def zero(cls, p: int, known_to: Optional[int] = None) -> "PadicNumber":
        return cls(prime=p, valuation=0, unit=0, precision=0, known_to=known_to)

    @classmethod
    def one(cls, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(prime=p, valuation=0, unit=1, precision=precision)

    @classmethod
    def _make(cls, p: int, valuation: int, unit: int, precision: int) -> "PadicNumber":
        """Canonicalize unit*p**valuation with unit known mod p**precision."""
        if precision <= 0:
            return cls.zero(p, known_to=valuation + precision)
        u = unit % p**precision
        if u == 0:
            return cls.zero(p, known_to=valuation + precision)
        shift = vp(u, p)
        if shift:
            # digits below the first nonzero one move into the valuation
            # and the relative precision shrinks accordingly
            u //= p**shift
            valuation += shift
            precision -= shift
            u %= p**precision
        return cls(prime=p, valuation=valuation, unit=u, precision=precision)

    @classmethod
    def from_int(cls, n: int, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        if n == 0:
            return cls.zero(p)
        v = vp(n, p)
        return cls._make(p, v, n // p**v, precision)

    @classmethod
    def from_rational(cls, num: int, den: int, p: int,
                      precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        if den == 0:
            raise DomainError("zero denominator")
        if num == 0:
            return cls.zero(p)
        vn, vd = vp(num, p), vp(den, p)
        nu = num // p**vn
        du = den // p**vd
        m = p**precision
        u = nu * pow(du, -1, m) % m
        return cls._make(p, vn - vd, u, precision)

    @classmethod
    def from_fraction(cls, q: Fraction, p: int,
                      precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls.from_rational(q.numerator, q.denominator, p, precision)

    # -- inspection --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.known_to is None

    @property
    def is_unit(self) -> bool:
        return self.unit != 0 and self.valuation == 0

    @property
    def abs_precision(self) -> Optional[int]:
        """Exponent N such that the value is known modulo p**N (None = exact)."""
        if self.is_zero:
            return self.known_to
        return self.valuation + self.precision

    def norm(self) -> Fraction:
        """|x|_p as an exact rational.  Ambiguous for inexact zeros."""
        if self.is_exact_zero:
            return Fraction(0)
        if self.is_zero:
            raise PrecisionExhaustedError(
                "norm of a value only known to vanish mod %d**%d"
                % (self.prime, self.known_to))
        v = self.valuation
        return Fraction(1, self.prime**v) if v >= 0 else Fraction(self.prime ** (-v))

    def norm_bound_exponent(self) -> Optional[int]:
        """e with |x|_p <= p**(-e); None means |x|_p = 0."""
        if self.is_exact_zero:
            return None
        if self.is_zero:
            return self.known_to
        return self.valuation

    def digits(self) -> tuple:
        """Little-endian digits of the unit part, one per known digit."""
        if self.is_zero:
            return ()
        ds = hensel_digits(self.unit, self.prime).digits
        return ds + (0,) * (self.precision - len(ds))

    def residue(self, n: int) -> int:
        """Integer representative of the value modulo p**n (requires v >= 0)."""
        if n < 0:
            raise DomainError("negative modulus exponent")
        if self.is_zero:
            if self.known_to is None or self.known_to >= n:
                return 0
            raise PrecisionExhaustedError(
                "residue mod %d**%d requested, zero only known mod %d**%d"
                % (self.prime, n, self.prime, self.known_to))
        if self.valuation < 0:
            raise DomainError("not a p-adic integer")
        if self.abs_precision < n:
            raise PrecisionExhaustedError(
                "residue mod %d**%d requested, value known mod %d**%d"
                % (self.prime, n, self.prime, self.abs_precision))
        if self.valuation >= n:
            return 0
        return self.unit % self.prime ** (n - self.valuation) * self.prime**self.valuation

    def to_fraction(self) -> Fraction:
        """The representative unit * p**valuation as an exact rational."""
        if self.is_zero:
            return Fraction(0)
        v = self.valuation
        if v >= 0:
            return Fraction(self.unit * self.prime**v)
        return Fraction(self.unit, self.prime ** (-v))

    def truncated_to(self, absprec: int) -> "PadicNumber":
        """Forget digits beyond p**absprec."""
        if self.is_zero:
            if self.known_to is None:
                return PadicNumber.zero(self.prime, known_to=absprec)
            return PadicNumber.zero(self.prime, known_to=min(self.known_to, absprec))
        if absprec >= self.abs_precision:
            return self
        return PadicNumber._make(self.prime, self.valuation, self.unit,
                                 absprec - self.valuation)

    def agrees_with(self, other: "PadicNumber") -> bool:
        """True when the two values coincide at their joint precision."""
        return (self - other).is_zero

    def __repr__(self) -> str:
        if self.is_exact_zero:
            return f"<{self.prime}-adic 0>"
        if self.is_zero:
            return f"<{self.prime}-adic O({self.prime}^{self.known_to})>"
        return (f"<{self.prime}-adic {self.unit}*{self.prime}^{self.valuation}"
                f" + O({self.prime}^{self.abs_precision})>")

    # -- arithmetic --------------------------------------------------

    def _check_same_field(self, other: "PadicNumber") -> None:
        if self.prime != other.prime:
            raise DomainError("prime mismatch: %d vs %d" % (self.prime, other.prime))

    def __neg__(self) -> "PadicNumber":
        if self.is_zero:
            return self
        m = self.prime**self.precision
        return PadicNumber(self.prime, self.valuation, (-self.unit) % m, self.precision)

    def __add__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            return self._add_exact(Fraction(other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._check_same_field(other)
        p = self.prime
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        n = min(self.abs_precision, other.abs_precision)
        if self.is_zero:
            return other.truncated_to(n)
        if other.is_zero:
            return self.truncated_to(n)
        vmin = min(self.valuation, other.valuation)
        m = n - vmin
        if m <= 0:
            return PadicNumber.zero(p, known_to=n)
        mod = p**m
        total = (self.unit * p ** (self.valuation - vmin)
                 + other.unit * p ** (other.valuation - vmin)) % mod
        return PadicNumber._make(p, vmin, total, m)

    def __radd__(self, other) -> "PadicNumber":
        return self.__add__(other)

    def __sub__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            return self._add_exact(Fraction(-other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other) -> "PadicNumber":
        return (-self).__add__(other)

    def _add_exact(self, q: Fraction) -> "PadicNumber":
        """Add an exact rational; absolute precision is preserved."""
        if q == 0:
            return self
        p = self.prime
        if self.is_exact_zero:
            raise PadicError("exact zero + exact rational has unbounded precision; "
                             "embed the rational with from_rational first")
        n = self.abs_precision
        vq = vp(q.numerator, p) - vp(q.denominator, p)
        other = PadicNumber.from_fraction(q, p, max(n - vq, 1))
        return self + other

    def __mul__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            return self._mul_exact(Fraction(other))
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._check_same_field(other)
        p = self.prime
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNumber.zero(p)
        if self.is_zero or other.is_zero:
            ka = self.known_to if self.is_zero else self.valuation
            kb = other.known_to if other.is_zero else other.valuation
            return PadicNumber.zero(p, known_to=ka + kb)
        m = min(self.precision, other.precision)
        mod = p**m
        return PadicNumber._make(p, self.valuation + other.valuation,
                                 self.unit * other.unit % mod, m)

    def __rmul__(self, other) -> "PadicNumber":
        return self.__mul__(other)

    def _mul_exact(self, q: Fraction) -> "PadicNumber":
        """Multiply by an exact rational; relative precision is preserved."""
        p = self.prime
        if q == 0:
            return PadicNumber.zero(p)
        vq = vp(q.numerator, p) - vp(q.denominator, p)
        if self.is_zero:
            if self.known_to is None:
                return self
            return PadicNumber.zero(p, known_to=self.known_to + vq)
        m = self.precision
        mod = p**m
        nu = q.numerator // p ** vp(q.numerator, p)
        du = q.denominator // p ** vp(q.denominator, p)
        u = self.unit * nu * pow(du, -1, mod) % mod
        return PadicNumber._make(p, self.valuation + vq, u, m)

    def __truediv__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self._mul_exact(1 / q)
        if not isinstance(other, PadicNumber):
            return NotImplemented
        self._check_same_field(other)
        p = self.prime
        if other.is_exact_zero:
            raise ZeroDivisionError("division by exact zero")
        if other.is_zero:
            raise PrecisionExhaustedError(
                "division by a value indistinguishable from 0 (known mod %d**%d)"
                % (p, other.known_to))
        if self.is_exact_zero:
            return self
        if self.is_zero:
            return PadicNumber.zero(p, known_to=self.known_to - other.valuation)
        m = min(self.precision, other.precision)
        mod = p**m
        u = self.unit * pow(other.unit, -1, mod) % mod
        return PadicNumber._make(p, self.valuation - other.valuation, u, m)

    def __rtruediv__(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if self.is_zero:
                if self.is_exact_zero:
                    raise ZeroDivisionError("division by exact zero")
                raise PrecisionExhaustedError(
                    "division by a value indistinguishable from 0")
            num = PadicNumber.from_fraction(q, self.prime, self.precision)
            return num / self
        return NotImplemented

    def __pow__(self, n: int) -> "PadicNumber":
        if not isinstance(n, int):
            return NotImplemented
        p = self.prime
        if n == 0:
            if self.is_zero:
                raise DomainError("0**0 is indeterminate")
            return PadicNumber.one(p, self.precision)
        if n < 0:
            return (PadicNumber.one(p, self.precision) / self) ** (-n)
        if self.is_zero:
            if self.known_to is None:
                return self
            return PadicNumber.zero(p, known_to=n * self.known_to)
        m = self.precision
        mod = p**m
        return PadicNumber._make(p, n * self.valuation,
                                 pow(self.unit, n, mod), m)


# -- Teichmuller character and friends --------------------------------


@lru_cache(maxsize=None)
def _teichmuller_residue(p: int, r: int, n: int) -> int:
    """omega(r) mod p**n for a unit residue r, by iterating x -> x**p.

    Each iteration fixes one more digit, so n iterations are more than
    the n-1 needed; the count is fixed for determinism.
    """
    mod = p**n
    a = r % mod
    for _ in range(n):
        a = pow(a, p, mod)
    return a


def teichmuller(x: PadicNumber, precision: Optional[int] = None) -> PadicNumber:
    """The Teichmuller representative omega(x) of a unit x.

    omega(x) is the unique (p-1)-st root of unity congruent to x mod p.
    For p = 2 the convention is omega(x) = 1 if x = 1 mod 4, else -1,
    so that x/omega(x) always lands in 1 + 4Z_2.
    """
    if x.is_zero or x.valuation != 0:
        raise DomainError("teichmuller needs a unit of Z_p")
    p = x.prime
    n = precision if precision is not None else x.precision
    if p == 2:
        if x.residue(2) == 1:
            return PadicNumber.one(2, n)
        return PadicNumber.from_int(-1, 2, n)
    r = x.residue(1)
    return PadicNumber._make(p, 0, _teichmuller_residue(p, r, n), n)


def angle(x: PadicNumber) -> PadicNumber:
    """The principal-unit projection <x> = x / omega(x)."""
    return x / teichmuller(x)


def unit_power(u: PadicNumber, s, precision: Optional[int] = None) -> PadicNumber:
    """u**s for a principal unit u (u = 1 mod q, q = p or 4) and s in Z_p.

    Binomial series sum_n C(s, n) (u-1)**n with exact integer binomial
    coefficients; term n vanishes mod p**N once n*v(u-1) >= N, which
    bounds the loop.  s may be an int or a PadicNumber in Z_p.
    """
    p = u.prime
    q_digits = 2 if p == 2 else 1
    if u.is_zero or u.valuation != 0 or u.residue(q_digits) != 1:
        raise DomainError("unit_power needs u in 1 + qZ_p")
    n_out = u.precision if precision is None else min(precision, u.precision)
    t = u - 1
    if t.is_zero:
        cap = n_out if t.known_to is None else min(n_out, t.known_to)
        return PadicNumber.one(p, cap)
    vt = t.valuation
    if isinstance(s, PadicNumber):
        if s.prime != p:
            raise DomainError("exponent lives in a different Q_p")
        if not s.is_zero and s.valuation < 0:
            raise DomainError("exponent must lie in Z_p")
        # u**(p**e) = 1 mod p**(vt+e), so a representative of s modulo
        # p**(n_out - vt) determines the answer mod p**n_out
        s_int = s.residue(max(n_out - vt, 1))
    elif isinstance(s, int):
        s_int = s
    else:
        raise DomainError("exponent must be an int or PadicNumber")

    mod = p**n_out
    tres = t.residue(n_out)
    acc = 0
    binom = 1          # C(s, n), exact integer
    tpow = 1
    n = 0
    while n * vt < n_out:
        acc = (acc + binom * tpow) % mod
        num = binom * (s_int - n)
        binom = num // (n + 1)
        assert binom * (n + 1) == num, "binomial recurrence must divide exactly"
        tpow = tpow * tres % mod
        n += 1
    return PadicNumber._make(p, 0, acc, n_out)
