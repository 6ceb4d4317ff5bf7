"""p-adic zeta values on a branch, by measure and by interpolation.

Two independent routes to the same numbers.  The interpolation route is
exact rational arithmetic: -(1 - p^(k-1)) B_k / k embedded into Q_p at
branch-matched k.  The measure route Riemann-sums the integrand
<x>^(-s) w(x)^(kappa0 - 1) over the units mod p^N against a regularized
Bernoulli measure, then divides by the prefactor <r>^(1-s) w(r)^kappa0 - 1.

Normalization: with the prefactor written that way, the matching
regularization of the first Bernoulli distribution is by the inverse
unit 1/r.  Its value on a disc a + p^N Z_p is

    B1(a/p^N) - r * B1(((a/r) mod p^N)/p^N)
      = r*floor(R a / p^N) - ((rR-1)/p^N)*a + (r-1)/2,

with B1(x) = x - 1/2 and R the integer inverse of r mod p^N, an element
of (1/2) Z_p computable in plain integers.  Regularizing by r itself
(the form measure_value exposes) pairs with the reciprocal prefactor
and would land on r^(-k) times the interpolated value; the
interpolation identity is the arbiter for this convention and the
agreement is re-checked across every branch in the test grid.
"""

from __future__ import annotations

import math
import threading

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Union

from .errors import DomainError, PoleError, PrecisionExhaustedError
from .padics import (
    DEFAULT_PRECISION,
    PadicNumber,
    _teichmuller_residue,
    prime_factors,
    teichmuller,
    unit_power,
)
from .galois import Branch

# -- Bernoulli numbers --------------------------------------------------

_BERNOULLI: List[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """B_k by the recurrence sum_j C(m+1, j) B_j = 0 (so B_1 = -1/2).

    The memo table is grown under a lock; reads of finished entries are
    safe from any thread.
    """
    if k < 0:
        raise DomainError("negative Bernoulli index")
    with _BERNOULLI_LOCK:
        while len(_BERNOULLI) <= k:
            m = len(_BERNOULLI)
            acc = sum(Fraction(math.comb(m + 1, j)) * _BERNOULLI[j]
                      for j in range(m))
            _BERNOULLI.append(-acc / (m + 1))
        return _BERNOULLI[k]


# -- the measure --------------------------------------------------------


def _validate_regulator(regulator: int, p: int) -> None:
    if regulator == 1 or math.gcd(regulator, p) != 1:
        raise DomainError("invalid regulator %r for p = %d" % (regulator, p))


def measure_value(a: int, level: int, regulator: int, p: int,
                  precision: Optional[int] = None) -> PadicNumber:
    """mu_{1,r}(a + p^level Z_p) = B1(a/q) - (1/r) B1((r a mod q)/q).

    Closed form (1/r) floor(r a / q) + (1/r - 1)/2, q = p^level.
    """
    _validate_regulator(regulator, p)
    q = p**level
    if not 0 <= a < q:
        raise DomainError("residue %r out of range for level %d" % (a, level))
    n = DEFAULT_PRECISION if precision is None else precision
    num = 2 * (regulator * a // q) + 1 - regulator
    return PadicNumber.from_rational(num, 2 * regulator, p, n)


@dataclass(frozen=True)
class MazurMeasure:
    """All disc values of the regularized measure at one level."""

    prime: int
    regulator: int
    level: int
    values: tuple

    @classmethod
    def build(cls, p: int, regulator: int, level: int,
              precision: Optional[int] = None) -> "MazurMeasure":
        vals = tuple(measure_value(a, level, regulator, p, precision)
                     for a in range(p**level))
        return cls(prime=p, regulator=regulator, level=level, values=vals)

    def value(self, a: int) -> PadicNumber:
        return self.values[a]

    def refined_by(self, finer: "MazurMeasure") -> bool:
        """Distribution law: each disc value is the sum over its p
        children one level down, exactly at working precision."""
        if (finer.prime, finer.regulator) != (self.prime, self.regulator):
            raise DomainError("measures do not match")
        if finer.level != self.level + 1:
            raise DomainError("refinement must be one level finer")
        q = self.prime**self.level
        for a, coarse in enumerate(self.values):
            parts = PadicNumber.zero(self.prime)
            for j in range(self.prime):
                parts = parts + finer.values[a + j * q]
            if not (parts - coarse).is_zero:
                return False
        return True


def total_mass(regulator: int, p: int,
               precision: Optional[int] = None) -> PadicNumber:
    """mu(Z_p) = (1 - r)/(2r), the same at every level."""
    _validate_regulator(regulator, p)
    n = DEFAULT_PRECISION if precision is None else precision
    return PadicNumber.from_rational(1 - regulator, 2 * regulator, p, n)


def integrate_units(g: Callable[[int], PadicNumber], level: int,
                    regulator: int, p: int,
                    precision: Optional[int] = None,
                    continuity_exponent: Optional[int] = None) -> PadicNumber:
    """Riemann sum of g over the units mod p^level against the measure.

    g maps a unit residue to a PadicNumber (exact ints work too).  The
    measure is bounded by 1 in absolute value, so the sum approximates
    the integral to within the modulus of continuity of g across
    level-N discs; pass that exponent to have it capped onto the
    reported precision of the result.
    """
    _validate_regulator(regulator, p)
    q = p**level
    total = PadicNumber.zero(p)
    for a in range(1, q):
        if a % p == 0:
            continue
        total = total + g(a) * measure_value(a, level, regulator, p, precision)
    if continuity_exponent is not None:
        total = total.truncated_to(continuity_exponent)
    return total


# -- regulators ---------------------------------------------------------


def default_regulator(p: int) -> int:
    """Smallest primitive root mod p^2 (3 when p = 2)."""
    if p == 2:
        return 3
    checks = [(p - 1) // f for f in prime_factors(p - 1)]
    for r in range(2, p * p):
        if r % p == 0 or any(pow(r, e, p) == 1 for e in checks):
            continue
        if pow(r, p - 1, p * p) != 1:
            return r
    raise DomainError("no regulator found for p = %d" % p)


# -- the two evaluation paths -------------------------------------------


@dataclass(frozen=True)
class ZetaBranchEval:
    """One zeta evaluation with its provenance and error bound."""

    prime: int
    kappa0: int
    s: Union[int, PadicNumber]
    regulator: Optional[int]
    level: Optional[int]
    value: PadicNumber
    error_bound_exponent: Optional[int]
    path: str


def _require_even_branch(branch: Branch) -> None:
    if branch.kappa0 % 2:
        raise DomainError(
            "zeta needs an even branch; kappa0 = %d is odd" % branch.kappa0)


def _torsion_order(p: int) -> int:
    return 2 if p == 2 else p - 1


def zeta_interp(k: int, branch: Branch,
                precision: Optional[int] = None) -> PadicNumber:
    """Exact interpolation value -(1 - p^(k-1)) B_k / k at s = 1 - k.

    Only branch-matched k (k = kappa0 mod p-1; mod 2 when p = 2) hit
    ordinary Bernoulli numbers; anything else is out of scope here.
    """
    p = branch.prime
    _require_even_branch(branch)
    if k < 1:
        raise DomainError("k must be a positive integer")
    if (k - branch.kappa0) % _torsion_order(p):
        raise DomainError(
            "branch mismatch: k = %d is not %d mod %d"
            % (k, branch.kappa0, _torsion_order(p)))
    n = DEFAULT_PRECISION if precision is None else precision
    value = -(1 - Fraction(p) ** (k - 1)) * bernoulli(k) / k
    return PadicNumber.from_fraction(value, p, n)


def _prefactor_denominator(s, kappa0: int, regulator: int, p: int,
                           digits: int) -> PadicNumber:
    x = PadicNumber.from_int(regulator, p, digits)
    w = teichmuller(x)
    return unit_power(x / w, 1 - s, digits) * w**kappa0 - 1


def _unit_sum_int(p: int, kappa0: int, exp_angle: int, regulator: int,
                  level: int, digits: int) -> int:
    """Integer kernel: sum over unit residues of
    <a>^exp_angle w(a)^((kappa0-1) mod ord) mu(a), times 2 for odd p,
    as a residue mod p^digits."""
    q = p**level
    mod = p**digits
    rinv = pow(regulator, -1, q)
    slope = (regulator * rinv - 1) // q
    if p == 2:
        half = (regulator - 1) // 2
        neg_pow = (mod - 1) if (kappa0 - 1) % 2 else 1
        acc = 0
        for a in range(1, q, 2):
            if a % 4 == 1:
                angle, wp = a, 1
            else:
                angle, wp = (-a) % mod, neg_pow
            g = pow(angle, exp_angle, mod) * wp % mod
            mu = regulator * (rinv * a // q) - slope * a + half
            acc = (acc + g * mu) % mod
        return acc
    e_om = (kappa0 - 1) % (p - 1)
    winv = [0] * p
    wpow = [0] * p
    for c in range(1, p):
        w = _teichmuller_residue(p, c, digits)
        winv[c] = pow(w, -1, mod)
        wpow[c] = pow(w, e_om, mod)
    two_r = 2 * regulator
    two_slope = 2 * slope
    shift = regulator - 1
    acc = 0
    for base in range(0, q, p):
        for c in range(1, p):
            a = base + c
            angle = a * winv[c] % mod
            g = pow(angle, exp_angle, mod) * wpow[c] % mod
            mu2 = two_r * (rinv * a // q) - two_slope * a + shift
            acc = (acc + g * mu2) % mod
    return acc * pow(2, -1, mod) % mod


def _unit_sum_generic(p: int, kappa0: int, s, regulator: int, level: int,
                      digits: int) -> PadicNumber:
    """Same sum through the PadicNumber API, for arbitrary s in Z_p."""
    q = p**level
    rinv = pow(regulator, -1, q)
    slope = (regulator * rinv - 1) // q
    e_om = (kappa0 - 1) % _torsion_order(p)
    total = PadicNumber.zero(p)
    for a in range(1, q):
        if a % p == 0:
            continue
        x = PadicNumber.from_int(a, p, digits)
        w = teichmuller(x)
        g = unit_power(x / w, -s, digits) * w**e_om
        mu2 = (2 * regulator * (rinv * a // q) - 2 * slope * a
               + regulator - 1)
        total = total + g * PadicNumber.from_rational(mu2, 2, p, digits)
    return total


def zeta_measure(s, branch: Branch, regulator: Optional[int] = None,
                 level: int = 5,
                 precision: Optional[int] = None) -> ZetaBranchEval:
    """Riemann-sum evaluation of the branch zeta function at s in Z_p.

    The prefactor denominator <r>^(1-s) w(r)^kappa0 - 1 fixes the
    working precision: its valuation is measured first and added to the
    digit budget (with guard digits) before the sum runs.  The reported
    error bound is level minus that valuation.
    """
    p = branch.prime
    kappa0 = branch.kappa0
    _require_even_branch(branch)
    r = default_regulator(p) if regulator is None else regulator
    _validate_regulator(r, p)
    if level < (2 if p == 2 else 1):
        raise DomainError("level %d too small for p = %d" % (level, p))
    n_req = DEFAULT_PRECISION if precision is None else precision
    if n_req < 1:
        raise DomainError("precision must be positive")

    if p == 2:
        torsion_trivial = kappa0 % 2 == 0 or r % 4 == 1
    else:
        torsion_trivial = pow(r % p, kappa0, p) == 1
    if isinstance(s, PadicNumber):
        if s.prime != p:
            raise DomainError("s lives in a different Q_p")
        if not s.is_zero and s.valuation < 0:
            raise DomainError("s must lie in Z_p")
        diff = s - 1
        s_exactly_one = diff.is_exact_zero
        if torsion_trivial and not s_exactly_one and diff.is_zero:
            raise PrecisionExhaustedError(
                "s is indistinguishable from the pole at 1 "
                "(difference known to vanish mod %d**%s)" % (p, diff.known_to))
    elif isinstance(s, int):
        s_exactly_one = s == 1
    else:
        raise DomainError("s must be an int or PadicNumber")
    if torsion_trivial and s_exactly_one:
        raise PoleError(
            "pole/indeterminate at this branch point: s = 1 with "
            "w(r)^kappa0 = 1")

    probe = n_req + 10
    den = _prefactor_denominator(s, kappa0, r, p, probe)
    if den.is_zero:
        raise PrecisionExhaustedError(
            "prefactor denominator vanishes to p^-%s; "
            "raise the precision budget" % (den.known_to,))
    v_den = den.valuation
    digits = n_req + v_den + 4
    if digits > probe:
        den = _prefactor_denominator(s, kappa0, r, p, digits)

    if isinstance(s, int):
        acc = _unit_sum_int(p, kappa0, -s, r, level, digits)
        integral = PadicNumber._make(p, 0, acc, digits)
    else:
        integral = _unit_sum_generic(p, kappa0, s, r, level, digits)
    return ZetaBranchEval(prime=p, kappa0=kappa0, s=s, regulator=r,
                          level=level, value=integral / den,
                          error_bound_exponent=level - v_den, path="measure")
