"""Creation/annihilation operators on truncated Mahler coefficients.

The raising operator sends P_n to (n+1) P_{n+1}, the lowering operator
sends P_n to P_{n-1} (and kills P_0), and H = a+ a- is diagonal with
eigenvalue n on P_n.  On a truncation window of length M the raising
operator pushes mass out at the top: the coefficient M * c_{M-1} that
would land at index M is folded into the tail bound instead of being
dropped silently.  The commutation identity [a-, a+] = 1 therefore holds
on indices 0..M-2 by contract, with index M-1 a truncation artifact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, PrecisionExhaustedError
from .padics import PadicNumber, vp
from .series import MahlerSeries, _min_exponent

OPERATOR_NAMES = ("raising", "lowering", "hamiltonian")


def apply_raising(f: MahlerSeries) -> MahlerSeries:
    """(a+ f)(x) = x f(x-1); coefficients shift up with weight n+1."""
    p = f.prime
    m = f.truncation
    if m == 0:
        return f
    coeffs = [PadicNumber.zero(p)]
    for n in range(m - 1):
        coeffs.append(f.coefficients[n] * (n + 1))
    top = f.coefficients[m - 1]
    spill = top.norm_bound_exponent()
    if spill is not None:
        spill += vp(m, p)
    tail = _min_exponent(f.tail_bound_exponent, spill)
    return MahlerSeries(prime=p, coefficients=tuple(coeffs),
                        tail_bound_exponent=tail)


def apply_lowering(f: MahlerSeries) -> MahlerSeries:
    """(a- f)(x) = f(x+1) - f(x); coefficients shift down one slot.

    The new top coefficient is the unstored c_M, known only through the
    tail bound, so it comes back as a zero marker at that exponent.
    """
    p = f.prime
    coeffs = list(f.coefficients[1:])
    coeffs.append(PadicNumber.zero(p, known_to=f.tail_bound_exponent))
    return MahlerSeries(prime=p, coefficients=tuple(coeffs),
                        tail_bound_exponent=f.tail_bound_exponent)


def hamiltonian(f: MahlerSeries) -> MahlerSeries:
    """H = a+ a-, diagonal: coefficient rule c_n -> n c_n."""
    coeffs = tuple(c * n for n, c in enumerate(f.coefficients))
    return replace(f, coefficients=coeffs)


def commutator_defect(f: MahlerSeries) -> MahlerSeries:
    """(a- a+ - a+ a- - 1) f, which vanishes on indices below M-1."""
    return apply_lowering(apply_raising(f)) - apply_raising(apply_lowering(f)) - f


APPLY = {
    "raising": apply_raising,
    "lowering": apply_lowering,
    "hamiltonian": hamiltonian,
}


# -- matrix form -------------------------------------------------------


@dataclass(frozen=True)
class OperatorMatrix:
    """Sparse M x M matrix over Q_p acting on Mahler coefficient vectors.

    entries holds (row, col, value) triplets sorted by position, without
    explicit zeros; precision records the minimum relative precision
    among the stored entries.
    """

    prime: int
    dimension: int
    entries: tuple
    precision: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def from_dict(cls, p: int, dimension: int,
                  entries: Dict[Tuple[int, int], PadicNumber],
                  default_precision: int) -> "OperatorMatrix":
        kept = {pos: v for pos, v in entries.items() if not v.is_exact_zero}
        precisions = [v.precision for v in kept.values() if not v.is_zero]
        prec = min(precisions) if precisions else default_precision
        triplets = tuple((i, j, v) for (i, j), v in sorted(kept.items()))
        return cls(prime=p, dimension=dimension, entries=triplets, precision=prec)

    def to_dict(self) -> Dict[Tuple[int, int], PadicNumber]:
        return {(i, j): v for i, j, v in self.entries}

    def entry(self, i: int, j: int) -> PadicNumber:
        for a, b, v in self.entries:
            if a == i and b == j:
                return v
        return PadicNumber.zero(self.prime)

    def is_zero_matrix(self) -> bool:
        return all(v.is_zero for _, _, v in self.entries)


def as_matrix(op: Union[str, Sequence[str]], dimension: int, p: int,
              precision: int) -> OperatorMatrix:
    """Matrix of a named operator, or of a composition given as a list
    (applied right to left, i.e. matrix product in list order)."""
    if isinstance(op, str):
        if op not in OPERATOR_NAMES:
            raise DomainError("unknown operator %r" % op)
        entries: Dict[Tuple[int, int], PadicNumber] = {}
        if op == "lowering":
            for n in range(dimension - 1):
                entries[(n, n + 1)] = PadicNumber.from_int(1, p, precision)
        elif op == "raising":
            for n in range(dimension - 1):
                entries[(n + 1, n)] = PadicNumber.from_int(n + 1, p, precision)
        else:
            for n in range(1, dimension):
                entries[(n, n)] = PadicNumber.from_int(n, p, precision)
        return OperatorMatrix.from_dict(p, dimension, entries, precision)
    mats = [as_matrix(name, dimension, p, precision) for name in op]
    if not mats:
        return identity_matrix(p, dimension, precision)
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


def identity_matrix(p: int, dimension: int, precision: int) -> OperatorMatrix:
    entries = {(n, n): PadicNumber.from_int(1, p, precision)
               for n in range(dimension)}
    return OperatorMatrix.from_dict(p, dimension, entries, precision)


def _check_compatible(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.prime != b.prime or a.dimension != b.dimension:
        raise DomainError("matrix shape or prime mismatch")


def mat_add(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_compatible(a, b)
    out = dict(a.to_dict())
    for pos, v in b.to_dict().items():
        out[pos] = out[pos] + v if pos in out else v
    return OperatorMatrix.from_dict(a.prime, a.dimension, out,
                                    min(a.precision, b.precision))


def mat_scale(scalar, a: OperatorMatrix) -> OperatorMatrix:
    out = {pos: scalar * v for pos, v in a.to_dict().items()}
    return OperatorMatrix.from_dict(a.prime, a.dimension, out, a.precision)


def mat_mul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    _check_compatible(a, b)
    by_row: Dict[int, List[Tuple[int, PadicNumber]]] = {}
    for i, k, v in a.entries:
        by_row.setdefault(i, []).append((k, v))
    by_col_of_b: Dict[int, List[Tuple[int, PadicNumber]]] = {}
    for k, j, v in b.entries:
        by_col_of_b.setdefault(k, []).append((j, v))
    out: Dict[Tuple[int, int], PadicNumber] = {}
    for i, row in by_row.items():
        for k, va in row:
            for j, vb in by_col_of_b.get(k, ()):
                prod = va * vb
                pos = (i, j)
                out[pos] = out[pos] + prod if pos in out else prod
    return OperatorMatrix.from_dict(a.prime, a.dimension, out,
                                    min(a.precision, b.precision))


def mat_apply(a: OperatorMatrix, f: MahlerSeries) -> MahlerSeries:
    """Matrix action on the coefficient vector.  Agrees with the apply_*
    functions on indices below M-1; the top row is the bare truncation."""
    if a.prime != f.prime or a.dimension != f.truncation:
        raise DomainError("matrix does not fit the series")
    p = a.prime
    coeffs = [PadicNumber.zero(p) for _ in range(a.dimension)]
    for i, j, v in a.entries:
        coeffs[i] = coeffs[i] + v * f.coefficients[j]
    return MahlerSeries(prime=p, coefficients=tuple(coeffs),
                        tail_bound_exponent=f.tail_bound_exponent)


def matrices_agree(a: OperatorMatrix, b: OperatorMatrix) -> bool:
    _check_compatible(a, b)
    da, db = a.to_dict(), b.to_dict()
    zero = PadicNumber.zero(a.prime)
    for pos in set(da) | set(db):
        if not (da.get(pos, zero) - db.get(pos, zero)).is_zero:
            return False
    return True


def kernel_solve(a: OperatorMatrix) -> List[MahlerSeries]:
    """Basis of the null space by Gauss-Jordan elimination over Q_p.

    Pivots are chosen with maximal p-adic absolute value (smallest
    valuation), ties broken by lowest row index; unit pivots lose no
    precision.  An entry about which nothing is known (a zero marker
    with no vanishing digits) makes the rank undecidable.
    """
    p = a.prime
    m = a.dimension
    zero = PadicNumber.zero(p)
    rows = [[zero] * m for _ in range(m)]
    for i, j, v in a.entries:
        rows[i][j] = v
    pivot_of_col: Dict[int, int] = {}
    used = set()
    for col in range(m):
        best = None
        for r in range(m):
            if r in used:
                continue
            e = rows[r][col]
            if e.is_zero:
                if not e.is_exact_zero and e.known_to is not None and e.known_to <= 0:
                    raise PrecisionExhaustedError(
                        "rank undecidable: entry (%d, %d) has no known digits"
                        % (r, col))
                continue
            if best is None or e.valuation < rows[best][col].valuation:
                best = r
        if best is None:
            continue
        used.add(best)
        pivot_of_col[col] = best
        pivot = rows[best][col]
        for r in range(m):
            if r == best:
                continue
            e = rows[r][col]
            if e.is_zero:
                continue
            factor = e / pivot
            for j in range(m):
                pv = rows[best][j]
                if pv.is_exact_zero:
                    continue
                rows[r][j] = rows[r][j] - factor * pv
    basis = []
    for free in range(m):
        if free in pivot_of_col:
            continue
        vec = [PadicNumber.zero(p) for _ in range(m)]
        vec[free] = PadicNumber.from_int(1, p, a.precision)
        for col, r in pivot_of_col.items():
            e = rows[r][free]
            if not e.is_zero:
                vec[col] = -(e / rows[r][col])
        basis.append(MahlerSeries(prime=p, coefficients=tuple(vec)))
    return basis
