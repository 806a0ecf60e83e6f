"""Locally constant functions on the coset 1 + 8 Z_2 and digit idempotents.

Functions are tabulated against the parameter t of x = 1 + 8t with a
finite modulus of continuity: a table of 2^M values in Z/2^k, indexed
by t mod 2^M.  The binary digits of t are idempotent generators (the
digits of x itself are constant in positions 0..2 on this coset, which
is why the parameter is used).  Membership of a Laurent polynomial in
the even 2-locally integer-valued ring combines an exponent parity
check with the unit-residue sweep at 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, PrecisionError
from .linalg import det_int
from .membership import MembershipVerdict, is_stably_numerical
from .polynomials import LaurentPoly


@dataclass(frozen=True)
class LocallyConstantFn:
    """Value table mod 2^value_bits, indexed by t mod 2^modulus_bits."""

    value_bits: int
    modulus_bits: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.value_bits < 1 or self.modulus_bits < 0:
            raise DomainError("bad precision parameters")
        if len(self.table) != 2**self.modulus_bits:
            raise DomainError("table length must be 2^modulus_bits")
        mask = 2**self.value_bits
        object.__setattr__(
            self, "table", tuple(v % mask for v in self.table)
        )

    @classmethod
    def constant(cls, value: int, k: int, M: int = 0) -> "LocallyConstantFn":
        return cls(k, M, tuple([value] * (2**M)))

    def __call__(self, t: int) -> int:
        return self.table[t % len(self.table)]

    def refine(self, M: int) -> "LocallyConstantFn":
        """Re-tabulate at a finer modulus of continuity."""
        if M < self.modulus_bits:
            raise PrecisionError("cannot coarsen a value table")
        return LocallyConstantFn(
            self.value_bits, M, tuple(self(t) for t in range(2**M))
        )

    def _pointwise(self, other, op):
        if not isinstance(other, LocallyConstantFn):
            if isinstance(other, int):
                other = LocallyConstantFn.constant(other, self.value_bits)
            else:
                return NotImplemented
        if other.value_bits != self.value_bits:
            raise DomainError("mismatched value precision")
        M = max(self.modulus_bits, other.modulus_bits)
        a, b = self.refine(M), other.refine(M)
        return LocallyConstantFn(
            self.value_bits, M, tuple(op(x, y) for x, y in zip(a.table, b.table))
        )

    def __add__(self, other):
        return self._pointwise(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._pointwise(other, lambda x, y: x - y)

    def __mul__(self, other):
        return self._pointwise(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def to_json(self):
        return {
            "k": self.value_bits,
            "M": self.modulus_bits,
            "table": list(self.table),
        }


def digit_function(i: int, k: int, M: int) -> LocallyConstantFn:
    """The i-th binary digit of the parameter t, as an idempotent."""
    if i < 0:
        raise DomainError("digit index must be >= 0")
    if i >= M:
        raise PrecisionError(
            f"digit {i} is not determined at modulus of continuity 2^{M}"
        )
    return LocallyConstantFn(k, M, tuple((t >> i) & 1 for t in range(2**M)))


@dataclass(frozen=True)
class XiBasisReport:
    d: int
    k: int
    size: int
    det: int
    invertible: bool
    parametrization: str = "x = 1 + 8t; generators are binary digits of t"

    def __bool__(self):
        return self.invertible

    def to_json(self):
        return {
            "d": self.d,
            "k": self.k,
            "size": self.size,
            "det": str(self.det),
            "invertible": self.invertible,
            "parametrization": self.parametrization,
        }


def verify_xi_basis(d: int, k: int) -> XiBasisReport:
    """Evaluate all square-free digit monomials on a full residue system.

    With modulus of continuity d+1 there are 2^(d+1) monomials in the
    digits 0..d and as many residues t; the evaluation matrix must be
    invertible over Z/2^k, i.e. have odd determinant.
    """
    if d < 0 or k < 1:
        raise DomainError("need d >= 0 and k >= 1")
    size = 2 ** (d + 1)
    # entry (t, S): the monomial over digit subset S evaluates to 1 iff
    # every digit of S is set in t
    matrix = [[1 if (s & t) == s else 0 for s in range(size)] for t in range(size)]
    det = det_int(matrix)
    return XiBasisReport(d, k, size, det, det % 2 == 1)


def ko_membership(f: LaurentPoly) -> MembershipVerdict:
    """Even Laurent polynomials that are 2-locally integer valued on units."""
    for e in sorted(f.terms):
        if e % 2:
            return MembershipVerdict(False, odd_exponent=e)
    verdict = is_stably_numerical(f, 2)
    return verdict
