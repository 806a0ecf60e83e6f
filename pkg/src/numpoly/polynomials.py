"""Laurent polynomials over Q and expansions in the binomial basis.

Two coordinate systems for the same functions of an integer variable w:

* :class:`LaurentPoly` stores rational coefficients per integer exponent
  of w (negative exponents allowed).
* :class:`BinomialPoly` stores rational coefficients per index n of the
  binomial coefficient function ``binom(w, n) = w(w-1)...(w-n+1)/n!``.

An element with only non-negative exponents is integer valued on all of
Z exactly when its binomial-basis coefficients are all integers, which
is why the second coordinate system exists.

Both types are value-like: no method mutates its receiver.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, NotDivisibleError
from .exact import format_rational, int_ord_p

_factorials = [1]


def factorial(n: int) -> int:
    while len(_factorials) <= n:
        _factorials.append(_factorials[-1] * len(_factorials))
    return _factorials[n]


def binom_int(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def _clean(terms: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


class LaurentPoly:
    """f(w) = sum of coeff * w^exp with integer exponents of either sign."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        self.terms = _clean(terms or {})

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def w(cls, exp: int = 1, coeff=1) -> "LaurentPoly":
        return cls({exp: Fraction(coeff)})

    # -- structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int | float:
        return max(self.terms) if self.terms else -math.inf

    @property
    def min_exponent(self) -> int | float:
        return min(self.terms) if self.terms else math.inf

    @property
    def is_polynomial(self) -> bool:
        """True when no negative exponent occurs."""
        return not self.terms or min(self.terms) >= 0

    def coeff(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return sorted(self.terms.items())

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        if isinstance(other, LaurentPoly):
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero")
            return LaurentPoly({e: c / other for e, c in self.terms.items()})
        if isinstance(other, LaurentPoly):
            if len(other.terms) != 1:
                raise DomainError("can only divide by a single-term monomial")
            ((e, c),) = other.terms.items()
            return LaurentPoly({k - e: v / c for k, v in self.terms.items()})
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self.terms) != 1:
                raise DomainError("negative power of a non-monomial")
            ((k, c),) = self.terms.items()
            return LaurentPoly({k * e: Fraction(1) / c ** (-e)})
        result = LaurentPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- evaluation and substitution -----------------------------------

    def evaluate(self, x) -> Fraction:
        """Exact value at a rational point; x = 0 needs a genuine polynomial."""
        x = Fraction(x)
        if x == 0 and not self.is_polynomial:
            raise DomainError("cannot evaluate a negative exponent at 0")
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * x**e
        return total

    def evaluate_mod(self, u: int, modulus: int) -> int:
        """Value mod ``modulus``; denominators and negative powers of u are
        inverted mod ``modulus`` and must be coprime to it."""
        total = 0
        for e, c in self.terms.items():
            num = c.numerator % modulus
            den = c.denominator
            term = num * pow(den, -1, modulus) % modulus if den != 1 else num
            term = term * pow(u % modulus, e, modulus) % modulus
            total = (total + term) % modulus
        return total

    def shift(self) -> "LaurentPoly":
        """Substitute w + 1 for w; defined for genuine polynomials only."""
        if not self.is_polynomial:
            raise DomainError("shift is only defined without negative exponents")
        out: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            for j in range(e + 1):
                out[j] = out.get(j, Fraction(0)) + c * binom_int(e, j)
        return LaurentPoly(out)

    def scale_exponents(self, d: int) -> "LaurentPoly":
        """Multiply by w^d."""
        return LaurentPoly({e + d: c for e, c in self.terms.items()})

    def denominator_lcm(self) -> int:
        out = 1
        for c in self.terms.values():
            out = out * c.denominator // math.gcd(out, c.denominator)
        return out

    def min_ord_p(self, p: int) -> int | float:
        """Minimum p-adic valuation over the coefficients; inf for zero."""
        if not self.terms:
            return math.inf
        out = None
        for c in self.terms.values():
            v = int_ord_p(c.numerator, p) - int_ord_p(c.denominator, p)
            out = v if out is None else min(out, v)
        return out

    # -- formatting ----------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"

    def format(self) -> str:
        """Canonical text form, parseable by the expression grammar."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = format_coeff(mag)
            else:
                wpart = "w" if e == 1 else f"w^{e}"
                body = wpart if mag == 1 else f"{format_coeff(mag)}*{wpart}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "basis": "monomial",
            "terms": [
                {"k": e, "coeff": format_rational(c)} for e, c in self.items()
            ],
        }


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class BinomialPoly:
    """A finite combination of binomial coefficient functions binom(w, n)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        cleaned = _clean(terms or {})
        if any(n < 0 for n in cleaned):
            raise DomainError("binomial basis indices must be >= 0")
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "BinomialPoly":
        return cls()

    @classmethod
    def basis_vector(cls, n: int, coeff=1) -> "BinomialPoly":
        return cls({n: Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BinomialPoly({0: Fraction(other)})
        if not isinstance(other, BinomialPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int | float:
        """Equals the polynomial degree: binom(w, n) has degree n."""
        return max(self.terms) if self.terms else -math.inf

    def coeff(self, n: int) -> Fraction:
        return self.terms.get(n, Fraction(0))

    def items(self):
        return sorted(self.terms.items())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BinomialPoly({0: Fraction(other)})
        if not isinstance(other, BinomialPoly):
            return NotImplemented
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out.get(n, Fraction(0)) + c
        return BinomialPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BinomialPoly({n: -c for n, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BinomialPoly({0: Fraction(other)})
        if not isinstance(other, BinomialPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BinomialPoly({n: c * other for n, c in self.terms.items()})
        if isinstance(other, BinomialPoly):
            return binom_product(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative powers leave the binomial basis")
        result = BinomialPoly.basis_vector(0)
        for _ in range(e):
            result = binom_product(result, self)
        return result

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for n, c in self.terms.items():
            prod = Fraction(1)
            for i in range(n):
                prod *= (x - i)
            total += c * prod / factorial(n)
        return total

    def min_ord_p(self, p: int) -> int | float:
        if not self.terms:
            return math.inf
        out = None
        for c in self.terms.values():
            v = int_ord_p(c.numerator, p) - int_ord_p(c.denominator, p)
            out = v if out is None else min(out, v)
        return out

    def p_divide(self, p: int) -> "BinomialPoly":
        """Exact division by p, requiring every coefficient valuation >= 1."""
        for n, c in self.items():
            if int_ord_p(c.numerator, p) - int_ord_p(c.denominator, p) < 1:
                raise NotDivisibleError(
                    f"coefficient of index {n} has valuation 0 at {p}", index=n
                )
        return BinomialPoly({n: c / p for n, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "BinomialPoly(0)"
        body = " + ".join(f"{format_coeff(c)}*C(w,{n})" for n, c in self.items())
        return f"BinomialPoly({body})"

    def to_json(self) -> dict:
        return {
            "basis": "binomial",
            "terms": [
                {"k": n, "coeff": format_rational(c)} for n, c in self.items()
            ],
        }


# ---------------------------------------------------------------------------
# the binomial coefficient functions and the two changes of basis
# ---------------------------------------------------------------------------

_c_monomial_cache: list[LaurentPoly] = [LaurentPoly.constant(1)]


def binom_c(n: int) -> BinomialPoly:
    """The n-th binomial coefficient function as a basis vector."""
    if n < 0:
        raise DomainError("binomial index must be >= 0")
    return BinomialPoly.basis_vector(n)


def binom_c_monomial(n: int) -> LaurentPoly:
    """binom(w, n) expanded in powers of w.

    Built incrementally from binom(w, n-1) * (w - n + 1) / n; the cache
    is append-only so concurrent readers are safe.
    """
    if n < 0:
        raise DomainError("binomial index must be >= 0")
    while len(_c_monomial_cache) <= n:
        m = len(_c_monomial_cache)
        prev = _c_monomial_cache[m - 1]
        step = prev * LaurentPoly({1: Fraction(1), 0: Fraction(-(m - 1))})
        _c_monomial_cache.append(LaurentPoly(
            {e: c / m for e, c in step.terms.items()}
        ))
    return _c_monomial_cache[n]


def to_binomial(f: LaurentPoly) -> BinomialPoly:
    """Expand a genuine polynomial in the binomial basis.

    The n-th coefficient is the n-th forward difference of f at 0.  The
    difference table is run over integers after clearing denominators,
    which keeps large inputs cheap.
    """
    if not isinstance(f, LaurentPoly):
        raise DomainError("to_binomial expects a LaurentPoly")
    if not f.is_polynomial:
        raise DomainError("negative exponents have no binomial expansion")
    if not f.terms:
        return BinomialPoly.zero()
    d = f.degree
    scale = f.denominator_lcm()
    coeffs = [0] * (d + 1)
    for e, c in f.terms.items():
        coeffs[e] = c.numerator * (scale // c.denominator)
    values = []
    for x in range(d + 1):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        values.append(acc)
    out: dict[int, Fraction] = {}
    row = values
    for n in range(d + 1):
        if row[0]:
            out[n] = Fraction(row[0], scale)
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return BinomialPoly(out)


def to_monomial(b: BinomialPoly) -> LaurentPoly:
    """Inverse change of basis; exact inverse of :func:`to_binomial`."""
    out = LaurentPoly.zero()
    for n, c in b.terms.items():
        out = out + c * binom_c_monomial(n)
    return out


def binom_structure_constant(m: int, n: int, k: int) -> int:
    """Coefficient of index k in the product of basis vectors m and n."""
    if k < max(m, n) or k > m + n:
        return 0
    return factorial(k) // (
        factorial(k - m) * factorial(k - n) * factorial(m + n - k)
    )


def binom_product(a: BinomialPoly, b: BinomialPoly) -> BinomialPoly:
    """Product computed from the integral structure constants directly.

    Independent of the monomial route: the identity behind it is that
    multiplying two generating series (1+x)^w (1+y)^w collects into
    (1 + (x+y+xy))^w, so the coefficient of index k in c_m * c_n is the
    trinomial count k!/((k-m)!(k-n)!(m+n-k)!).  The top term of
    c_m * c_n is binom(m+n, m) * c_{m+n}.
    """
    out: dict[int, Fraction] = {}
    for m, cm in a.terms.items():
        for n, cn in b.terms.items():
            c = cm * cn
            for k in range(max(m, n), m + n + 1):
                s = binom_structure_constant(m, n, k)
                out[k] = out.get(k, Fraction(0)) + c * s
    return BinomialPoly(out)
