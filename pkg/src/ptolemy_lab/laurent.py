"""Multivariate Laurent polynomials with unbounded integer coefficients.

Values are immutable and canonical: a polynomial is its (nonzero) term map
plus the ambient generator count, so two values are equal exactly when the
maps coincide.  Exponents may be negative; coefficients are Python ints and
therefore unbounded, which matters because iterated mutation grows them
without bound.

Term arithmetic is delegated to a kernel selected at import time: the
compiled extension ptolemy_lab._termkernel when available, otherwise the
pure-Python twin.  Set PTOLEMY_LAB_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, EvaluationError, FormatError, NotDivisible

if os.environ.get("PTOLEMY_LAB_PURE_PYTHON", "") not in ("", "0"):
    from . import _termkernel_py as _kernel
else:
    try:
        from . import _termkernel as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _termkernel_py as _kernel


def kernel_backend() -> str:
    """Name of the active term-arithmetic kernel ('compiled' or 'python')."""
    return "compiled" if _kernel.__name__.endswith("_termkernel") else "python"


class LaurentPoly:
    """An exact Laurent polynomial in generators x1..xn.

    >>> x1, x2 = LaurentPoly.generators(2)
    >>> print((1 + x2).div_exact(x1))
    x1^-1*x2 + x1^-1
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, generator_count: int, terms: dict | None = None):
        if generator_count < 1:
            raise DimensionError("generator count must be positive")
        self.n = generator_count
        clean: dict = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != generator_count:
                raise DimensionError(
                    f"exponent vector {exps} has length {len(exps)}, expected {generator_count}"
                )
            coeff = int(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, n: int, terms: dict) -> "LaurentPoly":
        """Wrap a kernel-produced term map without revalidating it."""
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls._make(n, {})

    @classmethod
    def constant(cls, c: int, n: int) -> "LaurentPoly":
        c = int(c)
        return cls._make(n, {(0,) * n: c} if c else {})

    @classmethod
    def generator(cls, i: int, n: int) -> "LaurentPoly":
        """The generator x_i, 1-based."""
        if not 1 <= i <= n:
            raise DimensionError(f"generator index {i} out of range 1..{n}")
        exps = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls._make(n, {exps: 1})

    @classmethod
    def generators(cls, n: int) -> list["LaurentPoly"]:
        return [cls.generator(i, n) for i in range(1, n + 1)]

    @classmethod
    def monomial(cls, coeff: int, exps: Sequence[int]) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """The term map, exponent tuple -> coefficient.  Do not mutate."""
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.n: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.n)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """A total-order key: terms in descending lexicographic order."""
        return tuple(sorted(self._terms.items(), reverse=True))

    def _check(self, other: "LaurentPoly") -> None:
        if self.n != other.n:
            raise DimensionError(f"generator counts differ: {self.n} vs {other.n}")

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.n)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return LaurentPoly._make(self.n, _kernel.kadd(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._make(self.n, _kernel.kneg(self._terms))

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return LaurentPoly._make(self.n, _kernel.kmul(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (exps, coeff), = self._terms.items()
            if coeff not in (1, -1):
                raise NotDivisible("negative power of a non-unit coefficient")
            return LaurentPoly._make(
                self.n, {tuple(e * x for x in exps): coeff if e % 2 else 1}
            )
        if e == 0:
            return LaurentPoly.constant(1, self.n)
        if not self._terms:
            return self
        return LaurentPoly._make(self.n, _kernel.kpow(self._terms, e))

    def div_exact(self, other) -> "LaurentPoly":
        """Exact quotient q with q * other == self.

        Raises NotDivisible when no Laurent polynomial quotient exists and
        ZeroDivisionError when other is zero.  Division by any nonzero
        monomial always succeeds (monomials are units of the Laurent ring).
        """
        other = self._coerce(other)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        q = _kernel.kdiv_exact(self._terms, other._terms)
        if q is None:
            raise NotDivisible(f"({self}) is not divisible by ({other})")
        return LaurentPoly._make(self.n, q)

    def divides(self, other: "LaurentPoly") -> bool:
        self._check(other)
        if self.is_zero():
            return other.is_zero()
        return _kernel.kdiv_exact(other._terms, self._terms) is not None

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a point with nonzero rational coordinates."""
        if len(point) != self.n:
            raise DimensionError(f"point has length {len(point)}, expected {self.n}")
        coords = [Fraction(x) for x in point]
        if any(x == 0 for x in coords):
            raise EvaluationError("evaluation point has a zero coordinate")
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            value = Fraction(coeff)
            for x, e in zip(coords, exps):
                value *= x ** e
            total += value
        return total

    # -- text format -------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in sorted(self._terms.items(), reverse=True):
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e != 0
            ]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.n}, '{self}')"


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?P<body>(?:\d+|x\d+(?:\^-?\d+)?)(?:\s*\*\s*(?:\d+|x\d+(?:\^-?\d+)?))*)"
)
_FACTOR_RE = re.compile(r"(?:(?P<int>\d+)|x(?P<idx>\d+)(?:\^(?P<exp>-?\d+))?)$")


def parse_laurent(text: str, generator_count: int) -> LaurentPoly:
    """Parse the canonical printing format back into a polynomial.

    Round-trips str(p) bit-exactly; also tolerates extra whitespace and an
    explicit leading '+'.
    """
    s = text.strip()
    if not s:
        raise FormatError("empty polynomial")
    if s == "0":
        return LaurentPoly.zero(generator_count)
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or not m.group("body"):
            raise FormatError(f"cannot parse polynomial at ...{s[pos:pos + 20]!r}")
        sign = m.group("sign")
        if first and sign is None:
            sign = "+"
        if sign is None:
            raise FormatError(f"missing +/- between terms in {text!r}")
        coeff = 1 if sign == "+" else -1
        exps = [0] * generator_count
        for piece in m.group("body").split("*"):
            fm = _FACTOR_RE.match(piece.strip())
            if not fm:
                raise FormatError(f"bad factor {piece!r} in {text!r}")
            if fm.group("int") is not None:
                coeff *= int(fm.group("int"))
            else:
                idx = int(fm.group("idx"))
                if not 1 <= idx <= generator_count:
                    raise FormatError(
                        f"generator x{idx} out of range for {generator_count} generators"
                    )
                exps[idx - 1] += int(fm.group("exp") or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return LaurentPoly(generator_count, terms)


def poly_sum(polys: Iterable[LaurentPoly], n: int) -> LaurentPoly:
    total = LaurentPoly.zero(n)
    for p in polys:
        total = total + p
    return total


def poly_product(polys: Iterable[LaurentPoly], n: int) -> LaurentPoly:
    total = LaurentPoly.constant(1, n)
    for p in polys:
        total = total * p
    return total
