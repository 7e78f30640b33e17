"""Exact integer matrices and integer Laurent polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["IntMatrix", "LaurentPoly", "bareiss_det"]


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``t``; ``terms`` is sorted ``(exp, coef)``."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c)))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """From ascending coefficients starting at exponent ``low``."""
        return cls.from_dict({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.from_dict({0: c})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls(((1, 1),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return self.terms[0][0]

    @property
    def high(self) -> int:
        return self.terms[-1][0]

    def __add__(self, other):
        other = _lift(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other``; raises if it is not a Laurent polynomial."""
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        num = {e - self.low: Fraction(c) for e, c in self.terms}
        den = [Fraction(c) for c in other.coefficient_list()]
        dn = len(den) - 1
        quot: dict[int, int] = {}
        deg = max(num)
        while num and deg >= dn:
            q = num.get(deg, Fraction(0)) / den[-1]
            if q:
                if q.denominator != 1:
                    raise ArithmeticError("inexact polynomial division")
                quot[deg - dn] = int(q)
                for i, dc in enumerate(den):
                    k = deg - dn + i
                    num[k] = num.get(k, Fraction(0)) - q * dc
                    if not num[k]:
                        del num[k]
            deg -= 1
        if num:
            raise ArithmeticError("inexact polynomial division")
        return LaurentPoly.from_dict(quot).shift(self.low - other.low)

    def __floordiv__(self, other):
        return self.exact_div(_lift(other))

    def coefficient_list(self) -> list[int]:
        """Dense coefficients from ``low`` to ``high``."""
        if not self.terms:
            return []
        d = self.as_dict()
        return [d.get(e, 0) for e in range(self.low, self.high + 1)]

    def __call__(self, x: int | Fraction):
        total = 0
        for e, c in self.terms:
            total += c * (Fraction(x) ** e if e < 0 else x ** e)
        return total

    def evaluate(self, x):
        return self(x)

    def reciprocal(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1``."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def normalized(self) -> "LaurentPoly":
        """Representative with lowest exponent 0 and positive top coefficient."""
        if self.is_zero():
            return self
        p = self.shift(-self.low)
        return -p if p.terms[-1][1] < 0 else p

    def equal_up_to_units(self, other: "LaurentPoly") -> bool:
        return self.normalized() == _lift(other).normalized()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def bareiss_det(rows: Sequence[Sequence], one=1, zero=0):
    """Fraction-free determinant over an integral domain with exact ``//``."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return one
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, LaurentPoly) else x == 0


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "IntMatrix":
        m = n if m is None else m
        return cls(n, m, (0,) * (n * m))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.to_rows()))) if self.rows else IntMatrix(self.cols, 0, ())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def det(self) -> int:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.to_rows())
