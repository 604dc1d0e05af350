"""Exact ground fields: the rationals (via :class:`fractions.Fraction`) and prime fields."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator, Optional, Union

from .errors import DivisionByZero, FieldMismatch, ValidationError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    from sympy import isprime

    return bool(isprime(p))


@total_ordering
class Residue:
    """An element of the prime field F_p, stored as a canonical residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _coerce(self, other) -> Optional["Residue"]:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return Residue(other, self.p)
        if isinstance(other, Fraction):
            raise FieldMismatch(f"rational {other} mixed with GF({self.p})")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        # only used for deterministic sorting
        if isinstance(other, Residue):
            return (self.p, self.value) < (other.p, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]

_PRIME_RE = re.compile(r"^\s*(?:GF|F)\s*\(?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class FieldSpec:
    """The ground field k: rationals when ``p`` is None, else GF(p)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValidationError(f"field characteristic {self.p} is not a prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``"Q"``/``"QQ"``/``"rationals"`` or ``"GF(p)"``/``"F7"``."""
        t = str(text).strip()
        if t.lower() in ("q", "qq", "rationals", "rational"):
            return cls(None)
        m = _PRIME_RE.match(t)
        if m:
            return cls(int(m.group(1)))
        raise ValidationError(f"unrecognised field {text!r}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction, Residue, or numeric string into this field."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.p is None:
            if isinstance(x, Residue):
                raise FieldMismatch(f"{x!r} is not rational")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldMismatch(f"cannot coerce {x!r} into Q")
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, int):
            return Residue(x, self.p)
        if isinstance(x, Fraction):
            num = Residue(x.numerator, self.p)
            den = Residue(x.denominator, self.p)
            if not den:
                raise DivisionByZero(f"{x} has denominator divisible by {self.p}")
            return num / den
        raise FieldMismatch(f"cannot coerce {x!r} into GF({self.p})")

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def owns(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Residue) and x.p == self.p

    def parse_scalar(self, text) -> Scalar:
        if isinstance(text, int) and not isinstance(text, bool):
            return self(text)
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad scalar {text!r}: {exc}") from None
        return self(value)

    def serialize(self, x: Scalar):
        """``"num/den"`` strings for rationals, canonical residue integers for GF(p)."""
        x = self(x)
        if self.p is None:
            return str(x)
        return x.value

    def random(self, rng: random.Random, bound: int = 9) -> Scalar:
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return Residue(rng.randrange(self.p), self.p)

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("Q is infinite")
        return (Residue(v, self.p) for v in range(self.p))


def scalar_arith(op: str, x: Scalar, y: Optional[Scalar] = None):
    """Dispatch one of ``add, sub, mul, div, neg, inv, eq`` on exact scalars."""
    if y is not None:
        _check_same_field(x, y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise DivisionByZero(f"{x} / 0")
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        if not x:
            raise DivisionByZero("inverse of 0")
        return x.inverse() if isinstance(x, Residue) else 1 / x
    if op == "eq":
        return x == y
    raise ValueError(f"unknown op {op!r}")


def _check_same_field(x, y):
    xr, yr = isinstance(x, Residue), isinstance(y, Residue)
    if xr and yr and x.p != y.p:
        raise FieldMismatch(f"GF({x.p}) vs GF({y.p})")
    if xr != yr and not (isinstance(x, int) or isinstance(y, int)):
        raise FieldMismatch(f"{x!r} and {y!r} live in different fields")
