"""Exact scalar fields: arbitrary-precision rationals and prime fields.

Scalars are plain Python numbers.  Over the rationals they are ``int`` or
``fractions.Fraction`` (Fraction is already canonical: reduced, positive
denominator, zero is 0/1).  Over a prime field they are ints in ``[0, p)``.
The field object carries the arithmetic, so matrices, points and schemes
stay field-agnostic; a value never travels between field modes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import InvalidInputError

DEFAULT_PRIME = 2147483647  # 2**31 - 1, fits signed 64-bit products

_RATIONAL_LITERAL = re.compile(r"[+-]?\d+(/\d+)?\Z")
_INTEGER_LITERAL = re.compile(r"[+-]?\d+\Z")


@dataclass(frozen=True)
class RationalField:
    """The field of rationals; elements are int or Fraction."""

    kind = "rational"

    def coerce(self, x):
        if isinstance(x, bool):
            raise InvalidInputError("bool is not a scalar")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else x
        raise InvalidInputError(f"not a rational scalar: {x!r}")

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.coerce(Fraction(1, 1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return self.coerce(Fraction(a) / Fraction(b))

    zero = 0
    one = 1

    def to_string(self, x) -> str:
        return str(self.coerce(x))

    def from_string(self, s: str):
        s = s.strip()
        if not _RATIONAL_LITERAL.match(s):
            raise InvalidInputError(f"not an exact rational literal (integer or a/b): {s!r}")
        try:
            return self.coerce(Fraction(s))
        except ZeroDivisionError as exc:
            raise InvalidInputError(f"zero denominator in {s!r}") from exc

    def describe(self) -> dict:
        return {"kind": "rational"}


@dataclass(frozen=True)
class PrimeField:
    """The field Z/pZ for a prime p; elements are ints in [0, p)."""

    p: int
    kind = "prime"

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise InvalidInputError(f"prime modulus must be an integer >= 2, got {self.p!r}")
        if not gmpy2.is_prime(self.p):
            raise InvalidInputError(f"modulus {self.p} is not prime")

    def coerce(self, x):
        if isinstance(x, bool):
            raise InvalidInputError("bool is not a scalar")
        if isinstance(x, int):
            return x % self.p
        raise InvalidInputError(
            f"not a prime-field scalar: {x!r} (rational scalars cannot enter a prime-field computation)"
        )

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def to_string(self, x) -> str:
        return str(x % self.p)

    def from_string(self, s: str):
        s = s.strip()
        if not _INTEGER_LITERAL.match(s):
            raise InvalidInputError(f"not a prime-field literal (integer): {s!r}")
        return int(s) % self.p

    def describe(self) -> dict:
        return {"kind": "prime", "p": self.p}


QQ = RationalField()

Field = RationalField | PrimeField


def field_from_descriptor(desc: dict) -> Field:
    """Build a field from its JSON descriptor {"kind": ...}."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InvalidInputError(f"malformed field descriptor: {desc!r}")
    if desc["kind"] == "rational":
        return QQ
    if desc["kind"] == "prime":
        if "p" not in desc:
            raise InvalidInputError("prime field descriptor needs a modulus 'p'")
        return PrimeField(desc["p"])
    raise InvalidInputError(f"unknown field kind: {desc['kind']!r}")


def ensure_same_field(a: Field, b: Field, what: str = "operands") -> None:
    if a != b:
        raise InvalidInputError(f"mixed field modes on {what}: {a.describe()} vs {b.describe()}")
