"""Exact scalars: prime fields GF(p) and the rationals.

Hot loops elsewhere in the package work on *raw* scalars (``int`` residues
for GF(p), :class:`fractions.Fraction` for QQ) and call :meth:`FieldSpec.reduce`
once per accumulated value.  :class:`FieldValue` is the checked, user-facing
wrapper around a raw scalar.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SpecMismatchError

MAX_PRIME = 2**31

_SCALAR_RE = re.compile(r"^-?\d+(/-?\d+)?$")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) when ``p`` is set, the rationals when ``p is None``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError("modulus %r is not prime" % (self.p,))
            if self.p >= MAX_PRIME:
                raise ValueError("modulus %d exceeds 2^31" % self.p)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    # raw-level arithmetic -------------------------------------------------

    def reduce(self, x):
        """Canonical raw form of an int/Fraction accumulated with plain + and *."""
        if self.p is not None:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        return Fraction(x)

    def reduce_vec(self, xs):
        p = self.p
        if p is not None:
            return tuple(x % p for x in xs)
        return tuple(Fraction(x) for x in xs)

    def inv_raw(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero in %s" % self)
        if self.p is not None:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def parse_raw(self, text: str):
        text = text.strip()
        if not _SCALAR_RE.match(text):
            raise ParseError("bad scalar %r" % text)
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ParseError("zero denominator in %r" % text)
            return self.reduce(Fraction(int(num), int(den)))
        return self.reduce(int(text))

    def format_raw(self, x) -> str:
        if self.p is not None:
            return str(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

    def signed(self, x) -> int | Fraction:
        """Representative in (-p/2, p/2] for display; identity over QQ."""
        if self.p is not None and x > self.p // 2:
            return x - self.p
        return x

    # user-facing ----------------------------------------------------------

    def __call__(self, x) -> "FieldValue":
        if isinstance(x, str):
            return FieldValue(self, self.parse_raw(x))
        return FieldValue(self, self.reduce(x))

    def __str__(self):
        return "QQ" if self.p is None else "GF(%d)" % self.p

    def header(self) -> str:
        """Text used by the file formats: ``GF 7`` or ``QQ``."""
        return "QQ" if self.p is None else "GF %d" % self.p


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


def parse_field(tokens) -> FieldSpec:
    """Accepts ``["GF", "7"]``, ``["7"]`` or ``["QQ"]`` (or the same as one string)."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    tokens = list(tokens)
    if len(tokens) == 1 and tokens[0].upper() in ("QQ", "Q"):
        return QQ
    if len(tokens) == 2 and tokens[0].upper() == "GF":
        tokens = tokens[1:]
    if len(tokens) == 1 and tokens[0].isdigit():
        return GF(int(tokens[0]))
    raise ParseError("cannot parse field %r" % " ".join(tokens))


@dataclass(frozen=True)
class FieldValue:
    spec: FieldSpec
    value: int | Fraction

    def _check(self, other) -> "FieldValue":
        if not isinstance(other, FieldValue):
            return self.spec(other)
        if other.spec != self.spec:
            raise SpecMismatchError("%s vs %s" % (self.spec, other.spec))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldValue(self.spec, self.spec.reduce(self.value + other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldValue(self.spec, self.spec.reduce(self.value - other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldValue(self.spec, self.spec.reduce(-self.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldValue(self.spec, self.spec.reduce(self.value * other.value))

    __rmul__ = __mul__

    def inv(self) -> "FieldValue":
        return FieldValue(self.spec, self.spec.inv_raw(self.value))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if self.spec.p is not None:
            return FieldValue(self.spec, pow(self.value, k, self.spec.p))
        return FieldValue(self.spec, self.value ** k)

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.spec.format_raw(self.value)


def fv_add(a: FieldValue, b: FieldValue) -> FieldValue:
    return a + b


def fv_mul(a: FieldValue, b: FieldValue) -> FieldValue:
    return a * b


def fv_inv(a: FieldValue) -> FieldValue:
    return a.inv()
