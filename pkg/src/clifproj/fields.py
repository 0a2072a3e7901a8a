"""Exact arithmetic in the supported coefficient fields.

Three kinds of field are available: the prime fields GF(p) for primes
2 <= p <= 13, the four-element field GF(4), and the rational numbers
(backed by :class:`fractions.Fraction`).  GF(4) is realised as
GF(2)[w]/(w^2 + w + 1); its elements are encoded as the integers 0..3 with
bit 0 the constant coefficient and bit 1 the coefficient of w.

Field objects are interned singletons, and so are the scalars of the finite
fields, which keeps arithmetic in tight loops allocation-free.  All values
are immutable.

The textual field syntax used by scenario files and the CLI is ``gf(2)``,
``gf(3)``, ..., ``gf(13)``, ``gf(4)`` and ``q`` for the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .config import MAX_PRIME


class MixedFields(ValueError):
    """Two scalars from different fields met in one operation."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero scalar."""


class InfiniteField(ValueError):
    """An enumeration was requested over the rationals."""


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


class Scalar:
    """Immutable element of a field; supports +, -, *, /, ** and negation."""

    __slots__ = ("field", "value", "_hash")

    def __init__(self, field, value):
        self.field = field
        self.value = value
        self._hash = hash((field.tag, value))

    def __add__(self, other):
        other = self.field.coerce(other)
        return self.field.scalar(self.field._add(self.value, other.value))

    def __sub__(self, other):
        other = self.field.coerce(other)
        return self.field.scalar(self.field._sub(self.value, other.value))

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field.scalar(self.field._mul(self.value, other.value))

    def __truediv__(self, other):
        other = self.field.coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero in %s" % self.field)
        return self.field.scalar(self.field._div(self.value, other.value))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __neg__(self):
        return self.field.scalar(self.field._neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        out = self.field.one
        for _ in range(n):
            out = out * base
        return out

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in %s" % self.field)
        return self.field.scalar(self.field._inv(self.value))

    def is_zero(self):
        return self.value == self.field.zero_raw

    def is_one(self):
        return self.value == self.field.one_raw

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return self.value

    def __str__(self):
        return self.field.format_scalar(self.value)

    def __repr__(self):
        return "%s[%s]" % (self.field, self)


class Field:
    """Common interface of the supported fields; use gf()/rationals() to get one."""

    kind = None
    tag = None
    characteristic = None
    order = None  # None for infinite fields

    def __init__(self):
        self.zero_raw = self._zero_raw()
        self.one_raw = self._one_raw()
        if self.order is not None:
            self._interned = tuple(Scalar(self, v) for v in self._raw_elements())
            self._index = {s.value: s for s in self._interned}
        self.zero = self.scalar(self.zero_raw)
        self.one = self.scalar(self.one_raw)

    # -- raw-value arithmetic supplied by subclasses -----------------------
    def _zero_raw(self):
        raise NotImplementedError

    def _one_raw(self):
        raise NotImplementedError

    def _raw_elements(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _div(self, a, b):
        return self._mul(a, self._inv(b))

    def _neg(self, a):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _sqrt(self, a):
        raise NotImplementedError

    def _from_int(self, n):
        raise NotImplementedError

    # -- public surface -----------------------------------------------------
    @property
    def is_finite(self):
        return self.order is not None

    def scalar(self, raw):
        if self.order is not None:
            return self._index[raw]
        return Scalar(self, raw)

    def from_int(self, n):
        return self.scalar(self._from_int(n))

    def coerce(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise MixedFields("cannot mix %s and %s" % (x.field, self))
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse_scalar(x)
        raise TypeError("cannot coerce %r into %s" % (x, self))

    def elements(self):
        """All field elements, each exactly once; 0 first, then 1."""
        if self.order is None:
            raise InfiniteField("cannot enumerate %s" % self)
        return self._interned

    def units(self):
        return tuple(s for s in self.elements() if not s.is_zero())

    def square_root(self, a):
        """Some r with r*r == a, or None; the choice is deterministic."""
        a = self.coerce(a)
        raw = self._sqrt(a.value)
        return None if raw is None else self.scalar(raw)

    def parse_scalar(self, text):
        raise NotImplementedError

    def format_scalar(self, raw):
        raise NotImplementedError

    def __str__(self):
        return self.tag

    __repr__ = __str__


class PrimeField(Field):
    kind = "prime-field"

    def __init__(self, p):
        if p not in _SMALL_PRIMES or p > MAX_PRIME:
            raise ValueError("prime modulus must be one of %s" % (_SMALL_PRIMES,))
        self.p = p
        self.tag = "gf(%d)" % p
        self.characteristic = p
        self.order = p
        # first element ordering with a matching square gives the canonical root
        self._sqrt_table = {}
        for r in range(p):
            self._sqrt_table.setdefault(r * r % p, r)
        super().__init__()

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1

    def _raw_elements(self):
        return range(self.p)

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _sqrt(self, a):
        return self._sqrt_table.get(a)

    def _from_int(self, n):
        return n % self.p

    def parse_scalar(self, text):
        return self.from_int(int(text))

    def format_scalar(self, raw):
        return str(raw)


_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),  # w*w = w+1, w*(w+1) = 1
    (0, 3, 1, 2),
)
_GF4_INV = (None, 1, 3, 2)
_GF4_NAMES = ("0", "1", "w", "w+1")


class GF4(Field):
    kind = "gf4"
    tag = "gf(4)"
    characteristic = 2
    order = 4

    def _zero_raw(self):
        return 0

    def _one_raw(self):
        return 1

    def _raw_elements(self):
        return range(4)

    def _add(self, a, b):
        return a ^ b

    _sub = _add

    def _mul(self, a, b):
        return _GF4_MUL[a][b]

    def _neg(self, a):
        return a

    def _inv(self, a):
        return _GF4_INV[a]

    def _sqrt(self, a):
        # squaring is the Frobenius automorphism, hence its own inverse
        return _GF4_MUL[a][a]

    def _from_int(self, n):
        return n % 2

    def parse_scalar(self, text):
        text = text.strip()
        aliases = {"0": 0, "1": 1, "w": 2, "w+1": 3, "1+w": 3}
        if text in aliases:
            return self.scalar(aliases[text])
        return self.from_int(int(text))

    def format_scalar(self, raw):
        return _GF4_NAMES[raw]


class Rationals(Field):
    kind = "rationals"
    tag = "q"
    characteristic = 0
    order = None

    def _zero_raw(self):
        return Fraction(0)

    def _one_raw(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _div(self, a, b):
        return a / b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _sqrt(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn != n or rd * rd != d:
            return None
        return Fraction(rn, rd)

    def _from_int(self, n):
        return Fraction(n)

    def parse_scalar(self, text):
        return self.scalar(Fraction(text))

    def format_scalar(self, raw):
        return str(raw)


_FIELDS = {}


def gf(n):
    """The finite field with n elements (n a small prime, or 4)."""
    f = _FIELDS.get(n)
    if f is None:
        f = GF4() if n == 4 else PrimeField(n)
        _FIELDS[n] = f
    return f


_QQ = None


def rationals():
    global _QQ
    if _QQ is None:
        _QQ = Rationals()
    return _QQ


def parse_field(text):
    """Parse a field descriptor string: gf(2), ..., gf(13), gf(4) or q."""
    text = text.strip().lower()
    if text in ("q", "rationals"):
        return rationals()
    if text.startswith("gf(") and text.endswith(")"):
        body = text[3:-1]
        try:
            n = int(body)
        except ValueError:
            raise ValueError("bad field order %r" % body) from None
        if n == 4 or n in _SMALL_PRIMES:
            return gf(n)
        raise ValueError("unsupported field order %d (prime <= %d, or 4)" % (n, MAX_PRIME))
    raise ValueError("bad field descriptor %r" % text)


def characteristic(field):
    return field.characteristic


def enumerate_field(field):
    return field.elements()


def square_root(a):
    return a.field.square_root(a)


def field_arithmetic(a, b, op):
    """Dispatch one of add/sub/mul/div on two scalars of the same field."""
    if isinstance(a, Scalar) and isinstance(b, Scalar) and a.field is not b.field:
        raise MixedFields("cannot mix %s and %s" % (a.field, b.field))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown operation %r" % op)
