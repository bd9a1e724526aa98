"""Exact scalar arithmetic: arbitrary-precision rationals and N ∪ {∞}.

Rationals are gmpy2.mpq values (always in lowest terms, positive
denominator); fractions.Fraction is used as a drop-in fallback when gmpy2
is unavailable.
"""

try:
    from gmpy2 import mpq as Q
    from gmpy2 import mpz as _mpz

    def _num(q):
        return int(q.numerator)

    def _den(q):
        return int(q.denominator)

except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

    def _num(q):
        return q.numerator

    def _den(q):
        return q.denominator

import hashlib
from math import gcd


QZERO = Q(0)
QONE = Q(1)


def stable_seed(*parts):
    """Deterministic integer seed from arbitrary reprable parts.

    Independent of PYTHONHASHSEED, unlike seeding random.Random with tuples.
    """
    blob = repr(parts).encode()
    return int.from_bytes(hashlib.blake2b(blob, digest_size=8).digest(), "big")


def rat(num, den=1):
    """Exact rational num/den."""
    return Q(num, den)


def rat_num(q):
    return _num(q)


def rat_den(q):
    return _den(q)


def rat_gcd(values):
    """Positive rational g with every value an integer multiple of g.

    Used for polynomial contents; gcd of numerators over lcm of denominators.
    """
    num = 0
    den = 1
    for v in values:
        n, d = _num(v), _den(v)
        num = gcd(num, abs(n))
        den = den * d // gcd(den, d)
    if num == 0:
        return QZERO
    return Q(num, den)


def rat_str(q):
    n, d = _num(q), _den(q)
    return str(n) if d == 1 else f"{n}/{d}"


class ExtNat:
    """A nonnegative integer or ∞, with n < ∞ and n + ∞ = ∞."""

    __slots__ = ("value",)

    def __init__(self, value):
        if value is not None and (not isinstance(value, int) or value < 0):
            raise ValueError(f"ExtNat needs a nonnegative int or None for ∞, got {value!r}")
        self.value = value  # None encodes ∞

    @property
    def is_infinite(self):
        return self.value is None

    def __eq__(self, other):
        other = as_extnat(other)
        return self.value == other.value

    def __hash__(self):
        return hash(("ExtNat", self.value))

    def __lt__(self, other):
        other = as_extnat(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __add__(self, other):
        other = as_extnat(other)
        if self.is_infinite or other.is_infinite:
            return INF
        return ExtNat(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other):
        other = as_extnat(other)
        if self.is_infinite or other.is_infinite:
            if self.value == 0 or other.value == 0:
                raise ValueError("0 * ∞ is undefined")
            return INF
        return ExtNat(self.value * other.value)

    __rmul__ = __mul__

    def __int__(self):
        if self.is_infinite:
            raise ValueError("∞ is not an integer")
        return self.value

    def __repr__(self):
        return "∞" if self.is_infinite else str(self.value)

    def to_json(self):
        return "inf" if self.is_infinite else self.value


INF = ExtNat(None)


def as_extnat(v):
    if isinstance(v, ExtNat):
        return v
    if isinstance(v, int):
        return ExtNat(v)
    raise TypeError(f"cannot interpret {v!r} as ExtNat")
