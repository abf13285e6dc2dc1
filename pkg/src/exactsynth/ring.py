"""Exact arithmetic in Z[omega], D[omega] and the residue ring Z_2[omega].

Here omega = exp(i*pi/4). Every element is stored as four integer
coefficients (a, b, c, d) of omega**3, omega**2, omega, 1, so that
``a*w^3 + b*w^2 + c*w + d``. Elements of D[omega] carry an extra
power of sqrt(2) in the denominator and are always kept with the least
such power.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import InsufficientExponent, NotAUnit, NotReducible

IntLike = Union[int, "ZOmega"]


class ZOmega:
    """Element of Z[omega]."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0) -> None:
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("ZOmega is immutable")

    @classmethod
    def from_int(cls, n: int) -> ZOmega:
        return cls(0, 0, 0, n)

    @classmethod
    def omega_power(cls, m: int) -> ZOmega:
        """Return omega**m for any integer m."""
        m %= 8
        sign = -1 if m >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[3 - (m % 4)] = sign
        return cls(*coeffs)

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"ZOmega({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.a == 0 and self.b == 0 and self.c == 0 and self.d == other
        if isinstance(other, ZOmega):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __neg__(self) -> ZOmega:
        return ZOmega(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: IntLike) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.a, self.b, self.c, self.d + other)
        if isinstance(other, ZOmega):
            return ZOmega(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.a, self.b, self.c, self.d - other)
        if isinstance(other, ZOmega):
            return ZOmega(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)
        return NotImplemented

    def __rsub__(self, other: int) -> ZOmega:
        return -self + other

    def __mul__(self, other: IntLike) -> ZOmega:
        if isinstance(other, int):
            return ZOmega(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, ZOmega):
            return NotImplemented
        a, b, c, d = self.coeffs
        e, f, g, h = other.coeffs
        # omega^4 = -1 folds powers 4..6 back with a sign flip
        return ZOmega(
            a * h + b * g + c * f + d * e,
            b * h + c * g + d * f - a * e,
            c * h + d * g - a * f - b * e,
            d * h - a * g - b * f - c * e,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> ZOmega:
        if exponent < 0:
            raise ValueError("negative powers are not defined in Z[omega]")
        result = ZOmega(0, 0, 0, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def mul_omega(self, m: int = 1) -> ZOmega:
        """Multiply by omega**m (a signed rotation of the coefficients)."""
        a, b, c, d = self.coeffs
        for _ in range(m % 8):
            a, b, c, d = b, c, d, -a
        return ZOmega(a, b, c, d)

    def conj(self) -> ZOmega:
        return ZOmega(-self.c, -self.b, -self.a, self.d)

    def norm_sq(self) -> DRoot2:
        """|t|^2 as an element x + y*sqrt(2) of D[sqrt(2)]."""
        a, b, c, d = self.coeffs
        return DRoot2(a * a + b * b + c * c + d * d, c * d + b * c + a * b - d * a)

    def weight_sq(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def mul_sqrt2(self) -> ZOmega:
        # sqrt(2) = omega - omega^3
        a, b, c, d = self.coeffs
        return ZOmega(b - d, c + a, d + b, c - a)

    def div_sqrt2(self) -> ZOmega:
        if not self.residue().is_reducible():
            raise NotReducible(f"{self} is not divisible by sqrt(2)")
        a, b, c, d = self.mul_sqrt2().coeffs
        return ZOmega(a // 2, b // 2, c // 2, d // 2)

    def residue(self) -> Residue:
        return Residue(((self.a & 1) << 3) | ((self.b & 1) << 2) | ((self.c & 1) << 1) | (self.d & 1))

    def galois(self, k: int) -> ZOmega:
        """Image under the automorphism omega -> omega**k, k odd."""
        k %= 8
        if k == 1:
            return self
        if k == 3:
            return ZOmega(self.c, -self.b, self.a, self.d)
        if k == 5:
            return ZOmega(-self.a, self.b, -self.c, self.d)
        if k == 7:
            return self.conj()
        raise ValueError("Galois automorphisms need an odd exponent")

    def field_norm(self) -> int:
        """Product of all four Galois conjugates; an integer."""
        p = self * self.galois(3) * self.galois(5) * self.galois(7)
        return p.d

    def exact_div(self, other: ZOmega) -> ZOmega:
        """Divide in Z[omega]; raises ValueError if the quotient leaves the ring."""
        if not other:
            raise ZeroDivisionError("division by zero in Z[omega]")
        cofactor = other.galois(3) * other.galois(5) * other.galois(7)
        n = (other * cofactor).d
        num = self * cofactor
        q = []
        for x in num.coeffs:
            quot, rem = divmod(x, n)
            if rem:
                raise ValueError(f"{self} is not divisible by {other} in Z[omega]")
            q.append(quot)
        return ZOmega(*q)

    def unit_exponent(self) -> int | None:
        """Return m with self == omega**m, or None."""
        nonzero = [(i, x) for i, x in enumerate(self.coeffs) if x]
        if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
            return None
        pos, val = nonzero[0]
        m = 3 - pos
        return m if val == 1 else m + 4

    def to_complex(self) -> complex:
        w = complex(math.sqrt(0.5), math.sqrt(0.5))
        return self.a * w**3 + self.b * w**2 + self.c * w + self.d


class DRoot2:
    """x + y*sqrt(2) with dyadic rational x, y."""

    __slots__ = ("x", "y")

    def __init__(self, x: Fraction | int = 0, y: Fraction | int = 0) -> None:
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))
        for part in (self.x, self.y):
            den = part.denominator
            if den & (den - 1):
                raise ValueError(f"{part} is not a dyadic fraction")

    def __setattr__(self, name, value):
        raise AttributeError("DRoot2 is immutable")

    def __repr__(self) -> str:
        return f"DRoot2({self.x}, {self.y})"

    def __str__(self) -> str:
        return f"{self.x} + {self.y}*sqrt2"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, DRoot2):
            return self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __add__(self, other: DRoot2) -> DRoot2:
        return DRoot2(self.x + other.x, self.y + other.y)

    def __mul__(self, other: DRoot2) -> DRoot2:
        return DRoot2(self.x * other.x + 2 * self.y * other.y, self.x * other.y + self.y * other.x)

    def div_sqrt2(self) -> DRoot2:
        return DRoot2(self.y, self.x / 2)

    @property
    def dyadic_part(self) -> Fraction:
        return self.x


class Residue:
    """Element of Z_2[omega], stored as a 4-bit int where bit i is the coefficient of omega**i.

    Printed as the string pqrs (p for omega**3, s for 1).
    """

    __slots__ = ("bits",)

    def __init__(self, bits: int | str) -> None:
        if isinstance(bits, str):
            if len(bits) != 4 or set(bits) - {"0", "1"}:
                raise ValueError(f"bad residue literal {bits!r}")
            bits = int(bits, 2)
        object.__setattr__(self, "bits", bits & 0xF)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def __repr__(self) -> str:
        return f"Residue('{self}')"

    def __str__(self) -> str:
        return format(self.bits, "04b")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, str):
            return str(self) == other
        if isinstance(other, Residue):
            return self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __add__(self, other: Residue) -> Residue:
        return Residue(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Residue) -> Residue:
        out = 0
        for i in range(4):
            if self.bits >> i & 1:
                out ^= _rotl(other.bits, i)
        return Residue(out)

    def mul_omega(self, m: int = 1) -> Residue:
        return Residue(_rotl(self.bits, m % 4))

    def conj(self) -> Residue:
        p, q, r, s = (int(ch) for ch in str(self))
        return Residue(f"{r}{q}{p}{s}")

    def mul_sqrt2(self) -> Residue:
        return self * _SQRT2_RES

    def norm(self) -> Residue:
        return self.conj() * self

    def is_reducible(self) -> bool:
        return self.bits in _REDUCIBLE

    def is_twice_reducible(self) -> bool:
        return self.bits == 0

    @staticmethod
    def all() -> list[Residue]:
        return [Residue(i) for i in range(16)]


def _rotl(bits: int, n: int) -> int:
    n %= 4
    return ((bits << n) | (bits >> (4 - n))) & 0xF


_SQRT2_RES = Residue("1010")
_REDUCIBLE = frozenset(int(s, 2) for s in ("0000", "0101", "1010", "1111"))


class DOmega:
    """Element num / sqrt(2)**k of D[omega], kept with the least k."""

    __slots__ = ("num", "k")

    def __init__(self, num: ZOmega | int, k: int = 0) -> None:
        if isinstance(num, int):
            num = ZOmega.from_int(num)
        if k < 0:
            raise ValueError("denominator exponent must be non-negative")
        while k > 0 and num.residue().is_reducible():
            num = num.div_sqrt2()
            k -= 1
        if not num:
            k = 0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("DOmega is immutable")

    @classmethod
    def from_tuple(cls, t: Iterable[int]) -> DOmega:
        a, b, c, d, k = t
        if k < 0:
            return cls(_scale_sqrt2(ZOmega(a, b, c, d), -k), 0)
        return cls(ZOmega(a, b, c, d), k)

    @classmethod
    def omega_power(cls, m: int) -> DOmega:
        return cls(ZOmega.omega_power(m), 0)

    def __repr__(self) -> str:
        return f"DOmega({self.num!r}, {self.k})"

    def __str__(self) -> str:
        return f"{self.num}/√2^{self.k}"

    def to_tuple(self) -> tuple[int, int, int, int, int]:
        return (*self.num.coeffs, self.k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.k == 0 and self.num == other
        if isinstance(other, ZOmega):
            return self.k == 0 and self.num == other
        if isinstance(other, DOmega):
            return self.k == other.k and self.num == other.num
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.k))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __neg__(self) -> DOmega:
        return _raw(-self.num, self.k)

    def __add__(self, other: DOmega | int) -> DOmega:
        if isinstance(other, int):
            other = DOmega(other)
        if not isinstance(other, DOmega):
            return NotImplemented
        k = max(self.k, other.k)
        return DOmega(self.scaled_num(k) + other.scaled_num(k), k)

    __radd__ = __add__

    def __sub__(self, other: DOmega | int) -> DOmega:
        if isinstance(other, int):
            other = DOmega(other)
        if not isinstance(other, DOmega):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> DOmega:
        return -self + other

    def __mul__(self, other: DOmega | ZOmega | int) -> DOmega:
        if isinstance(other, (int, ZOmega)):
            return DOmega(self.num * other, self.k)
        if not isinstance(other, DOmega):
            return NotImplemented
        return DOmega(self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def mul_omega(self, m: int = 1) -> DOmega:
        return _raw(self.num.mul_omega(m), self.k)

    def conj(self) -> DOmega:
        return _raw(self.num.conj(), self.k)

    def mul_sqrt2(self) -> DOmega:
        if self.k:
            return _raw(self.num, self.k - 1)
        return _raw(self.num.mul_sqrt2(), 0)

    def div_sqrt2(self) -> DOmega:
        return DOmega(self.num, self.k + 1)

    def scaled_num(self, k: int) -> ZOmega:
        """sqrt(2)**k * self, which must lie in Z[omega]."""
        if k < self.k:
            raise InsufficientExponent(f"{k} is not a denominator exponent for {self}")
        return _scale_sqrt2(self.num, k - self.k)

    def k_residue(self, k: int) -> Residue:
        if k < self.k:
            raise InsufficientExponent(f"{k} is not a denominator exponent for {self}")
        if k - self.k >= 2:
            return Residue(0)
        return self.scaled_num(k).residue()

    def norm_sq(self) -> DRoot2:
        n = self.num.norm_sq()
        scale = Fraction(1, 2**self.k)
        return DRoot2(n.x * scale, n.y * scale)

    def weight_sq(self) -> Fraction:
        """Sum of squares of the dyadic coordinates of self."""
        half, odd = divmod(self.k, 2)
        num = self.num.mul_sqrt2() if odd else self.num
        return Fraction(num.weight_sq(), 4 ** (half + odd))

    def unit_exponent(self) -> int | None:
        return self.num.unit_exponent() if self.k == 0 else None

    def to_complex(self) -> complex:
        return self.num.to_complex() / math.sqrt(2) ** self.k


def _raw(num: ZOmega, k: int) -> DOmega:
    # skip canonicalization for operations that preserve it
    obj = object.__new__(DOmega)
    object.__setattr__(obj, "num", num)
    object.__setattr__(obj, "k", k)
    return obj


def _scale_sqrt2(num: ZOmega, e: int) -> ZOmega:
    half, odd = divmod(e, 2)
    if half:
        num = num * (1 << half)
    return num.mul_sqrt2() if odd else num


def canonicalize(num: ZOmega, k: int) -> DOmega:
    return DOmega(num, k)


def omega_exponent(x: DOmega | ZOmega) -> int:
    m = x.unit_exponent()
    if m is None:
        raise NotAUnit(f"{x} is not a power of omega")
    return m


ZERO = DOmega(0)
ONE = DOmega(1)
OMEGA = DOmega.omega_power(1)
I = DOmega.omega_power(2)
INV_SQRT2 = DOmega(1, 1)
