"""Exact arithmetic in q: dense integer polynomials, Laurent polynomials and
power series in t**2 truncated at a fixed order.

Coefficients are Python ints throughout, so nothing here ever rounds.
Large products go through Kronecker substitution (pack both operands into
one big integer, multiply once, unpack), which is much faster than the
schoolbook loop once degrees reach a few dozen.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence

__all__ = [
    "QPoly",
    "QLaurent",
    "TSeries",
    "NotDivisible",
    "OrderMismatch",
    "NonUnitConstantTerm",
    "poly_add",
    "poly_mul",
    "q_integer",
    "mul_q_integer",
    "exact_div_one_minus_q_pow",
    "series_mul",
    "series_invert",
    "series_div",
    "poly_eval_rational",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact division by (1-q)**k leaves a remainder."""


class OrderMismatch(ValueError):
    pass


class NonUnitConstantTerm(ArithmeticError):
    pass


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


# below this length the double loop beats packing into one big integer
_KRONECKER_MIN = 24


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n_out = len(a) + len(b) - 1
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    # one sign bit plus headroom, rounded up to whole bytes
    nbytes = (bound.bit_length() + 2 + 7) // 8
    shift = 8 * nbytes

    def pack(cs: Sequence[int]) -> int:
        if min(cs) >= 0:
            return int.from_bytes(
                b"".join(c.to_bytes(nbytes, "little") for c in cs), "little"
            )
        # signed digits: pack the positive and negative parts separately
        pos = [c if c > 0 else 0 for c in cs]
        neg = [-c if c < 0 else 0 for c in cs]
        return pack(pos) - pack(neg)

    prod = pack(a) * pack(b)
    # bias every digit by half the base so all digits become nonnegative
    half = 1 << (shift - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n_out, "little")
    raw = (prod + bias).to_bytes(nbytes * n_out, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n_out)
    ]


def _mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _schoolbook(a, b)
    return _kronecker(a, b)


class QPoly:
    """Polynomial in q with integer coefficients, stored ascending.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim([int(c) for c in coeffs])
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def _raw(cls, cs: tuple[int, ...]) -> "QPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", cs)
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPoly":
        if k < 0:
            raise ValueError("negative exponent in a QPoly")
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("QPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __neg__(self) -> "QPoly":
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        if len(self.coeffs) == len(other.coeffs):
            return QPoly._raw(_trim(out))
        return QPoly._raw(tuple(out))

    __radd__ = __add__

    def __sub__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            if not other:
                return QPoly._raw(())
            return QPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        return QPoly._raw(_trim(_mul_coeffs(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power of a QPoly")
        result, base = QPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k (k >= 0)."""
        if k < 0:
            raise ValueError("use QLaurent for negative shifts")
        if not self.coeffs:
            return self
        return QPoly._raw((0,) * k + self.coeffs)

    def __call__(self, q0):
        return poly_eval_rational(self, q0)

    def has_nonnegative_coeffs(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list[str]:
        # the zero polynomial is written as ["0"] so that rows never come out empty
        return [str(c) for c in self.coeffs] or ["0"]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "QPoly":
        return cls(int(c) for c in data)


class QLaurent:
    """Laurent polynomial: ``coeffs[i]`` multiplies ``q**(min_exp + i)``."""

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and not cs[lo]:
            lo += 1
        cs = _trim(cs[lo:])
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "min_exp", min_exp + lo if cs else 0)

    def __setattr__(self, name, value):
        raise AttributeError("QLaurent is immutable")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "QLaurent":
        """Build from (exponent, coefficient) pairs; repeated exponents add."""
        terms = list(terms)
        if not terms:
            return cls()
        lo = min(e for e, _ in terms)
        hi = max(e for e, _ in terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms:
            cs[e - lo] += c
        return cls(cs, lo)

    @classmethod
    def from_qpoly(cls, p: QPoly) -> "QLaurent":
        return cls(p.coeffs, 0)

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, e: int) -> int:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            other = QLaurent.from_qpoly(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("QLaurent", self.min_exp, self.coeffs))

    def __repr__(self) -> str:
        return f"QLaurent({list(self.coeffs)}, min_exp={self.min_exp})"

    def __neg__(self) -> "QLaurent":
        return QLaurent([-c for c in self.coeffs], self.min_exp)

    def __add__(self, other) -> "QLaurent":
        if isinstance(other, QPoly):
            other = QLaurent.from_qpoly(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for src in (self, other):
            off = src.min_exp - lo
            for i, c in enumerate(src.coeffs):
                out[off + i] += c
        return QLaurent(out, lo)

    __radd__ = __add__

    def __sub__(self, other) -> "QLaurent":
        return self + (-other)

    def __mul__(self, other) -> "QLaurent":
        if isinstance(other, int):
            return QLaurent([c * other for c in self.coeffs], self.min_exp)
        if isinstance(other, QPoly):
            other = QLaurent.from_qpoly(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return QLaurent(
            _mul_coeffs(self.coeffs, other.coeffs), self.min_exp + other.min_exp
        )

    __rmul__ = __mul__

    def shift(self, k: int) -> "QLaurent":
        """Multiply by q**k; k may be negative."""
        if self.is_zero():
            return self
        return QLaurent(self.coeffs, self.min_exp + k)

    def to_qpoly(self) -> QPoly:
        if self.is_zero():
            return QPoly()
        if self.min_exp < 0:
            raise ValueError(
                f"Laurent polynomial has negative exponent q^{self.min_exp}"
            )
        return QPoly((0,) * self.min_exp + self.coeffs)

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "QLaurent":
        return cls((int(c) for c in data["coeffs"]), int(data["min_exp"]))


class TSeries:
    """Power series in t**2 with QPoly coefficients, kept up to t**(2*order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[QPoly | int], order: int | None = None):
        cs = [c if isinstance(c, QPoly) else QPoly([c]) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = cs[: order + 1] + [QPoly()] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TSeries is immutable")

    @classmethod
    def one(cls, order: int) -> "TSeries":
        return cls([QPoly([1])], order)

    def __getitem__(self, n: int) -> QPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("TSeries", self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"TSeries({[list(c.coeffs) for c in self.coeffs]})"

    def __add__(self, other: "TSeries") -> "TSeries":
        _check_orders(self, other)
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "TSeries") -> "TSeries":
        _check_orders(self, other)
        return TSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other: "TSeries") -> "TSeries":
        return series_mul(self, other)

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coeffs, order)

    def invert(self) -> "TSeries":
        return series_invert(self)


def _check_orders(a: TSeries, b: TSeries) -> None:
    if a.order != b.order:
        raise OrderMismatch(f"series orders differ: {a.order} != {b.order}")


def poly_add(a: QPoly, b: QPoly) -> QPoly:
    return a + b


def poly_mul(a: QPoly, b: QPoly) -> QPoly:
    return a * b


def q_integer(k: int) -> QPoly:
    """[k]_q = 1 + q + ... + q**(k-1); [0]_q = 0."""
    if k < 0:
        raise ValueError("q-integer of a negative number")
    return QPoly._raw((1,) * k)


def mul_q_integer(p: QPoly, k: int) -> QPoly:
    """p * [k]_q as a sliding window sum, O(deg p) instead of O(k deg p)."""
    if k < 0:
        raise ValueError("q-integer of a negative number")
    if not k or not p.coeffs:
        return QPoly._raw(())
    cs = p.coeffs
    n = len(cs) + k - 1
    prefix = list(accumulate(cs + (0,) * (k - 1)))
    out = prefix[:k] + [prefix[j] - prefix[j - k] for j in range(k, n)]
    return QPoly._raw(tuple(out))


def exact_div_one_minus_q_pow(num: QLaurent | QPoly, k: int) -> QLaurent:
    """Divide ``num`` by (1-q)**k, insisting on a zero remainder.

    Each division by 1-q is a running sum from the lowest exponent up; the
    quotient is exact iff the total sum (the value at q=1) vanishes.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(num, QPoly):
        num = QLaurent.from_qpoly(num)
    cs = list(num.coeffs)
    for step in range(k):
        if not cs:
            break
        cs = list(accumulate(cs))
        if cs[-1]:
            raise NotDivisible(
                f"remainder {cs[-1]} after dividing by (1-q) "
                f"{step + 1} of {k} times"
            )
        cs.pop()
    return QLaurent(cs, num.min_exp)


def series_mul(a: TSeries, b: TSeries) -> TSeries:
    _check_orders(a, b)
    order = a.order
    out = [QPoly() for _ in range(order + 1)]
    a_nz = [(i, c) for i, c in enumerate(a.coeffs) if c]
    b_nz = [(j, c) for j, c in enumerate(b.coeffs) if c]
    for i, ai in a_nz:
        for j, bj in b_nz:
            if i + j > order:
                break
            out[i + j] = out[i + j] + ai * bj
    return TSeries(out, order)


def series_invert(a: TSeries) -> TSeries:
    """Inverse of a series whose t**0 coefficient is a unit (1 or -1).

    Uses b_N = -u sum_{k=1..N} a_k b_{N-k} with u = a_0 = 1/a_0, so the
    coefficients stay polynomials.
    """
    u = _unit(a)
    a_nz = [(k, c) for k, c in enumerate(a.coeffs) if k and c]
    b = [QPoly([u])]
    for n in range(1, a.order + 1):
        acc = QPoly()
        for k, ak in a_nz:
            if k > n:
                break
            acc = acc + ak * b[n - k]
        b.append(acc * -u)
    return TSeries(b, a.order)


def _unit(a: TSeries) -> int:
    c = a.coeffs[0]
    if c == QPoly([1]):
        return 1
    if c == QPoly([-1]):
        return -1
    raise NonUnitConstantTerm(f"constant term must be 1 or -1, got {c}")


def series_div(a: TSeries, b: TSeries) -> TSeries:
    """a / b for b with constant term 1 or -1, without forming 1/b.

    Same result as ``series_mul(a, series_invert(b))``; the quotient
    coefficients are usually far smaller than those of 1/b.
    """
    _check_orders(a, b)
    u = _unit(b)
    b_nz = [(k, c) for k, c in enumerate(b.coeffs) if k and c]
    out: list[QPoly] = []
    for n in range(a.order + 1):
        acc = a.coeffs[n]
        for k, bk in b_nz:
            if k > n:
                break
            acc = acc - bk * out[n - k]
        out.append(acc if u == 1 else -acc)
    return TSeries(out, a.order)


def poly_eval_rational(p: QPoly, q0) -> Fraction | int:
    """Exact Horner evaluation at an int or Fraction (floats are converted exactly)."""
    if isinstance(q0, float):
        q0 = Fraction(q0)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * q0 + c
    return acc
