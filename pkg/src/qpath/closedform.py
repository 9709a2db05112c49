"""q-tangent and q-secant polynomials from their explicit double sums.

    [t^2N] G  = (1-q)^-(2N+1) * sum_{m=0..N} q^(m^2+2m) L_m(q)
                  * (2N+1)! (2m+2) / ((N-m)! (N+m+2)!)
    [t^2N] G' = (1-q)^-(2N)   * sum_{m=0..N} q^(m^2+m) L'_m(q)
                  * (2N)! (2m+1) / ((N-m)! (N+m+1)!)

with L_m = sum_{l=-m..m+1} (-1)^l q^(2l-l^2) and L'_m = sum_{l=-m..m} (-1)^l q^(-l^2).
The numerator is assembled as an exact Laurent polynomial and divided by the
power of (1-q); a nonzero remainder means the formula was transcribed wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .pathcount import Policy
from .qalg import QLaurent, QPoly, exact_div_one_minus_q_pow

__all__ = [
    "NonIntegerTerm",
    "EulerPolyResult",
    "tangent_numerator",
    "secant_numerator",
    "q_tangent_poly",
    "q_secant_poly",
    "q_euler_poly",
    "euler_number",
    "euler_poly",
]


class NonIntegerTerm(ArithmeticError):
    pass


@dataclass(frozen=True)
class EulerPolyResult:
    N: int
    family: Policy
    poly: QPoly
    method: str

    @property
    def value_at_one(self) -> int:
        return sum(self.poly.coeffs)


def _ballot(top: int, n: int, m: int, extra: int, weight: int) -> int:
    """weight * C(top, N+m+extra-1) / (N+m+extra), asserted to be an integer."""
    num = weight * comb(top, n + m + extra - 1)
    den = n + m + extra
    q, r = divmod(num, den)
    if r:
        raise NonIntegerTerm(
            f"{weight}*C({top},{n + m + extra - 1})/{den} is not an integer "
            f"(N={n}, m={m})"
        )
    return q


def _inner_tangent(m: int) -> QLaurent:
    return QLaurent.from_terms(
        ((2 * l - l * l), (-1) ** (l & 1)) for l in range(-m, m + 2)
    )


def _inner_secant(m: int) -> QLaurent:
    return QLaurent.from_terms((-l * l, (-1) ** (l & 1)) for l in range(-m, m + 1))


def tangent_numerator(n: int) -> QLaurent:
    """The double sum before division by (1-q)**(2n+1)."""
    if n < 0:
        raise ValueError("N must be nonnegative")
    total = QLaurent()
    for m in range(n + 1):
        c = _ballot(2 * n + 1, n, m, 2, 2 * m + 2)
        total = total + _inner_tangent(m).shift(m * m + 2 * m) * c
    return total


def secant_numerator(n: int) -> QLaurent:
    """The double sum before division by (1-q)**(2n)."""
    if n < 0:
        raise ValueError("N must be nonnegative")
    total = QLaurent()
    for m in range(n + 1):
        c = _ballot(2 * n, n, m, 1, 2 * m + 1)
        total = total + _inner_secant(m).shift(m * m + m) * c
    return total


def _finish(num: QLaurent, k: int, what: str) -> QPoly:
    if not num.is_zero() and num.min_exp < 0:
        raise ValueError(f"{what}: numerator has a negative power q^{num.min_exp}")
    quotient = exact_div_one_minus_q_pow(num, k)
    return quotient.to_qpoly()


@lru_cache(maxsize=None)
def q_tangent_poly(n: int) -> QPoly:
    """E_{2n+1}(q), the coefficient of t**(2n) in the unrestricted G."""
    return _finish(tangent_numerator(n), 2 * n + 1, f"tangent N={n}")


@lru_cache(maxsize=None)
def q_secant_poly(n: int) -> QPoly:
    """E_{2n}(q), the coefficient of t**(2n) in the unrestricted G'."""
    return _finish(secant_numerator(n), 2 * n, f"secant N={n}")


def q_euler_poly(n: int, family: Policy | str) -> QPoly:
    if Policy.parse(family) is Policy.TANGENT:
        return q_tangent_poly(n)
    return q_secant_poly(n)


def euler_number(n: int, family: Policy | str) -> int:
    """E_{2n+1} for the tangent family, E_{2n} for the secant family."""
    return sum(q_euler_poly(n, family).coeffs)


def euler_poly(n: int, family: Policy | str, method: str = "closed") -> EulerPolyResult:
    """Unrestricted coefficient polynomial by one of three routes.

    ``closed`` uses the double sums above, ``dp`` the transfer matrix and
    ``cf`` the depth-n convergent (depth n suffices: a path of half-length
    n never rises above n).
    """
    from .contfrac import cf_series
    from .pathcount import dp_series

    family = Policy.parse(family)
    if n < 0:
        raise ValueError("N must be nonnegative")
    if method == "closed":
        poly = q_euler_poly(n, family)
    elif method == "dp":
        poly = dp_series(n, None, family)[n]
    elif method == "cf":
        poly = cf_series(n, family, n)[n]
    else:
        raise ValueError(f"unknown method {method!r}")
    return EulerPolyResult(n, family, poly, method)
