"""Finite continued fractions for the slit generating functions.

With alpha = t/(1-q) the level-k partial numerator alpha**2 (1-q**k)(1-q**(k+1))
equals t**2 [k]_q [k+1]_q, and alpha**2 (1-q**k)**2 equals t**2 [k]_q**2.
Working in t keeps every convergent a polynomial in t**2 with integer
polynomial coefficients, so no rational functions of q ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pathcount import Policy
from .qalg import QPoly, TSeries, poly_eval_rational, q_integer, series_div

__all__ = [
    "PoleAtPoint",
    "ConvergentPair",
    "level_weight",
    "convergents",
    "cf_series",
    "cf_eval_exact",
]


class PoleAtPoint(ZeroDivisionError):
    pass


def level_weight(k: int, policy: Policy | str) -> QPoly:
    """Coefficient of t**2 in the level-k partial numerator."""
    if k < 1:
        raise ValueError("levels start at 1")
    policy = Policy.parse(policy)
    if policy is Policy.TANGENT:
        return q_integer(k) * q_integer(k + 1)
    return q_integer(k) * q_integer(k)


def _poly_t2_combine(x1: list[QPoly], x2: list[QPoly], c: QPoly) -> list[QPoly]:
    """x1 - t**2 * c * x2 for polynomials in t**2 (lists indexed by power of t**2)."""
    n = max(len(x1), len(x2) + 1)
    out = list(x1) + [QPoly()] * (n - len(x1))
    for i, p in enumerate(x2):
        if p:
            out[i + 1] = out[i + 1] - c * p
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


@dataclass(frozen=True)
class ConvergentPair:
    """Numerator and denominator of the depth-w convergent.

    ``P[i]`` and ``Q[i]`` are the coefficients of t**(2i).
    """

    P: tuple[QPoly, ...]
    Q: tuple[QPoly, ...]
    width: int
    family: Policy

    def as_series(self, order: int) -> tuple[TSeries, TSeries]:
        return TSeries(self.P, order), TSeries(self.Q, order)

    def evaluate(self, t0, q0) -> tuple[Fraction, Fraction]:
        t2 = Fraction(t0) ** 2
        q0 = Fraction(q0)

        def ev(cs):
            acc = Fraction(0)
            for p in reversed(cs):
                acc = acc * t2 + poly_eval_rational(p, q0)
            return acc

        return ev(self.P), ev(self.Q)


def convergents(w: int, policy: Policy | str) -> ConvergentPair:
    """P_w, Q_w from X_w = X_{w-1} - t**2 level_weight(w) X_{w-2}.

    Starts from P_{-1}=0, P_0=1, Q_{-1}=1, Q_0=1.
    """
    if w < -1:
        raise ValueError("depth must be >= -1")
    policy = Policy.parse(policy)
    if w == -1:
        return ConvergentPair((QPoly(),), (QPoly([1]),), w, policy)
    p_prev, p_cur = [QPoly()], [QPoly([1])]
    q_prev, q_cur = [QPoly([1])], [QPoly([1])]
    for k in range(1, w + 1):
        c = level_weight(k, policy)
        p_prev, p_cur = p_cur, _poly_t2_combine(p_cur, p_prev, c)
        q_prev, q_cur = q_cur, _poly_t2_combine(q_cur, q_prev, c)
    return ConvergentPair(tuple(p_cur), tuple(q_cur), w, policy)


def cf_series(w: int, policy: Policy | str, order: int) -> TSeries:
    """Expansion of P_w/Q_w up to t**(2*order).

    Equal to ``P * Q.invert()``, computed by direct division.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    P, Q = convergents(w, policy).as_series(order)
    return series_div(P, Q)


def cf_eval_exact(w: int, policy: Policy | str, t0, q0) -> Fraction:
    """P_w(t0,q0)/Q_w(t0,q0) in exact rationals (floats are taken at face value)."""
    num, den = convergents(w, policy).evaluate(t0, q0)
    if not den:
        raise PoleAtPoint(f"Q_{w} vanishes at t={t0}, q={q0}")
    return num / den
