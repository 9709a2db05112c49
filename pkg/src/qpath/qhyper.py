"""Numeric evaluation of the basic hypergeometric closed forms.

The building blocks are

    phi(lam, x) = sum_k (-lam^2; q^2)_k x^k / ((q;q)_k (lam^2 q;q)_k)
    psi(lam, x) = sum_k (-lam^2 q; q^2)_k x^k / ((q;q)_k (lam^2 q;q)_k)

which are 2phi1(i lam, -i lam; lam^2 q; q, x) and its sqrt(q)-shifted
sibling written with real numerators.  ``lam`` is the small root of
lam^2 - lam (1-q)/t + 1 = 0 and ``lam_bar = 1/lam``.

The slit formulas combine series at lam and at lam_bar whose products cancel
by many orders of magnitude when q is close to 1 (the bracket vanishes
identically at w = 0).  Those brackets are therefore evaluated with
``decimal`` at a working precision that is raised until the measured
cancellation leaves at least ``_GOOD_DIGITS`` significant digits.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from decimal import Decimal, localcontext
from functools import lru_cache
from typing import Callable

__all__ = [
    "QHyperError",
    "ComplexRootRegion",
    "NoConvergence",
    "DenominatorNearZero",
    "ImaginaryResidue",
    "DomainViolation",
    "EvalContext",
    "IdentityReport",
    "default_max_terms",
    "in_real_root_region",
    "lambda_root",
    "phi",
    "psi",
    "series_with_tail",
    "qpochhammer",
    "qpochhammer_inf",
    "hyper2phi1",
    "slit_brackets",
    "G_w_closed",
    "Gp_w_closed",
    "G_inf_closed",
    "Gp_inf_closed",
    "G_inf_raw",
    "Gp_inf_raw",
    "rect_lhs",
    "rect_rhs",
    "rect_double_sum",
    "rect_identity_check",
    "heine_sides",
    "heine_check",
    "identities_w1_check",
    "merge_reports",
]

DEFAULT_TERM_TOL = 1e-12
DEFAULT_IDENTITY_TOL = 1e-9
# truncation tails are pushed this far below the requested term tolerance
_TAIL_MARGIN = 1e-3
_DEFAULT_MAX_TERMS = 20000

# working precision for the cancelling brackets
_START_DIGITS = 34
_GOOD_DIGITS = 20
_MAX_DIGITS = 400


class QHyperError(ArithmeticError):
    pass


class ComplexRootRegion(QHyperError, ValueError):
    """(1-q)^2 <= 4 t^2: the characteristic roots are not real."""


class NoConvergence(QHyperError):
    pass


class DenominatorNearZero(QHyperError):
    pass


class ImaginaryResidue(QHyperError):
    pass


class DomainViolation(QHyperError, ValueError):
    pass


def default_max_terms() -> int:
    raw = os.environ.get("QPATH_MAX_TERMS")
    if raw is None:
        return _DEFAULT_MAX_TERMS
    n = int(raw)
    if n <= 0:
        raise ValueError("QPATH_MAX_TERMS must be positive")
    return n


def in_real_root_region(t: float, q: float) -> bool:
    return t != 0 and 0 < q < 1 and (1 - q) ** 2 - 4 * t * t > 0


def _check_region(t: float, q: float) -> None:
    if not 0 < q < 1:
        raise DomainViolation(f"q={q} must lie in (0, 1)")
    if t == 0:
        raise DomainViolation("t must be nonzero")
    if (1 - q) ** 2 - 4 * t * t <= 0:
        raise ComplexRootRegion(
            f"(1-q)^2 - 4t^2 = {(1 - q) ** 2 - 4 * t * t:.3g} <= 0 at t={t}, q={q}"
        )


def lambda_root(t: float, q: float) -> float:
    """Root of lam^2 - lam (1-q)/t + 1 = 0 with |lam| < 1.

    The large root is taken from the cancellation-free branch of the
    quadratic formula; the small one is its reciprocal.
    """
    _check_region(t, q)
    b = (1 - q) / t
    big = (b + math.copysign(math.sqrt(b * b - 4), b)) / 2
    return 1 / big


@dataclass(frozen=True)
class EvalContext:
    t: float
    q: float
    lam: float
    lam_bar: float
    tol: float = DEFAULT_TERM_TOL
    max_terms: int = field(default_factory=default_max_terms)

    @classmethod
    def at(
        cls,
        t: float,
        q: float,
        tol: float = DEFAULT_TERM_TOL,
        max_terms: int | None = None,
    ) -> "EvalContext":
        if tol <= 0:
            raise ValueError("tol must be positive")
        lam = lambda_root(t, q)
        return cls(
            t, q, lam, 1 / lam, tol,
            default_max_terms() if max_terms is None else max_terms,
        )

    def check(self) -> None:
        _check_region(self.t, self.q)
        if abs(self.lam * self.lam_bar - 1) > 1e-14:
            raise ValueError("lam * lam_bar must be 1")
        if abs(self.lam) >= 1:
            raise ValueError("lam must be the small root")


def _context(t: float, q: float, ctx: EvalContext | None) -> EvalContext:
    if ctx is None:
        return EvalContext.at(t, q)
    if (ctx.t, ctx.q) != (t, q):
        return EvalContext.at(t, q, ctx.tol, ctx.max_terms)
    return ctx


# ---------------------------------------------------------------- float series


@dataclass(frozen=True)
class _SeriesResult:
    value: float
    last_term: float
    last_ratio: float
    terms: int


def _real_series(
    lam2: float, shift: float, x: float, q: float, tol: float, max_terms: int
) -> _SeriesResult:
    """sum_k prod_{j<k} (1 + lam2*shift*q^2j) x / ((1-q^(j+1)) (1-lam2 q^(j+1)))."""
    if not abs(x) < 1:
        raise DomainViolation(f"|x|={abs(x)} must be < 1")
    terms = [1.0]
    term = running = 1.0
    ratio = 0.0
    qj1, q2j = q, 1.0
    for k in range(max_terms):
        den = (1 - qj1) * (1 - lam2 * qj1)
        if den == 0:
            raise DenominatorNearZero(f"(lam^2 q;q)_k vanishes at k={k + 1}")
        ratio = (1 + lam2 * shift * q2j) * x / den
        term *= ratio
        terms.append(term)
        running += term
        # lam^2 q^(j+1) < 1/2 means every later ratio is smaller in modulus
        settled = lam2 * qj1 < 0.5 and abs(ratio) < 1
        # the dropped tail is at most |term| r/(1-r); keep it well below tol
        tail = abs(term) * abs(ratio) / (1 - abs(ratio)) if settled else math.inf
        if tail <= _TAIL_MARGIN * tol * max(1.0, abs(running)):
            return _SeriesResult(math.fsum(terms), term, ratio, k + 2)
        qj1 *= q
        q2j *= q * q
    raise NoConvergence(
        f"series did not settle in {max_terms} terms (last term {term:.3g})"
    )


def phi(lam: float, x: float, ctx: EvalContext) -> float:
    return _real_series(lam * lam, 1.0, x, ctx.q, ctx.tol, ctx.max_terms).value


def psi(lam: float, x: float, ctx: EvalContext) -> float:
    return _real_series(lam * lam, ctx.q, x, ctx.q, ctx.tol, ctx.max_terms).value


def series_with_tail(
    kind: str, lam: float, x: float, ctx: EvalContext
) -> tuple[float, float]:
    """Partial sum of phi or psi and the geometric bound on what was dropped.

    Once past the resonance region the term ratios decrease monotonically,
    so the tail is bounded by ``|last| r / (1 - r)`` with r the last ratio.
    """
    shift = 1.0 if kind == "phi" else ctx.q
    res = _real_series(lam * lam, shift, x, ctx.q, ctx.tol, ctx.max_terms)
    r = abs(res.last_ratio)
    return res.value, abs(res.last_term) * r / (1 - r)


def qpochhammer(a: complex, q: float, n: int) -> complex:
    out = 1.0
    for k in range(n):
        out *= 1 - a * q**k
    return out


def qpochhammer_inf(a: complex, q: float, tol: float = 1e-17, max_terms: int | None = None) -> complex:
    """(a;q)_inf, stopping once the factors are within ``tol`` of 1."""
    if not abs(q) < 1:
        raise DomainViolation("|q| must be < 1")
    max_terms = default_max_terms() if max_terms is None else max_terms
    out, aq = 1.0, a
    for _ in range(max_terms):
        out *= 1 - aq
        if abs(aq) < tol:
            return out
        aq *= q
    raise NoConvergence("infinite q-Pochhammer product did not settle")


def hyper2phi1(
    a: complex, b: complex, c: complex, q: float, z: complex,
    tol: float = DEFAULT_TERM_TOL, max_terms: int | None = None,
) -> complex:
    """Direct sum of 2phi1(a, b; c; q, z) for |z| < 1."""
    if not abs(z) < 1:
        raise DomainViolation(f"|z|={abs(z)} must be < 1")
    max_terms = default_max_terms() if max_terms is None else max_terms
    terms = [1.0]
    term = running = 1.0
    aq, bq, cq, qq = a, b, c, q
    for k in range(max_terms):
        den = (1 - cq) * (1 - qq)
        if den == 0:
            raise DenominatorNearZero(f"(c;q)_k vanishes at k={k + 1}")
        ratio = (1 - aq) * (1 - bq) * z / den
        term *= ratio
        terms.append(term)
        running += term
        if abs(term) <= tol * 1e-4 * max(1.0, abs(running)) and abs(cq) < 0.5:
            break
        aq, bq, cq, qq = aq * q, bq * q, cq * q, qq * q
    else:
        raise NoConvergence(f"2phi1 did not settle in {max_terms} terms")
    if all(isinstance(v, float) for v in terms):
        return math.fsum(terms)
    return complex(
        math.fsum(v.real for v in terms), math.fsum(v.imag for v in terms)
    )


# -------------------------------------------------------- extended precision


def _dec_lambda(t: float, q: float) -> Decimal:
    dt, dq = Decimal(t), Decimal(q)
    b = (1 - dq) / dt
    root = (b * b - 4).sqrt()
    big = (b + root) / 2 if b > 0 else (b - root) / 2
    return 1 / big


@lru_cache(maxsize=4096)
def _dec_series(
    lam2: Decimal, shift: Decimal, x: Decimal, q: Decimal, prec: int, max_terms: int
) -> tuple[Decimal, Decimal]:
    """Same series as ``_real_series`` in decimal; returns (sum, largest |term|).

    Runs in whatever decimal context is active; ``prec`` only sets the
    cutoff and keys the cache.
    """
    one = Decimal(1)
    half = Decimal("0.5")
    floor = Decimal(10) ** (-prec - 3)
    s = term = big = one
    qj1, q2j = q, one
    for k in range(max_terms):
        den = (one - qj1) * (one - lam2 * qj1)
        if not den:
            raise DenominatorNearZero(f"(lam^2 q;q)_k vanishes at k={k + 1}")
        term = term * (one + lam2 * shift * q2j) * x / den
        s += term
        a = abs(term)
        if a > big:
            big = a
        if lam2 * qj1 < half and a <= big * floor:
            return s, big
        qj1 *= q
        q2j *= q * q
    raise NoConvergence(f"series did not settle in {max_terms} terms")


def _digits_lost(parts: list[Decimal], total: Decimal) -> float:
    scale = sum(abs(p) for p in parts)
    if not scale:
        return 0.0
    if not total:
        return math.inf
    return max(0.0, float((scale / abs(total)).log10()))


@dataclass(frozen=True)
class _Brackets:
    lam2: Decimal
    num: Decimal
    den: Decimal
    digits: int
    lost: float


def _brackets_at(family: str, t: float, q: float, w: int, prec: int, max_terms: int) -> _Brackets:
    a, b = (3, 2) if family == "tangent" else (2, 1)
    dq = Decimal(q)
    shift = Decimal(1) if family == "tangent" else dq
    lam = _dec_lambda(t, q)
    l2 = lam * lam
    lb2 = 1 / l2

    def f(lsq: Decimal, power: int) -> tuple[Decimal, float]:
        val, big = _dec_series(lsq, shift, dq**power, dq, prec, max_terms)
        return val, _digits_lost([big], val)

    s_a, la1 = f(l2, a)
    sb_a, la2 = f(lb2, a)
    s_b, lb1 = f(l2, b)
    sb_b, lb2_ = f(lb2, b)
    s_w, lw1 = f(l2, w + a)
    sb_w, lw2 = f(lb2, w + a)
    series_lost = max(la1, la2, lb1, lb2_, lw1, lw2)

    l2w = l2**w
    n1, n2 = s_a * sb_w, l2w * sb_a * s_w
    d1, d2 = s_b * sb_w, l2w * l2 * sb_b * s_w
    num, den = n1 - n2, d1 - d2
    lost = series_lost + max(_digits_lost([n1, n2], num), _digits_lost([d1, d2], den))
    return _Brackets(l2, num, den, prec, lost)


def slit_brackets(
    family: str, t: float, q: float, w: int, ctx: EvalContext | None = None
) -> _Brackets:
    """Numerator and denominator brackets of the slit formula, rescaled by lam^w.

    tangent:  N = phi(l,q^3) phi(lb,q^(w+3)) - l^(2w) phi(lb,q^3) phi(l,q^(w+3))
              D = phi(l,q^2) phi(lb,q^(w+3)) - l^(2w+2) phi(lb,q^2) phi(l,q^(w+3))
    secant:   the same with psi and q^3, q^2 replaced by q^2, q.
    Precision is raised until at least ``_GOOD_DIGITS`` digits survive.
    """
    if family not in ("tangent", "secant"):
        raise ValueError(f"unknown family {family!r}")
    if w < 1:
        raise ValueError("brackets are only meaningful for w >= 1")
    ctx = _context(t, q, ctx)
    prec = _START_DIGITS
    while True:
        with localcontext() as dc:
            dc.prec = prec + 10
            br = _brackets_at(family, t, q, w, prec, ctx.max_terms)
        if prec - br.lost >= _GOOD_DIGITS:
            return br
        if br.den == 0 or math.isinf(br.lost):
            if br.num == 0:
                raise DenominatorNearZero("both brackets vanish")
        if prec >= _MAX_DIGITS:
            raise DenominatorNearZero(
                f"cancellation of {br.lost:.0f} digits at t={t}, q={q}, w={w}"
            )
        lost = br.lost if math.isfinite(br.lost) else prec
        prec = min(_MAX_DIGITS, max(prec + 20, int(lost) + _GOOD_DIGITS + 10))


def _slit_value(family: str, t: float, q: float, w: int, ctx: EvalContext | None) -> float:
    if w < 0:
        raise ValueError("width must be >= 0")
    ctx = _context(t, q, ctx)
    if w == 0:
        return 1.0
    br = slit_brackets(family, t, q, w, ctx)
    with localcontext() as dc:
        dc.prec = br.digits + 10
        dq = Decimal(q)
        inner = br.lam2 * (1 - dq) * br.num / ((1 + br.lam2) * br.den)
        outer = 1 - inner
        if abs(outer) < Decimal(ctx.tol):
            raise DenominatorNearZero(f"G_{w} has a pole near t={t}, q={q}")
        return float(1 / outer)


def G_w_closed(t: float, q: float, w: int, ctx: EvalContext | None = None) -> float:
    """Tangent-type slit generating function from the phi brackets."""
    return _slit_value("tangent", t, q, w, ctx)


def Gp_w_closed(t: float, q: float, w: int, ctx: EvalContext | None = None) -> float:
    """Secant-type slit generating function from the psi brackets."""
    return _slit_value("secant", t, q, w, ctx)


# ------------------------------------------------------------ unbounded width


def _sum_until(
    term: Callable[[int], float], tol: float, max_terms: int, start: int = 0
) -> float:
    terms = []
    for n in range(start, start + max_terms):
        v = term(n)
        terms.append(v)
        if abs(v) <= tol * 1e-4 * max(1.0, abs(terms[0])) and n > start + 1:
            return math.fsum(terms)
    raise NoConvergence(f"sum did not settle in {max_terms} terms")


def G_inf_closed(t: float, q: float, ctx: EvalContext | None = None) -> float:
    """Unrestricted tangent generating function.

    Uses the rectangle-summed form with the n = 0 term taken out by hand:
    G = (1+l^2) [1 - (1+l^2) sum_{n>=1} l^(2n-2) q^(n^2) (1-l^2 q^2n)/(1+l^2 q^2n)] / (1-q)
    which has no cancellation as t -> 0.
    """
    ctx = _context(t, q, ctx)
    l2 = ctx.lam * ctx.lam

    def term(n: int) -> float:
        x = l2 * q ** (2 * n)
        return l2 ** (n - 1) * q ** (n * n) * (1 - x) / (1 + x)

    rest = _sum_until(term, ctx.tol, ctx.max_terms, start=1)
    return (1 + l2) * (1 - (1 + l2) * rest) / (1 - q)


def Gp_inf_closed(t: float, q: float, ctx: EvalContext | None = None) -> float:
    """Unrestricted secant generating function,
    (1+l^2) sum_n l^(2n) q^(n^2+n) (1-l^2 q^(2n+1))/(1+l^2 q^(2n+1))."""
    ctx = _context(t, q, ctx)
    l2 = ctx.lam * ctx.lam

    def term(n: int) -> float:
        x = l2 * q ** (2 * n + 1)
        return l2**n * q ** (n * n + n) * (1 - x) / (1 + x)

    return (1 + l2) * _sum_until(term, ctx.tol, ctx.max_terms)


def _complex_rect_sum(x: complex, q: float, tol: float, max_terms: int) -> complex:
    """sum_k x^k / (1 + x q^k), i.e. the rectangle sum at (x, -x)."""
    re, im = [], []
    xk, qk = 1 + 0j, 1.0
    for _ in range(max_terms):
        v = xk / (1 + x * qk)
        re.append(v.real)
        im.append(v.imag)
        if abs(v) <= tol * 1e-4:
            return complex(math.fsum(re), math.fsum(im))
        xk *= x
        qk *= q
    raise NoConvergence("complex rectangle sum did not settle")


def _require_real(z: complex, scale: float, tol: float, what: str) -> float:
    if abs(z.imag) > tol * max(1.0, scale):
        raise ImaginaryResidue(f"{what}: imaginary part {z.imag:.3g}")
    return z.real


def G_inf_raw(t: float, q: float, ctx: EvalContext | None = None) -> float:
    """Same quantity as ``G_inf_closed`` straight from the complex sum
    (1+l^2)[1 - (1+l^2) sum_k (-i l)^k/(1 - i l q^k)] / (l^2 (1-q)).

    Loses about 2 log10(1/l) digits to cancellation; kept as a cross-check.
    """
    ctx = _context(t, q, ctx)
    lam = ctx.lam
    s = _complex_rect_sum(-1j * lam, q, ctx.tol, ctx.max_terms)
    s = _require_real(s, abs(s), ctx.tol, "rectangle sum")
    l2 = lam * lam
    return (1 + l2) * (1 - (1 + l2) * s) / (l2 * (1 - q))


def Gp_inf_raw(t: float, q: float, ctx: EvalContext | None = None) -> float:
    """(1+l^2) sum_k (-i l sqrt q)^k / (1 - i l sqrt q q^k), imaginary part checked."""
    ctx = _context(t, q, ctx)
    lam = ctx.lam
    s = _complex_rect_sum(-1j * lam * math.sqrt(q), q, ctx.tol, ctx.max_terms)
    s = _require_real(s, abs(s), ctx.tol, "rectangle sum")
    return (1 + lam * lam) * s


# --------------------------------------------------------------- the reports


@dataclass
class IdentityReport:
    name: str
    grid: list[tuple] = field(default_factory=list)
    max_abs_err: float = 0.0
    worst_point: tuple | None = None
    passed: bool = True
    tol: float = DEFAULT_IDENTITY_TOL
    metric: str = "abs"
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        d["grid"] = [list(p) for p in self.grid]
        d["worst_point"] = list(self.worst_point) if self.worst_point else None
        return d


def _report(name: str, point: tuple, err: float, tol: float, metric: str = "abs",
            notes: list[str] | None = None) -> IdentityReport:
    return IdentityReport(
        name=name,
        grid=[point],
        max_abs_err=err,
        worst_point=point,
        passed=bool(err <= tol),
        tol=tol,
        metric=metric,
        notes=list(notes or []),
    )


def merge_reports(name: str, reports: list[IdentityReport], tol: float | None = None) -> IdentityReport:
    """Max-reduce pointwise reports into one."""
    if not reports:
        return IdentityReport(name=name, tol=tol or DEFAULT_IDENTITY_TOL)
    worst = max(reports, key=lambda r: r.max_abs_err)
    tol = worst.tol if tol is None else tol
    notes: list[str] = []
    for r in reports:
        notes.extend(r.notes)
    return IdentityReport(
        name=name,
        grid=[p for r in reports for p in r.grid],
        max_abs_err=worst.max_abs_err,
        worst_point=worst.worst_point,
        passed=all(r.passed for r in reports) and worst.max_abs_err <= tol,
        tol=tol,
        metric=worst.metric,
        notes=notes,
    )


def rect_lhs(x: float, y: float, q: float, tol: float = DEFAULT_TERM_TOL,
             max_terms: int | None = None) -> float:
    max_terms = default_max_terms() if max_terms is None else max_terms
    return _sum_until(lambda n: x**n / (1 - y * q**n), tol, max_terms)


def rect_rhs(x: float, y: float, q: float, tol: float = DEFAULT_TERM_TOL,
             max_terms: int | None = None) -> float:
    max_terms = default_max_terms() if max_terms is None else max_terms

    def term(n: int) -> float:
        xn, yn = x * q**n, y * q**n
        return (x * y) ** n * q ** (n * n) * (1 - xn * yn) / ((1 - xn) * (1 - yn))

    return _sum_until(term, tol, max_terms)


def rect_double_sum(x: float, y: float, q: float, tol: float = DEFAULT_TERM_TOL) -> float:
    """sum_{n,m >= 0} x^n y^m q^(nm), truncated where both geometric tails are below tol."""
    def cutoff(z: float) -> int:
        if z == 0:
            return 1
        return int(math.log(tol * 1e-5 * (1 - abs(z))) / math.log(abs(z))) + 2

    nmax, mmax = cutoff(x), cutoff(y)
    return math.fsum(
        x**n * y**m * q ** (n * m) for n in range(nmax) for m in range(mmax)
    )


def rect_identity_check(x: float, y: float, q: float, ctx: EvalContext | None = None,
                        tol: float = 1e-10) -> IdentityReport:
    if not (abs(x) < 1 and abs(y) < 1 and abs(q) < 1):
        raise DomainViolation("need |x|, |y|, |q| < 1")
    term_tol = ctx.tol if ctx else DEFAULT_TERM_TOL
    lhs = rect_lhs(x, y, q, term_tol)
    rhs = rect_rhs(x, y, q, term_tol)
    dbl = rect_double_sum(x, y, q, term_tol)
    err = max(abs(lhs - rhs), abs(lhs - dbl), abs(rhs - dbl))
    return _report("rectangle", (x, y, q), err, tol)


def heine_sides(a: float, b: float, c: float, q: float, z: float,
                tol: float = DEFAULT_TERM_TOL) -> tuple[complex, complex]:
    """Both sides of Heine's first transformation of 2phi1."""
    if not (abs(z) < 1 and abs(b) < 1 and abs(q) < 1):
        raise DomainViolation("need |z|, |b|, |q| < 1")
    if b == 0:
        raise DomainViolation("b = 0 makes c/b undefined")
    lhs = hyper2phi1(a, b, c, q, z, tol)
    pref = (qpochhammer_inf(b, q) * qpochhammer_inf(a * z, q)) / (
        qpochhammer_inf(c, q) * qpochhammer_inf(z, q)
    )
    rhs = pref * hyper2phi1(c / b, z, a * z, q, b, tol)
    return lhs, rhs


def heine_check(a: float, b: float, c: float, q: float, z: float,
                ctx: EvalContext | None = None, tol: float = 1e-9) -> IdentityReport:
    lhs, rhs = heine_sides(a, b, c, q, z, ctx.tol if ctx else DEFAULT_TERM_TOL)
    return _report("heine", (a, b, c, q, z), abs(lhs - rhs), tol)


def _literal_w1_residuals(t: float, q: float) -> tuple[float, float, float]:
    """Residuals of the two w=1 identities in 40-digit complex arithmetic.

    nu = i lam, mu = i lam sqrt(q), bars are reciprocals and qbar = 1/q.
    Returns (phi identity as typeset, phi identity with the cross term
    nu^2 and lower parameter -nubar^2 q, psi identity as typeset).
    """
    import mpmath

    with mpmath.workdps(40):
        mq = mpmath.mpf(q)
        b = (1 - mq) / mpmath.mpf(t)
        lam = 1 / (b / 2 + mpmath.sqrt(b * b / 4 - 1))
        qb = 1 / mq

        def F(a, b, c, x):
            return mpmath.qhyper([a, b], [c], mq, x)

        nu = 1j * lam
        nb = 1 / nu

        def phi_residual(cross, lower):
            num = (F(nu, -nu, -nu**2 * mq, mq**3) * F(-nb, nb, lower, mq**4)
                   + cross * F(-nb, nb, lower, mq**3) * F(nu, -nu, -nu**2 * mq, mq**4))
            den = (F(nu, -nu, -nu**2 * mq, mq**2) * F(-nb, nb, lower, mq**4)
                   - nu**4 * F(-nb, nb, lower, mq**2) * F(nu, -nu, -nu**2 * mq, mq**4))
            return abs((1 - mq**2) / (1 - nu**2) - num / den)

        r_typeset = phi_residual(nu, -nu**2 * qb)
        r_fixed = phi_residual(nu**2, -nb**2 * mq)

        mu = 1j * lam * mpmath.sqrt(mq)
        mb = 1 / mu
        num = (F(mu, -mu, -mu**2, mq**2) * F(-mq * mb, mq * mb, -mq**2 * mb**2, mq**3)
               + mu**2 * qb * F(-mq * mb, mq * mb, -mq**2 * mb**2, mq**2)
               * F(mu, -mu, -mu**2, mq**3))
        den = (F(mu, -mu, -mu**2, mq) * F(-mq * mb, mq * mb, -mq**2 * mb**2, mq**3)
               - mu**4 * qb**2 * F(-mq * mb, mq * mb, -mq**2 * mb**2, mq)
               * F(mu, -mu, -mu**2, mq**3))
        r_psi = abs((1 - mq) / (1 - mu**2 * qb) - num / den)
    return float(r_typeset), float(r_fixed), float(r_psi)


def identities_w1_check(q: float, t: float, ctx: EvalContext | None = None,
                        tol: float = 1e-8, literal: bool = True) -> IdentityReport:
    """The two width-1 identities between phi/psi products and simple rationals.

    Checked in the equivalent form that follows from the slit formulas:
    N/D = (1-q^2)/(1+lam^2) for phi, N/D = (1-q)/(1+lam^2) for psi, and
    G_1 = 1/(1-t^2(1+q)), G'_1 = 1/(1-t^2).  With ``literal=True`` the
    identities are also evaluated in complex form through mpmath: the psi
    identity and the corrected phi identity count towards the error, the
    phi identity as typeset (which does not hold) only produces a note.
    """
    ctx = _context(t, q, ctx)
    l2 = ctx.lam * ctx.lam
    errs = []
    for family, lhs in (("tangent", (1 - q * q) / (1 + l2)), ("secant", (1 - q) / (1 + l2))):
        br = slit_brackets(family, t, q, 1, ctx)
        errs.append(abs(float(br.num / br.den) - lhs))
    errs.append(abs(G_w_closed(t, q, 1, ctx) - 1 / (1 - t * t * (1 + q))))
    errs.append(abs(Gp_w_closed(t, q, 1, ctx) - 1 / (1 - t * t)))
    notes = []
    if literal:
        try:
            r_typeset, r_fixed, r_psi = _literal_w1_residuals(t, q)
        except (ZeroDivisionError, ArithmeticError, ValueError) as exc:
            notes.append(f"complex form at t={t}, q={q}: evaluation failed ({exc})")
        else:
            errs.extend([r_fixed, r_psi])
            if not r_typeset <= tol:
                notes.append(
                    f"phi identity as typeset misses by {r_typeset:.3g} at t={t}, q={q}"
                )
    return _report("w1", (t, q), max(errs), tol, notes=notes)
