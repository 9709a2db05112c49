"""Verification suites over parameter grids.

Each suite returns a list of :class:`~qpath.qhyper.IdentityReport`, one per
identity, already max-reduced over its grid.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .closedform import q_euler_poly
from .contfrac import cf_eval_exact
from .qhyper import (
    DEFAULT_TERM_TOL,
    EvalContext,
    G_inf_closed,
    G_inf_raw,
    G_w_closed,
    Gp_inf_closed,
    Gp_inf_raw,
    Gp_w_closed,
    IdentityReport,
    _check_region,
    heine_check,
    identities_w1_check,
    in_real_root_region,
    merge_reports,
    rect_identity_check,
)

__all__ = [
    "SUITES",
    "SUITE_TOLERANCES",
    "Grid",
    "parse_grid",
    "linspace",
    "default_grid",
    "truncated_series",
    "series_tail_estimate",
    "run_suite",
    "run_suites",
]

SUITES = ("theorems", "corollaries", "lemma5", "heine", "w1")

SUITE_TOLERANCES = {
    "theorems": 1e-9,
    "corollaries": 1e-8,
    "lemma5": 1e-10,
    "heine": 1e-9,
    "w1": 1e-8,
}

SLIT_WIDTHS = tuple(range(1, 9))
SERIES_ORDER = 12


def linspace(lo: float, hi: float, n: int) -> tuple[float, ...]:
    if n < 1:
        raise ValueError("grid counts must be positive")
    if n == 1:
        return (lo,)
    step = (hi - lo) / (n - 1)
    return tuple(round(lo + i * step, 12) for i in range(n))


@dataclass(frozen=True)
class Grid:
    ts: tuple[float, ...]
    qs: tuple[float, ...]
    # drop points outside the real-root region instead of failing on them
    clip: bool = False

    def points(self) -> list[tuple[float, float]]:
        pts = [(t, q) for t in self.ts for q in self.qs]
        if self.clip:
            return [p for p in pts if in_real_root_region(*p)]
        for t, q in pts:
            _check_region(t, q)
        return pts


def _parse_axis(text: str) -> tuple[float, ...]:
    count = None
    if ":" in text:
        text, c = text.split(":", 1)
        count = int(c)
    if ".." in text:
        lo, hi = (float(v) for v in text.split("..", 1))
        return linspace(lo, hi, 3 if count is None else count)
    return tuple(float(v) for v in text.split(";"))


def parse_grid(spec: str) -> Grid:
    """Parse ``t=0.01..0.15:8,q=0.1..0.6:6``.

    Each axis is ``lo..hi[:count]`` (count defaults to 3) or a
    ``;``-separated list of values.  Both axes are required.
    """
    axes: dict[str, tuple[float, ...]] = {}
    for part in spec.split(","):
        if "=" not in part:
            raise ValueError(f"bad grid component {part!r}")
        key, val = part.split("=", 1)
        key = key.strip()
        if key not in ("t", "q"):
            raise ValueError(f"unknown grid axis {key!r}")
        axes[key] = _parse_axis(val.strip())
    if set(axes) != {"t", "q"}:
        raise ValueError("grid needs both t= and q=")
    return Grid(axes["t"], axes["q"])


def default_grid(suite: str) -> Grid:
    if suite == "theorems":
        return Grid(linspace(0.01, 0.15, 15), linspace(0.1, 0.9, 9), clip=True)
    if suite == "corollaries":
        return Grid(linspace(0.01, 0.05, 5), (0.1, 0.3, 0.5, 0.7))
    if suite == "w1":
        return Grid((0.01, 0.02, 0.03, 0.05, 0.07), (0.1, 0.3, 0.5, 0.7, 0.8))
    raise ValueError(f"suite {suite!r} has no (t, q) grid")


def truncated_series(family: str, t: float, q: float, order: int = SERIES_ORDER) -> float:
    """sum_{N <= order} E_N(q) t^(2N) with exact coefficients."""
    qf, t2 = Fraction(q), Fraction(t) ** 2
    total = sum(q_euler_poly(n, family)(qf) * t2**n for n in range(order + 1))
    return float(total)


def series_tail_estimate(family: str, t: float, q: float, order: int = SERIES_ORDER,
                         extra: int = 8) -> float:
    """Geometric estimate of sum_{N > order} E_N(q) t^(2N).

    The next ``extra`` terms are summed exactly and the rest bounded by a
    geometric series with the last observed term ratio.
    """
    qf, t2 = Fraction(q), Fraction(t) ** 2
    terms = [
        float(q_euler_poly(n, family)(qf) * t2**n)
        for n in range(order + 1, order + extra + 1)
    ]
    r = terms[-1] / terms[-2] if terms[-2] else 0.0
    if r >= 1:
        return math.inf
    return math.fsum(terms) + terms[-1] * r / (1 - r)


def _slit_suite(grid: Grid, tol: float, term_tol: float, max_terms: int | None) -> list[IdentityReport]:
    out = []
    for name, family, fn in (("slit_tangent", "tangent", G_w_closed),
                             ("slit_secant", "secant", Gp_w_closed)):
        reports = []
        for t, q in grid.points():
            ctx = EvalContext.at(t, q, term_tol, max_terms)
            for w in SLIT_WIDTHS:
                exact = float(cf_eval_exact(w, family, t, q))
                err = abs(fn(t, q, w, ctx) - exact) / abs(exact)
                reports.append(IdentityReport(
                    name, [(t, q, w)], err, (t, q, w), err <= tol, tol, "rel"))
        out.append(merge_reports(name, reports, tol))
    return out


def _unbounded_suite(grid: Grid, tol: float, term_tol: float, max_terms: int | None) -> list[IdentityReport]:
    series_reports = {"unbounded_tangent": [], "unbounded_secant": []}
    raw_reports, w40_reports = [], []
    for t, q in grid.points():
        ctx = EvalContext.at(t, q, term_tol, max_terms)
        for name, family, closed, raw, slit in (
            ("unbounded_tangent", "tangent", G_inf_closed, G_inf_raw, G_w_closed),
            ("unbounded_secant", "secant", Gp_inf_closed, Gp_inf_raw, Gp_w_closed),
        ):
            value = closed(t, q, ctx)
            tail = series_tail_estimate(family, t, q)
            err = abs(value - truncated_series(family, t, q))
            notes = []
            if not tail <= tol:
                notes.append(f"{name}: series tail estimate {tail:.3g} exceeds tol at t={t}, q={q}")
            series_reports[name].append(IdentityReport(
                name, [(t, q)], err, (t, q), err <= tol and tail <= tol, tol, "abs", notes))
            err_raw = abs(value - raw(t, q, ctx))
            raw_reports.append(IdentityReport(
                "unbounded_complex_form", [(t, q)], err_raw, (t, q), err_raw <= tol, tol))
            err_w = abs(value - slit(t, q, 40, ctx))
            w40_reports.append(IdentityReport(
                "unbounded_vs_w40", [(t, q)], err_w, (t, q), err_w <= tol, tol))
    out = [merge_reports(k, v, tol) for k, v in series_reports.items()]
    out.append(merge_reports("unbounded_complex_form", raw_reports, tol))
    out.append(merge_reports("unbounded_vs_w40", w40_reports, tol))
    return out


def rectangle_samples(n: int = 50, seed: int = 5) -> list[tuple[float, float, float]]:
    rng = random.Random(seed)
    return [
        (rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(0.1, 0.8))
        for _ in range(n)
    ]


def heine_samples(n: int = 50, seed: int = 7, q: float = 0.6) -> list[tuple[float, ...]]:
    """Random (a, b, c, q, z) with a, b, c, z in (-0.5, 0.5); |b| is kept off 0."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        a, b, c, z = (rng.uniform(-0.5, 0.5) for _ in range(4))
        if abs(b) < 1e-3:
            continue
        out.append((a, b, c, q, z))
    return out


def run_suite(
    name: str,
    grid: Grid | None = None,
    tol: float | None = None,
    term_tol: float = DEFAULT_TERM_TOL,
    max_terms: int | None = None,
) -> list[IdentityReport]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    tol = SUITE_TOLERANCES[name] if tol is None else tol
    if name == "theorems":
        return _slit_suite(grid or default_grid(name), tol, term_tol, max_terms)
    if name == "corollaries":
        return _unbounded_suite(grid or default_grid(name), tol, term_tol, max_terms)
    if name == "lemma5":
        reps = [rect_identity_check(x, y, q, None, tol) for x, y, q in rectangle_samples()]
        return [merge_reports("rectangle", reps, tol)]
    if name == "heine":
        reps = [heine_check(*p, tol=tol) for p in heine_samples()]
        return [merge_reports("heine", reps, tol)]
    reps = []
    for t, q in (grid or default_grid(name)).points():
        ctx = EvalContext.at(t, q, term_tol, max_terms)
        reps.append(identities_w1_check(q, t, ctx, tol))
    return [merge_reports("w1", reps, tol)]


def run_suites(
    names: list[str] | tuple[str, ...],
    grid: Grid | None = None,
    tol: float | None = None,
    term_tol: float = DEFAULT_TERM_TOL,
    max_terms: int | None = None,
) -> list[IdentityReport]:
    """Run several suites; the grid is only used by suites that take (t, q) points."""
    if grid is not None:
        grid.points()  # fail on guard violations before doing any work
    out: list[IdentityReport] = []
    for name in names:
        g = grid if name in ("theorems", "corollaries", "w1") else None
        out.extend(run_suite(name, g, tol, term_tol, max_terms))
    return out
