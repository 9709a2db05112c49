import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpath.contfrac import cf_eval_exact
from qpath.qhyper import (
    ComplexRootRegion,
    DomainViolation,
    EvalContext,
    G_inf_closed,
    G_inf_raw,
    G_w_closed,
    Gp_inf_closed,
    Gp_inf_raw,
    Gp_w_closed,
    NoConvergence,
    heine_check,
    heine_sides,
    hyper2phi1,
    identities_w1_check,
    lambda_root,
    phi,
    psi,
    qpochhammer,
    qpochhammer_inf,
    rect_double_sum,
    rect_identity_check,
    rect_lhs,
    rect_rhs,
    series_with_tail,
    slit_brackets,
)
from qpath.verify import truncated_series


def test_lambda_examples():
    assert lambda_root(0.1, 0.5) == pytest.approx((5 - math.sqrt(21)) / 2, abs=1e-15)
    ctx = EvalContext.at(0.1, 0.5)
    assert ctx.lam * ctx.lam_bar == pytest.approx(1, abs=1e-15)
    ctx.check()
    for t in (1e-3, 1e-4, 1e-6):
        assert lambda_root(t, 0.3) == pytest.approx(t / 0.7, rel=5 * t * t)


def test_lambda_negative_t():
    assert lambda_root(-0.1, 0.5) == pytest.approx(-lambda_root(0.1, 0.5))


def test_guard():
    with pytest.raises(ComplexRootRegion):
        lambda_root(0.45, 0.1)
    with pytest.raises(ComplexRootRegion):
        EvalContext.at(0.3, 0.5)
    with pytest.raises(DomainViolation):
        EvalContext.at(0.1, 1.2)
    with pytest.raises(DomainViolation):
        EvalContext.at(0.0, 0.5)


def direct_phi0(x, q, terms=200):
    return math.fsum(x**k / qpochhammer(q, q, k) for k in range(terms))


def test_phi_psi_examples():
    ctx = EvalContext.at(0.1, 0.5)
    lam, q = ctx.lam, ctx.q
    assert phi(lam, 0.0, ctx) == 1 and psi(lam, 0.0, ctx) == 1
    assert phi(0.0, 0.3, ctx) == pytest.approx(direct_phi0(0.3, q), abs=1e-14)
    assert psi(0.0, 0.3, ctx) == pytest.approx(phi(0.0, 0.3, ctx), abs=1e-15)
    l2 = lam * lam
    oracle_phi = hyper2phi1(1j * lam, -1j * lam, l2 * q, q, q**3)
    assert abs(phi(lam, q**3, ctx) - oracle_phi) < 1e-12
    rq = math.sqrt(q)
    oracle_psi = hyper2phi1(1j * lam * rq, -1j * lam * rq, l2 * q, q, q**2)
    assert abs(psi(lam, q**2, ctx) - oracle_psi) < 1e-12


def test_phi_against_mpmath():
    ctx = EvalContext.at(0.07, 0.6)
    lam, q = ctx.lam, ctx.q
    for x in (q, q**2, q**5):
        ref = mpmath.qhyper([1j * lam, -1j * lam], [lam * lam * q], q, x)
        assert abs(phi(lam, x, ctx) - complex(ref)) < 1e-12
        # large-root argument: terms grow before they decay
        lb = ctx.lam_bar
        ref = mpmath.qhyper([1j * lb, -1j * lb], [lb * lb * q], q, x * q**3)
        assert abs(phi(lb, x * q**3, ctx) - complex(ref)) < 1e-9 * abs(ref)


def test_series_tail_bound():
    ctx = EvalContext.at(0.05, 0.5, tol=1e-6)
    value, tail = series_with_tail("phi", ctx.lam, 0.5, ctx)
    exact = phi(ctx.lam, 0.5, EvalContext.at(0.05, 0.5, tol=1e-16))
    # the bound is asymptotically tight, so allow rounding in the subtraction
    assert abs(value - exact) <= tail + 4 * math.ulp(exact)


def test_no_convergence_is_reported():
    ctx = EvalContext.at(0.04, 0.9, max_terms=3)
    with pytest.raises(NoConvergence):
        phi(ctx.lam_bar, 0.9**4, ctx)


def test_qpochhammer_inf():
    q = 0.5
    assert qpochhammer_inf(q, q) == pytest.approx(float(mpmath.qp(q, q)), abs=1e-15)
    assert qpochhammer(0.3, q, 0) == 1


# --------------------------------------------------------- slit formulas

def test_slit_examples():
    assert G_w_closed(0.1, 0.5, 1) == pytest.approx(200 / 197, rel=1e-12)
    assert G_w_closed(0.1, 0.5, 0) == 1 and Gp_w_closed(0.1, 0.5, 0) == 1
    # 1/(1 - t^2) whatever q is
    for q in (0.1, 0.2, 0.3):
        assert Gp_w_closed(0.3, q, 1) == pytest.approx(1 / (1 - 0.09), rel=1e-12)
    exact = float(cf_eval_exact(8, "tangent", 0.05, 0.3))
    assert G_w_closed(0.05, 0.3, 8) == pytest.approx(exact, rel=1e-9)
    exact = float(cf_eval_exact(6, "secant", 0.05, 0.4))
    assert Gp_w_closed(0.05, 0.4, 6) == pytest.approx(exact, rel=1e-9)


@given(
    st.floats(0.01, 0.15),
    st.floats(0.1, 0.9),
    st.integers(1, 10),
    st.sampled_from(["tangent", "secant"]),
)
@settings(max_examples=60)
def test_slit_matches_convergent(t, q, w, family):
    if (1 - q) ** 2 <= 4 * t * t * 1.01:
        return
    fn = G_w_closed if family == "tangent" else Gp_w_closed
    exact = float(cf_eval_exact(w, family, t, q))
    assert fn(t, q, w) == pytest.approx(exact, rel=1e-10)


def test_brackets_need_positive_width():
    ctx = EvalContext.at(0.04, 0.9)
    with pytest.raises(ValueError):
        slit_brackets("tangent", 0.04, 0.9, 0, ctx)


def test_brackets_survive_cancellation():
    # near q = 1 the bracket products cancel by many digits in double precision
    ctx = EvalContext.at(0.04, 0.9)
    br = slit_brackets("secant", 0.04, 0.9, 3, ctx)
    assert br.lost > 8
    exact = float(cf_eval_exact(3, "secant", 0.04, 0.9))
    assert Gp_w_closed(0.04, 0.9, 3, ctx) == pytest.approx(exact, rel=1e-13)


def test_width_convergence():
    t, q = 0.04, 0.5
    for fn, inf in ((G_w_closed, G_inf_closed), (Gp_w_closed, Gp_inf_closed)):
        gaps = [abs(fn(t, q, w) - inf(t, q)) for w in (5, 10, 20, 40)]
        assert gaps[0] >= gaps[1] >= gaps[2] >= gaps[3]
        assert gaps[-1] < 1e-14


# ------------------------------------------------------------ unbounded

def test_unbounded_small_t():
    assert G_inf_closed(1e-6, 0.5) == pytest.approx(1, abs=1e-10)
    assert Gp_inf_closed(1e-6, 0.5) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("t", [0.01, 0.03, 0.05])
@pytest.mark.parametrize("q", [0.1, 0.4, 0.7])
def test_unbounded_matches_series(t, q):
    assert G_inf_closed(t, q) == pytest.approx(truncated_series("tangent", t, q), abs=1e-12)
    assert Gp_inf_closed(t, q) == pytest.approx(truncated_series("secant", t, q), abs=1e-12)


@pytest.mark.parametrize("t,q", [(0.02, 0.3), (0.05, 0.6), (0.1, 0.5)])
def test_complex_form_is_real(t, q):
    assert G_inf_raw(t, q) == pytest.approx(G_inf_closed(t, q), abs=1e-11)
    assert Gp_inf_raw(t, q) == pytest.approx(Gp_inf_closed(t, q), abs=1e-11)


# ------------------------------------------------------------ rectangle

def test_rectangle_examples():
    q = 0.6
    for y in (0.2, -0.5):
        assert rect_lhs(0.0, y, q) == pytest.approx(1 / (1 - y), abs=1e-13)
        assert rect_rhs(0.0, y, q) == pytest.approx(1 / (1 - y), abs=1e-13)
        assert rect_lhs(y, 0.0, q) == pytest.approx(1 / (1 - y), abs=1e-13)
    assert abs(rect_lhs(0.3, -0.4, 0.7) - rect_rhs(0.3, -0.4, 0.7)) < 1e-12


@given(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6), st.floats(0.1, 0.8))
def test_rectangle_property(x, y, q):
    rep = rect_identity_check(x, y, q, tol=1e-10)
    assert rep.passed, rep
    assert rect_lhs(x, y, q) == pytest.approx(rect_lhs(y, x, q), abs=1e-12)


def test_rectangle_double_sum():
    assert rect_double_sum(0.5, 0.5, 0.0) == pytest.approx(2 + 2 - 1, abs=1e-12)


# ----------------------------------------------------------------- Heine

def test_heine_examples():
    lhs, rhs = heine_sides(0.3, 0.2, -0.1, 0.6, 0.0)
    assert lhs == 1 and abs(rhs - 1) < 1e-12
    lhs, rhs = heine_sides(0.25, 0.4, 0.25, 0.6, 0.4)
    assert abs(lhs - rhs) < 1e-12
    ref = mpmath.qhyper([0.25, 0.4], [0.25], 0.6, 0.4)
    assert abs(lhs - float(ref)) < 1e-12


admissible = st.floats(-0.5, 0.5)


@given(admissible, admissible.filter(lambda b: abs(b) > 1e-3), admissible, admissible)
def test_heine_property(a, b, c, z):
    assert heine_check(a, b, c, 0.6, z, tol=1e-10).passed


def test_hyper2phi1_against_mpmath():
    for a, b, c, z in [(0.3, -0.2, 0.1, 0.45), (0.1j, -0.1j, 0.01, 0.3)]:
        ref = complex(mpmath.qhyper([a, b], [c], 0.7, z))
        assert abs(hyper2phi1(a, b, c, 0.7, z) - ref) < 1e-13


# -------------------------------------------------------------- width 1

@pytest.mark.parametrize("t,q", [(0.01, 0.1), (0.05, 0.5), (0.07, 0.8)])
def test_width_one_identities(t, q):
    rep = identities_w1_check(q, t)
    assert rep.passed, rep
    # the phi identity exactly as typeset does not hold; this is reported, not hidden
    assert any("as typeset" in n for n in rep.notes)


def test_width_one_brackets_closed_form():
    t, q = 0.03, 0.4
    ctx = EvalContext.at(t, q)
    br = slit_brackets("tangent", t, q, 1, ctx)
    assert float(br.num / br.den) == pytest.approx((1 - q * q) / (1 + ctx.lam**2), rel=1e-14)
    assert G_w_closed(t, q, 1) == pytest.approx(
        float(1 / (1 - Fraction(t) ** 2 * (1 + Fraction(q)))), rel=1e-14
    )
