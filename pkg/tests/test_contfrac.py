from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpath.contfrac import PoleAtPoint, cf_eval_exact, cf_series, convergents, level_weight
from qpath.pathcount import Policy, brute_coeff, dp_series
from qpath.qalg import QPoly, q_integer

TANGENT, SECANT = Policy.TANGENT, Policy.SECANT


def test_level_weight_examples():
    assert level_weight(1, TANGENT) == QPoly([1, 1])
    assert level_weight(1, SECANT) == QPoly([1])
    assert level_weight(2, TANGENT) == QPoly([1, 1]) * QPoly([1, 1, 1])
    with pytest.raises(ValueError):
        level_weight(0, TANGENT)


def test_convergent_examples():
    for policy in Policy:
        c = convergents(0, policy)
        assert c.P == (QPoly([1]),) and c.Q == (QPoly([1]),)
    c = convergents(1, TANGENT)
    assert c.P == (QPoly([1]),) and c.Q == (QPoly([1]), QPoly([-1, -1]))
    c = convergents(1, SECANT)
    assert c.Q == (QPoly([1]), QPoly([-1]))


def test_cf_series_examples():
    s = cf_series(1, TANGENT, 3)
    assert list(s) == [QPoly([1, 1]) ** n for n in range(4)]
    assert list(cf_series(1, SECANT, 3)) == [QPoly([1])] * 4
    for policy in Policy:
        assert list(cf_series(0, policy, 2)) == [QPoly([1]), QPoly(), QPoly()]


def test_cf_eval_examples():
    assert cf_eval_exact(1, TANGENT, Fraction(1, 10), Fraction(1, 2)) == Fraction(200, 197)
    assert cf_eval_exact(1, SECANT, Fraction(1, 2), Fraction(1, 3)) == Fraction(4, 3)
    for policy in Policy:
        assert cf_eval_exact(0, policy, Fraction(7, 3), Fraction(1, 5)) == 1


def test_pole_detected():
    # Q_1 = 1 - t^2 vanishes at t = 1
    with pytest.raises(PoleAtPoint):
        cf_eval_exact(1, SECANT, 1, Fraction(1, 2))


@pytest.mark.parametrize("policy", list(Policy))
@pytest.mark.parametrize("w", range(7))
def test_finite_width_matches_path_count(policy, w):
    s = cf_series(w, policy, 6)
    d = dp_series(6, w, policy)
    for n in range(7):
        assert s[n] == d[n] == brute_coeff(n, w, policy)


@pytest.mark.parametrize("policy", list(Policy))
@pytest.mark.parametrize("w", range(0, 9))
def test_determinant_identity(policy, w):
    # P_w Q_{w-1} - P_{w-1} Q_w = prod_{k<=w} t^2 level_weight(k)
    a, b = convergents(w, policy), convergents(w - 1, policy)

    def mul(x, y):
        out = [QPoly()] * (len(x) + len(y) - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                out[i + j] = out[i + j] + u * v
        return out

    x, y = mul(a.P, b.Q), mul(b.P, a.Q)
    n = max(len(x), len(y), w + 1)
    x, y = x + [QPoly()] * (n - len(x)), y + [QPoly()] * (n - len(y))
    lhs = [u - v for u, v in zip(x, y)]
    rhs = QPoly([1])
    for k in range(1, w + 1):
        rhs = rhs * level_weight(k, policy)
    assert all(not c for i, c in enumerate(lhs) if i != w)
    assert lhs[w] == rhs


@given(st.integers(0, 10), st.integers(0, 5), st.sampled_from(list(Policy)))
def test_stabilization(n, extra, policy):
    assert cf_series(n + extra, policy, n)[n] == dp_series(n, None, policy)[n]


@given(
    st.integers(0, 5),
    st.sampled_from(list(Policy)),
    st.fractions(Fraction(-1, 5), Fraction(1, 5)),
    st.fractions(Fraction(0), Fraction(9, 10)),
)
def test_exact_value_matches_series_pointwise(w, policy, t0, q0):
    # summing the series far enough approximates the rational value
    s = cf_series(w, policy, 30)
    approx = sum(s[n](q0) * t0 ** (2 * n) for n in range(31))
    exact = cf_eval_exact(w, policy, t0, q0)
    assert abs(float(exact - approx)) < 1e-12


def test_q_integers_in_weights():
    for k in range(1, 6):
        assert level_weight(k, SECANT) == q_integer(k) ** 2
        assert level_weight(k, TANGENT) == q_integer(k) * q_integer(k + 1)
