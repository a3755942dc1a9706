from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from yangloop.gaussian import Coeff
from yangloop.series import (Series, SpecMismatch, VarSpec, borel,
                             divide_by_var, exact_div_difference, exp,
                             inverse, inverse_borel, log, sqrt)

SP = VarSpec(("hbar", "v", "p"), 12, loop="u", loop_order=8, hbar_floor=-1)
ONE = Series.one(SP)


def var(name, e=1, c=1):
    return Series.var(SP, name, e, c)


class TestArithmetic:
    def test_add_cancellation(self):
        f = ONE + var("hbar")
        assert f + Series.constant(SP, -1) == var("hbar")

    def test_add_identity(self):
        f = var("v", 2) + var("p")
        assert f + Series.zero(SP) == f

    def test_add_inverse_gives_empty(self):
        f = var("v", 2, F(1, 24))
        assert (f + var("v", 2, F(-1, 24))).terms == {}

    def test_mul_difference_of_squares(self):
        assert (ONE + var("v")) * (ONE - var("v")) == ONE - var("v", 2)

    def test_mul_truncates(self):
        sp = VarSpec(("v",), 1)
        one = Series.one(sp)
        v = Series.var(sp, "v")
        assert (one + v) * (one - v) == one

    def test_loop_order_truncates(self):
        sp = VarSpec((), 0, loop="u", loop_order=1)
        u1 = Series.var(sp, "u", -1)
        assert (u1 * u1).is_zero()

    def test_spec_mismatch(self):
        other = Series.one(VarSpec(("x",), 3))
        with pytest.raises(SpecMismatch):
            ONE + other

    def test_hbar_floor_guard(self):
        f = divide_by_var(var("p"), "hbar")
        with pytest.raises(ValueError):
            f * f

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Series.monomial(SP, {"v": -1})


class TestInverse:
    def test_geometric(self):
        g = inverse(ONE - var("p") * var("u", -1))
        for k in range(1, 6):
            assert g.coefficient({"p": k, "u": -k}) == Coeff(1)

    def test_one(self):
        assert inverse(ONE) == ONE

    def test_constant(self):
        assert inverse(Series.constant(SP, 2)).as_constant() == Coeff(F(1, 2))

    def test_zero_constant_rejected(self):
        with pytest.raises(ValueError):
            inverse(var("v"))


class TestExpLogSqrt:
    def test_mercator(self):
        f = log(ONE - var("v"))
        for k in range(1, 6):
            assert f.coefficient({"v": k}) == Coeff(F(-1, k))

    def test_round_trip(self):
        f = ONE + var("hbar") + var("hbar", 2)
        assert exp(log(f)) == f

    def test_exp_zero(self):
        assert exp(Series.zero(SP)) == ONE

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            exp(ONE)

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError):
            log(var("v"))

    def test_sqrt_square(self):
        f = ONE + var("hbar")
        assert sqrt(f * f) == f

    def test_sqrt_branch(self):
        assert sqrt(Series.constant(SP, -1)).as_constant() == Coeff(0, 1)
        assert sqrt(Series.constant(SP, F(9, 4))).as_constant() == Coeff(F(3, 2))

    def test_sqrt_rejects_non_square(self):
        with pytest.raises(ValueError):
            sqrt(Series.constant(SP, 2))

    def test_sqrt_of_sinh_unit(self):
        # oracle: square the result and compare with the direct expansion of
        # hbar / (2 sinh(hbar/2)) = 1 - hbar^2/24 + 7 hbar^4/5760 + ...
        sp = VarSpec(("hbar",), 8)
        one = Series.one(sp)
        h = Series.var(sp, "hbar")
        ratio = one + Series.var(sp, "hbar", 2, F(1, 24)) \
            + Series.var(sp, "hbar", 4, F(1, 1920)) \
            + Series.var(sp, "hbar", 6, F(1, 322560))
        u = inverse(ratio)
        assert u.coefficient({"hbar": 2}) == Coeff(F(-1, 24))
        assert u.coefficient({"hbar": 4}) == Coeff(F(7, 5760))
        s = sqrt(u)
        assert s * s == u
        assert s.coefficient({"hbar": 2}) == Coeff(F(-1, 48))


class TestCalculus:
    def test_derivative_power(self):
        assert var("v", 2).derivative("v") == var("v", 1, 2)

    def test_derivative_constant(self):
        assert ONE.derivative("v").is_zero()

    def test_derivative_exponential(self):
        f = exp(var("p") * var("v"))
        assert f.derivative("v") == var("p") * f

    def test_derivative_unknown_var(self):
        with pytest.raises(KeyError):
            ONE.derivative("w")

    def test_substitute_composition(self):
        # oracle: 1/(1-x) composed with x = v + v^2 by hand, to order 2:
        # 1 + (v + v^2) + (v + v^2)^2 + ... = 1 + v + 2 v^2 + O(v^3)
        g = var("v") + var("v", 2)
        f = inverse(ONE - var("p"))
        got = f.substitute("p", g)
        assert got.coefficient({"v": 0}) == Coeff(1)
        assert got.coefficient({"v": 1}) == Coeff(1)
        assert got.coefficient({"v": 2}) == Coeff(2)

    def test_substitute_zero(self):
        f = ONE + var("p") + var("p", 2) * var("v")
        assert f.substitute("p", Series.zero(SP)) == ONE

    def test_substitute_var(self):
        f = exp(var("p"))
        assert f.substitute("p", var("v")) == exp(var("v"))

    def test_eval_at(self):
        # (b - a) b^2 at a = 1, b = 3 with (a, b) := (p, v)
        f = (var("v") - var("p")) * var("v", 2)
        assert f.eval_at({"p": 1, "v": 3}) == Coeff(18)

    def test_eval_zero(self):
        assert Series.zero(SP).eval_at({}) == Coeff(0)

    def test_eval_unassigned(self):
        with pytest.raises(ValueError):
            (var("p") * var("v")).eval_at({"p": 1})

    def test_partial_evaluation_per_coefficient(self):
        # (1 - e^{pv})/v at p = 1 -> -1 - v/2 - v^2/6 - ...
        f = divide_by_var(ONE - exp(var("p") * var("v")), "v")
        got = f.substitute_scalar("p", F(1))
        for k in range(4):
            assert got.coefficient({"v": k}) == Coeff(F(-1, 1)) * F(1, [1, 2, 6, 24][k])


class TestBorel:
    def test_single_term(self):
        assert borel(var("u", -1), "v") == ONE

    def test_all_ones_gives_exponential(self):
        f = Series.from_terms(SP, [((0, 0, 0, -k - 1), 1) for k in range(8)])
        got = borel(f, "v")
        want = exp(var("v")).restrict([(("v",), 7)])
        assert got == want

    def test_log_identity(self):
        lhs = borel(log(ONE - var("p") * var("u", -1)), "v")
        rhs = divide_by_var(ONE - exp(var("p") * var("v")), "v")
        w = [(("p", "v"), 7)]
        assert lhs.restrict(w) == rhs.restrict(w)

    def test_rejects_constant_term(self):
        with pytest.raises(ValueError):
            borel(ONE + var("u", -1), "v")

    def test_inverse_borel(self):
        assert inverse_borel(ONE, "v") == var("u", -1)
        e = exp(var("v")).restrict([(("v",), 7)])
        back = inverse_borel(e, "v")
        assert all(back.coefficient({"u": -k - 1}) == Coeff(1) for k in range(8))
        assert borel(back, "v") == e

    def test_loop_derivative_rule(self):
        f = log(ONE - var("p") * var("u", -1))
        lhs = borel(f.derivative_loop(), "v")
        rhs = -(borel(f, "v") * var("v"))
        w = [(("p", "v"), 10)]
        assert lhs.restrict(w) == rhs.restrict(w)


class TestExactDivision:
    def test_difference_quotient(self):
        f = var("v", 3) - var("p", 3)
        q = exact_div_difference(f, "v", "p")
        assert q == var("v", 2) + var("v") * var("p") + var("p", 2)

    def test_rejects_non_vanishing(self):
        with pytest.raises(ValueError):
            exact_div_difference(var("v") + var("p"), "v", "p")

    def test_divide_by_var(self):
        assert divide_by_var(var("v", 3), "v") == var("v", 2)
        with pytest.raises(ValueError):
            divide_by_var(ONE + var("v"), "v")


class TestJson:
    def test_round_trip(self):
        f = (ONE + var("hbar") * var("v")) * var("u", -2, F(3, 7)) \
            + Series.constant(SP, Coeff(F(1, 2), F(-2, 3)))
        assert Series.from_json(f.to_json()) == f

    def test_rationals_as_strings(self):
        obj = var("p", 2, F(22, 7)).to_json()
        assert obj["terms"][0]["re"] == "22/7"


# -- property-based checks ---------------------------------------------------------

PS = VarSpec(("x", "y"), 6)


def series_strategy(unit=False, zero_const=False):
    def build(pairs):
        items = [(tuple(e), F(num, den)) for (e, num, den) in pairs]
        if unit:
            items.append(((0, 0), 1))
        if zero_const:
            items = [(k, c) for k, c in items if any(k)]
        return Series.from_terms(PS, items)

    exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
    pair = st.tuples(exps, st.integers(-9, 9), st.integers(1, 9))
    return st.lists(pair, max_size=5).map(build)


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=40, deadline=None)
def test_mul_associative_commutative(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


@given(series_strategy(unit=True))
@settings(max_examples=40, deadline=None)
def test_exp_log_round_trip(f):
    assert exp(log(f)) == f


@given(series_strategy(zero_const=True))
@settings(max_examples=40, deadline=None)
def test_log_exp_round_trip(g):
    assert log(exp(g)) == g


@given(series_strategy(unit=True))
@settings(max_examples=40, deadline=None)
def test_sqrt_squares(f):
    s = sqrt(f)
    assert s * s == f


@given(series_strategy(), series_strategy())
@settings(max_examples=40, deadline=None)
def test_leibniz(f, g):
    lhs = (f * g).derivative("x")
    rhs = f.derivative("x") * g + f * g.derivative("x")
    assert lhs.truncate_total(5) == rhs.truncate_total(5)
