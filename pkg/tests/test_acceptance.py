"""One test per acceptance criterion; each records a pass/fail line for the terminal summary."""

import random
import time
from fractions import Fraction

from hkcalc import dyadic
from hkcalc.colength import QuotientSpec, colength
from hkcalc.constants import binomial_square_decomposition, euler_integral_check, schneider_sum
from hkcalc.poly import parse_poly
from hkcalc.theta import (evaluate, hadamard, theta_empirical, theta_monomial, theta_nodal_conjectural,
                          theta_square)
from hkcalc.verify import random_x, suite_dyadic, suite_parity

from oracles import naive_xor_convolve

F = Fraction
NODAL = parse_poly("x^3+y^3+x*y*z", "xyz")


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_nodal_desk_check(acceptance_report):
    brute, secs = _timed(lambda: theta_empirical(NODAL, 4).coeffs)
    recurrence = theta_nodal_conjectural(4).coeffs
    ok = brute == recurrence == (1, 6, 20, 52, 136) and secs < 300
    acceptance_report(1, ok, f"brute force {list(brute)} vs recurrence {list(recurrence)} in {secs:.2f}s")
    assert ok


def test_criterion_2_parity_identities(acceptance_report):
    rep, secs = _timed(lambda: suite_parity(12))
    acceptance_report(2, rep.passed, f"{len(rep.checks)} coefficient checks to order 12 in {secs:.3f}s")
    assert rep.passed


def test_criterion_3_hadamard_of_disjoint_sum(acceptance_report):
    def run():
        empirical = theta_empirical(parse_poly("x^3+y^3", "xy"), 3)
        product = hadamard([theta_empirical(parse_poly("x^3", "x"), 3),
                            theta_empirical(parse_poly("y^3", "y"), 3)])
        return empirical.coeffs, product.coeffs
    (emp, prod), secs = _timed(run)
    ok = emp == prod and secs < 10
    acceptance_report(3, ok, f"x^3+y^3 {list(emp)} vs product {list(prod)} in {secs:.2f}s")
    assert ok


def test_criterion_4_uv_recursion(acceptance_report):
    f = parse_poly("u*v+x^3", "uvx")

    def run():
        return [colength(f, QuotientSpec(3, n)) for n in range(4)]
    direct, secs = _timed(run)
    a = (1, 2, 2, 2)
    rec = [a[0]]
    for n in range(1, 4):
        rec.append(4 * rec[-1] + a[n])
    ok = direct == rec == [1, 6, 26, 106] and secs < 30
    acceptance_report(4, ok, f"colengths {direct} vs recursion {rec} in {secs:.2f}s")
    assert ok


def test_criterion_5_square_rule(acceptance_report):
    lhs = theta_square(theta_empirical(NODAL, 2)).coeffs
    rhs = theta_empirical(NODAL * NODAL, 3).coeffs
    ok = lhs == rhs and len(rhs) == 4
    acceptance_report(5, ok, f"square rule {list(lhs)} vs brute force f^2 {list(rhs)}")
    assert ok


def test_criterion_6_wht_convolution(acceptance_report):
    rng = random.Random(2024)
    bad = 0
    for _ in range(200):
        n = 2 ** rng.randint(0, 6)
        u = [F(rng.randint(-99, 99), rng.randint(1, 40)) for _ in range(n)]
        v = [F(rng.randint(-99, 99), rng.randint(1, 40)) for _ in range(n)]
        expected = naive_xor_convolve(u, v)
        bad += dyadic.xor_convolve(u, v, method="wht") != expected
        bad += dyadic.xor_convolve(u, v, method="naive") != expected
    acceptance_report(6, bad == 0, f"200 random rational vector pairs, {bad} mismatches")
    assert bad == 0


def test_criterion_7_dyadic_properties(acceptance_report):
    rep, secs = _timed(lambda: suite_dyadic(N=6, samples=100, seed=7))
    failures = sum(int(c.actual) for c in rep.checks)
    acceptance_report(7, rep.passed, f"levels 1-6, 100 random elements each, {failures} failures in {secs:.2f}s")
    assert rep.passed


def test_criterion_8_schneider_constant(acceptance_report):
    def run():
        return schneider_sum(F(1, 256), 14), binomial_square_decomposition(N=20, digits=25)
    (enc, dec), secs = _timed(run)
    ok_sum = enc.width <= F(1, 10**14) and enc.has_decimal_prefix("1.00006104353957")
    ok_ids = dec.identities_hold and len(dec.identities) == 21
    gap = abs(dec.lhs.value - dec.rhs.value)
    ok_agree = gap <= dec.lhs.error_bound + dec.rhs.error_bound
    ok = ok_sum and ok_ids and ok_agree and secs < 10
    acceptance_report(8, ok, f"sum {enc.decimal(16)} width {float(enc.width):.1e}; identities n<=20 "
                             f"{'hold' if ok_ids else 'FAIL'}; sides differ by {float(gap):.1e} in {secs:.2f}s")
    assert ok


def test_criterion_9_euler_integral(acceptance_report):
    def run():
        return [euler_integral_check(F(1, 8), 1e-10), euler_integral_check(F(1, 16), 1e-10)]
    checks, secs = _timed(run)
    diffs = [c.difference for c in checks]
    ok = all(d <= 1e-10 for d in diffs) and secs < 5
    acceptance_report(9, ok, f"|quadrature - series| = {', '.join(f'{d:.1e}' for d in diffs)} in {secs:.2f}s")
    assert ok


def test_criterion_10_multiplicity_enclosures(acceptance_report):
    cubic = evaluate(theta_monomial(3, 12), F(1, 4))
    nodal = evaluate(theta_nodal_conjectural(40), F(1, 16))
    ok_cubic = cubic.contains(F(5, 3))
    ok_width = nodal.width <= F(1, 10**12)
    ok_surd = nodal.contains_surd(F(4, 3), F(5, 98), 7)
    ok_digits = nodal.has_decimal_prefix("1.4683206451")
    ok = ok_cubic and ok_width and ok_surd and ok_digits
    acceptance_report(10, ok, f"x^3 at 1/4 contains 5/3: {ok_cubic}; nodal at 1/16 = {nodal.decimal(15)} "
                              f"width {float(nodal.width):.1e}, contains 4/3+5sqrt7/98: {ok_surd}")
    assert ok
