import random
from fractions import Fraction

import pytest

from hkcalc.products import POINT, STEP, SUM_INDICES, AssemblyMismatch, direct_sum, parity_product_sums
from hkcalc.theta import Growth, ThetaSeries, theta_monomial, theta_nodal_conjectural


def brute_sum(a, i, j):
    return sum((Fraction(a[2 * n + i] * a[2 * n + j]) * STEP**n
                for n in range(len(a)) if 2 * n + max(i, j) < len(a)), Fraction(0))


def test_smooth_like_series_keeps_only_first_terms():
    tf = ThetaSeries((1,) + (0,) * 10, 3, "closed_form", Growth(1, 1))
    sums = parity_product_sums(tf)
    assert sums["a2n*a2n"].direct == 1
    for label in ("a2n+1*a2n+1", "a2n*a2n+1", "a2n+1*a2n+2", "a2n*a2n+2"):
        assert sums[label].direct == 0


def test_direct_sum_against_loop():
    rng = random.Random(3)
    a = [rng.randint(-50, 50) for _ in range(17)]
    for i, j in SUM_INDICES.values():
        assert direct_sum(a, i, j) == brute_sum(a, i, j)


@pytest.mark.parametrize("N", [6, 13, 30])
def test_nodal_assemblies_agree_and_enclose(N):
    tf = theta_nodal_conjectural(N)
    sums = parity_product_sums(tf)
    assert set(sums) == set(SUM_INDICES)
    for label, ps in sums.items():
        assert ps.direct == brute_sum(tf.coeffs, *SUM_INDICES[label])
        assert ps.enclosure.contains(ps.direct) or ps.enclosure.error_bound > 0
        assert ps.series.r == 7


def test_enclosures_nest_as_order_grows():
    coarse = parity_product_sums(theta_nodal_conjectural(12))
    fine = parity_product_sums(theta_nodal_conjectural(40))
    for label in SUM_INDICES:
        assert coarse[label].enclosure.overlaps(fine[label].enclosure)
        assert fine[label].enclosure.width < coarse[label].enclosure.width
        assert fine[label].enclosure.width < Fraction(1, 10**20)


def test_requires_three_variables():
    with pytest.raises(ValueError):
        parity_product_sums(theta_monomial(3, 8))


def test_point_and_step():
    assert POINT**2 == STEP
    assert issubclass(AssemblyMismatch, AssertionError)
