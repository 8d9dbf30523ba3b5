from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crosscap import (
    CrossCapGerm,
    MapJet,
    MetricJet,
    TruncBiSeries,
    TruncUniSeries,
    first_fundamental_form,
    germ_to_mapjet,
    intrinsic_crosscap_test,
    metric_of_germ,
    validate_admissible,
    validate_normalized,
)
from crosscap.geometry import alphas_from_forms, check_mapjet, normalized_order2

from helpers import random_germ, seeded
from oracles import products, taylor_to_mono


def mono(coeffs, M):
    return TruncBiSeries.from_monomials(coeffs, M)


STANDARD = CrossCapGerm(4, {(0, 2): 2}, {})
EXAMPLE = CrossCapGerm(6, {(2, 0): 1, (0, 2): 1}, {3: 1})


def test_standard_metric():
    metric = metric_of_germ(STANDARD)
    assert metric.E == mono({(0, 0): 1, (0, 2): 1}, 4)
    assert metric.F == mono({(1, 1): 1}, 4)
    assert metric.G == mono({(2, 0): 1, (0, 2): 4}, 4)
    assert metric.alphas == (0, 0, 2)


def test_standard_metric_taylor_values():
    metric = metric_of_germ(STANDARD, 3)
    assert metric.E.to_dict() == {(0, 0): 1, (0, 2): 2}
    assert metric.F.to_dict() == {(1, 1): 1}
    assert metric.G.to_dict() == {(2, 0): 2, (0, 2): 8}


def test_example_metric():
    metric = metric_of_germ(EXAMPLE)
    assert metric.E == mono({(0, 0): 1, (2, 0): 1, (0, 2): 1}, 6)
    assert metric.F == mono({(1, 1): 2, (0, 3): Fraction(1, 2)}, 6)
    assert metric.G == mono(
        {(2, 0): 1, (0, 2): 1, (1, 2): 1, (0, 4): Fraction(1, 4)}, 6
    )
    assert metric.F[1, 1] == 2


def test_metric_matches_oracle():
    rng = seeded(31)
    for _ in range(10):
        germ = random_germ(rng, order=6)
        jet = germ_to_mapjet(germ)
        expected = products(
            taylor_to_mono(jet.X.to_dict()),
            taylor_to_mono(jet.Y.to_dict()),
            taylor_to_mono(jet.Z.to_dict()),
            dict(germ.b),
            6,
        )
        metric = metric_of_germ(germ)
        for mine, theirs in zip((metric.E, metric.F, metric.G), expected):
            assert mine.to_dict() == theirs


def test_alphas_read_back():
    rng = seeded(32)
    for _ in range(20):
        germ = random_germ(rng, order=3, z_order=3, b_order=3)
        metric = metric_of_germ(germ)
        assert metric.alphas == germ.alphas
        assert alphas_from_forms(metric.E, metric.F, metric.G) == germ.alphas


def test_metric_is_normalized():
    rng = seeded(33)
    for _ in range(20):
        assert validate_normalized(metric_of_germ(random_germ(rng, order=5)))


def test_validate_normalized_reports_failures():
    metric = metric_of_germ(EXAMPLE)
    broken = MetricJet(metric.E + mono({(1, 0): 1}, 6), metric.F, metric.G, metric.alphas)
    report = validate_normalized(broken)
    assert not report
    assert any("E(1, 0)" in f for f in report.failures)
    wrong_alpha = MetricJet(metric.E, metric.F, metric.G, (1, 1, 1))
    assert not validate_normalized(wrong_alpha)


def test_order2_rows_follow_formulas():
    a20, a11, a02 = Fraction(2, 3), Fraction(-1, 2), Fraction(5, 4)
    germ = CrossCapGerm(2, {(2, 0): a20, (1, 1): a11, (0, 2): a02}, {})
    metric = metric_of_germ(germ)
    for name, rows in normalized_order2((a20, a11, a02)).items():
        P = getattr(metric, name)
        for idx, value in rows.items():
            assert P[idx] == value


def test_hessian_standard():
    metric = metric_of_germ(STANDARD)
    hess, ok = intrinsic_crosscap_test(metric.E, metric.F, metric.G)
    assert hess == 16 and ok


@settings(max_examples=50, deadline=None)
@given(
    st.fractions(-3, 3, max_denominator=5),
    st.fractions(-3, 3, max_denominator=5),
    st.fractions(Fraction(1, 5), 3, max_denominator=5),
)
def test_hessian_is_4_a02_squared(a20, a11, a02):
    germ = CrossCapGerm(3, {(2, 0): a20, (1, 1): a11, (0, 2): a02}, {3: 1})
    metric = metric_of_germ(germ)
    hess, ok = intrinsic_crosscap_test(metric.E, metric.F, metric.G)
    assert hess == 4 * a02**2 and ok


def test_hessian_degenerate():
    E = TruncBiSeries.constant(1, 2)
    zero = TruncBiSeries.zero(2)
    hess, ok = intrinsic_crosscap_test(E, zero, zero)
    assert hess == 0 and not ok
    with pytest.raises(ValueError):
        intrinsic_crosscap_test(E.truncate(1), zero.truncate(1), zero.truncate(1))


def test_admissible():
    metric = metric_of_germ(EXAMPLE)
    assert validate_admissible(metric.E, metric.F, metric.G)
    E = mono({(0, 0): 1, (0, 1): 1}, 2)
    F = mono({(1, 0): Fraction(1, 2)}, 2)
    assert validate_admissible(E, F, TruncBiSeries.zero(2))
    bad_F = mono({(0, 1): Fraction(1, 2)}, 2)
    assert not validate_admissible(E, bad_F, TruncBiSeries.zero(2))
    G = mono({(1, 0): 1}, 2)
    assert not validate_admissible(E, F, G)


def test_germ_validation():
    with pytest.raises(ValueError):
        CrossCapGerm(3, {(0, 2): 0}, {})
    with pytest.raises(ValueError):
        CrossCapGerm(3, {(0, 2): 1, (1, 0): 1}, {})
    with pytest.raises(ValueError):
        CrossCapGerm(3, {(0, 2): 1}, {2: 1})
    with pytest.raises(ValueError):
        CrossCapGerm(3, {(0, 2): 1, (4, 0): 1}, {})


def test_first_fundamental_form_requires_orders():
    jet = germ_to_mapjet(EXAMPLE, 4)
    short = MapJet(jet.X.truncate(4), jet.Y, jet.Z, jet.beta)
    with pytest.raises(ValueError):
        first_fundamental_form(short)


def test_check_mapjet():
    jet = germ_to_mapjet(EXAMPLE, 3)
    assert check_mapjet(jet)
    shifted = MapJet(jet.X + TruncBiSeries.constant(1, 4), jet.Y, jet.Z, jet.beta)
    assert not check_mapjet(shifted)
    bad_beta = MapJet(jet.X, jet.Y, jet.Z, TruncUniSeries.from_taylor({2: 1}, 4))
    assert not check_mapjet(bad_beta)
