from fractions import Fraction
import math

import pytest

import convexchain as cc


def test_printed_laws():
    assert cc.pmf(1) == [Fraction(1)]
    assert cc.pmf(2) == [Fraction(2, 3), Fraction(1, 3)]
    assert [p * 56700 for p in cc.pmf(6)] == [16200, 27810, 11142, 1477, 70, 1]
    assert cc.pmf_compositions(8) == cc.pmf(8) == cc.pmf_weights(8)


def test_backends():
    exact = cc.pmf(20)
    floats = cc.pmf(20, backend="float64")
    assert all(abs(f - float(e)) <= 1e-12 * float(e) for f, e in zip(floats, exact))
    big = cc.pmf(3, backend="bigfloat", digits=30)
    assert big[2].startswith("5.55555555555555555555555555")


def test_small_helpers():
    assert cc.weight(1, 3) == Fraction(7, 18)
    assert cc.monic_poly(3) == [0, 9, 8, 1]
    assert cc.pgf_eval(2, Fraction(-2), backend="exact") == 0
    assert cc.pgf_eval(7, 1.0) == pytest.approx(1.0)
    assert cc.factorial_moments(3, 1) == [Fraction(14, 9)]


def test_roots_and_factorization():
    assert cc.isolate_roots(2, width="1e-30") == [(0, 0), (-2, -2)]
    lo, hi = cc.isolate_roots(3, width="1e-30")[1]
    assert lo <= -4 + math.sqrt(7) <= hi or abs(float(lo) - (-4 + math.sqrt(7))) < 1e-15
    q = cc.bernoulli_factorization(3)
    assert q[0] == (1, 0)
    assert float(q[1][0]) == pytest.approx(1 / (5 - math.sqrt(7)), rel=1e-12)
    assert float(q[2][0]) == pytest.approx(1 / (5 + math.sqrt(7)), rel=1e-12)
    assert cc.roots_interlace(10)


def test_moments():
    r = cc.cumulants(2, kmax=4)
    assert r["cumulants"] == [Fraction(4, 3), Fraction(2, 9), Fraction(2, 27), Fraction(-2, 27)]
    assert cc.cumulants(50, source="closed_form")["L_cubed"] == cc.cumulants(50, kmax=3)["cumulants"][2]
    assert all(e["ok"] for e in cc.cumulant_bound_report(10, 8))
    assert cc.asymptotic_ratios(10**6)["var_ratio"] == pytest.approx(0.981987, rel=1e-5)


def test_pf():
    assert cc.check_pf_minors(6, 3)["ok"]
    assert cc.check_strong_log_concavity(30)["ok"]
    with pytest.raises(ValueError):
        cc.check_pf_minors(5, 7)


def test_diagnostics():
    assert cc.kolmogorov_distance(10) == pytest.approx(0.253331, rel=1e-5)
    assert cc.mod_gaussian_profile(100, [0.0])["log_ratio"] == [0.0]
    k3, _ = cc.kappa4_of_Yn(1000)
    assert k3 == pytest.approx(1.0, abs=1e-15)
    scaled, target = cc.local_limit_profile(10**4, 0.25, 0.0, [("-1", "1")])
    assert target == pytest.approx(2 / math.sqrt(2 * math.pi))
    assert target / 2 < scaled < 2 * target
    assert cc.moderate_deviation_profile(10, 50.0)["upper_beyond_support"]


def test_simulation():
    assert cc.reflect_into_triangle(0.8, 0.7) == pytest.approx((0.2, 0.3))
    assert cc.chain_vertex_count([(0.05, 0.6), (0.6, 0.05)]) == 2
    a = cc.simulate(3, 200_000, seed=5, workers=1)
    b = cc.simulate(3, 200_000, seed=5, workers=2)
    assert a["counts"] == b["counts"]
    assert a["max_abs_dev"] < 0.005
    assert a["chi_square_ok"]


def test_verify():
    ok, checks = cc.verify("routes", 10)
    assert ok and checks


def test_bad_arguments():
    with pytest.raises(ValueError):
        cc.pmf(0)
    with pytest.raises(ValueError):
        cc.pmf(3, backend="quad")
