"""Series density/CDF, normalization diagnostics, and per-node SOP quadrature.

High-precision reference constants were frozen from 50-digit mpmath
evaluations of the same series; grid-quadrature cross-checks use Richardson
extrapolation of the trapezoid rule.
"""

import logging
import math

import numpy as np
import pytest

from wsnsec import (
    DomainError,
    LinkParams,
    NodeChannel,
    QuadratureSettings,
    SeriesSettings,
    SingularityError,
    WiretapModel,
    bivariate_weibull_pdf,
    integrate_adaptive,
    normalization_defect,
    normalization_limit,
    normalization_partial_sum,
    outdated_wiretap_cdf,
    outdated_wiretap_pdf,
    sop_per_node,
    weibull_snr_pdf,
)
from conftest import make_node

# mpmath, 50 dps: marginal CDF at x=10 for shape 3, mean SNR 31.62, rho 0.9
CDF_ORACLE = 0.022296899077960518856
# mpmath, 50 dps: integral of the joint density over [0,5]x[0,10] at
# mu1=1, mu2=2, beta=2, rho=0.95 (closed form in regularized gammas)
BOX_ORACLE = 0.94009772409865670738
# closed-form untruncated series mass rho/(2(1-rho^2)) * (1/sqrt(4rho^2-3) - 1)
LIMIT_090 = 2.4660981765457462464
LIMIT_095 = 1.365899278782111538

NO_EARLY_STOP = 1e-300


class TestSettings:
    def test_series_defaults(self):
        s = SeriesSettings()
        assert s.k_max == 10
        assert s.term_tol == 1e-12

    @pytest.mark.parametrize("kw", [dict(k_max=0), dict(k_max=-3), dict(term_tol=0.0), dict(term_tol=-1e-9)])
    def test_series_rejects(self, kw):
        with pytest.raises(DomainError):
            SeriesSettings(**kw)

    @pytest.mark.parametrize(
        "kw",
        [dict(rel_tol=0.0), dict(abs_tol=-1.0), dict(max_refinements=0)],
    )
    def test_quadrature_rejects(self, kw):
        with pytest.raises(DomainError):
            QuadratureSettings(**kw)


class TestBivariatePdf:
    def test_symmetric_in_pairs(self):
        a = bivariate_weibull_pdf(1.3, 2.7, 1.0, 2.0, 2.5, 0.9)
        b = bivariate_weibull_pdf(2.7, 1.3, 2.0, 1.0, 2.5, 0.9)
        assert a == pytest.approx(b, rel=1e-14)

    def test_rho_one_factorizes(self):
        # k=0 term alone: product of independent Weibull-form marginals
        beta, mu1, mu2 = 2.0, 3.0, 5.0
        for y1, y2 in [(0.5, 0.5), (1.0, 2.0), (3.0, 0.2)]:
            joint = bivariate_weibull_pdf(y1, y2, mu1, mu2, beta, 1.0)
            marg1 = beta * y1 ** (beta - 1) / mu1 * math.exp(-(y1**beta) / mu1)
            marg2 = beta * y2 ** (beta - 1) / mu2 * math.exp(-(y2**beta) / mu2)
            assert joint == pytest.approx(marg1 * marg2, rel=1e-13)

    def test_box_integral_matches_oracle(self):
        def trap(n1, n2):
            y1 = np.linspace(0.0, 5.0, n1)
            y2 = np.linspace(0.0, 10.0, n2)
            vals = np.zeros((n1, n2))
            # density -> 0 as either coordinate -> 0 for beta=2, boundary rows stay 0
            for i in range(1, n1):
                for j in range(1, n2):
                    vals[i, j] = bivariate_weibull_pdf(y1[i], y2[j], 1.0, 2.0, 2.0, 0.95)
            return np.trapezoid(np.trapezoid(vals, y2, axis=1), y1)

        fine, coarse = trap(201, 201), trap(101, 101)
        richardson = (4.0 * fine - coarse) / 3.0
        assert abs(richardson - BOX_ORACLE) < 1e-6

    def test_rejects_bad_args(self):
        with pytest.raises(DomainError):
            bivariate_weibull_pdf(0.0, 1.0, 1.0, 1.0, 2.0, 0.9)
        with pytest.raises(DomainError):
            bivariate_weibull_pdf(1.0, 1.0, -1.0, 1.0, 2.0, 0.9)
        with pytest.raises(DomainError):
            bivariate_weibull_pdf(1.0, 1.0, 1.0, 1.0, 2.0, 1.2)
        with pytest.raises(SingularityError):
            bivariate_weibull_pdf(1.0, 1.0, 1.0, 1.0, 2.0, 0.0)


class TestOutdatedPdf:
    @pytest.mark.parametrize("beta", [1.0, 2.0, 3.5])
    def test_rho_one_equals_plain_marginal(self, beta):
        link = LinkParams(shape=beta, mean_snr=12.0)
        model = WiretapModel(link, rho=1.0)
        g = np.linspace(0.01, 60.0, 100)
        got = outdated_wiretap_pdf(g, model)
        want = weibull_snr_pdf(g, link)
        np.testing.assert_allclose(got, want, rtol=1e-10)

    def test_zero_argument(self):
        model = WiretapModel(LinkParams(shape=3.0, mean_snr=10.0), rho=0.9)
        assert outdated_wiretap_pdf(0.0, model) == 0.0

    def test_rejects_negative(self):
        model = WiretapModel(LinkParams(shape=3.0, mean_snr=10.0), rho=0.9)
        with pytest.raises(DomainError):
            outdated_wiretap_pdf(-0.1, model)

    def test_partial_sums_nondecreasing_in_k_max(self, rng):
        # all series terms are positive, so truncation only removes mass
        for _ in range(100):
            beta = rng.uniform(0.7, 4.0)
            mean = rng.uniform(1.0, 80.0)
            rho = rng.uniform(0.4, 0.999)
            g = rng.uniform(0.01, 5.0 * mean)
            model = WiretapModel(LinkParams(shape=beta, mean_snr=mean), rho=rho)
            prev_pdf, prev_cdf = -1.0, -1.0
            for k_max in (1, 3, 6, 10):
                s = SeriesSettings(k_max=k_max, term_tol=NO_EARLY_STOP)
                p = float(outdated_wiretap_pdf(g, model, s))
                c = float(outdated_wiretap_cdf(g, model, s))
                assert p >= prev_pdf
                assert c >= prev_cdf
                prev_pdf, prev_cdf = p, c


class TestOutdatedCdf:
    def test_zero_at_origin(self):
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=10.0), rho=0.8)
        assert outdated_wiretap_cdf(0.0, model) == 0.0

    def test_rho_one_exponential(self):
        model = WiretapModel(LinkParams(shape=1.0, mean_snr=10.0), rho=1.0)
        got = float(outdated_wiretap_cdf(1.0, model))
        assert got == pytest.approx(1.0 - math.exp(-0.1), rel=1e-12)

    def test_frozen_oracle(self):
        model = WiretapModel(LinkParams(shape=3.0, mean_snr=31.62), rho=0.9)
        got = float(outdated_wiretap_cdf(10.0, model))
        assert abs(got - CDF_ORACLE) < 1e-15

    def test_nondecreasing(self):
        model = WiretapModel(LinkParams(shape=2.5, mean_snr=20.0), rho=0.85)
        x = np.linspace(0.0, 300.0, 400)
        c = outdated_wiretap_cdf(x, model)
        assert np.all(np.diff(c) >= 0.0)

    def test_consistent_with_pdf_quadrature_at_rho_one(self):
        # at rho=1 both series collapse to the plain Weibull pair, which are
        # a genuine pdf/CDF pair
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=15.0), rho=1.0)
        for x in (2.0, 10.0, 40.0):
            val, _ = integrate_adaptive(
                lambda g: outdated_wiretap_pdf(g, model), 0.0, x, rel_tol=1e-10, abs_tol=1e-14
            )
            assert val == pytest.approx(float(outdated_wiretap_cdf(x, model)), rel=1e-8)

    def test_cdf_is_not_the_pdf_integral_below_rho_one(self):
        # the two truncated series are mutually inconsistent for rho < 1: the
        # pdf mass exceeds 1 (and diverges untruncated for rho <= sqrt(3)/2)
        # while the CDF saturates at 1/rho, so the integrated pdf overshoots
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=5.0), rho=0.9)
        s = SeriesSettings(k_max=10, term_tol=NO_EARLY_STOP)
        x = 100.0
        val, _ = integrate_adaptive(
            lambda g: outdated_wiretap_pdf(g, model, s), 0.0, x, rel_tol=1e-10, abs_tol=1e-14
        )
        cdf = float(outdated_wiretap_cdf(x, model, s))
        assert val > cdf + 0.5

    def test_saturates_toward_inverse_rho(self):
        rho = 0.9
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=5.0), rho=rho)
        tail = float(outdated_wiretap_cdf(1e4, model, SeriesSettings(k_max=40, term_tol=NO_EARLY_STOP)))
        assert tail > 1.0
        assert tail == pytest.approx(1.0 / rho, rel=1e-12)


class TestNormalization:
    def test_defect_vanishes_at_rho_one(self):
        model = WiretapModel(LinkParams(shape=2.5, mean_snr=18.0), rho=1.0)
        assert abs(normalization_defect(model)) < 1e-9

    @pytest.mark.parametrize("rho", [0.9, 0.95, 0.99])
    @pytest.mark.parametrize("k_max", [5, 10, 15])
    def test_defect_matches_partial_sum(self, rho, k_max):
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=10.0), rho=rho)
        s = SeriesSettings(k_max=k_max, term_tol=NO_EARLY_STOP)
        got = normalization_defect(model, s)
        want = normalization_partial_sum(rho, k_max) - 1.0
        assert got == pytest.approx(want, rel=1e-9, abs=1e-12)

    def test_defect_grows_with_k_max_below_convergence(self):
        model = WiretapModel(LinkParams(shape=2.0, mean_snr=10.0), rho=0.7)
        s4 = SeriesSettings(k_max=4, term_tol=NO_EARLY_STOP)
        s8 = SeriesSettings(k_max=8, term_tol=NO_EARLY_STOP)
        d4 = normalization_defect(model, s4)
        d8 = normalization_defect(model, s8)
        assert 0.0 < d4 < d8

    def test_partial_sum_rho_one(self):
        for k_max in (1, 10, 30):
            assert normalization_partial_sum(1.0, k_max) == 1.0

    def test_limit_frozen_values(self):
        assert normalization_limit(0.9) == pytest.approx(LIMIT_090, rel=1e-14)
        assert normalization_limit(0.95) == pytest.approx(LIMIT_095, rel=1e-14)
        assert normalization_limit(1.0) == 1.0

    def test_limit_diverges_at_or_below_threshold(self):
        assert normalization_limit(math.sqrt(3.0) / 2.0) == math.inf
        assert normalization_limit(0.7) == math.inf

    def test_partial_sums_approach_limit_from_below(self):
        rho = 0.95
        sums = [normalization_partial_sum(rho, k) for k in (2, 5, 10, 15)]
        assert all(a < b for a, b in zip(sums, sums[1:]))
        assert sums[-1] < LIMIT_095
        # the geometric tail is below double resolution by k=40
        assert normalization_partial_sum(rho, 40) == pytest.approx(LIMIT_095, rel=1e-12)


class TestSopPerNode:
    def test_exponential_closed_form(self):
        # shape 1 on both links admits 1 - gs/(gs + 2^R ge) * exp(-(2^R-1)/gs)
        gs, ge, rate = 100.0, 31.62, 1.0
        node = NodeChannel(
            main=LinkParams(shape=1.0, mean_snr=gs),
            wiretap=WiretapModel(LinkParams(shape=1.0, mean_snr=ge), rho=1.0),
        )
        want = 1.0 - gs / (gs + 2.0**rate * ge) * math.exp(-(2.0**rate - 1.0) / gs)
        assert sop_per_node(node, rate) == pytest.approx(want, rel=1e-9)

    def test_eavesdropper_free_limit(self):
        # negligible wiretap SNR: outage reduces to P(main SNR < 2^R - 1)
        node = NodeChannel(
            main=LinkParams(shape=1.0, mean_snr=100.0),
            wiretap=WiretapModel(LinkParams(shape=1.0, mean_snr=1e-9), rho=1.0),
        )
        want = 1.0 - math.exp(-0.01)
        assert sop_per_node(node, 1.0) == pytest.approx(want, rel=1e-6)

    def test_bounds(self):
        for rho in (1.0, 0.9, 0.7):
            for rate in (0.5, 1.0, 3.0):
                node = make_node(rho=rho)
                v = sop_per_node(node, rate)
                assert 0.0 <= v <= 1.0

    def test_nondecreasing_in_rate(self):
        node = make_node()
        vals = [sop_per_node(node, r) for r in (0.25, 0.5, 1.0, 2.0, 4.0)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_nonincreasing_in_main_snr(self):
        vals = [sop_per_node(make_node(snr_main_db=db), 1.0) for db in (5.0, 10.0, 15.0, 20.0, 25.0)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(DomainError):
            sop_per_node(make_node(), 0.0)

    def test_clamps_negative_raw_value_with_warning(self, caplog):
        # strong main link, low rate, rho well below 1: excess series mass
        # pushes the coverage integral above 1 and the raw SOP below 0
        node = make_node(beta_s=3.0, snr_main_db=30.0, beta_e=3.0, snr_eve_db=0.0, rho=0.6)
        with caplog.at_level(logging.WARNING, logger="wsnsec"):
            v = sop_per_node(node, 0.1)
        assert v == 0.0
        assert any("clamped" in r.message for r in caplog.records)
