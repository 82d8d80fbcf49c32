import numpy as np
import pytest

from magnonlab.fits import FitResult, ScalingSeries, linear_fit, loglog_fit, _ols


def test_exact_line_recovered_with_zero_errors():
    ns = (4, 8, 12, 16)
    fit = linear_fit(ScalingSeries(ns, [0.5 * n + 1.0 for n in ns]))
    assert abs(fit.slope - 0.5) < 1e-12
    assert abs(fit.intercept - 1.0) < 1e-12
    assert fit.slope_stderr < 1e-12 and fit.intercept_stderr < 1e-12
    assert fit.residual_norm < 1e-12


def test_refit_of_fitted_samples_is_idempotent():
    rng = np.random.default_rng(2)
    ns = (3, 5, 8, 13, 21)
    values = rng.standard_normal(5).tolist()
    fit = linear_fit(ScalingSeries(ns, values))
    refit = linear_fit(ScalingSeries(ns, [fit.slope * n + fit.intercept for n in ns]))
    assert abs(refit.slope - fit.slope) < 1e-12
    assert abs(refit.intercept - fit.intercept) < 1e-12


def test_three_point_errors_match_hand_expansion():
    # normal equations expanded by hand for (1,1), (2,2), (3,4):
    # slope 3/2, intercept -2/3, RSS 1/6, sigma^2 = RSS/(n-2) = 1/6,
    # se_a = sqrt(sigma^2/Sxx) = sqrt(1/12),
    # se_b = sqrt(sigma^2 (1/3 + xbar^2/Sxx)) = sqrt(7/18)
    fit = linear_fit(ScalingSeries((1, 2, 3), (1.0, 2.0, 4.0)))
    assert abs(fit.slope - 1.5) < 1e-15
    assert abs(fit.intercept - (-2 / 3)) < 1e-15
    assert abs(fit.residual_norm - np.sqrt(1 / 6)) < 1e-15
    assert abs(fit.slope_stderr - np.sqrt(1 / 12)) < 1e-15
    assert abs(fit.intercept_stderr - np.sqrt(7 / 18)) < 1e-15


def test_affine_equivariance():
    ns = (2, 4, 6, 9)
    values = [1.0, 0.4, 2.2, 1.7]
    base = linear_fit(ScalingSeries(ns, values))
    shifted = linear_fit(ScalingSeries(ns, [v + 5.5 for v in values]))
    assert abs(shifted.slope - base.slope) < 1e-12
    assert abs(shifted.intercept - (base.intercept + 5.5)) < 1e-12


def test_loglog_slope_of_powers():
    ns = (4, 8, 16, 32)
    assert abs(loglog_fit(ScalingSeries(ns, [float(n) for n in ns])).slope - 1) < 1e-12
    assert abs(loglog_fit(ScalingSeries(ns, [2.0] * 4)).slope) < 1e-12
    fit = loglog_fit(ScalingSeries(ns, [1 + n / 2 for n in ns]))
    assert 0.8 < fit.slope <= 1.0
    fit = loglog_fit(ScalingSeries((8, 12, 16, 20), [4 - 4 / n for n in (8, 12, 16, 20)]))
    assert 0.0 <= fit.slope < 0.1


def test_loglog_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        loglog_fit(ScalingSeries((1, 2, 3), (1.0, 0.0, 2.0)))


def test_ols_rejects_degenerate_abscissa():
    with pytest.raises(ValueError):
        _ols(np.array([2.0, 2.0, 2.0]), np.array([1.0, 2.0, 3.0]))


def test_series_validation():
    with pytest.raises(ValueError):
        ScalingSeries((4, 4, 8), (1.0, 2.0, 3.0))
    with pytest.raises(ValueError):
        ScalingSeries((8, 4), (1.0, 2.0))
    with pytest.raises(ValueError):
        ScalingSeries((4, 8), (1.0,))
    with pytest.raises(ValueError):
        linear_fit(ScalingSeries((4, 8), (1.0, 2.0)))  # too few points


def test_fit_result_is_frozen():
    fit = FitResult(1.0, 0.0, 0.0, 0.0, 0.0, 3)
    with pytest.raises(AttributeError):
        fit.slope = 2.0
