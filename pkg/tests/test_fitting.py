"""Power-law fitting on scaling ladders."""
import numpy as np
import pytest

from concave_phase_lab.fitting import fit_loglog


def test_exact_power_law():
    x = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
    fit = fit_loglog(x, 5.0 * x ** 2)
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(np.log(5.0), abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_constant_data():
    x = np.array([1.0, 2.0, 4.0])
    fit = fit_loglog(x, np.full(3, 7.0))
    assert fit.slope == pytest.approx(0.0, abs=1e-12)
    assert fit.r_squared == 1.0


def test_noisy_power_law_recovery():
    rng = np.random.default_rng(42)
    x = np.geomspace(1.0, 100.0, 8)
    y = 3.0 * x ** 1.5 * (1.0 + 0.01 * rng.standard_normal(8))
    fit = fit_loglog(x, y)
    assert fit.slope == pytest.approx(1.5, abs=0.05)
    assert fit.r_squared > 0.999


def test_validation():
    with pytest.raises(ValueError, match="equal-length"):
        fit_loglog([1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError, match="equal-length"):
        fit_loglog([1.0], [1.0])
    with pytest.raises(ValueError, match="strictly positive"):
        fit_loglog([1.0, 2.0], [1.0, 0.0])
    with pytest.raises(ValueError, match="strictly positive"):
        fit_loglog([-1.0, 2.0], [1.0, 2.0])
