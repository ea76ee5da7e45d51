"""Grid suprema with screening and witness injection, and mixed-norm quotients."""
import math

import numpy as np
import pytest

from concave_phase_lab.counterexamples import (cantor_data, cantor_selectors,
                                               knapp_curve, matched_point_curve)
from concave_phase_lab.geometry import AlphaMeasure, Curve, cantor_level
from concave_phase_lab.maximal import (GridSpec, maximal_in_time,
                                       maximal_over_lines, mixed_norm,
                                       ratio_quotient)
from concave_phase_lab.spectral import FourierDatum, propagate_grid

M_PSI = 0.905175241828407

BAND = FourierDatum()   # reference band (1/2, 2): resolvable by tiny grids


def small_grid(*x_points, t_base=33):
    return GridSpec(x_points=tuple(x_points), t_base=t_base)


def test_grid_spec_validation():
    with pytest.raises(ValueError, match="strictly increasing"):
        GridSpec(x_points=())
    with pytest.raises(ValueError, match="strictly increasing"):
        GridSpec(x_points=(0.5, 0.5))
    with pytest.raises(ValueError, match="right of x_left_edge"):
        GridSpec(x_points=(0.0, 0.5))
    with pytest.raises(ValueError, match="t_base"):
        GridSpec(x_points=(1.0,), t_base=1)
    with pytest.raises(ValueError, match="refine_depth"):
        GridSpec(x_points=(1.0,), refine_depth=1)
    with pytest.raises(ValueError, match="theta_per_component"):
        GridSpec(x_points=(1.0,), theta_per_component=0)


def test_required_resolution_rule():
    grid = small_grid(1.0)
    assert grid.required_t_base(FourierDatum(scale=0.25)) == 192
    assert grid.required_t_base(BAND) == 12
    # under-resolved without witnesses: hard error; witnesses lift it
    wide = FourierDatum(scale=1.0 / 2.0 ** 7)
    with pytest.raises(ValueError, match="under-resolved"):
        maximal_in_time(wide, 0.5, Curve.vertical(), 0.5, small_grid(1.0))
    value = maximal_in_time(wide, 0.5, Curve.vertical(), 0.5, small_grid(1.0),
                            extra_t=(0.0,))
    assert value > 0


def test_supremum_dominates_base_grid():
    grid = small_grid(1.0)
    for x in (0.1, 0.45, 0.8):
        sup = maximal_in_time(BAND, 0.5, Curve.vertical(), x, grid)
        t_nodes = np.linspace(0.0, 1.0, grid.t_base)
        direct = np.abs(propagate_grid(BAND, 0.5, np.full_like(t_nodes, x), t_nodes))
        assert sup >= direct.max() - 1e-14


def test_supremum_monotone_in_depth():
    shallow = maximal_in_time(BAND, 0.5, Curve.vertical(), 0.3,
                              small_grid(1.0, t_base=17))
    deep = maximal_in_time(BAND, 0.5, Curve.vertical(), 0.3,
                           GridSpec(x_points=(1.0,), t_base=17, refine_depth=3))
    assert deep >= shallow - 1e-14


def test_supremum_amplitude_homogeneous():
    doubled = FourierDatum(amplitude=2.0)
    base = maximal_in_time(BAND, 0.5, Curve.vertical(), 0.3, small_grid(1.0))
    twice = maximal_in_time(doubled, 0.5, Curve.vertical(), 0.3, small_grid(1.0))
    assert twice == pytest.approx(2.0 * base, rel=1e-13)


def test_witness_value_is_certified_floor():
    grid = small_grid(1.0)
    for t0 in (0.13, 0.77):
        sup = maximal_in_time(BAND, 0.5, Curve.vertical(), 0.2, grid, extra_t=(t0,))
        direct = float(np.abs(propagate_grid(BAND, 0.5, np.array([0.2]),
                                             np.array([t0])))[0])
        assert sup >= direct - 1e-14


def test_lines_reduce_to_vertical_at_zero_direction():
    grid = small_grid(1.0)
    for x in (0.25, 0.6):
        vert = maximal_in_time(BAND, 0.5, Curve.vertical(), x, grid)
        line = maximal_over_lines(BAND, 0.5, [(0.0, 0.0)], x, grid)
        assert line == pytest.approx(vert, rel=1e-14)


def test_lines_dominate_their_base_mesh():
    grid = small_grid(1.0)
    x = 0.7
    sup = maximal_over_lines(BAND, 0.5, [(0.1, 0.1), (0.4, 0.4)], x, grid)
    bigger = maximal_over_lines(BAND, 0.5, [(0.1, 0.1), (0.4, 0.4), (0.8, 0.8)],
                                x, grid)
    t_nodes = np.linspace(0.0, 1.0, grid.t_base)
    # both suprema dominate every base sample; the larger set keeps the floor
    for theta in (0.1, 0.4):
        direct = np.abs(propagate_grid(BAND, 0.5, x - theta * t_nodes, t_nodes))
        assert sup >= direct.max() - 1e-14
        assert bigger >= direct.max() - 1e-14


def test_matched_curve_point_keeps_datum_mass():
    lam, m = 2.0 ** 6, 0.5
    datum = knapp_curve(lam, m, 1.0, 1.0)
    x = lam ** -m / 200.0
    point, residual = matched_point_curve(x, lam, m, 1.0)
    assert residual <= 0.5
    sup = maximal_in_time(datum, m, Curve.power(theta=1.0, kappa=1.0), x,
                          GridSpec(x_points=(x,)), extra_t=(point.t,))
    assert sup >= math.cos(0.5) * M_PSI / (2.0 * math.pi)


def test_cantor_endpoint_keeps_datum_mass():
    r, k, m = 0.25, 2, 0.5
    prefractal = cantor_level(r, k)
    lam_k = r ** -k
    datum = cantor_data(lam_k, m)
    theta = next(hi for lo, hi in prefractal.intervals if hi > 0.5)
    point = cantor_selectors(theta, prefractal)
    assert point.t == 1.0
    sup = maximal_over_lines(datum, m, [(theta, theta)], theta,
                             GridSpec(x_points=(theta,)),
                             extra=[(point.theta, point.t)])
    floor = lam_k ** (1.0 / m) * M_PSI / (2.0 * math.pi)
    assert sup >= floor * (1.0 - 1e-8)


def test_mixed_norm_values_and_domain():
    measure = AlphaMeasure(1.0)
    edges = np.array([0.0, 0.5, 1.0])
    got = mixed_norm(np.array([1.0, 2.0]), measure, 2.0, edges)
    assert got == pytest.approx(math.sqrt(2.5), abs=1e-14)
    assert mixed_norm(np.array([1.0, 2.0]), measure, 64.0, edges) > 0
    for bad_q in (1.5, 65.0):
        with pytest.raises(ValueError, match="q must lie in"):
            mixed_norm(np.array([1.0, 2.0]), measure, bad_q, edges)


def test_ratio_quotient_amplitude_invariant():
    grid = GridSpec(x_points=(0.25, 0.5, 0.75, 1.0), t_base=33)
    measure = AlphaMeasure(1.0)
    plain = ratio_quotient(BAND, 0.3, 0.5, Curve.vertical(), measure, 2.0, grid)
    scaled = ratio_quotient(FourierDatum(amplitude=3.0), 0.3, 0.5,
                            Curve.vertical(), measure, 2.0, grid)
    assert scaled == pytest.approx(plain, rel=1e-12)
    # dispatching on a degenerate direction set gives the vertical quotient
    lines = ratio_quotient(BAND, 0.3, 0.5, [(0.0, 0.0)], measure, 2.0, grid)
    assert lines == pytest.approx(plain, rel=1e-12)
