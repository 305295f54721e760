import math

import numpy as np
import pytest

import windarea as wa
from windarea.errors import WindAreaError


def test_parabola_line_integral():
    # x dy on y = x^2, x in [0,1]: int x * 2x dx = 2/3
    p = wa.parabola_path(4096)
    assert wa.line_integral_x_dy(p) == pytest.approx(2.0 / 3.0, rel=1e-6)


def test_parabola_levy_area():
    # chord-closed enclosed area: 2/3 - (0+1)/2 * 1 = 1/6
    p = wa.parabola_path(4096)
    assert wa.levy_area(p) == pytest.approx(1.0 / 6.0, rel=1e-6)


def test_shoelace_equals_trapezoid_levy_exactly():
    for s in range(30):
        p = wa.sample_brownian(512, s)
        a, b = wa.shoelace_area(p), wa.levy_area(p, "trapezoid")
        assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


def test_ito_vs_trapezoid_gap():
    # trapezoid - left_point = 1/2 sum dx dy, edge by edge
    p = wa.sample_brownian(1024, 3)
    gap = wa.line_integral_x_dy(p) - wa.ito_sum(p)
    half = 0.5 * float(np.sum(np.diff(p.x) * np.diff(p.y)))
    assert gap == pytest.approx(half, rel=1e-12, abs=1e-15)
    # same gap survives the (scheme-independent) chord correction
    assert wa.levy_area(p, "trapezoid") - wa.levy_area(p, "left_point") == (
        pytest.approx(half, rel=1e-12, abs=1e-15)
    )


def test_levy_bad_scheme():
    with pytest.raises(WindAreaError):
        wa.levy_area(wa.unit_square(), "midpoint")


def test_square_areas():
    sq = wa.unit_square()
    assert wa.shoelace_area(sq) == 1.0
    assert wa.levy_area(sq) == 1.0
    assert wa.shoelace_area(wa.reverse(sq)) == -1.0


def test_young_on_smooth_identity():
    # int y dy with x = y: left sums converge to (y_n^2 - y_0^2)/2, and the
    # left sum at any dissection is exactly that minus 1/2 sum (dy)^2
    y = np.linspace(0.0, 2.0, 4097)
    dissections = wa.dyadic_dissections(4096, 8)
    res = wa.young_integral(y, y, dissections)
    exact = (y[-1] ** 2 - y[0] ** 2) / 2
    idx = np.asarray(dissections[-1].indices)
    correction = 0.5 * float(np.sum(np.diff(y[idx]) ** 2))
    assert res.value == pytest.approx(exact - correction, rel=1e-12)
    assert res.scheme == "left_point"
    assert res.converged is False or res.diagnostic > 0  # quadratic term still shrinking
    assert res.dissection_size == len(dissections[-1])


def test_young_circle_levy_converges():
    p = wa.circle_path(2**14)
    dissections = wa.dyadic_dissections(2**14, 10)
    res = wa.young_integral(p.x, p.y, dissections, tol=1e-3)
    # left sums of x dy around the unit circle tend to pi (area) since the
    # closed loop kills the chord correction and the Ito gap is O(mesh)
    assert res.value == pytest.approx(math.pi, abs=2e-3)
    assert res.converged is True


def test_young_single_dissection_no_verdict():
    y = np.linspace(0.0, 1.0, 9)
    res = wa.young_integral(y, y, [wa.Dissection((0, 4, 8))])
    assert res.diagnostic is None and res.converged is None


def test_young_errors():
    y = np.linspace(0.0, 1.0, 9)
    with pytest.raises(WindAreaError):
        wa.young_integral(y, y[:5], wa.dyadic_dissections(8, 2))
    with pytest.raises(WindAreaError):
        wa.young_integral(y, y, [])
    short = wa.dyadic_dissections(4, 1)  # ends at index 4, series ends at 8
    with pytest.raises(WindAreaError):
        wa.young_integral(y, y, short)


def test_stokes_residual_square():
    sq = wa.unit_square()
    f = wa.winding_field(sq, wa.grid_for_path(sq, 256))
    r = wa.stokes_residual(sq, f)
    assert r.levy == 1.0
    assert r.residual <= r.bound
    assert r.residual < 0.05
    assert r.grid_sum == pytest.approx(1.0, rel=0.05)


def test_stokes_residual_brownian_within_bound():
    for s in (2, 9, 17):
        p = wa.sample_brownian(2048, s)
        f = wa.winding_field(p, wa.grid_for_path(p, 512))
        r = wa.stokes_residual(p, f)
        assert r.residual <= r.bound
        assert r.levy == pytest.approx(wa.shoelace_area(p), rel=1e-12, abs=1e-15)


def test_curve_length_values():
    # open paths are measured on their chord closure: out 5, chord back 5
    assert wa.curve_length(wa.line_path((0.0, 0.0), (3.0, 4.0))) == 10.0
    assert wa.curve_length(wa.unit_square()) == 4.0
