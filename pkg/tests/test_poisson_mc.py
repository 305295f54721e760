import io
import math

import numpy as np
import pytest

import windarea as wa
from windarea.errors import BadRate, WindAreaError
from windarea.poisson_mc import ensemble_fragment, write_ensemble_csv


def test_poisson_count_mean():
    w = wa.Window(0.0, 2.0, 0.0, 1.5)
    lam = 50.0 * w.area
    counts = [wa.sample_poisson(50.0, w, s).points.shape[0] for s in range(400)]
    mean = np.mean(counts)
    se = math.sqrt(lam / 400)
    assert abs(mean - lam) < 4 * se
    cloud = wa.sample_poisson(50.0, w, 0)
    assert cloud.points[:, 0].min() >= 0.0 and cloud.points[:, 0].max() <= 2.0
    assert cloud.points[:, 1].min() >= 0.0 and cloud.points[:, 1].max() <= 1.5


def test_zero_area_window_gives_empty_cloud():
    w = wa.Window(0.0, 0.0, 0.0, 1.0)
    cloud = wa.sample_poisson(100.0, w, 1)
    assert cloud.points.shape == (0, 2)
    r = wa.winding_sum(wa.unit_square(), cloud)
    assert r.value == 0.0 and r.skipped == 0


def test_window_validation():
    with pytest.raises(WindAreaError):
        wa.Window(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(WindAreaError):
        wa.Window(0.0, math.inf, 0.0, 1.0)


def test_sample_poisson_deterministic():
    w = wa.Window(-1.0, 1.0, -1.0, 1.0)
    a = wa.sample_poisson(200.0, w, 7)
    b = wa.sample_poisson(200.0, w, 7)
    assert np.array_equal(a.points, b.points)
    c = wa.sample_poisson(200.0, w, 8)
    assert a.points.shape != c.points.shape or not np.array_equal(a.points, c.points)
    with pytest.raises(WindAreaError):
        wa.sample_poisson(0.0, w, 1)


def test_circle_winding_sum_mean_is_enclosed_area():
    circle = wa.circle_path(512)
    ens = wa.cauchy_trial_ensemble(circle, 2000.0, 200, seed=3)
    # Campbell: E[S_K] = integral of the winding field = pi
    assert np.mean(ens.values) == pytest.approx(math.pi, rel=0.02)
    double = wa.circle_path(512, loops=2)
    ens2 = wa.cauchy_trial_ensemble(double, 2000.0, 200, seed=4)
    assert np.mean(ens2.values) == pytest.approx(2 * math.pi, rel=0.02)


def test_sum_value_is_integer_over_intensity():
    circle = wa.circle_path(256)
    cloud = wa.sample_poisson(500.0, wa.hull_window(circle), 5)
    r = wa.winding_sum(circle, cloud)
    assert (r.value * 500.0) == pytest.approx(round(r.value * 500.0), abs=1e-9)


def test_points_outside_hull_do_not_change_sum():
    circle = wa.circle_path(256)
    w = wa.hull_window(circle)
    cloud = wa.sample_poisson(300.0, w, 9)
    base = wa.winding_sum(circle, cloud)
    far = np.array([[10.0, 10.0], [-5.0, 3.0], [0.0, -7.0]])
    bigger = wa.Window(-10.0, 11.0, -10.0, 11.0)
    extended = wa.PointCloud(
        np.vstack([cloud.points, far]), cloud.intensity, bigger
    )
    assert wa.winding_sum(circle, extended).value == base.value


def test_on_curve_points_are_skipped():
    sq = wa.unit_square()
    pts = np.array([[0.5, 0.5], [0.0, 0.5], [1.0, 1.0], [2.0, 2.0]])
    cloud = wa.PointCloud(pts, 10.0, wa.Window(-1.0, 3.0, -1.0, 3.0))
    r = wa.winding_sum(sq, cloud)
    assert r.skipped == 2
    assert r.value == pytest.approx(0.1)  # one interior hit / K=10


def test_ensemble_deterministic_across_workers():
    p = wa.sample_brownian(512, 2)
    a = wa.cauchy_trial_ensemble(p, 1000.0, 60, seed=12, workers=1)
    b = wa.cauchy_trial_ensemble(p, 1000.0, 60, seed=12, workers=4)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.skipped, b.skipped)
    c = wa.cauchy_trial_ensemble(p, 1000.0, 60, seed=13)
    assert not np.array_equal(a.values, c.values)
    with pytest.raises(WindAreaError):
        wa.cauchy_trial_ensemble(p, 1000.0, 0, seed=1)


def test_poissonization_point_mass_exact():
    lam = 64.0
    ps, fs = wa.poissonization_check([1.0], lam, seed=21, n_sums=500)
    assert np.all(fs == 1.0)  # ceil(64)/64 exactly
    assert ps.shape == (500,)
    assert np.mean(ps) == pytest.approx(1.0, abs=4 / math.sqrt(lam * 500))
    # each sum is count/lam, an integer multiple of 1/64
    assert np.allclose(ps * lam, np.round(ps * lam))
    with pytest.raises(BadRate):
        wa.poissonization_check([1.0], 0.5, seed=1)
    with pytest.raises(WindAreaError):
        wa.poissonization_check([], 10.0, seed=1)


def test_poissonization_matches_fixed_count_in_distribution():
    x = wa.sample_cauchy(wa.CauchyParams(0.0, 1.0), 50000, 31)
    ps, fs = wa.poissonization_check(x, 1e4, seed=33, n_sums=1000)
    d = wa.ks_two_sample(ps, fs)
    crit = 1.628 * math.sqrt((1000 + 1000) / (1000 * 1000))  # 1% level
    assert d < crit


def test_ensemble_fragment_and_csv():
    p = wa.circle_path(128)
    ens = wa.cauchy_trial_ensemble(p, 500.0, 40, seed=8)
    frag = ensemble_fragment(ens)
    assert set(frag) == {"K", "trials", "position", "scale", "ks", "skipped"}
    assert frag["K"] == 500.0 and frag["trials"] == 40
    buf = io.StringIO()
    write_ensemble_csv(ens, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "trial,S_K"
    assert len(lines) == 41
    assert lines[1].startswith("0,")
