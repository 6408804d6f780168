"""The extension operator, sampled fields and slice measures."""

import numpy as np
import pytest

from extomo.errors import InvalidArgumentError, ResourceLimitError
from extomo.extension import (SampledField, SliceMeasureSpec, extend,
                              extend_field, extend_plane_field, extend_slice,
                              sigma_hat_closed_form, slice_mass,
                              stationary_phase_decay_check)
from extomo.sphere import Density, bump_cap_density, make_sphere_grid


class TestExtend:
    def test_value_at_origin_is_total_mass(self, one_sphere):
        # extension at x = 0 is the plain surface integral of g
        val = extend(one_sphere, np.zeros(3))
        assert val == pytest.approx(4.0 * np.pi, rel=1e-12)

    def test_closed_form_circle(self, one_circle):
        # full circle measure extends to 2 pi J_0(|x|)
        r = np.array([0.0, 0.7, 2.4, 5.5, 11.0])
        pts = np.column_stack([r, np.zeros_like(r)])
        vals = np.abs(extend(one_circle, pts))
        assert np.allclose(vals, sigma_hat_closed_form(2, r), atol=1e-8)

    def test_closed_form_sphere(self, one_sphere):
        # full sphere measure extends to 4 pi sin(|x|)/|x|
        r = np.array([0.5, 1.0, 3.0, 7.0])
        pts = np.column_stack([np.zeros_like(r), r, np.zeros_like(r)])
        vals = np.abs(extend(one_sphere, pts))
        assert np.allclose(vals, sigma_hat_closed_form(3, r), rtol=1e-8)

    def test_linearity(self, sphere_grid, rng):
        a = Density(sphere_grid, rng.standard_normal(sphere_grid.node_count))
        b = Density(sphere_grid, rng.standard_normal(sphere_grid.node_count))
        combo = Density(sphere_grid, 2.0 * a.values - 3.0 * b.values)
        x = np.array([0.4, -1.1, 0.8])
        assert extend(combo, x) == pytest.approx(
            2.0 * extend(a, x) - 3.0 * extend(b, x))

    def test_modulation_is_translation(self, sphere_grid, rng):
        # g(xi) e^{i a.xi} extends to the translate by a
        g = Density(sphere_grid, rng.standard_normal(sphere_grid.node_count))
        a = np.array([0.3, 1.2, -0.7])
        mod = Density(sphere_grid, g.values * np.exp(1j * sphere_grid.nodes @ a))
        x = np.array([-0.5, 0.2, 1.4])
        assert extend(mod, x) == pytest.approx(extend(g, x + a))

    def test_l1_bound(self, sphere_grid, rng):
        g = Density(sphere_grid, rng.standard_normal(sphere_grid.node_count))
        pts = rng.uniform(-20, 20, (50, 3))
        assert np.abs(extend(g, pts)).max() <= g.norm(1) + 1e-10

    def test_nonfinite_point_rejected(self, one_sphere):
        with pytest.raises(InvalidArgumentError):
            extend(one_sphere, np.array([np.nan, 0.0, 0.0]))

    def test_chunked_matches_unchunked(self, one_sphere, rng):
        pts = rng.uniform(-5, 5, (37, 3))
        assert np.allclose(extend(one_sphere, pts, chunk=5),
                           extend(one_sphere, pts), rtol=1e-13)


class TestExtendField:
    def test_accelerated_matches_direct(self, rng):
        grid = make_sphere_grid(8, 16)
        g = Density(grid, rng.standard_normal(grid.node_count))
        direct = extend_field(g, 3.0, 9)
        fast = extend_field(g, 3.0, 9, accelerate=True)
        assert np.abs(direct.values - fast.values).max() < 1e-10

    def test_budget_enforced(self, one_sphere):
        with pytest.raises(ResourceLimitError):
            extend_field(one_sphere, 10.0, 200, cost_budget=10 ** 6)

    def test_plane_field_matches_pointwise(self, rng):
        grid = make_sphere_grid(8, 16)
        g = Density(grid, rng.standard_normal(grid.node_count))
        omega = np.array([0.0, 0.0, 1.0])
        t = 0.7
        vals, u = extend_plane_field(g, omega, t, 2.0, 5)
        # middle sample sits at x = t omega + u[2] e1 + u[2] e2 for the
        # deterministic in-plane basis; check the center point directly
        assert vals[2, 2] == pytest.approx(extend(g, t * omega), rel=1e-12)


class TestSampledField:
    def test_integrate_constant(self):
        f = SampledField(dim=2, half_width=1.0, points_per_axis=11,
                         values=np.ones((11, 11), dtype=complex))
        assert f.integrate().real == pytest.approx(4.0)

    def test_csv_round_trip(self, tmp_path, rng):
        vals = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
        f = SampledField(dim=2, half_width=2.0, points_per_axis=7, values=vals)
        path = tmp_path / "field.csv"
        f.to_csv(path)
        back = SampledField.from_csv(path)
        assert back.half_width == f.half_width
        assert np.allclose(back.values, f.values)


class TestSliceMeasures:
    def test_slice_mass_sphere_is_2pi(self):
        # the coarea weight makes the n = 3 slice mass independent of t
        for t in (0.0, 0.3, 0.8, 0.99):
            assert slice_mass(3, t) == pytest.approx(2.0 * np.pi, rel=1e-12)

    def test_slice_mass_circle(self):
        for t in (0.0, 0.5, 0.9):
            assert slice_mass(2, t) == pytest.approx(
                2.0 / np.sqrt(1.0 - t * t), rel=1e-12)

    def test_fubini_over_slices(self, one_sphere):
        # integrating the slice masses against dt recovers the sphere area
        t, w = np.polynomial.legendre.leggauss(32)
        omega = np.array([0.0, 0.0, 1.0])
        vals = [extend_slice(one_sphere, SliceMeasureSpec(omega, tk),
                             np.zeros(3)).real for tk in t]
        assert np.add.reduce(w * np.asarray(vals)) == pytest.approx(
            4.0 * np.pi, rel=1e-12)

    def test_circle_slice_two_points(self, one_circle):
        spec = SliceMeasureSpec(np.array([1.0, 0.0]), 0.6)
        val = extend_slice(one_circle, spec, np.zeros(2))
        assert val.real == pytest.approx(2.0 / np.sqrt(1.0 - 0.36), rel=1e-12)

    def test_offset_must_be_perpendicular(self, one_sphere):
        spec = SliceMeasureSpec(np.array([0.0, 0.0, 1.0]), 0.5)
        with pytest.raises(InvalidArgumentError):
            extend_slice(one_sphere, spec, np.array([0.0, 0.0, 1.0]))

    def test_slice_offset_domain(self):
        with pytest.raises(InvalidArgumentError):
            SliceMeasureSpec(np.array([0.0, 0.0, 1.0]), 1.0)

    def test_smooth_density_slice_oracle(self):
        # for g(xi) = xi_3 the slice at height t is g = t times the mass
        grid = make_sphere_grid(16, 32)
        g = Density(grid, grid.nodes[:, 2],
                    evaluator=lambda pts: np.atleast_2d(pts)[:, 2])
        spec = SliceMeasureSpec(np.array([0.0, 0.0, 1.0]), 0.4)
        val = extend_slice(g, spec, np.zeros(3))
        assert val.real == pytest.approx(0.4 * 2.0 * np.pi, rel=1e-12)


def test_stationary_phase_envelope():
    # |sigma hat| (1 + r)^((n-1)/2) stays in a fixed band over the radii
    # the default direction grid can resolve (phases out to r ~ 100)
    radii = np.array([4.0, 16.0, 64.0, 100.0])
    rep = stationary_phase_decay_check(3, radii)
    assert rep.pass_, rep.summary()


def test_bump_cap_extension_continuity():
    # refining the grid does not move the extension of a smooth density
    omega = np.array([0.0, 0.0, 1.0])
    x = np.array([1.3, -0.4, 2.2])
    vals = []
    for npolar in (32, 64):
        grid = make_sphere_grid(npolar, 2 * npolar)
        g = bump_cap_density(grid, omega, 0.6)
        vals.append(extend(g, x))
    assert abs(vals[0] - vals[1]) < 1e-3 * abs(vals[1])
