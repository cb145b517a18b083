"""
Harmonic Extension Tests
========================
Tests for the finite-difference audit of the extended eigenform.
"""

import numpy as np
import pytest

from magsteklov.core.extension import (
    LAPLACIAN_STEP,
    boundary_function,
    extension,
    im_lie_ratio,
    random_interior_points,
    rotation_field,
    verify_harmonic_extension_b2n,
)
from magsteklov.errors import InvalidArgumentError, StencilError


class TestGeometry:
    """Tests for the boundary function and the rotation field."""

    def test_boundary_function(self):
        """x_j - i y_j."""
        assert boundary_function(0, np.array([0.3, 0.4])) == complex(0.3, -0.4)
        assert boundary_function(1, np.array([0.0, 0.0, 0.1, 0.2])) == complex(0.1, -0.2)

    def test_rotation_field(self):
        """(-y, x) in each complex coordinate."""
        field = rotation_field(np.array([1.0, 0.0, 0.0, 2.0]))
        np.testing.assert_allclose(field, [0.0, 1.0, -2.0, 0.0])

    def test_extension_shape(self):
        """One complex component per real coordinate."""
        w = extension(2, 0, np.array([0.1, 0.2, 0.3, 0.1]))
        assert w.shape == (4,)
        assert np.iscomplexobj(w)

    def test_random_points_inside(self):
        """Sample radii lie in [0.1, 0.9] and are reproducible."""
        points = random_interior_points(2, count=10, seed=3)
        radii = np.linalg.norm(np.array(points), axis=1)
        assert np.all((radii >= 0.1) & (radii <= 0.9))
        assert points == random_interior_points(2, count=10, seed=3)


class TestAudit:
    """Tests for the harmonicity and Lie-derivative audit."""

    @pytest.mark.parametrize("n", [1, 2])
    def test_extension_passes(self, n: int):
        """Every residual is below the default tolerance."""
        report = verify_harmonic_extension_b2n(n)
        assert report.passed
        assert report.points == 20
        assert report.laplacian_residual < 1e-6

    @pytest.mark.parametrize("n", [1, 2])
    def test_laplacian_stencil_is_exact_for_cubic_extension(self, n: int):
        """With step LAPLACIAN_STEP only rounding remains in the Laplacian residual."""
        assert LAPLACIAN_STEP == 1e-3
        report = verify_harmonic_extension_b2n(n)
        assert report.laplacian_residual < 1e-8

    def test_custom_points_and_coupling(self):
        """The Lie check scales with the coupling."""
        points = [[0.2, 0.1, -0.3, 0.4], [0.5, 0.0, 0.0, 0.5]]
        report = verify_harmonic_extension_b2n(2, t_check=3.0, sample_points=points)
        assert report.points == 2
        assert report.passed

    @pytest.mark.parametrize("n", [1, 2])
    def test_imaginary_ratio(self, n: int):
        """Im <L_eta w, w> / |w|^2 = -1 pointwise."""
        point = [0.3, 0.1, -0.2, 0.4][: 2 * n]
        assert im_lie_ratio(n, point) == pytest.approx(-1.0, abs=1e-6)

    def test_origin_rejected(self):
        """The stencil must stay off the origin."""
        with pytest.raises(StencilError):
            verify_harmonic_extension_b2n(1, sample_points=[[0.0, 0.0]])

    def test_boundary_rejected(self):
        """The stencil must stay inside the ball."""
        with pytest.raises(StencilError):
            verify_harmonic_extension_b2n(1, sample_points=[[0.9995, 0.0]])

    def test_wrong_dimension(self):
        """Points must live in R^{2n}."""
        with pytest.raises(InvalidArgumentError):
            verify_harmonic_extension_b2n(2, sample_points=[[0.3, 0.3]])

    def test_unsupported_ball(self):
        """Only B2 and B4 are audited."""
        with pytest.raises(InvalidArgumentError):
            verify_harmonic_extension_b2n(3)
