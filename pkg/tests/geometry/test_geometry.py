import math

import numpy as np
import pytest

from lpprox.errors import GeometryError
from lpprox.geometry import (
    Geometry,
    PoweredNormSubgradient,
    dual_exponent,
    dual_map_direction,
    dual_pnorm,
    parse_exponent,
    pnorm,
    powered_norm_subgradient,
    signed_power,
)

EXPONENTS = [1.0, 1.5, 2.0, 3.0, 4.0, math.inf]


class TestParseExponent:
    def test_parses_numbers_and_infinity(self):
        assert parse_exponent(2) == 2.0
        assert parse_exponent("1.5") == 1.5
        assert math.isinf(parse_exponent("inf"))
        assert math.isinf(parse_exponent(" Infinity "))

    def test_rejects_garbage(self):
        with pytest.raises(GeometryError):
            parse_exponent("two")


class TestDualExponent:
    def test_conjugate_pairs(self):
        assert math.isinf(dual_exponent(1))
        assert dual_exponent(math.inf) == 1.0
        assert dual_exponent(2) == 2.0
        assert dual_exponent(3) == pytest.approx(1.5)

    def test_rejects_exponents_below_one(self):
        with pytest.raises(GeometryError):
            dual_exponent(0.5)

    def test_geometry_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            dual_exponent(0.5)


class TestPnorm:
    def test_known_values(self):
        x = np.array([3.0, -4.0])
        assert pnorm(x, 1) == 7.0
        assert pnorm(x, 2) == 5.0
        assert pnorm(x, math.inf) == 4.0
        assert pnorm(x, 3) == pytest.approx((27.0 + 64.0) ** (1.0 / 3.0))

    def test_zero_and_empty(self):
        assert pnorm(np.zeros(3), 4) == 0.0
        assert pnorm(np.array([]), 2) == 0.0

    def test_large_exponent_does_not_overflow(self):
        assert pnorm(np.array([1e200, 1e200]), 8) == pytest.approx(1e200 * 2 ** (1.0 / 8.0))

    def test_holder_inequality(self, rng):
        for p in EXPONENTS:
            for _ in range(50):
                x, g = rng.standard_normal(6), rng.standard_normal(6)
                assert abs(float(np.dot(g, x))) <= pnorm(x, p) * dual_pnorm(g, p) * (1.0 + 1e-12)


class TestSignedPower:
    def test_signs_and_zero_guard(self):
        out = signed_power(np.array([-2.0, 0.0, 3.0, 1e-320]), 2.0)
        assert out.tolist() == [-4.0, 0.0, 9.0, 0.0]


class TestGeometry:
    def test_from_p(self):
        geometry = Geometry.from_p(3)
        assert geometry.p == 3.0
        assert geometry.p_star == pytest.approx(1.5)
        assert geometry.m == 3.0
        assert Geometry.from_p(1.5).m == 2.0

    def test_smoothness(self):
        assert Geometry.from_p(2).is_smooth
        assert not Geometry.from_p(1).is_smooth
        assert not Geometry.from_p("inf").is_smooth
        with pytest.raises(GeometryError):
            Geometry.from_p(1).require_smooth("test")

    def test_str(self):
        assert str(Geometry.from_p(2)) == "l2"
        assert str(Geometry.from_p(math.inf)) == "linf"


class TestPoweredNormSubgradient:
    @pytest.mark.parametrize("p", EXPONENTS)
    @pytest.mark.parametrize("r", [2.0, 3.0])
    def test_norm_and_inner_product_identities(self, rng, p, r):
        geometry = Geometry.from_p(p)
        for _ in range(20):
            x, y = rng.standard_normal(5), rng.standard_normal(5)
            lam = float(rng.uniform(0.1, 2.0))
            check = PoweredNormSubgradient(x, y, r, lam, geometry)
            norm_residual, inner_residual = check.identity_residuals()
            scale = max(1.0, check.expected_inner())
            assert norm_residual <= 1e-9 * scale
            assert inner_residual <= 1e-9 * scale

    def test_zero_at_the_base_point(self):
        x = np.array([1.0, 2.0])
        v = powered_norm_subgradient(x, x, 2.0, 1.0, Geometry.from_p(3))
        assert np.all(v == 0.0)

    def test_infinite_lam_gives_zero(self):
        v = powered_norm_subgradient(np.zeros(2), np.ones(2), 2.0, math.inf, Geometry.from_p(2))
        assert np.all(v == 0.0)

    def test_euclidean_case_is_the_difference(self, rng):
        x, y = rng.standard_normal(4), rng.standard_normal(4)
        v = powered_norm_subgradient(x, y, 2.0, 0.5, Geometry.from_p(2))
        assert np.allclose(v, (y - x) / 0.5)


class TestDualMapDirection:
    @pytest.mark.parametrize("p", EXPONENTS)
    def test_unit_norm_and_alignment(self, rng, p):
        geometry = Geometry.from_p(p)
        g = rng.standard_normal(6)
        u = dual_map_direction(g, geometry)
        assert geometry.norm(u) == pytest.approx(1.0)
        assert float(np.dot(g, u)) == pytest.approx(geometry.dual_norm(g))

    def test_zero_gradient(self):
        assert np.all(dual_map_direction(np.zeros(3), Geometry.from_p(2)) == 0.0)
