# python stuff
import itertools
import math
import unittest
from fractions import Fraction

import numpy as np

# django stuff
from django.conf import settings


# our testing code starts here
# -----------------------------------------------------------------------------
from aztec_dimers.constants import KIND_STEPS, Boundaries, DominoKinds, GapModes, GibbsPrefactors, Regimes  # noqa: E402
from aztec_dimers.exceptions import OutOfRange, OutsideLiquidRegion  # noqa: E402
from aztec_dimers.kernelcalc import correlation_probability, inverse_entry, south_line_kernel  # noqa: E402
from aztec_dimers.lattice import AztecDiamond, dimer_from_kind  # noqa: E402
from aztec_dimers.scalinglimits import (  # noqa: E402
    DiscreteKernel,
    QuadraticNumber,
    airy_ai,
    airy_ai_prime,
    airy_gen_functional,
    airy_kernel,
    airy_kernel_formula,
    airy_kernel_row_integral,
    bulk_field,
    bulk_prediction,
    bulk_saddle_function,
    bulk_white_vertex,
    distance_to_ellipse,
    edge_line,
    edge_params,
    edge_position,
    ellipse_points,
    ellipse_residual,
    fredholm_gap,
    geometric_multiplicity,
    gibbs_edge,
    gibbs_edge_probability,
    gibbs_inverse_entry,
    gibbs_point,
    gibbs_prefactor,
    omega_map,
    poisson_constant,
    poisson_prediction,
    saddle_derivatives,
    scaled_finite_kernel,
    thickened_gen_functional,
    thickened_intensity,
    thinned_gen_functional,
)

ROOT2 = QuadraticNumber.sqrt(2)

# 3 points, symmetric with spectrum inside (0, 1)
KERNEL = np.array([[0.5, 0.2, 0.1], [0.2, 0.4, 0.1], [0.1, 0.1, 0.3]])


def exact_configuration_probabilities(matrix):
    """P(the process is exactly S) for every subset S, by inclusion-exclusion over det K_T."""
    size = len(matrix)
    subsets = [frozenset(c) for r in range(size + 1) for c in itertools.combinations(range(size), r)]

    def correlation(T):
        if not T:
            return 1.0
        index = sorted(T)
        return float(np.linalg.det(matrix[np.ix_(index, index)]))

    return {S: sum((-1) ** len(T - S) * correlation(T) for T in subsets if S <= T) for S in subsets}


class TestQuadraticNumber(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_rational_roots_collapse(self):
        self.assertTrue(QuadraticNumber.sqrt(Fraction(9, 4)).is_rational)
        self.assertEqual(QuadraticNumber.sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertEqual(hash(QuadraticNumber(Fraction(3, 2))), hash(Fraction(3, 2)))

    def test_arithmetic(self):
        self.assertEqual((1 + ROOT2) * (ROOT2 - 1), 1)
        self.assertEqual(ROOT2 * ROOT2, 2)
        self.assertEqual(1 / (1 + ROOT2), ROOT2 - 1)
        self.assertEqual((1 + ROOT2) ** 2, 3 + 2 * ROOT2)
        self.assertAlmostEqual(float(ROOT2), math.sqrt(2))

    def test_order(self):
        self.assertEqual((1 - ROOT2).sign(), -1)
        self.assertEqual((2 - ROOT2).sign(), 1)
        self.assertLess(ROOT2, Fraction(3, 2))
        self.assertGreater(ROOT2, 1.41)
        self.assertTrue(-ROOT2 < -1)

    def test_mixed_fields(self):
        with self.assertRaises(ValueError):
            ROOT2 + QuadraticNumber.sqrt(3)


class TestEdgeParams(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_north_a1_k1(self):
        params = edge_params(1, 1)
        self.assertEqual(params.boundary, Boundaries.NORTH)
        self.assertEqual(params.u, 1 / (4 + 2 * ROOT2))
        self.assertEqual(params.v, 1 - 1 / (4 + 2 * ROOT2))
        self.assertEqual(params.z_c, 1 / (1 + ROOT2))
        self.assertEqual(params.alpha, 1 / (2 + ROOT2))
        self.assertEqual(params.lambda_cubed, (1 + ROOT2) / (8 + 4 * ROOT2))
        self.assertAlmostEqual(params.lam**3, float(params.lambda_cubed))

    def test_south_a1(self):
        params = edge_params(-1, 1)
        self.assertEqual(params.boundary, Boundaries.SOUTH)
        self.assertEqual(params.beta, ROOT2 - 1)
        self.assertGreater(params.lambda_cubed, 0)

    def test_out_of_range(self):
        for k in (0, Fraction(-1, 2), -2):
            with self.assertRaises(OutOfRange):
                edge_params(k, 1)

    def test_point_on_ellipse(self):
        for a in (Fraction(1), Fraction(1, 2), Fraction(3)):
            for k in (Fraction(1, 3), Fraction(1), Fraction(5, 2)):
                params = edge_params(k, a)
                self.assertEqual(ellipse_residual(params.u, params.v, a), 0)
                self.assertLess(distance_to_ellipse(float(params.u), float(params.v), a), 1e-3)

    def test_double_saddle(self):
        for a in (Fraction(1), Fraction(1, 2), Fraction(2)):
            for k in (Fraction(1, 2), Fraction(1), Fraction(2)):
                first, second = saddle_derivatives(edge_params(k, a))
                self.assertEqual(first, 0)
                self.assertEqual(second, 0)

    def test_float_weights(self):
        exact = edge_params(Fraction(3, 2), Fraction(1, 2))
        numeric = edge_params(1.5, 0.5)
        for name in ("u", "v", "z_c", "alpha", "beta", "lambda_cubed"):
            self.assertAlmostEqual(float(getattr(numeric, name)), float(getattr(exact, name)), places=12)
        first, second = saddle_derivatives(numeric)
        self.assertAlmostEqual(first, 0.0, places=10)
        self.assertAlmostEqual(second, 0.0, places=9)

    def test_edge_line_and_position(self):
        params = edge_params(1, 1)
        self.assertEqual(edge_line(params, 100), 85)
        self.assertEqual(edge_position(params, 100, 0.0), 15)
        self.assertLess(edge_position(params, 100, 1.0), 15)

    def test_ellipse_points(self):
        points = ellipse_points(2.0, 64)
        self.assertEqual(points.shape, (64, 2))
        for u, v in points:
            self.assertAlmostEqual(ellipse_residual(u, v, 2.0), 0.0, places=12)
        self.assertLess(ellipse_residual(0.5, 0.5, 2.0), 0)
        self.assertGreater(ellipse_residual(0.0, 0.0, 2.0), 0)


class TestBulk(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_omega_map_centre(self):
        self.assertAlmostEqual(omega_map(0.5, 0.5, 1), 1j, places=14)

    def test_omega_map_is_critical(self):
        xi1, xi2, a = 0.3, 0.6, 2.0
        z = omega_map(xi1, xi2, a)
        self.assertGreater(z.imag, 0)
        h = 1e-6
        derivative = (bulk_saddle_function(z + h, xi1, xi2, a) - bulk_saddle_function(z - h, xi1, xi2, a)) / (2 * h)
        self.assertLess(abs(derivative), 1e-6)

    def test_outside_liquid_region(self):
        with self.assertRaises(OutsideLiquidRegion):
            omega_map(0.05, 0.05, 1)

    def test_uniform_centre(self):
        Bx, By = bulk_field(0.5, 0.5, 1)
        self.assertAlmostEqual(Bx, 0.0)
        self.assertAlmostEqual(By, 0.0)
        for kind in DominoKinds.all():
            self.assertAlmostEqual(gibbs_edge_probability(kind, 0.0, 0.0, 1), 0.25, places=10)

    def test_probabilities_sum_to_one(self):
        for xi1, xi2, a in ((0.3, 0.6, 2.0), (0.45, 0.4, 1.0), (0.6, 0.55, 0.5)):
            total = sum(bulk_prediction(kind, xi1, xi2, a) for kind in DominoKinds.all())
            self.assertAlmostEqual(total, 1.0, places=8)
            for kind in DominoKinds.all():
                p = bulk_prediction(kind, xi1, xi2, a)
                self.assertGreaterEqual(p, -1e-10)
                self.assertLessEqual(p, 1 + 1e-10)

    def test_frozen_corner(self):
        # the corner at the origin is frozen into west dominoes
        for xi in (0.2, 0.16):
            probabilities = {kind: bulk_prediction(kind, xi, xi, 1) for kind in DominoKinds.all()}
            self.assertEqual(max(probabilities, key=probabilities.get), DominoKinds.WEST)

    def test_frozen_corners(self):
        corners = {(0.2, 0.2): DominoKinds.WEST, (0.8, 0.2): DominoKinds.SOUTH, (0.2, 0.8): DominoKinds.NORTH}
        for (xi1, xi2), expected in corners.items():
            probabilities = {kind: bulk_prediction(kind, xi1, xi2, 1.0) for kind in DominoKinds.all()}
            self.assertEqual(max(probabilities, key=probabilities.get), expected)

    @unittest.skipUnless(settings.AZTEC_DIMERS_RUN_SLOW_TESTS, "set AZTEC_DIMERS_RUN_SLOW_TESTS to run")
    def test_finite_edge_probabilities_approach_gibbs(self):
        n = 400
        for xi1, xi2, a in ((0.35, 0.55, 1.0), (0.5, 0.45, 0.5)):
            diamond = AztecDiamond(n, a)
            w = bulk_white_vertex(xi1, xi2, n)
            for kind in DominoKinds.all():
                step = KIND_STEPS[kind]
                dimer = dimer_from_kind((w[0] - step[0], w[1] - step[1]), kind)
                finite = correlation_probability([dimer], diamond)
                self.assertAlmostEqual(finite, bulk_prediction(kind, xi1, xi2, a), delta=2e-2)

    @unittest.skipUnless(settings.AZTEC_DIMERS_RUN_SLOW_TESTS, "set AZTEC_DIMERS_RUN_SLOW_TESTS to run")
    def test_finite_inverse_matches_balanced_prefactor(self):
        n, a, alpha = 400, 1.0, (1, 0)
        diamond = AztecDiamond(n, a)
        for xi1, xi2 in ((0.5, 0.5), (0.35, 0.55)):
            point = gibbs_point(xi1, xi2, a)
            Bx, By = bulk_field(xi1, xi2, a)
            w = bulk_white_vertex(xi1, xi2, n, alpha)
            for beta in ((1, 0), (0, 0)):
                b = (w[0] - 2 * alpha[0] - 1 + 2 * beta[0], w[1] - 2 * alpha[1] + 2 * beta[1] + 1)
                finite = abs(complex(inverse_entry(w, b, diamond).value))
                limit = abs(gibbs_inverse_entry(alpha[0], alpha[1], beta[0], beta[1], Bx, By, a))
                balanced = gibbs_prefactor(alpha, beta, point.r1, point.r2, GibbsPrefactors.BALANCED) * limit
                self.assertAlmostEqual(finite, balanced, delta=1e-2)
        # at the asymmetric point the shifted convention is off by r1^2 on the west edge
        point = gibbs_point(0.35, 0.55, a)
        Bx, By = bulk_field(0.35, 0.55, a)
        shifted = gibbs_prefactor(alpha, alpha, point.r1, point.r2, GibbsPrefactors.SHIFTED)
        w = bulk_white_vertex(0.35, 0.55, n, alpha)
        b = (w[0] - 1, w[1] + 1)
        finite = abs(complex(inverse_entry(w, b, diamond).value))
        limit = abs(gibbs_inverse_entry(alpha[0], alpha[1], alpha[0], alpha[1], Bx, By, a))
        self.assertGreater(abs(finite - shifted * limit), 1e-2)

    def test_prefactor(self):
        self.assertEqual(gibbs_prefactor((1, 2), (1, 2), 0.7, 1.3, GibbsPrefactors.BALANCED), 1.0)
        self.assertAlmostEqual(gibbs_prefactor((1, 0), (0, 0), 2.0, 1.0, GibbsPrefactors.SHIFTED), 2.0)
        with self.assertRaises(ValueError):
            gibbs_prefactor((0, 0), (0, 0), 1.0, 1.0, "other")

    def test_inverse_entry_matches_edge_probabilities(self):
        self.assertAlmostEqual((1j * gibbs_inverse_entry(0, 0, 0, 0, 0.0, 0.0, 1)).real, 0.25, places=10)
        a = 2.0
        Bx, By = bulk_field(0.3, 0.6, a)
        for kind in DominoKinds.all():
            c, m, q = gibbs_edge(kind, a)
            entry = gibbs_inverse_entry(m, 0, 0, q, Bx, By, a) * math.exp(m * Bx + q * By)
            self.assertAlmostEqual((c * entry).real, gibbs_edge_probability(kind, Bx, By, a), places=10)

    def test_bulk_white_vertex(self):
        self.assertEqual(bulk_white_vertex(0.5, 0.5, 10), (11, 10))
        self.assertEqual(bulk_white_vertex(0.5, 0.5, 10, (1, -1)), (13, 8))


class TestAiry(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_values_at_zero(self):
        self.assertAlmostEqual(airy_ai(0.0), 3 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0), places=14)
        self.assertAlmostEqual(airy_ai_prime(0.0), -(3 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0), places=14)

    def test_differential_equation(self):
        h = 1e-5
        for x in (-3.0, -0.5, 1.0, 2.5):
            second = (airy_ai_prime(x + h) - airy_ai_prime(x - h)) / (2 * h)
            self.assertAlmostEqual(second, x * airy_ai(x), places=7)

    def test_domain(self):
        with self.assertRaises(OutOfRange):
            airy_ai(50.0)
        with self.assertRaises(OutOfRange):
            airy_kernel(0.0, -41.0)

    def test_kernel_formula_against_quadrature(self):
        for x, y in ((0.0, 0.0), (-2.0, 1.0), (1.5, 0.5), (-4.0, -4.0)):
            self.assertAlmostEqual(airy_kernel(x, y), float(airy_kernel_formula(x, y)), places=9)

    def test_kernel_is_symmetric_and_continuous(self):
        self.assertAlmostEqual(float(airy_kernel_formula(0.3, -1.2)), float(airy_kernel_formula(-1.2, 0.3)), places=14)
        self.assertAlmostEqual(
            float(airy_kernel_formula(0.7, 0.7 + 1e-6)), float(airy_kernel_formula(0.7, 0.7)), places=6
        )

    def test_reproducing_property(self):
        # K_Ai is a projection: int K(x, y)^2 dy = K(x, x)
        for x in (0.0, -2.0):
            self.assertAlmostEqual(airy_kernel_row_integral(x), float(airy_kernel_formula(x, x)), delta=1e-3)

    def test_intensity(self):
        self.assertAlmostEqual(thickened_intensity(0.0, 0.5), 2 * float(airy_kernel_formula(0.0, 0.0)))
        self.assertEqual(geometric_multiplicity(1, 0.25), 0.75)
        self.assertAlmostEqual(sum(geometric_multiplicity(k, 0.25) for k in range(1, 60)), 1.0)


class TestGenFunctionals(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_thinned_against_configurations(self):
        phi = [0.3, 1.0, 0.6]
        alpha = 0.7
        expected = sum(
            p * np.prod([1 - alpha * phi[x] for x in S]) for S, p in exact_configuration_probabilities(KERNEL).items()
        )
        kernel = DiscreteKernel(points=(0, 1, 2), matrix=KERNEL)
        self.assertAlmostEqual(thinned_gen_functional(kernel, phi, alpha), expected, places=12)

    def test_thickened_against_configurations(self):
        phi = [0.3, 1.0, 0.6]
        beta = 0.4

        def factor(x):
            return (1 - beta) * (1 - phi[x]) / (1 - beta + beta * phi[x])

        configurations = exact_configuration_probabilities(KERNEL)
        expected = sum(p * np.prod([factor(x) for x in S]) for S, p in configurations.items())
        self.assertAlmostEqual(thickened_gen_functional(KERNEL, phi, beta), expected, places=12)

    def test_gap_probability(self):
        probabilities = exact_configuration_probabilities(KERNEL)
        self.assertAlmostEqual(thinned_gen_functional(KERNEL, [1, 1, 1], 1), probabilities[frozenset()], places=12)

    def test_discrete_kernel_shape(self):
        with self.assertRaises(ValueError):
            DiscreteKernel(points=(0, 1), matrix=KERNEL)


class TestFredholm(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_tracy_widom_at_zero(self):
        self.assertAlmostEqual(fredholm_gap(1, 0.0), 0.96937, delta=1e-3)

    def test_monotone(self):
        values = [fredholm_gap(1, s) for s in (-3.0, -1.0, 1.0)]
        self.assertTrue(0 < values[0] < values[1] < values[2] < 1)

    def test_thinning(self):
        self.assertAlmostEqual(fredholm_gap(0, -2.0), 1.0, places=12)
        self.assertGreater(fredholm_gap(0.5, -2.0), fredholm_gap(1, -2.0))

    def test_thickened_gap_ignores_multiplicity(self):
        self.assertAlmostEqual(
            fredholm_gap(0.6, -1.0, mode=GapModes.THICKENED), fredholm_gap(1, -1.0, mode=GapModes.THINNED), places=10
        )

    def test_gen_functional_modes(self):
        thickened = airy_gen_functional(lambda x: 0.5, 0.3, GapModes.THICKENED, -2.0)
        thinned = airy_gen_functional(lambda x: 0.5 / (1 - 0.3 + 0.3 * 0.5), 1, GapModes.THINNED, -2.0)
        self.assertAlmostEqual(thickened, thinned, places=10)
        with self.assertRaises(ValueError):
            airy_gen_functional(lambda x: 1.0, 1, "sideways", 0.0)


class TestPoisson(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_constant(self):
        self.assertAlmostEqual(poisson_constant(1, 1), math.pi ** (2 / 3) * 2 ** (1 / 3))
        self.assertAlmostEqual(poisson_constant(1, 8), 4 * poisson_constant(1, 1))
        with self.assertRaises(OutOfRange):
            poisson_constant(0, 1)

    def test_prediction(self):
        self.assertEqual(poisson_prediction(1, 1, 1.5)[0], 0.0)
        self.assertAlmostEqual(poisson_prediction(1, 1, 0.75)[0], 0.5)


class TestScaledKernel(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_diagonal(self):
        n = 12
        params = edge_params(1, 1)
        r, x = edge_line(params, n), edge_position(params, n, 0.0)
        self.assertEqual((r, x), (10, 2))
        density = south_line_kernel(x, x, r, AztecDiamond(n)).value
        value = scaled_finite_kernel(n, 1, 1, 0.0, 0.0, regime=Regimes.EXACT)
        self.assertAlmostEqual(value, params.lam * n ** (1.0 / 3.0) * float(density.re), places=12)
        self.assertGreater(value, 0)

    @unittest.skipUnless(settings.AZTEC_DIMERS_RUN_SLOW_TESTS, "set AZTEC_DIMERS_RUN_SLOW_TESTS to run")
    def test_numeric_matches_exact(self):
        exact = scaled_finite_kernel(12, 1, 1, 0.5, -0.5, regime=Regimes.EXACT)
        numeric = scaled_finite_kernel(12, 1, 1, 0.5, -0.5)
        self.assertAlmostEqual(numeric, exact, places=9)

    @unittest.skipUnless(settings.AZTEC_DIMERS_RUN_SLOW_TESTS, "set AZTEC_DIMERS_RUN_SLOW_TESTS to run")
    def test_approaches_airy_kernel(self):
        alpha = float(edge_params(1, 1).alpha)
        grid = list(itertools.product((-2.0, -1.0, 0.0, 1.0, 2.0), repeat=2))

        def deviation(n):
            return max(abs(scaled_finite_kernel(n, 1, 1, xi, eta) - alpha * airy_kernel(xi, eta)) for xi, eta in grid)

        coarse, fine = deviation(200), deviation(800)
        self.assertLess(fine, 0.05)
        self.assertLess(fine, coarse)

    def test_south_boundary_rejected(self):
        with self.assertRaises(OutOfRange):
            scaled_finite_kernel(20, 1, -1, 0.0, 0.0)
