import math
from fractions import Fraction

import numpy as np
import pytest

import ergopt as eo
from ergopt.errors import EmptySetError, ShapeMismatchError, ValidationError

PHI = (1 + math.sqrt(5)) / 2


class TestPeriodicMeasure:
    def test_cylinder_mass(self, full2):
        mu = eo.periodic_measure(full2, eo.make_cycle(full2, (0, 1)))
        assert mu.cylinder_mass((0,)) == Fraction(1, 2)
        assert mu.cylinder_mass((0, 1)) == Fraction(1, 2)
        assert mu.cylinder_mass((0, 0)) == 0

    def test_integral_is_exact_cycle_mean(self, full2, step_potential):
        mu = eo.periodic_measure(full2, eo.make_cycle(full2, (0, 1, 1)))
        val = eo.integrate(mu, step_potential)
        assert val == Fraction(2, 3) and isinstance(val, Fraction)

    def test_mass_sums_to_one_on_each_level(self, golden):
        mu = eo.periodic_measure(golden, eo.make_cycle(golden, (0, 0, 1)))
        for n in range(1, 6):
            total = sum(mu.cylinder_mass(w) for w in eo.admissible_words(golden, n))
            assert total == 1


class TestMarkovMeasure:
    def test_stationary_vector_uniform(self, full2):
        mu = eo.markov_measure(full2, [[0.5, 0.5], [0.5, 0.5]])
        assert mu.stationary[0] == pytest.approx(0.5)
        assert mu.cylinder_mass((0, 1, 1)) == pytest.approx(0.125)

    def test_golden_mean_parry_like(self, golden):
        mu = eo.markov_measure(golden, [[0.5, 0.5], [1.0, 0.0]])
        # pi = (2/3, 1/3)
        assert mu.stationary[0] == pytest.approx(2 / 3)
        assert mu.cylinder_mass((1, 1)) == 0.0

    def test_integrate(self, full2, step_potential):
        mu = eo.markov_measure(full2, [[0.25, 0.75], [0.25, 0.75]])
        assert eo.integrate(mu, step_potential) == pytest.approx(0.75)

    def test_validation(self, full2, golden):
        with pytest.raises(ValidationError):
            eo.MarkovMeasure(full2, ((0.5, 0.4), (0.5, 0.5)), (0.5, 0.5))
        with pytest.raises(ValidationError):
            eo.MarkovMeasure(full2, ((0.5, 0.5), (0.5, 0.5)), (0.9, 0.1))
        with pytest.raises(ValidationError):
            # positive mass on the forbidden word 11
            eo.markov_measure(golden, [[0.5, 0.5], [0.5, 0.5]])

    def test_mass_sums_to_one_on_each_level(self, golden):
        mu = eo.markov_measure(golden, [[0.6, 0.4], [1.0, 0.0]])
        for n in range(1, 7):
            total = sum(mu.cylinder_mass(w) for w in eo.admissible_words(golden, n))
            assert total == pytest.approx(1.0)


class TestCesaroPush:
    def test_no_preamble_multiple_of_period_is_empirical(self, full2):
        c = eo.make_cycle(full2, (0, 1))
        nu = eo.cesaro_push(full2, (), c, 4)
        mu = eo.periodic_measure(full2, c)
        for n in range(1, 5):
            for w in eo.admissible_words(full2, n):
                assert nu.cylinder_mass(w) == mu.cylinder_mass(w)

    def test_integral_is_finite_birkhoff_average(self, full2, step_potential):
        nu = eo.cesaro_push(full2, (1, 1, 1), eo.make_cycle(full2, (0,)), 5)
        # windows: 1,1,1,0,0 -> average 3/5
        assert eo.integrate(nu, step_potential) == Fraction(3, 5)

    def test_converges_weakly_to_empirical(self, full2):
        c = eo.make_cycle(full2, (0, 1, 1))
        mu = eo.periodic_measure(full2, c)
        prev = None
        for n in (30, 300, 3000):
            nu = eo.cesaro_push(full2, (0, 0, 0, 0), c, n)
            d, err = eo.weakstar_distance(nu, mu, i_max=30)
            if prev is not None:
                assert d <= prev + err
            prev = d
        assert prev <= 0.01

    def test_bad_preamble_rejected(self, golden):
        with pytest.raises(ValidationError):
            eo.cesaro_push(golden, (1, 1), eo.make_cycle(golden, (0,)), 3)


class TestExponentOfMeasure:
    def test_periodic_exact(self, full2, fib_pair):
        mu = eo.periodic_measure(full2, eo.make_cycle(full2, (0, 1)))
        lo, hi = eo.exponent_of_measure(full2, fib_pair, mu)
        assert lo == pytest.approx(math.log(PHI), rel=1e-10)
        assert hi == pytest.approx(math.log(PHI), rel=1e-10)

    def test_bernoulli_scalar_exact_mean(self, full2, step_potential):
        A = eo.from_potential(step_potential)
        mu = eo.markov_measure(full2, [[0.5, 0.5], [0.5, 0.5]])
        lo, hi = eo.exponent_of_measure(full2, A, mu, n_max=8)
        assert lo == pytest.approx(0.5, abs=1e-9)
        assert hi == pytest.approx(0.5, abs=1e-9)

    def test_enclosure_ordered_and_shrinking(self, full2, fib_pair):
        mu = eo.markov_measure(full2, [[0.5, 0.5], [0.5, 0.5]])
        lo4, hi4 = eo.exponent_of_measure(full2, fib_pair, mu, n_max=4)
        lo8, hi8 = eo.exponent_of_measure(full2, fib_pair, mu, n_max=8)
        assert lo4 <= hi4 and lo8 <= hi8
        assert lo8 >= lo4 - 1e-12 and hi8 <= hi4 + 1e-12


class TestRestrictedBeta:
    def test_three_periodic_measures(self, full2, step_potential):
        A = eo.from_potential(step_potential)
        measures = [
            eo.periodic_measure(full2, eo.make_cycle(full2, w))
            for w in ((0,), (0, 1), (1,))
        ]
        res = eo.restricted_beta(measures, A)
        assert res.argmax == (2,)
        assert res.certified_singleton
        assert res.interval[0] == pytest.approx(1.0, abs=1e-9)

    def test_singleton_family(self, full2, fib_pair):
        mu = eo.periodic_measure(full2, eo.make_cycle(full2, (0, 1)))
        res = eo.restricted_beta([mu], fib_pair)
        assert res.argmax == (0,)
        assert res.interval[0] == pytest.approx(math.log(PHI), rel=1e-9)

    def test_empty_family_rejected(self, fib_pair):
        with pytest.raises(EmptySetError):
            eo.restricted_beta([], fib_pair)


class TestWeakstar:
    def test_basis_order(self, golden):
        basis = eo.measures.TestBasis(golden)
        cyls = basis.cylinders(6)
        assert cyls == [(0,), (1,), (0, 0), (0, 1), (1, 0), (0, 0, 0)]

    def test_two_fixed_points_derived_value(self, full2):
        mu0 = eo.periodic_measure(full2, eo.make_cycle(full2, (0,)))
        mu1 = eo.periodic_measure(full2, eo.make_cycle(full2, (1,)))
        d, err = eo.weakstar_distance(mu0, mu1, i_max=6)
        assert d == pytest.approx(0.890625, abs=1e-12)
        assert err == 2 * 2.0 ** -6

    def test_metric_axioms(self, full2):
        cycles = [eo.make_cycle(full2, w) for w in ((0,), (1,), (0, 1), (0, 1, 1))]
        mus = [eo.periodic_measure(full2, c) for c in cycles]
        for a in mus:
            assert eo.weakstar_distance(a, a, 8)[0] == 0.0
            for b in mus:
                dab = eo.weakstar_distance(a, b, 8)[0]
                assert dab == eo.weakstar_distance(b, a, 8)[0]
                for c in mus:
                    assert dab <= (eo.weakstar_distance(a, c, 8)[0]
                                   + eo.weakstar_distance(c, b, 8)[0] + 1e-12)

    def test_error_term_bounds_tail(self, full2):
        mu0 = eo.periodic_measure(full2, eo.make_cycle(full2, (0,)))
        mu1 = eo.periodic_measure(full2, eo.make_cycle(full2, (0, 1)))
        d_small, err = eo.weakstar_distance(mu0, mu1, i_max=5)
        d_big, _ = eo.weakstar_distance(mu0, mu1, i_max=20)
        assert abs(d_big - d_small) <= err


class TestHausdorff:
    def test_examples(self):
        assert eo.hausdorff_distance([1, 2], [1, 2]) == 0
        assert eo.hausdorff_distance([Fraction(0)], [Fraction(1)]) == 2
        # one-sided deviations 0 and 1 sum to 1
        assert eo.hausdorff_distance([0, 1], [0]) == 1

    def test_symmetry_and_empty(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            C = list(rng.standard_normal(3))
            D = list(rng.standard_normal(4))
            assert eo.hausdorff_distance(C, D) == eo.hausdorff_distance(D, C)
            assert eo.hausdorff_distance(C, D) >= 0
        with pytest.raises(EmptySetError):
            eo.hausdorff_distance([], [1.0])


class TestDispatch:
    def test_space_mismatch(self, full2, golden, step_potential):
        mu = eo.periodic_measure(golden, eo.make_cycle(golden, (0,)))
        with pytest.raises(ShapeMismatchError):
            eo.integrate(mu, step_potential)
