from fractions import Fraction

import numpy as np
import pytest

import ergopt as eo


@pytest.fixture(scope="session")
def full2():
    return eo.new_shift(2)


@pytest.fixture(scope="session")
def golden():
    return eo.new_shift(2, [[True, True], [True, False]])


@pytest.fixture(scope="session")
def fib_pair(full2):
    """The benchmark pair M0 upper-triangular, M1 lower-triangular."""
    M0 = np.array([[1.0, 1.0], [0.0, 1.0]])
    M1 = np.array([[1.0, 0.0], [1.0, 1.0]])
    return eo.MatrixCocycle(full2, 2, 1, {(0,): M0, (1,): M1})


@pytest.fixture(scope="session")
def step_potential(full2):
    return eo.ScalarPotential(full2, 1, {(0,): Fraction(0), (1,): Fraction(1)})


def random_sft(rng, k):
    """A random valid shift space on k letters (resampled until valid)."""
    while True:
        allowed = rng.random((k, k)) < 0.7
        try:
            return eo.new_shift(k, allowed.tolist())
        except eo.errors.ErgoptError:
            continue


def random_rational_potential(rng, space, memory, denom_max=10, num_max=20):
    table = {
        w: Fraction(int(rng.integers(-num_max, num_max + 1)),
                    int(rng.integers(1, denom_max + 1)))
        for w in eo.admissible_words(space, memory)
    }
    return eo.ScalarPotential(space, memory, table)


def brute_force_beta(space, f):
    """Independent oracle: max cycle mean over all primitive cycles up to
    the node-count period (never calls the Karp implementation)."""
    node_count = len(eo.admissible_words(space, max(f.memory - 1, 1)))
    best = None
    for c in eo.enumerate_cycles(space, node_count):
        total = sum(f.value(w) for w in c.windows(f.memory))
        mean = Fraction(total) / c.period
        if best is None or mean > best:
            best = mean
    return best
