#!/usr/bin/env python3
"""
Test script for the transport module
This script tests exact and sliced W1, the sliced gradient and the bound checks
"""

import numpy as np
import pytest


def get_random_instance(rng, m, k):
    """Two equal-size point sets in R^k"""
    return rng.normal(size=(m, k)), rng.normal(size=(m, k))


def test_exact_w1_examples():
    """Hand-checked exact W1 values"""
    print("=" * 50)
    print("Testing exact_w1")
    print("=" * 50)

    from src.transport import exact_w1
    from src.utils.errors import AssignmentCapError, DimensionError, UnsupportedMarginalsError

    assert exact_w1([[0.0]], [[3.0]]) == 3.0
    assert exact_w1([[0.0], [2.0]], [[1.0], [3.0]]) == 1.0
    points = np.array([[1.0, 2.0], [3.0, -1.0], [0.5, 0.5]])
    assert exact_w1(points, points) == 0.0

    with pytest.raises(UnsupportedMarginalsError):
        exact_w1([[0.0]], [[1.0], [2.0]])
    with pytest.raises(DimensionError):
        exact_w1([[0.0, 1.0]], [[1.0]])
    with pytest.raises(AssignmentCapError):
        exact_w1(np.zeros((5, 1)), np.ones((5, 1)), cap=4)


def test_exact_w1_matches_brute_force():
    """Assignment solver equals the permutation minimum for m <= 7"""
    print("\n" + "=" * 50)
    print("Testing exact_w1 against brute force")
    print("=" * 50)

    from src.transport import brute_force_w1, exact_w1, exact_w1_1d
    from src.utils.seeding import make_rng

    rng = make_rng(2)
    for trial in range(200):
        m = int(rng.integers(1, 8))
        k = int(rng.integers(1, 4))
        A, B = get_random_instance(rng, m, k)
        assert abs(exact_w1(A, B) - brute_force_w1(A, B)) <= 1e-9
        if k == 1:
            assert abs(exact_w1_1d(A[:, 0], B[:, 0]) - exact_w1(A, B)) <= 1e-9

    for trial in range(30):
        m = int(rng.integers(1, 8))
        a, b = rng.normal(size=(2, m))
        assert abs(exact_w1_1d(a, b) - brute_force_w1(a, b)) <= 1e-9


def test_exact_w1_is_a_metric():
    """Symmetry and triangle inequality on random small sets"""
    print("\n" + "=" * 50)
    print("Testing metric properties")
    print("=" * 50)

    from src.transport import exact_w1
    from src.utils.seeding import make_rng

    rng = make_rng(3)
    for _ in range(50):
        A, B = get_random_instance(rng, 5, 2)
        C = rng.normal(size=(5, 2))
        ab = exact_w1(A, B)
        assert abs(ab - exact_w1(B, A)) <= 1e-9
        assert ab <= exact_w1(A, C) + exact_w1(C, B) + 1e-9
        assert ab > 0


def test_exact_w1_1d():
    """Sorted-matching closed form"""
    print("\n" + "=" * 50)
    print("Testing exact_w1_1d")
    print("=" * 50)

    from src.transport import exact_w1_1d
    from src.utils.errors import UnsupportedMarginalsError

    assert exact_w1_1d([0, 2], [1, 3]) == 1.0
    assert exact_w1_1d([4, 1, 2], [2, 4, 1]) == 0.0
    assert exact_w1_1d([5], [2]) == 3.0
    with pytest.raises(UnsupportedMarginalsError):
        exact_w1_1d([1, 2], [1])


def test_sliced_w():
    """Sliced W1 examples and symmetry"""
    print("\n" + "=" * 50)
    print("Testing sliced_w")
    print("=" * 50)

    from src.transport import ProjectionSet, exact_w1_1d, sliced_w
    from src.utils.seeding import make_rng

    proj = ProjectionSet(np.array([[1.0, 1.0]]) / np.sqrt(2.0))
    assert abs(sliced_w([[0.0, 0.0]], [[1.0, 1.0]], proj) - np.sqrt(2.0)) <= 1e-12

    a, b = [0.0, 2.0, 7.0], [1.0, 3.0, -1.0]
    assert sliced_w(a, b, ProjectionSet([[1.0]])) == exact_w1_1d(a, b)

    rng = make_rng(4)
    A, B = get_random_instance(rng, 6, 3)
    directions = ProjectionSet.sample(3, 16, seed=9)
    assert sliced_w(A, A, directions) == 0.0
    assert abs(sliced_w(A, B, directions) - sliced_w(B, A, directions)) <= 1e-12
    assert sliced_w(A, B, directions) > 0

    # same (seed, stream) gives the same directions
    again = ProjectionSet.sample(3, 16, seed=9)
    assert np.array_equal(directions.directions, again.directions)
    assert not np.array_equal(directions.directions, ProjectionSet.sample(3, 16, seed=9, stream=1).directions)

    with pytest.raises(ValueError):
        ProjectionSet([[1.0, 1.0]])


def test_sliced_w_gradient():
    """Sorted-matching gradient against central differences"""
    print("\n" + "=" * 50)
    print("Testing sliced_w_gradient")
    print("=" * 50)

    from src.transport import ProjectionSet, sliced_w, sliced_w_gradient
    from src.utils.seeding import make_rng

    assert np.array_equal(sliced_w_gradient([[0.0]], [[3.0]], ProjectionSet([[1.0]])), [[-1.0]])
    A = np.array([[1.0, 2.0], [0.0, -1.0]])
    assert not np.any(sliced_w_gradient(A, A, ProjectionSet.sample(2, 4, seed=0)))

    rng = make_rng(5)
    h = 1e-5
    checked = 0
    while checked < 50:
        A, B = get_random_instance(rng, 4, 3)
        proj = ProjectionSet.sample(3, 8, seed=int(rng.integers(1 << 30)))
        pa, pb = A @ proj.directions.T, B @ proj.directions.T
        # skip instances near a sorting tie or a zero difference
        gaps = np.abs(np.diff(np.sort(pa, axis=0), axis=0))
        diffs = np.abs(np.sort(pa, axis=0) - np.sort(pb, axis=0))
        if gaps.min() < 1e-3 or diffs.min() < 1e-3:
            continue

        gradient = sliced_w_gradient(A, B, proj)
        numeric = np.zeros_like(A)
        for index in np.ndindex(A.shape):
            plus, minus = A.copy(), A.copy()
            plus[index] += h
            minus[index] -= h
            numeric[index] = (sliced_w(plus, B, proj) - sliced_w(minus, B, proj)) / (2 * h)
        error = np.abs(gradient - numeric) / np.maximum(np.abs(gradient) + np.abs(numeric), 1e-6)
        assert error.max() <= 1e-4
        checked += 1


def test_verification_checks():
    """Self-coupling, triangle and deterministic bound checks"""
    print("\n" + "=" * 50)
    print("Testing verification checks")
    print("=" * 50)

    from src.algebra import (GridShape, SelectorFamily, enumerate_2d_patches,
                             enumerate_all_subsequences, enumerate_substrings)
    from src.transport import (lemma1_triangle_check, lemma2_selfcoupling_check,
                               theorem1_deterministic_check)
    from src.utils.errors import DimensionError
    from src.utils.seeding import make_rng

    assert lemma2_selfcoupling_check([[1.0, 2.0], [1.0, 2.0], [0.0, 3.0]]) == 0.0
    assert lemma2_selfcoupling_check([[4.0]]) == 0.0

    identity = SelectorFamily.from_indices([[0, 1, 2]], 3)
    lhs, rhs = theorem1_deterministic_check([1.0, 5.0, -2.0], [0.0, 1.0, 1.0], identity)
    assert lhs == rhs == 8.0
    assert theorem1_deterministic_check([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], identity) == (0.0, 0.0)

    rng = make_rng(6)
    families = [enumerate_substrings(9, 3), enumerate_all_subsequences(5, 2),
                enumerate_2d_patches(GridShape(3, 2))]
    for fam in families:
        for _ in range(1000):
            x_prime, g = rng.normal(size=(2, fam.d))
            lhs, rhs = theorem1_deterministic_check(x_prime, g, fam)
            assert lhs <= rhs + 1e-9

    fam = enumerate_substrings(6, 2)
    for _ in range(100):
        x, x_prime, g = rng.normal(size=(3, fam.d))
        sigma = rng.permutation(len(fam))
        sigma_prime = rng.permutation(len(fam))
        lhs, rhs = lemma1_triangle_check(x, x_prime, g, fam, sigma, sigma)
        assert lhs <= rhs + 1e-9
        # any pair of selector permutations keeps the inequality
        lhs, rhs = lemma1_triangle_check(x, x_prime, g, fam, sigma, sigma_prime)
        assert lhs <= rhs + 1e-9

    with pytest.raises(DimensionError):
        theorem1_deterministic_check([1.0, 2.0], [1.0, 2.0], identity)
    with pytest.raises(ValueError):
        lemma1_triangle_check([1, 2, 3, 4, 5, 6], [0] * 6, [0] * 6, fam, sigma=[0, 0, 1, 2, 3])


def run_all_tests():
    """Run all transport tests"""
    print("Transport Test Suite")
    print("=" * 80)

    test_exact_w1_examples()
    test_exact_w1_matches_brute_force()
    test_exact_w1_is_a_metric()
    test_exact_w1_1d()
    test_sliced_w()
    test_sliced_w_gradient()
    test_verification_checks()

    print("\n" + "=" * 80)
    print("All transport tests completed!")
    print("=" * 80)


if __name__ == "__main__":
    run_all_tests()
