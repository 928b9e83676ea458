"""Recursive-bisection strong DR: exact uniformity and adversary products."""

from fractions import Fraction
from math import ceil, log2, sqrt

import pytest

from qdice import strong_cf, strong_dr
from qdice.errors import ParameterRangeError


class TestBuildTree:
    def test_five_outcomes_matches_figure(self):
        tree = strong_dr.build_tree(5)
        assert (tree.left_prob, tree.right_prob) == (Fraction(3, 5), Fraction(2, 5))
        assert strong_dr.path_to(tree, 1) == [Fraction(3, 5), Fraction(2, 3), Fraction(1, 2)]

    def test_two_outcomes_single_balanced_flip(self):
        tree = strong_dr.build_tree(2)
        assert tree.left_prob == tree.right_prob == Fraction(1, 2)
        assert tree.left.is_leaf and tree.right.is_leaf

    def test_power_of_two_is_full_binary(self):
        tree = strong_dr.build_tree(4)
        assert strong_dr.depth(tree) == 2
        for leaf_path in ([1], [2], [3], [4]):
            assert strong_dr.path_to(tree, leaf_path[0]) == [Fraction(1, 2), Fraction(1, 2)]

    def test_left_child_takes_ceiling_half(self):
        for n in range(2, 30):
            tree = strong_dr.build_tree(n)
            assert tree.left.width == (n + 1) // 2
            assert tree.right.width == n // 2

    def test_too_small(self):
        with pytest.raises(ParameterRangeError):
            strong_dr.build_tree(1)


class TestHonestLeafProbs:
    def test_five_outcomes_exact(self):
        assert strong_dr.honest_leaf_probs(strong_dr.build_tree(5)) == [Fraction(1, 5)] * 5

    def test_two_outcomes(self):
        assert strong_dr.honest_leaf_probs(strong_dr.build_tree(2)) == [Fraction(1, 2)] * 2

    def test_nine_outcomes(self):
        assert strong_dr.honest_leaf_probs(strong_dr.build_tree(9)) == [Fraction(1, 9)] * 9

    @pytest.mark.parametrize("n", range(2, 65))
    def test_uniformity_all_sizes(self, n):
        assert strong_dr.honest_leaf_probs(strong_dr.build_tree(n)) == [Fraction(1, n)] * n


class TestAdversarySuccess:
    @pytest.mark.parametrize("n", range(2, 65))
    def test_zero_delta_is_inverse_sqrt(self, n):
        tree = strong_dr.build_tree(n)
        for target in (1, n // 2 + 1, n):
            assert strong_dr.adversary_success(tree, target, 0.0) == pytest.approx(
                1 / sqrt(n), abs=1e-12
            )

    def test_five_outcomes_small_delta(self):
        # direct product arithmetic oracle for the leftmost path
        expected = (sqrt(3 / 5) + 0.01) * (sqrt(2 / 3) + 0.01) * (sqrt(1 / 2) + 0.01)
        got = strong_dr.adversary_success(strong_dr.build_tree(5), 1, 0.01)
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(0.4650196991, abs=1e-9)

    def test_growth_constant_order_of_magnitude(self):
        # slope constant c is ~ sqrt(2/N): require agreement within a factor 2
        delta = 0.01
        value = strong_dr.adversary_success(strong_dr.build_tree(5), 1, delta)
        c = (value - 1 / sqrt(5)) / (ceil(log2(5)) * delta)
        assert sqrt(2 / 5) / 2 < c < sqrt(2 / 5) * 2

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 17, 33, 64])
    def test_first_order_growth(self, n):
        tree = strong_dr.build_tree(n)
        h = 1e-8
        slope = (
            strong_dr.adversary_success(tree, 1, h) - strong_dr.adversary_success(tree, 1, 0.0)
        ) / h
        for delta in (1e-4, 5e-4, 1e-3):
            value = strong_dr.adversary_success(tree, 1, delta)
            assert abs(value - 1 / sqrt(n) - delta * slope) <= 10 * delta**2

    def test_factors_clamped_at_one(self):
        tree = strong_dr.build_tree(2)
        assert strong_dr.adversary_success(tree, 1, 0.9) == 1.0

    def test_target_out_of_range(self):
        tree = strong_dr.build_tree(5)
        with pytest.raises(ParameterRangeError):
            strong_dr.adversary_success(tree, 0, 0.0)
        with pytest.raises(ParameterRangeError):
            strong_dr.adversary_success(tree, 6, 0.0)

    def test_negative_delta_rejected(self):
        with pytest.raises(ParameterRangeError):
            strong_dr.adversary_success(strong_dr.build_tree(3), 1, -0.01)


class TestDepthBound:
    @pytest.mark.parametrize("n", range(2, 65))
    def test_depth_at_most_log(self, n):
        assert strong_dr.depth(strong_dr.build_tree(n)) <= ceil(log2(n))


class TestCompositionWithStrongCF:
    def test_three_outcome_composition(self):
        # each node is a strong imbalanced CF with P0 = ceil(w/2)/w; the
        # per-node ideal cheat values sqrt(P0) multiply to the tree value
        tree = strong_dr.build_tree(3)
        product = 1.0
        node = tree
        while not node.is_leaf:
            p0 = float(node.left_prob)
            report = strong_cf.cheat_probs(strong_cf.solve_params(p0))
            product *= report.alice_force_0
            node = node.left
        assert product == pytest.approx(
            strong_dr.adversary_success(tree, 1, 0.0), abs=1e-12
        )
        assert product == pytest.approx(1 / sqrt(3), abs=1e-12)


class TestSerialization:
    def test_nested_json_with_rational_edges(self):
        d = strong_dr.build_tree(3).to_json_dict()
        assert d["left_prob"] == {"num": 2, "den": 3}
        assert d["right_prob"] == {"num": 1, "den": 3}
        assert d["left"]["left_prob"] == {"num": 1, "den": 2}
        assert d["right"] == {"lo": 3, "hi": 3}
