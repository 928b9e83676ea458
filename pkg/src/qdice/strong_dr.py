"""Two-party strong N-sided dice rolling by recursive bisection.

The outcome range is halved with a strong imbalanced coin flip at each
node: the left branch keeps the ceil(w/2) lower outcomes with probability
ceil(w/2)/w, the right branch the floor(w/2) upper outcomes. Every leaf's
edge-probability product telescopes to exactly 1/N, and a cheater who can
shift each flip to sqrt(edge) + delta succeeds with the product of those
factors along the target's path: 1/sqrt(N) at delta = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .errors import ParameterRangeError


@dataclass(frozen=True)
class SplitTree:
    """A node covering outcomes [lo, hi]; leaves are single outcomes."""

    lo: int
    hi: int
    left: "SplitTree | None" = None
    right: "SplitTree | None" = None

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def left_prob(self) -> Fraction:
        return Fraction((self.width + 1) // 2, self.width)

    @property
    def right_prob(self) -> Fraction:
        return Fraction(self.width // 2, self.width)

    def to_json_dict(self) -> dict:
        node: dict = {"lo": self.lo, "hi": self.hi}
        if not self.is_leaf:
            node["left_prob"] = {"num": self.left_prob.numerator, "den": self.left_prob.denominator}
            node["right_prob"] = {"num": self.right_prob.numerator, "den": self.right_prob.denominator}
            node["left"] = self.left.to_json_dict()
            node["right"] = self.right.to_json_dict()
        return node


def build_tree(n_outcomes: int) -> SplitTree:
    """Recursive ceil/floor bisection of [1, n_outcomes] down to singletons."""
    if n_outcomes < 2:
        raise ParameterRangeError(f"need at least 2 outcomes, got {n_outcomes}")

    def split(lo: int, hi: int) -> SplitTree:
        if lo == hi:
            return SplitTree(lo, hi)
        mid = lo + (hi - lo + 1 + 1) // 2 - 1  # left child takes ceil(w/2) outcomes
        return SplitTree(lo, hi, split(lo, mid), split(mid + 1, hi))

    return split(1, n_outcomes)


def path_to(tree: SplitTree, target_outcome: int) -> list[Fraction]:
    """Edge probabilities along the root-to-leaf path of the target outcome."""
    if not tree.lo <= target_outcome <= tree.hi:
        raise ParameterRangeError(
            f"target {target_outcome} outside [{tree.lo}, {tree.hi}]"
        )
    edges: list[Fraction] = []
    node = tree
    while not node.is_leaf:
        if target_outcome <= node.left.hi:
            edges.append(node.left_prob)
            node = node.left
        else:
            edges.append(node.right_prob)
            node = node.right
    return edges


def honest_leaf_probs(tree: SplitTree) -> list[Fraction]:
    """Exact honest probability of every outcome, in outcome order."""
    probs: list[tuple[int, Fraction]] = []

    def walk(node: SplitTree, acc: Fraction) -> None:
        if node.is_leaf:
            probs.append((node.lo, acc))
            return
        walk(node.left, acc * node.left_prob)
        walk(node.right, acc * node.right_prob)

    walk(tree, Fraction(1))
    probs.sort()
    return [p for _, p in probs]


def depth(tree: SplitTree) -> int:
    if tree.is_leaf:
        return 0
    return 1 + max(depth(tree.left), depth(tree.right))


def adversary_success(tree: SplitTree, target_outcome: int, delta: float) -> float:
    """Forcing probability for the target when every flip is shifted by delta.

    Product over the target's path of min(1, sqrt(edge probability) + delta);
    each factor is clamped at 1 since a forcing probability cannot exceed it.
    """
    if delta < 0.0:
        raise ParameterRangeError(f"delta must be non-negative, got {delta}")
    value = 1.0
    for edge in path_to(tree, target_outcome):
        value *= min(1.0, sqrt(float(edge)) + delta)
    return value
