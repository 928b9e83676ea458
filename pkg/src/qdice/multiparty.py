"""Multi-party strong dice rolling by sequential pair stages.

2m parties decide among n^m outcomes: in stage k the k-th pair strongly
rolls an n-sided die, narrowing the surviving block of outcomes by a
factor n. A coalition of 2m-1 cheaters only has to bias the one stage the
honest party plays, and only one sub-outcome there leads to their target,
so their forcing probability is sqrt(1/n) + eps_bar, which meets the
M-party Kitaev product bound with equality at eps_bar = 0.

Also covers the near-optimal three-party three-sided protocol (weak roll
to pick a chooser, strong coin flip between the losers) and its 3n-party
3^n-sided generalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .errors import ParameterRangeError

THREE_PARTY_CHOICE_SET = (1, 2, 3)


@dataclass(frozen=True)
class PairingStage:
    parties: tuple[int, int]
    n_blocks: int
    block_size: int


@dataclass(frozen=True)
class PairingProtocol:
    """m sequential pair stages over n^m outcomes."""

    m: int
    n: int
    stages: tuple[PairingStage, ...]

    @property
    def n_parties(self) -> int:
        return 2 * self.m

    @property
    def n_outcomes(self) -> int:
        return self.n**self.m

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "n_parties": self.n_parties,
            "n_outcomes": self.n_outcomes,
            "stages": [
                {"parties": list(s.parties), "n_blocks": s.n_blocks, "block_size": s.block_size}
                for s in self.stages
            ],
        }


def build_pairing(m: int, n: int) -> PairingProtocol:
    """Construct the 2m-party n^m-sided pairing protocol.

    Stage k (1-indexed) is played by parties (2k-1, 2k) and partitions the
    surviving n^(m-k+1) outcomes into n contiguous blocks of n^(m-k).
    """
    if m < 1:
        raise ParameterRangeError(f"m must be >= 1, got {m}")
    if n < 2:
        raise ParameterRangeError(f"n must be >= 2, got {n}")
    stages = tuple(
        PairingStage(parties=(2 * k - 1, 2 * k), n_blocks=n, block_size=n ** (m - k))
        for k in range(1, m + 1)
    )
    return PairingProtocol(m=m, n=n, stages=stages)


def honest_outcome_probs(protocol: PairingProtocol) -> list[Fraction]:
    """Exact honest probability per outcome: the product of uniform stage picks."""
    per_outcome = Fraction(1)
    for stage in protocol.stages:
        per_outcome *= Fraction(1, stage.n_blocks)
    return [per_outcome] * protocol.n_outcomes


def coalition_force_prob(protocol: PairingProtocol, eps_bar: float = 0.0) -> float:
    """Worst-case forcing probability of the 2m-1 dishonest parties.

    They control every stage but the honest party's; there exactly one of
    the n sub-outcomes leads to the target, forced with at most
    sqrt(1/n) + eps_bar by the optimal two-party dice roll.
    """
    if eps_bar < 0.0:
        raise ParameterRangeError(f"eps_bar must be non-negative, got {eps_bar}")
    return 1.0 / sqrt(protocol.n) + eps_bar


def chooser_force_probs(choice_set: tuple[int, ...] = THREE_PARTY_CHOICE_SET) -> list[float]:
    """Forcing probability per target in the honest-chooser branch.

    The honest winner draws a uniformly from choice_set; the two dishonest
    losers then control the strong coin b completely, reaching outcome
    (a + b - 1) mod 3 + 1 for b in {0, 1}. The target is forced iff some b
    lands on it, so its probability is the fraction of compatible a values.
    """
    probs = []
    for target in (1, 2, 3):
        compatible = sum(
            1 for a in choice_set if any((a + b - 1) % 3 + 1 == target for b in (0, 1))
        )
        probs.append(compatible / len(choice_set))
    return probs


def three_party_example_bias() -> tuple[float, float]:
    """(coalition value, symmetric Kitaev bound) for the 3-party 3-sided protocol.

    If the honest party loses the ideal weak roll (probability 2/3) the
    dishonest chooser picks a freely and the dishonest loser forces the
    strong coin with probability 1/sqrt(2). If the honest party wins
    (probability 1/3) it picks a uniformly from {1, 2, 3}; the two
    dishonest losers own b outright and succeed iff a is compatible,
    probability 2/3.
    """
    chooser_branch = chooser_force_probs()[0]  # symmetric across targets
    value = (2.0 / 3.0) * (1.0 / sqrt(2.0)) + (1.0 / 3.0) * chooser_branch
    bound = (1.0 / 3.0) ** (1.0 / 3.0)
    return value, bound


@dataclass(frozen=True)
class ThreePartyFamily:
    """n sequential three-party stages deciding among 3^n outcomes."""

    n: int

    @property
    def n_parties(self) -> int:
        return 3 * self.n

    @property
    def n_outcomes(self) -> int:
        return 3**self.n

    @property
    def n_stages(self) -> int:
        return self.n

    @property
    def per_stage_force_prob(self) -> float:
        return three_party_example_bias()[0]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "n_parties": self.n_parties,
            "n_outcomes": self.n_outcomes,
            "n_stages": self.n_stages,
            "per_stage_force_prob": self.per_stage_force_prob,
        }


def build_3n_family(n: int) -> ThreePartyFamily:
    """The 3n-party 3^n-sided generalization; every stage shares the same bias."""
    if n < 1:
        raise ParameterRangeError(f"n must be >= 1, got {n}")
    return ThreePartyFamily(n=n)
