"""N-party weak dice rolling as a tournament of weak imbalanced coin flips.

Stage 1 pits parties 1 and 2 on a balanced flip; stage k pits the standing
winner against party k+1, who enters with honest winning probability
1/(k+1). Honest parties each win with probability exactly 1/N. With
per-stage biases on the honest party's stage-win probability, the honest
party's maximal losing probability follows from the chain product over the
stages it must win.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidBiasError, ParameterRangeError


@dataclass(frozen=True)
class IdealWCFPrimitive:
    """An ideal weak imbalanced coin flip with declared bias.

    The first party wins honestly with probability z; a dishonest opponent
    can raise either party's losing probability by at most eps_bar. Stands
    in for arbitrarily-small-bias weak CF constructions, whose internals
    are out of scope here.
    """

    z: float
    eps_bar: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.z <= 1.0:
            raise ParameterRangeError(f"z must lie in [0, 1], got {self.z}")
        if not 0.0 <= self.eps_bar <= min(self.z, 1.0 - self.z) + 1e-12:
            raise ParameterRangeError(
                f"eps_bar must lie in [0, min(z, 1-z)], got {self.eps_bar}"
            )

    def sample_first_wins(self, rng: np.random.Generator) -> bool:
        """Honest execution: first party wins with probability z."""
        return bool(rng.random() < self.z)

    def max_losing(self, first_party: bool) -> float:
        """Worst-case losing probability for the named honest party."""
        honest_win = self.z if first_party else 1.0 - self.z
        return 1.0 - honest_win + self.eps_bar


@dataclass(frozen=True)
class TournamentSpec:
    """Tournament size and the per-stage honest-party bias values."""

    n_parties: int
    stage_biases: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "stage_biases", tuple(float(b) for b in self.stage_biases))
        if self.n_parties < 2:
            raise ParameterRangeError(f"need at least 2 parties, got {self.n_parties}")
        if len(self.stage_biases) != self.n_parties - 1:
            raise ParameterRangeError(
                f"expected {self.n_parties - 1} stage biases, got {len(self.stage_biases)}"
            )
        if any(b < 0.0 for b in self.stage_biases):
            raise ParameterRangeError("stage biases must be non-negative")

    def to_json_dict(self) -> dict:
        return {"n_parties": self.n_parties, "stage_biases": list(self.stage_biases)}


class BoundCheck(NamedTuple):
    eps_bar: float
    bound: float
    holds: bool


def _party_stages(n_parties: int, party: int) -> list[tuple[int, Fraction]]:
    """(stage index, honest stage-win probability) for every stage the party plays.

    Party n enters at stage max(n-1, 1) with win probability 1/max(n, 2)
    and defends each later stage k with win probability k/(k+1).
    """
    if not 1 <= party <= n_parties:
        raise ParameterRangeError(f"party must lie in [1, {n_parties}], got {party}")
    entry = max(party - 1, 1)
    stages = [(entry, Fraction(1, max(party, 2)))]
    for k in range(entry + 1, n_parties):
        stages.append((k, Fraction(k, k + 1)))
    return stages


def honest_distribution(n_parties: int) -> list[Fraction]:
    """Each party's honest winning probability as an exact chain product."""
    if n_parties < 2:
        raise ParameterRangeError(f"need at least 2 parties, got {n_parties}")
    probs = []
    for party in range(1, n_parties + 1):
        total = Fraction(1)
        for _, win in _party_stages(n_parties, party):
            total *= win
        probs.append(total)
    return probs


def max_losing_prob(spec: TournamentSpec, honest_party: int) -> float:
    """The honest party's maximal losing probability against full collusion.

    One minus the product, over the stages the party must win, of its
    honest stage-win probability reduced by that stage's bias. Empty
    products (a party with no stages cannot occur for N >= 2) would be 1.
    """
    survive = 1.0
    for k, win in _party_stages(spec.n_parties, honest_party):
        delta = spec.stage_biases[k - 1]
        if delta > win:
            raise InvalidBiasError(
                f"stage {k} bias {delta} exceeds honest win probability {float(win)}"
            )
        survive *= float(win) - delta
    return 1.0 - survive


def expanded_losing_prob(spec: TournamentSpec, honest_party: int) -> float:
    """The same quantity as the stagewise expansion: lose at the first stage,
    or win a prefix of stages and lose the next one. Regression target for
    the chain form."""
    stages = _party_stages(spec.n_parties, honest_party)
    losses = [1.0 - (float(win) - spec.stage_biases[k - 1]) for k, win in stages]
    total = 0.0
    prefix_win = 1.0
    for loss in losses:
        total += prefix_win * loss
        prefix_win *= 1.0 - loss
    return total


def bias_bound_check(spec: TournamentSpec, honest_party: int) -> BoundCheck:
    """Check eps_bar < N * max(stage bias) for the given honest party.

    eps_bar is the excess of the maximal losing probability over the honest
    value (N-1)/N. With all biases zero both sides vanish and the
    degenerate equality eps_bar = 0 <= 0 counts as holding.
    """
    n = spec.n_parties
    eps_bar = max_losing_prob(spec, honest_party) - (n - 1) / n
    bound = n * max(spec.stage_biases)
    holds = eps_bar < bound if bound > 0.0 else eps_bar <= 0.0
    return BoundCheck(eps_bar=eps_bar, bound=bound, holds=holds)


def random_tournament(rng: np.random.Generator, max_parties: int = 10) -> TournamentSpec:
    """A random instance with N <= max_parties and stage biases below 1/(2N)."""
    n = int(rng.integers(2, max_parties + 1))
    biases = rng.uniform(0.0, 1.0 / (2 * n), size=n - 1)
    return TournamentSpec(n, tuple(float(b) for b in biases))


def bound_property_sweep(count: int, seed: int | np.random.Generator, max_parties: int = 10) -> float:
    """Fraction of (random tournament, honest party) cases satisfying the bound."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    ok = total = 0
    for _ in range(count):
        spec = random_tournament(rng, max_parties)
        for party in range(1, spec.n_parties + 1):
            ok += bias_bound_check(spec, party).holds
            total += 1
    return ok / total
