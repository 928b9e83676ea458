"""Strong imbalanced coin flipping that meets the Kitaev product bound.

Protocol: Alice flips a private coin (0 with probability q) and announces
the result o; the parties run a weak imbalanced CF with Alice's honest
winning probability z_o; if Alice wins the outcome is o, otherwise Bob
flips a final coin biased toward o (probability p_o). Five free parameters
allow any target outcome distribution (P0, 1-P0), and the closed-form
solution drives every cheating probability to sqrt(P_i) exactly, so the
product P_A* P_B* equals the honest probability: the bound is saturated.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable

import numpy as np

from . import quantum_core as qc
from .errors import DegenerateProtocolError, ParameterRangeError
from .weak_dr import IdealWCFPrimitive

KITAEV_TOL = 1e-9


@dataclass(frozen=True)
class StrongCFParams:
    """First-coin probability q, weak-CF shares z0/z1, final-coin biases
    pp0/pp1, and the weak-CF biases eps0/eps1."""

    q: float
    z0: float
    z1: float
    pp0: float
    pp1: float
    eps0: float = 0.0
    eps1: float = 0.0

    def __post_init__(self):
        for name in ("q", "z0", "z1", "pp0", "pp1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ParameterRangeError(f"{name} must lie in [0, 1], got {v}")
        if self.eps0 < 0.0 or self.eps1 < 0.0:
            raise ParameterRangeError("weak-CF biases must be non-negative")

    @property
    def p0_honest(self) -> float:
        return honest_prob(self)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "z0": self.z0,
            "z1": self.z1,
            "p0": self.pp0,
            "p1": self.pp1,
            "eps0": self.eps0,
            "eps1": self.eps1,
            "p0_honest": self.p0_honest,
        }


@dataclass(frozen=True)
class StrongCheatReport:
    """Maximal forcing probabilities per party and outcome.

    pa*/qa* are Alice's two strategies (announce the target's branch vs
    announce the other); pb* is Bob's single strategy per outcome. The
    Kitaev products use Alice's better strategy.
    """

    pa0: float
    qa0: float
    pa1: float
    qa1: float
    pb0: float
    pb1: float
    honest_p0: float

    @property
    def alice_force_0(self) -> float:
        return max(self.pa0, self.qa0)

    @property
    def alice_force_1(self) -> float:
        return max(self.pa1, self.qa1)

    @property
    def kitaev_products(self) -> tuple[float, float]:
        return (self.alice_force_0 * self.pb0, self.alice_force_1 * self.pb1)

    def to_json_dict(self) -> dict:
        return {
            "p0_honest": self.honest_p0,
            "pa0": self.pa0,
            "qa0": self.qa0,
            "pa1": self.pa1,
            "qa1": self.qa1,
            "pb0": self.pb0,
            "pb1": self.pb1,
            "kitaev_products": list(self.kitaev_products),
        }


def solve_params(p0_honest: float, eps0: float = 0.0, eps1: float = 0.0) -> StrongCFParams:
    """Closed-form parameters hitting the target honest distribution.

    q = (1 + sqrt(P0) - sqrt(P1))/2, p_i = 1 - sqrt(P_{1-i}), and
    z_i = 1 + (sqrt(P_i) - 1)/sqrt(P_{1-i}): the unique assignment under
    which every cheating probability collapses to sqrt(P_i).
    """
    if not 0.0 < p0_honest < 1.0:
        raise DegenerateProtocolError(
            f"honest probability must lie strictly inside (0, 1), got {p0_honest}"
        )
    s0, s1 = sqrt(p0_honest), sqrt(1.0 - p0_honest)
    return StrongCFParams(
        q=(1.0 + s0 - s1) / 2.0,
        z0=1.0 + (s0 - 1.0) / s1,
        z1=1.0 + (s1 - 1.0) / s0,
        pp0=1.0 - s1,
        pp1=1.0 - s0,
        eps0=eps0,
        eps1=eps1,
    )


def honest_prob(params: StrongCFParams) -> float:
    """Probability of outcome 0 when both parties are honest."""
    return (
        params.q * (params.z0 + (1.0 - params.z0) * params.pp0)
        + (1.0 - params.q) * (1.0 - params.z1) * (1.0 - params.pp1)
    )


def cheat_probs(params: StrongCFParams) -> StrongCheatReport:
    """All six maximal forcing probabilities.

    Alice forcing outcome i can announce o = i and cheat the weak flip
    (winning probability z_i + eps_i, with the final coin as fallback), or
    announce o = 1-i and lose deliberately, leaving Bob's final coin at
    1 - p_{1-i}. Bob forcing i wins whenever Alice's announcement matches,
    and otherwise cheats the weak flip and flips his own coin.
    """
    q, z0, z1, p0, p1 = params.q, params.z0, params.z1, params.pp0, params.pp1
    e0, e1 = params.eps0, params.eps1
    return StrongCheatReport(
        pa0=z0 + e0 + (1.0 - z0 - e0) * p0,
        qa0=1.0 - p1,
        pa1=z1 + e1 + (1.0 - z1 - e1) * p1,
        qa1=1.0 - p0,
        pb0=q + (1.0 - q) * (1.0 - z1 + e1),
        pb1=1.0 - q + q * (1.0 - z0 + e0),
        honest_p0=honest_prob(params),
    )


def kitaev_saturation_check(
    p0_honest: float, eps: float = 0.0
) -> tuple[tuple[float, float], bool]:
    """Products P_A(i)* P_B(i)* for the solved protocol vs the honest P_i.

    At eps = 0 the products equal (P0, P1) exactly; any positive weak-CF
    bias pushes them above, so saturation fails at tolerance 1e-9.
    """
    params = solve_params(p0_honest, eps0=eps, eps1=eps)
    report = cheat_probs(params)
    products = report.kitaev_products
    targets = (p0_honest, 1.0 - p0_honest)
    saturated = all(abs(products[i] - targets[i]) <= KITAEV_TOL for i in (0, 1))
    return products, saturated


WCFProvider = Callable[[float, float], IdealWCFPrimitive]


def simulate(
    params: StrongCFParams,
    seed: int | np.random.Generator,
    wcf_provider: WCFProvider = IdealWCFPrimitive,
) -> tuple[int, dict]:
    """One honest protocol execution; returns (outcome bit, transcript)."""
    rng = qc.as_generator(seed)
    o = 0 if rng.random() < params.q else 1
    wcf = wcf_provider(params.z0 if o == 0 else params.z1,
                       params.eps0 if o == 0 else params.eps1)
    alice_wins = wcf.sample_first_wins(rng)
    if alice_wins:
        outcome = o
        final_coin = None
    else:
        p_match = params.pp0 if o == 0 else params.pp1
        matched = rng.random() < p_match
        outcome = o if matched else 1 - o
        final_coin = outcome
    return outcome, {
        "announced": o,
        "alice_won_weak_flip": alice_wins,
        "final_coin": final_coin,
        "outcome": outcome,
    }


def sample_outcomes(
    params: StrongCFParams, runs: int, seed: int | np.random.Generator
) -> np.ndarray:
    """Vectorized honest outcomes for `runs` executions (same law as simulate)."""
    rng = qc.as_generator(seed)
    o = (rng.random(runs) >= params.q).astype(np.int8)
    z = np.where(o == 0, params.z0, params.z1)
    alice_wins = rng.random(runs) < z
    p_match = np.where(o == 0, params.pp0, params.pp1)
    matched = rng.random(runs) < p_match
    return np.where(alice_wins, o, np.where(matched, o, 1 - o)).astype(np.int8)
