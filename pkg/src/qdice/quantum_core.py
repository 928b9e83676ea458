"""Exact state-vector simulation over small labeled tensor-product spaces.

States live in a Hilbert space built from named subsystems. Amplitudes are
stored densely in lexicographic order over the subsystem labels in their
declaration order, so transcripts are reproducible byte-for-byte. All
operations are pure: they return new values and never mutate inputs, and
every sampling operation takes its randomness (a seed or a generator)
explicitly.

Amplitudes are double-precision complex. The protocols analyzed here only
ever need real amplitudes, but the type is complex for generality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, NonOrthogonalBasisError

NORM_TOL = 1e-12
ORTHO_TOL = 1e-10


def as_generator(seed: int | np.random.Generator) -> np.random.Generator:
    """Accept either an integer seed or an existing generator stream."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over a labeled tensor-product basis."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "amps", amps)
        if len(self.dims) != len(self.labels):
            raise DimensionMismatchError("dims and labels must have equal length")
        if len(set(self.labels)) != len(self.labels):
            raise DimensionMismatchError(f"duplicate subsystem labels: {self.labels}")
        if amps.shape != (prod(self.dims),):
            raise DimensionMismatchError(
                f"expected {prod(self.dims)} amplitudes, got {amps.shape}"
            )
        n = float(np.linalg.norm(amps))
        if abs(n - 1.0) > NORM_TOL:
            raise DimensionMismatchError(f"state not normalized: |psi| = {n!r}")

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, indices: Sequence[int]) -> complex:
        """Amplitude of the basis state with the given per-subsystem indices."""
        return complex(self.amps[int(np.ravel_multi_index(tuple(indices), self.dims))])

    def to_json_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "labels": list(self.labels),
            "amps": [[float(a.real), float(a.imag)] for a in self.amps],
        }


def basis_state(dims: Sequence[int], labels: Sequence[str], indices: Sequence[int]) -> StateVector:
    """The product basis state |i1 i2 ...> with the given subsystem indices."""
    dims = tuple(dims)
    amps = np.zeros(prod(dims), dtype=complex)
    amps[int(np.ravel_multi_index(tuple(indices), dims))] = 1.0
    return StateVector(dims, tuple(labels), amps)


@dataclass(frozen=True)
class UnitaryOp:
    """A unitary matrix acting on an ordered subset of subsystems."""

    matrix: np.ndarray
    target_subsystems: tuple[str, ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "target_subsystems", tuple(self.target_subsystems))
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"matrix must be square, got {m.shape}")
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if dev > NORM_TOL:
            raise DimensionMismatchError(f"matrix is not unitary: max |U+U - I| = {dev:.3g}")


@dataclass(frozen=True)
class MeasurementResult:
    """One sampled outcome of a projective measurement."""

    outcome_index: int
    probability: float
    post_state: StateVector


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; a's subsystems precede b's in the combined ordering."""
    if set(a.labels) & set(b.labels):
        raise DimensionMismatchError("tensor factors share subsystem labels")
    return StateVector(a.dims + b.dims, a.labels + b.labels, np.kron(a.amps, b.amps))


def apply(u: UnitaryOp, s: StateVector) -> StateVector:
    """Apply u to its target subsystems, acting as identity on all others."""
    try:
        axes = [s.labels.index(lbl) for lbl in u.target_subsystems]
    except ValueError as exc:
        raise DimensionMismatchError(
            f"state has no subsystem named {exc.args[0].split()[0]!r}"
        ) from exc
    d_target = prod(s.dims[ax] for ax in axes)
    if u.matrix.shape[0] != d_target:
        raise DimensionMismatchError(
            f"matrix dim {u.matrix.shape[0]} != target subsystem dim {d_target}"
        )
    n_sub = len(s.dims)
    rest = [ax for ax in range(n_sub) if ax not in axes]
    tensor_form = s.amps.reshape(s.dims).transpose(axes + rest)
    flat = tensor_form.reshape(d_target, -1)
    out = u.matrix @ flat
    # undo the transpose: scatter target axes back to their original slots
    inv = np.argsort(axes + rest)
    new_amps = out.reshape([s.dims[ax] for ax in axes + rest]).transpose(inv).reshape(-1)
    return StateVector(s.dims, s.labels, new_amps)


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>; its squared modulus is the transition probability."""
    if a.dims != b.dims:
        raise DimensionMismatchError(f"dims differ: {a.dims} vs {b.dims}")
    return complex(np.vdot(a.amps, b.amps))


def _check_orthonormal(basis_states: Sequence[StateVector]) -> None:
    for i, u in enumerate(basis_states):
        for v in basis_states[i + 1 :]:
            if abs(overlap(u, v)) > ORTHO_TOL:
                raise NonOrthogonalBasisError(
                    f"basis states {i} and later are not orthogonal: "
                    f"|<u|v>| = {abs(overlap(u, v)):.3g}"
                )


def subspace_probability(s: StateVector, basis_states: Sequence[StateVector]) -> float:
    """Probability that s is found in the span of the given orthonormal states."""
    _check_orthonormal(basis_states)
    return float(sum(abs(overlap(b, s)) ** 2 for b in basis_states))


def project(
    s: StateVector, basis_states: Sequence[StateVector], inside: bool = True
) -> tuple[float, StateVector]:
    """Project s onto the span of basis_states (or its complement) and renormalize.

    Returns (probability of that outcome, renormalized post state).
    """
    _check_orthonormal(basis_states)
    in_span = np.zeros_like(s.amps)
    for b in basis_states:
        in_span = in_span + overlap(b, s) * b.amps
    target = in_span if inside else s.amps - in_span
    p = float(np.linalg.norm(target) ** 2)
    if p < 1e-15:
        raise DimensionMismatchError("projection has vanishing probability, cannot renormalize")
    return p, StateVector(s.dims, s.labels, target / np.sqrt(p))


def measure_projector(
    s: StateVector, basis_states: Sequence[StateVector], seed: int | np.random.Generator
) -> MeasurementResult:
    """Two-outcome projective measurement {P, 1-P} with P spanned by basis_states.

    Outcome index 0 means "inside the subspace", 1 means "outside". The
    outcome is sampled from the Born probabilities using the given seed or
    generator; the post state is the renormalized projection.
    """
    p_in = subspace_probability(s, basis_states)
    rng = as_generator(seed)
    inside = bool(rng.random() < p_in)
    prob, post = project(s, basis_states, inside=inside)
    return MeasurementResult(0 if inside else 1, prob, post)


def measure_computational(
    s: StateVector, label: str, seed: int | np.random.Generator
) -> MeasurementResult:
    """Full projective measurement of one subsystem in its computational basis.

    Samples an outcome index for the named subsystem from the Born marginal,
    collapses that subsystem, and renormalizes the rest.
    """
    if label not in s.labels:
        raise DimensionMismatchError(f"state has no subsystem named {label!r}")
    ax = s.labels.index(label)
    probs_nd = np.abs(s.amps.reshape(s.dims)) ** 2
    marginal = probs_nd.sum(axis=tuple(i for i in range(len(s.dims)) if i != ax))
    marginal = marginal / marginal.sum()
    rng = as_generator(seed)
    outcome = int(rng.choice(len(marginal), p=marginal))
    picker = [slice(None)] * len(s.dims)
    new_nd = s.amps.reshape(s.dims).copy()
    for k in range(s.dims[ax]):
        if k != outcome:
            picker[ax] = k
            new_nd[tuple(picker)] = 0.0
    p = float(marginal[outcome])
    post = StateVector(s.dims, s.labels, new_nd.reshape(-1) / np.sqrt(p))
    return MeasurementResult(outcome, p, post)
