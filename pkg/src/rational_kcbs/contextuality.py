"""Cycle contextuality scenarios over exact rational qutrit geometry.

A scenario is a unit state plus an odd cycle of unit directions whose
adjacent pairs (indices mod n) are exactly orthogonal.  Each direction v
carries the dichotomic observable ``2|v><v| - 1`` with outcomes +-1; adjacent
orthogonality makes adjacent observables commute, so each adjacent pair is
jointly measurable and the cycle correlation sum is well defined.  The
pentagon (n = 5) is the default; everything here works for any odd n >= 3
because the bound logic is identical.

Two independent evaluation routes are provided on purpose:
``kcbs_value`` multiplies out the full observable products, while
``kcbs_value_via_projections`` uses the orthogonal-pair identity
``<A_i A_{i+1}> = 1 - 2<P_i> - 2<P_{i+1}>``.  Agreement of the two routes is
an end-to-end correctness check; only the first is the primary path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg3 import (
    E_X,
    E_Y,
    Mat3Q,
    Vec3Q,
    dot,
    mat_mul,
    norm_sq,
    outer,
    quadratic_form,
)

ONE = Fraction(1)


class CycleValidationError(ValueError):
    """A cycle scenario failed one of its exact invariants.

    ``reason`` is a stable machine-readable code, one of ``cycle-length``,
    ``state-not-unit``, ``vector-not-unit``, ``adjacent-not-orthogonal``.
    ``index`` names the offending vector, ``pair`` the offending adjacency.
    """

    def __init__(self, reason: str, message: str, index: int | None = None,
                 pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.reason = reason
        self.index = index
        self.pair = pair


@dataclass(frozen=True)
class UnitVectorQ:
    """A rational direction with norm_sq exactly 1, enforced at construction."""

    v: Vec3Q

    def __post_init__(self):
        if norm_sq(self.v) != ONE:
            raise ValueError(
                f"not a unit vector: |v|^2 = {norm_sq(self.v)} for {self.v}"
            )


@dataclass(frozen=True)
class QutritState:
    """A rational qutrit state vector with norm_sq exactly 1."""

    v: Vec3Q

    def __post_init__(self):
        if norm_sq(self.v) != ONE:
            raise ValueError(
                f"not a unit state: |psi|^2 = {norm_sq(self.v)} for {self.v}"
            )


@dataclass(frozen=True)
class DichotomicObservable:
    """Observable ``2|v><v| - 1`` with outcomes +-1 for a unit direction v."""

    matrix: Mat3Q
    source_vector: UnitVectorQ

    def __post_init__(self):
        expected = 2 * outer(self.source_vector.v, self.source_vector.v) - Mat3Q.identity()
        if self.matrix != expected:
            raise ValueError("observable matrix is not 2|v><v| - 1 for its source vector")


def make_observable(v: UnitVectorQ) -> DichotomicObservable:
    """Build the +-1-valued observable for direction v.

    The result is symmetric, has trace -1, and squares to the identity; all
    three follow exactly from |v|^2 = 1.
    """
    matrix = 2 * outer(v.v, v.v) - Mat3Q.identity()
    return DichotomicObservable(matrix=matrix, source_vector=v)


def projector(v: UnitVectorQ) -> Mat3Q:
    """Rank-1 projector |v><v|."""
    return outer(v.v, v.v)


def check_cycle_vectors(vectors: Sequence[Vec3Q]) -> None:
    """Check the direction geometry of a cycle: odd n >= 3, exact unit norms,
    exact adjacent orthogonality.  Raises CycleValidationError."""
    n = len(vectors)
    if n < 3 or n % 2 == 0:
        raise CycleValidationError(
            "cycle-length", f"cycle length must be odd and >= 3, got {n}"
        )
    for i, v in enumerate(vectors):
        if norm_sq(v) != ONE:
            raise CycleValidationError(
                "vector-not-unit",
                f"vector at index {i} is not unit: |v|^2 = {norm_sq(v)}",
                index=i,
            )
    for i in range(n):
        j = (i + 1) % n
        d = dot(vectors[i], vectors[j])
        if d != 0:
            raise CycleValidationError(
                "adjacent-not-orthogonal",
                f"adjacent pair ({i}, {j}) is not orthogonal: dot = {d}",
                pair=(i, j),
            )


@dataclass(frozen=True)
class CycleScenario:
    """A validated odd cycle of compatible directions plus a state.

    Repeated vectors are permitted (degenerate cycles satisfy every stated
    invariant and make useful trivial fixtures).
    """

    state: QutritState
    vectors: tuple[UnitVectorQ, ...]

    def __post_init__(self):
        check_cycle_vectors([u.v for u in self.vectors])

    @property
    def n(self) -> int:
        return len(self.vectors)

    @cached_property
    def observables(self) -> tuple[DichotomicObservable, ...]:
        """The direction observables, built once per scenario (the build
        re-verifies the 2|v><v| - 1 shape, so rebuilding per correlator
        would double the cost of every evaluation)."""
        return tuple(make_observable(u) for u in self.vectors)


def validate_cycle(state: Vec3Q, vectors: Sequence[Vec3Q]) -> CycleScenario:
    """Validate raw components into a CycleScenario, or raise
    CycleValidationError naming the first violated invariant.

    Check order: cycle length, state norm, per-vector norms, adjacency.
    """
    n = len(vectors)
    if n < 3 or n % 2 == 0:
        raise CycleValidationError(
            "cycle-length", f"cycle length must be odd and >= 3, got {n}"
        )
    if norm_sq(state) != ONE:
        raise CycleValidationError(
            "state-not-unit", f"state is not unit: |psi|^2 = {norm_sq(state)}"
        )
    check_cycle_vectors(vectors)
    return CycleScenario(
        state=QutritState(state), vectors=tuple(UnitVectorQ(v) for v in vectors)
    )


def correlator(s: CycleScenario, i: int) -> Fraction:
    """Exact <A_i A_{i+1}> for the scenario state, via full matrix products.

    Always lies in [-1, 1].  Raises IndexError outside 0 <= i < n.
    """
    if not 0 <= i < s.n:
        raise IndexError(f"correlator index {i} out of range for n = {s.n}")
    a = s.observables[i].matrix
    b = s.observables[(i + 1) % s.n].matrix
    return quadratic_form(s.state.v, mat_mul(a, b))


def kcbs_value(s: CycleScenario) -> Fraction:
    """Exact cycle correlation sum  sum_i <A_i A_{i+1}>  (indices mod n)."""
    return sum(correlator(s, i) for i in range(s.n))


def kcbs_value_via_projections(s: CycleScenario) -> Fraction:
    """Independent evaluation route: n - 4 * sum_i <psi|P_i|psi>.

    Valid because adjacent orthogonality kills the P_i P_{i+1} cross terms.
    Used as an oracle against ``kcbs_value``, never as the primary path.
    """
    total = sum(quadratic_form(s.state.v, projector(u)) for u in s.vectors)
    return s.n - 4 * total


def cycle_operator(vectors: Sequence[UnitVectorQ]) -> Mat3Q:
    """Exact operator  sum_i A_i A_{i+1}  for a cycle of directions.

    For a geometry that passes ``check_cycle_vectors`` this matrix is exactly
    symmetric (commuting symmetric factors), and its quadratic form at any
    state equals the cycle correlation sum there.
    """
    check_cycle_vectors([u.v for u in vectors])
    n = len(vectors)
    total = Mat3Q.zero()
    for i in range(n):
        a = make_observable(vectors[i]).matrix
        b = make_observable(vectors[(i + 1) % n]).matrix
        total = total + mat_mul(a, b)
    return total


# Built-in reference configuration: a rational pentagon and a rational state
# whose exact cycle sum is about -3.9406, i.e. "-3.941" at three digits,
# strictly below the noncontextual bound of -3.
REFERENCE_STATE = Vec3Q(Fraction(354, 527), Fraction(357, 527), Fraction(-158, 527))

REFERENCE_VECTORS: tuple[Vec3Q, ...] = (
    E_X,
    E_Y,
    Vec3Q(Fraction(48, 73), Fraction(0), Fraction(-55, 73)),
    Vec3Q(Fraction(1925, 3277), Fraction(2052, 3277), Fraction(1680, 3277)),
    Vec3Q(Fraction(0), Fraction(140, 221), Fraction(-171, 221)),
)


def reference_scenario() -> CycleScenario:
    """The bundled known-good pentagon scenario, fully validated."""
    return validate_cycle(REFERENCE_STATE, REFERENCE_VECTORS)
