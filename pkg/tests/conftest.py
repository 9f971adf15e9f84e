"""Shared fixture data: the bundled reference configuration spelled out as
integer literals, so tests cross-check the packaged constants instead of
echoing them."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rational_kcbs.linalg3 import Vec3Q

REF_STATE_RAW = (Fraction(354, 527), Fraction(357, 527), Fraction(-158, 527))

REF_VECTORS_RAW = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(48, 73), Fraction(0), Fraction(-55, 73)),
    (Fraction(1925, 3277), Fraction(2052, 3277), Fraction(1680, 3277)),
    (Fraction(0), Fraction(140, 221), Fraction(-171, 221)),
)

# Exact cycle sum of the reference configuration, derived in
# test_contextuality via the projector-sum oracle and frozen here for reuse.
REF_KCBS_VALUE = Fraction(-3637267023675289031, 923014205472656089)


@pytest.fixture
def ref_state() -> Vec3Q:
    return Vec3Q(*REF_STATE_RAW)


@pytest.fixture
def ref_vectors() -> list[Vec3Q]:
    return [Vec3Q(*c) for c in REF_VECTORS_RAW]


def rand_fraction(rng: random.Random, max_num: int = 60, max_den: int = 40) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def rand_vec(rng: random.Random) -> Vec3Q:
    return Vec3Q(rand_fraction(rng), rand_fraction(rng), rand_fraction(rng))


# One PASS/FAIL line per acceptance criterion, echoed after the test summary
# so they are visible without -s (test_acceptance appends (number, line) pairs).
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
