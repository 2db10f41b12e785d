"""Shared fixtures and map-corpus helpers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pldyn import PLMap


@pytest.fixture
def tent() -> PLMap:
    return PLMap.from_pairs([(0, 0), (Fraction(1, 2), 1), (1, 0)])


@pytest.fixture
def identity() -> PLMap:
    return PLMap.from_pairs([(0, 0), (1, 1)])


@pytest.fixture
def involution() -> PLMap:
    """f(x) = 1 - x, the exact reflection."""
    return PLMap.from_pairs([(0, 1), (1, 0)])


@pytest.fixture
def halving() -> PLMap:
    """f(x) = x / 2."""
    return PLMap.from_pairs([(0, 0), (1, Fraction(1, 2))])


@pytest.fixture
def drift_up() -> PLMap:
    """f(x) = x/2 + 1/4, monotone with the single fixed point 1/2."""
    return PLMap.from_pairs([(0, Fraction(1, 4)), (1, Fraction(3, 4))])


def random_rational(rng: random.Random, max_den: int = 64) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(0, den)
    return Fraction(num, den)


def random_plmap(
    rng: random.Random, max_breakpoints: int = 8, max_den: int = 64
) -> PLMap:
    """Random continuous self-map of [0, 1] with small rational coordinates."""
    n_interior = rng.randint(0, max_breakpoints - 2)
    xs = {Fraction(0), Fraction(1)}
    while len(xs) < n_interior + 2:
        x = random_rational(rng, max_den)
        xs.add(x)
    pts = [(x, random_rational(rng, max_den)) for x in sorted(xs)]
    return PLMap.from_pairs(pts)


def map_corpus(seed: int, count: int, **kwargs) -> list[PLMap]:
    rng = random.Random(seed)
    return [random_plmap(rng, **kwargs) for _ in range(count)]
