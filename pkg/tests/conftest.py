"""Shared helpers: fixture loading and random model generation."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from causalnets.es import Raes, saturate_raes, validate_raes
from causalnets.serial import load_model, load_morphism

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    """Load a model fixture by file name, returning (kind, object)."""
    with open(FIXTURES / name) as fh:
        return load_model(json.load(fh))


def fixture_model(name):
    """Load a model fixture, returning just the object."""
    return load_fixture(name)[1]


def fixture_morphism(name):
    with open(FIXTURES / name) as fh:
        return load_morphism(json.load(fh))


def fixture_path(name):
    return str(FIXTURES / name)


def random_raes(rng, max_events=6):
    """Draw a random valid finite rAES.

    Builds a random DAG for causation, extends weak causality above it,
    saturates conflict inheritance, then picks reversible events with
    reverse-causation and reverse-prevention pairs that keep the undo
    relations acyclic.  The candidate is saturated and re-validated;
    generation retries until a valid structure appears, so the draw is
    total (and deterministic for a seeded rng).
    """
    while True:
        n = rng.randint(1, max_events)
        events = tuple(f"e{i}" for i in range(n))
        causation = set()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.3:
                    causation.add((events[i], events[j]))
        weak = set(causation)
        for a in events:
            for b in events:
                if a != b and rng.random() < 0.2:
                    weak.add((a, b))
        reversible = tuple(e for e in events if rng.random() < 0.5)
        rev_causation = {(u, u) for u in reversible}
        prevention = set()
        for u in reversible:
            for e in events:
                if e != u and rng.random() < 0.15:
                    rev_causation.add((e, u))
                if e != u and rng.random() < 0.15:
                    prevention.add((u, e))
        candidate = saturate_raes(Raes.build(
            events, reversible, causation, weak, rev_causation, prevention))
        if validate_raes(candidate).ok:
            return candidate


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
