"""Seeded random instances for property tests and the self-test suite.

Everything takes an explicit random.Random so runs are reproducible from a
single seed.  Generators retry until validation passes; the constructions
make failure rare (a random full cycle guarantees irreducibility)."""
from __future__ import annotations

import random

from . import cohomology as coh
from .config import Limits, default_limits
from .errors import SftError
from .moves import ElementaryEquivalence, elementary
from .shifts import (
    EventuallyPeriodicPoint,
    SftPresentation,
    periodic_point,
    validate,
    words,
)


def random_irreducible(rng: random.Random, n_max: int = 6,
                       limits: Limits | None = None) -> SftPresentation:
    """Random 0-1 irreducible non-permutation presentation."""
    limits = limits or default_limits()
    while True:
        n = rng.randint(2, n_max)
        rows = [[0] * n for _ in range(n)]
        cycle = list(range(n))
        rng.shuffle(cycle)
        for i in range(n):
            rows[cycle[i]][cycle[(i + 1) % n]] = 1
        extra = rng.randint(1, n)
        for _ in range(extra):
            rows[rng.randrange(n)][rng.randrange(n)] = 1
        try:
            return validate(tuple(tuple(r) for r in rows), "vertex", None, limits)
        except SftError:
            continue


def random_edge_presentation(rng: random.Random, n_max: int = 4,
                             entry_max: int = 2,
                             limits: Limits | None = None) -> SftPresentation:
    """Random irreducible nonnegative integer matrix as an edge shift."""
    limits = limits or default_limits()
    while True:
        n = rng.randint(1, n_max)
        rows = [[0] * n for _ in range(n)]
        cycle = list(range(n))
        rng.shuffle(cycle)
        for i in range(n):
            rows[cycle[i]][cycle[(i + 1) % n]] = rng.randint(1, entry_max)
        for _ in range(rng.randint(0, n)):
            rows[rng.randrange(n)][rng.randrange(n)] = rng.randint(0, entry_max)
        try:
            return validate(tuple(tuple(r) for r in rows), "edge", None, limits)
        except SftError:
            continue


def random_function(rng: random.Random, p: SftPresentation,
                    max_depth: int = 3, low: int = -5, high: int = 5,
                    limits: Limits | None = None) -> coh.LocallyConstantFunction:
    limits = limits or default_limits()
    depth = rng.randint(1, max_depth)
    table = [rng.randint(low, high) for _ in words(p, depth, limits)]
    return coh.function(p, depth, table, coh.RING_INT, limits)


def random_elementary(rng: random.Random, outer_max: int = 4,
                      inner_max: int = 4, entry_max: int = 2,
                      limits: Limits | None = None) -> ElementaryEquivalence:
    """Random valid elementary equivalence A = CD, B = DC."""
    limits = limits or default_limits()
    while True:
        n = rng.randint(1, outer_max)
        m = rng.randint(1, inner_max)
        c = [[rng.randint(0, entry_max) for _ in range(m)] for _ in range(n)]
        d = [[rng.randint(0, entry_max) for _ in range(n)] for _ in range(m)]
        try:
            return elementary(c, d, limits)
        except SftError:
            continue


def random_point(rng: random.Random, p: SftPresentation,
                 max_preperiod: int = 3,
                 max_period: int = 4) -> EventuallyPeriodicPoint:
    """Random eventually periodic point via a random admissible walk."""
    while True:
        total = rng.randint(1, max_preperiod + max_period)
        walk = [rng.randrange(p.alphabet_size)]
        ok = True
        for _ in range(total - 1):
            succ = p.successors(walk[-1])
            if not succ:
                ok = False
                break
            walk.append(rng.choice(succ))
        if not ok:
            continue
        # close a period over some suffix of the walk
        starts = [s for s in range(len(walk))
                  if len(walk) - s <= max_period and p.follow(walk[-1], walk[s])]
        if starts:
            start = rng.choice(starts)
            return periodic_point(p, tuple(walk[:start]), tuple(walk[start:]))
