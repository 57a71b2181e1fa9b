"""Catalog of stable genus-1 graphs contributing at each degree.

Four shapes: a star with an elliptic core and rational tails, a single
loop, a star whose core is replaced by a loop contracted to a point with
multiplicity f, and an isolated point carrying the whole degree.  Tails of
a star are an unordered partition of the non-core degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "StarGraph",
    "LoopGraph",
    "ClusterStarGraph",
    "PointGraph",
    "partitions",
    "ordered_partitions",
    "sym_factor",
    "r_factor",
    "graphs_of_degree",
]


@lru_cache(maxsize=None)
def partitions(d: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of d into descending parts, largest-first order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return ((),)
    out = []

    def rec(rest: int, cap: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(acc)
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, acc + (part,))

    rec(d, d, ())
    return tuple(out)


def ordered_partitions(d: int) -> tuple[tuple[int, ...], ...]:
    """Compositions of d (ordered partitions); there are 2^(d-1) of them."""
    if d <= 0:
        raise ValueError("d must be positive")
    out = []

    def rec(rest: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(acc)
            return
        for part in range(1, rest + 1):
            rec(rest - part, acc + (part,))

    rec(d, ())
    return tuple(out)


def sym_factor(sigma: tuple[int, ...]) -> Fraction:
    """(l-1)! / prod(mult!) for a partition with l parts.

    Counts the distinct tail orderings divided by the full permutation count;
    the core edge breaks one cyclic symmetry, hence l-1.
    """
    l = len(sigma)
    if l == 0:
        return Fraction(1)
    denom = 1
    for part in set(sigma):
        denom *= math.factorial(sigma.count(part))
    return Fraction(math.factorial(l - 1), denom)


def r_factor(N: int, k: int, d: int) -> Fraction:
    """Degree-d weight of the isolated-point graph."""
    return Fraction(N - 1, 2 * d) - (Fraction(N) - Fraction(1, k)) / d**2


@dataclass(frozen=True)
class StarGraph:
    """Elliptic core with rational tails of degrees sigma (descending)."""

    sigma: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.sigma)

    def label(self) -> str:
        return "star(" + ",".join(map(str, self.sigma)) + ")"


@dataclass(frozen=True)
class LoopGraph:
    """Single loop of d rational components, d >= 2."""

    d: int

    @property
    def degree(self) -> int:
        return self.d

    def label(self) -> str:
        return f"loop({self.d})"


@dataclass(frozen=True)
class ClusterStarGraph:
    """Star whose core is a contracted loop of multiplicity f, tails sigma."""

    f: int
    sigma: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.f + sum(self.sigma)

    def label(self) -> str:
        return f"cluster({self.f};" + ",".join(map(str, self.sigma)) + ")"


@dataclass(frozen=True)
class PointGraph:
    """Isolated elliptic point carrying the whole degree."""

    d: int

    @property
    def degree(self) -> int:
        return self.d

    def label(self) -> str:
        return f"point({self.d})"


Graph = StarGraph | LoopGraph | ClusterStarGraph | PointGraph


def graphs_of_degree(d: int) -> list[Graph]:
    """All contributing graphs of degree d: stars, loop, clusters, point."""
    if d <= 0:
        raise ValueError("d must be positive")
    out: list[Graph] = [StarGraph(sigma) for sigma in partitions(d)]
    if d >= 2:
        out.append(LoopGraph(d))
    for f in range(1, d):
        out.extend(ClusterStarGraph(f, sigma) for sigma in partitions(d - f))
    out.append(PointGraph(d))
    return out
