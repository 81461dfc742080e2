"""Exhaustive ground truth for small graphs.

Everything here is exponential on purpose: these routines are the
reference the polynomial solvers are validated against.  They refuse
graphs above a size bound (default 20, override via the P3C_ORACLE_MAX
environment variable or the max_n argument).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .convexity import VertexSet, _normalize, hull_set
from .graphs import Graph

DEFAULT_ORACLE_MAX = 20


class OracleSizeError(RuntimeError):
    """Graph too large for exhaustive search without an explicit override."""


def oracle_bound() -> int:
    value = os.environ.get("P3C_ORACLE_MAX")
    if value is None:
        return DEFAULT_ORACLE_MAX
    try:
        return int(value)
    except ValueError:
        raise OracleSizeError(f"P3C_ORACLE_MAX={value!r} is not an integer") from None


def _check_size(g: Graph, max_n: int | None) -> None:
    bound = oracle_bound() if max_n is None else max_n
    if g.n > bound:
        raise OracleSizeError(
            f"n={g.n} exceeds the oracle bound {bound}; "
            "raise P3C_ORACLE_MAX or pass max_n to override"
        )


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: VertexSet
    explored: int


def _is_independent(g: Graph, members: tuple[int, ...]) -> bool:
    mset = set(members)
    for x in members:
        if x in hull_set(g, mset - {x}):
            return False
    return True


def beta_c_oracle(
    g: Graph, limit: int | None = None, max_n: int | None = None
) -> OracleResult:
    """Maximum convexly independent set by depth-first search.

    Convex independence is hereditary, so only independent sets are ever
    extended; candidates are tried in increasing vertex id, which makes
    the reported witness the lexicographically smallest maximizer.
    """
    _check_size(g, max_n)
    cap = g.n if limit is None else min(limit, g.n)
    best: list[int] = []
    explored = 0
    current: list[int] = []

    def extend(start: int) -> None:
        nonlocal best, explored
        if len(current) > len(best):
            best = list(current)
        if len(current) >= cap:
            return
        for v in range(start, g.n):
            current.append(v)
            explored += 1
            if _is_independent(g, tuple(current)):
                extend(v + 1)
            current.pop()

    extend(0)
    return OracleResult(len(best), tuple(best), explored)


def sigma_boundary(g: Graph, s: Iterable[int]) -> VertexSet:
    """Hull of s minus the union of the hulls of all one-removals."""
    members = _normalize(g, s)
    if not members:
        raise ValueError("boundary needs a nonempty set")
    mset = set(members)
    covered: set[int] = set()
    for x in members:
        covered |= hull_set(g, mset - {x})
    return tuple(sorted(hull_set(g, mset) - covered))


def is_irredundant(g: Graph, s: Iterable[int]) -> bool:
    return len(sigma_boundary(g, s)) > 0


def caratheodory_oracle(g: Graph, max_n: int | None = None) -> OracleResult:
    """Largest irredundant set by full enumeration, biggest sizes first.

    Irredundance is not hereditary, so unlike beta_c_oracle no subset
    pruning applies; the first hit at a size is the lexicographically
    smallest witness of the optimum.
    """
    _check_size(g, max_n)
    explored = 0
    for k in range(g.n, 0, -1):
        for subset in combinations(range(g.n), k):
            explored += 1
            mset = set(subset)
            full = hull_set(g, mset)
            residue = set(full)
            for x in subset:
                residue -= hull_set(g, mset - {x})
                if not residue:
                    break
            if residue:
                return OracleResult(k, subset, explored)
    return OracleResult(0, (), explored)
