"""P3-convexity primitives: convexity test, hull operator, independence.

A vertex set W is convex when every vertex outside W has at most one
neighbor inside W.  The hull of a seed set is the least fixed point of
the two-neighbor infection rule: any vertex with two or more infected
neighbors becomes infected.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph

VertexSet = tuple[int, ...]


def _normalize(g: Graph, vertices: Iterable[int]) -> VertexSet:
    out = tuple(sorted(set(vertices)))
    for v in out:
        g.check_vertex(v)
    return out


@dataclass(frozen=True)
class HullTrace:
    """Hull set plus a two-parent certificate for every non-seed member.

    ``order`` lists the seed (sorted) followed by the infected vertices in
    the order they were added; ``parents`` maps each infected vertex to the
    two earlier neighbors that raised its counter to two.  Replaying
    ``order`` under the two-neighbor rule reproduces ``hull`` exactly.
    """

    hull: VertexSet
    parents: dict[int, tuple[int, int]]
    order: tuple[int, ...]

    @property
    def seed(self) -> VertexSet:
        return tuple(v for v in self.order if v not in self.parents)

    def contains(self, v: int) -> bool:
        return v in set(self.hull)


def is_convex(g: Graph, w: Iterable[int]) -> bool:
    """True iff no outside vertex has two or more neighbors in w."""
    ws = set(_normalize(g, w))
    for v in range(g.n):
        if v in ws:
            continue
        inside = 0
        for u in g.adj[v]:
            if u in ws:
                inside += 1
                if inside > 1:
                    return False
    return True


def hull_set(g: Graph, seed: Iterable[int]) -> frozenset[int]:
    """Hull members only; cheaper than hull() when no certificate is needed."""
    members = set(seed)
    count = [0] * g.n
    queue = list(members)
    while queue:
        u = queue.pop()
        for w in g.adj[u]:
            if w in members:
                continue
            count[w] += 1
            if count[w] == 2:
                members.add(w)
                queue.append(w)
    return frozenset(members)


def hull(
    g: Graph,
    seed: Iterable[int],
    *,
    order: str = "fifo",
    rng: random.Random | None = None,
) -> HullTrace:
    """Convex hull of the seed with parent certificates.

    The fixed point does not depend on the worklist discipline; ``order``
    ("fifo", "lifo" or "random") only varies the recorded trace and exists
    so tests can exercise that independence.  With the default fifo order
    the parent pair of each infected vertex is the two neighbors that
    first raised its counter, ties resolved by processing seeds in
    increasing id.
    """
    seed_sorted = _normalize(g, seed)
    if order not in ("fifo", "lifo", "random"):
        raise ValueError(f"unknown order {order!r}")
    if order == "random" and rng is None:
        rng = random.Random(0)

    in_hull = set(seed_sorted)
    count = [0] * g.n
    first: dict[int, int] = {}
    parents: dict[int, tuple[int, int]] = {}
    added: list[int] = []
    work: deque[int] = deque(seed_sorted)

    while work:
        if order == "fifo":
            u = work.popleft()
        elif order == "lifo":
            u = work.pop()
        else:
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
            u = work.pop()
        for w in sorted(g.adj[u]):
            if w in in_hull:
                continue
            count[w] += 1
            if count[w] == 1:
                first[w] = u
            elif count[w] == 2:
                in_hull.add(w)
                parents[w] = (first[w], u)
                added.append(w)
                work.append(w)
    return HullTrace(
        hull=tuple(sorted(in_hull)),
        parents=parents,
        order=seed_sorted + tuple(added),
    )


def two_path_certificate(
    g: Graph, s: Iterable[int], x: int
) -> tuple[int, ...] | None:
    """Sequence ending in x where every vertex is a seed or has two earlier
    neighbors; None when x is outside the hull of s."""
    seed = _normalize(g, s)
    g.check_vertex(x)
    if x in seed:
        raise ValueError("x must lie outside the seed set")
    trace = hull(g, seed)
    if x not in set(trace.hull):
        return None
    needed = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        if v in trace.parents:
            for p in trace.parents[v]:
                if p not in needed:
                    needed.add(p)
                    stack.append(p)
    position = {v: i for i, v in enumerate(trace.order)}
    return tuple(sorted(needed, key=position.__getitem__))


@dataclass(frozen=True)
class IndependenceVerdict:
    """Outcome of a convex-independence check.

    When dependent, ``violator`` is the smallest member x lying inside the
    hull of the others and ``certificate`` is the trace of that hull.
    """

    independent: bool
    violator: int | None = None
    certificate: HullTrace | None = None

    def __bool__(self) -> bool:
        return self.independent


def is_convexly_independent(g: Graph, s: Iterable[int]) -> IndependenceVerdict:
    """Check that no member is in the hull of the remaining members."""
    members = _normalize(g, s)
    member_set = set(members)
    for x in members:
        rest = member_set - {x}
        trace = hull(g, rest)
        if x in set(trace.hull):
            return IndependenceVerdict(False, violator=x, certificate=trace)
    return IndependenceVerdict(True)


def is_two_packing(g: Graph, s: Iterable[int]) -> bool:
    """True iff members are pairwise non-adjacent with no common neighbor."""
    members = _normalize(g, s)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if g.has_edge(u, v) or (g.adj[u] & g.adj[v]):
                return False
    return True
