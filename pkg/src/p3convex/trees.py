"""Closed forms and exact solvers for paths, cycles and trees.

The tree solver rests on a local certificate: in a tree, removing a
member x of S cannot change what happens in the components of T - x,
so x lies in the hull of S - x exactly when at least two neighbors of x
are infected inside their own x-free subtrees.  Convex independence is
therefore a per-vertex degree condition on directed-edge infection
flags, which a linear-time dynamic program maximizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convexity import VertexSet
from .graphs import Graph, is_tree

_INF = 4  # demand code meaning "no constraint"; real demands are 1 or 2,
# and hot-child counts are capped at 3, so 4 compares as "never binding"
_TOL, _NC = 0, 1  # subtree valid under parent pressure / only without it


def beta_c_path(n: int) -> int:
    """2*floor(n/3) + (n mod 3), the convex-independence number of a path."""
    if n < 1:
        raise ValueError("paths need n >= 1")
    return 2 * (n // 3) + n % 3


def beta_c_cycle(n: int) -> int:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return beta_c_path(n - 1)


def path_witness(n: int) -> VertexSet:
    """A maximum pattern on the path 0..n-1: two in, one out, repeating."""
    return tuple(v for v in range(n) if v % 3 != 2)


def cycle_witness(n: int) -> VertexSet:
    """Path pattern on the cycle minus one vertex; checked by callers."""
    return path_witness(n - 1)


def _require_tree(t: Graph) -> None:
    if not is_tree(t):
        raise ValueError("input graph is not a tree")


def is_leafy(t: Graph) -> bool:
    """Trees with at most one vertex of degree two."""
    _require_tree(t)
    return sum(1 for v in range(t.n) if t.degree(v) == 2) <= 1


def beta_c_leafy(t: Graph) -> int:
    """Leaf count; a single vertex counts as one leaf."""
    if not is_leafy(t):
        raise ValueError("tree has more than one vertex of degree two")
    if t.n == 1:
        return 1
    return sum(1 for v in range(t.n) if t.degree(v) == 1)


# ---------------------------------------------------------------------------
# decomposition into leafy subtrees and connecting paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    """Vertex-disjoint leafy subtrees plus covering connector paths.

    Path endpoints flagged shared live inside (and are counted with) one
    of the leafy trees; unshared endpoints are pendant vertices of the
    host tree.  Every vertex is covered exactly once across the leafy
    trees and the path interiors.
    """

    leafy_trees: tuple[VertexSet, ...]
    paths: tuple[tuple[int, ...], ...]
    shared: tuple[tuple[bool, bool], ...]


def _walk_chain(t: Graph, hub: int, start: int, branch: set[int]):
    """Follow degree-2 vertices away from hub; returns (sequence, end_hub)."""
    seq = [start]
    prev, cur = hub, start
    while t.degree(cur) == 2:
        nxt = next(w for w in t.adj[cur] if w != prev)
        if nxt in branch:
            return seq, nxt
        seq.append(nxt)
        prev, cur = cur, nxt
    return seq, None


def tree_decompose(t: Graph) -> TreeDecomposition:
    """Split a tree into leafy subtrees around its branch structure.

    Branchless trees are a single path.  Otherwise every component of the
    degree->=3 skeleton becomes a leafy tree together with the first
    vertex of each incident chain, and one pendant chain per tree (the
    longest, ties to the smallest near endpoint) donates its second
    vertex, which is the one degree-two vertex a leafy tree may carry.
    Leftover chain vertices become paths anchored at their shared
    endpoint inside a tree, or at a pendant vertex of the host tree.
    """
    _require_tree(t)
    branch = {v for v in range(t.n) if t.degree(v) >= 3}

    if not branch:
        if t.n == 1:
            return TreeDecomposition((), ((0,),), ((False, False),))
        start = min(v for v in range(t.n) if t.degree(v) <= 1)
        seq, _ = _walk_chain(t, -1, start, branch)
        return TreeDecomposition((), (tuple(seq),), ((False, False),))

    # components of the induced subgraph on branch vertices
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for v in sorted(branch):
        if v in comp_of:
            continue
        idx = len(comps)
        stack, members = [v], []
        comp_of[v] = idx
        while stack:
            u = stack.pop()
            members.append(u)
            for w in t.adj[u]:
                if w in branch and w not in comp_of:
                    comp_of[w] = idx
                    stack.append(w)
        comps.append(sorted(members))

    forests: list[set[int]] = [set(c) for c in comps]
    pendant_chains: list[tuple[int, list[int]]] = []  # (comp idx, sequence)
    seen_connecting: set[tuple[int, ...]] = set()
    connecting: list[tuple[int, int, list[int]]] = []  # (comp a, comp b, seq)

    for idx, comp in enumerate(comps):
        for hub in comp:
            for w in sorted(t.adj[hub]):
                if w in branch:
                    continue
                seq, end_hub = _walk_chain(t, hub, w, branch)
                if end_hub is None:
                    pendant_chains.append((idx, seq))
                else:
                    key = tuple(sorted((seq[0], seq[-1])))
                    if key not in seen_connecting:
                        seen_connecting.add(key)
                        connecting.append((idx, comp_of[end_hub], seq))

    for idx, seq in pendant_chains:
        forests[idx].add(seq[0])
    for a, b, seq in connecting:
        forests[a].add(seq[0])
        if len(seq) > 1:
            forests[b].add(seq[-1])

    # one absorption per leafy tree: longest pendant chain that still has
    # a vertex to give, ties broken toward the smallest near endpoint
    absorbed: set[int] = set()
    for idx in range(len(comps)):
        candidates = [
            seq for cidx, seq in pendant_chains if cidx == idx and len(seq) >= 2
        ]
        if not candidates:
            continue
        chosen = max(candidates, key=lambda seq: (len(seq), -seq[0]))
        forests[idx].add(chosen[1])
        absorbed.add(chosen[1])

    paths: list[tuple[int, ...]] = []
    shared: list[tuple[bool, bool]] = []
    for idx, seq in pendant_chains:
        cut = 2 if len(seq) >= 2 and seq[1] in absorbed else 1
        if len(seq) > cut:
            paths.append(tuple(seq[cut - 1 :]))
            shared.append((True, False))
    for a, b, seq in connecting:
        if len(seq) > 1:
            paths.append(tuple(seq))
            shared.append((True, True))

    return TreeDecomposition(
        tuple(tuple(sorted(f)) for f in forests), tuple(paths), tuple(shared)
    )


# ---------------------------------------------------------------------------
# exact solver
# ---------------------------------------------------------------------------

def _root_order(t: Graph, root: int = 0) -> tuple[list[int], list[int], list[list[int]]]:
    parent = [-1] * t.n
    order = [root]
    seen = [False] * t.n
    seen[root] = True
    children: list[list[int]] = [[] for _ in range(t.n)]
    for u in order:
        for w in sorted(t.adj[u]):
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                children[u].append(w)
                order.append(w)
    return order, parent, children


def _tree_dp(t: Graph) -> tuple[int, VertexSet]:
    """Maximum convexly independent set in a tree, with a witness.

    Per vertex the DP keeps the best value of four states (a, tau): a is
    the infection flag toward the parent (member, or two infected
    children) and tau records whether the subtree stays violation-free
    when the parent side pushes infection down (tolerant) or only when
    it does not (needs-cold).  Children combine through a tiny knapsack
    over (capped hot-child count, strictest demand), since a member or a
    needs-cold child only constrains how many other hot children the
    vertex may carry.
    """
    order, _, children = _root_order(t)
    # tables[v][(a, tau)] = (value, in_s, final knapsack key)
    tables: list[dict[tuple[int, int], tuple[int, bool, tuple[int, int]]]] = [
        {} for _ in range(t.n)
    ]
    # back pointers per (in_s, stage, m, base); stage i = after child i
    backs: list[dict[tuple, tuple | None]] = [{} for _ in range(t.n)]

    for v in reversed(order):
        table = tables[v]
        back = backs[v]
        for in_s in (True, False):
            states: dict[tuple[int, int], int] = {(0, 1 if in_s else _INF): 0}
            back[(in_s, 0, 0, 1 if in_s else _INF)] = None
            for stage, c in enumerate(children[v], start=1):
                nxt: dict[tuple[int, int], int] = {}
                for (m, base), val in states.items():
                    for (a, tau), (cval, _, _) in tables[c].items():
                        if in_s and tau == _NC:
                            continue
                        demand = _INF if tau == _TOL else (1 if a == 0 else 2)
                        key = (min(m + a, 3), min(base, demand))
                        total = val + cval
                        if total > nxt.get(key, -1):
                            nxt[key] = total
                            back[(in_s, stage) + key] = (
                                (in_s, stage - 1, m, base),
                                c,
                                (a, tau),
                            )
                states = nxt
            last = len(children[v])
            for (m, base), val in states.items():
                if m > base:
                    continue
                tau = _TOL if m < base else _NC
                a = 1 if in_s else (1 if m >= 2 else 0)
                total = val + (1 if in_s else 0)
                prev = table.get((a, tau))
                if prev is None or total > prev[0]:
                    table[(a, tau)] = (total, in_s, (last, m, base))

    root = order[0]
    best_state = max(tables[root], key=lambda st: tables[root][st][0])
    best_value = tables[root][best_state][0]

    witness: list[int] = []
    stack = [(root, best_state)]
    while stack:
        v, state = stack.pop()
        _, in_s, (last, m, base) = tables[v][state]
        if in_s:
            witness.append(v)
        cursor = (in_s, last, m, base)
        while backs[v][cursor] is not None:
            prev_key, child, child_state = backs[v][cursor]
            stack.append((child, child_state))
            cursor = prev_key
    return best_value, tuple(sorted(witness))


def beta_c_tree(t: Graph) -> int:
    _require_tree(t)
    value, _ = _tree_dp(t)
    return value


def beta_c_tree_witness(t: Graph) -> tuple[int, VertexSet]:
    _require_tree(t)
    return _tree_dp(t)
