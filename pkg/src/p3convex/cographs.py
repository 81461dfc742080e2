"""Cograph recognition and the union/join recursion for beta_c.

Cographs decompose completely: every induced subgraph with at least two
vertices is disconnected or has a disconnected complement.  Recognition
recurses on that property; failure yields four vertices inducing a P4.
"""

from __future__ import annotations

from .convexity import VertexSet
from .graphs import Cotree, Graph


class NotACographError(ValueError):
    """Carries an induced P4 as 0-based path-ordered witness vertices."""

    def __init__(self, witness: tuple[int, int, int, int]):
        self.witness = witness
        super().__init__(
            "not a cograph: vertices "
            + "-".join(str(v + 1) for v in witness)
            + " induce a P4"
        )


def _sub_components(g: Graph, vertices: list[int], complement: bool) -> list[list[int]]:
    vset = set(vertices)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in vertices:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            if complement:
                nbrs = vset - g.adj[u] - {u}
            else:
                nbrs = g.adj[u] & vset
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _find_p4(g: Graph, vertices: list[int]) -> tuple[int, int, int, int]:
    """Scan middle edges: any induced P4 w-x-y-z appears at its edge (x, y)."""
    vset = set(vertices)
    for x in vertices:
        for y in g.adj[x] & vset:
            if x > y:
                continue
            left = (g.adj[x] & vset) - g.adj[y] - {y}
            right = (g.adj[y] & vset) - g.adj[x] - {x}
            for w in left:
                for z in right:
                    if not g.has_edge(w, z):
                        return (w, x, y, z)
    raise AssertionError("connected co-connected graph must contain a P4")


def build_cotree(g: Graph) -> Cotree:
    """Recursive union/join decomposition; raises NotACographError with an
    induced P4 when the graph is not a cograph."""
    if g.n < 1:
        raise ValueError("cotrees need n >= 1")

    def rec(vertices: list[int]) -> Cotree:
        if len(vertices) == 1:
            return Cotree("leaf", vertex=vertices[0])
        comps = _sub_components(g, vertices, complement=False)
        if len(comps) > 1:
            return Cotree("union", children=tuple(rec(c) for c in comps))
        cocomps = _sub_components(g, vertices, complement=True)
        if len(cocomps) > 1:
            return Cotree("join", children=tuple(rec(c) for c in cocomps))
        raise NotACographError(_find_p4(g, vertices))

    return rec(list(range(g.n)))


def _component_count(node: Cotree) -> int:
    if node.kind == "union":
        return sum(_component_count(c) for c in node.children)
    return 1


def _smallest_leaf(node: Cotree) -> int:
    return min(node.leaves())


def _one_per_component(node: Cotree) -> list[int]:
    if node.kind == "union":
        return [v for c in node.children for v in _one_per_component(c)]
    return [_smallest_leaf(node)]


def beta_c_cograph(t: Cotree) -> int:
    value, _ = beta_c_cograph_witness(t)
    return value


def beta_c_cograph_witness(t: Cotree) -> tuple[int, VertexSet]:
    """Evaluate the cotree recursion and return a realizing set.

    Unions add up their children.  A join is capped at two unless one
    part is a single universal vertex u, in which case one vertex per
    component of the rest is independent and the value is that component
    count; multi-part joins evaluate all singleton parts directly rather
    than folding the join into binary steps.
    """
    if not isinstance(t, Cotree):
        raise ValueError("expected a Cotree")

    def rec(node: Cotree) -> tuple[int, list[int]]:
        if node.kind == "leaf":
            return 1, [node.vertex]
        if node.kind == "union":
            total, witness = 0, []
            for c in node.children:
                v, w = rec(c)
                total += v
                witness.extend(w)
            return total, witness

        # join node: size of each part and of the whole
        sizes = [len(c.leaves()) for c in node.children]
        n = sum(sizes)
        # baseline: any two vertices from different parts
        best = 2
        witness = [_smallest_leaf(node.children[0]), _smallest_leaf(node.children[1])]
        for i, c in enumerate(node.children):
            if sizes[i] != 1:
                continue
            rest = [node.children[j] for j in range(len(node.children)) if j != i]
            if len(rest) >= 2:
                continue  # the rest joins into one component, candidate 1
            count = _component_count(rest[0])
            if count > best:
                best = count
                witness = _one_per_component(rest[0])
        return best, witness

    value, witness = rec(t)
    return value, tuple(sorted(witness))
