"""Graph and permutation-diagram types, parsers, generators and recognition.

Vertex ids are 0-based everywhere inside the library; all text formats
(edge lists, permutation lines, CLI output) use 1-based ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO


class ParseError(ValueError):
    """Raised for malformed input text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph as a tuple of per-vertex neighbor sets."""

    n: int
    adj: tuple[frozenset[int], ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from 0-based edge pairs; duplicates are merged."""
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(n, tuple(frozenset(s) for s in nbrs))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")


@dataclass(frozen=True)
class PermutationDiagram:
    """Segments between two horizontal lines; vertex v has top position v+1.

    ``bottom[v]`` is the 1-based bottom-line position of vertex v.  Two
    vertices are adjacent in the induced graph exactly when their segments
    cross: (top(u) - top(v)) * (bottom(u) - bottom(v)) < 0.
    """

    bottom: tuple[int, ...]

    def __post_init__(self):
        n = len(self.bottom)
        if sorted(self.bottom) != list(range(1, n + 1)):
            raise ValueError("bottom positions must be a bijection on 1..n")

    @property
    def n(self) -> int:
        return len(self.bottom)

    def top_pos(self, v: int) -> int:
        return v + 1

    def bottom_pos(self, v: int) -> int:
        return self.bottom[v]

    def crosses(self, u: int, v: int) -> bool:
        return (u - v) * (self.bottom[u] - self.bottom[v]) < 0


@dataclass(frozen=True)
class Cotree:
    """Union/join decomposition tree; leaves carry 0-based vertex ids."""

    kind: str  # "leaf" | "union" | "join"
    vertex: int | None = None
    children: tuple["Cotree", ...] = ()

    def __post_init__(self):
        if self.kind == "leaf":
            if self.vertex is None or self.children:
                raise ValueError("leaf nodes carry a vertex and no children")
        elif self.kind in ("union", "join"):
            if self.vertex is not None or len(self.children) < 2:
                raise ValueError(f"{self.kind} nodes need >= 2 children")
        else:
            raise ValueError(f"unknown cotree node kind {self.kind!r}")

    def leaves(self) -> list[int]:
        if self.kind == "leaf":
            return [self.vertex]
        out: list[int] = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def evaluate(self, n: int | None = None) -> Graph:
        """Expand the cotree back into the graph it represents."""
        leaves = self.leaves()
        if n is None:
            n = max(leaves) + 1 if leaves else 0
        if sorted(leaves) != list(range(n)):
            raise ValueError("cotree leaves must be exactly the vertices 0..n-1")
        edges: list[tuple[int, int]] = []

        def walk(node: "Cotree") -> list[int]:
            if node.kind == "leaf":
                return [node.vertex]
            parts = [walk(c) for c in node.children]
            if node.kind == "join":
                for i in range(len(parts)):
                    for j in range(i + 1, len(parts)):
                        for u in parts[i]:
                            for v in parts[j]:
                                edges.append((u, v))
            merged: list[int] = []
            for p in parts:
                merged.extend(p)
            return merged

        walk(self)
        return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def parse_edge_list(source: str | TextIO) -> Graph:
    """Parse the "n m" edge-list format with 1-based vertex ids.

    Lines starting with '#' and blank lines are skipped.  Duplicate edges
    are merged silently; self-loops and out-of-range ids are errors.
    """
    text = source if isinstance(source, str) else source.read()
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected 'n m' header") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("expected header 'n m'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header 'n m' must be two integers", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", lineno)

    edges: list[tuple[int, int]] = []
    for lineno, line in lines:
        if len(edges) == m:
            raise ParseError(f"more than the declared {m} edges", lineno)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected edge 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge 'u v' must be two integers", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u - 1, v - 1))
    if len(edges) != m:
        raise ParseError(f"declared {m} edges but found {len(edges)}")
    return Graph.from_edges(n, edges)


def parse_permutation(source: str | TextIO) -> PermutationDiagram:
    """Parse one line of bottom-line positions, 1-based, one per vertex."""
    text = source if isinstance(source, str) else source.read()
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input, expected one permutation line")
    if len(lines) > 1:
        raise ParseError("expected a single permutation line", lines[1][0])
    lineno, line = lines[0]
    try:
        values = tuple(int(tok) for tok in line.split())
    except ValueError:
        raise ParseError("permutation entries must be integers", lineno) from None
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ParseError("entries must be a bijection of 1..n", lineno)
    return PermutationDiagram(values)


def format_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list, 1-based output."""
    lines = [f"{g.n} {g.edge_count()}"]
    for u, v in sorted(g.edges()):
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def format_permutation(d: PermutationDiagram) -> str:
    return " ".join(str(b) for b in d.bottom) + "\n"


def diagram_to_graph(d: PermutationDiagram) -> Graph:
    """Intersection graph of the diagram's segments."""
    edges = [
        (u, v)
        for u in range(d.n)
        for v in range(u + 1, d.n)
        if d.bottom[u] > d.bottom[v]
    ]
    return Graph.from_edges(d.n, edges)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("paths need n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _ladder_rungs(k: int) -> list[tuple[int, int]]:
    """0-based (left, right) vertex pair of each rung, in rung order."""
    rungs = [(0, 2)]
    for i in range(2, k):
        rungs.append((2 * i - 3, 2 * i))
    rungs.append((2 * k - 3, 2 * k - 1))
    return rungs


def gen_ladder(k: int) -> tuple[Graph, PermutationDiagram]:
    """Ladder with k rungs (2k vertices) plus its crossing-pair diagram.

    Rung i is drawn as a crossing segment pair; consecutive rungs are
    linked by the two rail edges.  The diagram realizes exactly the
    ladder graph that is returned alongside it.
    """
    if k < 2:
        raise ValueError("ladders need k >= 2 rungs")
    rungs = _ladder_rungs(k)
    edges: list[tuple[int, int]] = list(rungs)
    for (l1, r1), (l2, r2) in zip(rungs, rungs[1:]):
        edges.append((l1, r2))
        edges.append((r1, l2))
    graph = Graph.from_edges(2 * k, edges)

    bottom = [0] * (2 * k)
    for left, right in rungs:
        # within a rung the segments swap: left top end, right bottom end
        bottom[left] = right + 1
        bottom[right] = left + 1
    diagram = PermutationDiagram(tuple(bottom))
    return graph, diagram


def ladder_marked_set(k: int) -> tuple[int, ...]:
    """Seed set whose hull is the whole ladder and whose boundary is nonempty.

    Marks one rail at rung 1, the other rail at rung 2, then the first
    rail at every even rung; odd k additionally marks the last rung,
    whose pair cannot be infected from outside.
    """
    rungs = _ladder_rungs(k)
    rail_a = [rungs[0][0]] + [
        rungs[i][1] if i % 2 else rungs[i][0] for i in range(1, k)
    ]
    rail_b = [rungs[0][1]] + [
        rungs[i][0] if i % 2 else rungs[i][1] for i in range(1, k)
    ]
    marks = {rail_a[0], rail_b[1]}
    for rung in range(4, k + 1, 2):
        marks.add(rail_a[rung - 1])
    if k % 2 == 1:
        marks.add(rail_a[k - 1])
    return tuple(sorted(marks))


def gen_spider(legs: int, leg_length: int) -> Graph:
    """One center vertex with `legs` attached paths of `leg_length` vertices."""
    if legs < 1 or leg_length < 1:
        raise ValueError("spiders need legs >= 1 and leg_length >= 1")
    edges = []
    v = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_length):
            edges.append((prev, v))
            prev = v
            v += 1
    return Graph.from_edges(v, edges)


def gen_random_permutation(n: int, seed: int) -> PermutationDiagram:
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = random.Random(seed)
    values = list(range(1, n + 1))
    rng.shuffle(values)
    return PermutationDiagram(tuple(values))


def gen_random_tree(n: int, seed: int) -> Graph:
    """Random recursive tree: each vertex picks a parent among its elders."""
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph.from_edges(n, edges)


def gen_random_cograph(n: int, seed: int) -> tuple[Graph, Cotree]:
    """Random cotree over n leaves, evaluated to its graph."""
    if n < 1:
        raise ValueError("n >= 1 required")
    rng = random.Random(seed)

    def build(ids: list[int], parent_kind: str | None) -> Cotree:
        if len(ids) == 1:
            return Cotree("leaf", vertex=ids[0])
        kind = rng.choice(("union", "join"))
        if kind == parent_kind:
            kind = "union" if kind == "join" else "join"
        k = rng.randint(2, len(ids))
        rng.shuffle(ids)
        # random composition of len(ids) into k nonempty parts
        cuts = sorted(rng.sample(range(1, len(ids)), k - 1))
        parts = []
        prev = 0
        for cut in cuts + [len(ids)]:
            parts.append(ids[prev:cut])
            prev = cut
        return Cotree(kind, children=tuple(build(p, kind) for p in parts))

    tree = build(list(range(n)), None)
    if tree.kind == "leaf":
        return Graph.from_edges(1, []), tree
    return tree.evaluate(n), tree


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, listed by smallest member."""
    seen = [False] * g.n
    out: list[tuple[int, ...]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and g.edge_count() == g.n - 1


def is_path_graph(g: Graph) -> bool:
    if not is_tree(g):
        return False
    return all(g.degree(v) <= 2 for v in range(g.n))


def is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(g.degree(v) == 2 for v in range(g.n))


def classify(g: Graph, has_diagram: bool = False) -> str:
    """Dispatch tag, cheapest solver first.

    Priority: path > cycle > tree > cograph > permutation-input > generic.
    "permutation-input" is only reported when a diagram accompanied the
    graph, since no recognition from the bare graph is attempted.
    """
    from .cographs import NotACographError, build_cotree

    if is_path_graph(g):
        return "path"
    if is_cycle_graph(g):
        return "cycle"
    if is_tree(g):
        return "tree"
    try:
        build_cotree(g)
        return "cograph"
    except NotACographError:
        pass
    if has_diagram:
        return "permutation-input"
    return "generic"
