"""Dynamic program for the convex-independence number of permutation graphs.

States are keyed by the last component of the independent set (single
segment or crossing pair), the border of its hull (rightmost infected
endpoint on each line) and a witness triple of gateway neighbors of the
last component.  Each state keeps one concrete representative set, so
every transition is exactly computable; the state-mode checks use only
border, triple and last-component information, while witness mode
re-verifies independence from scratch.  Both must agree, and the solver
can be asked to compare them on every transition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .convexity import is_convexly_independent
from .graphs import Graph, PermutationDiagram, diagram_to_graph, format_permutation
from .oracle import OracleResult, beta_c_oracle

MODES = ("state", "witness", "compare", "oracle-check")


class SolverMismatchError(RuntimeError):
    """State mode, witness mode and/or the oracle disagreed; the message
    carries the full instance so it can be frozen into a fixture."""


@dataclass(frozen=True)
class DiagramComponent:
    """One or two segments forming a connected piece of an independent set."""

    vertices: tuple[int, ...]
    min_top: int
    max_top: int
    min_bottom: int
    max_bottom: int

    @staticmethod
    def of(d: PermutationDiagram, vertices: Iterable[int]) -> "DiagramComponent":
        vs = tuple(sorted(set(vertices)))
        if len(vs) not in (1, 2):
            raise ValueError("components are single vertices or crossing pairs")
        for v in vs:
            if not 0 <= v < d.n:
                raise ValueError(f"vertex {v} out of range")
        if len(vs) == 2 and not d.crosses(*vs):
            raise ValueError(f"vertices {vs} do not cross")
        tops = [v + 1 for v in vs]
        bottoms = [d.bottom[v] for v in vs]
        return DiagramComponent(
            vs, min(tops), max(tops), min(bottoms), max(bottoms)
        )


class Border(NamedTuple):
    top: int
    bottom: int


@dataclass(frozen=True)
class WitnessTriple:
    """Gateway neighbors of the last component that threaten old members.

    ``y1``/``y2`` is the stored pair for threats that enter through two
    gateways, ``y_single`` the best single gateway; a threat materializes
    for a new component X when the pair (or the single) is adjacent to X.
    """

    y1: int | None = None
    y2: int | None = None
    y_single: int | None = None

    def is_empty(self) -> bool:
        return self.y1 is None and self.y2 is None and self.y_single is None


@dataclass
class DpState:
    last: DiagramComponent
    border: Border
    witnesses: WitnessTriple
    best_size: int
    representative: tuple[int, ...]
    hull_members: frozenset[int] = field(repr=False, default=frozenset())
    # hull mask of representative-minus-member, aligned with representative;
    # removing a member cannot change these, so they decide re-infection
    removal_hulls: tuple[int, ...] = field(repr=False, default=())

    def key(self):
        return (
            self.last.vertices,
            self.border,
            (self.witnesses.y1, self.witnesses.y2, self.witnesses.y_single),
        )


# ---------------------------------------------------------------------------
# geometric predicates
# ---------------------------------------------------------------------------

def enumerate_components(d: PermutationDiagram) -> list[DiagramComponent]:
    """All singletons plus all crossing pairs, in staircase order."""
    comps = [DiagramComponent.of(d, (v,)) for v in range(d.n)]
    for u in range(d.n):
        for v in range(u + 1, d.n):
            if d.bottom[u] > d.bottom[v]:
                comps.append(DiagramComponent.of(d, (u, v)))
    comps.sort(key=lambda c: (c.max_top, c.max_bottom))
    return comps


def is_right_of(x: DiagramComponent, last: DiagramComponent) -> bool:
    return x.min_top > last.max_top and x.min_bottom > last.max_bottom


def left_of_border(d: PermutationDiagram, v: int, b: Border) -> bool:
    return v + 1 < b.top and d.bottom[v] < b.bottom


def compute_border(d: PermutationDiagram, hull_members: Iterable[int]) -> Border:
    members = list(hull_members)
    if not members:
        raise ValueError("border of an empty hull is undefined")
    return Border(
        max(v + 1 for v in members), max(d.bottom[v] for v in members)
    )


def membership_by_border(
    d: PermutationDiagram, v: int, last: DiagramComponent, b: Border
) -> bool:
    """Hull membership test for a vertex right of the last component: the
    segment lies in the hull exactly when it is left of the border."""
    x = DiagramComponent.of(d, (v,))
    if not is_right_of(x, last):
        raise ValueError(f"vertex {v} is not right of the last component")
    return left_of_border(d, v, b)


# ---------------------------------------------------------------------------
# bitmask infection engine
# ---------------------------------------------------------------------------

def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for v in range(g.n):
        m = 0
        for w in g.adj[v]:
            m |= 1 << w
        masks[v] = m
    return masks


def _spread(masks: list[int], seed_mask: int) -> int:
    """Least fixed point of the two-neighbor rule over bitmasks."""
    infected = seed_mask
    seen = 0
    twice = 0
    frontier = seed_mask
    while frontier:
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nb = masks[v]
            twice |= seen & nb
            seen |= nb
        frontier = twice & ~infected
        infected |= frontier
    return infected


def _spread_parents(
    masks: list[int], seed: Iterable[int]
) -> tuple[int, dict[int, tuple[int, int]]]:
    """Fixed point plus, per infected vertex, the two vertices that fired it."""
    seed_list = sorted(seed)
    infected = 0
    for v in seed_list:
        infected |= 1 << v
    first: dict[int, int] = {}
    parents: dict[int, tuple[int, int]] = {}
    work = list(reversed(seed_list))
    while work:
        u = work.pop()
        nb = masks[u] & ~infected
        while nb:
            w = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            if w in first:
                infected |= 1 << w
                parents[w] = (first.pop(w), u)
                work.append(w)
            else:
                first[w] = u
    return infected, parents


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int) -> Iterable[int]:
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


# ---------------------------------------------------------------------------
# witness triple
# ---------------------------------------------------------------------------

def _gateway_parts(
    d: PermutationDiagram, g: Graph, last: DiagramComponent
) -> tuple[list[int], list[int]]:
    """N(last) split by which endpoint lies right of the component."""
    nbhd: set[int] = set()
    for ell in last.vertices:
        nbhd |= g.adj[ell]
    nbhd -= set(last.vertices)
    top_part = sorted(v for v in nbhd if v + 1 > last.max_top)
    bottom_part = sorted(v for v in nbhd if d.bottom[v] > last.max_bottom)
    return top_part, bottom_part


def witness_triple(
    d: PermutationDiagram,
    g: Graph,
    s: Iterable[int],
    last: DiagramComponent,
    masks: list[int] | None = None,
) -> WitnessTriple:
    """Compute the gateway triple for a state.

    Two auxiliary true twins are placed immediately right of the last
    component; they are adjacent to exactly the neighbors of the last
    component whose segment sticks out past it.  For each member u
    outside the last component we test whether u falls into the hull of
    (s - u) plus the twins; the neighbors of the last component on the
    firing chain of u are its gateways.  Chains through two gateways
    feed the stored pair (per line its furthest-reaching element), chains
    through one gateway feed the stored single (largest neighborhood to
    the right, ties to the smaller id).
    """
    members = tuple(sorted(set(s)))
    rest = [u for u in members if u not in last.vertices]
    if not rest:
        return WitnessTriple()
    if masks is None:
        masks = _adj_masks(g)

    top_part, bottom_part = _gateway_parts(d, g, last)
    gateway_set = set(top_part) | set(bottom_part)
    t1, t2 = g.n, g.n + 1
    aux = list(masks) + [0, 0]
    twin_mask = (1 << t1) | (1 << t2)
    gw_mask = _mask_of(gateway_set)
    aux[t1] = gw_mask | (1 << t2)
    aux[t2] = gw_mask | (1 << t1)
    for y in gateway_set:
        aux[y] = masks[y] | twin_mask

    member_mask = _mask_of(members)
    pair_pool: set[int] = set()
    single_pool: set[int] = set()
    for u in rest:
        seed = [v for v in members if v != u] + [t1, t2]
        infected, parents = _spread_parents(aux, seed)
        if not (infected >> u) & 1:
            continue
        needed = {u}
        stack = [u]
        while stack:
            v = stack.pop()
            if v in parents:
                for p in parents[v]:
                    if p not in needed:
                        needed.add(p)
                        stack.append(p)
        chain = needed - set(seed)
        gateways = chain & gateway_set
        if len(gateways) >= 2:
            pair_pool |= gateways
        elif len(gateways) == 1:
            single_pool |= gateways

    y1 = y2 = None
    if pair_pool:
        in_top = [y for y in top_part if y in pair_pool]
        in_bottom = [y for y in bottom_part if y in pair_pool]
        if in_top and in_bottom:
            y1 = max(in_top)  # top position is the vertex id plus one
            y2 = max(in_bottom, key=lambda y: d.bottom[y])
        else:
            part = in_top or in_bottom
            rank = (lambda y: y) if in_top else (lambda y: d.bottom[y])
            ordered = sorted(part, key=rank, reverse=True)
            if len(ordered) >= 2:
                y1, y2 = ordered[0], ordered[1]

    y_single = None
    if single_pool:
        right_mask = _mask_of(
            w
            for w in range(g.n)
            if w + 1 > last.max_top and d.bottom[w] > last.max_bottom
        )
        y_single = max(
            sorted(single_pool),
            key=lambda y: (bin(masks[y] & right_mask).count("1"), -y),
        )
    return WitnessTriple(y1, y2, y_single)


# ---------------------------------------------------------------------------
# transitions
# ---------------------------------------------------------------------------

def feasible_new_component(
    d: PermutationDiagram,
    g: Graph,
    state: DpState,
    x: DiagramComponent,
    masks: list[int] | None = None,
) -> bool:
    """Check the new component itself against the state.

    Pairs must not be left of the border and neither member may fall in
    the hull of the representative plus the other.  Singletons must be
    outside the hull (the border decides that, being right of the last
    component) and may touch the hull through at most one neighbor.
    """
    if not is_right_of(x, state.last):
        raise ValueError("new component must be right of the last component")
    if masks is None:
        masks = _adj_masks(g)
    hull_mask = _mask_of(state.hull_members)
    if len(x.vertices) == 2:
        u, v = x.vertices
        if left_of_border(d, u, state.border) or left_of_border(d, v, state.border):
            return False
        rep_mask = _mask_of(state.representative)
        if (_spread(masks, rep_mask | (1 << v)) >> u) & 1:
            return False
        if (_spread(masks, rep_mask | (1 << u)) >> v) & 1:
            return False
        return True
    (v,) = x.vertices
    if left_of_border(d, v, state.border):
        return False
    if (hull_mask >> v) & 1:
        return False
    return bin(masks[v] & hull_mask).count("1") <= 1


def _threatened_by_witnesses(
    g: Graph, state: DpState, x: DiagramComponent
) -> bool:
    """Sound fast rejection through the stored gateway triple.

    A stored single gateway adjacent to X re-infects its member outright.
    A stored pair spanning both parts does too when X touches both: any
    activated gateway activates every gateway of the other part, after
    which the full gateway set is live, which is exactly the situation
    the auxiliary twins simulated.  Pairs confined to one part are not
    decided here; the exact member checks below settle them.
    """
    w = state.witnesses
    xs = x.vertices

    def hits(y: int | None) -> bool:
        return y is not None and any(g.has_edge(y, xv) for xv in xs)

    if hits(w.y_single):
        return True
    if w.y1 is not None and w.y2 is not None and hits(w.y1) and hits(w.y2):
        last = state.last
        top1 = w.y1 + 1 > last.max_top
        top2 = w.y2 + 1 > last.max_top
        if top1 != top2:
            return True
    return False


def _state_mode_ok(
    d: PermutationDiagram,
    g: Graph,
    state: DpState,
    x: DiagramComponent,
    masks: list[int],
) -> bool:
    if not feasible_new_component(d, g, state, x, masks):
        return False
    if _threatened_by_witnesses(g, state, x):
        return False
    # exact re-infection checks on the representative: removing a member
    # leaves its removal hull unchanged, so a member stays safe exactly
    # when that hull plus X does not spread back onto it
    x_mask = _mask_of(x.vertices)
    for u, base in zip(state.representative, state.removal_hulls):
        if (_spread(masks, base | x_mask) >> u) & 1:
            return False
    return True


def _witness_mode_ok(g: Graph, state: DpState, x: DiagramComponent) -> bool:
    return is_convexly_independent(
        g, state.representative + x.vertices
    ).independent


def extend_state(
    d: PermutationDiagram,
    g: Graph,
    state: DpState,
    x: DiagramComponent,
    mode: str = "state",
    masks: list[int] | None = None,
) -> DpState | None:
    """Try to append component x to the state; None when the union is not
    convexly independent.  Mode "compare" runs both checks and raises
    SolverMismatchError if they disagree."""
    if not is_right_of(x, state.last):
        raise ValueError("new component must be right of the last component")
    if mode not in ("state", "witness", "compare"):
        raise ValueError(f"unknown extension mode {mode!r}")
    if masks is None:
        masks = _adj_masks(g)

    if mode == "state":
        ok = _state_mode_ok(d, g, state, x, masks)
    elif mode == "witness":
        ok = _witness_mode_ok(g, state, x)
    else:
        ok_state = _state_mode_ok(d, g, state, x, masks)
        ok_witness = _witness_mode_ok(g, state, x)
        if ok_state != ok_witness:
            raise SolverMismatchError(
                "state/witness disagreement\n"
                f"  diagram: {format_permutation(d).strip()}\n"
                f"  representative (1-based): "
                f"{[v + 1 for v in state.representative]}\n"
                f"  new component (1-based): {[v + 1 for v in x.vertices]}\n"
                f"  state says {ok_state}, witness says {ok_witness}"
            )
        ok = ok_state
    if not ok:
        return None

    rep = tuple(sorted(state.representative + x.vertices))
    rep_mask = _mask_of(rep)
    members = frozenset(_bits(_spread(masks, rep_mask)))
    return DpState(
        last=x,
        border=compute_border(d, members),
        witnesses=witness_triple(d, g, rep, x, masks),
        best_size=state.best_size + len(x.vertices),
        representative=rep,
        hull_members=members,
        removal_hulls=tuple(
            _spread(masks, rep_mask & ~(1 << u)) for u in rep
        ),
    )


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

def _initial_state(
    d: PermutationDiagram,
    g: Graph,
    comp: DiagramComponent,
    masks: list[int],
) -> DpState:
    rep = comp.vertices
    rep_mask = _mask_of(rep)
    members = frozenset(_bits(_spread(masks, rep_mask)))
    return DpState(
        last=comp,
        border=compute_border(d, members),
        witnesses=WitnessTriple(),
        best_size=len(rep),
        representative=rep,
        hull_members=members,
        removal_hulls=tuple(
            _spread(masks, rep_mask & ~(1 << u)) for u in rep
        ),
    )


def _sort_key(state_key):
    last, border, triple = state_key
    return (last, border, tuple(-1 if y is None else y for y in triple))


def beta_c_permutation(d: PermutationDiagram, mode: str = "state") -> OracleResult:
    """Maximum convexly independent set of the diagram's graph.

    Components are processed left to right; a state is final once every
    state whose last component precedes it has been extended, so each
    key is expanded exactly once.  Mode "oracle-check" runs the dynamic
    program with per-transition state/witness comparison and verifies
    the result against the exhaustive oracle.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "oracle-check":
        result = beta_c_permutation(d, mode="compare")
        reference = beta_c_oracle(diagram_to_graph(d))
        if result.value != reference.value:
            raise SolverMismatchError(
                "dynamic program disagrees with the oracle\n"
                f"  diagram: {format_permutation(d).strip()}\n"
                f"  dp value {result.value}, oracle value {reference.value}"
            )
        return result

    g = diagram_to_graph(d)
    masks = _adj_masks(g)
    comps = enumerate_components(d)
    extension_mode = "witness" if mode == "witness" else mode

    comp_index = {c.vertices: i for i, c in enumerate(comps)}
    buckets: list[dict[tuple, DpState]] = [dict() for _ in comps]
    explored = 0
    best: DpState | None = None

    for comp in comps:
        st = _initial_state(d, g, comp, masks)
        buckets[comp_index[comp.vertices]][st.key()] = st
        explored += 1

    # candidate lists are shared by every state with the same last component
    candidate_cache: dict[int, list[int]] = {}

    def candidates(ci: int) -> list[int]:
        got = candidate_cache.get(ci)
        if got is None:
            last = comps[ci]
            got = [
                cj
                for cj in range(ci + 1, len(comps))
                if is_right_of(comps[cj], last)
            ]
            candidate_cache[ci] = got
        return got

    for ci in range(len(comps)):
        bucket = buckets[ci]
        for key in sorted(bucket, key=_sort_key):
            state = bucket[key]
            if (
                best is None
                or state.best_size > best.best_size
                or (
                    state.best_size == best.best_size
                    and state.representative < best.representative
                )
            ):
                best = state
            for cj in candidates(ci):
                explored += 1
                nxt = extend_state(d, g, state, comps[cj], extension_mode, masks)
                if nxt is None:
                    continue
                target = buckets[cj]
                prior = target.get(nxt.key())
                if (
                    prior is None
                    or nxt.best_size > prior.best_size
                    or (
                        nxt.best_size == prior.best_size
                        and nxt.representative < prior.representative
                    )
                ):
                    target[nxt.key()] = nxt

    assert best is not None
    verdict = is_convexly_independent(g, best.representative)
    if not verdict.independent:
        raise SolverMismatchError(
            "returned witness failed re-verification\n"
            f"  diagram: {format_permutation(d).strip()}\n"
            f"  witness (1-based): {[v + 1 for v in best.representative]}"
        )
    return OracleResult(best.best_size, best.representative, explored)
