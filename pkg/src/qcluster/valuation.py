"""Power-of-q valuations of matchings and of submodule index sets.

Two routes to the same integer:

* On the snake graph, twisting a tile changes the valuation by a count
  of matched edges carrying the tile's arc on either side of the tile,
  corrected by how often the arc reappears as a diagonal.  Breadth-first
  propagation from the minimal matching (valuation 0) assigns every
  matching a value; every twist relation is re-checked.

* On the module side the same quantities are computed from the word
  alone: each arc contributes through a small case analysis at every
  position (interior double letters, the two word ends, glued edge
  pairs, and the free sides of the end tiles), and adding or removing
  one index changes the valuation by the resulting signed count.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    CannotTwist,
    InconsistentValuation,
    UnmatchedCase,
    UnreachableSubmodule,
)
from .snake import (
    SnakeGraph,
    can_twist,
    enumerate_matchings,
    label_snake,
    matching_to_submodule,
    maximal_matching,
    minimal_matching,
    twist,
)
from .strings import StringWord, enumerate_canonical_submodules, is_canonical_submodule
from .surface import Triangulation

__all__ = [
    "m_pm",
    "n_pm",
    "omega",
    "valuation_v",
    "n_module",
    "big_counts",
    "omega_prime",
    "valuation_v_gamma",
]


# -- matching side -----------------------------------------------------


def m_pm(g: SnakeGraph, s: int, tau: int) -> tuple:
    """Occurrences of tau as a diagonal before and after tile s."""
    before = sum(1 for j in range(1, s) if g.tile(j).diagonal == tau)
    after = sum(1 for j in range(s + 1, g.d + 1) if g.tile(j).diagonal == tau)
    return before, after


def _region_edges(g: SnakeGraph, s: int) -> tuple:
    minus = set()
    for j in range(1, s):
        for eid, _ in g.tile_edges(j):
            minus.add(eid)
    plus = set()
    for j in range(s + 1, g.d + 1):
        for eid, _ in g.tile_edges(j):
            plus.add(eid)
    return minus, plus


def n_pm(g: SnakeGraph, s: int, P: frozenset, tau: int) -> tuple:
    """Matched tau-labeled edges strictly on either side of tile s.

    The side regions include the edges gluing them to tile s.  Only
    defined at twistable tiles.
    """
    if not can_twist(g, P, s):
        raise CannotTwist(f"matching does not cover tile {s} by an opposite pair")
    minus, plus = _region_edges(g, s)
    n_minus = sum(1 for e in P if e in minus and g.edge_label(e) == tau)
    n_plus = sum(1 for e in P if e in plus and g.edge_label(e) == tau)
    return n_minus, n_plus


def omega(g: SnakeGraph, s: int, P: frozenset) -> int:
    """Valuation drop across the twist at tile s."""
    tau = g.tile(s).diagonal
    m_minus, m_plus = m_pm(g, s, tau)
    n_minus, n_plus = n_pm(g, s, P, tau)
    sign = 1 if g.ccw_pair(s) <= P else -1
    return sign * (n_plus - m_plus - n_minus + m_minus)


def valuation_v(g: SnakeGraph) -> dict:
    """Valuation of every matching, keyed by the matching.

    Propagates v(twist_s(P)) = v(P) - omega(s, P) from the minimal
    matching and cross-checks every twist relation and both endpoint
    normalizations v(minimal) = v(maximal) = 0.
    """
    base = minimal_matching(g)
    values = {base: 0}
    queue = deque([base])
    while queue:
        P = queue.popleft()
        for s in range(1, g.d + 1):
            if not can_twist(g, P, s):
                continue
            Q = twist(g, P, s)
            val = values[P] - omega(g, s, P)
            if Q in values:
                if values[Q] != val:
                    raise InconsistentValuation(
                        f"twist at tile {s} gives {val}, stored {values[Q]}"
                    )
            else:
                values[Q] = val
                queue.append(Q)
    all_matchings = enumerate_matchings(g)
    if set(values) != set(all_matchings):
        raise InconsistentValuation(
            f"twists reach {len(values)} of {len(all_matchings)} matchings"
        )
    if values[maximal_matching(g)] != 0:
        raise InconsistentValuation(
            f"maximal matching has valuation {values[maximal_matching(g)]}, want 0"
        )
    return values


# -- module side -------------------------------------------------------


@dataclass
class _WordContext:
    word: StringWord
    graph: SnakeGraph

    @property
    def d(self) -> int:
        return self.word.d

    def arc(self, i: int) -> int:
        return self.word.vertices[i - 1]

    def direct(self, p: int) -> bool:
        return self.word.letters[p - 1].direct


def _context(w: StringWord, t: Triangulation, graph: SnakeGraph | None) -> _WordContext:
    return _WordContext(w, graph if graph is not None else label_snake(w, t))


def n_module(
    w: StringWord,
    t: Triangulation,
    k: int,
    j: int,
    indices,
    *,
    graph: SnakeGraph | None = None,
) -> tuple:
    """Counts (n, n_plus, n_minus) of arc k at position j for an index set.

    The signed parts appear only when position j crosses arc k itself;
    the unsigned contributions collect glued edges and the free sides
    of the end tiles.  All contributions accumulate.
    """
    ctx = _context(w, t, graph)
    indices = frozenset(indices)
    d = ctx.d
    if not 1 <= j <= d:
        raise UnmatchedCase(f"position {j} outside 1..{d}")
    n_plus = n_minus = 0
    plain = 0
    inside = lambda i: i in indices

    if ctx.arc(j) == k:
        if 2 <= j <= d - 1:
            prev_direct, next_direct = ctx.direct(j - 1), ctx.direct(j)
            if not prev_direct and not next_direct:
                n_plus = 1 if inside(j + 1) else 0
                n_minus = 0 if inside(j - 1) else 1
            elif prev_direct and next_direct:
                n_plus = 0 if inside(j + 1) else 1
                n_minus = 1 if inside(j - 1) else 0
            elif not prev_direct and next_direct:
                n_plus = 0 if inside(j + 1) else 1
                n_minus = 0 if inside(j - 1) else 1
            else:
                n_plus = 1 if inside(j + 1) else 0
                n_minus = 1 if inside(j - 1) else 0
        elif j == 1 and d >= 2:
            if ctx.direct(1):
                n_plus = 0 if inside(2) else 1
            else:
                n_plus = 1 if inside(2) else 0
        elif j == d and d >= 2:
            if ctx.direct(d - 1):
                n_minus = 1 if inside(d - 1) else 0
            else:
                n_minus = 0 if inside(d - 1) else 1

    g = ctx.graph
    if j <= d - 1 and g.glue_label(j) == k:
        if inside(j) != inside(j + 1):
            plain += 1
    if j == 1:
        tri = t.triangles[g.tile(1).tri_in]
        diag = ctx.arc(1)
        if k in tri and k != diag:
            if t.ccw_flank(g.tile(1).tri_in, diag) == k:
                plain += 1 if inside(1) else 0
            else:
                plain += 0 if inside(1) else 1
    if j == d:
        tri = t.triangles[g.tile(d).tri_out]
        diag = ctx.arc(d)
        if k in tri and k != diag:
            if t.ccw_flank(g.tile(d).tri_out, diag) == k:
                plain += 1 if inside(d) else 0
            else:
                plain += 0 if inside(d) else 1

    return n_plus + n_minus + plain, n_plus, n_minus


def big_counts(
    w: StringWord,
    t: Triangulation,
    k: int,
    j: int,
    indices,
    *,
    graph: SnakeGraph | None = None,
) -> tuple:
    """(M_minus, M_plus, N_minus, N_plus) for arc k anchored at position j.

    Position j must cross arc k.  The M-counts repeat m_pm on the word;
    the N-counts add the anchored signed parts to the plain totals of
    the other positions on each side.
    """
    ctx = _context(w, t, graph)
    if ctx.arc(j) != k:
        raise UnmatchedCase(f"position {j} crosses {ctx.arc(j)}, not {k}")
    d = ctx.d
    m_minus = sum(1 for i in range(1, j) if ctx.arc(i) == k)
    m_plus = sum(1 for i in range(j + 1, d + 1) if ctx.arc(i) == k)
    _, n_plus_here, n_minus_here = n_module(w, t, k, j, indices, graph=ctx.graph)
    n_minus = n_minus_here + sum(
        n_module(w, t, k, i, indices, graph=ctx.graph)[0] for i in range(1, j)
    )
    n_plus = n_plus_here + sum(
        n_module(w, t, k, i, indices, graph=ctx.graph)[0] for i in range(j + 1, d + 1)
    )
    return m_minus, m_plus, n_minus, n_plus


def omega_prime(
    w: StringWord,
    t: Triangulation,
    j: int,
    indices,
    *,
    graph: SnakeGraph | None = None,
) -> int:
    """Word-side form of the twist increment at position j."""
    ctx = _context(w, t, graph)
    indices = frozenset(indices)
    k = ctx.arc(j)
    m_minus, m_plus, n_minus, n_plus = big_counts(w, t, k, j, indices, graph=ctx.graph)
    sign = 1 if j in indices else -1
    return sign * (n_plus - m_plus - n_minus + m_minus)


def valuation_v_gamma(
    w: StringWord,
    t: Triangulation,
    *,
    graph: SnakeGraph | None = None,
) -> dict:
    """Valuation of every submodule index set, from the word alone.

    Walks the containment graph of canonical index sets differing by
    one position, using omega_prime for the step, starting from the
    empty set at 0; every step is checked from both endpoints.
    """
    ctx = _context(w, t, graph)
    d = ctx.d
    submods = [s.indices for s in enumerate_canonical_submodules(w)]
    values = {frozenset(): 0}
    queue = deque([frozenset()])
    canonical = set(submods)
    while queue:
        N = queue.popleft()
        for j in range(1, d + 1):
            if j in N:
                bigger, smaller = N, N - {j}
            else:
                bigger, smaller = N | {j}, N
            if bigger not in canonical or smaller not in canonical:
                continue
            # value step, computed from the smaller side
            step = omega_prime(w, t, j, smaller, graph=ctx.graph)
            back = omega_prime(w, t, j, bigger, graph=ctx.graph)
            if step != -back:
                raise InconsistentValuation(
                    f"asymmetric step at position {j}: {step} vs -({back})"
                )
            other = bigger if N == smaller else smaller
            val = values[N] - (step if N == smaller else back)
            if other in values:
                if values[other] != val:
                    raise InconsistentValuation(
                        f"index step at {j} gives {val}, stored {values[other]}"
                    )
            else:
                values[other] = val
                queue.append(other)
    if set(values) != canonical:
        raise UnreachableSubmodule(
            f"single-index steps reach {len(values)} of {len(canonical)} index sets"
        )
    full = frozenset(range(1, d + 1))
    if values[full] != 0:
        raise InconsistentValuation(
            f"full index set has valuation {values[full]}, want 0"
        )
    return values


def compare_valuations(w: StringWord, t: Triangulation) -> dict:
    """v on matchings vs the word-side valuation, matched through the bijection."""
    g = label_snake(w, t)
    v_match = valuation_v(g)
    v_word = valuation_v_gamma(w, t, graph=g)
    table = {}
    for P, val in v_match.items():
        indices = matching_to_submodule(g, P)
        if v_word[indices] != val:
            raise InconsistentValuation(
                f"valuations disagree on {sorted(indices)}: {val} vs {v_word[indices]}"
            )
        table[indices] = val
    return table
