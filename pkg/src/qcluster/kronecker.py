"""The two-arc annulus families and their twist-weight recursions.

Over the annulus the arcs wrapping s times produce snake graphs with
2s+1 tiles (family "G") and 2s tiles (family "H"), the tiles crossing
arcs 1 and 2 alternately.  Each tile carries an integer alpha-weight
depending only on its offset from the middle; summing the weights over
the enclosed tiles of a matching reproduces the valuation distribution
dimension by dimension, which the four recursions below prove by
induction.  The series r_s built from alpha therefore equals the snake
expansion of the (2s+1)-tile string.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BijectionViolation, UnmatchedCase
from .expansion import quantum_expansion, uniform_d, x_of_matching
from .seeds import QuantumSeed
from .snake import SnakeGraph, enumerate_matchings, label_snake, matching_to_submodule
from .strings import Letter, StringWord
from .surface import Triangulation, build_quiver
from .torus import TorusElement
from .valuation import valuation_v

__all__ = [
    "WeightedSnake",
    "family_word",
    "build_weighted",
    "alpha_of_set",
    "alpha_table",
    "r_s",
    "equality_check",
    "recursion_checks",
]


@dataclass(frozen=True)
class WeightedSnake:
    family: str  # "G" | "H"
    s: int
    word: StringWord
    graph: SnakeGraph
    alphas: tuple  # per-tile weight, 1-based via index j-1
    weights: tuple  # 1 or 2 per tile: which arc is the diagonal


def family_word(t: Triangulation, s: int, family: str = "G") -> StringWord:
    """The alternating (1,2)-word with 2s+1 (G) or 2s (H) vertices."""
    if family not in ("G", "H"):
        raise UnmatchedCase(f"unknown family {family!r}")
    if s < 0 or (family == "H" and s < 1):
        raise UnmatchedCase(f"family {family} needs s >= {1 if family == 'H' else 0}")
    quiver = build_quiver(t)
    arrows_12 = quiver.arrows_between(1, 2)
    if len(arrows_12) != 2:
        raise UnmatchedCase("surface does not have the double arrow 1 -> 2")
    first, second = arrows_12
    d = 2 * s + 1 if family == "G" else 2 * s
    vertices = tuple(1 if j % 2 == 1 else 2 for j in range(1, d + 1))
    letters = []
    for p in range(1, d):
        if p % 2 == 1:
            letters.append(Letter(first, True))
        else:
            letters.append(Letter(second, False))
    return StringWord(vertices, tuple(letters))


def build_weighted(t: Triangulation, s: int, family: str = "G") -> WeightedSnake:
    word = family_word(t, s, family)
    graph = label_snake(word, t)
    weights = tuple(word.vertices)
    alphas = []
    for j in range(1, word.d + 1):
        offset = j - s - 1
        if family == "G":
            alphas.append(offset if weights[j - 1] == 1 else -offset)
        else:
            alphas.append(offset + 1 if weights[j - 1] == 1 else -offset)
    return WeightedSnake(family, s, word, graph, tuple(alphas), weights)


def alpha_of_set(ws: WeightedSnake, indices) -> int:
    return sum(ws.alphas[j - 1] for j in indices)


def alpha_table(ws: WeightedSnake) -> dict:
    """Index set -> alpha, over all matchings of the snake."""
    out = {}
    for P in enumerate_matchings(ws.graph):
        indices = matching_to_submodule(ws.graph, P)
        out[indices] = alpha_of_set(ws, indices)
    return out


def r_s(t: Triangulation, s: int, seed: QuantumSeed, family: str = "G") -> TorusElement:
    """Matching sum with alpha-weights in place of valuations."""
    ws = build_weighted(t, s, family)
    d = uniform_d(seed)
    total = TorusElement.zero(t.m)
    for P in enumerate_matchings(ws.graph):
        indices = matching_to_submodule(ws.graph, P)
        total = total + TorusElement.monomial(
            x_of_matching(ws.graph, P), q_twice=d * alpha_of_set(ws, indices)
        )
    return total


def _dim_counts(ws: WeightedSnake, indices) -> tuple:
    ones = sum(1 for j in indices if ws.weights[j - 1] == 1)
    twos = sum(1 for j in indices if ws.weights[j - 1] == 2)
    return ones, twos


def _value_table(ws: WeightedSnake) -> dict:
    vals = valuation_v(ws.graph)
    return {
        matching_to_submodule(ws.graph, P): v for P, v in vals.items()
    }


def equality_check(t: Triangulation, s: int, family: str = "G") -> bool:
    """Per-dimension multisets of alpha and of the valuation must agree."""
    ws = build_weighted(t, s, family)
    alphas = alpha_table(ws)
    values = _value_table(ws)
    if set(alphas) != set(values):
        raise BijectionViolation("alpha and valuation tables key differently")
    by_dim_alpha: dict = {}
    by_dim_value: dict = {}
    for indices, a in alphas.items():
        dim = _dim_counts(ws, indices)
        by_dim_alpha.setdefault(dim, []).append(a)
        by_dim_value.setdefault(dim, []).append(values[indices])
    return all(
        sorted(by_dim_alpha[dim]) == sorted(by_dim_value[dim])
        for dim in by_dim_alpha
    )


def recursion_checks(t: Triangulation, s: int) -> list:
    """Check the four twist-set recursions at level s; return failures."""
    if s < 1:
        raise UnmatchedCase("recursions start at s = 1")
    failures = []
    g_s = build_weighted(t, s, "G")
    h_s = build_weighted(t, s, "H")
    g_prev = build_weighted(t, s - 1, "G")
    h_prev = build_weighted(t, s - 1, "H") if s >= 2 else None

    a_gs, v_gs = alpha_table(g_s), _value_table(g_s)
    a_hs, v_hs = alpha_table(h_s), _value_table(h_s)
    a_gp, v_gp = alpha_table(g_prev), _value_table(g_prev)
    if h_prev is not None:
        a_hp, v_hp = alpha_table(h_prev), _value_table(h_prev)

    last_g = 2 * s + 1
    for indices in a_gs:
        u, w_count = _dim_counts(g_s, indices)
        if last_g not in indices:
            # same set inside the one-tile-shorter family
            if indices not in a_hs:
                failures.append(f"G{s} set {sorted(indices)} missing from H{s}")
                continue
            if a_gs[indices] != a_hs[indices] - u:
                failures.append(f"alpha recursion (drop last) fails at {sorted(indices)}")
            if v_gs[indices] != v_hs[indices] - u:
                failures.append(f"valuation recursion (drop last) fails at {sorted(indices)}")
        else:
            if last_g - 1 not in indices:
                failures.append(
                    f"G{s} set {sorted(indices)} contains {last_g} without {last_g - 1}"
                )
                continue
            smaller = frozenset(indices - {last_g, last_g - 1})
            if smaller not in a_gp:
                failures.append(f"G{s} set {sorted(indices)} does not restrict to G{s - 1}")
                continue
            expected = a_gp[smaller] - u + w_count + 1
            if a_gs[indices] != expected:
                failures.append(f"alpha recursion (keep last) fails at {sorted(indices)}")
            if v_gs[indices] != v_gp[smaller] - u + w_count + 1:
                failures.append(f"valuation recursion (keep last) fails at {sorted(indices)}")

    last_h = 2 * s
    for indices in a_hs:
        u, w_count = _dim_counts(h_s, indices)
        if last_h in indices:
            smaller = frozenset(indices - {last_h})
            if smaller not in a_gp:
                failures.append(f"H{s} set {sorted(indices)} does not restrict to G{s - 1}")
                continue
            if a_hs[indices] != a_gp[smaller] - s + w_count:
                failures.append(f"alpha recursion (H keep last) fails at {sorted(indices)}")
            if v_hs[indices] != v_gp[smaller] + s - w_count:
                failures.append(f"valuation recursion (H keep last) fails at {sorted(indices)}")
        else:
            if last_h - 1 in indices:
                failures.append(
                    f"H{s} set {sorted(indices)} contains {last_h - 1} without {last_h}"
                )
                continue
            if h_prev is None:
                if indices:
                    failures.append(f"H1 set {sorted(indices)} should be empty without tile 2")
                continue
            if indices not in a_hp:
                failures.append(f"H{s} set {sorted(indices)} does not restrict to H{s - 1}")
                continue
            if a_hs[indices] != a_hp[indices] - u + w_count:
                failures.append(f"alpha recursion (H drop last) fails at {sorted(indices)}")
            if v_hs[indices] != v_hp[indices] + u - w_count:
                failures.append(f"valuation recursion (H drop last) fails at {sorted(indices)}")

    anchor_g = frozenset({last_g - 1, last_g})
    if anchor_g in v_gs and v_gs[anchor_g] != 1:
        failures.append(f"anchor valuation of {sorted(anchor_g)} in G{s} is {v_gs[anchor_g]}, want 1")
    if anchor_g not in v_gs:
        failures.append(f"anchor set {sorted(anchor_g)} missing from G{s}")
    anchor_h = frozenset({last_h})
    if anchor_h in v_hs and v_hs[anchor_h] != s - 1:
        failures.append(f"anchor valuation of {sorted(anchor_h)} in H{s} is {v_hs[anchor_h]}, want {s - 1}")
    if anchor_h not in v_hs:
        failures.append(f"anchor set {sorted(anchor_h)} missing from H{s}")
    return failures
