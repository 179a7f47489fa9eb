"""Quantum Laurent expansions of arc variables from snake-graph data.

The expansion of the variable attached to a string is assembled twice:

* matching route: one term per perfect matching, with exponent vector
  "edge labels minus crossed arcs" and q-power d * v(P);
* module route: one term per canonical index set, with exponent vector
  x(minimal) + B dim(N) and q-power d * v_gamma(N).

Both routes must produce the identical torus element; the result keeps
the per-term data for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentValuation, NotCompatible
from .seeds import QuantumSeed, mutation_sequence
from .snake import SnakeGraph, enumerate_matchings, label_snake, matching_to_submodule, minimal_matching
from .strings import StringWord, dimension_vector
from .surface import Triangulation
from .torus import TorusElement
from .valuation import valuation_v, valuation_v_gamma

__all__ = [
    "ExpansionTerm",
    "ExpansionResult",
    "crossing_exponent",
    "weight_exponent",
    "x_of_matching",
    "quantum_expansion",
    "classical_specialization",
    "oracle_compare",
]


@dataclass(frozen=True)
class ExpansionTerm:
    indices: tuple  # sorted index set
    dim: tuple  # dimension vector over internal arcs
    valuation: int  # raw power (before scaling by d)
    exponent: tuple  # lattice vector of the torus monomial


@dataclass(frozen=True)
class ExpansionResult:
    word: StringWord
    element: TorusElement
    terms: tuple
    denominator: tuple  # crossing counts per arc


def uniform_d(seed: QuantumSeed) -> int:
    ds = set(seed.pair.d)
    if len(ds) != 1:
        raise NotCompatible(f"expected a uniform diagonal, got {seed.pair.d}")
    return ds.pop()


def crossing_exponent(w: StringWord, t: Triangulation) -> tuple:
    counts = [0] * t.m
    for v in w.vertices:
        counts[v - 1] += 1
    return tuple(counts)


def weight_exponent(g: SnakeGraph, P: frozenset) -> tuple:
    counts = [0] * g.triangulation.m
    for e in P:
        counts[g.edge_label(e) - 1] += 1
    return tuple(counts)


def x_of_matching(g: SnakeGraph, P: frozenset) -> tuple:
    cross = crossing_exponent(g.word, g.triangulation)
    weight = weight_exponent(g, P)
    return tuple(a - b for a, b in zip(weight, cross))


def _b_times_dim(b: tuple, dim: tuple) -> tuple:
    return tuple(sum(b[i][j] * dim[j] for j in range(len(dim))) for i in range(len(b)))


def quantum_expansion(w: StringWord, t: Triangulation, seed: QuantumSeed) -> ExpansionResult:
    """Expansion of the arc variable of w in the seed's initial torus.

    The seed must be the initial seed of this surface (its exchange
    matrix the surface's own); mutated seeds have their own tori and
    are compared through mutation, not through this formula.
    """
    d = uniform_d(seed)
    g = label_snake(w, t)
    v_match = valuation_v(g)
    v_word = valuation_v_gamma(w, t, graph=g)
    base_x = x_of_matching(g, minimal_matching(g))
    b_rows = seed.pair.b_tilde

    by_matching = TorusElement.zero(t.m)
    terms = []
    for P in enumerate_matchings(g):
        xp = x_of_matching(g, P)
        indices = matching_to_submodule(g, P)
        dim = dimension_vector(w, indices, n=t.n)
        xs = tuple(a + c for a, c in zip(base_x, _b_times_dim(b_rows, dim)))
        if xs != xp:
            raise InconsistentValuation(
                f"exponent mismatch on {sorted(indices)}: weights give {xp}, "
                f"dimension vector gives {xs}"
            )
        if v_word[indices] != v_match[P]:
            raise InconsistentValuation(
                f"valuation mismatch on {sorted(indices)}: "
                f"{v_match[P]} vs {v_word[indices]}"
            )
        by_matching = by_matching + TorusElement.monomial(xp, q_twice=d * v_match[P])
        terms.append(
            ExpansionTerm(
                indices=tuple(sorted(indices)),
                dim=dim,
                valuation=v_match[P],
                exponent=xp,
            )
        )
    terms.sort(key=lambda term: (len(term.indices), term.indices))
    return ExpansionResult(
        word=w,
        element=by_matching,
        terms=tuple(terms),
        denominator=crossing_exponent(w, t),
    )


def classical_specialization(element: TorusElement, *, n: int | None = None) -> dict:
    """q = 1 image as an exponent-to-coefficient dictionary.

    With ``n`` given, boundary coordinates (past the first n) are
    specialized to 1, i.e. dropped from the exponent vectors.
    """
    out: dict = {}
    for g, coeff in element.terms.items():
        key = tuple(g[:n]) if n is not None else tuple(g)
        val = out.get(key, 0) + coeff.at_q_one()
        if val:
            out[key] = val
        elif key in out:
            del out[key]
    return out


@dataclass(frozen=True)
class ComparisonReport:
    matches: bool
    expansion: TorusElement
    mutated: TorusElement
    message: str


def oracle_compare(w: StringWord, t: Triangulation, seed: QuantumSeed, sequence) -> ComparisonReport:
    """Compare the snake-graph expansion against iterated mutation.

    ``sequence`` is a list of directions whose final step mutates the
    arc whose new variable should equal the expansion of w.
    """
    sequence = list(sequence)
    if not sequence:
        raise ValueError("need at least one mutation step")
    mutated_seed = mutation_sequence(seed, sequence)
    mutated = mutated_seed.cluster[sequence[-1] - 1]
    expansion = quantum_expansion(w, t, seed).element
    if mutated == expansion:
        return ComparisonReport(True, expansion, mutated, "expansion equals mutated variable")
    return ComparisonReport(
        False,
        expansion,
        mutated,
        f"expansion {expansion} differs from mutated variable {mutated}",
    )
