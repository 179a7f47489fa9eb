"""Laurent expansions of arc variables and the matching-weight formula."""
from __future__ import annotations

import pytest

from qcluster.expansion import (
    classical_specialization,
    crossing_exponent,
    oracle_compare,
    quantum_expansion,
    uniform_d,
    weight_exponent,
    x_of_matching,
)
from qcluster.errors import NotCompatible
from qcluster.seeds import initial_seed
from qcluster.snake import (
    enumerate_matchings,
    label_snake,
    matching_to_submodule,
    minimal_matching,
)
from qcluster.strings import dimension_vector, enumerate_strings, trivial_word
from qcluster.surface import b_matrix
from qcluster.torus import CompatiblePair, QCoefficient, TorusElement, bar

from conftest import make_word


def element(rank, rows):
    return TorusElement(rank, {tuple(vec): QCoefficient(co) for vec, co in rows})


def test_double_crossing_expansion_is_frozen(annulus, seeds, g1_word):
    res = quantum_expansion(g1_word, annulus, seeds["annulus"])
    assert res.element == element(
        4,
        [
            ((0, -1, 1, 1), {0: 1}),
            ((-2, 3, 0, 0), {0: 1}),
            ((-2, 1, 1, 1), {-2: 1, 2: 1}),
            ((-2, -1, 2, 2), {0: 1}),
        ],
    )
    assert res.denominator == (2, 1, 0, 0)


def test_double_crossing_term_table(annulus, seeds, g1_word):
    res = quantum_expansion(g1_word, annulus, seeds["annulus"])
    table = {term.indices: (term.dim, term.valuation, term.exponent) for term in res.terms}
    assert table == {
        (): ((0, 0), 0, (0, -1, 1, 1)),
        (2,): ((0, 1), 0, (-2, -1, 2, 2)),
        (1, 2): ((1, 1), -1, (-2, 1, 1, 1)),
        (2, 3): ((1, 1), 1, (-2, 1, 1, 1)),
        (1, 2, 3): ((2, 1), 0, (-2, 3, 0, 0)),
    }


def test_pentagon_word_expansion_is_frozen(pentagon, seeds, quivers):
    w = make_word(quivers["pentagon"], (1, 2), [("a", False)])
    res = quantum_expansion(w, pentagon, seeds["pentagon"])
    assert res.element == element(
        7,
        [
            ((0, -1, 1, 0, 0, 1, 0), {0: 1}),
            ((-1, 0, 0, 1, 0, 0, 1), {0: 1}),
            ((-1, -1, 1, 0, 1, 0, 1), {0: 1}),
        ],
    )


def test_flip_variables_of_the_pentagon(pentagon, seeds):
    res1 = quantum_expansion(trivial_word(1), pentagon, seeds["pentagon"])
    assert res1.element == element(
        7, [((-1, 1, 0, 1, 0, 0, 0), {0: 1}), ((-1, 0, 1, 0, 1, 0, 0), {0: 1})]
    )
    res2 = quantum_expansion(trivial_word(2), pentagon, seeds["pentagon"])
    assert res2.element == element(
        7, [((1, -1, 0, 0, 0, 1, 0), {0: 1}), ((0, -1, 0, 0, 1, 0, 1), {0: 1})]
    )


def test_square_expansion_is_a_binomial(square, seeds):
    res = quantum_expansion(trivial_word(1), square, seeds["square"])
    assert res.element == element(
        5, [((-1, 0, 1, 0, 1), {0: 1}), ((-1, 1, 0, 1, 0), {0: 1})]
    )


def test_expansions_are_bar_invariant_with_nonnegative_coefficients(
    quivers, surfaces, seeds
):
    for name in ("annulus", "pentagon", "hexagon"):
        for w in enumerate_strings(quivers[name], 5):
            el = quantum_expansion(w, surfaces[name], seeds[name]).element
            assert bar(el) == el
            assert el.coefficients_nonnegative()


def test_classical_specialization_counts_matchings(annulus, seeds, g1_word):
    res = quantum_expansion(g1_word, annulus, seeds["annulus"])
    assert classical_specialization(res.element, n=2) == {
        (0, -1): 1,
        (-2, 3): 1,
        (-2, 1): 2,
        (-2, -1): 1,
    }
    assert sum(classical_specialization(res.element).values()) == 5


def test_weight_and_crossing_exponents(annulus, g1_word):
    g = label_snake(g1_word, annulus)
    assert crossing_exponent(g1_word, annulus) == (2, 1, 0, 0)
    assert weight_exponent(g, minimal_matching(g)) == (2, 0, 1, 1)
    assert x_of_matching(g, minimal_matching(g)) == (0, -1, 1, 1)


def test_matching_exponents_factor_through_the_dimension_vector(
    quivers, surfaces
):
    for name in ("annulus", "pentagon", "hexagon", "square"):
        t = surfaces[name]
        b = b_matrix(t)
        for w in enumerate_strings(quivers[name], 5):
            g = label_snake(w, t)
            base = x_of_matching(g, minimal_matching(g))
            for P in enumerate_matchings(g):
                dim = dimension_vector(w, matching_to_submodule(g, P))
                shift = tuple(
                    sum(b[i][j] * dim[j] for j in range(len(dim)))
                    for i in range(len(base))
                )
                assert x_of_matching(g, P) == tuple(
                    base[i] + shift[i] for i in range(len(base))
                )


def test_oracle_compare_matches_the_double_mutation(annulus, seeds, g1_word):
    report = oracle_compare(g1_word, annulus, seeds["annulus"], [1, 2])
    assert report.matches
    assert report.expansion == report.mutated


def test_oracle_compare_flags_the_wrong_sequence(annulus, seeds, g1_word):
    report = oracle_compare(g1_word, annulus, seeds["annulus"], [2, 1])
    assert not report.matches
    assert "differs" in report.message


def test_pentagon_word_matches_both_mutation_orders(pentagon, seeds, quivers):
    w = make_word(quivers["pentagon"], (1, 2), [("a", False)])
    assert oracle_compare(w, pentagon, seeds["pentagon"], [1, 2]).matches
    assert oracle_compare(w, pentagon, seeds["pentagon"], [2, 1]).matches


def test_uniform_d_reads_the_diagonal(seeds):
    assert uniform_d(seeds["annulus"]) == 2
    assert uniform_d(seeds["pentagon"]) == 1


def test_uniform_d_rejects_mixed_diagonals():
    pair = CompatiblePair(((0, 1), (-2, 0)), ((0, 1), (-1, 0)), (2, 1))
    with pytest.raises(NotCompatible):
        uniform_d(initial_seed(pair))
