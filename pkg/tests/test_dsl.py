"""Script language: tokenizer, parser, canonical rendering, expansion."""

from __future__ import annotations

import random

import pytest

from torsionlab.dsl import expand_element, expand_ideal, expand_ring, parse
from torsionlab.errors import ParseError, PatternError
from torsionlab.harness import random_instance
from torsionlab.ideals import format_ideal
from torsionlab.ring import format_element

GOLDEN = """\
# two-variable demo
ring R = vars X[0..4] rules { X[i]^2 -> 0 for i in 0..3; X[4]^3 -> 2*X[0] }
ideal a = < X[i] for i in 0..4 >
ideal b = < X[0], X[1]*X[j] for j in 2..4, X[2]*X[3]*X[4] >
ideal c = < X[i]*X[j] for i in 0..4, j in 0..4 if i < j >
ideal d = < 1/2*X[0]^2 + -3*X[1] >
query gamma(a; b)
query membership(X[0]*X[1]; b) degree 5
check fairness(a; b) degree 4
family nil40A levels 4..8 window 3
run example nil40A
"""


def test_golden_script_round_trips_to_fixpoint():
    script = parse(GOLDEN)
    text = script.render()
    again = parse(text)
    assert again == script
    assert again.render() == text


def test_statement_kinds_and_counts():
    script = parse(GOLDEN)
    kinds = [type(s).__name__ for s in script.statements]
    assert kinds == [
        "RingStatement", "IdealStatement", "IdealStatement", "IdealStatement",
        "IdealStatement", "QueryStatement", "QueryStatement", "CheckStatement",
        "FamilyStatement", "RunExampleStatement"]


def test_comprehension_comma_lookahead():
    script = parse("ring R = vars X[0..4]\n"
                   "ideal b = < X[0], X[1]*X[j] for j in 2..4, X[2] >\n")
    ring = expand_ring(script.statements[0])
    b = expand_ideal(script.statements[1], ring)
    # X1*X2 is a multiple of the standalone generator X2 and reduces away
    assert format_ideal(b) == "ideal(X0, X2, X1*X3, X1*X4)"


def test_shared_range_multi_name_binding():
    script = parse("ring R = vars X[0..2]\nideal b = < X[i]*X[j] for i, j in 0..2 >\n")
    ring = expand_ring(script.statements[0])
    b = expand_ideal(script.statements[1], ring)
    # nine products, reduced to the six distinct monomials
    assert len(b.generators) == 6


def test_guard_comparisons_inside_ideal_brackets():
    script = parse("ring R = vars X[0..3]\n"
                   "ideal b = < X[i]*X[j] for i in 0..3, j in 0..3 if i < j and j <= 2 >\n")
    ring = expand_ring(script.statements[0])
    b = expand_ideal(script.statements[1], ring)
    assert format_ideal(b) == "ideal(X0*X1, X0*X2, X1*X2)"


def test_affine_exponent_and_fraction_coefficients():
    script = parse("ring R = vars X[0..3] rules { X[i]^(i + 2) -> 0 for i in 0..3 }\n"
                   "ideal d = < 1/2*X[0]^2 + -3*X[1] >\n")
    ring = expand_ring(script.statements[0])
    assert len(ring.rules) == 4
    assert ring.rules[0].lhs.degree == 2
    d = expand_ideal(script.statements[1], ring)
    # single generator, normalized to a monic leading coefficient
    assert len(d.generators) == 1


def test_zero_coefficient_rhs_means_zero():
    script = parse("ring R = vars X[0..1] rules { X[0]^2 -> 0*X[1] }\n")
    ring = expand_ring(script.statements[0])
    assert ring.rules[0].rhs is None


def test_duplicate_expanded_rules_collapse():
    script = parse("ring R = vars X[0..1] rules { X[0]^2 -> 0; X[i]^2 -> 0 for i in 0..1 }\n")
    ring = expand_ring(script.statements[0])
    assert len(ring.rules) == 2


def test_cancelling_terms_drop_generator():
    script = parse("ring R = vars X[0..1]\nideal z = < X[0] + -1*X[0] >\n")
    ring = expand_ring(script.statements[0])
    z = expand_ideal(script.statements[1], ring)
    assert z.is_zero


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse("ring R = vars X[1..3]\n")
    assert exc.value.line == 1 and exc.value.column == 17

    with pytest.raises(ParseError) as exc:
        parse("ring R = vars X[0..2] rules { X[0] }\n")
    assert "->" in exc.value.expected

    with pytest.raises(ParseError):
        parse("bogus statement\n")

    with pytest.raises(ParseError):
        parse("ring R = vars X[0..2]\nideal a = < X[0]\n")


def test_query_kind_is_validated():
    with pytest.raises(ParseError):
        parse("ring R = vars X[0..1]\nquery torsion(a; b)\n")


def test_pattern_errors_on_expansion():
    script = parse("ring R = vars X[0..2]\nideal a = < X[5] >\n")
    ring = expand_ring(script.statements[0])
    with pytest.raises(PatternError):
        expand_ideal(script.statements[1], ring)

    script = parse("ring R = vars X[0..2] rules { X[0]^2 -> X[j] }\n")
    with pytest.raises(PatternError):
        expand_ring(script.statements[0])

    script = parse("ring R = vars X[0..2]\n"
                   "ideal a = < X[i] for i in 0..2, i in 0..2 >\n")
    ring = expand_ring(script.statements[0])
    with pytest.raises(PatternError):
        expand_ideal(script.statements[1], ring)


def test_element_template_expansion_respects_signs():
    script = parse("ring R = vars X[0..1]\nideal e = < 2*X[0] + -1*X[1] + 1 >\n")
    ring = expand_ring(script.statements[0])
    gen = expand_ideal(script.statements[1], ring).generators[0]
    assert format_element(gen) == "1 + 2*X0 + -1*X1"


def test_harness_scripts_parse_and_round_trip():
    rng = random.Random(71)
    for i in range(15):
        instance = random_instance(i, rng)
        script = parse(instance.script)
        text = script.render()
        assert parse(text) == script
        ring = expand_ring(script.statements[0])
        assert ring.num_vars == instance.ring.num_vars
        assert len(ring.rules) == len(instance.ring.rules)
        b = expand_ideal(script.statements[2], ring)
        assert sorted(format_element(g) for g in b.generators) == \
            sorted(format_element(g) for g in instance.relations.generators)


def test_empty_and_zero_ideal_forms():
    script = parse("ring R = vars X[0..1]\nideal z = < 0 >\n")
    ring = expand_ring(script.statements[0])
    assert expand_ideal(script.statements[1], ring).is_zero
    assert script.statements[1].render() == "ideal z = < 0 >"
