"""Registry families: instantiation, confluence gating, windowed claims."""

from __future__ import annotations

import pytest

from torsionlab.errors import UnknownTag
from torsionlab.families import (
    ClaimResult,
    DEFAULT_LEVELS,
    ExampleReport,
    MAX_LEVEL,
    family_tags,
    get_family,
    instantiate,
    replicate_example,
    stable_query,
)
from torsionlab.ideals import format_ideal
from torsionlab.ring import Monomial, format_monomial


def test_registry_lists_seven_tags_sorted():
    tags = family_tags()
    assert tags == sorted(tags)
    assert tags == ["idem50A", "idem50B", "idem50C",
                    "nil40A", "nil40B", "nil40C", "nil40D"]


def test_unknown_tag_reports_known_ones():
    with pytest.raises(UnknownTag) as exc:
        get_family("nosuch")
    assert "nil40A" in str(exc.value)


def test_instantiate_rejects_out_of_range_levels():
    family = get_family("idem50A")
    with pytest.raises(ValueError):
        instantiate(family, -1)
    with pytest.raises(ValueError):
        instantiate(family, MAX_LEVEL + 1)


def test_instantiate_certifies_confluence():
    # families acting on the ring itself expose only the acting ideal
    expect_quotient = {"idem50C", "nil40A", "nil40D"}
    for tag in family_tags():
        ring, ideals = instantiate(get_family(tag), 4)
        assert ring.confluence_checked_to >= 8
        assert "a" in ideals
        assert ("b" in ideals) == (tag in expect_quotient)


def test_nil40A_level_four_shape():
    ring, ideals = instantiate(get_family("nil40A"), 4)
    assert ring.num_vars == 5
    gens = sorted(format_monomial(m) for m in ideals["b"].monomial_generators())
    assert gens == ["X0", "X1*X2", "X1*X3", "X1*X4", "X2*X3*X4"]


def test_idem50C_level_two_shape():
    ring, ideals = instantiate(get_family("idem50C"), 2)
    assert ring.num_vars == 3
    assert format_ideal(ideals["b"]) == "ideal(X0*X1, X0^2*X2)"
    assert format_ideal(ideals["a"]) == "ideal(X1, X2)"


def test_nil40B_keeps_the_vanishing_first_variable():
    ring, _ = instantiate(get_family("nil40B"), 3)
    # X_0^1 -> 0 is part of the presentation, so X0 itself is zero
    assert ring.normal_form_monomial(Monomial.variable(0)).is_zero


def test_replicate_validates_schedule():
    with pytest.raises(ValueError):
        replicate_example("nil40A", levels=(4, 5), window=1)
    with pytest.raises(ValueError):
        replicate_example("nil40A", levels=(5, 4, 6))
    with pytest.raises(UnknownTag):
        replicate_example("bogus")


def test_replicate_small_window_passes_and_is_deterministic():
    from torsionlab.reports import example_tree, render
    first = replicate_example("nil40B", levels=(4, 5, 6), window=2, seed=7)
    second = replicate_example("nil40B", levels=(4, 5, 6), window=2, seed=7)
    assert first.all_pass
    assert first.confluence_ok
    # rendered trees omit wall-clock time and must agree byte for byte
    assert render(example_tree(first), "json") == render(example_tree(second), "json")
    for claim in first.claims:
        assert claim.passed and claim.stable
        assert [level for level, _ in claim.values] == [4, 5, 6]


def test_stable_query_semantics():
    value, evidence, stable = stable_query(
        lambda level: level >= 0, levels=(4, 5, 6, 7), window=3)
    assert value is True and stable
    assert [lvl for lvl, _ in evidence] == [4, 5, 6, 7]
    _, _, wobbling = stable_query(
        lambda level: level % 2 == 0, levels=(4, 5, 6, 7), window=3)
    assert not wobbling


def test_all_pass_requires_every_claim_and_confluence():
    good = ClaimResult("c", "d", values=((4, True),), passed=True, stable=True)
    bad = ClaimResult("c", "d", values=((4, False),), passed=False, stable=True)
    base = dict(tag="t", levels=(4,), window=2, seed=1, confluence_ok=True,
                elapsed_seconds=0.0)
    assert ExampleReport(claims=(good,), **base).all_pass
    assert not ExampleReport(claims=(good, bad), **base).all_pass
    assert not ExampleReport(claims=(good,), **{**base, "confluence_ok": False}).all_pass


def test_default_schedule_shape():
    assert DEFAULT_LEVELS == tuple(range(4, 11))


def test_shipped_script_matches_registry_instance():
    from pathlib import Path

    from torsionlab.dsl import expand_ideal, expand_ring, parse

    source = (Path(__file__).resolve().parents[1] / "scripts"
              / "nil40A.tl").read_text(encoding="utf-8")
    script = parse(source)
    ring_stmt, a_stmt, b_stmt = script.statements[:3]
    ring = expand_ring(ring_stmt)
    fam_ring, fam_ideals = instantiate(get_family("nil40A"), 4)
    assert sorted(map(repr, ring.rules)) == sorted(map(repr, fam_ring.rules))
    for stmt, key in ((a_stmt, "a"), (b_stmt, "b")):
        handle = expand_ideal(stmt, ring)
        assert sorted(format_monomial(m) for m in handle.monomial_generators()) \
            == sorted(format_monomial(m)
                      for m in fam_ideals[key].monomial_generators())
