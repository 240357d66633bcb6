"""Small and large torsion of cyclic modules, and fairness reports.

For the cyclic module R/b and an ideal a:

* small torsion: elements killed by a power of the whole ideal.  Its
  preimage in R is the saturation of b at a.
* large torsion: elements x with a inside the radical of (b : x).  Its
  preimage is the intersection over generators g of a of the saturation of
  b at the principal ideal (g): each generator must reach b at some
  individual power.

Fairness predicates compare assassins of the torsion submodule and of the
quotient by it against intersections and differences with the variety of a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import (
    IdealHandle,
    ideal_intersection,
    ideal_product,
    ideal_saturation,
)
from .spectrum import (
    assassins_cyclic,
    assassins_subquotient,
    difference_variety,
    intersect_variety,
    weak_assassins_cyclic,
    weak_assassins_subquotient,
)

DEFAULT_ITERATION_CAP = 64

SMALL = "small"
LARGE = "large"


@dataclass(frozen=True)
class TorsionResult:
    """Preimage in R of the torsion submodule of R/relations."""
    kind: str  # SMALL or LARGE
    ideal: IdealHandle  # the acting ideal a
    relations: IdealHandle  # b
    preimage: IdealHandle  # contains b; torsion submodule is preimage/b
    stabilized: bool
    steps: int

    @property
    def is_zero_submodule(self):
        return self.preimage.equals(self.relations) is True

    @property
    def is_whole_module(self):
        return self.preimage.is_unit


def gamma_small_cyclic(acting, relations, iteration_cap=DEFAULT_ITERATION_CAP):
    """Preimage of the small torsion submodule of R/relations."""
    sat = ideal_saturation(relations, acting, iteration_cap)
    return TorsionResult(SMALL, acting, relations, sat.ideal,
                         sat.stabilized, sat.steps)


def gamma_large_cyclic(acting, relations, iteration_cap=DEFAULT_ITERATION_CAP):
    """Preimage of the large torsion submodule of R/relations."""
    acc = IdealHandle.unit(relations.ring)
    stabilized = True
    steps = 0
    for g in acting.generators:
        single = IdealHandle(relations.ring, [g])
        sat = ideal_saturation(relations, single, iteration_cap)
        stabilized = stabilized and sat.stabilized
        steps = max(steps, sat.steps)
        acc = ideal_intersection(acc, sat.ideal)
    return TorsionResult(LARGE, acting, relations, acc, stabilized, steps)


def bounded_torsion_exponent(acting, preimage, relations,
                             iteration_cap=DEFAULT_ITERATION_CAP):
    """Smallest n with acting^n * preimage inside relations, or None.

    When this exists the torsion submodule preimage/relations is killed by a
    single power of the acting ideal.
    """
    current = preimage
    for n in range(iteration_cap + 1):
        if all(relations.contains_monomial(g)
               for g in current.monomial_generators()):
            return n
        current = ideal_product(acting, current)
    return None


VERDICT_NAMES = (
    "fair",
    "weakly_fair",
    "weakly_quasifair",
    "large_fair",
    "weakly_large_fair",
    "weakly_large_quasifair",
)


@dataclass(frozen=True)
class FairnessComparison:
    name: str
    left: tuple  # primes computed from the torsion side, sorted
    right: tuple  # primes from the base module restricted by the variety
    holds: bool
    complete: bool


@dataclass(frozen=True)
class FairnessReport:
    acting: IdealHandle
    relations: IdealHandle
    small: TorsionResult
    large: TorsionResult
    comparisons: tuple  # of FairnessComparison, in VERDICT_NAMES order
    centred_witness_ok: bool
    half_centred_witness_ok: bool
    functors_agree: bool
    complete: bool

    def verdict(self, name):
        for comparison in self.comparisons:
            if comparison.name == name:
                return comparison.holds
        raise KeyError(name)

    @property
    def all_hold(self):
        return all(c.holds for c in self.comparisons)


def _compare(name, left_report, right_primes):
    left = tuple(left_report.primes)
    right = tuple(sorted(right_primes, key=lambda s: (len(s), sorted(s))))
    return FairnessComparison(
        name, left, right, frozenset(left) == frozenset(right),
        left_report.complete)


def fairness_from_parts(acting, relations, small, large, base_ass, base_assf,
                        small_sub_assf, small_quot_ass, small_quot_assf,
                        large_sub_assf, large_quot_ass, large_quot_assf):
    """Assemble a FairnessReport from precomputed torsion results and
    assassin reports (shared with callers that need the parts anyway)."""
    ass_minus = difference_variety(base_ass.primes, acting)
    assf_minus = difference_variety(base_assf.primes, acting)
    assf_meet = intersect_variety(base_assf.primes, acting)

    comparisons = (
        _compare("fair", small_quot_ass, ass_minus),
        _compare("weakly_fair", small_quot_assf, assf_minus),
        _compare("weakly_quasifair", small_sub_assf, assf_meet),
        _compare("large_fair", large_quot_ass, ass_minus),
        _compare("weakly_large_fair", large_quot_assf, assf_minus),
        _compare("weakly_large_quasifair", large_sub_assf, assf_meet),
    )

    centred_ok = (not small.is_zero_submodule) or not assf_meet
    half_centred_ok = (not frozenset(base_assf.primes)
                       <= frozenset(assf_meet)) or small.is_whole_module
    functors_agree = small.preimage.equals(large.preimage) is True

    complete = (small.stabilized and large.stabilized
                and base_ass.complete and base_assf.complete
                and all(c.complete for c in comparisons))

    return FairnessReport(
        acting, relations, small, large, comparisons,
        centred_ok, half_centred_ok, functors_agree, complete)


def fairness_report(acting, relations, witness_bound=None,
                    iteration_cap=DEFAULT_ITERATION_CAP):
    """All six fairness verdicts for the module R/relations at the acting
    ideal, plus centredness witnesses.

    With a None witness bound each assassin scan picks its own default; an
    explicit bound is applied to every scan.  The complete flag reports
    whether every scan was certified complete and both saturations
    stabilized; verdicts from incomplete scans are advisory.
    """
    small = gamma_small_cyclic(acting, relations, iteration_cap)
    large = gamma_large_cyclic(acting, relations, iteration_cap)
    return fairness_from_parts(
        acting, relations, small, large,
        assassins_cyclic(relations, witness_bound),
        weak_assassins_cyclic(relations, witness_bound),
        weak_assassins_subquotient(small.preimage, relations, witness_bound),
        assassins_cyclic(small.preimage, witness_bound),
        weak_assassins_cyclic(small.preimage, witness_bound),
        weak_assassins_subquotient(large.preimage, relations, witness_bound),
        assassins_cyclic(large.preimage, witness_bound),
        weak_assassins_cyclic(large.preimage, witness_bound))


def is_bounded_small_torsion(acting, relations,
                             iteration_cap=DEFAULT_ITERATION_CAP):
    """Smallest n with acting^n killing the whole small torsion submodule
    of R/relations, or None if no such n up to the cap exists."""
    g = gamma_small_cyclic(acting, relations, iteration_cap)
    return bounded_torsion_exponent(acting, g.preimage, relations,
                                    iteration_cap)


def radical_probe(acting, corpus, iteration_cap=DEFAULT_ITERATION_CAP):
    """Is each torsion functor a radical on these modules?

    For every relations ideal b: applying the functor to the quotient by
    its own torsion must give zero.  The large leg must hold on every
    instance; the small leg can fail outside noetherian or idempotent
    settings, so it is reported per instance rather than asserted.
    """
    rows = []
    for relations in corpus:
        small = gamma_small_cyclic(acting, relations, iteration_cap)
        large = gamma_large_cyclic(acting, relations, iteration_cap)
        small_again = gamma_small_cyclic(acting, small.preimage, iteration_cap)
        large_again = gamma_large_cyclic(acting, large.preimage, iteration_cap)
        rows.append({
            "small_radical": small_again.preimage.equals(small.preimage) is True,
            "large_radical": large_again.preimage.equals(large.preimage) is True,
            "stabilized": (small.stabilized and large.stabilized
                           and small_again.stabilized and large_again.stabilized),
        })
    return rows
