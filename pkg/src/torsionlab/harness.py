"""Seeded random-instance harness asserting the proposition suite.

Every generated ring is an artinian monomial truncation (each variable is
nilpotent by a rule), so all witness scans can be certified complete, every
saturation stabilizes, and the noetherian forms of the propositions apply.
A violation therefore indicates an implementation bug, and each one carries
a script reproducing its instance.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .ideals import IdealHandle, ideal_colon_ideal, ideal_sum
from .ring import Monomial, RewriteRule, RingPresentation
from .spectrum import (
    assassins_cyclic,
    assassins_subquotient,
    difference_variety,
    in_variety,
    intersect_variety,
    weak_assassins_cyclic,
    weak_assassins_subquotient,
)
from .torsion import (
    bounded_torsion_exponent,
    fairness_from_parts,
    gamma_large_cyclic,
    gamma_small_cyclic,
)

DEFAULT_INSTANCES = 500
DEFAULT_SEED = 42


@dataclass(frozen=True)
class HarnessInstance:
    index: int
    ring: RingPresentation
    acting: IdealHandle
    relations: IdealHandle
    extension: IdealHandle  # contains relations
    between: IdealHandle  # between acting and its radical
    witness_bound: int
    script: str


@dataclass(frozen=True)
class HarnessViolation:
    instance_index: int
    proposition: str
    detail: str
    script: str


@dataclass(frozen=True)
class HarnessReport:
    seed: int
    instances: int
    checks_run: int
    violations: tuple
    elapsed_seconds: float

    @property
    def ok(self):
        return not self.violations


def script_monomial(m):
    if m.is_one:
        return "1"
    parts = []
    for v, e in m.pairs:
        parts.append("X[%d]" % v if e == 1 else "X[%d]^%d" % (v, e))
    return "*".join(parts)


def script_element(e):
    if e.is_zero:
        return "0"
    parts = []
    for m in e.monomials():
        c = e.terms[m]
        if m.is_one:
            parts.append(str(c))
        elif c == 1:
            parts.append(script_monomial(m))
        else:
            parts.append("%s*%s" % (c, script_monomial(m)))
    return " + ".join(parts)


def script_ring(ring, name="R"):
    rules = []
    for rule in ring.rules:
        if rule.rhs is None:
            rhs = "0"
        else:
            coeff, mono = rule.rhs
            body = script_monomial(mono)
            rhs = body if coeff == 1 else "%s*%s" % (coeff, body)
        rules.append("%s -> %s" % (script_monomial(rule.lhs), rhs))
    head = "ring %s = vars X[0..%d]" % (name, ring.num_vars - 1)
    if not rules:
        return head
    return "%s rules { %s }" % (head, "; ".join(rules))


def script_ideal(ideal, name):
    if ideal.is_zero:
        return "ideal %s = < 0 >" % name
    return "ideal %s = < %s >" % (
        name, ", ".join(script_element(g) for g in ideal.generators))


def instance_script(instance):
    lines = [
        script_ring(instance.ring),
        script_ideal(instance.acting, "a"),
        script_ideal(instance.relations, "b"),
        script_ideal(instance.extension, "c"),
        script_ideal(instance.between, "a2"),
        "check fairness(a; b) degree %d" % instance.witness_bound,
    ]
    return "\n".join(lines) + "\n"


def _random_monomial(rng, exponents, max_degree, min_degree):
    """Monomial with each exponent below the variable's truncation
    exponent, so it survives the power rules."""
    n = len(exponents)
    for _ in range(64):
        degree = rng.randint(min_degree, max_degree)
        acc = {}
        total = 0
        stuck = False
        while total < degree and not stuck:
            options = [v for v in range(n) if acc.get(v, 0) < exponents[v] - 1]
            if not options:
                stuck = True
                break
            v = rng.choice(options)
            acc[v] = acc.get(v, 0) + 1
            total += 1
        if total >= min_degree:
            return Monomial(acc.items())
    return Monomial.variable(rng.randrange(n))


def random_instance(index, rng):
    n = rng.randint(2, 4)
    exponents = [rng.randint(2, 4) for _ in range(n)]
    rules = [RewriteRule(Monomial.variable(v, exponents[v]))
             for v in range(n)]
    seen = {rule.lhs for rule in rules}
    for _ in range(rng.randint(0, 2)):
        m = _random_monomial(rng, exponents, max_degree=4, min_degree=2)
        if m.degree >= 2 and m not in seen:
            rules.append(RewriteRule(m))
            seen.add(m)
    ring = RingPresentation(n, rules)

    def ideal_of(count, max_degree):
        return IdealHandle.from_monomials(ring, [
            _random_monomial(rng, exponents, max_degree, 1)
            for _ in range(count)])

    acting = ideal_of(rng.randint(1, 3), 3)
    if acting.is_zero:
        acting = IdealHandle.from_monomials(
            ring, [Monomial.variable(rng.randrange(n))])
    relations = ideal_of(rng.randint(1, 3), 4)
    extension = ideal_sum(relations, ideal_of(rng.randint(1, 2), 4))
    extras = [g.squarefree() for g in acting.monomial_generators()
              if rng.random() < 0.5]
    between = ideal_sum(
        acting, IdealHandle.from_monomials(ring, extras))
    witness_bound = ring.finite_basis_max_degree() + 1
    instance = HarnessInstance(
        index, ring, acting, relations, extension, between,
        witness_bound, "")
    return HarnessInstance(
        index, ring, acting, relations, extension, between,
        witness_bound, instance_script(instance))


class _Checker:
    def __init__(self, instance):
        self.instance = instance
        self.violations = []
        self.count = 0

    def check(self, proposition, condition, detail=""):
        self.count += 1
        if not condition:
            self.violations.append(HarnessViolation(
                self.instance.index, proposition, detail,
                self.instance.script))


def _centredness_witnesses(acting, relations, base_assf, iteration_cap=64):
    """(centred witness, half-centred witness) for one acting ideal."""
    small = gamma_small_cyclic(acting, relations, iteration_cap)
    meet = intersect_variety(base_assf.primes, acting)
    centred = (not small.is_zero_submodule) or not meet
    inside = all(in_variety(p, acting) for p in base_assf.primes)
    half = (not inside) or small.is_whole_module
    return centred and half


def check_instance(instance):
    """Run every per-instance proposition; returns (checks, violations,
    witness flags for the corpus-level closure assertion)."""
    a = instance.acting
    b = instance.relations
    c = instance.extension
    a2 = instance.between
    bound = instance.witness_bound
    ck = _Checker(instance)

    small = gamma_small_cyclic(a, b)
    large = gamma_large_cyclic(a, b)
    g = small.preimage
    h = large.preimage

    base_ass = assassins_cyclic(b, bound)
    base_assf = weak_assassins_cyclic(b, bound)
    sub_s_ass = assassins_subquotient(g, b, bound)
    sub_s_assf = weak_assassins_subquotient(g, b, bound)
    quo_s_ass = assassins_cyclic(g, bound)
    quo_s_assf = weak_assassins_cyclic(g, bound)
    sub_l_ass = assassins_subquotient(h, b, bound)
    sub_l_assf = weak_assassins_subquotient(h, b, bound)
    quo_l_ass = assassins_cyclic(h, bound)
    quo_l_assf = weak_assassins_cyclic(h, bound)

    all_reports = [base_ass, base_assf, sub_s_ass, sub_s_assf, quo_s_ass,
                   quo_s_assf, sub_l_ass, sub_l_assf, quo_l_ass, quo_l_assf]
    ck.check("scan-completeness",
             small.stabilized and large.stabilized
             and all(r.complete for r in all_reports),
             "witness bound %d" % bound)

    ck.check("subfunctor-chain",
             all(g.contains_monomial(m) for m in b.monomial_generators())
             and all(h.contains_monomial(m) for m in g.monomial_generators()))

    meet_ass = frozenset(intersect_variety(base_ass.primes, a))
    meet_assf = frozenset(intersect_variety(base_assf.primes, a))
    diff_ass = frozenset(difference_variety(base_ass.primes, a))
    diff_assf = frozenset(difference_variety(base_assf.primes, a))

    ck.check("small-sub-ass-eq", sub_s_ass.prime_set == meet_ass)
    ck.check("small-sub-assf-sub", sub_s_assf.prime_set <= meet_assf)
    ck.check("small-quot-ass-sup", quo_s_ass.prime_set >= diff_ass)
    ck.check("small-quot-assf-sup", quo_s_assf.prime_set >= diff_assf)

    ck.check("large-sub-ass-eq",
             sub_l_ass.prime_set == meet_ass
             and sub_l_ass.prime_set == sub_s_ass.prime_set)
    ck.check("large-sub-assf-sub", sub_l_assf.prime_set <= meet_assf)
    ck.check("large-quot-ass-sup", quo_l_ass.prime_set >= diff_ass)
    ck.check("large-quot-assf-sup", quo_l_assf.prime_set >= diff_assf)

    small_zero = small.is_zero_submodule
    large_zero = large.is_zero_submodule
    assf_inside = base_assf.prime_set <= meet_assf
    ck.check("vanishing-chain",
             (bool(meet_assf) or large_zero)
             and ((not large_zero) or small_zero)
             and ((not small_zero) or not meet_ass))
    ck.check("whole-module-chain",
             ((not small.is_whole_module) or assf_inside)
             and (assf_inside == large.is_whole_module))
    ck.check("large-vanishing-iff", large_zero == (not meet_assf))

    ck.check("quot-large-avoids-variety",
             not intersect_variety(quo_l_ass.primes, a))

    report = fairness_from_parts(
        a, b, small, large, base_ass, base_assf,
        sub_s_assf, quo_s_ass, quo_s_assf,
        sub_l_assf, quo_l_ass, quo_l_assf)
    ck.check("fairness-complete", report.complete)
    wf = report.verdict("weakly_fair")
    wq = report.verdict("weakly_quasifair")
    wlf = report.verdict("weakly_large_fair")
    wlq = report.verdict("weakly_large_quasifair")
    ck.check("weak-fair-implies-quasifair", (not wf) or wq)
    ck.check("weak-large-fair-implies-quasifair", (not wlf) or wlq)
    ck.check("weak-quasifair-implies-large", (not wq) or wlq)

    ck.check("noetherian-all-fair",
             report.all_hold and report.centred_witness_ok
             and report.half_centred_witness_ok and report.functors_agree,
             "verdicts %s" % (tuple(cmp.holds for cmp in report.comparisons),))

    small2 = gamma_small_cyclic(a2, b)
    sub2_assf = weak_assassins_subquotient(small2.preimage, b, bound)
    wq2 = sub2_assf.prime_set == frozenset(
        intersect_variety(base_assf.primes, a2))
    ck.check("between-quasifair-implication", (not wq2) or wq)

    ck.check("ass-subset-weak",
             all(r_ass.prime_set <= r_assf.prime_set
                 and r_ass.prime_set == r_assf.prime_set
                 for r_ass, r_assf in [
                     (base_ass, base_assf), (sub_s_ass, sub_s_assf),
                     (quo_s_ass, quo_s_assf), (sub_l_ass, sub_l_assf),
                     (quo_l_ass, quo_l_assf)]))
    ck.check("zero-module-iff-empty-weak",
             b.is_unit == (not base_assf.prime_set))

    c_sub_ass = assassins_subquotient(c, b, bound)
    c_sub_assf = weak_assassins_subquotient(c, b, bound)
    c_quo_ass = assassins_cyclic(c, bound)
    c_quo_assf = weak_assassins_cyclic(c, bound)
    ck.check("exact-sequence-ass",
             c_sub_ass.prime_set <= base_ass.prime_set
             and base_ass.prime_set
             <= c_sub_ass.prime_set | c_quo_ass.prime_set)
    ck.check("exact-sequence-weak",
             c_sub_assf.prime_set <= base_assf.prime_set
             and base_assf.prime_set
             <= c_sub_assf.prime_set | c_quo_assf.prime_set)

    ann_sub = ideal_colon_ideal(b, c)
    ck.check("quotient-avoidance-ass",
             frozenset(difference_variety(c_quo_ass.primes, ann_sub))
             <= base_ass.prime_set)
    ck.check("quotient-avoidance-weak",
             frozenset(difference_variety(c_quo_assf.primes, ann_sub))
             <= base_assf.prime_set)

    cap = bound + 2
    bnd_small = bounded_torsion_exponent(a, g, b, cap)
    if bnd_small is not None:
        if not intersect_variety(quo_s_ass.primes, a):
            ck.check("bounded-small-fair", report.verdict("fair"))
        if not intersect_variety(quo_s_assf.primes, a):
            ck.check("bounded-small-weak-fair",
                     report.verdict("fair") and wf)
    bnd_large = bounded_torsion_exponent(a, h, b, cap)
    if bnd_large is not None:
        ck.check("bounded-large-fair", report.verdict("large_fair"))
        if not intersect_variety(quo_l_assf.primes, a):
            ck.check("bounded-large-weak-fair", wlf)

    small_again = gamma_small_cyclic(a, g)
    large_again = gamma_large_cyclic(a, h)
    ck.check("small-torsion-radical",
             small_again.preimage.equals(g) is True)
    ck.check("large-torsion-radical",
             large_again.preimage.equals(h) is True)

    witness_flags = {
        "acting": report.centred_witness_ok and report.half_centred_witness_ok,
        "between": _centredness_witnesses(a2, b, base_assf),
        "sum": _centredness_witnesses(ideal_sum(a, a2), b, base_assf),
    }
    return ck.count, ck.violations, witness_flags


def proposition_harness(instances=DEFAULT_INSTANCES, seed=DEFAULT_SEED):
    rng = random.Random(seed)
    start = time.perf_counter()
    checks = 0
    violations = []
    flags = []
    for index in range(instances):
        instance = random_instance(index, rng)
        count, bad, witness_flags = check_instance(instance)
        checks += count
        violations.extend(bad)
        flags.append(witness_flags)
    if flags:
        checks += 1
        if (all(f["acting"] for f in flags)
                and all(f["between"] for f in flags)
                and not all(f["sum"] for f in flags)):
            violations.append(HarnessViolation(
                -1, "sum-centredness-closure",
                "acting and between witnesses all ok but a sum witness failed",
                ""))
    elapsed = time.perf_counter() - start
    return HarnessReport(seed, instances, checks, tuple(violations), elapsed)
