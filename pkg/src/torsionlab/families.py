"""Schematic infinite-variable families, truncation, and windowed claims.

Each family describes a ring presentation and named ideals parametrized by
a level N (variables X_0..X_N).  Limit statements about the infinite ring
are replaced by guarded finite claims evaluated per level; a claim bundle
passes when every claim holds at every scheduled level and its value is
stable across the trailing window.

Probe device used throughout: non-vanishing of a^n * f in the limit ring is
certified at a finite level by multiplying f with powers of variables not
occurring in f, which keeps the product in normal form.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass
from itertools import combinations

from .errors import NonConfluent, UnknownTag
from .ideals import (
    IdealHandle,
    ideal_colon,
    ideal_colon_ideal,
    ideal_membership,
    ideal_product,
)
from .ring import (
    Element,
    Monomial,
    RewriteRule,
    RingPresentation,
    check_local_confluence,
)

MAX_LEVEL = 15  # at most 16 variables
CONFLUENCE_BOUND = 8
DEFAULT_LEVELS = tuple(range(4, 11))
DEFAULT_WINDOW = 3
DEFAULT_SEED = 42


@dataclass(frozen=True)
class WindowedClaim:
    name: str
    description: str
    evaluate: object  # callable(ring, ideals, level, rng) -> bool

    def run(self, ring, ideals, level, rng):
        return bool(self.evaluate(ring, ideals, level, rng))


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    description: str
    rule_pattern: str
    ideal_patterns: tuple  # of (name, pattern text)
    build: object  # callable(N) -> (RingPresentation, dict of IdealHandle)
    claims: tuple  # of WindowedClaim


@dataclass(frozen=True)
class ClaimResult:
    name: str
    description: str
    values: tuple  # of (level, bool)
    passed: bool  # every level true
    stable: bool  # last window values identical


@dataclass(frozen=True)
class ExampleReport:
    tag: str
    levels: tuple
    window: int
    seed: int
    claims: tuple  # of ClaimResult
    confluence_ok: bool
    elapsed_seconds: float

    @property
    def all_pass(self):
        return self.confluence_ok and all(
            c.passed and c.stable for c in self.claims)


def instantiate(family, level):
    """Expand the family patterns at this level and certify confluence."""
    if level < 0 or level > MAX_LEVEL:
        raise ValueError("level %d outside 0..%d" % (level, MAX_LEVEL))
    ring, ideals = family.build(level)
    report = check_local_confluence(ring, CONFLUENCE_BOUND)
    if not report.ok:
        raise NonConfluent(
            "family %s at level %d has %d non-joinable critical pairs"
            % (family.tag, level, len(report.failures)))
    return ring, ideals


def _variables_ideal(ring, start=0):
    return IdealHandle.from_monomials(ring, [
        Monomial.variable(v) for v in range(start, ring.num_vars)])


def _monomial_elem(ring, m):
    return Element.from_monomial(ring, m)


def _product_of_vars(indices):
    acc = Monomial.one()
    for v in indices:
        acc = acc.mul(Monomial.variable(v))
    return acc


def _ideal_inside(ideal, target):
    """Every generator of ideal lies in target (exact, monomial mode)."""
    return all(target.contains_monomial(m)
               for m in ideal.monomial_generators())


# ---------------------------------------------------------------- nil40A

def _build_nil40A(level):
    n = level + 1
    ring = RingPresentation(n, [
        RewriteRule(Monomial.variable(v, 2)) for v in range(n)])
    acting = _variables_ideal(ring)
    gens = []
    for i in range(n):
        others = [v for v in range(n) if v != i]
        for combo in combinations(others, i):
            gens.append(Monomial.variable(i).mul(_product_of_vars(combo)))
    relations = IdealHandle.from_monomials(ring, gens)
    return ring, {"a": acting, "b": relations}


def _powers_up_to(acting, count):
    """[acting^0, acting^1, ..., acting^count] built along one chain."""
    chain = [IdealHandle.unit(acting.ring)]
    for _ in range(count):
        chain.append(ideal_product(chain[-1], acting))
    return chain


def _nil40A_probe_whole_ring(ring, ideals, level, rng):
    # a^n * 1 stays nonzero while fresh variables remain: the squarefree
    # product X_1..X_n lies in a^n and is a nonzero normal form.
    powers = _powers_up_to(ideals["a"], max(level - 1, 0))
    for n in range(1, level):
        probe = _product_of_vars(range(1, n + 1))
        if ring.normal_form_monomial(probe).is_zero:
            return False
        if not ideal_membership(
                _monomial_elem(ring, probe), powers[n]).is_yes:
            return False
    return True


def _nil40A_generators_torsion(ring, ideals, level, rng):
    powers = _powers_up_to(ideals["a"], max(level - 2, 0))
    for i in range(0, max(level - 1, 0)):
        prod = ideal_product(
            powers[i],
            IdealHandle.from_monomials(ring, [Monomial.variable(i)]))
        if not _ideal_inside(prod, ideals["b"]):
            return False
    return True


def _nil40A_unit_not_torsion(ring, ideals, level, rng):
    # X_n..X_{2n-1} lies in a^n but escapes b, so a^n * 1 is not inside b.
    powers = _powers_up_to(ideals["a"], (level + 1) // 2)
    ok = True
    for n in range(1, level + 1):
        if 2 * n - 1 > level:
            break
        probe = _product_of_vars(range(n, 2 * n))
        ok = ok and not ring.normal_form_monomial(probe).is_zero
        ok = ok and ideal_membership(
            _monomial_elem(ring, probe), powers[n]).is_yes
        ok = ok and not ideals["b"].contains_monomial(probe)
    return ok


def _nil40A_top_power_nonzero(ring, ideals, level, rng):
    probe = _product_of_vars(range(0, level + 1))
    powers = _powers_up_to(ideals["a"], level + 1)
    return (not ring.normal_form_monomial(probe).is_zero
            and ideal_membership(
                _monomial_elem(ring, probe), powers[level + 1]).is_yes)


# ---------------------------------------------------------------- nil40B

def _build_nil40B(level):
    n = level + 1
    rules = [RewriteRule(Monomial.variable(v, v + 1)) for v in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rules.append(RewriteRule(
                Monomial.variable(i).mul(Monomial.variable(j))))
    ring = RingPresentation(n, rules)
    return ring, {"a": _variables_ideal(ring)}


def _nil40B_generators_torsion(ring, ideals, level, rng):
    # a^i kills X_i: mixed products vanish by the pair rules and the pure
    # power by the X_i^{i+1} rule.
    powers = _powers_up_to(ideals["a"], level)
    for i in range(1, level + 1):
        prod = ideal_product(
            powers[i],
            IdealHandle.from_monomials(ring, [Monomial.variable(i)]))
        if not prod.is_zero:
            return False
    return True


def _nil40B_unit_not_torsion(ring, ideals, level, rng):
    powers = _powers_up_to(ideals["a"], level)
    for n in range(1, level + 1):
        probe = Monomial.variable(n, n)
        if ring.normal_form_monomial(probe).is_zero:
            return False
        if not ideal_membership(
                _monomial_elem(ring, probe), powers[n]).is_yes:
            return False
    return True


# ---------------------------------------------------------------- nil40C

def _build_nil40C(level):
    n = level + 1
    rules = [RewriteRule(Monomial.variable(v, 2)) for v in range(n)]
    for i in range(n):
        for j in range(n):
            if 2 * i < j:
                rules.append(RewriteRule(
                    Monomial.variable(i).mul(Monomial.variable(j))))
    ring = RingPresentation(n, rules)
    return ring, {"a": _variables_ideal(ring)}


def _nil40C_generators_torsion(ring, ideals, level, rng):
    powers = _powers_up_to(ideals["a"], level + 1)
    for i in range(0, level + 1):
        prod = ideal_product(
            powers[i + 1],
            IdealHandle.from_monomials(ring, [Monomial.variable(i)]))
        if not prod.is_zero:
            return False
    return True


def _nil40C_unit_not_torsion(ring, ideals, level, rng):
    powers = _powers_up_to(ideals["a"], (level + 1) // 2)
    for n in range(1, level + 1):
        if 2 * n - 1 > level:
            break
        probe = _product_of_vars(range(n, 2 * n))
        if ring.normal_form_monomial(probe).is_zero:
            return False
        if not ideal_membership(
                _monomial_elem(ring, probe), powers[n]).is_yes:
            return False
    return True


# ---------------------------------------------------------------- nil40D

def _build_nil40D(level):
    n = level + 1
    rules = [RewriteRule(Monomial.variable(v, v + 1)) for v in range(n)]
    ring = RingPresentation(n, rules)
    acting = _variables_ideal(ring)
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(Monomial.variable(i).mul(Monomial.variable(j)))
    relations = IdealHandle.from_monomials(ring, gens)
    return ring, {"a": acting, "b": relations}


def _nil40D_fresh_power_probe(ring, ideals, level, rng):
    # For nonzero f on variables below N, X_N^n * f stays nonzero for
    # n <= N.  Tested on the extremal normal monomial and random elements.
    top = level
    heavy = Monomial(tuple((v, v) for v in range(1, top)))
    samples = [Element.from_monomial(ring, heavy), Element.constant(ring, 1)]
    pool = [m for m in ring.normal_monomials_up_to(3)
            if m.max_var() < top]
    for _ in range(3):
        picks = rng.sample(pool, min(3, len(pool)))
        f = Element.zero(ring)
        for m in picks:
            f = f.add(Element.from_monomial(ring, m, rng.choice([1, -1, 2])))
        if not f.is_zero:
            samples.append(f)
    for n in range(1, top + 1):
        power = Element.from_monomial(ring, Monomial.variable(top, n))
        for f in samples:
            if f.mul(power).is_zero:
                return False
    return True


def _nil40D_generators_torsion(ring, ideals, level, rng):
    # Reduced bases of the acting-ideal powers grow combinatorially here,
    # so the inclusion a^i * X_i <= b is checked on generator products
    # directly, each multiset of generators visited once (nondecreasing
    # index order) with zero products pruned.
    b = ideals["b"]
    gens = sorted(ideals["a"].monomial_generators(), key=lambda g: g.max_var())

    def walk(m, pos, depth):
        if 1 <= depth <= level:
            shifted = ring.normal_form_monomial(
                m.mul(Monomial.variable(depth)))
            if not shifted.is_zero and not b.contains_monomial(
                    shifted.single_term()[0]):
                return False
        if depth == level:
            return True
        for p in range(pos, len(gens)):
            grown = ring.normal_form_monomial(m.mul(gens[p]))
            if grown.is_zero:
                continue
            if not walk(grown.single_term()[0], p, depth + 1):
                return False
        return True

    return walk(Monomial.one(), 0, 0)


def _nil40D_unit_not_torsion(ring, ideals, level, rng):
    if level < 2:
        return True
    for n in range(2, level + 1):
        # X_n^n is a product of n acting generators, hence lies in a^n.
        probe = Monomial.variable(n, n)
        if ring.normal_form_monomial(probe).is_zero:
            return False
        if ideals["b"].contains_monomial(probe):
            return False
    # Directly: 1 is not in (b : a^2).
    squared = ideal_product(ideals["a"], ideals["a"])
    col = ideal_colon_ideal(ideals["b"], squared)
    return not col.contains_monomial(Monomial.one())


# ---------------------------------------------------------------- idem50A

def _build_idem50A(level):
    n = level + 1
    ring = RingPresentation(n, [
        RewriteRule(Monomial.variable(v, 2), (1, Monomial.variable(v)))
        for v in range(n)])
    return ring, {"a": _variables_ideal(ring)}


def _idem50A_generators_idempotent(ring, ideals, level, rng):
    for v in range(ring.num_vars):
        x = Element.from_monomial(ring, Monomial.variable(v))
        if x.mul(x) != x:
            return False
    return True


def _idem50A_low_degree_idempotent(ring, ideals, level, rng):
    for m in ring.normal_monomials_up_to(3):
        e = Element.from_monomial(ring, m)
        if e.mul(e) != e:
            return False
    return True


# ---------------------------------------------------------------- idem50B

def _build_idem50B(level):
    n = level + 1
    rules = [RewriteRule(Monomial.variable(v, 2),
                         (1, Monomial.variable(v + 1)))
             for v in range(n - 1)]
    ring = RingPresentation(n, rules)
    return ring, {"a": _variables_ideal(ring)}


def _idem50B_power_collapse(ring, ideals, level, rng):
    for k in range(0, min(level, 3) + 1):
        got = ring.normal_form_monomial(Monomial.variable(0, 2 ** k))
        want = Element.from_monomial(ring, Monomial.variable(k))
        if got != want:
            return False
    return True


# ---------------------------------------------------------------- idem50C

def _build_idem50C(level):
    n = level + 1
    rules = [RewriteRule(Monomial.variable(v, 2), (1, Monomial.variable(v)))
             for v in range(1, n)]
    ring = RingPresentation(n, rules)
    acting = _variables_ideal(ring, start=1)
    relations = IdealHandle(ring, [
        Element.from_monomial(
            ring, Monomial.variable(0, i).mul(Monomial.variable(i)))
        for i in range(1, n)])
    return ring, {"a": acting, "b": relations}


def _idem50C_split(m):
    """(free-variable exponent, idempotent support) of a normal monomial."""
    e = m.exponent(0)
    s = frozenset(v for v in m.support if v != 0)
    return e, s


def _idem50C_member(m):
    """Exact membership of a normal monomial in the relations ideal:
    X_0^e * X_S lies in it iff S is nonempty and e >= min(S)."""
    e, s = _idem50C_split(m)
    return bool(s) and e >= min(s)


def _idem50C_element_member(f):
    """The relations ideal is spanned by monomials, so an element belongs
    exactly when all its monomials do."""
    return all(_idem50C_member(m) for m in f.monomials())


def _idem50C_membership_cross_check(ring, ideals, level, rng):
    b = ideals["b"]
    for m in ring.normal_monomials_up_to(4):
        engine = ideal_membership(_monomial_elem(ring, m), b)
        if _idem50C_member(m) != engine.is_yes:
            return False
        if engine.is_yes:
            total = Element.zero(ring)
            for k, h in engine.certificate:
                total = total.add(b.generators[k].mul(h))
            if total != _monomial_elem(ring, m):
                return False
    return True


def _idem50C_colon_by_acting_trivial(ring, ideals, level, rng):
    # Windowed form of "(b : a) = 0": any f outside b with bounded
    # free-variable degree p multiplies out of b by the fresh X_{p+1},
    # so no bounded f annihilates a into b.
    b = ideals["b"]
    top = ring.num_vars - 1
    for p in range(0, top):
        fresh = Element.from_monomial(ring, Monomial.variable(p + 1))
        for m in ring.normal_monomials_up_to(3):
            if m.exponent(0) > p or _idem50C_member(m):
                continue
            if _idem50C_element_member(_monomial_elem(ring, m).mul(fresh)):
                return False
    # Random general elements with a fresh multiplier beyond their span.
    for _ in range(5):
        pool = [m for m in ring.normal_monomials_up_to(3)
                if m.max_var() < top and m.exponent(0) < top]
        picks = rng.sample(pool, min(3, len(pool)))
        f = Element.zero(ring)
        for m in picks:
            f = f.add(Element.from_monomial(ring, m, rng.choice([1, -1, 2])))
        if f.is_zero or _idem50C_element_member(f):
            continue
        q = 1 + max(max(m.max_var() for m in f.monomials()), 0,
                    max(m.exponent(0) for m in f.monomials()))
        if q > top:
            continue
        shifted = f.mul(Element.from_monomial(ring, Monomial.variable(q)))
        if _idem50C_element_member(shifted):
            return False
    return True


def _idem50C_colon_by_free_var_in_acting(ring, ideals, level, rng):
    # Every bounded-degree element of (b : X_0) lies in a: monomials there
    # never have empty idempotent support.  Checked twice: by the exact
    # membership rule, and through the engine's bounded colon search.
    b = ideals["b"]
    x0 = Element.from_monomial(ring, Monomial.variable(0))
    for m in ring.normal_monomials_up_to(4):
        if _idem50C_member(m.mul(Monomial.variable(0))):
            _, s = _idem50C_split(m)
            if not s:
                return False
    col = ideal_colon(b, x0, multiplier_degree_bound=3)
    for g in col.generators:
        for m in g.monomials():
            _, s = _idem50C_split(m)
            if not s:
                return False
    return True


def _idem50C_complement_kills(ring, ideals, level, rng):
    one = Element.constant(ring, 1)
    for v in range(1, ring.num_vars):
        x = Element.from_monomial(ring, Monomial.variable(v))
        if not x.mul(one.sub(x)).is_zero:
            return False
    return True


def _idem50C_deep_generator_member(ring, ideals, level, rng):
    if level < 3:
        return True
    probe = Monomial.variable(0, 3).mul(Monomial.variable(3))
    answer = ideal_membership(_monomial_elem(ring, probe), ideals["b"])
    if not answer.is_yes:
        return False
    total = Element.zero(ring)
    for k, h in answer.certificate:
        total = total.add(ideals["b"].generators[k].mul(h))
    return total == _monomial_elem(ring, probe)


def _claim(name, description, evaluate):
    return WindowedClaim(name, description, evaluate)


FAMILIES = {
    "nil40A": FamilySpec(
        "nil40A",
        "square-zero variables; relations collect each variable times the "
        "matching power of the variable ideal",
        "X[i]^2 -> 0 for i in 0..N",
        (("a", "< X[i] for i in 0..N >"),
         ("b", "< X[i]*m for m in monomial basis of a^i, i in 0..N >")),
        _build_nil40A,
        (
            _claim("whole-ring-torsion-vanishes",
                   "squarefree probes keep a^n away from zero below the "
                   "truncation boundary",
                   _nil40A_probe_whole_ring),
            _claim("generators-are-quotient-torsion",
                   "a^i * X_i falls into the relations ideal",
                   _nil40A_generators_torsion),
            _claim("unit-stays-outside-quotient-torsion",
                   "the shifted squarefree probe lies in a^n but not in "
                   "the relations ideal",
                   _nil40A_unit_not_torsion),
            _claim("top-power-nonzero",
                   "the full variable product certifies a^(N+1) != 0",
                   _nil40A_top_power_nonzero),
        )),
    "nil40B": FamilySpec(
        "nil40B",
        "pairwise products vanish and each variable is nilpotent of index "
        "one more than its position",
        "X[i]*X[j] -> 0 for i in 0..N, j in 0..N if i != j; "
        "X[i]^(i+1) -> 0 for i in 0..N",
        (("a", "< X[i] for i in 0..N >"),),
        _build_nil40B,
        (
            _claim("generators-are-torsion",
                   "a^i kills X_i",
                   _nil40B_generators_torsion),
            _claim("unit-stays-outside-torsion",
                   "X_n^n lies in a^n and is nonzero",
                   _nil40B_unit_not_torsion),
        )),
    "nil40C": FamilySpec(
        "nil40C",
        "square-zero variables with far-apart products vanishing",
        "X[i]^2 -> 0 for i in 0..N; "
        "X[i]*X[j] -> 0 for i in 0..N, j in 0..N if 2*i < j",
        (("a", "< X[i] for i in 0..N >"),),
        _build_nil40C,
        (
            _claim("generators-are-torsion",
                   "a^(i+1) kills X_i",
                   _nil40C_generators_torsion),
            _claim("unit-stays-outside-torsion",
                   "the window product X_n..X_{2n-1} lies in a^n and is "
                   "nonzero",
                   _nil40C_unit_not_torsion),
        )),
    "nil40D": FamilySpec(
        "nil40D",
        "each variable nilpotent of index one more than its position; "
        "relations are the mixed products",
        "X[i]^(i+1) -> 0 for i in 0..N",
        (("a", "< X[i] for i in 0..N >"),
         ("b", "< X[i]*X[j] for i in 0..N, j in 0..N if i != j >")),
        _build_nil40D,
        (
            _claim("fresh-power-probe",
                   "multiplying by powers of the top variable keeps "
                   "bounded elements nonzero",
                   _nil40D_fresh_power_probe),
            _claim("generators-are-quotient-torsion",
                   "a^i * X_i falls into the relations ideal",
                   _nil40D_generators_torsion),
            _claim("unit-stays-outside-quotient-torsion",
                   "X_n^n lies in a^n but not in the relations ideal, and "
                   "1 is not in (b : a^2)",
                   _nil40D_unit_not_torsion),
        )),
    "idem50A": FamilySpec(
        "idem50A",
        "all variables idempotent",
        "X[i]^2 -> X[i] for i in 0..N",
        (("a", "< X[i] for i in 0..N >"),),
        _build_idem50A,
        (
            _claim("generators-idempotent",
                   "every variable squares to itself",
                   _idem50A_generators_idempotent),
            _claim("low-degree-idempotent",
                   "every normal monomial up to degree 3 is idempotent",
                   _idem50A_low_degree_idempotent),
        )),
    "idem50B": FamilySpec(
        "idem50B",
        "each square rewrites to the next variable",
        "X[i]^2 -> X[i+1] for i in 0..N-1",
        (("a", "< X[i] for i in 0..N >"),),
        _build_idem50B,
        (
            _claim("power-collapse",
                   "X_0^(2^k) normalizes to X_k",
                   _idem50B_power_collapse),
        )),
    "idem50C": FamilySpec(
        "idem50C",
        "one free variable, the rest idempotent; relations pair rising "
        "powers of the free variable with each idempotent",
        "X[i]^2 -> X[i] for i in 1..N",
        (("a", "< X[i] for i in 1..N >"),
         ("b", "< X[0]^i*X[i] for i in 1..N >")),
        _build_idem50C,
        (
            _claim("membership-cross-check",
                   "the exact membership rule for the relations ideal "
                   "matches the engine's certificate search",
                   _idem50C_membership_cross_check),
            _claim("colon-by-acting-trivial",
                   "no bounded element sends the whole acting ideal into "
                   "the relations ideal (fresh-variable probe)",
                   _idem50C_colon_by_acting_trivial),
            _claim("colon-by-free-var-inside-acting",
                   "(b : X_0) stays inside the acting ideal",
                   _idem50C_colon_by_free_var_in_acting),
            _claim("complement-kills",
                   "X_i * (1 - X_i) = 0 for idempotent variables",
                   _idem50C_complement_kills),
            _claim("deep-generator-member",
                   "X_0^3*X_3 belongs to the relations ideal with a "
                   "verifiable certificate",
                   _idem50C_deep_generator_member),
        )),
}


def family_tags():
    return sorted(FAMILIES)


def get_family(tag):
    family = FAMILIES.get(tag)
    if family is None:
        raise UnknownTag("unknown example tag %r; known: %s"
                         % (tag, ", ".join(family_tags())))
    return family


def _claim_rng(seed, tag, name, level):
    token = "%s:%s:%d" % (tag, name, level)
    return random.Random(seed * 1000003 + zlib.crc32(token.encode()))


def replicate_example(tag, levels=DEFAULT_LEVELS, window=DEFAULT_WINDOW,
                      seed=DEFAULT_SEED):
    """Evaluate the family's claim bundle over the level schedule."""
    family = get_family(tag)
    levels = tuple(levels)
    if window < 2:
        raise ValueError("window must be at least 2")
    if list(levels) != sorted(set(levels)):
        raise ValueError("levels must be strictly increasing")
    start = time.perf_counter()
    instantiated = []
    confluence_ok = True
    for level in levels:
        try:
            ring, ideals = instantiate(family, level)
        except NonConfluent:
            confluence_ok = False
            ring, ideals = family.build(level)
        instantiated.append((level, ring, ideals))
    claims = []
    for claim in family.claims:
        values = []
        for level, ring, ideals in instantiated:
            rng = _claim_rng(seed, tag, claim.name, level)
            values.append((level, claim.run(ring, ideals, level, rng)))
        passed = all(v for _, v in values)
        tail = [v for _, v in values[-window:]]
        stable = len(set(tail)) <= 1
        claims.append(ClaimResult(
            claim.name, claim.description, tuple(values), passed, stable))
    elapsed = time.perf_counter() - start
    return ExampleReport(tag, levels, window, seed, tuple(claims),
                         confluence_ok, elapsed)


def stable_query(evaluate, levels, window):
    """Evaluate a per-level query; stable when the trailing window agrees.

    Returns (last value, per-level evidence, stable flag).
    """
    levels = tuple(levels)
    if window < 2:
        raise ValueError("window must be at least 2")
    if list(levels) != sorted(set(levels)):
        raise ValueError("levels must be strictly increasing")
    evidence = [(level, evaluate(level)) for level in levels]
    tail = [v for _, v in evidence[-window:]]
    stable = len(set(map(repr, tail))) <= 1
    return evidence[-1][1], evidence, stable
