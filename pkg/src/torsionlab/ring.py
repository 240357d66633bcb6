"""Monomial arithmetic, rewrite-system normal forms, and exact element
arithmetic for truncated monomial-rewriting quotient algebras.

A ring presentation is K[X_0..X_N] modulo a finite set of strictly
degree-decreasing monomial rewrite rules (lhs a monomial, rhs zero or a
rational multiple of a smaller monomial).  Coefficients are exact rationals
throughout.  Normal forms are computed with a fixed deterministic strategy
(smallest applicable lhs in graded lex order first), so results are
reproducible even before confluence has been certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import RingMismatch, VariableOutOfRange


class Monomial:
    """Finitely supported exponent vector, stored as sorted (var, exp) pairs.

    The empty vector is the unit monomial 1.  Exponents are kept strictly
    positive; an absent index means exponent zero.
    """

    __slots__ = ("pairs", "_hash")

    def __init__(self, pairs=()):
        cleaned = tuple(sorted((int(v), int(e)) for v, e in pairs if e))
        for v, e in cleaned:
            if v < 0 or e <= 0:
                raise ValueError("bad monomial pair (%d, %d)" % (v, e))
        self.pairs = cleaned
        self._hash = hash(cleaned)

    @classmethod
    def one(cls):
        return cls(())

    @classmethod
    def variable(cls, index, exp=1):
        return cls(((index, exp),))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.pairs == other.pairs

    def __repr__(self):
        return "Monomial(%r)" % (self.pairs,)

    @property
    def is_one(self):
        return not self.pairs

    @property
    def degree(self):
        return sum(e for _, e in self.pairs)

    @property
    def support(self):
        return frozenset(v for v, _ in self.pairs)

    def exponent(self, var):
        for v, e in self.pairs:
            if v == var:
                return e
        return 0

    def max_var(self):
        return self.pairs[-1][0] if self.pairs else -1

    def mul(self, other):
        acc = dict(self.pairs)
        for v, e in other.pairs:
            acc[v] = acc.get(v, 0) + e
        return Monomial(acc.items())

    def pow(self, k):
        if k < 0:
            raise ValueError("negative power")
        return Monomial((v, e * k) for v, e in self.pairs)

    def divides(self, other):
        it = dict(other.pairs)
        return all(it.get(v, 0) >= e for v, e in self.pairs)

    def div(self, other):
        """Exact quotient self / other; other must divide self."""
        acc = dict(self.pairs)
        for v, e in other.pairs:
            have = acc.get(v, 0)
            if have < e:
                raise ValueError("non-exact monomial division")
            acc[v] = have - e
        return Monomial(acc.items())

    def gcd(self, other):
        it = dict(other.pairs)
        return Monomial((v, min(e, it[v])) for v, e in self.pairs if v in it)

    def lcm(self, other):
        acc = dict(self.pairs)
        for v, e in other.pairs:
            acc[v] = max(acc.get(v, 0), e)
        return Monomial(acc.items())

    def squarefree(self):
        return Monomial((v, 1) for v, _ in self.pairs)


def grlex_key(m):
    """Sort key: graded, then lexicographic with earlier variables greater.

    Ascending sort by this key lists 1 first, then X0 before X1, X0^2
    before X0*X1 before X1^2, and lower total degree before higher.
    """
    return (m.degree, tuple((v, -e) for v, e in m.pairs))


def format_monomial(m):
    if m.is_one:
        return "1"
    parts = []
    for v, e in m.pairs:
        parts.append("X%d" % v if e == 1 else "X%d^%d" % (v, e))
    return "*".join(parts)


def format_coefficient(c):
    return str(c)


class RewriteRule:
    """lhs -> 0 or lhs -> coeff * monomial, strictly degree-decreasing."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs=None):
        if lhs.is_one:
            raise ValueError("rule lhs must not be the unit monomial")
        if rhs is not None:
            coeff, mono = rhs
            coeff = Fraction(coeff)
            if coeff == 0:
                raise ValueError("zero rhs coefficient; use rhs=None")
            if mono.degree >= lhs.degree:
                raise ValueError("rewrite rules must strictly decrease degree")
            rhs = (coeff, mono)
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self):
        if self.rhs is None:
            return "RewriteRule(%s -> 0)" % format_monomial(self.lhs)
        c, m = self.rhs
        return "RewriteRule(%s -> %s*%s)" % (
            format_monomial(self.lhs), c, format_monomial(m))

    def __eq__(self, other):
        return (isinstance(other, RewriteRule)
                and self.lhs == other.lhs and self.rhs == other.rhs)

    def __hash__(self):
        return hash((self.lhs, self.rhs))


class RingPresentation:
    """Truncated variable set X_0..X_{num_vars-1} plus rewrite rules.

    Instances are immutable apart from the normal-form cache and the
    confluence_checked_to watermark recorded by check_local_confluence.
    """

    def __init__(self, num_vars, rules=()):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        rules = tuple(rules)
        seen = set()
        for rule in rules:
            if rule.lhs.max_var() >= num_vars:
                raise VariableOutOfRange(
                    "rule lhs %s exceeds variable range" % format_monomial(rule.lhs))
            if rule.rhs is not None and rule.rhs[1].max_var() >= num_vars:
                raise VariableOutOfRange(
                    "rule rhs exceeds variable range")
            if rule.lhs in seen:
                raise ValueError(
                    "duplicate rule lhs %s" % format_monomial(rule.lhs))
            seen.add(rule.lhs)
        self.num_vars = num_vars
        self.rules = tuple(sorted(rules, key=lambda r: grlex_key(r.lhs)))
        self.confluence_checked_to = 0
        self._nf_cache = {}
        self._nf_set_cache = {}

    def __repr__(self):
        return "RingPresentation(num_vars=%d, rules=%d)" % (
            self.num_vars, len(self.rules))

    @property
    def all_rhs_zero(self):
        return all(rule.rhs is None for rule in self.rules)

    def check_variable_range(self, m):
        if m.max_var() >= self.num_vars:
            raise VariableOutOfRange(
                "monomial %s exceeds variable range" % format_monomial(m))

    def _first_applicable(self, m):
        for rule in self.rules:
            if rule.lhs.divides(m):
                return rule
        return None

    def normal_form_monomial(self, m):
        """Normal form of a monomial as an Element (0 or coeff * monomial)."""
        self.check_variable_range(m)
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        path = []
        coeff = Fraction(1)
        cur = m
        result = None
        while True:
            hit = self._nf_cache.get(cur)
            if hit is not None:
                result = hit.scale(coeff)
                break
            rule = self._first_applicable(cur)
            if rule is None:
                result = Element(self, {cur: coeff})
                break
            path.append((cur, coeff))
            if rule.rhs is None:
                result = Element.zero(self)
                break
            rc, rm = rule.rhs
            coeff = coeff * rc
            cur = cur.div(rule.lhs).mul(rm)
        # Cache the normal form of every monomial along the reduction path.
        for mono, c in path:
            self._nf_cache[mono] = result.scale(Fraction(1) / c) if c != 1 else result
        if m not in self._nf_cache:
            self._nf_cache[m] = result
        return self._nf_cache[m]

    def is_normal(self, m):
        return self._first_applicable(m) is None

    def normal_monomials_of_degree(self, d):
        """All normal monomials of total degree d, in grlex order."""
        if d == 0:
            return [Monomial.one()] if self.is_normal(Monomial.one()) else []
        prev = self.normal_monomials_of_degree(d - 1)
        out = []
        for m in prev:
            # Extend only by variables >= the largest used index so every
            # monomial is produced exactly once.
            for v in range(max(m.max_var(), 0), self.num_vars):
                cand = m.mul(Monomial.variable(v))
                if self.is_normal(cand):
                    out.append(cand)
        out.sort(key=grlex_key)
        return out

    def normal_monomials_up_to(self, d):
        out = []
        for k in range(d + 1):
            out.extend(self.normal_monomials_of_degree(k))
        return out

    def finite_basis_max_degree(self, degree_cap=64):
        """Largest degree of a normal monomial, or None if none is found
        below degree_cap (the truncation is then treated as non-artinian).

        Divisors of normal monomials are normal, so the first empty degree
        level certifies that no higher level is populated.
        """
        last = 0
        for d in range(1, degree_cap + 1):
            if not self.normal_monomials_of_degree(d):
                return last
            last = d
        return None


class Element:
    """Normal-form linear combination of monomials with rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def from_monomial(cls, ring, m, coeff=1):
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls.zero(ring)
        return ring.normal_form_monomial(m).scale(coeff)

    @classmethod
    def from_terms(cls, ring, pairs):
        acc = cls.zero(ring)
        for m, c in pairs:
            acc = acc.add(cls.from_monomial(ring, m, c))
        return acc

    @classmethod
    def constant(cls, ring, c):
        return cls.from_monomial(ring, Monomial.one(), c)

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_monomial(self):
        """Single term with coefficient 1."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) == 1

    @property
    def is_single_term(self):
        return len(self.terms) == 1

    def single_term(self):
        ((m, c),) = self.terms.items()
        return m, c

    def monomials(self):
        return sorted(self.terms, key=grlex_key)

    @property
    def degree(self):
        return max((m.degree for m in self.terms), default=0)

    def scale(self, coeff):
        coeff = Fraction(coeff)
        if coeff == 0:
            return Element.zero(self.ring)
        if coeff == 1:
            return self
        return Element(self.ring, {m: c * coeff for m, c in self.terms.items()})

    def _check_ring(self, other):
        if self.ring is not other.ring:
            raise RingMismatch("elements live in different rings")

    def add(self, other):
        self._check_ring(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Element(self.ring, acc)

    def sub(self, other):
        return self.add(other.scale(-1))

    def mul(self, other):
        self._check_ring(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                nf = self.ring.normal_form_monomial(m1.mul(m2))
                for m, c in nf.terms.items():
                    acc[m] = acc.get(m, 0) + c * c1 * c2
        return Element(self.ring, acc)

    def mul_monomial(self, m, coeff=1):
        return self.mul(Element.from_monomial(self.ring, m, coeff))

    def __eq__(self, other):
        return (isinstance(other, Element) and self.ring is other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash(self.canonical_key())

    def canonical_key(self):
        return tuple(sorted(
            ((m.pairs, c) for m, c in self.terms.items())))

    def __repr__(self):
        return "Element(%s)" % format_element(self)


def format_element(e):
    if e.is_zero:
        return "0"
    parts = []
    for m in e.monomials():
        c = e.terms[m]
        if m.is_one:
            parts.append(format_coefficient(c))
        elif c == 1:
            parts.append(format_monomial(m))
        else:
            parts.append("%s*%s" % (format_coefficient(c), format_monomial(m)))
    return " + ".join(parts)


def normal_form(m, ring):
    """Normal form of a monomial in a ring presentation."""
    return ring.normal_form_monomial(m)


def element_add(f, g):
    return f.add(g)


def element_mul(f, g):
    return f.mul(g)


def exhaustive_normal_forms(ring, m, _cache=None):
    """Set of all normal forms reachable from a monomial under every
    rewriting strategy.  One-term states stay one-term, so the set consists
    of canonical element keys of 0 or coeff*monomial results.

    This is the independent oracle for the deterministic strategy: on a
    locally confluent system the returned set is a singleton.
    """
    if _cache is None:
        _cache = ring._nf_set_cache
    cached = _cache.get(m)
    if cached is not None:
        return cached
    applicable = [rule for rule in ring.rules if rule.lhs.divides(m)]
    if not applicable:
        result = frozenset({Element(ring, {m: Fraction(1)}).canonical_key()})
    else:
        out = set()
        for rule in applicable:
            if rule.rhs is None:
                out.add(Element.zero(ring).canonical_key())
                continue
            rc, rm = rule.rhs
            nxt = m.div(rule.lhs).mul(rm)
            for key in exhaustive_normal_forms(ring, nxt, _cache):
                scaled = Element(
                    ring, {Monomial(p): c * rc for p, c in key})
                out.add(scaled.canonical_key())
        result = frozenset(out)
    _cache[m] = result
    return result


@dataclass(frozen=True)
class CriticalPairResult:
    lhs1: Monomial
    lhs2: Monomial
    overlap: Monomial
    joinable: bool
    left_forms: frozenset
    right_forms: frozenset


@dataclass(frozen=True)
class ConfluenceReport:
    degree_bound: int
    pairs_examined: int
    failures: tuple

    @property
    def ok(self):
        return not self.failures


def _one_step(ring, m, rule):
    """Apply rule at monomial m (rule.lhs must divide m); returns Element."""
    q = m.div(rule.lhs)
    if rule.rhs is None:
        return Element.zero(ring)
    rc, rm = rule.rhs
    return Element(ring, {q.mul(rm): rc})


def _reachable_forms(ring, elem):
    if elem.is_zero:
        return frozenset({elem.canonical_key()})
    ((m, c),) = elem.terms.items()
    out = set()
    for key in exhaustive_normal_forms(ring, m):
        scaled = Element(ring, {Monomial(p): cc * c for p, cc in key})
        out.add(scaled.canonical_key())
    return frozenset(out)


def check_local_confluence(ring, degree_bound):
    """Examine every critical pair whose overlap degree is within the bound.

    A critical pair of two rules is formed at the lcm of their lhs monomials.
    Rules with coprime lhs always join (reduce the two factors independently),
    and two rules rewriting to zero trivially join at zero; the remaining
    pairs are decided by intersecting exhaustively enumerated sets of
    reachable normal forms.  Strict degree decrease makes every reduction
    terminate, so joinability of all local pairs up to the bound gives
    confluence on monomials of degree up to the bound.
    """
    failures = []
    examined = 0
    rules = ring.rules
    for i in range(len(rules)):
        for j in range(i + 1, len(rules)):
            r1, r2 = rules[i], rules[j]
            overlap = r1.lhs.lcm(r2.lhs)
            if overlap.degree > degree_bound:
                continue
            examined += 1
            if r1.rhs is None and r2.rhs is None:
                continue
            if r1.lhs.gcd(r2.lhs).is_one:
                # Coprime lhs: both reducts rewrite to the product of the
                # two rhs sides, so the pair joins without search.
                continue
            left = _reachable_forms(ring, _one_step(ring, overlap, r1))
            right = _reachable_forms(ring, _one_step(ring, overlap, r2))
            if not (left & right):
                failures.append(CriticalPairResult(
                    r1.lhs, r2.lhs, overlap, False, left, right))
    report = ConfluenceReport(degree_bound, examined, tuple(failures))
    if report.ok:
        ring.confluence_checked_to = max(ring.confluence_checked_to, degree_bound)
    return report
