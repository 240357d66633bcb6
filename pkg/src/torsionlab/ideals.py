"""Ideal presentations and colon/saturation/radical/minimal-prime algorithms.

Two regimes:

* monomial mode: every ring rule rewrites to zero and every generator is a
  monic monomial.  All operations here are exact.  Algorithms work on the
  lifted polynomial-ring ideal (generators plus the rule lhs monomials) and
  map results back by normalization; that is what makes colon, radical and
  minimal primes correct inside the quotient ring.
* general mode: anything else.  Membership is a certificate search by exact
  linear algebra and is semi-decidable (yes/unknown); colon by a non-monomial
  is a bounded sound search flagged incomplete.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotMonomialMode, RingMismatch, UnitIdeal
from .ring import Element, Monomial, format_monomial, grlex_key

MONOMIAL_MODE = "monomial"
GENERAL_MODE = "general"

DEFAULT_SATURATION_CAP = 64


def _reduce_monomials(monos):
    """Inclusion-reduced basis of a monomial list: drop duplicates and any
    monomial divisible by another kept one."""
    out = []
    for m in sorted(set(monos), key=grlex_key):
        if not any(k.divides(m) for k in out):
            out.append(m)
    return out


def monic_rewriting(ring):
    """Every rule sends its lhs to zero or to a plain monomial (coeff 1).

    In such rings normal forms of monomials are zero or monic monomials, so
    an ideal generated by single terms is spanned by monomials and element
    membership can be decided termwise.
    """
    return all(rule.rhs is None or rule.rhs[0] == 1 for rule in ring.rules)


class IdealHandle:
    """Finite generator list inside a ring presentation."""

    __slots__ = ("ring", "generators", "mode", "complete", "_span_cache",
                 "_colon_memo")

    def __init__(self, ring, elements, complete=True):
        gens = []
        for e in elements:
            if e.ring is not ring:
                raise RingMismatch("generator from a different ring")
            if e.is_zero:
                continue
            if e.is_single_term:
                # Units of the coefficient field never change the ideal.
                m, c = e.single_term()
                e = Element(ring, {m: Fraction(1)})
            gens.append(e)
        monomial = ring.all_rhs_zero and all(g.is_monomial for g in gens)
        if monomial:
            monos = _reduce_monomials([g.single_term()[0] for g in gens])
            gens = [Element(ring, {m: Fraction(1)}) for m in monos]
            mode = MONOMIAL_MODE
        else:
            seen = set()
            uniq = []
            for g in sorted(gens, key=lambda g: g.canonical_key()):
                key = g.canonical_key()
                if key not in seen:
                    seen.add(key)
                    uniq.append(g)
            gens = uniq
            mode = GENERAL_MODE
        self.ring = ring
        self.generators = tuple(gens)
        self.mode = mode
        self.complete = complete
        self._span_cache = {}
        self._colon_memo = {}

    @classmethod
    def from_monomials(cls, ring, monos, complete=True):
        return cls(ring, [Element.from_monomial(ring, m) for m in monos],
                   complete=complete)

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def unit(cls, ring):
        return cls(ring, [Element.constant(ring, 1)])

    @property
    def is_monomial_mode(self):
        return self.mode == MONOMIAL_MODE

    @property
    def is_zero(self):
        return not self.generators

    @property
    def is_unit(self):
        return any(g.is_single_term and g.single_term()[0].is_one
                   for g in self.generators)

    def monomial_generators(self):
        self._require_monomial()
        return [g.single_term()[0] for g in self.generators]

    def _require_monomial(self):
        if not self.is_monomial_mode:
            raise NotMonomialMode("operation requires a monomial-mode ideal")

    def lifted_monomials(self):
        """Generators plus rule lhs monomials: the polynomial-ring ideal
        whose image in the quotient is this ideal."""
        self._require_monomial()
        return _reduce_monomials(
            self.monomial_generators()
            + [rule.lhs for rule in self.ring.rules])

    def contains_monomial(self, m):
        """Exact membership for a monomial, monomial mode only."""
        self._require_monomial()
        nf = self.ring.normal_form_monomial(m)
        if nf.is_zero:
            return True
        mono = nf.single_term()[0]
        return any(g.divides(mono) for g in self.monomial_generators())

    def monomial_span(self, multiplier_bound):
        """For monic-rewriting rings with single-term generators: the set of
        monomials of the form NF(m * g) with multiplier degree within the
        bound, each mapped to one witness (generator index, multiplier)."""
        if not (monic_rewriting(self.ring)
                and all(g.is_single_term for g in self.generators)):
            raise NotMonomialMode("monomial span needs a monomial-spanned ideal")
        cached = self._span_cache.get(multiplier_bound)
        if cached is not None:
            return cached
        span = {}
        for k, g in enumerate(self.generators):
            gm = g.single_term()[0]
            for m in self.ring.normal_monomials_up_to(multiplier_bound):
                nf = self.ring.normal_form_monomial(gm.mul(m))
                if nf.is_zero:
                    continue
                mono = nf.single_term()[0]
                if mono not in span:
                    span[mono] = (k, m)
        self._span_cache[multiplier_bound] = span
        return span

    @property
    def is_monomial_spanned(self):
        return (monic_rewriting(self.ring)
                and all(g.is_single_term for g in self.generators))

    def equals(self, other):
        """Ideal equality; may return None (undecided) in general mode."""
        if self.ring is not other.ring:
            raise RingMismatch("ideals live in different rings")
        if self.is_monomial_mode and other.is_monomial_mode:
            return ([g.canonical_key() for g in self.generators]
                    == [g.canonical_key() for g in other.generators])
        one = _mutual_inclusion(self, other)
        two = _mutual_inclusion(other, self)
        if one is True and two is True:
            return True
        if one is False or two is False:
            return False
        return None

    def __repr__(self):
        return "IdealHandle(%s)" % format_ideal(self)


def format_ideal(ideal):
    from .ring import format_element
    if ideal.is_zero:
        return "ideal(0)"
    return "ideal(%s)" % ", ".join(
        format_element(g) for g in ideal.generators)


@dataclass(frozen=True)
class MembershipAnswer:
    """Yes answers always carry a certificate that re-multiplies to f.

    An "unknown" verdict from a bounded search means no certificate with
    multiplier degree up to search_bound exists; general mode never asserts
    a hard no.
    """
    verdict: str  # "yes" | "no" | "unknown"
    certificate: Optional[tuple] = None  # ((generator index, Element), ...)
    search_bound: Optional[int] = None

    @property
    def is_yes(self):
        return self.verdict == "yes"


def _check_shared_ring(a, b):
    if a.ring is not b.ring:
        raise RingMismatch("operands live in different rings")


def ideal_membership(f, ideal, multiplier_degree_bound=None):
    """Decide f in I.  Exact in monomial mode; certificate search otherwise."""
    if f.ring is not ideal.ring:
        raise RingMismatch("element and ideal live in different rings")
    if f.is_zero:
        return MembershipAnswer("yes", certificate=())
    if ideal.is_monomial_mode:
        gens = ideal.monomial_generators()
        parts = {}
        for m in f.monomials():
            c = f.terms[m]
            for k, g in enumerate(gens):
                if g.divides(m):
                    q = m.div(g)
                    parts.setdefault(k, []).append((q, c))
                    break
            else:
                return MembershipAnswer("no")
        cert = tuple(
            (k, Element.from_terms(f.ring, pairs))
            for k, pairs in sorted(parts.items()))
        return MembershipAnswer("yes", certificate=cert)
    if multiplier_degree_bound is None:
        multiplier_degree_bound = f.degree + 2
    if ideal.is_monomial_spanned:
        # The ideal is a monomial subspace, so membership is termwise.
        span = ideal.monomial_span(multiplier_degree_bound)
        parts = {}
        for m in f.monomials():
            hit = span.get(m)
            if hit is None:
                return MembershipAnswer(
                    "unknown", search_bound=multiplier_degree_bound)
            k, mult = hit
            parts.setdefault(k, []).append((mult, f.terms[m]))
        cert = tuple(
            (k, Element.from_terms(f.ring, pairs))
            for k, pairs in sorted(parts.items()))
        return MembershipAnswer("yes", certificate=cert,
                                search_bound=multiplier_degree_bound)
    cert = _certificate_search(f, ideal.generators, multiplier_degree_bound,
                               normal_only=True)
    if cert is not None:
        return MembershipAnswer("yes", certificate=cert,
                                search_bound=multiplier_degree_bound)
    return MembershipAnswer("unknown", search_bound=multiplier_degree_bound)


def brute_force_membership(f, ideal, degree_bound):
    """Independent oracle: exact linear-algebra search over all multiplier
    monomials (normal or not) of degree up to the bound.  Returns yes with a
    certificate, or unknown (read: no certificate up to this bound)."""
    if f.ring is not ideal.ring:
        raise RingMismatch("element and ideal live in different rings")
    if f.is_zero:
        return MembershipAnswer("yes", certificate=(), search_bound=degree_bound)
    cert = _certificate_search(f, ideal.generators, degree_bound,
                               normal_only=False)
    if cert is not None:
        return MembershipAnswer("yes", certificate=cert,
                                search_bound=degree_bound)
    return MembershipAnswer("unknown", search_bound=degree_bound)


def _all_monomials_up_to(num_vars, bound):
    out = [Monomial.one()]
    frontier = [Monomial.one()]
    for _ in range(bound):
        nxt = []
        for m in frontier:
            for v in range(max(m.max_var(), 0), num_vars):
                nxt.append(m.mul(Monomial.variable(v)))
        out.extend(nxt)
        frontier = nxt
    return sorted(set(out), key=grlex_key)


def _certificate_search(f, generators, bound, normal_only):
    """Find multipliers h_k with sum g_k * h_k = f, multiplier degree <= bound.

    Exact Gaussian elimination over the rationals.  Every ring element is a
    combination of normal monomials, so restricting multipliers to normal
    monomials loses nothing; the unrestricted variant exists for the
    independent brute-force oracle.
    """
    ring = f.ring
    if not generators:
        return None
    if normal_only:
        multipliers = ring.normal_monomials_up_to(bound)
    else:
        multipliers = _all_monomials_up_to(ring.num_vars, bound)
    columns = []
    labels = []
    seen_cols = set()
    for k, g in enumerate(generators):
        for m in multipliers:
            prod = g.mul(Element(ring, {m: Fraction(1)}))
            if prod.is_zero:
                continue
            vec = tuple(sorted((mm.pairs, c) for mm, c in prod.terms.items()))
            if vec in seen_cols:
                continue
            seen_cols.add(vec)
            columns.append(dict(prod.terms))
            labels.append((k, m))
    target = dict(f.terms)
    solution = _solve_exact(columns, target)
    if solution is None:
        return None
    parts = {}
    for (k, m), coeff in zip(labels, solution):
        if coeff:
            parts.setdefault(k, []).append((m, coeff))
    cert = tuple(
        (k, Element.from_terms(ring, pairs))
        for k, pairs in sorted(parts.items()))
    return cert


def _solve_exact(columns, target):
    """Solve sum x_i * columns[i] = target over the rationals.

    Columns and target are sparse vectors keyed by monomial.  Returns one
    solution (free variables set to zero) or None.
    """
    pivots = {}  # leading key -> (reduced column, combo over original columns)

    def reduce(vec, combo):
        # Eliminating at a pivot's lead key only introduces grlex-larger
        # keys, so always cancelling the smallest applicable key terminates.
        vec = {k: v for k, v in vec.items() if v}
        while True:
            applicable = [k for k in vec if k in pivots]
            if not applicable:
                return vec, combo
            key = min(applicable, key=grlex_key)
            pcol, pcombo = pivots[key]
            factor = vec[key] / pcol[key]
            for kk, vv in pcol.items():
                vec[kk] = vec.get(kk, 0) - factor * vv
            for idx, vv in pcombo.items():
                combo[idx] = combo.get(idx, 0) - factor * vv
            vec = {k: v for k, v in vec.items() if v}

    for idx, col in enumerate(columns):
        vec, combo = reduce(col, {idx: Fraction(1)})
        if vec:
            lead = min(vec, key=grlex_key)
            pivots[lead] = (vec, combo)
    vec, combo = reduce(target, {})
    if vec:
        return None
    return [-combo.get(i, Fraction(0)) for i in range(len(columns))]


def ideal_sum(a, b):
    _check_shared_ring(a, b)
    return IdealHandle(a.ring, list(a.generators) + list(b.generators),
                       complete=a.complete and b.complete)


def ideal_product(a, b):
    _check_shared_ring(a, b)
    gens = [g.mul(h) for g in a.generators for h in b.generators]
    return IdealHandle(a.ring, gens, complete=a.complete and b.complete)


def ideal_power(a, n):
    if n < 0:
        raise ValueError("negative ideal power")
    acc = IdealHandle.unit(a.ring)
    for _ in range(n):
        acc = ideal_product(acc, a)
    return acc


def ideal_intersection(a, b):
    """Exact in monomial mode via pairwise lcm of generators."""
    _check_shared_ring(a, b)
    a._require_monomial()
    b._require_monomial()
    monos = [g.lcm(h)
             for g in a.monomial_generators()
             for h in b.monomial_generators()]
    return IdealHandle.from_monomials(a.ring, monos,
                                      complete=a.complete and b.complete)


def ideal_colon(ideal, f, multiplier_degree_bound=None):
    """(I : f) = {g | g*f in I}.

    Exact for monomial-mode I and single-term f via divisibility quotients of
    the lifted generators.  Otherwise a bounded sound search, flagged
    incomplete.
    """
    if f.ring is not ideal.ring:
        raise RingMismatch("element and ideal live in different rings")
    if f.is_zero:
        return IdealHandle.unit(ideal.ring)
    if ideal.is_monomial_mode and f.is_single_term:
        m = f.single_term()[0]
        quotients = [g.div(g.gcd(m)) for g in ideal.lifted_monomials()]
        return IdealHandle.from_monomials(ideal.ring, [
            q for q in quotients
            if not ideal.ring.normal_form_monomial(q).is_zero
        ], complete=ideal.complete)
    if multiplier_degree_bound is None:
        multiplier_degree_bound = f.degree + 2
    found = []
    for m in ideal.ring.normal_monomials_up_to(multiplier_degree_bound):
        g = Element(ideal.ring, {m: Fraction(1)})
        if ideal_membership(g.mul(f), ideal, multiplier_degree_bound).is_yes:
            found.append(g)
    return IdealHandle(ideal.ring, found, complete=False)


def ideal_colon_ideal(ideal, other, multiplier_degree_bound=None):
    """(I : J) as the intersection over generators of J of (I : g)."""
    _check_shared_ring(ideal, other)
    if other.is_zero:
        return IdealHandle.unit(ideal.ring)
    parts = [ideal_colon(ideal, g, multiplier_degree_bound)
             for g in other.generators]
    if all(p.is_monomial_mode for p in parts):
        acc = parts[0]
        for p in parts[1:]:
            acc = ideal_intersection(acc, p)
        return acc
    # Sound bounded intersection: keep monomials certified in every part.
    bound = multiplier_degree_bound
    if bound is None:
        bound = max((g.degree for g in other.generators), default=0) + 2
    found = []
    for m in ideal.ring.normal_monomials_up_to(bound):
        g = Element(ideal.ring, {m: Fraction(1)})
        if all(ideal_membership(g.mul(h), ideal, bound).is_yes
               for h in other.generators):
            found.append(g)
    return IdealHandle(ideal.ring, found, complete=False)


def _mutual_inclusion(a, b):
    """Is every generator of a in b?  True / False / None (undecided)."""
    verdicts = [ideal_membership(g, b).verdict for g in a.generators]
    if all(v == "yes" for v in verdicts):
        return True
    if any(v == "no" for v in verdicts):
        return False
    return None


@dataclass(frozen=True)
class SaturationResult:
    ideal: IdealHandle
    stabilized: bool
    steps: int


def ideal_saturation(ideal, other, iteration_cap=DEFAULT_SATURATION_CAP):
    """Ascending chain I, (I:J), ((I:J):J), ... until it stops moving."""
    _check_shared_ring(ideal, other)
    current = ideal
    for step in range(iteration_cap):
        nxt = ideal_colon_ideal(current, other)
        if nxt.equals(current) is True:
            return SaturationResult(current, True, step)
        current = nxt
    return SaturationResult(current, False, iteration_cap)


def ideal_radical(ideal):
    """Radical of a monomial-mode ideal: squarefree parts of the lifted
    generators, mapped back into the quotient."""
    ideal._require_monomial()
    if ideal.is_unit:
        return IdealHandle.unit(ideal.ring)
    monos = [g.squarefree() for g in ideal.lifted_monomials()]
    return IdealHandle.from_monomials(ideal.ring, [
        m for m in monos
        if not ideal.ring.normal_form_monomial(m).is_zero
    ], complete=ideal.complete)


def minimal_transversals(edges):
    """Inclusion-minimal hitting sets of a family of nonempty vertex sets."""
    reduced = []
    for e in sorted(set(map(frozenset, edges)), key=lambda e: (len(e), sorted(e))):
        if not any(k <= e for k in reduced):
            reduced.append(e)
    results = []

    def visit(remaining, chosen):
        if not remaining:
            for r in results:
                if r <= chosen:
                    return
            results[:] = [r for r in results if not chosen <= r]
            results.append(chosen)
            return
        edge = remaining[0]
        for v in sorted(edge):
            visit([e for e in remaining[1:] if v not in e], chosen | {v})

    visit(reduced, frozenset())
    # The branch order can produce supersets; keep only the minimal ones.
    final = [r for r in results
             if not any(o < r for o in results)]
    return sorted(final, key=lambda s: (len(s), sorted(s)))


def minimal_primes(ideal):
    """Minimal primes over a proper monomial-mode ideal, as variable sets.

    These are the minimal transversals of the supports of the lifted
    generators; with no rules and no generators the zero prime (empty set)
    is the unique answer.
    """
    ideal._require_monomial()
    if ideal.is_unit:
        raise UnitIdeal("the unit ideal has no minimal primes")
    supports = [m.support for m in ideal.lifted_monomials()]
    if any(not s for s in supports):
        raise UnitIdeal("a unit generator slipped through")
    return [frozenset(p) for p in minimal_transversals(supports)]
