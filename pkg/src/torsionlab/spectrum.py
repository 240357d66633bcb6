"""Monomial primes, varieties, and assassin computations for cyclic modules.

Primes of a monomial-mode quotient ring are ideals generated by variables.
A variable set is stored in canonical form: the set S such that the ideal
generated by {X_v : v in S} has lifted reduced basis exactly those variables.
The zero prime (empty set) exists only in rule-free rings.

Assassins are computed from monomial witnesses.  Modules here are spanned by
monomials and graded by exponent vectors, and associated primes of such
modules are annihilators of monomial elements, so a complete witness scan
yields the complete assassin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import RingMismatch
from .ideals import (
    IdealHandle,
    ideal_colon,
    minimal_primes,
)
from .ring import Monomial, format_monomial, grlex_key


def format_prime(vars_set):
    return "prime(%s)" % ", ".join("X%d" % v for v in sorted(vars_set))


def prime_variable_set(ideal) -> Optional[frozenset]:
    """The canonical variable set if the ideal is prime, else None.

    A monomial-mode ideal is prime exactly when its lifted reduced basis
    consists of single variables: any higher-degree basis monomial splits
    into factors outside the ideal.
    """
    ideal._require_monomial()
    basis = ideal.lifted_monomials()
    if any(m.degree != 1 for m in basis):
        return None
    return frozenset(m.max_var() for m in basis)


def is_prime_ideal(ideal) -> bool:
    return prime_variable_set(ideal) is not None


def prime_ideal(ring, vars_set):
    """The ideal generated by the variables in vars_set."""
    return IdealHandle.from_monomials(
        ring, [Monomial.variable(v) for v in sorted(vars_set)])


def spectrum(ring):
    """All canonical primes of a monomial-mode ring, sorted by size then
    by variable indices.  Exponential in the variable count."""
    out = []
    n = ring.num_vars
    for mask in range(1 << n):
        s = frozenset(v for v in range(n) if mask >> v & 1)
        if prime_variable_set(prime_ideal(ring, s)) == s:
            out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def in_variety(vars_set, ideal) -> bool:
    """Does the prime with this variable set contain the ideal?

    A normal monomial lies in the prime exactly when its support meets the
    variable set.
    """
    ideal._require_monomial()
    return all(g.support & vars_set
               for g in ideal.monomial_generators())


def intersect_variety(primes, ideal):
    return sorted((p for p in primes if in_variety(p, ideal)),
                  key=lambda s: (len(s), sorted(s)))


def difference_variety(primes, ideal):
    return sorted((p for p in primes if not in_variety(p, ideal)),
                  key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class AssassinReport:
    """Primes with one monomial witness each, plus scan metadata.

    complete means the witness scan provably saw every monomial of the
    module: beyond the scanned degree no normal monomial of the numerator
    survives outside the denominator, so no further primes can appear.
    """
    primes: tuple  # of frozenset, sorted
    witnesses: tuple  # of (frozenset, Monomial), aligned with primes
    witness_bound: int
    complete: bool

    @property
    def prime_set(self):
        return frozenset(self.primes)

    def witness_for(self, prime):
        for p, m in self.witnesses:
            if p == prime:
                return m
        return None


def default_witness_bound(denominator):
    """Degree of the lcm of the reduced generators, plus two."""
    acc = Monomial.one()
    if denominator.is_monomial_mode:
        for g in denominator.monomial_generators():
            acc = acc.lcm(g)
    return acc.degree + 2


def _sorted_primes(pairs):
    dedup = {}
    for p, m in pairs:
        old = dedup.get(p)
        if old is None or grlex_key(m) < grlex_key(old):
            dedup[p] = m
    primes = sorted(dedup, key=lambda s: (len(s), sorted(s)))
    return tuple(primes), tuple((p, dedup[p]) for p in primes)


def _witness_scan(numerator, denominator, bound):
    """Normal monomials in the numerator but not the denominator, with a
    completeness certificate.

    Divisor-closure argument for completeness: a surviving monomial of
    degree above the scan has a surviving divisor at the boundary degree
    once the boundary is at least the largest numerator generator degree,
    so an empty boundary level certifies nothing was missed.
    """
    if numerator.ring is not denominator.ring:
        raise RingMismatch("numerator and denominator in different rings")
    numerator._require_monomial()
    denominator._require_monomial()
    ring = numerator.ring
    witnesses = []
    for d in range(bound + 1):
        for m in ring.normal_monomials_of_degree(d):
            if numerator.contains_monomial(m) and not denominator.contains_monomial(m):
                witnesses.append(m)
    gen_deg = max((g.degree for g in numerator.monomial_generators()),
                  default=0)
    boundary = bound + 1
    complete = boundary >= gen_deg and not any(
        numerator.contains_monomial(m) and not denominator.contains_monomial(m)
        for m in ring.normal_monomials_of_degree(boundary))
    return witnesses, complete


def _annihilator(denominator, m):
    """(denominator : m), memoized on the denominator handle."""
    hit = denominator._colon_memo.get(m)
    if hit is None:
        hit = ideal_colon(denominator, _as_element(denominator.ring, m))
        denominator._colon_memo[m] = hit
    return hit


def assassins_subquotient(numerator, denominator, witness_bound=None):
    """ass of the module (numerator + denominator) / denominator."""
    if witness_bound is None:
        witness_bound = default_witness_bound(denominator)
    witnesses, complete = _witness_scan(numerator, denominator, witness_bound)
    pairs = []
    for m in witnesses:
        s = prime_variable_set(_annihilator(denominator, m))
        if s is not None:
            pairs.append((s, m))
    primes, aligned = _sorted_primes(pairs)
    return AssassinReport(primes, aligned, witness_bound, complete)


def weak_assassins_subquotient(numerator, denominator, witness_bound=None):
    """ass^f of the module: primes minimal over some witness annihilator."""
    if witness_bound is None:
        witness_bound = default_witness_bound(denominator)
    witnesses, complete = _witness_scan(numerator, denominator, witness_bound)
    pairs = []
    for m in witnesses:
        for s in minimal_primes(_annihilator(denominator, m)):
            pairs.append((s, m))
    primes, aligned = _sorted_primes(pairs)
    return AssassinReport(primes, aligned, witness_bound, complete)


def assassins_cyclic(denominator, witness_bound=None):
    """ass(R / denominator)."""
    return assassins_subquotient(
        IdealHandle.unit(denominator.ring), denominator, witness_bound)


def weak_assassins_cyclic(denominator, witness_bound=None):
    """ass^f(R / denominator)."""
    return weak_assassins_subquotient(
        IdealHandle.unit(denominator.ring), denominator, witness_bound)


def _as_element(ring, m):
    from .ring import Element
    return Element.from_monomial(ring, m)
